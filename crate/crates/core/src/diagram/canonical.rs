use std::collections::VecDeque;

use super::{Chirality, Diagram, Record};

fn code(d: &Diagram, r: Record) -> usize {
    match r {
        Record::Crossing(i) => match d.crossings()[i].chirality {
            Chirality::One => 0,
            Chirality::Two => 1,
        },
        Record::Split(_) => 2,
        Record::Merge(_) => 3,
        Record::Circle(_) => 4,
    }
}

fn encode_from(d: &Diagram, start: Record, ends: &[[Record; 2]]) -> Vec<Vec<usize>> {
    let mut label = vec![usize::MAX; d.semiarc_count()];
    let mut next = 0;
    let mut seen = std::collections::HashSet::new();
    let mut queue = VecDeque::from([start]);
    seen.insert(start);
    let mut out = Vec::new();
    while let Some(r) = queue.pop_front() {
        let mut row = vec![code(d, r)];
        for (_, arc) in d.ports_of(r) {
            if label[arc] == usize::MAX {
                label[arc] = next;
                next += 1;
            }
            row.push(label[arc]);
            for other in ends[arc] {
                if seen.insert(other) {
                    queue.push_back(other);
                }
            }
        }
        out.push(row);
    }
    out
}

pub(super) fn canonical_form(d: &Diagram) -> Vec<Vec<usize>> {
    let (emitter, consumer) = d.port_index();
    let ends: Vec<[Record; 2]> = (0..d.semiarc_count())
        .map(|a| [emitter[a].record, consumer[a].record])
        .collect();
    let mut owner = vec![usize::MAX; d.semiarc_count()];
    let comps = d.components();
    for (i, c) in comps.iter().enumerate() {
        for &a in c {
            owner[a] = i;
        }
    }
    let mut by_comp: Vec<Vec<Record>> = vec![Vec::new(); comps.len()];
    for r in d.records() {
        let first = d.ports_of(r)[0].1;
        by_comp[owner[first]].push(r);
    }
    let mut encoded: Vec<Vec<Vec<usize>>> = by_comp
        .iter()
        .map(|recs| {
            recs.iter()
                .map(|&r| encode_from(d, r, &ends))
                .min()
                .unwrap_or_default()
        })
        .collect();
    encoded.sort();
    let mut out = Vec::new();
    for e in encoded {
        out.extend(e);
        out.push(Vec::new());
    }
    out
}
