use mcb_core::coloring::{count_colorings, enumerate_colorings};
use mcb_core::corpus;
use mcb_core::diagram::{
    apply_rmove, apply_rmove_tracked, find_sites, parse_diagram, Diagram, Move, MoveDirection,
};
use mcb_core::Mcb;

fn restricted(
    colorings: &[Vec<usize>],
    arcs: &[(usize, usize)],
    old_side: bool,
) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = colorings
        .iter()
        .map(|c| {
            arcs.iter()
                .map(|&(o, n)| c[if old_side { o } else { n }])
                .collect()
        })
        .collect();
    out.sort();
    out
}

fn small_mcbs() -> Vec<(String, Mcb)> {
    corpus::mcbs()
        .into_iter()
        .filter(|(_, m)| m.order() <= 10)
        .collect()
}

#[test]
fn corpus_files_revalidate_and_round_trip() {
    for (name, d) in corpus::diagrams() {
        let again = parse_diagram(&d.to_string()).unwrap();
        assert_eq!(again, d, "{name}");
        d.validate().unwrap();
    }
}

#[test]
fn expand_then_contract_is_identity_up_to_renaming() {
    for (name, d) in corpus::diagrams() {
        for (site, dir) in find_sites(&d) {
            if dir != MoveDirection::Expand {
                continue;
            }
            let e = apply_rmove(&d, &site, dir).unwrap();
            e.validate().unwrap();
            let undone = find_sites(&e)
                .into_iter()
                .filter(|(s, dir)| *dir == MoveDirection::Contract && s.kind == site.kind)
                .any(|(s, dir)| apply_rmove(&e, &s, dir).unwrap().is_isomorphic(&d));
            assert!(undone, "{name}: {site}");
        }
    }
}

#[test]
fn every_move_family_is_exercised_both_ways() {
    let mut seen = std::collections::BTreeSet::new();
    for (_, d) in corpus::diagrams() {
        for (site, dir) in find_sites(&d) {
            seen.insert((site.kind, dir));
            if dir == MoveDirection::Expand && site.kind != Move::R2 {
                let e = apply_rmove(&d, &site, dir).unwrap();
                seen.extend(find_sites(&e).into_iter().map(|(s, dir)| (s.kind, dir)));
            }
        }
    }
    for kind in Move::ALL {
        for dir in [MoveDirection::Expand, MoveDirection::Contract] {
            assert!(seen.contains(&(kind, dir)), "{kind} {dir}");
        }
    }
}

fn check_site(
    d: &Diagram,
    m: &Mcb,
    before: &[Vec<usize>],
    site: &mcb_core::diagram::RMoveSite,
    dir: MoveDirection,
) {
    let r = apply_rmove_tracked(d, site, dir).unwrap();
    let after = enumerate_colorings(m, &r.diagram);
    assert_eq!(before.len(), after.len(), "{site} {dir}");
    assert_eq!(count_colorings(m, &r.diagram), after.len() as u64);
    let kept: Vec<(usize, usize)> = r
        .arc_map
        .iter()
        .enumerate()
        .filter_map(|(o, n)| n.map(|n| (o, n)))
        .collect();
    let lhs = restricted(before, &kept, true);
    let rhs = restricted(&after, &kept, false);
    assert_eq!(lhs, rhs, "{site} {dir}");
    let mut dedup = lhs.clone();
    dedup.dedup();
    assert_eq!(
        dedup.len(),
        lhs.len(),
        "restriction is injective at {site} {dir}"
    );
}

#[test]
fn colorings_biject_outside_the_site() {
    for (_, m) in small_mcbs() {
        for (_, d) in corpus::diagrams() {
            let before = enumerate_colorings(&m, &d);
            for (site, dir) in find_sites(&d) {
                if site.kind == Move::R2 && site.anchor[0] > 1 {
                    continue;
                }
                check_site(&d, &m, &before, &site, dir);
            }
        }
    }
}

#[test]
fn contractions_in_expanded_diagrams_preserve_colorings() {
    let ms = small_mcbs();
    for (_, d) in corpus::diagrams()
        .into_iter()
        .filter(|(n, _)| *n != "knotted_theta")
    {
        for (site, dir) in find_sites(&d) {
            if dir != MoveDirection::Expand || matches!(site.kind, Move::R1a | Move::R1b | Move::R2)
            {
                continue;
            }
            let e = apply_rmove(&d, &site, dir).unwrap();
            for (s2, dir2) in find_sites(&e) {
                if dir2 != MoveDirection::Contract {
                    continue;
                }
                for (_, m) in &ms {
                    let before = enumerate_colorings(m, &e);
                    check_site(&e, m, &before, &s2, dir2);
                }
            }
        }
    }
}
