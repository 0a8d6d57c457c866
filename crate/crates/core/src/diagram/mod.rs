//! Diagrams of Y-oriented spatial trivalent graphs, described by semi-arc records.

mod canonical;
mod rmove;

pub use rmove::{
    apply_rmove, apply_rmove_tracked, find_sites, Move, MoveDirection, RMoveSite, Rewrite, Variant,
};

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    /// `u_out = u_in ⋆ o_out`, `o_in = o_out ◦ u_in`
    One,
    /// `u_in = u_out ⋆ o_in`, `o_out = o_in ◦ u_out`
    Two,
}

impl Chirality {
    pub fn flip(self) -> Self {
        match self {
            Chirality::One => Chirality::Two,
            Chirality::Two => Chirality::One,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub chirality: Chirality,
    pub u_in: usize,
    pub o_in: usize,
    pub u_out: usize,
    pub o_out: usize,
}

/// A vertex with one incoming and two outgoing semi-arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    pub input: usize,
    pub out_b: usize,
    pub out_t: usize,
}

/// A vertex with two incoming and one outgoing semi-arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Merge {
    pub in_b: usize,
    pub in_t: usize,
    pub out: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Record {
    Crossing(usize),
    Split(usize),
    Merge(usize),
    Circle(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    UIn,
    OIn,
    UOut,
    OOut,
    In,
    OutB,
    OutT,
    InB,
    InT,
    Out,
    Circle,
}

impl Role {
    pub fn is_input(self) -> bool {
        matches!(
            self,
            Role::UIn | Role::OIn | Role::In | Role::InB | Role::InT | Role::Circle
        )
    }

    pub fn is_output(self) -> bool {
        !self.is_input() || self == Role::Circle
    }
}

/// One end of a semi-arc: the record it attaches to and in which role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub record: Record,
    pub role: Role,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Diagram {
    semiarc_count: usize,
    crossings: Vec<Crossing>,
    splits: Vec<Split>,
    merges: Vec<Merge>,
    circles: Vec<usize>,
}

impl Diagram {
    /// Builds and validates a diagram: every semi-arc is emitted once and consumed once.
    pub fn new(
        semiarc_count: usize,
        crossings: Vec<Crossing>,
        splits: Vec<Split>,
        merges: Vec<Merge>,
        circles: Vec<usize>,
    ) -> Result<Self> {
        let d = Self {
            semiarc_count,
            crossings,
            splits,
            merges,
            circles,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn semiarc_count(&self) -> usize {
        self.semiarc_count
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn splits(&self) -> &[Split] {
        &self.splits
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    pub fn circles(&self) -> &[usize] {
        &self.circles
    }

    pub fn records(&self) -> impl Iterator<Item = Record> + '_ {
        (0..self.crossings.len())
            .map(Record::Crossing)
            .chain((0..self.splits.len()).map(Record::Split))
            .chain((0..self.merges.len()).map(Record::Merge))
            .chain((0..self.circles.len()).map(Record::Circle))
    }

    /// The semi-arcs attached to a record, in a fixed role order.
    pub fn ports_of(&self, r: Record) -> Vec<(Role, usize)> {
        match r {
            Record::Crossing(i) => {
                let c = &self.crossings[i];
                vec![
                    (Role::UIn, c.u_in),
                    (Role::OIn, c.o_in),
                    (Role::UOut, c.u_out),
                    (Role::OOut, c.o_out),
                ]
            }
            Record::Split(i) => {
                let s = &self.splits[i];
                vec![
                    (Role::In, s.input),
                    (Role::OutB, s.out_b),
                    (Role::OutT, s.out_t),
                ]
            }
            Record::Merge(i) => {
                let m = &self.merges[i];
                vec![(Role::InB, m.in_b), (Role::InT, m.in_t), (Role::Out, m.out)]
            }
            Record::Circle(i) => vec![(Role::Circle, self.circles[i])],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.semiarc_count;
        let mut emitted = vec![0u32; n];
        let mut consumed = vec![0u32; n];
        for r in self.records() {
            for (role, arc) in self.ports_of(r) {
                if arc >= n {
                    return Err(Error::DanglingSemiArc {
                        id: arc,
                        problem: format!("referenced by {r:?} but semiarc_count is {n}"),
                    });
                }
                if role.is_input() {
                    consumed[arc] += 1;
                }
                if role.is_output() {
                    emitted[arc] += 1;
                }
            }
        }
        for arc in 0..n {
            let problem = match (emitted[arc], consumed[arc]) {
                (1, 1) => continue,
                (0, _) => "never emitted",
                (_, 0) => "never consumed",
                (e, _) if e > 1 => "emitted more than once",
                _ => "consumed more than once",
            };
            return Err(Error::DanglingSemiArc {
                id: arc,
                problem: problem.into(),
            });
        }
        Ok(())
    }

    /// For each semi-arc, the port emitting it and the port consuming it.
    pub fn port_index(&self) -> (Vec<Port>, Vec<Port>) {
        let dummy = Port {
            record: Record::Circle(usize::MAX),
            role: Role::Circle,
        };
        let mut emitter = vec![dummy; self.semiarc_count];
        let mut consumer = vec![dummy; self.semiarc_count];
        for record in self.records() {
            for (role, arc) in self.ports_of(record) {
                let port = Port { record, role };
                if role.is_input() {
                    consumer[arc] = port;
                }
                if role.is_output() {
                    emitter[arc] = port;
                }
            }
        }
        (emitter, consumer)
    }

    /// Groups of semi-arcs connected through records, each sorted; components sorted by first arc.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.semiarc_count;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for r in self.records() {
            let arcs: Vec<usize> = self.ports_of(r).into_iter().map(|(_, a)| a).collect();
            for w in arcs.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for arc in 0..n {
            let root = find(&mut parent, arc);
            if slot[root] == usize::MAX {
                slot[root] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[root]].push(arc);
        }
        groups
    }

    /// A labelling-independent form: equal for two diagrams iff they differ by renaming semi-arcs
    /// and reordering records.
    pub fn canonical_form(&self) -> Vec<Vec<usize>> {
        canonical::canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &Diagram) -> bool {
        self.semiarc_count == other.semiarc_count && self.canonical_form() == other.canonical_form()
    }
}

/// Parses the plain-text diagram format.
pub fn parse_diagram(text: &str) -> Result<Diagram> {
    let mut lines = crate::format::Lines::new(text);
    let n = lines.header("diagram")?;
    let mut crossings = Vec::new();
    let mut splits = Vec::new();
    let mut merges = Vec::new();
    let mut circles = Vec::new();
    while let Some(line) = lines.next_line() {
        let (kw, args) = line.keyword_and_numbers()?;
        let want = |k: usize| line.expect_arity(&args, k);
        match kw {
            "xing1" | "xing2" => {
                want(4)?;
                crossings.push(Crossing {
                    chirality: if kw == "xing1" {
                        Chirality::One
                    } else {
                        Chirality::Two
                    },
                    u_in: args[0],
                    o_in: args[1],
                    u_out: args[2],
                    o_out: args[3],
                });
            }
            "split" => {
                want(3)?;
                splits.push(Split {
                    input: args[0],
                    out_b: args[1],
                    out_t: args[2],
                });
            }
            "merge" => {
                want(3)?;
                merges.push(Merge {
                    in_b: args[0],
                    in_t: args[1],
                    out: args[2],
                });
            }
            "circle" => {
                want(1)?;
                circles.push(args[0]);
            }
            other => return Err(line.error(0, format!("unknown record `{other}`"))),
        }
    }
    Diagram::new(n, crossings, splits, merges, circles)
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "diagram {}", self.semiarc_count)?;
        for c in &self.crossings {
            let kw = match c.chirality {
                Chirality::One => "xing1",
                Chirality::Two => "xing2",
            };
            writeln!(f, "{kw} {} {} {} {}", c.u_in, c.o_in, c.u_out, c.o_out)?;
        }
        for s in &self.splits {
            writeln!(f, "split {} {} {}", s.input, s.out_b, s.out_t)?;
        }
        for m in &self.merges {
            writeln!(f, "merge {} {} {}", m.in_b, m.in_t, m.out)?;
        }
        for c in &self.circles {
            writeln!(f, "circle {c}")?;
        }
        Ok(())
    }
}
