//! Local R1–R6 rewriting.
//!
//! Each move is a pair of record templates. A template slot is either an internal
//! semi-arc `I(k)`, which lives entirely inside the site, or a boundary semi-arc
//! `B(k)`, which keeps its id across the move. Crossing slots are
//! `[u_in, o_in, u_out, o_out]`, split slots `[in, out_b, out_t]`, merge slots
//! `[in_b, in_t, out]`.
//!
//! | move | expand side | contract side | expand anchor | contract anchor |
//! |------|-------------|---------------|---------------|-----------------|
//! | R1a  | arc `s` | `xing(s, l, l, t)` | `s` | `l` |
//! | R1b  | arc `s` | `xing(l, s, t, l)` | `s` | `l` |
//! | R2   | arcs `p` over, `q` under | two crossings of opposite type | `p q` | `p_mid q_mid` |
//! | R3   | three crossings, left | three crossings, right | `a1 b1 c1` | `a1' b1' c1'` |
//! | R4a  | `split(A, x, D)` | split plus crossing | `x` | `a` (split input) |
//! | R4b  | `merge(x, E, F)` | merge plus crossing | `x` | `a` (merge output) |
//! | R5a  | vertex stem under a strand | strand over both branches | stem | middle of strand |
//! | R5b  | vertex stem over a strand | strand under both branches | stem | middle of strand |
//! | R6   | two stacked vertices | reassociated pair | internal edge | internal edge |
//!
//! R2 comes in a parallel (`Plain`) and an antiparallel (`Reversed`) form; the
//! chirality is that of the first crossing on the over strand. R6 on a merge
//! followed by a split has two right-hand sides, picked by the variant.
//! Planarity is not checked.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{Chirality, Crossing, Diagram, Merge, Port, Record, Role, Split};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    R1a,
    R1b,
    R2,
    R3,
    R4a,
    R4b,
    R5a,
    R5b,
    R6,
}

impl Move {
    pub const ALL: [Move; 9] = [
        Move::R1a,
        Move::R1b,
        Move::R2,
        Move::R3,
        Move::R4a,
        Move::R4b,
        Move::R5a,
        Move::R5b,
        Move::R6,
    ];

    /// The move family 1..=6.
    pub fn family(self) -> u8 {
        match self {
            Move::R1a | Move::R1b => 1,
            Move::R2 => 2,
            Move::R3 => 3,
            Move::R4a | Move::R4b => 4,
            Move::R5a | Move::R5b => 5,
            Move::R6 => 6,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Move {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Move::ALL
            .into_iter()
            .find(|m| m.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown move `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveDirection {
    Expand,
    Contract,
}

impl fmt::Display for MoveDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveDirection::Expand => "expand",
            MoveDirection::Contract => "contract",
        })
    }
}

impl FromStr for MoveDirection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "expand" => Ok(MoveDirection::Expand),
            "contract" => Ok(MoveDirection::Contract),
            _ => Err(Error::InvalidArgument(format!("unknown direction `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Variant {
    #[default]
    Plain,
    Reversed,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Variant::Plain),
            "reversed" => Ok(Variant::Reversed),
            _ => Err(Error::InvalidArgument(format!("unknown variant `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RMoveSite {
    pub kind: Move,
    pub anchor: Vec<usize>,
    /// Used when expanding R1, R2 and R4.
    pub chirality: Chirality,
    /// Used when expanding R2 and R6.
    pub variant: Variant,
}

impl RMoveSite {
    pub fn new(kind: Move, anchor: Vec<usize>) -> Self {
        Self {
            kind,
            anchor,
            chirality: Chirality::One,
            variant: Variant::Plain,
        }
    }

    pub fn with_chirality(mut self, c: Chirality) -> Self {
        self.chirality = c;
        self
    }

    pub fn with_variant(mut self, v: Variant) -> Self {
        self.variant = v;
        self
    }
}

impl fmt::Display for RMoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.anchor.iter().map(|a| a.to_string()).collect();
        let c = match self.chirality {
            Chirality::One => 1,
            Chirality::Two => 2,
        };
        let v = match self.variant {
            Variant::Plain => "plain",
            Variant::Reversed => "reversed",
        };
        write!(f, "{} [{}] chirality {c} {v}", self.kind, ids.join(" "))
    }
}

/// A rewritten diagram and, for every old semi-arc, its id afterwards (if it survived).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewrite {
    pub diagram: Diagram,
    pub arc_map: Vec<Option<usize>>,
}

pub fn apply_rmove(d: &Diagram, site: &RMoveSite, direction: MoveDirection) -> Result<Diagram> {
    apply_rmove_tracked(d, site, direction).map(|r| r.diagram)
}

pub fn apply_rmove_tracked(
    d: &Diagram,
    site: &RMoveSite,
    direction: MoveDirection,
) -> Result<Rewrite> {
    if let Some(&a) = site.anchor.iter().find(|&&a| a >= d.semiarc_count()) {
        return Err(mismatch(format!("semi-arc {a} does not exist")));
    }
    match (site.kind, direction) {
        (Move::R1a | Move::R1b, MoveDirection::Expand) => {
            let [s] = site.anchor[..] else {
                return Err(mismatch("R1 expects one anchor semi-arc"));
            };
            let mut b = Builder::new(d);
            let (s_in, s_out) = b.cut(s);
            let l = b.fresh();
            let (u_in, o_in, u_out, o_out) = if site.kind == Move::R1a {
                (s_in, l, l, s_out)
            } else {
                (l, s_in, s_out, l)
            };
            b.crossings.push(Some(Crossing {
                chirality: site.chirality,
                u_in,
                o_in,
                u_out,
                o_out,
            }));
            b.finish()
        }
        (Move::R2, MoveDirection::Expand) => {
            let [p, q] = site.anchor[..] else {
                return Err(mismatch("R2 expects the over and the under semi-arc"));
            };
            if p == q {
                return Err(mismatch("R2 needs two distinct semi-arcs"));
            }
            let mut b = Builder::new(d);
            let (p_in, p_out) = b.cut(p);
            let (q_in, q_out) = b.cut(q);
            let (pm, qm) = (b.fresh(), b.fresh());
            let c = site.chirality;
            let (first_u, second_u) = match site.variant {
                Variant::Plain => ((q_in, qm), (qm, q_out)),
                Variant::Reversed => ((qm, q_out), (q_in, qm)),
            };
            b.crossings.push(Some(Crossing {
                chirality: c,
                u_in: first_u.0,
                o_in: p_in,
                u_out: first_u.1,
                o_out: pm,
            }));
            b.crossings.push(Some(Crossing {
                chirality: c.flip(),
                u_in: second_u.0,
                o_in: pm,
                u_out: second_u.1,
                o_out: p_out,
            }));
            b.finish()
        }
        (Move::R1a | Move::R1b | Move::R2, MoveDirection::Contract) => {
            let index = d.port_index();
            let m = contract_rules(site.kind)
                .iter()
                .find_map(|t| match_template(d, &index, t, &anchor_slots(&site.anchor)))
                .ok_or_else(|| {
                    mismatch(format!("no {} pattern at {:?}", site.kind, site.anchor))
                })?;
            let mut b = Builder::new(d);
            let mut pass = Vec::new();
            for &r in &m.recs {
                if let Record::Crossing(i) = r {
                    let c = d.crossings()[i];
                    pass.push((c.u_in, c.u_out));
                    pass.push((c.o_in, c.o_out));
                }
                b.remove(r);
            }
            b.join(&pass)?;
            b.finish()
        }
        (kind, dir) => {
            let index = d.port_index();
            for rule in rules(kind, dir, site.chirality, site.variant) {
                let anchor = match rule.anchor[0] {
                    I(_) => anchor_slots(&site.anchor),
                    B(_) => rule
                        .anchor
                        .iter()
                        .copied()
                        .zip(site.anchor.iter().copied())
                        .collect(),
                };
                if anchor.len() != site.anchor.len() {
                    continue;
                }
                if let Some(m) = match_template(d, &index, &rule.from, &anchor) {
                    return replace(d, &m, &rule.to);
                }
            }
            Err(mismatch(format!(
                "no {kind} {dir} pattern at {:?}",
                site.anchor
            )))
        }
    }
}

/// Every site where a move applies, in either direction.
pub fn find_sites(d: &Diagram) -> Vec<(RMoveSite, MoveDirection)> {
    use Chirality::{One, Two};
    let n = d.semiarc_count();
    let index = d.port_index();
    let mut out = BTreeSet::new();
    for s in 0..n {
        for kind in [Move::R1a, Move::R1b] {
            for c in [One, Two] {
                out.insert((
                    RMoveSite::new(kind, vec![s]).with_chirality(c),
                    MoveDirection::Expand,
                ));
            }
        }
        for q in (0..n).filter(|&q| q != s) {
            for c in [One, Two] {
                for v in [Variant::Plain, Variant::Reversed] {
                    let site = RMoveSite::new(Move::R2, vec![s, q])
                        .with_chirality(c)
                        .with_variant(v);
                    out.insert((site, MoveDirection::Expand));
                }
            }
        }
    }
    for kind in [Move::R1a, Move::R1b, Move::R2] {
        for t in contract_rules(kind) {
            for s in 0..n {
                if let Some(m) = match_template(d, &index, &t, &[(I(0), s)]) {
                    let site = RMoveSite::new(kind, m.internal).with_chirality(t.chirality);
                    out.insert((site, MoveDirection::Contract));
                }
            }
        }
    }
    for kind in [
        Move::R3,
        Move::R4a,
        Move::R4b,
        Move::R5a,
        Move::R5b,
        Move::R6,
    ] {
        for dir in [MoveDirection::Expand, MoveDirection::Contract] {
            for c in [One, Two] {
                for v in [Variant::Plain, Variant::Reversed] {
                    for rule in rules(kind, dir, c, v) {
                        for s in 0..n {
                            if let Some(m) =
                                match_template(d, &index, &rule.from, &[(rule.anchor[0], s)])
                            {
                                let anchor = match rule.anchor[0] {
                                    I(_) => m.internal,
                                    B(_) => vec![s],
                                };
                                let site = RMoveSite::new(kind, anchor)
                                    .with_chirality(rule.chirality)
                                    .with_variant(rule.variant);
                                out.insert((site, dir));
                            }
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::PatternMismatch(msg.into())
}

fn anchor_slots(anchor: &[usize]) -> Vec<(Slot, usize)> {
    anchor.iter().enumerate().map(|(k, &a)| (I(k), a)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    I(usize),
    B(usize),
}
use Slot::{B, I};

#[derive(Debug, Clone)]
enum TRec {
    X(Chirality, [Slot; 4]),
    S([Slot; 3]),
    M([Slot; 3]),
}

const CROSSING_ROLES: [Role; 4] = [Role::UIn, Role::OIn, Role::UOut, Role::OOut];
const SPLIT_ROLES: [Role; 3] = [Role::In, Role::OutB, Role::OutT];
const MERGE_ROLES: [Role; 3] = [Role::InB, Role::InT, Role::Out];

impl TRec {
    fn slots(&self) -> &[Slot] {
        match self {
            TRec::X(_, s) => s,
            TRec::S(s) | TRec::M(s) => s,
        }
    }

    fn roles(&self) -> &'static [Role] {
        match self {
            TRec::X(..) => &CROSSING_ROLES,
            TRec::S(_) => &SPLIT_ROLES,
            TRec::M(_) => &MERGE_ROLES,
        }
    }

    fn fits(&self, d: &Diagram, r: Record) -> bool {
        match (self, r) {
            (TRec::X(c, _), Record::Crossing(i)) => d.crossings()[i].chirality == *c,
            (TRec::S(_), Record::Split(_)) | (TRec::M(_), Record::Merge(_)) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone)]
struct Template {
    recs: Vec<TRec>,
    internals: usize,
    boundaries: usize,
    chirality: Chirality,
}

impl Template {
    fn new(recs: Vec<TRec>) -> Self {
        let mut internals = 0;
        let mut boundaries = 0;
        let mut chirality = Chirality::One;
        for r in &recs {
            if let TRec::X(c, _) = r {
                chirality = *c;
            }
            for s in r.slots() {
                match *s {
                    I(k) => internals = internals.max(k + 1),
                    B(k) => boundaries = boundaries.max(k + 1),
                }
            }
        }
        Self {
            recs,
            internals,
            boundaries,
            chirality,
        }
    }
}

struct Rule {
    from: Template,
    to: Template,
    anchor: Vec<Slot>,
    chirality: Chirality,
    variant: Variant,
}

struct Match {
    recs: Vec<Record>,
    internal: Vec<usize>,
    boundary: Vec<usize>,
}

fn match_template(
    d: &Diagram,
    (emitter, consumer): &(Vec<Port>, Vec<Port>),
    t: &Template,
    anchor: &[(Slot, usize)],
) -> Option<Match> {
    let n = d.semiarc_count();
    let mut internal = vec![None; t.internals];
    let mut boundary = vec![None; t.boundaries];
    fn get(i: &[Option<usize>], b: &[Option<usize>], s: Slot) -> Option<usize> {
        match s {
            I(k) => i[k],
            B(k) => b[k],
        }
    }
    for &(s, v) in anchor {
        if v >= n {
            return None;
        }
        let cell = match s {
            I(k) => internal.get_mut(k)?,
            B(k) => boundary.get_mut(k)?,
        };
        if cell.is_some_and(|old| old != v) {
            return None;
        }
        *cell = Some(v);
    }
    let mut recs: Vec<Option<Record>> = vec![None; t.recs.len()];
    loop {
        let mut changed = false;
        for (ti, tr) in t.recs.iter().enumerate() {
            if recs[ti].is_some() {
                continue;
            }
            let known = tr
                .slots()
                .iter()
                .zip(tr.roles())
                .find_map(|(&s, &role)| get(&internal, &boundary, s).map(|v| (v, role)));
            if let Some((v, role)) = known {
                let port = if role.is_input() {
                    consumer[v]
                } else {
                    emitter[v]
                };
                if port.role != role || !tr.fits(d, port.record) {
                    return None;
                }
                recs[ti] = Some(port.record);
                changed = true;
            }
        }
        for (ti, tr) in t.recs.iter().enumerate() {
            let Some(r) = recs[ti] else { continue };
            for ((_, arc), &s) in d.ports_of(r).into_iter().zip(tr.slots()) {
                let cell = match s {
                    I(k) => &mut internal[k],
                    B(k) => &mut boundary[k],
                };
                match *cell {
                    Some(v) if v != arc => return None,
                    Some(_) => {}
                    None => {
                        *cell = Some(arc);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let recs: Vec<Record> = recs.into_iter().collect::<Option<_>>()?;
    let distinct: BTreeSet<Record> = recs.iter().copied().collect();
    if distinct.len() != recs.len() {
        return None;
    }
    Some(Match {
        recs,
        internal: internal.into_iter().collect::<Option<_>>()?,
        boundary: boundary.into_iter().collect::<Option<_>>()?,
    })
}

fn replace(d: &Diagram, m: &Match, to: &Template) -> Result<Rewrite> {
    let mut b = Builder::new(d);
    for &r in &m.recs {
        b.remove(r);
    }
    for &a in &m.internal {
        b.dead[a] = true;
    }
    let fresh: Vec<usize> = (0..to.internals).map(|_| b.fresh()).collect();
    let arc = |s: &Slot| match *s {
        I(k) => fresh[k],
        B(k) => m.boundary[k],
    };
    for tr in &to.recs {
        let a: Vec<usize> = tr.slots().iter().map(arc).collect();
        match tr {
            TRec::X(c, _) => b.crossings.push(Some(Crossing {
                chirality: *c,
                u_in: a[0],
                o_in: a[1],
                u_out: a[2],
                o_out: a[3],
            })),
            TRec::S(_) => b.splits.push(Some(Split {
                input: a[0],
                out_b: a[1],
                out_t: a[2],
            })),
            TRec::M(_) => b.merges.push(Some(Merge {
                in_b: a[0],
                in_t: a[1],
                out: a[2],
            })),
        }
    }
    b.finish()
}

fn x(c: Chirality, s: [Slot; 4]) -> TRec {
    TRec::X(c, s)
}

fn contract_rules(kind: Move) -> Vec<Template> {
    use Chirality::{One, Two};
    let mut out = Vec::new();
    for c in [One, Two] {
        match kind {
            Move::R1a => out.push(Template::new(vec![x(c, [B(0), I(0), I(0), B(1)])])),
            Move::R1b => out.push(Template::new(vec![x(c, [I(0), B(0), B(1), I(0)])])),
            Move::R2 => {
                // p = B0, q = B1, p_out = B2, q_out = B3, p_mid = I0, q_mid = I1
                out.push(Template::new(vec![
                    x(c, [B(1), B(0), I(1), I(0)]),
                    x(c.flip(), [I(1), I(0), B(3), B(2)]),
                ]));
                out.push(Template::new(vec![
                    x(c, [I(1), B(0), B(3), I(0)]),
                    x(c.flip(), [B(1), I(0), I(1), B(2)]),
                ]));
            }
            _ => {}
        }
    }
    out
}

fn r3_left(c: Chirality) -> Template {
    // A0 B0 C0 A3 B3 C3 = B0..B5; a1 b1 c1 = I0..I2
    Template::new(match c {
        Chirality::One => vec![
            x(c, [B(0), B(1), I(0), I(1)]),
            x(c, [I(0), B(2), B(3), I(2)]),
            x(c, [I(1), I(2), B(4), B(5)]),
        ],
        Chirality::Two => vec![
            x(c, [B(1), B(0), I(1), I(0)]),
            x(c, [B(2), I(0), I(2), B(3)]),
            x(c, [I(2), I(1), B(5), B(4)]),
        ],
    })
}

fn r3_right(c: Chirality) -> Template {
    Template::new(match c {
        Chirality::One => vec![
            x(c, [B(1), B(2), I(1), I(2)]),
            x(c, [B(0), I(2), I(0), B(5)]),
            x(c, [I(0), I(1), B(3), B(4)]),
        ],
        Chirality::Two => vec![
            x(c, [B(2), B(1), I(2), I(1)]),
            x(c, [I(2), B(0), B(5), I(0)]),
            x(c, [I(1), I(0), B(4), B(3)]),
        ],
    })
}

fn r4_split_bare() -> Template {
    // A = B0, D = B1, x = B2
    Template::new(vec![TRec::S([B(0), B(2), B(1)])])
}

fn r4_split_crossed(c: Chirality) -> Template {
    // a = I0 (split input), b = I1
    let xing = match c {
        Chirality::Two => x(c, [B(0), I(1), I(0), B(1)]),
        Chirality::One => x(c, [I(1), B(0), B(1), I(0)]),
    };
    Template::new(vec![TRec::S([I(0), I(1), B(2)]), xing])
}

fn r4_merge_bare() -> Template {
    // E = B0, F = B1, x = B2
    Template::new(vec![TRec::M([B(2), B(0), B(1)])])
}

fn r4_merge_crossed(c: Chirality) -> Template {
    // a = I0 (merge output), b = I1
    let xing = match c {
        Chirality::Two => x(c, [B(0), I(0), I(1), B(1)]),
        Chirality::One => x(c, [I(0), B(0), B(1), I(1)]),
    };
    Template::new(vec![TRec::M([I(1), B(2), I(0)]), xing])
}

/// R5 pairs as (stem side, strand side).
fn r5_pairs(kind: Move) -> Vec<(Template, Template)> {
    use Chirality::{One, Two};
    match kind {
        // merge below a strand going over; split above a strand going over
        Move::R5a => vec![
            (
                // B T Xin U Xout = B0..B4; s = I0 / m t1 b1 = I0..I2
                Template::new(vec![
                    TRec::M([B(0), B(1), I(0)]),
                    x(One, [I(0), B(2), B(3), B(4)]),
                ]),
                Template::new(vec![
                    x(One, [B(1), B(2), I(1), I(0)]),
                    x(One, [B(0), I(0), I(2), B(4)]),
                    TRec::M([I(2), I(1), B(3)]),
                ]),
            ),
            (
                // Sin Xin Xout B T = B0..B4; s = I0 / xm l r = I0..I2
                Template::new(vec![
                    x(Two, [B(0), B(1), I(0), B(2)]),
                    TRec::S([I(0), B(3), B(4)]),
                ]),
                Template::new(vec![
                    TRec::S([B(0), I(1), I(2)]),
                    x(Two, [I(1), B(1), B(3), I(0)]),
                    x(Two, [I(2), I(0), B(4), B(2)]),
                ]),
            ),
        ],
        Move::R5b => vec![
            (
                // Xin Sin Xout B T = B0..B4; s = I0 / xm l r = I0..I2
                Template::new(vec![
                    x(One, [B(0), B(1), B(2), I(0)]),
                    TRec::S([I(0), B(3), B(4)]),
                ]),
                Template::new(vec![
                    TRec::S([B(1), I(1), I(2)]),
                    x(One, [B(0), I(1), I(0), B(3)]),
                    x(One, [I(0), I(2), B(2), B(4)]),
                ]),
            ),
            (
                // B T Xin Xout O = B0..B4; s = I0 / xm r l = I0..I2
                Template::new(vec![
                    TRec::M([B(0), B(1), I(0)]),
                    x(Two, [B(2), I(0), B(3), B(4)]),
                ]),
                Template::new(vec![
                    x(Two, [B(2), B(1), I(0), I(1)]),
                    x(Two, [I(0), B(0), B(3), I(2)]),
                    TRec::M([I(2), I(1), B(4)]),
                ]),
            ),
        ],
        _ => Vec::new(),
    }
}

fn is_merge_split(t: &Template) -> bool {
    matches!(t.recs[..], [TRec::M(_), TRec::S(_)])
}

/// R6 pairs as (stacked, reassociated, variant).
fn r6_pairs() -> Vec<(Template, Template, Variant)> {
    let mm = (
        // C X T A = B0..B3
        Template::new(vec![
            TRec::M([B(0), B(1), I(0)]),
            TRec::M([I(0), B(2), B(3)]),
        ]),
        Template::new(vec![
            TRec::M([B(1), B(2), I(0)]),
            TRec::M([B(0), I(0), B(3)]),
        ]),
        Variant::Plain,
    );
    let ss = (
        // A T C X = B0..B3
        Template::new(vec![
            TRec::S([B(0), I(0), B(1)]),
            TRec::S([I(0), B(2), B(3)]),
        ]),
        Template::new(vec![
            TRec::S([B(0), B(2), I(0)]),
            TRec::S([I(0), B(3), B(1)]),
        ]),
        Variant::Plain,
    );
    // B T C X = B0..B3
    let ms = || {
        Template::new(vec![
            TRec::M([B(0), B(1), I(0)]),
            TRec::S([I(0), B(2), B(3)]),
        ])
    };
    let ms_plain = (
        ms(),
        Template::new(vec![
            TRec::S([B(0), B(2), I(0)]),
            TRec::M([I(0), B(1), B(3)]),
        ]),
        Variant::Plain,
    );
    let ms_reversed = (
        ms(),
        Template::new(vec![
            TRec::S([B(1), I(0), B(3)]),
            TRec::M([B(0), I(0), B(2)]),
        ]),
        Variant::Reversed,
    );
    vec![mm, ss, ms_plain, ms_reversed]
}

fn rules(kind: Move, dir: MoveDirection, c: Chirality, v: Variant) -> Vec<Rule> {
    use Chirality::{One, Two};
    use MoveDirection::{Contract, Expand};
    let rule =
        |from: Template, to: Template, anchor: Slot, chirality: Chirality, variant: Variant| Rule {
            from,
            to,
            anchor: vec![anchor],
            chirality,
            variant,
        };
    match (kind, dir) {
        (Move::R3, _) => [One, Two]
            .into_iter()
            .map(|c| {
                let (l, r) = (r3_left(c), r3_right(c));
                let (from, to) = if dir == Expand { (l, r) } else { (r, l) };
                Rule {
                    from,
                    to,
                    anchor: vec![I(0), I(1), I(2)],
                    chirality: c,
                    variant: Variant::Plain,
                }
            })
            .collect(),
        (Move::R4a, Expand) => vec![rule(
            r4_split_bare(),
            r4_split_crossed(c),
            B(2),
            c,
            Variant::Plain,
        )],
        (Move::R4b, Expand) => vec![rule(
            r4_merge_bare(),
            r4_merge_crossed(c),
            B(2),
            c,
            Variant::Plain,
        )],
        (Move::R4a, Contract) => [One, Two]
            .into_iter()
            .map(|c| {
                rule(
                    r4_split_crossed(c),
                    r4_split_bare(),
                    I(0),
                    c,
                    Variant::Plain,
                )
            })
            .collect(),
        (Move::R4b, Contract) => [One, Two]
            .into_iter()
            .map(|c| {
                rule(
                    r4_merge_crossed(c),
                    r4_merge_bare(),
                    I(0),
                    c,
                    Variant::Plain,
                )
            })
            .collect(),
        (Move::R5a | Move::R5b, _) => r5_pairs(kind)
            .into_iter()
            .map(|(stem, strand)| {
                let ch = stem.chirality;
                if dir == Expand {
                    rule(stem, strand, I(0), ch, Variant::Plain)
                } else {
                    rule(strand, stem, I(0), ch, Variant::Plain)
                }
            })
            .collect(),
        (Move::R6, Expand) => r6_pairs()
            .into_iter()
            .filter(|(l, _, var)| !is_merge_split(l) || *var == v)
            .map(|(l, r, var)| rule(l, r, I(0), One, var))
            .collect(),
        (Move::R6, Contract) => r6_pairs()
            .into_iter()
            .map(|(l, r, var)| rule(r, l, I(0), One, var))
            .collect(),
        _ => Vec::new(),
    }
}

/// Mutable working copy used while rewriting; removed records become `None`.
struct Builder {
    old_n: usize,
    crossings: Vec<Option<Crossing>>,
    splits: Vec<Option<Split>>,
    merges: Vec<Option<Merge>>,
    circles: Vec<Option<usize>>,
    dead: Vec<bool>,
}

impl Builder {
    fn new(d: &Diagram) -> Self {
        Self {
            old_n: d.semiarc_count(),
            crossings: d.crossings().iter().copied().map(Some).collect(),
            splits: d.splits().iter().copied().map(Some).collect(),
            merges: d.merges().iter().copied().map(Some).collect(),
            circles: d.circles().iter().copied().map(Some).collect(),
            dead: vec![false; d.semiarc_count()],
        }
    }

    fn fresh(&mut self) -> usize {
        self.dead.push(false);
        self.dead.len() - 1
    }

    fn remove(&mut self, r: Record) {
        match r {
            Record::Crossing(i) => self.crossings[i] = None,
            Record::Split(i) => self.splits[i] = None,
            Record::Merge(i) => self.merges[i] = None,
            Record::Circle(i) => self.circles[i] = None,
        }
    }

    /// Points the slot consuming `old` at `new`.
    fn redirect_consumer(&mut self, old: usize, new: usize) {
        for c in self.crossings.iter_mut().flatten() {
            for slot in [&mut c.u_in, &mut c.o_in] {
                if *slot == old {
                    *slot = new;
                    return;
                }
            }
        }
        for s in self.splits.iter_mut().flatten() {
            if s.input == old {
                s.input = new;
                return;
            }
        }
        for m in self.merges.iter_mut().flatten() {
            for slot in [&mut m.in_b, &mut m.in_t] {
                if *slot == old {
                    *slot = new;
                    return;
                }
            }
        }
        unreachable!("semi-arc {old} has a consumer");
    }

    /// Opens semi-arc `s`: returns the end to consume and the end to emit.
    fn cut(&mut self, s: usize) -> (usize, usize) {
        if let Some(slot) = self.circles.iter_mut().find(|c| **c == Some(s)) {
            *slot = None;
            return (s, s);
        }
        let t = self.fresh();
        self.redirect_consumer(s, t);
        (s, t)
    }

    /// Fuses chains of semi-arcs that ran through removed crossings.
    fn join(&mut self, pass: &[(usize, usize)]) -> Result<()> {
        let n = self.dead.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in pass {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        }
        let mut emitted = vec![false; n];
        let mut consumed = vec![false; n];
        for c in self.crossings.iter().flatten() {
            consumed[c.u_in] = true;
            consumed[c.o_in] = true;
            emitted[c.u_out] = true;
            emitted[c.o_out] = true;
        }
        for s in self.splits.iter().flatten() {
            consumed[s.input] = true;
            emitted[s.out_b] = true;
            emitted[s.out_t] = true;
        }
        for m in self.merges.iter().flatten() {
            consumed[m.in_b] = true;
            consumed[m.in_t] = true;
            emitted[m.out] = true;
        }
        for c in self.circles.iter().flatten() {
            consumed[*c] = true;
            emitted[*c] = true;
        }
        let mut classes: std::collections::BTreeMap<usize, BTreeSet<usize>> = Default::default();
        for &(a, b) in pass {
            let r = find(&mut parent, a);
            classes.entry(r).or_default().extend([a, b]);
        }
        for class in classes.values() {
            let tails: Vec<usize> = class.iter().copied().filter(|&a| emitted[a]).collect();
            let heads: Vec<usize> = class.iter().copied().filter(|&a| consumed[a]).collect();
            let keep = match (&tails[..], &heads[..]) {
                (&[t], &[h]) => {
                    if t != h {
                        self.redirect_consumer(h, t);
                    }
                    t
                }
                ([], []) => {
                    let first = *class.iter().next().expect("non-empty");
                    self.circles.push(Some(first));
                    first
                }
                _ => return Err(mismatch("strands do not close up")),
            };
            for &a in class {
                if a != keep {
                    self.dead[a] = true;
                }
            }
        }
        Ok(())
    }

    fn finish(self) -> Result<Rewrite> {
        let mut map = vec![None; self.dead.len()];
        let mut next = 0;
        for (a, &dead) in self.dead.iter().enumerate() {
            if !dead {
                map[a] = Some(next);
                next += 1;
            }
        }
        let m = |a: usize| map[a].expect("live semi-arc");
        let diagram = Diagram::new(
            next,
            self.crossings
                .iter()
                .flatten()
                .map(|c| Crossing {
                    chirality: c.chirality,
                    u_in: m(c.u_in),
                    o_in: m(c.o_in),
                    u_out: m(c.u_out),
                    o_out: m(c.o_out),
                })
                .collect(),
            self.splits
                .iter()
                .flatten()
                .map(|s| Split {
                    input: m(s.input),
                    out_b: m(s.out_b),
                    out_t: m(s.out_t),
                })
                .collect(),
            self.merges
                .iter()
                .flatten()
                .map(|g| Merge {
                    in_b: m(g.in_b),
                    in_t: m(g.in_t),
                    out: m(g.out),
                })
                .collect(),
            self.circles.iter().flatten().map(|&c| m(c)).collect(),
        )?;
        Ok(Rewrite {
            diagram,
            arc_map: map[..self.old_n].to_vec(),
        })
    }
}
