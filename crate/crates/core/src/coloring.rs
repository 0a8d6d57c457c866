//! Colorings of diagrams by an MCB: counting, enumeration and checking.

use crate::diagram::{Chirality, Diagram};
use crate::error::{Error, Result};
use crate::mcb::Mcb;

const NONE: usize = usize::MAX;

/// True iff `colors` satisfies every crossing and vertex constraint of `d`.
pub fn check_coloring(m: &Mcb, d: &Diagram, colors: &[usize]) -> Result<bool> {
    if colors.len() < d.semiarc_count() {
        return Err(Error::IncompleteAssignment(colors.len()));
    }
    let c = |a: usize| colors[a];
    if colors.iter().any(|&v| v >= m.order()) {
        return Ok(false);
    }
    for x in d.crossings() {
        let ok = match x.chirality {
            Chirality::One => {
                c(x.u_out) == m.under(c(x.u_in), c(x.o_out))
                    && c(x.o_in) == m.over(c(x.o_out), c(x.u_in))
            }
            Chirality::Two => {
                c(x.u_in) == m.under(c(x.u_out), c(x.o_in))
                    && c(x.o_out) == m.over(c(x.o_in), c(x.u_out))
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    let vertex = |a: usize, b: usize, t: usize| m.triangle(c(a), c(b)) == Ok(c(t));
    Ok(d.splits().iter().all(|s| vertex(s.input, s.out_b, s.out_t))
        && d.merges().iter().all(|g| vertex(g.out, g.in_b, g.in_t)))
}

/// Precomputed lookups for the search.
struct Tables {
    n: usize,
    under: Vec<usize>,
    over: Vec<usize>,
    under_inv: Vec<usize>,
    over_inv: Vec<usize>,
    sideways_inv: Vec<(usize, usize)>,
    block: Vec<usize>,
    /// `a △ b`, or NONE across blocks
    tri: Vec<usize>,
    /// `b · y` within a block, or NONE
    mul: Vec<usize>,
    /// all b with `a △ b = t`, indexed by `a * n + t`
    tri_solutions: Vec<Vec<usize>>,
}

impl Tables {
    fn new(m: &Mcb) -> Self {
        let n = m.order();
        let x = m.base();
        let grid = |f: &dyn Fn(usize, usize) -> usize| -> Vec<usize> {
            (0..n * n).map(|i| f(i / n, i % n)).collect()
        };
        let tri = grid(&|a, b| {
            if m.same_block(a, b) {
                m.triangle(a, b).unwrap_or(NONE)
            } else {
                NONE
            }
        });
        let mut tri_solutions = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                let t = tri[a * n + b];
                if t != NONE {
                    tri_solutions[a * n + t].push(b);
                }
            }
        }
        Self {
            n,
            under: grid(&|a, b| x.under(a, b)),
            over: grid(&|a, b| x.over(a, b)),
            under_inv: grid(&|a, b| x.under_inv(a, b)),
            over_inv: grid(&|a, b| x.over_inv(a, b)),
            sideways_inv: (0..n * n).map(|i| x.sideways_inv(i / n, i % n)).collect(),
            block: (0..n).map(|a| m.block_of(a)).collect(),
            tri,
            mul: grid(&|a, b| {
                if m.same_block(a, b) {
                    m.mul(a, b)
                } else {
                    NONE
                }
            }),
            tri_solutions,
        }
    }

    fn u(&self, a: usize, b: usize) -> usize {
        self.under[a * self.n + b]
    }

    fn o(&self, a: usize, b: usize) -> usize {
        self.over[a * self.n + b]
    }
}

#[derive(Debug, Clone, Copy)]
enum Constraint {
    /// `[u_in, o_in, u_out, o_out]`
    Type1([usize; 4]),
    Type2([usize; 4]),
    /// `[a, b, a △ b]`
    Vertex([usize; 3]),
}

impl Constraint {
    fn arcs(&self) -> &[usize] {
        match self {
            Constraint::Type1(a) | Constraint::Type2(a) => a,
            Constraint::Vertex(a) => a,
        }
    }
}

enum Fired {
    Conflict,
    Idle,
    Complete([usize; 4]),
}

fn fire(t: &Tables, con: &Constraint, colors: &[usize]) -> Fired {
    let known = |a: usize| (colors[a] != NONE).then_some(colors[a]);
    let n = t.n;
    match *con {
        Constraint::Type1(arcs) => {
            // u_out = u_in ⋆ o_out, o_in = o_out ◦ u_in
            let [a, b, c, d] = arcs.map(known);
            let (a, d) = match (a, b, c, d) {
                (Some(a), _, _, Some(d)) => (a, d),
                (Some(a), Some(b), _, _) => (a, t.over_inv[b * n + a]),
                (_, _, Some(c), Some(d)) => (t.under_inv[c * n + d], d),
                (_, Some(b), Some(c), _) => t.sideways_inv[b * n + c],
                _ => return Fired::Idle,
            };
            Fired::Complete([a, t.o(d, a), t.u(a, d), d])
        }
        Constraint::Type2(arcs) => {
            // u_in = u_out ⋆ o_in, o_out = o_in ◦ u_out
            let [a, b, c, d] = arcs.map(known);
            let (c, b) = match (a, b, c, d) {
                (_, Some(b), Some(c), _) => (c, b),
                (Some(a), Some(b), _, _) => (t.under_inv[a * n + b], b),
                (_, _, Some(c), Some(d)) => (c, t.over_inv[d * n + c]),
                (Some(a), _, _, Some(d)) => t.sideways_inv[d * n + a],
                _ => return Fired::Idle,
            };
            Fired::Complete([t.u(c, b), b, c, t.o(b, c)])
        }
        Constraint::Vertex(arcs) => {
            let [a, b, tr] = arcs.map(known);
            let (a, b) = match (a, b, tr) {
                (Some(a), Some(b), _) => (a, b),
                (None, Some(b), Some(tr)) => {
                    let y = t.over_inv[tr * n + b];
                    if t.block[y] != t.block[b] {
                        return Fired::Conflict;
                    }
                    (t.mul[b * n + y], b)
                }
                (Some(a), None, Some(tr)) => match t.tri_solutions[a * n + tr][..] {
                    [] => return Fired::Conflict,
                    [b] => (a, b),
                    _ => return Fired::Idle,
                },
                _ => return Fired::Idle,
            };
            let tri = t.tri[a * n + b];
            if tri == NONE {
                return Fired::Conflict;
            }
            Fired::Complete([a, b, tri, NONE])
        }
    }
}

fn constraints(d: &Diagram) -> Vec<Constraint> {
    let mut out = Vec::new();
    for x in d.crossings() {
        let arcs = [x.u_in, x.o_in, x.u_out, x.o_out];
        out.push(match x.chirality {
            Chirality::One => Constraint::Type1(arcs),
            Chirality::Two => Constraint::Type2(arcs),
        });
    }
    for s in d.splits() {
        out.push(Constraint::Vertex([s.input, s.out_b, s.out_t]));
    }
    for g in d.merges() {
        out.push(Constraint::Vertex([g.out, g.in_b, g.in_t]));
    }
    out
}

struct Search<'a> {
    t: &'a Tables,
    cons: Vec<Constraint>,
    watch: Vec<Vec<usize>>,
    colors: Vec<usize>,
    trail: Vec<usize>,
    queue: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(t: &'a Tables, d: &Diagram) -> Self {
        let cons = constraints(d);
        let mut watch = vec![Vec::new(); d.semiarc_count()];
        for (i, c) in cons.iter().enumerate() {
            for &a in c.arcs() {
                if !watch[a].contains(&i) {
                    watch[a].push(i);
                }
            }
        }
        Self {
            t,
            cons,
            watch,
            colors: vec![NONE; d.semiarc_count()],
            trail: Vec::new(),
            queue: Vec::new(),
        }
    }

    /// Assigns and propagates; false on conflict.
    fn assign(&mut self, arc: usize, v: usize) -> bool {
        self.colors[arc] = v;
        self.trail.push(arc);
        self.queue.clear();
        self.queue.push(arc);
        while let Some(a) = self.queue.pop() {
            for wi in 0..self.watch[a].len() {
                let ci = self.watch[a][wi];
                let con = self.cons[ci];
                match fire(self.t, &con, &self.colors) {
                    Fired::Conflict => return false,
                    Fired::Idle => {}
                    Fired::Complete(vals) => {
                        for (&arc, &val) in con.arcs().iter().zip(&vals) {
                            match self.colors[arc] {
                                NONE => {
                                    self.colors[arc] = val;
                                    self.trail.push(arc);
                                    self.queue.push(arc);
                                }
                                old if old != val => return false,
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for a in self.trail.drain(mark..) {
            self.colors[a] = NONE;
        }
    }

    fn run(&mut self, from: usize, visit: &mut dyn FnMut(&[usize])) {
        let Some(arc) = (from..self.colors.len()).find(|&a| self.colors[a] == NONE) else {
            visit(&self.colors);
            return;
        };
        for v in 0..self.t.n {
            let mark = self.trail.len();
            if self.assign(arc, v) {
                self.run(arc + 1, visit);
            }
            self.undo(mark);
        }
    }

    /// Runs the subtree where the lowest semi-arc has color v.
    fn run_root(&mut self, v: usize, visit: &mut dyn FnMut(&[usize])) {
        if self.colors.is_empty() {
            if v == 0 {
                visit(&self.colors);
            }
            return;
        }
        if self.assign(0, v) {
            self.run(1, visit);
        }
        self.undo(0);
    }
}

/// Streams every coloring in a fixed order.
pub fn for_each_coloring(m: &Mcb, d: &Diagram, mut visit: impl FnMut(&[usize])) {
    let t = Tables::new(m);
    let mut s = Search::new(&t, d);
    s.run(0, &mut visit);
}

pub fn count_colorings(m: &Mcb, d: &Diagram) -> u64 {
    count_colorings_parallel(m, d, 1)
}

pub fn enumerate_colorings(m: &Mcb, d: &Diagram) -> Vec<Vec<usize>> {
    enumerate_colorings_parallel(m, d, 1)
}

/// Splits the search on the color of semi-arc 0 across `jobs` threads.
fn split_search<T: Send>(
    m: &Mcb,
    d: &Diagram,
    jobs: usize,
    init: impl Fn() -> T + Sync,
    step: impl Fn(&mut T, &[usize]) + Sync,
) -> Vec<T> {
    let t = Tables::new(m);
    let n = m.order();
    let jobs = jobs.clamp(1, n.max(1));
    let work = |v: usize| {
        let mut acc = init();
        let mut s = Search::new(&t, d);
        s.run_root(v, &mut |c| step(&mut acc, c));
        acc
    };
    if jobs == 1 {
        return (0..n).map(work).collect();
    }
    let mut parts: Vec<(usize, T)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                let work = &work;
                scope.spawn(move || {
                    (w..n)
                        .step_by(jobs)
                        .map(|v| (v, work(v)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    parts.sort_by_key(|&(v, _)| v);
    parts.into_iter().map(|(_, acc)| acc).collect()
}

pub fn count_colorings_parallel(m: &Mcb, d: &Diagram, jobs: usize) -> u64 {
    split_search(m, d, jobs, || 0u64, |acc, _| *acc += 1)
        .into_iter()
        .sum()
}

pub fn enumerate_colorings_parallel(m: &Mcb, d: &Diagram, jobs: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> =
        split_search(m, d, jobs, Vec::new, |acc, c| acc.push(c.to_vec()))
            .into_iter()
            .flatten()
            .collect();
    all.sort();
    all
}

/// `id:color` pairs separated by spaces.
pub fn render_coloring(colors: &[usize]) -> String {
    colors
        .iter()
        .enumerate()
        .map(|(a, c)| format!("{a}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}
