//! Biquandles: two operations ⋆ (under) and ◦ (over) on a finite carrier.

mod examples;
mod parallel;

pub use examples::{
    make_alexander, make_conjugation, make_group_pair, make_quaternion, make_quaternion_capped,
    make_wada, quaternion_decode, quaternion_encode, WadaVariant, QUATERNION_CAP,
};
pub use parallel::{pair_map_over, pair_map_under, parallel_op, type_of, ParallelOps};

use crate::error::{ensure_law, Error, Result, ValidationReport, Violation};
use crate::perm::Permutation;
use crate::table::OpTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biquandle {
    under: OpTable,
    over: OpTable,
    under_inv: OpTable,
    over_inv: OpTable,
    sideways: Permutation,
    sideways_inv: Permutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl Biquandle {
    /// Validates both tables and caches the inverse columns and the sideways map.
    pub fn new(under: OpTable, over: OpTable) -> Result<Self> {
        check_biquandle(&under, &over)
            .into_result()
            .map_err(Error::NotABiquandle)?;
        let n = under.order();
        let invert = |t: &OpTable| {
            let mut inv = vec![0; n * n];
            for y in 0..n {
                for x in 0..n {
                    inv[t.get(x, y) * n + y] = x;
                }
            }
            OpTable::from_fn(n, |x, y| inv[x * n + y])
        };
        let sideways = Permutation::new(
            (0..n * n)
                .map(|i| {
                    let (x, y) = (i / n, i % n);
                    over.get(y, x) * n + under.get(x, y)
                })
                .collect(),
        )
        .expect("checked bijective");
        Ok(Self {
            under_inv: invert(&under),
            over_inv: invert(&over),
            sideways_inv: sideways.inverse(),
            sideways,
            under,
            over,
        })
    }

    pub fn from_rows(under: &[Vec<usize>], over: &[Vec<usize>]) -> Result<Self> {
        let (u, o) = (OpTable::from_rows(under)?, OpTable::from_rows(over)?);
        if u.order() != o.order() {
            return Err(Error::MalformedTable(format!(
                "under has order {}, over has order {}",
                u.order(),
                o.order()
            )));
        }
        Self::new(u, o)
    }

    /// Both operations are the left projection.
    pub fn trivial(n: usize) -> Self {
        Self::new(OpTable::projection(n), OpTable::projection(n)).expect("trivial biquandle")
    }

    pub fn order(&self) -> usize {
        self.under.order()
    }

    /// `x ⋆ y`
    #[inline]
    pub fn under(&self, x: usize, y: usize) -> usize {
        self.under.get(x, y)
    }

    /// `x ◦ y`
    #[inline]
    pub fn over(&self, x: usize, y: usize) -> usize {
        self.over.get(x, y)
    }

    /// `x ⋆⁻¹ y`, the preimage of x under `⋆y`.
    #[inline]
    pub fn under_inv(&self, x: usize, y: usize) -> usize {
        self.under_inv.get(x, y)
    }

    /// `x ◦⁻¹ y`
    #[inline]
    pub fn over_inv(&self, x: usize, y: usize) -> usize {
        self.over_inv.get(x, y)
    }

    pub fn under_table(&self) -> &OpTable {
        &self.under
    }

    pub fn over_table(&self) -> &OpTable {
        &self.over
    }

    /// `S(x, y) = (y ◦ x, x ⋆ y)`
    pub fn sideways(&self, x: usize, y: usize) -> (usize, usize) {
        let n = self.order();
        let v = self.sideways.apply(x * n + y);
        (v / n, v % n)
    }

    pub fn sideways_inv(&self, x: usize, y: usize) -> (usize, usize) {
        let n = self.order();
        let v = self.sideways_inv.apply(x * n + y);
        (v / n, v % n)
    }

    /// The sub-biquandle on `elements`, renumbered by position; `None` if not closed.
    pub fn restrict(&self, elements: &[usize]) -> Option<Biquandle> {
        let mut local = vec![usize::MAX; self.order()];
        for (i, &x) in elements.iter().enumerate() {
            local[x] = i;
        }
        let k = elements.len();
        let mut closed = true;
        let mut pick = |t: &OpTable| {
            OpTable::from_fn(k, |i, j| {
                let v = local[t.get(elements[i], elements[j])];
                if v == usize::MAX {
                    closed = false;
                    0
                } else {
                    v
                }
            })
        };
        let (u, o) = (pick(&self.under), pick(&self.over));
        if !closed {
            return None;
        }
        Biquandle::new(u, o).ok()
    }
}

pub fn sideways_solve(x: &Biquandle, direction: Direction, pair: (usize, usize)) -> (usize, usize) {
    match direction {
        Direction::Forward => x.sideways(pair.0, pair.1),
        Direction::Backward => x.sideways_inv(pair.0, pair.1),
    }
}

/// Checks B1, B2 and B3 on raw rows.
pub fn check_biquandle_rows(under: &[Vec<usize>], over: &[Vec<usize>]) -> Result<ValidationReport> {
    let (u, o) = (OpTable::from_rows(under)?, OpTable::from_rows(over)?);
    if u.order() != o.order() {
        return Err(Error::MalformedTable("tables differ in size".into()));
    }
    Ok(check_biquandle(&u, &o))
}

pub fn check_biquandle(under: &OpTable, over: &OpTable) -> ValidationReport {
    biquandle_laws(under, over).into()
}

fn bijective_columns(t: &OpTable, law: &'static str) -> Result<(), Violation> {
    let n = t.order();
    for a in 0..n {
        let mut seen = vec![usize::MAX; n];
        for x in 0..n {
            let v = t.get(x, a);
            ensure_law!(seen[v] == usize::MAX, law, seen[v], x, a);
            seen[v] = x;
        }
    }
    Ok(())
}

pub(crate) fn biquandle_laws(u: &OpTable, o: &OpTable) -> Result<(), Violation> {
    let n = u.order();
    for x in 0..n {
        ensure_law!(u.get(x, x) == o.get(x, x), "B1", x);
    }
    bijective_columns(u, "B2 under")?;
    bijective_columns(o, "B2 over")?;
    let mut seen = vec![usize::MAX; n * n];
    for x in 0..n {
        for y in 0..n {
            let v = o.get(y, x) * n + u.get(x, y);
            if seen[v] != usize::MAX {
                let p = seen[v];
                return Err(Violation::new("B2 sideways", vec![p / n, p % n, x, y]));
            }
            seen[v] = x * n + y;
        }
    }
    exchange_laws(u, o)
}

/// The three exchange laws of B3.
pub(crate) fn exchange_laws(u: &OpTable, o: &OpTable) -> Result<(), Violation> {
    let n = u.order();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (zy_u, yz_o, yz_u) = (u.get(z, y), o.get(y, z), u.get(y, z));
                ensure_law!(
                    u.get(u.get(x, y), zy_u) == u.get(u.get(x, z), yz_o),
                    "B3-1",
                    x,
                    y,
                    z
                );
                ensure_law!(
                    o.get(u.get(x, y), zy_u) == u.get(o.get(x, z), yz_o),
                    "B3-2",
                    x,
                    y,
                    z
                );
                ensure_law!(
                    o.get(o.get(x, y), o.get(z, y)) == o.get(o.get(x, z), yz_u),
                    "B3-3",
                    x,
                    y,
                    z
                );
            }
        }
    }
    Ok(())
}
