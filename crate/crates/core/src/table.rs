use crate::error::{Error, Result};

/// A total binary operation on `0..n`, stored row-major: `get(x, y)` is row x, column y.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpTable {
    n: usize,
    data: Vec<usize>,
}

impl OpTable {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                data.push(f(x, y));
            }
        }
        let t = Self { n, data };
        debug_assert!(t.data.iter().all(|&v| v < n.max(1)));
        t
    }

    /// Builds a table from rows, rejecting ragged or out-of-range input.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {x} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::MalformedTable(format!(
                        "entry ({x}, {y}) = {v} is out of range 0..{n}"
                    )));
                }
                data.push(v);
            }
        }
        Ok(Self { n, data })
    }

    /// Left projection `x, y ↦ x`.
    pub fn projection(n: usize) -> Self {
        Self::from_fn(n, |x, _| x)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.data[x * self.n + y]
    }

    pub fn set(&mut self, x: usize, y: usize, v: usize) {
        assert!(v < self.n, "value {v} out of range");
        self.data[x * self.n + y] = v;
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.data
            .chunks(self.n.max(1))
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// The map `x ↦ x·y` for fixed y.
    pub fn column(&self, y: usize) -> Vec<usize> {
        (0..self.n).map(|x| self.get(x, y)).collect()
    }

    pub fn is_projection(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.get(x, y) == x))
    }
}

/// A binary operation defined on a subset of pairs, e.g. the triangle map on P.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialOp {
    n: usize,
    data: Vec<Option<usize>>,
}

impl PartialOp {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            data: vec![None; n * n],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Option<usize> {
        self.data[x * self.n + y]
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.get(x, y).is_some()
    }

    pub fn insert(&mut self, x: usize, y: usize, v: usize) -> Option<usize> {
        self.data[x * self.n + y].replace(v)
    }

    pub fn len(&self) -> usize {
        self.data.iter().filter(|v| v.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Defined entries `(x, y, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter_map(move |(i, v)| v.map(|v| (i / self.n, i % self.n, v)))
    }

    /// For each x, the sorted list of y with `(x, y)` defined.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for (x, y, _) in self.entries() {
            out[x].push(y);
        }
        out
    }

    /// For each y, the sorted list of x with `(x, y)` defined.
    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for (x, y, _) in self.entries() {
            out[y].push(x);
        }
        out
    }
}
