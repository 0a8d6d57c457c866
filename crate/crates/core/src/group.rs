use crate::error::{ensure_law, Error, Result, ValidationReport, Violation};
use crate::table::OpTable;

/// A finite group given by its Cayley table; identity and inverses are cached at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mul: OpTable,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table and caches identity and inverses.
    pub fn from_table(mul: OpTable) -> Result<Self> {
        check_group_table(&mul)
            .into_result()
            .map_err(Error::NotAGroup)?;
        let n = mul.order();
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul.get(e, a) == a && mul.get(a, e) == a))
            .expect("checked");
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mul.get(a, b) == identity)
                    .expect("checked")
            })
            .collect();
        Ok(Self {
            mul,
            identity,
            inverse,
        })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        Self::from_table(OpTable::from_rows(rows)?)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Z_n with element k encoding the residue k.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        Self::from_table(OpTable::from_fn(n, |a, b| (a + b) % n)).expect("Z_n")
    }

    /// Dihedral group of order 2n; id `j*n + i` encodes rⁱsʲ.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0, "dihedral group of order 0");
        Self::from_table(OpTable::from_fn(2 * n, |x, y| {
            let (a, b) = (x % n, x / n);
            let (c, d) = (y % n, y / n);
            let i = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            ((b + d) % 2) * n + i
        }))
        .expect("D_n")
    }

    /// Symmetric group on k points, elements in lexicographic order of their images, `(ab)(i) = a(b(i))`.
    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
        let n = perms.len();
        Self::from_table(OpTable::from_fn(n, |x, y| {
            let p: Vec<usize> = (0..k).map(|i| perms[x][perms[y][i]]).collect();
            index(&p)
        }))
        .expect("S_k")
    }

    /// Direct product with id `a * |H| + b` for (a, b).
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let m = h.order();
        Self::from_table(OpTable::from_fn(g.order() * m, |x, y| {
            g.mul(x / m, y / m) * m + h.mul(x % m, y % m)
        }))
        .expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.mul.order()
    }

    pub fn table(&self) -> &OpTable {
        &self.mul
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.get(a, b)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    /// `b⁻¹ a b`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| self.is_central(a))
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for v in 0..k {
            if !prefix.contains(&v) {
                prefix.push(v);
                go(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), k, &mut out);
    out
}

/// Checks closure, associativity, identity and inverses, in that order.
pub fn check_group(rows: &[Vec<usize>]) -> Result<ValidationReport> {
    let n = rows.len();
    for (a, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable(format!(
                "row {a} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(b) = row.iter().position(|&v| v >= n) {
            return Ok(ValidationReport::Invalid(Violation::new(
                "closure",
                vec![a, b],
            )));
        }
    }
    Ok(check_group_table(&OpTable::from_rows(rows)?))
}

/// Same as [`check_group`] for a table that is already closed.
pub fn check_group_table(mul: &OpTable) -> ValidationReport {
    let check = || -> Result<(), Violation> {
        let n = mul.order();
        ensure_law!(n > 0, "identity",);
        for a in 0..n {
            for b in 0..n {
                let ab = mul.get(a, b);
                for c in 0..n {
                    ensure_law!(
                        mul.get(ab, c) == mul.get(a, mul.get(b, c)),
                        "associativity",
                        a,
                        b,
                        c
                    );
                }
            }
        }
        let e = (0..n).find(|&e| (0..n).all(|a| mul.get(e, a) == a && mul.get(a, e) == a));
        let Some(e) = e else {
            return Err(Violation::new("identity", vec![]));
        };
        for a in 0..n {
            ensure_law!(
                (0..n).any(|b| mul.get(a, b) == e && mul.get(b, a) == e),
                "inverses",
                a
            );
        }
        Ok(())
    };
    check().into()
}
