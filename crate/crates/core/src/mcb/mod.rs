//! Multiple conjugation biquandles: a biquandle that is a disjoint union of groups.

mod pmb;
mod primitive;

pub use pmb::{check_pmb, pmb_from_mcb, Pmb};
pub use primitive::{
    check_primitive, decompose_universal, disjoint_union, groups_from_triangle, Decomposition,
    PrimitiveStructure,
};

use std::ops::Deref;

use crate::biquandle::{biquandle_laws, exchange_laws, Biquandle};
use crate::error::{ensure_law, Error, Result, ValidationReport, Violation};
use crate::group::FiniteGroup;
use crate::table::{OpTable, PartialOp};

/// Candidate MCB data: two operations, a partition into blocks and a group per block.
///
/// Only the shape is validated here (partition and group tables); the axioms are
/// checked by [`check_mcb_def1`] and [`check_mcb_def2`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McbTables {
    under: OpTable,
    over: OpTable,
    blocks: Vec<Vec<usize>>,
    groups: Vec<FiniteGroup>,
    block_of: Vec<usize>,
    local: Vec<usize>,
}

impl McbTables {
    /// `mul[λ]` is the Cayley table of block λ written in global element ids.
    pub fn new(
        under: OpTable,
        over: OpTable,
        blocks: Vec<Vec<usize>>,
        mul: &[Vec<Vec<usize>>],
    ) -> Result<Self> {
        let (block_of, local) = partition(under.order(), &blocks)?;
        if over.order() != under.order() {
            return Err(Error::MalformedTable(
                "under and over differ in size".into(),
            ));
        }
        if mul.len() != blocks.len() {
            return Err(Error::MalformedTable(format!(
                "{} group tables for {} blocks",
                mul.len(),
                blocks.len()
            )));
        }
        let mut groups = Vec::with_capacity(blocks.len());
        for (lambda, (block, rows)) in blocks.iter().zip(mul).enumerate() {
            let mut local_rows = Vec::with_capacity(rows.len());
            for row in rows {
                let mut r = Vec::with_capacity(row.len());
                for &v in row {
                    if v >= block_of.len() || block_of[v] != lambda {
                        return Err(Error::MalformedTable(format!(
                            "group table of block {lambda} contains {v}, which lies outside the block"
                        )));
                    }
                    r.push(local[v]);
                }
                local_rows.push(r);
            }
            if local_rows.len() != block.len() {
                return Err(Error::MalformedTable(format!(
                    "group table of block {lambda} has {} rows, expected {}",
                    local_rows.len(),
                    block.len()
                )));
            }
            groups.push(FiniteGroup::from_rows(&local_rows)?);
        }
        Ok(Self {
            under,
            over,
            blocks,
            groups,
            block_of,
            local,
        })
    }

    /// Block λ's group is `groups[λ]` with local id i standing for `blocks[λ][i]`.
    pub fn from_groups(
        under: OpTable,
        over: OpTable,
        blocks: Vec<Vec<usize>>,
        groups: Vec<FiniteGroup>,
    ) -> Result<Self> {
        if groups.len() != blocks.len()
            || groups
                .iter()
                .zip(&blocks)
                .any(|(g, b)| g.order() != b.len())
        {
            return Err(Error::MalformedTable(
                "group orders differ from block sizes".into(),
            ));
        }
        let mul: Vec<Vec<Vec<usize>>> = blocks
            .iter()
            .zip(&groups)
            .map(|(block, g)| {
                (0..g.order())
                    .map(|i| (0..g.order()).map(|j| block[g.mul(i, j)]).collect())
                    .collect()
            })
            .collect();
        Self::new(under, over, blocks, &mul)
    }

    pub fn order(&self) -> usize {
        self.under.order()
    }

    #[inline]
    pub fn under(&self, x: usize, y: usize) -> usize {
        self.under.get(x, y)
    }

    #[inline]
    pub fn over(&self, x: usize, y: usize) -> usize {
        self.over.get(x, y)
    }

    pub fn under_table(&self) -> &OpTable {
        &self.under
    }

    pub fn over_table(&self) -> &OpTable {
        &self.over
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, lambda: usize) -> &[usize] {
        &self.blocks[lambda]
    }

    pub fn group(&self, lambda: usize) -> &FiniteGroup {
        &self.groups[lambda]
    }

    #[inline]
    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    #[inline]
    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// Product of two elements of one block.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let lambda = self.block_of[a];
        debug_assert_eq!(lambda, self.block_of[b], "product across blocks");
        self.blocks[lambda][self.groups[lambda].mul(self.local[a], self.local[b])]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        let lambda = self.block_of[a];
        self.blocks[lambda][self.groups[lambda].inv(self.local[a])]
    }

    /// `e_λ`
    pub fn identity(&self, lambda: usize) -> usize {
        self.blocks[lambda][self.groups[lambda].identity()]
    }

    /// `e_a`, the identity of the block containing a.
    pub fn identity_of(&self, a: usize) -> usize {
        self.identity(self.block_of[a])
    }

    /// `a △ b = (b⁻¹a) ◦ b`
    pub fn triangle(&self, a: usize, b: usize) -> Result<usize> {
        if !self.same_block(a, b) {
            return Err(Error::BlockMismatch(a, b));
        }
        Ok(self.triangle_unchecked(a, b))
    }

    #[inline]
    pub(crate) fn triangle_unchecked(&self, a: usize, b: usize) -> usize {
        self.over(self.mul(self.inv(b), a), b)
    }

    /// All products `a·b` with a, b in one block, in global ids.
    pub fn product_map(&self) -> PartialOp {
        let mut p = PartialOp::empty(self.order());
        for block in &self.blocks {
            for &a in block {
                for &b in block {
                    p.insert(a, b, self.mul(a, b));
                }
            }
        }
        p
    }

    /// Cayley table of block λ in global ids, rows in block order.
    pub fn global_mul_rows(&self, lambda: usize) -> Vec<Vec<usize>> {
        let block = &self.blocks[lambda];
        block
            .iter()
            .map(|&a| block.iter().map(|&b| self.mul(a, b)).collect())
            .collect()
    }

    /// Replaces an under entry; used to build mutants.
    pub fn with_under(&self, x: usize, y: usize, v: usize) -> Self {
        let mut m = self.clone();
        m.under.set(x, y, v);
        m
    }

    pub fn with_over(&self, x: usize, y: usize, v: usize) -> Self {
        let mut m = self.clone();
        m.over.set(x, y, v);
        m
    }

    /// Transports the group of block λ along a permutation of its local ids.
    pub fn with_relabelled_group(&self, lambda: usize, sigma: &[usize]) -> Result<Self> {
        let g = &self.groups[lambda];
        let mut inv_sigma = vec![0; sigma.len()];
        for (i, &s) in sigma.iter().enumerate() {
            inv_sigma[s] = i;
        }
        let table = OpTable::from_fn(g.order(), |i, j| sigma[g.mul(inv_sigma[i], inv_sigma[j])]);
        let mut m = self.clone();
        m.groups[lambda] = FiniteGroup::from_table(table)?;
        Ok(m)
    }
}

fn partition(n: usize, blocks: &[Vec<usize>]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut block_of = vec![usize::MAX; n];
    let mut local = vec![0; n];
    for (lambda, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::MalformedTable(format!("block {lambda} is empty")));
        }
        for (i, &x) in block.iter().enumerate() {
            if x >= n {
                return Err(Error::MalformedTable(format!(
                    "element {x} out of range 0..{n}"
                )));
            }
            if block_of[x] != usize::MAX {
                return Err(Error::MalformedTable(format!(
                    "element {x} lies in two blocks"
                )));
            }
            block_of[x] = lambda;
            local[x] = i;
        }
    }
    if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
        return Err(Error::MalformedTable(format!(
            "element {x} lies in no block"
        )));
    }
    Ok((block_of, local))
}

fn homomorphism_clause(m: &McbTables) -> Result<(), Violation> {
    let n = m.order();
    for (op, law_block, law_hom) in [
        (&m.under, "hom under block", "hom under"),
        (&m.over, "hom over block", "hom over"),
    ] {
        for block in &m.blocks {
            for x in 0..n {
                let target = m.block_of(op.get(block[0], x));
                for &a in block {
                    ensure_law!(
                        m.block_of(op.get(a, x)) == target,
                        law_block,
                        block[0],
                        a,
                        x
                    );
                }
                for &a in block {
                    for &b in block {
                        ensure_law!(
                            op.get(m.mul(a, b), x) == m.mul(op.get(a, x), op.get(b, x)),
                            law_hom,
                            a,
                            b,
                            x
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

fn product_laws(m: &McbTables, with_identity: bool) -> Result<(), Violation> {
    let n = m.order();
    for lambda in 0..m.blocks.len() {
        let block = &m.blocks[lambda];
        if with_identity {
            let e = m.identity(lambda);
            for x in 0..n {
                ensure_law!(m.under(x, e) == x, "identity under", x, e);
                ensure_law!(m.over(x, e) == x, "identity over", x, e);
            }
        }
        for &a in block {
            for &b in block {
                let ab = m.mul(a, b);
                let ba = m.over(b, a);
                for x in 0..n {
                    ensure_law!(
                        m.under(x, ab) == m.under(m.under(x, a), ba),
                        "product under",
                        x,
                        a,
                        b
                    );
                    ensure_law!(
                        m.over(x, ab) == m.over(m.over(x, a), ba),
                        "product over",
                        x,
                        a,
                        b
                    );
                }
            }
        }
    }
    Ok(())
}

fn r14(m: &McbTables) -> Result<(), Violation> {
    for block in &m.blocks {
        for &a in block {
            let ai = m.inv(a);
            for &b in block {
                ensure_law!(
                    m.over(m.mul(ai, b), a) == m.under(m.mul(b, ai), a),
                    "R14",
                    a,
                    b
                );
            }
        }
    }
    Ok(())
}

/// Biquandle axioms, homomorphism clause, both product laws and R14.
pub fn check_mcb_def1(m: &McbTables) -> ValidationReport {
    let check = || {
        biquandle_laws(&m.under, &m.over)?;
        homomorphism_clause(m)?;
        product_laws(m, false)?;
        r14(m)
    };
    check().into()
}

/// Exchange laws, homomorphism clause, product laws with identity clauses and R14.
pub fn check_mcb_def2(m: &McbTables) -> ValidationReport {
    let check = || {
        exchange_laws(&m.under, &m.over)?;
        homomorphism_clause(m)?;
        product_laws(m, true)?;
        r14(m)
    };
    check().into()
}

/// An MCB whose axioms have been verified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mcb {
    tables: McbTables,
    base: Biquandle,
}

impl Mcb {
    pub fn new(tables: McbTables) -> Result<Self> {
        check_mcb_def2(&tables)
            .into_result()
            .map_err(Error::NotAnMcb)?;
        let base = Biquandle::new(tables.under.clone(), tables.over.clone())?;
        Ok(Self { tables, base })
    }

    /// One block carrying G, `x ◦ y = x` and `x ⋆ y = y⁻¹xy`.
    pub fn conjugation(g: &FiniteGroup) -> Self {
        let n = g.order();
        let under = OpTable::from_fn(n, |a, b| g.conj(a, b));
        let tables = McbTables::from_groups(
            under,
            OpTable::projection(n),
            vec![(0..n).collect()],
            vec![g.clone()],
        )
        .expect("single block");
        Self::new(tables).expect("conjugation MCB")
    }

    pub fn base(&self) -> &Biquandle {
        &self.base
    }

    pub fn tables(&self) -> &McbTables {
        &self.tables
    }

    pub fn into_tables(self) -> McbTables {
        self.tables
    }

    /// The structure (X, P, △) with P the union of the block squares.
    pub fn primitive_structure(&self) -> PrimitiveStructure {
        let mut tri = PartialOp::empty(self.order());
        for block in self.blocks() {
            for &a in block {
                for &b in block {
                    tri.insert(a, b, self.triangle_unchecked(a, b));
                }
            }
        }
        PrimitiveStructure::new(self.base.clone(), tri).expect("same carrier")
    }

    /// `△⁻¹`: the unique a in b's block with `a △ b = c`, if any.
    pub fn triangle_inv(&self, c: usize, b: usize) -> Option<usize> {
        // a = b · (c ◦⁻¹ b)
        let d = self.base.over_inv(c, b);
        self.same_block(d, b).then(|| self.mul(b, d))
    }
}

impl Deref for Mcb {
    type Target = McbTables;

    fn deref(&self) -> &McbTables {
        &self.tables
    }
}
