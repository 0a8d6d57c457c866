use super::{Mcb, McbTables};
use crate::biquandle::Biquandle;
use crate::error::{ensure_law, Error, Result, ValidationReport, Violation};
use crate::table::{OpTable, PartialOp};

/// A biquandle with a relation P (`a ~ b` iff `(a, b) ∈ P`) and a map `△: P → X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveStructure {
    base: Biquandle,
    triangle: PartialOp,
}

impl PrimitiveStructure {
    /// P is the set of pairs on which `triangle` is defined.
    pub fn new(base: Biquandle, triangle: PartialOp) -> Result<Self> {
        if triangle.order() != base.order() {
            return Err(Error::MalformedTable(format!(
                "triangle map on {} elements, biquandle has {}",
                triangle.order(),
                base.order()
            )));
        }
        if let Some((a, b, t)) = triangle.entries().find(|&(_, _, t)| t >= base.order()) {
            return Err(Error::MalformedTable(format!(
                "{a} △ {b} = {t} is out of range"
            )));
        }
        Ok(Self { base, triangle })
    }

    pub fn base(&self) -> &Biquandle {
        &self.base
    }

    pub fn triangle(&self) -> &PartialOp {
        &self.triangle
    }

    #[inline]
    pub fn related(&self, a: usize, b: usize) -> bool {
        self.triangle.contains(a, b)
    }
}

/// Checks the eight primitive conditions R4-1 … R6-4.
pub fn check_primitive(s: &PrimitiveStructure) -> ValidationReport {
    primitive_laws(s).into()
}

fn primitive_laws(s: &PrimitiveStructure) -> Result<(), Violation> {
    let x = &s.base;
    let n = x.order();
    let p = &s.triangle;
    let succ = p.successors();
    let pred = p.predecessors();
    let tri = |a: usize, b: usize| p.get(a, b);

    // R4: {x | a ~ b, x = a△b} = {x | c ~ x, c △ x = d} with (c, d) = (a⋆b, b◦a) or (a◦b, b⋆a)
    for (law, first, second) in [
        ("R4-1", x.under_table(), x.over_table()),
        ("R4-2", x.over_table(), x.under_table()),
    ] {
        for a in 0..n {
            for b in 0..n {
                let lhs = tri(a, b);
                let (c, d) = (first.get(a, b), second.get(b, a));
                for &w in &succ[c] {
                    ensure_law!(tri(c, w) != Some(d) || lhs == Some(w), law, a, b, w);
                }
                if let Some(w) = lhs {
                    ensure_law!(tri(c, w) == Some(d), law, a, b, w);
                }
            }
        }
    }

    // R5: (a, b) ↦ (a·x, b·x) is a bijection of X², so preserving P forward suffices.
    for w in 0..n {
        for (a, b, ab) in p.entries() {
            let (au, bu) = (x.under(a, w), x.under(b, w));
            ensure_law!(p.contains(au, bu), "R5-1", a, b, w);
            ensure_law!(
                x.over(x.over(w, b), ab) == x.over(w, a)
                    && Some(x.under(ab, x.over(w, b))) == tri(au, bu),
                "R5-1",
                a,
                b,
                w
            );
            let (ao, bo) = (x.over(a, w), x.over(b, w));
            ensure_law!(p.contains(ao, bo), "R5-2", a, b, w);
            ensure_law!(
                x.under(x.under(w, b), ab) == x.under(w, a)
                    && Some(x.over(ab, x.under(w, b))) == tri(ao, bo),
                "R5-2",
                a,
                b,
                w
            );
        }
    }

    // R6-1
    for (a, b, ab) in p.entries() {
        for &c in &succ[b] {
            let w = tri(b, c).expect("in P");
            let ac = tri(a, c);
            ensure_law!(ac.is_some(), "R6-1", a, b, c);
            let ac = ac.expect("checked");
            ensure_law!(tri(ac, w) == Some(ab), "R6-1", a, b, c);
        }
    }
    // R6-2
    for (a, c, ac) in p.entries() {
        for &w in &succ[ac] {
            let target = tri(ac, w);
            let count = (0..n)
                .filter(|&b| p.contains(a, b) && tri(b, c) == Some(w) && target == tri(a, b))
                .count();
            ensure_law!(count == 1, "R6-2", a, c, w);
        }
    }
    // R6-3
    for (a, b, ab) in p.entries() {
        for &c in &succ[a] {
            let w = tri(a, c).expect("in P");
            let bc = tri(b, c);
            ensure_law!(bc.is_some(), "R6-3", a, b, c);
            let bc = bc.expect("checked");
            ensure_law!(tri(w, bc) == Some(ab), "R6-3", a, b, c);
        }
    }
    // R6-4
    for (b, c, bc) in p.entries() {
        for &w in &pred[bc] {
            let target = tri(w, bc);
            let count = (0..n)
                .filter(|&a| p.contains(a, b) && tri(a, c) == Some(w) && tri(a, b) == target)
                .count();
            ensure_law!(count == 1, "R6-4", b, c, w);
        }
    }
    Ok(())
}

fn triangle_mcb_laws(
    base: &Biquandle,
    block_of: &[usize],
    blocks: &[Vec<usize>],
    tri: &PartialOp,
) -> Result<(), Violation> {
    let n = base.order();
    let t = |a: usize, b: usize| tri.get(a, b);
    for block in blocks {
        for &a in block {
            for &b in block {
                ensure_law!(t(a, b).is_some(), "triangle domain", a, b);
            }
        }
    }
    let t = |a: usize, b: usize| tri.get(a, b).expect("checked");
    let bijective = |law, block: &[usize], f: &dyn Fn(usize) -> usize| -> Result<(), Violation> {
        let target = block_of[f(block[0])];
        let mut seen = vec![usize::MAX; n];
        for &y in block {
            let v = f(y);
            ensure_law!(block_of[v] == target, law, block[0], y);
            ensure_law!(seen[v] == usize::MAX, law, seen[v], y);
            seen[v] = y;
        }
        let size = blocks[target].len();
        ensure_law!(size == block.len(), law, block[0], blocks[target][0]);
        Ok(())
    };
    for block in blocks {
        for &a in block {
            bijective("bijection triangle", block, &|y| t(y, a))?;
        }
        for w in 0..n {
            bijective("bijection under", block, &|y| base.under(y, w))?;
            bijective("bijection over", block, &|y| base.over(y, w))?;
        }
    }
    for block in blocks {
        for &a in block {
            for &b in block {
                let ab = t(a, b);
                let (au, ao) = (base.under(a, b), base.over(a, b));
                ensure_law!(
                    block_of[au] == block_of[ab] && t(au, ab) == base.over(b, a),
                    "R4 under triangle",
                    a,
                    b
                );
                ensure_law!(
                    block_of[ao] == block_of[ab] && t(ao, ab) == base.under(b, a),
                    "R4 over triangle",
                    a,
                    b
                );
                for w in 0..n {
                    ensure_law!(
                        base.under(ab, base.over(w, b)) == t(base.under(a, w), base.under(b, w)),
                        "R5-1 under triangle",
                        a,
                        b,
                        w
                    );
                    ensure_law!(
                        base.over(ab, base.under(w, b)) == t(base.over(a, w), base.over(b, w)),
                        "R5-1 over triangle",
                        a,
                        b,
                        w
                    );
                    ensure_law!(
                        base.under(base.under(w, b), ab) == base.under(w, a),
                        "R5-2 under triangle",
                        a,
                        b,
                        w
                    );
                    ensure_law!(
                        base.over(base.over(w, b), ab) == base.over(w, a),
                        "R5-2 over triangle",
                        a,
                        b,
                        w
                    );
                }
                for &c in block {
                    ensure_law!(t(t(a, c), t(b, c)) == ab, "R6 triangle", a, b, c);
                }
            }
        }
    }
    Ok(())
}

/// Rebuilds the block groups of a triangle MCB from `ab = (a⋆b) △⁻¹ b`.
pub fn groups_from_triangle(
    base: &Biquandle,
    blocks: &[Vec<usize>],
    tri: &PartialOp,
) -> Result<Mcb> {
    let n = base.order();
    let mut block_of = vec![usize::MAX; n];
    for (lambda, block) in blocks.iter().enumerate() {
        for &x in block {
            if x >= n || block_of[x] != usize::MAX || block.is_empty() {
                return Err(Error::MalformedTable(format!(
                    "bad partition at element {x}"
                )));
            }
            block_of[x] = lambda;
        }
    }
    if block_of.contains(&usize::MAX) || tri.order() != n {
        return Err(Error::MalformedTable(
            "partition does not cover the carrier".into(),
        ));
    }
    triangle_mcb_laws(base, &block_of, blocks, tri).map_err(Error::TriangleAxiomViolated)?;

    // △⁻¹b: G_{b△b} → G_b
    let tri_inv = |c: usize, b: usize| -> usize {
        *blocks[block_of[b]]
            .iter()
            .find(|&&y| tri.get(y, b) == Some(c))
            .expect("△b is a bijection onto its target block")
    };
    let mut mul = Vec::with_capacity(blocks.len());
    for block in blocks {
        let rows: Vec<Vec<usize>> = block
            .iter()
            .map(|&a| {
                block
                    .iter()
                    .map(|&b| tri_inv(base.under(a, b), b))
                    .collect()
            })
            .collect();
        mul.push(rows);
    }
    let tables = McbTables::new(
        base.under_table().clone(),
        base.over_table().clone(),
        blocks.to_vec(),
        &mul,
    )?;
    Mcb::new(tables)
}

/// X split into the MCB part X₁ and the remaining biquandle X₂.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub mcb: Mcb,
    /// `x1[i]` is the original id of local element i of `mcb`.
    pub x1: Vec<usize>,
    pub rest: Biquandle,
    pub x2: Vec<usize>,
}

/// Splits X into X₁ = {b | ∃a, a ~ b} and its complement and rebuilds the MCB on X₁.
pub fn decompose_universal(s: &PrimitiveStructure) -> Result<Decomposition> {
    check_primitive(s)
        .into_result()
        .map_err(Error::NotPrimitive)?;
    let n = s.base.order();
    let p = &s.triangle;
    let mut in_x1 = vec![false; n];
    for (_, b, _) in p.entries() {
        in_x1[b] = true;
    }
    let x1: Vec<usize> = (0..n).filter(|&b| in_x1[b]).collect();
    let x2: Vec<usize> = (0..n).filter(|&b| !in_x1[b]).collect();
    for &part in &[&x1, &x2] {
        for &a in part.iter() {
            for w in 0..n {
                for v in [s.base.under(a, w), s.base.over(a, w)] {
                    if in_x1[v] != in_x1[a] {
                        return Err(Error::ClosureViolated(Violation::new(
                            "subbiquandle",
                            vec![a, w],
                        )));
                    }
                }
            }
        }
    }
    // ~ must be an equivalence relation on X₁; its classes are the blocks
    let succ = p.successors();
    let mut local = vec![usize::MAX; n];
    for (i, &g) in x1.iter().enumerate() {
        local[g] = i;
    }
    let mut class_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &a in &x1 {
        if class_of[a] != usize::MAX {
            continue;
        }
        let class = succ[a].clone();
        for &b in &class {
            if succ[b] != class || class_of[b] != usize::MAX {
                return Err(Error::ClosureViolated(Violation::new(
                    "equivalence",
                    vec![a, b],
                )));
            }
            class_of[b] = blocks.len();
        }
        blocks.push(class.iter().map(|&b| local[b]).collect());
    }
    let base1 = s
        .base
        .restrict(&x1)
        .ok_or_else(|| Error::ClosureViolated(Violation::new("subbiquandle", vec![])))?;
    let rest = s
        .base
        .restrict(&x2)
        .ok_or_else(|| Error::ClosureViolated(Violation::new("subbiquandle", vec![])))?;
    let mut tri1 = PartialOp::empty(x1.len());
    for (a, b, t) in p.entries() {
        tri1.insert(local[a], local[b], local[t]);
    }
    let mcb = groups_from_triangle(&base1, &blocks, &tri1)?;
    Ok(Decomposition { mcb, x1, rest, x2 })
}

/// `M ⊔ Y` with M acting trivially on Y and vice versa; P is the union of M's block squares.
/// Elements of Y are shifted by `|M|`.
pub fn disjoint_union(m: &Mcb, y: &Biquandle) -> PrimitiveStructure {
    let k = m.order();
    let n = k + y.order();
    let op = |inner: &dyn Fn(usize, usize) -> usize, outer: &dyn Fn(usize, usize) -> usize| {
        OpTable::from_fn(n, |a, b| match (a < k, b < k) {
            (true, true) => inner(a, b),
            (false, false) => outer(a - k, b - k) + k,
            _ => a,
        })
    };
    let under = op(&|a, b| m.under(a, b), &|a, b| y.under(a, b));
    let over = op(&|a, b| m.over(a, b), &|a, b| y.over(a, b));
    let base = Biquandle::new(under, over).expect("disjoint union of biquandles");
    let mut tri = PartialOp::empty(n);
    for (a, b, t) in m.primitive_structure().triangle().entries() {
        tri.insert(a, b, t);
    }
    PrimitiveStructure::new(base, tri).expect("same carrier")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biquandle::make_alexander;
    use crate::group::FiniteGroup;
    use crate::mcb::tests::{dihedral_assoc, sample_mcbs};

    #[test]
    fn induced_structures_are_primitive() {
        for m in sample_mcbs() {
            assert_eq!(
                check_primitive(&m.primitive_structure()),
                ValidationReport::Valid
            );
        }
    }

    #[test]
    fn single_pair_on_trivial_biquandle_fails() {
        let mut tri = PartialOp::empty(2);
        tri.insert(0, 1, 0);
        let s = PrimitiveStructure::new(Biquandle::trivial(2), tri).unwrap();
        let r = check_primitive(&s);
        assert!(r.violation().unwrap().law.starts_with('R'));
    }

    #[test]
    fn empty_relation() {
        let s =
            PrimitiveStructure::new(make_alexander(5, 2, 3).unwrap(), PartialOp::empty(5)).unwrap();
        assert!(check_primitive(&s).is_valid());
        let d = decompose_universal(&s).unwrap();
        assert!(d.x1.is_empty());
        assert_eq!(d.x2, vec![0, 1, 2, 3, 4]);
        assert_eq!(d.rest, make_alexander(5, 2, 3).unwrap());
    }

    #[test]
    fn reconstructs_groups_exactly() {
        for m in sample_mcbs() {
            let s = m.primitive_structure();
            let rebuilt = groups_from_triangle(m.base(), m.blocks(), s.triangle()).unwrap();
            assert_eq!(rebuilt.product_map(), m.product_map());
            for lambda in 0..m.blocks().len() {
                assert_eq!(rebuilt.identity(lambda), m.identity(lambda));
            }
        }
    }

    #[test]
    fn product_and_identity_are_well_defined() {
        for m in sample_mcbs() {
            let b = m.base();
            for block in m.blocks() {
                let e = b.under_inv(m.triangle(block[0], block[0]).unwrap(), block[0]);
                for &a in block {
                    let aa = m.triangle(a, a).unwrap();
                    assert_eq!(b.under_inv(aa, a), e);
                    assert_eq!(b.over_inv(aa, a), e);
                    for &c in block {
                        let l = m.triangle_inv(b.under(a, c), c).unwrap();
                        let r = m.triangle_inv(b.over(c, a), a).unwrap();
                        assert_eq!(l, r);
                        assert_eq!(l, m.mul(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn decomposes_union_with_singleton() {
        let z2 = Mcb::conjugation(&FiniteGroup::cyclic(2));
        let s = disjoint_union(&z2, &Biquandle::trivial(1));
        let d = decompose_universal(&s).unwrap();
        assert_eq!(d.x1, vec![0, 1]);
        assert_eq!(d.x2, vec![2]);
        assert_eq!(d.mcb.product_map(), z2.product_map());
        assert_eq!(d.rest.order(), 1);
    }

    #[test]
    fn decomposes_associated_mcb() {
        let m = dihedral_assoc();
        let d = decompose_universal(&m.primitive_structure()).unwrap();
        assert_eq!(d.x1.len(), 6);
        assert_eq!(d.mcb.blocks().len(), 3);
        assert!(d.mcb.blocks().iter().all(|b| b.len() == 2));
        assert_eq!(d.mcb.product_map(), m.product_map());
    }

    #[test]
    fn broken_triangle_is_reported() {
        let m = Mcb::conjugation(&FiniteGroup::cyclic(2));
        let mut tri = m.primitive_structure().triangle().clone();
        tri.insert(0, 1, 0);
        let err = groups_from_triangle(m.base(), m.blocks(), &tri).unwrap_err();
        assert!(matches!(err, Error::TriangleAxiomViolated(_)));
    }
}
