//! G-families of biquandles and their associated MCBs.

use num_integer::Integer;

use crate::biquandle::{parallel_op, type_of, Biquandle};
use crate::error::{ensure_law, Error, Result, ValidationReport, Violation};
use crate::group::FiniteGroup;
use crate::mcb::{Mcb, McbTables};
use crate::table::OpTable;

/// Operations `⋆ᵍ`, `◦ᵍ` on a carrier of size N, one pair per element g of G.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFamily {
    group: FiniteGroup,
    under: Vec<OpTable>,
    over: Vec<OpTable>,
}

impl GFamily {
    /// Checks only the shape; see [`check_gfamily`] for the axioms.
    pub fn new(group: FiniteGroup, under: Vec<OpTable>, over: Vec<OpTable>) -> Result<Self> {
        let m = group.order();
        if under.len() != m || over.len() != m {
            return Err(Error::MalformedTable(format!(
                "expected {m} table pairs, got {} under and {} over",
                under.len(),
                over.len()
            )));
        }
        let n = under[0].order();
        if n == 0 || under.iter().chain(&over).any(|t| t.order() != n) {
            return Err(Error::MalformedTable(
                "tables differ in size or are empty".into(),
            ));
        }
        Ok(Self { group, under, over })
    }

    pub fn carrier_size(&self) -> usize {
        self.under[0].order()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// `x ⋆ᵍ y`
    #[inline]
    pub fn under(&self, g: usize, x: usize, y: usize) -> usize {
        self.under[g].get(x, y)
    }

    /// `x ◦ᵍ y`
    #[inline]
    pub fn over(&self, g: usize, x: usize, y: usize) -> usize {
        self.over[g].get(x, y)
    }

    pub fn under_table(&self, g: usize) -> &OpTable {
        &self.under[g]
    }

    pub fn over_table(&self, g: usize) -> &OpTable {
        &self.over[g]
    }

    pub fn with_under(&self, g: usize, x: usize, y: usize, v: usize) -> Self {
        let mut f = self.clone();
        f.under[g].set(x, y, v);
        f
    }

    pub fn with_over(&self, g: usize, x: usize, y: usize, v: usize) -> Self {
        let mut f = self.clone();
        f.over[g].set(x, y, v);
        f
    }
}

pub fn check_gfamily(f: &GFamily) -> ValidationReport {
    gfamily_laws(f).into()
}

fn gfamily_laws(f: &GFamily) -> Result<(), Violation> {
    let n = f.carrier_size();
    let grp = &f.group;
    let m = grp.order();
    let e = grp.identity();
    for x in 0..n {
        for y in 0..n {
            ensure_law!(f.under(e, x, y) == x, "identity under", x, y);
            ensure_law!(f.over(e, x, y) == x, "identity over", x, y);
        }
    }
    for g in 0..m {
        for x in 0..n {
            ensure_law!(f.under(g, x, x) == f.over(g, x, x), "diagonal", x, g);
        }
    }
    for g in 0..m {
        for h in 0..m {
            let gh = grp.mul(g, h);
            for x in 0..n {
                for y in 0..n {
                    ensure_law!(
                        f.under(gh, x, y) == f.under(h, f.under(g, x, y), f.under(g, y, y)),
                        "product under",
                        x,
                        y,
                        g,
                        h
                    );
                    ensure_law!(
                        f.over(gh, x, y) == f.over(h, f.over(g, x, y), f.over(g, y, y)),
                        "product over",
                        x,
                        y,
                        g,
                        h
                    );
                }
            }
        }
    }
    for g in 0..m {
        for h in 0..m {
            let k = grp.conj(g, h);
            for y in 0..n {
                for z in 0..n {
                    let zy = f.over(g, z, y);
                    let yz = f.under(h, y, z);
                    for x in 0..n {
                        let (xu, xo) = (f.under(g, x, y), f.over(g, x, y));
                        let (xzu, xzo) = (f.under(h, x, z), f.over(h, x, z));
                        ensure_law!(
                            f.under(h, xu, zy) == f.under(k, xzu, yz),
                            "exchange 1",
                            x,
                            y,
                            z,
                            g,
                            h
                        );
                        ensure_law!(
                            f.under(h, xo, zy) == f.over(k, xzu, yz),
                            "exchange 2",
                            x,
                            y,
                            z,
                            g,
                            h
                        );
                        ensure_law!(
                            f.over(h, xo, zy) == f.over(k, xzo, yz),
                            "exchange 3",
                            x,
                            y,
                            z,
                            g,
                            h
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

/// The MCB on X×G with id `x * |G| + g`, blocks `{x}×G`.
pub fn associated_mcb(f: &GFamily) -> Result<Mcb> {
    check_gfamily(f).into_result().map_err(Error::NotAGFamily)?;
    let grp = &f.group;
    let m = grp.order();
    let n = f.carrier_size();
    let under = OpTable::from_fn(n * m, |a, b| {
        let (x, g, y, h) = (a / m, a % m, b / m, b % m);
        f.under(h, x, y) * m + grp.conj(g, h)
    });
    let over = OpTable::from_fn(n * m, |a, b| {
        let (x, g, y, h) = (a / m, a % m, b / m, b % m);
        f.over(h, x, y) * m + g
    });
    let blocks = (0..n)
        .map(|x| (0..m).map(|g| x * m + g).collect())
        .collect();
    let tables = McbTables::from_groups(under, over, blocks, vec![grp.clone(); n])?;
    Mcb::new(tables)
}

fn check_hom_into_center(g: &FiniteGroup, phi: &[usize]) -> Result<()> {
    let m = g.order();
    if phi.len() != m || phi.iter().any(|&v| v >= m) {
        return Err(Error::InvalidArgument(format!(
            "φ must list {m} element ids"
        )));
    }
    for a in 0..m {
        if !g.is_central(phi[a]) {
            return Err(Error::NotCentral(Violation::new("center", vec![a])));
        }
        for b in 0..m {
            if phi[g.mul(a, b)] != g.mul(phi[a], phi[b]) {
                return Err(Error::NotHomomorphism(Violation::new("φ", vec![a, b])));
            }
        }
    }
    Ok(())
}

/// `x ⋆ᵍ y = x·g + y·(φ(g) − g)`, `x ◦ᵍ y = x·φ(g)` on Z_m, where g acts by the unit `action[g]`.
pub fn make_gfamily_alexander(
    g: &FiniteGroup,
    phi: &[usize],
    m: u64,
    action: &[i64],
) -> Result<GFamily> {
    check_hom_into_center(g, phi)?;
    let k = g.order();
    if m == 0 || action.len() != k {
        return Err(Error::InvalidArgument(format!(
            "action must list {k} units mod a positive modulus"
        )));
    }
    let mut unit = Vec::with_capacity(k);
    for &a in action {
        let r = a.rem_euclid(m as i64) as u64;
        if r.gcd(&m) != 1 {
            return Err(Error::NotAUnit {
                value: a,
                modulus: m,
            });
        }
        unit.push(r);
    }
    for a in 0..k {
        for b in 0..k {
            if unit[g.mul(a, b)] != unit[a] * unit[b] % m {
                return Err(Error::NotHomomorphism(Violation::new("action", vec![a, b])));
            }
        }
    }
    let n = m as usize;
    let under = (0..k)
        .map(|h| {
            let (t, s) = (unit[h], unit[phi[h]]);
            OpTable::from_fn(n, |x, y| {
                ((x as u64 * t + y as u64 * (s + m - t)) % m) as usize
            })
        })
        .collect();
    let over = (0..k)
        .map(|h| {
            let s = unit[phi[h]];
            OpTable::from_fn(n, |x, _| (x as u64 * s % m) as usize)
        })
        .collect();
    GFamily::new(g.clone(), under, over)
}

/// `x ⋆ᵍ y = (xy⁻¹)ᵍ y^φ(g)`, `x ◦ᵍ y = x^φ(g)`; `action[g][x]` is xᵍ.
pub fn make_gfamily_generalized(
    g: &FiniteGroup,
    phi: &[usize],
    x: &FiniteGroup,
    action: &[Vec<usize>],
) -> Result<GFamily> {
    check_hom_into_center(g, phi)?;
    let (k, n) = (g.order(), x.order());
    if action.len() != k
        || action
            .iter()
            .any(|a| a.len() != n || a.iter().any(|&v| v >= n))
    {
        return Err(Error::InvalidArgument(format!(
            "action must list {k} maps on {n} elements"
        )));
    }
    for h in 0..k {
        let mut seen = vec![false; n];
        for &v in &action[h] {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAutomorphism(Violation::new("bijective", vec![h])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if action[h][x.mul(a, b)] != x.mul(action[h][a], action[h][b]) {
                    return Err(Error::NotAutomorphism(Violation::new(
                        "multiplicative",
                        vec![h, a, b],
                    )));
                }
            }
        }
    }
    for a in 0..n {
        if action[g.identity()][a] != a {
            return Err(Error::NotAnAction(Violation::new("identity", vec![a])));
        }
    }
    for h1 in 0..k {
        for h2 in 0..k {
            for a in 0..n {
                if action[g.mul(h1, h2)][a] != action[h2][action[h1][a]] {
                    return Err(Error::NotAnAction(Violation::new(
                        "compatibility",
                        vec![h1, h2, a],
                    )));
                }
            }
        }
    }
    let under = (0..k)
        .map(|h| {
            OpTable::from_fn(n, |a, b| {
                x.mul(action[h][x.mul(a, x.inv(b))], action[phi[h]][b])
            })
        })
        .collect();
    let over = (0..k)
        .map(|h| OpTable::from_fn(n, |a, _| action[phi[h]][a]))
        .collect();
    GFamily::new(g.clone(), under, over)
}

/// The family `(⋆^[n], ◦^[n])` indexed by Z/(type X).
pub fn zfamily_from_biquandle(x: &Biquandle) -> GFamily {
    let t = type_of(x) as usize;
    let (under, over) = (0..t)
        .map(|k| {
            let p = parallel_op(x, k as i64);
            (p.under, p.over)
        })
        .unzip();
    GFamily::new(FiniteGroup::cyclic(t), under, over).expect("one table pair per residue")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biquandle::{make_alexander, make_wada, WadaVariant};
    use crate::mcb::check_mcb_def1;

    fn dihedral() -> GFamily {
        make_gfamily_alexander(&FiniteGroup::cyclic(2), &[0, 0], 3, &[1, 2]).unwrap()
    }

    #[test]
    fn dihedral_family() {
        let f = dihedral();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(f.under(1, x, y), (2 * x + 2 * y) % 3);
                assert_eq!(f.over(1, x, y), x);
            }
        }
        assert!(check_gfamily(&f).is_valid());
        let m = associated_mcb(&f).unwrap();
        assert_eq!(m.order(), 6);
        assert_eq!(m.blocks().len(), 3);
        assert!(check_mcb_def1(&m).is_valid());
        for x in 0..3 {
            assert_eq!(m.group(x), &FiniteGroup::cyclic(2));
        }
    }

    #[test]
    fn mutated_dihedral_is_rejected() {
        let f = dihedral();
        let r = check_gfamily(&f.with_under(1, 0, 1, (f.under(1, 0, 1) + 1) % 3));
        assert!(!r.is_valid());
    }

    #[test]
    fn identity_phi_gives_equal_operations() {
        let z2 = FiniteGroup::cyclic(2);
        let f = make_gfamily_alexander(&z2, &[0, 1], 5, &[1, 4]).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(f.under(1, x, y), 4 * x % 5);
                assert_eq!(f.over(1, x, y), 4 * x % 5);
            }
        }
        assert!(matches!(
            make_gfamily_alexander(&z2, &[0, 0], 4, &[1, 2]),
            Err(Error::NotAUnit { .. })
        ));
        assert!(matches!(
            make_gfamily_alexander(&z2, &[0, 0], 5, &[1, 2]),
            Err(Error::NotHomomorphism(_))
        ));
        let s3 = FiniteGroup::symmetric(3);
        let phi: Vec<usize> = (0..6)
            .map(|a| if s3.pow(a, 3) == s3.identity() { 0 } else { a })
            .collect();
        assert!(matches!(
            make_gfamily_alexander(&s3, &phi, 3, &[1; 6]),
            Err(Error::NotCentral(_)) | Err(Error::NotHomomorphism(_))
        ));
    }

    #[test]
    fn generalized_matches_alexander_on_abelian_carrier() {
        let z2 = FiniteGroup::cyclic(2);
        let z3 = FiniteGroup::cyclic(3);
        let neg = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let f = make_gfamily_generalized(&z2, &[0, 0], &z3, &neg).unwrap();
        assert_eq!(f, dihedral());
        let trivial =
            make_gfamily_generalized(&z2, &[0, 0], &z3, &[vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        for g in 0..2 {
            assert!(
                trivial.under_table(g).is_projection() && trivial.over_table(g).is_projection()
            );
        }
        assert!(matches!(
            make_gfamily_generalized(&z2, &[0, 0], &z3, &[vec![0, 1, 2], vec![1, 2, 0]]),
            Err(Error::NotAutomorphism(_))
        ));
        assert!(matches!(
            make_gfamily_generalized(&z2, &[0, 0], &z3, &[vec![0, 2, 1], vec![0, 1, 2]]),
            Err(Error::NotAnAction(_))
        ));
    }

    #[test]
    fn zfamilies() {
        let t = zfamily_from_biquandle(&Biquandle::trivial(3));
        assert_eq!(t.group().order(), 1);
        let a = make_alexander(5, 2, 3).unwrap();
        let f = zfamily_from_biquandle(&a);
        assert_eq!(f.group().order(), 4);
        assert_eq!(*f.under_table(3), parallel_op(&a, -1).under);
        assert!(check_gfamily(&f).is_valid());
        let w = make_wada(&FiniteGroup::cyclic(3), WadaVariant::One);
        let f = zfamily_from_biquandle(&w);
        assert_eq!(f.group().order(), 2);
        assert_eq!(f.under_table(1), w.under_table());
        assert!(f.under_table(0).is_projection());
    }

    #[test]
    fn bijectivity_follows_from_axioms() {
        for f in [
            dihedral(),
            zfamily_from_biquandle(&make_alexander(7, 3, 5).unwrap()),
        ] {
            let n = f.carrier_size();
            for g in 0..f.group().order() {
                for y in 0..n {
                    let mut u: Vec<usize> = (0..n).map(|x| f.under(g, x, y)).collect();
                    let mut o: Vec<usize> = (0..n).map(|x| f.over(g, x, y)).collect();
                    u.sort_unstable();
                    o.sort_unstable();
                    assert_eq!(u, (0..n).collect::<Vec<_>>());
                    assert_eq!(o, (0..n).collect::<Vec<_>>());
                }
            }
        }
    }
}
