use num_integer::Integer;

use super::Biquandle;
use crate::error::{ensure_law, Error, Result, Violation};
use crate::group::FiniteGroup;
use crate::table::OpTable;

/// Largest quaternion carrier built without an explicit cap.
pub const QUATERNION_CAP: usize = 81;

fn unit_residue(v: i64, m: u64) -> Result<u64> {
    let r = v.rem_euclid(m as i64) as u64;
    if r.gcd(&m) != 1 {
        return Err(Error::NotAUnit {
            value: v,
            modulus: m,
        });
    }
    Ok(r)
}

/// `a ⋆ b = ta + (s−t)b`, `a ◦ b = sa` over Z_m.
pub fn make_alexander(m: u64, s: i64, t: i64) -> Result<Biquandle> {
    if m == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let s = unit_residue(s, m)?;
    let t = unit_residue(t, m)?;
    let n = m as usize;
    let st = (s + m - t) % m;
    let under = OpTable::from_fn(n, |a, b| ((t * a as u64 + st * b as u64) % m) as usize);
    let over = OpTable::from_fn(n, |a, _| ((s * a as u64) % m) as usize);
    Biquandle::new(under, over)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WadaVariant {
    /// `a ⋆ b = a⁻¹`, `a ◦ b = a⁻¹`
    One,
    /// `a ⋆ b = b⁻¹ab⁻¹`, `a ◦ b = a⁻¹`
    Two,
    /// `a ⋆ b = b⁻²a`, `a ◦ b = b⁻¹a⁻¹b`
    Three,
}

impl TryFrom<u8> for WadaVariant {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            _ => Err(Error::InvalidArgument(format!("no Wada variant {v}"))),
        }
    }
}

pub fn make_wada(g: &FiniteGroup, variant: WadaVariant) -> Biquandle {
    let n = g.order();
    let (under, over) = match variant {
        WadaVariant::One => (
            OpTable::from_fn(n, |a, _| g.inv(a)),
            OpTable::from_fn(n, |a, _| g.inv(a)),
        ),
        WadaVariant::Two => (
            OpTable::from_fn(n, |a, b| {
                let bi = g.inv(b);
                g.mul(g.mul(bi, a), bi)
            }),
            OpTable::from_fn(n, |a, _| g.inv(a)),
        ),
        WadaVariant::Three => (
            OpTable::from_fn(n, |a, b| g.mul(g.pow(b, -2), a)),
            OpTable::from_fn(n, |a, b| g.conj(g.inv(a), b)),
        ),
    };
    Biquandle::new(under, over).expect("Wada operations form a biquandle")
}

/// Id of the quaternion `c0 + c1 i + c2 j + c3 k` with coefficients mod m.
pub fn quaternion_encode(m: usize, q: [usize; 4]) -> usize {
    q.iter().fold(0, |acc, &c| acc * m + c % m)
}

pub fn quaternion_decode(m: usize, mut id: usize) -> [usize; 4] {
    let mut q = [0; 4];
    for c in q.iter_mut().rev() {
        *c = id % m;
        id /= m;
    }
    q
}

type Quat = [i64; 4];

fn left_j(q: Quat) -> Quat {
    let [a, b, c, d] = q;
    [-c, d, a, -b]
}

fn left_k(q: Quat) -> Quat {
    let [a, b, c, d] = q;
    [-d, -c, b, a]
}

fn add(p: Quat, q: Quat) -> Quat {
    [p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3]]
}

fn neg(q: Quat) -> Quat {
    q.map(|c| -c)
}

pub fn make_quaternion(m: usize) -> Result<Biquandle> {
    make_quaternion_capped(m, QUATERNION_CAP)
}

/// `a ⋆ b = −ja + (j+k)b`, `a ◦ b = ja + (k−j)b` on (Z_m)⁴.
pub fn make_quaternion_capped(m: usize, cap: usize) -> Result<Biquandle> {
    if m < 2 {
        return Err(Error::InvalidArgument(
            "quaternion modulus must be at least 2".into(),
        ));
    }
    let size = m.checked_pow(4).unwrap_or(usize::MAX);
    if size > cap {
        return Err(Error::CarrierTooLarge { size, cap });
    }
    let load = |id| quaternion_decode(m, id).map(|c| c as i64);
    let store = |q: Quat| quaternion_encode(m, q.map(|c| c.rem_euclid(m as i64) as usize));
    let under = OpTable::from_fn(size, |a, b| {
        let (a, b) = (load(a), load(b));
        store(add(neg(left_j(a)), add(left_j(b), left_k(b))))
    });
    let over = OpTable::from_fn(size, |a, b| {
        let (a, b) = (load(a), load(b));
        store(add(left_j(a), add(left_k(b), neg(left_j(b)))))
    });
    Biquandle::new(under, over)
}

/// `a ⋆ b = (b⁻¹ab) ◦ b` for an over-operation satisfying the conjugation hypotheses.
pub fn make_conjugation(g: &FiniteGroup, over: &OpTable) -> Result<Biquandle> {
    let n = g.order();
    if over.order() != n {
        return Err(Error::MalformedTable(format!(
            "over table has order {}, group has order {n}",
            over.order()
        )));
    }
    conjugation_hypotheses(g, over).map_err(Error::HypothesisViolated)?;
    let under = OpTable::from_fn(n, |a, b| over.get(g.conj(a, b), b));
    Biquandle::new(under, over.clone())
}

fn conjugation_hypotheses(g: &FiniteGroup, o: &OpTable) -> Result<(), Violation> {
    let n = g.order();
    let e = g.identity();
    for x in 0..n {
        ensure_law!(o.get(x, e) == x, "over identity", x);
    }
    for a in 0..n {
        for x in 0..n {
            for y in 0..n {
                ensure_law!(
                    o.get(g.mul(x, y), a) == g.mul(o.get(x, a), o.get(y, a)),
                    "over homomorphism",
                    x,
                    y,
                    a
                );
            }
        }
    }
    for x in 0..n {
        for a in 0..n {
            for b in 0..n {
                ensure_law!(
                    o.get(x, g.mul(a, b)) == o.get(o.get(x, a), o.get(b, a)),
                    "over product",
                    x,
                    a,
                    b
                );
            }
        }
    }
    Ok(())
}

/// Biquandle on G² with parameters m, n; id `a1 * |G| + a2`.
pub fn make_group_pair(g: &FiniteGroup, m: i64, n: i64) -> Biquandle {
    let k = g.order();
    let under = OpTable::from_fn(k * k, |a, b| {
        let (a1, a2, b1) = (a / k, a % k, b / k);
        let c = g.pow(b1, n);
        g.conj(a1, c) * k + g.conj(a2, c)
    });
    let over = OpTable::from_fn(k * k, |a, b| {
        let (a1, a2, b1, b2) = (a / k, a % k, b / k, b % k);
        let c = g.mul(g.pow(b2, m), g.pow(b1, n));
        a1 * k + g.conj(a2, c)
    });
    Biquandle::new(under, over).expect("group-pair operations form a biquandle")
}
