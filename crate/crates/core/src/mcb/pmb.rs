use super::Mcb;
use crate::biquandle::Biquandle;
use crate::error::{ensure_law, Error, Result, ValidationReport, Violation};
use crate::table::PartialOp;

/// A biquandle with a partial product `•` defined on P̃.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pmb {
    pub base: Biquandle,
    pub bullet: PartialOp,
}

impl Pmb {
    pub fn new(base: Biquandle, bullet: PartialOp) -> Result<Self> {
        if bullet.order() != base.order() {
            return Err(Error::MalformedTable(
                "bullet map and biquandle differ in size".into(),
            ));
        }
        if let Some((a, b, c)) = bullet.entries().find(|&(_, _, c)| c >= base.order()) {
            return Err(Error::MalformedTable(format!(
                "{a} • {b} = {c} is out of range"
            )));
        }
        Ok(Self { base, bullet })
    }
}

/// `P̃ = {(a, b△a)}` with `a • (b△a) = b`.
pub fn pmb_from_mcb(m: &Mcb) -> Pmb {
    let mut bullet = PartialOp::empty(m.order());
    for block in m.blocks() {
        for &a in block {
            for &b in block {
                let prev = bullet.insert(a, m.triangle_unchecked(b, a), b);
                debug_assert!(prev.is_none(), "△a is injective on a block");
            }
        }
    }
    Pmb {
        base: m.base().clone(),
        bullet,
    }
}

pub fn check_pmb(s: &Pmb) -> ValidationReport {
    pmb_laws(&s.base, &s.bullet).into()
}

fn pmb_laws(x: &Biquandle, p: &PartialOp) -> Result<(), Violation> {
    let n = x.order();
    let succ = p.successors();
    let pred = p.predecessors();
    let dot = |a: usize, b: usize| p.get(a, b);

    // (i)
    for a in 0..n {
        let mut seen = vec![usize::MAX; n];
        for &y in &succ[a] {
            let v = dot(a, y).expect("in P̃");
            ensure_law!(seen[v] == usize::MAX, "PMB-i left", a, seen[v], y);
            seen[v] = y;
        }
    }
    for b in 0..n {
        let mut seen = vec![usize::MAX; n];
        for &y in &pred[b] {
            let v = dot(y, b).expect("in P̃");
            ensure_law!(seen[v] == usize::MAX, "PMB-i right", seen[v], y, b);
            seen[v] = y;
        }
    }
    // (ii)
    for a in 0..n {
        for b in 0..n {
            let l = dot(a, x.under(b, a));
            let r = dot(b, x.over(a, b));
            ensure_law!(l.is_some() == r.is_some(), "PMB-ii", a, b);
            ensure_law!(l == r, "PMB-ii", a, b);
        }
    }
    // (iii): for fixed w both pair maps are bijections of X², so forward closure suffices
    for w in 0..n {
        for (a, b, ab) in p.entries() {
            let (au, bu) = (x.under(a, w), x.under(b, x.over(w, a)));
            let (ao, bo) = (x.over(a, w), x.over(b, x.under(w, a)));
            ensure_law!(p.contains(au, bu) && p.contains(ao, bo), "PMB-iii", a, b, w);
            ensure_law!(
                x.under(w, ab) == x.under(x.under(w, a), b)
                    && x.over(w, ab) == x.over(x.over(w, a), b)
                    && Some(x.under(ab, w)) == dot(au, bu)
                    && Some(x.over(ab, w)) == dot(ao, bo),
                "PMB-iii",
                a,
                b,
                w
            );
        }
    }
    // (iv)
    for (a, b, ab) in p.entries() {
        for &c in &succ[ab] {
            let bc = dot(b, c);
            ensure_law!(bc.is_some_and(|bc| p.contains(a, bc)), "PMB-iv", a, b, c);
            ensure_law!(
                dot(ab, c) == dot(a, bc.expect("checked")),
                "PMB-iv",
                a,
                b,
                c
            );
        }
    }
    for (b, c, bc) in p.entries() {
        for &a in &pred[bc] {
            let ab = dot(a, b);
            ensure_law!(ab.is_some_and(|ab| p.contains(ab, c)), "PMB-iv", a, b, c);
        }
    }
    // (v)
    let mut by_product: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (a, b, ab) in p.entries() {
        by_product[ab].push((a, b));
    }
    for class in &by_product {
        for &(a, b) in class {
            for &(c, d) in class {
                let found = succ[a]
                    .iter()
                    .any(|&e| p.contains(e, d) && dot(a, e) == Some(c) && dot(e, d) == Some(b));
                ensure_law!(found, "PMB-v", a, b, c, d);
            }
        }
    }
    for a in 0..n {
        for &e in &succ[a] {
            let c = dot(a, e).expect("in P̃");
            for &d in &succ[e] {
                let b = dot(e, d).expect("in P̃");
                ensure_law!(
                    dot(a, b).is_some() && dot(c, d).is_some() && dot(a, b) == dot(c, d),
                    "PMB-v",
                    a,
                    b,
                    c,
                    d
                );
            }
        }
    }
    Ok(())
}
