use num_integer::Integer;

use super::Biquandle;
use crate::perm::Permutation;
use crate::table::OpTable;

/// The n-parallel operations ⋆^[n], ◦^[n] of a biquandle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelOps {
    pub n: i64,
    pub under: OpTable,
    pub over: OpTable,
    /// Type of the underlying biquandle.
    pub period: u64,
}

fn pair_map(x: &Biquandle, op: impl Fn(usize, usize) -> usize) -> Permutation {
    let n = x.order();
    Permutation::new(
        (0..n * n)
            .map(|i| {
                let (a, b) = (i / n, i % n);
                op(a, b) * n + op(b, b)
            })
            .collect(),
    )
    .expect("pair map of a biquandle is bijective")
}

/// `φ(a, b) = (a ⋆ b, b ⋆ b)` on pair ids `a * N + b`.
pub fn pair_map_under(x: &Biquandle) -> Permutation {
    pair_map(x, |a, b| x.under(a, b))
}

/// `ψ(a, b) = (a ◦ b, b ◦ b)`
pub fn pair_map_over(x: &Biquandle) -> Permutation {
    pair_map(x, |a, b| x.over(a, b))
}

fn first_component(p: &Permutation, n: usize) -> OpTable {
    OpTable::from_fn(n, |a, b| p.apply(a * n + b) / n)
}

/// First components of φⁿ and ψⁿ; negative n uses the inverse maps.
pub fn parallel_op(x: &Biquandle, n: i64) -> ParallelOps {
    let (phi, psi) = (pair_map_under(x), pair_map_over(x));
    let period = phi.order().lcm(&psi.order());
    let k = x.order();
    ParallelOps {
        n,
        under: first_component(&phi.pow(n), k),
        over: first_component(&psi.pow(n), k),
        period,
    }
}

/// lcm of the orders of φ and ψ.
pub fn type_of(x: &Biquandle) -> u64 {
    pair_map_under(x).order().lcm(&pair_map_over(x).order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biquandle::make_alexander;
    use crate::biquandle::tests::sample_biquandles;

    /// Recursive definition: forward steps apply the operation to the diagonal,
    /// backward steps invert the diagonal first.
    fn oracle(x: &Biquandle, under: bool, n: i64, a: usize, b: usize) -> usize {
        let op = |p, q| if under { x.under(p, q) } else { x.over(p, q) };
        let op_inv = |p, q| {
            if under {
                x.under_inv(p, q)
            } else {
                x.over_inv(p, q)
            }
        };
        let diag_root = |c| (0..x.order()).find(|&al| op(al, al) == c).unwrap();
        let (mut p, mut q) = (a, b);
        if n >= 0 {
            for _ in 0..n {
                (p, q) = (op(p, q), op(q, q));
            }
        } else {
            for _ in 0..-n {
                let alpha = diag_root(q);
                (p, q) = (op_inv(p, alpha), alpha);
            }
        }
        p
    }

    fn naive_type(x: &Biquandle) -> u64 {
        (1..)
            .find(|&n| {
                let p = parallel_op(x, n);
                p.under.is_projection() && p.over.is_projection()
            })
            .unwrap() as u64
    }

    #[test]
    fn alexander_examples() {
        let a = make_alexander(5, 2, 3).unwrap();
        assert!(parallel_op(&a, 0).under.is_projection());
        assert_eq!(parallel_op(&a, 1).under, *a.under_table());
        let p2 = parallel_op(&a, 2);
        let pm1 = parallel_op(&a, -1);
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(p2.under.get(x, y), 4 * x % 5);
                assert_eq!(pm1.under.get(x, y), (2 * x + y) % 5);
            }
        }
        assert_eq!(type_of(&a), 4);
        assert_eq!(p2.period, 4);
    }

    #[test]
    fn recursion_and_composition() {
        for x in sample_biquandles() {
            let t = type_of(&x) as i64;
            let k = x.order();
            let ops: Vec<ParallelOps> = (-2 * t..=2 * t).map(|n| parallel_op(&x, n)).collect();
            let at = |n: i64| &ops[(n + 2 * t) as usize];
            for n in -2 * t..=2 * t {
                for a in 0..k {
                    for b in 0..k {
                        assert_eq!(at(n).under.get(a, b), oracle(&x, true, n, a, b));
                        assert_eq!(at(n).over.get(a, b), oracle(&x, false, n, a, b));
                    }
                }
            }
            for i in -t..=t {
                for j in -t..=t {
                    let (pi, pj, pij) = (at(i), at(j), at(i + j));
                    for a in 0..k {
                        for b in 0..k {
                            let u = pj.under.get(pi.under.get(a, b), pi.under.get(b, b));
                            let o = pj.over.get(pi.over.get(a, b), pi.over.get(b, b));
                            assert_eq!(pij.under.get(a, b), u);
                            assert_eq!(pij.over.get(a, b), o);
                        }
                    }
                }
            }
            assert_eq!(type_of(&x), naive_type(&x));
        }
    }
}
