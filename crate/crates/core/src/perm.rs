use num_integer::Integer;

use crate::error::{Error, Result};

/// A bijection of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &v in &image {
            if v >= image.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::MalformedTable(format!(
                    "{image:?} is not a permutation"
                )));
            }
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: self.image.iter().map(|&i| other.image[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.image[i];
            }
            out.push(cycle);
        }
        out
    }

    /// The n-th power, negative exponents included; computed cycle by cycle.
    pub fn pow(&self, n: i64) -> Permutation {
        let mut image = vec![0; self.len()];
        for cycle in self.cycles() {
            let len = cycle.len() as i64;
            let shift = n.rem_euclid(len) as usize;
            for (k, &i) in cycle.iter().enumerate() {
                image[i] = cycle[(k + shift) % cycle.len()];
            }
        }
        Permutation { image }
    }

    pub fn order(&self) -> u64 {
        perm_order(self)
    }
}

/// Least n ≥ 1 with pⁿ = id, as the lcm of the cycle lengths.
pub fn perm_order(p: &Permutation) -> u64 {
    p.cycles()
        .iter()
        .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
}
