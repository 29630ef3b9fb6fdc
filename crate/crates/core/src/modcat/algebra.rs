use serde::{Deserialize, Serialize};

use super::Interval;
use crate::error::{Error, Result};

/// Linear Nakayama algebra: the path algebra of `1 <- 2 <- ... <- n`
/// truncated by per-vertex Loewy length caps.
///
/// `caps[b-1]` is the length of the longest interval with top `b`, i.e. the
/// length of the indecomposable projective `P_b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Algebra {
    n: usize,
    caps: Vec<usize>,
}

impl Algebra {
    pub fn new(n: usize, caps: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("algebra needs at least one vertex".into()));
        }
        if caps.len() != n {
            return Err(Error::Input(format!("expected {n} caps, got {}", caps.len())));
        }
        if caps[0] != 1 {
            return Err(Error::Input("cap at vertex 1 must be 1".into()));
        }
        for b in 1..n {
            if caps[b] < 2 || caps[b] > caps[b - 1] + 1 {
                return Err(Error::Input(format!(
                    "caps must satisfy 2 <= cap[{}] <= cap[{}] + 1 (got {:?})",
                    b + 1,
                    b,
                    caps
                )));
            }
        }
        Ok(Algebra { n, caps })
    }

    /// The hereditary algebra `k A_n`.
    pub fn hereditary(n: usize) -> Self {
        Algebra::new(n, (1..=n).collect()).expect("hereditary caps are valid")
    }

    /// All paths of length `cap` (in arrows: `cap`) vanish; `cap >= 2` is the
    /// maximal Loewy length.
    pub fn uniform(n: usize, cap: usize) -> Result<Self> {
        if cap < 1 {
            return Err(Error::Input("cap must be positive".into()));
        }
        Algebra::new(n, (1..=n).map(|b| b.min(cap)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn caps(&self) -> &[usize] {
        &self.caps
    }

    pub fn is_hereditary(&self) -> bool {
        self.caps.iter().enumerate().all(|(i, &c)| c == i + 1)
    }

    pub fn allows(&self, iv: &Interval) -> bool {
        iv.a >= 1 && iv.b <= self.n && iv.a <= iv.b && iv.len() <= self.caps[iv.b - 1]
    }

    pub fn check(&self, iv: &Interval) -> Result<()> {
        if self.allows(iv) {
            Ok(())
        } else {
            Err(Error::Input(format!("{iv} is not a module over this algebra")))
        }
    }

    /// Indecomposables in canonical order (length, then low endpoint).
    pub fn indecomposables(&self) -> Vec<Interval> {
        let mut out: Vec<Interval> = (1..=self.n)
            .flat_map(|b| (1..=b).map(move |a| Interval::new(a, b)))
            .filter(|iv| self.allows(iv))
            .collect();
        out.sort();
        out
    }

    /// `P_i`, the projective cover of the simple at `i`.
    pub fn projective(&self, i: usize) -> Interval {
        Interval::new(i + 1 - self.caps[i - 1], i)
    }

    /// `I_j`, the injective envelope of the simple at `j`.
    pub fn injective(&self, j: usize) -> Interval {
        let e = (j..=self.n).rev().find(|&e| self.allows(&Interval::new(j, e))).expect("simple is allowed");
        Interval::new(j, e)
    }

    pub fn projectives(&self) -> Vec<Interval> {
        let mut v: Vec<Interval> = (1..=self.n).map(|i| self.projective(i)).collect();
        v.sort();
        v
    }

    pub fn injectives(&self) -> Vec<Interval> {
        let mut v: Vec<Interval> = (1..=self.n).map(|j| self.injective(j)).collect();
        v.sort();
        v
    }

    pub fn is_projective(&self, iv: &Interval) -> bool {
        self.projective(iv.b) == *iv
    }

    pub fn is_injective(&self, iv: &Interval) -> bool {
        self.injective(iv.a) == *iv
    }

    /// Vector-space duality `D = Hom_k(-, k)` followed by the relabelling
    /// `j -> n+1-j`, which turns the opposite algebra back into a linear
    /// Nakayama algebra.
    pub fn dual_interval(&self, iv: &Interval) -> Interval {
        Interval::new(self.n + 1 - iv.b, self.n + 1 - iv.a)
    }

    /// The opposite algebra, relabelled as a linear Nakayama algebra.
    pub fn opposite(&self) -> Algebra {
        let caps = (1..=self.n).map(|t| self.injective(self.n + 1 - t).len()).collect();
        Algebra::new(self.n, caps).expect("opposite of a Nakayama algebra is Nakayama")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indecomposable_counts() {
        assert_eq!(Algebra::uniform(5, 4).unwrap().indecomposables().len(), 14);
        assert_eq!(Algebra::hereditary(1).indecomposables(), vec![Interval::simple(1)]);
        assert_eq!(Algebra::hereditary(4).indecomposables().len(), 10);
    }

    #[test]
    fn projectives_and_injectives() {
        let alg = Algebra::uniform(5, 4).unwrap();
        assert_eq!(alg.projective(5), Interval::new(2, 5));
        assert_eq!(alg.injective(1), Interval::new(1, 4));
        let h = Algebra::hereditary(5);
        assert_eq!(h.injective(1), Interval::new(1, 5));
        assert_eq!(h.injective(5), Interval::simple(5));
    }

    #[test]
    fn opposite_is_involution() {
        for alg in [Algebra::uniform(5, 4).unwrap(), Algebra::uniform(6, 3).unwrap(), Algebra::hereditary(4)] {
            let op = alg.opposite();
            assert_eq!(op.opposite(), alg);
            for iv in alg.indecomposables() {
                assert!(op.allows(&alg.dual_interval(&iv)));
            }
            assert_eq!(op.indecomposables().len(), alg.indecomposables().len());
        }
    }

    #[test]
    fn rejects_bad_caps() {
        assert!(Algebra::new(3, vec![1, 3, 3]).is_err());
        assert!(Algebra::new(2, vec![1]).is_err());
    }
}
