//! Morphisms between direct sums of interval modules in the canonical basis.
//!
//! Between two intervals the Hom space is at most one-dimensional and is
//! spanned by the canonical map that is the identity on the overlap of the
//! image. A morphism between sums is therefore a scalar matrix whose entry
//! `(t, s)` may be nonzero only when `Hom(src[s], tgt[t]) != 0`. Canonical
//! maps compose to the canonical map or to zero.

use super::rep::{Rep, RepMor};
use super::Interval;
use crate::error::{Error, Result};
use crate::exactfield::{Field, Mat, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morph {
    pub src: Vec<Interval>,
    pub tgt: Vec<Interval>,
    /// `tgt.len() x src.len()`
    pub coef: Mat<Q>,
}

impl Morph {
    pub fn zero(src: Vec<Interval>, tgt: Vec<Interval>) -> Self {
        let coef = Mat::zeros(tgt.len(), src.len());
        Morph { src, tgt, coef }
    }

    pub fn identity(obj: Vec<Interval>) -> Self {
        let coef = Mat::identity(obj.len());
        Morph { src: obj.clone(), tgt: obj, coef }
    }

    /// Builds a morphism, rejecting entries outside the Hom support.
    pub fn new(src: Vec<Interval>, tgt: Vec<Interval>, coef: Mat<Q>) -> Result<Self> {
        if coef.rows() != tgt.len() || coef.cols() != src.len() {
            return Err(Error::Input("coefficient matrix has the wrong shape".into()));
        }
        for t in 0..tgt.len() {
            for s in 0..src.len() {
                if !coef[(t, s)].is_zero() && !src[s].hom_nonzero(&tgt[t]) {
                    return Err(Error::Input(format!("no nonzero map {} -> {}", src[s], tgt[t])));
                }
            }
        }
        Ok(Morph { src, tgt, coef })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morph) -> Morph {
        assert_eq!(self.tgt, other.src, "morphisms are not composable");
        let mut coef = Mat::zeros(other.tgt.len(), self.src.len());
        for u in 0..other.tgt.len() {
            for s in 0..self.src.len() {
                if !self.src[s].hom_nonzero(&other.tgt[u]) {
                    continue;
                }
                let mut acc = Q::zero();
                for t in 0..self.tgt.len() {
                    let (g, f) = (&other.coef[(u, t)], &self.coef[(t, s)]);
                    if !g.is_zero() && !f.is_zero() {
                        acc = acc.add(&g.mul(f));
                    }
                }
                coef[(u, s)] = acc;
            }
        }
        Morph { src: self.src.clone(), tgt: other.tgt.clone(), coef }
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }

    /// Vertexwise matrices in the standard bases of [`Rep::of_list`].
    pub fn realize(&self, n: usize) -> RepMor<Q> {
        let maps = (1..=n)
            .map(|v| {
                let src_at: Vec<usize> = (0..self.src.len()).filter(|&s| self.src[s].contains(v)).collect();
                let tgt_at: Vec<usize> = (0..self.tgt.len()).filter(|&t| self.tgt[t].contains(v)).collect();
                let mut m = Mat::zeros(tgt_at.len(), src_at.len());
                for (c, &s) in src_at.iter().enumerate() {
                    for (r, &t) in tgt_at.iter().enumerate() {
                        if let Some((lo, hi)) = self.src[s].image_support(&self.tgt[t]) {
                            if lo <= v && v <= hi {
                                m[(r, c)] = self.coef[(t, s)].clone();
                            }
                        }
                    }
                }
                m
            })
            .collect();
        RepMor { maps }
    }

    /// Stacks `[self; other]` as a map into `self.tgt ++ other.tgt`.
    pub fn stack(&self, other: &Morph) -> Morph {
        assert_eq!(self.src, other.src);
        let mut tgt = self.tgt.clone();
        tgt.extend(other.tgt.iter().copied());
        Morph { src: self.src.clone(), tgt, coef: self.coef.vstack(&other.coef) }
    }

    /// `[self | other]` as a map out of `self.src ++ other.src`.
    pub fn join(&self, other: &Morph) -> Morph {
        assert_eq!(self.tgt, other.tgt);
        let mut src = self.src.clone();
        src.extend(other.src.iter().copied());
        Morph { src, tgt: self.tgt.clone(), coef: self.coef.hstack(&other.coef) }
    }

    pub fn scale(&self, s: &Q) -> Morph {
        Morph { src: self.src.clone(), tgt: self.tgt.clone(), coef: self.coef.scale(s) }
    }

    pub fn add(&self, other: &Morph) -> Morph {
        assert_eq!((&self.src, &self.tgt), (&other.src, &other.tgt));
        Morph { src: self.src.clone(), tgt: self.tgt.clone(), coef: self.coef.add(&other.coef) }
    }
}

/// Positions `(t, s)` carrying a basis element of `Hom(⊕src, ⊕tgt)`, in
/// row-major order. This fixes the basis of every Hom space between sums.
pub fn hom_positions(src: &[Interval], tgt: &[Interval]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (t, y) in tgt.iter().enumerate() {
        for (s, x) in src.iter().enumerate() {
            if x.hom_nonzero(y) {
                out.push((t, s));
            }
        }
    }
    out
}

/// Coordinates of `f` in the basis of [`hom_positions`].
pub fn hom_coords(f: &Morph) -> Vec<Q> {
    hom_positions(&f.src, &f.tgt).into_iter().map(|(t, s)| f.coef[(t, s)].clone()).collect()
}

/// The morphism with the given coordinates.
pub fn from_coords(src: &[Interval], tgt: &[Interval], coords: &[Q]) -> Morph {
    let mut m = Morph::zero(src.to_vec(), tgt.to_vec());
    for ((t, s), c) in hom_positions(src, tgt).into_iter().zip(coords) {
        m.coef[(t, s)] = c.clone();
    }
    m
}

/// Realized representation of a list of summands.
pub fn rep_of(n: usize, summands: &[Interval]) -> Rep<Q> {
    Rep::of_list(n, summands)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::q;
    use crate::modcat::Algebra;

    #[test]
    fn composition_matches_realization() {
        let alg = Algebra::hereditary(4);
        let inds = alg.indecomposables();
        for x in &inds {
            for y in &inds {
                for z in &inds {
                    if !(x.hom_nonzero(y) && y.hom_nonzero(z)) {
                        continue;
                    }
                    let f = Morph::new(vec![*x], vec![*y], Mat::from_rows(vec![vec![q(1)]])).unwrap();
                    let g = Morph::new(vec![*y], vec![*z], Mat::from_rows(vec![vec![q(1)]])).unwrap();
                    let comb = f.then(&g).realize(4);
                    let real = f.realize(4).then(&g.realize(4));
                    assert_eq!(comb, real, "{x} -> {y} -> {z}");
                }
            }
        }
    }

    #[test]
    fn realized_canonical_maps_commute() {
        let alg = Algebra::uniform(5, 4).unwrap();
        let inds = alg.indecomposables();
        for x in &inds {
            for y in &inds {
                if x.hom_nonzero(y) {
                    let f = Morph::new(vec![*x], vec![*y], Mat::from_rows(vec![vec![q(1)]])).unwrap();
                    let r = f.realize(5);
                    assert!(r.commutes(&rep_of(5, &[*x]), &rep_of(5, &[*y])));
                    assert!(!r.is_zero());
                }
            }
        }
    }
}
