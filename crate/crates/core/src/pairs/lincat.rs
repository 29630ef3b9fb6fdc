//! Finite k-linear categories whose indecomposables have Hom spaces of
//! dimension at most one.
//!
//! Both ambient testbeds (interval modules over a linear Nakayama algebra and
//! the derived window of `k A_n`) have this property, and so do all of their
//! additive quotients. A category is then determined by which Hom spaces are
//! nonzero plus one scalar per composable triple:
//! `basis(y,z) ∘ basis(x,y) = c(x,y,z) · basis(x,z)`.

use std::collections::HashMap;

use crate::exactfield::{Field, Mat, Q};

#[derive(Clone, Debug)]
pub struct LinCat {
    labels: Vec<String>,
    hom: Vec<Vec<bool>>,
    comp: HashMap<(usize, usize, usize), Q>,
}

impl LinCat {
    /// `comp` receives `(x, y, z)` only when `Hom(x,y)`, `Hom(y,z)` and
    /// `Hom(x,z)` are all nonzero.
    pub fn new(labels: Vec<String>, hom: Vec<Vec<bool>>, comp: impl Fn(usize, usize, usize) -> Q) -> Self {
        let n = labels.len();
        let mut table = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                if !hom[x][y] {
                    continue;
                }
                for z in 0..n {
                    if hom[y][z] && hom[x][z] {
                        let c = comp(x, y, z);
                        if !c.is_zero() {
                            table.insert((x, y, z), c);
                        }
                    }
                }
            }
        }
        LinCat { labels, hom, comp: table }
    }

    pub fn from_parts(labels: Vec<String>, hom: Vec<Vec<bool>>, comp: HashMap<(usize, usize, usize), Q>) -> Self {
        LinCat { labels, hom, comp }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn hom(&self, x: usize, y: usize) -> bool {
        self.hom[x][y]
    }

    pub fn c(&self, x: usize, y: usize, z: usize) -> Q {
        self.comp.get(&(x, y, z)).cloned().unwrap_or_else(Q::zero)
    }

    /// Whether `basis(x,y)` factors through some object of `w`.
    pub fn factors_through(&self, x: usize, y: usize, w: &[usize]) -> bool {
        self.hom[x][y] && w.iter().any(|&m| self.comp.contains_key(&(x, m, y)))
    }

    /// The additive quotient by `w`, restricted to `keep` (relabelled
    /// `0..keep.len()`).
    pub fn quotient(&self, w: &[usize], keep: &[usize]) -> LinCat {
        let labels = keep.iter().map(|&x| self.labels[x].clone()).collect();
        let hom: Vec<Vec<bool>> = keep
            .iter()
            .map(|&x| keep.iter().map(|&y| self.hom[x][y] && !self.factors_through(x, y, w)).collect())
            .collect();
        let mut comp = HashMap::new();
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                if !hom[i][j] {
                    continue;
                }
                for (k, &z) in keep.iter().enumerate() {
                    if hom[j][k] && hom[i][k] {
                        if let Some(c) = self.comp.get(&(x, y, z)) {
                            comp.insert((i, j, k), c.clone());
                        }
                    }
                }
            }
        }
        LinCat { labels, hom, comp }
    }

    pub fn hom_dim(&self, x: &[usize], y: &[usize]) -> usize {
        x.iter().map(|&s| y.iter().filter(|&&t| self.hom[s][t]).count()).sum()
    }

    /// Positions `(t, s)` of the basis of `Hom(⊕x, ⊕y)`, row-major.
    pub fn positions(&self, x: &[usize], y: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, &b) in y.iter().enumerate() {
            for (s, &a) in x.iter().enumerate() {
                if self.hom[a][b] {
                    out.push((t, s));
                }
            }
        }
        out
    }

    pub fn zero(&self, src: &[usize], tgt: &[usize]) -> LinMor {
        LinMor { src: src.to_vec(), tgt: tgt.to_vec(), coef: Mat::zeros(tgt.len(), src.len()) }
    }

    pub fn identity(&self, obj: &[usize]) -> LinMor {
        LinMor { src: obj.to_vec(), tgt: obj.to_vec(), coef: Mat::identity(obj.len()) }
    }

    pub fn from_coords(&self, src: &[usize], tgt: &[usize], coords: &[Q]) -> LinMor {
        let mut m = self.zero(src, tgt);
        for ((t, s), c) in self.positions(src, tgt).into_iter().zip(coords) {
            m.coef[(t, s)] = c.clone();
        }
        m
    }

    pub fn coords(&self, f: &LinMor) -> Vec<Q> {
        self.positions(&f.src, &f.tgt).into_iter().map(|(t, s)| f.coef[(t, s)].clone()).collect()
    }

    /// `g ∘ f`.
    pub fn compose(&self, f: &LinMor, g: &LinMor) -> LinMor {
        assert_eq!(f.tgt, g.src, "morphisms are not composable");
        let mut out = self.zero(&f.src, &g.tgt);
        for (u, &z) in g.tgt.iter().enumerate() {
            for (s, &x) in f.src.iter().enumerate() {
                if !self.hom[x][z] {
                    continue;
                }
                let mut acc = Q::zero();
                for (t, &y) in f.tgt.iter().enumerate() {
                    let (a, b) = (&f.coef[(t, s)], &g.coef[(u, t)]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    if let Some(c) = self.comp.get(&(x, y, z)) {
                        acc = acc.add(&a.mul(b).mul(c));
                    }
                }
                out.coef[(u, s)] = acc;
            }
        }
        out
    }

    /// Whether the structure constants are associative on every composable
    /// quadruple.
    pub fn is_associative(&self) -> bool {
        let n = self.len();
        for w in 0..n {
            for x in 0..n {
                if !self.hom[w][x] {
                    continue;
                }
                for y in 0..n {
                    if !self.hom[x][y] {
                        continue;
                    }
                    for z in 0..n {
                        if !self.hom[y][z] {
                            continue;
                        }
                        // (h g) f = h (g f)
                        let left = self.c(x, y, z).mul(&self.c(w, x, z));
                        let right = self.c(w, x, y).mul(&self.c(w, y, z));
                        if left != right {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Objects other than `x` that can be the middle of a nonzero composite
    /// `x -> m -> y`.
    pub fn middles(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.len()).filter(|&m| m != x && m != y && self.comp.contains_key(&(x, m, y))).collect()
    }

    /// Whether `basis(x,y)` is irreducible: nonzero, non-invertible and not a
    /// composite of two non-invertible maps.
    pub fn is_irreducible(&self, x: usize, y: usize) -> bool {
        x != y && self.hom[x][y] && self.middles(x, y).is_empty()
    }
}

/// A morphism between direct sums of indecomposables of a [`LinCat`]: entry
/// `(t, s)` is the coefficient of `basis(src[s], tgt[t])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMor {
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub coef: Mat<Q>,
}

impl LinMor {
    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn add(&self, other: &LinMor) -> LinMor {
        assert_eq!((&self.src, &self.tgt), (&other.src, &other.tgt));
        LinMor { src: self.src.clone(), tgt: self.tgt.clone(), coef: self.coef.add(&other.coef) }
    }

    pub fn scale(&self, s: &Q) -> LinMor {
        LinMor { src: self.src.clone(), tgt: self.tgt.clone(), coef: self.coef.scale(s) }
    }

    /// Zeroes the entries in blocks that die in a quotient category.
    pub fn reduce(&self, killed: impl Fn(usize, usize) -> bool) -> LinMor {
        let mut out = self.clone();
        for (t, &y) in self.tgt.iter().enumerate() {
            for (s, &x) in self.src.iter().enumerate() {
                if killed(x, y) {
                    out.coef[(t, s)] = Q::zero();
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::q;

    /// `1 -> 2 -> 3` with the composite nonzero.
    fn a3() -> LinCat {
        let hom = vec![vec![true, true, true], vec![false, true, true], vec![false, false, true]];
        LinCat::new(vec!["1".into(), "2".into(), "3".into()], hom, |_, _, _| q(1))
    }

    #[test]
    fn quotient_kills_factoring_maps() {
        let c = a3();
        assert!(c.factors_through(0, 2, &[1]));
        let qc = c.quotient(&[1], &[0, 2]);
        assert!(!qc.hom(0, 1));
        assert!(qc.hom(0, 0));
        assert!(c.is_associative());
        assert!(c.is_irreducible(0, 1));
        assert!(!c.is_irreducible(0, 2));
    }

    #[test]
    fn composition_of_sums() {
        let c = a3();
        let f = c.from_coords(&[0], &[1, 1], &[q(1), q(2)]);
        let g = c.from_coords(&[1, 1], &[2], &[q(3), q(-1)]);
        let h = c.compose(&f, &g);
        assert_eq!(c.coords(&h), vec![q(1)]);
    }
}
