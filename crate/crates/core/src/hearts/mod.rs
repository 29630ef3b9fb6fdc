//! Hearts of cotorsion pairs: the shared abelian-category toolkit over a
//! heart presented as a [`LinCat`], plus the two ambient analyses.

pub mod exact;
pub mod tri;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::{Field, Mat, Q};
use crate::pairs::{LinCat, LinMor};

/// Universal map `⊕ x^{dim Hom(x, a)} -> a` over `xs`, with all-ones
/// coefficients.
pub fn universal_map(h: &LinCat, xs: &[usize], a: usize) -> LinMor {
    let src: Vec<usize> = xs.iter().copied().filter(|&x| h.hom(x, a)).collect();
    let mut f = h.zero(&src, &[a]);
    for s in 0..src.len() {
        f.coef[(0, s)] = Q::one();
    }
    f
}

/// Matrix of `ψ ↦ ψ ∘ f` from `Hom(tgt f, q)` to `Hom(src f, q)` in the
/// position bases.
fn precompose_matrix(h: &LinCat, f: &LinMor, q: usize) -> Mat<Q> {
    let dom = h.positions(&f.tgt, &[q]);
    let cod = h.positions(&f.src, &[q]).len();
    let cols: Vec<Vec<Q>> = dom
        .iter()
        .map(|&(_, t)| {
            let mut psi = h.zero(&f.tgt, &[q]);
            psi.coef[(0, t)] = Q::one();
            h.coords(&h.compose(f, &psi))
        })
        .collect();
    if cols.is_empty() {
        Mat::zeros(cod, 0)
    } else {
        Mat::from_cols(cod, &cols)
    }
}

/// Matrix of `ψ ↦ f ∘ ψ` from `Hom(q, src f)` to `Hom(q, tgt f)`.
fn postcompose_matrix(h: &LinCat, f: &LinMor, q: usize) -> Mat<Q> {
    let dom = h.positions(&[q], &f.src);
    let cod = h.positions(&[q], &f.tgt).len();
    let cols: Vec<Vec<Q>> = dom
        .iter()
        .map(|&(s, _)| {
            let mut psi = h.zero(&[q], &f.src);
            psi.coef[(s, 0)] = Q::one();
            h.coords(&h.compose(&psi, f))
        })
        .collect();
    if cols.is_empty() {
        Mat::zeros(cod, 0)
    } else {
        Mat::from_cols(cod, &cols)
    }
}

/// Epimorphism test: `Hom(tgt, q) -> Hom(src, q)` injective for every
/// indecomposable `q`.
pub fn is_epi(h: &LinCat, f: &LinMor) -> bool {
    (0..h.len()).all(|q| {
        let m = precompose_matrix(h, f, q);
        m.cols() == 0 || m.rank() == m.cols()
    })
}

/// Monomorphism test: `Hom(q, src) -> Hom(q, tgt)` injective for every `q`.
pub fn is_mono(h: &LinCat, f: &LinMor) -> bool {
    (0..h.len()).all(|q| {
        let m = postcompose_matrix(h, f, q);
        m.cols() == 0 || m.rank() == m.cols()
    })
}

/// Projective indecomposables: `x` is projective iff the sum of all radical
/// maps into it is not an epimorphism.
pub fn projectives(h: &LinCat) -> Vec<usize> {
    (0..h.len())
        .filter(|&x| {
            let others: Vec<usize> = (0..h.len()).filter(|&b| b != x).collect();
            let r = universal_map(h, &others, x);
            r.src.is_empty() || !is_epi(h, &r)
        })
        .collect()
}

/// Injective indecomposables, dually.
pub fn injectives(h: &LinCat) -> Vec<usize> {
    (0..h.len())
        .filter(|&x| {
            let tgt: Vec<usize> = (0..h.len()).filter(|&b| b != x && h.hom(x, b)).collect();
            let mut f = h.zero(&[x], &tgt);
            for t in 0..tgt.len() {
                f.coef[(t, 0)] = Q::one();
            }
            tgt.is_empty() || !is_mono(h, &f)
        })
        .collect()
}

/// Whether every map `x -> a` lifts along the epimorphism `g: b -> a`.
pub fn lifts(h: &LinCat, x: usize, g: &LinMor) -> bool {
    let m = postcompose_matrix(h, g, x);
    m.rank() == h.positions(&[x], &g.tgt).len()
}

/// Epimorphisms `⊕ S -> a` with all-ones coefficients, for every subset `S`
/// of the objects with a nonzero map to `a` (including `a` itself).
pub fn sample_epis(h: &LinCat) -> Vec<LinMor> {
    let mut out = Vec::new();
    for a in 0..h.len() {
        let sources: Vec<usize> = (0..h.len()).filter(|&b| h.hom(b, a)).collect();
        if sources.len() > 12 {
            continue;
        }
        for mask in 1usize..1 << sources.len() {
            let s: Vec<usize> = (0..sources.len()).filter(|i| mask >> i & 1 == 1).map(|i| sources[i]).collect();
            let f = universal_map(h, &s, a);
            if is_epi(h, &f) {
                out.push(f);
            }
        }
    }
    out
}

/// Witness that `a` is covered by sums of `gens`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverWitness {
    pub target: String,
    pub sources: Vec<String>,
}

/// `Some(witness)` when the universal map from `gens` onto `a` is epi.
pub fn cover(h: &LinCat, gens: &[usize], a: usize) -> Option<CoverWitness> {
    let f = universal_map(h, gens, a);
    (!f.src.is_empty() && is_epi(h, &f)).then(|| CoverWitness {
        target: h.label(a).to_string(),
        sources: f.src.iter().map(|&s| h.label(s).to_string()).collect(),
    })
}

pub fn recheck_cover(h: &LinCat, w: &CoverWitness) -> Result<()> {
    let id = |l: &str| {
        (0..h.len()).find(|&i| h.label(i) == l).ok_or_else(|| Error::Verification(format!("unknown heart object {l}")))
    };
    let a = id(&w.target)?;
    let src = w.sources.iter().map(|s| id(s)).collect::<Result<Vec<_>>>()?;
    let f = universal_map(h, &src, a);
    if f.src != src || !is_epi(h, &f) {
        return Err(Error::Verification(format!("cover of {} is not an epimorphism", w.target)));
    }
    Ok(())
}

/// Cokernel `π: B -> Q` of `f: A -> B` found by representability: `Q`
/// represents `X ↦ ker(Hom(B,X) -> Hom(A,X))`.
pub fn cokernel(h: &LinCat, f: &LinMor) -> Result<LinMor> {
    let n = h.len();
    let kernels: Vec<Vec<Vec<Q>>> = (0..n).map(|q| precompose_matrix(h, f, q).kernel_basis()).collect();
    let mut tgt = Vec::new();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for q in 0..n {
        let dim = h.positions(&f.tgt, &[q]).len();
        if kernels[q].is_empty() {
            continue;
        }
        // maps B -> q' -> q through radical maps
        let mut span: Vec<Vec<Q>> = Vec::new();
        for qq in 0..n {
            if qq == q || !h.hom(qq, q) {
                continue;
            }
            let g = h.from_coords(&[qq], &[q], &[Q::one()]);
            for phi in &kernels[qq] {
                let m = h.from_coords(&f.tgt, &[qq], phi);
                span.push(h.coords(&h.compose(&m, &g)));
            }
        }
        let mut rank = if span.is_empty() { 0 } else { Mat::from_cols(dim, &span).rank() };
        for phi in &kernels[q] {
            span.push(phi.clone());
            let r = Mat::from_cols(dim, &span).rank();
            if r > rank {
                rank = r;
                tgt.push(q);
                rows.push(phi.clone());
            } else {
                span.pop();
            }
        }
    }
    let mut pi = h.zero(&f.tgt, &tgt);
    for (i, phi) in rows.iter().enumerate() {
        let row = h.from_coords(&f.tgt, &[tgt[i]], phi);
        for s in 0..f.tgt.len() {
            pi.coef[(i, s)] = row.coef[(0, s)].clone();
        }
    }
    verify_cokernel(h, f, &pi)?;
    Ok(pi)
}

/// Universal property: `π f = 0` and `Hom(Q, X) -> ker(Hom(B,X) -> Hom(A,X))`
/// is bijective for every indecomposable `X`.
pub fn verify_cokernel(h: &LinCat, f: &LinMor, pi: &LinMor) -> Result<()> {
    if !h.compose(f, pi).is_zero() {
        return Err(Error::Verification("cokernel map does not kill the morphism".into()));
    }
    for x in 0..h.len() {
        let k = precompose_matrix(h, f, x).kernel_basis().len();
        let m = precompose_matrix(h, pi, x);
        if m.cols() != k || (k > 0 && m.rank() != k) {
            return Err(Error::Verification(format!("cokernel fails the universal property at {}", h.label(x))));
        }
    }
    Ok(())
}

/// Kernel `ι: K -> A` of `f: A -> B`, dually.
pub fn kernel(h: &LinCat, f: &LinMor) -> Result<LinMor> {
    let n = h.len();
    let kernels: Vec<Vec<Vec<Q>>> = (0..n).map(|q| postcompose_matrix(h, f, q).kernel_basis()).collect();
    let mut src = Vec::new();
    let mut cols: Vec<Vec<Q>> = Vec::new();
    for q in 0..n {
        let dim = h.positions(&[q], &f.src).len();
        if kernels[q].is_empty() {
            continue;
        }
        let mut span: Vec<Vec<Q>> = Vec::new();
        for qq in 0..n {
            if qq == q || !h.hom(q, qq) {
                continue;
            }
            let g = h.from_coords(&[q], &[qq], &[Q::one()]);
            for phi in &kernels[qq] {
                let m = h.from_coords(&[qq], &f.src, phi);
                span.push(h.coords(&h.compose(&g, &m)));
            }
        }
        let mut rank = if span.is_empty() { 0 } else { Mat::from_cols(dim, &span).rank() };
        for phi in &kernels[q] {
            span.push(phi.clone());
            let r = Mat::from_cols(dim, &span).rank();
            if r > rank {
                rank = r;
                src.push(q);
                cols.push(phi.clone());
            } else {
                span.pop();
            }
        }
    }
    let mut iota = h.zero(&src, &f.src);
    for (j, phi) in cols.iter().enumerate() {
        let col = h.from_coords(&[src[j]], &f.src, phi);
        for t in 0..f.src.len() {
            iota.coef[(t, j)] = col.coef[(t, 0)].clone();
        }
    }
    if !h.compose(&iota, f).is_zero() {
        return Err(Error::Verification("kernel map is not killed by the morphism".into()));
    }
    for x in 0..n {
        let k = postcompose_matrix(h, f, x).kernel_basis().len();
        let m = postcompose_matrix(h, &iota, x);
        if m.cols() != k || (k > 0 && m.rank() != k) {
            return Err(Error::Verification(format!("kernel fails the universal property at {}", h.label(x))));
        }
    }
    Ok(iota)
}

/// Sorted heart summands of a morphism's target, for comparisons.
pub fn sorted_objects(objs: &[usize]) -> Vec<usize> {
    let mut v = objs.to_vec();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::q;

    /// `mod k A_2` as a heart: `S1 -> P2 -> S2` with the composite zero.
    fn a2() -> LinCat {
        let hom = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
        LinCat::new(vec!["S1".into(), "P2".into(), "S2".into()], hom, |_, _, _| q(1))
    }

    #[test]
    fn projectives_and_injectives() {
        let h = a2();
        assert_eq!(projectives(&h), vec![0, 1]);
        assert_eq!(injectives(&h), vec![1, 2]);
    }

    #[test]
    fn cokernels_and_kernels() {
        let h = a2();
        let f = h.from_coords(&[0], &[1], &[q(1)]);
        let pi = cokernel(&h, &f).unwrap();
        assert_eq!(pi.tgt, vec![2]);
        let g = h.from_coords(&[1], &[2], &[q(1)]);
        let iota = kernel(&h, &g).unwrap();
        assert_eq!(iota.src, vec![0]);
        // identity and zero
        assert!(cokernel(&h, &h.identity(&[1])).unwrap().tgt.is_empty());
        assert_eq!(cokernel(&h, &h.zero(&[0], &[2])).unwrap().tgt, vec![2]);
        assert!(kernel(&h, &h.identity(&[2])).unwrap().src.is_empty());
    }

    #[test]
    fn covers_and_lifting() {
        let h = a2();
        assert!(cover(&h, &[0, 1], 2).is_some());
        assert!(cover(&h, &[0], 2).is_none());
        for g in sample_epis(&h) {
            assert!(lifts(&h, 0, &g) && lifts(&h, 1, &g));
        }
        let g = h.from_coords(&[1], &[2], &[q(1)]);
        assert!(!lifts(&h, 2, &g));
    }
}
