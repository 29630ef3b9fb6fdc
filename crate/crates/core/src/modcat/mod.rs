//! The exact category `mod Λ` for a linear Nakayama algebra `Λ`.

mod algebra;
mod interval;
pub mod morph;
pub mod rep;

pub use algebra::Algebra;
pub use interval::{Interval, Obj};
pub use morph::Morph;
pub use rep::{Rep, RepMor};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactfield::{Field, Mat, Q};
use morph::{from_coords, hom_coords, hom_positions};

/// Projective presentation data of a list of summands: `0 -> Ω -> P -> X -> 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub cover: Vec<Interval>,
    pub epi: Morph,
    pub omega: Vec<Interval>,
    pub inclusion: Morph,
}

/// `Ext^1(x, y)` as `Hom(Ωx, y)` modulo maps extending over the cover.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub source: Vec<Interval>,
    pub target: Vec<Interval>,
    pub presentation: Presentation,
    /// Representatives `Ωx -> y` of a basis of classes.
    pub basis: Vec<Morph>,
    /// Coordinates (in `Hom(Ωx, y)`) spanning the split classes.
    restrictions: Vec<Vec<Q>>,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Representative of the class with the given coordinates.
    pub fn class(&self, coords: &[Q]) -> Morph {
        let mut m = Morph::zero(self.presentation.omega.clone(), self.target.clone());
        for (b, c) in self.basis.iter().zip(coords) {
            m = m.add(&b.scale(c));
        }
        m
    }

    /// Whether a representative `Ωx -> y` is the split class.
    pub fn is_split(&self, class: &Morph) -> bool {
        let v = hom_coords(class);
        if v.iter().all(Field::is_zero) {
            return true;
        }
        if self.restrictions.is_empty() {
            return false;
        }
        let m = Mat::from_cols(v.len(), &self.restrictions);
        m.solve(&v).expect("shapes agree").is_some()
    }
}

/// A short exact sequence `0 -> left -> middle -> right -> 0` with concrete
/// representations and maps.
#[derive(Clone, Debug)]
pub struct Conflation {
    pub left: Obj,
    pub middle: Obj,
    pub right: Obj,
    pub rep_left: Rep<Q>,
    pub rep_middle: Rep<Q>,
    pub rep_right: Rep<Q>,
    pub inc: RepMor<Q>,
    pub proj: RepMor<Q>,
}

impl Conflation {
    /// Re-checks exactness vertexwise by ranks, commutativity of both maps,
    /// and the decompositions of all three terms.
    pub fn verify(&self, alg: &Algebra) -> Result<()> {
        let fail = |m: &str| Err(Error::Verification(format!("conflation {} -> {} -> {}: {m}", self.left, self.middle, self.right)));
        if !self.inc.commutes(&self.rep_left, &self.rep_middle) || !self.proj.commutes(&self.rep_middle, &self.rep_right) {
            return fail("maps do not commute with arrows");
        }
        if !self.inc.is_injective() {
            return fail("left map is not injective");
        }
        if !self.proj.is_surjective() {
            return fail("right map is not surjective");
        }
        if !self.inc.then(&self.proj).is_zero() {
            return fail("composite is nonzero");
        }
        for v in 0..alg.n() {
            if self.rep_middle.dims[v] != self.rep_left.dims[v] + self.rep_right.dims[v] {
                return fail("dimensions do not add");
            }
        }
        if self.rep_left.decompose(alg)? != self.left
            || self.rep_middle.decompose(alg)? != self.middle
            || self.rep_right.decompose(alg)? != self.right
        {
            return fail("terms do not decompose as recorded");
        }
        Ok(())
    }
}

/// `mod Λ` with precomputed Hom and Ext dimension tables on indecomposables.
#[derive(Clone, Debug)]
pub struct ModCat {
    alg: Algebra,
    inds: Vec<Interval>,
    index: HashMap<Interval, usize>,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
}

impl ModCat {
    pub fn new(alg: Algebra) -> Self {
        let inds = alg.indecomposables();
        let index = inds.iter().enumerate().map(|(i, iv)| (*iv, i)).collect();
        let mut cat = ModCat { alg, inds, index, hom: Vec::new(), ext: Vec::new() };
        cat.hom = cat.inds.iter().map(|x| cat.inds.iter().map(|y| x.hom_nonzero(y) as usize).collect()).collect();
        cat.ext = cat
            .inds
            .iter()
            .map(|x| cat.inds.iter().map(|y| cat.ext_space(&[*x], &[*y]).dim()).collect())
            .collect();
        cat
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn n(&self) -> usize {
        self.alg.n()
    }

    pub fn indecomposables(&self) -> &[Interval] {
        &self.inds
    }

    pub fn len(&self) -> usize {
        self.inds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inds.is_empty()
    }

    pub fn index_of(&self, iv: &Interval) -> Option<usize> {
        self.index.get(iv).copied()
    }

    pub fn ind(&self, i: usize) -> Interval {
        self.inds[i]
    }

    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        self.hom[i][j]
    }

    pub fn ext_dim(&self, i: usize, j: usize) -> usize {
        self.ext[i][j]
    }

    pub fn hom_dim_obj(&self, x: &Obj, y: &Obj) -> usize {
        hom_positions(&x.expand(), &y.expand()).len()
    }

    pub fn ext_dim_obj(&self, x: &Obj, y: &Obj) -> usize {
        self.ext_space(&x.expand(), &y.expand()).dim()
    }

    pub fn is_projective(&self, iv: &Interval) -> bool {
        self.alg.is_projective(iv)
    }

    pub fn rep(&self, summands: &[Interval]) -> Rep<Q> {
        Rep::of_list(self.n(), summands)
    }

    /// Projective cover and syzygy inclusion of a list of summands.
    pub fn presentation(&self, x: &[Interval]) -> Presentation {
        let cover: Vec<Interval> = x.iter().map(|iv| self.alg.projective(iv.b)).collect();
        let mut epi = Morph::zero(cover.clone(), x.to_vec());
        for s in 0..x.len() {
            epi.coef[(s, s)] = Q::one();
        }
        let mut omega = Vec::new();
        let mut rows = Vec::new();
        for (s, (iv, p)) in x.iter().zip(&cover).enumerate() {
            if iv.a > p.a {
                omega.push(Interval::new(p.a, iv.a - 1));
                rows.push(s);
            }
        }
        let mut inclusion = Morph::zero(omega.clone(), cover.clone());
        for (o, &s) in rows.iter().enumerate() {
            inclusion.coef[(s, o)] = Q::one();
        }
        Presentation { cover, epi, omega, inclusion }
    }

    /// Projective cover `(P, P -> x)`.
    pub fn projective_cover(&self, x: &Obj) -> (Obj, Morph) {
        let p = self.presentation(&x.expand());
        (p.cover.iter().copied().collect(), p.epi)
    }

    /// Kernel of the projective cover, computed on representations and
    /// decomposed into intervals.
    pub fn syzygy(&self, x: &Obj) -> Result<Obj> {
        let list = x.expand();
        let p = self.presentation(&list);
        let cover = self.rep(&p.cover);
        let (kernel, _) = cover.kernel(&p.epi.realize(self.n()));
        kernel.decompose(&self.alg)
    }

    pub fn ext_space(&self, x: &[Interval], y: &[Interval]) -> ExtSpace {
        let presentation = self.presentation(x);
        let positions = hom_positions(&presentation.omega, y);
        let restrictions: Vec<Vec<Q>> = hom_positions(&presentation.cover, y)
            .into_iter()
            .map(|(t, s)| {
                let mut h = Morph::zero(presentation.cover.clone(), y.to_vec());
                h.coef[(t, s)] = Q::one();
                hom_coords(&presentation.inclusion.then(&h))
            })
            .filter(|v| v.iter().any(|c| !c.is_zero()))
            .collect();
        // lexicographically least unit vectors completing the split classes
        let mut span = restrictions.clone();
        let mut rank = quotient_rank(positions.len(), &span);
        let mut basis = Vec::new();
        for i in 0..positions.len() {
            let mut e = vec![Q::zero(); positions.len()];
            e[i] = Q::one();
            span.push(e.clone());
            let r = quotient_rank(positions.len(), &span);
            if r > rank {
                rank = r;
                basis.push(from_coords(&presentation.omega, y, &e));
            } else {
                span.pop();
            }
        }
        ExtSpace { source: x.to_vec(), target: y.to_vec(), presentation, basis, restrictions }
    }

    /// Middle term of the extension `0 -> v -> ? -> b -> 0` with the given
    /// class, as the pushout of `0 -> Ωb -> P -> b -> 0` along the class.
    pub fn extension_middle(&self, b: &[Interval], v: &[Interval], class: &Morph) -> Result<Conflation> {
        let pres = self.presentation(b);
        if class.src != pres.omega || class.tgt != v {
            return Err(Error::Input(format!(
                "class must be a map Ω({}) -> {}",
                b.iter().copied().collect::<Obj>(),
                v.iter().copied().collect::<Obj>()
            )));
        }
        Morph::new(class.src.clone(), class.tgt.clone(), class.coef.clone())?;
        let n = self.n();
        let push = pres.inclusion.stack(&class.scale(&Q::from_i64(-1)));
        let mut sum_list = pres.cover.clone();
        sum_list.extend(v.iter().copied());
        let sum = self.rep(&sum_list);
        let (mid, q, section) = sum.cokernel(&push.realize(n));
        let mut embed = Morph::zero(v.to_vec(), sum_list.clone());
        for i in 0..v.len() {
            embed.coef[(pres.cover.len() + i, i)] = Q::one();
        }
        let inc = embed.realize(n).then(&q);
        let proj_sum = pres.epi.join(&Morph::zero(v.to_vec(), b.to_vec())).realize(n);
        let proj = RepMor { maps: proj_sum.maps.iter().zip(&section).map(|(p, s)| p.mul(s)).collect() };
        let middle = mid.decompose(&self.alg)?;
        Ok(Conflation {
            left: v.iter().copied().collect(),
            middle,
            right: b.iter().copied().collect(),
            rep_left: self.rep(v),
            rep_middle: mid,
            rep_right: self.rep(b),
            inc,
            proj,
        })
    }

    /// Whether the deflation `X -> B` of `c` induces bijections
    /// `Hom(Y, X) -> Hom(Y, B)` modulo maps factoring through `w`, for every
    /// `Y` in `tests`.
    pub fn is_coreflection(&self, c: &Conflation, tests: &[Interval], w: &[Interval]) -> bool {
        let reps_w: Vec<Rep<Q>> = w.iter().map(|&x| self.rep(&[x])).collect();
        tests.iter().all(|&y| {
            let ry = self.rep(&[y]);
            let through_w = |target: &Rep<Q>| -> Vec<Vec<Q>> {
                let mut out = Vec::new();
                for rw in &reps_w {
                    let into = ry.hom_basis(rw);
                    if into.is_empty() {
                        continue;
                    }
                    for g in rw.hom_basis(target) {
                        out.extend(into.iter().map(|f| f.then(&g).flatten()));
                    }
                }
                out
            };
            let hx = ry.hom_basis(&c.rep_middle);
            let hb = ry.hom_basis(&c.rep_right);
            let ideal_b = through_w(&c.rep_right);
            let ideal_x = through_w(&c.rep_middle);
            let mut image: Vec<Vec<Q>> = hx.iter().map(|f| f.then(&c.proj).flatten()).collect();
            image.extend(ideal_b.iter().cloned());
            span_rank(&image) == hb.len() && hx.len() - span_rank(&ideal_x) == hb.len() - span_rank(&ideal_b)
        })
    }

    /// Universal map `x -> ⊕ s^{dim Hom(x, s)}` over the indecomposables of `s`.
    pub fn left_approximation(&self, x: &Obj, s: &[Interval]) -> (Obj, Morph) {
        let src = x.expand();
        let mut tgt = Vec::new();
        let mut cols: Vec<(usize, usize)> = Vec::new();
        for t in s {
            for (i, iv) in src.iter().enumerate() {
                if iv.hom_nonzero(t) {
                    tgt.push(*t);
                    cols.push((tgt.len() - 1, i));
                }
            }
        }
        let mut f = Morph::zero(src, tgt.clone());
        for (r, c) in cols {
            f.coef[(r, c)] = Q::one();
        }
        (tgt.into_iter().collect(), f)
    }

    /// Universal map `⊕ s^{dim Hom(s, x)} -> x`.
    pub fn right_approximation(&self, x: &Obj, s: &[Interval]) -> (Obj, Morph) {
        let tgt = x.expand();
        let mut src = Vec::new();
        let mut rows: Vec<(usize, usize)> = Vec::new();
        for t in s {
            for (i, iv) in tgt.iter().enumerate() {
                if t.hom_nonzero(iv) {
                    src.push(*t);
                    rows.push((i, src.len() - 1));
                }
            }
        }
        let mut f = Morph::zero(src.clone(), tgt);
        for (r, c) in rows {
            f.coef[(r, c)] = Q::one();
        }
        (src.into_iter().collect(), f)
    }

    /// Whether every map from `f.src` to an object of `s` factors through `f`.
    pub fn is_left_approximation(&self, f: &Morph, s: &[Interval]) -> bool {
        s.iter().all(|t| {
            let target = vec![*t];
            let through: Vec<Vec<Q>> = hom_positions(&f.tgt, &target)
                .into_iter()
                .map(|(r, c)| {
                    let mut h = Morph::zero(f.tgt.clone(), target.clone());
                    h.coef[(r, c)] = Q::one();
                    hom_coords(&f.then(&h))
                })
                .collect();
            let all = hom_positions(&f.src, &target).len();
            all == 0 || (!through.is_empty() && Mat::from_cols(all, &through).rank() == all)
        })
    }

    /// Strips target summands greedily while the map stays a left
    /// approximation; the result is left minimal.
    pub fn minimal_left_approximation(&self, x: &Obj, s: &[Interval]) -> (Obj, Morph) {
        let (_, mut f) = self.left_approximation(x, s);
        let mut i = 0;
        while i < f.tgt.len() {
            let keep: Vec<usize> = (0..f.tgt.len()).filter(|&r| r != i).collect();
            let g = Morph { src: f.src.clone(), tgt: keep.iter().map(|&r| f.tgt[r]).collect(), coef: f.coef.select_rows(&keep) };
            if self.is_left_approximation(&g, s) {
                f = g;
            } else {
                i += 1;
            }
        }
        (f.tgt.iter().copied().collect(), f)
    }

    /// Cokernel of a morphism, decomposed.
    pub fn cokernel(&self, f: &Morph) -> Result<Obj> {
        let (c, _, _) = self.rep(&f.tgt).cokernel(&f.realize(self.n()));
        c.decompose(&self.alg)
    }

    pub fn injectives(&self) -> Vec<Interval> {
        self.alg.injectives()
    }

    pub fn projectives(&self) -> Vec<Interval> {
        self.alg.projectives()
    }

    /// Closed-form Hom dimension between objects, summed over summand pairs.
    pub fn hom_dim_closed(x: &Obj, y: &Obj) -> usize {
        x.iter()
            .flat_map(|(a, &m)| y.iter().map(move |(b, &k)| m * k * a.hom_nonzero(b) as usize))
            .sum()
    }
}

fn quotient_rank(dim: usize, gens: &[Vec<Q>]) -> usize {
    if gens.is_empty() {
        0
    } else {
        Mat::from_cols(dim, gens).rank()
    }
}

fn span_rank(vecs: &[Vec<Q>]) -> usize {
    if vecs.is_empty() || vecs[0].is_empty() {
        0
    } else {
        Mat::from_rows(vecs.to_vec()).rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex43() -> ModCat {
        ModCat::new(Algebra::uniform(5, 4).unwrap())
    }

    fn iv(a: usize, b: usize) -> Interval {
        Interval::new(a, b)
    }

    #[test]
    fn closed_form_hom_matches_brute_force() {
        for alg in [Algebra::uniform(5, 4).unwrap(), Algebra::hereditary(4), Algebra::uniform(6, 3).unwrap()] {
            let inds = alg.indecomposables();
            for x in &inds {
                for y in &inds {
                    let brute = Rep::<Q>::of_list(alg.n(), &[*x]).hom_basis(&Rep::of_list(alg.n(), &[*y])).len();
                    assert_eq!(brute, x.hom_nonzero(y) as usize, "{x} -> {y}");
                }
            }
        }
    }

    #[test]
    fn projective_covers() {
        let cat = ex43();
        let (p, _) = cat.projective_cover(&Obj::single(iv(5, 5)));
        assert_eq!(p, Obj::single(iv(2, 5)));
        let (p, _) = cat.projective_cover(&Obj::single(iv(2, 2)));
        assert_eq!(p, Obj::single(iv(1, 2)));
        let (p, epi) = cat.projective_cover(&Obj::single(iv(1, 3)));
        assert_eq!(p, Obj::single(iv(1, 3)));
        assert_eq!(epi.coef, Mat::identity(1));
        for x in cat.indecomposables() {
            let pres = cat.presentation(&[*x]);
            let e = pres.epi.realize(5);
            assert!(e.is_surjective());
            assert!(pres.inclusion.realize(5).is_injective());
        }
    }

    #[test]
    fn syzygies() {
        let cat = ex43();
        assert_eq!(cat.syzygy(&Obj::single(iv(2, 2))).unwrap(), Obj::single(iv(1, 1)));
        assert!(cat.syzygy(&Obj::single(iv(2, 5))).unwrap().is_zero());
        assert_eq!(cat.syzygy(&Obj::single(iv(4, 5))).unwrap(), Obj::single(iv(2, 3)));
        // closed form agrees with the representation kernel
        for x in cat.indecomposables() {
            let closed: Obj = cat.presentation(&[*x]).omega.into_iter().collect();
            assert_eq!(cat.syzygy(&Obj::single(*x)).unwrap(), closed);
        }
    }

    #[test]
    fn ext_examples() {
        let cat = ex43();
        assert_eq!(cat.ext_space(&[iv(2, 2)], &[iv(1, 1)]).dim(), 1);
        assert_eq!(cat.ext_space(&[iv(1, 3)], &[iv(1, 1)]).dim(), 0);
        for p in cat.projectives() {
            for y in cat.indecomposables() {
                assert_eq!(cat.ext_space(&[p], &[*y]).dim(), 0);
            }
        }
    }

    #[test]
    fn extension_middles() {
        let cat = ex43();
        let e = cat.ext_space(&[iv(2, 2)], &[iv(1, 1)]);
        let c = cat.extension_middle(&[iv(2, 2)], &[iv(1, 1)], &e.class(&[Q::one()])).unwrap();
        assert_eq!(c.middle, Obj::single(iv(1, 2)));
        c.verify(cat.algebra()).unwrap();
        let split = cat.extension_middle(&[iv(2, 2)], &[iv(1, 1)], &e.class(&[Q::zero()])).unwrap();
        assert_eq!(split.middle, [iv(2, 2), iv(1, 1)].into_iter().collect());
        split.verify(cat.algebra()).unwrap();

        let h = ModCat::new(Algebra::hereditary(3));
        let e = h.ext_space(&[iv(2, 3)], &[iv(1, 2)]);
        assert_eq!(e.dim(), 1);
        let c = h.extension_middle(&[iv(2, 3)], &[iv(1, 2)], &e.class(&[Q::one()])).unwrap();
        assert_eq!(c.middle, [iv(1, 3), iv(2, 2)].into_iter().collect());
        c.verify(h.algebra()).unwrap();
    }

    #[test]
    fn extension_rejects_foreign_class() {
        let cat = ex43();
        let bogus = Morph::zero(vec![iv(1, 2)], vec![iv(1, 1)]);
        assert!(matches!(cat.extension_middle(&[iv(2, 2)], &[iv(1, 1)], &bogus), Err(Error::Input(_))));
    }

    #[test]
    fn approximations() {
        let cat = ex43();
        let s2 = Obj::single(iv(2, 2));
        let (t, _) = cat.left_approximation(&s2, &[iv(1, 1), iv(1, 2)]);
        assert!(t.is_zero());
        let x = Obj::single(iv(2, 3));
        let (t, f) = cat.minimal_left_approximation(&x, &[iv(2, 3), iv(3, 3)]);
        assert_eq!(t, x);
        assert!(f.realize(5).is_injective());
    }

    #[test]
    fn injective_envelopes() {
        let cat = ex43();
        assert!(cat.injectives().contains(&iv(1, 4)));
        let h = ModCat::new(Algebra::hereditary(4));
        for inj in h.injectives() {
            for x in h.indecomposables() {
                assert_eq!(h.ext_dim(h.index_of(x).unwrap(), h.index_of(&inj).unwrap()), 0);
            }
        }
    }

    #[test]
    fn euler_form_hereditary() {
        let h = ModCat::new(Algebra::hereditary(4));
        for (i, x) in h.indecomposables().iter().enumerate() {
            for (j, y) in h.indecomposables().iter().enumerate() {
                let (dx, dy) = (Obj::single(*x).dim_vector(4), Obj::single(*y).dim_vector(4));
                // <x,y> = sum_v x_v y_v - sum_{arrows v+1 -> v} x_{v+1} y_v
                let mut euler: i64 = (0..4).map(|v| (dx[v] * dy[v]) as i64).sum();
                euler -= (0..3).map(|v| (dx[v + 1] * dy[v]) as i64).sum::<i64>();
                assert_eq!(h.hom_dim(i, j) as i64 - h.ext_dim(i, j) as i64, euler, "{x} {y}");
            }
        }
    }
}
