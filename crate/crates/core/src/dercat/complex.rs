//! Bounded complexes of projective `k A_n`-modules and chain maps between
//! them. Hom in the homotopy category is computed as cycles modulo
//! boundaries by exact linear algebra.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exactfield::{Field, Mat, Q};
use crate::modcat::morph::{from_coords, hom_coords, hom_positions};
use crate::modcat::{Interval, ModCat, Morph, Obj, Rep, RepMor};

/// Terms `terms[k]` in cohomological degree `lo + k`, differentials
/// `diffs[k]: terms[k] -> terms[k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cx {
    pub lo: i64,
    pub terms: Vec<Vec<Interval>>,
    pub diffs: Vec<Morph>,
}

/// A chain map, by degree; missing degrees are zero.
pub type CMap = BTreeMap<i64, Morph>;

impl Cx {
    pub fn zero() -> Self {
        Cx { lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(Vec::is_empty)
    }

    pub fn term(&self, k: i64) -> &[Interval] {
        if k < self.lo || k > self.hi() {
            &[]
        } else {
            &self.terms[(k - self.lo) as usize]
        }
    }

    pub fn diff(&self, k: i64) -> Morph {
        if k >= self.lo && k < self.hi() {
            self.diffs[(k - self.lo) as usize].clone()
        } else {
            Morph::zero(self.term(k).to_vec(), self.term(k + 1).to_vec())
        }
    }

    /// The minimal projective resolution of `m`, placed so that its only
    /// cohomology is `m` in degree `-shift`.
    pub fn resolution(cat: &ModCat, m: Interval, shift: i64) -> Self {
        let pres = cat.presentation(&[m]);
        if pres.omega.is_empty() {
            Cx { lo: -shift, terms: vec![pres.cover], diffs: Vec::new() }
        } else {
            Cx { lo: -shift - 1, terms: vec![pres.omega, pres.cover], diffs: vec![pres.inclusion] }
        }
    }

    /// Degrees from `lo` to `hi` with explicit (possibly empty) terms.
    pub fn spread(&self, lo: i64, hi: i64) -> Cx {
        let terms = (lo..=hi).map(|k| self.term(k).to_vec()).collect();
        let diffs = (lo..hi).map(|k| self.diff(k)).collect();
        Cx { lo, terms, diffs }
    }

    /// Direct sum; summands keep their order.
    pub fn sum(parts: &[Cx]) -> Cx {
        let live: Vec<&Cx> = parts.iter().filter(|c| !c.terms.is_empty()).collect();
        if live.is_empty() {
            return Cx::zero();
        }
        let lo = live.iter().map(|c| c.lo).min().expect("nonempty");
        let hi = live.iter().map(|c| c.hi()).max().expect("nonempty");
        let terms: Vec<Vec<Interval>> = (lo..=hi).map(|k| live.iter().flat_map(|c| c.term(k).to_vec()).collect()).collect();
        let diffs = (lo..hi)
            .map(|k| {
                let mut m = Morph::zero(terms[(k - lo) as usize].clone(), terms[(k - lo + 1) as usize].clone());
                let (mut r, mut c) = (0, 0);
                for p in &live {
                    let d = p.diff(k);
                    m.coef.set_block(r, c, &d.coef);
                    r += d.tgt.len();
                    c += d.src.len();
                }
                m
            })
            .collect();
        Cx { lo, terms, diffs }
    }

    /// `H^k` for every degree, decomposed into intervals.
    pub fn homology(&self, cat: &ModCat) -> Result<Vec<(i64, Obj)>> {
        let n = cat.n();
        let mut out = Vec::new();
        for k in self.lo..=self.hi() {
            let here = cat.rep(self.term(k));
            let into = self.diff(k - 1).realize(n);
            let (q, _, section) = here.cokernel(&into);
            let out_map = self.diff(k).realize(n);
            let induced = RepMor { maps: out_map.maps.iter().zip(&section).map(|(d, s)| d.mul(s)).collect() };
            let (h, _) = q.kernel(&induced);
            let obj = h.decompose(cat.algebra())?;
            if !obj.is_zero() {
                out.push((k, obj));
            }
        }
        Ok(out)
    }
}

pub fn cmap_at(f: &CMap, k: i64, src: &Cx, tgt: &Cx) -> Morph {
    f.get(&k).cloned().unwrap_or_else(|| Morph::zero(src.term(k).to_vec(), tgt.term(k).to_vec()))
}

/// `g ∘ f`.
pub fn compose(f: &CMap, g: &CMap) -> CMap {
    f.iter().filter_map(|(k, fk)| g.get(k).map(|gk| (*k, fk.then(gk)))).collect()
}

pub fn scale(f: &CMap, s: &Q) -> CMap {
    f.iter().map(|(k, m)| (*k, m.scale(s))).collect()
}

/// `Hom_K(src, tgt)` with a chosen basis of cycles modulo boundaries.
#[derive(Clone, Debug)]
pub struct HomK {
    pub src: Cx,
    pub tgt: Cx,
    layout: Vec<(i64, usize, usize)>,
    pub basis: Vec<Vec<Q>>,
    boundaries: Vec<Vec<Q>>,
    boundary_rank: usize,
}

pub(crate) fn rank(vecs: &[Vec<Q>]) -> usize {
    if vecs.is_empty() || vecs[0].is_empty() {
        0
    } else {
        Mat::from_rows(vecs.to_vec()).rank()
    }
}

impl HomK {
    pub fn new(src: &Cx, tgt: &Cx) -> Self {
        let mut layout = Vec::new();
        let mut total = 0;
        if !src.terms.is_empty() && !tgt.terms.is_empty() {
            for k in src.lo.max(tgt.lo)..=src.hi().min(tgt.hi()) {
                let len = hom_positions(src.term(k), tgt.term(k)).len();
                if len > 0 {
                    layout.push((k, total, len));
                    total += len;
                }
            }
        }
        let unit = |i: usize| {
            let mut v = vec![Q::zero(); total];
            v[i] = Q::one();
            v
        };
        let mut h = HomK { src: src.clone(), tgt: tgt.clone(), layout, basis: Vec::new(), boundaries: Vec::new(), boundary_rank: 0 };
        if total == 0 {
            return h;
        }
        // cycles: d f - f d = 0 in every degree
        let cols: Vec<Vec<Q>> = (0..total).map(|i| h.cycle_defect(&h.from_vec(&unit(i)))).collect();
        let cycles = if cols[0].is_empty() { (0..total).map(unit).collect() } else { Mat::from_cols(cols[0].len(), &cols).kernel_basis() };
        // boundaries: d h + h d for homotopies h: src^k -> tgt^{k-1}
        let mut boundaries = Vec::new();
        if !src.terms.is_empty() && !tgt.terms.is_empty() {
            for k in src.lo..=src.hi() {
                let (s, t) = (src.term(k), tgt.term(k - 1));
                let pos = hom_positions(s, t);
                for i in 0..pos.len() {
                    let mut c = vec![Q::zero(); pos.len()];
                    c[i] = Q::one();
                    let hk = from_coords(s, t, &c);
                    let mut f = CMap::new();
                    // degree k: d_tgt^{k-1} h^k ; degree k-1: h^k d_src^{k-1}
                    f.insert(k, hk.then(&tgt.diff(k - 1)));
                    f.insert(k - 1, src.diff(k - 1).then(&hk));
                    boundaries.push(h.to_vec(&f));
                }
            }
        }
        let boundary_rank = rank(&boundaries);
        let mut basis: Vec<Vec<Q>> = Vec::new();
        let mut span = boundaries.clone();
        let mut r = boundary_rank;
        for z in cycles {
            span.push(z.clone());
            let r2 = rank(&span);
            if r2 > r {
                basis.push(z);
                r = r2;
            } else {
                span.pop();
            }
        }
        h.basis = basis;
        h.boundaries = boundaries;
        h.boundary_rank = boundary_rank;
        h
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn total(&self) -> usize {
        self.layout.last().map_or(0, |&(_, o, l)| o + l)
    }

    pub fn to_vec(&self, f: &CMap) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.total()];
        for &(k, off, len) in &self.layout {
            if let Some(m) = f.get(&k) {
                let c = hom_coords(m);
                debug_assert_eq!(c.len(), len);
                for (i, x) in c.into_iter().enumerate() {
                    v[off + i] = x;
                }
            }
        }
        v
    }

    pub fn from_vec(&self, v: &[Q]) -> CMap {
        let mut f = CMap::new();
        for &(k, off, len) in &self.layout {
            f.insert(k, from_coords(self.src.term(k), self.tgt.term(k), &v[off..off + len]));
        }
        f
    }

    pub fn basis_map(&self, i: usize) -> CMap {
        self.from_vec(&self.basis[i])
    }

    fn cycle_defect(&self, f: &CMap) -> Vec<Q> {
        let mut out = Vec::new();
        if self.src.terms.is_empty() || self.tgt.terms.is_empty() {
            return out;
        }
        for k in self.src.lo.min(self.tgt.lo) - 1..=self.src.hi().max(self.tgt.hi()) {
            let (s, t) = (self.src.term(k), self.tgt.term(k + 1));
            if hom_positions(s, t).is_empty() {
                continue;
            }
            let a = cmap_at(f, k, &self.src, &self.tgt).then(&self.tgt.diff(k));
            let b = self.src.diff(k).then(&cmap_at(f, k + 1, &self.src, &self.tgt));
            out.extend(hom_coords(&a.add(&b.scale(&Q::from_i64(-1)))));
        }
        out
    }

    /// Whether `f` is a chain map.
    pub fn is_cycle(&self, f: &CMap) -> bool {
        self.cycle_defect(f).iter().all(Field::is_zero)
    }

    /// Dimension of the span of `maps` in `Hom_K`.
    pub fn span_dim(&self, maps: &[Vec<Q>]) -> usize {
        let mut all = self.boundaries.clone();
        all.extend(maps.iter().cloned());
        rank(&all) - self.boundary_rank
    }

    /// Coordinates of the cycle `f` in the chosen basis.
    pub fn coords(&self, f: &CMap) -> Vec<Q> {
        let v = self.to_vec(f);
        if self.basis.is_empty() {
            return Vec::new();
        }
        let mut cols = self.basis.clone();
        cols.extend(self.boundaries.iter().cloned());
        let m = Mat::from_cols(v.len(), &cols);
        let x = m.solve(&v).ok().flatten().expect("cycle lies in the span of basis and boundaries");
        x[..self.basis.len()].to_vec()
    }
}

/// Representation of a term, for callers that need module structure.
pub fn term_rep(cat: &ModCat, c: &Cx, k: i64) -> Rep<Q> {
    cat.rep(c.term(k))
}

/// Cocone of `e: src -> tgt` with its projection to `src`: terms
/// `src^k ⊕ tgt^{k-1}` and differential `[[d, 0], [e, -d]]`.
pub fn cocone(src: &Cx, tgt: &Cx, e: &CMap) -> (Cx, CMap) {
    if src.terms.is_empty() && tgt.terms.is_empty() {
        return (Cx::zero(), CMap::new());
    }
    let lo = if tgt.terms.is_empty() { src.lo } else if src.terms.is_empty() { tgt.lo + 1 } else { src.lo.min(tgt.lo + 1) };
    let hi = if tgt.terms.is_empty() { src.hi() } else if src.terms.is_empty() { tgt.hi() + 1 } else { src.hi().max(tgt.hi() + 1) };
    let term = |k: i64| -> Vec<Interval> { src.term(k).iter().chain(tgt.term(k - 1)).copied().collect() };
    let terms: Vec<Vec<Interval>> = (lo..=hi).map(term).collect();
    let minus = Q::from_i64(-1);
    let diffs = (lo..hi)
        .map(|k| {
            let (a, b) = (term(k), term(k + 1));
            let mut m = Morph::zero(a, b);
            let ds = src.diff(k);
            let dt = tgt.diff(k - 1).scale(&minus);
            let ek = cmap_at(e, k, src, tgt);
            let (s0, s1) = (src.term(k).len(), src.term(k + 1).len());
            m.coef.set_block(0, 0, &ds.coef);
            m.coef.set_block(s1, 0, &ek.coef);
            m.coef.set_block(s1, s0, &dt.coef);
            m
        })
        .collect();
    let cx = Cx { lo, terms, diffs };
    let mut p = CMap::new();
    for k in lo..=hi {
        let s = src.term(k);
        if s.is_empty() {
            continue;
        }
        let mut m = Morph::zero(cx.term(k).to_vec(), s.to_vec());
        m.coef.set_block(0, 0, &Mat::identity(s.len()));
        p.insert(k, m);
    }
    (cx, p)
}

/// Map `src -> ⊕ tgts` with the given components.
pub fn into_sum(src: &Cx, parts: &[Cx], comps: &[CMap]) -> CMap {
    let sum = Cx::sum(parts);
    let mut f = CMap::new();
    if src.terms.is_empty() || sum.terms.is_empty() {
        return f;
    }
    for k in src.lo..=src.hi() {
        let mut m = Morph::zero(src.term(k).to_vec(), sum.term(k).to_vec());
        let mut r = 0;
        for (p, c) in parts.iter().zip(comps) {
            if p.terms.is_empty() {
                continue;
            }
            let ck = cmap_at(c, k, src, p);
            m.coef.set_block(r, 0, &ck.coef);
            r += p.term(k).len();
        }
        f.insert(k, m);
    }
    f
}

/// Map `⊕ srcs -> tgt` with the given components.
pub fn out_of_sum(parts: &[Cx], tgt: &Cx, comps: &[CMap]) -> CMap {
    let sum = Cx::sum(parts);
    let mut f = CMap::new();
    if tgt.terms.is_empty() || sum.terms.is_empty() {
        return f;
    }
    for k in sum.lo..=sum.hi() {
        let mut m = Morph::zero(sum.term(k).to_vec(), tgt.term(k).to_vec());
        let mut c0 = 0;
        for (p, c) in parts.iter().zip(comps) {
            if p.terms.is_empty() {
                continue;
            }
            let ck = cmap_at(c, k, p, tgt);
            m.coef.set_block(0, c0, &ck.coef);
            c0 += p.term(k).len();
        }
        f.insert(k, m);
    }
    f
}
