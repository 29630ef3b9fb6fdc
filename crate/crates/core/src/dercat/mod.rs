//! A finite shift window of `D^b(mod k A_n)`.
//!
//! Indecomposables are shifted interval modules `M[d]`, written `"[a,b]@d"`.
//! `Hom(M[i], N[j])` is `Hom(M, N)` for `j = i`, `Ext^1(M, N)` for
//! `j = i + 1` and zero otherwise. Composition constants and cones are
//! computed on projective resolutions, never from closed forms.

pub mod complex;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactfield::{Field, Q};
use crate::modcat::{Algebra, Interval, ModCat};
use crate::pairs::LinCat;
pub use complex::{cocone, compose, CMap, Cx, HomK};

/// `M[d]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SInt {
    pub iv: Interval,
    pub d: i64,
}

impl SInt {
    pub fn new(iv: Interval, d: i64) -> Self {
        SInt { iv, d }
    }

    pub fn shift(self, k: i64) -> Self {
        SInt { iv: self.iv, d: self.d + k }
    }
}

impl Ord for SInt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.d, self.iv).cmp(&(other.d, other.iv))
    }
}

impl PartialOrd for SInt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.iv, self.d)
    }
}

impl fmt::Debug for SInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (iv, d) = s.trim().split_once('@').ok_or_else(|| Error::Input(format!("malformed object {s:?}; expected \"[a,b]@d\"")))?;
        let d = d.trim().parse().map_err(|_| Error::Input(format!("malformed degree in {s:?}")))?;
        Ok(SInt { iv: iv.parse()?, d })
    }
}

impl Serialize for SInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Outer window `[d_min, d_max]` of computed degrees and the inner trust
/// window `[t_min, t_max]` where verdicts are asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub d_min: i64,
    pub d_max: i64,
    pub t_min: i64,
    pub t_max: i64,
}

impl Window {
    pub fn new(t_min: i64, t_max: i64, margin: i64) -> Result<Self> {
        if t_min > t_max || margin < 1 {
            return Err(Error::Input(format!("bad window [{t_min}, {t_max}] with margin {margin}")));
        }
        Ok(Window { d_min: t_min - margin, d_max: t_max + margin, t_min, t_max })
    }

    pub fn contains(&self, d: i64) -> bool {
        (self.d_min..=self.d_max).contains(&d)
    }

    pub fn trusts(&self, d: i64) -> bool {
        (self.t_min..=self.t_max).contains(&d)
    }
}

/// Outcome of a search that may run into the window boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tri<T> {
    Found(T),
    Absent,
    Inconclusive(String),
}

impl<T> Tri<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Tri::Found(t) => Some(t),
            _ => None,
        }
    }

    /// `Some(true)` / `Some(false)` when decided.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            Tri::Found(_) => Some(true),
            Tri::Absent => Some(false),
            Tri::Inconclusive(_) => None,
        }
    }
}

/// A summand-closed class of indecomposables, possibly only partially
/// known: `None` means undecided.
type Pred = Arc<dyn Fn(&SInt) -> Option<bool> + Send + Sync>;

#[derive(Clone)]
pub struct Class {
    pred: Pred,
}

impl fmt::Debug for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Class")
    }
}

impl Class {
    pub fn new(f: impl Fn(&SInt) -> Option<bool> + Send + Sync + 'static) -> Self {
        Class { pred: Arc::new(f) }
    }

    pub fn exact(f: impl Fn(&SInt) -> bool + Send + Sync + 'static) -> Self {
        Class::new(move |s| Some(f(s)))
    }

    pub fn empty() -> Self {
        Class::exact(|_| false)
    }

    pub fn contains(&self, s: &SInt) -> Option<bool> {
        (self.pred)(s)
    }

    /// `X[k]`: `s` belongs iff `s[-k]` belongs to `X`.
    pub fn shifted(&self, k: i64) -> Class {
        let p = self.pred.clone();
        Class::new(move |s| p(&s.shift(-k)))
    }

    pub fn union(&self, other: &Class) -> Class {
        let (a, b) = (self.pred.clone(), other.pred.clone());
        Class::new(move |s| match (a(s), b(s)) {
            (Some(true), _) | (_, Some(true)) => Some(true),
            (Some(false), Some(false)) => Some(false),
            _ => None,
        })
    }

    pub fn intersection(&self, other: &Class) -> Class {
        let (a, b) = (self.pred.clone(), other.pred.clone());
        Class::new(move |s| match (a(s), b(s)) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        })
    }

    pub fn minus(&self, other: &Class) -> Class {
        let (a, b) = (self.pred.clone(), other.pred.clone());
        Class::new(move |s| match (a(s), b(s)) {
            (Some(false), _) | (_, Some(true)) => Some(false),
            (Some(true), Some(false)) => Some(true),
            _ => None,
        })
    }
}

/// A triangle `X -> t -> Y -> X[1]` built from the all-ones map `t -> Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriWitness {
    pub object: SInt,
    pub x: Vec<SInt>,
    pub y: Vec<SInt>,
}

/// Closed-form `dim Hom(x, y)` in `D^b(k A_n)`: `Hom` in equal degrees,
/// `Ext^1(M, N) = D Hom(N, τM)` one degree up, with `τ[a,b] = [a-1,b-1]`.
pub fn hom_dim_closed(n: usize, x: &SInt, y: &SInt) -> usize {
    let (m, k) = (x.iv, y.iv);
    if m.b > n || k.b > n {
        return 0;
    }
    match y.d - x.d {
        0 => usize::from(m.hom_nonzero(&k)),
        1 => usize::from(m.a > 1 && k.hom_nonzero(&Interval::new(m.a - 1, m.b - 1))),
        _ => 0,
    }
}

/// A triangle `X -> t -> Y -> X[1]` on complexes: `e: t -> Y`, `p: X -> t`.
#[derive(Clone, Debug)]
pub struct Realised {
    pub x: Cx,
    pub y: Cx,
    pub e: CMap,
    pub p: CMap,
}

/// Whether a chain map `a -> b` can be nonzero in `K`, up to one degree.
fn overlaps(a: &Cx, b: &Cx) -> bool {
    !a.is_zero() && !b.is_zero() && a.lo <= b.hi() + 1 && b.lo <= a.hi() + 1
}

type CoconeKey = (usize, Vec<usize>);

pub struct DerCat {
    cat: ModCat,
    window: Window,
    objs: Vec<SInt>,
    index: HashMap<SInt, usize>,
    cxs: Vec<Cx>,
    basis: Mutex<HashMap<(usize, usize), Option<CMap>>>,
    comp: Mutex<HashMap<(usize, usize, usize), Q>>,
    cocones: Mutex<HashMap<CoconeKey, std::result::Result<Vec<SInt>, String>>>,
}

impl fmt::Debug for DerCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DerCat(n = {}, {:?})", self.cat.n(), self.window)
    }
}

impl DerCat {
    pub fn new(n: usize, window: Window) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("n must be positive".into()));
        }
        let cat = ModCat::new(Algebra::hereditary(n));
        let mut objs = Vec::new();
        for d in window.d_min..=window.d_max {
            for iv in cat.indecomposables() {
                objs.push(SInt::new(*iv, d));
            }
        }
        let index = objs.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let cxs = objs.iter().map(|s| Cx::resolution(&cat, s.iv, s.d)).collect();
        Ok(DerCat {
            cat,
            window,
            objs,
            index,
            cxs,
            basis: Mutex::new(HashMap::new()),
            comp: Mutex::new(HashMap::new()),
            cocones: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.cat.n()
    }

    pub fn cat(&self) -> &ModCat {
        &self.cat
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn len(&self) -> usize {
        self.objs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objs.is_empty()
    }

    pub fn objs(&self) -> &[SInt] {
        &self.objs
    }

    pub fn obj(&self, i: usize) -> SInt {
        self.objs[i]
    }

    pub fn index_of(&self, s: &SInt) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Indices of the objects in the trust window.
    pub fn trusted(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.window.trusts(self.objs[i].d)).collect()
    }

    pub fn shift(&self, s: SInt, k: i64) -> Result<SInt> {
        let t = s.shift(k);
        if self.window.contains(t.d) {
            Ok(t)
        } else {
            Err(Error::Window(format!("{t} leaves the window")))
        }
    }

    /// Closed-form `dim Hom(x, y)`.
    pub fn hom_dim_closed(&self, x: &SInt, y: &SInt) -> usize {
        hom_dim_closed(self.n(), x, y)
    }

    pub fn hom(&self, i: usize, j: usize) -> bool {
        self.hom_dim_closed(&self.objs[i], &self.objs[j]) > 0
    }

    pub fn cx(&self, i: usize) -> &Cx {
        &self.cxs[i]
    }

    pub fn homk(&self, i: usize, j: usize) -> HomK {
        HomK::new(&self.cxs[i], &self.cxs[j])
    }

    /// The chosen basis chain map of `Hom(i, j)`, if nonzero.
    pub fn basis_map(&self, i: usize, j: usize) -> Option<CMap> {
        if !self.hom(i, j) {
            return None;
        }
        if let Some(m) = self.basis.lock().expect("lock").get(&(i, j)) {
            return m.clone();
        }
        let h = self.homk(i, j);
        let m = (h.dim() > 0).then(|| h.basis_map(0));
        self.basis.lock().expect("lock").insert((i, j), m.clone());
        m
    }

    /// `basis(y,z) ∘ basis(x,y) = c · basis(x,z)`.
    pub fn c(&self, x: usize, y: usize, z: usize) -> Q {
        if !(self.hom(x, y) && self.hom(y, z) && self.hom(x, z)) {
            return Q::zero();
        }
        if let Some(c) = self.comp.lock().expect("lock").get(&(x, y, z)) {
            return c.clone();
        }
        let (f, g) = (self.basis_map(x, y).expect("hom"), self.basis_map(y, z).expect("hom"));
        let h = self.homk(x, z);
        let coords = h.coords(&compose(&f, &g));
        let c = coords.first().cloned().unwrap_or_else(Q::zero);
        self.comp.lock().expect("lock").insert((x, y, z), c.clone());
        c
    }

    pub fn label(&self, i: usize) -> String {
        self.objs[i].to_string()
    }

    /// The full subcategory on `keep` (relabelled `0..keep.len()`).
    pub fn lincat(&self, keep: &[usize]) -> LinCat {
        let labels = keep.iter().map(|&i| self.label(i)).collect();
        let hom = keep.iter().map(|&x| keep.iter().map(|&y| self.hom(x, y)).collect()).collect();
        LinCat::new(labels, hom, |a, b, c| self.c(keep[a], keep[b], keep[c]))
    }

    /// Whether `basis(x, y)` factors through some object of `w`.
    pub fn factors_through(&self, x: usize, y: usize, w: &[usize]) -> bool {
        self.hom(x, y) && w.iter().any(|&m| self.hom(x, m) && self.hom(m, y) && !self.c(x, m, y).is_zero())
    }

    /// `keep` modulo maps factoring through `w`.
    pub fn quotient(&self, w: &[usize], keep: &[usize]) -> LinCat {
        let labels = keep.iter().map(|&i| self.label(i)).collect();
        let hom: Vec<Vec<bool>> =
            keep.iter().map(|&x| keep.iter().map(|&y| self.hom(x, y) && !self.factors_through(x, y, w)).collect()).collect();
        let h2 = hom.clone();
        LinCat::new(labels, hom, move |a, b, c| if h2[a][b] && h2[b][c] { self.c(keep[a], keep[b], keep[c]) } else { Q::zero() })
    }

    /// The all-ones map `t -> ⊕ ys` from basis maps.
    pub fn all_ones(&self, t: usize, ys: &[usize]) -> CMap {
        let parts: Vec<Cx> = ys.iter().map(|&y| self.cxs[y].clone()).collect();
        let comps: Vec<CMap> = ys.iter().map(|&y| self.basis_map(t, y).unwrap_or_default()).collect();
        complex::into_sum(&self.cxs[t], &parts, &comps)
    }

    /// Indecomposable summands of a complex, by cohomology.
    pub fn summands(&self, c: &Cx) -> Result<Vec<SInt>> {
        let mut out = Vec::new();
        for (k, obj) in c.homology(&self.cat)? {
            for iv in obj.expand() {
                out.push(SInt::new(iv, -k));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Cocone of the all-ones map `t -> ⊕ ys`, as sorted summands; a window
    /// error when a summand leaves the window.
    pub fn cocone_summands(&self, t: usize, ys: &[usize]) -> Result<Vec<SInt>> {
        let key = (t, ys.to_vec());
        if let Some(r) = self.cocones.lock().expect("lock").get(&key) {
            return r.clone().map_err(Error::Window);
        }
        let parts: Vec<Cx> = ys.iter().map(|&y| self.cxs[y].clone()).collect();
        let e = self.all_ones(t, ys);
        let (cx, _) = cocone(&self.cxs[t], &Cx::sum(&parts), &e);
        let s = self.summands(&cx)?;
        let r = match s.iter().find(|x| !self.window.contains(x.d)) {
            Some(x) => Err(format!("cocone summand {x} leaves the window")),
            None => Ok(s),
        };
        self.cocones.lock().expect("lock").insert(key, r.clone());
        r.map_err(Error::Window)
    }

    /// The triangle `X -> t -> Y -> X[1]` of the all-ones map on complexes.
    pub fn realise(&self, t: usize, ys: &[usize]) -> Realised {
        let parts: Vec<Cx> = ys.iter().map(|&y| self.cxs[y].clone()).collect();
        let y = Cx::sum(&parts);
        let e = self.all_ones(t, ys);
        let (x, p) = cocone(&self.cxs[t], &y, &e);
        Realised { x, y, e, p }
    }

    /// Coordinates in `h` of the maps that factor through objects of `w`.
    pub fn ideal(&self, h: &HomK, w: &[usize]) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        if h.dim() == 0 {
            return out;
        }
        for &m in w {
            let cm = &self.cxs[m];
            if !overlaps(&h.src, cm) || !overlaps(cm, &h.tgt) {
                continue;
            }
            let h1 = HomK::new(&h.src, cm);
            if h1.dim() == 0 {
                continue;
            }
            let h2 = HomK::new(cm, &h.tgt);
            for i in 0..h1.dim() {
                let f = h1.basis_map(i);
                for j in 0..h2.dim() {
                    out.push(h.coords(&compose(&f, &h2.basis_map(j))));
                }
            }
        }
        out
    }

    /// Whether `m: a -> b` induces bijections `Hom(y, a) -> Hom(y, b)`
    /// modulo maps through `w`, for every test object `y`.
    pub fn coreflects(&self, a: &Cx, b: &Cx, m: &CMap, tests: &[usize], w: &[usize]) -> bool {
        tests.iter().all(|&y| {
            let cy = &self.cxs[y];
            let (ha, hb) = (HomK::new(cy, a), HomK::new(cy, b));
            let mut image: Vec<Vec<Q>> = (0..ha.dim()).map(|i| hb.coords(&compose(&ha.basis_map(i), m))).collect();
            let (ia, ib) = (self.ideal(&ha, w), self.ideal(&hb, w));
            image.extend(ib.iter().cloned());
            complex::rank(&image) == hb.dim() && ha.dim() - complex::rank(&ia) == hb.dim() - complex::rank(&ib)
        })
    }

    /// Whether `m: a -> b` induces bijections `Hom(b, z) -> Hom(a, z)`
    /// modulo maps through `w`, for every test object `z`.
    pub fn reflects(&self, a: &Cx, b: &Cx, m: &CMap, tests: &[usize], w: &[usize]) -> bool {
        tests.iter().all(|&z| {
            let cz = &self.cxs[z];
            let (ha, hb) = (HomK::new(a, cz), HomK::new(b, cz));
            let mut image: Vec<Vec<Q>> = (0..hb.dim()).map(|i| ha.coords(&compose(m, &hb.basis_map(i)))).collect();
            let (ia, ib) = (self.ideal(&ha, w), self.ideal(&hb, w));
            image.extend(ia.iter().cloned());
            complex::rank(&image) == ha.dim() && hb.dim() - complex::rank(&ib) == ha.dim() - complex::rank(&ia)
        })
    }

    /// Objects whose resolution shares a degree with `c`, widened by one.
    pub fn near(&self, c: &Cx) -> Vec<usize> {
        if c.is_zero() {
            return Vec::new();
        }
        (0..self.len()).filter(|&i| overlaps(&self.cxs[i], c) || overlaps(c, &self.cxs[i])).collect()
    }

    /// Searches a triangle `X -> t -> Y -> X[1]` with `X ∈ add(x)`,
    /// `Y ∈ add(y)`, `Y` a sum of distinct indecomposables, built from the
    /// all-ones map; candidates are tried in (size, lexicographic) order, or
    /// reversed with `last`. `accept` may reject a candidate.
    pub fn triangle_exists(
        &self,
        t: usize,
        x: &Class,
        y: &Class,
        last: bool,
        accept: &dyn Fn(&TriWitness) -> Option<bool>,
    ) -> Result<Tri<TriWitness>> {
        let ts = self.objs[t];
        let mut unknown: Option<String> = None;
        if !self.window.contains(ts.d + 1) {
            unknown = Some(format!("targets of {ts} leave the window"));
        }
        let mut cands = Vec::new();
        for j in 0..self.len() {
            if !self.hom(t, j) {
                continue;
            }
            match y.contains(&self.objs[j]) {
                Some(true) => cands.push(j),
                Some(false) => {}
                None => unknown = Some(format!("membership of {} undecided", self.objs[j])),
            }
        }
        if cands.len() > 16 {
            return Err(Error::Unsupported(format!("{} candidate targets for {ts}", cands.len())));
        }
        let mut order: Vec<usize> = (0..1usize << cands.len()).collect();
        order.sort_by_key(|&m| (m.count_ones(), m.reverse_bits()));
        if last {
            order.reverse();
        }
        for mask in order {
            let ys: Vec<usize> = (0..cands.len()).filter(|i| mask >> i & 1 == 1).map(|i| cands[i]).collect();
            let xs = match self.cocone_summands(t, &ys) {
                Ok(xs) => xs,
                Err(Error::Window(m)) => {
                    unknown = Some(m);
                    continue;
                }
                Err(e) => return Err(e),
            };
            let mut ok = Some(true);
            for s in &xs {
                match x.contains(s) {
                    Some(true) => {}
                    Some(false) => {
                        ok = Some(false);
                        break;
                    }
                    None => ok = None,
                }
            }
            let w = TriWitness { object: ts, x: xs, y: ys.iter().map(|&j| self.objs[j]).collect() };
            match ok {
                Some(true) => match accept(&w) {
                    Some(true) => return Ok(Tri::Found(w)),
                    Some(false) => {}
                    None => unknown = Some(format!("universal property of a triangle on {ts} undecided")),
                },
                Some(false) => {}
                None => unknown = Some(format!("cocone of {ts} has a summand of undecided class")),
            }
        }
        Ok(match unknown {
            Some(m) => Tri::Inconclusive(m),
            None => Tri::Absent,
        })
    }

    /// Rebuilds the cocone of a witness and checks the claimed `X`.
    pub fn recheck_triangle(&self, w: &TriWitness) -> Result<()> {
        let t = self.index_of(&w.object).ok_or_else(|| Error::Window(format!("{} outside the window", w.object)))?;
        let ys = w
            .y
            .iter()
            .map(|s| self.index_of(s).filter(|&j| self.hom(t, j)).ok_or_else(|| Error::Verification(format!("no map {} -> {s}", w.object))))
            .collect::<Result<Vec<_>>>()?;
        let xs = self.cocone_summands(t, &ys)?;
        if xs != w.x {
            return Err(Error::Verification(format!("cocone on {} is {xs:?}, not {:?}", w.object, w.x)));
        }
        Ok(())
    }

    /// Existence verdict with each candidate allowed `factor` copies and
    /// components ranging over `{0, 1}`.
    pub fn triangle_audit(&self, t: usize, x: &Class, y: &Class, factor: usize) -> Result<Tri<()>> {
        let cands: Vec<usize> = (0..self.len()).filter(|&j| self.hom(t, j) && y.contains(&self.objs[j]) == Some(true)).collect();
        let mut mults = vec![0usize; cands.len()];
        let mut unknown = None;
        loop {
            let ys: Vec<usize> = cands.iter().zip(&mults).flat_map(|(&c, &m)| std::iter::repeat_n(c, m)).collect();
            if ys.len() > 12 {
                return Err(Error::Unsupported("audit too large".into()));
            }
            for pattern in 0..1usize << ys.len() {
                let chosen: Vec<usize> = (0..ys.len()).filter(|i| pattern >> i & 1 == 1).collect();
                let parts: Vec<Cx> = ys.iter().map(|&y| self.cxs[y].clone()).collect();
                let comps: Vec<CMap> = ys
                    .iter()
                    .enumerate()
                    .map(|(i, &y)| if chosen.contains(&i) { self.basis_map(t, y).unwrap_or_default() } else { CMap::new() })
                    .collect();
                let e = complex::into_sum(&self.cxs[t], &parts, &comps);
                let (cx, _) = cocone(&self.cxs[t], &Cx::sum(&parts), &e);
                let xs = self.summands(&cx)?;
                match xs.iter().map(|s| if self.window.contains(s.d) { x.contains(s) } else { None }).try_fold(true, |acc, m| m.map(|b| acc && b)) {
                    Some(true) => return Ok(Tri::Found(())),
                    Some(false) => {}
                    None => unknown = Some(format!("audit on {} undecided", self.objs[t])),
                }
            }
            let mut i = 0;
            loop {
                if i == mults.len() {
                    return Ok(match unknown {
                        Some(m) => Tri::Inconclusive(m),
                        None => Tri::Absent,
                    });
                }
                if mults[i] < factor {
                    mults[i] += 1;
                    break;
                }
                mults[i] = 0;
                i += 1;
            }
        }
    }
}
