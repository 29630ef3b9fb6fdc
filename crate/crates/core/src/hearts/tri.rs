//! Hearts of cotorsion pairs in a window of `D^b(k A_n)`.
//!
//! Conventions: `(U, V)` with `Hom(U, V[1]) = 0` and triangles
//! `V_T -> U_T -> T -> V_T[1]`, `U^T[-1] -> T -> V^T -> U^T`.
//! `T⁺ = {U_T ∈ W}`, `T⁻ = {V^T ∈ W}`. `H(t)` comes from a coreflection
//! `V -> t⁻ -> t -> V[1]` with `t⁻ ∈ T⁻` followed by reflections
//! `U[-1] -> x -> x⁺ -> U` with `x⁺ ∈ H ∪ W`.
//!
//! Classes are computed on the window minus one degree on each side;
//! everything outside is undecided and surfaces as a boundary caveat.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::exact::Options;
use super::{cover, lifts, projectives, sample_epis, CoverWitness};
use crate::dercat::{hom_dim_closed, Class, DerCat, SInt, Tri, TriWitness};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::funcat::{verify_equivalence, Equivalence, FinAlgebra, GammaSummary};

/// `{T : Hom(U, T[1]) = 0}`.
pub fn right_perp(dc: &DerCat, u: &Class) -> Class {
    let n = dc.n();
    perp(dc, u, move |s, t| hom_dim_closed(n, s, &t.shift(1)), [0, 1])
}

/// `{T : Hom(T, U) = 0}`.
pub fn left_hom_perp(dc: &DerCat, u: &Class) -> Class {
    let n = dc.n();
    perp(dc, u, move |s, t| hom_dim_closed(n, t, s), [0, 1])
}

/// `{T : Hom(V, T) = 0}`.
pub fn right_hom_perp(dc: &DerCat, v: &Class) -> Class {
    let n = dc.n();
    perp(dc, v, move |s, t| hom_dim_closed(n, s, t), [-1, 0])
}

/// Objects `t` with `hom(s, t) = 0` for every `s ∈ x` in degrees
/// `t.d + offsets`.
fn perp(dc: &DerCat, x: &Class, hom: impl Fn(&SInt, &SInt) -> usize + Send + Sync + 'static, offsets: [i64; 2]) -> Class {
    let ivs: Vec<_> = dc.cat().indecomposables().to_vec();
    let x = x.clone();
    Class::new(move |t| {
        let mut known = true;
        for off in offsets {
            for iv in &ivs {
                let s = SInt::new(*iv, t.d + off);
                if hom(&s, t) == 0 {
                    continue;
                }
                match x.contains(&s) {
                    Some(true) => return Some(false),
                    Some(false) => {}
                    None => known = false,
                }
            }
        }
        known.then_some(true)
    })
}

/// A class given by its members on a computed region, undecided elsewhere.
fn tabulated(dc: &DerCat, region: (i64, i64), members: &[usize]) -> Class {
    let set: BTreeSet<SInt> = members.iter().map(|&i| dc.obj(i)).collect();
    Class::new(move |s| (region.0..=region.1).contains(&s.d).then(|| set.contains(s)))
}

fn members(dc: &DerCat, c: &Class, region: (i64, i64)) -> Vec<usize> {
    (0..dc.len()).filter(|&i| (region.0..=region.1).contains(&dc.obj(i).d) && c.contains(&dc.obj(i)) == Some(true)).collect()
}

fn sints(dc: &DerCat, ids: impl IntoIterator<Item = usize>) -> Vec<SInt> {
    let mut v: Vec<SInt> = ids.into_iter().map(|i| dc.obj(i)).collect();
    v.sort();
    v.dedup();
    v
}

/// Defining triangles of a pair, checked on the trust window.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriPairCheck {
    pub ext_violation: Option<(SInt, SInt)>,
    pub left: Vec<TriWitness>,
    pub right: Vec<TriWitness>,
    pub missing: Vec<SInt>,
    pub boundary: Vec<String>,
}

impl TriPairCheck {
    pub fn ok(&self) -> bool {
        self.ext_violation.is_none() && self.missing.is_empty()
    }
}

/// `Hom(X, Y[1]) = 0` and triangles `Y -> X' -> t -> Y[1]`,
/// `X''[-1] -> t -> Y'' -> X''` for every trusted `t`.
pub fn check_pair(dc: &DerCat, x: &Class, y: &Class) -> Result<TriPairCheck> {
    let mut out = TriPairCheck::default();
    let trusted = dc.trusted();
    'ext: for &a in &trusted {
        if x.contains(&dc.obj(a)) != Some(true) {
            continue;
        }
        for &b in &trusted {
            if y.contains(&dc.obj(b)) == Some(true) && dc.hom_dim_closed(&dc.obj(a), &dc.obj(b).shift(1)) > 0 {
                out.ext_violation = Some((dc.obj(a), dc.obj(b)));
                break 'ext;
            }
        }
    }
    let yes = |_: &TriWitness| Some(true);
    let found = Exec::default().map(trusted.clone(), |t| -> Result<(Tri<TriWitness>, Tri<TriWitness>)> {
        Ok((dc.triangle_exists(t, x, &y.shifted(1), false, &yes)?, dc.triangle_exists(t, &x.shifted(-1), y, false, &yes)?))
    });
    for (t, r) in trusted.into_iter().zip(found) {
        let (l, rt) = r?;
        for (tri, side) in [(l, &mut out.left), (rt, &mut out.right)] {
            match tri {
                Tri::Found(w) => side.push(w),
                Tri::Absent => out.missing.push(dc.obj(t)),
                Tri::Inconclusive(m) => out.boundary.push(m),
            }
        }
    }
    out.missing.dedup();
    Ok(out)
}

/// Classes of a pair on the computed region.
pub struct TriHeartData {
    pub region: (i64, i64),
    pub u: Class,
    pub v: Class,
    pub w: Class,
    pub plus: Class,
    pub minus: Class,
    pub heart: Class,
    pub w_ids: Vec<usize>,
    pub plus_ids: Vec<usize>,
    pub minus_ids: Vec<usize>,
    pub heart_ids: Vec<usize>,
    pub boundary: Vec<String>,
}

impl TriHeartData {
    pub fn new(dc: &DerCat, u: &Class, v: &Class) -> Result<Self> {
        let win = dc.window();
        let region = (win.d_min + 1, win.d_max - 1);
        let w = u.intersection(v);
        let w_ids = members(dc, &w, (win.d_min, win.d_max));
        let ids: Vec<usize> = (0..dc.len()).filter(|&i| (region.0..=region.1).contains(&dc.obj(i).d)).collect();
        let yes = |_: &TriWitness| Some(true);
        let (vs, um) = (v.shifted(1), u.shifted(-1));
        let found = Exec::default().map(ids.clone(), |t| -> Result<(Tri<TriWitness>, Tri<TriWitness>)> {
            Ok((dc.triangle_exists(t, &w, &vs, false, &yes)?, dc.triangle_exists(t, &um, &w, false, &yes)?))
        });
        let (mut plus_ids, mut minus_ids, mut boundary) = (Vec::new(), Vec::new(), Vec::new());
        for (t, r) in ids.into_iter().zip(found) {
            let (p, m) = r?;
            for (tri, side) in [(p, &mut plus_ids), (m, &mut minus_ids)] {
                match tri {
                    Tri::Found(_) => side.push(t),
                    Tri::Absent => {}
                    Tri::Inconclusive(msg) => {
                        if dc.window().trusts(dc.obj(t).d) {
                            boundary.push(msg);
                        }
                    }
                }
            }
        }
        let plus = tabulated(dc, region, &plus_ids);
        let minus = tabulated(dc, region, &minus_ids);
        let heart = plus.intersection(&minus).minus(&w);
        let heart_ids = members(dc, &heart, region);
        Ok(TriHeartData {
            region,
            u: u.clone(),
            v: v.clone(),
            w,
            plus,
            minus,
            heart,
            w_ids,
            plus_ids,
            minus_ids,
            heart_ids,
            boundary,
        })
    }

    /// `H ∪ W`, the allowed targets of a reflection.
    pub fn heart_or_w(&self) -> Class {
        self.heart.union(&self.w)
    }
}

/// `H(t)` with its coreflection and reflection witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriHImage {
    pub object: SInt,
    pub image: Vec<SInt>,
    pub coreflection: TriWitness,
    pub reflections: Vec<TriWitness>,
}

/// Test objects near `cs` in class `c`; `None` if one is undecided.
fn tests_in(dc: &DerCat, c: &Class, near: &[usize]) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for &i in near {
        match c.contains(&dc.obj(i)) {
            Some(true) => out.push(i),
            Some(false) => {}
            None => return None,
        }
    }
    Some(out)
}

fn near_both(dc: &DerCat, a: &crate::dercat::Cx, b: &crate::dercat::Cx) -> Vec<usize> {
    let mut v = dc.near(a);
    v.extend(dc.near(b));
    v.sort();
    v.dedup();
    v
}

fn index(dc: &DerCat, s: &SInt) -> Result<usize> {
    dc.index_of(s).ok_or_else(|| Error::Window(format!("{s} leaves the window")))
}

/// `H(t)`, or the reason it could not be decided inside the window.
pub fn h_object(dc: &DerCat, d: &TriHeartData, t: usize, last: bool) -> Result<Tri<TriHImage>> {
    let coreflects = |w: &TriWitness| -> Option<bool> {
        let ys: Vec<usize> = w.y.iter().map(|s| dc.index_of(s).expect("window")).collect();
        let r = dc.realise(t, &ys);
        let tests = tests_in(dc, &d.minus, &near_both(dc, &r.x, dc.cx(t)))?;
        Some(dc.coreflects(&r.x, dc.cx(t), &r.p, &tests, &d.w_ids))
    };
    let core = match dc.triangle_exists(t, &d.minus, &d.v.shifted(1), last, &coreflects)? {
        Tri::Found(w) => w,
        Tri::Absent => return Err(Error::Verification(format!("no coreflection triangle for {}", dc.obj(t)))),
        Tri::Inconclusive(m) => return Ok(Tri::Inconclusive(m)),
    };
    let target = d.heart_or_w();
    let um = d.u.shifted(-1);
    let mut reflections = Vec::new();
    let mut image = Vec::new();
    for s in &core.x {
        let x = index(dc, s)?;
        let reflects = |w: &TriWitness| -> Option<bool> {
            let ys: Vec<usize> = w.y.iter().map(|s| dc.index_of(s).expect("window")).collect();
            let r = dc.realise(x, &ys);
            let tests = tests_in(dc, &d.plus, &near_both(dc, &r.y, dc.cx(x)))?;
            Some(dc.reflects(dc.cx(x), &r.y, &r.e, &tests, &d.w_ids))
        };
        match dc.triangle_exists(x, &um, &target, last, &reflects)? {
            Tri::Found(w) => {
                image.extend(w.y.iter().copied().filter(|y| d.w.contains(y) == Some(false)));
                reflections.push(w);
            }
            Tri::Absent => return Err(Error::Verification(format!("no reflection triangle for {s}"))),
            Tri::Inconclusive(m) => return Ok(Tri::Inconclusive(m)),
        }
    }
    image.sort();
    Ok(Tri::Found(TriHImage { object: dc.obj(t), image, coreflection: core, reflections }))
}

/// Rebuilds every triangle of an image and re-runs the universality checks.
pub fn recheck_h(dc: &DerCat, d: &TriHeartData, h: &TriHImage) -> Result<()> {
    let t = index(dc, &h.object)?;
    dc.recheck_triangle(&h.coreflection)?;
    if h.coreflection.object != h.object {
        return Err(Error::Verification("coreflection is for another object".into()));
    }
    let ys: Vec<usize> = h.coreflection.y.iter().map(|s| index(dc, s)).collect::<Result<_>>()?;
    let r = dc.realise(t, &ys);
    let tests = tests_in(dc, &d.minus, &near_both(dc, &r.x, dc.cx(t))).ok_or_else(|| Error::Window("undecided test objects".into()))?;
    if !dc.coreflects(&r.x, dc.cx(t), &r.p, &tests, &d.w_ids) {
        return Err(Error::Verification(format!("coreflection of {} is not universal", h.object)));
    }
    let mut image = Vec::new();
    for (s, w) in h.coreflection.x.iter().zip(&h.reflections) {
        if w.object != *s {
            return Err(Error::Verification(format!("reflection listed for {} instead of {s}", w.object)));
        }
        dc.recheck_triangle(w)?;
        let x = index(dc, s)?;
        let ys: Vec<usize> = w.y.iter().map(|s| index(dc, s)).collect::<Result<_>>()?;
        let r = dc.realise(x, &ys);
        let tests = tests_in(dc, &d.plus, &near_both(dc, &r.y, dc.cx(x))).ok_or_else(|| Error::Window("undecided test objects".into()))?;
        if !dc.reflects(dc.cx(x), &r.y, &r.e, &tests, &d.w_ids) {
            return Err(Error::Verification(format!("reflection of {s} is not universal")));
        }
        image.extend(w.y.iter().copied().filter(|y| d.w.contains(y) == Some(false)));
    }
    image.sort();
    if h.reflections.len() != h.coreflection.x.len() || image != h.image {
        return Err(Error::Verification(format!("H({}) recomputes to {image:?}", h.object)));
    }
    Ok(())
}

/// `(C, K)` as a torsion pair on the trust window.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionCheck {
    pub hom_violation: Option<(SInt, SInt)>,
    pub witnesses: Vec<TriWitness>,
    pub missing: Vec<SInt>,
}

impl TorsionCheck {
    pub fn ok(&self) -> bool {
        self.hom_violation.is_none() && self.missing.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriFlags {
    /// `H(C)` consists of heart projectives and covers every heart object.
    pub enough_projectives: bool,
    /// `(C, K)` is a torsion pair.
    pub torsion_pair: bool,
    /// Every heart object lies in `C * K`.
    pub heart_in_ck: bool,
    pub biconditional: bool,
    /// `C = ⊥K`.
    pub c_is_perp_k: bool,
    pub kernels_agree: bool,
    pub dims_agree: bool,
    pub lifting: bool,
    pub projectives_in_gens: bool,
    pub gamma_matches: bool,
    pub witness_independent: bool,
    /// `Some` when `U` is rigid: then `C = U[-1]` and `K = V`.
    pub rigid: Option<bool>,
    pub equivalence: Option<bool>,
}

impl TriFlags {
    pub fn consistent(&self) -> bool {
        self.biconditional
            && self.heart_in_ck == self.torsion_pair
            && self.c_is_perp_k
            && self.kernels_agree
            && self.dims_agree
            && self.lifting
            && self.projectives_in_gens
            && self.gamma_matches
            && self.witness_independent
            && self.rigid != Some(false)
            && self.equivalence != Some(false)
    }
}

/// `dim Hom(C1, C2) = dim Hom(H C1, H C2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriDims {
    pub c1: SInt,
    pub c2: SInt,
    pub dims: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriAnalysis {
    pub window: crate::dercat::Window,
    pub u: Vec<SInt>,
    pub v: Vec<SInt>,
    pub w: Vec<SInt>,
    pub pair: TriPairCheck,
    pub plus: Vec<SInt>,
    pub minus: Vec<SInt>,
    /// Heart objects in the trust window.
    pub heart: Vec<SInt>,
    /// Heart objects on the whole computed region.
    pub heart_region: Vec<SInt>,
    pub heart_hom: Vec<(SInt, SInt)>,
    pub coheart: Vec<SInt>,
    pub coheart_region: Vec<SInt>,
    pub dual_coheart: Vec<SInt>,
    pub kernel_a: Vec<SInt>,
    pub kernel_b: Vec<SInt>,
    pub h_images: Vec<TriHImage>,
    /// `H(C)`: the candidate heart projectives.
    pub gens: Vec<SInt>,
    pub covers: Vec<CoverWitness>,
    pub torsion: TorsionCheck,
    pub heart_triangles: Vec<TriWitness>,
    pub dims: Vec<TriDims>,
    pub gamma: GammaSummary,
    pub gamma_heart: GammaSummary,
    pub equivalence: Option<Equivalence>,
    pub flags: TriFlags,
    /// Checks that ran into the window boundary inside the trust window.
    pub boundary: Vec<String>,
    pub disagreements: Vec<String>,
}

fn in_window(dc: &DerCat, ids: &[usize]) -> Vec<SInt> {
    sints(dc, ids.iter().copied().filter(|&i| dc.window().trusts(dc.obj(i).d)))
}

/// The full analysis of `(U, U^⊥1)` on the trust window.
pub fn analyze(dc: &DerCat, u: &Class, opts: &Options) -> Result<TriAnalysis> {
    let v = right_perp(dc, u);
    let pair = check_pair(dc, u, &v)?;
    if !pair.ok() {
        return Err(Error::Verification(format!("not a cotorsion pair: {:?} {:?}", pair.ext_violation, pair.missing)));
    }
    let d = TriHeartData::new(dc, u, &v)?;
    let mut boundary: Vec<String> = pair.boundary.iter().chain(&d.boundary).cloned().collect();
    let mut disagreements = Vec::new();
    let trusted = dc.trusted();
    let region: Vec<usize> = (0..dc.len()).filter(|&i| (d.region.0..=d.region.1).contains(&dc.obj(i).d)).collect();
    let trusts = |i: usize| dc.window().trusts(dc.obj(i).d);

    let c = u.shifted(-1).intersection(&left_hom_perp(dc, u));
    let dual = v.shifted(1).intersection(&right_hom_perp(dc, &v));
    let c_region = members(dc, &c, d.region);

    // H on the trust window and on the coheart
    let mut targets: Vec<usize> = trusted.iter().chain(&c_region).copied().collect();
    targets.sort();
    targets.dedup();
    let found = Exec::default().map(targets.clone(), |t| h_object(dc, &d, t, false));
    let mut h: HashMap<usize, TriHImage> = HashMap::new();
    for (t, r) in targets.iter().zip(found) {
        match r? {
            Tri::Found(img) => {
                h.insert(*t, img);
            }
            Tri::Inconclusive(m) if trusts(*t) => boundary.push(format!("H({}): {m}", dc.obj(*t))),
            _ => {}
        }
    }
    let alt = Exec::default().map(trusted.clone(), |t| h_object(dc, &d, t, true));
    let mut witness_independent = true;
    for (t, r) in trusted.iter().zip(alt) {
        if let (Tri::Found(a), Some(b)) = (r?, h.get(t)) {
            if a.image != b.image {
                witness_independent = false;
                disagreements.push(format!("H({}) depends on the witness: {:?} vs {:?}", dc.obj(*t), b.image, a.image));
            }
        }
    }

    // kernel: U * V by search, and H = 0
    let yes = |_: &TriWitness| Some(true);
    let ka = Exec::default().map(region.clone(), |t| dc.triangle_exists(t, u, &v, false, &yes));
    let mut kernel_ids = Vec::new();
    for (t, r) in region.iter().zip(ka) {
        match r? {
            Tri::Found(_) => kernel_ids.push(*t),
            Tri::Absent => {}
            Tri::Inconclusive(m) if trusts(*t) => boundary.push(m),
            Tri::Inconclusive(_) => {}
        }
    }
    let k = tabulated(dc, d.region, &kernel_ids);
    let kernel_a = in_window(dc, &kernel_ids);
    let kernel_b = sints(dc, trusted.iter().copied().filter(|t| h.get(t).is_some_and(|x| x.image.is_empty())));
    let decided: Vec<SInt> = sints(dc, trusted.iter().copied().filter(|t| h.contains_key(t)));
    let kernels_agree = kernel_a.iter().filter(|s| decided.contains(s)).eq(kernel_b.iter());
    if !kernels_agree {
        disagreements.push(format!("kernel methods differ: {kernel_a:?} vs {kernel_b:?}"));
    }

    // the heart as a quotient category
    let heart_ids = d.heart_ids.clone();
    let lin = dc.quotient(&d.w_ids, &heart_ids);
    let local = |s: &SInt| heart_ids.iter().position(|&i| dc.obj(i) == *s);
    let c_done: Vec<usize> = c_region.iter().copied().filter(|c| h.contains_key(c)).collect();
    let mut gens: Vec<usize> = Vec::new();
    for c in &c_done {
        for s in &h[c].image {
            match local(s) {
                Some(g) => gens.push(g),
                None => disagreements.push(format!("H({}) leaves the computed heart at {s}", dc.obj(*c))),
            }
        }
    }
    gens.sort();
    gens.dedup();
    let heart_projs = projectives(&lin);
    let covers: Vec<Option<CoverWitness>> = (0..lin.len()).map(|a| cover(&lin, &gens, a)).collect();
    let projectives_are_gens = gens.iter().all(|g| heart_projs.contains(g));
    let enough_projectives = projectives_are_gens && covers.iter().all(Option::is_some);
    let covers: Vec<CoverWitness> = covers.into_iter().flatten().collect();

    // (C, K) as a torsion pair
    let mut torsion = TorsionCheck::default();
    'hom: for &a in &c_region {
        for &b in &kernel_ids {
            if dc.hom(a, b) {
                torsion.hom_violation = Some((dc.obj(a), dc.obj(b)));
                break 'hom;
            }
        }
    }
    let ck = Exec::default().map(trusted.clone(), |t| dc.triangle_exists(t, &c, &k, false, &yes));
    for (t, r) in trusted.iter().zip(ck) {
        match r? {
            Tri::Found(w) => torsion.witnesses.push(w),
            Tri::Absent => torsion.missing.push(dc.obj(*t)),
            Tri::Inconclusive(m) => boundary.push(m),
        }
    }
    let torsion_pair = torsion.ok();
    let mut heart_triangles = Vec::new();
    let mut heart_in_ck = true;
    for &a in &heart_ids {
        match dc.triangle_exists(a, &c, &k, false, &yes)? {
            Tri::Found(w) => heart_triangles.push(w),
            Tri::Absent => heart_in_ck = false,
            Tri::Inconclusive(m) if trusts(a) => boundary.push(m),
            Tri::Inconclusive(_) => {}
        }
    }
    let biconditional = enough_projectives == torsion_pair;
    if !biconditional || heart_in_ck != torsion_pair {
        disagreements.push(format!("enough projectives = {enough_projectives}, torsion pair = {torsion_pair}, H in C*K = {heart_in_ck}"));
    }
    let perp_k = left_hom_perp(dc, &k);
    let mut c_is_perp_k = true;
    for &t in &trusted {
        match perp_k.contains(&dc.obj(t)) {
            Some(p) if Some(p) != c.contains(&dc.obj(t)) => c_is_perp_k = false,
            Some(_) => {}
            None => boundary.push(format!("membership of {} in ⊥K undecided", dc.obj(t))),
        }
    }
    if !c_is_perp_k {
        disagreements.push("C differs from ⊥K".into());
    }

    // Hom(C1, C2) against Hom(H C1, H C2)
    let mut dims = Vec::new();
    let mut dims_agree = true;
    for &c1 in &c_done {
        for &c2 in &c_done {
            let d0 = dc.hom_dim_closed(&dc.obj(c1), &dc.obj(c2));
            let l1: Vec<usize> = h[&c1].image.iter().filter_map(local).collect();
            let l2: Vec<usize> = h[&c2].image.iter().filter_map(local).collect();
            let d1 = lin.hom_dim(&l1, &l2);
            if d0 != d1 {
                dims_agree = false;
                disagreements.push(format!("dimension identity fails at ({}, {}): {d0} {d1}", dc.obj(c1), dc.obj(c2)));
            }
            dims.push(TriDims { c1: dc.obj(c1), c2: dc.obj(c2), dims: [d0, d1] });
        }
    }

    let epis = sample_epis(&lin);
    let lifting = gens.iter().all(|&x| epis.iter().all(|g| lifts(&lin, x, g)));
    let projectives_in_gens = heart_projs.iter().all(|p| gens.contains(p));
    if !lifting || !projectives_in_gens {
        disagreements.push(format!("lifting = {lifting}, projectives inside H(C) = {projectives_in_gens}"));
    }

    let cl = dc.lincat(&c_done);
    let gamma = FinAlgebra::from_lincat(&cl, &(0..cl.len()).collect::<Vec<_>>()).summary();
    let gamma_heart = FinAlgebra::from_lincat(&lin, &gens).summary();
    let gamma_matches = super::exact::same_shape(&gamma, &gamma_heart);
    if !gamma_matches {
        disagreements.push("End(C) and End(H(C)) differ".into());
    }

    let u_region = members(dc, u, d.region);
    let rigid_u = u_region.iter().all(|&a| u_region.iter().all(|&b| dc.hom_dim_closed(&dc.obj(a), &dc.obj(b).shift(1)) == 0));
    let rigid = rigid_u.then(|| {
        trusted.iter().all(|&t| {
            let s = dc.obj(t);
            c.contains(&s) == u.contains(&s.shift(1)) && k.contains(&s) == v.contains(&s)
        })
    });

    let equivalence = if opts.equivalence && enough_projectives && torsion_pair {
        Some(verify_equivalence(&lin, &gens, opts.prime, opts.dim_bound)?)
    } else {
        None
    };
    let equivalence_ok = equivalence.as_ref().map(|q| q.fully_faithful && q.dense);

    let mut heart_hom = Vec::new();
    for i in 0..lin.len() {
        for j in 0..lin.len() {
            if i != j && lin.hom(i, j) {
                heart_hom.push((dc.obj(heart_ids[i]), dc.obj(heart_ids[j])));
            }
        }
    }
    let mut h_images: Vec<TriHImage> = h.into_values().collect();
    h_images.sort_by_key(|x| x.object);
    boundary.sort();
    boundary.dedup();
    let flags = TriFlags {
        enough_projectives,
        torsion_pair,
        heart_in_ck,
        biconditional,
        c_is_perp_k,
        kernels_agree,
        dims_agree,
        lifting,
        projectives_in_gens,
        gamma_matches,
        witness_independent,
        rigid,
        equivalence: equivalence_ok,
    };
    Ok(TriAnalysis {
        window: dc.window(),
        u: in_window(dc, &members(dc, u, d.region)),
        v: in_window(dc, &members(dc, &v, d.region)),
        w: in_window(dc, &d.w_ids),
        pair,
        plus: in_window(dc, &d.plus_ids),
        minus: in_window(dc, &d.minus_ids),
        heart: in_window(dc, &heart_ids),
        heart_region: sints(dc, heart_ids.iter().copied()),
        heart_hom,
        coheart: in_window(dc, &c_region),
        coheart_region: sints(dc, c_region.iter().copied()),
        dual_coheart: in_window(dc, &members(dc, &dual, d.region)),
        kernel_a,
        kernel_b,
        h_images,
        gens: sints(dc, gens.iter().map(|&g| heart_ids[g])),
        covers,
        torsion,
        heart_triangles,
        dims,
        gamma,
        gamma_heart,
        equivalence,
        flags,
        boundary,
        disagreements,
    })
}

/// `H(cone(x -> ⊕ ys))` for the all-ones map, through the triangle search.
pub fn h_of_cone(dc: &DerCat, d: &TriHeartData, x: usize, ys: &[usize]) -> Result<Tri<Vec<SInt>>> {
    let mut out = Vec::new();
    for s in dc.cocone_summands(x, ys)? {
        let t = index(dc, &s.shift(1))?;
        match h_object(dc, d, t, false)? {
            Tri::Found(img) => out.extend(img.image),
            Tri::Absent => return Ok(Tri::Absent),
            Tri::Inconclusive(m) => return Ok(Tri::Inconclusive(m)),
        }
    }
    out.sort();
    Ok(Tri::Found(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dercat::Window;
    use crate::exactfield::{Field, Q};
    use crate::hearts::cokernel;

    fn example_u() -> Class {
        Class::exact(|s| s.iv.b <= 2 || (s.iv.b == 3 && s.d >= 2))
    }

    fn names(v: &[SInt]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn derived_example() {
        let dc = DerCat::new(4, Window::new(0, 2, 8).unwrap()).unwrap();
        let a = analyze(&dc, &example_u(), &Options::default()).unwrap();
        assert_eq!(names(&a.coheart), ["[1,3]@1"]);
        assert_eq!(names(&a.heart), ["[3,3]@1"]);
        assert!(a.flags.torsion_pair && a.flags.enough_projectives, "{:?}", a.disagreements);
        assert!(a.flags.consistent(), "{:?}", a.disagreements);
        assert!(a.boundary.is_empty(), "{:?}", a.boundary);
        let e = a.equivalence.unwrap();
        assert_eq!(e.counts, (1, 1));
        assert_eq!(a.gamma.dim, 1);
        let d = TriHeartData::new(&dc, &example_u(), &right_perp(&dc, &example_u())).unwrap();
        for img in &a.h_images {
            recheck_h(&dc, &d, img).unwrap();
        }
    }

    #[test]
    fn standard_t_structure() {
        let dc = DerCat::new(3, Window::new(-1, 1, 4).unwrap()).unwrap();
        let u = Class::exact(|s| s.d >= 1);
        let a = analyze(&dc, &u, &Options::default()).unwrap();
        assert_eq!(a.heart.len(), 6);
        assert!(a.heart.iter().all(|s| s.d == 0));
        assert_eq!(a.coheart.len(), 3);
        assert!(a.flags.consistent() && a.flags.torsion_pair, "{:?}", a.disagreements);
        assert_eq!(a.equivalence.unwrap().counts, (6, 6));
    }

    #[test]
    fn cone_matches_cokernel() {
        let dc = DerCat::new(3, Window::new(-1, 1, 4).unwrap()).unwrap();
        let u = Class::exact(|s| s.d >= 1);
        let d = TriHeartData::new(&dc, &u, &right_perp(&dc, &u)).unwrap();
        let lin = dc.quotient(&d.w_ids, &d.heart_ids);
        let mut checked = 0;
        for (x, &gx) in d.heart_ids.iter().enumerate() {
            let ys: Vec<usize> = (0..lin.len()).filter(|&y| y != x && lin.hom(x, y)).collect();
            for mask in 1..1usize << ys.len() {
                let sel: Vec<usize> = (0..ys.len()).filter(|i| mask >> i & 1 == 1).map(|i| ys[i]).collect();
                let f = lin.from_coords(&[x], &sel, &vec![Q::one(); sel.len()]);
                let pi = cokernel(&lin, &f).unwrap();
                let mut want: Vec<SInt> = pi.tgt.iter().map(|&l| dc.obj(d.heart_ids[l])).collect();
                want.sort();
                let global: Vec<usize> = sel.iter().map(|&l| d.heart_ids[l]).collect();
                let got = h_of_cone(&dc, &d, gx, &global).unwrap();
                let got = got.found().unwrap().clone();
                assert_eq!(got, want, "{} -> {:?}", dc.obj(gx), global);
                checked += 1;
            }
        }
        assert!(checked >= 6);
    }
}
