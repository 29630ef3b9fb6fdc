//! Strategies and property checks shared by the property suites and the
//! acceptance target.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use coheart::dercat::{Class, DerCat, SInt, Window};
use coheart::exactfield::{Field, Mat, Q};
use coheart::exec::Exec;
use coheart::hearts::exact::{analyze, check_pair, h_object, recheck_h, HeartData, Options};
use coheart::hearts::tri::{h_of_cone, right_perp, TriHeartData};
use coheart::hearts::{cokernel, verify_cokernel};
use coheart::modcat::{Algebra, ModCat, Obj, Rep};
use coheart::pairs::{ExactCat, IdSet};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 1000;

/// Runs `check` on `CASES` inputs drawn from `strategy`.
pub fn run<S: Strategy>(strategy: S, check: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, check).map_err(|e| e.to_string())
}

/// Nakayama algebras of `A_n` type with `1 <= n <= max_n`.
pub fn algebra(max_n: usize) -> impl Strategy<Value = Algebra> {
    (1..=max_n, prop::collection::vec(any::<u8>(), max_n)).prop_map(|(n, seeds)| {
        let mut caps = vec![1];
        for b in 1..n {
            let hi = caps[b - 1] + 1;
            caps.push(2 + seeds[b] as usize % (hi - 1));
        }
        Algebra::new(n, caps).expect("valid caps")
    })
}

fn cached<K: std::hash::Hash + Eq + Clone, V: Clone>(
    cell: &'static OnceLock<Mutex<HashMap<K, V>>>,
    key: K,
    f: impl FnOnce() -> V,
) -> V {
    let map = cell.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&key) {
        return v.clone();
    }
    let v = f();
    map.lock().unwrap().insert(key, v.clone());
    v
}

/// An algebra with two objects given as multiplicity vectors over its
/// indecomposables.
pub fn algebra_with_objects() -> impl Strategy<Value = (Algebra, Obj, Obj)> {
    (algebra(5), prop::collection::vec(0usize..3, 15), prop::collection::vec(0usize..3, 15)).prop_map(|(alg, mx, my)| {
        let ind = alg.indecomposables();
        let obj = |m: &[usize]| {
            let mut o = Obj::zero();
            for (iv, &k) in ind.iter().zip(m) {
                o.add(*iv, k);
            }
            o
        };
        (alg.clone(), obj(&mx), obj(&my))
    })
}

/// Closed-form Hom dimension against the dimension of the solution space of
/// the commutativity equations.
pub fn check_hom_closed_form((alg, x, y): (Algebra, Obj, Obj)) -> Result<(), TestCaseError> {
    let n = alg.n();
    let brute = Rep::<Q>::of_obj(n, &x).hom_basis(&Rep::of_obj(n, &y)).len();
    prop_assert_eq!(ModCat::hom_dim_closed(&x, &y), brute);
    Ok(())
}

fn invert(m: &Mat<Q>) -> Mat<Q> {
    let k = m.rows();
    let cols: Vec<Vec<Q>> = (0..k)
        .map(|j| {
            let e: Vec<Q> = (0..k).map(|i| if i == j { Q::one() } else { Q::zero() }).collect();
            m.solve(&e).unwrap().expect("invertible")
        })
        .collect();
    Mat::from_cols(k, &cols)
}

/// Unitriangular matrix with entries in `{-1, 0, 1}` above the diagonal.
fn unitriangular(k: usize, seed: &mut impl Iterator<Item = u8>) -> Mat<Q> {
    let mut m = Mat::identity(k);
    for i in 0..k {
        for j in i + 1..k {
            m[(i, j)] = Q::from_i64(seed.next().unwrap_or(0) as i64 % 3 - 1);
        }
    }
    m
}

/// `(algebra, object, seed)` for the barcode round trip.
pub fn barcode_input() -> impl Strategy<Value = (Algebra, Obj, Vec<u8>)> {
    (algebra_with_objects(), prop::collection::vec(any::<u8>(), 400)).prop_map(|((a, x, _), s)| (a, x, s))
}

/// A direct sum of intervals, scrambled by a change of basis at every
/// vertex, decomposes back to the same barcode.
pub fn check_barcode_round_trip((alg, x, seed): (Algebra, Obj, Vec<u8>)) -> Result<(), TestCaseError> {
    let n = alg.n();
    let mut rep = Rep::<Q>::of_obj(n, &x);
    let mut it = seed.into_iter();
    let bases: Vec<Mat<Q>> = rep.dims.iter().map(|&d| unitriangular(d, &mut it).transpose()).collect();
    let inv: Vec<Mat<Q>> = bases.iter().map(invert).collect();
    for j in 0..rep.arrows.len() {
        rep.arrows[j] = bases[j].mul(&rep.arrows[j]).mul(&inv[j + 1]);
    }
    prop_assert_eq!(rep.decompose(&alg).map_err(|e| TestCaseError::fail(e.to_string()))?, x);
    Ok(())
}

fn ecat(alg: &Algebra) -> std::sync::Arc<ExactCat> {
    static CELL: OnceLock<Mutex<HashMap<Vec<usize>, std::sync::Arc<ExactCat>>>> = OnceLock::new();
    cached(&CELL, alg.caps().to_vec(), || std::sync::Arc::new(ExactCat::new(alg.clone(), Exec::Sequential).unwrap()))
}

/// `(algebra, b, middle mask, end mask)` over the indecomposables.
pub fn conflation_input() -> impl Strategy<Value = (Algebra, usize, u32, u32)> {
    (algebra(5), any::<usize>(), any::<u32>(), any::<u32>())
}

/// Every conflation found by the searches survives an independent recheck
/// and has the requested end terms.
pub fn check_conflation_recheck((alg, b, mm, km): (Algebra, usize, u32, u32)) -> Result<(), TestCaseError> {
    let e = ecat(&alg);
    let b = b % e.len();
    let mask = |m: u32| -> IdSet { (0..e.len()).filter(|i| m >> i & 1 == 1).collect() };
    let (mid, other) = (&mask(mm) | &e.projectives(), mask(km));
    let fail = |r: coheart::Result<()>| r.map_err(|e| TestCaseError::fail(e.to_string()));
    if let Some(w) = e.onto(b, &mid, &other) {
        fail(e.recheck_onto(&w))?;
        prop_assert!(e.obj_in(&w.middle, &mid));
        prop_assert!(w.other.iter().all(|iv| other.contains(&e.id_of(iv))));
    }
    let mid = &mask(mm) | &e.injectives();
    if let Some(w) = e.out_of(b, &mid, &other) {
        fail(e.recheck_out_of(&w))?;
        prop_assert!(e.obj_in(&w.middle, &mid));
    }
    Ok(())
}

/// `(algebra, ideal mask)`.
pub fn quotient_input() -> impl Strategy<Value = (Algebra, u32)> {
    (algebra(5), any::<u32>())
}

/// Maps factoring through the ideal form a two-sided ideal, so quotient
/// composition is well defined: composites of basis maps with a killed
/// factor are killed, surviving composites keep their constants, and the
/// quotient is associative.
pub fn check_quotient_composition((alg, wm): (Algebra, u32)) -> Result<(), TestCaseError> {
    let e = ecat(&alg);
    let lin = e.lin();
    let n = lin.len();
    let w: Vec<usize> = (0..n).filter(|i| wm >> i & 1 == 1).collect();
    let keep: Vec<usize> = (0..n).filter(|i| !w.contains(i)).collect();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let c = lin.c(x, y, z);
                if c.is_zero() {
                    continue;
                }
                if lin.factors_through(x, y, &w) || lin.factors_through(y, z, &w) {
                    prop_assert!(lin.factors_through(x, z, &w), "{x}->{y}->{z}");
                }
            }
        }
    }
    let q = lin.quotient(&w, &keep);
    prop_assert!(q.is_associative());
    for (i, &x) in keep.iter().enumerate() {
        for (j, &y) in keep.iter().enumerate() {
            for (k, &z) in keep.iter().enumerate() {
                if q.hom(i, j) && q.hom(j, k) && q.hom(i, k) {
                    prop_assert_eq!(q.c(i, j, k), lin.c(x, y, z));
                }
            }
        }
    }
    Ok(())
}

type DimCache = OnceLock<Mutex<HashMap<(Vec<usize>, Vec<usize>), Result<Vec<[usize; 3]>, String>>>>;

/// `(algebra, subcategory mask)`; the pair is `(⊥₁(S^⊥₁), S^⊥₁)`.
pub fn pair_input() -> impl Strategy<Value = (Algebra, u32)> {
    (algebra(4), any::<u32>())
}

/// `None` when the pair is not complete.
fn pair_of(e: &ExactCat, m: u32) -> Option<(IdSet, IdSet)> {
    let s: IdSet = (0..e.len()).filter(|i| m >> i & 1 == 1).collect();
    let v = e.perp_ext_right(&s);
    let u = e.perp_ext_left(&v);
    check_pair(e, &u, &v).ok().then_some((u, v))
}

/// The three dimensions `Hom_{/P}(C1,C2)`, `Hom_{/P}(ΩC1,ΩC2)` and
/// `Hom(HΩC1,HΩC2)` agree on all coheart pairs.
pub fn check_dimension_identities((alg, m): (Algebra, u32)) -> Result<(), TestCaseError> {
    static CELL: DimCache = OnceLock::new();
    let e = ecat(&alg);
    let Some((u, v)) = pair_of(&e, m) else { return Ok(()) };
    let key = (alg.caps().to_vec(), u.iter().copied().collect());
    let dims = cached(&CELL, key, || {
        let opts = Options { equivalence: false, ..Options::default() };
        analyze(&e, &u, &v, &opts).map(|a| a.dims.iter().map(|d| d.dims).collect()).map_err(|e| e.to_string())
    })
    .map_err(TestCaseError::fail)?;
    for d in dims {
        prop_assert!(d[0] == d[1] && d[1] == d[2], "{:?}", d);
    }
    Ok(())
}

/// `(algebra, subcategory mask, object)`.
pub fn h_input() -> impl Strategy<Value = (Algebra, u32, usize)> {
    (algebra(4), any::<u32>(), any::<usize>())
}

/// Objects seen by `check_h_independence`, as `caps/U/object`.
pub fn h_samples() -> &'static Mutex<BTreeSet<String>> {
    static CELL: OnceLock<Mutex<BTreeSet<String>>> = OnceLock::new();
    CELL.get_or_init(|| Mutex::new(BTreeSet::new()))
}

/// `H(t)` computed from the first and from the last admissible witnesses
/// agrees, and both witnesses recheck.
pub fn check_h_independence((alg, m, t): (Algebra, u32, usize)) -> Result<(), TestCaseError> {
    let e = ecat(&alg);
    let Some((u, v)) = pair_of(&e, m) else { return Ok(()) };
    let t = t % e.len();
    let d = HeartData::new(&e, &u, &v);
    let fail = |r: coheart::Error| TestCaseError::fail(r.to_string());
    let first = h_object(&e, &d, t, false).map_err(fail)?;
    let last = h_object(&e, &d, t, true).map_err(fail)?;
    recheck_h(&e, &d, &first).map_err(fail)?;
    recheck_h(&e, &d, &last).map_err(fail)?;
    prop_assert_eq!(&first.image, &last.image);
    h_samples().lock().unwrap().insert(format!("{:?}/{:?}/{}", alg.caps(), u, e.ind(t)));
    Ok(())
}

/// Standard t-structures on `A_3` and `A_4` with their heart data.
fn derived_setups() -> &'static [(DerCat, TriHeartData)] {
    static CELL: OnceLock<Vec<(DerCat, TriHeartData)>> = OnceLock::new();
    CELL.get_or_init(|| {
        [3, 4, 5]
            .into_iter()
            .map(|n| {
                let dc = DerCat::new(n, Window::new(-1, 1, 4).unwrap()).unwrap();
                let u = Class::exact(|s| s.d >= 1);
                let d = TriHeartData::new(&dc, &u, &right_perp(&dc, &u)).unwrap();
                (dc, d)
            })
            .collect()
    })
}

/// `(setup, source, target mask)`.
pub fn cone_input() -> impl Strategy<Value = (usize, usize, u32)> {
    (0usize..3, any::<usize>(), any::<u32>())
}

/// Morphisms sampled by `check_cone_cokernel`.
pub fn cone_samples() -> &'static Mutex<BTreeSet<String>> {
    static CELL: OnceLock<Mutex<BTreeSet<String>>> = OnceLock::new();
    CELL.get_or_init(|| Mutex::new(BTreeSet::new()))
}

/// For the all-ones map `x -> ⊕ys` between heart objects, the cokernel in
/// the heart is `H` of the cone.
pub fn check_cone_cokernel((s, x, m): (usize, usize, u32)) -> Result<(), TestCaseError> {
    let (dc, d) = &derived_setups()[s];
    let lin = dc.quotient(&d.w_ids, &d.heart_ids);
    let x = x % lin.len();
    let ys: Vec<usize> = (0..lin.len()).filter(|&y| y != x && lin.hom(x, y)).collect();
    let sel: Vec<usize> = (0..ys.len()).filter(|i| m >> i & 1 == 1).map(|i| ys[i]).collect();
    if sel.is_empty() {
        return Ok(());
    }
    let f = lin.from_coords(&[x], &sel, &vec![Q::one(); sel.len()]);
    let fail = |r: coheart::Error| TestCaseError::fail(r.to_string());
    let pi = cokernel(&lin, &f).map_err(fail)?;
    verify_cokernel(&lin, &f, &pi).map_err(fail)?;
    let mut want: Vec<SInt> = pi.tgt.iter().map(|&l| dc.obj(d.heart_ids[l])).collect();
    want.sort();
    let global: Vec<usize> = sel.iter().map(|&l| d.heart_ids[l]).collect();
    let got = h_of_cone(dc, d, d.heart_ids[x], &global).map_err(fail)?;
    let got = got.found().ok_or_else(|| TestCaseError::fail("H(cone) undecided"))?;
    prop_assert_eq!(got, &want);
    cone_samples().lock().unwrap().insert(format!("{}:{}->{:?}", s, dc.obj(d.heart_ids[x]), global));
    Ok(())
}
