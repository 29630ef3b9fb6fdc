//! Subcategory calculus and conflation searches in `mod Λ`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::lincat::LinCat;
use crate::error::{Error, Result};
use crate::exactfield::{Field, Q};
use crate::exec::Exec;
use crate::modcat::{Algebra, Conflation, Interval, ModCat, Obj};

pub type IdSet = BTreeSet<usize>;

/// `0 -> kernel -> middle -> b -> 0` (or, for the dual search,
/// `0 -> b -> middle -> cokernel -> 0`), built from the all-ones class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflationWitness {
    pub object: Interval,
    /// The third term: the kernel for searches onto `object`, the cokernel
    /// for searches out of it.
    pub other: Vec<Interval>,
    pub middle: Obj,
}

/// Extension middles of an indecomposable `b` by sums of distinct `v` with
/// `Ext^1(b, v) != 0`, indexed by bitmask over that support.
#[derive(Clone, Debug)]
struct MiddleTable {
    support: Vec<Vec<usize>>,
    middles: Vec<Vec<Obj>>,
}

impl MiddleTable {
    fn build(cat: &ModCat, exec: Exec) -> Result<Self> {
        let idx: Vec<usize> = (0..cat.len()).collect();
        let support: Vec<Vec<usize>> =
            idx.iter().map(|&b| (0..cat.len()).filter(|&v| cat.ext_dim(b, v) > 0).collect()).collect();
        if support.iter().any(|s| s.len() > 20) {
            return Err(Error::Unsupported("extension support too large for exhaustive search".into()));
        }
        let middles = exec.map(idx, |b| -> Result<Vec<Obj>> {
            let supp = &support[b];
            (0..1usize << supp.len())
                .map(|mask| {
                    let vs: Vec<Interval> = (0..supp.len()).filter(|i| mask >> i & 1 == 1).map(|i| cat.ind(supp[i])).collect();
                    all_ones_middle(cat, cat.ind(b), &vs)
                })
                .collect()
        });
        Ok(MiddleTable { support, middles: middles.into_iter().collect::<Result<_>>()? })
    }
}

/// Middle term of `0 -> ⊕v -> ? -> b -> 0` whose class has every component
/// equal to the chosen basis class.
pub fn all_ones_middle(cat: &ModCat, b: Interval, vs: &[Interval]) -> Result<Obj> {
    Ok(all_ones_conflation(cat, b, vs)?.middle)
}

pub fn all_ones_conflation(cat: &ModCat, b: Interval, vs: &[Interval]) -> Result<Conflation> {
    let e = cat.ext_space(&[b], vs);
    let coords = vec![Q::one(); e.dim()];
    cat.extension_middle(&[b], vs, &e.class(&coords))
}

/// Subsets of `0..k` ordered by size, then lexicographically.
fn masks_by_size(k: usize) -> Vec<usize> {
    let mut m: Vec<usize> = (0..1usize << k).collect();
    m.sort_by_key(|&x| (x.count_ones(), x.reverse_bits()));
    m
}

/// `mod Λ` together with its opposite, the duality bijection and the
/// extension-middle tables that drive every existence search.
#[derive(Clone, Debug)]
pub struct ExactCat {
    cat: ModCat,
    op: ModCat,
    dual: Vec<usize>,
    lin: LinCat,
    table: MiddleTable,
    op_table: MiddleTable,
}

impl ExactCat {
    pub fn new(alg: Algebra, exec: Exec) -> Result<Self> {
        let cat = ModCat::new(alg.clone());
        let op = ModCat::new(alg.opposite());
        let dual = cat
            .indecomposables()
            .iter()
            .map(|iv| op.index_of(&alg.dual_interval(iv)).expect("duality preserves modules"))
            .collect();
        let n = cat.len();
        let labels = cat.indecomposables().iter().map(|iv| iv.to_string()).collect();
        let hom = (0..n).map(|x| (0..n).map(|y| cat.hom_dim(x, y) > 0).collect()).collect();
        // canonical maps compose to the canonical map whenever it is nonzero
        let lin = LinCat::new(labels, hom, |_, _, _| Q::one());
        let table = MiddleTable::build(&cat, exec)?;
        let op_table = MiddleTable::build(&op, exec)?;
        Ok(ExactCat { cat, op, dual, lin, table, op_table })
    }

    pub fn cat(&self) -> &ModCat {
        &self.cat
    }

    pub fn op(&self) -> &ModCat {
        &self.op
    }

    pub fn lin(&self) -> &LinCat {
        &self.lin
    }

    pub fn len(&self) -> usize {
        self.cat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cat.is_empty()
    }

    pub fn ind(&self, i: usize) -> Interval {
        self.cat.ind(i)
    }

    pub fn all(&self) -> IdSet {
        (0..self.len()).collect()
    }

    /// Index in the opposite category of the dual of indecomposable `i`.
    pub fn dual_id(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn dual_set(&self, s: &IdSet) -> IdSet {
        s.iter().map(|&i| self.dual[i]).collect()
    }

    pub fn ids_of(&self, items: &[Interval]) -> Result<IdSet> {
        items
            .iter()
            .map(|iv| self.cat.index_of(iv).ok_or_else(|| Error::Input(format!("{iv} is not a module over this algebra"))))
            .collect()
    }

    pub fn intervals(&self, s: &IdSet) -> Vec<Interval> {
        s.iter().map(|&i| self.ind(i)).collect()
    }

    pub fn id_of(&self, iv: &Interval) -> usize {
        self.cat.index_of(iv).expect("interval of this algebra")
    }

    pub fn obj_in(&self, o: &Obj, s: &IdSet) -> bool {
        o.support().all(|iv| s.contains(&self.id_of(iv)))
    }

    pub fn projectives(&self) -> IdSet {
        (0..self.len()).filter(|&i| self.cat.is_projective(&self.ind(i))).collect()
    }

    pub fn injectives(&self) -> IdSet {
        (0..self.len()).filter(|&i| self.cat.algebra().is_injective(&self.ind(i))).collect()
    }

    /// `s^{⊥1}`: indecomposables `y` with `Ext^1(s, y) = 0`.
    pub fn perp_ext_right(&self, s: &IdSet) -> IdSet {
        (0..self.len()).filter(|&y| s.iter().all(|&x| self.cat.ext_dim(x, y) == 0)).collect()
    }

    /// `{}^{⊥1}s`.
    pub fn perp_ext_left(&self, s: &IdSet) -> IdSet {
        (0..self.len()).filter(|&x| s.iter().all(|&y| self.cat.ext_dim(x, y) == 0)).collect()
    }

    pub fn perp_hom_right(&self, s: &IdSet) -> IdSet {
        (0..self.len()).filter(|&y| s.iter().all(|&x| self.cat.hom_dim(x, y) == 0)).collect()
    }

    pub fn perp_hom_left(&self, s: &IdSet) -> IdSet {
        (0..self.len()).filter(|&x| s.iter().all(|&y| self.cat.hom_dim(x, y) == 0)).collect()
    }

    pub fn ext_orthogonal(&self, u: &IdSet, v: &IdSet) -> Option<(usize, usize)> {
        u.iter().flat_map(|&x| v.iter().map(move |&y| (x, y))).find(|&(x, y)| self.cat.ext_dim(x, y) > 0)
    }

    /// A conflation `0 -> V -> M -> b -> 0` with `V ∈ add(kernel)` and
    /// `M ∈ add(middle)`, least in (size, lexicographic) order.
    pub fn onto(&self, b: usize, middle: &IdSet, kernel: &IdSet) -> Option<ConflationWitness> {
        onto_in(&self.cat, &self.table, b, middle, kernel, false, &|_| true)
    }

    /// As [`ExactCat::onto`] but returning the greatest witness, for
    /// witness-independence checks.
    pub fn onto_last(&self, b: usize, middle: &IdSet, kernel: &IdSet) -> Option<ConflationWitness> {
        onto_in(&self.cat, &self.table, b, middle, kernel, true, &|_| true)
    }

    /// Middle terms of all conflations `0 -> V -> M -> b -> 0` with `V` a sum
    /// of distinct members of `kernel` and all-ones class.
    pub fn all_middles_onto(&self, b: usize, kernel: &IdSet) -> Vec<Obj> {
        let supp = &self.table.support[b];
        (0..1usize << supp.len())
            .filter(|mask| (0..supp.len()).all(|i| mask >> i & 1 == 0 || kernel.contains(&supp[i])))
            .map(|mask| self.table.middles[b][mask].clone())
            .collect()
    }

    /// A conflation `0 -> b -> M -> U -> 0` with `M ∈ add(middle)` and
    /// `U ∈ add(cokernel)`, found through the opposite algebra.
    pub fn out_of(&self, b: usize, middle: &IdSet, cokernel: &IdSet) -> Option<ConflationWitness> {
        self.out_of_impl(b, middle, cokernel, false)
    }

    pub fn out_of_last(&self, b: usize, middle: &IdSet, cokernel: &IdSet) -> Option<ConflationWitness> {
        self.out_of_impl(b, middle, cokernel, true)
    }

    /// As [`ExactCat::onto`], skipping witnesses rejected by `accept`.
    pub fn onto_where(
        &self,
        b: usize,
        middle: &IdSet,
        kernel: &IdSet,
        last: bool,
        accept: &dyn Fn(&ConflationWitness) -> bool,
    ) -> Option<ConflationWitness> {
        onto_in(&self.cat, &self.table, b, middle, kernel, last, accept)
    }

    /// As [`ExactCat::out_of`], skipping witnesses rejected by `accept`; the
    /// predicate sees the witness over the opposite algebra.
    pub fn out_of_where(
        &self,
        b: usize,
        middle: &IdSet,
        cokernel: &IdSet,
        last: bool,
        accept: &dyn Fn(&ConflationWitness) -> bool,
    ) -> Option<ConflationWitness> {
        self.out_of_with(b, middle, cokernel, last, accept)
    }

    fn out_of_impl(&self, b: usize, middle: &IdSet, cokernel: &IdSet, last: bool) -> Option<ConflationWitness> {
        self.out_of_with(b, middle, cokernel, last, &|_| true)
    }

    fn out_of_with(
        &self,
        b: usize,
        middle: &IdSet,
        cokernel: &IdSet,
        last: bool,
        accept: &dyn Fn(&ConflationWitness) -> bool,
    ) -> Option<ConflationWitness> {
        let w = onto_in(&self.op, &self.op_table, self.dual[b], &self.dual_set(middle), &self.dual_set(cokernel), last, accept)?;
        let alg = self.op.algebra();
        let mut other: Vec<Interval> = w.other.iter().map(|iv| alg.dual_interval(iv)).collect();
        other.sort();
        Some(ConflationWitness {
            object: self.ind(b),
            other,
            middle: w.middle.expand().iter().map(|iv| alg.dual_interval(iv)).collect(),
        })
    }

    /// Existence verdict of [`ExactCat::onto`] with every multiplicity bound
    /// multiplied by `factor` and class components ranging over `{0, 1}`.
    pub fn onto_audit(&self, b: usize, middle: &IdSet, kernel: &IdSet, factor: usize) -> Result<bool> {
        audit_in(&self.cat, b, middle, kernel, factor)
    }

    pub fn out_of_audit(&self, b: usize, middle: &IdSet, cokernel: &IdSet, factor: usize) -> Result<bool> {
        audit_in(&self.op, self.dual[b], &self.dual_set(middle), &self.dual_set(cokernel), factor)
    }

    /// Rebuilds a witness from scratch and checks exactness and the claimed
    /// middle term.
    pub fn recheck_onto(&self, w: &ConflationWitness) -> Result<()> {
        let c = all_ones_conflation(&self.cat, w.object, &w.other)?;
        c.verify(self.cat.algebra())?;
        if c.middle != w.middle {
            return Err(Error::Verification(format!("middle of {} by {:?} is {}, not {}", w.object, w.other, c.middle, w.middle)));
        }
        Ok(())
    }

    pub fn recheck_out_of(&self, w: &ConflationWitness) -> Result<()> {
        let alg = self.cat.algebra();
        let dual = ConflationWitness {
            object: alg.dual_interval(&w.object),
            other: w.other.iter().map(|iv| alg.dual_interval(iv)).collect(),
            middle: w.middle.expand().iter().map(|iv| alg.dual_interval(iv)).collect(),
        };
        let c = all_ones_conflation(&self.op, dual.object, &dual.other)?;
        c.verify(self.op.algebra())?;
        if c.middle != dual.middle {
            return Err(Error::Verification(format!("dual middle mismatch for {}", w.object)));
        }
        Ok(())
    }
}

fn onto_in(
    cat: &ModCat,
    table: &MiddleTable,
    b: usize,
    middle: &IdSet,
    kernel: &IdSet,
    last: bool,
    accept: &dyn Fn(&ConflationWitness) -> bool,
) -> Option<ConflationWitness> {
    let supp = &table.support[b];
    let allowed: Vec<usize> = (0..supp.len()).filter(|&i| kernel.contains(&supp[i])).collect();
    let in_middle = |o: &Obj| o.support().all(|iv| middle.contains(&cat.index_of(iv).expect("known interval")));
    let mut order = masks_by_size(allowed.len());
    if last {
        order.reverse();
    }
    for sub in order {
        let mask: usize = (0..allowed.len()).filter(|i| sub >> i & 1 == 1).map(|i| 1 << allowed[i]).sum();
        let m = &table.middles[b][mask];
        if in_middle(m) {
            let other = (0..supp.len()).filter(|i| mask >> i & 1 == 1).map(|i| cat.ind(supp[i])).collect();
            let w = ConflationWitness { object: cat.ind(b), other, middle: m.clone() };
            if accept(&w) {
                return Some(w);
            }
        }
    }
    None
}

fn audit_in(cat: &ModCat, b: usize, middle: &IdSet, kernel: &IdSet, factor: usize) -> Result<bool> {
    let bi = cat.ind(b);
    let cands: Vec<usize> = kernel.iter().copied().filter(|&v| cat.ext_dim(b, v) > 0).collect();
    // multiplicity vector, then a 0/1 component per copy
    let mut mults = vec![0usize; cands.len()];
    loop {
        let vs: Vec<Interval> = cands.iter().zip(&mults).flat_map(|(&v, &m)| std::iter::repeat_n(cat.ind(v), m)).collect();
        let e = cat.ext_space(&[bi], &vs);
        for pattern in 0..1usize << e.dim() {
            let coords: Vec<Q> = (0..e.dim()).map(|i| Q::from_i64((pattern >> i & 1) as i64)).collect();
            let c = cat.extension_middle(&[bi], &vs, &e.class(&coords))?;
            if c.middle.support().all(|iv| middle.contains(&cat.index_of(iv).expect("known interval"))) {
                return Ok(true);
            }
        }
        // next multiplicity vector
        let mut i = 0;
        loop {
            if i == mults.len() {
                return Ok(false);
            }
            mults[i] += 1;
            if mults[i] <= factor {
                break;
            }
            mults[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex() -> ExactCat {
        ExactCat::new(Algebra::uniform(5, 4).unwrap(), Exec::Sequential).unwrap()
    }

    fn set(e: &ExactCat, items: &[(usize, usize)]) -> IdSet {
        e.ids_of(&items.iter().map(|&(a, b)| Interval::new(a, b)).collect::<Vec<_>>()).unwrap()
    }

    fn m(e: &ExactCat) -> IdSet {
        set(e, &[(1, 1), (4, 4), (5, 5), (1, 2), (4, 5), (1, 3), (3, 5), (1, 4), (2, 5)])
    }

    #[test]
    fn perps_of_the_worked_example() {
        let e = ex();
        let mm = m(&e);
        assert_eq!(e.perp_ext_left(&mm), set(&e, &[(1, 1), (1, 2), (1, 3), (1, 4), (2, 5), (4, 5), (3, 5)]));
        assert_eq!(e.perp_ext_right(&mm), set(&e, &[(1, 1), (5, 5), (1, 2), (4, 5), (3, 5), (1, 4), (2, 5)]));
        assert_eq!(e.perp_ext_left(&IdSet::new()), e.all());
    }

    #[test]
    fn onto_and_into_searches() {
        let e = ex();
        let mm = m(&e);
        let v = e.perp_ext_right(&mm);
        let s2 = e.id_of(&Interval::simple(2));
        let w = e.onto(s2, &mm, &v).unwrap();
        assert_eq!(w.other, vec![Interval::simple(1)]);
        assert_eq!(w.middle, Obj::single(Interval::new(1, 2)));
        e.recheck_onto(&w).unwrap();
        let w = e.out_of(s2, &v, &mm).unwrap();
        e.recheck_out_of(&w).unwrap();
        assert!(e.obj_in(&w.middle, &v));
        // no surjection from copies of S1 onto S2
        assert!(e.onto(s2, &set(&e, &[(1, 1)]), &e.all()).is_none());
        // trivial witnesses
        let p = e.id_of(&Interval::new(1, 3));
        assert_eq!(e.onto(p, &mm, &v).unwrap().other, vec![]);
    }

    #[test]
    fn audit_agrees_on_small_cases() {
        let e = ex();
        let mm = m(&e);
        let v = e.perp_ext_right(&mm);
        for b in 0..e.len() {
            assert_eq!(e.onto(b, &mm, &v).is_some(), e.onto_audit(b, &mm, &v, 2).unwrap());
            assert_eq!(e.out_of(b, &v, &mm).is_some(), e.out_of_audit(b, &v, &mm, 2).unwrap());
        }
    }
}
