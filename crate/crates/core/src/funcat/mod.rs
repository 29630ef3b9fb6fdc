//! The functor-category side: `Γ = End(⊕ G_i)` for a family of
//! indecomposables, right `Γ`-modules `F(A) = Hom(-, A)|_G`, and the
//! equivalence check between a heart and `mod Γ`.

mod enumerate;

pub use enumerate::{dedup_iso, enumerate_candidates, enumerate_indec_modules, is_indecomposable, isomorphic};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::{Field, Fp, Mat, Q};
use crate::pairs::LinCat;

/// Scalars that rationals can be reduced into.
pub trait Reduce: Field {
    fn from_q(q: &Q) -> Option<Self>;
}

impl Reduce for Q {
    fn from_q(q: &Q) -> Option<Self> {
        Some(q.clone())
    }
}

impl<const P: u32> Reduce for Fp<P> {
    fn from_q(q: &Q) -> Option<Self> {
        Fp::<P>::from_rational(q)
    }
}

/// A basic finite-dimensional algebra given by a category with one-dimensional
/// (or zero) Hom spaces between its vertices: basis element `(i, j)` is the
/// map `G_i -> G_j`, and `β ∘ α` is a scalar multiple of a basis element.
#[derive(Clone, Debug)]
pub struct FinAlgebra {
    pub vertices: Vec<String>,
    pub basis: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    /// `(i, j, k) -> c` with `basis(j,k) ∘ basis(i,j) = c · basis(i,k)`.
    comp: HashMap<(usize, usize, usize), Q>,
}

/// Serializable presentation of a [`FinAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaSummary {
    pub dim: usize,
    pub quiver: QuiverSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSummary {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
    /// Zero relations (paths of arrows whose composite vanishes), as vertex
    /// sequences.
    pub relations: Vec<Vec<String>>,
}

impl FinAlgebra {
    pub fn from_lincat(h: &LinCat, gens: &[usize]) -> Self {
        let vertices = gens.iter().map(|&g| h.label(g).to_string()).collect();
        let mut basis = Vec::new();
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                if h.hom(gens[i], gens[j]) {
                    basis.push((i, j));
                }
            }
        }
        let index = basis.iter().enumerate().map(|(n, &b)| (b, n)).collect();
        let mut comp = HashMap::new();
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                for k in 0..gens.len() {
                    let c = h.c(gens[i], gens[j], gens[k]);
                    if !c.is_zero() && h.hom(gens[i], gens[j]) && h.hom(gens[j], gens[k]) && h.hom(gens[i], gens[k]) {
                        comp.insert((i, j, k), c);
                    }
                }
            }
        }
        FinAlgebra { vertices, basis, index, comp }
    }

    /// `k`, `k × ... × k` (`n` copies) and the path algebra of linear `A_n`
    /// with all composites nonzero.
    pub fn product_of_fields(n: usize) -> Self {
        let hom = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        let h = LinCat::new((1..=n).map(|i| i.to_string()).collect(), hom, |_, _, _| Q::one());
        FinAlgebra::from_lincat(&h, &(0..n).collect::<Vec<_>>())
    }

    pub fn linear_path(n: usize) -> Self {
        let hom = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        let h = LinCat::new((1..=n).map(|i| i.to_string()).collect(), hom, |_, _, _| Q::one());
        FinAlgebra::from_lincat(&h, &(0..n).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn has(&self, i: usize, j: usize) -> bool {
        self.index.contains_key(&(i, j))
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> Q {
        self.comp.get(&(i, j, k)).cloned().unwrap_or_else(Q::zero)
    }

    /// Associativity of the structure constants on every basis triple.
    pub fn is_associative(&self) -> bool {
        let n = self.n_vertices();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if !(self.has(a, b) && self.has(b, c) && self.has(c, d)) {
                            continue;
                        }
                        let left = self.c(b, c, d).mul(&self.c(a, b, d));
                        let right = self.c(a, b, c).mul(&self.c(a, c, d));
                        if left != right {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Vertex idempotents are the identity basis elements; they are
    /// orthogonal and sum to the unit exactly when every vertex has its
    /// identity and identities compose as identities.
    pub fn idempotents_ok(&self) -> bool {
        (0..self.n_vertices()).all(|i| {
            self.has(i, i)
                && self.c(i, i, i).is_one()
                && (0..self.n_vertices()).all(|j| !self.has(i, j) || (self.c(i, i, j).is_one() && self.c(i, j, j).is_one()))
        })
    }

    /// Directed: no nonzero maps in both directions between distinct
    /// vertices and no cycles of nonzero maps.
    pub fn is_directed(&self) -> bool {
        let n = self.n_vertices();
        // a topological order exists iff repeatedly removing sources empties
        // the graph of non-identity basis elements
        let mut alive = vec![true; n];
        for _ in 0..n {
            let src = (0..n).find(|&v| alive[v] && !(0..n).any(|u| u != v && alive[u] && self.has(u, v)));
            match src {
                Some(v) => alive[v] = false,
                None => return false,
            }
        }
        true
    }

    /// Arrows: irreducible non-identity basis elements `(i, j)`.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let n = self.n_vertices();
        self.basis
            .iter()
            .copied()
            .filter(|&(i, j)| i != j && !(0..n).any(|k| k != i && k != j && !self.c(i, k, j).is_zero()))
            .collect()
    }

    /// All paths of arrows starting at `i`, as vertex sequences, with the
    /// scalar `λ` such that the composite equals `λ · basis(i, end)` (zero
    /// when the composite vanishes).
    pub fn paths_from(&self, i: usize) -> Vec<(Vec<usize>, Q)> {
        let arrows = self.arrows();
        let mut out = Vec::new();
        let mut stack = vec![(vec![i], Q::one())];
        while let Some((path, lam)) = stack.pop() {
            let last = *path.last().expect("nonempty path");
            for &(a, b) in arrows.iter().filter(|&&(a, _)| a == last) {
                let next = if path.len() == 1 {
                    Q::one()
                } else if lam.is_zero() || !self.has(path[0], b) {
                    Q::zero()
                } else {
                    lam.mul(&self.c(path[0], a, b))
                };
                let mut p = path.clone();
                p.push(b);
                out.push((p.clone(), next.clone()));
                if p.len() <= self.n_vertices() + 1 {
                    stack.push((p, next));
                }
            }
        }
        out.sort();
        out
    }

    pub fn summary(&self) -> GammaSummary {
        let label = |i: usize| self.vertices[i].clone();
        let arrows = self.arrows().into_iter().map(|(i, j)| (label(i), label(j))).collect();
        let mut relations = Vec::new();
        for i in 0..self.n_vertices() {
            for (p, lam) in self.paths_from(i) {
                // minimal zero paths: every proper subpath nonzero
                if p.len() >= 3 && lam.is_zero() {
                    let prefix_ok = self.paths_from(i).iter().any(|(q, l)| *q == p[..p.len() - 1] && !l.is_zero());
                    let suffix_ok = self.paths_from(p[1]).iter().any(|(q, l)| *q == p[1..] && !l.is_zero());
                    if prefix_ok && suffix_ok {
                        relations.push(p.iter().map(|&v| label(v)).collect());
                    }
                }
            }
        }
        GammaSummary {
            dim: self.dim(),
            quiver: QuiverSummary { vertices: self.vertices.clone(), arrows, relations },
        }
    }
}

/// A right `Γ`-module: a space per vertex and, for each non-identity basis
/// element `(i, j)`, a matrix `M_j -> M_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinModule<F: Field> {
    pub dims: Vec<usize>,
    pub action: HashMap<(usize, usize), Mat<F>>,
}

impl<F: Field> FinModule<F> {
    pub fn zero(n: usize) -> Self {
        FinModule { dims: vec![0; n], action: HashMap::new() }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Action of `basis(i, j)`: the identity for `i == j`.
    pub fn act(&self, i: usize, j: usize) -> Mat<F> {
        if i == j {
            return Mat::identity(self.dims[i]);
        }
        self.action.get(&(i, j)).cloned().unwrap_or_else(|| Mat::zeros(self.dims[i], self.dims[j]))
    }

    /// Module axioms: `M(β ∘ α) = M(α) M(β)` for every composable pair of
    /// basis elements, with unlisted composites acting as zero.
    pub fn check(&self, g: &FinAlgebra) -> Result<()>
    where
        F: Reduce,
    {
        for &(i, j) in &g.basis {
            for &(jj, k) in &g.basis {
                if jj != j {
                    continue;
                }
                let lhs = self.act(i, j).mul(&self.act(j, k));
                let rhs = if g.has(i, k) {
                    let c = F::from_q(&g.c(i, j, k)).ok_or_else(|| Error::Unsupported("structure constant not reducible".into()))?;
                    self.act(i, k).scale(&c)
                } else {
                    Mat::zeros(self.dims[i], self.dims[k])
                };
                if lhs != rhs {
                    return Err(Error::Internal(format!("module axiom fails for ({i},{j}) then ({j},{k})")));
                }
            }
        }
        Ok(())
    }
}

/// `F(A) = Hom(-, A)` restricted to `gens`, for a direct sum `a` of objects of
/// `h`, with bases from [`LinCat::positions`].
pub fn module_of<F: Reduce>(h: &LinCat, gens: &[usize], a: &[usize]) -> Result<FinModule<F>> {
    let n = gens.len();
    let dims: Vec<usize> = gens.iter().map(|&g| h.positions(&[g], a).len()).collect();
    let mut action = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !h.hom(gens[i], gens[j]) {
                continue;
            }
            let alpha = h.from_coords(&[gens[i]], &[gens[j]], &[Q::one()]);
            let dom = h.positions(&[gens[j]], a);
            let cols: Vec<Vec<F>> = dom
                .iter()
                .map(|&(t, _)| {
                    let mut phi = h.zero(&[gens[j]], a);
                    phi.coef[(t, 0)] = Q::one();
                    h.coords(&h.compose(&alpha, &phi))
                        .iter()
                        .map(|c| F::from_q(c).ok_or_else(|| Error::Unsupported("coefficient not reducible".into())))
                        .collect::<Result<Vec<F>>>()
                })
                .collect::<Result<_>>()?;
            let m = if cols.is_empty() { Mat::zeros(dims[i], 0) } else { Mat::from_cols(dims[i], &cols) };
            action.insert((i, j), m);
        }
    }
    Ok(FinModule { dims, action })
}

/// Basis of module homomorphisms `M -> N` (families `f_i: M_i -> N_i`
/// intertwining every action matrix), each flattened vertex by vertex,
/// row-major.
pub fn hom_modules<F: Field>(g: &FinAlgebra, m: &FinModule<F>, n: &FinModule<F>) -> Vec<Vec<F>> {
    let nv = g.n_vertices();
    let mut offset = vec![0; nv + 1];
    for i in 0..nv {
        offset[i + 1] = offset[i] + n.dims[i] * m.dims[i];
    }
    let unknowns = offset[nv];
    if unknowns == 0 {
        return Vec::new();
    }
    let var = |i: usize, r: usize, c: usize| offset[i] + r * m.dims[i] + c;
    let mut rows: Vec<Vec<F>> = Vec::new();
    for &(i, j) in g.basis.iter().filter(|&&(i, j)| i != j) {
        // f_i M(α) - N(α) f_j = 0, entrywise (r, c) with r < dim N_i, c < dim M_j
        let (ma, na) = (m.act(i, j), n.act(i, j));
        for r in 0..n.dims[i] {
            for c in 0..m.dims[j] {
                let mut row = vec![F::zero(); unknowns];
                for k in 0..m.dims[i] {
                    let v = &ma[(k, c)];
                    if !v.is_zero() {
                        row[var(i, r, k)] = row[var(i, r, k)].add(v);
                    }
                }
                for k in 0..n.dims[j] {
                    let v = &na[(r, k)];
                    if !v.is_zero() {
                        row[var(j, k, c)] = row[var(j, k, c)].sub(v);
                    }
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return (0..unknowns)
            .map(|u| {
                let mut e = vec![F::zero(); unknowns];
                e[u] = F::one();
                e
            })
            .collect();
    }
    Mat::from_rows(rows).kernel_basis()
}

/// Per-vertex matrices of a flattened homomorphism.
pub fn unflatten<F: Field>(m: &FinModule<F>, n: &FinModule<F>, v: &[F]) -> Vec<Mat<F>> {
    let mut out = Vec::new();
    let mut pos = 0;
    for i in 0..m.dims.len() {
        let (r, c) = (n.dims[i], m.dims[i]);
        let rows = (0..r).map(|a| v[pos + a * c..pos + (a + 1) * c].to_vec()).collect::<Vec<_>>();
        out.push(if r == 0 { Mat::zeros(0, c) } else { Mat::from_rows(rows) });
        pos += r * c;
    }
    out
}

/// Outcome of the heart vs `mod Γ` comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    pub fully_faithful: bool,
    pub dense: bool,
    pub counts: (usize, usize),
    pub prime: u32,
    pub dim_bound: usize,
    pub caveats: Vec<String>,
}

/// Checks that `A ↦ Hom(-, A)|_gens` is fully faithful over the rationals on
/// all pairs of indecomposables of `h`, and dense up to `dim_bound` over
/// `F_prime`.
pub fn verify_equivalence(h: &LinCat, gens: &[usize], prime: u32, dim_bound: Option<usize>) -> Result<Equivalence> {
    let g = FinAlgebra::from_lincat(h, gens);
    let modules: Vec<FinModule<Q>> = (0..h.len()).map(|a| module_of::<Q>(h, gens, &[a])).collect::<Result<_>>()?;
    for m in &modules {
        m.check(&g)?;
    }
    let mut fully_faithful = true;
    for a in 0..h.len() {
        for b in 0..h.len() {
            let hom = hom_modules(&g, &modules[a], &modules[b]);
            let expected = h.hom(a, b) as usize;
            if hom.len() != expected {
                fully_faithful = false;
                continue;
            }
            if expected == 1 {
                // F(basis(a,b)) must be a nonzero homomorphism
                let fb = functor_on_basis(h, gens, a, b, &modules[a], &modules[b]);
                let sol = hom.first().expect("one-dimensional");
                let in_span = Mat::from_cols(fb.len(), std::slice::from_ref(sol)).solve(&fb)?.is_some();
                if fb.iter().all(Field::is_zero) || !in_span {
                    fully_faithful = false;
                }
            }
        }
    }
    let bound = dim_bound.unwrap_or_else(|| modules.iter().map(FinModule::total_dim).max().unwrap_or(0));
    let (dense, found) = match prime {
        2 => dense_over::<2>(h, gens, &g, bound)?,
        3 => dense_over::<3>(h, gens, &g, bound)?,
        5 => dense_over::<5>(h, gens, &g, bound)?,
        7 => dense_over::<7>(h, gens, &g, bound)?,
        p => return Err(Error::Input(format!("unsupported enumeration prime {p}; use 2, 3, 5 or 7"))),
    };
    let caveats = vec![
        format!("density checked over F_{prime} up to total dimension {bound}"),
        "full faithfulness checked over the rationals".into(),
    ];
    Ok(Equivalence { fully_faithful, dense, counts: (h.len(), found), prime, dim_bound: bound, caveats })
}

/// `F(basis(a, b))` flattened: at vertex `i`, `φ ↦ basis(a,b) ∘ φ`.
fn functor_on_basis(h: &LinCat, gens: &[usize], a: usize, b: usize, ma: &FinModule<Q>, mb: &FinModule<Q>) -> Vec<Q> {
    let f = h.from_coords(&[a], &[b], &[Q::one()]);
    let mut out = Vec::new();
    for (i, &gi) in gens.iter().enumerate() {
        let mut m = Mat::zeros(mb.dims[i], ma.dims[i]);
        if ma.dims[i] == 1 && mb.dims[i] == 1 {
            let phi = h.from_coords(&[gi], &[a], &[Q::one()]);
            m[(0, 0)] = h.coords(&h.compose(&phi, &f))[0].clone();
        }
        for r in 0..mb.dims[i] {
            for c in 0..ma.dims[i] {
                out.push(m[(r, c)].clone());
            }
        }
    }
    out
}

fn dense_over<const P: u32>(h: &LinCat, gens: &[usize], g: &FinAlgebra, bound: usize) -> Result<(bool, usize)> {
    let found = enumerate_indec_modules::<P>(g, bound)?;
    let images: Vec<FinModule<Fp<P>>> = (0..h.len()).map(|a| module_of::<Fp<P>>(h, gens, &[a])).collect::<Result<_>>()?;
    let mut dense = true;
    for m in &found {
        let mut hit = false;
        for im in &images {
            if isomorphic(g, m, im)? {
                hit = true;
                break;
            }
        }
        dense &= hit;
    }
    Ok((dense, found.len()))
}
