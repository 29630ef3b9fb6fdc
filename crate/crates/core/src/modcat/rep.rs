//! Concrete representations of the linear quiver and their morphisms.

use super::{Algebra, Interval, Obj};
use crate::error::{Error, Result};
use crate::exactfield::{Field, Mat, Q};

/// A representation of `1 <- 2 <- ... <- n`.
///
/// `arrows[j]` is the map from vertex `j+2` to vertex `j+1` (1-based), so it
/// has shape `dims[j] x dims[j+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep<F = Q> {
    pub dims: Vec<usize>,
    pub arrows: Vec<Mat<F>>,
}

/// Vertexwise linear maps between two representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMor<F = Q> {
    pub maps: Vec<Mat<F>>,
}

impl<F: Field> Rep<F> {
    pub fn zero(n: usize) -> Self {
        Rep { dims: vec![0; n], arrows: (1..n).map(|_| Mat::zeros(0, 0)).collect() }
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    /// Realizes a list of interval summands with the standard basis: at vertex
    /// `v` the basis is the summands containing `v`, in list order.
    pub fn of_list(n: usize, summands: &[Interval]) -> Self {
        let at: Vec<Vec<usize>> = (1..=n)
            .map(|v| (0..summands.len()).filter(|&s| summands[s].contains(v)).collect())
            .collect();
        let dims = at.iter().map(Vec::len).collect();
        let arrows = (0..n.saturating_sub(1))
            .map(|j| {
                let (lo, hi) = (&at[j], &at[j + 1]);
                let mut m = Mat::zeros(lo.len(), hi.len());
                for (c, s) in hi.iter().enumerate() {
                    if let Some(r) = lo.iter().position(|x| x == s) {
                        m[(r, c)] = F::one();
                    }
                }
                m
            })
            .collect();
        Rep { dims, arrows }
    }

    pub fn of_obj(n: usize, obj: &Obj) -> Self {
        Self::of_list(n, &obj.expand())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Composite map from vertex `y` down to vertex `x` (`x <= y`, 1-based).
    pub fn composite(&self, x: usize, y: usize) -> Mat<F> {
        let mut m = Mat::identity(self.dims[y - 1]);
        for v in (x..y).rev() {
            m = self.arrows[v - 1].mul(&m);
        }
        m
    }

    fn rank_between(&self, x: usize, y: usize) -> usize {
        if x == 0 || y > self.n() {
            0
        } else {
            self.composite(x, y).rank()
        }
    }

    /// Checks the zero relations of `alg`: every path longer than the cap
    /// at its start vertex acts as zero.
    pub fn check_relations(&self, alg: &Algebra) -> Result<()> {
        if self.n() != alg.n() {
            return Err(Error::Input(format!("representation has {} vertices, algebra has {}", self.n(), alg.n())));
        }
        for (j, a) in self.arrows.iter().enumerate() {
            if a.rows() != self.dims[j] || a.cols() != self.dims[j + 1] {
                return Err(Error::Input(format!("arrow {} has the wrong shape", j + 1)));
            }
        }
        for y in 1..=self.n() {
            let cap = alg.caps()[y - 1];
            if y > cap {
                let x = y - cap;
                if !self.composite(x, y).is_zero() {
                    return Err(Error::Input(format!("relation violated: path {y} -> {x} acts nonzero")));
                }
            }
        }
        Ok(())
    }

    /// Krull–Schmidt decomposition by rank inclusion–exclusion on composite
    /// arrow maps: the multiplicity of `[a,b]` is
    /// `r(a,b) - r(a-1,b) - r(a,b+1) + r(a-1,b+1)`.
    pub fn decompose(&self, alg: &Algebra) -> Result<Obj> {
        self.check_relations(alg)?;
        let n = self.n();
        let mut obj = Obj::zero();
        for a in 1..=n {
            for b in a..=n {
                let m = self.rank_between(a, b) as isize - self.rank_between(a - 1, b) as isize
                    - self.rank_between(a, b + 1) as isize
                    + self.rank_between(a - 1, b + 1) as isize;
                if m < 0 {
                    return Err(Error::Internal("negative barcode multiplicity".into()));
                }
                if m > 0 {
                    let iv = Interval::new(a, b);
                    alg.check(&iv)?;
                    obj.add(iv, m as usize);
                }
            }
        }
        Ok(obj)
    }

    /// Kernel of `f: self -> target` with its inclusion.
    pub fn kernel(&self, f: &RepMor<F>) -> (Rep<F>, RepMor<F>) {
        let bases: Vec<Mat<F>> =
            (0..self.n()).map(|v| Mat::from_cols(self.dims[v], &f.maps[v].kernel_basis())).collect();
        let arrows = (0..self.n().saturating_sub(1))
            .map(|j| {
                let image = self.arrows[j].mul(&bases[j + 1]);
                coordinates(&bases[j], &image)
            })
            .collect();
        let dims = bases.iter().map(Mat::cols).collect();
        (Rep { dims, arrows }, RepMor { maps: bases })
    }

    /// Cokernel of `f: source -> self` with its projection and a vertexwise
    /// linear section of the projection (not a morphism of representations).
    pub fn cokernel(&self, f: &RepMor<F>) -> (Rep<F>, RepMor<F>, Vec<Mat<F>>) {
        let mut complements = Vec::with_capacity(self.n());
        let mut projections = Vec::with_capacity(self.n());
        for v in 0..self.n() {
            let d = self.dims[v];
            let img = &f.maps[v];
            let img = img.select_cols(&img.independent_cols());
            let full = img.hstack(&Mat::identity(d));
            let keep = full.independent_cols();
            let r = img.cols();
            let comp: Vec<usize> = keep.iter().filter(|&&c| c >= r).map(|&c| c - r).collect();
            let basis = full.select_cols(&keep);
            // coordinates in [image | complement], keep the complement part
            let coords = coordinates(&basis, &Mat::identity(d));
            let rows: Vec<usize> = (r..basis.cols()).collect();
            projections.push(coords.select_rows(&rows));
            complements.push(Mat::identity(d).select_cols(&comp));
        }
        let arrows = (0..self.n().saturating_sub(1))
            .map(|j| projections[j].mul(&self.arrows[j]).mul(&complements[j + 1]))
            .collect();
        let dims = complements.iter().map(Mat::cols).collect();
        (Rep { dims, arrows }, RepMor { maps: projections }, complements)
    }

    /// Representation of `self ⊕ other`.
    pub fn direct_sum(&self, other: &Rep<F>) -> Rep<F> {
        Rep {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            arrows: self.arrows.iter().zip(&other.arrows).map(|(a, b)| a.block_diag(b)).collect(),
        }
    }

    /// Basis of `Hom(self, target)` by brute-force solving the commutativity
    /// equations `target.arrow * f_{v+1} = f_v * self.arrow`.
    pub fn hom_basis(&self, target: &Rep<F>) -> Vec<RepMor<F>> {
        let n = self.n();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut total = 0;
        for v in 0..n {
            offsets.push(total);
            total += target.dims[v] * self.dims[v];
        }
        let var = |v: usize, r: usize, c: usize| offsets[v] + r * self.dims[v] + c;
        let mut eqs: Vec<Vec<F>> = Vec::new();
        for j in 0..n.saturating_sub(1) {
            let (sa, ta) = (&self.arrows[j], &target.arrows[j]);
            for r in 0..target.dims[j] {
                for c in 0..self.dims[j + 1] {
                    let mut row = vec![F::zero(); total];
                    for k in 0..target.dims[j + 1] {
                        let x = &ta[(r, k)];
                        if !x.is_zero() {
                            let i = var(j + 1, k, c);
                            row[i] = row[i].add(x);
                        }
                    }
                    for k in 0..self.dims[j] {
                        let x = &sa[(k, c)];
                        if !x.is_zero() {
                            let i = var(j, r, k);
                            row[i] = row[i].sub(x);
                        }
                    }
                    eqs.push(row);
                }
            }
        }
        let sols = if eqs.is_empty() {
            (0..total)
                .map(|i| {
                    let mut e = vec![F::zero(); total];
                    e[i] = F::one();
                    e
                })
                .collect()
        } else {
            Mat::from_rows(eqs).kernel_basis()
        };
        sols.into_iter()
            .map(|s| RepMor {
                maps: (0..n)
                    .map(|v| {
                        let mut m = Mat::zeros(target.dims[v], self.dims[v]);
                        for r in 0..target.dims[v] {
                            for c in 0..self.dims[v] {
                                m[(r, c)] = s[var(v, r, c)].clone();
                            }
                        }
                        m
                    })
                    .collect(),
            })
            .collect()
    }
}

impl<F: Field> RepMor<F> {
    pub fn zero(source: &Rep<F>, target: &Rep<F>) -> Self {
        RepMor { maps: source.dims.iter().zip(&target.dims).map(|(&s, &t)| Mat::zeros(t, s)).collect() }
    }

    pub fn identity(r: &Rep<F>) -> Self {
        RepMor { maps: r.dims.iter().map(|&d| Mat::identity(d)).collect() }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RepMor<F>) -> RepMor<F> {
        RepMor { maps: self.maps.iter().zip(&other.maps).map(|(f, g)| g.mul(f)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Mat::is_zero)
    }

    pub fn commutes(&self, source: &Rep<F>, target: &Rep<F>) -> bool {
        (0..source.n().saturating_sub(1))
            .all(|j| target.arrows[j].mul(&self.maps[j + 1]) == self.maps[j].mul(&source.arrows[j]))
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    /// Flattened entries, for linear-algebra over spaces of morphisms.
    pub fn flatten(&self) -> Vec<F> {
        self.maps.iter().flat_map(|m| (0..m.rows()).flat_map(move |r| m.row(r).to_vec())).collect()
    }
}

/// Solves `basis * X = vecs` column by column; `basis` must have full
/// column rank and contain the span of `vecs`.
pub fn coordinates<F: Field>(basis: &Mat<F>, vecs: &Mat<F>) -> Mat<F> {
    let cols: Vec<Vec<F>> = (0..vecs.cols())
        .map(|j| {
            basis
                .solve(&vecs.col(j))
                .expect("shapes agree")
                .expect("vector lies in the span of the basis")
        })
        .collect();
    Mat::from_cols(basis.cols(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompose_examples() {
        let alg = Algebra::hereditary(3);
        let o: Obj = [Interval::new(1, 3), Interval::new(2, 2)].into_iter().collect();
        assert_eq!(Rep::<Q>::of_obj(3, &o).decompose(&alg).unwrap(), o);
        assert!(Rep::<Q>::zero(3).decompose(&alg).unwrap().is_zero());
        let n = 4;
        let full = Rep::<Q> { dims: vec![1; n], arrows: (1..n).map(|_| Mat::identity(1)).collect() };
        assert_eq!(full.decompose(&Algebra::hereditary(n)).unwrap(), Obj::single(Interval::new(1, n)));
    }

    #[test]
    fn decompose_rejects_relation_violation() {
        let alg = Algebra::uniform(3, 2).unwrap();
        let r = Rep::<Q>::of_list(3, &[Interval::new(1, 3)]);
        assert!(matches!(r.decompose(&alg), Err(Error::Input(_))));
    }

    #[test]
    fn brute_force_hom_examples() {
        let dim = |x: Interval, y: Interval| Rep::<Q>::of_list(2, &[x]).hom_basis(&Rep::of_list(2, &[y])).len();
        assert_eq!(dim(Interval::new(1, 2), Interval::simple(2)), 1);
        assert_eq!(dim(Interval::simple(2), Interval::new(1, 2)), 0);
        assert_eq!(dim(Interval::new(1, 2), Interval::new(1, 2)), 1);
    }

    #[test]
    fn kernel_and_cokernel_of_cover() {
        // M[1,2] -> S2 has kernel S1 and zero cokernel
        let n = 2;
        let p = Rep::<Q>::of_list(n, &[Interval::new(1, 2)]);
        let s = Rep::<Q>::of_list(n, &[Interval::simple(2)]);
        let f = p.hom_basis(&s).pop().unwrap();
        let (k, inc) = p.kernel(&f);
        assert!(inc.commutes(&k, &p));
        assert_eq!(k.decompose(&Algebra::hereditary(2)).unwrap(), Obj::single(Interval::simple(1)));
        let (c, _, _) = s.cokernel(&f);
        assert_eq!(c.total_dim(), 0);
    }
}
