//! Exhaustive enumeration of modules over a small prime field.

use std::collections::HashMap;

use super::{hom_modules, unflatten, FinAlgebra, FinModule, Reduce};
use crate::error::{Error, Result};
use crate::exactfield::{Field, Fp, Mat};

const MAX_CANDIDATES: u64 = 1 << 22;
const MAX_ENUM: u32 = 16;

/// Dimension vectors with total in `1..=bound`.
fn dim_vectors(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            if cur.iter().sum::<usize>() > 0 {
                out.push(cur.clone());
            }
            return;
        }
        for d in 0..=left {
            cur[i] = d;
            rec(i + 1, left - d, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out.sort_by_key(|d| (d.iter().sum::<usize>(), d.clone()));
    out
}

/// Every representation of the arrows of `g` over `F_P` with dimension vector
/// of total at most `bound` that satisfies the relations, as modules.
pub fn enumerate_candidates<const P: u32>(g: &FinAlgebra, bound: usize) -> Result<Vec<FinModule<Fp<P>>>> {
    if !g.is_directed() {
        return Err(Error::Unsupported("module enumeration needs a directed algebra".into()));
    }
    let arrows = g.arrows();
    let paths: Vec<Vec<(Vec<usize>, Fp<P>)>> = (0..g.n_vertices())
        .map(|i| {
            g.paths_from(i)
                .into_iter()
                .map(|(p, lam)| Fp::<P>::from_q(&lam).map(|l| (p, l)).ok_or_else(|| Error::Unsupported("relation scalar not reducible".into())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for dims in dim_vectors(g.n_vertices(), bound) {
        let entries: Vec<usize> = arrows.iter().map(|&(i, j)| dims[i] * dims[j]).collect();
        let total: usize = entries.iter().sum();
        if (P as u64).checked_pow(total as u32).is_none_or(|c| c > MAX_CANDIDATES) {
            return Err(Error::Unsupported(format!("too many candidate representations for dimension vector {dims:?}")));
        }
        let count = (P as u64).pow(total as u32);
        for code in 0..count {
            let mut c = code;
            let mut mats = HashMap::new();
            for (a, &(i, j)) in arrows.iter().enumerate() {
                let mut m = Mat::zeros(dims[i], dims[j]);
                for r in 0..dims[i] {
                    for s in 0..dims[j] {
                        m[(r, s)] = Fp::<P>::new((c % P as u64) as i64);
                        c /= P as u64;
                    }
                }
                let _ = a;
                mats.insert((i, j), m);
            }
            if let Some(m) = assemble(g, &paths, &dims, &mats) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// Extends arrow matrices to every basis element along paths, rejecting
/// assignments that violate a relation.
fn assemble<const P: u32>(
    g: &FinAlgebra,
    paths: &[Vec<(Vec<usize>, Fp<P>)>],
    dims: &[usize],
    arrows: &HashMap<(usize, usize), Mat<Fp<P>>>,
) -> Option<FinModule<Fp<P>>> {
    let mut action: HashMap<(usize, usize), Mat<Fp<P>>> = HashMap::new();
    for (i, ps) in paths.iter().enumerate() {
        for (p, lam) in ps {
            // contravariant: M(α_k ∘ ... ∘ α_1) = M(α_1) ... M(α_k)
            let mut m = Mat::identity(dims[i]);
            for w in p.windows(2) {
                m = m.mul(&arrows[&(w[0], w[1])]);
            }
            let end = *p.last().expect("nonempty");
            if lam.is_zero() {
                if !m.is_zero() {
                    return None;
                }
                continue;
            }
            let normalized = m.scale(&lam.inv().expect("nonzero"));
            match action.get(&(i, end)) {
                Some(prev) if *prev != normalized => return None,
                Some(_) => {}
                None => {
                    action.insert((i, end), normalized);
                }
            }
        }
    }
    let module = FinModule { dims: dims.to_vec(), action };
    module.check(g).ok()?;
    Some(module)
}

/// Enumerates elements of a space given by a basis, over `F_P`.
fn span_elements<const P: u32>(basis: &[Vec<Fp<P>>], len: usize) -> Result<Vec<Vec<Fp<P>>>> {
    if basis.len() as u32 > MAX_ENUM {
        return Err(Error::Unsupported("homomorphism space too large to enumerate".into()));
    }
    let count = (P as u64).pow(basis.len() as u32);
    Ok((0..count)
        .map(|code| {
            let mut c = code;
            let mut v = vec![Fp::<P>::zero(); len];
            for b in basis {
                let coef = Fp::<P>::new((c % P as u64) as i64);
                c /= P as u64;
                if !coef.is_zero() {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = x.add(&coef.mul(y));
                    }
                }
            }
            v
        })
        .collect())
}

/// Nonzero and without nontrivial idempotent endomorphisms.
pub fn is_indecomposable<const P: u32>(g: &FinAlgebra, m: &FinModule<Fp<P>>) -> Result<bool> {
    if m.total_dim() == 0 {
        return Ok(false);
    }
    let basis = hom_modules(g, m, m);
    for v in span_elements(&basis, basis.first().map_or(0, Vec::len))? {
        let e = unflatten(m, m, &v);
        let sq: Vec<Mat<Fp<P>>> = e.iter().map(|x| x.mul(x)).collect();
        let zero = e.iter().all(Mat::is_zero);
        let one = e.iter().enumerate().all(|(i, x)| *x == Mat::identity(m.dims[i]));
        if sq == e && !zero && !one {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether some homomorphism `M -> N` is invertible at every vertex.
pub fn isomorphic<const P: u32>(g: &FinAlgebra, m: &FinModule<Fp<P>>, n: &FinModule<Fp<P>>) -> Result<bool> {
    if m.dims != n.dims {
        return Ok(false);
    }
    if m.total_dim() == 0 {
        return Ok(true);
    }
    let basis = hom_modules(g, m, n);
    for v in span_elements(&basis, basis.first().map_or(0, Vec::len))? {
        if unflatten(m, n, &v).iter().all(|x| x.rank() == x.rows()) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Keeps the first representative of each isomorphism class.
pub fn dedup_iso<const P: u32>(g: &FinAlgebra, ms: Vec<FinModule<Fp<P>>>) -> Result<Vec<FinModule<Fp<P>>>> {
    let mut reps: Vec<FinModule<Fp<P>>> = Vec::new();
    for m in ms {
        let mut seen = false;
        for r in &reps {
            if isomorphic(g, &m, r)? {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(m);
        }
    }
    Ok(reps)
}

/// Indecomposable modules over `F_P` up to isomorphism with total dimension
/// at most `bound`.
pub fn enumerate_indec_modules<const P: u32>(g: &FinAlgebra, bound: usize) -> Result<Vec<FinModule<Fp<P>>>> {
    let mut indecs = Vec::new();
    for m in enumerate_candidates::<P>(g, bound)? {
        if is_indecomposable(g, &m)? {
            indecs.push(m);
        }
    }
    dedup_iso(g, indecs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_counts() {
        let k = FinAlgebra::product_of_fields(1);
        assert_eq!(enumerate_indec_modules::<2>(&k, 2).unwrap().len(), 1);
        let k2 = FinAlgebra::product_of_fields(2);
        assert_eq!(enumerate_indec_modules::<2>(&k2, 2).unwrap().len(), 2);
        let a2 = FinAlgebra::linear_path(2);
        assert_eq!(enumerate_indec_modules::<2>(&a2, 2).unwrap().len(), 3);
        let a3 = FinAlgebra::linear_path(3);
        assert_eq!(enumerate_indec_modules::<2>(&a3, 3).unwrap().len(), 6);
        assert_eq!(enumerate_indec_modules::<3>(&a3, 3).unwrap().len(), 6);
    }
}
