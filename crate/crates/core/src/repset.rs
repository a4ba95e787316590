//! Representative sets for linear matroids.
//!
//! Both forms map each candidate to a vector whose linear functionals detect
//! "extends X", then keep a greedy basis of those vectors in input order.

use crate::error::{Error, Result};
use crate::ffield::{kronecker_column, kronecker_dim, IncrementalBasis, Matrix, PrimeField};
use crate::matroids::LayeredMatroid;

/// Largest general-form set size accepted.
pub const MAX_GENERAL_S: usize = 3;

/// Product form: each candidate picks one column per layer, given as column
/// indices in layer order. Returns the indices of the surviving candidates.
///
/// Every candidate must be independent in `m`. The tensor dimension is
/// `∏ rows(layer)`; above `dim_limit` the call is refused.
pub fn representative_set_product(
    m: &LayeredMatroid,
    candidates: &[Vec<usize>],
    dim_limit: usize,
) -> Result<Vec<usize>> {
    let layers = m.layers();
    let dim = kronecker_dim(&layers.iter().map(|l| l.matrix().rows()).collect::<Vec<_>>())?;
    if dim > dim_limit {
        return Err(Error::SizeLimit(format!(
            "tensor dimension {dim} exceeds limit {dim_limit}"
        )));
    }
    let columns: Vec<Vec<Vec<u64>>> = layers
        .iter()
        .map(|l| (0..l.matrix().cols()).map(|j| l.matrix().column(j)).collect())
        .collect();
    let mut basis = IncrementalBasis::new(m.field(), dim);
    let mut kept = Vec::new();
    for (idx, tuple) in candidates.iter().enumerate() {
        if tuple.len() != layers.len() {
            return Err(Error::input(format!(
                "candidate {idx} has {} entries for {} layers",
                tuple.len(),
                layers.len()
            )));
        }
        let mut parts = Vec::with_capacity(tuple.len());
        for (i, &col) in tuple.iter().enumerate() {
            let c = columns[i]
                .get(col)
                .ok_or_else(|| Error::input(format!("candidate {idx}: no column {col} in layer {i}")))?;
            if c.iter().all(|&x| x == 0) {
                return Err(Error::input(format!("candidate {idx} is dependent in layer {i}")));
            }
            parts.push(c.as_slice());
        }
        if basis.insert(kronecker_column(m.field(), &parts)?) {
            kept.push(idx);
        }
    }
    let bound: usize = m.ranks().iter().product();
    assert!(kept.len() <= bound, "product representative set exceeds ∏ r_i");
    Ok(kept)
}

fn determinant(field: PrimeField, mut a: Vec<Vec<u64>>) -> u64 {
    let n = a.len();
    let mut det = 1;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(piv, col);
            det = field.neg(det);
        }
        det = field.mul(det, a[col][col]);
        let inv = field.inv(a[col][col]);
        for r in col + 1..n {
            let q = field.mul(a[r][col], inv);
            if q == 0 {
                continue;
            }
            for j in col..n {
                let y = field.mul(q, a[col][j]);
                a[r][j] = field.sub(a[r][j], y);
            }
        }
    }
    det
}

fn combinations(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    fn go(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    go(0, n, s, &mut cur, &mut out);
    out
}

/// `C(n, s)`, saturating.
pub fn binomial(n: usize, s: usize) -> usize {
    if s > n {
        return 0;
    }
    (0..s).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Exterior-power vector of the columns `cols` of `a`: all `s × s` minors,
/// row subsets in lexicographic order.
pub fn wedge_vector(a: &Matrix, cols: &[usize]) -> Vec<u64> {
    combinations(a.rows(), cols.len())
        .into_iter()
        .map(|rows| {
            let minor = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| a.get(i, j)).collect())
                .collect();
            determinant(a.field(), minor)
        })
        .collect()
}

/// General form over the column matroid of `a` for candidate `s`-sets.
/// Returns the indices of the surviving candidates.
pub fn representative_set_general(a: &Matrix, candidates: &[Vec<usize>], s: usize) -> Result<Vec<usize>> {
    if s > MAX_GENERAL_S {
        return Err(Error::Refused(format!("set size {s} above {MAX_GENERAL_S}")));
    }
    let mut basis = IncrementalBasis::new(a.field(), binomial(a.rows(), s));
    let mut kept = Vec::new();
    for (idx, y) in candidates.iter().enumerate() {
        if y.len() != s {
            return Err(Error::input(format!("candidate {idx} has size {} not {s}", y.len())));
        }
        if y.iter().any(|&j| j >= a.cols()) {
            return Err(Error::input(format!("candidate {idx} names a missing column")));
        }
        let w = wedge_vector(a, y);
        if w.iter().all(|&x| x == 0) {
            return Err(Error::input(format!("candidate {idx} is dependent")));
        }
        if basis.insert(w) {
            kept.push(idx);
        }
    }
    assert!(
        kept.len() <= binomial(a.rank(), s),
        "general representative set exceeds C(rank, s)"
    );
    Ok(kept)
}
