//! Finite-field representability search.
//!
//! Backtracking construction of a matrix over GF(q) whose column matroid
//! equals a given matroid. The search is canonical and complete: the
//! lexicographically least basis is pinned to identity columns (row
//! operations), every other column is scaled so its first nonzero entry is
//! 1 (column scaling), and remaining freedom is enumerated exhaustively.
//! "Not representable" is therefore only reported for completed searches;
//! running out of budget is a distinct error.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{k_subsets, Subset};

/// Default node budget for the column search.
pub const DEFAULT_REP_BUDGET: u64 = 50_000_000;

/// Arithmetic tables for GF(q), q ∈ {2, 3, 4, 5, 7, 8, 9}. Non-prime
/// orders are built as polynomial quotient rings over the prime subfield.
#[derive(Debug, Clone)]
pub struct GfField {
    pub q: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl GfField {
    pub fn new(q: u32) -> Result<GfField> {
        let (p, k, reduction): (u32, u32, &[u8]) = match q {
            2 | 3 | 5 | 7 => (q, 1, &[]),
            4 => (2, 2, &[1, 1]),    // x^2 = x + 1
            8 => (2, 3, &[1, 1, 0]), // x^3 = x + 1
            9 => (3, 2, &[2, 0]),    // x^2 = 2  (i.e. x^2 + 1 = 0)
            _ => return Err(Error::UnsupportedField(q)),
        };
        // elements are base-p digit strings of length k, read as polynomials
        let digits = |v: u32| -> Vec<u8> {
            let mut out = vec![0u8; k as usize];
            let mut v = v;
            for d in out.iter_mut() {
                *d = (v % p) as u8;
                v /= p;
            }
            out
        };
        let value = |ds: &[u8]| -> u32 {
            ds.iter()
                .rev()
                .fold(0u32, |acc, &d| acc * p + u32::from(d))
        };
        let mut add = vec![0u8; (q * q) as usize];
        let mut mul = vec![0u8; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                let da = digits(a);
                let db = digits(b);
                let sum: Vec<u8> = da
                    .iter()
                    .zip(&db)
                    .map(|(&x, &y)| ((u32::from(x) + u32::from(y)) % p) as u8)
                    .collect();
                add[(a * q + b) as usize] = value(&sum) as u8;
                // schoolbook polynomial product, reduced degree-by-degree
                let mut prod = vec![0u32; (2 * k - 1) as usize];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] += u32::from(x) * u32::from(y);
                    }
                }
                for d in (k..2 * k - 1).rev() {
                    let c = prod[d as usize] % p;
                    prod[d as usize] = 0;
                    for (off, &r) in reduction.iter().enumerate() {
                        prod[(d - k) as usize + off] += c * u32::from(r);
                    }
                }
                let folded: Vec<u8> = prod[..k as usize].iter().map(|&c| (c % p) as u8).collect();
                mul[(a * q + b) as usize] = value(&folded) as u8;
            }
        }
        let mut inv = vec![0u8; q as usize];
        for a in 1..q {
            let found = (1..q).find(|&b| mul[(a * q + b) as usize] == 1);
            inv[a as usize] = found.expect("every nonzero element has an inverse") as u8;
        }
        Ok(GfField { q, add, mul, inv })
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[(u32::from(a) * self.q + u32::from(b)) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[(u32::from(a) * self.q + u32::from(b)) as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        (1..self.q as u8)
            .find(|&b| self.add(a, b) == 0)
            .unwrap_or(0)
    }
}

/// A representation witness: one column per ground-set element, in the
/// matroid's storage order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfMatrix {
    pub q: u32,
    pub rows: usize,
    pub labels: Vec<String>,
    pub columns: Vec<Vec<u8>>,
}

/// Rank of a set of columns by Gaussian elimination over GF(q).
fn columns_rank(field: &GfField, rows: usize, cols: &[&[u8]]) -> usize {
    let mut work: Vec<Vec<u8>> = cols.iter().map(|c| c.to_vec()).collect();
    let mut rank = 0usize;
    for row in 0..rows {
        let Some(pivot) = (rank..work.len()).find(|&j| work[j][row] != 0) else {
            continue;
        };
        work.swap(rank, pivot);
        let scale = field.inv(work[rank][row]);
        for r in 0..rows {
            work[rank][r] = field.mul(work[rank][r], scale);
        }
        for j in 0..work.len() {
            if j != rank && work[j][row] != 0 {
                let factor = field.neg(work[j][row]);
                for r in 0..rows {
                    let adj = field.mul(factor, work[rank][r]);
                    work[j][r] = field.add(work[j][r], adj);
                }
            }
        }
        rank += 1;
        if rank == work.len() {
            break;
        }
    }
    rank
}

/// Does `w` represent `m`: every r-subset of columns is independent over
/// GF(q) exactly when it is a basis of `m`?
pub fn verify_representation(m: &Matroid, w: &GfMatrix) -> Result<bool> {
    if w.rows != m.rank() {
        return Err(Error::DimensionMismatch(format!(
            "witness has {} rows, matroid has rank {}",
            w.rows,
            m.rank()
        )));
    }
    if w.labels != m.ground_set() || w.columns.len() != m.size() {
        return Err(Error::DimensionMismatch(
            "witness columns do not match the ground set".into(),
        ));
    }
    if w.columns.iter().any(|c| c.len() != w.rows) {
        return Err(Error::DimensionMismatch("ragged witness columns".into()));
    }
    let field = GfField::new(w.q)?;
    if w.columns
        .iter()
        .any(|c| c.iter().any(|&e| u32::from(e) >= field.q))
    {
        return Err(Error::DimensionMismatch("entry out of field range".into()));
    }
    let r = m.rank();
    for x in k_subsets(m.size(), r) {
        let cols: Vec<&[u8]> = x.iter().map(|i| w.columns[i].as_slice()).collect();
        let independent = columns_rank(&field, r, &cols) == r;
        if independent != m.is_basis(x) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive canonical search for a GF(q) representation of `m`, with the
/// default budget.
pub fn is_representable_gf(m: &Matroid, q: u32) -> Result<Option<GfMatrix>> {
    is_representable_gf_budgeted(m, q, DEFAULT_REP_BUDGET)
}

/// Budgeted search. Returns the first witness in canonical column order,
/// `None` after a completed exhaustive search, or `BudgetExceeded`.
pub fn is_representable_gf_budgeted(
    m: &Matroid,
    q: u32,
    budget: u64,
) -> Result<Option<GfMatrix>> {
    let field = GfField::new(q)?;
    let r = m.rank();
    let n = m.size();
    if r == 0 {
        // all elements are loops: the all-zero 0 × n matrix
        let w = GfMatrix {
            q,
            rows: 0,
            labels: m.ground_set().to_vec(),
            columns: vec![Vec::new(); n],
        };
        return Ok(Some(w));
    }
    let first_basis = m.bases()[0]; // lexicographically least in mask order
    let mut columns: Vec<Option<Vec<u8>>> = vec![None; n];
    for (row, i) in first_basis.iter().enumerate() {
        let mut col = vec![0u8; r];
        col[row] = 1;
        columns[i] = Some(col);
    }
    let free: Vec<usize> = (0..n).filter(|i| !first_basis.contains(*i)).collect();

    // candidate columns: zero for loops, otherwise nonzero vectors with the
    // first nonzero entry scaled to 1, in ascending lexicographic order
    let mut nonzero_candidates: Vec<Vec<u8>> = Vec::new();
    let mut stack = vec![vec![]];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == r {
            if prefix.iter().any(|&e| e != 0)
                && prefix[prefix.iter().position(|&e| e != 0).unwrap()] == 1
            {
                nonzero_candidates.push(prefix);
            }
            continue;
        }
        for e in (0..q as u8).rev() {
            let mut next = prefix.clone();
            next.push(e);
            stack.push(next);
        }
    }

    let mut nodes = 0u64;
    let ok = assign_columns(
        m,
        &field,
        r,
        &free,
        0,
        &mut columns,
        &nonzero_candidates,
        budget,
        &mut nodes,
    )?;
    if !ok {
        return Ok(None);
    }
    let w = GfMatrix {
        q,
        rows: r,
        labels: m.ground_set().to_vec(),
        columns: columns.into_iter().map(Option::unwrap).collect(),
    };
    debug_assert_eq!(verify_representation(m, &w), Ok(true));
    Ok(Some(w))
}

#[allow(clippy::too_many_arguments)]
fn assign_columns(
    m: &Matroid,
    field: &GfField,
    r: usize,
    free: &[usize],
    depth: usize,
    columns: &mut Vec<Option<Vec<u8>>>,
    nonzero_candidates: &[Vec<u8>],
    budget: u64,
    nodes: &mut u64,
) -> Result<bool> {
    if depth == free.len() {
        return Ok(true);
    }
    let elem = free[depth];
    let is_loop = m.is_loop(elem);
    let zero = vec![0u8; r];
    let candidates: &[Vec<u8>] = if is_loop {
        std::slice::from_ref(&zero)
    } else {
        nonzero_candidates
    };
    for cand in candidates {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded(*nodes));
        }
        columns[elem] = Some(cand.clone());
        if consistent_so_far(m, field, r, elem, columns) {
            if assign_columns(
                m,
                field,
                r,
                free,
                depth + 1,
                columns,
                nonzero_candidates,
                budget,
                nodes,
            )? {
                return Ok(true);
            }
        }
        columns[elem] = None;
    }
    Ok(false)
}

/// Every r-subset of assigned columns through `elem` must agree with basis
/// membership.
fn consistent_so_far(
    m: &Matroid,
    field: &GfField,
    r: usize,
    elem: usize,
    columns: &[Option<Vec<u8>>],
) -> bool {
    let assigned: Vec<usize> = (0..columns.len())
        .filter(|&i| i != elem && columns[i].is_some())
        .collect();
    if assigned.len() + 1 < r {
        return true;
    }
    for rest in crate::subset::k_subsets(assigned.len(), r - 1) {
        let x = Subset::from_indices(rest.iter().map(|i| assigned[i])).with(elem);
        let cols: Vec<&[u8]> = x
            .iter()
            .map(|i| columns[i].as_ref().unwrap().as_slice())
            .collect();
        let independent = columns_rank(field, r, &cols) == r;
        if independent != m.is_basis(x) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            let f = GfField::new(q).unwrap();
            for a in 0..q as u8 {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.mul(a, 0), 0);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q as u8 {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q as u8 {
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                        assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
        assert!(matches!(GfField::new(6), Err(Error::UnsupportedField(6))));
    }

    #[test]
    fn u23_gf2_witness_verifies() {
        let m = catalog::uniform(2, 3).unwrap();
        let w = GfMatrix {
            q: 2,
            rows: 2,
            labels: m.ground_set().to_vec(),
            columns: vec![vec![1, 0], vec![0, 1], vec![1, 1]],
        };
        assert_eq!(verify_representation(&m, &w), Ok(true));
    }

    #[test]
    fn u24_not_representable_over_gf2() {
        let m = catalog::uniform(2, 4).unwrap();
        assert_eq!(is_representable_gf(&m, 2).unwrap(), None);
        // and any GF(2) matrix fails verification
        let w = GfMatrix {
            q: 2,
            rows: 2,
            labels: m.ground_set().to_vec(),
            columns: vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 1]],
        };
        assert_eq!(verify_representation(&m, &w), Ok(false));
    }

    #[test]
    fn fano_gf2_witness_found_and_verified() {
        let m = catalog::fano().unwrap();
        let w = is_representable_gf(&m, 2).unwrap().expect("Fano is binary");
        assert_eq!(verify_representation(&m, &w), Ok(true));
    }

    #[test]
    fn fano_not_representable_over_gf3() {
        let m = catalog::fano().unwrap();
        assert_eq!(is_representable_gf(&m, 3).unwrap(), None);
    }

    #[test]
    fn non_fano_gf2_vs_gf3() {
        let m = catalog::non_fano().unwrap();
        assert_eq!(is_representable_gf(&m, 2).unwrap(), None);
        assert!(is_representable_gf(&m, 3).unwrap().is_some());
    }

    #[test]
    fn uniform_line_thresholds() {
        // U_{2,q+1} is GF(q)-representable, U_{2,q+2} is not
        for q in [2u32, 3, 4, 5] {
            let yes = catalog::uniform(2, q as usize + 1).unwrap();
            let no = catalog::uniform(2, q as usize + 2).unwrap();
            assert!(is_representable_gf(&yes, q).unwrap().is_some(), "q={q}");
            assert!(is_representable_gf(&no, q).unwrap().is_none(), "q={q}");
        }
    }

    #[test]
    fn rank_zero_and_loops() {
        let m = Matroid::from_bases(None, ["x", "l"], vec![vec!["x"]]).unwrap();
        let w = is_representable_gf(&m, 2).unwrap().unwrap();
        assert_eq!(w.columns[1], vec![0]); // the loop is the zero column
        assert_eq!(verify_representation(&m, &w), Ok(true));
    }

    #[test]
    fn witnesses_are_minor_closed_spotcheck() {
        let m = catalog::fano().unwrap();
        assert!(is_representable_gf(&m, 2).unwrap().is_some());
        for i in 0..m.size() {
            let s = Subset::singleton(i);
            assert!(is_representable_gf(&m.delete(s), 2).unwrap().is_some());
            assert!(is_representable_gf(&m.contract(s), 2).unwrap().is_some());
        }
    }

    #[test]
    fn budget_exceeded_is_distinct() {
        let m = catalog::fano().unwrap();
        let err = is_representable_gf_budgeted(&m, 3, 5).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded(_)));
    }

    #[test]
    fn naive_enumeration_agrees_on_tiny_instances() {
        // independent oracle: try every single GF(2) matrix
        fn naive_gf2(m: &Matroid) -> bool {
            let field = GfField::new(2).unwrap();
            let r = m.rank();
            let n = m.size();
            let cells = r * n;
            'outer: for bits in 0u32..1 << cells {
                let columns: Vec<Vec<u8>> = (0..n)
                    .map(|j| (0..r).map(|i| (bits >> (j * r + i) & 1) as u8).collect())
                    .collect();
                for x in k_subsets(n, r) {
                    let cols: Vec<&[u8]> = x.iter().map(|i| columns[i].as_slice()).collect();
                    let independent = columns_rank(&field, r, &cols) == r;
                    if independent != m.is_basis(x) {
                        continue 'outer;
                    }
                }
                return true;
            }
            false
        }
        for m in [
            catalog::uniform(1, 2).unwrap(),
            catalog::uniform(2, 3).unwrap(),
            catalog::uniform(2, 4).unwrap(),
            catalog::uniform(3, 4).unwrap(),
            catalog::uniform(3, 6).unwrap(),
        ] {
            assert_eq!(
                naive_gf2(&m),
                is_representable_gf(&m, 2).unwrap().is_some(),
                "disagreement on {:?}",
                m.name()
            );
        }
    }
}
