//! Extension operators: principal/free extension, placement in a span,
//! series extension, the element shift, and freeness comparisons.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{k_subsets, subsets_of, Subset};

/// Principal extension of `m` into the flat `f` by a fresh element `e`.
///
/// In the result, a subset of the old ground set spans `e` exactly when it
/// spans `f`. Consequently `rank'(X ∪ {e}) = rank(X)` when `f ⊆ cl(X)` and
/// `rank(X) + 1` otherwise, and the restriction to the old ground set is
/// `m` itself. The output is re-validated against the matroid axioms.
pub fn principal_extension(m: &Matroid, f: Subset, e: &str) -> Result<Matroid> {
    if m.contains_label(e) {
        return Err(Error::LabelCollision(e.to_string()));
    }
    if e.is_empty() {
        return Err(Error::DuplicateLabel(String::new()));
    }
    let t = m.rank_table();
    if t.closure(f) != f {
        return Err(Error::NotAFlat(m.label_vec(f)));
    }
    let n = m.size();
    let r = m.rank();
    let mut bases: Vec<Subset> = m.bases().to_vec();
    if r > 0 {
        let new_bit = Subset::singleton(n);
        for x in k_subsets(n, r - 1) {
            // X ∪ {e} is a basis iff X is independent and does not span f
            if t.is_independent(x) && t.rank(x.union(f)) != t.rank(x) {
                bases.push(x.union(new_bit));
            }
        }
    }
    let mut labels = m.ground_set().to_vec();
    labels.push(e.to_string());
    Matroid::from_masks_validated(None, labels, bases)
}

/// Free extension: principal extension into the full ground set.
pub fn free_extension(m: &Matroid, e: &str) -> Result<Matroid> {
    principal_extension(m, m.full_set(), e)
}

/// Freely place `e` in the flat spanned by `s` (the closure of `s`).
pub fn place_in_span(m: &Matroid, s: Subset, e: &str) -> Result<Matroid> {
    principal_extension(m, m.closure(s), e)
}

/// Series extension at `e`: coextend so that `{e, e_new}` becomes a series
/// pair. Implemented by the pipeline: add a coloop, freely place a new
/// element in the flat spanned by `e` and the coloop, delete `e`, then
/// relabel so the freely placed element takes the name `e` and the coloop
/// takes `e_new`. Contracting `e_new` in the result returns `m`.
pub fn series_extension(m: &Matroid, e: &str, e_new: &str) -> Result<Matroid> {
    let ei = m.label_index(e)?;
    if m.contains_label(e_new) {
        return Err(Error::LabelCollision(e_new.to_string()));
    }
    if e_new.is_empty() {
        return Err(Error::DuplicateLabel(String::new()));
    }
    if m.is_loop(ei) {
        return Err(Error::LoopElement(e.to_string()));
    }
    let coloop = fresh_avoiding(m, "series-coloop", &[e_new]);
    let m1 = m.add_coloop(&coloop)?;
    let free = fresh_avoiding(&m1, "series-free", &[e_new]);
    let pair = m1.subset([e, coloop.as_str()])?;
    let m2 = place_in_span(&m1, pair, &free)?;
    let m3 = m2.delete(Subset::singleton(m2.label_index(e)?));
    let map = std::collections::BTreeMap::from([
        (free, e.to_string()),
        (coloop, e_new.to_string()),
    ]);
    m3.relabel(&map)
}

/// The shift of `a` towards `b`: freely place a new element on the flat
/// spanned by `{a, b}`, delete `a`, and give the new element the name `a`.
/// The result is freer than `m` and agrees with `m` on subsets avoiding `a`.
pub fn shift(m: &Matroid, a: &str, b: &str) -> Result<Matroid> {
    if a == b {
        return Err(Error::SameElement(a.to_string()));
    }
    let _ = m.label_index(a)?;
    let _ = m.label_index(b)?;
    let tmp = fresh_avoiding(m, "shift-tmp", &[]);
    let line = m.subset([a, b])?;
    let m1 = place_in_span(m, line, &tmp)?;
    let m2 = m1.delete(Subset::singleton(m1.label_index(a)?));
    let map = std::collections::BTreeMap::from([(tmp, a.to_string())]);
    m2.relabel(&map)
}

/// `p` is freer than `q` when every subset of `E − {p,q}` that spans `p`
/// also spans `q`. Exhaustive over all such subsets.
pub fn is_freer_element(m: &Matroid, p: &str, q: &str) -> Result<bool> {
    let pi = m.label_index(p)?;
    let qi = m.label_index(q)?;
    if pi == qi {
        return Err(Error::SameElement(p.to_string()));
    }
    let t = m.rank_table();
    let domain = m.full_set().without(pi).without(qi);
    for z in subsets_of(domain) {
        if t.spans(z, pi) && !t.spans(z, qi) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All unordered pairs `{p, q}` where neither element is freer than the
/// other, sorted lexicographically.
pub fn incomparable_pairs(m: &Matroid) -> Vec<(String, String)> {
    let t = m.rank_table();
    let mut labels: Vec<(String, usize)> = m
        .ground_set()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    labels.sort();
    let mut out = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            let (pi, qi) = (labels[i].1, labels[j].1);
            let domain = m.full_set().without(pi).without(qi);
            let mut p_freer = true;
            let mut q_freer = true;
            for z in subsets_of(domain) {
                let sp = t.spans(z, pi);
                let sq = t.spans(z, qi);
                if sp && !sq {
                    p_freer = false;
                }
                if sq && !sp {
                    q_freer = false;
                }
                if !p_freer && !q_freer {
                    break;
                }
            }
            if !p_freer && !q_freer {
                out.push((labels[i].0.clone(), labels[j].0.clone()));
            }
        }
    }
    out
}

/// `m2` is freer than `m1` when `rank_{m2}(X) ≥ rank_{m1}(X)` for every
/// subset of their common ground set.
pub fn is_freer_matroid(m2: &Matroid, m1: &Matroid) -> Result<bool> {
    if m1.size() != m2.size() {
        return Err(Error::GroundSetMismatch);
    }
    let mut perm = Vec::with_capacity(m1.size());
    for l in m1.ground_set() {
        perm.push(m2.label_index(l).map_err(|_| Error::GroundSetMismatch)?);
    }
    let t1 = m1.rank_table();
    let t2 = m2.rank_table();
    for x in crate::subset::all_subsets(m1.size()) {
        let y = Subset::from_indices(x.iter().map(|i| perm[i]));
        if t2.rank(y) < t1.rank(x) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fresh label from `base` that is absent from `m` and from `avoid`.
fn fresh_avoiding(m: &Matroid, base: &str, avoid: &[&str]) -> String {
    let mut cand = base.to_string();
    let mut k = 0usize;
    loop {
        if !m.contains_label(&cand) && !avoid.contains(&cand.as_str()) {
            return cand;
        }
        k += 1;
        cand = format!("{base}#{k}");
    }
}
