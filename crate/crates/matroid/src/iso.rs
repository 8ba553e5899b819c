//! Matroid isomorphism and minor search by backtracking with invariant
//! pruning.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matroid::{Matroid, RankTable};
use crate::subset::{subsets_of, Subset, EMPTY};

/// Default node budget for `has_minor_iso`.
pub const DEFAULT_MINOR_BUDGET: u64 = 200_000_000;

/// Witness that `n` is a minor of `m`: contract `contract`, delete `delete`,
/// then map elements of the result onto `n` via `map` (minor label → n label).
#[derive(Debug, Clone)]
pub struct MinorWitness {
    pub contract: Vec<String>,
    pub delete: Vec<String>,
    pub map: BTreeMap<String, String>,
}

/// Per-element invariant used to prune the isomorphism search.
#[derive(PartialEq, Eq, Clone)]
struct ElementSignature {
    is_loop: bool,
    is_coloop: bool,
    basis_degree: usize,
    circuit_degrees: Vec<usize>, // count of circuits per size, ascending
}

fn signatures(m: &Matroid, circuits: &[Subset]) -> Vec<ElementSignature> {
    let max_size = m.rank() + 1;
    (0..m.size())
        .map(|i| {
            let mut circuit_degrees = vec![0usize; max_size + 1];
            for c in circuits {
                if c.contains(i) {
                    circuit_degrees[c.len()] += 1;
                }
            }
            ElementSignature {
                is_loop: m.is_loop(i),
                is_coloop: m.is_coloop(i),
                basis_degree: m.bases().iter().filter(|b| b.contains(i)).count(),
                circuit_degrees,
            }
        })
        .collect()
}

/// Search for an isomorphism `m1 → m2`; returns the label bijection if one
/// exists. Prunes by rank, basis count, circuit-size multiset, and
/// per-element degrees before backtracking.
pub fn is_isomorphic(m1: &Matroid, m2: &Matroid) -> Option<BTreeMap<String, String>> {
    if m1.size() != m2.size() || m1.rank() != m2.rank() || m1.bases().len() != m2.bases().len() {
        return None;
    }
    let c1 = m1.circuits();
    let c2 = m2.circuits();
    let mut sizes1: Vec<usize> = c1.iter().map(|c| c.len()).collect();
    let mut sizes2: Vec<usize> = c2.iter().map(|c| c.len()).collect();
    sizes1.sort_unstable();
    sizes2.sort_unstable();
    if sizes1 != sizes2 {
        return None;
    }
    let sig1 = signatures(m1, &c1);
    let sig2 = signatures(m2, &c2);
    let candidates: Vec<Vec<usize>> = sig1
        .iter()
        .map(|s| (0..m2.size()).filter(|&j| sig2[j] == *s).collect())
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return None;
    }
    // assign scarce elements first
    let mut order: Vec<usize> = (0..m1.size()).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));

    let t1 = m1.rank_table();
    let t2 = m2.rank_table();
    let mut mapping = vec![usize::MAX; m1.size()];
    let mut used = vec![false; m2.size()];
    if assign(
        m1, m2, &t1, &t2, &order, &candidates, &mut mapping, &mut used, 0,
    ) {
        let out = mapping
            .iter()
            .enumerate()
            .map(|(i, &j)| (m1.ground_set()[i].clone(), m2.ground_set()[j].clone()))
            .collect();
        Some(out)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn assign(
    m1: &Matroid,
    m2: &Matroid,
    t1: &RankTable,
    t2: &RankTable,
    order: &[usize],
    candidates: &[Vec<usize>],
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
    depth: usize,
) -> bool {
    if depth == order.len() {
        // full check: every basis maps to a basis; counts are equal, so
        // matching one direction suffices
        return m1.bases().iter().all(|b| {
            let image = Subset::from_indices(b.iter().map(|i| mapping[i]));
            m2.is_basis(image)
        });
    }
    let i = order[depth];
    'cand: for &j in &candidates[i] {
        if used[j] {
            continue;
        }
        // pairwise rank consistency with everything already assigned
        for &k in &order[..depth] {
            let a = Subset::from_indices([i, k]);
            let b = Subset::from_indices([j, mapping[k]]);
            if t1.rank(a) != t2.rank(b) {
                continue 'cand;
            }
        }
        // ranks of assigned r-subsets through i must agree
        if depth + 1 >= m1.rank() && m1.rank() >= 1 {
            let assigned = Subset::from_indices(order[..depth].iter().copied());
            let r = m1.rank();
            let mut ok = true;
            'subs: for s in crate::subset::k_subsets_of(assigned, r - 1) {
                let x = s.with(i);
                let y = Subset::from_indices(x.iter().map(|p| if p == i { j } else { mapping[p] }));
                if t1.rank(x) != t2.rank(y) {
                    ok = false;
                    break 'subs;
                }
            }
            if !ok {
                continue 'cand;
            }
        }
        mapping[i] = j;
        used[j] = true;
        if assign(m1, m2, t1, t2, order, candidates, mapping, used, depth + 1) {
            return true;
        }
        mapping[i] = usize::MAX;
        used[j] = false;
    }
    false
}

/// Does contracting `c` and deleting `d` in `m` produce exactly `n`
/// (labeled equality)?
pub fn has_minor_labeled(m: &Matroid, c: &[String], d: &[String], n: &Matroid) -> Result<bool> {
    let cm = m.subset(c)?;
    let dm = m.subset(d)?;
    Ok(m.minor(cm, dm)?.equals_labeled(n))
}

/// Search for `n` as a minor of `m` up to isomorphism, with the default
/// node budget.
pub fn has_minor_iso(m: &Matroid, n: &Matroid) -> Result<Option<MinorWitness>> {
    has_minor_iso_budgeted(m, n, DEFAULT_MINOR_BUDGET)
}

/// Budgeted minor search. Enumerates independent contraction sets `C` of
/// the forced size in ascending mask order, then searches for an embedding
/// of `n`'s elements that matches all subset ranks in `m / C`. Deleted
/// elements are whatever remains. Errors with `SizeCapExceeded` when the
/// node budget runs out before the search space is exhausted.
pub fn has_minor_iso_budgeted(
    m: &Matroid,
    n: &Matroid,
    budget: u64,
) -> Result<Option<MinorWitness>> {
    if n.size() > m.size() || n.rank() > m.rank() || m.size() - n.size() < m.rank() - n.rank() {
        return Ok(None);
    }
    let csize = m.rank() - n.rank();
    let tm = m.rank_table();
    let tn = n.rank_table();

    // precompute n-side subset ranks in enumeration order of its elements
    let n_elems = n.size();
    let n_classes = parallel_class_count(&tn, n.full_set(), EMPTY);

    let mut nodes: u64 = 0;
    let mut contraction = Vec::new();
    let found = search_contractions(
        m, n, &tm, &tn, csize, 0, EMPTY, &mut contraction, n_elems, n_classes, budget, &mut nodes,
    )?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn search_contractions(
    m: &Matroid,
    n: &Matroid,
    tm: &RankTable,
    tn: &RankTable,
    remaining: usize,
    start: usize,
    c: Subset,
    contraction: &mut Vec<usize>,
    n_elems: usize,
    n_classes: usize,
    budget: u64,
    nodes: &mut u64,
) -> Result<Option<MinorWitness>> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::SizeCapExceeded {
            size: *nodes as usize,
            cap: budget as usize,
        });
    }
    if remaining == 0 {
        return try_embedding(m, n, tm, tn, c, n_elems, n_classes, budget, nodes);
    }
    for i in start..m.size() {
        let next = c.with(i);
        if tm.is_independent(next) {
            contraction.push(i);
            if let Some(w) = search_contractions(
                m,
                n,
                tm,
                tn,
                remaining - 1,
                i + 1,
                next,
                contraction,
                n_elems,
                n_classes,
                budget,
                nodes,
            )? {
                return Ok(Some(w));
            }
            contraction.pop();
        }
    }
    Ok(None)
}

/// Distinct non-loop parallel classes of `m / c` restricted to `domain`.
fn parallel_class_count(t: &RankTable, domain: Subset, c: Subset) -> usize {
    let base = t.rank(c);
    let mut reps: Vec<usize> = Vec::new();
    for x in domain.minus(c).iter() {
        if t.rank(c.with(x)) == base {
            continue; // loop in the contraction
        }
        let parallel = reps
            .iter()
            .any(|&r| t.rank(c.with(x).with(r)) == base + 1);
        if !parallel {
            reps.push(x);
        }
    }
    reps.len()
}

#[allow(clippy::too_many_arguments)]
fn try_embedding(
    m: &Matroid,
    n: &Matroid,
    tm: &RankTable,
    tn: &RankTable,
    c: Subset,
    n_elems: usize,
    n_classes: usize,
    budget: u64,
    nodes: &mut u64,
) -> Result<Option<MinorWitness>> {
    // cheap necessary condition: enough distinct non-loop classes remain
    if parallel_class_count(tm, m.full_set(), c) < n_classes {
        return Ok(None);
    }
    let mut image = vec![usize::MAX; n_elems];
    if embed(m, tm, tn, c, &mut image, 0, budget, nodes)? {
        let contract = m.label_vec(c);
        let image_mask = Subset::from_indices(image.iter().copied());
        let delete = m.label_vec(m.full_set().minus(c).minus(image_mask));
        let map = image
            .iter()
            .enumerate()
            .map(|(k, &i)| (m.ground_set()[i].clone(), n.ground_set()[k].clone()))
            .collect();
        return Ok(Some(MinorWitness {
            contract,
            delete,
            map,
        }));
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn embed(
    m: &Matroid,
    tm: &RankTable,
    tn: &RankTable,
    c: Subset,
    image: &mut Vec<usize>,
    depth: usize,
    budget: u64,
    nodes: &mut u64,
) -> Result<bool> {
    if depth == image.len() {
        return Ok(true);
    }
    let base = tm.rank(c);
    let taken = Subset::from_indices(image[..depth].iter().copied());
    for x in 0..m.size() {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::SizeCapExceeded {
                size: *nodes as usize,
                cap: budget as usize,
            });
        }
        if c.contains(x) || taken.contains(x) {
            continue;
        }
        // all subset ranks through the new element must match
        let prefix = Subset::full(depth);
        let ok = subsets_of(prefix).all(|s| {
            let s = s.with(depth);
            let mapped =
                Subset::from_indices(s.iter().map(|k| if k == depth { x } else { image[k] }));
            tm.rank(mapped.union(c)) - base == tn.rank(s)
        });
        if ok {
            image[depth] = x;
            if embed(m, tm, tn, c, image, depth + 1, budget, nodes)? {
                return Ok(true);
            }
            image[depth] = usize::MAX;
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn uniform_is_isomorphic_to_relabeled_uniform() {
        let m = catalog::uniform(2, 4).unwrap();
        let map = BTreeMap::from([
            ("1".to_string(), "a".to_string()),
            ("2".to_string(), "b".to_string()),
        ]);
        let m2 = m.relabel(&map).unwrap();
        let w = is_isomorphic(&m, &m2).expect("isomorphic");
        // verify the witness maps bases to bases
        for b in m.bases() {
            let image: Vec<&str> = b
                .iter()
                .map(|i| w[&m.ground_set()[i]].as_str())
                .collect();
            let mask = m2.subset(image).unwrap();
            assert!(m2.is_basis(mask));
        }
    }

    #[test]
    fn fano_not_isomorphic_to_non_fano() {
        let f = catalog::fano().unwrap();
        let nf = catalog::non_fano().unwrap();
        assert!(is_isomorphic(&f, &nf).is_none());
    }

    #[test]
    fn size_mismatch_is_rejected_quickly() {
        let a = catalog::uniform(2, 4).unwrap();
        let b = catalog::uniform(2, 5).unwrap();
        assert!(is_isomorphic(&a, &b).is_none());
    }

    #[test]
    fn minor_labeled() {
        let m = catalog::uniform(2, 4).unwrap();
        let n = catalog::uniform(2, 3).unwrap();
        assert!(has_minor_labeled(&m, &[], &["4".into()], &n).unwrap());
        assert!(!has_minor_labeled(&m, &["4".into()], &[], &n).unwrap());
    }

    #[test]
    fn u23_is_minor_of_u24() {
        let m = catalog::uniform(2, 4).unwrap();
        let n = catalog::uniform(2, 3).unwrap();
        let w = has_minor_iso(&m, &n).unwrap().expect("minor exists");
        assert!(w.contract.is_empty());
        assert_eq!(w.delete.len(), 1);
    }

    #[test]
    fn fano_has_no_u24_minor() {
        // binary matroids have no U_{2,4} minor
        let f = catalog::fano().unwrap();
        let u = catalog::uniform(2, 4).unwrap();
        assert!(has_minor_iso(&f, &u).unwrap().is_none());
    }

    #[test]
    fn fano_has_mk4_minor() {
        let f = catalog::fano().unwrap();
        let k = catalog::mk4().unwrap();
        let w = has_minor_iso(&f, &k).unwrap().expect("F7 \\ point = M(K4)");
        // replay the witness
        let minor = f
            .minor(f.subset(&w.contract).unwrap(), f.subset(&w.delete).unwrap())
            .unwrap();
        let relabeled = minor
            .relabel(&w.map.iter().map(|(a, b)| (a.clone(), b.clone())).collect())
            .unwrap();
        assert!(relabeled.equals_labeled(&k));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let m = catalog::uniform(3, 7).unwrap();
        let n = catalog::uniform(2, 4).unwrap();
        let err = has_minor_iso_budgeted(&m, &n, 3).unwrap_err();
        assert!(matches!(err, Error::SizeCapExceeded { .. }));
    }

    #[test]
    fn impossible_minor_dimensions() {
        let m = catalog::uniform(2, 3).unwrap();
        let n = catalog::uniform(2, 4).unwrap();
        assert!(has_minor_iso(&m, &n).unwrap().is_none());
    }
}
