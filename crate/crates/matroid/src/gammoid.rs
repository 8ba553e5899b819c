//! Sound but incomplete gammoid certification by free deconstruction.
//!
//! A matroid built from the empty matroid by adding coloops and principal
//! extensions is a gammoid. The recognizer runs that construction in
//! reverse: greedily strip a coloop, or a freest element that is freely
//! placed in the span of the remainder. Reaching the empty matroid yields a
//! replayable certificate; getting stuck certifies nothing.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::extend::{incomparable_pairs, principal_extension};
use crate::matroid::{Matroid, RankTable};
use crate::subset::{subsets_of, Subset};

/// Size bound for the exhaustive (backtracking) mode.
pub const EXHAUSTIVE_SIZE_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Step {
    /// The element was a coloop of the matroid it was removed from.
    Coloop { label: String },
    /// The element was freely placed in the recorded flat of the remainder
    /// (always the full remainder for removals found by this module).
    Free { label: String, flat: Vec<String> },
}

/// Removal steps in the order they were performed; replaying them in
/// reverse rebuilds the input matroid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeconstructionCertificate {
    pub steps: Vec<Step>,
}

/// Greedy free deconstruction: at each stage remove the least-labeled
/// coloop if one exists, otherwise the least-labeled element that is freer
/// than every remaining element and freely placed in the span of the rest.
/// Success certifies the input is a gammoid; `None` certifies nothing.
pub fn free_deconstruction(m: &Matroid) -> Option<DeconstructionCertificate> {
    let mut cur = m.clone();
    let mut steps = Vec::new();
    while cur.size() > 0 {
        match greedy_step(&cur) {
            Some((step, next)) => {
                steps.push(step);
                cur = next;
            }
            None => return None,
        }
    }
    Some(DeconstructionCertificate { steps })
}

fn greedy_step(cur: &Matroid) -> Option<(Step, Matroid)> {
    let order = label_order(cur);
    for &i in &order {
        if cur.is_coloop(i) {
            return Some((
                Step::Coloop {
                    label: cur.ground_set()[i].clone(),
                },
                cur.delete(Subset::singleton(i)),
            ));
        }
    }
    let t = cur.rank_table();
    for &i in &order {
        if is_freest(cur, &t, i) && is_freely_placed(cur, &t, i) {
            let rest = cur.full_set().without(i);
            return Some((
                Step::Free {
                    label: cur.ground_set()[i].clone(),
                    flat: cur.label_vec(rest),
                },
                cur.delete(Subset::singleton(i)),
            ));
        }
    }
    None
}

fn label_order(m: &Matroid) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m.size()).collect();
    order.sort_by(|&a, &b| m.ground_set()[a].cmp(&m.ground_set()[b]));
    order
}

/// Freer than every other element.
fn is_freest(m: &Matroid, t: &RankTable, i: usize) -> bool {
    (0..m.size()).all(|j| j == i || freer(t, m.full_set(), i, j))
}

/// Every subset of `E − {p,q}` spanning `p` spans `q`.
fn freer(t: &RankTable, full: Subset, p: usize, q: usize) -> bool {
    let domain = full.without(p).without(q);
    subsets_of(domain).all(|z| !t.spans(z, p) || t.spans(z, q))
}

/// `m` is the free extension of `m \ i`: a subset of the remainder spans
/// `i` exactly when it spans the whole remainder.
fn is_freely_placed(m: &Matroid, t: &RankTable, i: usize) -> bool {
    let rest = m.full_set().without(i);
    let full_rank = t.rank(rest);
    subsets_of(rest).all(|x| t.spans(x, i) == (t.rank(x) == full_rank))
}

/// Exhaustive mode: backtrack over the choice of removed element (coloop
/// or freely placed, the freest-first restriction dropped), memoizing
/// failed remainders. Only for ground sets of size ≤ 10.
pub fn free_deconstruction_exhaustive(m: &Matroid) -> Result<Option<DeconstructionCertificate>> {
    if m.size() > EXHAUSTIVE_SIZE_LIMIT {
        return Err(Error::SizeCapExceeded {
            size: m.size(),
            cap: EXHAUSTIVE_SIZE_LIMIT,
        });
    }
    let mut failed: HashMap<Vec<String>, ()> = HashMap::new();
    let mut steps = Vec::new();
    if backtrack(m, &mut steps, &mut failed) {
        Ok(Some(DeconstructionCertificate { steps }))
    } else {
        Ok(None)
    }
}

fn backtrack(
    cur: &Matroid,
    steps: &mut Vec<Step>,
    failed: &mut HashMap<Vec<String>, ()>,
) -> bool {
    if cur.size() == 0 {
        return true;
    }
    let key: Vec<String> = {
        let mut v = cur.ground_set().to_vec();
        v.sort();
        v
    };
    if failed.contains_key(&key) {
        return false;
    }
    let t = cur.rank_table();
    for &i in &label_order(cur) {
        let removable = cur.is_coloop(i) || is_freely_placed(cur, &t, i);
        if !removable {
            continue;
        }
        let step = if cur.is_coloop(i) {
            Step::Coloop {
                label: cur.ground_set()[i].clone(),
            }
        } else {
            Step::Free {
                label: cur.ground_set()[i].clone(),
                flat: cur.label_vec(cur.full_set().without(i)),
            }
        };
        steps.push(step);
        if backtrack(&cur.delete(Subset::singleton(i)), steps, failed) {
            return true;
        }
        steps.pop();
    }
    failed.insert(key, ());
    false
}

/// Rebuild the matroid a certificate came from: starting at the empty
/// matroid, undo the steps last-to-first (add the coloop back, or
/// principally extend into the recorded flat).
pub fn replay(cert: &DeconstructionCertificate) -> Result<Matroid> {
    let mut cur = catalog::empty().with_name(None);
    for step in cert.steps.iter().rev() {
        cur = match step {
            Step::Coloop { label } => cur.add_coloop(label)?,
            Step::Free { label, flat } => {
                let f = cur.subset(flat)?;
                principal_extension(&cur, f, label)?
            }
        };
    }
    Ok(cur)
}

/// Delegates to the freeness relation; a matroid with no incomparable pair
/// is guaranteed to deconstruct.
pub fn has_incomparable_pair(m: &Matroid) -> bool {
    !incomparable_pairs(m).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extend::free_extension;

    #[test]
    fn uniform_matroids_deconstruct() {
        for (r, n) in [(0, 0), (1, 1), (1, 3), (2, 4), (3, 5), (4, 4)] {
            let m = catalog::uniform(r, n).unwrap();
            let cert = free_deconstruction(&m).expect("uniform matroids are gammoids");
            assert_eq!(cert.steps.len(), n);
            assert!(replay(&cert).unwrap().equals_labeled(&m));
        }
    }

    #[test]
    fn mk4_gets_stuck() {
        let m = catalog::mk4().unwrap();
        assert!(has_incomparable_pair(&m));
        assert!(free_deconstruction(&m).is_none());
        assert_eq!(free_deconstruction_exhaustive(&m).unwrap(), None);
    }

    #[test]
    fn fano_has_incomparable_pair() {
        assert!(has_incomparable_pair(&catalog::fano().unwrap()));
    }

    #[test]
    fn no_incomparable_pair_implies_deconstructible() {
        for m in catalog::test_suite(7) {
            if !has_incomparable_pair(&m) {
                assert!(
                    free_deconstruction(&m).is_some(),
                    "{:?} should deconstruct",
                    m.name()
                );
            }
        }
    }

    #[test]
    fn pipeline_outputs_certify_and_replay() {
        // a hand-rolled pipeline: coloops and free extensions from scratch
        let mut m = catalog::empty().with_name(None);
        m = m.add_coloop("c1").unwrap();
        m = free_extension(&m, "f1").unwrap();
        m = m.add_coloop("c2").unwrap();
        m = free_extension(&m, "f2").unwrap();
        m = free_extension(&m, "f3").unwrap();
        let cert = free_deconstruction(&m).expect("pipeline output is a gammoid");
        assert!(replay(&cert).unwrap().equals_labeled(&m));
    }

    #[test]
    fn exhaustive_mode_respects_size_cap() {
        let m = catalog::uniform(3, 11).unwrap();
        assert!(matches!(
            free_deconstruction_exhaustive(&m),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn exhaustive_mode_can_beat_greedy_order() {
        let m = catalog::uniform(2, 5).unwrap();
        let a = free_deconstruction(&m).unwrap();
        let b = free_deconstruction_exhaustive(&m).unwrap().unwrap();
        assert!(replay(&a).unwrap().equals_labeled(&m));
        assert!(replay(&b).unwrap().equals_labeled(&m));
    }

    #[test]
    fn free_removals_satisfy_extension_biconditional() {
        // every removal recorded as free must satisfy the principal
        // extension spanning rule against the remainder
        let m = catalog::uniform(2, 4).unwrap();
        let cert = free_deconstruction(&m).unwrap();
        let mut stack = vec![m.clone()];
        for step in &cert.steps {
            let cur = stack.last().unwrap().clone();
            if let Step::Free { label, flat } = step {
                let i = cur.label_index(label).unwrap();
                let rest = cur.delete(Subset::singleton(i));
                let rebuilt =
                    principal_extension(&rest, rest.subset(flat).unwrap(), label).unwrap();
                assert!(rebuilt.equals_labeled(&cur));
            }
            let i = cur.label_index(step_label(step)).unwrap();
            stack.push(cur.delete(Subset::singleton(i)));
        }
    }

    fn step_label(s: &Step) -> &str {
        match s {
            Step::Coloop { label } => label,
            Step::Free { label, .. } => label,
        }
    }

    #[test]
    fn certificate_serializes() {
        let m = catalog::uniform(1, 2).unwrap();
        let cert = free_deconstruction(&m).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let back: DeconstructionCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }
}
