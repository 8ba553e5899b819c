//! Axiom checks run by the verification suites.
//!
//! `Matroid::from_bases` already rejects invalid bases sets; these helpers
//! re-check constructed values explicitly, exhaustively for small ground
//! sets and by seeded sampling above that.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{all_subsets, Subset};

/// Exhaustive cutoff for the rank-axiom pair scan.
pub const EXHAUSTIVE_LIMIT: usize = 12;

/// Basis-exchange over all ordered basis pairs.
pub fn check_basis_exchange(m: &Matroid) -> Result<()> {
    match m.exchange_failure() {
        None => Ok(()),
        Some((b1, b2)) => Err(Error::AxiomViolation {
            reason: "basis exchange fails".into(),
            witness: Some((m.label_vec(b1), m.label_vec(b2))),
        }),
    }
}

/// Rank axioms: 0 ≤ r(X) ≤ |X|, monotonicity, and submodularity
/// r(X∪Y) + r(X∩Y) ≤ r(X) + r(Y). All subset pairs when n ≤ 12,
/// otherwise `samples` pairs from a deterministic generator.
pub fn check_rank_axioms(m: &Matroid, samples: usize) -> Result<()> {
    let n = m.size();
    let t = m.rank_table();
    let bound = |x: Subset| -> Result<()> {
        if t.rank(x) > x.len() {
            return Err(Error::AxiomViolation {
                reason: "rank exceeds cardinality".into(),
                witness: Some((m.label_vec(x), vec![])),
            });
        }
        Ok(())
    };
    let pair = |x: Subset, y: Subset| -> Result<()> {
        if x.is_subset_of(y) && t.rank(x) > t.rank(y) {
            return Err(Error::AxiomViolation {
                reason: "rank not monotone".into(),
                witness: Some((m.label_vec(x), m.label_vec(y))),
            });
        }
        if t.rank(x.union(y)) + t.rank(x.inter(y)) > t.rank(x) + t.rank(y) {
            return Err(Error::AxiomViolation {
                reason: "rank not submodular".into(),
                witness: Some((m.label_vec(x), m.label_vec(y))),
            });
        }
        Ok(())
    };
    if n <= EXHAUSTIVE_LIMIT {
        for x in all_subsets(n) {
            bound(x)?;
            for y in all_subsets(n) {
                pair(x, y)?;
            }
        }
    } else {
        let mut rng = SplitMix64::new(0x9e37_79b9_7f4a_7c15);
        let full = Subset::full(n).0;
        for _ in 0..samples {
            let x = Subset(rng.next() as u32 & full);
            let y = Subset(rng.next() as u32 & full);
            bound(x)?;
            bound(y)?;
            pair(x, y)?;
        }
    }
    Ok(())
}

/// Exchange plus rank axioms in one call.
pub fn check_all(m: &Matroid, samples: usize) -> Result<()> {
    check_basis_exchange(m)?;
    check_rank_axioms(m, samples)
}

/// Small deterministic generator for sampled checks (keeps the suites
/// reproducible without pulling an RNG dependency into the library).
pub(crate) struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64(seed)
    }

    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn catalog_passes_axioms() {
        for m in catalog::test_suite(8) {
            check_all(&m, 200).unwrap();
        }
    }

    #[test]
    fn sampled_path_runs_on_larger_ground_sets() {
        let m = catalog::uniform(5, 13).unwrap();
        check_rank_axioms(&m, 500).unwrap();
    }
}
