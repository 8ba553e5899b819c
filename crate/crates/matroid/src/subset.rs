//! Dense bitmask subsets of a ground set.
//!
//! A `Subset` is a mask over the element positions of one specific matroid's
//! ground set. Masks from different matroids (or from a matroid and one of
//! its minors) are not interchangeable; convert through labels instead.

use serde::{Deserialize, Serialize};

#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Subset(pub u32);

pub const EMPTY: Subset = Subset(0);

impl Subset {
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= 32);
        if n == 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1u32 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        let mut m = 0u32;
        for i in it {
            m |= 1 << i;
        }
        Subset(m)
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn inter(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Iterate set bit positions in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

/// All subsets of an `n`-element ground set, in ascending mask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    (0u64..1u64 << n).map(|m| Subset(m as u32))
}

/// All subsets of `mask`, in ascending mask order.
pub fn subsets_of(mask: Subset) -> impl Iterator<Item = Subset> {
    let m = mask.0;
    let mut cur = 0u32;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = Subset(cur);
        if cur == m {
            done = true;
        } else {
            // next subset of m in ascending order
            cur = (cur.wrapping_sub(m)) & m;
        }
        Some(out)
    })
}

/// All `k`-element subsets of `{0..n}`, in ascending mask order (Gosper).
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Subset> {
    let limit = 1u64 << n;
    let mut cur: u64 = if k == 0 {
        0
    } else if k > n {
        limit // empty iterator
    } else {
        (1u64 << k) - 1
    };
    let mut emitted_empty = false;
    std::iter::from_fn(move || {
        if k == 0 {
            if emitted_empty {
                return None;
            }
            emitted_empty = true;
            return Some(EMPTY);
        }
        if cur >= limit {
            return None;
        }
        let out = Subset(cur as u32);
        // Gosper's hack: next mask with the same popcount.
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        cur = if c == 0 { limit } else { (((r ^ cur) >> 2) / c) | r };
        Some(out)
    })
}

/// All `k`-element subsets of `mask`, in ascending mask order.
pub fn k_subsets_of(mask: Subset, k: usize) -> Vec<Subset> {
    let positions: Vec<usize> = mask.iter().collect();
    k_subsets(positions.len(), k)
        .map(|s| Subset::from_indices(s.iter().map(|i| positions[i])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_basics() {
        let s = Subset::from_indices([0, 2, 5]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(2) && !s.contains(1));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert!(Subset::singleton(2).is_subset_of(s));
        assert_eq!(s.minus(Subset::singleton(2)), Subset::from_indices([0, 5]));
        assert_eq!(Subset::full(3).0, 0b111);
    }

    #[test]
    fn k_subset_counts() {
        assert_eq!(k_subsets(5, 2).count(), 10);
        assert_eq!(k_subsets(5, 0).count(), 1);
        assert_eq!(k_subsets(5, 5).count(), 1);
        assert_eq!(k_subsets(4, 5).count(), 0);
        assert_eq!(k_subsets(0, 0).count(), 1);
    }

    #[test]
    fn subsets_of_mask_enumerates_all() {
        let m = Subset::from_indices([1, 3, 4]);
        let subs: Vec<Subset> = subsets_of(m).collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset_of(m)));
        assert!(subs.contains(&EMPTY) && subs.contains(&m));
    }

    #[test]
    fn k_subsets_of_mask() {
        let m = Subset::from_indices([0, 2, 3]);
        let pairs = k_subsets_of(m, 2);
        assert_eq!(pairs.len(), 3);
        assert!(pairs.iter().all(|s| s.len() == 2 && s.is_subset_of(m)));
    }
}
