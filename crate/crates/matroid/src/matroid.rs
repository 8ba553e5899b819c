//! Canonical matroid representation: a labeled ground set plus the set of
//! bases, which is the single source of truth for rank.
//!
//! Every operation materializes its result's bases from a rank formula by
//! enumerating candidate subsets of the new ground set. Ground sets are
//! capped (default 24) so subsets fit in dense bitmasks.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{size_cap, Error, Result};
use crate::subset::{all_subsets, k_subsets, k_subsets_of, Subset, EMPTY};

#[derive(Clone, Debug)]
pub struct Matroid {
    name: Option<String>,
    /// Ground set in storage order; bit `i` of a `Subset` refers to `labels[i]`.
    labels: Vec<String>,
    /// Sorted list of basis masks, all of popcount `rank`.
    bases: Vec<Subset>,
    rank: usize,
}

impl Matroid {
    /// Validated constructor. Checks label distinctness, the size cap, and
    /// the basis-exchange axiom (reported with a witness pair on failure).
    pub fn from_bases<L, B, E>(name: Option<&str>, labels: L, bases: B) -> Result<Matroid>
    where
        L: IntoIterator<Item = E>,
        B: IntoIterator<Item = Vec<E>>,
        E: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(|l| l.as_ref().to_string()).collect();
        if labels.len() > size_cap() {
            return Err(Error::SizeCapExceeded {
                size: labels.len(),
                cap: size_cap(),
            });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() {
                return Err(Error::DuplicateLabel(String::new()));
            }
            if !seen.insert(l.clone()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let index: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut masks = Vec::new();
        for basis in bases {
            let mut m = EMPTY;
            for e in &basis {
                match index.get(e.as_ref()) {
                    Some(&i) => m = m.with(i),
                    None => return Err(Error::UnknownLabel(e.as_ref().to_string())),
                }
            }
            if m.len() != basis.len() {
                // a label listed twice inside one basis
                return Err(Error::DuplicateLabel(
                    basis
                        .iter()
                        .map(|e| e.as_ref().to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                ));
            }
            masks.push(m);
        }
        masks.sort_unstable();
        masks.dedup();
        let m = Matroid::from_masks_validated(name, labels, masks)?;
        Ok(m)
    }

    /// Validated construction from masks already relative to `labels`.
    pub(crate) fn from_masks_validated(
        name: Option<&str>,
        labels: Vec<String>,
        mut bases: Vec<Subset>,
    ) -> Result<Matroid> {
        bases.sort_unstable();
        bases.dedup();
        let n = labels.len();
        if bases.is_empty() {
            return Err(Error::AxiomViolation {
                reason: "bases set is empty".into(),
                witness: None,
            });
        }
        let rank = bases[0].len();
        let full = Subset::full(n);
        for b in &bases {
            if !b.is_subset_of(full) {
                return Err(Error::AxiomViolation {
                    reason: "basis contains out-of-range positions".into(),
                    witness: None,
                });
            }
        }
        let m = Matroid {
            name: name.map(|s| s.to_string()),
            labels,
            bases,
            rank,
        };
        if let Some((reason, witness)) = m.axiom_failure() {
            return Err(Error::AxiomViolation {
                reason,
                witness: Some((m.label_vec(witness.0), m.label_vec(witness.1))),
            });
        }
        Ok(m)
    }

    /// Construction from masks that are already known to be the bases of a
    /// matroid (outputs of the classical operations below). Debug builds
    /// still verify.
    pub(crate) fn from_masks_trusted(
        name: Option<String>,
        labels: Vec<String>,
        mut bases: Vec<Subset>,
    ) -> Matroid {
        bases.sort_unstable();
        bases.dedup();
        assert!(!bases.is_empty(), "bases must be nonempty");
        let rank = bases[0].len();
        let m = Matroid {
            name,
            labels,
            bases,
            rank,
        };
        debug_assert!(m.axiom_failure().is_none());
        m
    }

    /// Complete matroid-axiom test on the bases list. Returns a failure
    /// reason plus a witness subset pair, or `None` when the list is the
    /// bases set of a matroid. Chooses between the pairwise exchange test
    /// and a rank-table submodularity test, whichever is cheaper.
    pub(crate) fn axiom_failure(&self) -> Option<(String, (Subset, Subset))> {
        if let Some(b) = self.bases.iter().find(|b| b.len() != self.rank) {
            return Some((
                "bases differ in cardinality".into(),
                (self.bases[0], *b),
            ));
        }
        let n = self.labels.len();
        let b = self.bases.len() as u64;
        let exchange_cost = b * b * (self.rank.max(1) as u64);
        let table_cost = (1u64 << n) * (n.max(1) as u64) * (n.max(1) as u64) / 2;
        if exchange_cost <= table_cost {
            self.exchange_failure()
                .map(|(b1, b2)| ("basis exchange fails".to_string(), (b1, b2)))
        } else {
            let table = RankTable::build(n, &self.bases);
            match table.local_submodularity_failure() {
                None => None,
                Some(_) => {
                    // exchange witness is the clearer report; one must exist
                    let w = self
                        .exchange_failure()
                        .expect("submodularity failed, so exchange must fail");
                    Some(("basis exchange fails".to_string(), w))
                }
            }
        }
    }

    /// Full pairwise basis-exchange test; first failing pair in sorted order.
    pub(crate) fn exchange_failure(&self) -> Option<(Subset, Subset)> {
        let set: HashSet<u32> = self.bases.iter().map(|b| b.0).collect();
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                if b1 == b2 {
                    continue;
                }
                for e in b1.minus(b2).iter() {
                    let stripped = b1.without(e);
                    let ok = b2
                        .minus(b1)
                        .iter()
                        .any(|f| set.contains(&stripped.with(f).0));
                    if !ok {
                        return Some((b1, b2));
                    }
                }
            }
        }
        None
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: Option<&str>) -> Matroid {
        self.name = name.map(|s| s.to_string());
        self
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Ground set in storage order (bit order of masks).
    pub fn ground_set(&self) -> &[String] {
        &self.labels
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.labels.len())
    }

    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn is_basis(&self, x: Subset) -> bool {
        self.bases.binary_search(&x).is_ok()
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains_label(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }

    /// Resolve a list of labels into a mask.
    pub fn subset<I, S>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut m = EMPTY;
        for l in labels {
            m = m.with(self.label_index(l.as_ref())?);
        }
        Ok(m)
    }

    /// Canonical external form of a subset: labels sorted lexicographically.
    pub fn label_vec(&self, x: Subset) -> Vec<String> {
        let mut v: Vec<String> = x.iter().map(|i| self.labels[i].clone()).collect();
        v.sort();
        v
    }

    /// Canonical subset order: by cardinality, then by sorted label list.
    pub fn canonical_cmp(&self, a: Subset, b: Subset) -> std::cmp::Ordering {
        a.len()
            .cmp(&b.len())
            .then_with(|| self.label_vec(a).cmp(&self.label_vec(b)))
    }

    /// A label not yet present, derived from `base` ("base", "base#1", ...).
    pub fn fresh_label(&self, base: &str) -> String {
        if !self.contains_label(base) {
            return base.to_string();
        }
        let mut k = 1usize;
        loop {
            let cand = format!("{base}#{k}");
            if !self.contains_label(&cand) {
                return cand;
            }
            k += 1;
        }
    }

    // ---- rank oracle ----------------------------------------------------

    /// `rank(X) = max over bases B of |B ∩ X|`.
    pub fn rank_of(&self, x: Subset) -> usize {
        self.bases
            .iter()
            .map(|b| b.inter(x).len())
            .max()
            .unwrap_or(0)
    }

    /// `X` is independent iff it is contained in some basis.
    pub fn is_independent(&self, x: Subset) -> bool {
        self.bases.iter().any(|b| x.is_subset_of(*b))
    }

    pub fn is_loop(&self, i: usize) -> bool {
        !self.bases.iter().any(|b| b.contains(i))
    }

    pub fn is_coloop(&self, i: usize) -> bool {
        self.bases.iter().all(|b| b.contains(i))
    }

    /// `cl(X) = {e : rank(X ∪ {e}) = rank(X)}`; always a flat containing `X`.
    pub fn closure(&self, x: Subset) -> Subset {
        let r = self.rank_of(x);
        let mut c = x;
        for i in 0..self.labels.len() {
            if !x.contains(i) && self.rank_of(x.with(i)) == r {
                c = c.with(i);
            }
        }
        c
    }

    pub fn spans(&self, x: Subset, e: usize) -> bool {
        x.contains(e) || self.rank_of(x.with(e)) == self.rank_of(x)
    }

    /// Dense rank table over all `2^n` subsets; the workhorse for the
    /// exhaustive verifiers.
    pub fn rank_table(&self) -> RankTable {
        RankTable::build(self.labels.len(), &self.bases)
    }

    // ---- derived set systems --------------------------------------------

    /// All minimal dependent sets, in canonical subset order.
    pub fn circuits(&self) -> Vec<Subset> {
        let n = self.labels.len();
        let t = self.rank_table();
        let mut out = Vec::new();
        for k in 1..=(self.rank + 1).min(n) {
            for x in k_subsets(n, k) {
                if t.rank(x) < x.len() && x.iter().all(|e| t.rank(x.without(e)) == k - 1) {
                    out.push(x);
                }
            }
        }
        out.sort_by(|&a, &b| self.canonical_cmp(a, b));
        out
    }

    /// All flats (closure-closed sets), in canonical subset order.
    pub fn flats(&self) -> Vec<Subset> {
        let t = self.rank_table();
        let mut set = BTreeSet::new();
        for x in all_subsets(self.labels.len()) {
            set.insert(t.closure(x));
        }
        let mut out: Vec<Subset> = set.into_iter().collect();
        out.sort_by(|&a, &b| self.canonical_cmp(a, b));
        out
    }

    /// Flats that are unions of circuits; ∅ counts (as the empty union)
    /// whenever it is a flat, i.e. when the matroid is loop-free.
    pub fn cyclic_flats(&self) -> Vec<Subset> {
        let t = self.rank_table();
        let mut out = Vec::new();
        for f in self.flats() {
            // no coloops in the restriction to f
            if f.iter().all(|e| t.rank(f.without(e)) == t.rank(f)) {
                out.push(f);
            }
        }
        out
    }

    // ---- classical operations -------------------------------------------

    /// Bases of the dual are complements of bases.
    pub fn dual(&self) -> Matroid {
        let full = self.full_set();
        let bases: Vec<Subset> = self.bases.iter().map(|b| full.minus(*b)).collect();
        Matroid::from_masks_trusted(None, self.labels.clone(), bases)
    }

    /// Delete the elements of `d`.
    pub fn delete(&self, d: Subset) -> Matroid {
        let keep = self.full_set().minus(d);
        let new_rank = self.rank_of(keep);
        let mut bases = Vec::new();
        for x in k_subsets_of(keep, new_rank) {
            if self.is_independent(x) {
                bases.push(x);
            }
        }
        let (labels, remap) = self.compact_labels(keep);
        let bases = bases.into_iter().map(|b| remap_mask(b, &remap)).collect();
        Matroid::from_masks_trusted(None, labels, bases)
    }

    /// Contract the elements of `c`: `rank'(X) = rank(X ∪ C) − rank(C)`.
    pub fn contract(&self, c: Subset) -> Matroid {
        let keep = self.full_set().minus(c);
        let new_rank = self.rank - self.rank_of(c);
        let mut bases = Vec::new();
        for x in k_subsets_of(keep, new_rank) {
            let whole = x.union(c);
            if self.bases.iter().any(|b| b.is_subset_of(whole)) {
                bases.push(x);
            }
        }
        let (labels, remap) = self.compact_labels(keep);
        let bases = bases.into_iter().map(|b| remap_mask(b, &remap)).collect();
        Matroid::from_masks_trusted(None, labels, bases)
    }

    /// Restriction to `s` (deletion of the complement).
    pub fn restriction(&self, s: Subset) -> Matroid {
        self.delete(self.full_set().minus(s))
    }

    /// Minor by contracting `c` then deleting `d`; the sets must be disjoint.
    pub fn minor(&self, c: Subset, d: Subset) -> Result<Matroid> {
        if !c.is_disjoint(d) {
            return Err(Error::PreconditionViolation(
                "contraction and deletion sets overlap".into(),
            ));
        }
        Ok(self.contract(c).delete_by_labels_of(self, d))
    }

    /// Delete, identifying elements by their labels in `reference`.
    fn delete_by_labels_of(&self, reference: &Matroid, d: Subset) -> Matroid {
        let mut mask = EMPTY;
        for i in d.iter() {
            if let Ok(j) = self.label_index(&reference.labels[i]) {
                mask = mask.with(j);
            }
        }
        self.delete(mask)
    }

    /// Direct sum; ground sets must be disjoint.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        for l in &other.labels {
            if self.contains_label(l) {
                return Err(Error::LabelCollision(l.clone()));
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        if labels.len() > size_cap() {
            return Err(Error::SizeCapExceeded {
                size: labels.len(),
                cap: size_cap(),
            });
        }
        let shift = self.labels.len();
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for b1 in &self.bases {
            for b2 in &other.bases {
                bases.push(Subset(b1.0 | b2.0 << shift));
            }
        }
        Ok(Matroid::from_masks_trusted(None, labels, bases))
    }

    /// Add a coloop labeled `e` (direct sum with a one-element free matroid).
    pub fn add_coloop(&self, e: &str) -> Result<Matroid> {
        if self.contains_label(e) {
            return Err(Error::LabelCollision(e.to_string()));
        }
        if e.is_empty() {
            return Err(Error::DuplicateLabel(String::new()));
        }
        let single = Matroid::from_masks_trusted(
            None,
            vec![e.to_string()],
            vec![Subset::singleton(0)],
        );
        self.direct_sum(&single)
    }

    /// Relabel via `map` (identity outside its domain). The completed map
    /// must be a bijection onto distinct nonempty labels.
    pub fn relabel(&self, map: &BTreeMap<String, String>) -> Result<Matroid> {
        for k in map.keys() {
            if !self.contains_label(k) {
                return Err(Error::UnknownLabel(k.clone()));
            }
        }
        let labels: Vec<String> = self
            .labels
            .iter()
            .map(|l| map.get(l).cloned().unwrap_or_else(|| l.clone()))
            .collect();
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() {
                return Err(Error::NotABijection("empty label in image".into()));
            }
            if !seen.insert(l.clone()) {
                return Err(Error::NotABijection(format!("image label {l:?} repeats")));
            }
        }
        Ok(Matroid {
            name: self.name.clone(),
            labels,
            bases: self.bases.clone(),
            rank: self.rank,
        })
    }

    /// Same ground set (as a set of labels) and same set of bases.
    pub fn equals_labeled(&self, other: &Matroid) -> bool {
        if self.labels.len() != other.labels.len() || self.rank != other.rank {
            return false;
        }
        let mut perm = Vec::with_capacity(other.labels.len());
        for l in &other.labels {
            match self.label_index(l) {
                Ok(i) => perm.push(i),
                Err(_) => return false,
            }
        }
        let mut remapped: Vec<Subset> = other
            .bases
            .iter()
            .map(|b| Subset::from_indices(b.iter().map(|i| perm[i])))
            .collect();
        remapped.sort_unstable();
        self.bases == remapped
    }

    /// Remaining labels after restriction to `keep`, plus old→new position map.
    fn compact_labels(&self, keep: Subset) -> (Vec<String>, Vec<Option<usize>>) {
        let mut labels = Vec::new();
        let mut remap = vec![None; self.labels.len()];
        for (i, l) in self.labels.iter().enumerate() {
            if keep.contains(i) {
                remap[i] = Some(labels.len());
                labels.push(l.clone());
            }
        }
        (labels, remap)
    }
}

fn remap_mask(m: Subset, remap: &[Option<usize>]) -> Subset {
    Subset::from_indices(m.iter().filter_map(|i| remap[i]))
}

/// Rank of every subset of the ground set, as a dense `2^n` table.
///
/// Built in `O(2^n · n)` from the bases list: mark bases, close downward to
/// get the independence indicator, then `rank(X) = |X|` when independent and
/// `max_e rank(X − e)` otherwise.
pub struct RankTable {
    n: usize,
    rank: Vec<u8>,
}

impl RankTable {
    pub(crate) fn build(n: usize, bases: &[Subset]) -> RankTable {
        let size = 1usize << n;
        let mut indep = vec![false; size];
        for b in bases {
            indep[b.0 as usize] = true;
        }
        for x in (0..size).rev() {
            if indep[x] {
                let mut bits = x;
                while bits != 0 {
                    let low = bits & bits.wrapping_neg();
                    indep[x ^ low] = true;
                    bits ^= low;
                }
            }
        }
        let mut rank = vec![0u8; size];
        for x in 1..size {
            if indep[x] {
                rank[x] = (x as u32).count_ones() as u8;
            } else {
                let mut best = 0u8;
                let mut bits = x;
                while bits != 0 {
                    let low = bits & bits.wrapping_neg();
                    best = best.max(rank[x ^ low]);
                    bits ^= low;
                }
                rank[x] = best;
            }
        }
        RankTable { n, rank }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rank(&self, x: Subset) -> usize {
        self.rank[x.0 as usize] as usize
    }

    #[inline]
    pub fn is_independent(&self, x: Subset) -> bool {
        self.rank(x) == x.len()
    }

    #[inline]
    pub fn spans(&self, x: Subset, e: usize) -> bool {
        x.contains(e) || self.rank(x.with(e)) == self.rank(x)
    }

    pub fn closure(&self, x: Subset) -> Subset {
        let r = self.rank(x);
        let mut c = x;
        for i in 0..self.n {
            if !x.contains(i) && self.rank(x.with(i)) == r {
                c = c.with(i);
            }
        }
        c
    }

    /// `⊓(S,T) = r(S) + r(T) − r(S ∪ T)`.
    #[inline]
    pub fn local_connectivity(&self, s: Subset, t: Subset) -> i64 {
        self.rank(s) as i64 + self.rank(t) as i64 - self.rank(s.union(t)) as i64
    }

    /// First local-submodularity violation, if any. For a table built from a
    /// same-cardinality bases list, this is a complete matroid test:
    /// normalization and unit increase hold by construction, so local
    /// submodularity is the remaining rank axiom.
    pub(crate) fn local_submodularity_failure(&self) -> Option<(Subset, Subset)> {
        let size = 1usize << self.n;
        for x in 0..size {
            let free = !(x as u32) & Subset::full(self.n).0;
            let mut e_bits = free;
            while e_bits != 0 {
                let e = e_bits.trailing_zeros() as usize;
                e_bits &= e_bits - 1;
                let xe = x | 1 << e;
                let mut f_bits = e_bits;
                while f_bits != 0 {
                    let f = f_bits.trailing_zeros() as usize;
                    f_bits &= f_bits - 1;
                    let xf = x | 1 << f;
                    if self.rank[xe] + self.rank[xf] < self.rank[xe | xf] + self.rank[x] {
                        return Some((Subset(xe as u32), Subset(xf as u32)));
                    }
                }
            }
        }
        None
    }
}
