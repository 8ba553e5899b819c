//! The two-phase gluing construction and its brute-force verifiers.
//!
//! Given a matroid `L` with a distinguished element pair `{p, q}` and a
//! matroid `N` whose ground set is partitioned into two bases `(A, B)`,
//! the construction freely places connector elements `a` and `b` on the
//! flats spanned by `E(N) ∪ {p}` and `E(N) ∪ {q}`, lifts every element of
//! `A` towards `a` and every element of `B` towards `b`, swaps the lifted
//! copies in for the originals, and finally removes `p` and `q`.
//!
//! The verifiers re-check the structural facts this construction is built
//! on by exhaustive scans: the 3-separation shape, the unique spanning set
//! for `p`, the rank difference against the shifted build, retrieval of the
//! intermediate matroid by pinned extensions, and the matching of every
//! single-element minor against a freer or smaller build.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connect::{is_exact_3_separation, pinned_extension, verify_unique_characterization, PinSpec};
use crate::error::{Error, Result};
use crate::extend::{free_extension, incomparable_pairs, place_in_span, series_extension, shift};
use crate::matroid::Matroid;
use crate::subset::{subsets_of, Subset};

// ---------------------------------------------------------------------------
// reports

/// Per-lemma verification outcome. `pass` is true exactly when no
/// counterexample was found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub lemma: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    pub stats: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Counterexample {
    Subset { elements: Vec<String> },
    Flat { elements: Vec<String> },
    Minor { op: String, element: String },
    Message { text: String },
}

impl VerificationReport {
    pub fn new(lemma: &str, counterexample: Option<Counterexample>) -> VerificationReport {
        VerificationReport {
            lemma: lemma.to_string(),
            pass: counterexample.is_none(),
            counterexample,
            stats: BTreeMap::new(),
        }
    }
}

// ---------------------------------------------------------------------------
// construction input / result

/// Validated input bundle for the construction.
#[derive(Debug, Clone)]
pub struct ConstructionInput {
    pub l: Matroid,
    pub p: String,
    pub q: String,
    pub n: Matroid,
    pub a_set: Vec<String>,
    pub b_set: Vec<String>,
    /// Label for the connector placed towards `p` (defaults to a fresh "a").
    pub a_label: String,
    /// Label for the connector placed towards `q` (defaults to a fresh "b").
    pub b_label: String,
}

impl ConstructionInput {
    pub fn new(
        l: Matroid,
        p: &str,
        q: &str,
        n: Matroid,
        a_set: &[String],
        b_set: &[String],
    ) -> Result<ConstructionInput> {
        let a_label = fresh_pin_label(&l, &n, "a", &[]);
        let b_label = fresh_pin_label(&l, &n, "b", &[&a_label]);
        ConstructionInput::with_pin_labels(l, p, q, n, a_set, b_set, &a_label, &b_label)
    }

    /// Variant with explicit connector labels; used to line the swapped
    /// build `(L, q, p; N, B, A)` up with the original one label-for-label.
    #[allow(clippy::too_many_arguments)]
    pub fn with_pin_labels(
        l: Matroid,
        p: &str,
        q: &str,
        n: Matroid,
        a_set: &[String],
        b_set: &[String],
        a_label: &str,
        b_label: &str,
    ) -> Result<ConstructionInput> {
        let input = ConstructionInput {
            l,
            p: p.to_string(),
            q: q.to_string(),
            n,
            a_set: sorted(a_set),
            b_set: sorted(b_set),
            a_label: a_label.to_string(),
            b_label: b_label.to_string(),
        };
        input.validate()?;
        Ok(input)
    }

    fn validate(&self) -> Result<()> {
        if self.p == self.q {
            return Err(Error::InputInvariantViolation("p = q".into()));
        }
        self.l.label_index(&self.p)?;
        self.l.label_index(&self.q)?;
        for lbl in self.n.ground_set() {
            if self.l.contains_label(lbl) {
                return Err(Error::InputInvariantViolation(format!(
                    "ground sets of L and N share {lbl:?}"
                )));
            }
        }
        let a = self.n.subset(&self.a_set)?;
        let b = self.n.subset(&self.b_set)?;
        if !a.is_disjoint(b) || a.union(b) != self.n.full_set() {
            return Err(Error::InputInvariantViolation(
                "(A, B) must partition E(N)".into(),
            ));
        }
        if !self.n.is_basis(a) || !self.n.is_basis(b) {
            return Err(Error::InputInvariantViolation(
                "A and B must both be bases of N".into(),
            ));
        }
        for lbl in [&self.a_label, &self.b_label] {
            if lbl.is_empty() || self.l.contains_label(lbl) || self.n.contains_label(lbl) {
                return Err(Error::LabelCollision(lbl.clone()));
            }
        }
        if self.a_label == self.b_label {
            return Err(Error::LabelCollision(self.a_label.clone()));
        }
        Ok(())
    }
}

fn sorted(v: &[String]) -> Vec<String> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn fresh_pin_label(l: &Matroid, n: &Matroid, base: &str, avoid: &[&str]) -> String {
    let mut cand = base.to_string();
    let mut k = 0usize;
    loop {
        if !l.contains_label(&cand) && !n.contains_label(&cand) && !avoid.contains(&cand.as_str())
        {
            return cand;
        }
        k += 1;
        cand = format!("{base}#{k}");
    }
}

/// The construction output: both intermediate matroids, the final one, the
/// connector labels, and the bookkeeping of lifted-element names.
#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub input: ConstructionInput,
    pub m1: Matroid,
    pub m2: Matroid,
    pub m: Matroid,
    pub a: String,
    pub b: String,
    /// original element → name of its lifted copy in `m1`
    pub label_map: BTreeMap<String, String>,
    pub pq_independent: bool,
    pub pq_coindependent: bool,
}

/// Run the construction pipeline. Placement order is fixed (a, then b, then
/// the `A` lifts in label order, then the `B` lifts) for reproducibility.
pub fn build(input: &ConstructionInput) -> Result<ConstructionResult> {
    input.validate()?;
    let ConstructionInput {
        l,
        p,
        q,
        n,
        a_set,
        b_set,
        a_label,
        b_label,
    } = input;

    let pq = l.subset([p.as_str(), q.as_str()])?;
    let pq_independent = l.is_independent(pq);
    let pq_coindependent = l.dual().is_independent(l.dual().subset([p, q])?);

    let base = n.direct_sum(l)?;
    let n_elems = base.subset(n.ground_set())?;

    // connectors
    let span_a = n_elems.with(base.label_index(p)?);
    let mut cur = place_in_span(&base, span_a, a_label)?;
    let span_b = cur.subset(n.ground_set())?.with(cur.label_index(q)?);
    cur = place_in_span(&cur, span_b, b_label)?;

    // lifts
    let mut label_map = BTreeMap::new();
    for (set, pin) in [(a_set, a_label), (b_set, b_label)] {
        for x in set {
            let lifted = cur.fresh_label(&format!("{x}@{pin}"));
            let line = cur.subset([x.as_str(), pin.as_str()])?;
            cur = place_in_span(&cur, line, &lifted)?;
            label_map.insert(x.clone(), lifted);
        }
    }
    let m1 = cur;

    // swap lifted copies in for the originals
    let originals = m1.subset(n.ground_set())?;
    let deleted = m1.delete(originals);
    let back: BTreeMap<String, String> = label_map
        .iter()
        .map(|(orig, lifted)| (lifted.clone(), orig.clone()))
        .collect();
    let m2 = deleted.relabel(&back)?;

    let m = m2.delete(m2.subset([p.as_str(), q.as_str()])?);

    Ok(ConstructionResult {
        input: input.clone(),
        m1,
        m2,
        m,
        a: a_label.clone(),
        b: b_label.clone(),
        label_map,
        pq_independent,
        pq_coindependent,
    })
}

impl ConstructionResult {
    /// `E(L) − {p, q}` as a mask of `matroid`.
    fn side_l(&self, matroid: &Matroid) -> Result<Subset> {
        let mut s = Subset::default();
        for lbl in self.input.l.ground_set() {
            if lbl != &self.input.p && lbl != &self.input.q {
                s = s.with(matroid.label_index(lbl)?);
            }
        }
        Ok(s)
    }

    /// `E(N) ∪ {a, b}` as a mask of `matroid`.
    fn side_n(&self, matroid: &Matroid) -> Result<Subset> {
        let mut s = matroid.subset(self.input.n.ground_set())?;
        s = s.with(matroid.label_index(&self.a)?);
        s = s.with(matroid.label_index(&self.b)?);
        Ok(s)
    }

    fn a_side(&self, matroid: &Matroid) -> Result<Subset> {
        Ok(matroid
            .subset(&self.input.a_set)?
            .with(matroid.label_index(&self.a)?))
    }

    fn b_side(&self, matroid: &Matroid) -> Result<Subset> {
        Ok(matroid
            .subset(&self.input.b_set)?
            .with(matroid.label_index(&self.b)?))
    }

    /// The minor `M / {a, b} \ (E(L) − {p, q})`, which equals `N` (labeled)
    /// whenever `{p, q}` is independent in `L`.
    pub fn n_minor(&self) -> Result<Matroid> {
        let ab = self
            .m
            .subset([self.a.as_str(), self.b.as_str()])?;
        Ok(self.m.contract(ab).delete_rest_of_l(self)?)
    }
}

trait DeleteRest {
    fn delete_rest_of_l(&self, res: &ConstructionResult) -> Result<Matroid>;
}

impl DeleteRest for Matroid {
    fn delete_rest_of_l(&self, res: &ConstructionResult) -> Result<Matroid> {
        let mut mask = Subset::default();
        for lbl in res.input.l.ground_set() {
            if lbl != &res.input.p && lbl != &res.input.q {
                if let Ok(i) = self.label_index(lbl) {
                    mask = mask.with(i);
                }
            }
        }
        Ok(self.delete(mask))
    }
}

// ---------------------------------------------------------------------------
// two-bases normalization

/// Output of `two_bases_normalize`: the grown matroid, the two-bases
/// partition, and the labeled certificate of the original as a minor.
#[derive(Debug, Clone)]
pub struct NormalizeResult {
    pub n_prime: Matroid,
    pub a1: Vec<String>,
    pub b1: Vec<String>,
    pub a0: Vec<String>,
    pub b0: Vec<String>,
    /// contract these (the coextension halves of the series pairs) ...
    pub minor_contract: Vec<String>,
    /// ... delete these (the freely added elements) ...
    pub minor_delete: Vec<String>,
    /// ... and relabel to recover the input matroid exactly.
    pub minor_relabel: BTreeMap<String, String>,
}

/// Grow `n0` into a matroid whose ground set splits into two disjoint bases
/// `A1` and `B1`, keeping `n0` as a minor: freely add `2·r(n0)` elements one
/// at a time, then series-extend every original element into a pair
/// `{e#1, e#2}`. Loops cannot be series-extended, so loopy inputs are
/// rejected.
pub fn two_bases_normalize(n0: &Matroid) -> Result<NormalizeResult> {
    for (i, lbl) in n0.ground_set().iter().enumerate() {
        if n0.is_loop(i) {
            return Err(Error::LoopElement(lbl.clone()));
        }
    }
    let r = n0.rank();
    let mut cur = n0.clone();
    let mut a0 = Vec::new();
    let mut b0 = Vec::new();
    for (prefix, out) in [("a", &mut a0), ("b", &mut b0)] {
        for i in 0..r {
            let lbl = cur.fresh_label(&format!("{prefix}{i}"));
            cur = free_extension(&cur, &lbl)?;
            out.push(lbl);
        }
    }
    let mut firsts = Vec::new();
    let mut seconds = Vec::new();
    let mut minor_relabel = BTreeMap::new();
    let mut originals: Vec<String> = n0.ground_set().to_vec();
    originals.sort();
    for e in &originals {
        let second = cur.fresh_label(&format!("{e}#2"));
        cur = series_extension(&cur, e, &second)?;
        let first = cur.fresh_label(&format!("{e}#1"));
        cur = cur.relabel(&BTreeMap::from([(e.clone(), first.clone())]))?;
        minor_relabel.insert(first.clone(), e.clone());
        firsts.push(first);
        seconds.push(second);
    }
    let mut a1 = a0.clone();
    a1.extend(firsts.iter().cloned());
    a1.sort();
    let mut b1 = b0.clone();
    b1.extend(seconds.iter().cloned());
    b1.sort();
    let mut minor_delete = a0.clone();
    minor_delete.extend(b0.iter().cloned());
    Ok(NormalizeResult {
        n_prime: cur,
        a1,
        b1,
        a0,
        b0,
        minor_contract: seconds,
        minor_delete,
        minor_relabel,
    })
}

// ---------------------------------------------------------------------------
// verifiers

/// Check the separation shape of `M`: `(E(L) − {p,q}, E(N) ∪ {a,b})` is an
/// exact 3-separation and both halves of the `N` side have unit
/// connectivity to the `L` side. Requires `{p, q}` independent and
/// coindependent in `L`.
pub fn verify_separation(res: &ConstructionResult) -> Result<VerificationReport> {
    if !res.pq_independent || !res.pq_coindependent {
        return Err(Error::PreconditionViolation(
            "{p,q} must be independent and coindependent in L".into(),
        ));
    }
    let m = &res.m;
    let t = m.rank_table();
    let s1 = res.side_l(m)?;
    let s2 = res.side_n(m)?;
    let pi_sep = t.local_connectivity(s1, s2);
    let pi_a = t.local_connectivity(res.a_side(m)?, s1);
    let pi_b = t.local_connectivity(res.b_side(m)?, s1);
    let is_3sep = is_exact_3_separation(m, s1, s2)?;
    let counterexample = if !is_3sep {
        Some(Counterexample::Message {
            text: format!("⊓(S1, S2) = {pi_sep}, expected an exact 3-separation"),
        })
    } else if pi_a != 1 {
        Some(Counterexample::Message {
            text: format!("⊓(A ∪ {{a}}, S1) = {pi_a}, expected 1"),
        })
    } else if pi_b != 1 {
        Some(Counterexample::Message {
            text: format!("⊓(B ∪ {{b}}, S1) = {pi_b}, expected 1"),
        })
    } else {
        None
    };
    let mut report = VerificationReport::new("separation", counterexample);
    report.stats.insert("pi_s1_s2".into(), pi_sep);
    report.stats.insert("pi_a_side_s1".into(), pi_a);
    report.stats.insert("pi_b_side_s1".into(), pi_b);
    Ok(report)
}

/// Scan every `X ⊆ A ∪ B ∪ {a, b}` in `M2`: the only such set spanning `p`
/// but not `q` must be `A ∪ {a}`.
pub fn verify_pnotq(res: &ConstructionResult) -> Result<VerificationReport> {
    let m2 = &res.m2;
    let t = m2.rank_table();
    let pi = m2.label_index(&res.input.p)?;
    let qi = m2.label_index(&res.input.q)?;
    let domain = res.side_n(m2)?;
    let expected = res.a_side(m2)?;
    let mut scanned = 0i64;
    let mut spanning: Vec<Subset> = Vec::new();
    for x in subsets_of(domain) {
        scanned += 1;
        if t.spans(x, pi) && !t.spans(x, qi) {
            spanning.push(x);
        }
    }
    spanning.sort_by(|&x, &y| m2.canonical_cmp(x, y));
    let counterexample = if spanning == vec![expected] {
        None
    } else if let Some(&bad) = spanning.iter().find(|&&x| x != expected) {
        Some(Counterexample::Subset {
            elements: m2.label_vec(bad),
        })
    } else {
        Some(Counterexample::Message {
            text: "A ∪ {a} does not span p without q".into(),
        })
    };
    let mut report = VerificationReport::new("pnotq", counterexample);
    report.stats.insert("subsets_scanned".into(), scanned);
    report
        .stats
        .insert("spanning_sets_found".into(), spanning.len() as i64);
    Ok(report)
}

/// Compare `M` against the build from the shifted `L_{p→q}`: wherever the
/// two differ in rank, the trace on `A ∪ B ∪ {a, b}` must be exactly
/// `A ∪ {a}`, and the shifted build must be pointwise freer.
pub fn verify_difference(
    res: &ConstructionResult,
    shifted: &ConstructionResult,
) -> Result<VerificationReport> {
    let m = &res.m;
    let m_sh = &shifted.m;
    if m.size() != m_sh.size() {
        return Err(Error::GroundSetMismatch);
    }
    let mut perm = Vec::with_capacity(m.size());
    for lbl in m.ground_set() {
        perm.push(m_sh.label_index(lbl).map_err(|_| Error::GroundSetMismatch)?);
    }
    let t = m.rank_table();
    let t_sh = m_sh.rank_table();
    let side_n = res.side_n(m)?;
    let expected = res.a_side(m)?;
    let n = m.size();
    let results: Vec<(u32, bool, bool)> = (0u64..1 << n)
        .into_par_iter()
        .filter_map(|bits| {
            let x = Subset(bits as u32);
            let y = Subset::from_indices(x.iter().map(|i| perm[i]));
            let r0 = t.rank(x);
            let r1 = t_sh.rank(y);
            if r0 == r1 {
                return None;
            }
            let not_freer = r1 < r0;
            let wrong_trace = x.inter(side_n) != expected;
            Some((x.0, not_freer, wrong_trace))
        })
        .collect();
    let differing = results.len() as i64;
    let mut violations: Vec<Subset> = results
        .iter()
        .filter(|&&(_, not_freer, wrong_trace)| not_freer || wrong_trace)
        .map(|&(bits, _, _)| Subset(bits))
        .collect();
    violations.sort_by(|&x, &y| m.canonical_cmp(x, y));
    let counterexample = violations.first().map(|&x| Counterexample::Subset {
        elements: m.label_vec(x),
    });
    let mut report = VerificationReport::new("difference", counterexample);
    report
        .stats
        .insert("subsets_scanned".into(), 1i64 << n);
    report.stats.insert("rank_differences".into(), differing);
    Ok(report)
}

/// Rebuild `M2` from `M` by two pinned extensions (pin `p` with a minimal
/// spanning witness from `L` and `A ∪ {a}`, then pin `q` symmetrically) and
/// check labeled equality; also check the uniqueness characterization for
/// both pinned elements over every flat.
pub fn verify_retrieval(res: &ConstructionResult) -> Result<VerificationReport> {
    let l = &res.input.l;
    let (p, q) = (&res.input.p, &res.input.q);
    if !incomparable_pairs(l)
        .iter()
        .any(|(x, y)| (x == p && y == q) || (x == q && y == p))
    {
        return Err(Error::PreconditionViolation(format!(
            "{{{p}, {q}}} is not an incomparable pair in L"
        )));
    }
    let y_p = spanning_witness(l, p, q)
        .ok_or_else(|| Error::NoIncomparableWitness(format!("no set spans {p} but not {q}")))?;
    let y_q = spanning_witness(l, q, p)
        .ok_or_else(|| Error::NoIncomparableWitness(format!("no set spans {q} but not {p}")))?;

    let m = &res.m;
    let s1 = res.side_l(m)?;
    let s2 = res.side_n(m)?;
    let spec_p = PinSpec::new(
        m,
        s1,
        s2,
        m.subset(l.label_vec(y_p))?,
        res.a_side(m)?,
        p,
    )?;
    let m_p = pinned_extension(m, &spec_p)?;
    let s1_p = s1_plus(&m_p, s1, m, p)?;
    let spec_q = PinSpec::new(
        &m_p,
        s1_p,
        m_p.subset(m.label_vec(s2))?,
        m_p.subset(l.label_vec(y_q))?,
        res.b_side(&m_p)?,
        q,
    )?;
    let m2_rebuilt = pinned_extension(&m_p, &spec_q)?;

    let mut flats_scanned = 0i64;
    let mut counterexample = None;
    if !m2_rebuilt.equals_labeled(&res.m2) {
        counterexample = Some(Counterexample::Message {
            text: "double pinned extension differs from M2".into(),
        });
    }

    // uniqueness characterization inside M2 for both pinned elements
    if counterexample.is_none() {
        for (e, y_small, y_big, other) in [(p, y_p, res.a_side(&res.m2)?, q), (q, y_q, res.b_side(&res.m2)?, p)] {
            let m2_del = res.m2.delete(Subset::singleton(res.m2.label_index(e)?));
            let s1_other = s1_plus(&m2_del, s1, m, other)?;
            let spec = PinSpec::new(
                &m2_del,
                s1_other,
                m2_del.subset(m.label_vec(s2))?,
                m2_del.subset(l.label_vec(y_small))?,
                m2_del.subset(res.m2.label_vec(y_big))?,
                e,
            )?;
            let rep = verify_unique_characterization(&res.m2, e, &spec)?;
            flats_scanned += rep.stats.get("flats_scanned").copied().unwrap_or(0);
            if !rep.pass {
                counterexample = rep.counterexample;
                break;
            }
        }
    }

    let mut report = VerificationReport::new("retrieval", counterexample);
    report.stats.insert("flats_scanned".into(), flats_scanned);
    report
        .stats
        .insert("witness_p_size".into(), y_p.len() as i64);
    report
        .stats
        .insert("witness_q_size".into(), y_q.len() as i64);
    Ok(report)
}

/// Lexicographically least minimal subset of `E(L) − {p,q}` spanning `p`
/// but not `q`.
fn spanning_witness(l: &Matroid, p: &str, q: &str) -> Option<Subset> {
    let t = l.rank_table();
    let pi = l.label_index(p).ok()?;
    let qi = l.label_index(q).ok()?;
    let domain = l.full_set().without(pi).without(qi);
    let mut found: Vec<Subset> = subsets_of(domain)
        .filter(|&z| t.spans(z, pi) && !t.spans(z, qi))
        .collect();
    found.sort_by(|&x, &y| l.canonical_cmp(x, y));
    found.first().copied()
}

/// `s1` (a mask of `of`) carried into `target` with `extra` added.
fn s1_plus(target: &Matroid, s1: Subset, of: &Matroid, extra: &str) -> Result<Subset> {
    Ok(target
        .subset(of.label_vec(s1))?
        .with(target.label_index(extra)?))
}

/// Match every single-element minor of `M` against a build over a smaller
/// or freer `L`: minors inside `L` against `build(L\e)` / `build(L/e)`,
/// deletions in `A ∪ {a}` and contractions in `B ∪ {b}` against the
/// `L_{p→q}` build, and the swapped cases against the `L_{q→p}` build.
pub fn verify_minors(
    res: &ConstructionResult,
    shifted_pq: &ConstructionResult,
    shifted_qp: &ConstructionResult,
) -> Result<VerificationReport> {
    let m = &res.m;
    for other in [&shifted_pq.m, &shifted_qp.m] {
        let mut labels_a: Vec<&String> = m.ground_set().iter().collect();
        let mut labels_b: Vec<&String> = other.ground_set().iter().collect();
        labels_a.sort();
        labels_b.sort();
        if labels_a != labels_b {
            return Err(Error::GroundSetMismatch);
        }
    }
    let input = &res.input;
    let l = &input.l;
    let a_side: Vec<String> = {
        let mut v = input.a_set.clone();
        v.push(res.a.clone());
        v
    };
    let b_side: Vec<String> = {
        let mut v = input.b_set.clone();
        v.push(res.b.clone());
        v
    };
    let mut elements: Vec<String> = m.ground_set().to_vec();
    elements.sort();

    let checks: Vec<(String, &'static str, std::result::Result<bool, Error>)> = elements
        .par_iter()
        .flat_map(|e| {
            let del = minor_of(m, e, "delete");
            let con = minor_of(m, e, "contract");
            let (del_ok, con_ok): (
                std::result::Result<bool, Error>,
                std::result::Result<bool, Error>,
            ) = if l.contains_label(e) {
                (
                    rebuild_minor(input, res, e, "delete").map(|mm| mm.equals_labeled(&del)),
                    rebuild_minor(input, res, e, "contract").map(|mm| mm.equals_labeled(&con)),
                )
            } else if a_side.contains(e) {
                (
                    Ok(minor_of(&shifted_pq.m, e, "delete").equals_labeled(&del)),
                    Ok(minor_of(&shifted_qp.m, e, "contract").equals_labeled(&con)),
                )
            } else {
                debug_assert!(b_side.contains(e));
                (
                    Ok(minor_of(&shifted_qp.m, e, "delete").equals_labeled(&del)),
                    Ok(minor_of(&shifted_pq.m, e, "contract").equals_labeled(&con)),
                )
            };
            vec![
                (e.clone(), "delete", del_ok),
                (e.clone(), "contract", con_ok),
            ]
        })
        .collect();

    let minors_checked = checks.len() as i64;
    let mut counterexample = None;
    for (e, op, outcome) in checks {
        match outcome {
            Err(err) => return Err(err),
            Ok(true) => {}
            Ok(false) => {
                counterexample = Some(Counterexample::Minor {
                    op: op.to_string(),
                    element: e,
                });
                break;
            }
        }
    }
    let mut report = VerificationReport::new("minors", counterexample);
    report.stats.insert("minors_checked".into(), minors_checked);
    Ok(report)
}

fn minor_of(m: &Matroid, e: &str, op: &str) -> Matroid {
    let i = m.label_index(e).expect("element of M");
    if op == "delete" {
        m.delete(Subset::singleton(i))
    } else {
        m.contract(Subset::singleton(i))
    }
}

/// `build` over `L \ e` or `L / e` with everything else unchanged.
fn rebuild_minor(
    input: &ConstructionInput,
    res: &ConstructionResult,
    e: &str,
    op: &str,
) -> Result<Matroid> {
    let li = input.l.label_index(e)?;
    let l_small = if op == "delete" {
        input.l.delete(Subset::singleton(li))
    } else {
        input.l.contract(Subset::singleton(li))
    };
    let sub_input = ConstructionInput::with_pin_labels(
        l_small,
        &input.p,
        &input.q,
        input.n.clone(),
        &input.a_set,
        &input.b_set,
        &res.a,
        &res.b,
    )?;
    Ok(build(&sub_input)?.m)
}

/// Scan the incomparable pairs of `l` in canonical order and return the
/// first `(p, q)` whose two shifts both satisfy `member`.
pub fn find_special_pair<F>(l: &Matroid, member: F) -> Option<(String, String)>
where
    F: Fn(&Matroid) -> bool,
{
    for (p, q) in incomparable_pairs(l) {
        let to_q = shift(l, &p, &q).expect("shift of ground-set elements");
        let to_p = shift(l, &q, &p).expect("shift of ground-set elements");
        if member(&to_q) && member(&to_p) {
            return Some((p, q));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    pub(crate) fn demo_n() -> Matroid {
        Matroid::from_bases(Some("u12-xy"), ["x", "y"], vec![vec!["x"], vec!["y"]]).unwrap()
    }

    pub(crate) fn demo_input(p: &str, q: &str) -> ConstructionInput {
        ConstructionInput::new(
            catalog::fano().unwrap(),
            p,
            q,
            demo_n(),
            &["x".to_string()],
            &["y".to_string()],
        )
        .unwrap()
    }

    fn shifted_input(p: &str, q: &str) -> ConstructionInput {
        let l = catalog::fano().unwrap();
        ConstructionInput::with_pin_labels(
            shift(&l, p, q).unwrap(),
            p,
            q,
            demo_n(),
            &["x".to_string()],
            &["y".to_string()],
            "a",
            "b",
        )
        .unwrap()
    }

    fn swapped_shifted_input(p: &str, q: &str) -> ConstructionInput {
        let l = catalog::fano().unwrap();
        ConstructionInput::with_pin_labels(
            shift(&l, q, p).unwrap(),
            q,
            p,
            demo_n(),
            &["y".to_string()],
            &["x".to_string()],
            "b",
            "a",
        )
        .unwrap()
    }

    #[test]
    fn build_demo_sizes_and_ranks() {
        let res = build(&demo_input("1", "2")).unwrap();
        assert_eq!(res.m1.size(), 13);
        assert_eq!(res.m2.size(), 11);
        assert_eq!(res.m.size(), 9);
        assert_eq!(res.m1.rank(), 4); // r(N) + r(L)
        assert_eq!(res.m.rank(), 4);
        assert!(res.pq_independent && res.pq_coindependent);
    }

    #[test]
    fn n_minor_identity() {
        let res = build(&demo_input("1", "2")).unwrap();
        assert!(res.n_minor().unwrap().equals_labeled(&res.input.n));
    }

    #[test]
    fn build_symmetry_under_role_swap() {
        let orig = build(&demo_input("1", "2")).unwrap();
        let swapped_input = ConstructionInput::with_pin_labels(
            catalog::fano().unwrap(),
            "2",
            "1",
            demo_n(),
            &["y".to_string()],
            &["x".to_string()],
            "b",
            "a",
        )
        .unwrap();
        let swapped = build(&swapped_input).unwrap();
        assert!(swapped.m.equals_labeled(&orig.m));
    }

    #[test]
    fn p_equals_q_rejected() {
        let err = ConstructionInput::new(
            catalog::fano().unwrap(),
            "1",
            "1",
            demo_n(),
            &["x".to_string()],
            &["y".to_string()],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InputInvariantViolation(_)));
    }

    #[test]
    fn bad_partition_rejected() {
        let err = ConstructionInput::new(
            catalog::fano().unwrap(),
            "1",
            "2",
            demo_n(),
            &["x".to_string(), "y".to_string()],
            &[],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InputInvariantViolation(_)));
    }

    #[test]
    fn separation_demo_passes() {
        let res = build(&demo_input("1", "2")).unwrap();
        let rep = verify_separation(&res).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.stats["pi_s1_s2"], 2);
        assert_eq!(rep.stats["pi_a_side_s1"], 1);
        assert_eq!(rep.stats["pi_b_side_s1"], 1);
    }

    #[test]
    fn separation_requires_coindependence() {
        // in U_{2,4} ⊕ coloop the pair {coloop, 1} is not coindependent
        let mut l = catalog::uniform(2, 4).unwrap();
        l = l.add_coloop("c").unwrap();
        let input = ConstructionInput::new(
            l,
            "c",
            "1",
            demo_n(),
            &["x".to_string()],
            &["y".to_string()],
        )
        .unwrap();
        let res = build(&input).unwrap();
        assert!(!res.pq_coindependent);
        assert!(matches!(
            verify_separation(&res),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn pnotq_demo_unique_spanning_set() {
        let res = build(&demo_input("1", "2")).unwrap();
        let rep = verify_pnotq(&res).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.stats["subsets_scanned"], 16);
        assert_eq!(rep.stats["spanning_sets_found"], 1);
    }

    #[test]
    fn pnotq_symmetric_roles() {
        let swapped = ConstructionInput::with_pin_labels(
            catalog::fano().unwrap(),
            "2",
            "1",
            demo_n(),
            &["y".to_string()],
            &["x".to_string()],
            "b",
            "a",
        )
        .unwrap();
        let rep = verify_pnotq(&build(&swapped).unwrap()).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn difference_demo_passes() {
        let res = build(&demo_input("1", "2")).unwrap();
        let shifted = build(&shifted_input("1", "2")).unwrap();
        let rep = verify_difference(&res, &shifted).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.stats["subsets_scanned"], 512);
        assert!(rep.stats["rank_differences"] > 0, "lemma must be non-vacuous");
    }

    #[test]
    fn retrieval_demo_passes() {
        let res = build(&demo_input("1", "2")).unwrap();
        let rep = verify_retrieval(&res).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.stats["flats_scanned"] > 0);
    }

    #[test]
    fn retrieval_requires_incomparable_pair() {
        let input = ConstructionInput::new(
            catalog::uniform(2, 4).unwrap(),
            "1",
            "2",
            demo_n(),
            &["x".to_string()],
            &["y".to_string()],
        )
        .unwrap();
        let res = build(&input).unwrap();
        assert!(matches!(
            verify_retrieval(&res),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn minors_demo_passes() {
        let res = build(&demo_input("1", "2")).unwrap();
        let shifted_pq = build(&shifted_input("1", "2")).unwrap();
        let shifted_qp = build(&swapped_shifted_input("1", "2")).unwrap();
        let rep = verify_minors(&res, &shifted_pq, &shifted_qp).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.stats["minors_checked"], 18);
    }

    #[test]
    fn minors_fuzz_wrong_partition_fails() {
        // a shifted build with the (A, B) roles swapped pairs the lifts
        // with the wrong connectors and must produce a witness minor
        let res = build(&demo_input("1", "2")).unwrap();
        let l = catalog::fano().unwrap();
        let wrong = build(
            &ConstructionInput::with_pin_labels(
                shift(&l, "1", "2").unwrap(),
                "1",
                "2",
                demo_n(),
                &["y".to_string()],
                &["x".to_string()],
                "a",
                "b",
            )
            .unwrap(),
        )
        .unwrap();
        let rep = verify_minors(&res, &wrong, &wrong).unwrap();
        assert!(!rep.pass);
        assert!(matches!(
            rep.counterexample,
            Some(Counterexample::Minor { .. })
        ));
    }

    #[test]
    fn normalize_u11() {
        let n0 = catalog::uniform(1, 1).unwrap();
        let out = two_bases_normalize(&n0).unwrap();
        assert_eq!(out.n_prime.size(), 4);
        assert_eq!(out.n_prime.rank(), 2);
        assert_eq!(out.a1, vec!["1#1", "a0"]);
        assert_eq!(out.b1, vec!["1#2", "b0"]);
        let a1 = out.n_prime.subset(&out.a1).unwrap();
        let b1 = out.n_prime.subset(&out.b1).unwrap();
        assert!(out.n_prime.is_basis(a1) && out.n_prime.is_basis(b1));
    }

    #[test]
    fn normalize_empty_matroid() {
        let out = two_bases_normalize(&catalog::empty()).unwrap();
        assert_eq!(out.n_prime.size(), 0);
        assert!(out.a1.is_empty() && out.b1.is_empty());
    }

    #[test]
    fn normalize_minor_certificate_is_labeled_exact() {
        for n0 in [catalog::uniform(1, 2).unwrap(), catalog::uniform(2, 3).unwrap()] {
            let out = two_bases_normalize(&n0).unwrap();
            let c = out.n_prime.subset(&out.minor_contract).unwrap();
            let d = out.n_prime.subset(&out.minor_delete).unwrap();
            let minor = out.n_prime.minor(c, d).unwrap();
            let back = minor.relabel(&out.minor_relabel).unwrap();
            assert!(back.equals_labeled(&n0));
        }
    }

    #[test]
    fn normalize_rejects_loops() {
        let loopy = Matroid::from_bases(None, ["x", "l"], vec![vec!["x"]]).unwrap();
        assert!(matches!(
            two_bases_normalize(&loopy),
            Err(Error::LoopElement(_))
        ));
    }

    #[test]
    fn special_pair_trivial_member() {
        let f7 = catalog::fano().unwrap();
        let first = find_special_pair(&f7, |_| true).unwrap();
        assert_eq!(first, ("1".to_string(), "2".to_string()));
        assert!(find_special_pair(&catalog::uniform(2, 4).unwrap(), |_| true).is_none());
    }

    #[test]
    fn construction_with_u24_as_n() {
        // N = U_{2,4} with A = {1,2}, B = {3,4} (already two disjoint bases)
        let n = catalog::uniform(2, 4)
            .unwrap()
            .relabel(
                &[("1", "n1"), ("2", "n2"), ("3", "n3"), ("4", "n4")]
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .collect(),
            )
            .unwrap();
        let input = ConstructionInput::new(
            catalog::fano().unwrap(),
            "1",
            "2",
            n,
            &["n1".to_string(), "n2".to_string()],
            &["n3".to_string(), "n4".to_string()],
        )
        .unwrap();
        let res = build(&input).unwrap();
        assert_eq!(res.m.size(), 11);
        assert_eq!(res.m.rank(), 5);
        assert!(res.n_minor().unwrap().equals_labeled(&res.input.n));
        assert!(verify_separation(&res).unwrap().pass);
        assert!(verify_pnotq(&res).unwrap().pass);
    }
}
