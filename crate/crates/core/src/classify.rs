//! Multiplicative closed subsets and the five S-relative hyperideal classes.
//!
//! A class holds when one witness `t ∈ S` settles every triggering pair
//! `(u,v)`; witnesses are searched in ascending element order and the first
//! success is recorded, so reports are deterministic. When a class fails,
//! the counterexample is the first pair (in ascending `(u,v)` order) that
//! defeats every candidate witness; if each pair is rescued by some witness,
//! the first failing pair of the smallest candidate is reported instead.

use crate::ideals::{
    is_c_mask, is_strong_c_mask, radical_primes_mask, Hyperideal,
};
use crate::ring::{HyperringTable, RingError};
use crate::set::{BitIter, Element, ElementSet, RingId};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum McsError {
    #[error("the empty set is not an MCS")]
    Empty,
    #[error("no identity element in the set")]
    NoIdentity,
    #[error("({s1} ∘ {s2}) misses the set")]
    NotClosed { s1: Element, s2: Element },
}

impl McsError {
    pub fn code(&self) -> &'static str {
        "E_MCS"
    }
}

/// A multiplicative closed subset: contains an identity element and meets
/// `s1∘s2` for every pair of its members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MCSet {
    set: ElementSet,
    witnessed_identity: Element,
}

impl MCSet {
    pub fn new(g: &HyperringTable, set: ElementSet) -> Result<MCSet, McsError> {
        assert_eq!(set.owner(), g.id(), "set owner mismatch");
        is_mcs(g, &set)?;
        let witnessed_identity = Element(
            (set.bits() & g.identities_mask()).trailing_zeros() as usize,
        );
        Ok(MCSet {
            set,
            witnessed_identity,
        })
    }

    pub fn set(&self) -> ElementSet {
        self.set
    }

    pub fn witnessed_identity(&self) -> Element {
        self.witnessed_identity
    }
}

/// Identity membership plus the pairwise intersection condition.
pub fn is_mcs(g: &HyperringTable, s: &ElementSet) -> Result<(), McsError> {
    assert_eq!(s.owner(), g.id(), "set owner mismatch");
    let bits = s.bits();
    if bits == 0 {
        return Err(McsError::Empty);
    }
    if bits & g.identities_mask() == 0 {
        return Err(McsError::NoIdentity);
    }
    for s1 in BitIter(bits) {
        for s2 in BitIter(bits) {
            if g.hyp_mask(s1, s2) & bits == 0 {
                return Err(McsError::NotClosed {
                    s1: Element(s1),
                    s2: Element(s2),
                });
            }
        }
    }
    Ok(())
}

pub(crate) fn is_mcs_mask(g: &HyperringTable, bits: u64) -> bool {
    is_mcs(g, &g.wrap(bits)).is_ok()
}

/// All MCSets of size at most `max_size`, ordered by (size, element tuple).
pub fn enumerate_mcs(g: &HyperringTable, max_size: usize) -> Vec<MCSet> {
    let n = g.n();
    let mut out = Vec::new();
    let mut combo: Vec<usize> = Vec::new();
    for size in 1..=max_size.min(n) {
        combo.clear();
        emit_combinations(g, n, size, 0, &mut combo, &mut out);
    }
    out
}

fn emit_combinations(
    g: &HyperringTable,
    n: usize,
    size: usize,
    start: usize,
    combo: &mut Vec<usize>,
    out: &mut Vec<MCSet>,
) {
    if combo.len() == size {
        let mut bits = 0u64;
        for &e in combo.iter() {
            bits |= 1u64 << e;
        }
        if let Ok(m) = MCSet::new(g, g.wrap(bits)) {
            out.push(m);
        }
        return;
    }
    for e in start..n {
        combo.push(e);
        emit_combinations(g, n, size, e + 1, combo, out);
        combo.pop();
    }
}

/// The saturation `𝔖 = {a : (a∘b) ∩ S ≠ ∅ for some b}`; always ⊇ S.
pub fn saturate(g: &HyperringTable, s: &MCSet) -> ElementSet {
    let sbits = s.set.bits();
    let mut out = 0u64;
    for a in 0..g.n() {
        for b in 0..g.n() {
            if g.hyp_mask(a, b) & sbits != 0 {
                out |= 1u64 << a;
                break;
            }
        }
    }
    g.wrap(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HyperidealClass {
    SPrime,
    SPrimary,
    Quasi,
    WeaklyQuasi,
    StronglyQuasi,
}

pub const CLASS_ORDER: [HyperidealClass; 5] = [
    HyperidealClass::SPrime,
    HyperidealClass::SPrimary,
    HyperidealClass::Quasi,
    HyperidealClass::WeaklyQuasi,
    HyperidealClass::StronglyQuasi,
];

impl HyperidealClass {
    pub fn name(self) -> &'static str {
        match self {
            HyperidealClass::SPrime => "s_prime",
            HyperidealClass::SPrimary => "s_primary",
            HyperidealClass::Quasi => "quasi",
            HyperidealClass::WeaklyQuasi => "weakly_quasi",
            HyperidealClass::StronglyQuasi => "strongly_quasi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassStatus {
    Holds { witness: Element },
    Fails { counterexample: (Element, Element) },
    /// Reported when the disjointness precondition `A ∩ S = ∅` is unmet.
    Skipped,
}

impl ClassStatus {
    pub fn holds(&self) -> bool {
        matches!(self, ClassStatus::Holds { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub ring: RingId,
    pub ideal: ElementSet,
    pub mcs: ElementSet,
    pub disjoint: bool,
    pub radical: ElementSet,
    pub is_c: bool,
    pub is_strong_c: bool,
    pub classes: [(HyperidealClass, ClassStatus); 5],
}

impl ClassificationReport {
    pub fn status(&self, class: HyperidealClass) -> ClassStatus {
        self.classes
            .iter()
            .find(|(c, _)| *c == class)
            .map(|(_, s)| *s)
            .expect("all five classes present")
    }

    /// Canonical `key=value` report body.
    pub fn render_lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("disjoint={}", self.disjoint),
            format!("radical={}", self.radical),
            format!("c_hyperideal={}", self.is_c),
            format!("strong_c={}", self.is_strong_c),
        ];
        for (class, status) in &self.classes {
            let (holds, witness, cex) = match status {
                ClassStatus::Holds { witness } => ("true".into(), witness.to_string(), "-".into()),
                ClassStatus::Fails { counterexample: (u, v) } => {
                    ("false".into(), "-".into(), format!("({u},{v})"))
                }
                ClassStatus::Skipped => ("skip".to_string(), "-".into(), "-".into()),
            };
            out.push(format!(
                "class={} holds={holds} witness={witness} counterexample={cex}",
                class.name()
            ));
        }
        out
    }
}

fn pair_triggers(g: &HyperringTable, class: HyperidealClass, a: u64, u: usize, v: usize) -> bool {
    let prod = g.hyp_mask(u, v);
    match class {
        HyperidealClass::WeaklyQuasi => prod & !a == 0 && prod & 1 == 0,
        _ => prod & !a == 0,
    }
}

fn pair_concludes(
    g: &HyperringTable,
    class: HyperidealClass,
    t: usize,
    u: usize,
    v: usize,
    a: u64,
    rad: u64,
) -> bool {
    let tu = g.hyp_mask(t, u);
    let tv = g.hyp_mask(t, v);
    match class {
        HyperidealClass::SPrime => tu & !a == 0 || tv & !a == 0,
        HyperidealClass::SPrimary => tu & !a == 0 || tv & !rad == 0,
        HyperidealClass::Quasi | HyperidealClass::WeaklyQuasi => {
            tu & !rad == 0 || tv & !rad == 0
        }
        HyperidealClass::StronglyQuasi => {
            // t∘u² = {t}∘(u∘u); bracketing is irrelevant by axiom II
            let tu2 = g.prod_mask(1u64 << t, g.hyp_mask(u, u));
            tu2 & !a == 0 || tv & !rad == 0
        }
    }
}

pub(crate) fn eval_class(
    g: &HyperringTable,
    class: HyperidealClass,
    a: u64,
    s: u64,
    rad: u64,
) -> ClassStatus {
    if a & s != 0 {
        return ClassStatus::Skipped;
    }
    let n = g.n();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if pair_triggers(g, class, a, u, v) {
                pairs.push((u, v));
            }
        }
    }
    let witnesses: Vec<usize> = BitIter(s).collect();
    let mut failing: Vec<Vec<(usize, usize)>> = Vec::with_capacity(witnesses.len());
    for &t in &witnesses {
        let bad: Vec<(usize, usize)> = pairs
            .iter()
            .copied()
            .filter(|&(u, v)| !pair_concludes(g, class, t, u, v, a, rad))
            .collect();
        if bad.is_empty() {
            return ClassStatus::Holds {
                witness: Element(t),
            };
        }
        failing.push(bad);
    }
    let universal = pairs
        .iter()
        .copied()
        .find(|p| failing.iter().all(|bad| bad.contains(p)));
    let (u, v) = universal.unwrap_or(failing[0][0]);
    ClassStatus::Fails {
        counterexample: (Element(u), Element(v)),
    }
}

/// Class membership as a bare predicate: false when `A ∩ S ≠ ∅` (every
/// definition presupposes disjointness).
pub(crate) fn class_holds(
    g: &HyperringTable,
    class: HyperidealClass,
    a: u64,
    s: u64,
    rad: u64,
) -> bool {
    a & s == 0 && eval_class(g, class, a, s, rad).holds()
}

/// Full report for one `(ideal, MCS)` pair. When the sets intersect the
/// report carries `disjoint = false` and all class fields are skipped.
pub fn classify(
    g: &HyperringTable,
    a: &Hyperideal,
    s: &MCSet,
) -> Result<ClassificationReport, RingError> {
    let abits = a.set().bits();
    let sbits = s.set().bits();
    let rad = radical_primes_mask(g, abits)?;
    let (is_c, _) = is_c_mask(g, abits)?;
    let (is_strong_c, _) = is_strong_c_mask(g, abits)?;
    let disjoint = abits & sbits == 0;
    let mut classes = [(HyperidealClass::SPrime, ClassStatus::Skipped); 5];
    for (slot, class) in classes.iter_mut().zip(CLASS_ORDER) {
        *slot = (
            class,
            if disjoint {
                eval_class(g, class, abits, sbits, rad)
            } else {
                ClassStatus::Skipped
            },
        );
    }
    Ok(ClassificationReport {
        ring: g.id(),
        ideal: a.set(),
        mcs: s.set(),
        disjoint,
        radical: g.wrap(rad),
        is_c,
        is_strong_c,
        classes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AvoidanceOutcome {
    /// Some `t ∈ S` and cover index `j` with `t∘A ⊆ rad(A_j)`.
    Witness { t: Element, cover: usize },
    /// No witness exists; a counterexample to the avoidance theorem.
    Fail,
    /// A precondition was unmet.
    Skip(&'static str),
}

/// Avoidance search for `A ⊆ ∪ covers` over quasi S-primary covers:
/// returns the first `(t, j)` in ascending `(t, j)` order satisfying
/// `t∘A ⊆ rad(A_j)`.
///
/// Non-quasi covers and uncovered ideals are hard preconditions and Skip.
/// The search itself does not need the covers to be C-hyperideals, so a
/// witness is returned whenever one exists; a witnessless search is a
/// theorem counterexample (Fail) only when every cover is also a
/// C-hyperideal, and Skips otherwise.
pub fn avoidance_witness(
    g: &HyperringTable,
    a: &Hyperideal,
    covers: &[Hyperideal],
    s: &MCSet,
) -> Result<AvoidanceOutcome, RingError> {
    let sbits = s.set().bits();
    if covers.is_empty() {
        return Ok(AvoidanceOutcome::Skip("no_covers"));
    }
    let mut union = 0u64;
    let mut rads = Vec::with_capacity(covers.len());
    let mut all_c = true;
    for cover in covers {
        let c = cover.set().bits();
        union |= c;
        let rad = radical_primes_mask(g, c)?;
        if !class_holds(g, HyperidealClass::Quasi, c, sbits, rad) {
            return Ok(AvoidanceOutcome::Skip("cover_not_quasi_s_primary"));
        }
        all_c &= is_c_mask(g, c)?.0;
        rads.push(rad);
    }
    let abits = a.set().bits();
    if abits & !union != 0 {
        return Ok(AvoidanceOutcome::Skip("ideal_not_covered"));
    }
    for t in BitIter(sbits) {
        let ta = g.prod_mask(1u64 << t, abits);
        for (j, &rad) in rads.iter().enumerate() {
            if ta & !rad == 0 {
                return Ok(AvoidanceOutcome::Witness {
                    t: Element(t),
                    cover: j,
                });
            }
        }
    }
    Ok(if all_c {
        AvoidanceOutcome::Fail
    } else {
        AvoidanceOutcome::Skip("cover_not_c_hyperideal")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{zero_ideal, Hyperideal};
    use crate::ring::build_zphi;

    fn weak() -> HyperringTable {
        build_zphi(6, &[1, 2, 3, 4, 5]).unwrap()
    }

    fn madar() -> HyperringTable {
        build_zphi(4, &[1, 3]).unwrap()
    }

    fn haji() -> HyperringTable {
        build_zphi(5, &[1, 2, 3]).unwrap()
    }

    #[test]
    fn mcs_examples() {
        let m = madar();
        assert!(is_mcs(&m, &m.subset(&[1, 3]).unwrap()).is_ok());
        let w = weak();
        assert!(is_mcs(&w, &w.subset(&[1, 5]).unwrap()).is_ok());
        assert_eq!(
            is_mcs(&w, &w.subset(&[2]).unwrap()).unwrap_err(),
            McsError::NoIdentity
        );
        assert_eq!(is_mcs(&w, &w.empty_set()).unwrap_err(), McsError::Empty);
    }

    #[test]
    fn enumerate_includes_paper_mcs() {
        let m = madar();
        let sets: Vec<String> = enumerate_mcs(&m, 2)
            .iter()
            .map(|s| s.set().to_string())
            .collect();
        assert!(sets.contains(&"{1,3}".to_string()));
        // every singleton identity set that closes on itself shows up
        assert!(sets.contains(&"{1}".to_string()));
    }

    #[test]
    fn saturation_examples() {
        let w = weak();
        let s = MCSet::new(&w, w.subset(&[1, 5]).unwrap()).unwrap();
        assert_eq!(saturate(&w, &s).to_string(), "{1,5}");
        let h = haji();
        let s = MCSet::new(&h, h.subset(&[1, 3]).unwrap()).unwrap();
        assert_eq!(saturate(&h, &s).to_string(), "{1,2,3,4}");
        assert!(s.set().is_subset(&saturate(&h, &s)));
    }

    fn report(
        g: &HyperringTable,
        ideal: &[usize],
        mcs: &[usize],
    ) -> ClassificationReport {
        let a = Hyperideal::new(g, g.subset(ideal).unwrap()).unwrap();
        let s = MCSet::new(g, g.subset(mcs).unwrap()).unwrap();
        classify(g, &a, &s).unwrap()
    }

    #[test]
    fn madar_ideal_is_quasi() {
        let m = madar();
        let r = report(&m, &[0, 2], &[1, 3]);
        assert!(r.disjoint);
        assert_eq!(r.radical.to_string(), "{0,2}");
        assert!(r.is_c && r.is_strong_c);
        match r.status(HyperidealClass::Quasi) {
            ClassStatus::Holds { witness } => assert_eq!(witness, Element(1)),
            other => panic!("expected quasi to hold, got {other:?}"),
        }
    }

    #[test]
    fn weak_zero_ideal_classes() {
        let w = weak();
        let z = zero_ideal(&w);
        let s = MCSet::new(&w, w.subset(&[1, 5]).unwrap()).unwrap();
        let r = classify(&w, &z, &s).unwrap();
        assert!(r.status(HyperidealClass::WeaklyQuasi).holds());
        assert!(!r.status(HyperidealClass::Quasi).holds());
        assert!(!r.status(HyperidealClass::StronglyQuasi).holds());
        match r.status(HyperidealClass::Quasi) {
            ClassStatus::Fails { counterexample } => {
                assert_eq!(counterexample, (Element(2), Element(3)));
            }
            other => panic!("expected quasi to fail, got {other:?}"),
        }
    }

    #[test]
    fn weak_primes_are_strongly_quasi() {
        let w = weak();
        for ideal in [&[0usize, 3][..], &[0, 2, 4][..]] {
            let r = report(&w, ideal, &[1, 5]);
            assert!(
                r.status(HyperidealClass::StronglyQuasi).holds(),
                "{ideal:?} must be strongly quasi"
            );
        }
    }

    #[test]
    fn haji_zero_is_strongly_quasi_and_quasi() {
        let h = haji();
        let r = report(&h, &[0], &[1, 3]);
        assert!(r.status(HyperidealClass::StronglyQuasi).holds());
        assert!(r.status(HyperidealClass::Quasi).holds());
    }

    #[test]
    fn nondisjoint_reports_skip() {
        let w = weak();
        let a = Hyperideal::new(&w, w.full_set()).unwrap();
        let s = MCSet::new(&w, w.subset(&[1, 5]).unwrap()).unwrap();
        let r = classify(&w, &a, &s).unwrap();
        assert!(!r.disjoint);
        for (_, status) in &r.classes {
            assert_eq!(*status, ClassStatus::Skipped);
        }
    }

    #[test]
    fn witness_is_member_of_s() {
        let m = madar();
        let r = report(&m, &[0, 2], &[1, 3]);
        for (_, status) in &r.classes {
            if let ClassStatus::Holds { witness } = status {
                assert!(r.mcs.contains(*witness));
            }
        }
    }

    #[test]
    fn classify_is_deterministic() {
        let w = weak();
        let a = zero_ideal(&w);
        let s = MCSet::new(&w, w.subset(&[1, 5]).unwrap()).unwrap();
        let r1 = classify(&w, &a, &s).unwrap();
        let r2 = classify(&w, &a, &s).unwrap();
        assert_eq!(r1.render_lines(), r2.render_lines());
    }

    #[test]
    fn avoidance_examples() {
        let w = weak();
        let s = MCSet::new(&w, w.subset(&[1, 5]).unwrap()).unwrap();
        let a = zero_ideal(&w);
        let covers = vec![
            Hyperideal::new(&w, w.subset(&[0, 3]).unwrap()).unwrap(),
            Hyperideal::new(&w, w.subset(&[0, 2, 4]).unwrap()).unwrap(),
        ];
        match avoidance_witness(&w, &a, &covers, &s).unwrap() {
            AvoidanceOutcome::Witness { .. } => {}
            other => panic!("expected a witness, got {other:?}"),
        }
        // single-cover containment case
        let single = vec![covers[0]];
        let a03 = Hyperideal::new(&w, w.subset(&[0, 3]).unwrap()).unwrap();
        match avoidance_witness(&w, &a03, &single, &s).unwrap() {
            AvoidanceOutcome::Witness { cover, .. } => assert_eq!(cover, 0),
            other => panic!("expected witness, got {other:?}"),
        }
        // covers violating the quasi precondition -> Skip
        let z = vec![zero_ideal(&w)];
        match avoidance_witness(&w, &a, &z, &s).unwrap() {
            AvoidanceOutcome::Skip(_) => {}
            other => panic!("expected skip, got {other:?}"),
        }
    }
}
