//! Hyperideal predicates, generation, enumeration, radicals and the closure
//! families behind the C-hyperideal and strong C-hyperideal checks.
//!
//! Enumeration walks the additive subgroup lattice (every hyperideal is an
//! additive subgroup) and filters for absorption, rather than scanning all
//! 2^n subsets. Lists are sorted by (cardinality, mask) and the lattice is
//! computed once per ring.

use crate::ring::{family_capacity, HyperringTable, RingError};
use crate::set::{mask_order, BitIter, Element, ElementSet};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("the empty set is not a hyperideal")]
    Empty,
    #[error("not closed under subtraction: {x} - {y} leaves the set")]
    Subtraction { x: Element, y: Element },
    #[error("not absorbing: {r} ∘ {x} leaves the set")]
    Absorption { r: Element, x: Element },
    #[error("the full carrier is not a proper hyperideal")]
    NotProper,
}

impl IdealError {
    pub fn code(&self) -> &'static str {
        "E_IDEAL"
    }
}

/// A validated hyperideal: nonempty, closed under subtraction, absorbing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hyperideal {
    set: ElementSet,
}

impl Hyperideal {
    pub fn new(g: &HyperringTable, set: ElementSet) -> Result<Hyperideal, IdealError> {
        is_hyperideal(g, &set)?;
        Ok(Hyperideal { set })
    }

    pub fn set(&self) -> ElementSet {
        self.set
    }

    pub fn is_proper(&self, g: &HyperringTable) -> bool {
        self.set.bits() != g.full_set().bits()
    }
}

/// Both closure conditions, with the first violating pair on failure.
pub fn is_hyperideal(g: &HyperringTable, set: &ElementSet) -> Result<(), IdealError> {
    assert_eq!(set.owner(), g.id(), "set owner mismatch");
    ideal_violation_mask(g, set.bits())
}

pub(crate) fn ideal_violation_mask(g: &HyperringTable, a: u64) -> Result<(), IdealError> {
    if a == 0 {
        return Err(IdealError::Empty);
    }
    for x in BitIter(a) {
        for y in BitIter(a) {
            if a & (1u64 << g.add_idx(x, g.neg_idx(y))) == 0 {
                return Err(IdealError::Subtraction {
                    x: Element(x),
                    y: Element(y),
                });
            }
        }
    }
    for r in 0..g.n() {
        for x in BitIter(a) {
            if g.hyp_mask(r, x) & !a != 0 {
                return Err(IdealError::Absorption {
                    r: Element(r),
                    x: Element(x),
                });
            }
        }
    }
    Ok(())
}

pub(crate) fn is_ideal_mask(g: &HyperringTable, a: u64) -> bool {
    ideal_violation_mask(g, a).is_ok()
}

/// Least hyperideal containing `seed`: fixpoint of closure under
/// subtraction and absorption.
pub fn generate_hyperideal(g: &HyperringTable, seed: &ElementSet) -> Hyperideal {
    assert_eq!(seed.owner(), g.id(), "set owner mismatch");
    assert!(!seed.is_empty(), "generator set must be nonempty");
    Hyperideal {
        set: g.wrap(gen_ideal_mask(g, seed.bits())),
    }
}

pub(crate) fn gen_ideal_mask(g: &HyperringTable, seed: u64) -> u64 {
    let mut cur = seed;
    loop {
        let mut next = cur;
        for x in BitIter(cur) {
            for y in BitIter(cur) {
                next |= 1u64 << g.add_idx(x, g.neg_idx(y));
            }
        }
        for r in 0..g.n() {
            for x in BitIter(cur) {
                next |= g.hyp_mask(r, x);
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// The hyperideal generated by the additive zero. Computed as a closure;
/// it need not be the singleton `{0}`.
pub fn zero_ideal(g: &HyperringTable) -> Hyperideal {
    Hyperideal {
        set: g.wrap(gen_ideal_mask(g, 1)),
    }
}

/// Ideals, primes and maximals of one ring, in (cardinality, mask) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IdealLattice {
    pub(crate) ideals: Vec<u64>,
    pub(crate) primes: Vec<u64>,
    pub(crate) maximals: Vec<u64>,
}

fn subgroup_closure(g: &HyperringTable, seed: u64) -> u64 {
    let mut cur = seed | 1;
    loop {
        let mut next = cur;
        for x in BitIter(cur) {
            next |= 1u64 << g.neg_idx(x);
            for y in BitIter(cur) {
                next |= 1u64 << g.add_idx(x, y);
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn build_lattice(g: &HyperringTable) -> Result<IdealLattice, RingError> {
    let bound = family_capacity();
    let mut found: BTreeSet<u64> = BTreeSet::new();
    let mut stack = vec![subgroup_closure(g, 1)];
    while let Some(h) = stack.pop() {
        if !found.insert(h) {
            continue;
        }
        if found.len() > bound {
            return Err(RingError::Capacity {
                requested: found.len(),
                limit: bound,
            });
        }
        for e in BitIter(g.full_mask() & !h) {
            let h2 = subgroup_closure(g, h | (1u64 << e));
            if !found.contains(&h2) {
                stack.push(h2);
            }
        }
    }
    let mut ideals: Vec<u64> = found
        .into_iter()
        .filter(|&h| is_ideal_mask(g, h))
        .collect();
    ideals.sort_by_key(|&m| mask_order(m));
    let primes: Vec<u64> = ideals
        .iter()
        .copied()
        .filter(|&a| is_prime_mask(g, a))
        .collect();
    let full = g.full_mask();
    let maximals: Vec<u64> = ideals
        .iter()
        .copied()
        .filter(|&a| {
            a != full
                && ideals
                    .iter()
                    .all(|&m| !(a & !m == 0 && a != m && m != full))
        })
        .collect();
    Ok(IdealLattice {
        ideals,
        primes,
        maximals,
    })
}

pub(crate) fn lattice(g: &HyperringTable) -> Result<&IdealLattice, RingError> {
    g.caches
        .lattice
        .get_or_init(|| build_lattice(g))
        .as_ref()
        .map_err(|e| e.clone())
}

/// All hyperideals, deterministic (cardinality, mask) order. Complete: the
/// subgroup walk visits every additive subgroup, and every hyperideal is one.
pub fn enumerate_hyperideals(g: &HyperringTable) -> Result<Vec<Hyperideal>, RingError> {
    Ok(lattice(g)?
        .ideals
        .iter()
        .map(|&m| Hyperideal { set: g.wrap(m) })
        .collect())
}

pub(crate) fn is_prime_mask(g: &HyperringTable, a: u64) -> bool {
    if a == g.full_mask() {
        return false;
    }
    for u in 0..g.n() {
        for v in 0..g.n() {
            if g.hyp_mask(u, v) & !a == 0 && a & (1u64 << u) == 0 && a & (1u64 << v) == 0 {
                return false;
            }
        }
    }
    true
}

pub(crate) fn is_primary_mask(g: &HyperringTable, a: u64) -> Result<bool, RingError> {
    if a == g.full_mask() {
        return Ok(false);
    }
    let rad = radical_primes_mask(g, a)?;
    for u in 0..g.n() {
        for v in 0..g.n() {
            if g.hyp_mask(u, v) & !a == 0 && a & (1u64 << u) == 0 && rad & (1u64 << v) == 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Prime test by exhaustive pair scan. The carrier itself is rejected.
pub fn is_prime(g: &HyperringTable, a: &Hyperideal) -> Result<bool, IdealError> {
    if !a.is_proper(g) {
        return Err(IdealError::NotProper);
    }
    Ok(is_prime_mask(g, a.set.bits()))
}

pub fn is_primary(g: &HyperringTable, a: &Hyperideal) -> Result<bool, RingError> {
    is_primary_mask(g, a.set.bits())
}

pub fn is_maximal(g: &HyperringTable, a: &Hyperideal) -> Result<bool, RingError> {
    Ok(lattice(g)?.maximals.contains(&a.set.bits()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicalMode {
    /// Intersection of all prime hyperideals containing the ideal; the full
    /// carrier when no prime contains it.
    Primes,
    /// `{a : a^k ⊆ A for some k ≥ 1}`, with cycle detection over power sets.
    Powers,
}

pub(crate) fn radical_primes_mask(g: &HyperringTable, a: u64) -> Result<u64, RingError> {
    let lat = lattice(g)?;
    let mut out = g.full_mask();
    let mut any = false;
    for &p in &lat.primes {
        if a & !p == 0 {
            out &= p;
            any = true;
        }
    }
    Ok(if any { out } else { g.full_mask() })
}

pub(crate) fn radical_powers_mask(g: &HyperringTable, a: u64) -> u64 {
    let mut out = 0u64;
    for e in 0..g.n() {
        let base = 1u64 << e;
        let mut p = base;
        let mut seen: Vec<u64> = Vec::new();
        loop {
            if p & !a == 0 {
                out |= base;
                break;
            }
            if seen.contains(&p) {
                break;
            }
            seen.push(p);
            p = g.prod_mask(p, base);
        }
    }
    out
}

pub fn radical(
    g: &HyperringTable,
    a: &Hyperideal,
    mode: RadicalMode,
) -> Result<ElementSet, RingError> {
    let bits = match mode {
        RadicalMode::Primes => radical_primes_mask(g, a.set.bits())?,
        RadicalMode::Powers => radical_powers_mask(g, a.set.bits()),
    };
    Ok(g.wrap(bits))
}

/// All sets expressible as hyperproducts of two or more elements, closed
/// under one more right multiplication by a singleton. Bounded by the
/// family capacity.
pub(crate) fn product_family(g: &HyperringTable) -> Result<&Vec<u64>, RingError> {
    g.caches
        .product_family
        .get_or_init(|| build_product_family(g))
        .as_ref()
        .map_err(|e| e.clone())
}

fn build_product_family(g: &HyperringTable) -> Result<Vec<u64>, RingError> {
    let cap = family_capacity();
    let mut fam: BTreeSet<u64> = BTreeSet::new();
    let mut work: Vec<u64> = Vec::new();
    for a in 0..g.n() {
        for b in 0..g.n() {
            let t = g.hyp_mask(a, b);
            if fam.insert(t) {
                work.push(t);
            }
        }
    }
    while let Some(t) = work.pop() {
        for c in 0..g.n() {
            let u = g.prod_mask(t, 1u64 << c);
            if fam.insert(u) {
                if fam.len() > cap {
                    return Err(RingError::Capacity {
                        requested: fam.len(),
                        limit: cap,
                    });
                }
                work.push(u);
            }
        }
    }
    let mut out: Vec<u64> = fam.into_iter().collect();
    out.sort_by_key(|&m| mask_order(m));
    Ok(out)
}

/// Finite sums of finite products (product length 1 allowed, so singleton
/// terms participate), closed under one more set-sum with a product set.
pub(crate) fn sum_family(g: &HyperringTable) -> Result<&Vec<u64>, RingError> {
    g.caches
        .sum_family
        .get_or_init(|| build_sum_family(g))
        .as_ref()
        .map_err(|e| e.clone())
}

fn build_sum_family(g: &HyperringTable) -> Result<Vec<u64>, RingError> {
    let cap = family_capacity();
    let mut prods: Vec<u64> = product_family(g)?.clone();
    for e in 0..g.n() {
        prods.push(1u64 << e);
    }
    prods.sort_unstable();
    prods.dedup();
    let mut fam: BTreeSet<u64> = prods.iter().copied().collect();
    let mut work: Vec<u64> = fam.iter().copied().collect();
    while let Some(t) = work.pop() {
        for &p in &prods {
            let u = g.sum_mask(t, p);
            if fam.insert(u) {
                if fam.len() > cap {
                    return Err(RingError::Capacity {
                        requested: fam.len(),
                        limit: cap,
                    });
                }
                work.push(u);
            }
        }
    }
    let mut out: Vec<u64> = fam.into_iter().collect();
    out.sort_by_key(|&m| mask_order(m));
    Ok(out)
}

/// Result of a C-hyperideal or strong C-hyperideal scan. On failure the
/// witness is a family member meeting the ideal without being contained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyCheck {
    pub holds: bool,
    pub witness: Option<ElementSet>,
}

pub(crate) fn is_c_mask(g: &HyperringTable, a: u64) -> Result<(bool, Option<u64>), RingError> {
    for &t in product_family(g)? {
        if t & a != 0 && t & !a != 0 {
            return Ok((false, Some(t)));
        }
    }
    Ok((true, None))
}

pub(crate) fn is_strong_c_mask(
    g: &HyperringTable,
    a: u64,
) -> Result<(bool, Option<u64>), RingError> {
    for &t in sum_family(g)? {
        if t & a != 0 && t & !a != 0 {
            return Ok((false, Some(t)));
        }
    }
    Ok((true, None))
}

/// True iff every finite hyperproduct (length ≥ 2; singletons satisfy the
/// condition trivially) meeting `A` is contained in `A`.
pub fn is_c_hyperideal(g: &HyperringTable, a: &Hyperideal) -> Result<FamilyCheck, RingError> {
    let (holds, w) = is_c_mask(g, a.set.bits())?;
    Ok(FamilyCheck {
        holds,
        witness: w.map(|m| g.wrap(m)),
    })
}

/// The analogous condition over finite sums of finite products.
pub fn is_strong_c_hyperideal(
    g: &HyperringTable,
    a: &Hyperideal,
) -> Result<FamilyCheck, RingError> {
    let (holds, w) = is_strong_c_mask(g, a.set.bits())?;
    Ok(FamilyCheck {
        holds,
        witness: w.map(|m| g.wrap(m)),
    })
}

pub(crate) fn colon_mask(g: &HyperringTable, a: u64, d: u64) -> u64 {
    let mut out = 0u64;
    for x in 0..g.n() {
        if g.prod_mask(1u64 << x, d) & !a == 0 {
            out |= 1u64 << x;
        }
    }
    out
}

/// `(A : D) = {x : x∘D ⊆ A}`.
pub fn colon(g: &HyperringTable, a: &ElementSet, d: &ElementSet) -> ElementSet {
    assert_eq!(a.owner(), g.id(), "set owner mismatch");
    assert_eq!(d.owner(), g.id(), "set owner mismatch");
    assert!(!a.is_empty() && !d.is_empty(), "colon arguments must be nonempty");
    g.wrap(colon_mask(g, a.bits(), d.bits()))
}

/// `B∘A` as a hyperideal: the generated closure of the elementwise product
/// union (the raw union need not be subtraction-closed).
pub fn ideal_product(g: &HyperringTable, b: &Hyperideal, a: &Hyperideal) -> Hyperideal {
    let raw = g.prod_mask(b.set.bits(), a.set.bits());
    Hyperideal {
        set: g.wrap(gen_ideal_mask(g, raw)),
    }
}

/// Pure hyperideal test: every `x ∈ A` satisfies `x ∈ x∘A`.
pub fn is_pure(g: &HyperringTable, a: &Hyperideal) -> bool {
    let bits = a.set.bits();
    BitIter(bits).all(|x| g.prod_mask(1u64 << x, bits) & (1u64 << x) != 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JacobsonInfo {
    pub jacobson: ElementSet,
    pub is_local: bool,
    /// True when the ring has no maximal hyperideal and the `J(G) = G`
    /// convention applied.
    pub no_maximal: bool,
}

/// Intersection of all maximal hyperideals; the full carrier (flagged) when
/// none exist. Local iff exactly one maximal hyperideal.
pub fn jacobson(g: &HyperringTable) -> Result<JacobsonInfo, RingError> {
    let lat = lattice(g)?;
    if lat.maximals.is_empty() {
        return Ok(JacobsonInfo {
            jacobson: g.full_set(),
            is_local: false,
            no_maximal: true,
        });
    }
    let mut j = g.full_mask();
    for &m in &lat.maximals {
        j &= m;
    }
    Ok(JacobsonInfo {
        jacobson: g.wrap(j),
        is_local: lat.maximals.len() == 1,
        no_maximal: false,
    })
}
