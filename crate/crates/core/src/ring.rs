//! Finite commutative multiplicative hyperrings given by explicit tables.
//!
//! A structure `(G,+,∘)` over carrier `{0,..,n-1}`: `+` is an abelian group
//! with neutral element 0, `∘` maps pairs to nonempty subsets. Validation is
//! exhaustive over all element triples, in a fixed canonical order that error
//! reporting (and the mutation-detection oracle) relies on:
//!
//! 1. axiom I   — `(G,+)` abelian group: neutral, commutativity,
//!                associativity, inverses (each scanned in ascending order)
//! 2. nonempty  — every `x∘y` nonempty
//! 3. axiom V   — `x∘y = y∘x`
//! 4. axiom II  — `(x∘y)∘{z} = {x}∘(y∘z)` as set products
//! 5. axiom III — `(-x)∘y = -(x∘y)`
//! 6. axiom IV  — `(y+z)∘x ⊆ y∘x + z∘x`
//! 7. no-identity — some `e` with `a ∈ e∘a` for every `a` must exist
//!
//! The first violated check wins; its witness elements are reported.

use crate::homs::{GoodHom, IdentityMode};
use crate::ideals::{Hyperideal, IdealLattice};
use crate::set::{render_mask, BitIter, Element, ElementSet, RingId, CAPACITY};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};
use thiserror::Error;

/// Unvalidated input tables. `add[x][y]` is an element index, `hyp[x][y]` a
/// list of element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTables {
    pub n: usize,
    pub add: Vec<Vec<usize>>,
    pub hyp: Vec<Vec<Vec<usize>>>,
}

/// Which validation check a rejected table failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    GroupI,
    NonEmpty,
    CommutativityV,
    AssociativityII,
    SignRuleIII,
    DistributivityIV,
    NoIdentity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::GroupI => "I",
            Axiom::NonEmpty => "nonempty",
            Axiom::CommutativityV => "V",
            Axiom::AssociativityII => "II",
            Axiom::SignRuleIII => "III",
            Axiom::DistributivityIV => "IV",
            Axiom::NoIdentity => "no-identity",
        };
        f.write_str(s)
    }
}

fn fmt_witness(w: &[Element]) -> String {
    let inner: Vec<String> = w.iter().map(|e| e.to_string()).collect();
    format!("({})", inner.join(","))
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("malformed tables: {0}")]
    Shape(String),
    #[error("axiom {axiom} violated at witness {}", fmt_witness(.witness))]
    Axiom { axiom: Axiom, witness: Vec<Element> },
    #[error("carrier size {requested} exceeds capacity {limit}")]
    Capacity { requested: usize, limit: usize },
}

impl RingError {
    /// Machine-stable error code.
    pub fn code(&self) -> &'static str {
        match self {
            RingError::Shape(_) => "E_SHAPE",
            RingError::Axiom { .. } => "E_AXIOM",
            RingError::Capacity { .. } => "E_CAPACITY",
        }
    }
}

/// Families and lattices are computed at most once per ring.
#[derive(Debug, Default)]
pub(crate) struct RingCaches {
    pub(crate) lattice: OnceLock<Result<IdealLattice, RingError>>,
    pub(crate) product_family: OnceLock<Result<Vec<u64>, RingError>>,
    pub(crate) sum_family: OnceLock<Result<Vec<u64>, RingError>>,
}

impl Clone for RingCaches {
    fn clone(&self) -> Self {
        RingCaches {
            lattice: self.lattice.clone(),
            product_family: self.product_family.clone(),
            sum_family: self.sum_family.clone(),
        }
    }
}

/// A validated finite commutative multiplicative hyperring. Immutable after
/// construction; all operations are pure and safe to share across threads.
#[derive(Debug, Clone)]
pub struct HyperringTable {
    id: RingId,
    n: usize,
    add: Vec<usize>, // row-major n*n
    neg: Vec<usize>,
    hyp: Vec<u64>, // row-major n*n masks
    identities: u64,
    strongly_distributive: bool,
    pub(crate) caches: RingCaches,
}

static FAMILY_CAP: AtomicUsize = AtomicUsize::new(1 << 14);

/// Bound on closure-family size before the engine reports capacity exhaustion
/// instead of grinding on. Generous for every carrier the sweeps touch.
pub fn family_capacity() -> usize {
    FAMILY_CAP.load(Ordering::Relaxed)
}

impl HyperringTable {
    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add(&self, x: Element, y: Element) -> Element {
        Element(self.add[x.0 * self.n + y.0])
    }

    pub fn neg(&self, x: Element) -> Element {
        Element(self.neg[x.0])
    }

    pub fn hyp(&self, x: Element, y: Element) -> ElementSet {
        self.wrap(self.hyp[x.0 * self.n + y.0])
    }

    /// All `e` with `a ∈ e∘a` for every `a`. Nonempty by validation.
    pub fn identities(&self) -> ElementSet {
        self.wrap(self.identities)
    }

    /// Smallest identity element; the ring's distinguished `1`.
    pub fn one(&self) -> Element {
        Element(self.identities.trailing_zeros() as usize)
    }

    /// Smallest identity other than the additive zero, when one exists.
    pub fn nonzero_identity(&self) -> Option<Element> {
        let m = self.identities & !1;
        (m != 0).then(|| Element(m.trailing_zeros() as usize))
    }

    pub fn is_strongly_distributive(&self) -> bool {
        self.strongly_distributive
    }

    pub fn zero(&self) -> Element {
        Element(0)
    }

    pub(crate) fn wrap(&self, bits: u64) -> ElementSet {
        ElementSet::from_bits(bits, self.id)
    }

    pub fn empty_set(&self) -> ElementSet {
        self.wrap(0)
    }

    pub fn full_set(&self) -> ElementSet {
        self.wrap(self.full_mask())
    }

    pub fn singleton(&self, e: Element) -> ElementSet {
        assert!(e.0 < self.n, "element {} out of range", e.0);
        self.wrap(1u64 << e.0)
    }

    /// Builds a subset from element indices, rejecting out-of-range ones.
    pub fn subset(&self, elems: &[usize]) -> Result<ElementSet, RingError> {
        let mut bits = 0u64;
        for &e in elems {
            if e >= self.n {
                return Err(RingError::Shape(format!(
                    "element {e} out of range for carrier of size {}",
                    self.n
                )));
            }
            bits |= 1u64 << e;
        }
        Ok(self.wrap(bits))
    }

    pub(crate) fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub(crate) fn hyp_mask(&self, x: usize, y: usize) -> u64 {
        self.hyp[x * self.n + y]
    }

    pub(crate) fn add_idx(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y]
    }

    pub(crate) fn neg_idx(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub(crate) fn identities_mask(&self) -> u64 {
        self.identities
    }

    pub(crate) fn prod_mask(&self, a: u64, b: u64) -> u64 {
        let mut out = 0u64;
        for x in BitIter(a) {
            let row = x * self.n;
            for y in BitIter(b) {
                out |= self.hyp[row + y];
            }
        }
        out
    }

    pub(crate) fn sum_mask(&self, a: u64, b: u64) -> u64 {
        let mut out = 0u64;
        for x in BitIter(a) {
            let row = x * self.n;
            for y in BitIter(b) {
                out |= 1u64 << self.add[row + y];
            }
        }
        out
    }

    pub(crate) fn neg_mask(&self, a: u64) -> u64 {
        let mut out = 0u64;
        for x in BitIter(a) {
            out |= 1u64 << self.neg[x];
        }
        out
    }

    pub(crate) fn pow_mask(&self, a: u64, k: u32) -> u64 {
        assert!(k >= 1, "subset_power requires exponent >= 1");
        let mut out = a;
        for _ in 1..k {
            out = self.prod_mask(out, a);
        }
        out
    }

    fn check_owner(&self, s: &ElementSet) {
        assert_eq!(s.owner(), self.id, "set owner mismatch");
    }

    /// Set product `∪ a∘b` over `a ∈ A, b ∈ B`. Commutative, and associative
    /// by axiom II. Empty input yields the empty set.
    pub fn subset_product(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        self.check_owner(a);
        self.check_owner(b);
        self.wrap(self.prod_mask(a.bits(), b.bits()))
    }

    /// Set sum `{a+b : a ∈ A, b ∈ B}`.
    pub fn subset_sum(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        self.check_owner(a);
        self.check_owner(b);
        self.wrap(self.sum_mask(a.bits(), b.bits()))
    }

    /// Elementwise additive inverse image.
    pub fn subset_neg(&self, a: &ElementSet) -> ElementSet {
        self.check_owner(a);
        self.wrap(self.neg_mask(a.bits()))
    }

    /// `A^k` as iterated set product; `k = 0` is rejected.
    pub fn subset_power(&self, a: &ElementSet, k: u32) -> ElementSet {
        self.check_owner(a);
        self.wrap(self.pow_mask(a.bits(), k))
    }

    /// All `x` such that `e ∈ x∘y` for some identity `e` and some `y`.
    pub fn units(&self) -> ElementSet {
        let mut out = 0u64;
        for x in 0..self.n {
            'outer: for y in 0..self.n {
                if self.hyp_mask(x, y) & self.identities != 0 {
                    out |= 1u64 << x;
                    break 'outer;
                }
            }
        }
        self.wrap(out)
    }

    /// Hyperfield / hyperdomain / strong-distributivity flags by direct scan.
    pub fn structure_flags(&self) -> StructureFlags {
        let units = self.units().bits();
        let nonzero = self.full_mask() & !1;
        let is_hyperfield = nonzero & !units == 0;
        let mut is_hyperdomain = true;
        'scan: for x in 1..self.n {
            for y in 1..self.n {
                if self.hyp_mask(x, y) & 1 != 0 {
                    is_hyperdomain = false;
                    break 'scan;
                }
            }
        }
        StructureFlags {
            is_hyperfield,
            is_hyperdomain,
            is_strongly_distributive: self.strongly_distributive,
        }
    }

    /// Reconstructs input tables, e.g. for canonical text dumps.
    pub fn raw_tables(&self) -> RawTables {
        let n = self.n;
        let add = (0..n)
            .map(|x| (0..n).map(|y| self.add_idx(x, y)).collect())
            .collect();
        let hyp = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| BitIter(self.hyp_mask(x, y)).collect())
                    .collect()
            })
            .collect();
        RawTables { n, add, hyp }
    }

    /// Entrywise table equality, ignoring ring identity tags.
    pub fn same_tables(&self, other: &HyperringTable) -> bool {
        self.n == other.n && self.add == other.add && self.hyp == other.hyp
    }

    /// Direct product with pairwise tables; the element `(u,v)` is encoded as
    /// `u * other.n + v`. The result is revalidated.
    pub fn direct_product(
        &self,
        other: &HyperringTable,
        capacity: usize,
    ) -> Result<HyperringTable, RingError> {
        let n = self.n * other.n;
        if n > capacity.min(CAPACITY) {
            return Err(RingError::Capacity {
                requested: n,
                limit: capacity.min(CAPACITY),
            });
        }
        let enc = |u: usize, v: usize| u * other.n + v;
        let mut add = vec![vec![0usize; n]; n];
        let mut hyp = vec![vec![Vec::new(); n]; n];
        for u1 in 0..self.n {
            for u2 in 0..other.n {
                for v1 in 0..self.n {
                    for v2 in 0..other.n {
                        let i = enc(u1, u2);
                        let j = enc(v1, v2);
                        add[i][j] = enc(self.add_idx(u1, v1), other.add_idx(u2, v2));
                        let mut cell = Vec::new();
                        for a in BitIter(self.hyp_mask(u1, v1)) {
                            for b in BitIter(other.hyp_mask(u2, v2)) {
                                cell.push(enc(a, b));
                            }
                        }
                        cell.sort_unstable();
                        hyp[i][j] = cell;
                    }
                }
            }
        }
        validate_with_capacity(&RawTables { n, add, hyp }, capacity)
    }

    /// Quotient by a hyperideal: the carrier is the set of additive cosets,
    /// ordered by least representative (so the coset of `B` is element 0).
    /// Returns the quotient together with the canonical projection, which is
    /// always a valid surjective good homomorphism with kernel `B`.
    pub fn quotient(
        self: &Arc<Self>,
        b: &Hyperideal,
    ) -> Result<(Arc<HyperringTable>, GoodHom), RingError> {
        assert_eq!(b.set().owner(), self.id, "set owner mismatch");
        let bmask = b.set().bits();
        let mut coset_of = vec![usize::MAX; self.n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..self.n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            for bb in BitIter(bmask) {
                coset_of[self.add_idx(x, bb)] = idx;
            }
            reps.push(x);
        }
        let m = reps.len();
        let mut add = vec![vec![0usize; m]; m];
        let mut hyp = vec![vec![Vec::new(); m]; m];
        for i in 0..m {
            for j in 0..m {
                add[i][j] = coset_of[self.add_idx(reps[i], reps[j])];
                let mut cell: Vec<usize> = BitIter(self.hyp_mask(reps[i], reps[j]))
                    .map(|a| coset_of[a])
                    .collect();
                cell.sort_unstable();
                cell.dedup();
                hyp[i][j] = cell;
            }
        }
        let q = Arc::new(validate(&RawTables { n: m, add, hyp })?);
        let map: Vec<usize> = coset_of;
        let hom = crate::homs::validate_hom(self.clone(), q.clone(), &map, IdentityMode::default())
            .expect("canonical projection must be a good homomorphism");
        Ok((q, hom))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructureFlags {
    pub is_hyperfield: bool,
    pub is_hyperdomain: bool,
    pub is_strongly_distributive: bool,
}

/// Renders a mask for diagnostics without an owning ring.
pub fn display_mask(bits: u64) -> String {
    render_mask(bits)
}

/// Validates raw tables against the full axiom battery at the default
/// capacity. See the module docs for the canonical check order.
pub fn validate(raw: &RawTables) -> Result<HyperringTable, RingError> {
    validate_with_capacity(raw, CAPACITY)
}

pub fn validate_with_capacity(
    raw: &RawTables,
    capacity: usize,
) -> Result<HyperringTable, RingError> {
    let n = raw.n;
    if n == 0 {
        return Err(RingError::Shape("carrier must be nonempty".into()));
    }
    if n > capacity.min(CAPACITY) {
        return Err(RingError::Capacity {
            requested: n,
            limit: capacity.min(CAPACITY),
        });
    }
    if raw.add.len() != n || raw.add.iter().any(|row| row.len() != n) {
        return Err(RingError::Shape(format!("add table must be {n}x{n}")));
    }
    if raw.hyp.len() != n || raw.hyp.iter().any(|row| row.len() != n) {
        return Err(RingError::Shape(format!("hyp table must be {n}x{n}")));
    }
    for row in &raw.add {
        for &v in row {
            if v >= n {
                return Err(RingError::Shape(format!("add entry {v} out of range")));
            }
        }
    }
    for row in &raw.hyp {
        for cell in row {
            for &v in cell {
                if v >= n {
                    return Err(RingError::Shape(format!("hyp entry {v} out of range")));
                }
            }
        }
    }

    let add: Vec<usize> = raw.add.iter().flatten().copied().collect();
    let at = |x: usize, y: usize| add[x * n + y];
    let violation = |axiom, w: &[usize]| {
        Err(RingError::Axiom {
            axiom,
            witness: w.iter().map(|&i| Element(i)).collect(),
        })
    };

    // axiom I: neutral, commutativity, associativity, inverses
    for x in 0..n {
        if at(0, x) != x {
            return violation(Axiom::GroupI, &[0, x]);
        }
    }
    for x in 0..n {
        for y in 0..n {
            if at(x, y) != at(y, x) {
                return violation(Axiom::GroupI, &[x, y]);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if at(at(x, y), z) != at(x, at(y, z)) {
                    return violation(Axiom::GroupI, &[x, y, z]);
                }
            }
        }
    }
    let mut neg = vec![usize::MAX; n];
    for x in 0..n {
        for y in 0..n {
            if at(x, y) == 0 {
                neg[x] = y;
                break;
            }
        }
        if neg[x] == usize::MAX {
            return violation(Axiom::GroupI, &[x]);
        }
    }

    // nonempty
    let mut hyp = vec![0u64; n * n];
    for x in 0..n {
        for y in 0..n {
            let mut mask = 0u64;
            for &v in &raw.hyp[x][y] {
                mask |= 1u64 << v;
            }
            hyp[x * n + y] = mask;
        }
    }
    for x in 0..n {
        for y in 0..n {
            if hyp[x * n + y] == 0 {
                return violation(Axiom::NonEmpty, &[x, y]);
            }
        }
    }

    // axiom V
    for x in 0..n {
        for y in 0..n {
            if hyp[x * n + y] != hyp[y * n + x] {
                return violation(Axiom::CommutativityV, &[x, y]);
            }
        }
    }

    let prod = |a: u64, b: u64| {
        let mut out = 0u64;
        for x in BitIter(a) {
            for y in BitIter(b) {
                out |= hyp[x * n + y];
            }
        }
        out
    };

    // axiom II
    for x in 0..n {
        for y in 0..n {
            let xy = hyp[x * n + y];
            for z in 0..n {
                if prod(xy, 1u64 << z) != prod(1u64 << x, hyp[y * n + z]) {
                    return violation(Axiom::AssociativityII, &[x, y, z]);
                }
            }
        }
    }

    // axiom III
    let neg_of = |a: u64| {
        let mut out = 0u64;
        for x in BitIter(a) {
            out |= 1u64 << neg[x];
        }
        out
    };
    for x in 0..n {
        for y in 0..n {
            if hyp[neg[x] * n + y] != neg_of(hyp[x * n + y]) {
                return violation(Axiom::SignRuleIII, &[x, y]);
            }
        }
    }

    // axiom IV (+ strong distributivity flag)
    let sum = |a: u64, b: u64| {
        let mut out = 0u64;
        for x in BitIter(a) {
            for y in BitIter(b) {
                out |= 1u64 << at(x, y);
            }
        }
        out
    };
    let mut strongly_distributive = true;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = hyp[at(y, z) * n + x];
                let rhs = sum(hyp[y * n + x], hyp[z * n + x]);
                if lhs & !rhs != 0 {
                    return violation(Axiom::DistributivityIV, &[x, y, z]);
                }
                if lhs != rhs {
                    strongly_distributive = false;
                }
            }
        }
    }

    // standing assumption: an identity element exists
    let mut identities = 0u64;
    for e in 0..n {
        if (0..n).all(|a| hyp[e * n + a] & (1u64 << a) != 0) {
            identities |= 1u64 << e;
        }
    }
    if identities == 0 {
        return violation(Axiom::NoIdentity, &[]);
    }

    Ok(HyperringTable {
        id: RingId::fresh(),
        n,
        add,
        neg,
        hyp,
        identities,
        strongly_distributive,
        caches: RingCaches::default(),
    })
}

/// The `Z_Φ` construction over `ℤ_n`: `x∘y = {x·a·y mod n : a ∈ Φ}`. Not
/// every `(n, Φ)` satisfies the axioms over a finite modulus, so the result
/// is validated like any other table.
pub fn build_zphi(n: usize, phi: &[usize]) -> Result<HyperringTable, RingError> {
    if n == 0 {
        return Err(RingError::Shape("modulus must be positive".into()));
    }
    if phi.is_empty() {
        return Err(RingError::Shape("phi must be nonempty".into()));
    }
    for &a in phi {
        if a >= n {
            return Err(RingError::Shape(format!("phi residue {a} out of range")));
        }
    }
    let add = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
    let hyp = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let mut cell: Vec<usize> = phi.iter().map(|&a| (x * a * y) % n).collect();
                    cell.sort_unstable();
                    cell.dedup();
                    cell
                })
                .collect()
        })
        .collect();
    validate(&RawTables { n, add, hyp })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn madar_raw() -> RawTables {
        let i = vec![1, 3];
        RawTables {
            n: 4,
            add: vec![
                vec![0, 1, 2, 3],
                vec![1, 2, 3, 0],
                vec![2, 3, 0, 1],
                vec![3, 0, 1, 2],
            ],
            hyp: vec![
                vec![vec![0], vec![0], vec![0], vec![0]],
                vec![vec![0], i.clone(), vec![2], i.clone()],
                vec![vec![0], vec![2], vec![0], vec![2]],
                vec![vec![0], i.clone(), vec![2], i],
            ],
        }
    }

    #[test]
    fn madar_tables_validate() {
        let g = validate(&madar_raw()).unwrap();
        assert_eq!(g.identities().to_string(), "{1,3}");
        assert!(!g.is_strongly_distributive());
    }

    #[test]
    fn trivial_ring_validates() {
        let raw = RawTables {
            n: 1,
            add: vec![vec![0]],
            hyp: vec![vec![vec![0]]],
        };
        let g = validate(&raw).unwrap();
        assert_eq!(g.identities().to_string(), "{0}");
        let flags = g.structure_flags();
        assert!(flags.is_strongly_distributive);
        assert!(flags.is_hyperdomain);
    }

    #[test]
    fn single_cell_mutation_is_rejected() {
        let mut raw = madar_raw();
        raw.hyp[2][2] = vec![1];
        let err = validate(&raw).unwrap_err();
        match err {
            RingError::Axiom { .. } => {}
            other => panic!("expected axiom violation, got {other:?}"),
        }
    }

    #[test]
    fn zphi_reproduces_madar_entrywise() {
        let a = build_zphi(4, &[1, 3]).unwrap();
        let b = validate(&madar_raw()).unwrap();
        assert!(a.same_tables(&b));
    }

    #[test]
    fn zphi_weak_and_haji_build() {
        let weak = build_zphi(6, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(
            weak.hyp(Element(2), Element(3)).to_string(),
            "{0}",
            "2∘3 must collapse to the zero singleton"
        );
        let haji = build_zphi(5, &[1, 2, 3]).unwrap();
        assert!(haji.structure_flags().is_hyperdomain);
        assert_eq!(haji.units().to_string(), "{1,2,3,4}");
    }

    #[test]
    fn zphi_rejects_identityless_phi() {
        // x∘y = {0} for all pairs: no identity can exist on Z_4.
        let err = build_zphi(4, &[0]).unwrap_err();
        assert!(matches!(
            err,
            RingError::Axiom {
                axiom: Axiom::NoIdentity,
                ..
            }
        ));
    }

    #[test]
    fn subset_algebra_examples() {
        let weak = build_zphi(6, &[1, 2, 3, 4, 5]).unwrap();
        let s23 = weak.subset_product(&weak.singleton(Element(2)), &weak.singleton(Element(3)));
        assert_eq!(s23.to_string(), "{0}");
        let zz = weak.subset_sum(&weak.subset(&[0, 3]).unwrap(), &weak.subset(&[0, 3]).unwrap());
        assert_eq!(zz.to_string(), "{0,3}");
        let p = weak.subset_power(&weak.singleton(Element(3)), 2);
        assert_eq!(p.to_string(), "{0,3}");

        let madar = build_zphi(4, &[1, 3]).unwrap();
        let one_i = madar.subset_product(
            &madar.singleton(Element(1)),
            &madar.subset(&[1, 3]).unwrap(),
        );
        assert_eq!(one_i.to_string(), "{1,3}");
        let sq2 = madar.subset_power(&madar.singleton(Element(2)), 2);
        assert_eq!(sq2.to_string(), "{0}");
        // {1}+{1} = {2} in the madar addition table
        let s = madar.subset_sum(&madar.singleton(Element(1)), &madar.singleton(Element(1)));
        assert_eq!(s.to_string(), "{2}");
    }

    #[test]
    #[should_panic(expected = "exponent >= 1")]
    fn subset_power_zero_rejected() {
        let g = build_zphi(4, &[1, 3]).unwrap();
        let _ = g.subset_power(&g.singleton(Element(1)), 0);
    }

    #[test]
    fn identity_sets_act_as_identities() {
        let weak = build_zphi(6, &[1, 2, 3, 4, 5]).unwrap();
        for x in 0..6 {
            let xs = weak.singleton(Element(x));
            let prod = weak.subset_product(&xs, &weak.identities());
            assert!(xs.is_subset(&prod));
        }
    }

    #[test]
    fn product_of_trivial_rings_is_trivial() {
        let t = validate(&RawTables {
            n: 1,
            add: vec![vec![0]],
            hyp: vec![vec![vec![0]]],
        })
        .unwrap();
        let p = t.direct_product(&t, CAPACITY).unwrap();
        assert_eq!(p.n(), 1);
    }

    #[test]
    fn product_capacity_is_enforced() {
        let g = build_zphi(6, &[1]).unwrap();
        let err = g.direct_product(&g, 16).unwrap_err();
        assert!(matches!(err, RingError::Capacity { requested: 36, .. }));
    }

    #[test]
    fn madar_times_weak_revalidates() {
        let madar = build_zphi(4, &[1, 3]).unwrap();
        let weak = build_zphi(6, &[1, 2, 3, 4, 5]).unwrap();
        let p = madar.direct_product(&weak, CAPACITY).unwrap();
        assert_eq!(p.n(), 24);
    }

    #[test]
    fn units_of_weak_ring() {
        let weak = build_zphi(6, &[1, 2, 3, 4, 5]).unwrap();
        let u = weak.units();
        assert!(u.contains(Element(1)) && u.contains(Element(5)));
        assert!(!weak.structure_flags().is_hyperdomain);
    }
}
