//! Carrier elements and bit-vector subsets.
//!
//! Every algorithm in this crate is an exhaustive scan over a small carrier,
//! so subsets are fixed-width bit vectors and all set algebra is word ops.

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

/// Hard upper bound on carrier size: one bit per element in a single word.
pub const CAPACITY: usize = 64;

/// Index of a carrier element. Index 0 is always the additive identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub usize);

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Identity tag of a validated ring. Two sets may be combined only when their
/// owner tags agree; the tag is assigned once at validation time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingId(u32);

static NEXT_RING_ID: AtomicU32 = AtomicU32::new(0);

impl RingId {
    pub(crate) fn fresh() -> Self {
        RingId(NEXT_RING_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// A subset of a ring's carrier, one bit per element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: u64,
    owner: RingId,
}

impl ElementSet {
    pub(crate) fn from_bits(bits: u64, owner: RingId) -> Self {
        ElementSet { bits, owner }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn owner(&self) -> RingId {
        self.owner
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(&self, e: Element) -> bool {
        debug_assert!(e.0 < CAPACITY);
        self.bits & (1u64 << e.0) != 0
    }

    pub fn insert(&mut self, e: Element) {
        debug_assert!(e.0 < CAPACITY);
        self.bits |= 1u64 << e.0;
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        assert_eq!(self.owner, other.owner, "set owner mismatch");
        ElementSet::from_bits(self.bits | other.bits, self.owner)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        assert_eq!(self.owner, other.owner, "set owner mismatch");
        ElementSet::from_bits(self.bits & other.bits, self.owner)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        assert_eq!(self.owner, other.owner, "set owner mismatch");
        self.bits & !other.bits == 0
    }

    pub fn intersects(&self, other: &ElementSet) -> bool {
        assert_eq!(self.owner, other.owner, "set owner mismatch");
        self.bits & other.bits != 0
    }

    /// Elements in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        BitIter(self.bits).map(Element)
    }

    pub fn min_element(&self) -> Option<Element> {
        if self.bits == 0 {
            None
        } else {
            Some(Element(self.bits.trailing_zeros() as usize))
        }
    }
}

impl fmt::Display for ElementSet {
    /// Renders as `{a,b,c}` with ascending indices; `{}` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_mask(self.bits))
    }
}

/// Renders a raw bit mask as `{a,b,c}`.
pub(crate) fn render_mask(bits: u64) -> String {
    let mut out = String::from("{");
    let mut first = true;
    for e in BitIter(bits) {
        if !first {
            out.push(',');
        }
        out.push_str(&e.to_string());
        first = false;
    }
    out.push('}');
    out
}

pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// Sort key giving the deterministic order used for ideal and family lists:
/// by cardinality, then by mask value.
pub(crate) fn mask_order(bits: u64) -> (u32, u64) {
    (bits.count_ones(), bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_iteration_is_ascending() {
        let s = ElementSet::from_bits(0b101001, RingId::fresh());
        let got: Vec<usize> = s.iter().map(|e| e.0).collect();
        assert_eq!(got, vec![0, 3, 5]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.min_element(), Some(Element(0)));
    }

    #[test]
    fn display_is_braced_ascending() {
        let id = RingId::fresh();
        assert_eq!(ElementSet::from_bits(0b1010, id).to_string(), "{1,3}");
        assert_eq!(ElementSet::from_bits(0, id).to_string(), "{}");
    }

    #[test]
    #[should_panic(expected = "owner mismatch")]
    fn cross_ring_union_panics() {
        let a = ElementSet::from_bits(1, RingId::fresh());
        let b = ElementSet::from_bits(1, RingId::fresh());
        let _ = a.union(&b);
    }
}
