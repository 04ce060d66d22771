//! Good homomorphisms between validated hyperrings.
//!
//! A map `η` is good when it preserves `+` exactly and `∘` as exact set
//! images. The identity condition has two readings (see `IdentityMode`);
//! the corrected reading is the default.

use crate::classify::MCSet;
use crate::ideals::Hyperideal;
use crate::ring::HyperringTable;
use crate::set::{BitIter, Element, ElementSet};
use std::sync::Arc;
use thiserror::Error;

/// How the identity condition on a good homomorphism is validated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdentityMode {
    /// `η(1_src)` must be an identity element of the target.
    #[default]
    MapsToIdentity,
    /// The literal equation `η(1_src) = η(1_tgt)`, readable only when the
    /// target's distinguished identity index is a valid source index.
    LiteralEquation,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HomError {
    #[error("malformed map: {0}")]
    Shape(String),
    #[error("additivity fails at ({a},{b})")]
    Additive { a: Element, b: Element },
    #[error("multiplicativity fails at ({a},{b})")]
    Multiplicative { a: Element, b: Element },
    #[error("identity condition fails: {0}")]
    Identity(String),
    #[error("kernel is not contained in the ideal")]
    KernelNotContained,
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("the target zero lies in the image of the MCS")]
    ZeroInImage,
    #[error("image is not a hyperideal: {0}")]
    ImageNotIdeal(String),
    #[error("image is not an MCS: {0}")]
    ImageNotMcs(String),
}

impl HomError {
    pub fn code(&self) -> &'static str {
        "E_HOM"
    }
}

/// A validated good homomorphism with derived kernel and surjectivity flag.
#[derive(Debug, Clone)]
pub struct GoodHom {
    src: Arc<HyperringTable>,
    dst: Arc<HyperringTable>,
    map: Vec<usize>,
    surjective: bool,
    kernel: u64,
}

impl GoodHom {
    pub fn source(&self) -> &Arc<HyperringTable> {
        &self.src
    }

    pub fn target(&self) -> &Arc<HyperringTable> {
        &self.dst
    }

    pub fn apply(&self, e: Element) -> Element {
        Element(self.map[e.0])
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    /// `{x : η(x) = 0}` as a subset of the source.
    pub fn kernel(&self) -> ElementSet {
        self.src.wrap(self.kernel)
    }

    pub(crate) fn image_mask(&self, bits: u64) -> u64 {
        let mut out = 0u64;
        for x in BitIter(bits) {
            out |= 1u64 << self.map[x];
        }
        out
    }

    pub(crate) fn preimage_mask(&self, bits: u64) -> u64 {
        let mut out = 0u64;
        for (x, &y) in self.map.iter().enumerate() {
            if bits & (1u64 << y) != 0 {
                out |= 1u64 << x;
            }
        }
        out
    }

    pub fn image_set(&self, s: &ElementSet) -> ElementSet {
        assert_eq!(s.owner(), self.src.id(), "set owner mismatch");
        self.dst.wrap(self.image_mask(s.bits()))
    }

    pub fn preimage_set(&self, s: &ElementSet) -> ElementSet {
        assert_eq!(s.owner(), self.dst.id(), "set owner mismatch");
        self.src.wrap(self.preimage_mask(s.bits()))
    }

    /// `η⁻¹(A₂)`; the preimage of a hyperideal is always a hyperideal.
    pub fn preimage_ideal(&self, a2: &Hyperideal) -> Hyperideal {
        let pre = self.preimage_set(&a2.set());
        Hyperideal::new(&self.src, pre)
            .expect("preimage of a hyperideal under a good homomorphism is a hyperideal")
    }

    /// `η(A₁)` for surjective `η` with kernel ⊆ `A₁`. The raw image is
    /// verified, never closed: a non-ideal image is reported, not repaired.
    pub fn image_ideal(&self, a1: &Hyperideal) -> Result<Hyperideal, HomError> {
        if !self.surjective {
            return Err(HomError::NotSurjective);
        }
        if self.kernel & !a1.set().bits() != 0 {
            return Err(HomError::KernelNotContained);
        }
        let img = self.image_set(&a1.set());
        Hyperideal::new(&self.dst, img).map_err(|e| HomError::ImageNotIdeal(e.to_string()))
    }

    /// `η(S)` validated as an MCS of the target; requires `0 ∉ η(S)`.
    pub fn image_mcs(&self, s: &MCSet) -> Result<MCSet, HomError> {
        let img = self.image_set(&s.set());
        if img.contains(Element(0)) {
            return Err(HomError::ZeroInImage);
        }
        MCSet::new(&self.dst, img).map_err(|e| HomError::ImageNotMcs(e.to_string()))
    }
}

/// Validates a total map as a good homomorphism. Checks run in a fixed
/// order: shape, additivity, multiplicativity, identity condition; the
/// first violation is reported with its witness pair.
pub fn validate_hom(
    src: Arc<HyperringTable>,
    dst: Arc<HyperringTable>,
    map: &[usize],
    mode: IdentityMode,
) -> Result<GoodHom, HomError> {
    if map.len() != src.n() {
        return Err(HomError::Shape(format!(
            "map has {} entries for a carrier of size {}",
            map.len(),
            src.n()
        )));
    }
    for &y in map {
        if y >= dst.n() {
            return Err(HomError::Shape(format!("image {y} out of range")));
        }
    }
    for a in 0..src.n() {
        for b in 0..src.n() {
            if map[src.add_idx(a, b)] != dst.add_idx(map[a], map[b]) {
                return Err(HomError::Additive {
                    a: Element(a),
                    b: Element(b),
                });
            }
        }
    }
    for a in 0..src.n() {
        for b in 0..src.n() {
            let mut img = 0u64;
            for w in BitIter(src.hyp_mask(a, b)) {
                img |= 1u64 << map[w];
            }
            if img != dst.hyp_mask(map[a], map[b]) {
                return Err(HomError::Multiplicative {
                    a: Element(a),
                    b: Element(b),
                });
            }
        }
    }
    let one = src.one();
    match mode {
        IdentityMode::MapsToIdentity => {
            if !dst.identities().contains(Element(map[one.0])) {
                return Err(HomError::Identity(format!(
                    "η({one}) = {} is not an identity of the target",
                    map[one.0]
                )));
            }
        }
        IdentityMode::LiteralEquation => {
            let t = dst.one();
            if t.0 >= src.n() {
                return Err(HomError::Identity(format!(
                    "literal reading is ill-typed: target identity {t} is not a source element"
                )));
            }
            if map[one.0] != map[t.0] {
                return Err(HomError::Identity(format!(
                    "η({one}) ≠ η({t}) under the literal reading"
                )));
            }
        }
    }
    let mut image = 0u64;
    let mut kernel = 0u64;
    for (x, &y) in map.iter().enumerate() {
        image |= 1u64 << y;
        if y == 0 {
            kernel |= 1u64 << x;
        }
    }
    Ok(GoodHom {
        surjective: image == dst.full_mask(),
        kernel,
        map: map.to_vec(),
        src,
        dst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{enumerate_hyperideals, zero_ideal, Hyperideal};
    use crate::ring::build_zphi;

    fn weak() -> Arc<HyperringTable> {
        Arc::new(build_zphi(6, &[1, 2, 3, 4, 5]).unwrap())
    }

    #[test]
    fn identity_map_is_good() {
        let w = weak();
        let map: Vec<usize> = (0..6).collect();
        let h = validate_hom(w.clone(), w.clone(), &map, IdentityMode::default()).unwrap();
        assert!(h.is_surjective());
        assert_eq!(h.kernel().to_string(), "{0}");
    }

    #[test]
    fn collapse_to_zero_fails_identity_condition() {
        let w = weak();
        let map = vec![0usize; 6];
        let err = validate_hom(w.clone(), w, &map, IdentityMode::default()).unwrap_err();
        assert!(matches!(err, HomError::Identity(_)));
    }

    #[test]
    fn quotient_projection_is_good_with_kernel_b() {
        let w = weak();
        let b = Hyperideal::new(&w, w.subset(&[0, 3]).unwrap()).unwrap();
        let (q, proj) = w.quotient(&b).unwrap();
        assert_eq!(q.n(), 3);
        assert!(proj.is_surjective());
        assert_eq!(proj.kernel(), b.set());
    }

    #[test]
    fn quotient_by_carrier_is_trivial() {
        let w = weak();
        let b = Hyperideal::new(&w, w.full_set()).unwrap();
        let (q, _) = w.quotient(&b).unwrap();
        assert_eq!(q.n(), 1);
    }

    #[test]
    fn quotient_by_zero_singleton_preserves_tables() {
        let w = weak();
        let z = zero_ideal(&w);
        assert_eq!(z.set().to_string(), "{0}");
        let (q, _) = w.quotient(&z).unwrap();
        assert!(q.same_tables(&w));
    }

    #[test]
    fn preimage_and_image_transport() {
        let w = weak();
        let b = Hyperideal::new(&w, w.subset(&[0, 3]).unwrap()).unwrap();
        let (q, proj) = w.quotient(&b).unwrap();

        // preimage of the full target is the full source
        let full_q = Hyperideal::new(&q, q.full_set()).unwrap();
        assert_eq!(proj.preimage_ideal(&full_q).set(), w.full_set());

        // preimage of the zero coset is B itself
        let zq = zero_ideal(&q);
        assert_eq!(proj.preimage_ideal(&zq).set(), b.set());

        // image of B is the zero coset
        let img = proj.image_ideal(&b).unwrap();
        assert_eq!(img.set(), zq.set());

        // kernel not contained -> rejection
        let a = Hyperideal::new(&w, w.subset(&[0, 2, 4]).unwrap()).unwrap();
        assert_eq!(
            proj.image_ideal(&a).unwrap_err(),
            HomError::KernelNotContained
        );
    }

    #[test]
    fn image_mcs_examples() {
        let w = weak();
        let b = Hyperideal::new(&w, w.subset(&[0, 3]).unwrap()).unwrap();
        let (_q, proj) = w.quotient(&b).unwrap();
        let s = MCSet::new(&w, w.subset(&[1, 5]).unwrap()).unwrap();
        let img = proj.image_mcs(&s).unwrap();
        assert_eq!(img.set().len(), 2);

        // an MCS meeting the kernel maps onto the target zero
        let s0 = MCSet::new(&w, w.subset(&[1, 3]).unwrap());
        if let Ok(s0) = s0 {
            assert_eq!(proj.image_mcs(&s0).unwrap_err(), HomError::ZeroInImage);
        }
    }

    #[test]
    fn preimage_preserves_c_status_on_quotients() {
        let w = weak();
        for b in enumerate_hyperideals(&w).unwrap() {
            let (q, proj) = w.quotient(&b).unwrap();
            for a2 in enumerate_hyperideals(&q).unwrap() {
                let pre = proj.preimage_ideal(&a2);
                let c_img = crate::ideals::is_c_hyperideal(&q, &a2).unwrap().holds;
                let c_pre = crate::ideals::is_c_hyperideal(&w, &pre).unwrap().holds;
                if c_img {
                    assert!(c_pre, "preimage of C-hyperideal {} under /{}", a2.set(), b.set());
                }
            }
        }
    }
}
