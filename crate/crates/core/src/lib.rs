//! Exhaustive verification engine for finite commutative multiplicative
//! hyperrings: structure validation, hyperideal classification relative to
//! multiplicative closed subsets, radicals, homomorphism transport, and an
//! executable catalog of theorem conformance checks.

pub mod classify;
pub mod conformance;
pub mod homs;
pub mod ideals;
pub mod ring;
pub mod set;
pub mod workspace;

pub use classify::{
    avoidance_witness, classify, enumerate_mcs, is_mcs, saturate, AvoidanceOutcome,
    ClassStatus, ClassificationReport, HyperidealClass, MCSet, McsError, CLASS_ORDER,
};
pub use homs::{validate_hom, GoodHom, HomError, IdentityMode};
pub use ideals::{
    colon, enumerate_hyperideals, generate_hyperideal, ideal_product, is_c_hyperideal,
    is_hyperideal, is_maximal, is_prime, is_primary, is_pure, is_strong_c_hyperideal, jacobson,
    radical, zero_ideal, FamilyCheck, Hyperideal, IdealError, JacobsonInfo, RadicalMode,
};
pub use ring::{
    build_zphi, validate, validate_with_capacity, Axiom, HyperringTable, RawTables, RingError,
    StructureFlags,
};
pub use set::{Element, ElementSet, RingId, CAPACITY};
