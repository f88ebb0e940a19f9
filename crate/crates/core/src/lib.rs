//! Krull-Remak-Schmidt decomposition of commutative group algebras over
//! finite fields.
//!
//! The group algebra `F_q[Z_{m_1} x ... x Z_{m_n}]` is handled through its
//! circulant model `F_q[X_1..X_n]/(X_1^{m_1} - 1, ..., X_n^{m_n} - 1)`.
//! The crate computes the abstract decomposition (component fields, local
//! exponents and multiplicities) from Frobenius orbit combinatorics, and it
//! can certify that decomposition explicitly by building the primitive
//! idempotents and checking them with exact linear algebra.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod circulant;
pub mod decomposition;
mod error;
pub mod finite_field;
pub mod linalg;
pub mod numtheory;
pub mod orbits;

pub use circulant::{choose_t, CirculantElement, CirculantRing, YComponents};
pub use decomposition::{
    abstract_decomposition, verify_decomposition, ComponentDescriptor, DecompositionReport,
    IdempotentFamily, VerificationReport, DEFAULT_VERIFY_BUDGET,
};
pub use error::{Error, Result};
pub use finite_field::{BaseField, ExtensionField, Field, FieldTower, PrimeField, TopField};
pub use numtheory::CirculantParams;
pub use orbits::{divisor_census, enumerate_orbits, CensusRow, ExponentPoint, Orbit};
