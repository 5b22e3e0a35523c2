//! Exact computational algebra for Green biset functors over a catalog of
//! small finite groups: Burnside rings, representation rings, shifted and
//! idempotent-cut variants, the constant functor, and the certificate suite
//! (Green-field, strictness, semisimplicity, anisotropy) with reproducible
//! exact witnesses.

pub mod error;
pub mod perm;
pub mod group;
pub mod lattice;
pub mod scalar;
pub mod linalg;
pub mod burnside;
pub mod chartab;

pub use error::{Error, Result};
pub use group::{GroupRef, GroupStore, Limits};
pub use scalar::{Cyc, Field, Fp, Rat};

/// Exact matrices over the rationals.
pub type QMatrix = linalg::Matrix<Rat>;
/// Exact matrices over a cyclotomic field.
pub type CycMatrix = linalg::Matrix<Cyc>;
/// Exact matrices over a prime field.
pub type FpMatrix = linalg::Matrix<Fp>;
