//! Arithmetic families of orbifolds.
//!
//! Orbifold signatures (g, k, m_1..m_r) with exact Gauss-Bonnet areas,
//! descriptors of the congruence family Gamma_0(N) over PSL(2, Z) computed
//! two independent ways (classical multiplicative formulas and brute-force
//! coset enumeration on P^1(Z/N)), archimedean splitting checks for the
//! quaternion data behind congruence lattices, and seeded synthetic
//! 3-orbifold fixtures standing in for Kleinian census data.
//!
//! Areas and genus defects are tracked as exact rationals (times pi) so
//! identities like vol = index pi / 3 can be asserted with `==`.

mod gamma0;
mod oracle;
mod quaternion;
mod signature;
mod synthetic;

pub use gamma0::{gamma0_descriptor, primes_in, CongruenceDescriptor, CongruenceKind};
pub use oracle::{coset_enumeration_oracle, ORACLE_MAX_LEVEL};
pub use quaternion::{
    quaternion_archimedean_check, require_lattice_pattern, ArchimedeanPlace, ArchimedeanReport,
    PlaceVerdict, QuaternionData,
};
pub use signature::{genus_defect, signature_volume, ExactArea, GenusDefect, OrbifoldSignature};
pub use synthetic::{
    synthetic_3d_descriptor, validate_separation, Orbifold3Descriptor, SingularGeodesic,
    VertexTag,
};

use num_rational::Rational64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ArithError {
    #[error("cone orders must be at least 2, got {m}")]
    ConeOrderTooSmall { m: u64 },
    #[error("signature is not hyperbolic: 2g - 2 + k + sum(1 - 1/m) = {chi} <= 0")]
    NonHyperbolic { chi: Rational64 },
    #[error("level must be at least 1")]
    LevelZero,
    #[error("coset enumeration is desk-scale only: N = {n} exceeds {max}")]
    LevelTooLarge { n: u64, max: u64 },
    #[error("genus formula produced a non-integer or negative value at N = {n}: 12g = {twelve_g}")]
    GenusComputation { n: u64, twelve_g: i64 },
    #[error("invalid archimedean place data: {detail}")]
    BadPlaces { detail: String },
    #[error("place {place} violates the lattice sign pattern: {detail}")]
    SignPattern { place: usize, detail: String },
    #[error("fixture validation failed: {detail}")]
    FixtureInvalid { detail: String },
}
