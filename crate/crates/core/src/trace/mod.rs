//! Trace-side geometry: heat-kernel profiles, tube-coordinate term
//! integrals, and the assembled geometric side with its Betti-number bound.
//!
//! The module is organized bottom-up: `quad` supplies adaptive
//! Gauss-Kronrod integration, `kernel` the radial heat-kernel profiles on
//! H^2 and H^3 (exact where a closed form or convergent representation
//! exists, a flagged Gaussian envelope for degree-1 data), `terms` the
//! per-geodesic integrals with analytic tail bounds, and `side` the summed
//! geometric side and the derived upper bound on the first Betti number.

use thiserror::Error;

use crate::bs::BsError;
use crate::hyp::{HypError, IsoClass};
use crate::margulis::MargulisError;

mod kernel;
mod quad;
mod side;
mod terms;

pub use kernel::{
    heat_kernel_h2_scalar, heat_kernel_h3_scalar, kernel_mass, one_form_profile_h3,
    KernelProfile, ProfileMode, ONE_FORM_ENVELOPE_SAFETY,
};
pub use quad::{integrate, QuadError, QuadResult, DEFAULT_QUAD_TOL};
pub use side::{
    b1_upper_bound, geometric_side, B1Bound, EllipticEntry, GeometricSide, GeometryDescriptor,
    HyperbolicEntry,
};
pub use terms::{elliptic_term, hyperbolic_term, orbital_term, TermEstimate};

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("time parameter must be positive and finite, got {t}")]
    TimeNotPositive { t: f64 },
    #[error("distance must be nonnegative and finite, got {r}")]
    NegativeDistance { r: f64 },
    #[error("geodesic length must be positive and finite, got {length}")]
    LengthNotPositive { length: f64 },
    #[error("isotropy order must be at least 1")]
    OrderZero,
    #[error("profile has dimension {got}, this term needs dimension {expected}")]
    WrongDimension { expected: u8, got: u8 },
    #[error("orbital integral undefined for conjugacy class {class:?}")]
    UnsupportedClass { class: IsoClass },
    #[error("test-function support must be positive and finite, got {support}")]
    SupportNotFinite { support: f64 },
    #[error("form degree must be 0 or 1, got {degree}")]
    DegreeOutOfRange { degree: u8 },
    #[error("volume must be positive and finite, got {volume}")]
    VolumeNotPositive { volume: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Margulis(#[from] MargulisError),
    #[error(transparent)]
    Thin(#[from] BsError),
    #[error(transparent)]
    Hyp(#[from] HypError),
}
