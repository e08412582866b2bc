//! Thin-part geometry: the radius functions ell(theta, eps) and r(ell, eps),
//! volumes of the regions they carve out around singular points, cusp-region
//! areas, and the catalogue of elementary subgroups.
//!
//! `eps` is a Margulis constant, one value serving both H^2 and H^3. The
//! radius functions answer two questions about an isometry displacing less
//! than `eps` somewhere:
//!
//! * ell(theta, eps): how far from the fixed axis does a rotation by `theta`
//!   first displace by `eps`? Closed form `asinh(sinh(eps/2) / sin(theta/2))`,
//!   cross-checked against bisection on the matrix action.
//! * r(ell, eps): out to what distance from its axis does a translation by
//!   `ell < eps` still displace less than `eps`?
//!
//! Region volumes follow by the cone-quotient ball formula
//! `(2 pi / m)(cosh ell - 1)`; an order-2 point uses the narrower collar
//! width `eps / 6`.

mod elementary;

pub use elementary::{classify_elementary, ElementaryType};

use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

use crate::hyp::{point_at_distance_from_vertical, Isometry, Model};

#[derive(Debug, Error, PartialEq)]
pub enum MargulisError {
    #[error("rotation angle must lie in (0, pi], got {theta}")]
    AngleOutOfRange { theta: f64 },
    #[error("Margulis constant must be positive and finite, got {eps}")]
    EpsilonOutOfRange { eps: f64 },
    #[error("cone order must be at least 2, got {m}")]
    OrderOutOfRange { m: u64 },
}

/// A Margulis constant, one value valid for both H^2 and H^3.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MargulisConstant {
    eps: f64,
}

impl MargulisConstant {
    pub fn new(eps: f64) -> Result<Self, MargulisError> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(MargulisError::EpsilonOutOfRange { eps });
        }
        Ok(MargulisConstant { eps })
    }

    pub fn get(self) -> f64 {
        self.eps
    }
}

impl Default for MargulisConstant {
    /// 0.1, safely below the published Margulis bounds for dimensions 2
    /// and 3.
    fn default() -> Self {
        MargulisConstant { eps: 0.1 }
    }
}

fn check_eps(eps: f64) -> Result<(), MargulisError> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(MargulisError::EpsilonOutOfRange { eps });
    }
    Ok(())
}

/// Smallest distance from its fixed axis at which a rotation by `theta`
/// displaces by `eps`: `asinh(sinh(eps/2) / sin(theta/2))`. Same value in
/// both models (the displacement of a rotation depends only on the distance
/// to the axis).
pub fn ell_theta(theta: f64, eps: f64) -> Result<f64, MargulisError> {
    if !(theta > 0.0 && theta <= PI) {
        return Err(MargulisError::AngleOutOfRange { theta });
    }
    check_eps(eps)?;
    Ok(((eps / 2.0).sinh() / (theta / 2.0).sin()).asinh())
}

/// Independent route to [`ell_theta`]: bisection on the displacement of the
/// rotation matrix acting on points of the vertical meridian. The two must
/// agree to 1e-10 absolute.
pub fn ell_theta_bisect(theta: f64, eps: f64) -> Result<f64, MargulisError> {
    if !(theta > 0.0 && theta <= PI) {
        return Err(MargulisError::AngleOutOfRange { theta });
    }
    check_eps(eps)?;
    let rot = Isometry::h2_rotation_about_i(theta);
    let disp = |rho: f64| -> f64 {
        let p = point_at_distance_from_vertical(Model::H2, rho, 0.0)
            .expect("meridian point is interior");
        // The meridian point is at distance rho from i, the fixed point.
        rot.displacement(&p).expect("same model")
    };
    let mut hi = 1.0;
    while disp(hi) < eps {
        hi *= 2.0;
        assert!(hi < 1e3, "displacement must eventually exceed eps");
    }
    let mut lo = 0.0;
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if disp(mid) < eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Largest distance from its axis out to which a screw motion with
/// translation length `ell` and rotation `twist` displaces less than `eps`;
/// 0 when `ell >= eps`. From the displacement identity,
/// `sinh^2 r = (cosh eps - cosh ell) / (cosh ell - cos twist)`,
/// evaluated in cancellation-free half-angle form.
pub fn r_ell_twisted(ell: f64, twist: f64, eps: f64) -> f64 {
    if ell >= eps {
        return 0.0;
    }
    let num = (eps / 2.0).sinh().powi(2) - (ell / 2.0).sinh().powi(2);
    let den = (ell / 2.0).sinh().powi(2) + (twist / 2.0).sin().powi(2);
    (num / den).sqrt().asinh()
}

/// Twist-free case of [`r_ell_twisted`]: the H^2 tube radius of a closed
/// geodesic of length `ell < eps`.
pub fn r_ell(ell: f64, eps: f64) -> f64 {
    r_ell_twisted(ell, 0.0, eps)
}

/// Inputs and both thin-part radii, bundled for reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThinRadii {
    pub theta: f64,
    pub ell: f64,
    pub eps: f64,
    pub ell_theta: f64,
    pub r_ell: f64,
}

pub fn thin_radii(theta: f64, ell: f64, eps: MargulisConstant) -> Result<ThinRadii, MargulisError> {
    let eps = eps.get();
    Ok(ThinRadii {
        theta,
        ell,
        eps,
        ell_theta: ell_theta(theta, eps)?,
        r_ell: r_ell(ell, eps),
    })
}

/// Area of the region around an order-`m` cone point of an H^2 orbifold
/// where the rotation displaces less than the relevant constant:
/// `(2 pi / m)(cosh ell(2 pi / m, eps') - 1)` with `eps' = eps / 6` for
/// `m = 2` (collar-width tweak for angle-pi singularities) and `eps' = eps`
/// otherwise.
pub fn cone_region_volume(m: u64, eps: f64) -> Result<f64, MargulisError> {
    if m < 2 {
        return Err(MargulisError::OrderOutOfRange { m });
    }
    check_eps(eps)?;
    let eps_eff = if m == 2 { eps / 6.0 } else { eps };
    let ell = ell_theta(2.0 * PI / m as f64, eps_eff)?;
    // cosh(ell) - 1 = 2 sinh^2(ell / 2).
    Ok((2.0 * PI / m as f64) * 2.0 * (ell / 2.0).sinh().powi(2))
}

/// Area of the cusp region of an H^2 orbifold: the part of the horoball
/// quotient where the primitive parabolic displaces less than `eps`. Equals
/// `2 sinh(eps / 2)` for every primitive width (conjugation-invariant).
pub fn cusp_region_area(eps: f64) -> f64 {
    2.0 * (eps / 2.0).sinh()
}

/// Exclusion rule around a singular vertex of an orbifold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SingularSeparation {
    /// Order >= 3: no other singular point within `radius`, unconditionally.
    Isolated { radius: f64 },
    /// Order 2: the half-turn keeps `rotation_radius` clear; a neighbor at
    /// distance ell_x sharpens this through the hyperbolic the two
    /// half-turns generate (see [`SingularSeparation::with_neighbor`]).
    HalfTurn { rotation_radius: f64, eps: f64 },
}

impl SingularSeparation {
    /// The unconditional exclusion radius.
    pub fn base_radius(&self) -> f64 {
        match self {
            SingularSeparation::Isolated { radius } => *radius,
            SingularSeparation::HalfTurn { rotation_radius, .. } => *rotation_radius,
        }
    }

    /// Exclusion radius when the nearest singular structure sits at
    /// translation length `ell_x`: order-2 vertices additionally keep the
    /// tube radius `r(ell_x, eps)` clear.
    pub fn with_neighbor(&self, ell_x: f64) -> f64 {
        match self {
            SingularSeparation::Isolated { radius } => *radius,
            SingularSeparation::HalfTurn { rotation_radius, eps } => {
                rotation_radius.max(r_ell(ell_x, *eps))
            }
        }
    }
}

/// Guaranteed exclusion radius around a cone point of order `m`:
/// `ell(2 pi / m, eps)` for `m >= 3`, the two-branch half-turn rule for
/// `m = 2`.
pub fn singular_separation(m: u64, eps: f64) -> Result<SingularSeparation, MargulisError> {
    if m < 2 {
        return Err(MargulisError::OrderOutOfRange { m });
    }
    check_eps(eps)?;
    if m == 2 {
        Ok(SingularSeparation::HalfTurn { rotation_radius: ell_theta(PI, eps)?, eps })
    } else {
        Ok(SingularSeparation::Isolated { radius: ell_theta(2.0 * PI / m as f64, eps)? })
    }
}

#[cfg(test)]
mod tests;
