//! Tube-coordinate term evaluators for the geometric side.
//!
//! Every term is an integral of a radial kernel profile over a tube around
//! an axis, in cylindrical coordinates where the volume element is
//! `sinh r cosh r du dr dalpha` (H^3) or `cosh rho du drho` (H^2) and the
//! integrand depends on `r` alone through the displacement function. Finite
//! integration windows carry an analytic Gaussian bound for the discarded
//! tail so that reported values are honest upper estimates.

use serde::Serialize;

use crate::hyp::{displacement_from_parts, IsoClass, Isometry, Model};
use crate::margulis::{ell_theta, r_ell};

use super::kernel::{KernelProfile, ProfileMode};
use super::quad::{integrate, DEFAULT_QUAD_TOL};
use super::TraceError;

use std::f64::consts::{PI, TAU};

/// A term value split into its computed and bounded parts.
/// `value = quadrature + tail_bound`; when the profile is an envelope the
/// whole value is an upper bound, and `mode` says so.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TermEstimate {
    pub value: f64,
    pub quadrature: f64,
    pub tail_bound: f64,
    pub mode: ProfileMode,
}

fn check_length(length: f64) -> Result<(), TraceError> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(TraceError::LengthNotPositive { length });
    }
    Ok(())
}

fn require_dimension(profile: &KernelProfile, expected: u8) -> Result<(), TraceError> {
    if profile.dimension() != expected {
        return Err(TraceError::WrongDimension { expected, got: profile.dimension() });
    }
    Ok(())
}

/// Cutoff radius: past the displacement turnover `2t` plus twenty standard
/// deviations the Gaussian tail is far below any tolerance in use.
fn cutoff_radius(r0: f64, t: f64) -> f64 {
    r0 + 2.0 * t + 20.0 * t.sqrt() + 5.0
}

/// Bound on `int_R^inf A e^{-d(rho)^2/4t} sinh rho cosh rho drho` where the
/// displacement satisfies `sinh(d/2) >= w sinh rho`. From
/// `asinh x >= ln 2x` and `sinh rho >= (e^rho/2)(1 - e^{-2R})` one gets
/// `d >= 2 rho - b` with `b = -2 ln(w (1 - e^{-2R}))`, and the integral is
/// dominated by `(A/8) sqrt(pi t) e^{b+t} erfc(x)` at
/// `x = (2R - b - 2t) / (2 sqrt t)`, with `erfc(x) <= e^{-x^2}` for
/// nonnegative `x` and `erfc < 2` otherwise.
fn gaussian_tail(amplitude: f64, w: f64, t: f64, r_cut: f64) -> f64 {
    if amplitude <= 0.0 {
        return 0.0;
    }
    let b = -2.0 * (w * (-(-2.0 * r_cut).exp_m1())).ln();
    let x = (2.0 * r_cut - b - 2.0 * t) / (2.0 * t.sqrt());
    let log_head = amplitude.ln() + b + t + (PI * t).ln() / 2.0 - (8.0f64).ln();
    if x >= 0.0 {
        (log_head - x * x).exp()
    } else {
        2.0 * log_head.exp()
    }
}

/// Contribution of the nontrivial isotropy classes of a singular geodesic of
/// core length `length` and cone order `order` in a 3-manifold quotient:
///
/// `2 pi length (order - 1)/order int_{R0}^infty f(d_theta(r)) sinh r cosh r dr`
///
/// with `theta = 2 pi / order`, `d_theta` the displacement of the rotation at
/// distance `r` from the axis, and `R0` the exclusion radius below which the
/// quotient injectivity radius drops under `eps`. The minimal angle `theta`
/// dominates the other powers pointwise, so the single integral bounds the
/// full isotropy sum. Exactly linear in `length`, which only scales the
/// cross-section density.
pub fn elliptic_term(
    length: f64,
    order: u64,
    eps: f64,
    t: f64,
    profile: &KernelProfile,
) -> Result<TermEstimate, TraceError> {
    require_dimension(profile, 3)?;
    check_length(length)?;
    if order == 0 {
        return Err(TraceError::OrderZero);
    }
    let f = profile.evaluator(t)?;
    if order == 1 {
        return Ok(TermEstimate { value: 0.0, quadrature: 0.0, tail_bound: 0.0, mode: profile.mode() });
    }
    let theta = TAU / order as f64;
    let r0 = ell_theta(theta, eps)?.max(r_ell(length, eps));
    let r_cut = cutoff_radius(r0, t);
    let inner = integrate(
        |r| f(displacement_from_parts(0.0, theta, r)) * r.sinh() * r.cosh(),
        r0,
        r_cut,
        DEFAULT_QUAD_TOL,
    )?;
    let amplitude = profile.envelope_amplitude(t).expect("dimension-3 profile has an envelope");
    let tail = gaussian_tail(amplitude, (theta / 2.0).sin(), t, r_cut);
    // Keep `length` as the final factor so the value scales exactly with it.
    let prefactor = 2.0 * PI * ((order - 1) as f64 / order as f64) * length;
    Ok(TermEstimate {
        value: prefactor * (inner.value + tail),
        quadrature: prefactor * inner.value,
        tail_bound: prefactor * tail,
        mode: profile.mode(),
    })
}

/// Contribution of the primitive class of a closed geodesic of the given
/// length in a 3-manifold quotient:
/// `2 pi length int_0^infty f(d(rho)) sinh rho cosh rho drho`, where
/// `d(rho)` is the displacement of the translation at distance `rho` from
/// its axis. Decays like `e^{-length^2/4t}` through `d(0) = length`.
pub fn hyperbolic_term(
    length: f64,
    t: f64,
    profile: &KernelProfile,
) -> Result<TermEstimate, TraceError> {
    require_dimension(profile, 3)?;
    check_length(length)?;
    let f = profile.evaluator(t)?;
    let r_cut = cutoff_radius(0.0, t);
    let inner = integrate(
        |rho| f(displacement_from_parts(length, 0.0, rho)) * rho.sinh() * rho.cosh(),
        0.0,
        r_cut,
        DEFAULT_QUAD_TOL,
    )?;
    let amplitude = profile.envelope_amplitude(t).expect("dimension-3 profile has an envelope");
    let tail = gaussian_tail(amplitude, (length / 2.0).sinh(), t, r_cut);
    let prefactor = 2.0 * PI * length;
    Ok(TermEstimate {
        value: prefactor * (inner.value + tail),
        quadrature: prefactor * inner.value,
        tail_bound: prefactor * tail,
        mode: profile.mode(),
    })
}

/// Transverse orbital integral of a compactly supported radial test function
/// against an axial isometry, normalized per unit length of the axis:
///
/// * H^2: `2 int_0^{rho_max} phi(d(rho)) cosh rho drho`
/// * H^3: `2 pi int_0^{rho_max} phi(d(rho)) sinh rho cosh rho drho`
///
/// so that the integral of `phi(d(gamma, x))` over a fundamental domain of
/// the axis stabilizer quotient equals `translation_length` times this
/// value. `support` is the certificate that `phi` vanishes at or beyond that
/// distance; it truncates the integral at the exact radius where the
/// displacement reaches it. Identity and parabolic classes have no axial
/// normal form and are rejected.
pub fn orbital_term<F: Fn(f64) -> f64>(
    gamma: &Isometry,
    phi: F,
    support: f64,
) -> Result<f64, TraceError> {
    if !(support > 0.0) || !support.is_finite() {
        return Err(TraceError::SupportNotFinite { support });
    }
    let class = gamma.classify();
    if matches!(class, IsoClass::Identity | IsoClass::Parabolic) {
        return Err(TraceError::UnsupportedClass { class });
    }
    let length = class.translation_length();
    let angle = class.rotation_angle();
    let s = (support / 2.0).sinh().powi(2);
    let base = (length / 2.0).sinh().powi(2);
    if base >= s {
        // The minimal displacement d(0) = length already exceeds the support.
        return Ok(0.0);
    }
    let denom = base + (angle / 2.0).sin().powi(2);
    if denom <= 0.0 {
        return Err(TraceError::UnsupportedClass { class });
    }
    // sinh^2(d(rho)/2) = base cosh^2 rho + (denom - base) sinh^2 rho reaches
    // s exactly at this radius; phi vanishes beyond it.
    let rho_max = ((s - base) / denom).sqrt().asinh();
    let d = move |rho: f64| displacement_from_parts(length, angle, rho);
    let result = match gamma.model() {
        Model::H2 => integrate(|rho| 2.0 * phi(d(rho)) * rho.cosh(), 0.0, rho_max, DEFAULT_QUAD_TOL)?,
        Model::H3 => integrate(
            |rho| TAU * phi(d(rho)) * rho.sinh() * rho.cosh(),
            0.0,
            rho_max,
            DEFAULT_QUAD_TOL,
        )?,
    };
    Ok(result.value)
}
