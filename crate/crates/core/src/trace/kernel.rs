//! Heat-kernel profiles on H^2 and H^3.
//!
//! The scalar H^3 kernel has the elementary closed form
//! `(4 pi t)^{-3/2} e^{-t} (r / sinh r) e^{-r^2/4t}`; the scalar H^2 kernel
//! has none and is evaluated through its integral representation. Degree-1
//! data on H^3 is handled through a Gaussian upper envelope calibrated
//! against the scalar kernel, never as an exact trace; see
//! [`KernelProfile`].

use serde::Serialize;

use super::quad::integrate;
use super::TraceError;

use std::f64::consts::PI;

fn check_time(t: f64) -> Result<(), TraceError> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(TraceError::TimeNotPositive { t });
    }
    Ok(())
}

fn check_distance(r: f64) -> Result<(), TraceError> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(TraceError::NegativeDistance { r });
    }
    Ok(())
}

/// `x / sinh x` without the 0/0 at the origin.
fn x_over_sinh(x: f64) -> f64 {
    if x < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x / x.sinh()
    }
}

/// `(4 pi t)^{-3/2}`, the flat Weyl factor.
fn weyl_factor(t: f64) -> f64 {
    (4.0 * PI * t).powf(-1.5)
}

/// Scalar heat kernel on H^3 at distance `r`, time `t`:
/// `(4 pi t)^{-3/2} e^{-t} (r / sinh r) e^{-r^2 / 4t}`, with the limit value
/// `(4 pi t)^{-3/2} e^{-t}` at `r = 0`. Integrates to exactly 1 against
/// `4 pi sinh^2 r dr`.
pub fn heat_kernel_h3_scalar(r: f64, t: f64) -> Result<f64, TraceError> {
    check_distance(r)?;
    check_time(t)?;
    Ok(weyl_factor(t) * (-t - r * r / (4.0 * t)).exp() * x_over_sinh(r))
}

/// Upper limit in `s` beyond which the integrand of the H^2 representation
/// is negligible; the discarded tail is below 4 t e^{-(20 sqrt t + 5)^2/4t}
/// times the retained head, far under the quadrature tolerance.
fn h2_cutoff(r: f64, t: f64) -> f64 {
    r + 20.0 * t.sqrt() + 5.0
}

/// `sinh(x)/x`, stable at 0.
fn sinh_over_x(x: f64) -> f64 {
    if x < 1e-8 {
        1.0 + x * x / 6.0
    } else {
        x.sinh() / x
    }
}

/// Scalar heat kernel on H^2 via the integral representation
/// `sqrt 2 (4 pi t)^{-3/2} e^{-t/4} int_r^inf s e^{-s^2/4t} /
/// sqrt(cosh s - cosh r) ds`. The substitution `s = r + u^2` together with
/// `cosh s - cosh r = 2 sinh((s+r)/2) sinh((s-r)/2)` removes the endpoint
/// singularity, leaving a smooth integrand.
pub fn heat_kernel_h2_scalar(r: f64, t: f64) -> Result<f64, TraceError> {
    check_distance(r)?;
    check_time(t)?;
    let u_max = (h2_cutoff(r, t) - r).sqrt();
    let integrand = move |u: f64| {
        let s = r + u * u;
        if s == 0.0 {
            return 0.0;
        }
        let x = u * u / 2.0;
        // 2u s e^{-s^2/4t} / sqrt(2 sinh((s+r)/2) sinh(x)) with
        // sinh(x) = x sinh_over_x(x) and 2x = u^2 cancelling the 2u.
        2.0 * s * (-s * s / (4.0 * t)).exp() / (((s + r) / 2.0).sinh() * sinh_over_x(x)).sqrt()
    };
    let inner = integrate(integrand, 0.0, u_max, 1e-13)?;
    Ok(2.0f64.sqrt() * weyl_factor(t) * (-t / 4.0).exp() * inner.value)
}

/// Pointwise diagonal trace of the degree-1 heat operator on H^3:
/// `3 (4 pi t)^{-3/2} e^{-t}`. Small-time behavior is the rank-3 Weyl law
/// `3 (4 pi t)^{-3/2} (1 + O(t))`; the value tends to 0 as `t` grows, as
/// the vanishing first L^2-Betti number requires.
pub fn one_form_profile_h3(t: f64) -> Result<f64, TraceError> {
    check_time(t)?;
    Ok(3.0 * weyl_factor(t) * (-t).exp())
}

/// Safety factor relating the degree-1 Gaussian envelope to the diagonal
/// profile. Calibration choice, recorded in every report that uses it.
pub const ONE_FORM_ENVELOPE_SAFETY: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProfileMode {
    Exact,
    GaussianUpperBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
enum ProfileKind {
    ScalarH2,
    ScalarH3,
    OneFormH3,
}

/// A radial kernel profile: dimension, form degree, whether values are
/// exact or a dominating Gaussian envelope, and the evaluation rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelProfile {
    dimension: u8,
    degree: u8,
    mode: ProfileMode,
    kind: ProfileKind,
}

impl KernelProfile {
    /// Exact scalar kernel on H^3.
    pub fn scalar_h3() -> Self {
        KernelProfile { dimension: 3, degree: 0, mode: ProfileMode::Exact, kind: ProfileKind::ScalarH3 }
    }

    /// Exact scalar kernel on H^2 (via its integral representation).
    pub fn scalar_h2() -> Self {
        KernelProfile { dimension: 2, degree: 0, mode: ProfileMode::Exact, kind: ProfileKind::ScalarH2 }
    }

    /// Gaussian upper envelope for degree-1 data on H^3:
    /// `4 * 3 (4 pi t)^{-3/2} e^{-t} e^{-r^2/4t}`. Values are bounds, not
    /// traces; the diagonal trace itself is [`one_form_profile_h3`].
    pub fn one_form_h3() -> Self {
        KernelProfile {
            dimension: 3,
            degree: 1,
            mode: ProfileMode::GaussianUpperBound,
            kind: ProfileKind::OneFormH3,
        }
    }

    pub fn dimension(&self) -> u8 {
        self.dimension
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn mode(&self) -> ProfileMode {
        self.mode
    }

    /// Value at distance `r`, time `t`.
    pub fn eval(&self, r: f64, t: f64) -> Result<f64, TraceError> {
        match self.kind {
            ProfileKind::ScalarH3 => heat_kernel_h3_scalar(r, t),
            ProfileKind::ScalarH2 => heat_kernel_h2_scalar(r, t),
            ProfileKind::OneFormH3 => {
                check_distance(r)?;
                check_time(t)?;
                Ok(ONE_FORM_ENVELOPE_SAFETY * 3.0 * weyl_factor(t) * (-t - r * r / (4.0 * t)).exp())
            }
        }
    }

    /// Infallible evaluation closure with `t` validated once; used inside
    /// quadrature loops. H^2 values fall back to NaN on inner quadrature
    /// failure, which the outer integrator reports as an error.
    pub(super) fn evaluator(&self, t: f64) -> Result<impl Fn(f64) -> f64 + '_, TraceError> {
        check_time(t)?;
        let kind = self.kind;
        Ok(move |r: f64| match kind {
            ProfileKind::ScalarH3 => weyl_factor(t) * (-t - r * r / (4.0 * t)).exp() * x_over_sinh(r),
            ProfileKind::ScalarH2 => heat_kernel_h2_scalar(r, t).unwrap_or(f64::NAN),
            ProfileKind::OneFormH3 => {
                ONE_FORM_ENVELOPE_SAFETY * 3.0 * weyl_factor(t) * (-t - r * r / (4.0 * t)).exp()
            }
        })
    }

    /// Amplitude `A(t)` with `profile(r, t) <= A(t) e^{-r^2/4t}`, available
    /// for the H^3 profiles (the scalar kernel drops its `r/sinh r` factor,
    /// the envelope is already of this form). `None` for H^2, whose terms
    /// never need analytic tails here.
    pub(super) fn envelope_amplitude(&self, t: f64) -> Option<f64> {
        match self.kind {
            ProfileKind::ScalarH3 => Some(weyl_factor(t) * (-t).exp()),
            ProfileKind::OneFormH3 => {
                Some(ONE_FORM_ENVELOPE_SAFETY * 3.0 * weyl_factor(t) * (-t).exp())
            }
            ProfileKind::ScalarH2 => None,
        }
    }
}

/// Mass of a kernel against the volume of spheres: 1 for a stochastically
/// complete heat kernel. Exposed for diagnostics and tests.
pub fn kernel_mass(profile: &KernelProfile, t: f64) -> Result<f64, TraceError> {
    check_time(t)?;
    let r_max = 2.0 * t + 20.0 * t.sqrt() + 10.0;
    let f = profile.evaluator(t)?;
    let sphere = |r: f64| match profile.dimension() {
        2 => 2.0 * PI * r.sinh(),
        _ => 4.0 * PI * r.sinh().powi(2),
    };
    let result = integrate(|r| f(r) * sphere(r), 0.0, r_max, 1e-9).map_err(TraceError::from)?;
    Ok(result.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn h3_origin_limit_value() {
        let v = heat_kernel_h3_scalar(0.0, 1.0).unwrap();
        assert_relative_eq!(v, (4.0 * PI).powf(-1.5) * (-1.0f64).exp(), epsilon = 1e-15);
        assert_relative_eq!(v, 0.008_257_8, epsilon = 1e-6);
        // Continuity through the series branch.
        assert_relative_eq!(heat_kernel_h3_scalar(1e-9, 1.0).unwrap(), v, epsilon = 1e-12);
        assert_relative_eq!(
            heat_kernel_h3_scalar(2e-8, 1.0).unwrap(),
            heat_kernel_h3_scalar(1e-8, 1.0).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn h3_mass_is_one() {
        for &t in &[0.1, 1.0, 10.0] {
            let mass = kernel_mass(&KernelProfile::scalar_h3(), t).unwrap();
            assert!((mass - 1.0).abs() <= 1e-6, "mass {mass} at t = {t}");
        }
    }

    #[test]
    fn h2_mass_is_one() {
        for &t in &[0.1, 1.0, 10.0] {
            let mass = kernel_mass(&KernelProfile::scalar_h2(), t).unwrap();
            assert!((mass - 1.0).abs() <= 1e-6, "mass {mass} at t = {t}");
        }
    }

    /// Fourth-order central first derivative.
    fn d1(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
    }

    /// Fourth-order central second derivative.
    fn d2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
            / (12.0 * h * h)
    }

    #[test]
    fn h3_satisfies_radial_heat_equation() {
        let h = 1e-2;
        for &(r, t) in &[(0.35, 0.4), (1.0, 1.0), (2.2, 3.0), (0.5, 1.7)] {
            let k = |r: f64, t: f64| heat_kernel_h3_scalar(r, t).unwrap();
            let dt = d1(|t| k(r, t), t, h);
            let laplacian = d2(|r| k(r, t), r, h) + 2.0 / r.tanh() * d1(|r| k(r, t), r, h);
            assert!((dt - laplacian).abs() <= 1e-6, "residual {} at ({r}, {t})", dt - laplacian);
        }
    }

    #[test]
    fn h2_satisfies_radial_heat_equation() {
        let h = 1e-2;
        for &(r, t) in &[(0.7, 0.8), (1.5, 1.2)] {
            let k = |r: f64, t: f64| heat_kernel_h2_scalar(r, t).unwrap();
            let dt = d1(|t| k(r, t), t, h);
            let laplacian = d2(|r| k(r, t), r, h) + 1.0 / r.tanh() * d1(|r| k(r, t), r, h);
            assert!((dt - laplacian).abs() <= 1e-6, "residual {} at ({r}, {t})", dt - laplacian);
        }
    }

    #[test]
    fn kernels_positive_and_decreasing_in_distance() {
        for profile in [KernelProfile::scalar_h3(), KernelProfile::scalar_h2()] {
            for &t in &[0.5, 2.0] {
                let mut last = f64::INFINITY;
                for i in 0..=50 {
                    let r = 0.1 * i as f64;
                    let v = profile.eval(r, t).unwrap();
                    assert!(v > 0.0);
                    assert!(v < last, "not decreasing at r = {r}, t = {t}");
                    last = v;
                }
            }
        }
    }

    #[test]
    fn one_form_profile_contract() {
        // Small time: rank-3 Weyl law within 5 percent.
        let t = 1e-3;
        let v = one_form_profile_h3(t).unwrap();
        assert!((v / (3.0 * (4.0 * PI * t).powf(-1.5)) - 1.0).abs() < 0.05);
        // Long time: decays to zero.
        assert!(one_form_profile_h3(100.0).unwrap() <= 1e-3);
        // Monotone decreasing on a log grid.
        let mut last = f64::INFINITY;
        for i in -3..=2 {
            let v = one_form_profile_h3(10f64.powi(i)).unwrap();
            assert!(v < last);
            last = v;
        }
    }

    #[test]
    fn envelope_dominates_exact_scalar() {
        let envelope = KernelProfile::one_form_h3();
        let scalar = KernelProfile::scalar_h3();
        for &t in &[0.1, 1.0, 10.0] {
            for i in 0..=30 {
                let r = 0.2 * i as f64;
                assert!(envelope.eval(r, t).unwrap() >= scalar.eval(r, t).unwrap());
            }
        }
    }

    #[test]
    fn profile_metadata() {
        let p = KernelProfile::one_form_h3();
        assert_eq!((p.dimension(), p.degree()), (3, 1));
        assert_eq!(p.mode(), ProfileMode::GaussianUpperBound);
        assert_eq!(KernelProfile::scalar_h2().dimension(), 2);
        assert_eq!(KernelProfile::scalar_h3().mode(), ProfileMode::Exact);
    }

    #[test]
    fn invalid_arguments_rejected() {
        assert!(matches!(
            heat_kernel_h3_scalar(1.0, 0.0),
            Err(TraceError::TimeNotPositive { .. })
        ));
        assert!(matches!(
            heat_kernel_h3_scalar(-1.0, 1.0),
            Err(TraceError::NegativeDistance { .. })
        ));
        assert!(heat_kernel_h2_scalar(1.0, f64::NAN).is_err());
        assert!(one_form_profile_h3(-2.0).is_err());
    }
}
