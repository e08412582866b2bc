//! Hyperbolic plane and 3-space in the upper half models.
//!
//! H^2 = { x + iy : y > 0 } with isometries PSL(2, R) acting by Moebius
//! transformations, and H^3 = { (z, t) : z in C, t > 0 } with PSL(2, C)
//! acting on quaternions w = z + t j by w -> (aw + b)(cw + d)^{-1}.
//!
//! Matrices are stored det-normalized to 1 and sign-canonicalized (first
//! entry of (a, b, c, d) with nonzero modulus has nonnegative real part, ties
//! broken toward nonnegative imaginary part), so a matrix and its negative
//! are the same [`Isometry`].
//!
//! Distances use the stable form
//! `d(p, q) = 2 asinh(|p - q| / (2 sqrt(y_p y_q)))`,
//! equivalent to `cosh d = 1 + |p - q|^2 / (2 y_p y_q)`.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

/// Threshold on |tr^2 - 4| below which an isometry is treated as parabolic
/// (or the identity). Classification is discontinuous at that locus; the
/// tolerance makes the branch explicit and testable.
pub const CLASS_TOL: f64 = 1e-9;

/// Chordal tolerance for treating two boundary points (and hence two axes)
/// as equal.
pub const AXIS_MATCH_TOL: f64 = 1e-9;

const SINGULAR_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum HypError {
    #[error("matrix is singular or numerically non-invertible (|det| < {SINGULAR_TOL:e})")]
    SingularMatrix,
    #[error("H^2 isometries need det > 0; got det = {det}")]
    OrientationReversing { det: f64 },
    #[error("entries or coordinates must be finite, got a NaN or infinity")]
    NonFinite,
    #[error("point height must be > 0, got {height}")]
    InvalidHeight { height: f64 },
    #[error("operands live in different models")]
    ModelMismatch,
    #[error("isometry of class {class:?} has no axis")]
    NoAxis { class: IsoClass },
    #[error("isometry of class {class:?} has no interior fixed point")]
    NoFixedPoint { class: IsoClass },
    #[error("geodesic endpoints coincide")]
    EqualEndpoints,
    #[error("generator list must contain between 1 and 4 isometries, got {got}")]
    GeneratorCount { got: usize },
    #[error("twist is only meaningful in H^3")]
    TwistInPlane,
}

/// Which hyperbolic space an object lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Model {
    H2,
    H3,
}

/// Point of H^2 or H^3.
///
/// `horizontal` is the boundary-parallel coordinate: for H^2 the real
/// coordinate x (imaginary part is kept at zero), for H^3 the complex
/// coordinate z = x1 + i x2. `height` is the last coordinate, always > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    model: Model,
    horizontal: Complex64,
    height: f64,
}

impl Point {
    pub fn h2(x: f64, y: f64) -> Result<Self, HypError> {
        Self::new(Model::H2, Complex64::new(x, 0.0), y)
    }

    pub fn h3(x1: f64, x2: f64, y: f64) -> Result<Self, HypError> {
        Self::new(Model::H3, Complex64::new(x1, x2), y)
    }

    fn new(model: Model, horizontal: Complex64, height: f64) -> Result<Self, HypError> {
        if !horizontal.re.is_finite() || !horizontal.im.is_finite() || !height.is_finite() {
            return Err(HypError::NonFinite);
        }
        if height <= 0.0 {
            return Err(HypError::InvalidHeight { height });
        }
        Ok(Point { model, horizontal, height })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Boundary-parallel coordinate (x for H^2, z for H^3).
    pub fn horizontal(&self) -> Complex64 {
        self.horizontal
    }

    pub fn height(&self) -> f64 {
        self.height
    }
}

/// Point of the ideal boundary: R u {inf} for H^2, C u {inf} for H^3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    Finite(Complex64),
    Infinity,
}

impl Boundary {
    pub fn finite(z: Complex64) -> Self {
        Boundary::Finite(z)
    }

    /// Chordal distance on the Riemann sphere; the metric used for all
    /// boundary-point and axis comparisons.
    pub fn chordal(&self, other: &Boundary) -> f64 {
        match (self, other) {
            (Boundary::Infinity, Boundary::Infinity) => 0.0,
            (Boundary::Finite(z), Boundary::Infinity)
            | (Boundary::Infinity, Boundary::Finite(z)) => 1.0 / (1.0 + z.norm_sqr()).sqrt(),
            (Boundary::Finite(z), Boundary::Finite(w)) => {
                (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
            }
        }
    }
}

/// Unoriented geodesic, stored by its two ideal endpoints.
#[derive(Debug, Clone, Copy)]
pub struct Geodesic {
    model: Model,
    endpoints: (Boundary, Boundary),
}

impl Geodesic {
    pub fn from_endpoints(model: Model, p: Boundary, q: Boundary) -> Result<Self, HypError> {
        if p.chordal(&q) <= AXIS_MATCH_TOL {
            return Err(HypError::EqualEndpoints);
        }
        if model == Model::H2 {
            // H^2 geodesics end on the real line.
            for e in [&p, &q] {
                if let Boundary::Finite(z) = e {
                    if z.im.abs() > AXIS_MATCH_TOL {
                        return Err(HypError::ModelMismatch);
                    }
                }
            }
        }
        Ok(Geodesic { model, endpoints: (p, q) })
    }

    /// The vertical axis through the origin, endpoints {0, inf}.
    pub fn vertical(model: Model) -> Self {
        Geodesic {
            model,
            endpoints: (Boundary::Finite(Complex64::new(0.0, 0.0)), Boundary::Infinity),
        }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn endpoints(&self) -> (Boundary, Boundary) {
        self.endpoints
    }

    /// Unordered endpoint match within the chordal tolerance.
    pub fn same_as(&self, other: &Geodesic) -> bool {
        let (a, b) = self.endpoints;
        let (c, d) = other.endpoints;
        (a.chordal(&c) <= AXIS_MATCH_TOL && b.chordal(&d) <= AXIS_MATCH_TOL)
            || (a.chordal(&d) <= AXIS_MATCH_TOL && b.chordal(&c) <= AXIS_MATCH_TOL)
    }
}

/// Conjugacy type of an isometry.
///
/// `Elliptic.angle` is the unsigned rotation angle folded to (0, pi].
/// `Loxodromic.twist` is the rotation part in (-pi, pi], well defined for a
/// given matrix modulo sign. Pure translations (twist 0) classify as
/// `Hyperbolic`, which is the only loxodromic type arising in H^2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum IsoClass {
    Identity,
    Elliptic { angle: f64 },
    Parabolic,
    Hyperbolic { length: f64 },
    Loxodromic { length: f64, twist: f64 },
}

impl IsoClass {
    pub fn translation_length(&self) -> f64 {
        match self {
            IsoClass::Hyperbolic { length } | IsoClass::Loxodromic { length, .. } => *length,
            _ => 0.0,
        }
    }

    /// Rotation angle: the elliptic angle, the loxodromic twist, else 0.
    pub fn rotation_angle(&self) -> f64 {
        match self {
            IsoClass::Elliptic { angle } => *angle,
            IsoClass::Loxodromic { twist, .. } => *twist,
            _ => 0.0,
        }
    }

    /// Displacement of a point at distance `rho` from the axis (or fixed
    /// point), via `cosh d - 1 = (cosh l - 1) cosh^2 rho + (1 - cos theta)
    /// sinh^2 rho`, evaluated in the cancellation-free form
    /// `d = 2 asinh(sqrt(u / 2))`. `None` for parabolics, whose displacement
    /// has no axial normal form.
    pub fn displacement_at(&self, rho: f64) -> Option<f64> {
        let (length, angle) = match self {
            IsoClass::Identity => return Some(0.0),
            IsoClass::Parabolic => return None,
            IsoClass::Elliptic { angle } => (0.0, *angle),
            IsoClass::Hyperbolic { length } => (*length, 0.0),
            IsoClass::Loxodromic { length, twist } => (*length, *twist),
        };
        Some(displacement_from_parts(length, angle, rho))
    }
}

/// Displacement at distance `rho` from the axis of an isometry with
/// translation length `length` and rotation angle `angle`.
pub fn displacement_from_parts(length: f64, angle: f64, rho: f64) -> f64 {
    let ch = rho.cosh();
    let sh = rho.sinh();
    // cosh(l) - 1 and 1 - cos(theta) computed without cancellation.
    let u = 2.0 * (length / 2.0).sinh().powi(2) * ch * ch
        + 2.0 * (angle / 2.0).sin().powi(2) * sh * sh;
    2.0 * (u / 2.0).sqrt().asinh()
}

/// Orientation-preserving isometry as a det-1, sign-canonicalized projective
/// matrix. H^2 matrices keep exactly real entries.
#[derive(Debug, Clone, Copy)]
pub struct Isometry {
    model: Model,
    m: [Complex64; 4],
}

fn wrap_angle(mut a: f64) -> f64 {
    // Wrap to (-pi, pi].
    use std::f64::consts::PI;
    while a > PI {
        a -= 2.0 * PI;
    }
    while a <= -PI {
        a += 2.0 * PI;
    }
    a
}

impl Isometry {
    pub fn h2(a: f64, b: f64, c: f64, d: f64) -> Result<Self, HypError> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(HypError::NonFinite);
        }
        let det = a * d - b * c;
        if det.abs() < SINGULAR_TOL {
            return Err(HypError::SingularMatrix);
        }
        if det < 0.0 {
            return Err(HypError::OrientationReversing { det });
        }
        let s = det.sqrt();
        let m = [a / s, b / s, c / s, d / s].map(|v| Complex64::new(v, 0.0));
        Ok(Self::canonical(Model::H2, m))
    }

    pub fn h3(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self, HypError> {
        if ![a, b, c, d]
            .iter()
            .all(|v| v.re.is_finite() && v.im.is_finite())
        {
            return Err(HypError::NonFinite);
        }
        let det = a * d - b * c;
        if det.norm() < SINGULAR_TOL {
            return Err(HypError::SingularMatrix);
        }
        let s = det.sqrt();
        Ok(Self::canonical(Model::H3, [a / s, b / s, c / s, d / s]))
    }

    fn canonical(model: Model, m: [Complex64; 4]) -> Self {
        let mut m = m;
        for e in &m {
            if e.norm() > SINGULAR_TOL {
                if e.re < 0.0 || (e.re == 0.0 && e.im < 0.0) {
                    for v in &mut m {
                        *v = -*v;
                    }
                }
                break;
            }
        }
        Isometry { model, m }
    }

    pub fn identity(model: Model) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Isometry { model, m: [one, zero, zero, one] }
    }

    /// H^2 rotation by `angle` about the point i.
    pub fn h2_rotation_about_i(angle: f64) -> Self {
        let (s, c) = (angle / 2.0).sin_cos();
        Isometry::h2(c, s, -s, c).expect("rotation matrix is regular")
    }

    /// Translation by `length` along the vertical axis (either model).
    pub fn translation_along_vertical(model: Model, length: f64) -> Self {
        let e = (length / 2.0).exp();
        match model {
            Model::H2 => Isometry::h2(e, 0.0, 0.0, 1.0 / e),
            Model::H3 => Isometry::h3(
                Complex64::new(e, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0 / e, 0.0),
            ),
        }
        .expect("diagonal matrix is regular")
    }

    /// H^3 screw motion along the vertical axis: translation `length`
    /// with rotation `twist` (set `length = 0` for a pure rotation).
    pub fn h3_loxodromic_vertical(length: f64, twist: f64) -> Self {
        let lam = Complex64::new(length / 2.0, twist / 2.0).exp();
        Isometry::h3(
            lam,
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            lam.inv(),
        )
        .expect("diagonal matrix is regular")
    }

    /// Parabolic z -> z + c fixing infinity.
    pub fn parabolic_translation(model: Model, c: Complex64) -> Result<Self, HypError> {
        match model {
            Model::H2 => Isometry::h2(1.0, c.re, 0.0, 1.0),
            Model::H3 => Isometry::h3(
                Complex64::new(1.0, 0.0),
                c,
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
            ),
        }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn entries(&self) -> [Complex64; 4] {
        self.m
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0] + self.m[3]
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.m;
        Self::canonical(self.model, [d, -b, -c, a])
    }

    pub fn compose(&self, other: &Isometry) -> Result<Self, HypError> {
        if self.model != other.model {
            return Err(HypError::ModelMismatch);
        }
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = other.m;
        Ok(Self::canonical(
            self.model,
            [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h],
        ))
    }

    /// `g self g^{-1}`.
    pub fn conjugate_by(&self, g: &Isometry) -> Result<Self, HypError> {
        g.compose(self)?.compose(&g.inverse())
    }

    /// Integer power by repeated multiplication (exponents are small here).
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut acc = Isometry::identity(self.model);
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base).expect("same model");
        }
        acc
    }

    /// Action on an interior point. For H^2 this is the Moebius action on
    /// x + iy; both models share the quaternion form
    /// `z' = ((az + b) conj(cz + d) + a conj(c) t^2) / D`, `t' = t / D`,
    /// `D = |cz + d|^2 + |c|^2 t^2`.
    pub fn apply(&self, p: &Point) -> Result<Point, HypError> {
        if self.model != p.model {
            return Err(HypError::ModelMismatch);
        }
        let [a, b, c, d] = self.m;
        let z = p.horizontal;
        let t = p.height;
        let den = c * z + d;
        let big_d = den.norm_sqr() + c.norm_sqr() * t * t;
        let z1 = ((a * z + b) * den.conj() + a * c.conj() * t * t) / big_d;
        let t1 = t / big_d;
        Point::new(self.model, z1, t1)
    }

    /// Action on the ideal boundary.
    pub fn apply_boundary(&self, b: &Boundary) -> Boundary {
        let [p, q, r, s] = self.m;
        match b {
            Boundary::Infinity => {
                if r.norm() <= SINGULAR_TOL {
                    Boundary::Infinity
                } else {
                    Boundary::Finite(p / r)
                }
            }
            Boundary::Finite(z) => {
                let den = r * z + s;
                if den.norm() <= SINGULAR_TOL * (1.0 + z.norm()) {
                    Boundary::Infinity
                } else {
                    Boundary::Finite((p * z + q) / den)
                }
            }
        }
    }

    /// Conjugacy classification with the documented tolerance band
    /// |tr^2 - 4| < [`CLASS_TOL`] for the parabolic / identity branch.
    pub fn classify(&self) -> IsoClass {
        let tau = self.trace();
        let s = tau * tau;
        if (s - 4.0).norm() < CLASS_TOL {
            let id = Isometry::identity(self.model);
            let dist = self
                .m
                .iter()
                .zip(id.m.iter())
                .map(|(x, y)| (x - y).norm())
                .fold(0.0_f64, f64::max);
            let dist_neg = self
                .m
                .iter()
                .zip(id.m.iter())
                .map(|(x, y)| (x + y).norm())
                .fold(0.0_f64, f64::max);
            if dist.min(dist_neg) < CLASS_TOL {
                return IsoClass::Identity;
            }
            return IsoClass::Parabolic;
        }
        // Eigenvalue with |lambda| >= 1; the pair is {lambda, 1/lambda}.
        let root = (s - 4.0).sqrt();
        let mut lam = (tau + root) / 2.0;
        if lam.norm() < 1.0 {
            lam = (tau - root) / 2.0;
        }
        let log_mod = lam.norm().ln();
        if log_mod.abs() < CLASS_TOL {
            // |lambda| = 1, lambda = exp(i phi): rotation by 2 phi, folded
            // to the unsigned angle in (0, pi].
            let phi = lam.arg().abs();
            let angle = if phi <= std::f64::consts::FRAC_PI_2 {
                2.0 * phi
            } else {
                2.0 * (std::f64::consts::PI - phi)
            };
            return IsoClass::Elliptic { angle };
        }
        let length = 2.0 * log_mod.abs();
        let lam = if log_mod > 0.0 { lam } else { lam.inv() };
        let twist = wrap_angle(2.0 * lam.arg());
        if twist.abs() < CLASS_TOL || self.model == Model::H2 {
            IsoClass::Hyperbolic { length }
        } else {
            IsoClass::Loxodromic { length, twist }
        }
    }

    /// Translation length of the classified isometry (0 unless hyperbolic
    /// or loxodromic).
    pub fn translation_length(&self) -> f64 {
        self.classify().translation_length()
    }

    /// Displacement of `p`, computed directly as `d(p, self p)`.
    pub fn displacement(&self, p: &Point) -> Result<f64, HypError> {
        let q = self.apply(p)?;
        distance(p, &q)
    }

    /// Ideal fixed points, ordered (repelling, attracting) when there is a
    /// dynamic to orient by; elliptic fixed points come in a deterministic
    /// but arbitrary order.
    fn boundary_fixed_points(&self) -> Option<(Boundary, Boundary)> {
        let [a, b, c, d] = self.m;
        let tau = a + d;
        let s = tau * tau;
        if (s - 4.0).norm() < CLASS_TOL {
            return None;
        }
        let root = (s - 4.0).sqrt();
        let mut lam = (tau + root) / 2.0;
        if lam.norm() < 1.0 {
            lam = (tau - root) / 2.0;
        }
        if c.norm() > SINGULAR_TOL {
            // Fixed point for eigenvalue mu is (mu - d) / c.
            let att = (lam - d) / c;
            let rep = (lam.inv() - d) / c;
            Some((Boundary::Finite(rep), Boundary::Finite(att)))
        } else {
            // Fixed points are inf (eigenvalue a) and b / (d - a).
            let finite = Boundary::Finite(b / (d - a));
            if (a - lam).norm() <= (d - lam).norm() {
                Some((finite, Boundary::Infinity))
            } else {
                Some((Boundary::Infinity, finite))
            }
        }
    }

    /// Axis of a hyperbolic/loxodromic isometry, or the rotation axis of an
    /// H^3 elliptic. H^2 elliptics fix an interior point instead; see
    /// [`Isometry::fixed_point`].
    pub fn axis(&self) -> Result<Geodesic, HypError> {
        let class = self.classify();
        match class {
            IsoClass::Hyperbolic { .. } | IsoClass::Loxodromic { .. } => {}
            IsoClass::Elliptic { .. } if self.model == Model::H3 => {}
            _ => return Err(HypError::NoAxis { class }),
        }
        let (rep, att) = self.boundary_fixed_points().expect("non-parabolic");
        Geodesic::from_endpoints(self.model, rep, att)
    }

    /// Interior fixed point of an H^2 elliptic: the complex fixed point in
    /// the upper half-plane.
    pub fn fixed_point(&self) -> Result<Point, HypError> {
        let class = self.classify();
        if self.model != Model::H2 || !matches!(class, IsoClass::Elliptic { .. }) {
            return Err(HypError::NoFixedPoint { class });
        }
        let (p, q) = self.boundary_fixed_points().expect("elliptic");
        for b in [p, q] {
            if let Boundary::Finite(z) = b {
                if z.im > 0.0 {
                    return Point::h2(z.re, z.im);
                }
            }
        }
        Err(HypError::NoFixedPoint { class })
    }

    /// Fixed boundary point of a parabolic.
    pub fn parabolic_fixed_point(&self) -> Option<Boundary> {
        if !matches!(self.classify(), IsoClass::Parabolic) {
            return None;
        }
        let [a, _, c, d] = self.m;
        if c.norm() > SINGULAR_TOL {
            Some(Boundary::Finite((a - d) / (2.0 * c)))
        } else {
            Some(Boundary::Infinity)
        }
    }
}

/// Geodesic distance between two points of the same model.
pub fn distance(p: &Point, q: &Point) -> Result<f64, HypError> {
    if p.model != q.model {
        return Err(HypError::ModelMismatch);
    }
    let dz = (p.horizontal - q.horizontal).norm_sqr() + (p.height - q.height).powi(2);
    Ok(2.0 * (dz.sqrt() / (2.0 * (p.height * q.height).sqrt())).asinh())
}

/// Distance from a point to a geodesic, via
/// `sinh rho = |(z - u) conj(z - v) + t^2| / (|u - v| t)`
/// for finite endpoints u, v (a vertical line when one endpoint is inf).
pub fn dist_to_geodesic(p: &Point, geo: &Geodesic) -> Result<f64, HypError> {
    if p.model != geo.model {
        return Err(HypError::ModelMismatch);
    }
    let z = p.horizontal;
    let t = p.height;
    let sinh_rho = match geo.endpoints {
        (Boundary::Finite(u), Boundary::Finite(v)) => {
            ((z - u) * (z - v).conj() + t * t).norm() / ((u - v).norm() * t)
        }
        (Boundary::Finite(u), Boundary::Infinity) | (Boundary::Infinity, Boundary::Finite(u)) => {
            (z - u).norm() / t
        }
        (Boundary::Infinity, Boundary::Infinity) => return Err(HypError::EqualEndpoints),
    };
    Ok(sinh_rho.asinh())
}

/// An isometry sending `geo` to the vertical axis {0, inf}. For H^2 the
/// endpoints are ordered so the conjugator stays real.
pub fn standardize_to_vertical(geo: &Geodesic) -> Result<Isometry, HypError> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match geo.endpoints {
        (Boundary::Finite(u), Boundary::Infinity) | (Boundary::Infinity, Boundary::Finite(u)) => {
            match geo.model {
                Model::H2 => Isometry::h2(1.0, -u.re, 0.0, 1.0),
                Model::H3 => Isometry::h3(one, -u, zero, one),
            }
        }
        (Boundary::Finite(mut u), Boundary::Finite(mut v)) => {
            if geo.model == Model::H2 && u.re < v.re {
                std::mem::swap(&mut u, &mut v);
            }
            match geo.model {
                Model::H2 => Isometry::h2(1.0, -u.re, 1.0, -v.re),
                Model::H3 => Isometry::h3(one, -u, one, -v),
            }
        }
        (Boundary::Infinity, Boundary::Infinity) => Err(HypError::EqualEndpoints),
    }
}

/// Point at distance `rho` from the vertical axis, on the unit-height
/// meridian in the direction `alpha` (ignored in H^2 where `alpha = 0`).
pub fn point_at_distance_from_vertical(
    model: Model,
    rho: f64,
    alpha: f64,
) -> Result<Point, HypError> {
    let r = rho.tanh();
    let h = 1.0 / rho.cosh();
    match model {
        Model::H2 => Point::h2(r, h),
        Model::H3 => Point::h3(r * alpha.cos(), r * alpha.sin(), h),
    }
}

/// How the centralizer of an isometry sits over the cyclic group it
/// generates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CentralizerKind {
    /// Translations (and, in H^3, rotations) along the axis.
    AxisStabilizer,
    /// Rotations about an interior fixed point of H^2.
    RotationCircle,
    /// Horocyclic translations fixing the parabolic point.
    HorocyclicTranslations,
    /// The full isometry group (identity input).
    FullGroup,
}

/// Summary of `G_gamma / <gamma>` for the cocompact-centralizer criterion.
///
/// `quotient_compact` asserts compactness of the quotient; it is reported
/// `false` whenever `hypothesis_met` is false (non-hyperbolic input), and the
/// compactness conclusion is then simply not claimed, even in cases like the
/// planar parabolic where the translation quotient R/Z happens to be compact
/// as a group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CentralizerProfile {
    pub class: IsoClass,
    pub kind: CentralizerKind,
    pub quotient_compact: bool,
    /// Whether the input satisfies the criterion's hypothesis (gamma
    /// hyperbolic or loxodromic).
    pub hypothesis_met: bool,
}

/// Centralizer summary for `iso` in its model's isometry group.
pub fn centralizer_profile(iso: &Isometry) -> CentralizerProfile {
    let class = iso.classify();
    match class {
        IsoClass::Hyperbolic { .. } | IsoClass::Loxodromic { .. } => CentralizerProfile {
            class,
            kind: CentralizerKind::AxisStabilizer,
            quotient_compact: true,
            hypothesis_met: true,
        },
        IsoClass::Elliptic { .. } => {
            if iso.model == Model::H2 {
                // SO(2) about the fixed point: compact already.
                CentralizerProfile {
                    class,
                    kind: CentralizerKind::RotationCircle,
                    quotient_compact: true,
                    hypothesis_met: false,
                }
            } else {
                // Full axis stabilizer (screw motions): noncompact over a
                // finite cyclic group.
                CentralizerProfile {
                    class,
                    kind: CentralizerKind::AxisStabilizer,
                    quotient_compact: false,
                    hypothesis_met: false,
                }
            }
        }
        IsoClass::Parabolic => CentralizerProfile {
            class,
            kind: CentralizerKind::HorocyclicTranslations,
            quotient_compact: false,
            hypothesis_met: false,
        },
        IsoClass::Identity => CentralizerProfile {
            class,
            kind: CentralizerKind::FullGroup,
            quotient_compact: false,
            hypothesis_met: false,
        },
    }
}

#[cfg(test)]
mod tests;
