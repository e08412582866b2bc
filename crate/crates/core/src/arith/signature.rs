//! Orbifold signatures and exact Gauss-Bonnet areas.

use num_rational::Rational64;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;

use super::ArithError;

/// Area stored as an exact rational multiple of pi.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ExactArea {
    pi_multiple: Rational64,
}

impl ExactArea {
    pub fn from_pi_multiple(q: Rational64) -> Self {
        ExactArea { pi_multiple: q }
    }

    /// The rational q with area = q pi.
    pub fn pi_multiple(&self) -> Rational64 {
        self.pi_multiple
    }

    pub fn to_f64(&self) -> f64 {
        (*self.pi_multiple.numer() as f64) / (*self.pi_multiple.denom() as f64) * PI
    }
}

impl fmt::Display for ExactArea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} pi", self.pi_multiple)
    }
}

/// Signature (g; k; m_1, ..., m_r) of a 2-orbifold: genus, cusp count, cone
/// orders. Construction enforces hyperbolicity, so the Gauss-Bonnet area of
/// any value of this type is positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbifoldSignature {
    genus: u64,
    cusps: u64,
    cone_orders: Vec<u64>,
}

impl OrbifoldSignature {
    pub fn new(genus: u64, cusps: u64, cone_orders: Vec<u64>) -> Result<Self, ArithError> {
        if let Some(&m) = cone_orders.iter().find(|&&m| m < 2) {
            return Err(ArithError::ConeOrderTooSmall { m });
        }
        let sig = OrbifoldSignature { genus, cusps, cone_orders };
        let chi = sig.negative_euler_characteristic();
        if chi <= Rational64::from_integer(0) {
            return Err(ArithError::NonHyperbolic { chi });
        }
        Ok(sig)
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn cusps(&self) -> u64 {
        self.cusps
    }

    pub fn cone_orders(&self) -> &[u64] {
        &self.cone_orders
    }

    /// `2g - 2 + k + sum(1 - 1/m_i)`, exactly. Positive by construction.
    pub fn negative_euler_characteristic(&self) -> Rational64 {
        let mut chi = Rational64::from_integer(2 * self.genus as i64 - 2 + self.cusps as i64);
        for &m in &self.cone_orders {
            chi += Rational64::from_integer(1) - Rational64::new(1, m as i64);
        }
        chi
    }
}

/// Gauss-Bonnet area: `2 pi (2g - 2 + k + sum(1 - 1/m_i))`.
pub fn signature_volume(sig: &OrbifoldSignature) -> ExactArea {
    ExactArea::from_pi_multiple(Rational64::from_integer(2) * sig.negative_euler_characteristic())
}

/// The genus defect `g - vol / 4 pi` in exact and count-bound form.
///
/// The exact identity `g - vol/4pi = 1 - (k + sum(1 - 1/m_i)) / 2` makes the
/// defect independent of the genus; `count_bound = (k + r + 2) / 2` dominates
/// its absolute value using only the cusp and cone counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenusDefect {
    pub exact: Rational64,
    pub count_bound: Rational64,
}

pub fn genus_defect(sig: &OrbifoldSignature) -> GenusDefect {
    let mut cone_sum = Rational64::from_integer(0);
    for &m in sig.cone_orders() {
        cone_sum += Rational64::from_integer(1) - Rational64::new(1, m as i64);
    }
    let k = Rational64::from_integer(sig.cusps() as i64);
    let r = Rational64::from_integer(sig.cone_orders().len() as i64);
    let two = Rational64::from_integer(2);
    GenusDefect {
        exact: Rational64::from_integer(1) - (k + cone_sum) / two,
        count_bound: (k + r + two) / two,
    }
}
