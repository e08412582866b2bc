//! Seeded synthetic 3-orbifold descriptors.
//!
//! Families of closed hyperbolic 3-orbifold summaries with volume growing
//! linearly in a scale parameter while the total singular length grows only
//! like its square root, so singularity density vanishes in the limit. Every
//! descriptor respects the separation constraints that hold for thin parts
//! of genuine orbifolds: each singular geodesic keeps every other singular
//! component outside its exclusion radius, and a singular vertex has at most
//! one near neighbor.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::margulis::{ell_theta, r_ell};

use super::ArithError;

use std::f64::consts::TAU;

/// One closed singular geodesic: its length, cone order, and the distance
/// to the nearest other singular component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularGeodesic {
    pub length: f64,
    pub order: u32,
    pub nearest_distance: f64,
}

/// Neighbor structure of a singular vertex: isolated, or paired with
/// exactly one other vertex at the given distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum VertexTag {
    Isolated,
    PairedWithin { distance: f64 },
}

/// Summary of a synthetic closed 3-orbifold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Orbifold3Descriptor {
    pub seed: u64,
    pub scale: f64,
    pub volume: f64,
    pub geodesics: Vec<SingularGeodesic>,
    pub vertex_tags: Vec<VertexTag>,
    pub eps: f64,
}

impl Orbifold3Descriptor {
    /// Sum of the singular geodesic lengths.
    pub fn total_singular_length(&self) -> f64 {
        self.geodesics.iter().map(|g| g.length).sum()
    }
}

const FIXTURE_EPS: f64 = 0.1;

/// Exclusion radius a singular geodesic of the given length and order needs
/// around its axis so that no other singular component enters its thin
/// tube: the larger of the rotation-displacement radius and the short-core
/// radius.
fn required_exclusion(length: f64, order: u32, eps: f64) -> Result<f64, ArithError> {
    let theta = ell_theta(TAU / f64::from(order), eps).map_err(|e| ArithError::FixtureInvalid {
        detail: format!("exclusion radius for order {order}: {e}"),
    })?;
    Ok(theta.max(r_ell(length, eps)))
}

/// Deterministically generate a descriptor. Volume is `10 * scale`; the
/// singular locus consists of `max(1, round(sqrt(scale)))` equal-length
/// geodesics totalling `0.5 * sqrt(scale)`, so singular density decays like
/// `1/sqrt(scale)`. The first geodesic always has order 2 and an isolated
/// vertex; later entries vary with the seed.
pub fn synthetic_3d_descriptor(seed: u64, scale: f64) -> Orbifold3Descriptor {
    assert!(scale > 0.0 && scale.is_finite(), "scale must be positive and finite");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let eps = FIXTURE_EPS;
    let volume = 10.0 * scale;
    let count = (scale.sqrt().round() as usize).max(1);
    let length = 0.5 * scale.sqrt() / count as f64;

    let mut geodesics = Vec::with_capacity(count);
    let mut vertex_tags = Vec::with_capacity(count);
    for i in 0..count {
        let order = if i == 0 { 2 } else { rng.gen_range(2..=6u32) };
        // Exclusion radius exists for every order >= 2 at this eps.
        let exclusion = required_exclusion(length, order, eps).unwrap();
        let margin = 0.1 + rng.gen_range(0.0..0.4);
        geodesics.push(SingularGeodesic {
            length,
            order,
            nearest_distance: exclusion + margin,
        });
        let tag = if i == 0 || rng.gen_bool(0.7) {
            VertexTag::Isolated
        } else {
            VertexTag::PairedWithin { distance: eps * rng.gen_range(0.2..=1.0) }
        };
        vertex_tags.push(tag);
    }

    Orbifold3Descriptor { seed, scale, volume, geodesics, vertex_tags, eps }
}

/// Re-check the separation constraints on any descriptor: positive finite
/// volume, positive lengths, orders at least 2, each nearest distance at or
/// beyond the exclusion radius, and paired vertices within `(0, eps]`.
pub fn validate_separation(desc: &Orbifold3Descriptor) -> Result<(), ArithError> {
    if !(desc.volume > 0.0 && desc.volume.is_finite()) {
        return Err(ArithError::FixtureInvalid {
            detail: format!("volume must be positive and finite, got {}", desc.volume),
        });
    }
    if !(desc.eps > 0.0 && desc.eps.is_finite()) {
        return Err(ArithError::FixtureInvalid {
            detail: format!("eps must be positive and finite, got {}", desc.eps),
        });
    }
    for (i, g) in desc.geodesics.iter().enumerate() {
        if !(g.length > 0.0 && g.length.is_finite()) {
            return Err(ArithError::FixtureInvalid {
                detail: format!("geodesic {i}: length {} not positive", g.length),
            });
        }
        if g.order < 2 {
            return Err(ArithError::FixtureInvalid {
                detail: format!("geodesic {i}: order {} below 2", g.order),
            });
        }
        let exclusion = required_exclusion(g.length, g.order, desc.eps)?;
        if g.nearest_distance < exclusion - 1e-12 {
            return Err(ArithError::FixtureInvalid {
                detail: format!(
                    "geodesic {i}: nearest distance {} inside exclusion radius {exclusion}",
                    g.nearest_distance
                ),
            });
        }
    }
    for (i, tag) in desc.vertex_tags.iter().enumerate() {
        if let VertexTag::PairedWithin { distance } = tag {
            if !(*distance > 0.0 && *distance <= desc.eps) {
                return Err(ArithError::FixtureInvalid {
                    detail: format!(
                        "vertex {i}: pair distance {distance} outside (0, {}]",
                        desc.eps
                    ),
                });
            }
        }
    }
    Ok(())
}
