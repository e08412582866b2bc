//! Benjamini-Schramm convergence diagnostics.
//!
//! Itemized upper bounds on the volume of the thin part of an orbifold
//! (cusp neighborhoods, cone-point regions, geodesic collars), genus-ratio
//! scans over the congruence family, a pass/fail criterion for decay of the
//! thin fraction along a family, and the cusp-plus-cone counting bound that
//! the region volumes support.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{gamma0_descriptor, ArithError, CongruenceDescriptor, Orbifold3Descriptor, OrbifoldSignature};
use crate::hyp::Model;
use crate::margulis::{
    cone_region_volume, cusp_region_area, ell_theta, r_ell, MargulisConstant, MargulisError,
};

use std::f64::consts::{PI, TAU};

#[derive(Debug, Error, PartialEq)]
pub enum BsError {
    #[error("eps must lie in (0, {max}], got {eps}")]
    EpsilonOutOfRange { eps: f64, max: f64 },
    #[error("orbifold volume must be positive and finite, got {volume}")]
    VolumeNotPositive { volume: f64 },
    #[error("scan range is empty")]
    EmptyScan,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Margulis(#[from] MargulisError),
}

/// A closed geodesic with the order of the cyclic isotropy along it
/// (order 1 for a plain short geodesic, >= 2 for a singular one).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicTube {
    pub length: f64,
    pub order: u64,
}

/// Everything the thin-part estimate consumes: total volume plus the counts
/// and parameters of the features that can carry thin regions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThinInputs {
    pub model: Model,
    pub volume: f64,
    pub cusps: u64,
    pub cone_orders: Vec<u64>,
    pub tubes: Vec<GeodesicTube>,
}

impl ThinInputs {
    pub fn from_congruence(desc: &CongruenceDescriptor) -> Self {
        let mut cone_orders = vec![2u64; desc.nu2 as usize];
        cone_orders.extend(std::iter::repeat(3u64).take(desc.nu3 as usize));
        ThinInputs {
            model: Model::H2,
            volume: desc.volume.to_f64(),
            cusps: desc.cusps,
            cone_orders,
            tubes: Vec::new(),
        }
    }

    pub fn from_signature(sig: &OrbifoldSignature) -> Self {
        ThinInputs {
            model: Model::H2,
            volume: crate::arith::signature_volume(sig).to_f64(),
            cusps: sig.cusps(),
            cone_orders: sig.cone_orders().to_vec(),
            tubes: Vec::new(),
        }
    }

    pub fn from_orbifold3(desc: &Orbifold3Descriptor) -> Self {
        ThinInputs {
            model: Model::H3,
            volume: desc.volume,
            cusps: 0,
            cone_orders: Vec::new(),
            tubes: desc
                .geodesics
                .iter()
                .map(|g| GeodesicTube { length: g.length, order: u64::from(g.order) })
                .collect(),
        }
    }
}

/// What kind of feature a thin region sits around.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ThinRegionKind {
    Cusp,
    ConePoint(u64),
    ShortGeodesicCollar(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThinItem {
    pub kind: ThinRegionKind,
    pub region_volume: f64,
}

/// Itemized upper bound on the volume of the eps-thin part.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThinPartEstimate {
    pub items: Vec<ThinItem>,
    /// Sum of the item volumes; an upper bound on the thin volume.
    pub total: f64,
    /// `total / volume`. As an upper bound it may exceed 1 on tiny
    /// orbifolds; see `small_volume_regime`.
    pub ratio: f64,
    /// Set when the bound is vacuous-ish: volume below 2 pi, or ratio
    /// above 1.
    pub small_volume_regime: bool,
}

fn check_thin_eps(eps: f64) -> Result<(), BsError> {
    let max = MargulisConstant::default().get();
    if !(eps > 0.0 && eps <= max) {
        return Err(BsError::EpsilonOutOfRange { eps, max });
    }
    Ok(())
}

/// Volume of the radius-`radius` tube around a closed geodesic of the given
/// length, divided by the isotropy order: `2 l sinh R` in the plane,
/// `pi l sinh^2(R) / o` in space.
fn tube_volume(model: Model, length: f64, order: u64, radius: f64) -> f64 {
    match model {
        Model::H2 => 2.0 * length * radius.sinh(),
        Model::H3 => PI * length * radius.sinh().powi(2) / order as f64,
    }
}

/// Itemized thin-part volume bound: one cusp region per cusp, one cone
/// region per cone point, one collar per listed geodesic tube. The sum
/// bounds the thin volume because every thin point lies in one of these
/// regions.
pub fn thin_fraction(inputs: &ThinInputs, eps: f64) -> Result<ThinPartEstimate, BsError> {
    check_thin_eps(eps)?;
    if !(inputs.volume > 0.0 && inputs.volume.is_finite()) {
        return Err(BsError::VolumeNotPositive { volume: inputs.volume });
    }

    let mut items = Vec::new();
    let cusp_volume = cusp_region_area(eps);
    for _ in 0..inputs.cusps {
        items.push(ThinItem { kind: ThinRegionKind::Cusp, region_volume: cusp_volume });
    }
    for &m in &inputs.cone_orders {
        items.push(ThinItem {
            kind: ThinRegionKind::ConePoint(m),
            region_volume: cone_region_volume(m, eps)?,
        });
    }
    for tube in &inputs.tubes {
        let core = r_ell(tube.length, eps);
        let radius = if tube.order >= 2 {
            core.max(ell_theta(TAU / tube.order as f64, eps)?)
        } else {
            core
        };
        items.push(ThinItem {
            kind: ThinRegionKind::ShortGeodesicCollar(tube.length),
            region_volume: tube_volume(inputs.model, tube.length, tube.order.max(1), radius),
        });
    }

    let total: f64 = items.iter().map(|i| i.region_volume).sum();
    let ratio = total / inputs.volume;
    Ok(ThinPartEstimate {
        items,
        total,
        ratio,
        small_volume_regime: inputs.volume < 2.0 * PI || ratio > 1.0,
    })
}

/// One record of a family scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    /// Level N for congruence scans, seed for synthetic families.
    pub label: u64,
    pub volume: f64,
    pub genus: u64,
    /// `4 pi genus / volume`; tends to 1 along the congruence family.
    pub ratio: f64,
    pub thin_fraction: f64,
    /// Cusp count plus cone-point count.
    pub feature_count: u64,
}

/// Scan records ordered by nondecreasing volume.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSeries {
    records: Vec<ScanRecord>,
}

impl ScanSeries {
    /// Sorts by volume (ties by label) and validates volume positivity.
    pub fn from_records(mut records: Vec<ScanRecord>) -> Result<Self, BsError> {
        if let Some(bad) = records.iter().find(|r| !(r.volume > 0.0 && r.volume.is_finite())) {
            return Err(BsError::VolumeNotPositive { volume: bad.volume });
        }
        records.sort_by(|a, b| {
            a.volume.partial_cmp(&b.volume).unwrap().then(a.label.cmp(&b.label))
        });
        Ok(ScanSeries { records })
    }

    pub fn records(&self) -> &[ScanRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Scan the congruence family over the given levels: genus ratio, thin
/// fraction, and feature counts per level, sorted by volume.
pub fn genus_ratio_scan(levels: &[u64], eps: f64) -> Result<ScanSeries, BsError> {
    if levels.is_empty() {
        return Err(BsError::EmptyScan);
    }
    let mut records = Vec::with_capacity(levels.len());
    for &n in levels {
        records.push(scan_record(n, eps)?);
    }
    ScanSeries::from_records(records)
}

/// The single-level record behind [`genus_ratio_scan`], exposed so callers
/// can parallelize the per-level work themselves.
pub fn scan_record(level: u64, eps: f64) -> Result<ScanRecord, BsError> {
    let desc = gamma0_descriptor(level)?;
    let ratio = desc.genus_volume_ratio();
    let thin = thin_fraction(&ThinInputs::from_congruence(&desc), eps)?;
    Ok(ScanRecord {
        label: level,
        volume: desc.volume.to_f64(),
        genus: desc.genus,
        ratio: *ratio.numer() as f64 / *ratio.denom() as f64,
        thin_fraction: thin.ratio,
        feature_count: desc.cusps + desc.nu2 + desc.nu3,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BsOutcome {
    Pass,
    Fail,
    /// Fewer than [`MIN_CRITERION_LEN`] records: no verdict either way.
    Inconclusive,
}

/// Minimum series length for a pass/fail verdict.
pub const MIN_CRITERION_LEN: usize = 10;

/// Verdict of the thin-fraction decay criterion, with the witness tail on
/// which the fraction stays below the threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BsVerdict {
    pub outcome: BsOutcome,
    pub threshold: f64,
    /// First index from which every later record is below the threshold
    /// (series length if none); meaningful unless inconclusive.
    pub tail_start: Option<usize>,
    /// Start of the top decile by volume.
    pub decile_start: Option<usize>,
    /// Largest thin fraction over the top decile.
    pub decile_max: Option<f64>,
    pub witness_tail: Vec<ScanRecord>,
}

/// Pass iff the thin fraction is below `threshold` from some index on, and
/// that index arrives no later than the start of the top decile by volume
/// (so the decile's running max is below the threshold too).
pub fn bs_criterion_check(series: &ScanSeries, threshold: f64) -> BsVerdict {
    assert!(threshold > 0.0 && threshold.is_finite(), "threshold must be positive");
    let records = series.records();
    let len = records.len();
    if len < MIN_CRITERION_LEN {
        return BsVerdict {
            outcome: BsOutcome::Inconclusive,
            threshold,
            tail_start: None,
            decile_start: None,
            decile_max: None,
            witness_tail: Vec::new(),
        };
    }

    let mut tail_start = len;
    while tail_start > 0 && records[tail_start - 1].thin_fraction < threshold {
        tail_start -= 1;
    }
    let decile_start = len - (len / 10).max(1);
    let decile_max = records[decile_start..]
        .iter()
        .map(|r| r.thin_fraction)
        .fold(f64::NEG_INFINITY, f64::max);
    let pass = tail_start <= decile_start;
    BsVerdict {
        outcome: if pass { BsOutcome::Pass } else { BsOutcome::Fail },
        threshold,
        tail_start: Some(tail_start),
        decile_start: Some(decile_start),
        decile_max: Some(decile_max),
        witness_tail: records[tail_start..].to_vec(),
    }
}

/// The counting bound `cusps + cones <= (2 / c) * thin volume`, where `c`
/// is the smallest region volume a single cusp or cone point contributes
/// at this eps. Each region exceeds `c`, and regions overlap in at most
/// pairs, hence the factor 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountingBoundReport {
    pub eps: f64,
    /// Number of cusps plus cone points.
    pub feature_count: u64,
    /// Smallest per-feature region volume at this eps.
    pub c: f64,
    /// `(2 / c) * thin volume bound`.
    pub bound: f64,
    pub holds: bool,
}

/// Smallest region volume a single cusp or cone point can contribute: the
/// half-turn cone region (narrowed eps), the order-3 cone region, or the
/// cusp region.
pub fn min_region_volume(eps: f64) -> Result<f64, BsError> {
    check_thin_eps(eps)?;
    let cone2 = cone_region_volume(2, eps)?;
    let cone3 = cone_region_volume(3, eps)?;
    Ok(cone2.min(cone3).min(cusp_region_area(eps)))
}

pub fn counting_bound_report(inputs: &ThinInputs, eps: f64) -> Result<CountingBoundReport, BsError> {
    let c = min_region_volume(eps)?;
    let estimate = thin_fraction(inputs, eps)?;
    let feature_count = inputs.cusps + inputs.cone_orders.len() as u64;
    let bound = 2.0 * estimate.total / c;
    Ok(CountingBoundReport {
        eps,
        feature_count,
        c,
        bound,
        holds: feature_count as f64 <= bound,
    })
}
