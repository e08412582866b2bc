//! Archimedean splitting checks for quaternion-algebra data.
//!
//! The algebra is presented by the relations i^2 = -a, j^2 = -b (note the
//! signs), so its norm form is <1, a, b, ab>: at a real place it is
//! isomorphic to Hamilton's quaternions exactly when a and b are both
//! positive there, and splits as 2x2 matrices otherwise. A complex place
//! always splits. Lattice constructions need the pattern "split at the
//! first place, Hamilton at every other place", which keeps the quotient
//! group compact in all factors but the first.

use serde::Serialize;

use super::ArithError;

/// One archimedean place with the images of a and b (real places only; a
/// complex place splits regardless of them).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ArchimedeanPlace {
    Real { a: f64, b: f64 },
    Complex,
}

/// Archimedean data of a quaternion algebra over a number field: one place
/// per archimedean valuation, the first one distinguished.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuaternionData {
    places: Vec<ArchimedeanPlace>,
}

impl QuaternionData {
    /// Structural validation only: at least one place, complex allowed only
    /// in the distinguished first position, a and b nonzero and finite at
    /// real places. Sign-pattern conformance is reported by
    /// [`quaternion_archimedean_check`], not enforced here.
    pub fn new(places: Vec<ArchimedeanPlace>) -> Result<Self, ArithError> {
        if places.is_empty() {
            return Err(ArithError::BadPlaces { detail: "no archimedean places".into() });
        }
        for (i, p) in places.iter().enumerate() {
            match p {
                ArchimedeanPlace::Complex if i > 0 => {
                    return Err(ArithError::BadPlaces {
                        detail: format!("complex place at position {i}; only the first place may be complex"),
                    });
                }
                ArchimedeanPlace::Real { a, b } => {
                    if *a == 0.0 || *b == 0.0 || !a.is_finite() || !b.is_finite() {
                        return Err(ArithError::BadPlaces {
                            detail: format!("a and b must be nonzero and finite at place {i}"),
                        });
                    }
                }
                _ => {}
            }
        }
        Ok(QuaternionData { places })
    }

    pub fn places(&self) -> &[ArchimedeanPlace] {
        &self.places
    }

    /// Number of archimedean places.
    pub fn degree(&self) -> usize {
        self.places.len()
    }
}

/// Verdict at one place.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaceVerdict {
    pub place: usize,
    pub is_complex: bool,
    /// Whether the algebra splits (is 2x2 matrices) at this place.
    pub splits: bool,
    /// Whether this place conforms to the lattice pattern: the first place
    /// must split, the others must be Hamilton.
    pub conforms: bool,
}

/// Per-place verdicts plus the overall pattern flag.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArchimedeanReport {
    pub verdicts: Vec<PlaceVerdict>,
    /// True iff every place conforms to "split at the first, Hamilton
    /// elsewhere".
    pub pattern_holds: bool,
}

fn splits_at(place: &ArchimedeanPlace) -> bool {
    match place {
        ArchimedeanPlace::Complex => true,
        // i^2 = -a, j^2 = -b: definite norm form <1, a, b, ab> iff both
        // positive; any negative sign splits the algebra.
        ArchimedeanPlace::Real { a, b } => !(*a > 0.0 && *b > 0.0),
    }
}

/// Evaluate the splitting type at every archimedean place and compare with
/// the lattice pattern. Total: nonconforming data yields verdicts with
/// `conforms = false` rather than an error.
pub fn quaternion_archimedean_check(q: &QuaternionData) -> ArchimedeanReport {
    let verdicts: Vec<PlaceVerdict> = q
        .places()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let splits = splits_at(p);
            PlaceVerdict {
                place: i,
                is_complex: matches!(p, ArchimedeanPlace::Complex),
                splits,
                conforms: if i == 0 { splits } else { !splits },
            }
        })
        .collect();
    let pattern_holds = verdicts.iter().all(|v| v.conforms);
    ArchimedeanReport { verdicts, pattern_holds }
}

/// Strict gate: error with a description of the first offending place if
/// the data cannot feed the lattice construction.
pub fn require_lattice_pattern(q: &QuaternionData) -> Result<(), ArithError> {
    let report = quaternion_archimedean_check(q);
    if let Some(v) = report.verdicts.iter().find(|v| !v.conforms) {
        let detail = if v.place == 0 {
            "the distinguished place must split, but a and b are both positive there".to_string()
        } else {
            "places after the first must be Hamilton, but the algebra splits there".to_string()
        };
        return Err(ArithError::SignPattern { place: v.place, detail });
    }
    Ok(())
}
