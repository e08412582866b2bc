//! Matching small generating sets against the catalogue of elementary
//! (virtually abelian) subgroups.
//!
//! In H^2 the catalogued types are: infinite cyclic (one hyperbolic or
//! parabolic generator), finite cyclic (one elliptic), and the infinite
//! dihedral group generated by two half-turns. In H^3 they are: Z x Z/m
//! generated by a loxodromic and a rotation sharing its axis, the dihedral
//! extension (Z x Z/m) x| Z/2 obtained by adding a half-turn whose axis
//! meets the common axis orthogonally, and finite subgroups of the point
//! stabilizer, split into dihedral and non-dihedral ones.
//!
//! The classifier is a tolerance-based matcher (axis equality is chordal
//! within [`AXIS_MATCH_TOL`]); configurations outside the catalogue return
//! [`ElementaryType::NotElementary`].

use num_complex::Complex64;
use serde::Serialize;

use crate::hyp::{
    dist_to_geodesic, distance, standardize_to_vertical, Boundary, Geodesic, HypError, IsoClass,
    Isometry, Model, Point, AXIS_MATCH_TOL,
};

/// Largest rotation order the angle detector will report.
const MAX_ORDER: u64 = 10_000;
/// Relative tolerance when snapping an elliptic angle to 2 pi k / m.
const ORDER_TOL: f64 = 1e-6;
/// Interior-incidence tolerance (points on axes, axes through points).
const INCIDENCE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ElementaryType {
    /// Infinite cyclic; `length` is the translation length, `None` for a
    /// parabolic generator.
    CyclicHyperbolicOrParabolic { length: Option<f64> },
    /// Finite cyclic group of rotations.
    FiniteCyclicElliptic { order: u64 },
    /// Infinite dihedral subgroup of Isom(H^2).
    InfiniteDihedral { translation_length: f64 },
    /// Z x Z/m: screw translations and rotations sharing one axis.
    AxialZxZm { length: f64, order: u64 },
    /// (Z x Z/m) x| Z/2: axial group extended by an orthogonal half-turn;
    /// `length = 0` marks the finite dihedral case.
    AxialDihedral { length: f64, order: u64 },
    /// Finite, fixes an interior point, not dihedral (opaque tag).
    FiniteNonDihedral,
    /// Not matched by the catalogue.
    NotElementary,
}

/// Smallest m with m * angle = 0 mod 2 pi within tolerance.
fn rotation_order(angle: f64) -> Option<u64> {
    let turns = angle / (2.0 * std::f64::consts::PI);
    for m in 1..=MAX_ORDER {
        let k = (turns * m as f64).round();
        if (turns * m as f64 - k).abs() < ORDER_TOL {
            return Some(m);
        }
    }
    None
}

fn is_half_turn(class: &IsoClass) -> bool {
    matches!(class, IsoClass::Elliptic { angle } if (angle - std::f64::consts::PI).abs() < 1e-7)
}

fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// Where two H^3 axes stand relative to each other.
enum AxisRelation {
    Equal,
    /// They cross at an interior point; `orthogonal` is the right-angle test.
    Crossing { point: Point, orthogonal: bool },
    Disjoint,
}

fn relate_axes(g1: &Geodesic, g2: &Geodesic) -> Result<AxisRelation, HypError> {
    if g1.same_as(g2) {
        return Ok(AxisRelation::Equal);
    }
    let std1 = standardize_to_vertical(g1)?;
    let (e1, e2) = g2.endpoints();
    let u = std1.apply_boundary(&e1);
    let v = std1.apply_boundary(&e2);
    let (u, v) = match (u, v) {
        (Boundary::Finite(u), Boundary::Finite(v)) => (u, v),
        // g2 now ends at infinity: it crosses the vertical axis only if it
        // coincides with it, which `same_as` already excluded.
        _ => return Ok(AxisRelation::Disjoint),
    };
    // The standardized g2 is the half-circle over the segment [u, v]; it
    // meets {0, inf} iff 0 lies between u and v on their boundary line,
    // i.e. u / v is a negative real. The meeting height is sqrt(|u| |v|),
    // and the angle is right iff u = -v.
    if u.norm() <= INCIDENCE_TOL || v.norm() <= INCIDENCE_TOL {
        return Ok(AxisRelation::Disjoint);
    }
    let ratio = u / v;
    if ratio.im.abs() > INCIDENCE_TOL * (1.0 + ratio.norm()) || ratio.re >= 0.0 {
        return Ok(AxisRelation::Disjoint);
    }
    let height = (u.norm() * v.norm()).sqrt();
    let crossing_std = Point::h3(0.0, 0.0, height)?;
    let point = std1.inverse().apply(&crossing_std)?;
    let orthogonal = (u + v).norm() <= INCIDENCE_TOL * (u.norm() + v.norm());
    Ok(AxisRelation::Crossing { point, orthogonal })
}

struct Classified {
    class: IsoClass,
    axis: Option<Geodesic>,
    fixed_point: Option<Point>,
    parabolic_point: Option<Boundary>,
}

fn analyze(iso: &Isometry) -> Result<Classified, HypError> {
    let class = iso.classify();
    let axis = match class {
        IsoClass::Hyperbolic { .. } | IsoClass::Loxodromic { .. } => Some(iso.axis()?),
        IsoClass::Elliptic { .. } if iso.model() == Model::H3 => Some(iso.axis()?),
        _ => None,
    };
    let fixed_point = match class {
        IsoClass::Elliptic { .. } if iso.model() == Model::H2 => Some(iso.fixed_point()?),
        _ => None,
    };
    let parabolic_point = iso.parabolic_fixed_point();
    Ok(Classified { class, axis, fixed_point, parabolic_point })
}

/// Match `gens` (1 to 4 isometries of one model) against the catalogue of
/// elementary subgroup types. The matcher inspects generators only; it tags
/// the configuration, it does not certify discreteness.
pub fn classify_elementary(gens: &[Isometry]) -> Result<ElementaryType, HypError> {
    if gens.is_empty() || gens.len() > 4 {
        return Err(HypError::GeneratorCount { got: gens.len() });
    }
    let model = gens[0].model();
    if gens.iter().any(|g| g.model() != model) {
        return Err(HypError::ModelMismatch);
    }

    let mut items = Vec::new();
    let mut originals = Vec::new();
    for g in gens {
        let c = analyze(g)?;
        if !matches!(c.class, IsoClass::Identity) {
            items.push(c);
            originals.push(g);
        }
    }
    if items.is_empty() {
        return Ok(ElementaryType::FiniteCyclicElliptic { order: 1 });
    }

    if items.len() == 1 {
        return Ok(single_generator(&items[0]));
    }

    let n_parabolic = items
        .iter()
        .filter(|c| matches!(c.class, IsoClass::Parabolic))
        .count();
    if n_parabolic > 0 {
        if n_parabolic < items.len() {
            return Ok(ElementaryType::NotElementary);
        }
        return all_parabolic(&items, &originals);
    }

    match model {
        Model::H2 => plane_catalogue(&items),
        Model::H3 => space_catalogue(&items),
    }
}

fn single_generator(c: &Classified) -> ElementaryType {
    match c.class {
        IsoClass::Parabolic => ElementaryType::CyclicHyperbolicOrParabolic { length: None },
        IsoClass::Hyperbolic { length } | IsoClass::Loxodromic { length, .. } => {
            ElementaryType::CyclicHyperbolicOrParabolic { length: Some(length) }
        }
        IsoClass::Elliptic { angle } => match rotation_order(angle) {
            Some(order) => ElementaryType::FiniteCyclicElliptic { order },
            None => ElementaryType::NotElementary,
        },
        IsoClass::Identity => unreachable!("identities were filtered"),
    }
}

fn all_parabolic(
    items: &[Classified],
    originals: &[&Isometry],
) -> Result<ElementaryType, HypError> {
    let p0 = items[0].parabolic_point.expect("parabolic");
    if items
        .iter()
        .any(|c| c.parabolic_point.expect("parabolic").chordal(&p0) > AXIS_MATCH_TOL)
    {
        return Ok(ElementaryType::NotElementary);
    }
    // Shared fixed point: collinear translation directions stay in the
    // cyclic bucket; independent directions (rank two, H^3 only) fall
    // outside the catalogue. Directions are read off after conjugating the
    // common fixed point to infinity; their ratio does not depend on the
    // choice of conjugator.
    let model = originals[0].model();
    let conj = match p0 {
        Boundary::Infinity => Isometry::identity(model),
        Boundary::Finite(p) => match model {
            Model::H2 => Isometry::h2(0.0, -1.0, 1.0, -p.re)?,
            Model::H3 => Isometry::h3(
                Complex64::new(0.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(1.0, 0.0),
                -p,
            )?,
        },
    };
    let mut d0 = None;
    for g in originals {
        let moved = g.conjugate_by(&conj)?;
        let e = moved.entries();
        // Upper triangular +-[[1, c], [0, 1]]; sign-normalize the diagonal.
        let c = if e[0].re >= 0.0 { e[1] / e[0] } else { -e[1] / e[0] };
        match d0 {
            None => d0 = Some(c),
            Some(d) => {
                let ratio = c / d;
                if ratio.im.abs() > 1e-7 * (1.0 + ratio.norm()) {
                    return Ok(ElementaryType::NotElementary);
                }
            }
        }
    }
    Ok(ElementaryType::CyclicHyperbolicOrParabolic { length: None })
}

fn plane_catalogue(items: &[Classified]) -> Result<ElementaryType, HypError> {
    let hyperbolics: Vec<&Classified> = items
        .iter()
        .filter(|c| matches!(c.class, IsoClass::Hyperbolic { .. }))
        .collect();
    let elliptics: Vec<&Classified> = items
        .iter()
        .filter(|c| matches!(c.class, IsoClass::Elliptic { .. }))
        .collect();

    if elliptics.is_empty() {
        // All hyperbolic: cyclic iff the axes agree.
        let axis0 = hyperbolics[0].axis.as_ref().expect("hyperbolic");
        if hyperbolics[1..]
            .iter()
            .all(|c| c.axis.as_ref().expect("hyperbolic").same_as(axis0))
        {
            let min_len = hyperbolics
                .iter()
                .map(|c| c.class.translation_length())
                .fold(f64::INFINITY, f64::min);
            return Ok(ElementaryType::CyclicHyperbolicOrParabolic { length: Some(min_len) });
        }
        return Ok(ElementaryType::NotElementary);
    }

    if hyperbolics.is_empty() {
        // All elliptic: one center -> finite cyclic; half-turns at collinear
        // centers -> infinite dihedral.
        let p0 = elliptics[0].fixed_point.expect("H2 elliptic");
        let same_center = elliptics[1..].iter().all(|c| {
            distance(&c.fixed_point.expect("H2 elliptic"), &p0).unwrap_or(f64::INFINITY)
                <= INCIDENCE_TOL
        });
        if same_center {
            let mut order = 1u64;
            for c in &elliptics {
                match rotation_order(c.class.rotation_angle()) {
                    Some(m) => order = lcm(order, m),
                    None => return Ok(ElementaryType::NotElementary),
                }
            }
            return Ok(ElementaryType::FiniteCyclicElliptic { order });
        }
        if !elliptics.iter().all(|c| is_half_turn(&c.class)) {
            return Ok(ElementaryType::NotElementary);
        }
        let centers: Vec<Point> = elliptics
            .iter()
            .map(|c| c.fixed_point.expect("H2 elliptic"))
            .collect();
        // Need >= 2 distinct centers, all on one geodesic.
        let mut second = None;
        for p in &centers[1..] {
            if distance(p, &centers[0])? > INCIDENCE_TOL {
                second = Some(*p);
                break;
            }
        }
        let second = second.expect("distinct center exists");
        let line = geodesic_through(&centers[0], &second)?;
        for p in &centers {
            if dist_to_geodesic(p, &line)? > INCIDENCE_TOL {
                return Ok(ElementaryType::NotElementary);
            }
        }
        let mut min_gap = f64::INFINITY;
        for (i, p) in centers.iter().enumerate() {
            for q in &centers[i + 1..] {
                let d = distance(p, q)?;
                if d > INCIDENCE_TOL {
                    min_gap = min_gap.min(d);
                }
            }
        }
        return Ok(ElementaryType::InfiniteDihedral { translation_length: 2.0 * min_gap });
    }

    // Mixed: hyperbolics on one axis, half-turn centers on that axis.
    let axis0 = hyperbolics[0].axis.as_ref().expect("hyperbolic");
    if !hyperbolics[1..]
        .iter()
        .all(|c| c.axis.as_ref().expect("hyperbolic").same_as(axis0))
    {
        return Ok(ElementaryType::NotElementary);
    }
    if !elliptics.iter().all(|c| is_half_turn(&c.class)) {
        return Ok(ElementaryType::NotElementary);
    }
    for c in &elliptics {
        let p = c.fixed_point.expect("H2 elliptic");
        if dist_to_geodesic(&p, axis0)? > INCIDENCE_TOL {
            return Ok(ElementaryType::NotElementary);
        }
    }
    let min_len = hyperbolics
        .iter()
        .map(|c| c.class.translation_length())
        .fold(f64::INFINITY, f64::min);
    Ok(ElementaryType::InfiniteDihedral { translation_length: min_len })
}

fn space_catalogue(items: &[Classified]) -> Result<ElementaryType, HypError> {
    // Every generator here has an axis (loxodromic or H^3 elliptic). Try
    // each axis as the common one; pick the best split.
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    for (i, cand) in items.iter().enumerate() {
        let axis = cand.axis.as_ref().expect("axis-type generator");
        let mut on = Vec::new();
        let mut off = Vec::new();
        for (j, c) in items.iter().enumerate() {
            if c.axis.as_ref().expect("axis-type generator").same_as(axis) {
                on.push(j);
            } else {
                off.push(j);
            }
        }
        if best.as_ref().map_or(true, |(_, b_on, _)| on.len() > b_on.len()) {
            best = Some((i, on, off));
        }
    }
    let (anchor, on, off) = best.expect("nonempty");
    let axis = items[anchor].axis.as_ref().expect("axis-type generator");

    let mut axial_length = f64::INFINITY;
    let mut axial_order = 1u64;
    let mut has_lox = false;
    for &j in &on {
        match items[j].class {
            IsoClass::Hyperbolic { length } | IsoClass::Loxodromic { length, .. } => {
                has_lox = true;
                axial_length = axial_length.min(length);
            }
            IsoClass::Elliptic { angle } => match rotation_order(angle) {
                Some(m) => axial_order = lcm(axial_order, m),
                None => return Ok(ElementaryType::NotElementary),
            },
            _ => unreachable!("axis-type generator"),
        }
    }

    if off.is_empty() {
        return Ok(match (has_lox, axial_order) {
            (true, 1) => {
                ElementaryType::CyclicHyperbolicOrParabolic { length: Some(axial_length) }
            }
            (true, m) => ElementaryType::AxialZxZm { length: axial_length, order: m },
            (false, m) => ElementaryType::FiniteCyclicElliptic { order: m },
        });
    }

    // Off-axis generators: orthogonal half-turns give the dihedral
    // extension; otherwise try the fixed-interior-point (finite) catalogue.
    let mut all_orth_half_turns = true;
    for &j in &off {
        if !is_half_turn(&items[j].class) {
            all_orth_half_turns = false;
            break;
        }
        let other = items[j].axis.as_ref().expect("elliptic axis");
        match relate_axes(axis, other)? {
            AxisRelation::Crossing { orthogonal: true, .. } => {}
            _ => {
                all_orth_half_turns = false;
                break;
            }
        }
    }
    if all_orth_half_turns {
        let length = if has_lox { axial_length } else { 0.0 };
        return Ok(ElementaryType::AxialDihedral { length, order: axial_order });
    }

    if has_lox || items.iter().any(|c| c.class.translation_length() > 0.0) {
        return Ok(ElementaryType::NotElementary);
    }
    finite_point_group(items)
}

/// All-elliptic configuration: axes must pass through one interior point.
fn finite_point_group(items: &[Classified]) -> Result<ElementaryType, HypError> {
    let a0 = items[0].axis.as_ref().expect("elliptic axis");
    let a1 = items[1].axis.as_ref().expect("elliptic axis");
    let q = match relate_axes(a0, a1)? {
        AxisRelation::Crossing { point, .. } => point,
        _ => return Ok(ElementaryType::NotElementary),
    };
    for c in items {
        let axis = c.axis.as_ref().expect("elliptic axis");
        if dist_to_geodesic(&q, axis)? > INCIDENCE_TOL {
            return Ok(ElementaryType::NotElementary);
        }
        if rotation_order(c.class.rotation_angle()).is_none() {
            return Ok(ElementaryType::NotElementary);
        }
    }
    // Dihedral point groups (a main axis plus orthogonal half-turns) were
    // already captured above; what remains is tagged non-dihedral.
    Ok(ElementaryType::FiniteNonDihedral)
}

/// Geodesic through two distinct interior points (H^2): endpoints of the
/// circle or vertical line through them, orthogonal to the boundary.
fn geodesic_through(p: &Point, q: &Point) -> Result<Geodesic, HypError> {
    let (x1, y1) = (p.horizontal().re, p.height());
    let (x2, y2) = (q.horizontal().re, q.height());
    if (x1 - x2).abs() < 1e-14 {
        return Geodesic::from_endpoints(
            Model::H2,
            Boundary::Finite(Complex64::new(x1, 0.0)),
            Boundary::Infinity,
        );
    }
    // Center c on the real axis equidistant (euclideanly) from p and q:
    // (x1 - c)^2 + y1^2 = (x2 - c)^2 + y2^2.
    let c = (x1 * x1 + y1 * y1 - x2 * x2 - y2 * y2) / (2.0 * (x1 - x2));
    let r = ((x1 - c).powi(2) + y1 * y1).sqrt();
    Geodesic::from_endpoints(
        Model::H2,
        Boundary::Finite(Complex64::new(c - r, 0.0)),
        Boundary::Finite(Complex64::new(c + r, 0.0)),
    )
}
