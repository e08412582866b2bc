use super::*;
use approx::assert_relative_eq;
use std::f64::consts::PI;

fn h2_point(x: f64, y: f64) -> Point {
    Point::h2(x, y).unwrap()
}

fn h3_point(x1: f64, x2: f64, y: f64) -> Point {
    Point::h3(x1, x2, y).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn distance_vertical_geodesics() {
    let d = distance(&h2_point(0.0, 1.0), &h2_point(0.0, 2.0)).unwrap();
    assert_relative_eq!(d, std::f64::consts::LN_2, max_relative = 1e-14);

    let d3 = distance(&h3_point(0.0, 0.0, 1.0), &h3_point(0.0, 0.0, std::f64::consts::E)).unwrap();
    assert_relative_eq!(d3, 1.0, max_relative = 1e-14);
}

#[test]
fn distance_horizontal_segment() {
    let d = distance(&h2_point(-1.0, 1.0), &h2_point(1.0, 1.0)).unwrap();
    assert_relative_eq!(d, 2.0 * 1.0f64.asinh(), max_relative = 1e-14);
    assert_relative_eq!(d, 1.762747, max_relative = 1e-6);
}

#[test]
fn distance_is_symmetric_and_definite() {
    let p = h2_point(0.3, 0.7);
    let q = h2_point(-1.1, 2.4);
    let d1 = distance(&p, &q).unwrap();
    let d2 = distance(&q, &p).unwrap();
    assert_eq!(d1, d2);
    assert!(d1 > 0.0);
    assert_eq!(distance(&p, &p).unwrap(), 0.0);
    assert_eq!(
        distance(&p, &h3_point(0.0, 0.0, 1.0)),
        Err(HypError::ModelMismatch)
    );
}

#[test]
fn classify_diagonal_translation() {
    let iso = Isometry::h2(2.0, 0.0, 0.0, 0.5).unwrap();
    match iso.classify() {
        IsoClass::Hyperbolic { length } => {
            assert_relative_eq!(length, 2.0 * std::f64::consts::LN_2, max_relative = 1e-12);
        }
        other => panic!("expected hyperbolic, got {other:?}"),
    }
}

#[test]
fn classify_quarter_turn_matrix() {
    let iso = Isometry::h2(0.0, 1.0, -1.0, 0.0).unwrap();
    match iso.classify() {
        IsoClass::Elliptic { angle } => assert_relative_eq!(angle, PI, max_relative = 1e-12),
        other => panic!("expected elliptic, got {other:?}"),
    }
}

#[test]
fn classify_unipotent() {
    let iso = Isometry::h2(1.0, 1.0, 0.0, 1.0).unwrap();
    assert_eq!(iso.classify(), IsoClass::Parabolic);
    assert_eq!(iso.parabolic_fixed_point(), Some(Boundary::Infinity));
}

#[test]
fn classify_identity_and_negated_identity() {
    let id = Isometry::h2(1.0, 0.0, 0.0, 1.0).unwrap();
    assert_eq!(id.classify(), IsoClass::Identity);
    let neg = Isometry::h2(-3.0, 0.0, 0.0, -3.0).unwrap();
    assert_eq!(neg.classify(), IsoClass::Identity);
}

#[test]
fn classify_loxodromic_eigenvalue() {
    // diag(lambda, 1/lambda), lambda = 2 e^{i pi/6}: length 2 log 2, twist pi/3.
    let lam = c(2.0, 0.0) * c((PI / 6.0).cos(), (PI / 6.0).sin());
    let iso = Isometry::h3(lam, c(0.0, 0.0), c(0.0, 0.0), 1.0 / lam).unwrap();
    match iso.classify() {
        IsoClass::Loxodromic { length, twist } => {
            assert_relative_eq!(length, 2.0 * std::f64::consts::LN_2, max_relative = 1e-12);
            assert_relative_eq!(twist, PI / 3.0, max_relative = 1e-12);
        }
        other => panic!("expected loxodromic, got {other:?}"),
    }
    let (rep, att) = iso.boundary_fixed_points().unwrap();
    assert_eq!(rep, Boundary::Finite(c(0.0, 0.0)));
    assert_eq!(att, Boundary::Infinity);
}

#[test]
fn classification_ignores_matrix_negation() {
    let a = Isometry::h2(3.0, 1.0, 2.0, 1.0).unwrap();
    let b = Isometry::h2(-3.0, -1.0, -2.0, -1.0).unwrap();
    assert_eq!(a.entries(), b.entries());
    assert_eq!(a.classify(), b.classify());
}

#[test]
fn singular_matrix_rejected() {
    assert!(matches!(
        Isometry::h2(1.0, 2.0, 2.0, 4.0),
        Err(HypError::SingularMatrix)
    ));
    assert!(matches!(
        Isometry::h2(1.0, 0.0, 0.0, -1.0),
        Err(HypError::OrientationReversing { .. })
    ));
}

#[test]
fn axis_of_diagonal_translation() {
    let iso = Isometry::h2(2.0, 0.0, 0.0, 0.5).unwrap();
    let axis = iso.axis().unwrap();
    let expected = Geodesic::from_endpoints(
        Model::H2,
        Boundary::Finite(c(0.0, 0.0)),
        Boundary::Infinity,
    )
    .unwrap();
    assert!(axis.same_as(&expected));
}

#[test]
fn axis_is_equivariant_under_conjugation() {
    let iso = Isometry::h2(2.0, 0.0, 0.0, 0.5).unwrap();
    let g = Isometry::h2(2.0, 1.0, 1.0, 1.0).unwrap();
    let conj = iso.conjugate_by(&g).unwrap();
    let axis = conj.axis().unwrap();
    let expected = Geodesic::from_endpoints(
        Model::H2,
        g.apply_boundary(&Boundary::Finite(c(0.0, 0.0))),
        g.apply_boundary(&Boundary::Infinity),
    )
    .unwrap();
    assert!(axis.same_as(&expected));
    // Same translation length after conjugation.
    assert_relative_eq!(
        conj.translation_length(),
        iso.translation_length(),
        max_relative = 1e-12
    );
}

#[test]
fn parabolic_has_no_axis() {
    let iso = Isometry::h2(1.0, 1.0, 0.0, 1.0).unwrap();
    assert!(matches!(iso.axis(), Err(HypError::NoAxis { .. })));
}

#[test]
fn h3_elliptic_axis_is_rotation_axis() {
    let rot = Isometry::h3_loxodromic_vertical(0.0, 2.0 * PI / 3.0);
    let axis = rot.axis().unwrap();
    assert!(axis.same_as(&Geodesic::vertical(Model::H3)));
}

#[test]
fn elliptic_displacement_closed_form() {
    // 2 asinh(sin(theta/2) sinh(rho)), checked against the matrix action.
    let theta = 2.0 * PI / 5.0;
    let iso = Isometry::h2_rotation_about_i(theta);
    for &rho in &[0.1, 0.5, 1.3, 2.7] {
        // Points at distance rho from i along the unit semicircle meridian.
        let p = point_at_distance_from_vertical(Model::H2, rho, 0.0).unwrap();
        let expected = 2.0 * ((theta / 2.0).sin() * rho.sinh()).asinh();
        assert_relative_eq!(iso.displacement(&p).unwrap(), expected, max_relative = 1e-10);
        assert_relative_eq!(
            displacement_from_parts(0.0, theta, rho),
            expected,
            max_relative = 1e-12
        );
    }
}

#[test]
fn hyperbolic_displacement_closed_form() {
    let ell = 0.8;
    let iso = Isometry::translation_along_vertical(Model::H2, ell);
    for &rho in &[0.0, 0.2, 1.0, 2.5] {
        let p = point_at_distance_from_vertical(Model::H2, rho, 0.0).unwrap();
        let expected = (1.0 + (ell.cosh() - 1.0) * rho.cosh().powi(2)).acosh();
        assert_relative_eq!(iso.displacement(&p).unwrap(), expected, max_relative = 1e-10);
        assert_relative_eq!(
            displacement_from_parts(ell, 0.0, rho),
            expected,
            max_relative = 1e-10
        );
    }
}

#[test]
fn loxodromic_displacement_matches_action() {
    let (ell, twist) = (0.7, 1.9);
    let iso = Isometry::h3_loxodromic_vertical(ell, twist);
    for &rho in &[0.0, 0.4, 1.2] {
        for &alpha in &[0.0, 1.0, 2.5] {
            let p = point_at_distance_from_vertical(Model::H3, rho, alpha).unwrap();
            assert_relative_eq!(
                iso.displacement(&p).unwrap(),
                displacement_from_parts(ell, twist, rho),
                max_relative = 1e-10
            );
        }
    }
}

#[test]
fn displacement_on_axis_equals_length() {
    let iso = Isometry::translation_along_vertical(Model::H2, 1.5);
    let p = h2_point(0.0, 1.0);
    assert_relative_eq!(iso.displacement(&p).unwrap(), 1.5, max_relative = 1e-12);
    assert_relative_eq!(iso.translation_length(), 1.5, max_relative = 1e-12);

    let rot = Isometry::h2_rotation_about_i(1.0);
    let fixed = rot.fixed_point().unwrap();
    assert_relative_eq!(distance(&fixed, &h2_point(0.0, 1.0)).unwrap(), 0.0, epsilon = 1e-9);
    assert!(rot.displacement(&fixed).unwrap() < 1e-9);
}

#[test]
fn quaternion_action_preserves_h3_distance() {
    let g = Isometry::h3(c(1.3, 0.2), c(0.0, -1.0), c(0.5, 0.1), c(1.0, 0.0)).unwrap();
    let p = h3_point(0.3, -0.4, 0.9);
    let q = h3_point(-1.0, 2.0, 0.2);
    let d_before = distance(&p, &q).unwrap();
    let d_after = distance(&g.apply(&p).unwrap(), &g.apply(&q).unwrap()).unwrap();
    assert_relative_eq!(d_before, d_after, max_relative = 1e-12);
}

#[test]
fn h2_action_agrees_with_moebius_map() {
    let g = Isometry::h2(2.0, 1.0, 1.0, 1.0).unwrap();
    let p = h2_point(0.5, 1.5);
    let moved = g.apply(&p).unwrap();
    // (2z+1)/(z+1) at z = 0.5 + 1.5i.
    let z = c(0.5, 1.5);
    let w = (2.0 * z + 1.0) / (z + 1.0);
    assert_relative_eq!(moved.horizontal().re, w.re, max_relative = 1e-12);
    assert_relative_eq!(moved.height(), w.im, max_relative = 1e-12);
}

#[test]
fn dist_to_geodesic_meridian_parametrization() {
    let vertical = Geodesic::from_endpoints(
        Model::H3,
        Boundary::Finite(c(0.0, 0.0)),
        Boundary::Infinity,
    )
    .unwrap();
    for &rho in &[0.0, 0.3, 1.7] {
        let p = point_at_distance_from_vertical(Model::H3, rho, 0.7).unwrap();
        assert_relative_eq!(
            dist_to_geodesic(&p, &vertical).unwrap(),
            rho,
            epsilon = 1e-12
        );
    }
}

#[test]
fn dist_to_geodesic_finite_endpoints() {
    // Unit semicircle in H^2; i lies on it, 2i is asinh(3/4)... checked
    // against the sinh formula directly.
    let geo = Geodesic::from_endpoints(
        Model::H2,
        Boundary::Finite(c(-1.0, 0.0)),
        Boundary::Finite(c(1.0, 0.0)),
    )
    .unwrap();
    assert!(dist_to_geodesic(&h2_point(0.0, 1.0), &geo).unwrap() < 1e-15);
    let d = dist_to_geodesic(&h2_point(0.0, 2.0), &geo).unwrap();
    assert_relative_eq!(d, (3.0f64 / 4.0).asinh(), max_relative = 1e-12);
}

#[test]
fn standardize_moves_geodesic_to_vertical() {
    let geo = Geodesic::from_endpoints(
        Model::H3,
        Boundary::Finite(c(0.3, -1.0)),
        Boundary::Finite(c(2.0, 0.5)),
    )
    .unwrap();
    let g = standardize_to_vertical(&geo).unwrap();
    let (e1, e2) = geo.endpoints();
    let i1 = g.apply_boundary(&e1);
    let i2 = g.apply_boundary(&e2);
    let zero = Boundary::Finite(c(0.0, 0.0));
    assert!(i1.chordal(&zero) < 1e-12 && i2.chordal(&Boundary::Infinity) < 1e-12);
}

#[test]
fn centralizer_hyperbolic_is_cocompact() {
    let iso = Isometry::h2(2.0, 0.0, 0.0, 0.5).unwrap();
    let prof = centralizer_profile(&iso);
    assert_eq!(prof.kind, CentralizerKind::AxisStabilizer);
    assert!(prof.quotient_compact);
    assert!(prof.hypothesis_met);
}

#[test]
fn centralizer_parabolic_reports_hypothesis_failure() {
    let iso = Isometry::h2(1.0, 1.0, 0.0, 1.0).unwrap();
    let prof = centralizer_profile(&iso);
    assert_eq!(prof.kind, CentralizerKind::HorocyclicTranslations);
    assert!(!prof.quotient_compact);
    assert!(!prof.hypothesis_met);
}

#[test]
fn centralizer_planar_elliptic_is_rotation_circle() {
    let iso = Isometry::h2_rotation_about_i(2.0 * PI / 5.0);
    let prof = centralizer_profile(&iso);
    assert_eq!(prof.kind, CentralizerKind::RotationCircle);
    assert!(prof.quotient_compact);
    assert!(!prof.hypothesis_met);
}

#[test]
fn wrap_angle_lands_in_half_open_interval() {
    assert_relative_eq!(wrap_angle(3.0 * PI), PI, max_relative = 1e-12);
    assert_relative_eq!(wrap_angle(-PI), PI, max_relative = 1e-12);
    assert_relative_eq!(wrap_angle(0.5), 0.5, max_relative = 1e-15);
}

#[test]
fn pow_matches_repeated_composition() {
    let iso = Isometry::h3_loxodromic_vertical(0.3, 1.1);
    let cubed = iso.pow(3);
    let manual = iso.compose(&iso).unwrap().compose(&iso).unwrap();
    for (a, b) in cubed.entries().iter().zip(manual.entries()) {
        assert_relative_eq!(a.re, b.re, max_relative = 1e-12);
        assert_relative_eq!(a.im, b.im, max_relative = 1e-12);
    }
    let inv = iso.pow(-1);
    let comp = iso.compose(&inv).unwrap();
    assert_eq!(comp.classify(), IsoClass::Identity);
}
