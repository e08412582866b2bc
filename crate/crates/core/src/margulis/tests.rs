use super::*;
use approx::assert_relative_eq;
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::hyp::{
    point_at_distance_from_vertical, standardize_to_vertical, Boundary, Geodesic, HypError,
    Isometry, Model,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn elementary_axial_screw_plus_rotation() {
    let trans = Isometry::h3(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)).unwrap();
    let rot = Isometry::h3_loxodromic_vertical(0.0, 2.0 * PI / 3.0);
    match classify_elementary(&[trans, rot]).unwrap() {
        ElementaryType::AxialZxZm { length, order } => {
            assert_relative_eq!(length, 2.0 * std::f64::consts::LN_2, max_relative = 1e-12);
            assert_eq!(order, 3);
        }
        other => panic!("expected axial Z x Z/m, got {other:?}"),
    }
}

#[test]
fn elementary_two_half_turns_infinite_dihedral() {
    let about_i = Isometry::h2(0.0, 1.0, -1.0, 0.0).unwrap();
    let about_2i = Isometry::h2(0.0, 2.0, -0.5, 0.0).unwrap();
    match classify_elementary(&[about_i, about_2i]).unwrap() {
        ElementaryType::InfiniteDihedral { translation_length } => {
            // Product of half-turns at distance log 2 translates by 2 log 2.
            assert_relative_eq!(
                translation_length,
                2.0 * std::f64::consts::LN_2,
                max_relative = 1e-9
            );
        }
        other => panic!("expected infinite dihedral, got {other:?}"),
    }
}

#[test]
fn elementary_crossed_axes_are_not_elementary() {
    let a = Isometry::h2(2.0, 0.0, 0.0, 0.5).unwrap();
    let g = Isometry::h2(2.0, 1.0, 1.0, 1.0).unwrap();
    let b = Isometry::h2(3.0, 0.0, 0.0, 1.0 / 3.0).unwrap().conjugate_by(&g).unwrap();
    assert_eq!(
        classify_elementary(&[a, b]).unwrap(),
        ElementaryType::NotElementary
    );
}

#[test]
fn elementary_axial_dihedral_with_orthogonal_half_turn() {
    let trans = Isometry::h3(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)).unwrap();
    let rot = Isometry::h3_loxodromic_vertical(0.0, 2.0 * PI / 3.0);
    // z -> -1/z: half-turn about the axis {i, -i}, orthogonal to {0, inf}.
    let flip = Isometry::h3(c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)).unwrap();
    match classify_elementary(&[trans, rot, flip]).unwrap() {
        ElementaryType::AxialDihedral { length, order } => {
            assert_relative_eq!(length, 2.0 * std::f64::consts::LN_2, max_relative = 1e-12);
            assert_eq!(order, 3);
        }
        other => panic!("expected axial dihedral, got {other:?}"),
    }
}

#[test]
fn elementary_rotations_about_crossing_axes() {
    let r1 = Isometry::h3_loxodromic_vertical(0.0, 2.0 * PI / 3.0);
    let horizontal = Geodesic::from_endpoints(
        Model::H3,
        Boundary::Finite(c(-1.0, 0.0)),
        Boundary::Finite(c(1.0, 0.0)),
    )
    .unwrap();
    let g = standardize_to_vertical(&horizontal).unwrap();
    let r2 = r1.conjugate_by(&g.inverse()).unwrap();
    assert_eq!(
        classify_elementary(&[r1, r2]).unwrap(),
        ElementaryType::FiniteNonDihedral
    );
    // Sharing one axis instead: finite cyclic with the lcm order.
    let r1_sq = r1.compose(&r1).unwrap();
    assert_eq!(
        classify_elementary(&[r1, r1_sq]).unwrap(),
        ElementaryType::FiniteCyclicElliptic { order: 3 }
    );
}

#[test]
fn elementary_parabolic_pairs() {
    let p1 = Isometry::h3(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
    let p2 = Isometry::h3(c(1.0, 0.0), c(-2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
    let p3 = Isometry::h3(c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
    assert_eq!(
        classify_elementary(&[p1, p2]).unwrap(),
        ElementaryType::CyclicHyperbolicOrParabolic { length: None }
    );
    // Independent translation directions: rank two, outside the catalogue.
    assert_eq!(
        classify_elementary(&[p1, p3]).unwrap(),
        ElementaryType::NotElementary
    );
    // Parabolic mixed with a hyperbolic: never elementary.
    let trans = Isometry::h3(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)).unwrap();
    assert_eq!(
        classify_elementary(&[p1, trans]).unwrap(),
        ElementaryType::NotElementary
    );
}

#[test]
fn elementary_tag_is_conjugation_equivariant() {
    let trans = Isometry::h3(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)).unwrap();
    let rot = Isometry::h3_loxodromic_vertical(0.0, 2.0 * PI / 3.0);
    let g = Isometry::h3(c(1.0, 0.5), c(0.0, -1.0), c(1.0, 0.0), c(2.0, 0.3)).unwrap();
    let before = classify_elementary(&[trans, rot]).unwrap();
    let after = classify_elementary(&[
        trans.conjugate_by(&g).unwrap(),
        rot.conjugate_by(&g).unwrap(),
    ])
    .unwrap();
    match (before, after) {
        (
            ElementaryType::AxialZxZm { length: l1, order: m1 },
            ElementaryType::AxialZxZm { length: l2, order: m2 },
        ) => {
            assert_relative_eq!(l1, l2, max_relative = 1e-9);
            assert_eq!(m1, m2);
        }
        pair => panic!("tags changed under conjugation: {pair:?}"),
    }
}

#[test]
fn elementary_generator_count_checked() {
    assert_eq!(
        classify_elementary(&[]),
        Err(HypError::GeneratorCount { got: 0 })
    );
    let id = Isometry::identity(Model::H2);
    assert_eq!(
        classify_elementary(&[id; 5]),
        Err(HypError::GeneratorCount { got: 5 })
    );
    assert_eq!(
        classify_elementary(&[id]).unwrap(),
        ElementaryType::FiniteCyclicElliptic { order: 1 }
    );
}

#[test]
fn ell_theta_half_turn_is_exact() {
    // Half turn: sin(theta/2) = 1, so ell = asinh(sinh(eps/2)) = eps/2.
    let l = ell_theta(PI, 0.1).unwrap();
    assert_relative_eq!(l, 0.05, max_relative = 1e-13);
    let b = ell_theta_bisect(PI, 0.1).unwrap();
    assert!((l - b).abs() < 1e-10);
}

#[test]
fn ell_theta_rejects_out_of_range_inputs() {
    assert_eq!(
        ell_theta(0.0, 0.1),
        Err(MargulisError::AngleOutOfRange { theta: 0.0 })
    );
    assert!(ell_theta(PI + 0.1, 0.1).is_err());
    assert!(ell_theta(1.0, 0.0).is_err());
    assert!(ell_theta(1.0, f64::NAN).is_err());
}

#[test]
fn ell_theta_vanishes_with_eps() {
    assert!(ell_theta(1.0, 1e-12).unwrap() < 1e-11);
}

#[test]
fn ell_theta_plus_log_theta_has_small_variation() {
    // The radius grows like -log(theta) as the angle degenerates; the
    // compensated function has total variation well under 1 on [1e-6, 0.1].
    let eps = 0.1;
    let n = 10_000;
    let (a, b) = (1e-6f64, 0.1f64);
    let mut prev = ell_theta(a, eps).unwrap() + a.ln();
    let mut tv = 0.0;
    for i in 1..=n {
        let theta = a * (b / a).powf(i as f64 / n as f64);
        let v = ell_theta(theta, eps).unwrap() + theta.ln();
        tv += (v - prev).abs();
        prev = v;
    }
    assert!(tv <= 1.0, "total variation {tv} exceeds 1");
}

#[test]
fn ell_theta_closed_form_agrees_with_bisection_on_grid() {
    for i in 1..=100 {
        let theta = PI * i as f64 / 100.0;
        for j in 1..=100 {
            let eps = 0.2 * j as f64 / 100.0;
            let cf = ell_theta(theta, eps).unwrap();
            let bi = ell_theta_bisect(theta, eps).unwrap();
            assert!(
                (cf - bi).abs() <= 1e-10,
                "disagreement at theta={theta}, eps={eps}: {cf} vs {bi}"
            );
        }
    }
    // Spot checks near the degenerate-angle end.
    for &theta in &[1e-6, 1e-4, 1e-2] {
        let cf = ell_theta(theta, 0.1).unwrap();
        let bi = ell_theta_bisect(theta, 0.1).unwrap();
        assert!((cf - bi).abs() <= 1e-10);
    }
}

#[test]
fn ell_theta_matches_disk_model_derivation() {
    // Disk-model route: a rotation by theta about the disk center displaces
    // a point at euclidean radius rr by
    // cosh(d) = 1 + 2 rr^2 |1 - e^{i theta}|^2 / (1 - rr^2)^2,
    // with rr = tanh(rho/2). Solve for d = eps by bisection and compare.
    let disk_ell = |theta: f64, eps: f64| -> f64 {
        let chord = (c(1.0, 0.0) - c(theta.cos(), theta.sin())).norm_sqr();
        let cosh_d = |rho: f64| {
            let rr = (rho / 2.0).tanh();
            1.0 + 2.0 * rr * rr * chord / (1.0 - rr * rr).powi(2)
        };
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        while cosh_d(hi) < eps.cosh() {
            hi *= 2.0;
        }
        while hi - lo > 1e-14 {
            let mid = 0.5 * (lo + hi);
            if cosh_d(mid) < eps.cosh() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    for &theta in &[0.1, 0.5, 1.5, PI] {
        for &eps in &[0.02, 0.1, 0.2] {
            let half_plane = ell_theta(theta, eps).unwrap();
            let disk = disk_ell(theta, eps);
            assert!(
                (half_plane - disk).abs() <= 1e-10,
                "disk and half-plane routes differ at theta={theta}, eps={eps}"
            );
        }
    }
}

#[test]
fn r_ell_matches_arccosh_form() {
    let r = r_ell(0.01, 0.1);
    let oracle = ((0.1f64.cosh() - 1.0) / (0.01f64.cosh() - 1.0)).sqrt().acosh();
    assert_relative_eq!(r, oracle, max_relative = 1e-12);
    assert_relative_eq!(r, 2.9936, max_relative = 1e-4);
}

#[test]
fn r_ell_zero_once_axis_displacement_reaches_eps() {
    assert_eq!(r_ell(0.1, 0.1), 0.0);
    assert_eq!(r_ell(0.5, 0.1), 0.0);
    assert_eq!(r_ell_twisted(0.2, 1.0, 0.1), 0.0);
}

#[test]
fn r_ell_increases_as_length_shrinks() {
    let eps = 0.1;
    let mut prev = r_ell(0.09, eps);
    for &ell in &[0.05, 0.02, 0.01, 0.001, 1e-5] {
        let r = r_ell(ell, eps);
        assert!(r > prev, "r_ell not increasing as ell drops to {ell}");
        prev = r;
    }
}

#[test]
fn r_ell_displacement_at_radius_equals_eps() {
    // Matrix-action check: at distance r_ell from the axis the isometry
    // displaces by exactly eps.
    let eps = 0.1;
    for &ell in &[0.01, 0.05, 0.09] {
        let rho = r_ell(ell, eps);
        let iso = Isometry::translation_along_vertical(Model::H2, ell);
        let p = point_at_distance_from_vertical(Model::H2, rho, 0.0).unwrap();
        assert_relative_eq!(iso.displacement(&p).unwrap(), eps, max_relative = 1e-10);
    }
    for &(ell, twist) in &[(0.01, 0.4), (0.05, -2.0)] {
        let rho = r_ell_twisted(ell, twist, eps);
        let iso = Isometry::h3_loxodromic_vertical(ell, twist);
        for &alpha in &[0.0, 1.3] {
            let p = point_at_distance_from_vertical(Model::H3, rho, alpha).unwrap();
            assert_relative_eq!(iso.displacement(&p).unwrap(), eps, max_relative = 1e-10);
        }
    }
}

#[test]
fn r_ell_twisted_degenerates_to_ell_theta() {
    for &(theta, eps) in &[(0.3, 0.1), (2.0, 0.05), (PI, 0.2)] {
        assert_eq!(
            r_ell_twisted(0.0, theta, eps),
            ell_theta(theta, eps).unwrap()
        );
    }
}

#[test]
fn thin_radii_bundles_both_outputs() {
    let tr = thin_radii(PI, 0.01, MargulisConstant::default()).unwrap();
    assert_relative_eq!(tr.ell_theta, 0.05, max_relative = 1e-13);
    assert_relative_eq!(tr.r_ell, 2.9936, max_relative = 1e-4);
    assert_eq!(tr.eps, 0.1);
}

#[test]
fn margulis_constant_validated() {
    assert!(MargulisConstant::new(-0.1).is_err());
    assert!(MargulisConstant::new(0.0).is_err());
    assert!(MargulisConstant::new(f64::INFINITY).is_err());
    assert_eq!(MargulisConstant::default().get(), 0.1);
    assert_eq!(MargulisConstant::new(0.05).unwrap().get(), 0.05);
}

#[test]
fn cone_region_volume_order_three() {
    let v = cone_region_volume(3, 0.1).unwrap();
    // Independent route through the bisection radius.
    let ell = ell_theta_bisect(2.0 * PI / 3.0, 0.1).unwrap();
    let oracle = (2.0 * PI / 3.0) * (ell.cosh() - 1.0);
    assert!((v - oracle).abs() < 1e-9);
    assert_relative_eq!(v, 3.4906e-3, max_relative = 1e-3);
}

#[test]
fn cone_region_volume_half_turn_uses_collar_width() {
    // m = 2 swaps in eps/6: ell(pi, eps/6) = eps/12 exactly, so the area is
    // pi (cosh(eps/12) - 1).
    let eps = 0.1;
    let v = cone_region_volume(2, eps).unwrap();
    let expected = PI * 2.0 * (eps / 24.0).sinh().powi(2);
    assert_relative_eq!(v, expected, max_relative = 1e-12);
}

#[test]
fn cone_region_volume_increases_to_cusp_area() {
    let eps = 0.1;
    let cusp = cusp_region_area(eps);
    let mut prev = 0.0;
    for &m in &[3u64, 4, 5, 10, 100, 1000] {
        let v = cone_region_volume(m, eps).unwrap();
        assert!(v > prev, "cone volume not increasing at m={m}");
        assert!(v < cusp, "cone volume exceeds its supremum at m={m}");
        prev = v;
    }
    let near_limit = cone_region_volume(1_000_000, eps).unwrap();
    assert!((near_limit - cusp).abs() < 1e-4);
    assert!(cone_region_volume(1, eps).is_err());
}

#[test]
fn cusp_region_area_examples() {
    assert_relative_eq!(cusp_region_area(0.1), 2.0 * 0.05f64.sinh(), max_relative = 1e-15);
    assert_relative_eq!(cusp_region_area(0.1), 0.100042, max_relative = 1e-5);
    assert_eq!(cusp_region_area(0.0), 0.0);
}

#[test]
fn cusp_region_area_independent_of_primitive_width() {
    // For the parabolic z -> z + w, the region where it displaces < eps is
    // {y > y0} with w / (2 y0) = sinh(eps / 2); its quotient area w / y0
    // never depends on w. Verified through the matrix action.
    let eps = 0.1f64;
    for &w in &[1.0, 2.0, 5.0] {
        let y0 = w / (2.0 * (eps / 2.0).sinh());
        let par = Isometry::parabolic_translation(Model::H2, c(w, 0.0)).unwrap();
        let p = crate::hyp::Point::h2(0.3, y0).unwrap();
        assert_relative_eq!(par.displacement(&p).unwrap(), eps, max_relative = 1e-12);
        assert_relative_eq!(w / y0, cusp_region_area(eps), max_relative = 1e-12);
    }
}

#[test]
fn singular_separation_isolated_for_higher_orders() {
    let sep = singular_separation(5, 0.1).unwrap();
    match sep {
        SingularSeparation::Isolated { radius } => {
            assert_relative_eq!(radius, ell_theta(2.0 * PI / 5.0, 0.1).unwrap());
            assert_relative_eq!(radius, 0.08499814, max_relative = 1e-6);
        }
        other => panic!("expected isolated rule, got {other:?}"),
    }
    assert_eq!(sep.base_radius(), sep.with_neighbor(0.01));
}

#[test]
fn singular_separation_half_turn_neighbor_rule() {
    let sep = singular_separation(2, 0.1).unwrap();
    assert_relative_eq!(sep.base_radius(), 0.05, max_relative = 1e-13);
    // A neighbor at ell_x = 0.01 forces the tube radius of the composed
    // hyperbolic.
    assert_relative_eq!(sep.with_neighbor(0.01), r_ell(0.01, 0.1), max_relative = 1e-15);
    assert_relative_eq!(sep.with_neighbor(0.01), 2.9936, max_relative = 1e-4);
    assert!(singular_separation(1, 0.1).is_err());
}

#[test]
fn singular_separation_grows_with_order() {
    let s3 = singular_separation(3, 0.1).unwrap().base_radius();
    let s4 = singular_separation(4, 0.1).unwrap().base_radius();
    let s5 = singular_separation(5, 0.1).unwrap().base_radius();
    assert!(s3 < s4 && s4 < s5);
}
