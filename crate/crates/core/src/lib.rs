//! Computational toolkit for hyperbolic 2- and 3-orbifolds.
//!
//! The crate is organized around six subsystems:
//!
//! * [`hyp`] - upper half-plane / half-space models, isometries as projective
//!   2x2 matrices, classification, displacement, axes, and elementary
//!   (virtually abelian) subgroup tagging.
//! * [`margulis`] - thin-part radii and region volumes at a Margulis
//!   parameter `eps`: rotation radii `ell(theta, eps)`, short-geodesic collar
//!   radii `r(ell, eps)`, cone-region and cusp-region volumes.
//! * [`arith`] - orbifold signatures with exact Gauss-Bonnet volumes,
//!   congruence descriptors for Gamma0(N) with an independent coset
//!   enumeration oracle, quaternion-algebra archimedean checks, and synthetic
//!   3-orbifold fixture families.
//! * [`bs`] - Benjamini-Schramm style diagnostics: itemized thin-part
//!   estimates, genus/volume ratio scans, and the thin-fraction criterion
//!   verdict.
//! * [`trace`] - heat-kernel profiles on H^2/H^3 and the geometric side of a
//!   trace-formula bound: identity, elliptic (singular tube), and hyperbolic
//!   terms, plus first-Betti-number upper bounds.
//! * [`gromov`] - quasi-geodesic orbit estimates: fitted constants and
//!   displacement lower-bound witnesses for cyclic subgroups.

pub mod arith;
pub mod bs;
pub mod gromov;
pub mod hyp;
pub mod margulis;
pub mod trace;
