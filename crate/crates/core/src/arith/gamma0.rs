//! Descriptors of the congruence family Gamma_0(N) from the classical
//! multiplicative formulas. Ground truth for these is the coset enumeration
//! oracle; the two are compared field-by-field in tests for all N <= 300.

use num_rational::Rational64;
use serde::Serialize;

use super::signature::{ExactArea, OrbifoldSignature};
use super::ArithError;

/// Which congruence family a descriptor belongs to. Only `Gamma0`
/// descriptors are constructed here; `GammaFull` marks principal-congruence
/// data supplied externally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CongruenceKind {
    Gamma0,
    GammaFull,
}

/// Per-level invariants of a congruence subgroup of PSL(2, Z).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceDescriptor {
    pub level: u64,
    pub kind: CongruenceKind,
    pub index: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub cusps: u64,
    pub genus: u64,
    pub volume: ExactArea,
}

impl CongruenceDescriptor {
    /// The signature (g; k; 2^nu2 3^nu3) of the quotient orbifold.
    pub fn signature(&self) -> Result<OrbifoldSignature, ArithError> {
        let mut orders = vec![2u64; self.nu2 as usize];
        orders.extend(std::iter::repeat(3u64).take(self.nu3 as usize));
        OrbifoldSignature::new(self.genus, self.cusps, orders)
    }

    /// Exact Theorem-B ratio `g 4 pi / vol = 12 g / index`.
    pub fn genus_volume_ratio(&self) -> Rational64 {
        Rational64::new(12 * self.genus as i64, self.index as i64)
    }
}

/// Primes in `[lo, hi]` by sieve. Scan families use this for prime-only
/// level ranges.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || hi < lo {
        return Vec::new();
    }
    let hi = hi as usize;
    let mut composite = vec![false; hi + 1];
    let mut out = Vec::new();
    for p in 2..=hi {
        if !composite[p] {
            if p as u64 >= lo {
                out.push(p as u64);
            }
            let mut q = p * p;
            while q <= hi {
                composite[q] = true;
                q += p;
            }
        }
    }
    out
}

pub(super) fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(super) fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in prime_factors(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Compute genus from the Gauss-Bonnet identity
/// `index = 12 g - 12 + 3 nu2 + 4 nu3 + 6 k` solved for g; errors if the
/// right-hand side is not a nonnegative multiple of 12.
fn genus_from_counts(n: u64, index: u64, nu2: u64, nu3: u64, cusps: u64) -> Result<u64, ArithError> {
    let twelve_g = 12 + index as i64 - 3 * nu2 as i64 - 4 * nu3 as i64 - 6 * cusps as i64;
    if twelve_g < 0 || twelve_g % 12 != 0 {
        return Err(ArithError::GenusComputation { n, twelve_g });
    }
    Ok((twelve_g / 12) as u64)
}

pub(super) fn descriptor_from_counts(
    level: u64,
    kind: CongruenceKind,
    index: u64,
    nu2: u64,
    nu3: u64,
    cusps: u64,
) -> Result<CongruenceDescriptor, ArithError> {
    let genus = genus_from_counts(level, index, nu2, nu3, cusps)?;
    Ok(CongruenceDescriptor {
        level,
        kind,
        index,
        nu2,
        nu3,
        cusps,
        genus,
        volume: ExactArea::from_pi_multiple(Rational64::new(index as i64, 3)),
    })
}

/// Descriptor of Gamma_0(N) by the classical multiplicative formulas:
/// index `N prod_{p | N} (1 + 1/p)`, elliptic counts through the quadratic
/// characters mod 4 and 3, cusps `sum_{d | N} phi(gcd(d, N/d))`, genus from
/// Gauss-Bonnet.
pub fn gamma0_descriptor(n: u64) -> Result<CongruenceDescriptor, ArithError> {
    if n == 0 {
        return Err(ArithError::LevelZero);
    }
    let factors = prime_factors(n);

    let mut index = n;
    for &(p, _) in &factors {
        index = index / p * (p + 1);
    }

    let nu2 = if n % 4 == 0 {
        0
    } else {
        factors.iter().fold(1u64, |acc, &(p, _)| {
            acc * match p % 4 {
                1 => 2,
                3 => 0,
                _ => 1, // p = 2
            }
        })
    };

    let nu3 = if n % 9 == 0 {
        0
    } else {
        factors.iter().fold(1u64, |acc, &(p, _)| {
            acc * match p % 3 {
                1 => 2,
                2 => 0,
                _ => 1, // p = 3
            }
        })
    };

    let cusps = divisors(n)
        .into_iter()
        .map(|d| euler_phi(num_integer::gcd(d, n / d)))
        .sum();

    descriptor_from_counts(n, CongruenceKind::Gamma0, index, nu2, nu3, cusps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(n: u64) -> (u64, u64, u64, u64, u64) {
        let d = gamma0_descriptor(n).unwrap();
        (d.index, d.nu2, d.nu3, d.cusps, d.genus)
    }

    #[test]
    fn descriptor_small_levels() {
        assert_eq!(counts(1), (1, 1, 1, 1, 0));
        assert_eq!(counts(2), (3, 1, 0, 2, 0));
        assert_eq!(counts(11), (12, 0, 0, 2, 1));
        assert_eq!(counts(13), (14, 2, 2, 2, 0));
    }

    #[test]
    fn volume_is_index_pi_thirds() {
        for n in 1..=60 {
            let d = gamma0_descriptor(n).unwrap();
            assert_eq!(
                d.volume.pi_multiple(),
                Rational64::new(d.index as i64, 3)
            );
        }
    }

    #[test]
    fn signature_area_matches_volume() {
        for n in [1u64, 2, 4, 11, 13, 37, 49, 98, 210] {
            let d = gamma0_descriptor(n).unwrap();
            let sig = d.signature().unwrap();
            assert_eq!(
                super::super::signature_volume(&sig).pi_multiple(),
                d.volume.pi_multiple(),
                "Gauss-Bonnet mismatch at N = {n}"
            );
        }
    }

    #[test]
    fn counts_are_multiplicative_over_coprime_factors() {
        let pairs = [(4u64, 9u64), (5, 8), (7, 25), (11, 13), (27, 49), (3, 100)];
        for (a, b) in pairs {
            assert_eq!(num_integer::gcd(a, b), 1);
            let da = gamma0_descriptor(a).unwrap();
            let db = gamma0_descriptor(b).unwrap();
            let dab = gamma0_descriptor(a * b).unwrap();
            assert_eq!(dab.index, da.index * db.index);
            assert_eq!(dab.nu2, da.nu2 * db.nu2);
            assert_eq!(dab.nu3, da.nu3 * db.nu3);
            assert_eq!(dab.cusps, da.cusps * db.cusps);
        }
    }

    #[test]
    fn genus_ratio_of_level_eleven_is_exactly_one() {
        let d = gamma0_descriptor(11).unwrap();
        assert_eq!(d.genus_volume_ratio(), Rational64::from_integer(1));
    }

    #[test]
    fn level_zero_rejected() {
        assert_eq!(gamma0_descriptor(0), Err(ArithError::LevelZero));
    }

    #[test]
    fn helper_arithmetic() {
        assert_eq!(prime_factors(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(36), 12);
        let mut ds = divisors(12);
        ds.sort_unstable();
        assert_eq!(ds, vec![1, 2, 3, 4, 6, 12]);
    }
}
