//! Brute-force ground truth for Gamma_0(N) descriptors.
//!
//! Cosets of Gamma_0(N) in PSL(2, Z) are the points of P^1(Z/N), encoded as
//! bottom rows (c : d) with gcd(c, d, N) = 1 up to units. Elliptic counts
//! are fixed points of the order-2 and order-3 right actions, cusps are
//! orbits of the parabolic action, and the genus comes from the Euler
//! characteristic of the quotient. No multiplicative formula enters.

use num_integer::gcd;

use super::gamma0::{descriptor_from_counts, CongruenceDescriptor};
use super::{ArithError, CongruenceKind};

/// Largest level the enumeration accepts (desk scale).
pub const ORACLE_MAX_LEVEL: u64 = 300;

/// The projective line over Z/N with its class table.
struct ProjectiveLine {
    n: u64,
    /// Canonical representative of each class.
    reps: Vec<(u64, u64)>,
    /// Pair index c * n + d -> class id, u32::MAX for invalid pairs.
    class_of: Vec<u32>,
}

impl ProjectiveLine {
    fn build(n: u64) -> Self {
        let units: Vec<u64> = (1..n).filter(|&u| gcd(u, n) == 1).collect();
        let mut class_of = vec![u32::MAX; (n * n) as usize];
        let mut reps = Vec::new();
        let mut seen = vec![false; (n * n) as usize];
        for c in 0..n {
            for d in 0..n {
                let idx = (c * n + d) as usize;
                if seen[idx] || gcd(gcd(c, d), n) != 1 {
                    continue;
                }
                // Walk the unit orbit of (c, d), keeping the lex-min pair.
                let id = reps.len() as u32;
                let mut best = (c, d);
                for &u in &units {
                    let pair = (u * c % n, u * d % n);
                    let pidx = (pair.0 * n + pair.1) as usize;
                    seen[pidx] = true;
                    class_of[pidx] = id;
                    if pair < best {
                        best = pair;
                    }
                }
                reps.push(best);
            }
        }
        ProjectiveLine { n, reps, class_of }
    }

    fn class(&self, c: u64, d: u64) -> u32 {
        self.class_of[(c % self.n * self.n + d % self.n) as usize]
    }

    fn len(&self) -> usize {
        self.reps.len()
    }

    /// Count classes fixed by a map on bottom rows.
    fn fixed_points(&self, f: impl Fn(u64, u64, u64) -> (u64, u64)) -> u64 {
        self.reps
            .iter()
            .enumerate()
            .filter(|&(id, &(c, d))| {
                let (c1, d1) = f(c, d, self.n);
                self.class(c1, d1) == id as u32
            })
            .count() as u64
    }

    /// Count orbits of a map on bottom rows.
    fn orbit_count(&self, f: impl Fn(u64, u64, u64) -> (u64, u64)) -> u64 {
        let mut visited = vec![false; self.len()];
        let mut orbits = 0;
        for start in 0..self.len() {
            if visited[start] {
                continue;
            }
            orbits += 1;
            let mut id = start as u32;
            while !visited[id as usize] {
                visited[id as usize] = true;
                let (c, d) = self.reps[id as usize];
                let (c1, d1) = f(c, d, self.n);
                id = self.class(c1, d1);
            }
        }
        orbits
    }
}

/// Enumerate Gamma_0(N) \ PSL(2, Z) directly and count everything from the
/// action. Independent of every closed-form formula in this module.
pub fn coset_enumeration_oracle(n: u64) -> Result<CongruenceDescriptor, ArithError> {
    if n == 0 {
        return Err(ArithError::LevelZero);
    }
    if n > ORACLE_MAX_LEVEL {
        return Err(ArithError::LevelTooLarge { n, max: ORACLE_MAX_LEVEL });
    }
    if n == 1 {
        // The zero ring has a single projective class; the quotient is the
        // modular orbifold itself.
        return descriptor_from_counts(1, CongruenceKind::Gamma0, 1, 1, 1, 1);
    }
    let line = ProjectiveLine::build(n);
    let index = line.len() as u64;
    // Order-2 rotation: bottom row (c, d) -> (d, -c).
    let nu2 = line.fixed_points(|c, d, n| (d, (n - c) % n));
    // Order-3 rotation: (c, d) -> (d, d - c).
    let nu3 = line.fixed_points(|c, d, n| (d, (d + n - c) % n));
    // Parabolic translation: (c, d) -> (c, c + d); orbits are cusps.
    let cusps = line.orbit_count(|c, d, _| (c, (c + d)));
    descriptor_from_counts(n, CongruenceKind::Gamma0, index, nu2, nu3, cusps)
}
