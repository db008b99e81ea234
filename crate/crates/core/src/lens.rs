//! Lens-space parameters and the small value types indexing the spectrum.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{gcd_signed, residue};
use crate::error::{Error, Result};

/// The parameter tuple `(n, k, l_1..l_n)` of `L(k; l_1, ..., l_n)`.
///
/// Weights are stored as residues in `[0, k)` and are coprime to `k`.
/// `k = 1` is the sphere `S^{2n-1}` itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LensSpace {
    n: usize,
    k: u64,
    weights: Vec<u64>,
}

impl LensSpace {
    /// Validates and canonicalizes `(n, k, weights)`.
    pub fn new(n: usize, k: i64, weights: &[i64]) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        if k < 1 {
            return Err(Error::InvalidOrder(k));
        }
        if weights.len() != n {
            return Err(Error::WeightCount {
                expected: n,
                got: weights.len(),
            });
        }
        let k = k as u64;
        let mut reduced = Vec::with_capacity(n);
        for &w in weights {
            if gcd_signed(k, w) != 1 {
                return Err(Error::InvalidWeight { weight: w, k });
            }
            reduced.push(residue(w, k));
        }
        Ok(Self {
            n,
            k,
            weights: reduced,
        })
    }

    /// `n = weights.len()`.
    pub fn from_weights(k: i64, weights: &[i64]) -> Result<Self> {
        Self::new(weights.len(), k, weights)
    }

    /// The unit sphere `S^{2n-1}` (trivial group).
    pub fn sphere(n: usize) -> Result<Self> {
        Self::new(n, 1, &vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn is_sphere(&self) -> bool {
        self.k == 1
    }

    /// `d = gcd(k, l_1 - l_2)` for three-dimensional lens spaces.
    pub fn gcd_invariant(&self) -> Result<u64> {
        gcd_invariant(self)
    }
}

/// Validating constructor; see [`LensSpace::new`].
pub fn make_lens_space(n: usize, k: i64, weights: &[i64]) -> Result<LensSpace> {
    LensSpace::new(n, k, weights)
}

/// `d = gcd(k, l_1 - l_2)`, with `gcd(k, 0) = k`. Only defined for `n = 2`.
pub fn gcd_invariant(lens: &LensSpace) -> Result<u64> {
    if lens.n != 2 {
        return Err(Error::UnsupportedDimension {
            required: "2",
            got: lens.n,
        });
    }
    let diff = lens.weights[0] as i64 - lens.weights[1] as i64;
    Ok(gcd_signed(lens.k, diff))
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.k)?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for LensSpace {
    type Err = Error;

    /// Parses `k:l1,l2,...,ln`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let (k, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let k: i64 = k.trim().parse().map_err(|_| bad())?;
        let weights = rest
            .split(',')
            .map(|w| w.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        LensSpace::from_weights(k, &weights)
    }
}

impl Serialize for LensSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LensSpace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Bidegree `(p, q)` of `H_{p,q}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: u64,
    pub q: u64,
}

impl Bidegree {
    pub const fn new(p: u64, q: u64) -> Self {
        Self { p, q }
    }

    pub const fn swapped(self) -> Self {
        Self {
            p: self.q,
            q: self.p,
        }
    }

    /// `p - q` as a signed value.
    pub fn difference(self) -> i64 {
        self.p as i64 - self.q as i64
    }
}

/// An exact Kohn Laplacian eigenvalue `2q(p + n - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Eigenvalue(u64);

impl Eigenvalue {
    pub fn of(n: usize, b: Bidegree) -> Self {
        Eigenvalue(2 * b.q * (b.p + n as u64 - 1))
    }

    /// Accepts positive even values only.
    pub fn positive(value: i64) -> Result<Self> {
        if value <= 0 || value.is_odd() {
            return Err(Error::InvalidEigenvalue(value));
        }
        Ok(Eigenvalue(value as u64))
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A candidate solution `(alpha, beta)` of the invariance system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndexPair {
    pub alpha: Vec<u64>,
    pub beta: Vec<u64>,
}

impl MultiIndexPair {
    pub fn alpha_norm(&self) -> u64 {
        self.alpha.iter().sum()
    }

    pub fn beta_norm(&self) -> u64 {
        self.beta.iter().sum()
    }

    /// `sum_j l_j (alpha_j - beta_j) mod k`.
    pub fn phase(&self, lens: &LensSpace) -> u64 {
        let k = lens.k() as u128;
        let mut acc: u128 = 0;
        for ((&l, &a), &b) in lens.weights().iter().zip(&self.alpha).zip(&self.beta) {
            let l = l as u128;
            acc = (acc + l * (a as u128 % k)) % k;
            acc = (acc + (k - l * (b as u128 % k) % k)) % k;
        }
        acc as u64
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn canonicalization_is_idempotent(k in 1i64..60, a in -200i64..200, b in -200i64..200) {
            if let Ok(l) = make_lens_space(2, k, &[a, b]) {
                let w: Vec<i64> = l.weights().iter().map(|&w| w as i64).collect();
                prop_assert_eq!(make_lens_space(2, k, &w).unwrap(), l);
            }
        }

        #[test]
        fn gcd_invariant_divides_order_and_ignores_shifts(
            k in 1i64..60, a in -200i64..200, b in -200i64..200, s in -5i64..5, t in -5i64..5,
        ) {
            if let Ok(l) = make_lens_space(2, k, &[a, b]) {
                let d = gcd_invariant(&l).unwrap();
                prop_assert_eq!(k as u64 % d, 0);
                let shifted = make_lens_space(2, k, &[a + s * k, b + t * k]).unwrap();
                prop_assert_eq!(gcd_invariant(&shifted).unwrap(), d);
            }
        }
    }
}
