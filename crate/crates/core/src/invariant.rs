//! `dim H^G_{p,q}`: the number of `(alpha, beta)` with `|alpha| = p`,
//! `|beta| = q`, `alpha_1 beta_1 = 0` and `sum l_j (alpha_j - beta_j) = 0 mod k`.
//!
//! Three routes are provided. [`dim_invariant_bruteforce`] enumerates every
//! candidate pair and is the oracle for the others. [`InvariantCounter`]
//! convolves residue-class profiles and is the production path.
//! [`RecurrenceTable`] applies the `n = 2` reduction to a `k x k` base table.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{binomial, divides, serialize_big};
use crate::error::{Error, Result};
use crate::lens::{gcd_invariant, Bidegree, LensSpace};

/// Default cap on candidate pairs visited by the brute-force oracle.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// Residue-class sizes of exponent vectors of a fixed degree:
/// `counts[r] = #{alpha : |alpha| = degree, sum l_i alpha_i = r mod k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentProfile {
    pub degree: u64,
    #[serde(serialize_with = "serialize_big_vec")]
    pub counts: Vec<BigUint>,
}

impl ExponentProfile {
    /// The profile of `-alpha`, i.e. residues reflected through zero.
    pub fn negated(&self) -> Self {
        Self {
            degree: self.degree,
            counts: reflect(&self.counts),
        }
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

fn serialize_big_vec<S: serde::Serializer>(
    xs: &[BigUint],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct Item<'a>(&'a BigUint);
    impl Serialize for Item<'_> {
        fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            serialize_big(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Item(x))?;
    }
    seq.end()
}

/// Number of pairs whose residues sum to zero: `sum_r a[r] b[(k - r) % k]`.
fn pair_to_zero(a: &[BigUint], b: &[BigUint]) -> BigUint {
    let k = a.len();
    let mut acc = BigUint::zero();
    for r in 0..k {
        let other = &b[(k - r) % k];
        if !a[r].is_zero() && !other.is_zero() {
            acc += &a[r] * other;
        }
    }
    acc
}

/// Residue-profile tables for every degree up to a fixed bound.
///
/// Built eagerly; read-only afterwards, so it can be shared across threads.
#[derive(Debug, Clone)]
pub struct InvariantCounter {
    lens: LensSpace,
    max_degree: u64,
    // Profiles over coordinates 2..n (alpha_1 = 0), indexed by degree.
    tail: Vec<Vec<BigUint>>,
    // Profiles over all n coordinates, indexed by degree.
    full: Vec<Vec<BigUint>>,
}

impl InvariantCounter {
    pub fn new(lens: &LensSpace, max_degree: u64) -> Self {
        let k = lens.k() as usize;
        let w = lens.weights();
        // Coordinate 1 goes last so the second-to-last layer is the alpha_1 = 0 profile.
        let order: Vec<u64> = w[1..]
            .iter()
            .chain(std::iter::once(&w[0]))
            .copied()
            .collect();
        let degrees = max_degree as usize + 1;

        // layer[s][r] over the coordinates consumed so far; start with the empty vector.
        let mut layer: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(); k]; degrees];
        layer[0][0] = BigUint::from(1u32);
        let mut tail = Vec::new();
        for (j, &weight) in order.iter().enumerate() {
            // next[s][r] = layer[s][r] + next[s-1][r - weight]
            let weight = weight as usize % k;
            let mut next: Vec<Vec<BigUint>> = Vec::with_capacity(degrees);
            for s in 0..degrees {
                let mut row = layer[s].clone();
                if s > 0 {
                    let prev = &next[s - 1];
                    for (r, slot) in row.iter_mut().enumerate() {
                        let from = (r + k - weight) % k;
                        if !prev[from].is_zero() {
                            *slot += &prev[from];
                        }
                    }
                }
                next.push(row);
            }
            layer = next;
            if j + 2 == order.len() {
                tail = layer.clone();
            }
        }
        Self {
            lens: lens.clone(),
            max_degree,
            tail,
            full: layer,
        }
    }

    pub fn lens(&self) -> &LensSpace {
        &self.lens
    }

    pub fn max_degree(&self) -> u64 {
        self.max_degree
    }

    /// Profile of alpha with `|alpha| = degree`, optionally with `alpha_1 = 0`.
    pub fn profile(&self, degree: u64, first_zero: bool) -> ExponentProfile {
        self.check(degree);
        let table = if first_zero { &self.tail } else { &self.full };
        ExponentProfile {
            degree,
            counts: table[degree as usize].clone(),
        }
    }

    fn check(&self, degree: u64) {
        assert!(
            degree <= self.max_degree,
            "degree {degree} beyond precomputed bound {}",
            self.max_degree
        );
    }

    /// Inclusion-exclusion over `alpha_1 = 0` and `beta_1 = 0`.
    ///
    /// Panics if `p` or `q` exceeds the precomputed degree.
    pub fn dim(&self, b: Bidegree) -> BigUint {
        self.check(b.p.max(b.q));
        let (p, q) = (b.p as usize, b.q as usize);
        // beta carries negated weights: its profile is the reflected alpha profile.
        let beta_full = reflect(&self.full[q]);
        let beta_tail = reflect(&self.tail[q]);
        let a = pair_to_zero(&self.tail[p], &beta_full);
        let c = pair_to_zero(&self.full[p], &beta_tail);
        let both = pair_to_zero(&self.tail[p], &beta_tail);
        a + c - both
    }
}

fn reflect(counts: &[BigUint]) -> Vec<BigUint> {
    let k = counts.len();
    (0..k).map(|r| counts[(k - r) % k].clone()).collect()
}

/// Residue-class profile of `alpha` with `|alpha| = degree`.
pub fn exponent_profile(lens: &LensSpace, degree: u64, first_zero: bool) -> ExponentProfile {
    InvariantCounter::new(lens, degree).profile(degree, first_zero)
}

/// `dim H^G_{p,q}` via residue-profile convolution.
pub fn dim_invariant_dp(lens: &LensSpace, b: Bidegree) -> BigUint {
    InvariantCounter::new(lens, b.p.max(b.q)).dim(b)
}

/// Calls `f` on every composition of `total` into `parts` nonnegative parts.
fn for_each_composition(total: u64, parts: usize, f: &mut impl FnMut(&[u64])) {
    fn go(buf: &mut Vec<u64>, left: u64, parts: usize, f: &mut impl FnMut(&[u64])) {
        if buf.len() + 1 == parts {
            buf.push(left);
            f(buf);
            buf.pop();
            return;
        }
        for x in 0..=left {
            buf.push(x);
            go(buf, left - x, parts, f);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(parts);
    go(&mut buf, total, parts, f);
}

/// `dim H^G_{p,q}` by checking every candidate `(alpha, beta)` pair.
pub fn dim_invariant_bruteforce(lens: &LensSpace, b: Bidegree, budget: u64) -> Result<BigUint> {
    let n = lens.n();
    let m = n as u64 - 1;
    let needed = binomial(b.p + m, m) * binomial(b.q + m, m);
    if needed > BigUint::from(budget) {
        return Err(Error::ResourceLimit {
            needed: u128::try_from(&needed).unwrap_or(u128::MAX),
            budget,
        });
    }
    let k = lens.k() as i64;
    let weights = lens.weights();
    let phase = |v: &[u64]| -> i64 {
        let s: i128 = v
            .iter()
            .zip(weights)
            .map(|(&x, &l)| x as i128 * l as i128)
            .sum();
        s.rem_euclid(k as i128) as i64
    };
    let mut alphas = Vec::new();
    for_each_composition(b.p, n, &mut |a| alphas.push((a[0] == 0, phase(a))));
    let mut betas = Vec::new();
    for_each_composition(b.q, n, &mut |v| betas.push((v[0] == 0, phase(v))));

    let mut count: u64 = 0;
    for &(a_first_zero, ra) in &alphas {
        for &(b_first_zero, rb) in &betas {
            if (a_first_zero || b_first_zero) && (ra - rb).rem_euclid(k) == 0 {
                count += 1;
            }
        }
    }
    Ok(BigUint::from(count))
}

/// Solution counts of the `alpha_1 = 0` and `beta_1 = 0` congruences (`n = 2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MNCounts {
    pub m_pq: u64,
    pub n_pq: u64,
}

fn require_n2(lens: &LensSpace) -> Result<()> {
    if lens.n() != 2 {
        return Err(Error::UnsupportedDimension {
            required: "2",
            got: lens.n(),
        });
    }
    Ok(())
}

/// `m_{p,q} = #{0 <= beta_1 <= q : -l_1 beta_1 + l_2 (p - q + beta_1) = 0 mod k}`
/// and `n_{p,q} = #{0 <= alpha_1 <= p : l_1 alpha_1 + l_2 (p - q - alpha_1) = 0 mod k}`.
pub fn mn_counts(lens: &LensSpace, b: Bidegree) -> Result<MNCounts> {
    require_n2(lens)?;
    let k = lens.k() as i128;
    let (l1, l2) = (lens.weights()[0] as i128, lens.weights()[1] as i128);
    let diff = b.p as i128 - b.q as i128;
    let m_pq = (0..=b.q as i128)
        .filter(|&t| (-l1 * t + l2 * (diff + t)).rem_euclid(k) == 0)
        .count() as u64;
    let n_pq = (0..=b.p as i128)
        .filter(|&t| (l1 * t + l2 * (diff - t)).rem_euclid(k) == 0)
        .count() as u64;
    Ok(MNCounts { m_pq, n_pq })
}

/// Memoized `k x k` base table for the `n = 2` dimension reduction
/// `dim(p, q) = base(p % k, q % k) + d (p / k + q / k)` when `d | p - q`, else 0.
#[derive(Debug, Clone)]
pub struct RecurrenceTable {
    k: u64,
    d: u64,
    base: Vec<Vec<BigUint>>,
}

impl RecurrenceTable {
    pub fn new(lens: &LensSpace) -> Result<Self> {
        require_n2(lens)?;
        let k = lens.k();
        let d = gcd_invariant(lens)?;
        let counter = InvariantCounter::new(lens, k - 1);
        let base = (0..k)
            .map(|p| (0..k).map(|q| counter.dim(Bidegree::new(p, q))).collect())
            .collect();
        Ok(Self { k, d, base })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Rows `p = 0..k`, columns `q = 0..k`.
    pub fn base(&self) -> &[Vec<BigUint>] {
        &self.base
    }

    pub fn dim(&self, b: Bidegree) -> BigUint {
        if !divides(self.d, b.difference()) {
            return BigUint::zero();
        }
        let k = self.k;
        &self.base[(b.p % k) as usize][(b.q % k) as usize] + self.d * (b.p / k + b.q / k)
    }
}

/// `dim H^G_{p,q}` through the `k x k` reduction (`n = 2` only).
pub fn dim_invariant_recurrence(lens: &LensSpace, b: Bidegree) -> Result<BigUint> {
    Ok(RecurrenceTable::new(lens)?.dim(b))
}

/// Indicator `k | a` as 0/1, matching the inclusion-exclusion correction.
pub fn divides_indicator(k: u64, a: i64) -> u64 {
    u64::from(divides(k, a))
}
