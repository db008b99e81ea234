//! Exact evaluation of the floor/ceiling-sum bounds used to control the
//! number of solutions of the invariance congruence.
//!
//! Both sides are finite sums, evaluated in rationals with no tolerance.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::error::{Error, Result};

/// Parameters `(N, m, d, n)` of the bound lemmas.
///
/// Here `m = gcd(k, l_1 - l_2)` and `d = k / m`; this `d` is unrelated to
/// [`crate::lens::gcd_invariant`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParams {
    /// Upper summation limit `N`.
    pub limit: u64,
    pub m: u64,
    pub d: u64,
    pub n: usize,
}

impl BoundParams {
    pub fn new(limit: u64, m: u64, d: u64, n: usize) -> Result<Self> {
        if m == 0 || d == 0 {
            return Err(Error::InvalidArgument(format!(
                "bound parameters need m, d > 0 (m = {m}, d = {d})"
            )));
        }
        Ok(Self { limit, m, d, n })
    }

    fn require_n3(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::UnsupportedDimension {
                required: ">= 3",
                got: self.n,
            });
        }
        if self.m == 0 || self.d == 0 {
            return Err(Error::InvalidArgument("m and d must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
}

impl BoundCheck {
    pub fn lhs_f64(&self) -> f64 {
        self.lhs.to_f64().unwrap_or(f64::NAN)
    }

    pub fn rhs_f64(&self) -> f64 {
        self.rhs.to_f64().unwrap_or(f64::NAN)
    }
}

fn rat(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `sum_r C(r+n-3, n-3) * inner(N - r + 1)` for the given inner sum.
fn outer_sum(p: &BoundParams, inner: impl Fn(u64) -> u64) -> BigRational {
    let n3 = p.n as u64 - 3;
    let mut total = BigUint::zero();
    for r in 0..=p.limit {
        let inner = inner(p.limit - r + 1);
        if inner > 0 {
            total += binomial(r + n3, n3) * inner;
        }
    }
    rat(total)
}

/// `(1/(md)) sum_q (coeff(q)) C(q+n-2, n-2)`.
fn weighted_binomial_sum(p: &BoundParams, coeff: impl Fn(u64) -> BigRational) -> BigRational {
    let n2 = p.n as u64 - 2;
    let mut total = BigRational::zero();
    for q in 0..=p.limit {
        total += coeff(q) * rat(binomial(q + n2, n2));
    }
    total / frac((p.m * p.d) as i64, 1)
}

/// Lower bound: the floor sum dominates the quadratic-minus-linear estimate.
pub fn check_lower_bound(p: &BoundParams) -> Result<BoundCheck> {
    p.require_n3()?;
    let (m, d, n) = (p.m, p.d, p.n as i64);
    let lhs = outer_sum(p, |width| {
        // j runs over 0..=floor(width/m) - 1; an upper index of -1 is an empty sum.
        (0..width / m).map(|j| (j * m + 1) / d).sum()
    });
    let c = frac(d as i64, 1) + frac(3 * m as i64, 2);
    let rhs = weighted_binomial_sum(p, |q| {
        let q = q as i64;
        frac(q + n - 1, n - 1) - &c - &c * frac(n - 2, q + n - 2)
    });
    let holds = lhs >= rhs;
    Ok(BoundCheck { lhs, rhs, holds })
}

/// Upper bound: the ceiling sum is dominated by the quadratic-plus-linear estimate.
pub fn check_upper_bound(p: &BoundParams) -> Result<BoundCheck> {
    p.require_n3()?;
    let (m, d, n) = (p.m, p.d, p.n as i64);
    let lhs = outer_sum(p, |width| {
        (1..=width.div_ceil(m)).map(|j| (j * m).div_ceil(d)).sum()
    });
    let c = frac(d as i64, 1) + frac(3 * m as i64, 2);
    let slope = frac((m * m + m * d) as i64, 1);
    let rhs = weighted_binomial_sum(p, |q| {
        let q = q as i64;
        frac(q + n - 1, n - 1) + &c + &slope * frac(n - 2, q + n - 2)
    });
    let holds = lhs <= rhs;
    Ok(BoundCheck { lhs, rhs, holds })
}

/// Outcome of one grid sweep of both bounds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BoundSweep {
    pub checked: usize,
    pub violations: Vec<(BoundParams, &'static str)>,
}

/// Checks both bounds for `N <= limit_max`, `1 <= m, d <= md_max`, and each `n`.
pub fn sweep_bounds(limit_max: u64, md_max: u64, dims: &[usize]) -> Result<BoundSweep> {
    let mut sweep = BoundSweep::default();
    for &n in dims {
        for limit in 0..=limit_max {
            for m in 1..=md_max {
                for d in 1..=md_max {
                    let params = BoundParams::new(limit, m, d, n)?;
                    if !check_lower_bound(&params)?.holds {
                        sweep.violations.push((params, "lower"));
                    }
                    if !check_upper_bound(&params)?.holds {
                        sweep.violations.push((params, "upper"));
                    }
                    sweep.checked += 2;
                }
            }
        }
    }
    Ok(sweep)
}

/// Ratio `sum a_{p,q} / sum b_{p,q}` over `0 <= p <= lambda - n + 1`,
/// `1 <= q <= lambda / (p + n - 1)`, where `a = C(p+n-2,n-2) C(q+n-2,n-2)` and
/// `b = ((p+q)/(n-1) + 1) a`. `None` when the index set is empty.
pub fn lemma_ratio(n: usize, lambda: u64) -> Result<Option<BigRational>> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let shift = n as u64 - 1;
    if lambda < shift {
        return Ok(None);
    }
    let n2 = n as u64 - 2;
    let mut a_sum = BigUint::zero();
    // sum of a * (p + q + n - 1), i.e. (n - 1) * sum b
    let mut b_scaled = BigUint::zero();
    for p in 0..=(lambda - shift) {
        let ap = binomial(p + n2, n2);
        for q in 1..=lambda / (p + shift) {
            let a = &ap * binomial(q + n2, n2);
            b_scaled += &a * (p + q + shift);
            a_sum += a;
        }
    }
    if b_scaled.is_zero() {
        return Ok(None);
    }
    Ok(Some(BigRational::new(
        BigInt::from(a_sum * shift),
        BigInt::from(b_scaled),
    )))
}

/// [`lemma_ratio`] for each `lambda`, rendered as `f64`.
pub fn lemma_ratio_decay(n: usize, lambdas: &[u64]) -> Result<Vec<Option<f64>>> {
    lambdas
        .iter()
        .map(|&l| Ok(lemma_ratio(n, l)?.and_then(|r| r.to_f64())))
        .collect()
}
