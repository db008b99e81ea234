//! Weyl-law checks for the Kohn Laplacian on lens spaces.
//!
//! Everything here reports numbers computed from exact counts; the
//! asymptotic statements themselves are judged by callers.

mod bounds;
mod quadrature;

pub use bounds::{
    check_lower_bound, check_upper_bound, lemma_ratio, lemma_ratio_decay, sweep_bounds, BoundCheck,
    BoundParams, BoundSweep,
};
pub use quadrature::{adaptive_simpson, QuadratureConfig};

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{factorial_f64, serialize_big};
use crate::error::{Error, Result};
use crate::lens::LensSpace;
use crate::spectrum::build_spectrum_with_budget;
use crate::spectrum::DEFAULT_GRID_BUDGET;

/// `N_L(lambda) / N(lambda)` at one cutoff.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioSample {
    pub lambda: u64,
    #[serde(serialize_with = "serialize_big")]
    pub n_lens: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub n_sphere: BigUint,
    #[serde(serialize_with = "serialize_ratio")]
    pub ratio: Option<BigRational>,
    pub ratio_f64: f64,
}

fn serialize_ratio<S: Serializer>(
    r: &Option<BigRational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
        .to_f64()
        .unwrap_or(f64::NAN)
}

/// Exact ratios `N_L / N` at `stride, 2 stride, ..., lambda_max`.
pub fn weyl_ratio_series(
    lens: &LensSpace,
    lambda_max: u64,
    stride: u64,
) -> Result<Vec<RatioSample>> {
    weyl_ratio_series_with_budget(lens, lambda_max, stride, DEFAULT_GRID_BUDGET)
}

pub fn weyl_ratio_series_with_budget(
    lens: &LensSpace,
    lambda_max: u64,
    stride: u64,
    budget: u64,
) -> Result<Vec<RatioSample>> {
    if stride < 2 || stride % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "stride must be even and at least 2, got {stride}"
        )));
    }
    let sphere = LensSpace::sphere(lens.n())?;
    let lens_table = build_spectrum_with_budget(lens, lambda_max, budget)?;
    let sphere_table = build_spectrum_with_budget(&sphere, lambda_max, budget)?;
    let lens_counts = lens_table.cumulative();
    let sphere_counts = sphere_table.cumulative();
    let mut out = Vec::new();
    let mut lambda = stride;
    while lambda <= lambda_max {
        let idx = (lambda / 2 - 1) as usize;
        let (n_lens, n_sphere) = (lens_counts[idx].1.clone(), sphere_counts[idx].1.clone());
        let (ratio, ratio_f64) = if n_sphere.is_zero() {
            (None, f64::NAN)
        } else {
            let r = BigRational::new(BigInt::from(n_lens.clone()), BigInt::from(n_sphere.clone()));
            let f = r.to_f64().unwrap_or(f64::NAN);
            (Some(r), f)
        };
        out.push(RatioSample {
            lambda,
            n_lens,
            n_sphere,
            ratio,
            ratio_f64,
        });
        lambda += stride;
    }
    Ok(out)
}

/// `(x / sinh x)^n e^{-(n-2) x}`, with value 1 at `x = 0`.
pub fn weyl_integrand(n: usize, x: f64) -> f64 {
    let n = n as f64;
    let ax = x.abs();
    // log(x / sinh x), accurate near zero and free of overflow for large |x|
    let log_ratio = if ax < 1e-3 {
        let x2 = ax * ax;
        -x2 / 6.0 + x2 * x2 / 180.0
    } else {
        ax.ln() - (ax + (-(-2.0 * ax).exp()).ln_1p() - std::f64::consts::LN_2)
    };
    (n * log_ratio - (n - 2.0) * x).exp()
}

/// `u_n = (n-1) / (n (2 pi)^n Gamma(n+1)) * integral of (x/sinh x)^n e^{-(n-2)x}`.
pub fn universal_constant(n: usize, cfg: &QuadratureConfig) -> Result<f64> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    cfg.validate()?;
    let t = cfg.truncation;
    let integral = adaptive_simpson(
        &|x| weyl_integrand(n, x),
        -t,
        t,
        cfg.tolerance,
        cfg.max_refinements,
    )?;
    let nf = n as f64;
    let prefactor = (nf - 1.0) / (nf * (2.0 * PI).powi(n as i32) * factorial_f64(n as u64));
    Ok(prefactor * integral)
}

/// `vol(S^{2n-1}) = 2 pi^n / Gamma(n)`.
pub fn sphere_volume(n: usize) -> f64 {
    2.0 * PI.powi(n as i32) / factorial_f64(n as u64 - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeylConstant {
    /// `N_L(lambda) / lambda^n`.
    pub empirical: f64,
    /// `u_n vol(S^{2n-1}) / k`.
    pub predicted: f64,
}

/// `u_n vol(L)` for the lens space.
pub fn predicted_constant(lens: &LensSpace, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(universal_constant(lens.n(), cfg)? * sphere_volume(lens.n()) / lens.k() as f64)
}

pub fn weyl_constant_experiment(lens: &LensSpace, lambda_max: u64) -> Result<WeylConstant> {
    let table = build_spectrum_with_budget(lens, lambda_max, DEFAULT_GRID_BUDGET)?;
    let count = table.counting(lambda_max);
    let scale = BigUint::from(lambda_max).pow(lens.n() as u32);
    let empirical = if lambda_max == 0 {
        0.0
    } else {
        ratio_to_f64(&count, &scale)
    };
    Ok(WeylConstant {
        empirical,
        predicted: predicted_constant(lens, &QuadratureConfig::default())?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemainderRow {
    pub lambda: u64,
    #[serde(serialize_with = "serialize_big")]
    pub n_lens: BigUint,
    /// `N_L(lambda) - u_n vol(L) lambda^n`.
    pub residual: f64,
    /// `residual / lambda^n`.
    pub relative: f64,
    /// `residual / lambda^{n-1}`.
    pub scaled: f64,
    /// `residual / (lambda^{n-1} log lambda)`.
    pub scaled_log: f64,
}

/// Residual of `N_L` against the leading Weyl term at `samples` evenly spaced
/// even cutoffs ending at `lambda_max`.
pub fn remainder_experiment(
    lens: &LensSpace,
    lambda_max: u64,
    samples: u64,
) -> Result<Vec<RemainderRow>> {
    remainder_experiment_with_budget(lens, lambda_max, samples, DEFAULT_GRID_BUDGET)
}

pub fn remainder_experiment_with_budget(
    lens: &LensSpace,
    lambda_max: u64,
    samples: u64,
    budget: u64,
) -> Result<Vec<RemainderRow>> {
    if samples == 0 || lambda_max < 2 * samples {
        return Err(Error::InvalidArgument(format!(
            "need lambda_max >= 2 * samples with samples >= 1 (lambda_max = {lambda_max}, samples = {samples})"
        )));
    }
    let predicted = predicted_constant(lens, &QuadratureConfig::default())?;
    let table = build_spectrum_with_budget(lens, lambda_max, budget)?;
    let cumulative = table.cumulative();
    let n = lens.n() as i32;
    let mut rows = Vec::with_capacity(samples as usize);
    for i in 1..=samples {
        let raw = (lambda_max as u128 * i as u128 / samples as u128) as u64;
        let lambda = (raw / 2 * 2).max(2);
        let n_lens = cumulative[(lambda / 2 - 1) as usize].1.clone();
        let lf = lambda as f64;
        let residual = n_lens.to_f64().unwrap_or(f64::NAN) - predicted * lf.powi(n);
        let lower = lf.powi(n - 1);
        rows.push(RemainderRow {
            lambda,
            n_lens,
            residual,
            relative: residual / lf.powi(n),
            scaled: residual / lower,
            scaled_log: residual / (lower * lf.ln()),
        });
    }
    Ok(rows)
}

/// `1/k` as an exact rational.
pub fn inverse_order(lens: &LensSpace) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(lens.k()))
}
