//! Exact eigenvalue -> multiplicity tables and the counting function `N_L`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{divisors, serialize_big};
use crate::error::{Error, Result};
use crate::invariant::InvariantCounter;
use crate::lens::{Bidegree, Eigenvalue, LensSpace};

/// Default cap on the `(p, q)` grid a spectrum may touch.
pub const DEFAULT_GRID_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contributor {
    pub p: u64,
    pub q: u64,
    #[serde(serialize_with = "serialize_big")]
    pub dim: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    #[serde(serialize_with = "serialize_big")]
    pub multiplicity: BigUint,
    pub contributors: Vec<Contributor>,
}

/// Positive eigenvalues up to `lambda_max` with exact multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumTable {
    pub space: LensSpace,
    pub lambda_max: u64,
    pub entries: BTreeMap<u64, SpectrumEntry>,
}

/// A disagreement between two spectra at one eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralDifference {
    pub lambda: u64,
    #[serde(serialize_with = "serialize_big")]
    pub left: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub right: BigUint,
}

impl SpectrumTable {
    pub fn multiplicity(&self, lambda: u64) -> BigUint {
        self.entries
            .get(&lambda)
            .map(|e| e.multiplicity.clone())
            .unwrap_or_default()
    }

    /// `N_L(lambda)` restricted to this table's range.
    pub fn counting(&self, lambda: u64) -> BigUint {
        self.entries
            .range(..=lambda)
            .map(|(_, e)| &e.multiplicity)
            .sum()
    }

    /// Running `N_L` at every even `lambda` in `(0, lambda_max]`.
    pub fn cumulative(&self) -> Vec<(u64, BigUint)> {
        let mut acc = BigUint::zero();
        let mut out = Vec::with_capacity(self.lambda_max as usize / 2);
        let mut it = self.entries.iter().peekable();
        for lambda in (2..=self.lambda_max).step_by(2) {
            while let Some((&l, e)) = it.peek() {
                if l > lambda {
                    break;
                }
                acc += &e.multiplicity;
                it.next();
            }
            out.push((lambda, acc.clone()));
        }
        out
    }

    /// Smallest eigenvalue up to the shared cutoff where multiplicities differ.
    pub fn first_difference(&self, other: &SpectrumTable) -> Option<SpectralDifference> {
        let cutoff = self.lambda_max.min(other.lambda_max);
        let keys = self
            .entries
            .range(..=cutoff)
            .chain(other.entries.range(..=cutoff))
            .map(|(&l, _)| l);
        let mut keys: Vec<u64> = keys.collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter().find_map(|lambda| {
            let (left, right) = (self.multiplicity(lambda), other.multiplicity(lambda));
            (left != right).then_some(SpectralDifference {
                lambda,
                left,
                right,
            })
        })
    }

    pub fn same_multiplicities(&self, other: &SpectrumTable) -> bool {
        self.first_difference(other).is_none()
    }

    /// `lambda,multiplicity` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,multiplicity\n");
        for (lambda, e) in &self.entries {
            out.push_str(&format!("{lambda},{}\n", e.multiplicity));
        }
        out
    }

    /// `{"<lambda>": [{"p":..,"q":..,"dim":..}, ...]}` keyed in ascending order.
    pub fn contributors_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .entries
            .iter()
            .map(|(lambda, e)| {
                let list = e
                    .contributors
                    .iter()
                    .map(|c| serde_json::to_value(c).expect("contributor serializes"))
                    .collect();
                (lambda.to_string(), serde_json::Value::Array(list))
            })
            .collect();
        serde_json::Value::Object(map)
    }
}

/// Bidegrees with `2q(p + n - 1) = lambda`, `q >= 1`, ascending in `q`.
pub fn bidegrees_for(n: usize, lambda: u64) -> Vec<Bidegree> {
    if lambda == 0 || lambda % 2 == 1 {
        return Vec::new();
    }
    let half = lambda / 2;
    let shift = n as u64 - 1;
    divisors(half)
        .into_iter()
        .filter(|&q| half / q >= shift)
        .map(|q| Bidegree::new(half / q - shift, q))
        .collect()
}

fn grid_extent(n: usize, lambda_max: u64) -> Option<(u64, u64)> {
    let half = lambda_max / 2;
    let shift = n as u64 - 1;
    (half >= shift).then(|| (half - shift, half / shift))
}

fn check_grid(n: usize, lambda_max: u64, budget: u64) -> Result<()> {
    if let Some((p_max, q_max)) = grid_extent(n, lambda_max) {
        let needed = (p_max as u128 + 1) * (q_max as u128 + 1);
        if needed > budget as u128 {
            return Err(Error::ResourceLimit { needed, budget });
        }
    }
    Ok(())
}

/// Invariant-dimension tables large enough for every eigenvalue up to `lambda_max`.
pub fn counter_for(lens: &LensSpace, lambda_max: u64) -> InvariantCounter {
    let degree = grid_extent(lens.n(), lambda_max)
        .map(|(p, q)| p.max(q))
        .unwrap_or(0);
    InvariantCounter::new(lens, degree)
}

fn entry_for(counter: &InvariantCounter, lambda: u64) -> Option<SpectrumEntry> {
    let contributors: Vec<Contributor> = bidegrees_for(counter.lens().n(), lambda)
        .into_iter()
        .filter_map(|b| {
            let dim = counter.dim(b);
            (!dim.is_zero()).then_some(Contributor {
                p: b.p,
                q: b.q,
                dim,
            })
        })
        .collect();
    if contributors.is_empty() {
        return None;
    }
    let multiplicity = contributors.iter().map(|c| &c.dim).sum();
    Some(SpectrumEntry {
        multiplicity,
        contributors,
    })
}

/// Spectrum up to `lambda_max` with the default grid budget.
pub fn build_spectrum(lens: &LensSpace, lambda_max: u64) -> Result<SpectrumTable> {
    build_spectrum_with_budget(lens, lambda_max, DEFAULT_GRID_BUDGET)
}

pub fn build_spectrum_with_budget(
    lens: &LensSpace,
    lambda_max: u64,
    budget: u64,
) -> Result<SpectrumTable> {
    check_grid(lens.n(), lambda_max, budget)?;
    let counter = counter_for(lens, lambda_max);
    let lambdas: Vec<u64> = (2..=lambda_max).step_by(2).collect();
    let entries: BTreeMap<u64, SpectrumEntry> = lambdas
        .par_iter()
        .filter_map(|&lambda| entry_for(&counter, lambda).map(|e| (lambda, e)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(SpectrumTable {
        space: lens.clone(),
        lambda_max,
        entries,
    })
}

/// `mult(lambda) = sum over 2q(p+n-1) = lambda of dim H^G_{p,q}`.
pub fn multiplicity(lens: &LensSpace, lambda: i64) -> Result<BigUint> {
    let lambda = Eigenvalue::positive(lambda)?.value();
    let counter = counter_for(lens, lambda);
    Ok(entry_for(&counter, lambda)
        .map(|e| e.multiplicity)
        .unwrap_or_default())
}

/// `N_L(lambda)` as the double sum over `p` and `1 <= q <= lambda / (2(p+n-1))`.
pub fn lens_counting(lens: &LensSpace, lambda: u64) -> BigUint {
    let Some((p_max, _)) = grid_extent(lens.n(), lambda) else {
        return BigUint::zero();
    };
    let counter = counter_for(lens, lambda);
    let half = lambda / 2;
    let shift = lens.n() as u64 - 1;
    (0..=p_max)
        .into_par_iter()
        .map(|p| {
            (1..=half / (p + shift))
                .map(|q| counter.dim(Bidegree::new(p, q)))
                .sum::<BigUint>()
        })
        .sum()
}
