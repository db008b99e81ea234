//! The two-variable generating function `F(z, w) = sum dim H^G_{p,q} z^p w^q`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::invariant::InvariantCounter;
use crate::lens::{Bidegree, LensSpace};

/// Closed-form evaluation refuses points with a modulus above this.
pub const MODULUS_BOUND: f64 = 0.9;

/// Relative cutoff for the numerical rank in [`independence_probe`].
pub const RANK_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenFuncPoint {
    #[serde(serialize_with = "serialize_complex")]
    pub z: Complex64,
    #[serde(serialize_with = "serialize_complex")]
    pub w: Complex64,
}

fn serialize_complex<S: serde::Serializer>(
    c: &Complex64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    [c.re, c.im].serialize(s)
}

impl GenFuncPoint {
    pub fn new(z: Complex64, w: Complex64) -> Self {
        Self { z, w }
    }

    pub fn real(z: f64, w: f64) -> Self {
        Self::new(Complex64::new(z, 0.0), Complex64::new(w, 0.0))
    }

    pub fn max_modulus(&self) -> f64 {
        self.z.norm().max(self.w.norm())
    }

    fn check(&self, bound: f64) -> Result<()> {
        for (which, v) in [("z", self.z), ("w", self.w)] {
            if v.norm().is_nan() || v.norm() > bound {
                return Err(Error::DomainViolation {
                    which,
                    modulus: v.norm(),
                    bound,
                });
            }
        }
        Ok(())
    }
}

/// `count` points with `z`, `w` independently uniform on the closed disk of
/// the given radius. Same seed, same points.
pub fn sample_points(count: usize, radius: f64, seed: u64) -> Vec<GenFuncPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let r = radius * rng.gen::<f64>().sqrt();
        Complex64::from_polar(r, 2.0 * PI * rng.gen::<f64>())
    };
    (0..count)
        .map(|_| {
            let z = draw(&mut rng);
            let w = draw(&mut rng);
            GenFuncPoint::new(z, w)
        })
        .collect()
}

fn root_of_unity(k: u64, e: u64) -> Complex64 {
    let t = 2.0 * PI * (e % k) as f64 / k as f64;
    Complex64::new(t.cos(), t.sin())
}

/// The `m`-th group average term `(1 - zw) / prod (1 - zeta^{m l_i} z)(1 - zeta^{-m l_i} w)`.
fn average_term(lens: &LensSpace, m: u64, pt: &GenFuncPoint) -> Complex64 {
    let k = lens.k();
    let one = Complex64::new(1.0, 0.0);
    let mut den = one;
    for &l in lens.weights() {
        let e = (m as u128 * l as u128 % k as u128) as u64;
        let zeta = root_of_unity(k, e);
        den *= (one - zeta * pt.z) * (one - zeta.conj() * pt.w);
    }
    (one - pt.z * pt.w) / den
}

/// Averages the sphere generating function over the group.
///
/// Terms `m` and `k - m` are added together before accumulating, so for real
/// `z`, `w` the imaginary parts cancel pairwise.
pub fn genfunc_closed(lens: &LensSpace, pt: GenFuncPoint) -> Result<Complex64> {
    pt.check(MODULUS_BOUND)?;
    let k = lens.k();
    let mut sum = average_term(lens, 0, &pt);
    for m in 1..=k / 2 {
        let partner = k - m;
        if partner == m {
            sum += average_term(lens, m, &pt);
        } else {
            sum += average_term(lens, m, &pt) + average_term(lens, partner, &pt);
        }
    }
    Ok(sum / k as f64)
}

/// Same average written with factors `(z - zeta^{-m l_i})(w - zeta^{m l_i})`.
///
/// Each factor pair equals `(1 - zeta^{m l_i} z)(1 - zeta^{-m l_i} w)`, so this
/// agrees with [`genfunc_closed`] up to rounding.
pub fn genfunc_closed_shifted(lens: &LensSpace, pt: GenFuncPoint) -> Result<Complex64> {
    pt.check(MODULUS_BOUND)?;
    let k = lens.k();
    let one = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for m in 0..k {
        let mut den = one;
        for &l in lens.weights() {
            let zeta = root_of_unity(k, (m as u128 * l as u128 % k as u128) as u64);
            den *= (pt.z - zeta.conj()) * (pt.w - zeta);
        }
        sum += (one - pt.z * pt.w) / den;
    }
    Ok(sum / k as f64)
}

/// Truncated series over `p <= p_max`, `q <= q_max` with exact coefficients.
///
/// The omitted tail is at most [`series_tail_bound`].
pub fn genfunc_series(
    lens: &LensSpace,
    pt: GenFuncPoint,
    p_max: u64,
    q_max: u64,
) -> Result<Complex64> {
    pt.check(MODULUS_BOUND)?;
    let counter = InvariantCounter::new(lens, p_max.max(q_max));
    let mut total = Complex64::new(0.0, 0.0);
    let mut zp = Complex64::new(1.0, 0.0);
    for p in 0..=p_max {
        let mut row = Complex64::new(0.0, 0.0);
        let mut wq = Complex64::new(1.0, 0.0);
        for q in 0..=q_max {
            let c = counter
                .dim(Bidegree::new(p, q))
                .to_f64()
                .unwrap_or(f64::INFINITY);
            row += wq * c;
            wq *= pt.w;
        }
        total += zp * row;
        zp *= pt.z;
    }
    Ok(total)
}

/// Upper bound on the series tail beyond `(p_max, q_max)` for `|z| <= rz`, `|w| <= rw`.
///
/// Uses `dim H^G_{p,q} <= C(p+n-1, n-1) C(q+n-1, n-1)`, whose full double sum
/// is `(1 - rz)^{-n} (1 - rw)^{-n}`.
pub fn series_tail_bound(n: usize, rz: f64, rw: f64, p_max: u64, q_max: u64) -> f64 {
    let partial = |r: f64, top: u64| -> f64 {
        (0..=top)
            .map(|p| {
                binomial(p + n as u64 - 1, n as u64 - 1)
                    .to_f64()
                    .unwrap_or(f64::INFINITY)
                    * r.powi(p as i32)
            })
            .sum()
    };
    let full = (1.0 - rz).powi(-(n as i32)) * (1.0 - rw).powi(-(n as i32));
    (full - partial(rz, p_max) * partial(rw, q_max)).max(0.0)
}

/// Worst disagreement between closed form and series over a point set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenFuncCheck {
    pub lens: LensSpace,
    pub points: usize,
    pub cutoff: u64,
    pub max_deviation: f64,
    pub max_imaginary_on_real_axis: f64,
    pub tail_bound: f64,
}

pub fn closed_vs_series(
    lens: &LensSpace,
    points: &[GenFuncPoint],
    cutoff: u64,
) -> Result<GenFuncCheck> {
    let mut max_deviation = 0.0f64;
    let mut radius = 0.0f64;
    for pt in points {
        let closed = genfunc_closed(lens, *pt)?;
        let series = genfunc_series(lens, *pt, cutoff, cutoff)?;
        max_deviation = max_deviation.max((closed - series).norm());
        radius = radius.max(pt.max_modulus());
    }
    let real = genfunc_closed(lens, GenFuncPoint::real(radius / 2.0, radius / 3.0))?;
    Ok(GenFuncCheck {
        lens: lens.clone(),
        points: points.len(),
        cutoff,
        max_deviation,
        max_imaginary_on_real_axis: real.im.abs(),
        tail_bound: series_tail_bound(lens.n(), radius, radius, cutoff, cutoff),
    })
}

/// `1 / ((z - zeta^l)(w - zeta^{-l})(z - zeta^m)(w - zeta^{-m}))`.
pub fn basis_function(k: u64, l: u64, m: u64, pt: &GenFuncPoint) -> Complex64 {
    let (a, b) = (root_of_unity(k, l), root_of_unity(k, m));
    let den = (pt.z - a) * (pt.w - a.conj()) * (pt.z - b) * (pt.w - b.conj());
    den.inv()
}

/// Numerical rank of the `points x k(k+1)/2` evaluation matrix of the
/// functions `f_{l,m}`, `0 <= l <= m < k`.
pub fn independence_probe(k: u64, points: &[GenFuncPoint]) -> Result<usize> {
    if k < 2 {
        return Err(Error::InvalidOrder(k as i64));
    }
    let pairs: Vec<(u64, u64)> = (0..k).flat_map(|l| (l..k).map(move |m| (l, m))).collect();
    if points.len() < pairs.len() {
        return Err(Error::InsufficientSamples {
            needed: pairs.len(),
            got: points.len(),
        });
    }
    let matrix = DMatrix::from_fn(points.len(), pairs.len(), |i, j| {
        basis_function(k, pairs[j].0, pairs[j].1, &points[i])
    });
    let sv = matrix.singular_values();
    let top = sv.iter().cloned().fold(0.0f64, f64::max);
    Ok(sv.iter().filter(|&&s| s > RANK_TOLERANCE * top).count())
}
