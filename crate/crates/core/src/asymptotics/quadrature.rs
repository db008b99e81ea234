//! Adaptive Simpson quadrature on a finite interval.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Integrate over `[-truncation, truncation]`.
    pub truncation: f64,
    /// Target absolute error.
    pub tolerance: f64,
    /// Maximum bisection depth of any panel.
    pub max_refinements: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            truncation: 50.0,
            tolerance: 1e-10,
            max_refinements: 50,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.truncation > 0.0 && self.tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "quadrature needs truncation > 0 and tolerance > 0, got {self:?}"
            )));
        }
        Ok(())
    }
}

// Coarse panels guard against Simpson's rule accepting a flat-looking panel
// that hides a narrow peak.
const INITIAL_PANELS: usize = 64;

/// Integral of `f` over `[a, b]` with estimated absolute error at most `tolerance`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tolerance: f64,
    max_depth: u32,
) -> Result<f64> {
    let h = (b - a) / INITIAL_PANELS as f64;
    let panel_tol = tolerance / INITIAL_PANELS as f64;
    let mut total = 0.0;
    for i in 0..INITIAL_PANELS {
        let lo = a + h * i as f64;
        let hi = if i + 1 == INITIAL_PANELS { b } else { lo + h };
        let (flo, fhi) = (f(lo), f(hi));
        let mid = 0.5 * (lo + hi);
        let fmid = f(mid);
        let whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += refine(f, lo, hi, flo, fmid, fhi, whole, panel_tol, max_depth)
            .map_err(|_| Error::NonConvergence(max_depth))?;
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::NonConvergence(0));
    }
    Ok(refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}
