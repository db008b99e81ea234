//! Eigenspaces `H_{p,q}` of the Kohn Laplacian on `S^{2n-1}` and the sphere
//! counting function.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{binomial, serialize_big};
use crate::error::{Error, Result};
use crate::lens::{Bidegree, Eigenvalue};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereEigenspace {
    pub n: usize,
    pub bidegree: Bidegree,
    #[serde(serialize_with = "serialize_big")]
    pub dim: BigUint,
    pub eigenvalue: Eigenvalue,
}

impl SphereEigenspace {
    pub fn new(n: usize, bidegree: Bidegree) -> Result<Self> {
        Ok(Self {
            n,
            bidegree,
            dim: dim_hpq(n, bidegree)?,
            eigenvalue: eigenvalue(n, bidegree)?,
        })
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::DimensionTooSmall(n))
    } else {
        Ok(())
    }
}

/// `dim H_{p,q} = (p+q+n-1) C(p+n-2, n-2) C(q+n-2, n-2) / (n-1)`.
///
/// The division is exact; a nonzero remainder is a bug and panics.
pub fn dim_hpq(n: usize, b: Bidegree) -> Result<BigUint> {
    check_n(n)?;
    let m = n as u64 - 2;
    let numerator =
        BigUint::from(b.p + b.q + n as u64 - 1) * binomial(b.p + m, m) * binomial(b.q + m, m);
    let (dim, rem) = numerator.div_rem(&BigUint::from(n as u64 - 1));
    assert!(rem.is_zero(), "dim H_{{p,q}} not integral at n={n}, {b:?}");
    Ok(dim)
}

pub fn eigenvalue(n: usize, b: Bidegree) -> Result<Eigenvalue> {
    check_n(n)?;
    Ok(Eigenvalue::of(n, b))
}

/// `N(lambda)`: positive eigenvalues at most `lambda`, with multiplicity.
///
/// Sums over `p` then over `1 <= q <= floor(lambda / (2(p+n-1)))`, so that the
/// `q = 0` kernel is excluded.
pub fn sphere_counting(n: usize, lambda: u64) -> Result<BigUint> {
    check_n(n)?;
    let half = lambda / 2;
    let shift = n as u64 - 1;
    let mut total = BigUint::zero();
    if half < shift {
        return Ok(total);
    }
    for p in 0..=(half - shift) {
        let q_max = half / (p + shift);
        for q in 1..=q_max {
            total += dim_hpq(n, Bidegree::new(p, q))?;
        }
    }
    Ok(total)
}
