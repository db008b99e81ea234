//! CR isometry and isospectrality of lens spaces.
//!
//! For `n = 2` and `k` an odd prime the following coincide: a unit `a` and a
//! permutation `sigma` with `l'_i = a l_{sigma(i)} mod k`; equal invariant
//! dimensions for every bidegree; equal Kohn spectra. This module decides
//! each condition independently so they can be compared.

mod rank;

pub use rank::rational_rank;

use num_integer::Integer;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{divisors, is_prime, units};
use crate::error::{Error, Result};
use crate::invariant::{InvariantCounter, RecurrenceTable};
use crate::lens::{gcd_invariant, Bidegree, LensSpace};
use crate::spectrum::build_spectrum;

/// `(a, sigma)` with `l'_i = a * l_{sigma(i)} mod k`. `sigma` is zero-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IsometryWitness {
    pub a: u64,
    pub sigma: Vec<usize>,
}

impl IsometryWitness {
    /// Applies the witness to `lens`, giving the weights it maps onto.
    pub fn apply(&self, lens: &LensSpace) -> Vec<u64> {
        let k = lens.k();
        self.sigma
            .iter()
            .map(|&s| (self.a as u128 * lens.weights()[s] as u128 % k as u128) as u64)
            .collect()
    }
}

impl Serialize for IsometryWitness {
    /// `sigma` is written one-based, as a permutation of `1..=n`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("IsometryWitness", 2)?;
        st.serialize_field("a", &self.a)?;
        let one_based: Vec<usize> = self.sigma.iter().map(|i| i + 1).collect();
        st.serialize_field("sigma", &one_based)?;
        st.end()
    }
}

fn same_shape(left: &LensSpace, right: &LensSpace) -> Result<()> {
    if left.n() != right.n() {
        return Err(Error::MismatchedSpaces("dimension"));
    }
    if left.k() != right.k() {
        return Err(Error::MismatchedSpaces("group order"));
    }
    Ok(())
}

/// Permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
        out.push(current.clone());
    }
}

/// Exhaustive search over units `a` and permutations `sigma`; the first hit in
/// `(a, sigma)` lexicographic order is returned.
pub fn condition4_witness(left: &LensSpace, right: &LensSpace) -> Result<Option<IsometryWitness>> {
    same_shape(left, right)?;
    let perms = permutations(left.n());
    for a in units(left.k()) {
        for sigma in &perms {
            let witness = IsometryWitness {
                a,
                sigma: sigma.clone(),
            };
            if witness.apply(left) == right.weights() {
                return Ok(Some(witness));
            }
        }
    }
    Ok(None)
}

/// Multiplicity tables agree at every even eigenvalue up to `lambda_max`.
///
/// The group orders may differ; only `n` has to match.
pub fn spectra_equal_up_to(left: &LensSpace, right: &LensSpace, lambda_max: u64) -> Result<bool> {
    if left.n() != right.n() {
        return Err(Error::MismatchedSpaces("dimension"));
    }
    if left == right {
        return Ok(true);
    }
    let a = build_spectrum(left, lambda_max)?;
    let b = build_spectrum(right, lambda_max)?;
    Ok(a.same_multiplicities(&b))
}

/// `dim H^G_{p,q} = dim H^{G'}_{p,q}`.
///
/// For `n = 2` this is decided exactly from `d` and the `k x k` base tables and
/// the cutoffs are ignored. For larger `n` only `p <= p_max`, `q <= q_max` is compared.
pub fn dims_equal(left: &LensSpace, right: &LensSpace, p_max: u64, q_max: u64) -> Result<bool> {
    same_shape(left, right)?;
    if left.n() == 2 {
        let (a, b) = (RecurrenceTable::new(left)?, RecurrenceTable::new(right)?);
        return Ok(a.d() == b.d() && a.base() == b.base());
    }
    let degree = p_max.max(q_max);
    let (a, b) = (
        InvariantCounter::new(left, degree),
        InvariantCounter::new(right, degree),
    );
    for p in 0..=p_max {
        for q in 0..=q_max {
            let bd = Bidegree::new(p, q);
            if a.dim(bd) != b.dim(bd) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Necessary condition for isospectrality of 3-dimensional lens spaces:
/// equal `d = gcd(k, l_1 - l_2)`.
pub fn d_invariant_check(left: &LensSpace, right: &LensSpace) -> Result<bool> {
    same_shape(left, right)?;
    Ok(gcd_invariant(left)? == gcd_invariant(right)?)
}

/// `c^lambda_{a,b}`: the number of `(p, q)` with `p = a`, `q = b mod k` and
/// `2q(p+1) = lambda`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CMatrix {
    pub k: u64,
    pub lambda: u64,
    pub entries: Vec<Vec<u64>>,
}

impl CMatrix {
    pub fn total(&self) -> u64 {
        self.entries.iter().flatten().sum()
    }

    /// Row-major `k^2` vector.
    pub fn flatten(&self) -> Vec<i64> {
        self.entries.iter().flatten().map(|&x| x as i64).collect()
    }
}

pub fn c_matrix(k: u64, lambda: u64) -> Result<CMatrix> {
    if k < 2 {
        return Err(Error::InvalidOrder(k as i64));
    }
    if lambda < 2 || lambda % 2 == 1 {
        return Err(Error::InvalidEigenvalue(lambda as i64));
    }
    let ku = k as usize;
    let mut entries = vec![vec![0u64; ku]; ku];
    let half = lambda / 2;
    for q in divisors(half) {
        let p = half / q - 1;
        entries[(p % k) as usize][(q % k) as usize] += 1;
    }
    Ok(CMatrix { k, lambda, entries })
}

/// Moves the top row to the bottom and shifts the others up.
pub fn t_apply<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let k = m.len();
    (0..k).map(|i| m[(i + 1) % k].clone()).collect()
}

/// Moves the bottom row to the top and shifts the others down.
pub fn t_inverse<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let k = m.len();
    (0..k).map(|i| m[(i + k - 1) % k].clone()).collect()
}

pub fn is_symmetric<T: PartialEq>(m: &[Vec<T>]) -> bool {
    (0..m.len()).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Rank over `Q` of `{C^lambda}` viewed as `k^2`-vectors.
///
/// For prime `k` and enough eigenvalues this reaches `k(k+1)/2`, the
/// dimension of `T(Sym_k)`.
pub fn span_dimension(k: u64, lambdas: &[u64]) -> Result<usize> {
    let rows = lambdas
        .iter()
        .map(|&l| c_matrix(k, l).map(|c| c.flatten()))
        .collect::<Result<Vec<_>>>()?;
    Ok(rational_rank(&rows))
}

/// `k(k+1)/2`.
pub fn symmetric_dimension(k: u64) -> usize {
    (k * (k + 1) / 2) as usize
}

/// One class of weight pairs under `(l_1, l_2) -> a (l_{sigma(1)}, l_{sigma(2)})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LensClass {
    pub representative: [u64; 2],
    pub members: Vec<[u64; 2]>,
    pub d: u64,
    /// Whether the classes are guaranteed to coincide with spectral classes,
    /// which needs `k` to be an odd prime.
    pub theorem_applies: bool,
}

/// Partitions all weight pairs in `((Z/k)^x)^2` into isometry classes.
///
/// Each class is represented by its lexicographically least member, which
/// always has `l_1 = 1`. Classes come out sorted by representative.
pub fn classify_all(k: u64) -> Result<Vec<LensClass>> {
    if k < 2 {
        return Err(Error::InvalidOrder(k as i64));
    }
    let us = units(k);
    let theorem_applies = k % 2 == 1 && is_prime(k);
    let mut seen = std::collections::BTreeSet::new();
    let mut classes = Vec::new();
    for &l1 in &us {
        for &l2 in &us {
            if seen.contains(&[l1, l2]) {
                continue;
            }
            let mut orbit: Vec<[u64; 2]> = us
                .iter()
                .flat_map(|&a| {
                    let (x, y) = (a * l1 % k, a * l2 % k);
                    [[x, y], [y, x]]
                })
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            seen.extend(orbit.iter().copied());
            let d = k.gcd(&(l1.abs_diff(l2)));
            classes.push(LensClass {
                representative: orbit[0],
                members: orbit,
                d,
                theorem_applies,
            });
        }
    }
    classes.sort_by_key(|c| c.representative);
    Ok(classes)
}
