//! Small integer helpers shared across modules.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

/// Binomial coefficient `C(n, r)`, zero when `r > n`.
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::default();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Canonical residue of `x` modulo `k` in `[0, k)`.
pub fn residue(x: i64, k: u64) -> u64 {
    (x as i128).rem_euclid(k as i128) as u64
}

/// `gcd(k, a)` on a possibly negative `a`, with `gcd(k, 0) = k`.
pub fn gcd_signed(k: u64, a: i64) -> u64 {
    k.gcd(&a.unsigned_abs())
}

/// Indicator that `k` divides `a` (`a` may be negative).
pub fn divides(k: u64, a: i64) -> bool {
    if k == 0 {
        return a == 0;
    }
    (a as i128).rem_euclid(k as i128) == 0
}

/// All positive divisors of `m`, ascending.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Units of `Z/k`, ascending; `[1]` for `k = 1`.
pub fn units(k: u64) -> Vec<u64> {
    if k == 1 {
        return vec![1];
    }
    (1..k).filter(|a| a.gcd(&k) == 1).collect()
}

/// Serializes a `BigUint` as a plain integer when it fits in `u128`, else as a
/// decimal string.
pub fn serialize_big<S: serde::Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match u128::try_from(x) {
        Ok(v) => s.serialize_u128(v),
        Err(_) => s.collect_str(x),
    }
}

pub fn factorial_f64(n: u64) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(3, 4), BigUint::default());
        assert_eq!(binomial(60, 30), BigUint::from(118264581564861424u64));
    }

    #[test]
    fn residues_and_gcd() {
        assert_eq!(residue(-3, 5), 2);
        assert_eq!(residue(6, 5), 1);
        assert_eq!(gcd_signed(12, -4), 4);
        assert_eq!(gcd_signed(7, 0), 7);
        assert!(divides(3, -6));
        assert!(!divides(3, -5));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn unit_groups() {
        assert_eq!(units(12), vec![1, 5, 7, 11]);
        assert_eq!(units(2), vec![1]);
        assert_eq!(units(1), vec![1]);
        assert!(is_prime(11) && !is_prime(1) && !is_prime(9));
    }
}
