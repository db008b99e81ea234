//! Rank over the rationals of integer matrices, by fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

fn normalize(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g > BigInt::from(1) {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Rank of the row set `rows` over `Q`.
///
/// Rows are eliminated by cross-multiplication and divided by their content
/// after each step, so entries stay integral and small.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    m.retain(|r| r.iter().any(|x| !x.is_zero()));
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        if rank == m.len() {
            break;
        }
        // smallest nonzero pivot keeps growth down
        let Some(pivot) = (rank..m.len())
            .filter(|&i| !m[i][col].is_zero())
            .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()))
        else {
            continue;
        };
        m.swap(rank, pivot);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = pivot_row[col].gcd(&row[col]);
            let scale_row = &pivot_row[col] / &g;
            let scale_pivot = &row[col] / &g;
            for (x, p) in row.iter_mut().zip(pivot_row) {
                *x = &*x * &scale_row - p * &scale_pivot;
            }
            normalize(row);
        }
        rank += 1;
    }
    rank
}
