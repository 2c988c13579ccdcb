//! Rank computations that share no code with the Smith normal form path.

use num_bigint::BigInt;
use num_traits::Zero;

use super::IntegerMatrix;

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rank_over_rationals(m: &IntegerMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    let (nr, nc) = (m.rows(), m.cols());
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..nc {
        if rank == nr {
            break;
        }
        let Some(p) = (rank..nr).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..nr {
            for j in c + 1..nc {
                let v = (&a[rank][c] * &a[r][j] - &a[r][c] * &a[rank][j]) / &prev;
                a[r][j] = v;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// Rank over the prime field of order `p`.
pub fn rank_mod_prime(m: &IntegerMatrix, p: u64) -> usize {
    let reduce = |v: i64| v.rem_euclid(p as i64) as u64;
    let mut a: Vec<Vec<u64>> = m
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(reduce).collect())
        .collect();
    let (nr, nc) = (m.rows(), m.cols());
    let inverse = |x: u64| -> u64 {
        // Fermat
        let (mut base, mut exp, mut acc) = (x % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = (acc as u128 * base as u128 % p as u128) as u64;
            }
            base = (base as u128 * base as u128 % p as u128) as u64;
            exp >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..nc {
        if rank == nr {
            break;
        }
        let Some(piv) = (rank..nr).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inverse(a[rank][c]);
        for r in 0..nr {
            if r != rank && a[r][c] != 0 {
                let factor = (a[r][c] as u128 * inv as u128 % p as u128) as u64;
                for j in c..nc {
                    let sub = (factor as u128 * a[rank][j] as u128 % p as u128) as u64;
                    a[r][j] = (a[r][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}
