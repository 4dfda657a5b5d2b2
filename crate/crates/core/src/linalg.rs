//! Exact rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

pub fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    if !m[r][j].is_zero() {
                        let t = &f * &m[r][j];
                        m[i][j] -= t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of an integer matrix, computed with exact integer elimination.
pub fn rank_i64(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            if a[i][c] != 0 {
                let (x, y) = (a[rank][c], a[i][c]);
                let g = gcd(x, y);
                let (fx, fy) = (y / g, x / g);
                for j in c..cols {
                    a[i][j] = a[i][j] * fy - a[rank][j] * fx;
                }
                let rg = a[i].iter().fold(0i128, |acc, &v| gcd(acc, v));
                if rg > 1 {
                    for v in a[i].iter_mut() {
                        *v /= rg;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Columns `cols` of `m` (an integer matrix given by rows).
pub fn select_columns(m: &[Vec<i64>], cols: &[usize]) -> Vec<Vec<i64>> {
    m.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect()
}

/// Basis of the rational kernel `{x : m x = 0}`.
pub fn kernel(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = to_rational(m);
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Unique solution of `m x = rhs` if the columns of `m` are independent and the
/// system is consistent.
pub fn solve_unique(m: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<Q>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(rhs)
        .map(|(r, &b)| r.iter().map(|&x| q(x)).chain(std::iter::once(q(b))).collect())
        .collect();
    let pivots = rref(&mut a);
    if pivots.contains(&cols) || pivots.len() != cols {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][cols].clone();
    }
    Some(x)
}
