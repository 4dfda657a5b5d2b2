//! Exact feasibility of `{x >= 0 : A x = b}` by a phase one simplex method with
//! Bland's rule, over the rationals.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::{q, Q};

/// A feasible point of `{x >= 0 : A x = b}`, or `None`.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    // tableau: m rows of [A | I | b], sign-normalised so b >= 0
    let width = n + m + 1;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row = Vec::with_capacity(width);
        for x in &a[i] {
            row.push(if neg { -x.clone() } else { x.clone() });
        }
        for j in 0..m {
            row.push(if i == j { Q::one() } else { Q::zero() });
        }
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    // objective row: minimise the sum of artificials, stored as reduced costs
    let mut obj = vec![Q::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded phase one objective cannot happen (bounded below by 0)
            break;
        };
        pivot(&mut t, r, enter);
        basis[r] = enter;
    }
    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Q>], r: usize, c: usize) {
    let inv = Q::one() / &t[r][c];
    for x in t[r].iter_mut() {
        *x *= &inv;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConePosition {
    Outside,
    Boundary,
    Interior,
}

fn int_rows(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

/// Whether `a` is a nonnegative combination of the columns of `m`.
pub fn in_cone(m: &[Vec<i64>], a: &[i64]) -> bool {
    let rhs: Vec<Q> = a.iter().map(|&x| q(x)).collect();
    feasible_point(&int_rows(m), &rhs).is_some()
}

/// Whether `m x = a` has a solution with `x >= 0` and `x_k >= w_k` for the given
/// weights, after homogenising: `m x' - lambda a = -m w`, `x', lambda >= 0`.
/// The columns of `m` must span a pointed cone whose only zero combination is trivial.
fn shifted_feasible(m: &[Vec<i64>], a: &[i64], w: &[i64]) -> bool {
    let rows: Vec<Vec<Q>> = m
        .iter()
        .zip(a)
        .map(|(r, &ai)| r.iter().map(|&x| q(x)).chain(std::iter::once(q(-ai))).collect())
        .collect();
    let rhs: Vec<Q> = m
        .iter()
        .map(|r| q(-r.iter().zip(w).map(|(x, y)| x * y).sum::<i64>()))
        .collect();
    feasible_point(&rows, &rhs).is_some()
}

pub fn cone_position(m: &[Vec<i64>], a: &[i64]) -> ConePosition {
    let cols = m.first().map_or(0, |r| r.len());
    if !in_cone(m, a) {
        return ConePosition::Outside;
    }
    if cols == 0 {
        return ConePosition::Interior;
    }
    if shifted_feasible(m, a, &vec![1; cols]) {
        ConePosition::Interior
    } else {
        ConePosition::Boundary
    }
}

/// Whether some point of `{x >= 0 : m x = a}` has `x_k > 0`.
pub fn edge_can_be_positive(m: &[Vec<i64>], a: &[i64], k: usize) -> bool {
    let cols = m.first().map_or(0, |r| r.len());
    let mut w = vec![0; cols];
    w[k] = 1;
    shifted_feasible(m, a, &w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_feasibility() {
        let a = vec![vec![q(1), q(1)]];
        let x = feasible_point(&a, &[q(3)]).unwrap();
        assert_eq!(&x[0] + &x[1], q(3));
        assert!(feasible_point(&a, &[q(-1)]).is_none());
    }

    #[test]
    fn positions() {
        let m = vec![vec![1, 1], vec![-1, 1]];
        assert_eq!(cone_position(&m, &[1, 0]), ConePosition::Interior);
        assert_eq!(cone_position(&m, &[1, 1]), ConePosition::Boundary);
        assert_eq!(cone_position(&m, &[0, 1]), ConePosition::Outside);
        assert!(!edge_can_be_positive(&m, &[1, 1], 0));
        assert!(edge_can_be_positive(&m, &[1, 1], 1));
    }
}
