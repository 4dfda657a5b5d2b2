//! Exact numbers: gamma values at half-integers, truncated multivariate series
//! and univariate rational polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Q;

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Number of ways to split `x` units among `m` labelled slots.
pub fn multichoose(x: u64, m: u64) -> BigUint {
    if m == 0 {
        return if x == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(x + m - 1, m - 1)
}

pub fn catalan(k: u64) -> BigUint {
    binomial(2 * k, k) / (k + 1)
}

/// `prod_{k=lo}^{hi} Cat(k)`.
pub fn catalan_product(lo: u64, hi: u64) -> BigUint {
    (lo..=hi).fold(BigUint::one(), |acc, k| acc * catalan(k))
}

pub fn rational_to_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `rational_part * sqrt(pi)^sqrt_pi_power`. Values of `gamma_half` have power 0
/// or 1; products and quotients may carry any integer power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfGamma {
    pub rational_part: Q,
    pub sqrt_pi_power: i64,
}

impl HalfGamma {
    pub fn one() -> Self {
        HalfGamma {
            rational_part: Q::one(),
            sqrt_pi_power: 0,
        }
    }

    pub fn rational(r: Q) -> Self {
        HalfGamma {
            rational_part: r,
            sqrt_pi_power: 0,
        }
    }
}

impl Mul for HalfGamma {
    type Output = HalfGamma;
    fn mul(self, o: HalfGamma) -> HalfGamma {
        HalfGamma {
            rational_part: self.rational_part * o.rational_part,
            sqrt_pi_power: self.sqrt_pi_power + o.sqrt_pi_power,
        }
    }
}

impl Div for HalfGamma {
    type Output = HalfGamma;
    fn div(self, o: HalfGamma) -> HalfGamma {
        HalfGamma {
            rational_part: self.rational_part / o.rational_part,
            sqrt_pi_power: self.sqrt_pi_power - o.sqrt_pi_power,
        }
    }
}

impl fmt::Display for HalfGamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = rational_to_string(&self.rational_part);
        match self.sqrt_pi_power {
            0 => write!(f, "{r}"),
            1 => write!(f, "{r}*sqrt(pi)"),
            p => write!(f, "{r}*sqrt(pi)^{p}"),
        }
    }
}

/// `Gamma(two_k / 2)`.
pub fn gamma_half(two_k: i64) -> Result<HalfGamma> {
    if two_k <= 0 {
        return Err(Error::Pole(two_k));
    }
    if two_k % 2 == 0 {
        let n = (two_k / 2 - 1) as u64;
        return Ok(HalfGamma::rational(Q::from_integer(factorial(n).into())));
    }
    // Gamma(m + 1/2) = (2m)! / (4^m m!) sqrt(pi)
    let m = ((two_k - 1) / 2) as u64;
    let num = BigInt::from(factorial(2 * m));
    let den = BigInt::from(factorial(m)) * BigInt::from(4u32).pow(m as u32);
    Ok(HalfGamma {
        rational_part: Q::new(num, den),
        sqrt_pi_power: 1,
    })
}

/// Multivariate series with exact coefficients, truncated at a per-variable cap.
/// Exponents may be negative; a cap of `None` leaves a variable unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPoly {
    cap: Vec<Option<i32>>,
    terms: BTreeMap<Vec<i32>, Q>,
}

impl TruncatedPoly {
    pub fn zero(cap: Vec<Option<i32>>) -> Self {
        TruncatedPoly {
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(cap: Vec<Option<i32>>) -> Self {
        let mut p = Self::zero(cap);
        let m = p.vars();
        p.add_term(vec![0; m], Q::one());
        p
    }

    /// Caps given as plain exponents.
    pub fn capped(cap: &[i32]) -> Vec<Option<i32>> {
        cap.iter().map(|&c| Some(c)).collect()
    }

    pub fn from_terms(cap: Vec<Option<i32>>, terms: impl IntoIterator<Item = (Vec<i32>, Q)>) -> Self {
        let mut p = Self::zero(cap);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.cap.len()
    }

    pub fn cap(&self) -> &[Option<i32>] {
        &self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i32>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn within(cap: &[Option<i32>], e: &[i32]) -> bool {
        cap.iter().zip(e).all(|(c, &x)| c.map_or(true, |c| x <= c))
    }

    /// Add `c x^e`, dropping it if it exceeds the cap.
    pub fn add_term(&mut self, e: Vec<i32>, c: Q) {
        assert_eq!(e.len(), self.vars(), "exponent arity");
        if c.is_zero() || !Self::within(&self.cap, &e) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, e: &[i32]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &TruncatedPoly) -> Result<TruncatedPoly> {
        if self.vars() != o.vars() {
            return Err(Error::Arity(self.vars(), o.vars()));
        }
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn scale(&self, s: &Q) -> TruncatedPoly {
        let mut r = Self::zero(self.cap.clone());
        for (e, c) in &self.terms {
            r.add_term(e.clone(), c * s);
        }
        r
    }
}

/// Product of `p` and `q` with every monomial above `cap` discarded.
pub fn poly_mul_truncated(
    p: &TruncatedPoly,
    q: &TruncatedPoly,
    cap: &[Option<i32>],
) -> Result<TruncatedPoly> {
    if p.vars() != q.vars() {
        return Err(Error::Arity(p.vars(), q.vars()));
    }
    if cap.len() != p.vars() {
        return Err(Error::Arity(p.vars(), cap.len()));
    }
    let mut r = TruncatedPoly::zero(cap.to_vec());
    for (e1, c1) in &p.terms {
        // monomials of q are nonnegative in practice; skip p terms already above cap
        for (e2, c2) in &q.terms {
            let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            if TruncatedPoly::within(cap, &e) {
                r.add_term(e, c1 * c2);
            }
        }
    }
    Ok(r)
}

fn check_geometric(l: &TruncatedPoly, cap: &[Option<i32>]) -> Result<()> {
    if l.vars() != cap.len() {
        return Err(Error::Arity(l.vars(), cap.len()));
    }
    for e in l.terms.keys() {
        if e.iter().all(|&x| x == 0) {
            return Err(Error::NotInvertible);
        }
        if e.iter().any(|&x| x < 0) {
            return Err(Error::Precondition(
                "geometric series needs nonnegative exponents; substitute monomials first".into(),
            ));
        }
        for (v, &x) in e.iter().enumerate() {
            if x > 0 && cap[v].is_none() {
                return Err(Error::Precondition(format!(
                    "variable {v} needs a finite cap for the geometric series"
                )));
            }
        }
    }
    Ok(())
}

/// `sum_{k >= 0} l^k` truncated at `cap`, i.e. `(1 - l)^{-1}`.
pub fn geometric_inverse(l: &TruncatedPoly, cap: &[Option<i32>]) -> Result<TruncatedPoly> {
    mul_geometric_inverse(&TruncatedPoly::one(cap.to_vec()), l, cap)
}

/// `p * (1 - l)^{-1}` truncated at `cap`, without forming the inverse.
pub fn mul_geometric_inverse(
    p: &TruncatedPoly,
    l: &TruncatedPoly,
    cap: &[Option<i32>],
) -> Result<TruncatedPoly> {
    check_geometric(l, cap)?;
    if p.vars() != l.vars() {
        return Err(Error::Arity(p.vars(), l.vars()));
    }
    let mut total = TruncatedPoly::from_terms(cap.to_vec(), p.terms.clone());
    let mut term = total.clone();
    loop {
        term = poly_mul_truncated(&term, l, cap)?;
        if term.is_zero() {
            break;
        }
        total = total.add(&term)?;
    }
    Ok(total)
}

/// Univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub coeffs: Vec<Q>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, t: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * t + c)
    }

    /// Unique polynomial of degree `< points.len()` through the points.
    pub fn interpolate(points: &[(Q, Q)]) -> Polynomial {
        // Newton divided differences, then expand
        let n = points.len();
        let xs: Vec<Q> = points.iter().map(|p| p.0.clone()).collect();
        let mut dd: Vec<Q> = points.iter().map(|p| p.1.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
            }
        }
        let mut coeffs = vec![Q::zero(); n.max(1)];
        // Horner on the Newton form
        let mut acc = vec![Q::zero(); n + 1];
        for i in (0..n).rev() {
            // acc = acc * (t - x_i) + dd[i]
            let mut next = vec![Q::zero(); n + 1];
            for k in 0..n {
                if !acc[k].is_zero() {
                    next[k + 1] += &acc[k];
                    next[k] -= &acc[k] * &xs[i];
                }
            }
            next[0] += &dd[i];
            acc = next;
        }
        for (k, c) in acc.into_iter().enumerate().take(n) {
            coeffs[k] = c;
        }
        Polynomial::new(coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let s = rational_to_string(&abs);
            match k {
                0 => write!(f, "{s}")?,
                _ => {
                    if abs != Q::one() {
                        write!(f, "{s}*")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Convert an integral rational to a `BigInt`, or fail.
pub fn to_integer(x: &Q) -> Result<BigInt> {
    if x.is_integer() {
        Ok(x.to_integer())
    } else {
        Err(Error::Internal(format!(
            "expected an integer, got {}",
            rational_to_string(x)
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn r(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn gamma_values() {
        assert_eq!(
            gamma_half(1).unwrap(),
            HalfGamma {
                rational_part: r(1, 1),
                sqrt_pi_power: 1
            }
        );
        assert_eq!(gamma_half(4).unwrap(), HalfGamma::rational(r(1, 1)));
        assert_eq!(
            gamma_half(5).unwrap(),
            HalfGamma {
                rational_part: r(3, 4),
                sqrt_pi_power: 1
            }
        );
        assert_eq!(gamma_half(12).unwrap(), HalfGamma::rational(r(120, 1)));
        assert_eq!(gamma_half(0), Err(Error::Pole(0)));
        assert_eq!(gamma_half(-3), Err(Error::Pole(-3)));
    }

    #[test]
    fn gamma_recurrence() {
        // Gamma(x + 1) = x Gamma(x) for x = k/2
        for two_k in 1..40 {
            let lhs = gamma_half(two_k + 2).unwrap();
            let rhs = HalfGamma::rational(r(two_k, 2)) * gamma_half(two_k).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn truncated_products() {
        let cap = TruncatedPoly::capped(&[1]);
        let one_plus_x = TruncatedPoly::from_terms(cap.clone(), [(vec![0], r(1, 1)), (vec![1], r(1, 1))]);
        let sq = poly_mul_truncated(&one_plus_x, &one_plus_x, &cap).unwrap();
        assert_eq!(sq, TruncatedPoly::from_terms(cap.clone(), [(vec![0], r(1, 1)), (vec![1], r(2, 1))]));
        let one = TruncatedPoly::one(cap.clone());
        assert_eq!(poly_mul_truncated(&sq, &one, &cap).unwrap(), sq);

        // geometric series in x to degree 3, times (1 - x): 1 - x^4 truncated to 1
        let cap3 = TruncatedPoly::capped(&[3]);
        let x = TruncatedPoly::from_terms(cap3.clone(), [(vec![1], r(1, 1))]);
        let g = geometric_inverse(&x, &cap3).unwrap();
        assert_eq!(g.terms().len(), 4);
        let one_minus_x = TruncatedPoly::from_terms(cap3.clone(), [(vec![0], r(1, 1)), (vec![1], r(-1, 1))]);
        let prod = poly_mul_truncated(&g, &one_minus_x, &cap3).unwrap();
        assert_eq!(prod, TruncatedPoly::one(cap3.clone()));
    }

    #[test]
    fn geometric_two_vars() {
        let cap = TruncatedPoly::capped(&[1, 1]);
        let l = TruncatedPoly::from_terms(cap.clone(), [(vec![1, 0], r(1, 1)), (vec![0, 1], r(1, 1))]);
        let g = geometric_inverse(&l, &cap).unwrap();
        let expect = TruncatedPoly::from_terms(
            cap.clone(),
            [
                (vec![0, 0], r(1, 1)),
                (vec![1, 0], r(1, 1)),
                (vec![0, 1], r(1, 1)),
                (vec![1, 1], r(2, 1)),
            ],
        );
        assert_eq!(g, expect);
        let zero = TruncatedPoly::zero(cap.clone());
        assert_eq!(geometric_inverse(&zero, &cap).unwrap(), TruncatedPoly::one(cap.clone()));
        let bad = TruncatedPoly::one(cap.clone());
        assert_eq!(geometric_inverse(&bad, &cap), Err(Error::NotInvertible));
        let other = TruncatedPoly::one(TruncatedPoly::capped(&[1]));
        assert!(matches!(poly_mul_truncated(&g, &other, &cap), Err(Error::Arity(2, 1))));
    }

    #[test]
    fn interpolation() {
        let pts: Vec<(Q, Q)> = (1..=3).map(|t| (r(t, 1), r(t * t + 1, 1))).collect();
        let p = Polynomial::interpolate(&pts);
        assert_eq!(p.coeffs, vec![r(1, 1), r(0, 1), r(1, 1)]);
        assert_eq!(p.to_string(), "t^2 + 1");
        let c = Polynomial::interpolate(&[(r(2, 1), r(1, 1))]);
        assert_eq!(c.coeffs, vec![r(1, 1)]);
    }

    #[test]
    fn catalans() {
        let v: Vec<u64> = (0..8).map(|k| catalan(k).to_u64().unwrap()).collect();
        assert_eq!(v, vec![1, 1, 2, 5, 14, 42, 132, 429]);
        assert_eq!(catalan_product(0, 5).to_u64(), Some(5880));
        assert_eq!(multichoose(0, 0).to_u64(), Some(1));
        assert_eq!(multichoose(2, 3).to_u64(), Some(6));
    }
}
