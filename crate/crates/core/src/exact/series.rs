//! Truncated formal power series in one variable `z` with polynomial
//! coefficients.
//!
//! A series of order `N` stores the coefficients of `z^0 .. z^(N-1)`; it is
//! known modulo `z^N`. Binary operations truncate to the smaller order.

use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::poly::{PolyExpr, Rational};
use super::ExactError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<PolyExpr>,
}

impl Series {
    /// Series with the given coefficients; the order is `coeffs.len()`.
    pub fn new(coeffs: Vec<PolyExpr>) -> Self {
        Series { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        let mut c: Vec<PolyExpr> = coeffs.iter().take(order).map(|&v| PolyExpr::int(v)).collect();
        c.resize(order, PolyExpr::zero());
        Series { coeffs: c }
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![PolyExpr::zero(); order],
        }
    }

    pub fn one(order: usize) -> Self {
        Series::constant(PolyExpr::one(), order)
    }

    pub fn constant(c: PolyExpr, order: usize) -> Self {
        let mut s = Series::zero(order);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// The series `z` itself.
    pub fn z(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order > 1 {
            s.coeffs[1] = PolyExpr::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[PolyExpr] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<PolyExpr> {
        self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the stored range.
    pub fn coeff(&self, k: usize) -> PolyExpr {
        self.coeffs.get(k).cloned().unwrap_or_else(PolyExpr::zero)
    }

    pub fn truncate(&self, order: usize) -> Series {
        let mut c = self.coeffs.clone();
        c.resize(order, PolyExpr::zero());
        Series { coeffs: c }
    }

    pub fn scale(&self, c: &PolyExpr) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `z^k`; the order grows by `k`.
    pub fn shift_up(&self, k: usize) -> Series {
        let mut c = vec![PolyExpr::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Series { coeffs: c }
    }

    /// Division by `z^k`; fails unless the first `k` coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Result<Series, ExactError> {
        if self.coeffs.len() < k || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(ExactError::NotDivisible(k));
        }
        Ok(Series {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn inverse(&self) -> Result<Series, ExactError> {
        let n = self.order();
        if n == 0 {
            return Ok(Series::zero(0));
        }
        let c0 = self.coeffs[0]
            .as_rational()
            .filter(|c| !c.is_zero())
            .ok_or(ExactError::NonInvertibleConstant)?;
        let inv0 = Rational::one() / c0;
        let mut b = vec![PolyExpr::constant(inv0.clone())];
        let neg_inv0 = -inv0;
        for k in 1..n {
            let mut acc = PolyExpr::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &(&self.coeffs[i] * &b[k - i]);
                }
            }
            b.push(acc.scale(&neg_inv0));
        }
        Ok(Series { coeffs: b })
    }

    /// Square root with constant term 1; the input must have constant term 1.
    pub fn sqrt(&self) -> Result<Series, ExactError> {
        let n = self.order();
        if n == 0 {
            return Ok(Series::zero(0));
        }
        if !self.coeffs[0].is_one() {
            return Err(ExactError::SqrtConstant);
        }
        let half = Rational::new(1.into(), 2.into());
        let mut r = vec![PolyExpr::one()];
        for k in 1..n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..k {
                acc -= &(&r[i] * &r[k - i]);
            }
            r.push(acc.scale(&half));
        }
        Ok(Series { coeffs: r })
    }

    /// `self(inner(z))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series, ExactError> {
        if inner.order() > 0 && !inner.coeffs[0].is_zero() {
            return Err(ExactError::ComposeConstant);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut out = Series::zero(n);
        let mut power = Series::one(n);
        for k in 0..n {
            if !self.coeffs[k].is_zero() {
                out = &out + &power.scale(&self.coeffs[k]);
            }
            power = &power * &inner;
        }
        Ok(out)
    }

    /// Substitutes numeric values into every coefficient through `f`.
    pub fn map(&self, f: impl Fn(&PolyExpr) -> PolyExpr) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series {
            coeffs: (0..n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series {
            coeffs: (0..n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        let mut c = vec![PolyExpr::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if !rhs.coeffs[j].is_zero() {
                    c[i + j] += &(&self.coeffs[i] * &rhs.coeffs[j]);
                }
            }
        }
        Series { coeffs: c }
    }
}

/// Solves `m(z) = 1 + z m(z) r(z m(z))` for `m` modulo `z^order`.
///
/// Each pass of the fixed-point map fixes one more coefficient, so `order`
/// passes suffice; the result is checked against the equation before it is
/// returned.
pub fn solve_state_gf(r: &Series, order: usize) -> Result<Series, ExactError> {
    if order == 0 {
        return Ok(Series::zero(0));
    }
    if r.order() + 1 < order {
        return Err(ExactError::NoSolution);
    }
    let r = r.truncate(order);
    let step = |m: &Series| -> Result<Series, ExactError> {
        let zm = m.shift_up(1).truncate(order);
        let rz = r.compose(&zm)?;
        let rhs = &zm * &rz;
        Ok(&Series::one(order) + &rhs)
    };
    let mut m = Series::one(order);
    for _ in 0..order {
        m = step(&m)?;
    }
    if step(&m)? != m {
        return Err(ExactError::NoSolution);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::{int, Param};

    fn ints(s: &Series) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.as_i64().unwrap()).collect()
    }

    #[test]
    fn inverse_of_one_minus_z() {
        let s = Series::from_ints(&[1, -1], 6);
        assert_eq!(ints(&s.inverse().unwrap()), vec![1; 6]);
    }

    #[test]
    fn inverse_roundtrip_with_parameters() {
        let t = PolyExpr::param(Param::T);
        let s = Series::new(vec![PolyExpr::int(2), t.clone(), &t * &t, PolyExpr::int(5)]);
        let prod = &s * &s.inverse().unwrap();
        assert_eq!(prod, Series::one(4));
    }

    #[test]
    fn inverse_rejects_symbolic_constant() {
        let s = Series::new(vec![PolyExpr::param(Param::T)]);
        assert!(s.inverse().is_err());
    }

    #[test]
    fn sqrt_squares_back() {
        let s = Series::from_ints(&[1, -4], 8);
        let r = s.sqrt().unwrap();
        assert_eq!(&r * &r, s);
        // sqrt(1 - 4z) = 1 - 2 sum C_{k-1} z^k
        assert_eq!(ints(&r), vec![1, -2, -2, -4, -10, -28, -84, -264]);
    }

    #[test]
    fn compose_geometric() {
        // 1/(1-w) at w = z + z^2
        let outer = Series::from_ints(&[1, 1, 1, 1, 1, 1], 6);
        let inner = Series::from_ints(&[0, 1, 1], 6);
        let c = outer.compose(&inner).unwrap();
        // 1/(1 - z - z^2) gives Fibonacci numbers
        assert_eq!(ints(&c), vec![1, 1, 2, 3, 5, 8]);
    }

    #[test]
    fn compose_rejects_constant_inner() {
        let outer = Series::from_ints(&[1, 1], 3);
        let inner = Series::from_ints(&[1], 3);
        assert!(outer.compose(&inner).is_err());
    }

    #[test]
    fn state_equation_examples() {
        // r = 0 gives m = 1, r = 1 gives m = 1/(1 - z)
        assert_eq!(ints(&solve_state_gf(&Series::zero(6), 6).unwrap()), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(ints(&solve_state_gf(&Series::one(6), 6).unwrap()), vec![1; 6]);
        // r(w) = 1 + w gives m = 1 + z m + z^2 m^2, the Motzkin numbers
        let r = Series::from_ints(&[1, 1], 8);
        let m = solve_state_gf(&r, 8).unwrap();
        assert_eq!(ints(&m), vec![1, 1, 2, 4, 9, 21, 51, 127]);
    }

    #[test]
    fn shift_down_requires_divisibility() {
        let s = Series::from_ints(&[0, 0, 3], 4);
        assert_eq!(ints(&s.shift_down(2).unwrap()), vec![3, 0]);
        assert!(s.shift_down(3).is_err());
        let _ = int(0);
    }
}
