//! Inversion coefficients `o_k`, `c_k` of the free Meixner Wick products.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use super::MeixnerParams;
use crate::exact::{PolyExpr, Rational, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum CaseTag {
    I,
    II,
    IIPrime,
    III,
    IIIPrime,
    Generic,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::I => "I",
            CaseTag::II => "II",
            CaseTag::IIPrime => "II'",
            CaseTag::III => "III",
            CaseTag::IIIPrime => "III'",
            CaseTag::Generic => "generic",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InversionError {
    #[error("case {0} needs rational parameters")]
    NotRational(CaseTag),
    #[error("parameters violate the hypothesis of case {0}")]
    CaseHypothesis(CaseTag),
}

/// `o₁..o_K` and `c₁..c_K` (stored 0-based) with the most specific case
/// whose hypothesis the parameters satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InversionCoeffs {
    pub o: Vec<PolyExpr>,
    pub c: Vec<PolyExpr>,
    pub case: CaseTag,
}

impl InversionCoeffs {
    /// `o_k`, with `o_0 = 0`.
    pub fn o(&self, k: usize) -> PolyExpr {
        if k == 0 {
            PolyExpr::zero()
        } else {
            self.o[k - 1].clone()
        }
    }

    pub fn c(&self, k: usize) -> PolyExpr {
        self.c[k - 1].clone()
    }
}

/// `o_k = β o_{k−1} − γ o_{k−2}` from `o_0 = 0`, `o_1 = 1`, and
/// `c_k = α o_k − t o_{k−1}`.
pub fn inversion_coeffs(p: &MeixnerParams, k_max: usize) -> InversionCoeffs {
    let mut o = vec![PolyExpr::zero(), PolyExpr::one()];
    for k in 2..=k_max {
        let next = &(&p.beta * &o[k - 1]) - &(&p.gamma * &o[k - 2]);
        o.push(next);
    }
    let c = (1..=k_max).map(|k| &(&p.alpha * &o[k]) - &(&p.t * &o[k - 1])).collect();
    o.remove(0);
    o.truncate(k_max);
    InversionCoeffs { o, c, case: detect_case(p) }
}

fn rationals(p: &MeixnerParams) -> Option<[Rational; 4]> {
    Some([p.alpha.as_rational()?, p.beta.as_rational()?, p.t.as_rational()?, p.gamma.as_rational()?])
}

/// Most specific case for rational parameters; [`CaseTag::Generic`] when a
/// parameter is not a rational number.
pub fn detect_case(p: &MeixnerParams) -> CaseTag {
    let Some([a, b, t, g]) = rationals(p) else {
        return CaseTag::Generic;
    };
    if g.is_zero() {
        return CaseTag::I;
    }
    let two = Rational::from_integer(2.into());
    let four = Rational::from_integer(4.into());
    if &b * &b == &four * &g {
        if !a.is_zero() && &a * &b == &two * &t {
            CaseTag::IIIPrime
        } else {
            CaseTag::III
        }
    } else if !a.is_zero() && &t * &t - &a * &b * &t + &g * &a * &a == Rational::zero() {
        CaseTag::IIPrime
    } else {
        CaseTag::II
    }
}

fn hypothesis_holds(case: CaseTag, [a, b, t, g]: &[Rational; 4]) -> bool {
    let two = Rational::from_integer(2.into());
    let four = Rational::from_integer(4.into());
    let disc_zero = b * b == &four * g;
    match case {
        CaseTag::I => g.is_zero(),
        CaseTag::II => !g.is_zero() && !disc_zero,
        CaseTag::IIPrime => {
            !g.is_zero() && !disc_zero && !a.is_zero() && t * t - a * b * t + g * a * a == Rational::zero()
        }
        CaseTag::III => !g.is_zero() && disc_zero,
        CaseTag::IIIPrime => !g.is_zero() && disc_zero && !a.is_zero() && a * b == &two * t,
        CaseTag::Generic => true,
    }
}

/// `x + y√d` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Quad {
    x: Rational,
    y: Rational,
    d: Rational,
}

impl Quad {
    fn rational(x: Rational, d: &Rational) -> Quad {
        Quad { x, y: Rational::zero(), d: d.clone() }
    }

    fn pow(&self, k: usize) -> Quad {
        let mut acc = Quad::rational(Rational::one(), &self.d);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Division by `√d`.
    fn div_sqrt(&self) -> Quad {
        Quad { x: self.y.clone(), y: &self.x / &self.d, d: self.d.clone() }
    }

    fn scale(&self, c: &Rational) -> Quad {
        Quad { x: &self.x * c, y: &self.y * c, d: self.d.clone() }
    }

    fn into_rational(self) -> Option<Rational> {
        self.y.is_zero().then_some(self.x)
    }
}

impl Add for &Quad {
    type Output = Quad;
    fn add(self, r: &Quad) -> Quad {
        Quad { x: &self.x + &r.x, y: &self.y + &r.y, d: self.d.clone() }
    }
}

impl Sub for &Quad {
    type Output = Quad;
    fn sub(self, r: &Quad) -> Quad {
        Quad { x: &self.x - &r.x, y: &self.y - &r.y, d: self.d.clone() }
    }
}

impl Mul for &Quad {
    type Output = Quad;
    fn mul(self, r: &Quad) -> Quad {
        Quad {
            x: &self.x * &r.x + &self.y * &r.y * &self.d,
            y: &self.x * &r.y + &self.y * &r.x,
            d: self.d.clone(),
        }
    }
}

fn rpow(r: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

/// `o_k`, `c_k` for `k = 1..=k_max` from the closed form of `case`.
///
/// In case I the closed form of `c_k` is used for `k ≥ 2`; `c_1 = α`.
pub fn closed_form(case: CaseTag, p: &MeixnerParams, k_max: usize) -> Result<(Vec<Rational>, Vec<Rational>), InversionError> {
    let r = rationals(p).ok_or(InversionError::NotRational(case))?;
    if !hypothesis_holds(case, &r) {
        return Err(InversionError::CaseHypothesis(case));
    }
    let [a, b, t, g] = r;
    let two = Rational::from_integer(2.into());
    let mut o = Vec::with_capacity(k_max);
    let mut c = Vec::with_capacity(k_max);
    match case {
        CaseTag::I => {
            for k in 1..=k_max as i64 {
                o.push(rpow(&b, k - 1));
                c.push(if k == 1 { a.clone() } else { (&a * &b - &t) * rpow(&b, k - 2) });
            }
        }
        CaseTag::II => {
            // u, v = (β ± √D)/2 with D = β² − 4γ, and u − v = √D
            let d = &b * &b - Rational::from_integer(4.into()) * &g;
            let half = Rational::one() / &two;
            let u = Quad { x: &b * &half, y: half.clone(), d: d.clone() };
            let v = Quad { x: &b * &half, y: -half, d: d.clone() };
            for k in 1..=k_max {
                let dk = &u.pow(k) - &v.pow(k);
                let dk1 = &u.pow(k - 1) - &v.pow(k - 1);
                o.push(dk.div_sqrt().into_rational().expect("symmetric in u, v"));
                let num = &dk.scale(&a) - &dk1.scale(&t);
                c.push(num.div_sqrt().into_rational().expect("symmetric in u, v"));
            }
        }
        CaseTag::IIPrime => {
            let v = &t / &a;
            let u = &b - &v;
            let denom = &b - &two * &v;
            for k in 1..=k_max as i64 {
                o.push((rpow(&u, k) - rpow(&v, k)) / &denom);
                c.push(&a * rpow(&u, k - 1));
            }
        }
        CaseTag::III => {
            let h = &b / &two;
            for k in 1..=k_max as i64 {
                let kr = Rational::from_integer(k.into());
                o.push(&kr * rpow(&h, k - 1));
                c.push((&a * &kr * &h - &t * (&kr - Rational::one())) * rpow(&h, k - 2));
            }
        }
        CaseTag::IIIPrime => {
            let h = &b / &two;
            for k in 1..=k_max as i64 {
                o.push(Rational::from_integer(k.into()) * rpow(&h, k - 1));
                c.push(&a * rpow(&h, k - 1));
            }
        }
        CaseTag::Generic => {
            let ic = inversion_coeffs(p, k_max);
            o = ic.o.iter().map(|x| x.as_rational().unwrap()).collect();
            c = ic.c.iter().map(|x| x.as_rational().unwrap()).collect();
        }
    }
    Ok((o, c))
}

/// Checks `O(z)(1 − βz + γz²) = 1` and `C(z) = (α − tz) O(z)` modulo
/// `z^{k_max}`, with `O(z) = Σ o_{k+1} z^k` and `C(z) = Σ c_{k+1} z^k`.
pub fn check_generating_functions(p: &MeixnerParams, ic: &InversionCoeffs) -> bool {
    let k = ic.o.len();
    let o = Series::new(ic.o.clone());
    let c = Series::new(ic.c.clone());
    let denom = Series::new(vec![PolyExpr::one(), -&p.beta, p.gamma.clone()]).truncate(k);
    let lin = Series::new(vec![p.alpha.clone(), -&p.t]).truncate(k);
    &o * &denom == Series::one(k) && &lin * &o == c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn ints(v: &[PolyExpr]) -> Vec<i64> {
        v.iter().map(|x| x.as_i64().unwrap()).collect()
    }

    #[test]
    fn period_six() {
        let p = MeixnerParams::new(1, 1, 1, 1);
        let ic = inversion_coeffs(&p, 12);
        assert_eq!(ints(&ic.o)[..6], [1, 1, 0, -1, -1, 0]);
        assert_eq!(ints(&ic.c)[..6], [1, 0, -1, -1, 0, 1]);
        assert_eq!(ic.case, CaseTag::II);
        let (o, c) = closed_form(CaseTag::II, &p, 12).unwrap();
        assert_eq!(o, ic.o.iter().map(|x| x.as_rational().unwrap()).collect::<Vec<_>>());
        assert_eq!(c, ic.c.iter().map(|x| x.as_rational().unwrap()).collect::<Vec<_>>());
    }

    #[test]
    fn worked_examples() {
        // α = 1, γ = t, β = t + 1 at t = 3
        let p = MeixnerParams::new(1, 4, 3, 3);
        let ic = inversion_coeffs(&p, 10);
        assert_eq!(ic.case, CaseTag::IIPrime);
        assert!(ic.c.iter().all(|c| c.is_one()));
        // α = 0, γ = t = 1, β = 2
        let p = MeixnerParams::new(0, 2, 1, 1);
        let ic = inversion_coeffs(&p, 10);
        assert_eq!(ic.case, CaseTag::III);
        assert_eq!(ints(&ic.o), (1..=10).collect::<Vec<_>>());
        assert_eq!(ints(&ic.c), (1..=10).map(|k| -(k - 1)).collect::<Vec<_>>());
        assert!(check_generating_functions(&p, &ic));
    }

    #[test]
    fn forced_case_rejected() {
        let p = MeixnerParams::new(1, 1, 1, 1);
        assert_eq!(closed_form(CaseTag::I, &p, 3), Err(InversionError::CaseHypothesis(CaseTag::I)));
        assert!(closed_form(CaseTag::II, &MeixnerParams::formal(), 3).is_err());
        let _ = int(0);
    }
}
