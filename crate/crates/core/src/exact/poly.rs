//! Multivariate polynomials with rational coefficients over the formal
//! parameters and moment symbols.
//!
//! A [`PolyExpr`] is stored as a sparse map from [`Monomial`] to a nonzero
//! [`Rational`]. Every symbol commutes with every other symbol, so a
//! monomial is a sorted list of `(symbol, exponent)` pairs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds the rational `p / q`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Builds the integer `p` as a rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An element of the coefficient algebra `M`, identified by a small integer.
///
/// Letters are rendered `a0`, `a1`, ...
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(pub u8);

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

/// Formal scalar parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Param {
    Alpha,
    Beta,
    Beta1,
    Beta2,
    Gamma,
    Q,
    T,
    X,
}

impl Param {
    pub const ALL: [Param; 8] = [
        Param::Alpha,
        Param::Beta,
        Param::Beta1,
        Param::Beta2,
        Param::Gamma,
        Param::Q,
        Param::T,
        Param::X,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::Alpha => "alpha",
            Param::Beta => "beta",
            Param::Beta1 => "beta1",
            Param::Beta2 => "beta2",
            Param::Gamma => "gamma",
            Param::Q => "q",
            Param::T => "t",
            Param::X => "x",
        }
    }

    pub fn from_name(name: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == name)
    }
}

/// A commuting indeterminate: a formal parameter or a moment symbol `E[w]`.
///
/// The word inside a moment symbol must already be in canonical form for the
/// algebra it came from; this module treats it as an opaque key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Param(Param),
    Moment(Vec<Letter>),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Param(p) => f.write_str(p.name()),
            Symbol::Moment(w) => {
                f.write_str("E[")?;
                for l in w {
                    write!(f, "{l}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Product of symbols with positive exponents, sorted by symbol.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn symbol(s: Symbol) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// Exponent of `s` in this monomial.
    pub fn exponent(&self, s: &Symbol) -> u32 {
        self.0
            .iter()
            .find(|(t, _)| t == s)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = &self.0[i];
            let (b, eb) = &other.0[j];
            match a.cmp(b) {
                std::cmp::Ordering::Less => {
                    out.push((a.clone(), *ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b.clone(), *eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.clone(), ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    fn from_factors(mut factors: Vec<(Symbol, u32)>) -> Monomial {
        factors.retain(|(_, e)| *e > 0);
        factors.sort();
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(factors.len());
        for (s, e) in factors {
            match out.last_mut() {
                Some((last, le)) if *last == s => *le += e,
                _ => out.push((s, e)),
            }
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact multivariate polynomial over the rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolyExpr {
    terms: BTreeMap<Monomial, Rational>,
}

impl PolyExpr {
    pub fn zero() -> Self {
        PolyExpr::default()
    }

    pub fn one() -> Self {
        PolyExpr::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = PolyExpr::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(c: i64) -> Self {
        PolyExpr::constant(int(c))
    }

    pub fn param(p: Param) -> Self {
        PolyExpr::from_monomial(Monomial::symbol(Symbol::Param(p)))
    }

    /// The moment symbol `E[w]`; `w` is expected to be canonical.
    pub fn moment(word: Vec<Letter>) -> Self {
        PolyExpr::from_monomial(Monomial::symbol(Symbol::Moment(word)))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut p = PolyExpr::zero();
        p.terms.insert(m, Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map(|r| r.is_one()).unwrap_or(false)
    }

    /// The value of a constant polynomial.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .get(&Monomial::one())
                .cloned(),
            _ => None,
        }
    }

    /// The value of a constant integer polynomial, if it fits in `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        let r = self.as_rational()?;
        if r.is_integer() {
            r.numer().to_i64()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &PolyExpr, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> PolyExpr {
        if c.is_zero() {
            return PolyExpr::zero();
        }
        PolyExpr {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> PolyExpr {
        let mut out = PolyExpr::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Highest exponent of `s` over all terms.
    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    /// Coefficient of `s^k`, as a polynomial in the remaining symbols.
    pub fn coefficient_of_power(&self, s: &Symbol, k: u32) -> PolyExpr {
        let mut out = PolyExpr::zero();
        for (m, c) in &self.terms {
            if m.exponent(s) == k {
                let rest: Vec<_> = m.0.iter().filter(|(t, _)| t != s).cloned().collect();
                out.add_term(Monomial(rest), c.clone());
            }
        }
        out
    }

    /// Replaces every occurrence of parameter `p` by `value`.
    pub fn substitute(&self, p: Param, value: &PolyExpr) -> PolyExpr {
        let sym = Symbol::Param(p);
        let mut powers: Vec<PolyExpr> = vec![PolyExpr::one()];
        let mut out = PolyExpr::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(&sym) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest: Vec<_> = m.0.iter().filter(|(t, _)| *t != sym).cloned().collect();
            let rest = PolyExpr {
                terms: std::iter::once((Monomial(rest), c.clone())).collect(),
            };
            out += &(&rest * &powers[e]);
        }
        out
    }

    /// Substitutes several parameters at once.
    pub fn substitute_all(&self, values: &[(Param, PolyExpr)]) -> PolyExpr {
        values
            .iter()
            .fold(self.clone(), |acc, (p, v)| acc.substitute(*p, v))
    }

    /// Rewrites every moment symbol through `f`; `f` returns the value that
    /// replaces `E[w]` (it may be a rational, zero, or another symbol).
    pub fn map_moments<F>(&self, mut f: F) -> PolyExpr
    where
        F: FnMut(&[Letter]) -> PolyExpr,
    {
        let mut out = PolyExpr::zero();
        for (m, c) in &self.terms {
            let mut acc = PolyExpr::constant(c.clone());
            let mut kept = Vec::new();
            for (s, e) in &m.0 {
                match s {
                    Symbol::Moment(w) => {
                        let v = f(w);
                        acc = &acc * &v.pow(*e);
                    }
                    Symbol::Param(_) => kept.push((s.clone(), *e)),
                }
            }
            let kept = PolyExpr::from_monomial(Monomial::from_factors(kept));
            out += &(&acc * &kept);
        }
        out
    }

    /// True when no moment symbol occurs.
    pub fn is_moment_free(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.0.iter().all(|(s, _)| matches!(s, Symbol::Param(_))))
    }
}

impl From<Rational> for PolyExpr {
    fn from(r: Rational) -> Self {
        PolyExpr::constant(r)
    }
}

impl From<i64> for PolyExpr {
    fn from(c: i64) -> Self {
        PolyExpr::int(c)
    }
}

impl From<i32> for PolyExpr {
    fn from(c: i32) -> Self {
        PolyExpr::int(c as i64)
    }
}

impl From<Param> for PolyExpr {
    fn from(p: Param) -> Self {
        PolyExpr::param(p)
    }
}

impl AddAssign<&PolyExpr> for PolyExpr {
    fn add_assign(&mut self, rhs: &PolyExpr) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&PolyExpr> for PolyExpr {
    fn sub_assign(&mut self, rhs: &PolyExpr) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &PolyExpr {
    type Output = PolyExpr;
    fn add(self, rhs: &PolyExpr) -> PolyExpr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for PolyExpr {
    type Output = PolyExpr;
    fn add(mut self, rhs: PolyExpr) -> PolyExpr {
        self += &rhs;
        self
    }
}

impl Sub for &PolyExpr {
    type Output = PolyExpr;
    fn sub(self, rhs: &PolyExpr) -> PolyExpr {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for PolyExpr {
    type Output = PolyExpr;
    fn sub(mut self, rhs: PolyExpr) -> PolyExpr {
        self -= &rhs;
        self
    }
}

impl Neg for &PolyExpr {
    type Output = PolyExpr;
    fn neg(self) -> PolyExpr {
        PolyExpr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for PolyExpr {
    type Output = PolyExpr;
    fn neg(self) -> PolyExpr {
        -&self
    }
}

impl Mul for &PolyExpr {
    type Output = PolyExpr;
    fn mul(self, rhs: &PolyExpr) -> PolyExpr {
        let mut out = PolyExpr::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for PolyExpr {
    type Output = PolyExpr;
    fn mul(self, rhs: PolyExpr) -> PolyExpr {
        &self * &rhs
    }
}

impl fmt::Display for PolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> PolyExpr {
        PolyExpr::param(Param::Q)
    }

    fn moment(ls: &[u8]) -> PolyExpr {
        PolyExpr::moment(ls.iter().map(|&l| Letter(l)).collect())
    }

    #[test]
    fn q_plus_q() {
        assert_eq!(&q() + &q(), q().scale(&int(2)));
        assert_eq!((&q() + &q()).to_string(), "2*q");
    }

    #[test]
    fn q_times_one_minus_q() {
        let p = &q() * &(&PolyExpr::one() - &q());
        let expected = &q() - &q().pow(2);
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "q - q^2");
    }

    #[test]
    fn moment_symbols_commute() {
        let ab = moment(&[0, 1]);
        let cd = moment(&[2, 3]);
        let p = &ab * &cd;
        assert_eq!(p, &cd * &ab);
        assert_eq!(p.len(), 1);
        let (m, c) = p.terms().next().unwrap();
        assert!(c.is_one());
        assert_eq!(m.degree(), 2);
        assert_eq!(p.to_string(), "E[a0a1]*E[a2a3]");
    }

    #[test]
    fn zero_terms_are_dropped() {
        let p = &q() - &q();
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn rendering_uses_fractions() {
        let p = &q().scale(&rat(-1, 2)) + &PolyExpr::constant(rat(3, 4));
        assert_eq!(p.to_string(), "3/4 - 1/2*q");
    }

    #[test]
    fn substitution() {
        let t = PolyExpr::param(Param::T);
        let p = &(&t * &t) + &q();
        let s = p.substitute(Param::T, &PolyExpr::int(3));
        assert_eq!(s, &PolyExpr::int(9) + &q());
    }

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-4"), Some(int(-4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&rat(-2, 4)), "-1/2");
    }

    #[test]
    fn map_moments_evaluates() {
        let p = &moment(&[0]) * &moment(&[0]) + q();
        let v = p.map_moments(|_| PolyExpr::int(2));
        assert_eq!(v, &PolyExpr::int(4) + &q());
    }
}
