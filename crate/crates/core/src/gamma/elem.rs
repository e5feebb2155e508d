//! Finite linear combinations of words in the noncommuting symbols `X(a)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Algebra, MWord};
use crate::exact::PolyExpr;

/// An element of `Γ(M)`: a map from words `X(w₁)⋯X(w_k)` to coefficients.
///
/// The same shape also stores elements written in a Wick basis, where a key
/// `(w₁, …, w_k)` stands for `W(w₁ ⊗ ⋯ ⊗ w_k)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GammaElem {
    terms: BTreeMap<Vec<MWord>, PolyExpr>,
}

impl GammaElem {
    pub fn zero() -> Self {
        GammaElem::default()
    }

    pub fn one() -> Self {
        GammaElem::scalar(PolyExpr::one())
    }

    pub fn scalar(c: PolyExpr) -> Self {
        GammaElem::term(Vec::new(), c)
    }

    pub fn term(key: Vec<MWord>, c: PolyExpr) -> Self {
        let mut g = GammaElem::zero();
        g.add_term(key, c);
        g
    }

    /// `X(w)`; zero when `w` vanishes in the algebra.
    pub fn x(alg: &Algebra, w: &[crate::exact::Letter]) -> Self {
        match alg.canon(w) {
            Some(w) => GammaElem::term(vec![w], PolyExpr::one()),
            None => GammaElem::zero(),
        }
    }

    /// `X(w₁)⋯X(w_k)`; zero when some factor vanishes.
    pub fn monomial(alg: &Algebra, words: &[MWord]) -> Self {
        let mut key = Vec::with_capacity(words.len());
        for w in words {
            match alg.canon(w) {
                Some(w) => key.push(w),
                None => return GammaElem::zero(),
            }
        }
        GammaElem::term(key, PolyExpr::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<MWord>, &PolyExpr)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &[MWord]) -> PolyExpr {
        self.terms.get(key).cloned().unwrap_or_else(PolyExpr::zero)
    }

    /// Coefficient of the empty word.
    pub fn scalar_part(&self) -> PolyExpr {
        self.coefficient(&[])
    }

    pub fn add_term(&mut self, key: Vec<MWord>, c: PolyExpr) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &GammaElem, c: &PolyExpr) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &PolyExpr) -> GammaElem {
        let mut out = GammaElem::zero();
        out.add_scaled(self, c);
        out
    }

    /// Largest word length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|k| k.len()).max().unwrap_or(0)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&PolyExpr) -> PolyExpr) -> GammaElem {
        let mut out = GammaElem::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), f(v));
        }
        out
    }

    /// The adjoint: reverses each word of `X` symbols, takes adjoints of the
    /// letters, and conjugates coefficients.
    pub fn star(&self, alg: &Algebra) -> GammaElem {
        let mut out = GammaElem::zero();
        for (k, v) in &self.terms {
            let key: Vec<MWord> = k.iter().rev().map(|w| alg.star_word(w)).collect();
            out.add_term(key, alg.conj(v));
        }
        out
    }
}

impl Add for &GammaElem {
    type Output = GammaElem;
    fn add(self, rhs: &GammaElem) -> GammaElem {
        let mut out = self.clone();
        out.add_scaled(rhs, &PolyExpr::one());
        out
    }
}

impl Sub for &GammaElem {
    type Output = GammaElem;
    fn sub(self, rhs: &GammaElem) -> GammaElem {
        let mut out = self.clone();
        out.add_scaled(rhs, &PolyExpr::int(-1));
        out
    }
}

impl Neg for &GammaElem {
    type Output = GammaElem;
    fn neg(self) -> GammaElem {
        self.scale(&PolyExpr::int(-1))
    }
}

impl Mul for &GammaElem {
    type Output = GammaElem;
    fn mul(self, rhs: &GammaElem) -> GammaElem {
        let mut out = GammaElem::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                let mut key = ka.clone();
                key.extend(kb.iter().cloned());
                out.add_term(key, va * vb);
            }
        }
        out
    }
}

impl fmt::Display for GammaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({v})")?;
            for w in k {
                f.write_str("X(")?;
                for l in w {
                    write!(f, "{l}")?;
                }
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Letter;

    fn x(l: u8) -> GammaElem {
        GammaElem::x(&Algebra::Free, &[Letter(l)])
    }

    #[test]
    fn products_concatenate() {
        let p = &x(0) * &x(1);
        assert_eq!(p.len(), 1);
        assert_ne!(p, &x(1) * &x(0));
        assert_eq!(&p * &GammaElem::one(), p);
    }

    #[test]
    fn star_reverses() {
        let alg = Algebra::Free;
        let g = &(&x(0) * &x(1)).scale(&PolyExpr::moment(vec![Letter(2), Letter(3)])) + &x(4);
        let s = g.star(&alg);
        let expected =
            &(&x(1) * &x(0)).scale(&PolyExpr::moment(vec![Letter(3), Letter(2)])) + &x(4);
        assert_eq!(s, expected);
        assert_eq!(s.star(&alg), g);
    }

    #[test]
    fn scalar_part() {
        let g = &GammaElem::scalar(PolyExpr::int(3)) + &x(0);
        assert_eq!(g.scalar_part(), PolyExpr::int(3));
        assert_eq!((&g - &g), GammaElem::zero());
    }
}
