//! Wick products (Kailath-Segall polynomials) for the six families and the
//! `q`-deformed recursion.
//!
//! Every family except [`WickFamily::Q`] is defined by appending one argument
//! on the right: `W(t ⊗ a) = W(t) X(a) − Σ c · W(t')`, where the correction
//! terms `(c, t')` are listed by [`Wick::corrections`]. The `q` family
//! multiplies on the left instead. The same correction terms, moved to the
//! other side, rewrite products `W(t) X(a)` in the Wick basis.

pub mod cumulants;
pub mod properties;
pub mod report;
pub mod verify;

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use crate::exact::{Param, PolyExpr};
use crate::gamma::{Algebra, GammaElem, MWord};
use crate::meixner::MeixnerParams;

pub use report::Report;

/// Weights of the seven-term incomplete-permutation recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IprmWeights {
    pub alpha: PolyExpr,
    pub beta1: PolyExpr,
    pub beta2: PolyExpr,
    pub t: PolyExpr,
    pub gamma: PolyExpr,
}

impl IprmWeights {
    /// All five weights formal.
    pub fn formal() -> Self {
        IprmWeights {
            alpha: Param::Alpha.into(),
            beta1: Param::Beta1.into(),
            beta2: Param::Beta2.into(),
            t: Param::T.into(),
            gamma: Param::Gamma.into(),
        }
    }

    pub fn ones() -> Self {
        IprmWeights {
            alpha: PolyExpr::one(),
            beta1: PolyExpr::one(),
            beta2: PolyExpr::one(),
            t: PolyExpr::one(),
            gamma: PolyExpr::one(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WickFamily {
    P12,
    Ip,
    Iprm,
    IprmWeighted(IprmWeights),
    Inc12,
    Inc,
    Meixner(MeixnerParams),
    Q(PolyExpr),
}

impl WickFamily {
    pub fn name(&self) -> &'static str {
        match self {
            WickFamily::P12 => "P12",
            WickFamily::Ip => "IP",
            WickFamily::Iprm => "IPRM",
            WickFamily::IprmWeighted(_) => "IPRM_weighted",
            WickFamily::Inc12 => "INC12",
            WickFamily::Inc => "INC",
            WickFamily::Meixner(_) => "MEIXNER",
            WickFamily::Q(_) => "Q",
        }
    }

    /// The six families with formal parameters, in a fixed order.
    pub fn six() -> Vec<WickFamily> {
        vec![
            WickFamily::P12,
            WickFamily::Ip,
            WickFamily::Iprm,
            WickFamily::Inc12,
            WickFamily::Inc,
            WickFamily::Meixner(MeixnerParams::formal()),
        ]
    }

    pub fn q_formal() -> Self {
        WickFamily::Q(Param::Q.into())
    }

    pub fn is_left(&self) -> bool {
        matches!(self, WickFamily::Q(_))
    }
}

impl fmt::Display for WickFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An element written in a Wick basis: key `(w₁, …, w_k)` stands for
/// `W(w₁ ⊗ ⋯ ⊗ w_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WickElem {
    pub family: WickFamily,
    pub body: GammaElem,
}

impl WickElem {
    pub fn one(family: &WickFamily) -> Self {
        WickElem { family: family.clone(), body: GammaElem::one() }
    }

    /// Coefficient of `W(∅) = 1`.
    pub fn unit_coefficient(&self) -> PolyExpr {
        self.body.scalar_part()
    }
}

type Terms = Vec<(PolyExpr, Vec<MWord>)>;

fn without(t: &[MWord], skip: &[usize]) -> Vec<MWord> {
    t.iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .map(|(_, w)| w.clone())
        .collect()
}

/// Recursion engine for one family over one coefficient algebra.
///
/// Expansions and rewrites are memoized per engine; an engine is meant to be
/// used by a single verification case.
pub struct Wick<'a> {
    pub family: &'a WickFamily,
    pub alg: &'a Algebra,
    expand_memo: RefCell<HashMap<Vec<MWord>, GammaElem>>,
    basis_memo: RefCell<HashMap<Vec<MWord>, GammaElem>>,
}

impl<'a> Wick<'a> {
    pub fn new(family: &'a WickFamily, alg: &'a Algebra) -> Self {
        Wick {
            family,
            alg,
            expand_memo: RefCell::new(HashMap::new()),
            basis_memo: RefCell::new(HashMap::new()),
        }
    }

    fn push(&self, out: &mut Terms, c: PolyExpr, head: Vec<MWord>, product: &[&MWord]) {
        if c.is_zero() {
            return;
        }
        let joined: MWord = product.iter().flat_map(|w| w.iter().copied()).collect();
        if let Some(w) = self.alg.canon(&joined) {
            let mut t = head;
            t.push(w);
            out.push((c, t));
        }
    }

    fn e(&self, product: &[&MWord]) -> PolyExpr {
        let joined: MWord = product.iter().flat_map(|w| w.iter().copied()).collect();
        self.alg.expect(&joined)
    }

    /// Correction terms `(c, t')` with `W(t) X(a) = W(t ⊗ a) + Σ c W(t')`
    /// for the right-appending families.
    pub fn corrections(&self, t: &[MWord], a: &MWord) -> Terms {
        let n = t.len();
        let mut out = Terms::new();
        let scalar = |out: &mut Terms, c: PolyExpr, rest: Vec<MWord>| {
            if !c.is_zero() {
                out.push((c, rest));
            }
        };
        match self.family {
            WickFamily::P12 => {
                for i in 0..n {
                    scalar(&mut out, self.e(&[&t[i], a]), without(t, &[i]));
                }
            }
            WickFamily::Ip => {
                scalar(&mut out, self.e(&[a]), t.to_vec());
                for i in 0..n {
                    self.push(&mut out, PolyExpr::one(), without(t, &[i]), &[&t[i], a]);
                }
                for i in 0..n {
                    scalar(&mut out, self.e(&[&t[i], a]), without(t, &[i]));
                }
            }
            WickFamily::Iprm => return self.iprm_corrections(t, a, &IprmWeights::ones()),
            WickFamily::IprmWeighted(w) => return self.iprm_corrections(t, a, w),
            WickFamily::Inc12 => {
                if n >= 1 {
                    scalar(&mut out, self.e(&[&t[n - 1], a]), t[..n - 1].to_vec());
                }
            }
            WickFamily::Inc => {
                scalar(&mut out, self.e(&[a]), t.to_vec());
                if n >= 1 {
                    self.push(&mut out, PolyExpr::one(), t[..n - 1].to_vec(), &[&t[n - 1], a]);
                    scalar(&mut out, self.e(&[&t[n - 1], a]), t[..n - 1].to_vec());
                }
            }
            WickFamily::Meixner(p) => {
                scalar(&mut out, &p.alpha * &self.e(&[a]), t.to_vec());
                if n >= 1 {
                    self.push(&mut out, p.beta.clone(), t[..n - 1].to_vec(), &[&t[n - 1], a]);
                    scalar(&mut out, &p.t * &self.e(&[&t[n - 1], a]), t[..n - 1].to_vec());
                }
                if n >= 2 {
                    self.push(&mut out, p.gamma.clone(), t[..n - 2].to_vec(), &[&t[n - 2], &t[n - 1], a]);
                }
            }
            WickFamily::Q(_) => panic!("the q family multiplies on the left"),
        }
        out
    }

    fn iprm_corrections(&self, t: &[MWord], a: &MWord, w: &IprmWeights) -> Terms {
        let n = t.len();
        let mut out = Terms::new();
        let c = &w.alpha * &self.e(&[a]);
        if !c.is_zero() {
            out.push((c, t.to_vec()));
        }
        for i in 0..n {
            self.push(&mut out, w.beta1.clone(), without(t, &[i]), &[&t[i], a]);
        }
        for i in 0..n {
            self.push(&mut out, w.beta2.clone(), without(t, &[i]), &[a, &t[i]]);
        }
        for i in 0..n {
            let c = &w.t * &self.e(&[&t[i], a]);
            if !c.is_zero() {
                out.push((c, without(t, &[i])));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                self.push(&mut out, w.gamma.clone(), without(t, &[i, j]), &[&t[i], a, &t[j]]);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                self.push(&mut out, w.gamma.clone(), without(t, &[i, j]), &[&t[j], a, &t[i]]);
            }
        }
        out
    }

    /// Correction terms `(c, t')` with
    /// `X(a) W_q(t) = W_q(a ⊗ t) + Σ c W_q(t')`.
    pub fn left_corrections(&self, a: &MWord, t: &[MWord]) -> Terms {
        let q = match self.family {
            WickFamily::Q(q) => q,
            _ => panic!("left corrections exist only for the q family"),
        };
        let mut out = Terms::new();
        let mut qpow = PolyExpr::one();
        for i in 0..t.len() {
            let c = &qpow * &self.e(&[a, &t[i]]);
            if !c.is_zero() {
                out.push((c, without(t, &[i])));
            }
            if let Some(w) = self.alg.mul(a, &t[i]) {
                if !qpow.is_zero() {
                    let mut key = vec![w];
                    key.extend(without(t, &[i]));
                    out.push((qpow.clone(), key));
                }
            }
            qpow = &qpow * q;
        }
        let c = self.e(&[a]);
        if !c.is_zero() {
            out.push((c, t.to_vec()));
        }
        out
    }

    /// `W(t)` expanded in monomials `X(w₁)⋯X(w_k)`.
    pub fn expand(&self, t: &[MWord]) -> GammaElem {
        if t.is_empty() {
            return GammaElem::one();
        }
        if let Some(g) = self.expand_memo.borrow().get(t) {
            return g.clone();
        }
        let result = if self.family.is_left() {
            let (a, rest) = (&t[0], &t[1..]);
            let mut g = &GammaElem::x(self.alg, a) * &self.expand(rest);
            for (c, u) in self.left_corrections(a, rest) {
                g.add_scaled(&self.expand(&u), &-c);
            }
            g
        } else {
            let n = t.len();
            let (head, a) = (&t[..n - 1], &t[n - 1]);
            let mut g = &self.expand(head) * &GammaElem::x(self.alg, a);
            for (c, u) in self.corrections(head, a) {
                g.add_scaled(&self.expand(&u), &-c);
            }
            g
        };
        self.expand_memo.borrow_mut().insert(t.to_vec(), result.clone());
        result
    }

    /// `w · X(a)` in the Wick basis (right-appending families).
    pub fn rmul_x(&self, w: &WickElem, a: &MWord) -> WickElem {
        let mut out = GammaElem::zero();
        for (t, c) in w.body.terms() {
            let mut key = t.clone();
            key.push(a.clone());
            out.add_term(key, c.clone());
            for (d, u) in self.corrections(t, a) {
                out.add_term(u, c * &d);
            }
        }
        WickElem { family: self.family.clone(), body: out }
    }

    /// `X(a) · w` in the Wick basis (the q family).
    pub fn lmul_x(&self, a: &MWord, w: &WickElem) -> WickElem {
        let mut out = GammaElem::zero();
        for (t, c) in w.body.terms() {
            let mut key = vec![a.clone()];
            key.extend(t.iter().cloned());
            out.add_term(key, c.clone());
            for (d, u) in self.left_corrections(a, t) {
                out.add_term(u, c * &d);
            }
        }
        WickElem { family: self.family.clone(), body: out }
    }

    /// Wick-basis form of the monomial `X(w₁)⋯X(w_k)`.
    fn monomial_in_basis(&self, key: &[MWord]) -> GammaElem {
        if key.is_empty() {
            return GammaElem::one();
        }
        if let Some(g) = self.basis_memo.borrow().get(key) {
            return g.clone();
        }
        let result = if self.family.is_left() {
            let rest = WickElem { family: self.family.clone(), body: self.monomial_in_basis(&key[1..]) };
            self.lmul_x(&key[0], &rest).body
        } else {
            let n = key.len();
            let head = WickElem { family: self.family.clone(), body: self.monomial_in_basis(&key[..n - 1]) };
            self.rmul_x(&head, &key[n - 1]).body
        };
        self.basis_memo.borrow_mut().insert(key.to_vec(), result.clone());
        result
    }

    /// Rewrites `g` in the Wick basis.
    pub fn to_wick_basis(&self, g: &GammaElem) -> WickElem {
        let mut out = GammaElem::zero();
        for (key, c) in g.terms() {
            out.add_scaled(&self.monomial_in_basis(key), c);
        }
        WickElem { family: self.family.clone(), body: out }
    }

    /// The state: `φ(1) = 1` and `φ(W) = 0` on Wick products of degree ≥ 1.
    pub fn phi(&self, g: &GammaElem) -> PolyExpr {
        self.to_wick_basis(g).unit_coefficient()
    }

    /// `φ(X(w₁)⋯X(w_k))`.
    pub fn moment(&self, words: &[MWord]) -> PolyExpr {
        self.phi(&GammaElem::monomial(self.alg, words))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Letter;
    use crate::gamma::letters;

    fn x(l: u8) -> GammaElem {
        GammaElem::x(&Algebra::Free, &[Letter(l)])
    }

    fn e(ls: &[u8]) -> PolyExpr {
        PolyExpr::moment(ls.iter().map(|&l| Letter(l)).collect())
    }

    fn sc(p: PolyExpr) -> GammaElem {
        GammaElem::scalar(p)
    }

    #[test]
    fn base_cases() {
        let alg = Algebra::Free;
        let a = letters(2);
        let p12 = WickFamily::P12;
        assert_eq!(Wick::new(&p12, &alg).expand(&a[..1]), x(0));
        let mx = WickFamily::Meixner(MeixnerParams::formal());
        let alpha = PolyExpr::param(Param::Alpha);
        assert_eq!(Wick::new(&mx, &alg).expand(&a[..1]), &x(0) - &sc(&alpha * &e(&[0])));
    }

    #[test]
    fn ip_two_letters() {
        let alg = Algebra::Free;
        let a = letters(2);
        let fam = WickFamily::Ip;
        let w = Wick::new(&fam, &alg).expand(&a);
        // X(a)X(b) − X(a)⟨b⟩ − ⟨a⟩X(b) + ⟨a⟩⟨b⟩ − X(ab)
        let ab = GammaElem::x(&alg, &[Letter(0), Letter(1)]);
        let expected = &(&(&(&(&x(0) * &x(1)) - &x(0).scale(&e(&[1]))) - &x(1).scale(&e(&[0])))
            + &sc(&e(&[0]) * &e(&[1])))
            - &ab;
        assert_eq!(w, expected);
    }

    #[test]
    fn rmul_examples() {
        let alg = Algebra::Free;
        let a = letters(2);
        let fam = WickFamily::Meixner(MeixnerParams::formal());
        let eng = Wick::new(&fam, &alg);
        let w = WickElem { family: fam.clone(), body: GammaElem::term(vec![a[0].clone()], PolyExpr::one()) };
        let r = eng.rmul_x(&w, &a[1]);
        let p = MeixnerParams::formal();
        let mut expected = GammaElem::term(a.clone(), PolyExpr::one());
        expected.add_term(vec![a[0].clone()], &p.alpha * &e(&[1]));
        expected.add_term(vec![vec![Letter(0), Letter(1)]], p.beta.clone());
        expected.add_term(vec![], &p.t * &e(&[0, 1]));
        assert_eq!(r.body, expected);
    }

    #[test]
    fn lmul_examples() {
        let alg = Algebra::Free;
        let fam = WickFamily::q_formal();
        let eng = Wick::new(&fam, &alg);
        let a = letters(3);
        let r = eng.lmul_x(&a[0], &WickElem::one(&fam));
        let mut expected = GammaElem::term(vec![a[0].clone()], PolyExpr::one());
        expected.add_term(vec![], e(&[0]));
        assert_eq!(r.body, expected);
        // q appears only through the second argument of W_q(b, c)
        let w = WickElem { family: fam.clone(), body: GammaElem::term(vec![a[1].clone(), a[2].clone()], PolyExpr::one()) };
        let r = eng.lmul_x(&a[0], &w);
        let q = PolyExpr::param(Param::Q);
        assert_eq!(r.body.coefficient(&[a[1].clone()]), &q * &e(&[0, 2]));
        assert_eq!(r.body.coefficient(&[vec![Letter(0), Letter(2)], a[1].clone()]), q);
    }

    #[test]
    fn states_of_small_monomials() {
        let alg = Algebra::Free;
        let a = letters(2);
        let p12 = WickFamily::P12;
        assert_eq!(Wick::new(&p12, &alg).moment(&a), e(&[0, 1]));
        assert_eq!(Wick::new(&p12, &alg).moment(&[]), PolyExpr::one());
        let mx = WickFamily::Meixner(MeixnerParams::formal());
        assert_eq!(
            Wick::new(&mx, &alg).moment(&a[..1]),
            &PolyExpr::param(Param::Alpha) * &e(&[0])
        );
    }

    #[test]
    fn basis_roundtrip() {
        let alg = Algebra::Free;
        let a = letters(3);
        for fam in WickFamily::six().into_iter().chain([WickFamily::q_formal()]) {
            let eng = Wick::new(&fam, &alg);
            let w = eng.expand(&a);
            let back = eng.to_wick_basis(&w);
            assert_eq!(back.body, GammaElem::term(a.clone(), PolyExpr::one()), "{fam}");
        }
    }
}
