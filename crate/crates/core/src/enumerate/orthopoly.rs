//! Wick products of a single projection `a` (`a² = a`, `E[a] = t`) as
//! polynomials in `x = X(a)`: Hermite, Charlier, Laguerre, free Charlier.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::{binom, factorial, stirling1};
use crate::exact::{Letter, Param, PolyExpr, Rational};
use crate::families::{generate, splits, Element, FamilyError, FamilyId};
use crate::gamma::{Algebra, GammaElem, MWord};
use crate::wick::{Report, Wick, WickElem, WickFamily};

/// A polynomial in `x` with coefficients polynomial in `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(into = "String")]
pub struct UniPoly(pub PolyExpr);

impl From<UniPoly> for String {
    fn from(p: UniPoly) -> String {
        p.to_string()
    }
}

impl UniPoly {
    pub fn x() -> Self {
        UniPoly(PolyExpr::param(Param::X))
    }

    /// Reads a Γ element over the single letter `a0` in projection mode.
    pub fn from_gamma(g: &GammaElem) -> Self {
        let x = PolyExpr::param(Param::X);
        let mut p = PolyExpr::zero();
        for (key, c) in g.terms() {
            assert!(key.iter().all(|w| w.as_slice() == [Letter(0)]), "not a single-projection element");
            p += &(c * &x.pow(key.len() as u32));
        }
        UniPoly(p)
    }

    pub fn degree(&self) -> u32 {
        self.0.degree_in(&crate::exact::Symbol::Param(Param::X))
    }

    pub fn coeff(&self, k: u32) -> PolyExpr {
        self.0.coefficient_of_power(&crate::exact::Symbol::Param(Param::X), k)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn projection() -> Algebra {
    Algebra::Projection(PolyExpr::param(Param::T))
}

fn a() -> MWord {
    vec![Letter(0)]
}

fn t() -> PolyExpr {
    PolyExpr::param(Param::T)
}

fn x() -> PolyExpr {
    PolyExpr::param(Param::X)
}

fn big(c: BigInt) -> PolyExpr {
    PolyExpr::constant(Rational::from_integer(c))
}

/// `W(a^{⊗n})` for the given family.
pub fn specialize_univariate(family: &WickFamily, n: usize) -> UniPoly {
    let alg = projection();
    UniPoly::from_gamma(&Wick::new(family, &alg).expand(&vec![a(); n]))
}

/// `(t + lo)(t + lo + 1)⋯(t + hi − 1)`.
fn rising(lo: usize, hi: usize) -> PolyExpr {
    (lo..hi).fold(PolyExpr::one(), |acc, c| &acc * &(&t() + &PolyExpr::int(c as i64)))
}

/// The displayed three-term recurrence `x W_n = W_{n+1} + b_n W_n + c_n W_{n−1}`.
fn recurrence(family: &WickFamily, n: usize) -> Option<(PolyExpr, PolyExpr)> {
    let nn = PolyExpr::int(n as i64);
    match family {
        WickFamily::P12 => Some((PolyExpr::zero(), &t() * &nn)),
        WickFamily::Ip => Some((&t() + &nn, &t() * &nn)),
        WickFamily::Iprm => Some((
            &t() + &PolyExpr::int(2 * n as i64),
            &(&t() * &nn) + &PolyExpr::int((n * n.saturating_sub(1)) as i64),
        )),
        _ => None,
    }
}

/// Checks the recurrence twice: as a polynomial identity, and by reading the
/// coefficients of `W(a^{⊗n}) X(a)` in the Wick basis.
pub fn verify_recurrence(family: &WickFamily, nmax: usize) -> Report {
    let mut r = Report::new(family.name(), "recurrence", "projection").with_n(nmax);
    let alg = projection();
    let eng = Wick::new(family, &alg);
    let polys: Vec<UniPoly> = (0..=nmax + 1).map(|n| specialize_univariate(family, n)).collect();
    for n in 0..=nmax {
        let Some((b, c)) = recurrence(family, n) else {
            r.fail("no displayed recurrence");
            return r;
        };
        let mut rhs = &polys[n + 1].0 + &(&b * &polys[n].0);
        if n > 0 {
            rhs += &(&c * &polys[n - 1].0);
        }
        r.checked += 1;
        if &x() * &polys[n].0 != rhs {
            r.fail(format!("n = {n}: x W_n = {} but the recurrence gives {rhs}", &x() * &polys[n].0));
        }
        let w = WickElem { family: family.clone(), body: GammaElem::term(vec![a(); n], PolyExpr::one()) };
        let prod = eng.rmul_x(&w, &a());
        let coeff = |m: usize| prod.body.coefficient(&vec![a(); m]);
        r.checked += 1;
        let ok = coeff(n + 1) == PolyExpr::one()
            && coeff(n) == b
            && (n == 0 || coeff(n - 1) == c)
            && prod.body.len() <= 3;
        if !ok {
            r.fail(format!("n = {n}: W-basis form of W_n X(a) is {}", prod.body));
        }
    }
    r
}

/// `C_n(x, t) = Σ_k (−1)^k (n!/k!) t^k C(x, n − k)` and
/// `C_n(x, t) = Σ (−1)^{n−ℓ} C(n, k) c(n − k, ℓ) t^k x^ℓ`.
pub fn charlier_explicit(n: usize) -> (PolyExpr, PolyExpr) {
    let mut first = PolyExpr::zero();
    for k in 0..=n {
        let m = n - k;
        // C(x, m) = x(x − 1)⋯(x − m + 1)/m!
        let falling = (0..m).fold(PolyExpr::one(), |acc, i| &acc * &(&x() - &PolyExpr::int(i as i64)));
        let c = Rational::new(factorial(n), factorial(k) * factorial(m));
        let sign = if k % 2 == 0 { 1 } else { -1 };
        first += &(&falling * &t().pow(k as u32)).scale(&(c * Rational::from_integer(sign.into())));
    }
    let s = stirling1(n);
    let mut second = PolyExpr::zero();
    for k in 0..=n {
        for l in 0..=n - k {
            let sign = if (n - l) % 2 == 0 { 1 } else { -1 };
            let c = big(binom(n, k) * &s[n - k][l] * sign);
            second += &(&c * &(&t().pow(k as u32) * &x().pow(l as u32)));
        }
    }
    (first, second)
}

/// Number of compositions of `m` into `l` positive parts.
fn compositions(m: usize, l: usize) -> BigInt {
    match (m, l) {
        (0, 0) => BigInt::from(1),
        (_, 0) => BigInt::from(0),
        _ if m == 0 => BigInt::from(0),
        _ => binom(m - 1, l - 1),
    }
}

/// `P_n(x, t) = Σ (−1)^{n−ℓ} N(k, ℓ) t^k x^ℓ`, `N(k, ℓ)` the number of
/// interval partitions with `k` closed singletons and `ℓ` open blocks,
/// `N(k, ℓ) = C(k + ℓ, ℓ) · #compositions(n − k, ℓ)`.
pub fn free_charlier_explicit(n: usize) -> PolyExpr {
    free_charlier_with(n, |k, l| compositions(n - k, l) * binom(k + l, l))
}

/// The same double sum with the binomial `C(n − k, ℓ − 1)` in place of the
/// composition count, reading `C(m, −1)` as `[m = 0]`.
pub fn free_charlier_binomial_variant(n: usize) -> PolyExpr {
    free_charlier_with(n, |k, l| {
        let b = if l == 0 { BigInt::from((n == k) as u8) } else { binom(n - k, l - 1) };
        b * binom(k + l, l)
    })
}

fn free_charlier_with(n: usize, weight: impl Fn(usize, usize) -> BigInt) -> PolyExpr {
    let mut p = PolyExpr::zero();
    for k in 0..=n {
        for l in 0..=n - k {
            let sign = if (n - l) % 2 == 0 { 1 } else { -1 };
            p += &(&big(weight(k, l) * sign) * &(&t().pow(k as u32) * &x().pow(l as u32)));
        }
    }
    p
}

/// Enumerated count of interval INC(n) elements with only singleton closed
/// blocks, by `(k, ℓ)`, against the composition formula.
fn free_charlier_counts(n: usize, r: &mut Report) -> Result<(), FamilyError> {
    let mut table = std::collections::BTreeMap::<(usize, usize), BigInt>::new();
    for e in generate(FamilyId::Inc, n)? {
        let Element::Partition(p) = &e else { continue };
        if !crate::families::partition::is_interval(&p.blocks) || p.closed_blocks().any(|b| b.len() != 1) {
            continue;
        }
        *table.entry((p.num_closed(), p.num_open())).or_default() += 1;
    }
    for k in 0..=n {
        for l in 0..=n - k {
            let got = table.get(&(k, l)).cloned().unwrap_or_default();
            let want = compositions(n - k, l) * binom(k + l, l);
            r.checked += 1;
            if got != want {
                r.fail(format!("n = {n}, k = {k}, ℓ = {l}: {got} interval elements, formula {want}"));
            }
        }
    }
    Ok(())
}

pub fn verify_charlier(nmax: usize) -> Report {
    let mut r = Report::new("IP", "charlier_explicit", "projection").with_n(nmax);
    for n in 0..=nmax {
        let w = specialize_univariate(&WickFamily::Ip, n).0;
        let (first, second) = charlier_explicit(n);
        r.checked += 2;
        if w != first || w != second {
            r.fail(format!("n = {n}: W = {w}, falling form {first}, Stirling form {second}"));
        }
    }
    r
}

pub fn verify_free_charlier(nmax: usize) -> Result<Report, FamilyError> {
    let mut r = Report::new("INC", "free_charlier_explicit", "projection").with_n(nmax);
    for n in 0..=nmax {
        free_charlier_counts(n, &mut r)?;
        let w = specialize_univariate(&WickFamily::Inc, n).0;
        let p = free_charlier_explicit(n);
        r.checked += 1;
        if w != p {
            r.fail(format!("n = {n}: W = {w}, explicit {p}"));
        }
    }
    Ok(r)
}

/// First `n` at which the binomial variant of the free Charlier sum differs
/// from the Wick product, if any up to `nmax`.
pub fn free_charlier_binomial_variant_mismatch(nmax: usize) -> Option<(usize, String, String)> {
    (0..=nmax).find_map(|n| {
        let w = specialize_univariate(&WickFamily::Inc, n).0;
        let v = free_charlier_binomial_variant(n);
        (w != v).then(|| (n, w.to_string(), v.to_string()))
    })
}

/// Incomplete-permutation weights `t^{#cycles}` summed by the number of open
/// words, optionally restricted to incomplete derangements of `split`.
fn iprm_weights(n: usize, split: Option<&[usize]>) -> Result<Vec<PolyExpr>, FamilyError> {
    let mut by_open = vec![PolyExpr::zero(); n + 1];
    for e in generate(FamilyId::Iprm, n)? {
        let Element::Permutation(p) = &e else { continue };
        if split.is_some_and(|s| !p.is_derangement_for(s)) {
            continue;
        }
        by_open[e.num_open()] += &t().pow(e.num_closed() as u32);
    }
    Ok(by_open)
}

/// Laguerre displays: the inversion `L_n` as an IPRM sum and in closed form,
/// the monomial `x^n` in the `L` basis, the product of `L_{s(i)}` over
/// incomplete derangements for every split of `n ≤ nmax` into at most three
/// parts, and the state of monomials and products as permutation sums.
pub fn verify_laguerre(nmax: usize) -> Result<Report, FamilyError> {
    let mut r = Report::new("IPRM", "laguerre", "projection").with_n(nmax);
    let fam = WickFamily::Iprm;
    let alg = projection();
    let eng = Wick::new(&fam, &alg);
    let l: Vec<PolyExpr> = (0..=nmax).map(|n| specialize_univariate(&fam, n).0).collect();
    let fail = |r: &mut Report, ok: bool, what: String| {
        r.checked += 1;
        if !ok {
            r.fail(what);
        }
    };
    for n in 0..=nmax {
        let w = iprm_weights(n, None)?;
        let mut inv = PolyExpr::zero();
        let mut closed = PolyExpr::zero();
        let mut mono = PolyExpr::zero();
        for (j, wt) in w.iter().enumerate() {
            let sign = if (n - j) % 2 == 0 { 1 } else { -1 };
            inv += &(wt * &x().pow(j as u32)).scale(&Rational::from_integer(sign.into()));
            let cf = &big(binom(n, j)) * &rising(j, n);
            closed += &(&cf * &x().pow(j as u32)).scale(&Rational::from_integer(sign.into()));
            fail(&mut r, *wt == cf, format!("n = {n}, ℓ = {j}: weight {wt} vs {cf}"));
            mono += &(wt * &l[j]);
        }
        fail(&mut r, inv == l[n], format!("L_{n} = {} but the IPRM sum is {inv}", l[n]));
        fail(&mut r, closed == l[n], format!("L_{n} = {} but the closed form is {closed}", l[n]));
        fail(&mut r, mono == x().pow(n as u32), format!("x^{n} expands to {mono}"));
        let m = eng.moment(&vec![a(); n]);
        fail(&mut r, m == rising(0, n), format!("φ(x^{n}) = {m}"));
    }
    for n in 2..=nmax {
        for split in splits(n, 3) {
            let w = iprm_weights(n, Some(&split))?;
            let rhs = w.iter().enumerate().fold(PolyExpr::zero(), |acc, (j, wt)| &acc + &(wt * &l[j]));
            let lhs = split.iter().fold(PolyExpr::one(), |acc, &s| &acc * &l[s]);
            fail(&mut r, lhs == rhs, format!("split {split:?}: product {lhs} vs derangement sum {rhs}"));
            let g = split.iter().fold(GammaElem::one(), |acc, &s| &acc * &eng.expand(&vec![a(); s]));
            let st = eng.phi(&g);
            fail(&mut r, st == w[0], format!("split {split:?}: φ = {st}, derangement sum {}", w[0]));
        }
    }
    Ok(r)
}

/// Every specialization check to `nmax`.
pub fn verify_specializations(nmax: usize) -> Result<Vec<Report>, FamilyError> {
    Ok(vec![
        verify_recurrence(&WickFamily::P12, nmax),
        verify_recurrence(&WickFamily::Ip, nmax),
        verify_recurrence(&WickFamily::Iprm, nmax),
        verify_charlier(nmax),
        verify_free_charlier(nmax)?,
        verify_laguerre(nmax.min(5))?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, u32, u32)]) -> PolyExpr {
        terms.iter().fold(PolyExpr::zero(), |acc, &(c, tp, xp)| {
            &acc + &(&PolyExpr::int(c) * &(&t().pow(tp) * &x().pow(xp)))
        })
    }

    #[test]
    fn two_letter_specializations() {
        assert_eq!(specialize_univariate(&WickFamily::P12, 2).0, poly(&[(1, 0, 2), (-1, 1, 0)]));
        assert_eq!(
            specialize_univariate(&WickFamily::Ip, 2).0,
            poly(&[(1, 0, 2), (-2, 1, 1), (-1, 0, 1), (1, 2, 0)])
        );
        assert_eq!(
            specialize_univariate(&WickFamily::Iprm, 2).0,
            poly(&[(1, 0, 2), (-2, 1, 1), (-2, 0, 1), (1, 2, 0), (1, 1, 0)])
        );
    }

    #[test]
    fn recurrences_to_six() {
        for r in verify_specializations(6).unwrap() {
            assert!(r.pass, "{r}");
        }
    }

    #[test]
    fn binomial_variant_differs_at_two() {
        let (n, _, _) = free_charlier_binomial_variant_mismatch(5).unwrap();
        assert_eq!(n, 2);
    }
}
