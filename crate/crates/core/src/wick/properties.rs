//! Structural properties of the Wick products and their states: adjoint
//! symmetry, traciality, the closed-object moment formula and positivity of
//! small Gram matrices.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::verify::{index_family, VerifyError};
use super::{Report, Wick, WickFamily};
use crate::exact::{Letter, PolyExpr, Rational};
use crate::families::{generate, Element};
use crate::gamma::{concat, letters, Algebra, GammaElem, MWord};
use crate::meixner::meixner_moment;

/// `W(a₁ ⊗ ⋯ ⊗ aₙ)* = W(aₙ ⊗ ⋯ ⊗ a₁)` on distinct letters. With
/// `commuting`, both sides are compared in the quotient where the `X(w)`
/// commute.
pub fn verify_adjoint(family: &WickFamily, n: usize, alg: &Algebra, commuting: bool) -> Report {
    let r = Report::new(family.name(), adjoint_name(commuting), alg.name()).with_n(n);
    adjoint_check(family, &letters(n), alg, commuting, r)
}

fn adjoint_name(commuting: bool) -> &'static str {
    if commuting {
        "adjoint (commuting X)"
    } else {
        "adjoint"
    }
}

/// Adjoint symmetry on `trials` random tensors with total letter degree at
/// most `max_total`.
pub fn verify_adjoint_random(
    family: &WickFamily,
    alg: &Algebra,
    commuting: bool,
    max_total: usize,
    trials: usize,
    seed: u64,
) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report::new(family.name(), adjoint_name(commuting), alg.name()).with_n(max_total);
    let mut checked = 0;
    for _ in 0..trials {
        let degree = rng.gen_range(1..=max_total);
        let tensor = random_tensor(&mut rng, alg, 3, degree);
        r = adjoint_check(family, &tensor, alg, commuting, r);
        checked += 1;
        if !r.pass {
            break;
        }
    }
    r.checked = checked;
    r
}

fn random_tensor(rng: &mut ChaCha8Rng, alg: &Algebra, num_letters: u8, degree: usize) -> Vec<MWord> {
    let mut out = Vec::new();
    let mut used = 0;
    while used < degree {
        let len = rng.gen_range(1..=2.min(degree - used));
        let w: MWord = (0..len).map(|_| Letter(rng.gen_range(0..num_letters))).collect();
        out.push(alg.canon(&w).expect("generic letters"));
        used += len;
    }
    out
}

fn adjoint_check(family: &WickFamily, tensor: &[MWord], alg: &Algebra, commuting: bool, mut r: Report) -> Report {
    let eng = Wick::new(family, alg);
    let rev: Vec<MWord> = tensor.iter().rev().map(|w| alg.star_word(w)).collect();
    let mut lhs = eng.expand(tensor).star(alg);
    let mut rhs = eng.expand(&rev);
    if commuting {
        lhs = commute_factors(&lhs);
        rhs = commute_factors(&rhs);
    }
    r.checked += lhs.len();
    if let Some(d) = super::verify::first_difference(&lhs, &rhs) {
        r.fail(format!("tensor {tensor:?}: {d}"));
    }
    r
}

/// Sorts the `X` factors of every monomial, i.e. passes to the quotient in
/// which the `X(w)` commute.
pub fn commute_factors(g: &GammaElem) -> GammaElem {
    let mut out = GammaElem::zero();
    for (k, c) in g.terms() {
        let mut k = k.clone();
        k.sort();
        out.add_term(k, c.clone());
    }
    out
}

/// A random combination of at most `terms` monomials with total degree at
/// most `max_degree`, over letters `0..num_letters` and words of length ≤ 2.
pub fn random_element(rng: &mut ChaCha8Rng, alg: &Algebra, num_letters: u8, max_degree: usize, terms: usize) -> GammaElem {
    let mut g = GammaElem::zero();
    for _ in 0..terms {
        let degree = rng.gen_range(0..=max_degree);
        let mut key: Vec<MWord> = Vec::new();
        let mut used = 0;
        while used < degree {
            let len = rng.gen_range(1..=2.min(degree - used));
            key.push((0..len).map(|_| Letter(rng.gen_range(0..num_letters))).collect());
            used += len;
        }
        let c = PolyExpr::int(rng.gen_range(-3..=3));
        g.add_scaled(&GammaElem::monomial(alg, &key), &c);
    }
    g
}

/// Letters used in `g`'s words, counted with multiplicity, for the largest
/// monomial.
fn letter_degree(g: &GammaElem) -> usize {
    g.terms().map(|(k, _)| k.iter().map(|w| w.len()).sum::<usize>()).max().unwrap_or(0)
}

/// `φ(gh) = φ(hg)` on `trials` random pairs with total letter degree at most
/// `max_total` in tracial mode.
pub fn verify_traciality(family: &WickFamily, max_total: usize, trials: usize, seed: u64) -> Report {
    let alg = Algebra::Tracial;
    let eng = Wick::new(family, &alg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Report::new(family.name(), "traciality", alg.name()).with_n(max_total);
    for _ in 0..trials {
        let dg = rng.gen_range(0..=max_total);
        let g = random_element(&mut rng, &alg, 3, dg, 3);
        let h = random_element(&mut rng, &alg, 3, max_total - letter_degree(&g).min(max_total), 3);
        let a = eng.phi(&(&g * &h));
        let b = eng.phi(&(&h * &g));
        r.checked += 1;
        if a != b {
            r.fail(format!("g = {g}, h = {h}: φ(gh) = {a}, φ(hg) = {b}"));
            break;
        }
    }
    r
}

/// `φ(X(w₁)⋯X(wₙ))` summed directly over the index elements with no open
/// blocks; for the free Meixner family this is the non-crossing moment
/// formula.
pub fn closed_object_moment(family: &WickFamily, alg: &Algebra, words: &[MWord]) -> Result<PolyExpr, VerifyError> {
    if let WickFamily::Meixner(p) = family {
        return Ok(meixner_moment(words, p, alg));
    }
    let id = index_family(family).ok_or(VerifyError::NoFormula { family: family.name().into(), identity: "moment" })?;
    let mut total = PolyExpr::zero();
    for x in generate(id, words.len())? {
        if x.num_open() > 0 {
            continue;
        }
        let term = match &x {
            Element::Partition(p) => alg.block_moments(words, &p.blocks),
            Element::Permutation(perm) => {
                let (closed, _) = perm.wick_blocks();
                closed.iter().fold(PolyExpr::one(), |acc, w| &acc * &alg.expect(&concat(words, w)))
            }
        };
        let weight = match (family, &x) {
            (WickFamily::IprmWeighted(w), Element::Permutation(perm)) => {
                let s = perm.letter_stats();
                &(&(&w.alpha.pow(s.closed_singleton as u32) * &w.beta1.pow(s.double_rise as u32))
                    * &(&w.beta2.pow(s.double_fall as u32) * &w.t.pow(s.cycle_max as u32)))
                    * &w.gamma.pow(s.peak as u32)
            }
            _ => PolyExpr::one(),
        };
        total += &(&term * &weight);
    }
    Ok(total)
}

pub fn verify_state_closed_objects(family: &WickFamily, n: usize, alg: &Algebra) -> Result<Report, VerifyError> {
    let words = letters(n);
    let eng = Wick::new(family, alg);
    let lhs = eng.moment(&words);
    let rhs = closed_object_moment(family, alg, &words)?;
    let mut r = Report::new(family.name(), "state", alg.name()).with_n(n);
    r.checked = rhs.len();
    if lhs != rhs {
        r.fail(format!("φ = {lhs}, closed objects = {rhs}"));
    }
    Ok(r)
}

/// Determinant by Gaussian elimination over the rationals.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    det
}

/// Tensors `u` with at most two components, each a single letter from
/// `alphabet`.
pub fn gram_tensors(alphabet: &[Letter]) -> Vec<Vec<MWord>> {
    let mut out: Vec<Vec<MWord>> = vec![Vec::new()];
    for &a in alphabet {
        out.push(vec![vec![a]]);
    }
    for &a in alphabet {
        for &b in alphabet {
            out.push(vec![vec![a], vec![b]]);
        }
    }
    out
}

/// Gram matrix `[φ(W(u)* W(v))]` over `tensors`; entries must be rational.
pub fn gram_matrix(family: &WickFamily, alg: &Algebra, tensors: &[Vec<MWord>]) -> Option<Vec<Vec<Rational>>> {
    let eng = Wick::new(family, alg);
    let expanded: Vec<GammaElem> = tensors.iter().map(|t| eng.expand(t)).collect();
    let stars: Vec<GammaElem> = expanded.iter().map(|g| g.star(alg)).collect();
    let mut m = Vec::with_capacity(tensors.len());
    for su in &stars {
        let mut row = Vec::with_capacity(tensors.len());
        for v in &expanded {
            row.push(eng.phi(&(su * v)).as_rational()?);
        }
        m.push(row);
    }
    Some(m)
}

/// Every principal minor is nonnegative (positive semidefiniteness of a
/// symmetric matrix).
pub fn principal_minors_nonnegative(m: &[Vec<Rational>]) -> Result<usize, Vec<usize>> {
    let n = m.len();
    let mut count = 0;
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<Rational>> = idx.iter().map(|&i| idx.iter().map(|&j| m[i][j].clone()).collect()).collect();
        if determinant(&sub).is_negative() {
            return Err(idx);
        }
        count += 1;
    }
    Ok(count)
}

/// Positivity on tensors of degree ≤ 2 in two indicator letters of disjoint
/// support.
pub fn verify_positivity(family: &WickFamily, alg: &Algebra, alphabet: &[Letter]) -> Report {
    let mut r = Report::new(family.name(), "positivity", alg.name()).with_n(2);
    let tensors = gram_tensors(alphabet);
    let Some(m) = gram_matrix(family, alg, &tensors) else {
        r.fail("Gram matrix has non-rational entries");
        return r;
    };
    for i in 0..m.len() {
        for j in 0..m.len() {
            if m[i][j] != m[j][i] {
                r.fail(format!("Gram matrix not symmetric at ({i}, {j})"));
                return r;
            }
        }
    }
    match principal_minors_nonnegative(&m) {
        Ok(c) => r.checked = c,
        Err(idx) => r.fail(format!("negative principal minor on rows {idx:?}")),
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn determinant_small() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        assert_eq!(determinant(&m), int(5));
        let m = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(determinant(&m), int(-1));
        assert!(principal_minors_nonnegative(&m).is_err());
    }

    #[test]
    fn adjoint_small() {
        for fam in WickFamily::six() {
            let alg = match fam {
                WickFamily::Ip => Algebra::Commutative,
                WickFamily::Iprm => Algebra::Tracial,
                _ => Algebra::Free,
            };
            for n in 0..=4 {
                let commuting = matches!(fam, WickFamily::Ip | WickFamily::Iprm);
                let r = verify_adjoint(&fam, n, &alg, commuting);
                assert!(r.pass, "{r}");
            }
        }
    }

    #[test]
    fn adjoint_random_tracial() {
        for fam in WickFamily::six() {
            let alg = if fam == WickFamily::Ip { Algebra::Commutative } else { Algebra::Tracial };
            let commuting = matches!(fam, WickFamily::Ip | WickFamily::Iprm);
            let r = verify_adjoint_random(&fam, &alg, commuting, 4, 10, 7);
            assert!(r.pass, "{r}");
        }
    }

    #[test]
    fn literal_adjoint_fails_for_ip_and_iprm() {
        for (fam, alg) in [(WickFamily::Ip, Algebra::Commutative), (WickFamily::Iprm, Algebra::Tracial)] {
            assert!(verify_adjoint(&fam, 2, &alg, false).pass);
            let r = verify_adjoint(&fam, 3, &alg, false);
            assert!(!r.pass);
            assert!(r.counterexample.unwrap().contains("X(a0a2)X(a1)"));
        }
    }

    #[test]
    fn traciality_small() {
        for fam in WickFamily::six() {
            let r = verify_traciality(&fam, 4, 10, 11);
            assert!(r.pass, "{r}");
        }
    }

    #[test]
    fn closed_objects_small() {
        for fam in WickFamily::six() {
            for n in 0..=3 {
                let r = verify_state_closed_objects(&fam, n, &Algebra::Free).unwrap();
                assert!(r.pass, "{r}");
            }
        }
    }
}
