//! Report-producing checks for the free Meixner family.

use super::identities::{schroder_motzkin, verify_viennot};
use super::inversion::{check_generating_functions, closed_form};
use super::{coeff_c, coeff_c_factored, inner_product, inversion_coeffs, CaseTag, MeixnerParams};
use crate::exact::{Letter, PolyExpr};
use crate::families::{generate, Element, FamilyError, FamilyId};
use crate::gamma::{letters, Algebra, MWord};
use crate::wick::cumulants::meixner_free_cumulants;
use crate::wick::{Report, Wick, WickFamily};

/// Direct refinement sum against the `κ`/`ω` block product over `INC(n)`.
pub fn verify_factorization(n: usize, p: &MeixnerParams) -> Result<Report, FamilyError> {
    let mut r = Report::new("Meixner", "factorization", "exact").with_n(n);
    for x in generate(FamilyId::Inc, n)? {
        let Element::Partition(x) = x else { unreachable!("INC elements are partitions") };
        r.checked += 1;
        let (a, b) = (coeff_c(&x, p), coeff_c_factored(&x, p));
        if a != b {
            r.fail(format!("{x:?}: {a} vs {b}"));
        }
    }
    Ok(r)
}

/// `φ(W(a₁⊗⋯⊗aₙ) W(b_k⊗⋯⊗b₁))` computed in `Γ` against the
/// interval-partition formula, for every choice of component words of length
/// 1 or 2 in distinct letters.
pub fn verify_inner_product(n: usize, k: usize, p: &MeixnerParams, alg: &Algebra) -> Report {
    let fam = WickFamily::Meixner(p.clone());
    let eng = Wick::new(&fam, alg);
    let mut r = Report::new("Meixner", "inner product", alg.name()).with_split(&[n, k]);
    for mask in 0u32..1 << (n + k) {
        let mut next = 0u8;
        let words: Vec<MWord> = (0..n + k)
            .map(|i| {
                let len = if mask & (1 << i) != 0 { 2 } else { 1 };
                let w = (next..next + len).map(Letter).collect();
                next += len;
                w
            })
            .collect();
        let (a, b) = words.split_at(n);
        let b_rev: Vec<MWord> = b.iter().rev().cloned().collect();
        let lhs = eng.phi(&(&eng.expand(a) * &eng.expand(&b_rev)));
        let rhs = inner_product(a, b, p, alg);
        r.checked += 1;
        if lhs != rhs {
            r.fail(format!("{words:?}: φ = {lhs}, formula = {rhs}"));
            break;
        }
    }
    r
}

pub fn verify_free_cumulants(nmax: usize, p: &MeixnerParams) -> Report {
    let mut r = Report::new("Meixner", "free cumulants", "free").with_n(nmax);
    for (n, got, want) in meixner_free_cumulants(p, nmax) {
        r.checked += 1;
        if got != want {
            r.fail(format!("R_{n} = {got}, expected {want}"));
        }
    }
    r
}

/// Matchings, partitions and Motzkin paths agree for each `n ≤ nmax`, and
/// the Schröder and Motzkin specializations hold.
pub fn verify_paths(nmax: usize, p: &MeixnerParams) -> Report {
    let mut r = Report::new("Meixner", "paths", "exact").with_n(nmax);
    for n in 0..=nmax {
        r.checked += 1;
        let v = verify_viennot(n, p);
        if !v.pass {
            r.fail(format!("n = {n}: {} / {} / {}", v.matchings, v.partitions, v.paths));
        }
        if n >= 1 {
            r.checked += 1;
            let s = schroder_motzkin(n);
            if !s.pass {
                r.fail(format!("n = {n}: {s:?}"));
            }
        }
    }
    r
}

/// `(α, β, t, γ) = (0, 0, 1, 0)` against INC12 and `(1, 1, 1, 0)` against
/// INC: the states agree on `X(a₁)⋯X(aₙ)` for distinct letters.
pub fn verify_specialization_fixtures(nmax: usize, alg: &Algebra) -> Report {
    let mut r = Report::new("Meixner", "specialization fixtures", alg.name()).with_n(nmax);
    let pairs = [
        (MeixnerParams::new(0, 0, 1, 0), WickFamily::Inc12),
        (MeixnerParams::new(1, 1, 1, 0), WickFamily::Inc),
    ];
    for (p, other) in pairs {
        let fam = WickFamily::Meixner(p);
        let (a, b) = (Wick::new(&fam, alg), Wick::new(&other, alg));
        for n in 0..=nmax {
            let words = letters(n);
            r.checked += 1;
            let (x, y) = (a.moment(&words), b.moment(&words));
            if x != y {
                r.fail(format!("{} at n = {n}: {x} vs {y}", other.name()));
            }
        }
    }
    r
}

/// One rational parameter point per case.
pub fn case_fixtures() -> Vec<(CaseTag, MeixnerParams)> {
    vec![
        (CaseTag::I, MeixnerParams::new(2, 3, 1, 0)),
        (CaseTag::II, MeixnerParams::new(1, 1, 1, 1)),
        (CaseTag::IIPrime, MeixnerParams::new(1, 4, 3, 3)),
        (CaseTag::III, MeixnerParams::new(0, 2, 1, 1)),
        (CaseTag::IIIPrime, MeixnerParams::new(1, 2, 1, 1)),
    ]
}

const CASES: [CaseTag; 5] = [CaseTag::I, CaseTag::II, CaseTag::IIPrime, CaseTag::III, CaseTag::IIIPrime];

fn ints(v: &[PolyExpr]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.as_i64()).collect()
}

/// Closed forms against the recurrence for `k ≤ k_max` at every fixture and
/// every case whose hypothesis it satisfies, the generating functions with
/// formal parameters, and the three worked examples.
pub fn verify_inversion_cases(k_max: usize) -> Report {
    let mut r = Report::new("Meixner", "inversion coefficients", "exact").with_n(k_max);
    for (tag, p) in case_fixtures() {
        let ic = inversion_coeffs(&p, k_max);
        r.checked += 1;
        if ic.case != tag {
            r.fail(format!("fixture for {tag} detected as {}", ic.case));
        }
        if !check_generating_functions(&p, &ic) {
            r.fail(format!("generating functions fail at case {tag}"));
        }
        for case in CASES {
            let Ok((o, c)) = closed_form(case, &p, k_max) else { continue };
            for k in 1..=k_max {
                r.checked += 1;
                if PolyExpr::constant(o[k - 1].clone()) != ic.o(k) || PolyExpr::constant(c[k - 1].clone()) != ic.c(k) {
                    r.fail(format!("case {case} closed form at k = {k} for {p:?}"));
                }
            }
        }
    }

    let formal = MeixnerParams::formal();
    r.checked += 1;
    if !check_generating_functions(&formal, &inversion_coeffs(&formal, k_max)) {
        r.fail("generating functions fail with formal parameters");
    }

    // α = β = t = γ = 1: both sequences have period 6
    let ic = inversion_coeffs(&MeixnerParams::new(1, 1, 1, 1), k_max);
    let (o, c) = (ints(&ic.o).unwrap_or_default(), ints(&ic.c).unwrap_or_default());
    let o6 = [1, 1, 0, -1, -1, 0];
    let c6 = [1, 0, -1, -1, 0, 1];
    r.checked += 1;
    if o.len() != k_max || (0..k_max).any(|i| o[i] != o6[i % 6] || c[i] != c6[i % 6]) {
        r.fail(format!("period-six example: o = {o:?}, c = {c:?}"));
    }
    // α = 1, γ = t, β = t + 1: c_k = 1
    for t in [2i64, 3, 5] {
        let ic = inversion_coeffs(&MeixnerParams::new(1, t + 1, t, t), k_max);
        r.checked += 1;
        if !ic.c.iter().all(|c| c.is_one()) {
            r.fail(format!("c_k ≡ 1 example at t = {t}"));
        }
    }
    // α = 0, β = 2, t = γ = 1: o_k = k, c_k = −(k − 1)
    let ic = inversion_coeffs(&MeixnerParams::new(0, 2, 1, 1), k_max);
    let want_o: Vec<i64> = (1..=k_max as i64).collect();
    let want_c: Vec<i64> = (1..=k_max as i64).map(|k| 1 - k).collect();
    r.checked += 1;
    if ints(&ic.o) != Some(want_o) || ints(&ic.c) != Some(want_c) {
        r.fail("o_k = k example");
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_checks_pass() {
        let p = MeixnerParams::formal();
        for n in 0..=4 {
            let r = verify_factorization(n, &p).unwrap();
            assert!(r.pass, "{r}");
        }
        for n in 0..=2 {
            for k in 0..=2 {
                let r = verify_inner_product(n, k, &p, &Algebra::Free);
                assert!(r.pass, "{r}");
            }
        }
        assert!(verify_free_cumulants(4, &p).pass);
        assert!(verify_paths(5, &p).pass);
        let r = verify_specialization_fixtures(4, &Algebra::Free);
        assert!(r.pass, "{r}");
    }

    #[test]
    fn inversion_cases_to_ten() {
        let r = verify_inversion_cases(10);
        assert!(r.pass, "{r}");
    }
}
