//! Symbolic checks of the monomial expansions, inversion formulas and
//! product formulas.
//!
//! Every check builds both sides in the monomial basis of `Γ(M)`: Wick
//! products are expanded with [`Wick::expand`], which applies the family's
//! recursion literally.

use thiserror::Error;

use super::{Report, Wick, WickFamily};
use crate::exact::{factorial, PolyExpr};
use crate::families::partition::{is_interval, split_index};
use crate::families::{generate, Element, FamilyError, FamilyId, IncompletePartition, IncompletePermutation};
use crate::gamma::{concat, letters, Algebra, GammaElem, MWord};
use crate::meixner::{coeff_c, interval_partitions, inversion_coeffs};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("no {identity} formula for family {family}")]
    NoFormula { family: String, identity: &'static str },
}

/// Coefficient-tensor pairs `(c, t)` standing for `Σ c · W(t)` or, for
/// inversion formulas, `Σ c · X(t₁)⋯X(t_k)`.
pub type Terms = Vec<(PolyExpr, Vec<MWord>)>;

fn no_formula(family: &WickFamily, identity: &'static str) -> VerifyError {
    VerifyError::NoFormula { family: family.name().to_string(), identity }
}

/// The index family of a Wick family.
pub fn index_family(family: &WickFamily) -> Option<FamilyId> {
    match family {
        WickFamily::P12 => Some(FamilyId::P12),
        WickFamily::Ip => Some(FamilyId::Ip),
        WickFamily::Iprm | WickFamily::IprmWeighted(_) => Some(FamilyId::Iprm),
        WickFamily::Inc12 => Some(FamilyId::Inc12),
        WickFamily::Inc | WickFamily::Meixner(_) => Some(FamilyId::Inc),
        WickFamily::Q(_) => None,
    }
}

fn sign(k: usize) -> PolyExpr {
    PolyExpr::int(if k % 2 == 0 { 1 } else { -1 })
}

/// `Π E[closed words] ⊗ open words` of an incomplete permutation, with
/// closed words rotated to end at their largest letter and open words in
/// the order of `f`.
fn permutation_contraction(alg: &Algebra, words: &[MWord], x: &IncompletePermutation) -> Option<(PolyExpr, Vec<MWord>)> {
    let (closed, open) = x.wick_blocks();
    let mut c = PolyExpr::one();
    for w in &closed {
        c = &c * &alg.expect(&concat(words, w));
    }
    let mut tensor = Vec::with_capacity(open.len());
    for w in &open {
        tensor.push(alg.canon(&concat(words, w))?);
    }
    Some((c, tensor))
}

fn element_contraction(alg: &Algebra, words: &[MWord], x: &Element) -> Option<(PolyExpr, Vec<MWord>)> {
    match x {
        Element::Partition(p) => alg.contraction(words, p),
        Element::Permutation(p) => permutation_contraction(alg, words, p),
    }
}

/// Extra weight of an index element in the monomial expansion.
fn expansion_weight(family: &WickFamily, x: &Element) -> PolyExpr {
    match (family, x) {
        (WickFamily::Meixner(p), Element::Partition(part)) => coeff_c(part, p),
        (WickFamily::IprmWeighted(w), Element::Permutation(perm)) => {
            let s = perm.letter_stats();
            &(&(&w.alpha.pow(s.closed_singleton as u32) * &w.beta1.pow(s.double_rise as u32))
                * &(&w.beta2.pow(s.double_fall as u32) * &w.t.pow(s.cycle_max as u32)))
                * &w.gamma.pow(s.peak as u32)
        }
        _ => PolyExpr::one(),
    }
}

fn push(out: &mut Terms, c: PolyExpr, t: Vec<MWord>) {
    if !c.is_zero() {
        out.push((c, t));
    }
}

/// Right-hand side of the monomial expansion of `X(w₁)⋯X(wₙ)` as Wick terms.
pub fn monomial_expansion_terms(family: &WickFamily, alg: &Algebra, words: &[MWord]) -> Result<Terms, VerifyError> {
    let id = index_family(family).ok_or_else(|| no_formula(family, "monomial expansion"))?;
    let mut out = Terms::new();
    for x in generate(id, words.len())? {
        if let Some((c, t)) = element_contraction(alg, words, &x) {
            push(&mut out, &c * &expansion_weight(family, &x), t);
        }
    }
    Ok(out)
}

/// Right-hand side of the inversion formula for `W(w₁ ⊗ ⋯ ⊗ wₙ)` as
/// monomial terms.
pub fn inversion_terms(family: &WickFamily, alg: &Algebra, words: &[MWord]) -> Result<Terms, VerifyError> {
    let n = words.len();
    let mut out = Terms::new();
    let partition_terms = |id: FamilyId, keep: &dyn Fn(&IncompletePartition) -> bool, weight: &dyn Fn(&IncompletePartition) -> PolyExpr, out: &mut Terms| -> Result<(), VerifyError> {
        for x in generate(id, n)? {
            let p = x.as_partition().expect("partition family");
            if !keep(p) {
                continue;
            }
            if let Some((c, t)) = alg.contraction(words, p) {
                push(out, &c * &weight(p), t);
            }
        }
        Ok(())
    };
    let closed_singletons = |p: &IncompletePartition| p.closed_blocks().all(|b| b.len() == 1);
    match family {
        WickFamily::P12 => partition_terms(FamilyId::P12, &|_| true, &|p| sign(p.num_pairs()), &mut out)?,
        WickFamily::Inc12 => {
            partition_terms(FamilyId::Inc12, &|p| is_interval(&p.blocks), &|p| sign(p.num_pairs()), &mut out)?
        }
        WickFamily::Ip => partition_terms(
            FamilyId::Ip,
            &closed_singletons,
            &|p| {
                let f = p.open_blocks().fold(PolyExpr::one(), |acc, b| &acc * &PolyExpr::constant(factorial(b.len() as u64 - 1)));
                &sign(n - p.num_open()) * &f
            },
            &mut out,
        )?,
        WickFamily::Inc => partition_terms(
            FamilyId::Inc,
            &|p| is_interval(&p.blocks) && closed_singletons(p),
            &|p| sign(n - p.num_open()),
            &mut out,
        )?,
        WickFamily::Iprm => {
            for x in generate(FamilyId::Iprm, n)? {
                let perm = x.as_permutation().expect("permutation family");
                if let Some((c, t)) = permutation_contraction(alg, words, perm) {
                    push(&mut out, &c * &sign(n - perm.num_open()), t);
                }
            }
        }
        WickFamily::Meixner(p) => {
            let ic = inversion_coeffs(p, n.max(1));
            for blocks in interval_partitions(n) {
                for mask in 0u32..1 << blocks.len() {
                    let open: Vec<bool> = (0..blocks.len()).map(|i| mask & (1 << i) != 0).collect();
                    let x = IncompletePartition::new(n, blocks.clone(), open);
                    let Some((c, t)) = alg.contraction(words, &x) else { continue };
                    let mut w = sign(n - x.num_open());
                    for b in x.closed_blocks() {
                        w = &w * &ic.c(b.len());
                    }
                    for b in x.open_blocks() {
                        w = &w * &ic.o(b.len());
                    }
                    push(&mut out, &c * &w, t);
                }
            }
        }
        WickFamily::IprmWeighted(_) | WickFamily::Q(_) => return Err(no_formula(family, "inversion")),
    }
    Ok(out)
}

/// No block of `p` meets a split interval twice.
fn split_inhomogeneous(p: &IncompletePartition, split: &[usize]) -> bool {
    let idx = split_index(split);
    p.blocks.iter().all(|b| {
        let mut seen: Vec<usize> = b.iter().map(|&x| idx[x as usize]).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    })
}

/// Right-hand side of the product formula for `Π W(factor i)` as Wick terms.
pub fn product_terms(family: &WickFamily, alg: &Algebra, words: &[MWord], split: &[usize]) -> Result<Terms, VerifyError> {
    let n = words.len();
    assert_eq!(split.iter().sum::<usize>(), n);
    let (id, need_open_singletons) = match family {
        WickFamily::P12 => (FamilyId::P12, false),
        WickFamily::Inc12 => (FamilyId::Inc12, false),
        WickFamily::Ip => (FamilyId::Ip, true),
        WickFamily::Inc => (FamilyId::Inc, true),
        WickFamily::Iprm => (FamilyId::Iprm, false),
        _ => return Err(no_formula(family, "product")),
    };
    let mut out = Terms::new();
    for x in generate(id, n)? {
        let keep = match &x {
            Element::Partition(p) => {
                split_inhomogeneous(p, split) && (!need_open_singletons || p.closed_blocks().all(|b| b.len() > 1))
            }
            Element::Permutation(perm) => perm.is_derangement_for(split),
        };
        if keep {
            if let Some((c, t)) = element_contraction(alg, words, &x) {
                push(&mut out, c, t);
            }
        }
    }
    Ok(out)
}

/// `Σ c · W(t)` expanded in monomials.
pub fn wick_sum(eng: &Wick, terms: &Terms) -> GammaElem {
    let mut g = GammaElem::zero();
    for (c, t) in terms {
        g.add_scaled(&eng.expand(t), c);
    }
    g
}

/// `Σ c · X(t₁)⋯X(t_k)`.
pub fn monomial_sum(alg: &Algebra, terms: &Terms) -> GammaElem {
    let mut g = GammaElem::zero();
    for (c, t) in terms {
        g.add_scaled(&GammaElem::monomial(alg, t), c);
    }
    g
}

/// Describes the first monomial on which `lhs` and `rhs` differ.
pub fn first_difference(lhs: &GammaElem, rhs: &GammaElem) -> Option<String> {
    let d = lhs - rhs;
    let (key, _) = d.terms().next()?;
    let shown = GammaElem::term(key.clone(), PolyExpr::one());
    Some(format!(
        "coefficient of {}: lhs {} vs rhs {}",
        shown.to_string().trim_start_matches("(1)"),
        lhs.coefficient(key),
        rhs.coefficient(key)
    ))
}

fn compare(mut report: Report, lhs: &GammaElem, rhs: &GammaElem, checked: usize) -> Report {
    report.checked = checked;
    if let Some(d) = first_difference(lhs, rhs) {
        report.fail(d);
    }
    report
}

/// `X(a₁)⋯X(aₙ) = Σ (weight) Π E[closed] W(open)` for distinct letters.
pub fn verify_monomial_expansion(family: &WickFamily, n: usize, alg: &Algebra) -> Result<Report, VerifyError> {
    let words = letters(n);
    let eng = Wick::new(family, alg);
    let terms = monomial_expansion_terms(family, alg, &words)?;
    let lhs = GammaElem::monomial(alg, &words);
    let rhs = wick_sum(&eng, &terms);
    Ok(compare(Report::new(family.name(), "monomial", alg.name()).with_n(n), &lhs, &rhs, terms.len()))
}

/// `W(a₁ ⊗ ⋯ ⊗ aₙ)` from the recursion equals the signed inversion sum.
pub fn verify_inversion(family: &WickFamily, n: usize, alg: &Algebra) -> Result<Report, VerifyError> {
    let words = letters(n);
    let eng = Wick::new(family, alg);
    let terms = inversion_terms(family, alg, &words)?;
    let lhs = eng.expand(&words);
    let rhs = monomial_sum(alg, &terms);
    Ok(compare(Report::new(family.name(), "inversion", alg.name()).with_n(n), &lhs, &rhs, terms.len()))
}

/// `Π_i W(a_{J_i})` over the split intervals equals the sum over
/// split-inhomogeneous index elements.
pub fn verify_product(family: &WickFamily, split: &[usize], alg: &Algebra) -> Result<Report, VerifyError> {
    let n: usize = split.iter().sum();
    let words = letters(n);
    let eng = Wick::new(family, alg);
    let terms = product_terms(family, alg, &words, split)?;
    let mut lhs = GammaElem::one();
    let mut start = 0;
    for &s in split {
        lhs = &lhs * &eng.expand(&words[start..start + s]);
        start += s;
    }
    let rhs = wick_sum(&eng, &terms);
    Ok(compare(Report::new(family.name(), "product", alg.name()).with_split(split), &lhs, &rhs, terms.len()))
}

/// The weighted seven-term recursion against the letter-statistics sum.
pub fn verify_weighted_iprm(weights: &super::IprmWeights, n: usize) -> Result<Report, VerifyError> {
    verify_monomial_expansion(&WickFamily::IprmWeighted(weights.clone()), n, &Algebra::Free)
}

/// With commuting letters, regrouping the permutation sums by underlying
/// incomplete partition gives factorial weights: `(|U|−1)!` per closed block
/// and `|V|!` per open block, both in the expansion and in the inversion.
pub fn verify_commutative_iprm_rewrite(n: usize) -> Result<Report, VerifyError> {
    let alg = Algebra::Commutative;
    let fam = WickFamily::Iprm;
    let eng = Wick::new(&fam, &alg);
    let words = letters(n);
    let mut report = Report::new("IPRM", "commutative rewrite", alg.name()).with_n(n);

    let by_perm = monomial_expansion_terms(&fam, &alg, &words)?;
    let mut by_ip = Terms::new();
    let mut inv_ip = Terms::new();
    for x in generate(FamilyId::Ip, n)? {
        let p = x.as_partition().unwrap();
        let Some((c, t)) = alg.contraction(&words, p) else { continue };
        let mut w = PolyExpr::one();
        for b in p.closed_blocks() {
            w = &w * &PolyExpr::constant(factorial(b.len() as u64 - 1));
        }
        for b in p.open_blocks() {
            w = &w * &PolyExpr::constant(factorial(b.len() as u64));
        }
        push(&mut by_ip, &c * &w, t.clone());
        push(&mut inv_ip, &(&c * &w) * &sign(n - p.num_open()), t);
    }
    report.checked = by_ip.len();
    let lhs = GammaElem::monomial(&alg, &words);
    if let Some(d) = first_difference(&wick_sum(&eng, &by_perm), &wick_sum(&eng, &by_ip)) {
        report.fail(format!("expansion: {d}"));
    }
    if let Some(d) = first_difference(&lhs, &wick_sum(&eng, &by_ip)) {
        report.fail(format!("expansion vs monomial: {d}"));
    }
    if let Some(d) = first_difference(&eng.expand(&words), &monomial_sum(&alg, &inv_ip)) {
        report.fail(format!("inversion: {d}"));
    }
    Ok(report)
}
