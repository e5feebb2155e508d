//! Classical and free cumulants of a Wick family's state, obtained by
//! Möbius inversion over the lattice of all or of non-crossing partitions.

use serde::Serialize;

use super::{Wick, WickFamily};
use crate::exact::{rat, PolyExpr};
use crate::families::partition::{nc_partitions, refines, set_partitions, Blocks};
use crate::gamma::{concat, letters, min_rotation, Algebra, GammaElem, MWord};
use crate::meixner::{motzkin_poly, MeixnerParams};
use crate::poset::FinitePoset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CumulantKind {
    Classical,
    Free,
}

/// The joint cumulant `K[X(w₁), …, X(wₙ)]`:
/// `Σ_π μ(π, 1̂) Π_{U ∈ π} φ(Π_{i ∈ U} X(w_i))`.
pub fn cumulant(kind: CumulantKind, eng: &Wick, words: &[MWord]) -> PolyExpr {
    let n = words.len();
    if n == 0 {
        return PolyExpr::zero();
    }
    let parts: Vec<Blocks> = match kind {
        CumulantKind::Classical => set_partitions(n),
        CumulantKind::Free => nc_partitions(n),
    };
    let poset = FinitePoset::from_relation(parts.len(), |i, j| refines(&parts[i], &parts[j], n))
        .expect("refinement is a partial order");
    let top = parts.iter().position(|p| p.len() == 1).expect("one-block partition");
    let mut total = PolyExpr::zero();
    for (i, pi) in parts.iter().enumerate() {
        let mu = mobius_to(&poset, i, top);
        if mu == 0 {
            continue;
        }
        let mut term = PolyExpr::int(mu);
        for b in pi {
            let block: Vec<MWord> = b.iter().map(|&p| words[p as usize].clone()).collect();
            term = &term * &eng.phi(&GammaElem::monomial(eng.alg, &block));
            if term.is_zero() {
                break;
            }
        }
        total += &term;
    }
    total
}

fn mobius_to(poset: &FinitePoset, x: usize, y: usize) -> i64 {
    poset.mobius_row(x)[y].expect("x ≤ 1̂")
}

/// Free cumulants `R_1..R_nmax` of the free Meixner state on distinct
/// letters, each checked against `κⁿ E[a₁⋯aₙ]`.
pub fn meixner_free_cumulants(p: &MeixnerParams, nmax: usize) -> Vec<(usize, PolyExpr, PolyExpr)> {
    let fam = WickFamily::Meixner(p.clone());
    let alg = Algebra::Free;
    let eng = Wick::new(&fam, &alg);
    (1..=nmax)
        .map(|n| {
            let words = letters(n);
            let got = cumulant(CumulantKind::Free, &eng, &words);
            let kappa = if n == 1 { p.alpha.clone() } else { &p.t * &motzkin_poly(n - 2, &p.beta, &p.gamma) };
            let expected = &kappa * &alg.expect(&concat(&words, &(0..n as u8).collect::<Vec<_>>()));
            (n, got, expected)
        })
        .collect()
}

/// `(1/n) Σ_{α ∈ Sym(n)} E[a_{α(1)}⋯a_{α(n)}]` with tracial moments.
pub fn symmetrized_trace(n: usize) -> PolyExpr {
    let mut total = PolyExpr::zero();
    let mut perm: Vec<u8> = (0..n as u8).collect();
    permutations(&mut perm, 0, &mut |p| {
        total += &PolyExpr::moment(min_rotation(&p.iter().map(|&i| crate::exact::Letter(i)).collect::<Vec<_>>()));
    });
    total.scale(&rat(1, n as i64))
}

fn permutations(v: &mut Vec<u8>, k: usize, f: &mut dyn FnMut(&[u8])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Classical cumulants of the incomplete-permutation state in tracial mode
/// against the symmetrized trace.
pub fn iprm_classical_cumulants(nmax: usize) -> Vec<(usize, PolyExpr, PolyExpr)> {
    let fam = WickFamily::Iprm;
    let alg = Algebra::Tracial;
    let eng = Wick::new(&fam, &alg);
    (1..=nmax)
        .map(|n| (n, cumulant(CumulantKind::Classical, &eng, &letters(n)), symmetrized_trace(n)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Letter;

    #[test]
    fn meixner_first_cumulants() {
        let p = MeixnerParams::formal();
        for (n, got, expected) in meixner_free_cumulants(&p, 3) {
            assert_eq!(got, expected, "n = {n}");
        }
    }

    #[test]
    fn iprm_second_cumulant() {
        let v = iprm_classical_cumulants(2);
        assert_eq!(v[1].1, PolyExpr::moment(vec![Letter(0), Letter(1)]));
        assert_eq!(v[1].1, v[1].2);
    }
}
