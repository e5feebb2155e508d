//! Free Meixner coefficients: Motzkin polynomials, the monomial-expansion
//! coefficients `C^{(π,S)}`, moments, the inner product, inversion
//! coefficients, path identities, the `T_n` sequence and the `q`
//! counterexample.

pub mod checks;
pub mod counterexample;
pub mod identities;
pub mod inversion;
pub mod tn;

use crate::exact::{Param, PolyExpr};
use crate::families::partition::{is_covered, nc_partitions};
use crate::families::IncompletePartition;
use crate::gamma::{Algebra, MWord};

pub use counterexample::{q_counterexample, QCounterexample};
pub use inversion::{inversion_coeffs, CaseTag, InversionCoeffs, InversionError};
pub use tn::{compute_t, TnRoutes};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeixnerParams {
    pub alpha: PolyExpr,
    pub beta: PolyExpr,
    pub t: PolyExpr,
    pub gamma: PolyExpr,
}

impl MeixnerParams {
    pub fn new(alpha: impl Into<PolyExpr>, beta: impl Into<PolyExpr>, t: impl Into<PolyExpr>, gamma: impl Into<PolyExpr>) -> Self {
        MeixnerParams { alpha: alpha.into(), beta: beta.into(), t: t.into(), gamma: gamma.into() }
    }

    pub fn formal() -> Self {
        MeixnerParams::new(Param::Alpha, Param::Beta, Param::T, Param::Gamma)
    }

    /// Substitutes these values for the formal parameters in `p`.
    pub fn specialize(&self, p: &PolyExpr) -> PolyExpr {
        p.substitute_all(&[
            (Param::Alpha, self.alpha.clone()),
            (Param::Beta, self.beta.clone()),
            (Param::T, self.t.clone()),
            (Param::Gamma, self.gamma.clone()),
        ])
    }
}

/// Weighted Motzkin paths of length `n`: `β` per flat step, `γ` per down step.
pub fn motzkin_poly(n: usize, beta: &PolyExpr, gamma: &PolyExpr) -> PolyExpr {
    // row[h] = weight of prefixes ending at height h
    let mut row = vec![PolyExpr::zero(); n + 2];
    row[0] = PolyExpr::one();
    for _ in 0..n {
        let mut next = vec![PolyExpr::zero(); n + 2];
        for h in 0..=n {
            if row[h].is_zero() {
                continue;
            }
            next[h + 1] += &row[h];
            next[h] += &(&row[h] * beta);
            if h > 0 {
                next[h - 1] += &(&row[h] * gamma);
            }
        }
        row = next;
    }
    row.swap_remove(0)
}

/// `(κⁿ, ωⁿ)`: the closed- and open-block factors of `C^{(π,S)}`.
pub fn kappa_omega(n: usize, p: &MeixnerParams) -> (PolyExpr, PolyExpr) {
    assert!(n >= 1);
    let kappa = if n == 1 { p.alpha.clone() } else { &p.t * &motzkin_poly(n - 2, &p.beta, &p.gamma) };
    (kappa, motzkin_poly(n - 1, &p.beta, &p.gamma))
}

/// Every refinement of `blocks` obtained by choosing a non-crossing
/// partition inside each block, together with the index of the block of
/// `blocks` each new block came from.
fn refinements(blocks: &[Vec<u8>]) -> Vec<Vec<(usize, Vec<u8>)>> {
    let mut acc: Vec<Vec<(usize, Vec<u8>)>> = vec![Vec::new()];
    for (i, u) in blocks.iter().enumerate() {
        let local = nc_partitions(u.len());
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for prefix in &acc {
            for tau in &local {
                let mut s = prefix.clone();
                for b in tau {
                    s.push((i, b.iter().map(|&j| u[j as usize]).collect()));
                }
                next.push(s);
            }
        }
        acc = next;
    }
    acc
}

/// `C^{(π,S)}` summed directly over the refinements `σ ≤ π`.
pub fn coeff_c(x: &IncompletePartition, p: &MeixnerParams) -> PolyExpr {
    let n = x.n as i64;
    let num_open = x.num_open() as i64;
    let closed_sing = x.closed_blocks().filter(|b| b.len() == 1).count() as i64;
    let num_closed = x.num_closed() as i64;
    let open_mins: Vec<u8> = x.open_blocks().map(|b| b[0]).collect();
    let mut total = PolyExpr::zero();
    for sigma in refinements(&x.blocks) {
        let closed_ok = (0..x.blocks.len()).filter(|&i| !x.open[i]).all(|i| {
            let local: Vec<Vec<u8>> = sigma.iter().filter(|(j, _)| *j == i).map(|(_, b)| b.clone()).collect();
            is_covered(&local)
        });
        if !closed_ok {
            continue;
        }
        let sing_ok = sigma.iter().filter(|(_, b)| b.len() == 1).all(|(i, b)| {
            x.blocks[*i].len() == 1 || (x.open[*i] && open_mins.contains(&b[0]))
        });
        if !sing_ok {
            continue;
        }
        let s = sigma.len() as i64;
        let beta_exp = n - 2 * s + num_open + closed_sing;
        let gamma_exp = s - x.blocks.len() as i64;
        let t_exp = num_closed - closed_sing;
        debug_assert!(beta_exp >= 0 && gamma_exp >= 0);
        total += &(&(&p.alpha.pow(closed_sing as u32) * &p.beta.pow(beta_exp as u32))
            * &(&p.t.pow(t_exp as u32) * &p.gamma.pow(gamma_exp as u32)));
    }
    total
}

/// `C^{(π,S)}` through the block factorization `Π κ^{|U|} Π ω^{|V|}`.
pub fn coeff_c_factored(x: &IncompletePartition, p: &MeixnerParams) -> PolyExpr {
    let mut acc = PolyExpr::one();
    for (b, &o) in x.blocks.iter().zip(&x.open) {
        let (k, w) = kappa_omega(b.len(), p);
        acc = &acc * if o { &w } else { &k };
    }
    acc
}

/// `Σ_{π ∈ NC(n)} C^π E^π[a₁ ⊗ ⋯ ⊗ aₙ]`.
pub fn meixner_moment(words: &[MWord], p: &MeixnerParams, alg: &Algebra) -> PolyExpr {
    let n = words.len();
    let mut total = PolyExpr::zero();
    for blocks in nc_partitions(n) {
        let x = IncompletePartition::new(n, blocks.clone(), vec![false; blocks.len()]);
        let c = coeff_c(&x, p);
        if !c.is_zero() {
            total += &(&c * &alg.block_moments(words, &blocks));
        }
    }
    total
}

/// `φ(W(a₁ ⊗ ⋯ ⊗ aₙ) W(b_k ⊗ ⋯ ⊗ b₁))` from the interval-partition formula;
/// `b` is given as `b₁, …, b_k`.
pub fn inner_product(a: &[MWord], b: &[MWord], p: &MeixnerParams, alg: &Algebra) -> PolyExpr {
    if a.len() != b.len() {
        return PolyExpr::zero();
    }
    let n = a.len();
    let mut total = PolyExpr::zero();
    for blocks in interval_partitions(n) {
        let k = blocks.len() as u32;
        let w = &p.t.pow(k) * &p.gamma.pow(n as u32 - k);
        let e = alg.pattern_e(a, b, &blocks).expect("interval partition");
        total += &(&w * &e);
    }
    total
}

/// Interval partitions of `[n]` (compositions of `n`).
pub fn interval_partitions(n: usize) -> Vec<Vec<Vec<u8>>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (0u32..1 << (n - 1))
        .map(|cuts| {
            let mut blocks = vec![vec![0u8]];
            for i in 1..n {
                if cuts & (1 << (i - 1)) != 0 {
                    blocks.push(Vec::new());
                }
                blocks.last_mut().unwrap().push(i as u8);
            }
            blocks
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilyId};
    use crate::exact::{int, Letter};
    use crate::gamma::letters;

    fn e(ls: &[u8]) -> PolyExpr {
        PolyExpr::moment(ls.iter().map(|&l| Letter(l)).collect())
    }

    fn motzkin_brute(n: usize, beta: i64, gamma: i64) -> i64 {
        // every step sequence in {up, flat, down}^n
        let mut total = 0;
        for code in 0..3usize.pow(n as u32) {
            let (mut h, mut w, mut c) = (0i64, 1i64, code);
            let mut ok = true;
            for _ in 0..n {
                match c % 3 {
                    0 => h += 1,
                    1 => w *= beta,
                    _ => {
                        h -= 1;
                        w *= gamma;
                    }
                }
                if h < 0 {
                    ok = false;
                    break;
                }
                c /= 3;
            }
            if ok && h == 0 {
                total += w;
            }
        }
        total
    }

    #[test]
    fn motzkin_values() {
        let b = PolyExpr::param(Param::Beta);
        let g = PolyExpr::param(Param::Gamma);
        assert_eq!(motzkin_poly(0, &b, &g), PolyExpr::one());
        assert_eq!(motzkin_poly(2, &b, &g), &(&b * &b) + &g);
        let one = PolyExpr::one();
        let m: Vec<i64> = (0..8).map(|n| motzkin_poly(n, &one, &one).as_i64().unwrap()).collect();
        assert_eq!(m, vec![1, 1, 2, 4, 9, 21, 51, 127]);
        for n in 0..8 {
            assert_eq!(motzkin_poly(n, &PolyExpr::int(3), &PolyExpr::int(2)).as_i64().unwrap(), motzkin_brute(n, 3, 2));
        }
    }

    #[test]
    fn coefficient_examples() {
        let p = MeixnerParams::formal();
        assert_eq!(coeff_c(&IncompletePartition::new(3, vec![vec![0], vec![1], vec![2]], vec![true; 3]), &p), PolyExpr::one());
        assert_eq!(coeff_c(&IncompletePartition::new(1, vec![vec![0]], vec![false]), &p), p.alpha);
        assert_eq!(coeff_c(&IncompletePartition::new(2, vec![vec![0, 1]], vec![false]), &p), p.t);
        let (k3, w1) = (kappa_omega(3, &p).0, kappa_omega(1, &p).1);
        assert_eq!(k3, &p.t * &p.beta);
        assert_eq!(w1, PolyExpr::one());
    }

    #[test]
    fn factorization_small() {
        let p = MeixnerParams::formal();
        for n in 1..=4 {
            for x in generate(FamilyId::Inc, n).unwrap() {
                let x = x.as_partition().unwrap();
                assert_eq!(coeff_c(x, &p), coeff_c_factored(x, &p), "{x}");
            }
        }
    }

    #[test]
    fn moment_examples() {
        let p = MeixnerParams::formal();
        let alg = Algebra::Free;
        let a = letters(3);
        assert_eq!(meixner_moment(&a[..1], &p, &alg), &p.alpha * &e(&[0]));
        let m2 = &(&(&p.alpha * &p.alpha) * &e(&[0])) * &e(&[1]);
        assert_eq!(meixner_moment(&a[..2], &p, &alg), &m2 + &(&p.t * &e(&[0, 1])));
        let m3 = meixner_moment(&a, &p, &alg);
        let expected = &(&(&p.alpha.pow(3) * &(&(&e(&[0]) * &e(&[1])) * &e(&[2])))
            + &(&(&p.alpha * &p.t) * &(&(&(&e(&[0, 1]) * &e(&[2])) + &(&e(&[0]) * &e(&[1, 2]))) + &(&e(&[1]) * &e(&[0, 2])))))
            + &(&(&p.t * &p.beta) * &e(&[0, 1, 2]));
        assert_eq!(m3, expected);
    }

    #[test]
    fn inner_product_examples() {
        let p = MeixnerParams::formal();
        let alg = Algebra::Free;
        let a = letters(2);
        let b: Vec<MWord> = vec![vec![Letter(5)], vec![Letter(6)]];
        assert_eq!(inner_product(&a[..1], &b[..1], &p, &alg), &p.t * &e(&[0, 5]));
        assert_eq!(inner_product(&a[..1], &b, &p, &alg), PolyExpr::zero());
        let expected = &(&(&p.t * &p.t) * &(&e(&[1, 6]) * &e(&[0, 5]))) + &(&(&p.t * &p.gamma) * &e(&[0, 1, 6, 5]));
        assert_eq!(inner_product(&a, &b, &p, &alg), expected);
        assert_eq!(interval_partitions(4).len(), 8);
        let _ = int(0);
    }
}
