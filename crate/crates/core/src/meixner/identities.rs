//! Moment identities: the Motzkin-path (continued fraction) form of the free
//! Meixner moments, and the Schröder and Motzkin specializations.

use serde::Serialize;

use super::{motzkin_poly, MeixnerParams};
use crate::exact::{binomial, PolyExpr};
use crate::families::partition::{nc_partitions, outer_flags};

/// The three expressions for the `n`-th moment.
#[derive(Clone, Debug, Serialize)]
pub struct ViennotReport {
    pub n: usize,
    pub matchings: String,
    pub partitions: String,
    pub paths: String,
    pub pass: bool,
}

/// Sum over `NC_{1,2}(n)`: outer singletons `α`, inner singletons `α + β`,
/// outer pairs `t`, inner pairs `t + γ`.
pub fn viennot_matchings(n: usize, p: &MeixnerParams) -> PolyExpr {
    let inner_single = &p.alpha + &p.beta;
    let inner_pair = &p.t + &p.gamma;
    let mut total = PolyExpr::zero();
    for blocks in nc_partitions(n).into_iter().filter(|b| b.iter().all(|u| u.len() <= 2)) {
        let mut term = PolyExpr::one();
        for (u, outer) in blocks.iter().zip(outer_flags(&blocks)) {
            let w = match (u.len(), outer) {
                (1, true) => &p.alpha,
                (1, false) => &inner_single,
                (_, true) => &p.t,
                (_, false) => &inner_pair,
            };
            term = &term * w;
        }
        total += &term;
    }
    total
}

/// Sum over `NC(n)` with exponents read off singletons and outer blocks.
pub fn viennot_partitions(n: usize, p: &MeixnerParams) -> PolyExpr {
    let t_gamma = &p.t + &p.gamma;
    let mut total = PolyExpr::zero();
    for blocks in nc_partitions(n) {
        let sing = blocks.iter().filter(|b| b.len() == 1).count() as u32;
        let outer_big = blocks.iter().zip(outer_flags(&blocks)).filter(|(b, o)| *o && b.len() > 1).count() as u32;
        let size = blocks.len() as u32;
        let term = &(&p.alpha.pow(sing) * &p.beta.pow(n as u32 + sing - 2 * size))
            * &(&p.t.pow(outer_big) * &t_gamma.pow(size - sing - outer_big));
        total += &term;
    }
    total
}

/// Motzkin paths with flat steps `α` at height 0 and `α + β` above, and
/// down steps `t` to height 0 and `t + γ` otherwise.
pub fn viennot_paths(n: usize, p: &MeixnerParams) -> PolyExpr {
    let b_hi = &p.alpha + &p.beta;
    let l_hi = &p.t + &p.gamma;
    let mut row = vec![PolyExpr::zero(); n + 2];
    row[0] = PolyExpr::one();
    for _ in 0..n {
        let mut next = vec![PolyExpr::zero(); n + 2];
        for h in 0..=n {
            if row[h].is_zero() {
                continue;
            }
            next[h + 1] += &row[h];
            next[h] += &(&row[h] * if h == 0 { &p.alpha } else { &b_hi });
            if h > 0 {
                next[h - 1] += &(&row[h] * if h == 1 { &p.t } else { &l_hi });
            }
        }
        row = next;
    }
    row.swap_remove(0)
}

pub fn verify_viennot(n: usize, p: &MeixnerParams) -> ViennotReport {
    let a = viennot_matchings(n, p);
    let b = viennot_partitions(n, p);
    let c = viennot_paths(n, p);
    let pass = a == b && b == c;
    ViennotReport { n, matchings: a.to_string(), partitions: b.to_string(), paths: c.to_string(), pass }
}

/// Large Schröder numbers from `(k+1) S_k = 3(2k−1) S_{k−1} − (k−2) S_{k−2}`.
pub fn large_schroder(count: usize) -> Vec<i64> {
    let mut s: Vec<i64> = vec![1, 2];
    for k in 2..count as i64 {
        let v = (3 * (2 * k - 1) * s[k as usize - 1] - (k - 2) * s[k as usize - 2]) / (k + 1);
        s.push(v);
    }
    s.truncate(count);
    s
}

fn catalan(k: usize) -> i64 {
    (binomial(2 * k as i64, k as i64) / crate::exact::int(k as i64 + 1))
        .to_integer()
        .try_into()
        .expect("small Catalan number")
}

#[derive(Clone, Debug, Serialize)]
pub struct SchroderReport {
    pub n: usize,
    pub schroder: i64,
    pub catalan_cumulants: i64,
    pub power_sum: i64,
    pub motzkin_cumulants: i64,
    pub motzkin_power_sum: i64,
    pub motzkin_paths: i64,
    pub pass: bool,
}

/// Both identities at size `n`: `Sch_{n−1}` through Catalan cumulants and
/// through powers of two, and the Motzkin-cumulant analogue over
/// `NC_{≥2}(n)` checked against the path moment at `α = 0`, `β = t = γ = 1`.
pub fn schroder_motzkin(n: usize) -> SchroderReport {
    assert!(n >= 1);
    let schroder = large_schroder(n)[n - 1];
    let one = PolyExpr::one();
    let mut catalan_cumulants = 0;
    let mut power_sum = 0;
    let mut motzkin_cumulants = 0;
    let mut motzkin_power_sum = 0;
    for blocks in nc_partitions(n) {
        let outer = outer_flags(&blocks);
        let size = blocks.len();
        let sing = blocks.iter().filter(|b| b.len() == 1).count();
        let outer_count = outer.iter().filter(|o| **o).count();
        let outer_big = blocks.iter().zip(&outer).filter(|(b, o)| **o && b.len() > 1).count();
        catalan_cumulants += blocks.iter().map(|b| catalan(b.len() - 1)).product::<i64>();
        power_sum += 1i64 << (n - size - outer_big);
        if sing == 0 {
            motzkin_cumulants += blocks
                .iter()
                .map(|b| motzkin_poly(b.len() - 2, &one, &one).as_i64().unwrap())
                .product::<i64>();
            motzkin_power_sum += 1i64 << (size - outer_count);
        }
    }
    let motzkin_paths = viennot_paths(n, &MeixnerParams::new(0, 1, 1, 1)).as_i64().unwrap();
    let pass = schroder == catalan_cumulants
        && schroder == power_sum
        && motzkin_cumulants == motzkin_power_sum
        && motzkin_cumulants == motzkin_paths;
    SchroderReport { n, schroder, catalan_cumulants, power_sum, motzkin_cumulants, motzkin_power_sum, motzkin_paths, pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let p = MeixnerParams::formal();
        assert_eq!(viennot_paths(1, &p), p.alpha);
        let two = &(&p.alpha * &p.alpha) + &p.t;
        assert_eq!(viennot_matchings(2, &p), two);
        assert_eq!(viennot_partitions(2, &p), two);
        assert!(verify_viennot(4, &p).pass);
    }

    #[test]
    fn schroder_values() {
        assert_eq!(large_schroder(6), vec![1, 2, 6, 22, 90, 394]);
        let r = schroder_motzkin(3);
        assert_eq!((r.schroder, r.catalan_cumulants, r.power_sum), (6, 6, 6));
        assert!(schroder_motzkin(4).pass);
    }

    #[test]
    fn schroder_at_four_from_paths() {
        let v = viennot_paths(4, &MeixnerParams::new(1, 2, 1, 1));
        assert_eq!(v.as_i64(), Some(large_schroder(4)[3]));
    }
}
