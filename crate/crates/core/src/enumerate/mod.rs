//! Enumeration of the incomplete families by closed and open blocks, the
//! closed forms for their sizes, and univariate specializations of the Wick
//! products.

pub mod narayana;
pub mod orthopoly;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::families::{generate, rank, Element, FamilyError, FamilyId};
use crate::wick::Report;

pub use narayana::{narayana_table, verify_narayana};
pub use orthopoly::{specialize_univariate, UniPoly};

/// `|family(n)|` split by the number `k` of closed blocks and `ℓ` of open
/// blocks. For the matching families the pairs are closed and the
/// singletons open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub family: FamilyId,
    pub n: usize,
    /// `(k, ℓ) → count`, zero entries omitted.
    pub entries: BTreeMap<(usize, usize), BigInt>,
    /// Rank in the family's grading → count.
    pub by_rank: BTreeMap<usize, BigInt>,
}

impl CountTable {
    pub fn get(&self, k: usize, l: usize) -> BigInt {
        self.entries.get(&(k, l)).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigInt {
        self.entries.values().sum()
    }

    /// Number of elements with `ℓ` open blocks.
    pub fn open_marginal(&self, l: usize) -> BigInt {
        self.entries.iter().filter(|((_, b), _)| *b == l).map(|(_, c)| c).sum()
    }

    /// JSON rows `{family, n, k, l, count}` with the count as a decimal string.
    pub fn json_rows(&self) -> Vec<serde_json::Value> {
        self.entries
            .iter()
            .map(|((k, l), c)| {
                serde_json::json!({"family": self.family.name(), "n": self.n, "k": k, "l": l, "count": c.to_string()})
            })
            .collect()
    }

    pub fn tsv_rows(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|((k, l), c)| format!("{}\t{}\t{}\t{}\t{}", self.family, self.n, k, l, c))
            .collect()
    }
}

pub const TSV_HEADER: &str = "family\tn\tk\tl\tcount";

pub fn counts(family: FamilyId, n: usize) -> Result<CountTable, FamilyError> {
    let mut entries = BTreeMap::new();
    let mut by_rank = BTreeMap::new();
    for x in generate(family, n)? {
        *entries.entry((x.num_closed(), x.num_open())).or_insert_with(BigInt::zero) += 1;
        *by_rank.entry(rank(family, &x)).or_insert_with(BigInt::zero) += 1;
    }
    Ok(CountTable { family, n, entries, by_rank })
}

/// All count tables for `n ≤ nmax` in a single TSV document.
pub fn counts_tsv(nmax: usize) -> Result<String, FamilyError> {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for family in FamilyId::ALL {
        for n in 0..=nmax.min(family.max_n()) {
            for row in counts(family, n)?.tsv_rows() {
                out.push_str(&row);
                out.push('\n');
            }
        }
    }
    Ok(out)
}

pub fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Stirling numbers of the second kind `S(n, k)` for `n, k ≤ nmax`.
pub fn stirling2(nmax: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); nmax + 1]; nmax + 1];
    s[0][0] = BigInt::one();
    for n in 1..=nmax {
        for k in 1..=n {
            s[n][k] = &s[n - 1][k - 1] + &s[n - 1][k] * k;
        }
    }
    s
}

/// Unsigned Stirling numbers of the first kind `c(n, k)`.
pub fn stirling1(nmax: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); nmax + 1]; nmax + 1];
    s[0][0] = BigInt::one();
    for n in 1..=nmax {
        for k in 1..=n {
            s[n][k] = &s[n - 1][k - 1] + &s[n - 1][k] * (n - 1);
        }
    }
    s
}

pub fn bell(nmax: usize) -> Vec<BigInt> {
    stirling2(nmax).iter().map(|row| row.iter().sum()).collect()
}

/// `Σ_i C(n, i) B_i B_{n−i}`.
pub fn ip_total(n: usize) -> BigInt {
    let b = bell(n);
    (0..=n).map(|i| binom(n, i) * &b[i] * &b[n - i]).sum()
}

/// `(2ℓ + 1)/(n + ℓ + 1) · C(2n, n − ℓ)`; `None` if the quotient is not an
/// integer.
pub fn inc_open_count(n: usize, l: usize) -> Option<BigInt> {
    if l > n {
        return Some(BigInt::zero());
    }
    let num = binom(2 * n, n - l) * (2 * l + 1);
    let den = BigInt::from(n + l + 1);
    (&num % &den).is_zero().then(|| num / den)
}

/// `Σ_ℓ C(n, ℓ)² ℓ!`.
pub fn iprm_total(n: usize) -> BigInt {
    (0..=n).map(|l| binom(n, l) * binom(n, l) * factorial(l)).sum()
}

/// Coefficients in `t` of `C(n, ℓ)(t + ℓ)(t + ℓ + 1)⋯(t + n − 1)`.
pub fn incomplete_stirling1_gf(n: usize, l: usize) -> Vec<BigInt> {
    let mut p = vec![binom(n, l)];
    for c in l..n {
        let mut q = vec![BigInt::zero(); p.len() + 1];
        for (i, a) in p.iter().enumerate() {
            q[i] += a * c;
            q[i + 1] += a;
        }
        p = q;
    }
    p
}

fn involutions(n: usize) -> BigInt {
    let mut a = vec![BigInt::one(), BigInt::one()];
    for m in 2..=n {
        let next = &a[m - 1] + &a[m - 2] * (m - 1);
        a.push(next);
    }
    a[n].clone()
}

fn double_factorial_odd(k: usize) -> BigInt {
    // (2k − 1)!!
    (1..=k).fold(BigInt::one(), |acc, i| acc * (2 * i - 1))
}

fn check(r: &mut Report, what: &str, got: &BigInt, want: &BigInt) {
    r.checked += 1;
    if got != want {
        r.fail(format!("{what}: enumerated {got}, closed form {want}"));
    }
}

/// Every closed-form count for `family(n)` against direct enumeration.
pub fn verify_counts(family: FamilyId, n: usize) -> Result<Report, FamilyError> {
    let table = counts(family, n)?;
    let mut r = Report::new(family.name(), "counts", "count").with_n(n);
    // The grading and the (k, ℓ) table must see the same elements.
    let rank_total: BigInt = table.by_rank.values().sum();
    check(&mut r, "rank marginal total", &rank_total, &table.total());
    match family {
        FamilyId::P12 => {
            check(&mut r, "|P12(n)|", &table.total(), &involutions(n));
            for k in 0..=n / 2 {
                let want = binom(n, 2 * k) * double_factorial_odd(k);
                check(&mut r, &format!("pairs = {k}"), &table.get(k, n - 2 * k), &want);
            }
        }
        FamilyId::Inc12 => {
            check(&mut r, "|INC12(n)|", &table.total(), &binom(n, n / 2));
            for k in 0..=n / 2 {
                let want = binom(n, k) - if k > 0 { binom(n, k - 1) } else { BigInt::zero() };
                check(&mut r, &format!("pairs = {k}"), &table.get(k, n - 2 * k), &want);
            }
        }
        FamilyId::Ip => {
            check(&mut r, "|IP(n)|", &table.total(), &ip_total(n));
            let s = stirling2(n);
            for k in 0..=n {
                for l in 0..=n - k {
                    let want = binom(k + l, l) * &s[n][k + l];
                    check(&mut r, &format!("S(n,{k},{l})"), &table.get(k, l), &want);
                }
            }
            for l in 0..=n {
                let want: BigInt = (0..=n - l).map(|k| binom(k + l, l) * &s[n][k + l]).sum();
                check(&mut r, &format!("open = {l}"), &table.open_marginal(l), &want);
            }
        }
        FamilyId::Inc => {
            check(&mut r, "|INC(n)|", &table.total(), &binom(2 * n, n));
            for l in 0..=n {
                match inc_open_count(n, l) {
                    Some(want) => check(&mut r, &format!("open = {l}"), &table.open_marginal(l), &want),
                    None => r.fail(format!("open = {l}: closed form is not an integer")),
                }
                let reflection = binom(2 * n, n + l) - binom(2 * n, n + l + 1);
                check(&mut r, &format!("open = {l} (reflection)"), &table.open_marginal(l), &reflection);
            }
        }
        FamilyId::Iprm => {
            check(&mut r, "|IPRM(n)|", &table.total(), &iprm_total(n));
            for rk in 0..=n {
                let got = table.by_rank.get(&rk).cloned().unwrap_or_default();
                let want = binom(n, rk) * binom(n, rk) * factorial(rk);
                check(&mut r, &format!("|Λ| = {rk}"), &got, &want);
            }
            for l in 0..=n {
                let gf = incomplete_stirling1_gf(n, l);
                for k in 0..=n {
                    let want = gf.get(k).cloned().unwrap_or_default();
                    check(&mut r, &format!("s(n,{k},{l})"), &table.get(k, l), &want);
                }
            }
        }
    }
    Ok(r)
}

/// `s_{n+1,k,ℓ} = s_{n,k−1,ℓ} + s_{n,k,ℓ−1} + (n + ℓ) s_{n,k,ℓ}`.
pub fn verify_stirling1_recursion(n: usize) -> Result<Report, FamilyError> {
    let a = counts(FamilyId::Iprm, n)?;
    let b = counts(FamilyId::Iprm, n + 1)?;
    let mut r = Report::new("IPRM", "stirling1_recursion", "count").with_n(n + 1);
    for k in 0..=n + 1 {
        for l in 0..=n + 1 {
            let mut want = &a.get(k, l) * (n + l);
            if k > 0 {
                want += a.get(k - 1, l);
            }
            if l > 0 {
                want += a.get(k, l - 1);
            }
            check(&mut r, &format!("s({},{k},{l})", n + 1), &b.get(k, l), &want);
        }
    }
    Ok(r)
}

/// Over IP(n) elements whose closed blocks are singletons, with `k` closed
/// and `ℓ` open blocks: `Σ Π_{V open} (|V| − 1)! = C(n, k) c(n − k, ℓ)`.
pub fn verify_charlier_stirling(n: usize) -> Result<Report, FamilyError> {
    let c = stirling1(n);
    let mut sums: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    for x in generate(FamilyId::Ip, n)? {
        let Element::Partition(p) = &x else { continue };
        if p.closed_blocks().any(|b| b.len() != 1) {
            continue;
        }
        let w: BigInt = p.open_blocks().map(|b| factorial(b.len() - 1)).product();
        *sums.entry((p.num_closed(), p.num_open())).or_insert_with(BigInt::zero) += w;
    }
    let mut r = Report::new("IP", "charlier_stirling", "count").with_n(n);
    for k in 0..=n {
        for l in 0..=n - k {
            let got = sums.get(&(k, l)).cloned().unwrap_or_default();
            check(&mut r, &format!("k = {k}, ℓ = {l}"), &got, &(binom(n, k) * &c[n - k][l]));
        }
    }
    Ok(r)
}

/// All count checks for `n ≤ nmax` (IPRM capped at its enumeration bound).
pub fn verify_all_counts(nmax: usize) -> Result<Vec<Report>, FamilyError> {
    let mut out = Vec::new();
    for family in FamilyId::ALL {
        for n in 0..=nmax.min(family.max_n()) {
            out.push(verify_counts(family, n)?);
        }
    }
    for n in 0..nmax.min(FamilyId::Iprm.max_n()) {
        out.push(verify_stirling1_recursion(n)?);
    }
    for n in 0..=nmax {
        out.push(verify_charlier_stirling(n)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_tables() {
        assert_eq!(counts(FamilyId::Ip, 2).unwrap().total(), BigInt::from(6));
        let inc = counts(FamilyId::Inc, 2).unwrap();
        let by_open: Vec<BigInt> = (0..=2).map(|l| inc.open_marginal(l)).collect();
        assert_eq!(by_open, ints(&[2, 3, 1]));
        assert_eq!(counts(FamilyId::Iprm, 3).unwrap().total(), BigInt::from(34));
    }

    #[test]
    fn closed_form_sequences() {
        // A001861, A000984, A002720 from their own recurrences.
        assert_eq!((0..=6).map(ip_total).collect::<Vec<_>>(), ints(&[1, 2, 6, 22, 94, 454, 2430]));
        assert_eq!((0..=4).map(|n| binom(2 * n, n)).collect::<Vec<_>>(), ints(&[1, 2, 6, 20, 70]));
        assert_eq!((1..=4).map(iprm_total).collect::<Vec<_>>(), ints(&[2, 7, 34, 209]));
        assert_eq!(incomplete_stirling1_gf(3, 1), ints(&[6, 9, 3]));
    }

    #[test]
    fn all_counts_to_five() {
        for r in verify_all_counts(5).unwrap() {
            assert!(r.pass, "{r}");
        }
    }
}
