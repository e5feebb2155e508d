//! `T_n`: the sum of all coefficients of the free Meixner monomial expansion.

use rayon::prelude::*;

use super::{kappa_omega, motzkin_poly, MeixnerParams};
use crate::exact::{solve_state_gf, ExactError, PolyExpr, Series};
use crate::families::{generate, FamilyError, FamilyId};

/// `T_0..T_nmax` computed twice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TnRoutes {
    /// Direct sums over `INC(n)`.
    pub direct: Vec<PolyExpr>,
    /// Coefficients of `1/(1 − z R(z m(z)))`.
    pub series: Vec<PolyExpr>,
}

impl TnRoutes {
    pub fn agree(&self) -> bool {
        self.direct == self.series
    }
}

/// The parameters at which `T_n` is usually tabulated: `α = t = γ = 1`,
/// `β = 2`.
pub fn default_params() -> MeixnerParams {
    MeixnerParams::new(1, 2, 1, 1)
}

#[derive(Debug, thiserror::Error)]
pub enum TnError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Series(#[from] ExactError),
}

/// `Σ_{(π,S) ∈ INC(n)} Π κ^{|U|} Π ω^{|V|}`.
pub fn t_direct(n: usize, p: &MeixnerParams) -> Result<PolyExpr, FamilyError> {
    let kw: Vec<(PolyExpr, PolyExpr)> = (1..=n.max(1)).map(|k| kappa_omega(k, p)).collect();
    let mut total = PolyExpr::zero();
    for x in generate(FamilyId::Inc, n)? {
        let x = x.as_partition().expect("INC elements are partitions");
        let mut term = PolyExpr::one();
        for (b, &o) in x.blocks.iter().zip(&x.open) {
            let (k, w) = &kw[b.len() - 1];
            term = &term * if o { w } else { k };
        }
        total += &term;
    }
    Ok(total)
}

/// `T_0..T_nmax` through the generating functions `r`, `R`, `m` and `M`.
pub fn t_series(nmax: usize, p: &MeixnerParams) -> Result<Vec<PolyExpr>, ExactError> {
    let order = nmax + 2;
    let f = Series::new((0..order).map(|n| motzkin_poly(n, &p.beta, &p.gamma)).collect());
    let alpha = Series::constant(p.alpha.clone(), order);
    let tz = Series::new(vec![PolyExpr::zero(), p.t.clone()]).truncate(order);
    let r = &alpha + &(&tz * &f);
    let big_r = &alpha + &(&(&tz + &Series::one(order)) * &f);
    let m = solve_state_gf(&r, order)?;
    let zm = m.shift_up(1).truncate(order);
    let inner = big_r.compose(&zm)?;
    let gf = (&Series::one(order) - &inner.shift_up(1).truncate(order)).inverse()?;
    Ok(gf.coeffs()[..=nmax].to_vec())
}

/// Both routes for `T_0..T_nmax`; the direct sums run in parallel.
pub fn compute_t(nmax: usize, p: &MeixnerParams) -> Result<TnRoutes, TnError> {
    let (direct, series) = rayon::join(
        || (0..=nmax).into_par_iter().map(|n| t_direct(n, p)).collect::<Result<Vec<_>, _>>(),
        || t_series(nmax, p),
    );
    Ok(TnRoutes { direct: direct?, series: series? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_terms() {
        let r = compute_t(5, &default_params()).unwrap();
        let v: Vec<i64> = r.direct.iter().map(|x| x.as_i64().unwrap()).collect();
        assert_eq!(v, vec![1, 2, 7, 30, 140, 684]);
        assert!(r.agree());
    }

    #[test]
    fn moment_series_is_schroder() {
        let p = default_params();
        let order = 6;
        let f = Series::new((0..order).map(|n| motzkin_poly(n, &p.beta, &p.gamma)).collect());
        let r = &Series::one(order) + &(&Series::z(order) * &f);
        let m = solve_state_gf(&r, order).unwrap();
        let v: Vec<i64> = m.coeffs().iter().map(|x| x.as_i64().unwrap()).collect();
        assert_eq!(v, vec![1, 1, 2, 6, 22, 90]);
    }
}
