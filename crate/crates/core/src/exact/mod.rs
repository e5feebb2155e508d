//! Exact arithmetic: rationals, multivariate polynomials and truncated power
//! series.

pub mod poly;
pub mod series;

pub use poly::{format_rational, int, parse_rational, rat, Letter, Monomial, Param, PolyExpr, Rational, Symbol};
pub use series::{solve_state_gf, Series};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("constant term is not an invertible rational")]
    NonInvertibleConstant,
    #[error("square root needs constant term 1")]
    SqrtConstant,
    #[error("inner series of a composition must have zero constant term")]
    ComposeConstant,
    #[error("series is not divisible by z^{0}")]
    NotDivisible(usize),
    #[error("state equation has no solution at this order")]
    NoSolution,
}

/// Binomial coefficient `C(n, k)` as an exact integer; zero outside range.
pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || n < 0 || k > n {
        return int(0);
    }
    let k = k.min(n - k);
    let mut acc = num_bigint::BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rational::from_integer(acc)
}

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> Rational {
    let mut acc = num_bigint::BigInt::from(1);
    for i in 2..=n {
        acc *= i;
    }
    Rational::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), int(20));
        assert_eq!(binomial(3, 5), int(0));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(factorial(5), int(120));
    }
}
