//! A product of three `q`-Kailath-Segall polynomials whose state does not
//! vanish for `0 < q < 1`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exact::{Letter, Param, PolyExpr, Rational};
use crate::gamma::{letters, Algebra, IndicatorAlgebra};
use crate::wick::{Wick, WickFamily};

#[derive(Clone, Debug, Serialize)]
pub struct QCounterexample {
    /// `φ_q(W_q(a0) W_q(a1 ⊗ a2 ⊗ a3) W_q(a4))` with formal commuting letters.
    pub symbolic: String,
    pub symbolic_matches: bool,
    /// The same state with `a0 = a2 = χ_I`, `a1 = a3 = a4 = χ_J`.
    pub numeric: String,
    pub numeric_matches: bool,
    pub measure_i: String,
    pub measure_j: String,
    pub vanishes_at_q0: bool,
    pub vanishes_at_q1: bool,
}

impl QCounterexample {
    pub fn pass(&self) -> bool {
        self.symbolic_matches && self.numeric_matches && self.vanishes_at_q0 && self.vanishes_at_q1
    }
}

/// `φ_q(W_q(a0) W_q(a1 ⊗ a2 ⊗ a3) W_q(a4))` in the given algebra.
pub fn q_state(alg: &Algebra) -> PolyExpr {
    let fam = WickFamily::q_formal();
    let eng = Wick::new(&fam, alg);
    let a = letters(5);
    let g = &(&eng.expand(&a[0..1]) * &eng.expand(&a[1..4])) * &eng.expand(&a[4..5]);
    eng.phi(&g)
}

/// `q − q²`.
pub fn q_minus_q2() -> PolyExpr {
    let q = PolyExpr::param(Param::Q);
    &q - &(&q * &q)
}

fn e(ls: &[u8]) -> PolyExpr {
    PolyExpr::moment(ls.iter().map(|&l| Letter(l)).collect())
}

/// Indicator algebra with `a0 = a2 = χ_I` and `a1 = a3 = a4 = χ_J` for
/// disjoint `I`, `J`.
pub fn indicator_instance(measure_i: Rational, measure_j: Rational) -> Algebra {
    let sets: BTreeMap<Letter, u64> = [(0, 0b01), (1, 0b10), (2, 0b01), (3, 0b10), (4, 0b10)]
        .into_iter()
        .map(|(l, s)| (Letter(l), s))
        .collect();
    Algebra::Indicator(IndicatorAlgebra::new(sets, vec![measure_i, measure_j]).expect("disjoint atoms"))
}

pub fn q_counterexample(measure_i: Rational, measure_j: Rational) -> QCounterexample {
    let symbolic = q_state(&Algebra::Commutative);
    let expected = &q_minus_q2() * &(&(&e(&[0, 2]) * &e(&[1, 3, 4])) - &(&e(&[0, 2, 4]) * &e(&[1, 3])));
    let numeric = q_state(&indicator_instance(measure_i.clone(), measure_j.clone()));
    let expected_numeric = q_minus_q2().scale(&(&measure_i * &measure_j));
    let at = |v: i64| symbolic.substitute(Param::Q, &PolyExpr::int(v)).is_zero();
    QCounterexample {
        symbolic_matches: symbolic == expected,
        symbolic: symbolic.to_string(),
        numeric_matches: numeric == expected_numeric,
        numeric: numeric.to_string(),
        measure_i: crate::exact::format_rational(&measure_i),
        measure_j: crate::exact::format_rational(&measure_j),
        vanishes_at_q0: at(0),
        vanishes_at_q1: at(1),
    }
}
