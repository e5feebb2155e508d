//! Coefficient algebras, their functionals, and the algebra `Γ(M)`.
//!
//! Letters are self-adjoint generators of `M`. An [`Algebra`] fixes how
//! products of letters are put in canonical form and how the functional `E`
//! evaluates them. Elements of `Γ(M)` live in [`elem`].

pub mod elem;

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{Letter, PolyExpr, Rational};
use crate::families::partition::{is_interval, is_noncrossing};
use crate::families::IncompletePartition;

pub use elem::GammaElem;

/// A product `a₁a₂⋯a_k` of letters.
pub type MWord = Vec<Letter>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GammaError {
    #[error("partition is crossing")]
    Crossing,
    #[error("partition is not an interval partition")]
    NotInterval,
    #[error("argument lists have different lengths")]
    SizeMismatch,
    #[error("atom sets of indicator letters must be closed under nonempty intersection")]
    NotIntersectionClosed,
    #[error("indicator letters need nonempty atom sets")]
    EmptyLetter,
}

/// Indicator functions of unions of measured atoms.
///
/// Products are intersections. Every nonempty intersection of letters must
/// again be the set of some letter, so that products can be written as
/// letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorAlgebra {
    letters: BTreeMap<Letter, u64>,
    measures: Vec<Rational>,
}

impl IndicatorAlgebra {
    /// `letters` maps each letter to a bitmask of atoms; `measures[i]` is the
    /// measure of atom `i`.
    pub fn new(letters: BTreeMap<Letter, u64>, measures: Vec<Rational>) -> Result<Self, GammaError> {
        let sets: Vec<u64> = letters.values().copied().collect();
        if sets.contains(&0) {
            return Err(GammaError::EmptyLetter);
        }
        for &a in &sets {
            for &b in &sets {
                let c = a & b;
                if c != 0 && !sets.contains(&c) {
                    return Err(GammaError::NotIntersectionClosed);
                }
            }
        }
        Ok(IndicatorAlgebra { letters, measures })
    }

    pub fn atoms(&self, l: Letter) -> u64 {
        self.letters.get(&l).copied().unwrap_or(0)
    }

    /// Smallest letter with exactly the given atom set.
    fn letter_for(&self, set: u64) -> Option<Letter> {
        self.letters.iter().find(|(_, &s)| s == set).map(|(l, _)| *l)
    }

    fn product(&self, w: &[Letter]) -> u64 {
        w.iter().fold(u64::MAX, |acc, l| acc & self.atoms(*l))
    }

    pub fn measure(&self, set: u64) -> Rational {
        (0..64)
            .filter(|i| set & (1u64 << i) != 0)
            .map(|i| self.measures.get(i).cloned().unwrap_or_else(Rational::zero))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// How letters multiply and how `E` evaluates words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Algebra {
    /// Noncommutative `M`; `E[w]` is a formal symbol.
    Free,
    /// Commutative `M`; words are sorted.
    Commutative,
    /// Noncommutative `M` with a tracial `E`; moments are taken up to rotation.
    Tracial,
    /// Commuting projections: `a² = a`, and `E[a]` of a single letter is the
    /// given trace value.
    Projection(PolyExpr),
    /// Indicator functions with a rational measure.
    Indicator(IndicatorAlgebra),
}

/// Smallest rotation of a word.
pub fn min_rotation(w: &[Letter]) -> MWord {
    (0..w.len().max(1))
        .map(|i| {
            let mut r = w[i.min(w.len())..].to_vec();
            r.extend_from_slice(&w[..i.min(w.len())]);
            r
        })
        .min()
        .unwrap_or_default()
}

impl Algebra {
    pub fn name(&self) -> &'static str {
        match self {
            Algebra::Free => "free",
            Algebra::Commutative => "commutative",
            Algebra::Tracial => "tracial",
            Algebra::Projection(_) => "projection",
            Algebra::Indicator(_) => "indicator",
        }
    }

    /// Canonical form of a product of letters, or `None` if it is zero.
    pub fn canon(&self, w: &[Letter]) -> Option<MWord> {
        match self {
            Algebra::Free | Algebra::Tracial => Some(w.to_vec()),
            Algebra::Commutative => {
                let mut v = w.to_vec();
                v.sort_unstable();
                Some(v)
            }
            Algebra::Projection(_) => {
                let mut v = w.to_vec();
                v.sort_unstable();
                v.dedup();
                Some(v)
            }
            Algebra::Indicator(ind) => {
                let set = ind.product(w);
                if set == 0 {
                    None
                } else {
                    Some(vec![ind.letter_for(set).expect("intersection-closed letters")])
                }
            }
        }
    }

    /// Product of two canonical words.
    pub fn mul(&self, a: &[Letter], b: &[Letter]) -> Option<MWord> {
        let mut w = a.to_vec();
        w.extend_from_slice(b);
        self.canon(&w)
    }

    /// The functional `E` on a product of letters.
    pub fn expect(&self, w: &[Letter]) -> PolyExpr {
        match self {
            Algebra::Free => PolyExpr::moment(w.to_vec()),
            Algebra::Commutative => PolyExpr::moment(self.canon(w).unwrap()),
            Algebra::Tracial => PolyExpr::moment(min_rotation(w)),
            Algebra::Projection(trace) => {
                let v = self.canon(w).unwrap();
                if v.len() == 1 {
                    trace.clone()
                } else {
                    PolyExpr::moment(v)
                }
            }
            Algebra::Indicator(ind) => PolyExpr::constant(ind.measure(ind.product(w))),
        }
    }

    /// Canonical moment key of `E[w]` for symbolic modes.
    fn moment_key(&self, w: &[Letter]) -> MWord {
        match self {
            Algebra::Commutative | Algebra::Projection(_) => self.canon(w).unwrap(),
            Algebra::Tracial => min_rotation(w),
            _ => w.to_vec(),
        }
    }

    /// Complex conjugation of a scalar: `E[w]` becomes `E[w*] = E[reverse w]`.
    pub fn conj(&self, p: &PolyExpr) -> PolyExpr {
        p.map_moments(|w| {
            let mut r = w.to_vec();
            r.reverse();
            PolyExpr::moment(self.moment_key(&r))
        })
    }

    /// Adjoint of a canonical word.
    pub fn star_word(&self, w: &[Letter]) -> MWord {
        let mut r = w.to_vec();
        r.reverse();
        self.canon(&r).expect("adjoint of a nonzero word is nonzero")
    }

    /// `Π_U E[a_U]` with each block product taken in increasing position order.
    ///
    /// Accepts crossing partitions.
    pub fn block_moments(&self, words: &[MWord], blocks: &[Vec<u8>]) -> PolyExpr {
        let mut acc = PolyExpr::one();
        for b in blocks {
            acc = &acc * &self.expect(&concat(words, b));
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// The partitioned functional `E^π` for non-crossing `π`, scalar case.
    pub fn partitioned_e(&self, words: &[MWord], blocks: &[Vec<u8>]) -> Result<PolyExpr, GammaError> {
        if !is_noncrossing(blocks) {
            return Err(GammaError::Crossing);
        }
        Ok(self.block_moments(words, blocks))
    }

    /// The contraction of `a₁ ⊗ ⋯ ⊗ aₙ` along `(π, S)`: the product of closed
    /// block moments and the tensor of open block products, or `None` if a
    /// product vanishes.
    pub fn contraction(&self, words: &[MWord], x: &IncompletePartition) -> Option<(PolyExpr, Vec<MWord>)> {
        let prefactor = self.block_moments(words, &x.closed_blocks().cloned().collect::<Vec<_>>());
        let mut tensor = Vec::new();
        for b in x.open_blocks() {
            tensor.push(self.canon(&concat(words, b))?);
        }
        Some((prefactor, tensor))
    }

    /// `E^π` on `a₁ ⋯ aₙ b_n ⋯ b₁` with every interval block `U` of `π`
    /// paired with its mirror image.
    pub fn pattern_e(&self, a: &[MWord], b: &[MWord], blocks: &[Vec<u8>]) -> Result<PolyExpr, GammaError> {
        if a.len() != b.len() {
            return Err(GammaError::SizeMismatch);
        }
        if !is_interval(blocks) {
            return Err(GammaError::NotInterval);
        }
        let n = a.len() as u8;
        let mut words: Vec<MWord> = a.to_vec();
        words.extend(b.iter().rev().cloned());
        let mirrored: Vec<Vec<u8>> = blocks
            .iter()
            .map(|u| {
                let mut v: Vec<u8> = u.clone();
                v.extend(u.iter().map(|&p| 2 * n - 1 - p));
                v.sort_unstable();
                v
            })
            .collect();
        self.partitioned_e(&words, &mirrored)
    }
}

/// Product of the words at the given positions, in the given order.
pub fn concat(words: &[MWord], positions: &[u8]) -> MWord {
    positions.iter().flat_map(|&p| words[p as usize].iter().copied()).collect()
}

/// Distinct single letters `a0, a1, …, a(n-1)` as words.
pub fn letters(n: usize) -> Vec<MWord> {
    (0..n as u8).map(|i| vec![Letter(i)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Param};

    fn w(ls: &[u8]) -> MWord {
        ls.iter().map(|&l| Letter(l)).collect()
    }

    fn two_indicators() -> Algebra {
        // a0 = χ_I, a1 = χ_J, I and J disjoint with |I| = 2, |J| = 3
        let letters = [(Letter(0), 0b01), (Letter(1), 0b10)].into_iter().collect();
        Algebra::Indicator(IndicatorAlgebra::new(letters, vec![int(2), int(3)]).unwrap())
    }

    #[test]
    fn indicator_functional() {
        let alg = two_indicators();
        assert_eq!(alg.expect(&w(&[0, 1])), PolyExpr::zero());
        assert_eq!(alg.expect(&w(&[0, 0])), PolyExpr::int(2));
        assert_eq!(alg.expect(&w(&[1, 1, 1])), PolyExpr::int(3));
        assert_eq!(alg.canon(&w(&[0, 1])), None);
    }

    #[test]
    fn indicator_requires_closure() {
        let letters = [(Letter(0), 0b011), (Letter(1), 0b110)].into_iter().collect();
        assert_eq!(
            IndicatorAlgebra::new(letters, vec![int(1); 3]),
            Err(GammaError::NotIntersectionClosed)
        );
    }

    #[test]
    fn tracial_minimal_rotation() {
        assert_eq!(Algebra::Tracial.expect(&w(&[1, 0])), PolyExpr::moment(w(&[0, 1])));
        assert_eq!(min_rotation(&w(&[2, 0, 1])), w(&[0, 1, 2]));
        assert_eq!(min_rotation(&w(&[1, 0, 1, 0])), w(&[0, 1, 0, 1]));
    }

    #[test]
    fn projection_powers() {
        let alg = Algebra::Projection(PolyExpr::param(Param::T));
        for k in 1..5 {
            assert_eq!(alg.expect(&vec![Letter(0); k]), PolyExpr::param(Param::T));
        }
    }

    #[test]
    fn partitioned_functional() {
        let alg = Algebra::Free;
        let a = letters(3);
        let nested = vec![vec![1], vec![0, 2]];
        assert_eq!(
            alg.partitioned_e(&a, &nested).unwrap(),
            &PolyExpr::moment(w(&[1])) * &PolyExpr::moment(w(&[0, 2]))
        );
        assert_eq!(alg.partitioned_e(&a, &[vec![0, 1, 2]]).unwrap(), PolyExpr::moment(w(&[0, 1, 2])));
        let crossing = [vec![0, 2], vec![1, 3]];
        assert_eq!(alg.partitioned_e(&letters(4), &crossing), Err(GammaError::Crossing));
    }

    #[test]
    fn contractions() {
        let alg = Algebra::Free;
        let a = letters(3);
        let x = IncompletePartition::new(3, vec![vec![0, 2], vec![1]], vec![true, false]);
        let (pre, tensor) = alg.contraction(&a, &x).unwrap();
        assert_eq!(pre, PolyExpr::moment(w(&[1])));
        assert_eq!(tensor, vec![w(&[0, 2])]);
        let bottom = IncompletePartition::bottom(3);
        assert_eq!(alg.contraction(&a, &bottom).unwrap(), (PolyExpr::one(), a.clone()));
    }

    #[test]
    fn mirrored_patterns() {
        let alg = Algebra::Free;
        let a = vec![w(&[0]), w(&[1])];
        let b = vec![w(&[2]), w(&[3])];
        // a1 a2 b2 b1 with {1}{2} gives E[a2 b2] E[a1 b1]
        let v = alg.pattern_e(&a, &b, &[vec![0], vec![1]]).unwrap();
        assert_eq!(v, &PolyExpr::moment(w(&[1, 3])) * &PolyExpr::moment(w(&[0, 2])));
        let v = alg.pattern_e(&a, &b, &[vec![0, 1]]).unwrap();
        assert_eq!(v, PolyExpr::moment(w(&[0, 1, 3, 2])));
    }
}
