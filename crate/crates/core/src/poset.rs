//! Finite posets given by an explicit order relation.
//!
//! Elements are indices `0..len`; the meaning of each index belongs to the
//! caller. The relation is stored twice, as up-sets and down-sets, each a
//! [`FixedBitSet`] per element.

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation is not reflexive at element {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric at elements {0} and {1}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive through elements {0}, {1}, {2}")]
    NotTransitive(usize, usize, usize),
}

#[derive(Clone, Debug)]
pub struct FinitePoset {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl FinitePoset {
    /// Builds the poset on `0..len` from a relation, checking the order axioms.
    pub fn from_relation<F>(len: usize, leq: F) -> Result<Self, PosetError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let mut up = vec![FixedBitSet::with_capacity(len); len];
        let mut down = vec![FixedBitSet::with_capacity(len); len];
        for x in 0..len {
            for y in 0..len {
                if leq(x, y) {
                    up[x].insert(y);
                    down[y].insert(x);
                }
            }
        }
        let p = FinitePoset { up, down };
        p.check_axioms()?;
        Ok(p)
    }

    fn check_axioms(&self) -> Result<(), PosetError> {
        let len = self.len();
        for x in 0..len {
            if !self.up[x].contains(x) {
                return Err(PosetError::NotReflexive(x));
            }
            for y in self.up[x].ones() {
                if y != x && self.up[y].contains(x) {
                    return Err(PosetError::NotAntisymmetric(x, y));
                }
                if !self.up[y].is_subset(&self.up[x]) {
                    let z = self.up[y].difference(&self.up[x]).next().unwrap();
                    return Err(PosetError::NotTransitive(x, y, z));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// The unique minimum, if there is one.
    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.up[x].count_ones(..) == self.len())
    }

    /// Greatest lower bound of `x` and `y`, if it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let mut lower = self.down[x].clone();
        lower.intersect_with(&self.down[y]);
        lower
            .ones()
            .find(|&g| lower.is_subset(&self.down[g]))
    }

    /// `y` covers `x`: `x < y` with nothing strictly between.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        if x == y || !self.leq(x, y) {
            return false;
        }
        let mut between = self.up[x].clone();
        between.intersect_with(&self.down[y]);
        between.count_ones(..) == 2
    }

    /// A linear extension: elements sorted by the size of their down-set.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.down[x].count_ones(..), x));
        order
    }

    /// Row `μ(x, ·)` of the Möbius function, with `None` where `x ≰ y`.
    ///
    /// Uses the defining recursion `μ(x,x) = 1`,
    /// `μ(x,y) = -Σ_{x ≤ z < y} μ(x,z)`.
    pub fn mobius_row(&self, x: usize) -> Vec<Option<i64>> {
        let mut mu: Vec<Option<i64>> = vec![None; self.len()];
        for y in self.linear_extension() {
            if !self.leq(x, y) {
                continue;
            }
            if y == x {
                mu[y] = Some(1);
                continue;
            }
            let mut interval = self.up[x].clone();
            interval.intersect_with(&self.down[y]);
            let s: i64 = interval
                .ones()
                .filter(|&z| z != y)
                .map(|z| mu[z].expect("linear extension visits lower elements first"))
                .sum();
            mu[y] = Some(-s);
        }
        mu
    }

    /// Full Möbius table; entry `[x][y]` is `None` unless `x ≤ y`.
    pub fn mobius_table(&self) -> Vec<Vec<Option<i64>>> {
        (0..self.len()).map(|x| self.mobius_row(x)).collect()
    }

    /// `μ(0̂, ·)`; requires a minimum.
    pub fn mobius_from_bottom(&self) -> Option<Vec<i64>> {
        let bottom = self.minimum()?;
        Some(
            self.mobius_row(bottom)
                .into_iter()
                .map(|m| m.expect("minimum is below everything"))
                .collect(),
        )
    }
}

/// First failure found while checking the product-theorem hypothesis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypothesisFailure {
    /// Two tuples with the same image.
    NotInjective { first: usize, second: usize },
    /// Order between tuples differs from order between their images.
    NotOrderEmbedding { first: usize, second: usize },
    /// `{σ ∈ image : σ ≤ τ}` differs from the down-set of the projection of `τ`.
    DownSetMismatch { tau: usize, projection: usize },
    /// The projection moves an element of the image.
    ProjectionMovesImage { tau: usize, projection: usize },
}

/// Checks the hypothesis of the product theorem for an embedding of a product
/// of posets into `target`.
///
/// `image[i]` is the target index of the `i`-th product tuple,
/// `product_leq(i, j)` is the componentwise order on tuples, and
/// `project(τ)` is the index of the projected element.
pub fn check_product_hypothesis<L, P>(
    target: &FinitePoset,
    image: &[usize],
    product_leq: L,
    project: P,
) -> Result<(), HypothesisFailure>
where
    L: Fn(usize, usize) -> bool,
    P: Fn(usize) -> usize,
{
    let mut in_image = FixedBitSet::with_capacity(target.len());
    let mut seen = vec![None; target.len()];
    for (i, &x) in image.iter().enumerate() {
        if let Some(j) = seen[x] {
            return Err(HypothesisFailure::NotInjective { first: j, second: i });
        }
        seen[x] = Some(i);
        in_image.insert(x);
    }
    for i in 0..image.len() {
        for j in 0..image.len() {
            if product_leq(i, j) != target.leq(image[i], image[j]) {
                return Err(HypothesisFailure::NotOrderEmbedding { first: i, second: j });
            }
        }
    }
    for tau in 0..target.len() {
        let proj = project(tau);
        let mut lhs = in_image.clone();
        lhs.intersect_with(target.down_set(tau));
        if &lhs != target.down_set(proj) {
            return Err(HypothesisFailure::DownSetMismatch { tau, projection: proj });
        }
        if in_image.contains(tau) && proj != tau {
            return Err(HypothesisFailure::ProjectionMovesImage { tau, projection: proj });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinitePoset {
        FinitePoset::from_relation(n, |x, y| x <= y).unwrap()
    }

    /// Subsets of a 3-set ordered by inclusion.
    fn boolean3() -> FinitePoset {
        FinitePoset::from_relation(8, |x, y| x & y == x).unwrap()
    }

    #[test]
    fn chain_mobius() {
        let p = chain(2);
        assert_eq!(p.mobius_row(0), vec![Some(1), Some(-1)]);
        let p = chain(4);
        assert_eq!(p.mobius_from_bottom().unwrap(), vec![1, -1, 0, 0]);
    }

    #[test]
    fn boolean_lattice_mobius() {
        let p = boolean3();
        let mu = p.mobius_table();
        for x in 0..8usize {
            for y in 0..8usize {
                if x & y == x {
                    let k = (y & !x).count_ones();
                    assert_eq!(mu[x][y], Some(if k % 2 == 0 { 1 } else { -1 }));
                } else {
                    assert_eq!(mu[x][y], None);
                }
            }
        }
    }

    #[test]
    fn meets() {
        let p = boolean3();
        assert_eq!(p.meet(0b011, 0b110), Some(0b010));
        assert_eq!(p.meet(5, 5), Some(5));
        // two incomparable minimal elements have no meet
        let v = FinitePoset::from_relation(3, |x, y| x == y || y == 2).unwrap();
        assert_eq!(v.meet(0, 1), None);
        assert_eq!(v.minimum(), None);
    }

    #[test]
    fn rejects_non_orders() {
        assert_eq!(
            FinitePoset::from_relation(2, |_, _| true).unwrap_err(),
            PosetError::NotAntisymmetric(0, 1)
        );
        assert!(matches!(
            FinitePoset::from_relation(3, |x, y| x == y || (x, y) == (0, 1) || (x, y) == (1, 2)),
            Err(PosetError::NotTransitive(..))
        ));
        assert_eq!(
            FinitePoset::from_relation(2, |x, y| x < y).unwrap_err(),
            PosetError::NotReflexive(0)
        );
    }

    #[test]
    fn covers_in_chain() {
        let p = chain(3);
        assert!(p.covers(0, 1));
        assert!(!p.covers(0, 2));
        assert!(!p.covers(1, 1));
    }

    #[test]
    fn product_of_chains_embeds_into_boolean() {
        // {0,1} x {0,1} -> subsets of {0,1} inside subsets of {0,1,2}
        let target = boolean3();
        let image = [0b000, 0b001, 0b010, 0b011];
        let leq = |i: usize, j: usize| i & j == i;
        let project = |tau: usize| tau & 0b011;
        assert_eq!(check_product_hypothesis(&target, &image, leq, project), Ok(()));
        let bad = |tau: usize| tau;
        assert!(check_product_hypothesis(&target, &image, leq, bad).is_err());
    }
}
