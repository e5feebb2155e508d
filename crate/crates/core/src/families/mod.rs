//! The five incomplete families and their poset structure.

pub mod bijection;
pub mod iprm;
pub mod partition;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::poset::{check_product_hypothesis, FinitePoset, HypothesisFailure};

pub use iprm::{IncompletePermutation, LetterStats, OrderedBlockPartition};
pub use partition::{Blocks, IncompletePartition};

/// Largest `n` accepted by [`generate`] for the partition families.
pub const MAX_PARTITION_N: usize = 8;
/// Largest `n` accepted by [`generate`] for incomplete permutations.
pub const MAX_IPRM_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum FamilyId {
    P12,
    Inc12,
    Ip,
    Inc,
    Iprm,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] = [FamilyId::P12, FamilyId::Inc12, FamilyId::Ip, FamilyId::Inc, FamilyId::Iprm];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::P12 => "P12",
            FamilyId::Inc12 => "INC12",
            FamilyId::Ip => "IP",
            FamilyId::Inc => "INC",
            FamilyId::Iprm => "IPRM",
        }
    }

    pub fn max_n(self) -> usize {
        match self {
            FamilyId::Iprm => MAX_IPRM_N,
            _ => MAX_PARTITION_N,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("{family}({n}) exceeds the enumeration bound {max}")]
    BoundExceeded { family: FamilyId, n: usize, max: usize },
}

/// An element of one of the five families.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Partition(IncompletePartition),
    Permutation(IncompletePermutation),
}

impl Element {
    pub fn n(&self) -> usize {
        match self {
            Element::Partition(p) => p.n,
            Element::Permutation(p) => p.n(),
        }
    }

    pub fn as_partition(&self) -> Option<&IncompletePartition> {
        match self {
            Element::Partition(p) => Some(p),
            Element::Permutation(_) => None,
        }
    }

    pub fn as_permutation(&self) -> Option<&IncompletePermutation> {
        match self {
            Element::Permutation(p) => Some(p),
            Element::Partition(_) => None,
        }
    }

    /// Number of open blocks (open words for permutations).
    pub fn num_open(&self) -> usize {
        match self {
            Element::Partition(p) => p.num_open(),
            Element::Permutation(p) => p.num_open(),
        }
    }

    /// Number of closed blocks (cycles for permutations).
    pub fn num_closed(&self) -> usize {
        match self {
            Element::Partition(p) => p.num_closed(),
            Element::Permutation(p) => {
                let w = p.words();
                w.open.iter().filter(|o| !**o).count()
            }
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Partition(p) => write!(f, "{p}"),
            Element::Permutation(p) => write!(f, "{p}"),
        }
    }
}

/// Complete list of `family(n)` in sorted order.
pub fn generate(family: FamilyId, n: usize) -> Result<Vec<Element>, FamilyError> {
    if n > family.max_n() {
        return Err(FamilyError::BoundExceeded { family, n, max: family.max_n() });
    }
    let mut out: Vec<Element> = match family {
        FamilyId::P12 => partition::set_partitions(n)
            .into_iter()
            .filter(|b| b.iter().all(|u| u.len() <= 2))
            .map(|b| Element::Partition(IncompletePartition::matching(n, b)))
            .collect(),
        FamilyId::Inc12 => partition::nc_partitions(n)
            .into_iter()
            .filter(|b| {
                let outer = partition::outer_flags(b);
                b.iter().zip(outer).all(|(u, o)| u.len() == 2 || (u.len() == 1 && o))
            })
            .map(|b| Element::Partition(IncompletePartition::matching(n, b)))
            .collect(),
        FamilyId::Ip => partition::set_partitions(n)
            .into_iter()
            .flat_map(|b| open_subsets(n, b, None))
            .map(Element::Partition)
            .collect(),
        FamilyId::Inc => partition::nc_partitions(n)
            .into_iter()
            .flat_map(|b| {
                let outer = partition::outer_flags(&b);
                open_subsets(n, b, Some(outer))
            })
            .map(Element::Partition)
            .collect(),
        FamilyId::Iprm => IncompletePermutation::all(n).into_iter().map(Element::Permutation).collect(),
    };
    out.sort();
    Ok(out)
}

/// Every choice of open blocks, restricted to `allowed` when given.
fn open_subsets(n: usize, blocks: Blocks, allowed: Option<Vec<bool>>) -> Vec<IncompletePartition> {
    let candidates: Vec<usize> = (0..blocks.len())
        .filter(|&i| allowed.as_ref().map(|a| a[i]).unwrap_or(true))
        .collect();
    (0u32..(1 << candidates.len()))
        .map(|mask| {
            let mut open = vec![false; blocks.len()];
            for (j, &i) in candidates.iter().enumerate() {
                open[i] = mask & (1 << j) != 0;
            }
            IncompletePartition::new(n, blocks.clone(), open)
        })
        .collect()
}

/// The family's order relation.
pub fn leq(family: FamilyId, x: &Element, y: &Element) -> bool {
    match (x, y) {
        (Element::Partition(a), Element::Partition(b)) => match family {
            FamilyId::P12 | FamilyId::Inc12 => a.refines(b),
            FamilyId::Ip | FamilyId::Inc => a.ip_leq(b),
            FamilyId::Iprm => false,
        },
        (Element::Permutation(a), Element::Permutation(b)) => a.leq(b),
        _ => false,
    }
}

/// Rank in the grading: number of pairs for the matching families,
/// `n` minus the number of open blocks otherwise.
pub fn rank(family: FamilyId, x: &Element) -> usize {
    match family {
        FamilyId::P12 | FamilyId::Inc12 => x.as_partition().map(|p| p.num_pairs()).unwrap_or(0),
        _ => x.n() - x.num_open(),
    }
}

/// `μ(0̂, x)` from the family's closed form.
pub fn mobius_closed(family: FamilyId, x: &Element) -> i64 {
    let sign = |k: usize| if k % 2 == 0 { 1 } else { -1 };
    match (family, x) {
        (FamilyId::P12, Element::Partition(p)) => sign(p.num_pairs()),
        (FamilyId::Inc12, Element::Partition(p)) => {
            let outer = partition::outer_flags(&p.blocks);
            let pairs_outer = p.blocks.iter().zip(outer).all(|(b, o)| b.len() != 2 || o);
            if pairs_outer {
                sign(p.num_pairs())
            } else {
                0
            }
        }
        (FamilyId::Ip, Element::Partition(p)) => {
            if p.closed_blocks().all(|b| b.len() == 1) {
                let fact: i64 = p
                    .open_blocks()
                    .map(|b| (1..b.len() as i64).product::<i64>())
                    .product();
                sign(p.n - p.num_open()) * fact
            } else {
                0
            }
        }
        (FamilyId::Inc, Element::Partition(p)) => {
            if partition::is_interval(&p.blocks) && p.closed_blocks().all(|b| b.len() == 1) {
                sign(p.n - p.num_open())
            } else {
                0
            }
        }
        (FamilyId::Iprm, Element::Permutation(p)) => sign(p.n() - p.num_open()),
        _ => 0,
    }
}

/// The projection `τ ↦ τ_{s(1),…,s(k)}` for a split.
pub fn project_tau(family: FamilyId, x: &Element, split: &[usize]) -> Element {
    match x {
        Element::Partition(p) => {
            let proj = p.project(split);
            match family {
                FamilyId::P12 | FamilyId::Inc12 => Element::Partition(proj.as_matching()),
                _ => Element::Partition(proj),
            }
        }
        Element::Permutation(p) => Element::Permutation(p.project(split)),
    }
}

/// Juxtaposition of elements on consecutive intervals.
pub fn juxtapose(parts: &[&Element]) -> Element {
    if parts.iter().all(|p| matches!(p, Element::Permutation(_))) && !parts.is_empty() {
        let ps: Vec<&IncompletePermutation> = parts.iter().filter_map(|p| p.as_permutation()).collect();
        Element::Permutation(IncompletePermutation::juxtapose(&ps))
    } else {
        let ps: Vec<&IncompletePartition> = parts.iter().filter_map(|p| p.as_partition()).collect();
        Element::Partition(IncompletePartition::juxtapose(&ps))
    }
}

/// `family(n)` together with its order relation.
#[derive(Clone, Debug)]
pub struct FamilyPoset {
    pub family: FamilyId,
    pub n: usize,
    pub elements: Vec<Element>,
    pub poset: FinitePoset,
    index: HashMap<Element, usize>,
}

impl FamilyPoset {
    pub fn new(family: FamilyId, n: usize) -> Result<Self, FamilyError> {
        let elements = generate(family, n)?;
        let poset = FinitePoset::from_relation(elements.len(), |i, j| leq(family, &elements[i], &elements[j]))
            .expect("family order relations are partial orders");
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(FamilyPoset { family, n, elements, poset, index })
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements where the generic Möbius recursion disagrees with the closed
    /// form, as `(element, generic, closed)`.
    pub fn mobius_mismatches(&self) -> Vec<(Element, i64, i64)> {
        let generic = self.poset.mobius_from_bottom().expect("every family has a minimum");
        self.elements
            .iter()
            .zip(generic)
            .filter_map(|(x, g)| {
                let c = mobius_closed(self.family, x);
                (g != c).then(|| (x.clone(), g, c))
            })
            .collect()
    }

    /// Covers that do not raise the rank by exactly one.
    pub fn grading_violations(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in self.poset.up_set(i).ones() {
                if self.poset.covers(i, j)
                    && rank(self.family, &self.elements[j]) != rank(self.family, &self.elements[i]) + 1
                {
                    out.push((self.elements[i].clone(), self.elements[j].clone()));
                }
            }
        }
        out
    }
}

/// Outcome of the product-theorem hypothesis check for one split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub family: FamilyId,
    pub split: Vec<usize>,
    pub elements: usize,
    pub failure: Option<String>,
}

impl HypothesisReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks the embedding of `Π family(s(i))` into `family(n)` by
/// juxtaposition against the family's projection.
pub fn product_hypothesis(family: FamilyId, split: &[usize]) -> Result<HypothesisReport, FamilyError> {
    let n: usize = split.iter().sum();
    let target = FamilyPoset::new(family, n)?;
    let factors: Vec<Vec<Element>> = split
        .iter()
        .map(|&s| generate(family, s))
        .collect::<Result<_, _>>()?;
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for f in &factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..f.len()).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    let image: Vec<usize> = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&Element> = t.iter().zip(&factors).map(|(&i, f)| &f[i]).collect();
            target
                .index_of(&juxtapose(&parts))
                .expect("juxtaposition stays inside the family")
        })
        .collect();
    let product_leq = |a: usize, b: usize| {
        tuples[a]
            .iter()
            .zip(&tuples[b])
            .zip(&factors)
            .all(|((&x, &y), f)| leq(family, &f[x], &f[y]))
    };
    let project = |tau: usize| {
        target
            .index_of(&project_tau(family, &target.elements[tau], split))
            .expect("projection stays inside the family")
    };
    let failure = check_product_hypothesis(&target.poset, &image, product_leq, project)
        .err()
        .map(|f| describe_failure(&target, &image, f));
    Ok(HypothesisReport {
        family,
        split: split.to_vec(),
        elements: target.len(),
        failure,
    })
}

fn describe_failure(target: &FamilyPoset, image: &[usize], f: HypothesisFailure) -> String {
    let e = |i: usize| target.elements[i].to_string();
    match f {
        HypothesisFailure::NotInjective { first, second } => {
            format!("tuples {first} and {second} share the image {}", e(image[first]))
        }
        HypothesisFailure::NotOrderEmbedding { first, second } => {
            format!("order differs between {} and {}", e(image[first]), e(image[second]))
        }
        HypothesisFailure::DownSetMismatch { tau, projection } => {
            format!("down-set of {} in the image differs from down-set of {}", e(tau), e(projection))
        }
        HypothesisFailure::ProjectionMovesImage { tau, projection } => {
            format!("{} projects to {}", e(tau), e(projection))
        }
    }
}

/// Compositions of `n` into at most `max_parts` positive parts, with at
/// least two parts.
pub fn splits(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            if cur.len() >= 2 {
                out.push(cur.clone());
            }
            return;
        }
        if cur.len() == parts {
            return;
        }
        for s in 1..=rest {
            cur.push(s);
            rec(rest - s, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_parts, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(n: usize, blocks: &[&[u8]], open: &[bool]) -> Element {
        let blocks = blocks.iter().map(|b| b.iter().map(|p| p - 1).collect()).collect();
        Element::Partition(IncompletePartition::new(n, blocks, open.to_vec()))
    }

    #[test]
    fn small_generation() {
        let p12 = generate(FamilyId::P12, 3).unwrap();
        let shown: Vec<String> = p12.iter().map(|e| e.to_string()).collect();
        assert_eq!(shown.len(), 4);
        assert!(shown.contains(&"{2*|1 3}".to_string()));
        let inc12 = generate(FamilyId::Inc12, 3).unwrap();
        assert_eq!(inc12.len(), 3);
        assert!(!inc12.iter().any(|e| e.to_string() == "{2*|1 3}"));
        assert_eq!(generate(FamilyId::Inc, 2).unwrap().len(), 6);
        assert_eq!(generate(FamilyId::Iprm, 2).unwrap().len(), 7);
        assert_eq!(generate(FamilyId::Ip, 2).unwrap().len(), 6);
        assert!(generate(FamilyId::Iprm, 7).is_err());
    }

    #[test]
    fn ip2_order_and_meet() {
        let fp = FamilyPoset::new(FamilyId::Ip, 2).unwrap();
        let bottom = part(2, &[&[1], &[2]], &[true, true]);
        let pair_open = part(2, &[&[1, 2]], &[true]);
        let pair_closed = part(2, &[&[1, 2]], &[false]);
        let one_closed = part(2, &[&[1], &[2]], &[false, true]);
        assert!(leq(FamilyId::Ip, &bottom, &pair_open));
        assert!(!leq(FamilyId::Ip, &one_closed, &pair_open));
        let i = fp.index_of(&pair_open).unwrap();
        let j = fp.index_of(&pair_closed).unwrap();
        // the open pair lies below the closed pair, so it is the meet
        assert_eq!(fp.poset.meet(i, j), Some(i));
        let mu = fp.poset.mobius_from_bottom().unwrap();
        assert_eq!(mu[i], -1);
    }

    #[test]
    fn p12_meet() {
        let fp = FamilyPoset::new(FamilyId::P12, 3).unwrap();
        let a = Element::Partition(IncompletePartition::matching(3, vec![vec![0, 1], vec![2]]));
        let b = Element::Partition(IncompletePartition::matching(3, vec![vec![0, 2], vec![1]]));
        let m = fp.poset.meet(fp.index_of(&a).unwrap(), fp.index_of(&b).unwrap()).unwrap();
        assert_eq!(fp.elements[m], Element::Partition(IncompletePartition::bottom(3)));
    }

    #[test]
    fn closed_form_examples() {
        let x = part(3, &[&[1, 2, 3]], &[true]);
        assert_eq!(mobius_closed(FamilyId::Ip, &x), 2);
        let y = part(3, &[&[1], &[2], &[3]], &[true, false, true]);
        assert_eq!(mobius_closed(FamilyId::Inc, &y), -1);
        let tr = Element::Permutation(IncompletePermutation::from_pairs(2, &[(0, 1), (1, 0)]).unwrap());
        assert_eq!(mobius_closed(FamilyId::Iprm, &tr), 1);
    }

    #[test]
    fn closed_forms_match_generic_small() {
        for family in FamilyId::ALL {
            for n in 0..=3 {
                let fp = FamilyPoset::new(family, n).unwrap();
                assert!(fp.mobius_mismatches().is_empty(), "{family}({n})");
                assert!(fp.grading_violations().is_empty(), "{family}({n})");
            }
        }
    }

    #[test]
    fn hypothesis_examples() {
        assert!(product_hypothesis(FamilyId::P12, &[1, 1]).unwrap().pass());
        let r = product_hypothesis(FamilyId::Inc, &[2, 1]).unwrap();
        assert!(r.pass());
        assert_eq!(r.elements, 20);
        assert!(product_hypothesis(FamilyId::Iprm, &[1, 1]).unwrap().pass());
    }

    #[test]
    fn pair_across_split_projects_to_bottom() {
        let tau = Element::Partition(IncompletePartition::matching(2, vec![vec![0, 1]]));
        assert_eq!(
            project_tau(FamilyId::P12, &tau, &[1, 1]),
            Element::Partition(IncompletePartition::bottom(2))
        );
        // a closed singleton inside one interval stays closed
        let c = part(2, &[&[1], &[2]], &[false, true]);
        assert_eq!(project_tau(FamilyId::Ip, &c, &[1, 1]), c);
    }

    #[test]
    fn split_enumeration() {
        assert_eq!(splits(3, 3), vec![vec![1, 1, 1], vec![1, 2], vec![2, 1]]);
        assert_eq!(splits(4, 2).len(), 3);
    }
}
