//! Set partitions, non-crossing partitions and incomplete partitions.
//!
//! Positions are 0-based internally and printed 1-based. A partition is a
//! list of blocks; in canonical form each block is ascending and the blocks
//! are sorted by their largest element.

use std::fmt;

/// A set partition as a list of blocks.
pub type Blocks = Vec<Vec<u8>>;

/// Sorts every block and orders the blocks by largest element.
pub fn canonical(mut blocks: Blocks) -> Blocks {
    blocks.retain(|b| !b.is_empty());
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort_by_key(|b| *b.last().unwrap());
    blocks
}

/// All set partitions of `0..n` via restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Blocks> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Blocks>) {
        let n = rgs.len();
        if i == n {
            let nblocks = if n == 0 { 0 } else { max + 1 };
            let mut blocks: Blocks = vec![Vec::new(); nblocks];
            for (pos, &b) in rgs.iter().enumerate() {
                blocks[b].push(pos as u8);
            }
            out.push(canonical(blocks));
            return;
        }
        let limit = if i == 0 { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    rec(0, 0, &mut rgs, &mut out);
    out
}

/// Non-crossing partitions of `0..n`, generated directly by decomposing
/// around the block of the first element.
pub fn nc_partitions(n: usize) -> Vec<Blocks> {
    let mut out: Vec<Blocks> = nc_range(0, n as u8).into_iter().map(canonical).collect();
    out.sort();
    out
}

/// Non-crossing partitions of the interval `lo..hi`.
fn nc_range(lo: u8, hi: u8) -> Vec<Blocks> {
    if lo >= hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    // the block containing `lo` is {lo = i0 < i1 < ... < ik}; gaps between
    // consecutive members and after ik are filled independently
    let rest: Vec<u8> = (lo + 1..hi).collect();
    let m = rest.len();
    for mask in 0u32..(1u32 << m) {
        let mut first = vec![lo];
        for (j, &p) in rest.iter().enumerate() {
            if mask & (1 << j) != 0 {
                first.push(p);
            }
        }
        let mut gaps: Vec<(u8, u8)> = first.windows(2).map(|w| (w[0] + 1, w[1])).collect();
        gaps.push((*first.last().unwrap() + 1, hi));
        let mut partial: Vec<Blocks> = vec![vec![first]];
        for (a, b) in gaps {
            let fills = nc_range(a, b);
            let mut next = Vec::with_capacity(partial.len() * fills.len());
            for p in &partial {
                for f in &fills {
                    let mut q = p.clone();
                    q.extend(f.iter().cloned());
                    next.push(q);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}

/// Block index of every position.
pub fn block_of(blocks: &[Vec<u8>], n: usize) -> Vec<usize> {
    let mut id = vec![usize::MAX; n];
    for (b, block) in blocks.iter().enumerate() {
        for &p in block {
            id[p as usize] = b;
        }
    }
    id
}

pub fn is_noncrossing(blocks: &[Vec<u8>]) -> bool {
    for (i, u) in blocks.iter().enumerate() {
        for v in &blocks[i + 1..] {
            if crosses(u, v) || crosses(v, u) {
                return false;
            }
        }
    }
    true
}

/// Some `a < b < c < d` with `a, c ∈ u` and `b, d ∈ v`.
fn crosses(u: &[u8], v: &[u8]) -> bool {
    for (ia, &a) in u.iter().enumerate() {
        for &c in &u[ia + 1..] {
            let inside = v.iter().any(|&b| a < b && b < c);
            let outside = v.iter().any(|&d| d > c);
            if inside && outside {
                return true;
            }
        }
    }
    false
}

/// Depth of each block of a non-crossing partition: the number of blocks
/// nesting over it.
pub fn depths(blocks: &[Vec<u8>]) -> Vec<usize> {
    blocks
        .iter()
        .map(|u| {
            let m = u[0];
            blocks
                .iter()
                .filter(|v| v[0] < m && m < *v.last().unwrap())
                .count()
        })
        .collect()
}

/// Outer flags of the blocks of a non-crossing partition.
pub fn outer_flags(blocks: &[Vec<u8>]) -> Vec<bool> {
    depths(blocks).into_iter().map(|d| d == 0).collect()
}

/// Every block is a run of consecutive positions.
pub fn is_interval(blocks: &[Vec<u8>]) -> bool {
    blocks
        .iter()
        .all(|b| (*b.last().unwrap() - b[0]) as usize + 1 == b.len())
}

/// Non-crossing with a single outer block: the smallest and largest points
/// of the ground set share a block.
pub fn is_covered(blocks: &[Vec<u8>]) -> bool {
    if blocks.is_empty() {
        return true;
    }
    let lo = blocks.iter().map(|b| b[0]).min().unwrap();
    let hi = blocks.iter().map(|b| *b.last().unwrap()).max().unwrap();
    is_noncrossing(blocks) && blocks.iter().any(|b| b[0] == lo && *b.last().unwrap() == hi)
}

/// Every block of `sigma` lies inside a block of `pi`.
pub fn refines(sigma: &[Vec<u8>], pi: &[Vec<u8>], n: usize) -> bool {
    let id = block_of(pi, n);
    sigma
        .iter()
        .all(|b| b.iter().all(|&p| id[p as usize] == id[b[0] as usize]))
}

/// Blocks of `blocks` intersected with `subset`, dropping empty pieces.
pub fn restrict(blocks: &[Vec<u8>], subset: &[u8]) -> Blocks {
    canonical(
        blocks
            .iter()
            .map(|b| b.iter().copied().filter(|p| subset.contains(p)).collect())
            .collect(),
    )
}

/// Common refinement of two partitions.
pub fn meet(a: &[Vec<u8>], b: &[Vec<u8>], n: usize) -> Blocks {
    let ib = block_of(b, n);
    let mut pieces = Vec::new();
    for u in a {
        let mut groups: Vec<(usize, Vec<u8>)> = Vec::new();
        for &p in u {
            let key = ib[p as usize];
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, g)) => g.push(p),
                None => groups.push((key, vec![p])),
            }
        }
        pieces.extend(groups.into_iter().map(|(_, g)| g));
    }
    canonical(pieces)
}

/// `σ ≪ π`: `σ ≤ π` and `σ` restricted to every block of `π` is covered.
pub fn sigma_ll_pi(sigma: &[Vec<u8>], pi: &[Vec<u8>], n: usize) -> bool {
    refines(sigma, pi, n) && pi.iter().all(|u| is_covered(&restrict(sigma, u)))
}

/// Split intervals `J_1, ..., J_k` for block sizes `split`.
pub fn split_intervals(split: &[usize]) -> Blocks {
    let mut out = Vec::with_capacity(split.len());
    let mut start = 0u8;
    for &s in split {
        out.push((start..start + s as u8).collect());
        start += s as u8;
    }
    out
}

/// Interval index of every position for a split.
pub fn split_index(split: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &s) in split.iter().enumerate() {
        out.extend(std::iter::repeat_n(i, s));
    }
    out
}

/// A partition of `0..n` with some blocks marked open.
///
/// For the matching families the open blocks are exactly the singletons.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IncompletePartition {
    pub n: usize,
    pub blocks: Blocks,
    pub open: Vec<bool>,
}

impl IncompletePartition {
    /// Canonicalizes the block order; `open` is given per input block.
    pub fn new(n: usize, blocks: Blocks, open: Vec<bool>) -> Self {
        let mut pairs: Vec<(Vec<u8>, bool)> = blocks
            .into_iter()
            .zip(open)
            .map(|(mut b, o)| {
                b.sort_unstable();
                (b, o)
            })
            .collect();
        pairs.sort_by_key(|(b, _)| *b.last().unwrap());
        let (blocks, open) = pairs.into_iter().unzip();
        IncompletePartition { n, blocks, open }
    }

    /// A matching: singletons open, pairs closed.
    pub fn matching(n: usize, blocks: Blocks) -> Self {
        let open = blocks.iter().map(|b| b.len() == 1).collect();
        IncompletePartition::new(n, blocks, open)
    }

    /// All blocks open singletons.
    pub fn bottom(n: usize) -> Self {
        let blocks = (0..n as u8).map(|p| vec![p]).collect();
        IncompletePartition::new(n, blocks, vec![true; n])
    }

    pub fn open_blocks(&self) -> impl Iterator<Item = &Vec<u8>> {
        self.blocks.iter().zip(&self.open).filter(|(_, o)| **o).map(|(b, _)| b)
    }

    pub fn closed_blocks(&self) -> impl Iterator<Item = &Vec<u8>> {
        self.blocks.iter().zip(&self.open).filter(|(_, o)| !**o).map(|(b, _)| b)
    }

    pub fn num_open(&self) -> usize {
        self.open.iter().filter(|o| **o).count()
    }

    pub fn num_closed(&self) -> usize {
        self.blocks.len() - self.num_open()
    }

    pub fn num_pairs(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() == 2).count()
    }

    pub fn num_singletons(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() == 1).count()
    }

    /// Order of incomplete partitions: closed blocks stay closed blocks and
    /// every open block lies inside a block of `other`.
    pub fn ip_leq(&self, other: &IncompletePartition) -> bool {
        let id = block_of(&other.blocks, other.n);
        for (b, &o) in self.blocks.iter().zip(&self.open) {
            let target = id[b[0] as usize];
            if o {
                if b.iter().any(|&p| id[p as usize] != target) {
                    return false;
                }
            } else if other.open[target] || other.blocks[target] != *b {
                return false;
            }
        }
        true
    }

    /// Refinement order on the underlying partitions.
    pub fn refines(&self, other: &IncompletePartition) -> bool {
        refines(&self.blocks, &other.blocks, self.n)
    }

    /// Meet with the split's interval partition; a piece stays closed exactly
    /// when it is an unbroken closed block.
    pub fn project(&self, split: &[usize]) -> IncompletePartition {
        let idx = split_index(split);
        let mut blocks = Vec::new();
        let mut open = Vec::new();
        for (b, &o) in self.blocks.iter().zip(&self.open) {
            let mut pieces: Vec<Vec<u8>> = Vec::new();
            let mut keys: Vec<usize> = Vec::new();
            for &p in b {
                let k = idx[p as usize];
                match keys.iter().position(|&x| x == k) {
                    Some(i) => pieces[i].push(p),
                    None => {
                        keys.push(k);
                        pieces.push(vec![p]);
                    }
                }
            }
            let intact = pieces.len() == 1;
            for piece in pieces {
                blocks.push(piece);
                open.push(o || !intact);
            }
        }
        IncompletePartition::new(self.n, blocks, open)
    }

    /// Same object with the open flags recomputed as singleton flags.
    pub fn as_matching(&self) -> IncompletePartition {
        IncompletePartition::matching(self.n, self.blocks.clone())
    }

    /// Juxtaposes partitions on consecutive intervals.
    pub fn juxtapose(parts: &[&IncompletePartition]) -> IncompletePartition {
        let mut blocks = Vec::new();
        let mut open = Vec::new();
        let mut shift = 0u8;
        for p in parts {
            for (b, &o) in p.blocks.iter().zip(&p.open) {
                blocks.push(b.iter().map(|&x| x + shift).collect());
                open.push(o);
            }
            shift += p.n as u8;
        }
        IncompletePartition::new(shift as usize, blocks, open)
    }
}

impl fmt::Display for IncompletePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (b, &o)) in self.blocks.iter().zip(&self.open).enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, p) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            if o {
                f.write_str("*")?;
            }
        }
        f.write_str("}")
    }
}

/// Renders plain blocks 1-based, e.g. `{1 3|2}`.
pub fn format_blocks(blocks: &[Vec<u8>]) -> String {
    let parts: Vec<String> = blocks
        .iter()
        .map(|b| b.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    format!("{{{}}}", parts.join("|"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell(n: usize) -> usize {
        [1, 1, 2, 5, 15, 52, 203, 877, 4140][n]
    }

    fn catalan(n: usize) -> usize {
        [1, 1, 2, 5, 14, 42, 132, 429, 1430][n]
    }

    #[test]
    fn set_partition_counts() {
        for n in 0..=7 {
            assert_eq!(set_partitions(n).len(), bell(n));
        }
    }

    #[test]
    fn direct_nc_generator_matches_filter() {
        for n in 0..=7 {
            let mut filtered: Vec<Blocks> =
                set_partitions(n).into_iter().filter(|b| is_noncrossing(b)).collect();
            filtered.sort();
            let direct = nc_partitions(n);
            assert_eq!(direct.len(), catalan(n));
            assert_eq!(direct, filtered);
        }
    }

    #[test]
    fn nc_predicates() {
        let nested = canonical(vec![vec![0, 2], vec![1]]);
        assert!(is_noncrossing(&nested));
        let d = depths(&nested);
        let inner = nested.iter().position(|b| b == &vec![1]).unwrap();
        assert_eq!(d[inner], 1);
        assert!(!is_noncrossing(&[vec![0, 2], vec![1, 3]]));
        assert!(!is_interval(&nested));
        assert!(is_covered(&nested));
        // {1}{2} below {12} but not covered
        let sigma = vec![vec![0], vec![1]];
        let pi = vec![vec![0, 1]];
        assert!(refines(&sigma, &pi, 2));
        assert!(!sigma_ll_pi(&sigma, &pi, 2));
        assert!(sigma_ll_pi(&pi, &pi, 2));
    }

    #[test]
    fn display_and_order() {
        let p = IncompletePartition::new(3, vec![vec![2, 0], vec![1]], vec![false, true]);
        assert_eq!(p.to_string(), "{2*|1 3}");
        let q = IncompletePartition::bottom(2);
        let r = IncompletePartition::new(2, vec![vec![0, 1]], vec![true]);
        assert!(q.ip_leq(&r));
        let closed_one = IncompletePartition::new(2, vec![vec![0], vec![1]], vec![false, true]);
        assert!(!closed_one.ip_leq(&r));
        let closed_pair = IncompletePartition::new(2, vec![vec![0, 1]], vec![false]);
        assert!(r.ip_leq(&closed_pair));
        assert!(!closed_pair.ip_leq(&r));
    }

    #[test]
    fn projection_breaks_crossing_blocks() {
        let p = IncompletePartition::new(3, vec![vec![0, 1], vec![2]], vec![false, false]);
        let proj = p.project(&[1, 2]);
        assert_eq!(proj.to_string(), "{1*|2*|3}");
        assert_eq!(p.project(&[2, 1]), p);
    }

    #[test]
    fn meets_of_partitions() {
        let a = vec![vec![0, 1], vec![2]];
        let b = vec![vec![0, 2], vec![1]];
        assert_eq!(meet(&a, &b, 3), vec![vec![0], vec![1], vec![2]]);
    }
}
