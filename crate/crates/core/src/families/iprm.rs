//! Incomplete permutations: injective partial maps `f: Λ → [n]`.

use std::fmt;

use super::partition::{split_index, IncompletePartition};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IncompletePermutation {
    /// `map[x] = Some(f(x))` for `x ∈ Λ`.
    pub map: Vec<Option<u8>>,
}

/// Counts of the six letter classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct LetterStats {
    pub valley: usize,
    pub closed_singleton: usize,
    pub double_rise: usize,
    pub double_fall: usize,
    pub cycle_max: usize,
    pub peak: usize,
}

impl LetterStats {
    pub fn total(&self) -> usize {
        self.valley + self.closed_singleton + self.double_rise + self.double_fall + self.cycle_max + self.peak
    }
}

/// Word model: open words are linear, closed words are cyclic.
///
/// Closed words are stored starting from their smallest letter; all words are
/// sorted by largest letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedBlockPartition {
    pub n: usize,
    pub words: Vec<Vec<u8>>,
    pub open: Vec<bool>,
}

impl IncompletePermutation {
    pub fn empty(n: usize) -> Self {
        IncompletePermutation { map: vec![None; n] }
    }

    pub fn identity(n: usize) -> Self {
        IncompletePermutation {
            map: (0..n as u8).map(Some).collect(),
        }
    }

    /// Builds from `(x, f(x))` pairs; `None` if `f` is not injective.
    pub fn from_pairs(n: usize, pairs: &[(u8, u8)]) -> Option<Self> {
        let mut map = vec![None; n];
        let mut hit = vec![false; n];
        for &(x, y) in pairs {
            if map[x as usize].is_some() || hit[y as usize] {
                return None;
            }
            map[x as usize] = Some(y);
            hit[y as usize] = true;
        }
        Some(IncompletePermutation { map })
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn domain_size(&self) -> usize {
        self.map.iter().filter(|m| m.is_some()).count()
    }

    /// All incomplete permutations of `0..n`.
    pub fn all(n: usize) -> Vec<IncompletePermutation> {
        let mut out = Vec::new();
        let mut map = vec![None; n];
        let mut used = vec![false; n];
        fn rec(
            i: usize,
            map: &mut Vec<Option<u8>>,
            used: &mut Vec<bool>,
            out: &mut Vec<IncompletePermutation>,
        ) {
            let n = map.len();
            if i == n {
                out.push(IncompletePermutation { map: map.clone() });
                return;
            }
            map[i] = None;
            rec(i + 1, map, used, out);
            for y in 0..n {
                if !used[y] {
                    used[y] = true;
                    map[i] = Some(y as u8);
                    rec(i + 1, map, used, out);
                    used[y] = false;
                }
            }
            map[i] = None;
        }
        rec(0, &mut map, &mut used, &mut out);
        out.sort();
        out
    }

    pub fn inverse_map(&self) -> Vec<Option<u8>> {
        let mut inv = vec![None; self.n()];
        for (x, y) in self.map.iter().enumerate() {
            if let Some(y) = y {
                inv[*y as usize] = Some(x as u8);
            }
        }
        inv
    }

    /// `self ≤ other`: `other` extends `self`.
    pub fn leq(&self, other: &IncompletePermutation) -> bool {
        self.map
            .iter()
            .zip(&other.map)
            .all(|(a, b)| a.is_none() || a == b)
    }

    /// Restriction to `{x : x, f(x) in the same split interval}`.
    pub fn project(&self, split: &[usize]) -> IncompletePermutation {
        let idx = split_index(split);
        IncompletePermutation {
            map: self
                .map
                .iter()
                .enumerate()
                .map(|(x, y)| y.filter(|&y| idx[x] == idx[y as usize]))
                .collect(),
        }
    }

    /// No point is sent into its own split interval.
    pub fn is_derangement_for(&self, split: &[usize]) -> bool {
        self.project(split).domain_size() == 0
    }

    pub fn juxtapose(parts: &[&IncompletePermutation]) -> IncompletePermutation {
        let mut map = Vec::new();
        let mut shift = 0u8;
        for p in parts {
            map.extend(p.map.iter().map(|y| y.map(|y| y + shift)));
            shift += p.n() as u8;
        }
        IncompletePermutation { map }
    }

    /// Orbit decomposition into open chains and cycles.
    pub fn words(&self) -> OrderedBlockPartition {
        let n = self.n();
        let inv = self.inverse_map();
        let mut seen = vec![false; n];
        let mut words = Vec::new();
        let mut open = Vec::new();
        // open words start at points with no preimage
        for start in 0..n {
            if inv[start].is_none() {
                let mut w = vec![start as u8];
                seen[start] = true;
                let mut cur = start;
                while let Some(next) = self.map[cur] {
                    w.push(next);
                    seen[next as usize] = true;
                    cur = next as usize;
                }
                words.push(w);
                open.push(true);
            }
        }
        for start in 0..n {
            if !seen[start] {
                let mut w = vec![start as u8];
                seen[start] = true;
                let mut cur = self.map[start].unwrap() as usize;
                while cur != start {
                    w.push(cur as u8);
                    seen[cur] = true;
                    cur = self.map[cur].unwrap() as usize;
                }
                words.push(w);
                open.push(false);
            }
        }
        OrderedBlockPartition::new(n, words, open)
    }

    /// Blocks in the order used by the Wick-product expansion: open words
    /// follow `f`, closed words are rotated to end at their largest letter.
    /// Returns `(closed, open)`, each sorted by largest letter.
    pub fn wick_blocks(&self) -> (Vec<Vec<u8>>, Vec<Vec<u8>>) {
        let w = self.words();
        let mut closed = Vec::new();
        let mut open = Vec::new();
        for (word, &o) in w.words.iter().zip(&w.open) {
            if o {
                open.push(word.clone());
            } else {
                let m = word.iter().enumerate().max_by_key(|(_, &l)| l).unwrap().0;
                let mut r = word[m + 1..].to_vec();
                r.extend_from_slice(&word[..=m]);
                closed.push(r);
            }
        }
        (closed, open)
    }

    /// The underlying incomplete partition (orbits, open chains marked open).
    pub fn underlying(&self) -> IncompletePartition {
        let w = self.words();
        IncompletePartition::new(w.n, w.words, w.open)
    }

    /// Number of open words.
    pub fn num_open(&self) -> usize {
        self.words().open.iter().filter(|o| **o).count()
    }

    /// Classifies every letter.
    ///
    /// With `pre = f⁻¹(w)` and `post = f(w)` (either may be missing): a
    /// fixed point is a closed singleton; the largest letter of a longer
    /// cycle is a cycle max; otherwise the letter is a valley when no
    /// neighbour is smaller, a double rise when only `pre` is smaller, a
    /// double fall when only `post` is smaller, and a peak when both are.
    pub fn letter_stats(&self) -> LetterStats {
        let inv = self.inverse_map();
        let words = self.words();
        let mut cycle_max = vec![false; self.n()];
        for (w, &o) in words.words.iter().zip(&words.open) {
            if !o && w.len() >= 2 {
                cycle_max[*w.iter().max().unwrap() as usize] = true;
            }
        }
        let mut s = LetterStats::default();
        for w in 0..self.n() {
            let post = self.map[w].map(|x| x as usize);
            let pre = inv[w].map(|x| x as usize);
            if post == Some(w) {
                s.closed_singleton += 1;
            } else if cycle_max[w] {
                s.cycle_max += 1;
            } else {
                let pre_smaller = pre.map(|p| p < w).unwrap_or(false);
                let post_smaller = post.map(|p| p < w).unwrap_or(false);
                match (pre_smaller, post_smaller) {
                    (false, false) => s.valley += 1,
                    (true, false) => s.double_rise += 1,
                    (false, true) => s.double_fall += 1,
                    (true, true) => s.peak += 1,
                }
            }
        }
        s
    }
}

impl fmt::Display for IncompletePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (x, y) in self.map.iter().enumerate() {
            if let Some(y) = y {
                if !first {
                    f.write_str(",")?;
                }
                first = false;
                write!(f, "{}→{}", x + 1, y + 1)?;
            }
        }
        f.write_str("}")
    }
}

impl OrderedBlockPartition {
    pub fn new(n: usize, words: Vec<Vec<u8>>, open: Vec<bool>) -> Self {
        let mut pairs: Vec<(Vec<u8>, bool)> = words
            .into_iter()
            .zip(open)
            .map(|(w, o)| {
                if o {
                    (w, o)
                } else {
                    let m = w.iter().enumerate().min_by_key(|(_, &l)| l).unwrap().0;
                    let mut r = w[m..].to_vec();
                    r.extend_from_slice(&w[..m]);
                    (r, o)
                }
            })
            .collect();
        pairs.sort_by_key(|(w, _)| *w.iter().max().unwrap());
        let (words, open) = pairs.into_iter().unzip();
        OrderedBlockPartition { n, words, open }
    }

    /// Recovers the partial map.
    pub fn to_permutation(&self) -> IncompletePermutation {
        let mut map = vec![None; self.n];
        for (w, &o) in self.words.iter().zip(&self.open) {
            for pair in w.windows(2) {
                map[pair[0] as usize] = Some(pair[1]);
            }
            if !o {
                map[*w.last().unwrap() as usize] = Some(w[0]);
            }
        }
        IncompletePermutation { map }
    }
}

impl fmt::Display for OrderedBlockPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (w, &o)) in self.words.iter().zip(&self.open).enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            let s: Vec<String> = w.iter().map(|l| (l + 1).to_string()).collect();
            if o {
                write!(f, "{}*", s.join(" "))?;
            } else {
                write!(f, "({})", s.join(" "))?;
            }
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, pairs: &[(u8, u8)]) -> IncompletePermutation {
        // 1-based input
        let p: Vec<(u8, u8)> = pairs.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        IncompletePermutation::from_pairs(n, &p).unwrap()
    }

    #[test]
    fn counts() {
        let expected = [1, 2, 7, 34, 209, 1546];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(IncompletePermutation::all(n).len(), c);
        }
    }

    #[test]
    fn word_model_example() {
        let p = perm(9, &[(2, 5), (3, 8), (5, 4), (7, 3), (8, 7), (9, 9)]);
        let w = p.words();
        let one_based: Vec<(Vec<u8>, bool)> = w
            .words
            .iter()
            .zip(&w.open)
            .map(|(w, &o)| (w.iter().map(|l| l + 1).collect(), o))
            .collect();
        assert_eq!(
            one_based,
            vec![
                (vec![1], true),
                (vec![2, 5, 4], true),
                (vec![6], true),
                (vec![3, 8, 7], false),
                (vec![9], false),
            ]
        );
        assert_eq!(w.to_permutation(), p);
        let (closed, open) = p.wick_blocks();
        assert_eq!(closed, vec![vec![6, 2, 7], vec![8]]);
        assert_eq!(open.len(), 3);
    }

    #[test]
    fn trivial_word_models() {
        let id = IncompletePermutation::identity(3);
        assert!(id.words().open.iter().all(|o| !o));
        let e = IncompletePermutation::empty(3);
        assert!(e.words().open.iter().all(|o| *o));
        assert_eq!(e.words().words.len(), 3);
    }

    #[test]
    fn words_roundtrip() {
        for p in IncompletePermutation::all(4) {
            assert_eq!(p.words().to_permutation(), p);
        }
    }

    #[test]
    fn letter_stat_examples() {
        let id = IncompletePermutation::identity(3).letter_stats();
        assert_eq!(id.closed_singleton, 3);
        let e = IncompletePermutation::empty(3).letter_stats();
        assert_eq!(e.valley, 3);
        let tr = perm(2, &[(1, 2), (2, 1)]).letter_stats();
        assert_eq!((tr.valley, tr.cycle_max, tr.total()), (1, 1, 2));
        for p in IncompletePermutation::all(4) {
            assert_eq!(p.letter_stats().total(), 4);
        }
    }

    #[test]
    fn projection_example() {
        let p = perm(2, &[(1, 2)]);
        assert_eq!(p.project(&[1, 1]), IncompletePermutation::empty(2));
        assert!(p.is_derangement_for(&[1, 1]));
        assert_eq!(p.project(&[2]), p);
        assert_eq!(p.to_string(), "{1→2}");
    }
}
