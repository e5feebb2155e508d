//! The order isomorphism between `INC(n)` and `INC₁,₂(2n)`.
//!
//! Point `i` of `[n]` becomes the two points `i, ī` of the doubled ground set,
//! placed at positions `2i` and `2i + 1`. A closed block `i₁ < … < i_k`
//! becomes the pairs `(i₁, ī_k), (ī₁, i₂), …, (ī_{k-1}, i_k)`; an open block
//! becomes the same pairs except that `i₁` and `ī_k` stay singletons.

use super::partition::{depths, IncompletePartition};

fn plain(i: u8) -> u8 {
    2 * i
}

fn barred(i: u8) -> u8 {
    2 * i + 1
}

/// Image of an `INC(n)` element in `INC₁,₂(2n)`.
pub fn inc_to_inc12(x: &IncompletePartition) -> IncompletePartition {
    let mut blocks = Vec::new();
    for (b, &o) in x.blocks.iter().zip(&x.open) {
        for w in b.windows(2) {
            blocks.push(vec![barred(w[0]), plain(w[1])]);
        }
        let first = plain(b[0]);
        let last = barred(*b.last().unwrap());
        if o {
            blocks.push(vec![first]);
            blocks.push(vec![last]);
        } else {
            blocks.push(vec![first, last]);
        }
    }
    IncompletePartition::matching(2 * x.n, blocks)
}

/// Inverse of [`inc_to_inc12`]; `None` if `y` is not in the image.
pub fn inc12_to_inc(y: &IncompletePartition) -> Option<IncompletePartition> {
    if y.n % 2 != 0 {
        return None;
    }
    let n = y.n / 2;
    let mut partner: Vec<Option<u8>> = vec![None; y.n];
    for b in &y.blocks {
        match b.as_slice() {
            [p] => partner[*p as usize] = None,
            [p, q] => {
                partner[*p as usize] = Some(*q);
                partner[*q as usize] = Some(*p);
            }
            _ => return None,
        }
    }
    // predecessor links: i is preceded by j < i when i is paired with j̄
    let mut pred: Vec<Option<u8>> = vec![None; n];
    let mut succ: Vec<Option<u8>> = vec![None; n];
    for i in 0..n as u8 {
        if let Some(q) = partner[plain(i) as usize] {
            if q % 2 == 1 && q / 2 < i {
                let j = q / 2;
                pred[i as usize] = Some(j);
                if succ[j as usize].is_some() {
                    return None;
                }
                succ[j as usize] = Some(i);
            }
        }
    }
    let mut blocks = Vec::new();
    let mut open = Vec::new();
    for start in 0..n as u8 {
        if pred[start as usize].is_some() {
            continue;
        }
        let mut b = vec![start];
        let mut cur = start;
        while let Some(next) = succ[cur as usize] {
            b.push(next);
            cur = next;
        }
        let last = *b.last().unwrap();
        match partner[plain(start) as usize] {
            None => {
                if partner[barred(last) as usize].is_some() {
                    return None;
                }
                open.push(true);
            }
            Some(q) if q == barred(last) => open.push(false),
            Some(_) => return None,
        }
        blocks.push(b);
    }
    let x = IncompletePartition::new(n, blocks, open);
    (inc_to_inc12(&x) == *y).then_some(x)
}

/// Number of pairs at even depth.
pub fn even_depth_pairs(y: &IncompletePartition) -> usize {
    depths(&y.blocks)
        .iter()
        .zip(&y.blocks)
        .filter(|(d, b)| b.len() == 2 && **d % 2 == 0)
        .count()
}
