//! Weakly separated collections of `k`-subsets of `[m]`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A `k`-subset of `[m]` as a bit mask (bit `i-1` for element `i`).
pub type Subset = u32;

/// Weak separation in the cyclic sense: walking around `1..m`, the elements
/// of `I \ J` and `J \ I` form at most two contiguous blocks.
pub fn weakly_separated(a: Subset, b: Subset, m: usize) -> bool {
    let only_a = a & !b;
    let only_b = b & !a;
    let mut labels = Vec::new();
    for i in 0..m {
        if only_a >> i & 1 == 1 {
            labels.push(0u8);
        } else if only_b >> i & 1 == 1 {
            labels.push(1u8);
        }
    }
    if labels.is_empty() {
        return true;
    }
    let changes = (0..labels.len()).filter(|&i| labels[i] != labels[(i + 1) % labels.len()]).count();
    changes <= 2
}

pub fn subsets(k: usize, m: usize) -> Vec<Subset> {
    (0u32..1 << m).filter(|s| s.count_ones() as usize == k).collect()
}

/// Cyclic intervals of length `k` in `[m]`.
pub fn cyclic_intervals(k: usize, m: usize) -> Vec<Subset> {
    (0..m)
        .map(|start| (0..k).fold(0, |acc, j| acc | 1 << ((start + j) % m)))
        .collect()
}

pub fn to_elements(s: Subset) -> Vec<usize> {
    (0..32).filter(|i| s >> i & 1 == 1).map(|i| i + 1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WSCollection {
    pub k: usize,
    pub m: usize,
    pub sets: Vec<Vec<usize>>,
    pub maximal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub k: usize,
    pub m: usize,
    pub count: usize,
    pub expected_size: usize,
    pub pure: bool,
    pub sizes: Vec<usize>,
}

/// All maximal weakly separated collections containing the cyclic
/// intervals.
pub fn maximal_collections(k: usize, m: usize) -> Result<Vec<WSCollection>> {
    check_range(k, m)?;
    let frozen = cyclic_intervals(k, m);
    let all = subsets(k, m);
    let free: Vec<Subset> = all.iter().copied().filter(|s| !frozen.contains(s)).collect();
    let n = free.len();
    let adj: Vec<u128> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && weakly_separated(free[i], free[j], m))
                .fold(0u128, |acc, j| acc | 1 << j)
        })
        .collect();
    let mut cliques = Vec::new();
    let all_mask = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    bron_kerbosch(0, all_mask, 0, &adj, &mut cliques);
    let mut frozen_sorted = frozen.clone();
    frozen_sorted.sort_unstable();
    frozen_sorted.dedup();
    Ok(cliques
        .into_iter()
        .map(|c| {
            let mut sets: Vec<Vec<usize>> = frozen_sorted.iter().map(|&s| to_elements(s)).collect();
            sets.extend((0..n).filter(|&j| c >> j & 1 == 1).map(|j| to_elements(free[j])));
            WSCollection { k, m, sets, maximal: true }
        })
        .collect())
}

fn check_range(k: usize, m: usize) -> Result<()> {
    if !(1 <= k && k < m && m <= 9) {
        return Err(Error::OutOfRange(format!("need 1 <= k < m <= 9, got k={k}, m={m}")));
    }
    Ok(())
}

fn bron_kerbosch(r: u128, mut p: u128, mut x: u128, adj: &[u128], out: &mut Vec<u128>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let pivot = {
        let px = p | x;
        (0..128).filter(|&u| px >> u & 1 == 1).max_by_key(|&u| (p & adj[u]).count_ones()).unwrap()
    };
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        bron_kerbosch(r | 1 << v, p & adj[v], x & adj[v], adj, out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// Number of maximal weakly separated collections, with the purity check
/// `|C| = k(m-k)+1` evaluated on each.
pub fn weakly_separated_count(k: usize, m: usize) -> Result<SeparationReport> {
    let cols = maximal_collections(k, m)?;
    let expected = k * (m - k) + 1;
    let mut sizes: Vec<usize> = cols.iter().map(|c| c.sets.len()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    Ok(SeparationReport { k, m, count: cols.len(), expected_size: expected, pure: sizes == vec![expected], sizes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separation_examples() {
        // {1,3} and {2,4} interleave in [4]
        assert!(!weakly_separated(0b0101, 0b1010, 4));
        assert!(weakly_separated(0b0011, 0b1100, 4));
        assert!(weakly_separated(0b0011, 0b0011, 4));
    }

    #[test]
    fn intervals_are_separated_from_everything() {
        for s in subsets(3, 7) {
            for i in cyclic_intervals(3, 7) {
                assert!(weakly_separated(s, i, 7));
            }
        }
    }
}
