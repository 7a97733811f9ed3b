//! Small-graph corpora: every graph of a given order up to isomorphism, and
//! seeded random batches.
//!
//! Isomorphism classes are found by brute force (minimum upper-triangle mask
//! over all vertex permutations), which is only practical up to order 7.

use std::collections::BTreeSet;

use crate::error::GraphError;
use crate::families::{random_graph, Family};
use crate::graph::Graph;

/// Largest order accepted by [`all_graphs`].
pub const MAX_ENUMERATION_ORDER: usize = 7;

/// Edge probabilities cycled through by [`random_batch`].
pub const BATCH_PROBABILITIES: [f64; 5] = [0.2, 0.35, 0.5, 0.65, 0.8];

#[allow(clippy::needless_range_loop)]
fn pair_index(n: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![usize::MAX; n]; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            idx[i][j] = k;
            idx[j][i] = k;
            k += 1;
        }
    }
    idx
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn mask_connected(n: usize, mask: u64, pairs: &[(usize, usize)]) -> bool {
    let mut adj = vec![0u32; n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[v] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen.count_ones() as usize == n
}

/// One representative per isomorphism class of graphs on `n` vertices, in a
/// fixed order (ascending canonical mask).
pub fn all_graphs(n: usize, connected_only: bool) -> Result<Vec<Graph>, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(GraphError::Family {
            spec: format!("all graphs of order {n}"),
            message: format!("exhaustive enumeration is limited to order {MAX_ENUMERATION_ORDER}"),
        });
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let idx = pair_index(n);
    // For each permutation, where each pair bit moves to.
    let moves: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .map(|perm| pairs.iter().map(|&(i, j)| idx[perm[i]][perm[j]]).collect())
        .collect();
    let mut classes = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        if connected_only && !mask_connected(n, mask, &pairs) {
            continue;
        }
        // A class is kept at its minimum mask: no vertex permutation may map
        // `mask` to a smaller one.
        let canonical = moves.iter().all(|mv| {
            let mut image = 0u64;
            let mut m = mask;
            while m != 0 {
                let k = m.trailing_zeros() as usize;
                m &= m - 1;
                image |= 1 << mv[k];
            }
            image >= mask
        });
        if canonical {
            classes.insert(mask);
        }
    }
    Ok(classes
        .into_iter()
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e);
            Graph::new(n, edges).expect("enumerated edges are valid")
        })
        .collect())
}

/// All isomorphism classes with orders in `1..=max_order`, ascending by order.
pub fn all_graphs_up_to(max_order: usize, connected_only: bool) -> Result<Vec<Graph>, GraphError> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.extend(all_graphs(n, connected_only)?);
    }
    Ok(out)
}

/// `count` random graphs with orders cycling through `min_order..=max_order`.
///
/// Graph `k` is `random:n,p,seed` with `n = min_order + k mod span`,
/// `p = BATCH_PROBABILITIES[(k / span) mod 5]` and `seed = base_seed + k`.
pub fn random_batch(
    count: usize,
    min_order: usize,
    max_order: usize,
    base_seed: u64,
) -> Vec<(Family, Graph)> {
    assert!(1 <= min_order && min_order <= max_order);
    let span = max_order - min_order + 1;
    (0..count)
        .map(|k| {
            let n = min_order + k % span;
            let p = BATCH_PROBABILITIES[(k / span) % BATCH_PROBABILITIES.len()];
            let seed = base_seed.wrapping_add(k as u64);
            (Family::Random { n, p, seed }, random_graph(n, p, seed))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_known_sequences() {
        // OEIS A000088 (all graphs) and A001349 (connected graphs).
        let all: Vec<usize> = (1..=5)
            .map(|n| all_graphs(n, false).unwrap().len())
            .collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34]);
        let conn: Vec<usize> = (1..=5)
            .map(|n| all_graphs(n, true).unwrap().len())
            .collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn order_limit() {
        assert!(all_graphs(8, true).is_err());
        assert!(all_graphs(0, true).is_err());
    }

    #[test]
    fn random_batch_is_deterministic() {
        let a = random_batch(10, 7, 12, 5);
        let b = random_batch(10, 7, 12, 5);
        assert_eq!(a.len(), 10);
        for ((fa, ga), (fb, gb)) in a.iter().zip(&b) {
            assert_eq!(fa, fb);
            assert_eq!(ga, gb);
        }
        assert_eq!(a[0].1.order(), 7);
        assert_eq!(a[5].1.order(), 12);
        assert_eq!(a[6].1.order(), 7);
    }
}
