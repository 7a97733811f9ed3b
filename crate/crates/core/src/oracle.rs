//! Exhaustive reference computations, independent of the branch-and-bound
//! solvers. Exponential; only for small orders.

use crate::error::SolveError;
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

pub const GAMMA_ORACLE_MAX_ORDER: usize = 16;
pub const ROMAN_ORACLE_MAX_ORDER: usize = 12;
pub const ROMAN_TWOS_ORACLE_MAX_ORDER: usize = 20;

fn masks(g: &Graph, limit: usize) -> Result<(Vec<u32>, Vec<u32>), SolveError> {
    if g.order() > limit {
        return Err(SolveError::OrderExceeded {
            order: g.order(),
            max_order: limit,
        });
    }
    let to_mask = |s: &VertexSet| s.iter().fold(0u32, |m, v| m | 1 << v);
    let open = (0..g.order()).map(|v| to_mask(g.neighbors(v))).collect();
    let closed = (0..g.order())
        .map(|v| to_mask(g.closed_neighbors(v)))
        .collect();
    Ok((open, closed))
}

/// γ(G) by trying subsets in order of increasing size.
pub fn brute_force_gamma(g: &Graph) -> Result<usize, SolveError> {
    let (_, closed) = masks(g, GAMMA_ORACLE_MAX_ORDER)?;
    let n = g.order();
    let full: u32 = (1u32 << n) - 1;
    for k in 1..=n {
        // Gosper's hack over all k-subsets of 0..n.
        let mut set: u32 = (1 << k) - 1;
        while set <= full {
            let mut covered = 0u32;
            let mut m = set;
            while m != 0 {
                covered |= closed[m.trailing_zeros() as usize];
                m &= m - 1;
            }
            if covered == full {
                return Ok(k);
            }
            let low = set & set.wrapping_neg();
            let ripple = set + low;
            set = (((ripple ^ set) >> 2) / low) | ripple;
        }
    }
    unreachable!("V(G) dominates itself")
}

/// Minimum RDF weight over labelings accepted by `keep`, scanning all `3^n`
/// labelings. `keep` sees the masks of the 1s and 2s.
fn scan_labelings(
    g: &Graph,
    mut keep: impl FnMut(u32, u32) -> bool,
) -> Result<Option<usize>, SolveError> {
    let (open, _) = masks(g, ROMAN_ORACLE_MAX_ORDER)?;
    let n = g.order();
    let full: u32 = (1u32 << n) - 1;
    let mut digits = vec![0u8; n];
    let mut best: Option<usize> = None;
    loop {
        let (mut ones, mut twos) = (0u32, 0u32);
        for (v, &d) in digits.iter().enumerate() {
            match d {
                1 => ones |= 1 << v,
                2 => twos |= 1 << v,
                _ => {}
            }
        }
        if keep(ones, twos) {
            let zeros = full & !(ones | twos);
            let mut reach = 0u32;
            let mut m = twos;
            while m != 0 {
                reach |= open[m.trailing_zeros() as usize];
                m &= m - 1;
            }
            if zeros & !reach == 0 {
                let w = ones.count_ones() as usize + 2 * twos.count_ones() as usize;
                best = Some(best.map_or(w, |b| b.min(w)));
            }
        }
        // base-3 increment
        let mut k = 0;
        loop {
            if k == n {
                return Ok(best);
            }
            digits[k] += 1;
            if digits[k] < 3 {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// γ_R(G) as the minimum weight over all `3^n` labelings that are RDFs.
pub fn brute_force_gamma_roman(g: &Graph) -> Result<usize, SolveError> {
    Ok(scan_labelings(g, |_, _| true)?.expect("all-ones labeling is an RDF"))
}

/// Minimum weight over RDFs whose 2-class is exactly `twos`, by scanning all
/// labelings.
pub fn brute_force_min_weight_with_twos(g: &Graph, twos: &VertexSet) -> Result<usize, SolveError> {
    let target = twos.iter().fold(0u32, |m, v| m | 1 << v);
    Ok(scan_labelings(g, |_, t| t == target)?.expect("labeling with 1s outside `twos` is an RDF"))
}

/// γ_R(G) as `min_S 2|S| + (n − |N[S]|)` over all `2^n` subsets `S`.
pub fn brute_force_gamma_roman_by_twos(g: &Graph) -> Result<usize, SolveError> {
    let (_, closed) = masks(g, ROMAN_TWOS_ORACLE_MAX_ORDER)?;
    let n = g.order();
    let mut best = n;
    for s in 0u32..(1u32 << n) {
        let mut covered = 0u32;
        let mut m = s;
        while m != 0 {
            covered |= closed[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        let w = 2 * s.count_ones() as usize + n - covered.count_ones() as usize;
        best = best.min(w);
    }
    Ok(best)
}
