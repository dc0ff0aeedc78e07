//! Isomorphism and isomorphism classes of graphs on at most a handful of vertices.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::permgrp::Permutation;

use super::Graph;

/// Largest order handled by [`small_class`].
pub const MAX_CLASS_ORDER: usize = 5;

/// Bit position of the pair `{i, j}`, `i != j`, in a pattern mask.
#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    b * (b - 1) / 2 + a
}

/// Position-wise edge pattern of a vertex tuple.
pub fn pattern_mask(g: &Graph, tuple: &[usize]) -> u32 {
    let mut mask = 0u32;
    for j in 1..tuple.len() {
        for i in 0..j {
            if g.has_edge(tuple[i], tuple[j]) {
                mask |= 1 << pair_index(i, j);
            }
        }
    }
    mask
}

struct ClassTable {
    class_of: Vec<u16>,
    canonical: Vec<u32>,
}

fn permute_mask(mask: u32, m: usize, perm: &[usize]) -> u32 {
    let mut out = 0;
    for j in 1..m {
        for i in 0..j {
            if mask >> pair_index(i, j) & 1 == 1 {
                out |= 1 << pair_index(perm[i], perm[j]);
            }
        }
    }
    out
}

fn tables() -> &'static [ClassTable] {
    static TABLES: OnceLock<Vec<ClassTable>> = OnceLock::new();
    TABLES.get_or_init(|| {
        (0..=MAX_CLASS_ORDER)
            .map(|m| {
                let perms = crate::permgrp::tuples_permutations(m);
                let size = 1usize << (m * m.saturating_sub(1) / 2);
                let canon: Vec<u32> = (0..size as u32)
                    .map(|mask| perms.iter().map(|p| permute_mask(mask, m, p)).min().unwrap())
                    .collect();
                let mut canonical: Vec<u32> = canon.clone();
                canonical.sort_unstable();
                canonical.dedup();
                let class_of = canon
                    .iter()
                    .map(|c| canonical.binary_search(c).unwrap() as u16)
                    .collect();
                ClassTable { class_of, canonical }
            })
            .collect()
    })
}

/// Isomorphism class number of the graph on `0..m` with the given pattern mask.
/// Classes are numbered by their smallest mask, so class 0 is the coclique.
pub fn small_class(m: usize, mask: u32) -> usize {
    tables()[m].class_of[mask as usize] as usize
}

/// Number of isomorphism classes of graphs of order `m` (`m <= 5`).
pub fn small_class_count(m: usize) -> usize {
    tables()[m].canonical.len()
}

/// Canonical representative of a class.
pub fn small_class_graph(m: usize, class: usize) -> Graph {
    let mask = tables()[m].canonical[class];
    Graph::from_fn(m, |i, j| mask >> pair_index(i, j) & 1 == 1)
}

/// Exact isomorphism test for graphs of order at most 8; returns a map
/// `v -> phi(v)` from `g1` onto `g2` when isomorphic.
pub fn iso_small(g1: &Graph, g2: &Graph) -> Result<Option<Permutation>> {
    let n = g1.order();
    if n > 8 || g2.order() > 8 {
        return Err(Error::InvalidParameter("iso_small handles at most 8 vertices".into()));
    }
    if n != g2.order() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let d1: Vec<usize> = (0..n).map(|v| g1.degree(v)).collect();
    let d2: Vec<usize> = (0..n).map(|v| g2.degree(v)).collect();
    let mut s1 = d1.clone();
    let mut s2 = d2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(None);
    }
    fn extend(
        g1: &Graph,
        g2: &Graph,
        d1: &[usize],
        d2: &[usize],
        phi: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let v = phi.len();
        if v == d1.len() {
            return true;
        }
        for w in 0..d1.len() {
            if used[w] || d1[v] != d2[w] {
                continue;
            }
            if (0..v).all(|u| g1.has_edge(u, v) == g2.has_edge(phi[u], w)) {
                used[w] = true;
                phi.push(w);
                if extend(g1, g2, d1, d2, phi, used) {
                    return true;
                }
                phi.pop();
                used[w] = false;
            }
        }
        false
    }
    let mut phi = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(g1, g2, &d1, &d2, &mut phi, &mut used) {
        Ok(Some(Permutation::from_images(phi)?))
    } else {
        Ok(None)
    }
}
