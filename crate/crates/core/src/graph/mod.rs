//! Simple undirected graphs with bitset adjacency.

mod canon;
mod io;
mod small;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgrp::{OrbitalReport, Permutation, PermutationGroup};

pub use canon::{automorphism_group, automorphism_group_colored, canonical_form, are_isomorphic, AutResult, SearchOptions};
pub use io::{from_edge_list, from_graph6, to_edge_list, to_graph6};
pub use small::{
    iso_small, pair_index, pattern_mask, small_class, small_class_count, small_class_graph, MAX_CLASS_ORDER,
};

/// A simple undirected graph on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    labels: Option<Vec<String>>,
}

/// Parameters `(v, k, lambda, mu)` of a strongly regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    pub fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Self {
        SrgParams { v, k, lambda, mu }
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            labels: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            if n >= 3 {
                g.add_edge(u, (u + 1) % n);
            }
        }
        g
    }

    /// The Petersen graph: outer cycle 0..5, inner pentagram 5..10.
    pub fn petersen() -> Self {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Graph whose adjacency is given by a symmetric predicate on distinct vertices.
    pub fn from_fn(n: usize, mut adj: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if adj(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Bitset row of `u`.
    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &bits) in self.row(u).iter().enumerate() {
            let mut b = bits;
            while b != 0 {
                out.push(w * 64 + b.trailing_zeros() as usize);
                b &= b - 1;
            }
        }
        out
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Same adjacency, labels dropped.
    pub fn unlabeled(&self) -> Graph {
        Graph {
            labels: None,
            ..self.clone()
        }
    }

    /// Equality of adjacency, ignoring labels.
    pub fn same_edges(&self, other: &Graph) -> bool {
        self.n == other.n && self.rows == other.rows
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::from_fn(self.n, |u, v| !self.has_edge(u, v));
        g.labels = self.labels.clone();
        g
    }

    /// Induced subgraph on `vertices`, keeping their order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut seen = HashSet::new();
        for &v in vertices {
            if v >= self.n {
                return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidParameter(format!("vertex {v} repeated")));
            }
        }
        let mut g = Graph::from_fn(vertices.len(), |i, j| self.has_edge(vertices[i], vertices[j]));
        if let Some(l) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| l[v].clone()).collect());
        }
        Ok(g)
    }

    /// The graph with vertex `v` renamed `perm(v)`.
    pub fn relabel(&self, perm: &Permutation) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm.image(u), perm.image(v));
        }
        if let Some(l) = &self.labels {
            let mut nl = vec![String::new(); self.n];
            for (v, lab) in l.iter().enumerate() {
                nl[perm.image(v)] = lab.clone();
            }
            g.labels = Some(nl);
        }
        g
    }

    pub fn is_automorphism(&self, perm: &Permutation) -> bool {
        perm.degree() == self.n
            && (0..self.n).all(|u| {
                self.neighbors(u)
                    .into_iter()
                    .all(|v| self.has_edge(perm.image(u), perm.image(v)))
            })
    }

    /// Checks that every generator of `group` is an automorphism.
    pub fn is_preserved_by(&self, group: &PermutationGroup) -> bool {
        group.degree() == self.n && group.generators().iter().all(|g| self.is_automorphism(g))
    }

    pub fn is_regular(&self) -> Option<usize> {
        let k = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|u| self.degree(u) == k).then_some(k)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// Diameter, or `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            for &d in &dist {
                if d == usize::MAX {
                    return None;
                }
                best = best.max(d);
            }
        }
        Some(best)
    }

    pub fn has_triangle(&self) -> bool {
        self.edges().iter().any(|&(u, v)| self.common_neighbors(u, v) > 0)
    }

    /// Strongly regular parameters; the error names a violating vertex pair.
    pub fn srg_params(&self) -> Result<SrgParams> {
        let n = self.n;
        let k = self
            .is_regular()
            .ok_or_else(|| Error::NotStronglyRegular("graph is not regular".into()))?;
        if n < 2 || k == 0 || k == n - 1 {
            return Err(Error::NotStronglyRegular("graph is empty or complete".into()));
        }
        let mut lambda = None;
        let mut mu = None;
        for u in 0..n {
            for v in u + 1..n {
                let c = self.common_neighbors(u, v);
                let slot = if self.has_edge(u, v) { &mut lambda } else { &mut mu };
                match *slot {
                    None => *slot = Some(c),
                    Some(x) if x != c => {
                        let kind = if self.has_edge(u, v) { "adjacent" } else { "non-adjacent" };
                        return Err(Error::NotStronglyRegular(format!(
                            "{kind} pair ({u},{v}) has {c} common neighbours, expected {x}"
                        )));
                    }
                    _ => {}
                }
            }
        }
        Ok(SrgParams::new(
            n as u64,
            k as u64,
            lambda.unwrap_or(0) as u64,
            mu.unwrap_or(0) as u64,
        ))
    }

    /// `K_n x K_n` on index pairs `(a, b)` ordered lex; Cartesian product when
    /// `cartesian`, direct (tensor) product otherwise.
    pub fn complete_product(n: usize, cartesian: bool) -> Graph {
        Graph::from_fn(n * n, |x, y| {
            let (a, b) = (x / n, x % n);
            let (c, d) = (y / n, y % n);
            if cartesian {
                (a == c) != (b == d)
            } else {
                a != c && b != d
            }
        })
    }

    /// Union of the orbital graphs of a transitive group for the given orbital
    /// indices; each index must be self-paired or come with its pair.
    pub fn from_orbitals(group: &PermutationGroup, report: &OrbitalReport, indices: &[usize]) -> Result<Graph> {
        let n = group.degree();
        for &i in indices {
            let o = report
                .orbitals
                .get(i)
                .ok_or_else(|| Error::InvalidParameter(format!("no orbital {i}")))?;
            if i == 0 || !indices.contains(&o.paired_with) {
                return Err(Error::InvalidParameter(format!(
                    "orbital {i} does not give an undirected graph"
                )));
            }
        }
        let trans = group.orbit_transversal(0);
        let mut g = Graph::empty(n);
        for x in 0..n {
            let t = trans[x].as_ref().ok_or(Error::Intransitive)?;
            for &i in indices {
                for &y in &report.orbitals[i].suborbit {
                    g.add_edge(x, t.image(y));
                }
            }
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_is_involution() {
        let g = Graph::petersen();
        assert!(g.complement().complement().same_edges(&g));
    }

    #[test]
    fn hamming_complement_is_direct_product() {
        for n in 3..=5 {
            let c = Graph::complete_product(n, true);
            let d = Graph::complete_product(n, false);
            assert!(c.complement().same_edges(&d));
        }
        assert_eq!(Graph::complete_product(1, true).order(), 1);
    }

    #[test]
    fn hamming_parameters() {
        assert_eq!(Graph::complete_product(3, true).srg_params().unwrap(), SrgParams::new(9, 4, 1, 2));
        assert_eq!(Graph::complete_product(4, true).srg_params().unwrap(), SrgParams::new(16, 6, 2, 2));
        assert_eq!(Graph::cycle(4).srg_params().unwrap(), SrgParams::new(4, 2, 0, 2));
        assert!(Graph::cycle(6).srg_params().is_err());
        assert!(Graph::complete(5).srg_params().is_err());
    }

    #[test]
    fn induced_subgraphs() {
        let g = Graph::petersen();
        let c = g.induced_subgraph(&[0, 1, 2, 3, 4]).unwrap();
        assert!(c.same_edges(&Graph::cycle(5)));
        assert_eq!(g.induced_subgraph(&[7]).unwrap().edge_count(), 0);
        assert!(g.induced_subgraph(&[0, 0]).is_err());
        assert!(g.induced_subgraph(&[10]).is_err());
    }

    #[test]
    fn petersen_basics() {
        let g = Graph::petersen();
        assert_eq!(g.srg_params().unwrap(), SrgParams::new(10, 3, 0, 1));
        assert_eq!(g.diameter(), Some(2));
        assert!(!g.has_triangle());
    }
}
