//! Automorphism groups and canonical labeling by individualization-refinement.
//!
//! Partitions are refined to equitable ones by neighbour counts; the target
//! cell is the first smallest non-singleton cell and its vertices are tried in
//! increasing order. Subtrees are pruned by orbits of the automorphisms found
//! so far that fix the current prefix, and by comparing refinement traces with
//! the first and the best leaf. Leaves are compared by (trace, relabelled
//! adjacency matrix).

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::permgrp::{Bsgs, Permutation, PermutationGroup};

use super::Graph;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Search-tree node budget.
    pub max_nodes: u64,
    /// Largest accepted order.
    pub max_vertices: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_nodes: 10_000_000,
            max_vertices: 300,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AutResult {
    pub group: PermutationGroup,
    /// False when the node budget ran out: `group` is then only a subgroup.
    pub certified: bool,
    pub nodes: u64,
    /// `v -> position of v` in the canonical order (only when certified).
    pub canonical_labeling: Option<Permutation>,
}

impl AutResult {
    /// The canonically relabelled graph.
    pub fn canonical_graph(&self, g: &Graph) -> Option<Graph> {
        self.canonical_labeling.as_ref().map(|l| g.relabel(l).unlabeled())
    }
}

#[derive(Clone)]
struct Partition {
    order: Vec<u32>,
    pos: Vec<u32>,
    /// Start of the cell holding each position.
    start_of: Vec<u32>,
    /// End of the cell starting at each cell start.
    end: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn from_colors(colors: &[u32]) -> (Self, Vec<u32>) {
        let n = colors.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&v| (colors[v as usize], v));
        let mut pos = vec![0u32; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let mut start_of = vec![0u32; n];
        let mut end = vec![0u32; n];
        let mut starts = Vec::new();
        let mut i = 0;
        while i < n {
            let c = colors[order[i] as usize];
            let mut j = i;
            while j < n && colors[order[j] as usize] == c {
                start_of[j] = i as u32;
                j += 1;
            }
            end[i] = j as u32;
            starts.push(i as u32);
            i = j;
        }
        let cells = starts.len();
        (
            Partition {
                order,
                pos,
                start_of,
                end,
                cells,
            },
            starts,
        )
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.order.len()
    }

    fn cell_of(&self, v: usize) -> usize {
        self.start_of[self.pos[v] as usize] as usize
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        let n = self.order.len();
        let mut best: Option<(usize, usize)> = None;
        let mut i = 0;
        while i < n {
            let e = self.end[i] as usize;
            let size = e - i;
            if size > 1 && best.map_or(true, |(_, s)| size < s) {
                best = Some((i, size));
            }
            i = e;
        }
        best.map(|(s, _)| s)
    }

    /// Splits `v` off the front of its cell; returns the new singleton's start.
    fn individualize(&mut self, v: usize) -> u32 {
        let c = self.cell_of(v);
        let e = self.end[c];
        let pv = self.pos[v] as usize;
        let w = self.order[c];
        self.order.swap(c, pv);
        self.pos[v] = c as u32;
        self.pos[w as usize] = pv as u32;
        self.end[c] = c as u32 + 1;
        for i in c + 1..e as usize {
            self.start_of[i] = c as u32 + 1;
        }
        self.end[c + 1] = e;
        self.cells += 1;
        c as u32
    }
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct Leaf {
    path: Vec<u32>,
    trace: Vec<u64>,
    cert: Vec<u64>,
    order: Vec<u32>,
}

enum Flow {
    Continue,
    JumpTo(usize),
    Abort,
}

struct Searcher<'a> {
    g: &'a Graph,
    adj: Vec<Vec<u32>>,
    gens: Vec<Permutation>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    nodes: u64,
    max_nodes: u64,
    counts: Vec<u32>,
    mark: Vec<bool>,
    in_queue: Vec<bool>,
}

fn common_prefix(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl<'a> Searcher<'a> {
    fn refine(&mut self, p: &mut Partition, init: &[u32]) -> u64 {
        let mut h = 0x51ed_27a3_u64;
        let mut queue: VecDeque<u32> = VecDeque::new();
        for &s in init {
            queue.push_back(s);
            self.in_queue[s as usize] = true;
        }
        let mut touched: Vec<u32> = Vec::new();
        let mut cells: Vec<u32> = Vec::new();
        while let Some(w) = queue.pop_front() {
            self.in_queue[w as usize] = false;
            if p.is_discrete() {
                continue;
            }
            let wend = p.end[w as usize];
            for idx in w..wend {
                let u = p.order[idx as usize] as usize;
                for &x in &self.adj[u] {
                    if self.counts[x as usize] == 0 {
                        touched.push(x);
                    }
                    self.counts[x as usize] += 1;
                }
            }
            for &x in &touched {
                let c = p.cell_of(x as usize);
                if p.end[c] as usize - c > 1 && !self.mark[c] {
                    self.mark[c] = true;
                    cells.push(c as u32);
                }
            }
            cells.sort_unstable();
            for &c in &cells {
                let c = c as usize;
                self.mark[c] = false;
                let e = p.end[c] as usize;
                let counts = &self.counts;
                p.order[c..e].sort_unstable_by_key(|&v| counts[v as usize]);
                let lo = counts[p.order[c] as usize];
                let hi = counts[p.order[e - 1] as usize];
                h = mix(h, (w as u64) << 40 | (c as u64) << 20 | lo as u64);
                if lo == hi {
                    continue;
                }
                let mut runs: Vec<(usize, usize)> = Vec::new();
                let mut a = c;
                while a < e {
                    let k = counts[p.order[a] as usize];
                    let mut b = a;
                    while b < e && counts[p.order[b] as usize] == k {
                        b += 1;
                    }
                    runs.push((a, b));
                    h = mix(h, (a as u64) << 32 | ((b - a) as u64) << 16 | k as u64);
                    a = b;
                }
                for &(a, b) in &runs {
                    p.end[a] = b as u32;
                    for i in a..b {
                        p.start_of[i] = a as u32;
                        p.pos[p.order[i] as usize] = i as u32;
                    }
                }
                p.cells += runs.len() - 1;
                if self.in_queue[c] {
                    for &(a, _) in &runs[1..] {
                        queue.push_back(a as u32);
                        self.in_queue[a] = true;
                    }
                } else {
                    let mut largest = 0;
                    for (i, &(a, b)) in runs.iter().enumerate() {
                        if b - a > runs[largest].1 - runs[largest].0 {
                            largest = i;
                        }
                    }
                    for (i, &(a, _)) in runs.iter().enumerate() {
                        if i != largest {
                            queue.push_back(a as u32);
                            self.in_queue[a] = true;
                        }
                    }
                }
            }
            for &x in &touched {
                self.counts[x as usize] = 0;
            }
            touched.clear();
            cells.clear();
        }
        for s in queue {
            self.in_queue[s as usize] = false;
        }
        mix(h, p.cells as u64)
    }

    fn certificate(&self, p: &Partition) -> Vec<u64> {
        let n = p.order.len();
        let words = self.g.words();
        let mut cert = vec![0u64; n * words];
        for i in 0..n {
            let v = p.order[i] as usize;
            for &u in &self.adj[v] {
                let j = p.pos[u as usize] as usize;
                cert[i * words + j / 64] |= 1 << (j % 64);
            }
        }
        cert
    }

    fn add_automorphism(&mut self, from: &[u32], to: &[u32]) {
        let n = from.len();
        let mut images = vec![0usize; n];
        for i in 0..n {
            images[from[i] as usize] = to[i] as usize;
        }
        let perm = Permutation::from_images(images).expect("leaf orders are permutations");
        debug_assert!(self.g.is_automorphism(&perm));
        self.gens.push(perm);
    }

    fn leaf(&mut self, p: &Partition, path: &[u32], trace: &[u64]) -> Flow {
        let cert = self.certificate(p);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                path: path.to_vec(),
                trace: trace.to_vec(),
                cert,
                order: p.order.clone(),
            };
            self.best = Some(Leaf {
                path: leaf.path.clone(),
                trace: leaf.trace.clone(),
                cert: leaf.cert.clone(),
                order: leaf.order.clone(),
            });
            self.first = Some(leaf);
            return Flow::Continue;
        };
        if first.trace == trace && first.cert == cert {
            let jump = common_prefix(path, &first.path);
            let from = first.order.clone();
            self.add_automorphism(&from, &p.order);
            return Flow::JumpTo(jump);
        }
        let best = self.best.as_ref().unwrap();
        match (trace, &cert).cmp(&(&best.trace[..], &best.cert)) {
            Ordering::Equal => {
                let jump = common_prefix(path, &best.path);
                let from = best.order.clone();
                self.add_automorphism(&from, &p.order);
                Flow::JumpTo(jump)
            }
            Ordering::Greater => {
                self.best = Some(Leaf {
                    path: path.to_vec(),
                    trace: trace.to_vec(),
                    cert,
                    order: p.order.clone(),
                });
                Flow::Continue
            }
            Ordering::Less => Flow::Continue,
        }
    }

    fn orbit_roots(&self, path: &[u32]) -> Vec<usize> {
        let n = self.adj.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &self.gens {
            if path.iter().all(|&v| g.image(v as usize) == v as usize) {
                for x in 0..n {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, g.image(x)));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        (0..n).map(|x| find(&mut parent, x)).collect()
    }

    fn search(&mut self, p: Partition, path: &mut Vec<u32>, trace: &mut Vec<u64>) -> Flow {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Flow::Abort;
        }
        let depth = path.len();
        if let (Some(first), Some(best)) = (&self.first, &self.best) {
            let on_first = first.trace.len() >= trace.len() && first.trace[..trace.len()] == trace[..];
            let k = trace.len().min(best.trace.len());
            if !on_first && trace[..k] < best.trace[..k] {
                return Flow::Continue;
            }
        }
        let Some(t) = p.target_cell() else {
            return self.leaf(&p, path, trace);
        };
        let mut cell: Vec<u32> = p.order[t..p.end[t] as usize].to_vec();
        cell.sort_unstable();
        let mut roots: Vec<usize> = Vec::new();
        let mut seen_gens = usize::MAX;
        for &v in &cell {
            if self.gens.len() != seen_gens {
                seen_gens = self.gens.len();
                roots = self.orbit_roots(path);
            }
            if roots[v as usize] != v as usize {
                continue;
            }
            let mut child = p.clone();
            let s = child.individualize(v as usize);
            let h = self.refine(&mut child, &[s]);
            path.push(v);
            trace.push(h);
            let flow = self.search(child, path, trace);
            path.pop();
            trace.pop();
            match flow {
                Flow::Continue => {}
                Flow::JumpTo(l) if l >= depth => {}
                other => return other,
            }
        }
        Flow::Continue
    }
}

/// Automorphism group of a vertex-coloured graph (colour classes are preserved).
pub fn automorphism_group_colored(g: &Graph, colors: &[u32], opts: &SearchOptions) -> Result<AutResult> {
    let n = g.order();
    if n > opts.max_vertices {
        return Err(Error::Precondition(format!(
            "graph has {n} vertices, limit is {}",
            opts.max_vertices
        )));
    }
    if colors.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: colors.len(),
        });
    }
    if n == 0 {
        return Ok(AutResult {
            group: PermutationGroup::trivial(0),
            certified: true,
            nodes: 0,
            canonical_labeling: Some(Permutation::identity(0)),
        });
    }
    let adj = (0..n)
        .map(|v| g.neighbors(v).into_iter().map(|x| x as u32).collect())
        .collect();
    let mut s = Searcher {
        g,
        adj,
        gens: Vec::new(),
        first: None,
        best: None,
        nodes: 0,
        max_nodes: opts.max_nodes,
        counts: vec![0; n],
        mark: vec![false; n],
        in_queue: vec![false; n],
    };
    let (mut p, starts) = Partition::from_colors(colors);
    let h = s.refine(&mut p, &starts);
    let mut path = Vec::new();
    let mut trace = vec![h];
    let flow = s.search(p, &mut path, &mut trace);
    let certified = !matches!(flow, Flow::Abort);

    for gen in &s.gens {
        if !g.is_automorphism(gen) {
            return Err(Error::Construction("search produced a non-automorphism".into()));
        }
    }
    // keep only generators that enlarge the group
    let mut kept: Vec<Permutation> = Vec::new();
    let mut chain = Bsgs::build(n, &[], &[]);
    for gen in s.gens {
        if !chain.contains(&gen) {
            kept.push(gen);
            chain = Bsgs::build(n, &kept, &[]);
        }
    }
    let canonical_labeling = if certified {
        let best = s.best.as_ref().unwrap();
        let mut images = vec![0usize; n];
        for (i, &v) in best.order.iter().enumerate() {
            images[v as usize] = i;
        }
        Some(Permutation::from_images(images)?)
    } else {
        None
    };
    Ok(AutResult {
        group: PermutationGroup::new(n, kept)?,
        certified,
        nodes: s.nodes,
        canonical_labeling,
    })
}

/// Automorphism group and canonical labeling.
pub fn automorphism_group(g: &Graph, opts: &SearchOptions) -> Result<AutResult> {
    automorphism_group_colored(g, &vec![0; g.order()], opts)
}

/// Canonically relabelled copy of `g`.
pub fn canonical_form(g: &Graph) -> Result<Graph> {
    let r = automorphism_group(g, &SearchOptions::default())?;
    r.canonical_graph(g)
        .ok_or_else(|| Error::BudgetExceeded("canonical labeling search did not finish".into()))
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool> {
    if g1.order() != g2.order() || g1.edge_count() != g2.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(g1)?.same_edges(&canonical_form(g2)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn aut_order(g: &Graph) -> BigUint {
        let r = automorphism_group(g, &SearchOptions::default()).unwrap();
        assert!(r.certified);
        assert!(g.is_preserved_by(&r.group));
        r.group.order()
    }

    #[test]
    fn small_automorphism_groups() {
        assert_eq!(aut_order(&Graph::cycle(5)), BigUint::from(10u32));
        assert_eq!(aut_order(&Graph::petersen()), BigUint::from(120u32));
        assert_eq!(aut_order(&Graph::complete(6)), BigUint::from(720u32));
        assert_eq!(aut_order(&Graph::empty(5)), BigUint::from(120u32));
        assert_eq!(aut_order(&Graph::complete_product(3, true)), BigUint::from(72u32));
        assert_eq!(aut_order(&Graph::complete_product(4, true)), BigUint::from(1152u32));
        assert_eq!(aut_order(&Graph::empty(1)), BigUint::from(1u32));
    }

    #[test]
    fn disjoint_cliques_wreath_product() {
        // 4 K_3: 6^4 * 24
        let g = Graph::from_fn(12, |u, v| u / 3 == v / 3);
        assert_eq!(aut_order(&g), BigUint::from(31104u32));
        assert_eq!(aut_order(&g.complement()), BigUint::from(31104u32));
    }

    #[test]
    fn canonical_forms_agree_on_relabelings() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for g in [Graph::petersen(), Graph::complete_product(4, true), Graph::cycle(9)] {
            let c = canonical_form(&g).unwrap();
            for _ in 0..5 {
                let mut images: Vec<usize> = (0..g.order()).collect();
                images.shuffle(&mut rng);
                let h = g.relabel(&Permutation::from_images(images).unwrap());
                assert!(canonical_form(&h).unwrap().same_edges(&c));
            }
        }
        assert!(!are_isomorphic(&Graph::cycle(6), &Graph::from_fn(6, |u, v| u / 3 == v / 3 && u != v)).unwrap());
    }

    #[test]
    fn colours_are_respected() {
        let g = Graph::cycle(6);
        let r = automorphism_group_colored(&g, &[1, 0, 0, 0, 0, 0], &SearchOptions::default()).unwrap();
        assert_eq!(r.group.order(), BigUint::from(2u32));
    }

    #[test]
    fn node_budget() {
        let g = Graph::empty(20);
        let r = automorphism_group(
            &g,
            &SearchOptions {
                max_nodes: 5,
                max_vertices: 300,
            },
        )
        .unwrap();
        assert!(!r.certified);
        assert!(r.canonical_labeling.is_none());
    }
}
