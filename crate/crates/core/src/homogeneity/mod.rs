//! Subgraph censuses and the k-set-homogeneity / k-homogeneity deciders.
//!
//! Both deciders walk a [`TupleOrbitTree`]: a graph is (G,k)-homogeneous when
//! no two orbits on injective m-tuples (m <= k) carry the same position-wise
//! edge pattern, and (G,k)-set-homogeneous when no two orbits on m-subsets
//! induce isomorphic subgraphs.

mod structure;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    automorphism_group, pattern_mask, small_class, small_class_count, small_class_graph, to_graph6, Graph,
    SearchOptions, SrgParams, MAX_CLASS_ORDER,
};
use crate::permgrp::{orbit, OrbitSeed, PermutationGroup, TupleOrbitTree};

pub use structure::{
    edge_stabilizer_orbit_count, orbit_split_profile, rank_dichotomy_report, DichotomyCase, DichotomyReport,
    SplitProfile,
};

pub const DEFAULT_MAX_TREE_NODES: usize = 5_000_000;

#[derive(Clone, Copy, Debug)]
pub struct HomogeneityOptions {
    /// Limit on tuple-orbit tree nodes.
    pub max_tree_nodes: usize,
    /// Used when the automorphism group has to be computed.
    pub search: SearchOptions,
}

impl Default for HomogeneityOptions {
    fn default() -> Self {
        HomogeneityOptions {
            max_tree_nodes: DEFAULT_MAX_TREE_NODES,
            search: SearchOptions::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSource {
    Supplied,
    AutomorphismGroup,
}

/// The group a report refers to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub source: GroupSource,
    /// Decimal string, since orders can exceed 2^53.
    pub order: String,
    pub generators: usize,
}

/// `group` itself, or the certified automorphism group of `g` when absent.
pub fn resolve_group(
    g: &Graph,
    group: Option<&PermutationGroup>,
    search: &SearchOptions,
) -> Result<(PermutationGroup, GroupSource)> {
    match group {
        Some(h) => {
            ensure_automorphisms(g, h)?;
            Ok((h.clone(), GroupSource::Supplied))
        }
        None => {
            let r = automorphism_group(g, search)?;
            if !r.certified {
                return Err(Error::BudgetExceeded(format!(
                    "automorphism search stopped after {} nodes",
                    r.nodes
                )));
            }
            Ok((r.group, GroupSource::AutomorphismGroup))
        }
    }
}

fn summary(group: &PermutationGroup, source: GroupSource) -> GroupSummary {
    GroupSummary {
        source,
        order: group.order().to_string(),
        generators: group.generators().len(),
    }
}

/// Fails unless `group` acts on the vertices of `g` by automorphisms.
pub fn ensure_automorphisms(g: &Graph, group: &PermutationGroup) -> Result<()> {
    if group.degree() != g.order() {
        return Err(Error::DimensionMismatch {
            expected: g.order(),
            got: group.degree(),
        });
    }
    if let Some(i) = group.generators().iter().position(|p| !g.is_automorphism(p)) {
        return Err(Error::Precondition(format!("generator {i} is not an automorphism")));
    }
    Ok(())
}

fn check_order(m: usize) -> Result<()> {
    if m > MAX_CLASS_ORDER {
        return Err(Error::InvalidParameter(format!(
            "subgraph order {m} exceeds {MAX_CLASS_ORDER}"
        )));
    }
    Ok(())
}

/// Induced subgraphs of one isomorphism class and order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub order: usize,
    /// Class number, see [`crate::graph::small_class`].
    pub class: usize,
    /// graph6 of the canonical class representative.
    pub class_graph: String,
    pub count: u64,
    pub representative: Vec<usize>,
    /// Number of orbits of the group on subsets in this class.
    pub orbits: usize,
}

fn census_from_tree(g: &Graph, tree: &TupleOrbitTree, m: usize) -> Vec<CensusEntry> {
    let mut by_class: BTreeMap<usize, CensusEntry> = BTreeMap::new();
    for so in tree.set_orbits(m) {
        let class = small_class(m, pattern_mask(g, &so.rep));
        let e = by_class.entry(class).or_insert_with(|| CensusEntry {
            order: m,
            class,
            class_graph: to_graph6(&small_class_graph(m, class)),
            count: 0,
            representative: so.rep.clone(),
            orbits: 0,
        });
        e.count += so.size;
        e.orbits += 1;
    }
    by_class.into_values().collect()
}

/// Census of the induced subgraphs of order `m` with orbit counts under `group`;
/// nonempty classes only, by class number.
pub fn subgraph_census(
    g: &Graph,
    group: &PermutationGroup,
    m: usize,
    opts: &HomogeneityOptions,
) -> Result<Vec<CensusEntry>> {
    check_order(m)?;
    ensure_automorphisms(g, group)?;
    if m > g.order() {
        return Ok(Vec::new());
    }
    let tree = TupleOrbitTree::build(group, m, opts.max_tree_nodes)?;
    Ok(census_from_tree(g, &tree, m))
}

/// Number of `m`-subsets in each class, indexed by class, by enumerating every
/// subset. Fails when there are more than `max_subsets`.
pub fn census_counts_exhaustive(g: &Graph, m: usize, max_subsets: u64) -> Result<Vec<u64>> {
    check_order(m)?;
    let n = g.order();
    let total = binomial(n as u64, m as u64);
    if total > max_subsets as u128 {
        return Err(Error::BudgetExceeded(format!("{total} subsets of order {m}")));
    }
    let mut counts = vec![0u64; small_class_count(m)];
    let mut idx: Vec<usize> = (0..m).collect();
    if m > n {
        return Ok(counts);
    }
    loop {
        counts[small_class(m, pattern_mask(g, &idx))] += 1;
        // next combination
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(counts);
            }
            i -= 1;
            if idx[i] < n - m + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Numbers of order-3 induced subgraphs of a strongly regular graph:
/// `K_1 + K_2`, paths `P_3`, triangles and 3-cocliques, in that order.
pub fn omega_counts(p: &SrgParams) -> Result<[u64; 4]> {
    let w = crate::srgmath::omega_values(p)?;
    let mut out = [0u64; 4];
    for (o, x) in out.iter_mut().zip(w) {
        *o = u64::try_from(x).map_err(|_| Error::InvalidParameter(format!("count {x} exceeds 64 bits")))?;
    }
    Ok(out)
}

/// Position of an order-3 class in the [`omega_counts`] tuple.
pub fn omega_index(class: usize) -> usize {
    // classes of order 3: 0 coclique, 1 edge plus vertex, 2 path, 3 triangle
    [3, 0, 1, 2][class]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    SetHomogeneous,
    Homogeneous,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "set" | "set_homogeneous" => Ok(Mode::SetHomogeneous),
            "full" | "homogeneous" => Ok(Mode::Homogeneous),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

/// Two vertex sequences of the same order in different orbits: subsets
/// inducing isomorphic subgraphs, or tuples with the same edge pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub order: usize,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomogeneityReport {
    pub k: usize,
    pub mode: Mode,
    pub verdict: bool,
    pub group: GroupSummary,
    /// Orbit count for each checked order 1, 2, ...
    pub orbits: Vec<usize>,
    pub witness: Option<Witness>,
}

fn decide(
    g: &Graph,
    group: Option<&PermutationGroup>,
    k: usize,
    mode: Mode,
    opts: &HomogeneityOptions,
) -> Result<HomogeneityReport> {
    check_order(k)?;
    let (group, source) = resolve_group(g, group, &opts.search)?;
    let depth = k.min(g.order());
    let tree = TupleOrbitTree::build(&group, depth, opts.max_tree_nodes)?;
    let mut orbits = Vec::new();
    let mut witness = None;
    'orders: for m in 1..=depth {
        match mode {
            Mode::SetHomogeneous => {
                let sets = tree.set_orbits(m);
                orbits.push(sets.len());
                let mut seen: BTreeMap<usize, &Vec<usize>> = BTreeMap::new();
                for so in &sets {
                    let class = small_class(m, pattern_mask(g, &so.rep));
                    if let Some(first) = seen.insert(class, &so.rep) {
                        witness = Some(Witness {
                            order: m,
                            first: first.clone(),
                            second: so.rep.clone(),
                        });
                        break 'orders;
                    }
                }
            }
            Mode::Homogeneous => {
                let level = tree.level(m);
                orbits.push(level.len());
                let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
                for &id in level {
                    let t = &tree.node(id).tuple;
                    if let Some(first) = seen.insert(pattern_mask(g, t), id) {
                        witness = Some(Witness {
                            order: m,
                            first: tree.node(first).tuple.clone(),
                            second: t.clone(),
                        });
                        break 'orders;
                    }
                }
            }
        }
    }
    Ok(HomogeneityReport {
        k,
        mode,
        verdict: witness.is_none(),
        group: summary(&group, source),
        orbits,
        witness,
    })
}

/// Whether isomorphic induced subgraphs of order at most `k` (<= 5) are
/// equivalent under `group` (the automorphism group when `None`).
pub fn is_k_set_homogeneous(
    g: &Graph,
    group: Option<&PermutationGroup>,
    k: usize,
    opts: &HomogeneityOptions,
) -> Result<HomogeneityReport> {
    decide(g, group, k, Mode::SetHomogeneous, opts)
}

/// Whether every isomorphism between induced subgraphs of order at most `k`
/// (<= 5) extends to an element of `group` (the automorphism group when `None`).
pub fn is_k_homogeneous(
    g: &Graph,
    group: Option<&PermutationGroup>,
    k: usize,
    opts: &HomogeneityOptions,
) -> Result<HomogeneityReport> {
    decide(g, group, k, Mode::Homogeneous, opts)
}

/// Re-checks a witness by breadth-first orbit enumeration, independently of
/// the tuple-orbit tree: the two sequences must match (same induced class, or
/// same edge pattern) and lie in different orbits.
pub fn check_witness(g: &Graph, group: &PermutationGroup, mode: Mode, w: &Witness, max_orbit: usize) -> Result<bool> {
    let m = w.order;
    if w.first.len() != m || w.second.len() != m {
        return Ok(false);
    }
    let (a, b) = (pattern_mask(g, &w.first), pattern_mask(g, &w.second));
    let (seed, target) = match mode {
        Mode::SetHomogeneous => {
            if small_class(m, a) != small_class(m, b) {
                return Ok(false);
            }
            let mut t = w.second.clone();
            t.sort_unstable();
            (OrbitSeed::subset(&w.first), t)
        }
        Mode::Homogeneous => {
            if a != b {
                return Ok(false);
            }
            (OrbitSeed::tuple(&w.first), w.second.clone())
        }
    };
    let orb = orbit(group, &seed, max_orbit)?;
    Ok(orb.binary_search(&target).is_err())
}
