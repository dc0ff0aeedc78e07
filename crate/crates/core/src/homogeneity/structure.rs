//! Orbital structure of 2- and 3-set-homogeneous actions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{pattern_mask, small_class, small_class_graph, Graph};
use crate::permgrp::{orbital_report, PermutationGroup, TupleOrbitTree};

use super::{is_k_set_homogeneous, resolve_group, summary, GroupSummary, HomogeneityOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DichotomyCase {
    /// Rank 2: complete or empty graph.
    Rank2,
    /// Rank 3.
    Rank3,
    /// Rank 4 with exactly one nontrivial self-paired orbital.
    Rank4OneSelfPaired,
    /// Rank 5 with no nontrivial self-paired orbital.
    Rank5NoneSelfPaired,
}

impl DichotomyCase {
    /// Case number 1 to 4.
    pub fn number(self) -> u8 {
        match self {
            DichotomyCase::Rank2 => 1,
            DichotomyCase::Rank3 => 2,
            DichotomyCase::Rank4OneSelfPaired => 3,
            DichotomyCase::Rank5NoneSelfPaired => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DichotomyReport {
    pub case: DichotomyCase,
    pub rank: usize,
    pub subdegrees: Vec<usize>,
    pub self_paired_nontrivial: usize,
    pub group: GroupSummary,
}

/// Which of the four rank configurations a transitive group acting
/// 2-set-homogeneously on `g` falls into.
pub fn rank_dichotomy_report(
    g: &Graph,
    group: Option<&PermutationGroup>,
    opts: &HomogeneityOptions,
) -> Result<DichotomyReport> {
    let (group, source) = resolve_group(g, group, &opts.search)?;
    if !is_k_set_homogeneous(g, Some(&group), 2, opts)?.verdict {
        return Err(Error::Precondition("the action is not 2-set-homogeneous".into()));
    }
    if !group.is_transitive() {
        return Err(Error::Intransitive);
    }
    let report = orbital_report(&group)?;
    let self_paired = report.self_paired_nontrivial().len();
    let case = match (report.rank, self_paired) {
        (2, _) => DichotomyCase::Rank2,
        (3, _) => DichotomyCase::Rank3,
        (4, 1) => DichotomyCase::Rank4OneSelfPaired,
        (5, 0) => DichotomyCase::Rank5NoneSelfPaired,
        (r, s) => {
            return Err(Error::Violation(format!(
                "rank {r} with {s} nontrivial self-paired orbitals"
            )))
        }
    };
    Ok(DichotomyReport {
        case,
        rank: report.rank,
        subdegrees: report.subdegrees,
        self_paired_nontrivial: self_paired,
        group: summary(&group, source),
    })
}

/// Orbits of an edge stabilizer on the common neighbours (`s` of them) and
/// on the remaining neighbours of the first end (`t`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitProfile {
    pub edge: (usize, usize),
    pub s: usize,
    pub s_sizes: Vec<usize>,
    pub t: usize,
    pub t_sizes: Vec<usize>,
}

fn orbits_on(group: &PermutationGroup, points: &[usize]) -> Vec<usize> {
    let mut sizes: Vec<usize> = group
        .orbits()
        .into_iter()
        .filter(|o| points.contains(&o[0]))
        .map(|o| o.len())
        .collect();
    sizes.sort_unstable();
    sizes
}

/// Fails unless every connected induced subgraph of order at most 3 forms a
/// single orbit under `group`.
fn ensure_connected_set_homogeneous(g: &Graph, group: &PermutationGroup, opts: &HomogeneityOptions) -> Result<()> {
    let depth = 3.min(g.order());
    let tree = TupleOrbitTree::build(group, depth, opts.max_tree_nodes)?;
    for m in 1..=depth {
        let mut seen = std::collections::BTreeSet::new();
        for so in tree.set_orbits(m) {
            let class = small_class(m, pattern_mask(g, &so.rep));
            if small_class_graph(m, class).is_connected() && !seen.insert(class) {
                return Err(Error::Precondition(format!(
                    "connected order-{m} subgraphs fall into several orbits"
                )));
            }
        }
    }
    Ok(())
}

/// The `(s, t)` profile of an edge for a connected-3-set-homogeneous action on
/// a non-complete graph with triangles. Checks that the `s` orbits have equal
/// size, `s` is 1, 2, 3 or 6 and `t` is 1 or 2.
pub fn orbit_split_profile(
    g: &Graph,
    group: Option<&PermutationGroup>,
    edge: (usize, usize),
    opts: &HomogeneityOptions,
) -> Result<SplitProfile> {
    let (group, _) = resolve_group(g, group, &opts.search)?;
    let (a, b) = edge;
    if a >= g.order() || b >= g.order() || !g.has_edge(a, b) {
        return Err(Error::InvalidParameter(format!("{a}-{b} is not an edge")));
    }
    if !g.has_triangle() {
        return Err(Error::Precondition("graph has no triangle".into()));
    }
    if g.edge_count() * 2 == g.order() * (g.order() - 1) {
        return Err(Error::Precondition("graph is complete".into()));
    }
    ensure_connected_set_homogeneous(g, &group, opts)?;
    let h = group.pointwise_stabilizer(&[a, b]);
    let common: Vec<usize> = (0..g.order()).filter(|&x| g.has_edge(a, x) && g.has_edge(b, x)).collect();
    let rest: Vec<usize> = g.neighbors(a).into_iter().filter(|&x| x != b && !g.has_edge(b, x)).collect();
    let s_sizes = orbits_on(&h, &common);
    let t_sizes = orbits_on(&h, &rest);
    let (s, t) = (s_sizes.len(), t_sizes.len());
    if ![1, 2, 3, 6].contains(&s) || s_sizes.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::Violation(format!("s = {s} with orbit sizes {s_sizes:?}")));
    }
    if t != 1 && t != 2 {
        return Err(Error::Violation(format!("t = {t}")));
    }
    Ok(SplitProfile {
        edge,
        s,
        s_sizes,
        t,
        t_sizes,
    })
}

/// Number of orbits of the stabilizer of `a` and `b` on the other vertices.
pub fn edge_stabilizer_orbit_count(group: &PermutationGroup, a: usize, b: usize) -> usize {
    group
        .pointwise_stabilizer(&[a, b])
        .orbits()
        .into_iter()
        .filter(|o| o[0] != a && o[0] != b)
        .count()
}
