//! Orbits on injective tuples via a tree of point stabilizers.
//!
//! A node at depth `m` is the orbit of one injective `m`-tuple; its children are
//! the orbits of the tuple's pointwise stabilizer on the remaining points. Each
//! internal node keeps a Schreier forest for those orbits, which lets
//! [`TupleOrbitTree::locate`] map any tuple to its orbit representative.

use crate::error::{Error, Result};

use super::{point_orbits, Bsgs, Permutation, PermutationGroup};

const NONE: u32 = u32::MAX;

/// Orbits of a point stabilizer with one Schreier tree per orbit.
#[derive(Clone, Debug)]
struct Schreier {
    /// Orbit number of each point, `NONE` for points of the tuple.
    orbit_id: Vec<u32>,
    /// Index of the generator whose inverse moves a point one step towards its
    /// orbit representative; `NONE` at representatives.
    label: Vec<u32>,
    inverses: Vec<Permutation>,
}

#[derive(Clone, Debug)]
pub struct TupleNode {
    /// Orbit representative; each entry is the smallest point of its orbit
    /// under the stabilizer of the preceding entries.
    pub tuple: Vec<usize>,
    pub parent: Option<usize>,
    /// Number of tuples in the orbit.
    pub orbit_size: u64,
    /// Child node per orbit of the stabilizer (empty at maximal depth).
    pub children: Vec<usize>,
    schreier: Option<Schreier>,
}

#[derive(Clone, Debug)]
pub struct TupleOrbitTree {
    degree: usize,
    depth: usize,
    nodes: Vec<TupleNode>,
    levels: Vec<Vec<usize>>,
}

/// One orbit on `m`-subsets, made of the tuple orbits whose entries it reorders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetOrbit {
    pub nodes: Vec<usize>,
    /// Sorted representative subset.
    pub rep: Vec<usize>,
    pub size: u64,
}

impl TupleOrbitTree {
    /// Builds the tree down to `depth`; fails once more than `max_nodes` nodes exist.
    pub fn build(group: &PermutationGroup, depth: usize, max_nodes: usize) -> Result<Self> {
        let n = group.degree();
        if depth > n {
            return Err(Error::InvalidParameter(format!(
                "tuple length {depth} exceeds degree {n}"
            )));
        }
        let mut tree = TupleOrbitTree {
            degree: n,
            depth,
            nodes: vec![TupleNode {
                tuple: Vec::new(),
                parent: None,
                orbit_size: 1,
                children: Vec::new(),
                schreier: None,
            }],
            levels: vec![vec![0]],
        };
        let mut frontier: Vec<(usize, Vec<Permutation>)> = vec![(0, group.generators().to_vec())];
        for d in 0..depth {
            let last = d + 1 == depth;
            let mut next = Vec::new();
            for (id, gens) in frontier {
                let tuple = tree.nodes[id].tuple.clone();
                let orbits = point_orbits(n, &gens, &tuple);
                let schreier = schreier_forest(n, &gens, &orbits);
                for orb in &orbits {
                    let rep = orb[0];
                    let stab = if last {
                        Vec::new()
                    } else {
                        Bsgs::build(n, &gens, &[rep]).stabilizer_gens(1)
                    };
                    let mut child_tuple = tuple.clone();
                    child_tuple.push(rep);
                    let child = tree.nodes.len();
                    if child >= max_nodes {
                        return Err(Error::BudgetExceeded(format!(
                            "tuple-orbit tree exceeds {max_nodes} nodes"
                        )));
                    }
                    tree.nodes.push(TupleNode {
                        tuple: child_tuple,
                        parent: Some(id),
                        orbit_size: tree.nodes[id].orbit_size * orb.len() as u64,
                        children: Vec::new(),
                        schreier: None,
                    });
                    tree.nodes[id].children.push(child);
                    next.push((child, stab));
                }
                tree.nodes[id].schreier = Some(schreier);
            }
            tree.levels.push(next.iter().map(|(id, _)| *id).collect());
            frontier = next;
        }
        Ok(tree)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn node(&self, id: usize) -> &TupleNode {
        &self.nodes[id]
    }

    /// Node ids at depth `m`, i.e. the orbits on injective `m`-tuples.
    pub fn level(&self, m: usize) -> &[usize] {
        &self.levels[m]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The node of the orbit containing an injective tuple of length at most `depth`.
    pub fn locate(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() > self.depth {
            return Err(Error::InvalidParameter("tuple longer than tree depth".into()));
        }
        let mut t: Vec<usize> = tuple.to_vec();
        let mut seen = vec![false; self.degree];
        for &x in &t {
            if x >= self.degree || seen[x] {
                return Err(Error::InvalidParameter("tuple is not injective".into()));
            }
            seen[x] = true;
        }
        let mut id = 0;
        for d in 0..t.len() {
            let sch = self.nodes[id].schreier.as_ref().unwrap();
            let o = sch.orbit_id[t[d]];
            debug_assert_ne!(o, NONE);
            loop {
                let s = sch.label[t[d]];
                if s == NONE {
                    break;
                }
                let inv = &sch.inverses[s as usize];
                for x in t[d..].iter_mut() {
                    *x = inv.image(*x);
                }
            }
            id = self.nodes[id].children[o as usize];
        }
        Ok(id)
    }

    /// Orbits on `m`-subsets, obtained by merging tuple orbits that differ by a
    /// reordering. Ordered by their first tuple orbit.
    pub fn set_orbits(&self, m: usize) -> Vec<SetOrbit> {
        let ids = &self.levels[m];
        let pos: std::collections::HashMap<usize, usize> =
            ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let perms = permutations(m);
        for (i, &id) in ids.iter().enumerate() {
            let t = &self.nodes[id].tuple;
            for sigma in &perms[1..] {
                let u: Vec<usize> = sigma.iter().map(|&j| t[j]).collect();
                let j = pos[&self.locate(&u).unwrap()];
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); ids.len()];
        for i in 0..ids.len() {
            let r = find(&mut parent, i);
            groups[r].push(ids[i]);
        }
        let fact: u64 = (1..=m as u64).product();
        groups
            .into_iter()
            .filter(|g| !g.is_empty())
            .map(|nodes| {
                let mut rep = self.nodes[nodes[0]].tuple.clone();
                rep.sort_unstable();
                let size = nodes.iter().map(|&id| self.nodes[id].orbit_size).sum::<u64>() / fact;
                SetOrbit { nodes, rep, size }
            })
            .collect()
    }
}

fn schreier_forest(n: usize, gens: &[Permutation], orbits: &[Vec<usize>]) -> Schreier {
    let mut orbit_id = vec![NONE; n];
    let mut label = vec![NONE; n];
    for (oi, orb) in orbits.iter().enumerate() {
        let rep = orb[0];
        orbit_id[rep] = oi as u32;
        let mut queue = vec![rep];
        let mut head = 0;
        while head < queue.len() {
            let y = queue[head];
            head += 1;
            for (gi, g) in gens.iter().enumerate() {
                let z = g.image(y);
                if orbit_id[z] == NONE {
                    orbit_id[z] = oi as u32;
                    label[z] = gi as u32;
                    queue.push(z);
                }
            }
        }
    }
    Schreier {
        orbit_id,
        label,
        inverses: gens.iter().map(|g| g.inverse()).collect(),
    }
}

/// All permutations of `0..m`, identity first.
pub(crate) fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::{orbit, OrbitSeed};

    #[test]
    fn symmetric_group_is_transitive_on_tuples() {
        let g = PermutationGroup::symmetric(6);
        let tree = TupleOrbitTree::build(&g, 4, 1000).unwrap();
        for m in 0..=4 {
            assert_eq!(tree.level(m).len(), 1);
        }
        assert_eq!(tree.node(tree.level(4)[0]).orbit_size, 360);
        assert_eq!(tree.set_orbits(3).len(), 1);
        assert_eq!(tree.set_orbits(3)[0].size, 20);
    }

    #[test]
    fn tuple_orbits_match_breadth_first_orbits() {
        let g = PermutationGroup::dihedral(7);
        let tree = TupleOrbitTree::build(&g, 3, 10_000).unwrap();
        let total: u64 = tree.level(3).iter().map(|&id| tree.node(id).orbit_size).sum();
        assert_eq!(total, 7 * 6 * 5);
        for &id in tree.level(3) {
            let node = tree.node(id);
            let orb = orbit(&g, &OrbitSeed::tuple(&node.tuple), 10_000).unwrap();
            assert_eq!(orb.len() as u64, node.orbit_size);
            for t in &orb {
                assert_eq!(tree.locate(t).unwrap(), id);
            }
        }
        let sets = tree.set_orbits(3);
        assert_eq!(sets.iter().map(|s| s.size).sum::<u64>(), 35);
        for s in &sets {
            let orb = orbit(&g, &OrbitSeed::subset(&s.rep), 10_000).unwrap();
            assert_eq!(orb.len() as u64, s.size);
        }
    }

    #[test]
    fn node_budget() {
        let g = PermutationGroup::trivial(10);
        assert!(TupleOrbitTree::build(&g, 3, 100).is_err());
    }

    #[test]
    fn permutation_list() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
    }
}
