//! Minimal blocks and primitivity.

use serde::Serialize;

use crate::error::{Error, Result};

use super::{point_orbits, PermutationGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimitivityReport {
    pub primitive: bool,
    /// A nontrivial block system when imprimitive, blocks sorted by smallest point.
    pub blocks: Option<Vec<Vec<usize>>>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// The finest block system in which `0` and `b` share a block.
pub fn minimal_block(group: &PermutationGroup, b: usize) -> Vec<Vec<usize>> {
    let n = group.degree();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut queue = Vec::new();
    if b != 0 {
        parent[b] = 0;
        queue.push((0, b));
    }
    while let Some((x, y)) = queue.pop() {
        for g in group.generators() {
            let a = find(&mut parent, g.image(x));
            let c = find(&mut parent, g.image(y));
            if a != c {
                let (lo, hi) = if a < c { (a, c) } else { (c, a) };
                parent[hi] = lo;
                queue.push((lo, hi));
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        let r = find(&mut parent, x);
        classes[r].push(x);
    }
    classes.retain(|c| !c.is_empty());
    classes
}

/// Checks primitivity by computing the minimal block through `{0, b}` for one
/// `b` in each suborbit.
pub fn is_primitive(group: &PermutationGroup) -> Result<PrimitivityReport> {
    let n = group.degree();
    if n == 0 || !group.is_transitive() {
        return Err(Error::Intransitive);
    }
    if n <= 2 {
        return Ok(PrimitivityReport {
            primitive: true,
            blocks: None,
        });
    }
    let stab = group.stabilizer(0)?;
    for orb in point_orbits(n, stab.generators(), &[0]) {
        let system = minimal_block(group, orb[0]);
        if system.len() > 1 {
            return Ok(PrimitivityReport {
                primitive: false,
                blocks: Some(system),
            });
        }
    }
    Ok(PrimitivityReport {
        primitive: true,
        blocks: None,
    })
}
