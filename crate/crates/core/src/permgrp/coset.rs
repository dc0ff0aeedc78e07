//! Action on right cosets of a subgroup.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};

use super::{point_orbits, Permutation, PermutationGroup};

pub const DEFAULT_COSET_BUDGET: usize = 100_000;

#[derive(Clone, Debug)]
pub struct CosetAction {
    /// The image of the generators of `G` acting on cosets.
    pub group: PermutationGroup,
    pub degree: usize,
    /// Coset `i` is `H * representatives[i]`; coset 0 is `H`.
    pub representatives: Vec<Permutation>,
}

/// Action of `group` on the right cosets `Hg` of `H = <subgroup_gens>`.
pub fn coset_action(
    group: &PermutationGroup,
    subgroup_gens: &[Permutation],
    budget: usize,
) -> Result<CosetAction> {
    let n = group.degree();
    for h in subgroup_gens {
        if !group.contains(h) {
            return Err(Error::Precondition("subgroup generator is not in the group".into()));
        }
    }
    let h = PermutationGroup::new(n, subgroup_gens.to_vec())?;
    let index = group.order() / h.order();
    if index > BigUint::from(budget) {
        return Err(Error::BudgetExceeded(format!("coset action of degree {index}")));
    }
    let h_orbits = point_orbits(n, h.generators(), &[]);
    // Hc sends each H-orbit O onto O^c, so the minima of these images only depend on the coset.
    let key = |c: &Permutation| -> Vec<u32> {
        h_orbits
            .iter()
            .map(|o| o.iter().map(|&x| c.images()[x]).min().unwrap())
            .collect()
    };
    let mut reps = vec![Permutation::identity(n)];
    let mut buckets: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    buckets.insert(key(&reps[0]), vec![0]);
    let gens = group.generators();
    let mut images: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    let mut head = 0;
    while head < reps.len() {
        for (gi, g) in gens.iter().enumerate() {
            let c = reps[head].then(g);
            let k = key(&c);
            let bucket = buckets.entry(k).or_default();
            let found = bucket
                .iter()
                .copied()
                .find(|&j| h.contains(&c.then(&reps[j].inverse())));
            let j = match found {
                Some(j) => j,
                None => {
                    if reps.len() >= budget {
                        return Err(Error::BudgetExceeded(format!(
                            "more than {budget} cosets"
                        )));
                    }
                    bucket.push(reps.len());
                    reps.push(c);
                    reps.len() - 1
                }
            };
            images[gi].push(j);
        }
        head += 1;
    }
    let degree = reps.len();
    let perms = images
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>>>()?;
    Ok(CosetAction {
        group: PermutationGroup::new(degree, perms)?,
        degree,
        representatives: reps,
    })
}
