//! Randomized search for subgroups of a given order.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::{Permutation, PermutationGroup};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Generators of a subgroup of order exactly `m`, found by growing closures of
/// random elements whose orders divide `m`. Deterministic for a fixed seed.
///
/// A budget failure means "not found", not "does not exist".
pub fn find_subgroup_of_order(
    group: &PermutationGroup,
    m: u64,
    seed: u64,
    budget: usize,
) -> Result<Vec<Permutation>> {
    let order = group.order();
    let target = BigUint::from(m);
    if m == 0 || !(&order % &target).is_zero() {
        return Err(Error::Precondition(format!("{m} does not divide |G| = {order}")));
    }
    if m == 1 {
        return Ok(Vec::new());
    }
    let n = group.degree();
    let mut rng = group.random_elements(seed);
    let next_element = |rng: &mut super::RandomElements| -> Permutation {
        loop {
            let g = rng.next().unwrap();
            let o = g.order();
            let d = gcd(o, m);
            if d > 1 {
                return g.pow(o / d);
            }
        }
    };
    let mut tries = 0;
    while tries < budget {
        let mut gens = vec![next_element(&mut rng)];
        let mut current = BigUint::from(gens[0].order());
        // grow until the closure order reaches m or stops dividing it
        let mut stalls = 0;
        while tries < budget && stalls < 8 {
            tries += 1;
            let x = next_element(&mut rng);
            let mut cand = gens.clone();
            cand.push(x);
            let h = PermutationGroup::new(n, cand.clone())?;
            let o = h.order();
            if o == target {
                return Ok(cand);
            }
            if (&target % &o).is_zero() && o > current {
                gens = cand;
                current = o;
                stalls = 0;
            } else {
                stalls += 1;
            }
        }
        if current == target {
            return Ok(gens);
        }
    }
    Err(Error::BudgetExceeded(format!(
        "no subgroup of order {m} found in {budget} attempts"
    )))
}

/// Number of elements of each order, by enumerating the group through its
/// stabilizer chain. Fails if the group has more than `limit` elements.
pub fn element_order_census(group: &PermutationGroup, limit: u64) -> Result<BTreeMap<u64, u64>> {
    if group.order() > BigUint::from(limit) {
        return Err(Error::BudgetExceeded(format!("group of order {} too large", group.order())));
    }
    let chain = group.bsgs();
    let mut elements = vec![Permutation::identity(group.degree())];
    for level in chain.levels().iter().rev() {
        let mut next = Vec::with_capacity(elements.len() * level.orbit.len());
        for &b in &level.orbit {
            let u = level.transversal(b).unwrap();
            for e in &elements {
                next.push(e.then(u));
            }
        }
        elements = next;
    }
    let mut census = BTreeMap::new();
    for e in elements {
        *census.entry(e.order()).or_insert(0u64) += 1;
    }
    debug_assert!(BigUint::from(census.values().sum::<u64>()) == group.order() || group.order().is_one());
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_target() {
        let g = PermutationGroup::symmetric(5);
        assert!(find_subgroup_of_order(&g, 1, 0, 10).unwrap().is_empty());
        assert!(find_subgroup_of_order(&g, 7, 0, 10).is_err());
    }

    #[test]
    fn sylow_subgroup_of_s4() {
        let g = PermutationGroup::symmetric(4);
        let gens = find_subgroup_of_order(&g, 8, 3, 500).unwrap();
        let h = PermutationGroup::new(4, gens).unwrap();
        assert_eq!(h.order(), BigUint::from(8u32));
        let census = element_order_census(&h, 100).unwrap();
        // dihedral of order 8: 1 identity, 5 involutions, 2 of order 4
        assert_eq!(census.get(&2), Some(&5));
        assert_eq!(census.get(&4), Some(&2));
    }

    #[test]
    fn census_counts_all_elements() {
        let g = PermutationGroup::symmetric(5);
        let census = element_order_census(&g, 1000).unwrap();
        assert_eq!(census.values().sum::<u64>(), 120);
        assert_eq!(census.get(&6), Some(&20));
    }
}
