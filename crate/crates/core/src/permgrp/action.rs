//! Breadth-first orbits on points, ordered pairs, subsets and tuples.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::PermutationGroup;

/// Induced action on a derived domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Natural,
    OnPairs,
    OnSubsets,
    OnTuples,
}

/// A seed for [`orbit`]: a point, an ordered pair, a subset or a tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSeed {
    pub points: Vec<usize>,
    pub action: Action,
}

impl OrbitSeed {
    pub fn point(x: usize) -> Self {
        OrbitSeed {
            points: vec![x],
            action: Action::Natural,
        }
    }

    pub fn pair(x: usize, y: usize) -> Self {
        OrbitSeed {
            points: vec![x, y],
            action: Action::OnPairs,
        }
    }

    pub fn subset(points: &[usize]) -> Self {
        let mut points = points.to_vec();
        points.sort_unstable();
        OrbitSeed {
            points,
            action: Action::OnSubsets,
        }
    }

    pub fn tuple(points: &[usize]) -> Self {
        OrbitSeed {
            points: points.to_vec(),
            action: Action::OnTuples,
        }
    }
}

/// Keys are packed into a `u128` whenever the tuple fits.
enum Seen {
    Packed { bits: u32, set: HashSet<u128> },
    Wide(HashSet<Vec<u32>>),
}

impl Seen {
    fn new(n: usize, m: usize) -> Self {
        let bits = usize::BITS - n.max(1).leading_zeros();
        if bits as usize * m <= 128 {
            Seen::Packed {
                bits,
                set: HashSet::new(),
            }
        } else {
            Seen::Wide(HashSet::new())
        }
    }

    fn insert(&mut self, t: &[u32]) -> bool {
        match self {
            Seen::Packed { bits, set } => {
                let key = t.iter().fold(0u128, |acc, &x| (acc << *bits) | x as u128);
                set.insert(key)
            }
            Seen::Wide(set) => set.insert(t.to_vec()),
        }
    }
}

/// Complete orbit of `seed` under the generators, sorted.
///
/// Fails with [`Error::BudgetExceeded`] (reporting the partial size) once more
/// than `max_size` elements have been found.
pub fn orbit(group: &PermutationGroup, seed: &OrbitSeed, max_size: usize) -> Result<Vec<Vec<usize>>> {
    let n = group.degree();
    let m = seed.points.len();
    let expected = match seed.action {
        Action::Natural => Some(1),
        Action::OnPairs => Some(2),
        _ => None,
    };
    if expected.is_some_and(|e| e != m) || m == 0 {
        return Err(Error::InvalidParameter(format!(
            "seed of length {m} does not fit action {:?}",
            seed.action
        )));
    }
    if seed.points.iter().any(|&x| x >= n) {
        return Err(Error::InvalidParameter("seed point out of range".into()));
    }
    let canon = |t: &mut Vec<u32>| {
        if seed.action == Action::OnSubsets {
            t.sort_unstable();
        }
    };
    let mut start: Vec<u32> = seed.points.iter().map(|&x| x as u32).collect();
    canon(&mut start);
    if seed.action == Action::OnSubsets && start.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("subset seed has repeated points".into()));
    }
    let mut seen = Seen::new(n, m);
    seen.insert(&start);
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let t = queue[head].clone();
        head += 1;
        for g in group.generators() {
            let mut img: Vec<u32> = t.iter().map(|&x| g.images()[x as usize]).collect();
            canon(&mut img);
            if seen.insert(&img) {
                if queue.len() >= max_size {
                    return Err(Error::BudgetExceeded(format!(
                        "orbit exceeds {max_size} elements (partial size {})",
                        queue.len()
                    )));
                }
                queue.push(img);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = queue
        .into_iter()
        .map(|t| t.into_iter().map(|x| x as usize).collect())
        .collect();
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations_of_pentagon_on_edges() {
        let g = PermutationGroup::cyclic(5);
        let orb = orbit(&g, &OrbitSeed::subset(&[0, 1]), 1000).unwrap();
        assert_eq!(orb.len(), 5);
        let orb = orbit(&g, &OrbitSeed::pair(0, 1), 1000).unwrap();
        assert_eq!(orb.len(), 5);
        let orb = orbit(&g, &OrbitSeed::point(3), 1000).unwrap();
        assert_eq!(orb.len(), 5);
    }

    #[test]
    fn budget_is_enforced() {
        let g = PermutationGroup::symmetric(8);
        let err = orbit(&g, &OrbitSeed::tuple(&[0, 1, 2]), 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded(_)));
        assert_eq!(orbit(&g, &OrbitSeed::tuple(&[0, 1, 2]), 1000).unwrap().len(), 336);
    }

    #[test]
    fn bad_seeds() {
        let g = PermutationGroup::cyclic(4);
        assert!(orbit(&g, &OrbitSeed::subset(&[1, 1]), 10).is_err());
        assert!(orbit(&g, &OrbitSeed::point(9), 10).is_err());
    }
}
