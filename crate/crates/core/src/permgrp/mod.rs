//! Permutation groups given by generators.
//!
//! Order and membership come from a lazily built stabilizer chain
//! ([`Bsgs`]); everything else (orbits on points and on derived domains,
//! orbitals, blocks, coset actions, subgroup search, tuple-orbit trees) is
//! layered on top.

mod action;
mod affine;
mod blocks;
mod bsgs;
mod coset;
mod orbital;
mod perm;
mod subgroup;
mod tuples;

use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use action::{orbit, Action, OrbitSeed};
pub use affine::{affine_group, SemilinearMap};
pub use blocks::{is_primitive, minimal_block, PrimitivityReport};
pub use bsgs::{Bsgs, Level};
pub use coset::{coset_action, CosetAction, DEFAULT_COSET_BUDGET};
pub use orbital::{orbital_report, Orbital, OrbitalReport};
pub use perm::Permutation;
pub use subgroup::{element_order_census, find_subgroup_of_order};
pub use tuples::{SetOrbit, TupleNode, TupleOrbitTree};
pub(crate) use tuples::permutations as tuples_permutations;

/// A permutation group on `0..degree` given by generators.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    bsgs: OnceLock<Bsgs>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DimensionMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermutationGroup {
            degree,
            generators,
            bsgs: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            generators: Vec::new(),
            bsgs: OnceLock::new(),
        }
    }

    /// The full symmetric group.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            let cyc: Vec<usize> = (0..degree).collect();
            gens.push(Permutation::from_cycles(degree, &[&[0, 1]]).unwrap());
            gens.push(Permutation::from_cycles(degree, &[&cyc]).unwrap());
        }
        PermutationGroup::new(degree, gens).unwrap()
    }

    /// The cyclic group generated by `(0 1 ... n-1)`.
    pub fn cyclic(degree: usize) -> Self {
        let cyc: Vec<usize> = (0..degree).collect();
        let gens = if degree >= 2 {
            vec![Permutation::from_cycles(degree, &[&cyc]).unwrap()]
        } else {
            Vec::new()
        };
        PermutationGroup::new(degree, gens).unwrap()
    }

    /// The dihedral group of order `2n` acting on the `n`-gon.
    pub fn dihedral(degree: usize) -> Self {
        let mut gens = Self::cyclic(degree).generators;
        if degree >= 3 {
            let refl: Vec<usize> = (0..degree).map(|i| (degree - i) % degree).collect();
            gens.push(Permutation::from_images(refl).unwrap());
        }
        PermutationGroup::new(degree, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// The stabilizer chain, built once on first use.
    pub fn bsgs(&self) -> &Bsgs {
        self.bsgs
            .get_or_init(|| Bsgs::build(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> BigUint {
        self.bsgs().order()
    }

    /// Order as `u128`; panics on overflow.
    pub fn order_u128(&self) -> u128 {
        let digits = self.order().to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0] as u128,
            2 => digits[0] as u128 | (digits[1] as u128) << 64,
            _ => panic!("group order exceeds u128"),
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.bsgs().contains(g)
    }

    /// Orbits on points, each sorted, listed by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        point_orbits(self.degree, &self.generators, &[])
    }

    pub fn point_orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut out = vec![x];
        seen[x] = true;
        let mut head = 0;
        while head < out.len() {
            let y = out[head];
            head += 1;
            for g in &self.generators {
                let z = g.image(y);
                if !seen[z] {
                    seen[z] = true;
                    out.push(z);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// For every `y` in the orbit of `x`, an element mapping `x` to `y`.
    pub fn orbit_transversal(&self, x: usize) -> Vec<Option<Permutation>> {
        let mut trans: Vec<Option<Permutation>> = vec![None; self.degree];
        trans[x] = Some(Permutation::identity(self.degree));
        let mut queue = vec![x];
        let mut head = 0;
        while head < queue.len() {
            let y = queue[head];
            head += 1;
            for g in &self.generators {
                let z = g.image(y);
                if trans[z].is_none() {
                    trans[z] = Some(trans[y].as_ref().unwrap().then(g));
                    queue.push(z);
                }
            }
        }
        trans
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.point_orbit(0).len() == self.degree
    }

    /// Point stabilizer from a stabilizer chain whose base starts at `point`.
    pub fn stabilizer(&self, point: usize) -> Result<PermutationGroup> {
        if point >= self.degree {
            return Err(Error::InvalidParameter(format!("point {point} out of range")));
        }
        let chain = Bsgs::build(self.degree, &self.generators, &[point]);
        let group = PermutationGroup::new(self.degree, chain.stabilizer_gens(1))?;
        Ok(group)
    }

    /// Pointwise stabilizer of a sequence of points.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermutationGroup {
        let chain = Bsgs::build(self.degree, &self.generators, points);
        PermutationGroup::new(self.degree, chain.stabilizer_gens(points.len())).unwrap()
    }

    /// Seeded product-replacement generator of pseudo-random elements.
    pub fn random_elements(&self, seed: u64) -> RandomElements {
        RandomElements::new(self, seed)
    }

    /// Checks that every generator is a member of `self` (subgroup test for `other`).
    pub fn contains_group(&self, other: &PermutationGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Generator file schema: `{ "degree": n, "generators": [[images...], ...] }`.
    pub fn to_generator_file(&self) -> GeneratorFile {
        GeneratorFile {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.images_usize()).collect(),
        }
    }

    pub fn from_generator_file(file: &GeneratorFile) -> Result<Self> {
        let gens = file
            .generators
            .iter()
            .map(|imgs| {
                if imgs.len() != file.degree {
                    Err(Error::DimensionMismatch {
                        expected: file.degree,
                        got: imgs.len(),
                    })
                } else {
                    Permutation::from_images(imgs.clone())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        PermutationGroup::new(file.degree, gens)
    }
}

/// JSON generator file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

/// Orbits of `gens` on points outside `fixed`; each orbit sorted, ordered by minimum.
pub(crate) fn point_orbits(n: usize, gens: &[Permutation], fixed: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    for &f in fixed {
        seen[f] = true;
    }
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orb = vec![start];
        let mut head = 0;
        while head < orb.len() {
            let y = orb[head];
            head += 1;
            for g in gens {
                let z = g.image(y);
                if !seen[z] {
                    seen[z] = true;
                    orb.push(z);
                }
            }
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}

/// Product-replacement random element generator.
pub struct RandomElements {
    state: Vec<Permutation>,
    acc: Permutation,
    rng: ChaCha8Rng,
}

impl RandomElements {
    fn new(group: &PermutationGroup, seed: u64) -> Self {
        let n = group.degree;
        let mut state: Vec<Permutation> = group.generators.clone();
        if state.is_empty() {
            state.push(Permutation::identity(n));
        }
        let base = state.clone();
        while state.len() < 10 {
            state.push(base[state.len() % base.len()].clone());
        }
        let mut it = RandomElements {
            state,
            acc: Permutation::identity(n),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..50 {
            it.step();
        }
        it
    }

    fn step(&mut self) -> Permutation {
        let k = self.state.len();
        let i = self.rng.gen_range(0..k);
        let mut j = self.rng.gen_range(0..k - 1);
        if j >= i {
            j += 1;
        }
        let (a, b) = (self.state[i].clone(), &self.state[j]);
        self.state[i] = if self.rng.gen_bool(0.5) {
            a.then(b)
        } else {
            a.then(&b.inverse())
        };
        self.acc = self.acc.then(&self.state[i]);
        self.acc.clone()
    }
}

impl Iterator for RandomElements {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        Some(self.step())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_group_orders() {
        assert_eq!(PermutationGroup::cyclic(5).order(), BigUint::from(5u32));
        assert_eq!(PermutationGroup::dihedral(5).order(), BigUint::from(10u32));
        assert_eq!(PermutationGroup::symmetric(4).order(), BigUint::from(24u32));
        assert_eq!(PermutationGroup::trivial(3).order(), BigUint::from(1u32));
    }

    #[test]
    fn stabilizer_orbit_product() {
        let g = PermutationGroup::symmetric(4);
        let st = g.stabilizer(0).unwrap();
        assert_eq!(st.order(), BigUint::from(6u32));
        for x in 0..4 {
            let st = g.stabilizer(x).unwrap();
            assert_eq!(
                st.order() * BigUint::from(g.point_orbit(x).len()),
                g.order()
            );
        }
    }

    #[test]
    fn random_elements_are_members() {
        let g = PermutationGroup::dihedral(7);
        for h in g.random_elements(3).take(20) {
            assert!(g.contains(&h));
        }
    }

    #[test]
    fn generator_file_round_trip() {
        let g = PermutationGroup::dihedral(6);
        let f = g.to_generator_file();
        let json = serde_json::to_string(&f).unwrap();
        let back: GeneratorFile = serde_json::from_str(&json).unwrap();
        let h = PermutationGroup::from_generator_file(&back).unwrap();
        assert_eq!(h.order(), g.order());
        let bad = GeneratorFile {
            degree: 3,
            generators: vec![vec![0, 1]],
        };
        assert!(PermutationGroup::from_generator_file(&bad).is_err());
    }
}
