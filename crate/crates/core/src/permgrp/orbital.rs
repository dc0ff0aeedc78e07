//! Orbitals, suborbits and rank of a transitive group.

use serde::Serialize;

use crate::error::{Error, Result};

use super::{point_orbits, PermutationGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbital {
    /// Representative ordered pair `(0, v)`.
    pub rep: [usize; 2],
    /// Number of ordered pairs.
    pub size: usize,
    pub self_paired: bool,
    pub paired_with: usize,
    /// The suborbit `{v : (0, v) in this orbital}`.
    #[serde(skip)]
    pub suborbit: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitalReport {
    pub rank: usize,
    pub subdegrees: Vec<usize>,
    /// Ordered by the smallest point of the suborbit; index 0 is the diagonal.
    pub orbitals: Vec<Orbital>,
}

impl OrbitalReport {
    /// Indices of the nontrivial self-paired orbitals.
    pub fn self_paired_nontrivial(&self) -> Vec<usize> {
        (1..self.orbitals.len())
            .filter(|&i| self.orbitals[i].self_paired)
            .collect()
    }

    /// Index of the orbital containing `(0, v)`.
    pub fn orbital_of(&self, v: usize) -> Option<usize> {
        self.orbitals
            .iter()
            .position(|o| o.suborbit.binary_search(&v).is_ok())
    }
}

/// Suborbits of the stabilizer of 0 and the pairing of orbitals.
pub fn orbital_report(group: &PermutationGroup) -> Result<OrbitalReport> {
    let n = group.degree();
    if n == 0 || !group.is_transitive() {
        return Err(Error::Intransitive);
    }
    let stab = group.stabilizer(0)?;
    let suborbits = point_orbits(n, stab.generators(), &[]);
    let mut which = vec![0usize; n];
    for (i, orb) in suborbits.iter().enumerate() {
        for &x in orb {
            which[x] = i;
        }
    }
    let trans = group.orbit_transversal(0);
    let orbitals = suborbits
        .iter()
        .enumerate()
        .map(|(i, orb)| {
            let v = orb[0];
            // (v, 0) mapped back to (0, w) by an element sending v to 0
            let back = trans[v].as_ref().unwrap().inverse();
            let paired = which[back.image(0)];
            Orbital {
                rep: [0, v],
                size: n * orb.len(),
                self_paired: paired == i,
                paired_with: paired,
                suborbit: orb.clone(),
            }
        })
        .collect::<Vec<_>>();
    let mut subdegrees: Vec<usize> = suborbits.iter().map(|o| o.len()).collect();
    subdegrees.sort_unstable();
    Ok(OrbitalReport {
        rank: orbitals.len(),
        subdegrees,
        orbitals,
    })
}
