//! PSU(3,3) acting on the 36 cosets of a subgroup of order 168.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::formspace::{isometry_group_on_points, HermitianForm};
use crate::graph::Graph;
use crate::permgrp::{coset_action, find_subgroup_of_order, orbital_report, OrbitalReport, PermutationGroup};

/// Default seed for the randomized steps.
pub const UNITARY36_SEED: u64 = 1;

#[derive(Clone, Debug)]
pub struct Unitary36 {
    /// PSU(3,3) on the 28 isotropic points of the Hermitian form on GF(9)^3.
    pub on_points: PermutationGroup,
    /// PSU(3,3) on 36 cosets.
    pub group: PermutationGroup,
    pub report: OrbitalReport,
    /// Union of the two paired orbitals of length 7.
    pub valency14: Graph,
    /// The self-paired orbital of length 21.
    pub valency21: Graph,
}

pub fn unitary36(seed: u64) -> Result<Unitary36> {
    let form = HermitianForm::new(3, 3)?.into();
    let expected = BigUint::from(6048u32);
    let (_, on_points) = isometry_group_on_points(&form, Some(&expected), seed, true, 60)?;
    let h = find_subgroup_of_order(&on_points, 168, seed, 5000)?;
    let action = coset_action(&on_points, &h, 1000)?;
    if action.degree != 36 {
        return Err(Error::Construction(format!("coset action of degree {}", action.degree)));
    }
    let group = action.group;
    let report = orbital_report(&group)?;
    let of_length = |len: usize| -> Vec<usize> {
        (1..report.orbitals.len())
            .filter(|&i| report.orbitals[i].suborbit.len() == len)
            .collect()
    };
    let (sevens, twentyone) = (of_length(7), of_length(21));
    if report.rank != 4 || sevens.len() != 2 || twentyone.len() != 1 {
        return Err(Error::Construction(format!(
            "unexpected subdegrees {:?}",
            report.subdegrees
        )));
    }
    let valency14 = Graph::from_orbitals(&group, &report, &sevens)?;
    let valency21 = Graph::from_orbitals(&group, &report, &twentyone)?;
    Ok(Unitary36 {
        on_points,
        group,
        report,
        valency14,
        valency21,
    })
}
