//! Affine semilinear groups `V : G0` acting on all vectors of `GF(q)^d`.

use crate::error::{Error, Result};
use crate::formspace::{vector_at, vector_index, Field, Matrix};

use super::{Permutation, PermutationGroup};

/// The map `v -> (v^(p^frobenius)) * matrix` on row vectors.
#[derive(Clone, Debug)]
pub struct SemilinearMap {
    pub matrix: Matrix,
    pub frobenius: u32,
}

impl SemilinearMap {
    pub fn linear(matrix: Matrix) -> Self {
        SemilinearMap { matrix, frobenius: 0 }
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let f = self.matrix.field();
        let tw: Vec<u32> = v.iter().map(|&x| f.frobenius_power(x, self.frobenius)).collect();
        self.matrix.apply(&tw)
    }
}

/// Translations by an additive basis of `GF(q)^dim` together with the given
/// semilinear maps, as permutations of the `q^dim` vectors in coordinate-lex order.
pub fn affine_group(field: &Field, dim: usize, maps: &[SemilinearMap]) -> Result<PermutationGroup> {
    let q = field.order();
    let n = q
        .checked_pow(dim as u32)
        .filter(|&n| n <= 1 << 20)
        .ok_or_else(|| Error::BudgetExceeded("affine space too large".into()))?;
    let vectors: Vec<Vec<u32>> = (0..n).map(|i| vector_at(q, dim, i)).collect();
    let p = field.spec().characteristic() as usize;
    let s = field.spec().degree();
    let mut gens = Vec::new();
    for coord in 0..dim {
        for j in 0..s {
            let mut t = vec![0u32; dim];
            t[coord] = p.pow(j) as u32;
            let images = vectors
                .iter()
                .map(|v| {
                    let w: Vec<u32> = v.iter().zip(&t).map(|(&a, &b)| field.add(a, b)).collect();
                    vector_index(q, &w)
                })
                .collect();
            gens.push(Permutation::from_images(images)?);
        }
    }
    for m in maps {
        if m.matrix.rows() != dim || !m.matrix.is_invertible() {
            return Err(Error::InvalidParameter("linear part is singular or of wrong size".into()));
        }
        let images = vectors.iter().map(|v| vector_index(q, &m.apply(v))).collect();
        gens.push(Permutation::from_images(images)?);
    }
    PermutationGroup::new(n, gens)
}
