//! Rank 3 graphs of alternating and symmetric groups that are not Johnson graphs.

use crate::error::{Error, Result};
use crate::formspace::{standard_quadratic_form, vector_at, vector_index, FormType};
use crate::graph::Graph;

/// Kneser graph on the 2-subsets of `0..n`, adjacent when disjoint.
pub fn kneser_pairs(n: usize) -> Result<Graph> {
    Ok(super::johnson(n)?.complement())
}

/// Splittings of `0..n` into two halves, adjacent when one half of each meets
/// one half of the other in exactly one point. Halves are stored as the part
/// containing 0. `(35,16,6,8)` for `n = 8` and `(126,25,8,4)` for `n = 10`.
pub fn bisection_graph(n: usize) -> Result<Graph> {
    if n < 4 || n % 2 == 1 || n > 20 {
        return Err(Error::InvalidParameter(format!("bisections need even 4 <= n <= 20, got {n}")));
    }
    let halves: Vec<u32> = (0u32..1 << n)
        .filter(|&s| s & 1 == 1 && s.count_ones() as usize == n / 2)
        .collect();
    let g = Graph::from_fn(halves.len(), |x, y| {
        let m = (halves[x] & halves[y]).count_ones() as usize;
        m.min(n / 2 - m) == 1
    });
    let labels = halves
        .iter()
        .map(|&s| {
            let xs: Vec<String> = (0..n).filter(|i| s >> i & 1 == 1).map(|i| i.to_string()).collect();
            format!("{{{}}}", xs.join(","))
        })
        .collect();
    g.with_labels(labels)
}

/// The 120 nonsingular vectors of the plus-type quadratic form on GF(2)^8,
/// adjacent when not perpendicular: `(120,56,28,24)`.
pub fn nonsingular_o8_plus_2() -> Result<Graph> {
    let form = standard_quadratic_form(4, 2, FormType::Plus)?;
    let vectors: Vec<Vec<u32>> = (0..256)
        .map(|i| vector_at(2, 8, i))
        .filter(|v| form.eval(v) == 1)
        .collect();
    let q: Vec<u32> = (0..256).map(|i| form.eval(&vector_at(2, 8, i))).collect();
    let polar = |x: &[u32], y: &[u32]| {
        let s: Vec<u32> = x.iter().zip(y).map(|(a, b)| a ^ b).collect();
        q[vector_index(2, &s)] ^ q[vector_index(2, x)] ^ q[vector_index(2, y)]
    };
    let g = Graph::from_fn(vectors.len(), |x, y| polar(&vectors[x], &vectors[y]) == 1);
    let labels = vectors
        .iter()
        .map(|v| v.iter().map(u32::to_string).collect::<String>())
        .collect();
    g.with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SrgParams;

    #[test]
    fn parameters() {
        assert_eq!(kneser_pairs(6).unwrap().srg_params().unwrap(), SrgParams::new(15, 6, 1, 3));
        assert_eq!(bisection_graph(8).unwrap().srg_params().unwrap(), SrgParams::new(35, 16, 6, 8));
        assert_eq!(bisection_graph(10).unwrap().srg_params().unwrap(), SrgParams::new(126, 25, 8, 4));
        assert_eq!(nonsingular_o8_plus_2().unwrap().srg_params().unwrap(), SrgParams::new(120, 56, 28, 24));
        assert!(bisection_graph(7).is_err());
    }
}
