use crate::error::{Error, Result};
use crate::ffield::prime_power;
use crate::formspace::{
    field_of_order, singular_points, Matrix, standard_quadratic_form, vector_at, vector_index, Form, FormType,
};
use crate::graph::Graph;
use crate::permgrp::{affine_group, PermutationGroup, SemilinearMap};

fn vector_label(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

/// Paley graph on GF(q), `q = 1 (mod 4)`; vertex `i` is the field element of index `i`.
pub fn paley(q: u64) -> Result<Graph> {
    prime_power(q)?;
    if q % 4 != 1 {
        return Err(Error::InvalidParameter(format!("Paley graphs need q = 1 mod 4, got {q}")));
    }
    let f = field_of_order(q)?;
    let n = q as usize;
    let mut square = vec![false; n];
    for x in 1..n as u32 {
        square[f.mul(x, x) as usize] = true;
    }
    let g = Graph::from_fn(n, |x, y| square[f.sub(x as u32, y as u32) as usize]);
    let labels = (0..n as u32).map(|x| f.element(x).text()).collect();
    g.with_labels(labels)
}

/// `K_{parts[size]}`: `parts` independent blocks of `size` vertices, block-ordered.
pub fn complete_multipartite(parts: usize, size: usize) -> Result<Graph> {
    if parts == 0 || size == 0 {
        return Err(Error::InvalidParameter("multipartite needs positive parameters".into()));
    }
    Ok(Graph::from_fn(parts * size, |x, y| x / size != y / size))
}

/// Translations of GF(q) with multiplication by the fourth powers, acting on
/// the vertices of [`paley`]. Has odd order `q(q-1)/4` when `q = 5 (mod 8)`.
pub fn paley_fourth_power_group(q: u64) -> Result<PermutationGroup> {
    prime_power(q)?;
    if q % 4 != 1 {
        return Err(Error::InvalidParameter(format!("Paley graphs need q = 1 mod 4, got {q}")));
    }
    let f = field_of_order(q)?;
    let w = f.index(&f.spec().primitive_element());
    let w4 = (0..4).fold(1, |acc, _| f.mul(acc, w));
    affine_group(&f, 1, &[SemilinearMap::linear(Matrix::scalar(&f, 1, w4))])
}

/// `count` disjoint copies of `K_size`.
pub fn disjoint_cliques(count: usize, size: usize) -> Result<Graph> {
    Ok(complete_multipartite(count, size)?.complement())
}

/// `K_n` Cartesian `K_n`.
pub fn hamming(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("hamming needs n >= 1".into()));
    }
    Ok(Graph::complete_product(n, true))
}

/// Affine polar graph: vectors of GF(q)^(2m) in coordinate-lex order, adjacent
/// when the standard form of type `eps` vanishes on their difference.
pub fn affine_polar(m: usize, q: u64, eps: FormType) -> Result<Graph> {
    if eps == FormType::Odd {
        return Err(Error::InvalidParameter("affine polar graphs have type + or -".into()));
    }
    let form = standard_quadratic_form(m, q, eps)?;
    let f = form.field().clone();
    let dim = 2 * m;
    let qs = q as usize;
    let n = qs.checked_pow(dim as u32).filter(|&n| n <= 1 << 16).ok_or_else(|| {
        Error::InvalidParameter(format!("q^(2m) = {q}^{dim} vertices is too many"))
    })?;
    let vectors: Vec<Vec<u32>> = (0..n).map(|i| vector_at(qs, dim, i)).collect();
    let singular: Vec<bool> = vectors.iter().map(|v| form.eval(v) == 0).collect();
    let g = Graph::from_fn(n, |x, y| {
        let d: Vec<u32> = vectors[x].iter().zip(&vectors[y]).map(|(&a, &b)| f.sub(a, b)).collect();
        singular[vector_index(qs, &d)]
    });
    g.with_labels(vectors.iter().map(|v| vector_label(v)).collect())
}

/// Singular points of the standard quadratic form of type `eps` (dimension
/// `2m`, or `2m+1` for odd type), adjacent when perpendicular.
pub fn polar_graph(m: usize, q: u64, eps: FormType) -> Result<Graph> {
    let form: Form = standard_quadratic_form(m, q, eps)?.into();
    let points = singular_points(&form);
    let g = Graph::from_fn(points.len(), |x, y| form.pairing(&points[x], &points[y]) == 0);
    g.with_labels(points.iter().map(|v| vector_label(v)).collect())
}

/// Singular points of the minus-type form on GF(q)^6, adjacent when perpendicular.
pub fn elliptic_orthogonal(q: u64) -> Result<Graph> {
    polar_graph(3, q, FormType::Minus)
}

/// Complement of the elliptic orthogonal graph over GF(2), on 27 vertices.
pub fn schlafli() -> Result<Graph> {
    Ok(elliptic_orthogonal(2)?.complement())
}

/// Bilinear forms graph on `2 x m` matrices over GF(q), entry-lex ordered,
/// adjacent when the difference has rank 1.
pub fn bilinear_forms_graph(q: u64, m: usize) -> Result<Graph> {
    if m < 2 {
        return Err(Error::InvalidParameter("bilinear forms graph needs m >= 2".into()));
    }
    let f = field_of_order(q)?;
    let qs = q as usize;
    let n = qs.checked_pow(2 * m as u32).filter(|&n| n <= 1 << 16).ok_or_else(|| {
        Error::InvalidParameter(format!("{q}^{} vertices is too many", 2 * m))
    })?;
    let mats: Vec<Vec<u32>> = (0..n).map(|i| vector_at(qs, 2 * m, i)).collect();
    // nonzero with all 2x2 minors zero
    let rank_one = |d: &[u32]| {
        let (r, s) = d.split_at(m);
        d.iter().any(|&x| x != 0)
            && (0..m).all(|i| (i + 1..m).all(|j| f.mul(r[i], s[j]) == f.mul(r[j], s[i])))
    };
    let g = Graph::from_fn(n, |x, y| {
        let d: Vec<u32> = mats[x].iter().zip(&mats[y]).map(|(&a, &b)| f.sub(a, b)).collect();
        rank_one(&d)
    });
    g.with_labels(mats.iter().map(|v| vector_label(v)).collect())
}

/// Johnson graph `J(n,2)` on lex-ordered 2-subsets.
pub fn johnson(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(Error::InvalidParameter("johnson needs n >= 4".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let g = Graph::from_fn(pairs.len(), |x, y| {
        let (a, b) = pairs[x];
        let (c, d) = pairs[y];
        (a == c) as u8 + (a == d) as u8 + (b == c) as u8 + (b == d) as u8 == 1
    });
    g.with_labels(pairs.iter().map(|(a, b)| format!("{{{a},{b}}}")).collect())
}
