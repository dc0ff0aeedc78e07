//! Vectors, matrices and forms over small finite fields.
//!
//! Field elements are handled by their coordinate-lex index through
//! [`FieldTables`]; vectors are `Vec<u32>` of such indices. A vector's index
//! is its coordinate-lex position, first coordinate most significant.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ffield::{make_field, make_field_of_order, prime_power, FieldElement, FieldTables};
use crate::permgrp::{Permutation, PermutationGroup};

/// Field tables shared between matrices and forms.
pub type Field = Arc<FieldTables>;

pub fn field_of_order(q: u64) -> Result<Field> {
    Ok(Arc::new(FieldTables::new(&make_field_of_order(q)?)))
}

/// A dense matrix over a small field.
#[derive(Clone, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
    field: Field,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.entries == other.entries
            && self.field.spec() == other.field.spec()
    }
}

impl Eq for Matrix {}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if entries.iter().any(|&e| e as usize >= field.order()) {
            return Err(Error::InvalidParameter("matrix entry out of field range".into()));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
            field: field.clone(),
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter("ragged matrix rows".into()));
        }
        Matrix::new(field, rows.len(), cols, rows.concat())
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Matrix {
            rows: n,
            cols: n,
            entries,
            field: field.clone(),
        }
    }

    /// Diagonal scalar matrix.
    pub fn scalar(field: &Field, n: usize, c: u32) -> Self {
        let mut m = Matrix::identity(field, n);
        for i in 0..n {
            m.entries[i * n + i] = c;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        self.field.element(self.get(i, j))
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let f = &self.field;
        let mut entries = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let e = &mut entries[i * other.cols + j];
                    *e = f.add(*e, f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            entries,
            field: f.clone(),
        })
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0u32; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(i, j)));
            }
        }
        out
    }

    /// Applies `x -> x^(p^k)` entrywise.
    pub fn frobenius_power(&self, k: u32) -> Matrix {
        let mut m = self.clone();
        for e in m.entries.iter_mut() {
            *e = self.field.frobenius_power(*e, k);
        }
        m
    }

    pub fn determinant(&self) -> Result<u32> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return Ok(0);
            };
            if piv != c {
                for j in 0..n {
                    a.swap(piv * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[c * n + c];
            det = f.mul(det, pv);
            let pinv = f.inv(pv);
            for r in c + 1..n {
                let factor = f.mul(a[r * n + c], pinv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[c * n + j]));
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<u32>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        row_basis(&self.field, &rows).len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.cols,
            });
        }
        let f = &self.field;
        let w = 2 * n;
        let mut a = vec![0u32; n * w];
        for i in 0..n {
            a[i * w..i * w + n].copy_from_slice(self.row(i));
            a[i * w + n + i] = 1;
        }
        for c in 0..n {
            let piv = (c..n)
                .find(|&r| a[r * w + c] != 0)
                .ok_or_else(|| Error::InvalidParameter("singular matrix".into()))?;
            for j in 0..w {
                a.swap(piv * w + j, c * w + j);
            }
            let pinv = f.inv(a[c * w + c]);
            for j in 0..w {
                a[c * w + j] = f.mul(a[c * w + j], pinv);
            }
            for r in 0..n {
                let factor = a[r * w + c];
                if r == c || factor == 0 {
                    continue;
                }
                for j in 0..w {
                    a[r * w + j] = f.sub(a[r * w + j], f.mul(factor, a[c * w + j]));
                }
            }
        }
        let entries = (0..n).flat_map(|i| a[i * w + n..(i + 1) * w].to_vec()).collect();
        Matrix::new(f, n, n, entries)
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|&e| self.field.element(e).text()).collect())
            .collect();
        let mut st = serializer.serialize_struct("Matrix", 3)?;
        st.serialize_field("field", &self.field.spec().text())?;
        st.serialize_field("dimensions", &[self.rows, self.cols])?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

/// A basis (in echelon form) of the row space of `rows`.
pub fn row_basis(f: &FieldTables, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for (b, &pc) in basis.iter().zip(&pivots) {
            let c = v[pc];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = f.inv(v[pc]);
            for x in v.iter_mut() {
                *x = f.mul(*x, inv);
            }
            for b in basis.iter_mut() {
                let c = b[pc];
                if c != 0 {
                    for (x, &y) in b.iter_mut().zip(&v) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
            basis.push(v);
            pivots.push(pc);
        }
    }
    basis
}

/// Coordinate-lex index of a vector.
pub fn vector_index(q: usize, v: &[u32]) -> usize {
    v.iter().fold(0usize, |acc, &c| acc * q + c as usize)
}

/// Inverse of [`vector_index`].
pub fn vector_at(q: usize, dim: usize, mut index: usize) -> Vec<u32> {
    let mut v = vec![0u32; dim];
    for slot in v.iter_mut().rev() {
        *slot = (index % q) as u32;
        index /= q;
    }
    v
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub fn normalize(f: &FieldTables, v: &[u32]) -> Vec<u32> {
    match v.iter().find(|&&x| x != 0) {
        None => v.to_vec(),
        Some(&lead) => {
            let inv = f.inv(lead);
            v.iter().map(|&x| f.mul(x, inv)).collect()
        }
    }
}

fn add_vec(f: &FieldTables, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

fn scale_vec(f: &FieldTables, c: u32, a: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

/// `a - c*b`
fn axpy(f: &FieldTables, a: &[u32], c: u32, b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, f.mul(c, y))).collect()
}

/// All canonical representatives of projective points of `PG(dim-1, q)`, in lex order.
pub fn projective_points(f: &FieldTables, dim: usize) -> Vec<Vec<u32>> {
    let q = f.order();
    let total = q.pow(dim as u32);
    (1..total)
        .map(|i| vector_at(q, dim, i))
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormType {
    Plus,
    Minus,
    Odd,
}

impl FormType {
    pub fn parse(s: &str) -> Result<FormType> {
        match s {
            "+" | "plus" => Ok(FormType::Plus),
            "-" | "minus" => Ok(FormType::Minus),
            "0" | "o" | "odd" => Ok(FormType::Odd),
            _ => Err(Error::Parse(format!("unknown form type {s:?}"))),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            FormType::Plus => "+",
            FormType::Minus => "-",
            FormType::Odd => "o",
        }
    }
}

/// `Q(x) = sum_{i<=j} U[i][j] x_i x_j` with `U` upper triangular.
#[derive(Clone, Debug)]
pub struct QuadraticForm {
    dim: usize,
    field: Field,
    upper: Vec<u32>,
    kind: FormType,
}

impl QuadraticForm {
    pub fn new(field: &Field, dim: usize, upper: Vec<u32>, kind: FormType) -> Result<Self> {
        if upper.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: upper.len(),
            });
        }
        for i in 0..dim {
            for j in 0..i {
                if upper[i * dim + j] != 0 {
                    return Err(Error::InvalidParameter("coefficient matrix is not upper triangular".into()));
                }
            }
        }
        Ok(QuadraticForm {
            dim,
            field: field.clone(),
            upper,
            kind,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn kind(&self) -> FormType {
        self.kind
    }

    pub fn coefficient(&self, i: usize, j: usize) -> u32 {
        self.upper[i * self.dim + j]
    }

    pub fn eval(&self, x: &[u32]) -> u32 {
        let f = &self.field;
        let mut acc = 0;
        for i in 0..self.dim {
            if x[i] == 0 {
                continue;
            }
            for j in i..self.dim {
                let c = self.upper[i * self.dim + j];
                if c != 0 && x[j] != 0 {
                    acc = f.add(acc, f.mul(c, f.mul(x[i], x[j])));
                }
            }
        }
        acc
    }

    /// Polar form `Q(u+v) - Q(u) - Q(v)`.
    pub fn polar(&self, u: &[u32], v: &[u32]) -> u32 {
        let f = &self.field;
        let s = add_vec(f, u, v);
        f.sub(f.sub(self.eval(&s), self.eval(u)), self.eval(v))
    }

    /// Number of vectors (including 0) with `Q(x) = 0`.
    pub fn zero_count(&self) -> usize {
        let q = self.field.order();
        (0..q.pow(self.dim as u32))
            .filter(|&i| self.eval(&vector_at(q, self.dim, i)) == 0)
            .count()
    }
}

impl Serialize for QuadraticForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<String>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.field.element(self.coefficient(i, j)).text())
                    .collect()
            })
            .collect();
        let mut st = serializer.serialize_struct("QuadraticForm", 4)?;
        st.serialize_field("dimension", &self.dim)?;
        st.serialize_field("field", &self.field.spec().text())?;
        st.serialize_field("coefficients", &rows)?;
        st.serialize_field("type", &self.kind)?;
        st.end()
    }
}

/// The coordinate-lex smallest `a` making `x^2 + xy + a y^2` anisotropic.
pub fn anisotropic_coefficient(f: &FieldTables) -> u32 {
    let q = f.order() as u32;
    (0..q)
        .find(|&a| {
            // anisotropic iff t^2 + t + a has no root
            (0..q).all(|t| f.add(f.add(f.mul(t, t), t), a) != 0)
        })
        .expect("every finite field has an irreducible quadratic")
}

/// Standard form of dimension `2m`: hyperbolic pairs `x_{2i-1} x_{2i}`, with the
/// last pair replaced by `x^2 + xy + a y^2` for minus type.
pub fn standard_quadratic_form(m: usize, q: u64, eps: FormType) -> Result<QuadraticForm> {
    if m < 1 {
        return Err(Error::InvalidParameter("half-dimension must be at least 1".into()));
    }
    let field = field_of_order(q)?;
    let dim = match eps {
        FormType::Odd => 2 * m + 1,
        _ => 2 * m,
    };
    let mut upper = vec![0u32; dim * dim];
    for i in 0..m {
        upper[(2 * i) * dim + 2 * i + 1] = 1;
    }
    match eps {
        FormType::Plus => {}
        FormType::Minus => {
            let (x, y) = (2 * m - 2, 2 * m - 1);
            upper[x * dim + x] = 1;
            upper[y * dim + y] = anisotropic_coefficient(&field);
        }
        FormType::Odd => {
            if q % 2 == 0 {
                return Err(Error::InvalidParameter(
                    "odd-dimensional forms are degenerate in characteristic 2".into(),
                ));
            }
            upper[(dim - 1) * dim + dim - 1] = 1;
        }
    }
    QuadraticForm::new(&field, dim, upper, eps)
}

/// Hermitian form `sum u_i conj(v_i)` on GF(q^2)^n (identity Gram matrix).
#[derive(Clone, Debug)]
pub struct HermitianForm {
    dim: usize,
    field: Field,
    /// conjugation is `x -> x^(p^conj_power)` = `x^q`
    conj_power: u32,
}

impl HermitianForm {
    /// `q` is the order of the fixed field; the form lives over GF(q^2).
    pub fn new(dim: usize, q: u64) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        let field = Arc::new(FieldTables::new(&make_field(p, 2 * e)?));
        Ok(HermitianForm {
            dim,
            field,
            conj_power: e,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn conj(&self, x: u32) -> u32 {
        self.field.frobenius_power(x, self.conj_power)
    }

    /// Order of the fixed field.
    pub fn base_order(&self) -> u64 {
        (self.field.spec().characteristic() as u64).pow(self.conj_power)
    }

    pub fn eval(&self, u: &[u32], v: &[u32]) -> u32 {
        let f = &self.field;
        u.iter()
            .zip(v)
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, self.conj(b))))
    }
}

impl Serialize for HermitianForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("HermitianForm", 3)?;
        st.serialize_field("dimension", &self.dim)?;
        st.serialize_field("field", &self.field.spec().text())?;
        st.serialize_field("gram", "identity")?;
        st.end()
    }
}

/// Either kind of form.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Form {
    Quadratic(QuadraticForm),
    Hermitian(HermitianForm),
}

impl Form {
    pub fn dim(&self) -> usize {
        match self {
            Form::Quadratic(qf) => qf.dim,
            Form::Hermitian(h) => h.dim,
        }
    }

    pub fn field(&self) -> &Field {
        match self {
            Form::Quadratic(qf) => &qf.field,
            Form::Hermitian(h) => &h.field,
        }
    }

    fn is_singular(&self, v: &[u32]) -> bool {
        match self {
            Form::Quadratic(qf) => qf.eval(v) == 0,
            Form::Hermitian(h) => h.eval(v, v) == 0,
        }
    }

    /// Bilinear (or sesquilinear) form.
    pub fn pairing(&self, u: &[u32], v: &[u32]) -> u32 {
        match self {
            Form::Quadratic(qf) => qf.polar(u, v),
            Form::Hermitian(h) => h.eval(u, v),
        }
    }
}

impl From<QuadraticForm> for Form {
    fn from(f: QuadraticForm) -> Self {
        Form::Quadratic(f)
    }
}

impl From<HermitianForm> for Form {
    fn from(f: HermitianForm) -> Self {
        Form::Hermitian(f)
    }
}

/// `Q(u)` when `v` is absent, otherwise the polar or Hermitian pairing.
pub fn eval_form(form: &Form, u: &[u32], v: Option<&[u32]>) -> Result<FieldElement> {
    let n = form.dim();
    for w in std::iter::once(u).chain(v) {
        if w.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: w.len(),
            });
        }
        if w.iter().any(|&x| x as usize >= form.field().order()) {
            return Err(Error::InvalidParameter("vector entry out of field range".into()));
        }
    }
    let value = match (form, v) {
        (Form::Quadratic(qf), None) => qf.eval(u),
        (Form::Hermitian(h), None) => h.eval(u, u),
        (_, Some(v)) => form.pairing(u, v),
    };
    Ok(form.field().element(value))
}

/// Singular (isotropic) projective points, canonical representatives in lex order.
pub fn singular_points(form: &Form) -> Vec<Vec<u32>> {
    projective_points(form.field(), form.dim())
        .into_iter()
        .filter(|v| form.is_singular(v))
        .collect()
}

fn random_vector(rng: &mut ChaCha8Rng, f: &FieldTables, basis: &[Vec<u32>], dim: usize) -> Vec<u32> {
    let q = f.order() as u32;
    let mut v = vec![0u32; dim];
    for b in basis {
        let c = rng.gen_range(0..q);
        if c != 0 {
            v = add_vec(f, &v, &scale_vec(f, c, b));
        }
    }
    v
}

/// Random standard basis for a quadratic form in the same shape as the standard form.
fn random_quadratic_basis(qf: &QuadraticForm, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<u32>>> {
    let f = &qf.field;
    let n = qf.dim;
    let pairs = match qf.kind {
        FormType::Plus => n / 2,
        FormType::Minus => n / 2 - 1,
        FormType::Odd => n / 2,
    };
    let mut w: Vec<Vec<u32>> = (0..n).map(|i| vector_at(f.order(), n, f.order().pow((n - 1 - i) as u32))).collect();
    let mut out = Vec::with_capacity(n);
    for _ in 0..pairs {
        let e = (0..1000)
            .map(|_| random_vector(rng, f, &w, n))
            .find(|v| v.iter().any(|&x| x != 0) && qf.eval(v) == 0)?;
        let (g, c) = (0..1000)
            .map(|_| random_vector(rng, f, &w, n))
            .map(|v| {
                let c = qf.polar(&e, &v);
                (v, c)
            })
            .find(|(_, c)| *c != 0)?;
        let g = scale_vec(f, f.inv(c), &g);
        let g = axpy(f, &g, qf.eval(&g), &e);
        let reduced: Vec<Vec<u32>> = w
            .iter()
            .map(|x| {
                let t = axpy(f, x, qf.polar(x, &g), &e);
                axpy(f, &t, qf.polar(x, &e), &g)
            })
            .collect();
        w = row_basis(f, &reduced);
        out.push(e);
        out.push(g);
    }
    let q = f.order();
    let span = |w: &[Vec<u32>]| -> Vec<Vec<u32>> {
        let k = w.len();
        (1..q.pow(k as u32))
            .map(|i| {
                let coeffs = vector_at(q, k, i);
                coeffs
                    .iter()
                    .zip(w)
                    .fold(vec![0u32; n], |acc, (&c, b)| add_vec(f, &acc, &scale_vec(f, c, b)))
            })
            .collect()
    };
    match qf.kind {
        FormType::Plus => {}
        FormType::Minus => {
            let a = qf.coefficient(n - 1, n - 1);
            let all = span(&w);
            let xs: Vec<&Vec<u32>> = all.iter().filter(|v| qf.eval(v) == 1).collect();
            let x = xs[rng.gen_range(0..xs.len())].clone();
            let ys: Vec<&Vec<u32>> = all
                .iter()
                .filter(|v| qf.polar(&x, v) == 1 && qf.eval(v) == a)
                .collect();
            if ys.is_empty() {
                return None;
            }
            let y = ys[rng.gen_range(0..ys.len())].clone();
            out.push(x);
            out.push(y);
        }
        FormType::Odd => {
            let xs: Vec<Vec<u32>> = span(&w).into_iter().filter(|v| qf.eval(v) == 1).collect();
            if xs.is_empty() {
                return None;
            }
            out.push(xs[rng.gen_range(0..xs.len())].clone());
        }
    }
    Some(out)
}

/// Random orthonormal basis for the Hermitian form.
fn random_hermitian_basis(h: &HermitianForm, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<u32>>> {
    let f = &h.field;
    let n = h.dim;
    let q2 = f.order();
    let mut w: Vec<Vec<u32>> = (0..n).map(|i| vector_at(q2, n, q2.pow((n - 1 - i) as u32))).collect();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..1000)
            .map(|_| random_vector(rng, f, &w, n))
            .find(|v| h.eval(v, v) != 0)?;
        let norm = h.eval(&v, &v);
        let target = f.inv(norm);
        let scalars: Vec<u32> = (1..q2 as u32)
            .filter(|&c| f.mul(c, h.conj(c)) == target)
            .collect();
        let c = scalars[rng.gen_range(0..scalars.len())];
        let v = scale_vec(f, c, &v);
        let reduced: Vec<Vec<u32>> = w.iter().map(|x| axpy(f, x, h.eval(x, &v), &v)).collect();
        w = row_basis(f, &reduced);
        out.push(v);
    }
    Some(out)
}

/// Checks `F(u g, v g) = F(u, v)` on the standard basis (and `Q(e_i g) = Q(e_i)`).
pub fn is_isometry(form: &Form, g: &Matrix) -> bool {
    let n = form.dim();
    if g.rows() != n || g.cols() != n || !g.is_invertible() {
        return false;
    }
    let basis: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut e = vec![0u32; n];
            e[i] = 1;
            e
        })
        .collect();
    let images: Vec<Vec<u32>> = basis.iter().map(|e| g.apply(e)).collect();
    for i in 0..n {
        if let Form::Quadratic(qf) = form {
            if qf.eval(&images[i]) != qf.eval(&basis[i]) {
                return false;
            }
        }
        for j in 0..n {
            if form.pairing(&images[i], &images[j]) != form.pairing(&basis[i], &basis[j]) {
                return false;
            }
        }
    }
    true
}

/// A random isometry of `form`; for Hermitian forms `special` normalizes the
/// determinant to 1.
pub fn random_isometry(form: &Form, seed: u64, special: bool) -> Result<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = form.field();
    for _ in 0..32 {
        let basis = match form {
            Form::Quadratic(qf) => random_quadratic_basis(qf, &mut rng),
            Form::Hermitian(h) => random_hermitian_basis(h, &mut rng),
        };
        let Some(mut basis) = basis else { continue };
        let mut g = Matrix::from_rows(f, &basis)?;
        if special {
            if let Form::Hermitian(_) = form {
                let det = g.determinant()?;
                let last = basis.len() - 1;
                basis[last] = scale_vec(f, f.inv(det), &basis[last]);
                g = Matrix::from_rows(f, &basis)?;
            }
        }
        if is_isometry(form, &g) {
            return Ok(g);
        }
    }
    Err(Error::BudgetExceeded("random isometry sampling failed".into()))
}

/// Permutation of a point list induced by a matrix; `lookup` maps vector index to position.
fn induced_permutation(
    f: &FieldTables,
    points: &[Vec<u32>],
    lookup: &HashMap<usize, usize>,
    g: &Matrix,
) -> Result<Permutation> {
    let q = f.order();
    let images = points
        .iter()
        .map(|p| {
            let img = normalize(f, &g.apply(p));
            lookup
                .get(&vector_index(q, &img))
                .copied()
                .ok_or_else(|| Error::Construction("matrix does not preserve the point set".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Permutation::from_images(images)
}

/// Permutation group induced on `points` (canonical representatives) by matrices.
pub fn matrix_group_on_points(points: &[Vec<u32>], matrices: &[Matrix]) -> Result<PermutationGroup> {
    let Some(first) = matrices.first() else {
        return Ok(PermutationGroup::trivial(points.len()));
    };
    let f = first.field().clone();
    let lookup: HashMap<usize, usize> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (vector_index(f.order(), p), i))
        .collect();
    let gens = matrices
        .iter()
        .map(|g| induced_permutation(&f, points, &lookup, g))
        .collect::<Result<Vec<_>>>()?;
    PermutationGroup::new(points.len(), gens)
}

/// Group generated by random isometries, acting on the singular points.
///
/// Draws isometries until the order has been stable for five further draws
/// and, if given, equals `expected_order`.
pub fn isometry_group_on_points(
    form: &Form,
    expected_order: Option<&BigUint>,
    seed: u64,
    special: bool,
    max_draws: usize,
) -> Result<(Vec<Vec<u32>>, PermutationGroup)> {
    let points = singular_points(form);
    if points.is_empty() {
        return Err(Error::Precondition("form has no singular points".into()));
    }
    let mut mats = Vec::new();
    let mut order = BigUint::from(1u32);
    let mut stable = 0;
    for draw in 0..max_draws {
        let g = random_isometry(form, seed.wrapping_add(draw as u64), special)?;
        mats.push(g);
        let group = matrix_group_on_points(&points, &mats)?;
        let new_order = group.order();
        if new_order == order {
            stable += 1;
        } else {
            order = new_order;
            stable = 0;
        }
        let reached = expected_order.map_or(true, |e| &order == e);
        if reached && (stable >= 5 || expected_order.is_some()) {
            return Ok((points, group));
        }
        if let Some(e) = expected_order {
            if &order > e {
                return Err(Error::Construction(format!(
                    "isometry group order {order} exceeds expected {e}"
                )));
            }
        }
    }
    Err(Error::BudgetExceeded(format!(
        "isometry group reached order {order} after {max_draws} draws"
    )))
}

/// `PGL(2,q)` (or `PSL(2,q)` when `special`) on the `q+1` points of the projective line.
///
/// Generated by `x -> x+1`, `x -> w x` (`w^2` for the special group) and `x -> -1/x`.
pub fn projective_line_group(q: u64, special: bool) -> Result<(Vec<Vec<u32>>, PermutationGroup)> {
    let f = field_of_order(q)?;
    let omega = f.index(&f.spec().primitive_element());
    let mult = if special { f.mul(omega, omega) } else { omega };
    let minus_one = f.neg(1);
    let mats = vec![
        Matrix::from_rows(&f, &[vec![1, 0], vec![1, 1]])?,
        Matrix::from_rows(&f, &[vec![mult, 0], vec![0, 1]])?,
        Matrix::from_rows(&f, &[vec![0, minus_one], vec![1, 0]])?,
    ];
    let points = projective_points(&f, 2);
    let group = matrix_group_on_points(&points, &mats)?;
    Ok((points, group))
}
