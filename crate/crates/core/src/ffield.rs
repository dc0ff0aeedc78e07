//! Exact arithmetic in the finite fields GF(p^s).
//!
//! A field is fixed by its characteristic and degree: the defining modulus is
//! always the smallest monic irreducible polynomial of degree `s` when its
//! coefficients are read as the tuple `(c_{s-1}, ..., c_0)`. Elements are
//! residue vectors (constant term first) and are numbered by
//! `index = c_0 + c_1 p + ... + c_{s-1} p^{s-1}`, which is exactly the
//! coordinate-lex order of `(c_{s-1}, ..., c_0)`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Deterministic primality test for the small integers used throughout.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits a prime power `q` into `(p, s)` with `q = p^s`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut s = 0;
    while rest % p == 0 {
        rest /= p;
        s += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, s))
}

/// The field GF(p^s) together with its defining modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    s: u32,
    /// Monic modulus, constant term first, length `s + 1`.
    modulus: Vec<u32>,
    order: u64,
}

/// An element of a [`FieldSpec`], stored as `s` residues with the constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u32>,
}

/// Builds GF(p^s) with the lexicographically smallest monic irreducible modulus.
pub fn make_field(p: u64, s: u32) -> Result<FieldSpec> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::NotPrime(p));
    }
    if s < 1 {
        return Err(Error::ZeroDegree);
    }
    let p32 = p as u32;
    let order = p
        .checked_pow(s)
        .ok_or_else(|| Error::InvalidParameter(format!("{p}^{s} overflows")))?;
    let modulus = if s == 1 {
        vec![0, 1]
    } else {
        smallest_irreducible(p32, s as usize)
    };
    Ok(FieldSpec {
        p: p32,
        s,
        modulus,
        order,
    })
}

/// Builds GF(q) for a prime power `q`.
pub fn make_field_of_order(q: u64) -> Result<FieldSpec> {
    let (p, s) = prime_power(q)?;
    make_field(p, s)
}

/// Enumerates monic degree-`s` polynomials in ascending `(c_{s-1}, ..., c_0)` order
/// and returns the first irreducible one.
fn smallest_irreducible(p: u32, s: usize) -> Vec<u32> {
    let total = (p as u64).pow(s as u32);
    for code in 0..total {
        // code read in base p with the most significant digit being c_{s-1}
        let mut poly = vec![0u32; s + 1];
        let mut c = code;
        for slot in poly.iter_mut().take(s) {
            *slot = (c % p as u64) as u32;
            c /= p as u64;
        }
        poly[s] = 1;
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Irreducibility by trial division against every monic polynomial of degree
/// at most `deg / 2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = vec![0u32; d + 1];
            let mut c = code;
            for slot in divisor.iter_mut().take(d) {
                *slot = (c % p as u64) as u32;
                c /= p as u64;
            }
            divisor[d] = 1;
            if poly_rem(poly, &divisor, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p). Constant term first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let p64 = p as u64;
    while r.len() > dm {
        let lead = r.pop().unwrap() % p64;
        if lead != 0 {
            let off = r.len() - dm;
            for (i, &mi) in m.iter().take(dm).enumerate() {
                let sub = lead * mi as u64 % p64;
                r[off + i] = (r[off + i] + p64 - sub) % p64;
            }
        }
    }
    r.into_iter().map(|x| (x % p64) as u32).collect()
}

fn mod_inv_prime(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i64) as u32
}

impl FieldSpec {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    /// Number of elements `q = p^s`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Modulus coefficients, constant term first (length `s + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.s as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.p as i64) as u32;
        e
    }

    /// Element with the given coefficients, constant term first.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.s as usize {
            return Err(Error::DimensionMismatch {
                expected: self.s as usize,
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameter(format!(
                "coefficient out of range for GF({})",
                self.order
            )));
        }
        Ok(FieldElement {
            coeffs: coeffs.to_vec(),
        })
    }

    /// The element numbered `index` in coordinate-lex order.
    pub fn element_at(&self, index: u64) -> FieldElement {
        debug_assert!(index < self.order);
        let mut coeffs = vec![0u32; self.s as usize];
        let mut c = index;
        for slot in coeffs.iter_mut() {
            *slot = (c % self.p as u64) as u32;
            c /= self.p as u64;
        }
        FieldElement { coeffs }
    }

    pub fn index_of(&self, a: &FieldElement) -> u64 {
        a.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p as u64 + c as u64)
    }

    /// All elements in coordinate-lex order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.coeffs.len() != self.s as usize || a.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| ((x as u64 + y as u64) % self.p as u64) as u32)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let s = self.s as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * s - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
        let mut coeffs = if prod.len() > s {
            poly_rem(&prod, &self.modulus, self.p)
        } else {
            prod
        };
        coeffs.resize(s, 0);
        FieldElement { coeffs }
    }

    pub fn pow(&self, a: &FieldElement, mut n: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.s == 1 {
            return Ok(self.from_int(mod_inv_prime(a.coeffs[0], self.p) as i64));
        }
        Ok(self.pow(a, self.order - 2))
    }

    /// Checked binary arithmetic used at API boundaries.
    pub fn arith(&self, a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Div => self.mul(a, &self.inv(b)?),
        })
    }

    /// The Frobenius map `a -> a^p`.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// `a -> a^(p^k)`.
    pub fn frobenius_power(&self, a: &FieldElement, k: u32) -> FieldElement {
        let mut x = a.clone();
        for _ in 0..(k % self.s) {
            x = self.frobenius(&x);
        }
        x
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.order - 1;
        let mut ord = n;
        for (prime, _) in small_factor(n) {
            while ord % prime == 0 && self.pow(a, ord / prime) == self.one() {
                ord /= prime;
            }
        }
        Ok(ord)
    }

    /// The coordinate-lex smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        let n = self.order - 1;
        (1..self.order)
            .map(|i| self.element_at(i))
            .find(|a| self.multiplicative_order(a).unwrap() == n)
            .expect("multiplicative group is cyclic")
    }

    /// The distinct nonzero squares in coordinate-lex order.
    pub fn nonzero_squares(&self) -> Vec<FieldElement> {
        let mut seen = vec![false; self.order as usize];
        for a in self.elements().skip(1) {
            let sq = self.mul(&a, &a);
            seen[self.index_of(&sq) as usize] = true;
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| self.element_at(i as u64))
            .collect()
    }

    pub fn is_square(&self, a: &FieldElement) -> bool {
        if a.is_zero() || self.p == 2 {
            return true;
        }
        self.pow(a, (self.order - 1) / 2) == self.one()
    }

    /// Text form `p^s/modulus` with the modulus written highest coefficient first.
    pub fn text(&self) -> String {
        let m: Vec<String> = self.modulus.iter().rev().map(|c| c.to_string()).collect();
        format!("{}^{}/{}", self.p, self.s, m.join(","))
    }
}

/// Binary field operations accepted by [`FieldSpec::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Text form `c_{s-1},...,c_0`.
    pub fn text(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().rev().map(|c| c.to_string()).collect();
        parts.join(",")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.text())
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.text())
    }
}

/// Index-based operation tables for small fields; elements are their
/// coordinate-lex indices `0..q`, with 0 the zero and 1 the one.
#[derive(Clone, Debug)]
pub struct FieldTables {
    spec: FieldSpec,
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    frob: Vec<u32>,
}

impl FieldTables {
    /// Builds full tables; intended for `q` up to a few hundred.
    pub fn new(spec: &FieldSpec) -> Self {
        let q = spec.order() as usize;
        let elems: Vec<FieldElement> = spec.elements().collect();
        let idx = |e: &FieldElement| spec.index_of(e) as u32;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for a in 0..q {
            for b in a..q {
                let s = idx(&spec.add(&elems[a], &elems[b]));
                let m = idx(&spec.mul(&elems[a], &elems[b]));
                add[a * q + b] = s;
                add[b * q + a] = s;
                mul[a * q + b] = m;
                mul[b * q + a] = m;
            }
        }
        let neg = elems.iter().map(|e| idx(&spec.neg(e))).collect();
        let inv = elems
            .iter()
            .map(|e| spec.inv(e).map(|x| idx(&x)).unwrap_or(0))
            .collect();
        let frob = elems.iter().map(|e| idx(&spec.frobenius(e))).collect();
        FieldTables {
            spec: spec.clone(),
            q,
            add,
            mul,
            neg,
            inv,
            frob,
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero element (0 maps to 0).
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn frobenius(&self, a: u32) -> u32 {
        self.frob[a as usize]
    }

    pub fn frobenius_power(&self, a: u32, k: u32) -> u32 {
        (0..k % self.spec.degree()).fold(a, |x, _| self.frobenius(x))
    }

    pub fn pow(&self, a: u32, mut n: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn element(&self, a: u32) -> FieldElement {
        self.spec.element_at(a as u64)
    }

    pub fn index(&self, a: &FieldElement) -> u32 {
        self.spec.index_of(a) as u32
    }
}

fn small_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
