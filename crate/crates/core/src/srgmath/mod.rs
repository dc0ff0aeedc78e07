//! Parameter arithmetic for strongly regular graphs: complements, feasibility,
//! order-3 subgraph counts, order-divisibility screens, Zsigmondy primes and a
//! replayable ledger of eliminations.

mod factor;
mod ledger;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{is_prime, prime_power};
use crate::graph::SrgParams;

pub use factor::{factorize, is_prime_u64, Factored};
pub use ledger::{
    builtin_ledger, ensure_all_match, load_ledger, replay_eliminations, replay_ledger, replay_record,
    EliminationRecord, Expression, ReplayOutcome, Verdict, BUILTIN_LEDGER,
};

/// Outcome of [`feasibility_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Feasibility {
    pub feasible: bool,
    pub violated: Option<String>,
}

impl Feasibility {
    pub fn into_result(self) -> Result<()> {
        match self.violated {
            None => Ok(()),
            Some(v) => Err(Error::NotStronglyRegular(v)),
        }
    }
}

/// Checks `k < v`, `0 <= lambda <= k-1`, `0 <= mu <= k` and
/// `k(k-1-lambda) = mu(v-1-k)`.
pub fn feasibility_check(p: &SrgParams) -> Feasibility {
    let (v, k, l, mu) = (p.v as i128, p.k as i128, p.lambda as i128, p.mu as i128);
    let violated = if k >= v {
        Some(format!("k = {k} is not below v = {v}"))
    } else if l > k - 1 {
        Some(format!("lambda = {l} exceeds k - 1 = {}", k - 1))
    } else if mu > k {
        Some(format!("mu = {mu} exceeds k = {k}"))
    } else if k * (k - 1 - l) != mu * (v - 1 - k) {
        Some(format!(
            "k(k-1-lambda) = {} but mu(v-1-k) = {}",
            k * (k - 1 - l),
            mu * (v - 1 - k)
        ))
    } else {
        None
    };
    Feasibility {
        feasible: violated.is_none(),
        violated,
    }
}

/// Parameters of the complement: `(v, v-k-1, v-2k+mu-2, v-2k+lambda)`.
pub fn complement_params(p: &SrgParams) -> Result<SrgParams> {
    let (v, k, l, mu) = (p.v as i128, p.k as i128, p.lambda as i128, p.mu as i128);
    let c = [v - k - 1, v - 2 * k + mu - 2, v - 2 * k + l];
    if c.iter().any(|&x| x < 0) {
        return Err(Error::NotStronglyRegular(format!("complement of {p:?} has a negative parameter")));
    }
    let q = SrgParams::new(p.v, c[0] as u64, c[1] as u64, c[2] as u64);
    feasibility_check(&q).into_result()?;
    Ok(q)
}

/// Order-3 induced subgraph counts `[K1+K2, P3, K3, 3K1]` of a strongly
/// regular graph with parameters `p`, as exact 128-bit integers.
pub fn omega_values(p: &SrgParams) -> Result<[u128; 4]> {
    feasibility_check(p).into_result()?;
    let (v, k, l, mu) = (p.v as i128, p.k as i128, p.lambda as i128, p.mu as i128);
    let overflow = || Error::InvalidParameter(format!("{p:?} is too large for 128-bit counts"));
    let prod = |xs: &[i128]| -> Result<i128> {
        xs.iter().try_fold(1i128, |acc, &x| acc.checked_mul(x)).ok_or_else(overflow)
    };
    let exact = |num: i128, den: i128, what: &str| -> Result<u128> {
        if num < 0 || num % den != 0 {
            return Err(Error::InvalidParameter(format!("{what} = {num}/{den} is not a count")));
        }
        Ok((num / den) as u128)
    };
    let o1 = exact(prod(&[v, k, v + l - 2 * k])?, 2, "edge plus vertex")?;
    let o2 = exact(prod(&[v, k, k - l - 1])?, 2, "paths")?;
    let o3 = exact(prod(&[v, k, l])?, 6, "triangles")?;
    let o4 = exact(prod(&[v, v - k - 1, v - 2 * k + mu - 2])?, 6, "cocliques")?;
    // the same count from v, k, lambda alone
    let inner = prod(&[v, v])?
        .checked_sub(prod(&[3, v, k])?)
        .and_then(|x| x.checked_add(prod(&[3, k, k]).ok()?))
        .map(|x| x - 3 * v - k * l + 3 * k + 2)
        .ok_or_else(overflow)?;
    let alt = exact(prod(&[v, inner])?, 6, "cocliques")?;
    if alt != o4 {
        return Err(Error::InvalidParameter(format!("coclique counts disagree: {o4} vs {alt}")));
    }
    let total = prod(&[v, v - 1, v - 2])? as u128 / 6;
    if o1 + o2 + o3 + o4 != total {
        return Err(Error::InvalidParameter("order-3 counts do not sum to C(v,3)".into()));
    }
    Ok([o1, o2, o3, o4])
}

/// Result of [`divisibility_screen`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScreenReport {
    pub params: SrgParams,
    pub order: String,
    /// Decimal strings, in the order `[K1+K2, P3, K3, 3K1]`.
    pub omegas: [String; 4],
    pub divides: [bool; 4],
    /// 1-based index of the first count that does not divide the order.
    pub first_failing: Option<usize>,
    pub verdict: Verdict,
}

/// Tests whether each order-3 count divides `order`, as it must when a group
/// of that order is transitive on every class of order-3 induced subgraphs.
pub fn divisibility_screen(p: &SrgParams, order: &Factored) -> Result<ScreenReport> {
    let omegas = omega_values(p)?;
    let mut divides = [false; 4];
    for (d, &o) in divides.iter_mut().zip(&omegas) {
        *d = o == 0 || Factored::from_u128(o)?.divides(order);
    }
    let first_failing = divides.iter().position(|d| !d).map(|i| i + 1);
    Ok(ScreenReport {
        params: *p,
        order: order.to_string(),
        omegas: omegas.map(|o| o.to_string()),
        divides,
        first_failing,
        verdict: if first_failing.is_some() {
            Verdict::Eliminated
        } else {
            Verdict::Passes
        },
    })
}

/// The primes dividing `q^n - 1` but no `q^i - 1` with `i < n`.
pub fn zsigmondy(q: u64, n: u32) -> Result<Vec<u64>> {
    prime_power(q)?;
    if n < 3 {
        return Err(Error::InvalidParameter(format!("zsigmondy needs n >= 3, got {n}")));
    }
    let qn = q
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidParameter(format!("{q}^{n} exceeds 64 bits")))?;
    let f = factorize(qn - 1)?;
    Ok(f.exponents()
        .keys()
        .copied()
        .filter(|&r| (1..n).all(|i| (q.pow(i) - 1) % r != 0))
        .collect())
}

/// `p^d - 1 > 8d`, for an odd prime `p` with `d >= 3` or for `p = 2` with `d >= 6`.
pub fn growth_bounds(p: u64, d: u32) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if (p == 2 && d < 6) || (p != 2 && d < 3) {
        return Err(Error::Precondition(format!(
            "growth bound needs d >= 3 for odd p and d >= 6 for p = 2, got p = {p}, d = {d}"
        )));
    }
    Ok(BigUint::from(p).pow(d) - 1u32 > BigUint::from(8 * d as u64))
}
