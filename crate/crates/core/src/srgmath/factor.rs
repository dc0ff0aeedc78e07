//! Integer factorization and factored integers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Iterations of one Pollard rho run before a new constant is tried.
const RHO_ROUNDS: u64 = 1 << 20;
const RHO_ATTEMPTS: u64 = 64;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A nontrivial divisor of the odd composite `n` (Brent's variant).
fn rho(n: u64) -> Result<u64> {
    for c in 1..=RHO_ATTEMPTS {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut steps = 0;
        while d == 1 && steps < RHO_ROUNDS {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
            steps += 1;
        }
        if d != 1 && d != n {
            return Ok(d);
        }
    }
    Err(Error::BudgetExceeded(format!("Pollard rho found no factor of {n}")))
}

/// Prime factorization of `n >= 1`: trial division by small primes, then
/// Pollard rho on what is left.
pub fn factorize(n: u64) -> Result<Factored> {
    if n == 0 {
        return Err(Error::InvalidParameter("cannot factor 0".into()));
    }
    let mut out = Factored::one();
    let mut n = n;
    for p in (2u64..1000).filter(|&p| p < 4 || (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)) {
        while n % p == 0 {
            out.push(p, 1);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            out.push(m, 1);
            continue;
        }
        let d = rho(m)?;
        stack.push(d);
        stack.push(m / d);
    }
    Ok(out)
}

/// A positive integer as a map from primes to exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Factored {
    primes: BTreeMap<u64, u32>,
}

impl Factored {
    pub fn one() -> Factored {
        Factored::default()
    }

    fn push(&mut self, p: u64, e: u32) {
        if e > 0 {
            *self.primes.entry(p).or_insert(0) += e;
        }
    }

    pub fn from_u128(n: u128) -> Result<Factored> {
        let hi = (n >> 64) as u64;
        if hi != 0 {
            // strip small factors until the rest fits in 64 bits
            let mut out = Factored::one();
            let mut m = n;
            for p in 2u64..1_000_000 {
                while m % p as u128 == 0 {
                    out.push(p, 1);
                    m /= p as u128;
                }
                if m >> 64 == 0 {
                    return Ok(out.mul(&factorize(m as u64)?));
                }
            }
            return Err(Error::BudgetExceeded(format!("cannot factor {n}")));
        }
        factorize(n as u64)
    }

    pub fn exponents(&self) -> &BTreeMap<u64, u32> {
        &self.primes
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.primes.get(&p).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Factored) -> Factored {
        let mut out = self.clone();
        for (&p, &e) in &other.primes {
            out.push(p, e);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Factored {
        Factored {
            primes: self.primes.iter().map(|(&p, &e)| (p, e * k)).collect(),
        }
    }

    pub fn divides(&self, other: &Factored) -> bool {
        self.primes.iter().all(|(&p, &e)| other.exponent(p) >= e)
    }

    /// `self / other` when exact.
    pub fn checked_div(&self, other: &Factored) -> Option<Factored> {
        if !other.divides(self) {
            return None;
        }
        let mut primes = self.primes.clone();
        for (&p, &e) in &other.primes {
            let left = primes[&p] - e;
            if left == 0 {
                primes.remove(&p);
            } else {
                primes.insert(p, left);
            }
        }
        Some(Factored { primes })
    }

    /// Primes whose exponent here exceeds the one in `other`.
    pub fn excess_over(&self, other: &Factored) -> Vec<(u64, u32, u32)> {
        self.primes
            .iter()
            .filter(|(&p, &e)| other.exponent(p) < e)
            .map(|(&p, &e)| (p, e, other.exponent(p)))
            .collect()
    }

    pub fn value(&self) -> BigUint {
        self.primes
            .iter()
            .fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e))
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.primes.is_empty() {
            return write!(f, "1");
        }
        let terms: Vec<String> = self
            .primes
            .iter()
            .map(|(p, &e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", terms.join("*"))
    }
}

fn superscript_digit(c: char) -> Option<char> {
    let i = "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|s| s == c)?;
    char::from_digit(i as u32, 10)
}

/// Parses products such as `2^8*3^3*5*7`, `2⁸·3³·5·7`, `351*63*15` or a plain
/// integer. Bases need not be prime.
impl FromStr for Factored {
    type Err = Error;

    fn from_str(s: &str) -> Result<Factored> {
        let bad = |why: &str| Error::Parse(format!("{s:?}: {why}"));
        let mut out = Factored::one();
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad("empty"));
        }
        for term in cleaned.split(['*', '·', '×']) {
            let (base, exp) = match term.split_once('^') {
                Some((b, e)) => (b.to_string(), e.to_string()),
                None => {
                    let base: String = term.chars().take_while(|c| c.is_ascii_digit()).collect();
                    let sup: String = term[base.len()..].chars().map(superscript_digit).collect::<Option<_>>()
                        .ok_or_else(|| bad("unexpected character"))?;
                    (base, if sup.is_empty() { "1".into() } else { sup })
                }
            };
            let base: u64 = base.parse().map_err(|_| bad("base is not a 64-bit integer"))?;
            let exp: u32 = exp.parse().map_err(|_| bad("bad exponent"))?;
            if base == 0 {
                return Err(bad("zero factor"));
            }
            out = out.mul(&factorize(base)?.pow(exp));
        }
        Ok(out)
    }
}
