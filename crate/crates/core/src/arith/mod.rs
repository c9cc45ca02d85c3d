//! Number-theoretic side: quadratic residues, inertia degrees in real
//! cyclotomic fields, the conditions for non-surjectivity, prime scans and
//! length bookkeeping.

mod density;
mod lengths;
mod primes;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{kpm, Shape};

pub use density::{density_report, scan_primes, Density, DensityReport, PrimeScan};
pub use lengths::{length_residues, LengthFamily, LengthTable};
pub use primes::{
    distinct_prime_factors, divisors, gcd, is_prime, mod_pow, multiplicative_order, sieve,
};

/// Euler's criterion; `a ≡ 0` counts as a square.
pub fn is_square_mod(a: i64, p: u64) -> Result<bool> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let a = a.rem_euclid(p as i64) as u64;
    Ok(a == 0 || mod_pow(a, (p - 1) / 2, p) == 1)
}

/// Inertia degree of `p` in `Q(ζ_m^i + ζ_m^-i)`.
///
/// That field is the maximal real subfield of `Q(ζ_d)` with
/// `d = m / gcd(m, i)`; for unramified `p` the inertia degree is the least
/// `f >= 1` with `p^f ≡ ±1 (mod d)`, and `1` when `d <= 2`.
pub fn inertia_degree(p: u64, m: u64, i: u64) -> Result<u64> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::InvalidArgument(format!("conductor {m} must be odd and >= 3")));
    }
    if i < 1 || i > (m - 1) / 2 {
        return Err(Error::InvalidArgument(format!(
            "index {i} outside [1, {}]",
            (m - 1) / 2
        )));
    }
    let d = m / gcd(m, i);
    if d <= 2 {
        return Ok(1);
    }
    if gcd(p, d) != 1 {
        return Err(Error::Ramified { p, conductor: d });
    }
    let base = p % d;
    let mut power = base;
    for f in 1..=d {
        if power == 1 || power == d - 1 {
            return Ok(f);
        }
        power = (power as u128 * base as u128 % d as u128) as u64;
    }
    unreachable!("p is a unit mod d, so some power is 1")
}

/// `k± ≢ 1 (mod 3)`, i.e. `3 ∤ 2k± + 1`.
pub fn necessary_congruence(kpm: i64) -> bool {
    kpm.rem_euclid(3) != 1
}

/// The three conditions of the non-surjectivity criterion for one `(p, n, k, shape)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub p: u64,
    pub n: u64,
    pub k: i64,
    pub shape: String,
    pub k_pm: i64,
    /// `2` is not a square mod `p`.
    pub cond1: bool,
    /// `n` is odd.
    pub cond2: bool,
    /// No `f_i` divides `n`.
    pub cond3: bool,
    pub inertia_degrees: Vec<u64>,
    pub verdict: bool,
}

pub fn check_theorem_conditions(p: u64, n: u64, k: i64, shape: Shape) -> Result<ConditionReport> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let k_pm = kpm(k, shape);
    if k_pm < 1 {
        return Err(Error::InvalidArgument(format!(
            "k± = {k_pm} for k = {k} and shape {shape}; need k± >= 1"
        )));
    }
    let m = 2 * k_pm as u64 + 1;
    if gcd(p, m) != 1 {
        return Err(Error::Ramified { p, conductor: m });
    }
    // Over F_2 every element is a square.
    let cond1 = p != 2 && !is_square_mod(2, p)?;
    let cond2 = n % 2 == 1;
    let inertia_degrees = (1..=k_pm as u64)
        .map(|i| inertia_degree(p, m, i))
        .collect::<Result<Vec<_>>>()?;
    let cond3 = inertia_degrees.iter().all(|f| n % f != 0);
    Ok(ConditionReport {
        p,
        n,
        k,
        shape: shape.to_string(),
        k_pm,
        cond1,
        cond2,
        cond3,
        inertia_degrees,
        verdict: cond1 && cond2 && cond3,
    })
}
