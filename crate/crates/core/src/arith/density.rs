use std::fmt;

use num_rational::Ratio;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::primes::{distinct_prime_factors, divisors, gcd, sieve};
use super::{inertia_degree, necessary_congruence};
use crate::error::{Error, Result};

/// An exact density, serialized as `{"fraction": "num/den", "decimal": "0.dddddd"}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Density(pub Ratio<u64>);

impl Density {
    pub fn new(num: u64, den: u64) -> Self {
        Density(Ratio::new(num, den))
    }

    pub fn to_f64(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

#[derive(Serialize, Deserialize)]
struct DensityRepr {
    fraction: String,
    decimal: String,
}

impl Serialize for Density {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DensityRepr {
            fraction: self.to_string(),
            decimal: format!("{:.6}", self.to_f64()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Density {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = DensityRepr::deserialize(deserializer)?;
        let (num, den) = repr
            .fraction
            .split_once('/')
            .ok_or_else(|| D::Error::custom("fraction must be num/den"))?;
        let num: u64 = num.trim().parse().map_err(D::Error::custom)?;
        let den: u64 = den.trim().parse().map_err(D::Error::custom)?;
        if den == 0 {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Density::new(num, den))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub k_pm: i64,
    pub x: u64,
    pub matching_prime_count: u64,
    pub total_prime_count: u64,
    pub empirical_density: Density,
    /// `½ ∏_{ℓ | 2k±+1} (1 - 3/ℓ)` over distinct primes `ℓ`.
    pub paper_density: Density,
    /// `½ ∏_{ℓ | 2k±+1} (ℓ - 3)/(ℓ - 1)`: the share of invertible residue
    /// classes that qualify.
    pub dirichlet_density: Density,
    pub deviation_from_dirichlet: f64,
    pub deviation_from_paper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimeScan {
    pub primes: Vec<u64>,
    /// Every kept prime also has all inertia degrees `>= 2`.
    pub cross_checked: bool,
    pub report: DensityReport,
}

/// `p ≡ 3, 5 (mod 8)`, `p` prime to `m`, and `p^2 ≢ 1` modulo every divisor
/// of `m` larger than one.
pub fn qualifies(p: u64, m: u64) -> bool {
    matches!(p % 8, 3 | 5)
        && gcd(p, m) == 1
        && divisors(m)
            .into_iter()
            .filter(|&d| d > 1)
            .all(|d| (p as u128 * p as u128 % d as u128) as u64 != 1)
}

pub fn scan_primes(kpm: i64, p_max: u64) -> Result<PrimeScan> {
    if kpm < 1 {
        return Err(Error::InvalidArgument(format!("k± = {kpm} must be >= 1")));
    }
    if !necessary_congruence(kpm) {
        return Err(Error::CongruenceViolated { kpm });
    }
    if p_max < 3 {
        return Err(Error::InvalidArgument(format!("bound {p_max} must be >= 3")));
    }
    let m = 2 * kpm as u64 + 1;
    let all = sieve(p_max);
    let primes: Vec<u64> = all.iter().copied().filter(|&p| qualifies(p, m)).collect();
    let cross_checked = primes.iter().all(|&p| {
        (1..=kpm as u64).all(|i| inertia_degree(p, m, i).is_ok_and(|f| f >= 2))
    });

    let ells = distinct_prime_factors(m);
    let prod_ell: u64 = ells.iter().product();
    let prod_ell_minus_3: u64 = ells.iter().map(|l| l - 3).product();
    let prod_ell_minus_1: u64 = ells.iter().map(|l| l - 1).product();
    let paper_density = Density::new(prod_ell_minus_3, 2 * prod_ell);
    let dirichlet_density = Density::new(prod_ell_minus_3, 2 * prod_ell_minus_1);
    let empirical_density = Density::new(primes.len() as u64, all.len() as u64);
    let emp = empirical_density.to_f64();

    Ok(PrimeScan {
        report: DensityReport {
            k_pm: kpm,
            x: p_max,
            matching_prime_count: primes.len() as u64,
            total_prime_count: all.len() as u64,
            empirical_density,
            paper_density,
            dirichlet_density,
            deviation_from_dirichlet: emp - dirichlet_density.to_f64(),
            deviation_from_paper: emp - paper_density.to_f64(),
        },
        primes,
        cross_checked,
    })
}

pub fn density_report(kpm: i64, x: u64) -> Result<DensityReport> {
    Ok(scan_primes(kpm, x)?.report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_to_100() {
        let scan = scan_primes(2, 100).unwrap();
        assert_eq!(scan.primes, vec![3, 13, 37, 43, 53, 67, 83]);
        assert!(scan.cross_checked);
        assert_eq!(scan.report.total_prime_count, 25);
        assert_eq!(scan.report.paper_density, Density::new(1, 5));
        assert_eq!(scan.report.dirichlet_density, Density::new(1, 4));
    }

    #[test]
    fn composite_conductors_use_distinct_primes() {
        // 2k±+1 = 25 and 35
        let r = density_report(12, 1000).unwrap();
        assert_eq!(r.paper_density, Density::new(1, 5));
        assert_eq!(r.dirichlet_density, Density::new(1, 4));
        let r = density_report(17, 1000).unwrap();
        assert_eq!(r.paper_density, Density::new(2 * 4, 2 * 35));
        assert_eq!(r.dirichlet_density, Density::new(2 * 4, 2 * 4 * 6));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(scan_primes(4, 100).unwrap_err(), Error::CongruenceViolated { kpm: 4 });
        assert!(scan_primes(0, 100).is_err());
        assert!(scan_primes(2, 2).is_err());
    }

    #[test]
    fn criterion_matches_inertia_degrees() {
        let primes = sieve(100_000);
        for kpm in [2i64, 3, 5, 6] {
            let m = 2 * kpm as u64 + 1;
            for &p in primes.iter().filter(|&&p| gcd(p, m) == 1) {
                let by_congruence = divisors(m)
                    .into_iter()
                    .filter(|&d| d > 1)
                    .all(|d| (p * p) % d != 1);
                let by_inertia =
                    (1..=kpm as u64).all(|i| inertia_degree(p, m, i).unwrap() >= 2);
                assert_eq!(by_congruence, by_inertia, "k±={kpm} p={p}");
            }
        }
    }

    #[test]
    fn density_json_shape() {
        let v = serde_json::to_value(Density::new(1, 4)).unwrap();
        assert_eq!(v["fraction"], "1/4");
        assert_eq!(v["decimal"], "0.250000");
        let r = density_report(2, 1000).unwrap();
        let back: DensityReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back.empirical_density, r.empirical_density);
        assert_eq!(back.matching_prime_count, r.matching_prime_count);
    }
}
