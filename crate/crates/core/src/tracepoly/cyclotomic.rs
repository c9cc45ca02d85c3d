//! Exact arithmetic in `Z[x]/Φ_m(x)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::alternating_dickson_sum;
use crate::poly::UniPoly;

/// `Φ_m`, by dividing `x^m - 1` by `Φ_d` for every proper divisor `d` of `m`.
pub fn cyclotomic_polynomial(m: usize) -> UniPoly {
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut p = UniPoly::from_coeffs(
        std::iter::once(BigInt::from(-1))
            .chain(std::iter::repeat_with(BigInt::zero).take(m - 1))
            .chain(std::iter::once(BigInt::one())),
    );
    for d in (1..m).filter(|d| m % d == 0) {
        let (q, r) = p.div_rem_monic(&cyclotomic_polynomial(d));
        debug_assert!(r.is_zero());
        p = q;
    }
    p
}

pub fn euler_phi(m: usize) -> usize {
    (1..=m).filter(|&a| num_integer::gcd(a, m) == 1).count()
}

/// An element of `Z[x]/Φ_m(x)` with exactly `φ(m)` coefficients, low degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicElement {
    m: usize,
    coeffs: Vec<BigInt>,
}

/// The ring `Z[ζ_m]`; holds `Φ_m` so it is computed once.
#[derive(Debug, Clone)]
pub struct CyclotomicRing {
    m: usize,
    modulus: UniPoly,
}

impl CyclotomicRing {
    pub fn new(m: usize) -> Self {
        Self {
            m,
            modulus: cyclotomic_polynomial(m),
        }
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn rank(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn reduce(&self, p: &UniPoly) -> CyclotomicElement {
        let r = p.rem_monic(&self.modulus);
        let coeffs = (0..self.rank()).map(|i| r.coeff(i)).collect();
        CyclotomicElement { m: self.m, coeffs }
    }

    /// `ζ^e` for any integer `e`.
    pub fn zeta_pow(&self, e: i64) -> CyclotomicElement {
        let e = e.rem_euclid(self.m as i64) as usize;
        self.reduce(&UniPoly::term(1, e))
    }

    pub fn from_int(&self, c: impl Into<BigInt>) -> CyclotomicElement {
        self.reduce(&UniPoly::constant(c))
    }

    pub fn add(&self, a: &CyclotomicElement, b: &CyclotomicElement) -> CyclotomicElement {
        CyclotomicElement {
            m: self.m,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn neg(&self, a: &CyclotomicElement) -> CyclotomicElement {
        CyclotomicElement {
            m: self.m,
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, a: &CyclotomicElement, b: &CyclotomicElement) -> CyclotomicElement {
        self.reduce(&(&a.as_poly() * &b.as_poly()))
    }

    /// Evaluates an integer polynomial at `value` by Horner's rule.
    pub fn eval(&self, p: &UniPoly, value: &CyclotomicElement) -> CyclotomicElement {
        p.coeffs().iter().rev().fold(self.from_int(0), |acc, c| {
            self.add(&self.mul(&acc, value), &self.from_int(c.clone()))
        })
    }
}

impl CyclotomicElement {
    pub fn modulus_index(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn as_poly(&self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().cloned())
    }
}

/// Certifies `P(T) = ∏_{i=1}^{k±} (T + ζ^i + ζ^-i)` for `ζ = ζ_{2k±+1}` and
/// `P` the alternating Dickson sum.
///
/// `P` is monic of degree `k±`, and the `k±` numbers `ζ^i + ζ^-i` are
/// pairwise distinct. Grouping `i` by `d = m / gcd(m, i)`, they are the
/// Galois conjugates of `ζ_d + ζ_d^-1` for the divisors `d > 1` of `m`, so it
/// suffices that `-(x + x^{d-1})` is a root of `P` in `Z[x]/Φ_d` for each such `d`.
pub fn cyclotomic_root_check(kpm: usize) -> bool {
    if kpm == 0 {
        return false;
    }
    let p = alternating_dickson_sum(kpm);
    if p.degree() != Some(kpm) || !p.leading_coefficient().is_some_and(One::is_one) {
        return false;
    }
    let m = 2 * kpm + 1;
    (2..=m).filter(|d| m % d == 0).all(|d| root_in(&p, d))
}

/// Is `-(ζ_d + ζ_d^-1)` a root of `p`?
pub fn root_in(p: &UniPoly, d: usize) -> bool {
    let ring = CyclotomicRing::new(d);
    let point = ring.neg(&ring.add(&ring.zeta_pow(1), &ring.zeta_pow(-1)));
    ring.eval(p, &point).is_zero()
}
