//! Arithmetic in `F_{p^n}` for odd `p`, `SL2`/`PSL2` matrices over it, and the
//! image certificates for word maps.

mod image;
mod matrix;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

pub use image::{
    enumerate_image_pairs, eval_trace_poly, trace_scan, Budget, ImageReport, Method, TraceEvaluator,
};
pub use matrix::{eval_word, Mat2};

/// A field element, stored as the base-`p` integer `Σ c_i p^i` of its
/// coefficients `c_0, …, c_{n-1}` in the polynomial basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Upper bound on `q` for which addition and multiplication tables are built.
const TABLE_LIMIT: usize = 1024;
/// Largest supported field order; packed `PSL2` keys need `q^4 < 2^64`.
const MAX_ORDER: u64 = 1 << 16;

#[derive(Clone)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

/// `F_p[x]/(f)` with `f` the lexicographically smallest monic irreducible of
/// degree `n`, comparing coefficient tuples `(c_0, …, c_{n-1})` low degree first.
#[derive(Clone)]
pub struct FiniteField {
    p: u64,
    n: usize,
    q: usize,
    /// Monic, low degree first, length `n + 1`.
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Serializable description of a field, included in report headers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub n: usize,
    pub q: u64,
    pub modulus: Vec<u64>,
}

impl FiniteField {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidField("even characteristic is not supported".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        let q = (p as u128).checked_pow(n as u32).filter(|&q| q <= MAX_ORDER as u128);
        let q = q.ok_or_else(|| {
            Error::InvalidField(format!("{p}^{n} exceeds the supported order {MAX_ORDER}"))
        })? as usize;
        let modulus = smallest_irreducible(p, n)
            .ok_or_else(|| Error::InvalidField(format!("no irreducible of degree {n} over F_{p}")))?;
        let mut field = FiniteField {
            p,
            n,
            q,
            modulus,
            tables: None,
        };
        if n > 1 && q <= TABLE_LIMIT {
            let mut add = vec![0u32; q * q];
            let mut mul = vec![0u32; q * q];
            for a in 0..q {
                for b in 0..q {
                    add[a * q + b] = field.add_slow(Fq(a as u32), Fq(b as u32)).0;
                    mul[a * q + b] = field.mul_slow(Fq(a as u32), Fq(b as u32)).0;
                }
            }
            field.tables = Some(Tables { add, mul });
        }
        Ok(field)
    }

    /// Builds `F_q` from a prime power `q`.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Self::new(p, n)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            n: self.n,
            q: self.q as u64,
            modulus: self.modulus.clone(),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q as u32).map(Fq)
    }

    pub fn coeffs(&self, a: Fq) -> Vec<u64> {
        let mut v = a.0 as u64;
        (0..self.n)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Fq {
        assert!(coeffs.len() <= self.n, "too many coefficients");
        let v = coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p + c % self.p);
        Fq(v as u32)
    }

    /// The image of an integer under `Z -> F_p ⊂ F_q`.
    pub fn from_int(&self, c: i64) -> Fq {
        Fq(c.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_bigint(&self, c: &BigInt) -> Fq {
        let r = c.mod_floor(&BigInt::from(self.p));
        Fq(r.to_u32().expect("residue fits"))
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.n == 1 {
            return Fq(((a.0 as u64 + b.0 as u64) % self.p) as u32);
        }
        match &self.tables {
            Some(t) => Fq(t.add[a.index() * self.q + b.index()]),
            None => self.add_slow(a, b),
        }
    }

    pub fn neg(&self, a: Fq) -> Fq {
        if self.n == 1 {
            return Fq(((self.p - a.0 as u64) % self.p) as u32);
        }
        let c: Vec<u64> = self.coeffs(a).iter().map(|&c| (self.p - c) % self.p).collect();
        self.from_coeffs(&c)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if self.n == 1 {
            return Fq(((a.0 as u64 * b.0 as u64) % self.p) as u32);
        }
        match &self.tables {
            Some(t) => Fq(t.mul[a.index() * self.q + b.index()]),
            None => self.mul_slow(a, b),
        }
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        (a != Fq::ZERO).then(|| self.pow(a, self.q as u64 - 2))
    }

    pub fn is_square(&self, a: Fq) -> bool {
        a == Fq::ZERO || self.pow(a, (self.q as u64 - 1) / 2) == Fq::ONE
    }

    fn add_slow(&self, a: Fq, b: Fq) -> Fq {
        let c: Vec<u64> = self
            .coeffs(a)
            .iter()
            .zip(self.coeffs(b))
            .map(|(x, y)| (x + y) % self.p)
            .collect();
        self.from_coeffs(&c)
    }

    fn mul_slow(&self, a: Fq, b: Fq) -> Fq {
        let prod = poly_mul(&self.coeffs(a), &self.coeffs(b), self.p);
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.n, 0);
        self.from_coeffs(&r)
    }
}

/// `q = p^n` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut n = 0;
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

// Polynomials over F_p as coefficient vectors, low degree first.

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    let mut r = trim(a.to_vec());
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        for j in 0..=dm {
            let idx = top - dm + j;
            r[idx] = (r[idx] + p - c * m[j] % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `base^(p^times)` modulo `m`, by repeated `p`-th powering.
fn frobenius_iterate(base: &[u64], times: usize, m: &[u64], p: u64) -> Vec<u64> {
    let mut cur = poly_rem(base, m, p);
    for _ in 0..times {
        let mut acc = vec![1u64];
        let mut b = cur.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
            }
            b = poly_rem(&poly_mul(&b, &b, p), m, p);
            e >>= 1;
        }
        cur = acc;
    }
    cur
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `f` of degree `n` is irreducible over `F_p` iff
/// `x^{p^n} ≡ x (mod f)` and `gcd(x^{p^{n/r}} - x, f) = 1` for each prime `r | n`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f = trim(f.to_vec());
    let n = match f.len().checked_sub(1) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    if poly_sub(&frobenius_iterate(&x, n, &f, p), &x, p) != Vec::<u64>::new() {
        return false;
    }
    prime_factors(n).into_iter().all(|r| {
        let h = poly_sub(&frobenius_iterate(&x, n / r, &f, p), &x, p);
        poly_gcd(&h, &f, p).len() == 1
    })
}

fn smallest_irreducible(p: u64, n: usize) -> Option<Vec<u64>> {
    let count = p.checked_pow(n as u32)?;
    (0..count).find_map(|idx| {
        // c_0 is the most significant digit of idx.
        let mut digits = vec![0u64; n];
        let mut v = idx;
        for slot in digits.iter_mut().rev() {
            *slot = v % p;
            v /= p;
        }
        let mut f = digits;
        f.push(1);
        is_irreducible(&f, p).then_some(f)
    })
}
