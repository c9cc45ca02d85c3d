//! Exact integer polynomials: sparse trivariate `Z[s, t, u]` and dense
//! univariate `Z[T]`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponents of `s`, `t`, `u`.
pub type Monomial = [u32; 3];

const VARS: [char; 3] = ['s', 't', 'u'];

/// Sparse polynomial in `Z[s, t, u]`. No stored coefficient is zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TracePolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl TracePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(exponents: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        Self { terms }
    }

    pub fn s() -> Self {
        Self::monomial([1, 0, 0], 1)
    }

    pub fn t() -> Self {
        Self::monomial([0, 1, 0], 1)
    }

    pub fn u() -> Self {
        Self::monomial([0, 0, 1], 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: Monomial) -> BigInt {
        self.terms.get(&exponents).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Terms in graded-lexicographic descending order.
    pub fn terms(&self) -> Vec<(Monomial, &BigInt)> {
        let mut out: Vec<(Monomial, &BigInt)> = self.terms.iter().map(|(m, c)| (*m, c)).collect();
        out.sort_by_key(|(m, _)| Reverse((m[0] + m[1] + m[2], *m)));
        out
    }

    fn add_term(&mut self, exponents: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiplies by `s^a t^b u^c`.
    pub fn shift(&self, by: Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| ([m[0] + by[0], m[1] + by[1], m[2] + by[2]], v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at integer points.
    pub fn eval(&self, s: &BigInt, t: &BigInt, u: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| c * num_traits::pow(s.clone(), m[0] as usize)
                * num_traits::pow(t.clone(), m[1] as usize)
                * num_traits::pow(u.clone(), m[2] as usize))
            .sum()
    }

    /// Iterator over `(exponents, coefficient)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }
}

impl<'a> Add<&'a TracePolynomial> for &'a TracePolynomial {
    type Output = TracePolynomial;

    fn add(self, rhs: &TracePolynomial) -> TracePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a TracePolynomial> for &'a TracePolynomial {
    type Output = TracePolynomial;

    fn sub(self, rhs: &TracePolynomial) -> TracePolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a TracePolynomial> for &'a TracePolynomial {
    type Output = TracePolynomial;

    fn mul(self, rhs: &TracePolynomial) -> TracePolynomial {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
                *acc.entry(m).or_default() += ca * cb;
            }
        }
        TracePolynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &TracePolynomial {
    type Output = TracePolynomial;

    fn neg(self) -> TracePolynomial {
        TracePolynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<TracePolynomial> for TracePolynomial {
            type Output = TracePolynomial;
            fn $method(self, rhs: TracePolynomial) -> TracePolynomial {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a TracePolynomial> for TracePolynomial {
            type Output = TracePolynomial;
            fn $method(self, rhs: &TracePolynomial) -> TracePolynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for TracePolynomial {
    type Output = TracePolynomial;
    fn neg(self) -> TracePolynomial {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial, coeff: &BigInt) -> fmt::Result {
    let is_const = m.iter().all(|&e| e == 0);
    let mut first = true;
    if is_const || !coeff.is_one() {
        write!(f, "{coeff}")?;
        first = false;
    }
    for (var, &e) in VARS.iter().zip(m.iter()) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{var}")?;
        } else {
            write!(f, "{var}^{e}")?;
        }
    }
    Ok(())
}

/// Graded-lex descending, e.g. `s^2*t - 2*u + 3`; unit coefficients and
/// exponents are elided.
impl fmt::Display for TracePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().into_iter().enumerate() {
            let magnitude = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_monomial(f, &m, &magnitude)?;
        }
        Ok(())
    }
}

impl FromStr for TracePolynomial {
    type Err = Error;

    /// Parses the printed form (and any sum of `*`-separated products of
    /// integers and `s`, `t`, `u` powers).
    fn from_str(text: &str) -> Result<Self> {
        let err = |position: usize, message: &str| Error::Parse {
            position,
            message: message.to_string(),
        };
        let compact: Vec<(usize, char)> = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i, if c == '\u{2212}' { '-' } else { c }))
            .collect();
        if compact.is_empty() {
            return Err(err(0, "empty polynomial"));
        }
        let mut out = TracePolynomial::zero();
        let mut pos = 0;
        while pos < compact.len() {
            let mut negative = false;
            match compact[pos].1 {
                '+' | '-' => {
                    negative = compact[pos].1 == '-';
                    pos += 1;
                }
                _ if pos > 0 => return Err(err(compact[pos].0, "expected '+' or '-'")),
                _ => {}
            }
            let mut coeff = BigInt::one();
            let mut exps: Monomial = [0, 0, 0];
            loop {
                let &(at, c) = compact
                    .get(pos)
                    .ok_or_else(|| err(text.len(), "expected a factor"))?;
                if c.is_ascii_digit() {
                    let start = pos;
                    while compact.get(pos).is_some_and(|(_, d)| d.is_ascii_digit()) {
                        pos += 1;
                    }
                    let digits: String = compact[start..pos].iter().map(|&(_, d)| d).collect();
                    coeff *= digits.parse::<BigInt>().map_err(|_| err(at, "bad integer"))?;
                } else if let Some(v) = VARS.iter().position(|&v| v == c) {
                    pos += 1;
                    let mut e = 1u32;
                    if compact.get(pos).is_some_and(|&(_, d)| d == '^') {
                        pos += 1;
                        let start = pos;
                        while compact.get(pos).is_some_and(|(_, d)| d.is_ascii_digit()) {
                            pos += 1;
                        }
                        let digits: String = compact[start..pos].iter().map(|&(_, d)| d).collect();
                        e = digits.parse().map_err(|_| err(at, "bad exponent"))?;
                    }
                    exps[v] += e;
                } else {
                    return Err(err(at, "expected an integer or one of s, t, u"));
                }
                if compact.get(pos).is_some_and(|&(_, d)| d == '*') {
                    pos += 1;
                } else {
                    break;
                }
            }
            out.add_term(exps, if negative { -coeff } else { coeff });
        }
        Ok(out)
    }
}

/// Dense polynomial in `Z[T]`, coefficients low degree first, no trailing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn from_coeffs<C: Into<BigInt>, I: IntoIterator<Item = C>>(coeffs: I) -> Self {
        let mut p = UniPoly {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs([c.into()])
    }

    /// `c * T^d`.
    pub fn term(c: impl Into<BigInt>, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d];
        coeffs.push(c.into());
        Self::from_coeffs(coeffs)
    }

    pub fn var() -> Self {
        Self::term(1, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c))
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        assert!(divisor.coeffs[dd].is_one(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..dd {
                rem[i - dd + j] -= &c * &divisor.coeffs[j];
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    pub fn rem_monic(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem_monic(divisor).1
    }

    /// Substitutes `T := value` by Horner's rule.
    pub fn compose(&self, value: &TracePolynomial) -> TracePolynomial {
        let mut acc = TracePolynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * value) + &TracePolynomial::constant(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| {
            acc * x + c.to_string().parse::<f64>().unwrap_or(f64::NAN)
        })
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let first = out.is_empty();
            match (first, c.is_negative()) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            let mag = c.abs();
            match (d, mag.is_one()) {
                (0, _) => out.push_str(&mag.to_string()),
                (1, true) => out.push_str(var),
                (1, false) => out.push_str(&format!("{mag}*{var}")),
                (_, true) => out.push_str(&format!("{var}^{d}")),
                (_, false) => out.push_str(&format!("{mag}*{var}^{d}")),
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("T"))
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)))
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)))
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }
}
