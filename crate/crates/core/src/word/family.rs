use std::fmt;
use std::str::FromStr;

use super::{Sign, Word};
use crate::error::{Error, Result};

/// Which of the three word shapes built from `y_k` is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// `x1^2 y_k`, length `6k + 2`.
    X2Yk,
    /// `x1^-2 y_k`, length `6k - 2` after reduction.
    XNeg2Yk,
    /// `x1^2 y_{-k}`, length `6k + 2`.
    X2YNegk,
}

impl Shape {
    pub const ALL: [Shape; 3] = [Shape::X2Yk, Shape::XNeg2Yk, Shape::X2YNegk];

    pub fn name(self) -> &'static str {
        match self {
            Shape::X2Yk => "x2yk",
            Shape::XNeg2Yk => "xneg2yk",
            Shape::X2YNegk => "x2ynegk",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Shape> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x2yk" | "x2_yk" => Ok(Shape::X2Yk),
            "xneg2yk" | "xneg2_yk" | "x-2yk" => Ok(Shape::XNeg2Yk),
            "x2ynegk" | "x2_ynegk" | "x2y-k" => Ok(Shape::X2YNegk),
            other => Err(Error::InvalidArgument(format!(
                "unknown shape '{other}' (expected x2yk, xneg2yk or x2ynegk)"
            ))),
        }
    }
}

/// The effective index `k±`: `k` for `x1^2 y_k`, `k - 1` for `x1^-2 y_k`
/// and `x1^2 y_{-k}`. Everything else that needs `k±` goes through here.
pub fn kpm(k: i64, shape: Shape) -> i64 {
    match shape {
        Shape::X2Yk => k,
        Shape::XNeg2Yk | Shape::X2YNegk => k - 1,
    }
}

/// `y_1 = x1^2 x2 x1^{±2} x2^-1` with the inner sign, and the power `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WordFamily {
    pub inner: Sign,
    pub k: i64,
}

impl WordFamily {
    pub fn new(inner: Sign, k: i64) -> Result<WordFamily> {
        if k < 1 {
            return Err(Error::InvalidArgument(format!("family index k = {k} must be >= 1")));
        }
        Ok(WordFamily { inner, k })
    }

    pub fn y1(inner: Sign) -> Word {
        let e = 2 * inner.as_i64();
        let x1 = Word::x1();
        let x2 = Word::x2();
        x1.pow(2)
            .concat(&x2)
            .concat(&x1.pow(e))
            .concat(&x2.inverse())
    }

    /// `y_j = y_1^j` for any integer `j`.
    pub fn y(inner: Sign, j: i64) -> Word {
        WordFamily::y1(inner).pow(j)
    }

    pub fn build(&self, shape: Shape) -> Word {
        let x1 = Word::x1();
        match shape {
            Shape::X2Yk => x1.pow(2).concat(&WordFamily::y(self.inner, self.k)),
            Shape::XNeg2Yk => x1.pow(-2).concat(&WordFamily::y(self.inner, self.k)),
            Shape::X2YNegk => x1.pow(2).concat(&WordFamily::y(self.inner, -self.k)),
        }
    }

    pub fn kpm(&self, shape: Shape) -> i64 {
        kpm(self.k, shape)
    }
}

/// A family selector as accepted on the command line: `shape:sign,k=K`,
/// e.g. `x2yk:+,k=2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySelector {
    pub shape: Shape,
    pub family: WordFamily,
}

impl FamilySelector {
    pub fn word(&self) -> Word {
        self.family.build(self.shape)
    }

    pub fn kpm(&self) -> i64 {
        self.family.kpm(self.shape)
    }
}

impl fmt::Display for FamilySelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{},k={}", self.shape, self.family.inner.symbol(), self.family.k)
    }
}

impl FromStr for FamilySelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySelector> {
        let bad = || {
            Error::InvalidArgument(format!(
                "malformed family '{s}' (expected e.g. x2yk:+,k=2)"
            ))
        };
        let (shape, rest) = s.split_once(':').ok_or_else(bad)?;
        let (sign, k) = rest.split_once(',').ok_or_else(bad)?;
        let inner = match sign.trim() {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            _ => return Err(bad()),
        };
        let k = k.trim().strip_prefix("k=").ok_or_else(bad)?;
        let k: i64 = k.trim().parse().map_err(|_| bad())?;
        Ok(FamilySelector {
            shape: shape.parse()?,
            family: WordFamily::new(inner, k)?,
        })
    }
}
