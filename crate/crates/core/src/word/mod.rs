//! Reduced words in the free group on `x1`, `x2`.

mod family;
mod parse;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use family::{kpm, FamilySelector, Shape, WordFamily};
pub use parse::parse_word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A generator `x1` or `x2` raised to `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: u8,
    sign: Sign,
}

impl Letter {
    pub const X1: Letter = Letter { generator: 1, sign: Sign::Plus };
    pub const X1_INV: Letter = Letter { generator: 1, sign: Sign::Minus };
    pub const X2: Letter = Letter { generator: 2, sign: Sign::Plus };
    pub const X2_INV: Letter = Letter { generator: 2, sign: Sign::Minus };

    /// All four letters, in the order `x1, x1^-1, x2, x2^-1`.
    pub const ALL: [Letter; 4] = [Letter::X1, Letter::X1_INV, Letter::X2, Letter::X2_INV];

    pub fn new(generator: u8, sign: Sign) -> Result<Letter> {
        if generator == 1 || generator == 2 {
            Ok(Letter { generator, sign })
        } else {
            Err(Error::InvalidArgument(format!(
                "generator index {generator} is not 1 or 2"
            )))
        }
    }

    pub fn generator(self) -> u8 {
        self.generator
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn inverse(self) -> Letter {
        Letter {
            generator: self.generator,
            sign: self.sign.flip(),
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.sign != other.sign
    }
}

/// A freely reduced word. Every constructor reduces, so the invariant holds
/// for every value of this type.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Freely reduces a letter sequence with a single stack pass.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for letter in letters {
        if out.last().is_some_and(|&last| last.cancels(letter)) {
            out.pop();
        } else {
            out.push(letter);
        }
    }
    Word { letters: out }
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn generator(index: u8) -> Result<Word> {
        Ok(Word {
            letters: vec![Letter::new(index, Sign::Plus)?],
        })
    }

    pub fn x1() -> Word {
        Word { letters: vec![Letter::X1] }
    }

    pub fn x2() -> Word {
        Word { letters: vec![Letter::X2] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        free_reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        // The reverse of a reduced word with flipped signs is reduced.
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, exponent: i64) -> Word {
        if exponent < 0 {
            return self.inverse().pow(-exponent);
        }
        let mut acc = Word::empty();
        for _ in 0..exponent {
            acc = acc.concat(self);
        }
        acc
    }

    /// `self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Word) -> Word {
        free_reduce(
            self.inverse()
                .letters
                .iter()
                .chain(other.inverse().letters.iter())
                .chain(self.letters.iter())
                .chain(other.letters.iter())
                .copied(),
        )
    }

    pub fn exponent_sum(&self, generator: u8) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| l.sign.as_i64())
            .sum()
    }

    /// Splits the word as `c · core · c^-1` with `core` cyclically reduced.
    pub fn cyclic_decomposition(&self) -> (Word, Word) {
        let n = self.letters.len();
        let mut peel = 0;
        while 2 * peel + 1 < n && self.letters[peel].cancels(self.letters[n - 1 - peel]) {
            peel += 1;
        }
        let conjugator = Word {
            letters: self.letters[..peel].to_vec(),
        };
        let core = Word {
            letters: self.letters[peel..n - peel].to_vec(),
        };
        (conjugator, core)
    }

    pub fn cyclic_reduction(&self) -> Word {
        self.cyclic_decomposition().1
    }

    /// Returns `Some((root, exponent))` with maximal exponent `>= 2` when the
    /// word is a proper power `root^exponent`; the root is a root of `self`
    /// itself, not of its cyclic reduction.
    pub fn proper_power(&self) -> Result<Option<(Word, u32)>> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let (conjugator, core) = self.cyclic_decomposition();
        let len = core.len();
        // The smallest period that divides the length gives the largest exponent.
        let period = (1..len)
            .filter(|d| len % d == 0)
            .find(|&d| (d..len).all(|i| core.letters[i] == core.letters[i - d]));
        Ok(period.map(|d| {
            let base = Word {
                letters: core.letters[..d].to_vec(),
            };
            let root = conjugator.concat(&base).concat(&conjugator.inverse());
            (root, (len / d) as u32)
        }))
    }

    pub fn is_proper_power(&self) -> Result<bool> {
        Ok(self.proper_power()?.is_some())
    }

    /// Maximal runs `(letter, count)` of one repeated letter.
    pub fn runs(&self) -> Vec<(Letter, usize)> {
        let mut runs: Vec<(Letter, usize)> = Vec::new();
        for &l in &self.letters {
            match runs.last_mut() {
                Some((last, count)) if *last == l => *count += 1,
                _ => runs.push((l, 1)),
            }
        }
        runs
    }
}

impl From<Letter> for Word {
    fn from(letter: Letter) -> Word {
        Word { letters: vec![letter] }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        free_reduce(iter)
    }
}

/// Canonical run-length form, e.g. `x1^2 x2 x1^-2 x2^-1`. The empty word
/// prints as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (idx, (letter, count)) in self.runs().into_iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{}", letter.generator)?;
            let exponent = count as i64 * letter.sign.as_i64();
            if exponent != 1 {
                write!(f, "^{exponent}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        parse_word(s)
    }
}
