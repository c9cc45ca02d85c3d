//! Recursive-descent parser for the word language.
//!
//! ```text
//! word   := term+
//! term   := factor ('^' signed-integer)?
//! factor := 'x1' | 'x2' | '1' | '(' word ')' | '[' word ',' word ']'
//! ```
//!
//! Whitespace is ignored, `[a, b]` means `a^-1 b^-1 a b`, and `1` denotes
//! the empty word (the printed form of the identity).

use super::{free_reduce, Letter, Word};
use crate::error::{Error, Result};

pub fn parse_word(text: &str) -> Result<Word> {
    let mut parser = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        len: text.len(),
    };
    let word = parser.word()?;
    parser.skip_ws();
    if let Some((at, c)) = parser.peek() {
        return Err(err(at, format!("unexpected '{c}'")));
    }
    Ok(word)
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(at, _)| at)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some((_, c)) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some((at, c)) => Err(err(at, format!("expected '{want}', found '{c}'"))),
            None => Err(err(self.len, format!("expected '{want}', found end of input"))),
        }
    }

    fn starts_term(&mut self) -> bool {
        matches!(self.peek(), Some((_, 'x' | '1' | '(' | '[')))
    }

    fn word(&mut self) -> Result<Word> {
        if !self.starts_term() {
            let at = self.offset();
            return Err(match self.peek() {
                Some((_, c)) => err(at, format!("expected a term, found '{c}'")),
                None => err(at, "expected a term, found end of input"),
            });
        }
        let mut letters: Vec<Letter> = Vec::new();
        while self.starts_term() {
            letters.extend_from_slice(self.term()?.letters());
        }
        Ok(free_reduce(letters))
    }

    fn term(&mut self) -> Result<Word> {
        let base = self.factor()?;
        if matches!(self.peek(), Some((_, '^'))) {
            self.pos += 1;
            let exponent = self.signed_integer()?;
            Ok(base.pow(exponent))
        } else {
            Ok(base)
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let (at, c) = self
            .peek()
            .ok_or_else(|| err(self.len, "unexpected end of input"))?;
        match c {
            'x' => {
                self.pos += 1;
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|(_, d)| d.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().map(|&(_, d)| d).collect();
                match digits.as_str() {
                    "1" => Ok(Letter::X1.into()),
                    "2" => Ok(Letter::X2.into()),
                    "" => Err(err(at, "expected generator index after 'x'")),
                    other => Err(err(at, format!("unknown generator x{other}"))),
                }
            }
            '1' => {
                self.pos += 1;
                Ok(Word::empty())
            }
            '(' => {
                self.pos += 1;
                let inner = self.word()?;
                self.expect(')')?;
                Ok(inner)
            }
            '[' => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(',')?;
                let b = self.word()?;
                self.expect(']')?;
                Ok(a.commutator(&b))
            }
            other => Err(err(at, format!("unexpected '{other}'"))),
        }
    }

    fn signed_integer(&mut self) -> Result<i64> {
        let mut negative = false;
        if let Some((_, c @ ('-' | '+'))) = self.peek() {
            negative = c == '-';
            self.pos += 1;
        }
        let at = self.offset();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|(_, d)| d.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(at, "expected an integer exponent"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, d)| d).collect();
        let value: i64 = digits
            .parse()
            .map_err(|_| err(at, format!("exponent {digits} out of range")))?;
        Ok(if negative { -value } else { value })
    }
}
