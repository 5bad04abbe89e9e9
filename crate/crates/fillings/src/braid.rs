//! Positive braid words.
//!
//! Textual syntax (see `docs/braid-grammar.md`):
//!
//! ```text
//! braid     = { factor } ;
//! factor    = atom [ "^" integer ] ;
//! atom      = generator | "(" braid ")" ;
//! generator = "s" integer ;
//! ```
//!
//! Whitespace between tokens is optional, so `(s1 s2)^3`, `(s1s2)^3` and
//! `s1 s2 s1 s2 s1 s2` all denote the same word.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    n: usize,
    letters: Vec<usize>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidBraid(format!("need at least 2 strands, got {n}")));
        }
        if let Some(&bad) = letters.iter().find(|&&i| i == 0 || i >= n) {
            return Err(Error::InvalidBraid(format!("generator s{bad} out of range for {n} strands")));
        }
        Ok(BraidWord { n, letters })
    }

    /// Parses a word; the strand count is one more than the largest generator
    /// (at least 2).
    pub fn parse(text: &str) -> Result<Self, Error> {
        let letters = Parser::new(text).parse_all()?;
        let n = letters.iter().copied().max().unwrap_or(1) + 1;
        Self::new(n, letters)
    }

    /// Parses a word on an explicit number of strands.
    pub fn parse_with_strands(text: &str, n: usize) -> Result<Self, Error> {
        let letters = Parser::new(text).parse_all()?;
        Self::new(n, letters)
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The half twist `Δ = (s1)(s2 s1)(s3 s2 s1)…`.
    pub fn half_twist(n: usize) -> Self {
        let mut letters = Vec::new();
        for k in 1..n {
            letters.extend((1..=k).rev());
        }
        BraidWord { n, letters }
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.n, other.n);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { n: self.n, letters }
    }

    pub fn reversed(&self) -> BraidWord {
        BraidWord { n: self.n, letters: self.letters.iter().rev().copied().collect() }
    }

    /// Positions (1-based) of the letters on each level `1..n`.
    pub fn positions_by_level(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n - 1];
        for (t, &i) in self.letters.iter().enumerate() {
            out[i - 1].push(t + 1);
        }
        out
    }

    /// Image of the word in the symmetric group, as `perm[k] = image of k`
    /// (0-based), composing letters left to right.
    pub fn permutation(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.n).collect();
        for &i in &self.letters {
            p.swap(i - 1, i);
        }
        p
    }

    /// Number of inversions of [`permutation`](Self::permutation).
    pub fn permutation_length(&self) -> usize {
        let p = self.permutation();
        let mut inv = 0;
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                if p[a] > p[b] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// True when the word is a reduced expression of the longest element.
    pub fn is_reduced_longest(&self) -> bool {
        let top = self.n * (self.n - 1) / 2;
        self.len() == top && self.permutation_length() == top
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.letters.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::InvalidBraid(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<usize, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer too large"))
    }

    fn parse_all(mut self) -> Result<Vec<usize>, Error> {
        let word = self.braid()?;
        if self.peek().is_some() {
            return Err(self.err("unexpected character"));
        }
        Ok(word)
    }

    fn braid(&mut self) -> Result<Vec<usize>, Error> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            if c == b')' {
                break;
            }
            out.extend(self.factor()?);
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<Vec<usize>, Error> {
        let atom = match self.peek() {
            Some(b's') => {
                self.pos += 1;
                vec![self.integer()?]
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.braid()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("unbalanced parenthesis"));
                }
                self.pos += 1;
                inner
            }
            _ => return Err(self.err("expected a generator or '('")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer()?;
            if k > 4096 || atom.len().saturating_mul(k) > 1 << 20 {
                return Err(self.err("repetition too large"));
            }
            Ok(atom.repeat(k))
        } else {
            Ok(atom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let a = BraidWord::parse("(s1 s2)^3").unwrap();
        let b = BraidWord::parse("(s1s2)^3").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.letters(), &[1, 2, 1, 2, 1, 2]);
        assert_eq!(BraidWord::parse("s1^3").unwrap().letters(), &[1, 1, 1]);
        assert_eq!(BraidWord::parse("((s1 s2 s2))^2").unwrap().len(), 6);
    }

    #[test]
    fn parse_errors() {
        assert!(BraidWord::parse("(s1").is_err());
        assert!(BraidWord::parse("t1").is_err());
        assert!(BraidWord::parse_with_strands("s3", 3).is_err());
    }

    #[test]
    fn half_twist_words() {
        assert_eq!(BraidWord::half_twist(3).letters(), &[1, 2, 1]);
        assert_eq!(BraidWord::half_twist(4).letters(), &[1, 2, 1, 3, 2, 1]);
        assert!(BraidWord::half_twist(5).is_reduced_longest());
        assert!(BraidWord::half_twist(4).reversed().is_reduced_longest());
    }
}
