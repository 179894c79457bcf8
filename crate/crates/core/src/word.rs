//! Letters, words and the cyclic page symmetry.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// Shape of the local picture at an axis point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
    C,
    D,
    X,
}

impl Kind {
    pub const ALL: [Kind; 5] = [Kind::A, Kind::B, Kind::C, Kind::D, Kind::X];

    pub fn symbol(self) -> char {
        match self {
            Kind::A => 'a',
            Kind::B => 'b',
            Kind::C => 'c',
            Kind::D => 'd',
            Kind::X => 'x',
        }
    }

    fn from_symbol(c: char) -> Option<Kind> {
        Some(match c {
            'a' => Kind::A,
            'b' => Kind::B,
            'c' => Kind::C,
            'd' => Kind::D,
            'x' => Kind::X,
            _ => return None,
        })
    }
}

/// One of the 15 generators: a kind together with an index in Z/3.
///
/// Packed into a single byte (`kind * 3 + index`) so that words stay compact
/// inside the search engine.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub fn new(kind: Kind, index: u8) -> Letter {
        Letter(kind as u8 * 3 + index % 3)
    }

    pub fn kind(self) -> Kind {
        Kind::ALL[(self.0 / 3) as usize]
    }

    pub fn index(self) -> u8 {
        self.0 % 3
    }

    /// Dense code in `0..15`.
    pub fn code(self) -> u8 {
        self.0
    }

    pub fn from_code(code: u8) -> Letter {
        assert!(code < 15, "letter code out of range: {code}");
        Letter(code)
    }

    /// Shift the index by `k` (mod 3).
    pub fn rotate(self, k: u8) -> Letter {
        Letter::new(self.kind(), self.index() + k % 3)
    }

    pub fn is_singular(self) -> bool {
        self.kind() == Kind::X
    }

    /// All 15 generators in code order.
    pub fn all() -> impl Iterator<Item = Letter> {
        (0..15).map(Letter)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind().symbol(), self.index())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Letter {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Letter, ParseError> {
        parse_token(s, 0)
    }
}

fn parse_token(token: &str, position: usize) -> Result<Letter, ParseError> {
    let bad = || ParseError::Token {
        token: token.to_string(),
        position,
    };
    let mut chars = token.chars();
    let kind = chars.next().and_then(Kind::from_symbol).ok_or_else(bad)?;
    let index = match chars.next() {
        Some(c @ '0'..='2') => c as u8 - b'0',
        _ => return Err(bad()),
    };
    if chars.next().is_some() {
        return Err(bad());
    }
    Ok(Letter::new(kind, index))
}

/// A finite word in the 15 letters. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Shift every index by `k` (mod 3).
    pub fn rotate(&self, k: u8) -> Word {
        Word(self.0.iter().map(|l| l.rotate(k)).collect())
    }

    pub fn singular_count(&self) -> usize {
        self.0.iter().filter(|l| l.is_singular()).count()
    }

    pub fn is_classical(&self) -> bool {
        self.singular_count() == 0
    }

    /// Does `pattern` occur at `pos`?
    pub fn matches_at(&self, pattern: &[Letter], pos: usize) -> bool {
        self.0.get(pos..pos + pattern.len()) == Some(pattern)
    }

    /// Replace `len` letters starting at `pos` with `with`.
    pub fn splice(&self, pos: usize, len: usize, with: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.len() - len + with.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(with);
        v.extend_from_slice(&self.0[pos + len..]);
        Word(v)
    }

    /// Length-then-lexicographic order, used wherever a canonical
    /// representative is picked.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Word {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

/// Parse whitespace-separated tokens such as `"a0 b1 x2"`.
pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    text.split_whitespace()
        .enumerate()
        .map(|(i, tok)| parse_token(tok, i))
        .collect()
}

/// Inverse of [`parse_word`]; tokens joined by single spaces.
pub fn format_word(w: &Word) -> String {
    w.to_string()
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Word, ParseError> {
        parse_word(s)
    }
}

impl TryFrom<String> for Word {
    type Error = ParseError;

    fn try_from(s: String) -> Result<Word, ParseError> {
        parse_word(&s)
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// Convenience for tests and examples: panics on malformed input.
#[macro_export]
macro_rules! word {
    ($s:expr) => {
        $crate::word::parse_word($s).expect("valid word literal")
    };
}
