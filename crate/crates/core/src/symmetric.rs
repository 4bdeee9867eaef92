//! Binary words, permutations in one-line notation, and the recursion state.
//!
//! Conventions fixed project-wide:
//!   - words are read left to right and serialized as bit-strings ("110010");
//!     the recursion always acts on the rightmost character;
//!   - composition applies the right factor first: `(a * b)(i) = a(b(i))`;
//!   - the partial trace closes the last strand.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A finite sequence over {0, 1}, packed into a u64 (so at most 64 letters).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word {
    bits: u64,
    len: u8,
}

pub const MAX_WORD_LEN: usize = 64;

impl Word {
    pub fn empty() -> Self {
        Word { bits: 0, len: 0 }
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        if bits.len() > MAX_WORD_LEN {
            return Err(Error::InvalidState(format!(
                "word length {} exceeds the supported maximum {}",
                bits.len(),
                MAX_WORD_LEN
            )));
        }
        let mut packed = 0u64;
        for (i, &b) in bits.iter().enumerate() {
            if b {
                packed |= 1 << i;
            }
        }
        Ok(Word {
            bits: packed,
            len: bits.len() as u8,
        })
    }

    /// `1^ones 0^zeros`.
    pub fn ones_then_zeros(ones: usize, zeros: usize) -> Result<Self> {
        let mut bits = Vec::with_capacity(ones + zeros);
        bits.extend(core::iter::repeat(true).take(ones));
        bits.extend(core::iter::repeat(false).take(zeros));
        Word::from_bits(&bits)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn ones(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }

    pub fn bit(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        self.bits & (1 << i) != 0
    }

    pub fn last(&self) -> Option<bool> {
        if self.len == 0 {
            None
        } else {
            Some(self.bit(self.len() - 1))
        }
    }

    /// Split off the rightmost letter.
    pub fn split_last(&self) -> Option<(Word, bool)> {
        let last = self.last()?;
        let len = self.len - 1;
        Some((
            Word {
                bits: self.bits & !(1u64 << len),
                len,
            },
            last,
        ))
    }

    /// Prepend a letter on the left.
    pub fn prepend(&self, bit: bool) -> Result<Word> {
        if self.len() + 1 > MAX_WORD_LEN {
            return Err(Error::InvalidState("word length overflow".to_string()));
        }
        Ok(Word {
            bits: (self.bits << 1) | (bit as u64),
            len: self.len + 1,
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.bit(i))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(Error::Parse(format!("invalid word character '{c}'"))),
            }
        }
        Word::from_bits(&bits)
    }
}

/// A permutation of {1..n} in one-line notation; `images[i]` is the image of
/// `i + 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n as u8).collect(),
        }
    }

    pub fn from_one_line(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        if n > 255 {
            return Err(Error::Parse("permutation too large".to_string()));
        }
        let mut seen = alloc::vec![false; n];
        for &v in &images {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(Error::Parse(format!(
                    "not a bijection of 1..{n}: image list {images:?}"
                )));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Image of `i` (1-indexed).
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Whether the last strand is fixed, the branch condition of the two
    /// trailing-(1,1) rules.
    pub fn fixes_last(&self) -> bool {
        let n = self.size();
        n == 0 || self.apply(n) == n
    }

    /// `(self * other)(i) = self(other(i))`: `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(Permutation {
            images: (1..=self.size())
                .map(|i| self.apply(other.apply(i)) as u8)
                .collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = alloc::vec![0u8; self.size()];
        for i in 1..=self.size() {
            images[self.apply(i) - 1] = i as u8;
        }
        Permutation { images }
    }

    /// Close up the last strand of the string diagram: the resulting
    /// permutation sends i to sigma(i) unless sigma(i) = n, in which case it
    /// sends i to sigma(n).
    pub fn partial_trace(&self) -> Result<Permutation> {
        let n = self.size();
        if n == 0 {
            return Err(Error::InvalidState(
                "partial trace of the empty permutation".to_string(),
            ));
        }
        let images = (1..n)
            .map(|i| {
                let v = self.apply(i);
                if v == n {
                    self.apply(n) as u8
                } else {
                    v as u8
                }
            })
            .collect();
        Ok(Permutation { images })
    }

    /// The l-cycle i -> i + 1 (mod l); trivial for l <= 1.
    pub fn cyclic(l: usize) -> Permutation {
        Permutation {
            images: (1..=l as u8).map(|i| if (i as usize) == l { 1 } else { i + 1 }).collect(),
        }
    }

    /// Embed into one more strand, fixing the new last letter.
    pub fn extend_fixing_last(&self) -> Permutation {
        let mut images = self.images.clone();
        images.push(self.size() as u8 + 1);
        Permutation { images }
    }

    /// Embed into one more strand at the bottom: 1 is fixed and every other
    /// letter shifts up by one.
    pub fn extend_fixing_first(&self) -> Permutation {
        let mut images = Vec::with_capacity(self.size() + 1);
        images.push(1u8);
        images.extend(self.images.iter().map(|&v| v + 1));
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Permutation::identity(0));
        }
        let images: Result<Vec<u8>> = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::Parse(format!("invalid permutation entry '{part}'")))
            })
            .collect();
        Permutation::from_one_line(images?)
    }
}

/// Which of the two dual recursions a state is evaluated in.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Theory {
    Column,
    Row,
}

impl Theory {
    pub fn name(&self) -> &'static str {
        match self {
            Theory::Column => "column",
            Theory::Row => "row",
        }
    }
}

impl FromStr for Theory {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "column" => Ok(Theory::Column),
            "row" => Ok(Theory::Row),
            _ => Err(Error::Parse(format!("unknown theory '{s}'"))),
        }
    }
}

/// The argument of the recursion: a pair of words and a permutation twist,
/// with matching ones-counts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct State {
    theory: Theory,
    v: Word,
    w: Word,
    sigma: Permutation,
}

impl State {
    pub fn new(theory: Theory, v: Word, w: Word, sigma: Permutation) -> Result<Self> {
        if v.ones() != w.ones() {
            return Err(Error::InvalidState(format!(
                "ones counts differ: {} in '{v}' vs {} in '{w}'",
                v.ones(),
                w.ones()
            )));
        }
        if sigma.size() != v.ones() {
            return Err(Error::InvalidState(format!(
                "permutation size {} does not match ones count {}",
                sigma.size(),
                v.ones()
            )));
        }
        Ok(State { theory, v, w, sigma })
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn v(&self) -> Word {
        self.v
    }

    pub fn w(&self) -> Word {
        self.w
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn ones(&self) -> usize {
        self.v.ones()
    }

    pub fn with_theory(&self, theory: Theory) -> State {
        State {
            theory,
            ..self.clone()
        }
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p[{}]({}, {}; {})",
            self.theory.name(),
            self.v,
            self.w,
            self.sigma
        )
    }
}
