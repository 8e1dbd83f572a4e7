//! Canonical finite subsets of ℕ.
//!
//! A [`BitSet`] stores bit `n` for every element `n`. The block vector never
//! ends in a zero block, so derived equality and hashing are extensional and
//! the empty set owns no storage.
//!
//! The literal format is a brace-wrapped, comma-separated list of decimal
//! naturals: `{}`, `{3,5,6}`. On input the braces are optional, whitespace
//! around tokens is ignored and elements may come in any order, but
//! duplicates are rejected.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::iter::FusedIterator;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::block::Block;
use crate::error::ParseSetError;

/// Largest element accepted by the literal parser. Keeps a typo such as
/// `{10000000000}` from allocating gigabytes.
pub const MAX_LITERAL_ELEMENT: usize = (1 << 26) - 1;

/// A finite subset of ℕ, stored as a normalized bitvector of `B` blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet<B: Block = u64> {
    blocks: Vec<B>,
}

impl<B: Block> Default for BitSet<B> {
    fn default() -> Self {
        Self::empty()
    }
}

impl<B: Block> BitSet<B> {
    pub fn empty() -> Self {
        Self { blocks: Vec::new() }
    }

    fn from_blocks(mut blocks: Vec<B>) -> Self {
        while blocks.last().is_some_and(|b| b.is_zero()) {
            blocks.pop();
        }
        Self { blocks }
    }

    /// The set `[lo, hi)`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        (lo..hi).collect()
    }

    /// The set of bit positions set in `mask`.
    pub fn from_word(mask: u64) -> Self {
        let mut rest = mask;
        let mut elems = Vec::with_capacity(mask.count_ones() as usize);
        while rest != 0 {
            elems.push(rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
        elems.into_iter().collect()
    }

    /// The bit mask of this set, if every element is below 64.
    pub fn to_word(&self) -> Option<u64> {
        self.iter()
            .try_fold(0u64, |acc, n| (n < 64).then(|| acc | (1 << n)))
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn contains(&self, n: usize) -> bool {
        self.blocks
            .get(n / B::BITS)
            .is_some_and(|b| !(*b & (B::one() << (n % B::BITS))).is_zero())
    }

    pub fn min_element(&self) -> Option<usize> {
        self.blocks
            .iter()
            .position(|b| !b.is_zero())
            .map(|i| i * B::BITS + self.blocks[i].trailing_zeros() as usize)
    }

    pub fn max_element(&self) -> Option<usize> {
        let last = self.blocks.last()?;
        Some((self.blocks.len() - 1) * B::BITS + B::BITS - 1 - last.leading_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> Iter<'_, B> {
        Iter {
            blocks: &self.blocks,
            index: 0,
            current: self.blocks.first().copied().unwrap_or_else(B::zero),
        }
    }

    /// Maximal runs of consecutive elements as `(start, length)`, ascending.
    pub fn runs(&self) -> Runs<'_, B> {
        Runs {
            elems: self.iter().peekable(),
        }
    }

    /// `A △ B`.
    pub fn sym_diff(&self, other: &Self) -> Self {
        let (long, short) = if self.blocks.len() >= other.blocks.len() {
            (&self.blocks, &other.blocks)
        } else {
            (&other.blocks, &self.blocks)
        };
        let mut blocks = long.clone();
        for (dst, src) in blocks.iter_mut().zip(short) {
            *dst = *dst ^ *src;
        }
        Self::from_blocks(blocks)
    }

    /// `A ∩ B`.
    pub fn intersect(&self, other: &Self) -> Self {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| *a & *b)
            .collect();
        Self::from_blocks(blocks)
    }

    /// `A ∪ B`.
    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.blocks.len() >= other.blocks.len() {
            (&self.blocks, &other.blocks)
        } else {
            (&other.blocks, &self.blocks)
        };
        let mut blocks = long.clone();
        for (dst, src) in blocks.iter_mut().zip(short) {
            *dst = *dst | *src;
        }
        Self { blocks }
    }

    /// `{a + k : a ∈ A}`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_empty() || k == 0 {
            return self.clone();
        }
        let whole = k / B::BITS;
        let part = k % B::BITS;
        let mut blocks = vec![B::zero(); self.blocks.len() + whole + 1];
        for (i, b) in self.blocks.iter().enumerate() {
            blocks[i + whole] = blocks[i + whole] | (*b << part);
            if part > 0 {
                blocks[i + whole + 1] = *b >> (B::BITS - part);
            }
        }
        Self::from_blocks(blocks)
    }

    /// `Σ_{n ∈ A} 2^n`.
    pub fn encode(&self) -> BigUint {
        let mut m = BigUint::default();
        for n in self.iter() {
            m.set_bit(n as u64, true);
        }
        m
    }

    /// The set of bit positions set in `m`.
    pub fn decode(m: &BigUint) -> Self {
        m.iter_u64_digits()
            .enumerate()
            .flat_map(|(i, digit)| {
                let mut rest = digit;
                std::iter::from_fn(move || {
                    (rest != 0).then(|| {
                        let bit = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        i * 64 + bit
                    })
                })
            })
            .collect()
    }

    /// Parse a set literal. See the module docs for the grammar.
    pub fn parse(text: &str) -> Result<Self, ParseSetError> {
        let trimmed = text.trim();
        let inner = match (trimmed.strip_prefix('{'), trimmed.ends_with('}')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => trimmed,
            _ => return Err(ParseSetError::Malformed(trimmed.to_string())),
        };
        if inner.trim().is_empty() {
            return Ok(Self::empty());
        }
        let mut seen = HashSet::new();
        let mut elems = Vec::new();
        for raw in inner.split(',') {
            let token = raw.trim();
            let n = parse_element(token)?;
            if !seen.insert(n) {
                return Err(ParseSetError::Duplicate(token.to_string()));
            }
            elems.push(n);
        }
        Ok(elems.into_iter().collect())
    }
}

fn parse_element(token: &str) -> Result<usize, ParseSetError> {
    let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    if all_digits(token) {
        return match token.parse::<usize>() {
            Ok(n) if n <= MAX_LITERAL_ELEMENT => Ok(n),
            _ => Err(ParseSetError::TooLarge {
                token: token.to_string(),
                limit: MAX_LITERAL_ELEMENT,
            }),
        };
    }
    match token.strip_prefix('-') {
        Some(rest) if all_digits(rest) && rest.bytes().any(|c| c != b'0') => {
            Err(ParseSetError::Negative(token.to_string()))
        }
        _ => Err(ParseSetError::Malformed(token.to_string())),
    }
}

impl<B: Block> FromIterator<usize> for BitSet<B> {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let elems: Vec<usize> = iter.into_iter().collect();
        let Some(&top) = elems.iter().max() else {
            return Self::empty();
        };
        let mut blocks = vec![B::zero(); top / B::BITS + 1];
        for n in elems {
            let b = &mut blocks[n / B::BITS];
            *b = *b | (B::one() << (n % B::BITS));
        }
        Self { blocks }
    }
}

impl<'a, B: Block> IntoIterator for &'a BitSet<B> {
    type Item = usize;
    type IntoIter = Iter<'a, B>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

/// Ascending iterator over the elements of a [`BitSet`].
pub struct Iter<'a, B: Block> {
    blocks: &'a [B],
    index: usize,
    current: B,
}

impl<B: Block> Iterator for Iter<'_, B> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current.is_zero() {
            self.index += 1;
            self.current = *self.blocks.get(self.index)?;
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current = self.current & (self.current - B::one());
        Some(self.index * B::BITS + bit)
    }
}

impl<B: Block> FusedIterator for Iter<'_, B> {}

/// Iterator over maximal runs, see [`BitSet::runs`].
pub struct Runs<'a, B: Block> {
    elems: std::iter::Peekable<Iter<'a, B>>,
}

impl<B: Block> Iterator for Runs<'_, B> {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        let start = self.elems.next()?;
        let mut len = 1;
        while self.elems.next_if_eq(&(start + len)).is_some() {
            len += 1;
        }
        Some((start, len))
    }
}

/// Sets compare as their encodings `Σ 2^n` compare.
impl<B: Block> Ord for BitSet<B> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.blocks
            .len()
            .cmp(&other.blocks.len())
            .then_with(|| self.blocks.iter().rev().cmp(other.blocks.iter().rev()))
    }
}

impl<B: Block> PartialOrd for BitSet<B> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<B: Block> fmt::Display for BitSet<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, n) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str("}")
    }
}

impl<B: Block> fmt::Debug for BitSet<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<B: Block> FromStr for BitSet<B> {
    type Err = ParseSetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl<B: Block> Serialize for BitSet<B> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de, B: Block> Deserialize<'de> for BitSet<B> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Self::parse(&text).map_err(serde::de::Error::custom)
    }
}
