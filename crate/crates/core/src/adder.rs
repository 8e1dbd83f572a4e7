//! Word-level carry arithmetic.
//!
//! For naturals `a`, `b` with `s = a ^ b` and `c = (a & b) << 1` we have
//! `a + b = s + c` exactly. Replacing the outer `+` by `^` gives the one-round
//! approximation [`approx_add`]; repeating the split until the carry vanishes
//! gives the exact sum ([`iterated_add`]).
//!
//! Everything is generic over [`Word`]. Use [`Natural`](crate::Natural) for the
//! unbounded semantics the set view needs; fixed-width integers drop carries
//! shifted out of the top bit.

use std::ops::{Add, BitAnd, BitXor, Shl};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::RangeError;

/// Largest width [`approx_stats`] enumerates exhaustively.
pub const MAX_STATS_WIDTH: u32 = 12;

/// Integer types the carry operations run on.
pub trait Word:
    Clone
    + PartialEq
    + Zero
    + Add<Output = Self>
    + BitXor<Output = Self>
    + BitAnd<Output = Self>
    + Shl<usize, Output = Self>
{
}

impl<T> Word for T where
    T: Clone
        + PartialEq
        + Zero
        + Add<Output = T>
        + BitXor<Output = T>
        + BitAnd<Output = T>
        + Shl<usize, Output = T>
{
}

/// `(a ^ b, (a & b) << 1)`.
fn split<W: Word>(a: &W, b: &W) -> (W, W) {
    (a.clone() ^ b.clone(), (a.clone() & b.clone()) << 1usize)
}

/// `a ^ b ^ ((a & b) << 1)`: one carry round, carries XORed in.
pub fn approx_add<W: Word>(a: &W, b: &W) -> W {
    let (s, c) = split(a, b);
    s ^ c
}

/// `(a ^ b) + ((a & b) << 1)`, which equals `a + b`.
pub fn knuth_sum<W: Word>(a: &W, b: &W) -> W {
    let (s, c) = split(a, b);
    s + c
}

/// Exact addition by repeated carry rounds.
///
/// Starting from `(s, c) = (a ^ b, (a & b) << 1)`, applies
/// `(s, c) ← (s ^ c, (s & c) << 1)` until `c = 0`. Returns the sum and the
/// number of updates performed; a pair that generates no carry costs zero
/// rounds.
pub fn iterated_add<W: Word>(a: &W, b: &W) -> (W, u32) {
    let (mut s, mut c) = split(a, b);
    let mut rounds = 0;
    while !c.is_zero() {
        (s, c) = split(&s, &c);
        rounds += 1;
    }
    (s, rounds)
}

/// Whether [`approx_add`] gives the true sum, i.e. `(a ^ b) & ((a & b) << 1) = 0`.
pub fn is_exact<W: Word>(a: &W, b: &W) -> bool {
    let (s, c) = split(a, b);
    (s & c).is_zero()
}

/// Exactness statistics of [`approx_add`] over all pairs in `[0, 2^width)²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WordStats {
    pub width: u32,
    pub total_pairs: u64,
    pub exact_pairs: u64,
    pub max_abs_error: u64,
    pub iterations_max: u32,
}

impl WordStats {
    fn zero(width: u32) -> Self {
        Self {
            width,
            total_pairs: 0,
            exact_pairs: 0,
            max_abs_error: 0,
            iterations_max: 0,
        }
    }

    fn record(&mut self, a: u64, b: u64) {
        let approx = approx_add(&a, &b);
        let (sum, rounds) = iterated_add(&a, &b);
        self.total_pairs += 1;
        self.exact_pairs += u64::from(approx == sum);
        // approx never exceeds the true sum: s ^ c ≤ s + c.
        self.max_abs_error = self.max_abs_error.max(sum - approx);
        self.iterations_max = self.iterations_max.max(rounds);
    }

    fn merge(mut self, other: Self) -> Self {
        self.total_pairs += other.total_pairs;
        self.exact_pairs += other.exact_pairs;
        self.max_abs_error = self.max_abs_error.max(other.max_abs_error);
        self.iterations_max = self.iterations_max.max(other.iterations_max);
        self
    }
}

/// Enumerate every pair of `width`-bit operands. The grid is split by first
/// operand across the rayon pool; counters merge by sum and max, so the
/// result does not depend on the worker count.
pub fn approx_stats(width: u32) -> Result<WordStats, RangeError> {
    RangeError::check("width", width as usize, MAX_STATS_WIDTH as usize)
        .map_err(|e| e.with_hint("sample operand pairs instead of enumerating"))?;
    let side = 1u64 << width;
    let stats = (0..side)
        .into_par_iter()
        .map(|a| {
            let mut row = WordStats::zero(width);
            for b in 0..side {
                row.record(a, b);
            }
            row
        })
        .reduce(|| WordStats::zero(width), WordStats::merge);
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Natural;

    #[test]
    fn approx_add_examples() {
        assert_eq!(approx_add(&1u32, &1), 2);
        assert_eq!(approx_add(&5u32, &3), 4);
        assert_eq!(approx_add(&4u32, &2), 6);
    }

    #[test]
    fn knuth_sum_examples() {
        assert_eq!(knuth_sum(&5u32, &3), 8);
        assert_eq!(knuth_sum(&0u32, &77), 77);
        for a in 0..1024u32 {
            assert_eq!(knuth_sum(&a, &a), 2 * a);
        }
    }

    #[test]
    fn iterated_add_examples() {
        assert_eq!(iterated_add(&4u32, &2), (6, 0));
        assert_eq!(iterated_add(&5u32, &3), (8, 3));
        // (s, c) starts at (0, 2); one update lands the carry.
        assert_eq!(iterated_add(&1u32, &1), (2, 1));
    }

    #[test]
    fn exactness_examples() {
        assert!(is_exact(&4u32, &2));
        assert!(!is_exact(&5u32, &3));
        assert!(!is_exact(&1u32, &3));
        assert!(is_exact(&1u32, &1));
    }

    #[test]
    fn natural_words_do_not_wrap() {
        let top = Natural::from(u64::MAX);
        assert_eq!(approx_add(&top, &top), &top * 2u32);
        assert_eq!(iterated_add(&top, &Natural::from(1u32)).0, &top + 1u32);
        // The same pair in u64 loses the carry out of bit 63.
        assert_eq!(approx_add(&u64::MAX, &u64::MAX), u64::MAX - 1);
    }

    #[test]
    fn word_types_agree_below_the_boundary() {
        for a in 0..256u64 {
            for b in 0..256u64 {
                let (na, nb) = (Natural::from(a), Natural::from(b));
                assert_eq!(approx_add(&na, &nb), Natural::from(approx_add(&a, &b)));
                assert_eq!(
                    approx_add(&(a as u16), &(b as u16)) as u64,
                    approx_add(&a, &b)
                );
            }
        }
    }

    #[test]
    fn stats_small_widths() {
        let w0 = approx_stats(0).unwrap();
        assert_eq!(
            (w0.total_pairs, w0.exact_pairs, w0.iterations_max),
            (1, 1, 0)
        );
        let w1 = approx_stats(1).unwrap();
        assert_eq!((w1.total_pairs, w1.exact_pairs), (4, 4));
        assert_eq!(w1.iterations_max, 1);
        let w2 = approx_stats(2).unwrap();
        assert_eq!((w2.total_pairs, w2.exact_pairs), (16, 14));
        // (1,3): approx 0, sum 4.
        assert_eq!(w2.max_abs_error, 4);
    }

    #[test]
    fn stats_rejects_wide_words() {
        let err = approx_stats(13).unwrap_err();
        assert_eq!((err.value, err.limit), (13, 12));
        assert!(err.to_string().contains("sample"));
    }

    #[test]
    fn stats_match_sequential_fold() {
        for width in 0..=6 {
            let mut seq = WordStats::zero(width);
            for a in 0..1u64 << width {
                for b in 0..1u64 << width {
                    seq.record(a, b);
                }
            }
            let par = approx_stats(width).unwrap();
            assert_eq!(par, seq);
            assert!(par.exact_pairs <= par.total_pairs);
            assert!(par.iterations_max <= width + 1);
        }
    }
}
