//! Knuth's one-round carry approximation `a ^ b ^ ((a & b) << 1)` lifted to
//! finite subsets of the naturals.
//!
//! A finite set `A ⊆ ℕ` is a bit-string with bit `n` set iff `n ∈ A`. Under
//! that reading the approximation becomes a binary operation on sets,
//!
//! ```text
//! A ⊕ B = (A △ B) △ ((A ∩ B) + 1)
//! ```
//!
//! which is commutative, has `∅` as neutral element and admits inverses, but
//! is not associative. This crate provides
//!
//! * [`bitset`]: the canonical [`FinSet`] representation, its literal format
//!   and the primitive set operations,
//! * [`magma`]: `⊕`, backward stretch, the run-parity inverse and a
//!   constructive solver for `A ⊕ X = B`,
//! * [`adder`]: the word-level view (exact identity, one-round approximation,
//!   iterated carry propagation and exhaustive exactness statistics),
//! * [`explorer`]: exhaustive associativity scans, closed-subset search over
//!   truncated universes, and `⊕`-orbits.
//!
//! The set type is generic over its storage block and the word arithmetic is
//! generic over the integer type; the aliases below fix the usual choices.
//!
//! ```
//! use carryset::{oplus, invert, FinSet};
//!
//! let a: FinSet = "{3,4,5,10,12}".parse().unwrap();
//! let inv = invert(&a);
//! assert_eq!(inv.to_string(), "{3,5,6,10,11,12,13}");
//! assert!(oplus(&a, &inv).is_empty());
//! ```

pub mod adder;
pub mod bitset;
pub mod block;
pub mod error;
pub mod explorer;
pub mod magma;

pub use adder::{approx_add, approx_stats, is_exact, iterated_add, knuth_sum, Word, WordStats};
pub use bitset::BitSet;
pub use block::Block;
pub use error::{Error, ParseSetError, RangeError};
pub use explorer::{
    assoc_witness, classify_subset, orbit, scan_associativity, search_closed_subsets, AssocScan,
    Evidence, SearchSummary, SubsetReport, SubsetStatus, Witness,
};
pub use magma::{invert, oplus, solve, solve_checked, stretch, StretchValue};

/// Finite subset of ℕ stored in 64-bit blocks.
pub type FinSet = BitSet<u64>;

/// Finite subset of ℕ stored in bytes. Mostly useful for cross-checking
/// block-boundary handling against [`FinSet`].
pub type ByteSet = BitSet<u8>;

/// Unbounded non-negative integer used by [`FinSet::encode`] and the word-level
/// operations when no wraparound is acceptable.
pub type Natural = num_bigint::BigUint;
