//! The carry magma `(P_fin(ℕ), ⊕)`.
//!
//! `A ⊕ B = (A △ B) △ ((A ∩ B) + 1)` is one round of binary addition where the
//! carries are XORed in rather than added. `∅` is neutral and every set has an
//! inverse built from the parities of its runs; see [`invert`].

use crate::bitset::BitSet;
use crate::block::Block;
use crate::error::Error;

/// `(A △ B) △ ((A ∩ B) + 1)`.
///
/// The result is contained in `[0, max(max A, max B) + 2)`.
pub fn oplus<B: Block>(a: &BitSet<B>, b: &BitSet<B>) -> BitSet<B> {
    let carries = a.intersect(b).shift_up(1);
    a.sym_diff(b).sym_diff(&carries)
}

/// Backward stretch: the length of the run of `A` that ends at the queried
/// position, or zero if the position is not in `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct StretchValue(usize);

impl StretchValue {
    pub const ZERO: Self = Self(0);

    pub fn get(self) -> usize {
        self.0
    }

    /// `2k + 1` for some natural `k`; zero is even.
    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }
}

impl From<StretchValue> for usize {
    fn from(s: StretchValue) -> usize {
        s.0
    }
}

/// `0` if `n ∉ A`, otherwise `max{k ≤ n : [n − k, n] ⊆ A} + 1`.
pub fn stretch<B: Block>(a: &BitSet<B>, n: usize) -> StretchValue {
    if !a.contains(n) {
        return StretchValue::ZERO;
    }
    let mut low = n;
    while low > 0 && a.contains(low - 1) {
        low -= 1;
    }
    StretchValue(n - low + 1)
}

/// The inverse `A'` with `A ⊕ A' = ∅`:
///
/// ```text
/// A' = {x ∈ A : stretch(A, x) odd} ∪ {y ∉ A : y > 0, stretch(A, y − 1) odd}
/// ```
///
/// Within a maximal run `[s, s + len)` the stretch of `s + i` is `i + 1`, so
/// `A'` keeps every other element of the run starting at `s`, and gains
/// `s + len` when `len` is odd. `invert(∅) = ∅`.
pub fn invert<B: Block>(a: &BitSet<B>) -> BitSet<B> {
    a.runs()
        .flat_map(|(start, len)| {
            let tail = (len % 2 == 1).then_some(start + len);
            (start..start + len).step_by(2).chain(tail)
        })
        .collect()
}

/// The unique `X` with `A ⊕ X = B`.
///
/// Bit `n` of `A ⊕ X` is `a_n ^ x_n ^ (a_{n-1} & x_{n-1})`, so the solution is
/// forced bit by bit from position 0 upward. Beyond `max(max A + 1, max B)`
/// every forced bit is zero.
pub fn solve<B: Block>(a: &BitSet<B>, b: &BitSet<B>) -> BitSet<B> {
    let last = match (a.max_element(), b.max_element()) {
        (None, None) => return BitSet::empty(),
        (ma, mb) => ma.map_or(0, |m| m + 1).max(mb.unwrap_or(0)),
    };
    let mut carry = false;
    let mut xs = Vec::new();
    for n in 0..=last {
        let a_n = a.contains(n);
        let x_n = b.contains(n) ^ a_n ^ carry;
        if x_n {
            xs.push(n);
        }
        carry = a_n && x_n;
    }
    xs.into_iter().collect()
}

/// [`solve`] followed by the check `A ⊕ X = B`.
pub fn solve_checked<B: Block>(a: &BitSet<B>, b: &BitSet<B>) -> Result<BitSet<B>, Error> {
    let x = solve(a, b);
    let got = oplus(a, &x);
    if &got != b {
        return Err(Error::Internal(format!(
            "solve({a}, {b}) returned {x} but {a} ⊕ {x} = {got}"
        )));
    }
    Ok(x)
}
