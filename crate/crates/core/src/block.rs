//! Storage word abstraction for [`BitSet`](crate::BitSet).

use std::fmt::Debug;
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned};

/// An unsigned machine word usable as bitvector storage.
pub trait Block: PrimInt + Unsigned + Hash + Debug + Send + Sync + 'static {
    /// Number of bits in one block.
    const BITS: usize;
}

macro_rules! impl_block {
    ($($t:ty),*) => {
        $(
            impl Block for $t {
                const BITS: usize = <$t>::BITS as usize;
            }
        )*
    };
}

impl_block!(u8, u16, u32, u64, u128, usize);
