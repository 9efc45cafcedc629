//! Combinatorics on simple 0/1 matrices and integer sequences.

mod balanced;
mod poset;
mod unavoidable;

pub use balanced::{balance_extend, interleave_u_sets, BalancedSeq, USets};
pub use poset::{chain_or_antichain, ChainKind, StrictOrder};
pub use unavoidable::{beta, find_unavoidable, pattern_matrix, PatternHit, PatternKind};
