//! Exact-arithmetic Pell matrix codes.
//!
//! Messages are square integer matrices `M`; the code matrix is
//! `E = M * G_n` where `G_n = A^n` is a power of the generalized Pell
//! companion matrix. Because `det(G_n) = ±1` the map is invertible over the
//! integers, and the transmitted checking element `det(M)` lets a receiver
//! detect (and for 2×2 codes, often correct) damaged entries of `E`.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line front end live in the `pellcode` crate.

#![no_std]

extern crate alloc;

pub mod blocking;
pub mod channel;
pub mod codec;
pub mod correction;
pub mod diophantine;
mod error;
pub mod matrix;
pub mod sequences;

pub use num_bigint::BigInt;

pub use crate::blocking::{
    block_decode, block_encode, char_value, choose_n, solve_block_x, text_to_grid, value_char, BlockMode, BlockRecord,
    CharTable, KPackage, SymbolGrid,
};
pub use crate::channel::{inject, simulate, ChannelConfig, PatternTally, SimReport};
pub use crate::codec::{decode, encode, row_ratio_ok, verify_det_relation, CodePackage, MessageMatrix};
pub use crate::correction::{
    correct, correct_with, correction_ability_enumeration, detect, hypothesize_single, solve_double_same_row,
    solve_pattern, Candidate, CorrectionResult, CorrectionStatus, ErrorPattern, Fault, SearchLimits,
};
pub use crate::error::{Error, Result};
pub use crate::matrix::{a_matrix, determinant, g_matrix, mat_mul, p_power, unimodular_inverse, IntMatrix};
pub use crate::sequences::{
    binet_pell, gen_pell, pell, pell_ratio, ratio_interval, RatioInterval, Rational, SequenceParams,
};
