//! Quadratic residue symbols computed three ways: from the signs of bounces
//! in arithmetic billiards, from the parity of parity-checkers solutions, and
//! from classical number-theory oracles.
//!
//! - [`oracles`]: Euler's criterion, Jacobi and Zolotarev symbols, Wilson pairing.
//! - [`billiards`]: exact trajectories on an `m x n` rectangle.
//! - [`symbols`]: the billiards symbol and the reciprocity identity chain.
//! - [`checkers`]: the `(m-1) x (n-1)` parity-checkers puzzle and its solvers.
//! - [`gf2`]: bit-packed linear algebra over GF(2).
//! - [`tilings`]: domino tiling counts and the parity corollary.
//! - [`render`]: SVG and ASCII figures.

pub mod billiards;
pub mod checkers;
pub mod error;
pub mod gf2;
pub mod oracles;
pub mod render;
pub mod symbols;
pub mod tilings;

pub use billiards::{
    base_bounces, crossings, kernel_checkers, position_at, trace_path, two_color_checkers,
    BaseBounce, BilliardPath, BounceEvent, Crossing, LatticePoint, Position, Rect, Sign, Wall,
};
pub use checkers::{
    apply_checkers, bottom_row_symbol, combined_puzzle_count, kernel_element, light_chase, solve,
    solve_elimination, solve_single_pebble, Board, CheckerEvidence, CheckerSet,
    EliminationOutcome, PebbleSet,
};
pub use error::{Error, Result};
pub use gf2::{BitVector, Mod2Matrix};
pub use oracles::{
    euler_symbol, gcd, is_prime, jacobi_symbol, lcm, mod_pow, residue_table,
    wilson_pairing_check, zolotarev_perm_sign, SymbolValue,
};
pub use symbols::{
    billiard_symbol, check_almost_reciprocity, check_reciprocity, mod4_symbol,
    symbol_supplement_minus_one, symbol_supplement_two, SymbolEvidence,
};
pub use tilings::{count_tilings, tiling_parity_check, TilingReport};
