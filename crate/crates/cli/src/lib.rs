//! Command implementations and verification sweeps behind the `quadres`
//! binary.

pub mod commands;
pub mod report;
pub mod sweep;

pub use commands::{Puzzle, RenderFormat};
pub use report::{Report, Status, UsageError, EXIT_FAILED_CHECK, EXIT_OK, EXIT_USAGE};
pub use sweep::{CheckFamily, FamilyReport, SweepConfig, DEFAULT_MAX_CELLS};

/// The cell limit from `QUADRES_MAX_CELLS`, or the default.
pub fn max_cells_from_env() -> Result<u64, UsageError> {
    match std::env::var("QUADRES_MAX_CELLS") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| UsageError(format!("QUADRES_MAX_CELLS must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_CELLS),
    }
}
