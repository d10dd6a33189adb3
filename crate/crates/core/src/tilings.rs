//! Domino tilings and their parity.
//!
//! The number of domino tilings of a `rows x cols` board is odd exactly when
//! the light/dark adjacency matrix is invertible mod 2, which in turn happens
//! exactly when `gcd(rows + 1, cols + 1) = 1`. Counts here come from plain
//! backtracking, independent of the matrix.

use crate::checkers::Board;
use crate::error::{Error, Result};
use crate::oracles::gcd_raw;

/// Largest board, in cells, that [`count_tilings`] will enumerate.
pub const MAX_TILING_CELLS: usize = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(count: u64) -> Self {
        if count % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Exact number of domino tilings of a `rows x cols` board.
///
/// A board with no cells has exactly one (empty) tiling.
pub fn count_tilings(rows: usize, cols: usize) -> Result<u64> {
    let cells = rows * cols;
    if cells > MAX_TILING_CELLS {
        return Err(Error::TilingBoundExceeded {
            cells,
            limit: MAX_TILING_CELLS,
        });
    }
    if cells % 2 == 1 {
        return Ok(0);
    }
    Ok(fill(0, rows, cols))
}

/// Counts completions of `filled`, a row-major occupancy mask, by always
/// covering the first empty cell.
fn fill(filled: u64, rows: usize, cols: usize) -> u64 {
    let cells = rows * cols;
    let full = if cells == 64 { u64::MAX } else { (1u64 << cells) - 1 };
    if filled == full {
        return 1;
    }
    let cell = (!filled).trailing_zeros() as usize;
    let (row, col) = (cell / cols, cell % cols);
    let mut total = 0;
    if col + 1 < cols && filled >> (cell + 1) & 1 == 0 {
        total += fill(filled | 0b11 << cell, rows, cols);
    }
    if row + 1 < rows {
        total += fill(filled | 1 << cell | 1 << (cell + cols), rows, cols);
    }
    total
}

/// Brute-force tiling parity side by side with the matrix and gcd criteria.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingReport {
    pub rows: usize,
    pub cols: usize,
    /// `None` above [`MAX_TILING_CELLS`].
    pub count: Option<u64>,
    pub parity: Option<Parity>,
    /// `gcd(rows + 1, cols + 1) = 1`.
    pub gcd_flag: bool,
    /// The mod-2 adjacency matrix is invertible.
    pub rank_full: bool,
}

impl TilingReport {
    /// All available criteria agree.
    pub fn consistent(&self) -> bool {
        self.gcd_flag == self.rank_full
            && self
                .parity
                .is_none_or(|p| (p == Parity::Odd) == self.gcd_flag)
    }
}

pub fn tiling_parity_check(rows: usize, cols: usize) -> Result<TilingReport> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument(format!(
            "board sides must be positive, got {rows}x{cols}"
        )));
    }
    let count = match count_tilings(rows, cols) {
        Ok(c) => Some(c),
        Err(Error::TilingBoundExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(TilingReport {
        rows,
        cols,
        count,
        parity: count.map(Parity::of),
        gcd_flag: gcd_raw(rows as u64 + 1, cols as u64 + 1) == 1,
        rank_full: Board::new(rows, cols).adjacency_matrix().is_invertible(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Transfer-matrix count over column profiles; independent of `fill`.
    fn transfer_count(rows: usize, cols: usize) -> u64 {
        let states = 1usize << rows;
        let mut ways = vec![0u64; states];
        ways[0] = 1;
        for _ in 0..cols {
            let mut next = vec![0u64; states];
            for (mask, &w) in ways.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                // extend cells of this column not already covered from the left
                fn go(r: usize, rows: usize, incoming: usize, out: usize, w: u64, next: &mut [u64]) {
                    if r == rows {
                        next[out] += w;
                        return;
                    }
                    if incoming >> r & 1 == 1 {
                        go(r + 1, rows, incoming, out, w, next);
                        return;
                    }
                    go(r + 1, rows, incoming, out | 1 << r, w, next);
                    if r + 1 < rows && incoming >> (r + 1) & 1 == 0 {
                        go(r + 2, rows, incoming, out, w, next);
                    }
                }
                go(0, rows, mask, 0, w, &mut next);
            }
            ways = next;
        }
        ways[0]
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_tilings(2, 3), Ok(3));
        assert_eq!(count_tilings(2, 2), Ok(2));
        assert_eq!(count_tilings(1, 3), Ok(0));
        assert_eq!(count_tilings(4, 4), Ok(36));
        assert_eq!(count_tilings(8, 8).unwrap_err(), Error::TilingBoundExceeded { cells: 64, limit: 42 });
        assert_eq!(count_tilings(0, 5), Ok(1));
    }

    #[test]
    fn matches_transfer_matrix() {
        for rows in 1..=7 {
            for cols in 1..=7 {
                if rows * cols <= MAX_TILING_CELLS {
                    assert_eq!(count_tilings(rows, cols).unwrap(), transfer_count(rows, cols));
                }
            }
        }
        assert_eq!(count_tilings(2, 21).unwrap(), transfer_count(2, 21));
    }

    #[test]
    fn report_examples() {
        let r = tiling_parity_check(2, 3).unwrap();
        assert_eq!((r.count, r.gcd_flag, r.rank_full), (Some(3), true, true));
        assert!(r.consistent());
        let r = tiling_parity_check(2, 2).unwrap();
        assert_eq!((r.count, r.gcd_flag, r.rank_full), (Some(2), false, false));
        assert!(r.consistent());
        let r = tiling_parity_check(4, 4).unwrap();
        assert_eq!((r.count, r.parity), (Some(36), Some(Parity::Even)));
        assert!(r.consistent());
        let r = tiling_parity_check(9, 9).unwrap();
        assert_eq!(r.count, None);
        assert!(r.consistent());
        assert!(tiling_parity_check(0, 3).is_err());
    }

    #[test]
    fn parity_corollary() {
        for rows in 1..=6 {
            for cols in 1..=6 {
                let r = tiling_parity_check(rows, cols).unwrap();
                assert!(r.consistent(), "{r:?}");
                if rows * cols % 2 == 1 {
                    assert_eq!(r.count, Some(0));
                    assert!(!r.gcd_flag);
                }
            }
        }
    }
}
