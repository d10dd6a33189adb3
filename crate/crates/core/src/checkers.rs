//! Parity checkers on an `(m-1) x (n-1)` board.
//!
//! Squares are addressed as 0-based `(col, row)` with row 0 at the bottom;
//! `(col, row)` is dark iff `col + row` is even. Pebbles sit on light
//! squares, checkers on dark squares, and a checker configuration maps to
//! the pebble configuration of light squares with an odd number of
//! orthogonally adjacent checkers.
//!
//! Board square `(col, row)` corresponds to interior lattice point
//! `(col + 1, row + 1)` of the `m x n` billiards rectangle.

use std::collections::BTreeSet;
use std::fmt;
use std::marker::PhantomData;

use crate::billiards::{kernel_checkers, two_color_checkers, LatticePoint, Rect};
use crate::error::{Error, Result};
use crate::gf2::{BitVector, Mod2Matrix, Mod2Solution};
use crate::oracles::{gcd_raw, SymbolValue};

/// A checkerboard of `rows x cols` squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Board {
    rows: usize,
    cols: usize,
}

impl Board {
    pub fn new(rows: usize, cols: usize) -> Self {
        Board { rows, cols }
    }

    /// The `(m-1) x (n-1)` board paired with `m x n` billiards.
    pub fn for_rect(m: u64, n: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidArgument(format!(
                "rectangle sides must be positive, got {m}x{n}"
            )));
        }
        Ok(Board::new((m - 1) as usize, (n - 1) as usize))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// `(m, n) = (rows + 1, cols + 1)`.
    pub fn rect_sides(&self) -> (u64, u64) {
        (self.rows as u64 + 1, self.cols as u64 + 1)
    }

    pub fn is_coprime(&self) -> bool {
        let (m, n) = self.rect_sides();
        gcd_raw(m, n) == 1
    }

    pub fn contains(&self, col: usize, row: usize) -> bool {
        col < self.cols && row < self.rows
    }

    pub fn is_dark(col: usize, row: usize) -> bool {
        (col + row) % 2 == 0
    }

    pub fn light_count(&self) -> usize {
        Light::count(self)
    }

    pub fn dark_count(&self) -> usize {
        Dark::count(self)
    }

    fn neighbors(&self, col: usize, row: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let candidates = [
            col.checked_sub(1).map(|c| (c, row)),
            Some((col + 1, row)),
            row.checked_sub(1).map(|r| (col, r)),
            Some((col, row + 1)),
        ];
        candidates
            .into_iter()
            .flatten()
            .filter(move |&(c, r)| self.contains(c, r))
    }

    /// Light-by-dark adjacency matrix: rows index light squares, columns
    /// index dark squares, both row-major from the bottom row.
    pub fn adjacency_matrix(&self) -> Mod2Matrix {
        let mut matrix = Mod2Matrix::zeros(self.light_count(), self.dark_count());
        for (li, (col, row)) in Light::squares(self).enumerate() {
            for (c, r) in self.neighbors(col, row) {
                let di = Dark::index(self, c, r).expect("neighbors of light squares are dark");
                matrix.set(li, di, true);
            }
        }
        matrix
    }
}

mod sealed {
    pub trait Sealed {}
}

/// Square color selecting which squares a configuration lives on.
pub trait Shade: sealed::Sealed + Copy + fmt::Debug {
    const NAME: &'static str;
    /// Whether `(col, row)` has this color.
    fn matches(col: usize, row: usize) -> bool;

    fn count(board: &Board) -> usize {
        (0..board.rows).map(|r| Self::in_row(board, r)).sum()
    }

    fn in_row(board: &Board, row: usize) -> usize {
        let first = usize::from(!Self::matches(0, row));
        board.cols.saturating_sub(first).div_ceil(2)
    }

    /// Row-major index among squares of this color.
    fn index(board: &Board, col: usize, row: usize) -> Option<usize> {
        if !board.contains(col, row) || !Self::matches(col, row) {
            return None;
        }
        // rows alternate between two counts
        let before = row.div_ceil(2) * Self::in_row(board, 0) + row / 2 * Self::in_row(board, 1);
        Some(before + col / 2)
    }

    fn squares(board: &Board) -> impl Iterator<Item = (usize, usize)> {
        let (rows, cols) = (board.rows, board.cols);
        (0..rows).flat_map(move |row| {
            (0..cols)
                .filter(move |&col| Self::matches(col, row))
                .map(move |col| (col, row))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Light;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dark;

impl sealed::Sealed for Light {}
impl sealed::Sealed for Dark {}

impl Shade for Light {
    const NAME: &'static str = "light";
    fn matches(col: usize, row: usize) -> bool {
        !Board::is_dark(col, row)
    }
}

impl Shade for Dark {
    const NAME: &'static str = "dark";
    fn matches(col: usize, row: usize) -> bool {
        Board::is_dark(col, row)
    }
}

/// A mod-2 configuration on the squares of one color.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Configuration<S: Shade> {
    board: Board,
    bits: BitVector,
    shade: PhantomData<S>,
}

/// Pebbles on light squares.
pub type PebbleSet = Configuration<Light>;
/// Checkers on dark squares.
pub type CheckerSet = Configuration<Dark>;

impl<S: Shade> Configuration<S> {
    pub fn empty(board: Board) -> Self {
        Configuration {
            board,
            bits: BitVector::zeros(S::count(&board)),
            shade: PhantomData,
        }
    }

    /// Builds a configuration from squares; a square listed twice cancels.
    pub fn from_squares(
        board: Board,
        squares: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut out = Self::empty(board);
        for (col, row) in squares {
            out.toggle(col, row)?;
        }
        Ok(out)
    }

    pub fn from_bits(board: Board, bits: BitVector) -> Self {
        assert_eq!(bits.len(), S::count(&board), "bit vector length mismatch");
        Configuration {
            board,
            bits,
            shade: PhantomData,
        }
    }

    pub fn board(&self) -> Board {
        self.board
    }

    pub fn bits(&self) -> &BitVector {
        &self.bits
    }

    pub fn toggle(&mut self, col: usize, row: usize) -> Result<()> {
        let i = S::index(&self.board, col, row).ok_or(Error::BadSquare {
            col,
            row,
            rows: self.board.rows,
            cols: self.board.cols,
            expected: S::NAME,
        })?;
        self.bits.toggle(i);
        Ok(())
    }

    pub fn contains(&self, col: usize, row: usize) -> bool {
        S::index(&self.board, col, row).is_some_and(|i| self.bits.get(i))
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_zero()
    }

    /// Occupied squares in row-major order from the bottom row.
    pub fn squares(&self) -> Vec<(usize, usize)> {
        S::squares(&self.board)
            .enumerate()
            .filter(|&(i, _)| self.bits.get(i))
            .map(|(_, sq)| sq)
            .collect()
    }

    pub fn square_set(&self) -> BTreeSet<(usize, usize)> {
        self.squares().into_iter().collect()
    }

    /// Symmetric difference.
    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.board, other.board, "board mismatch");
        Configuration {
            board: self.board,
            bits: &self.bits ^ &other.bits,
            shade: PhantomData,
        }
    }
}

impl<S: Shade> fmt::Debug for Configuration<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}x{}]{:?}",
            S::NAME,
            self.board.rows,
            self.board.cols,
            self.squares()
        )
    }
}

/// The pebbles produced by a checker configuration.
pub fn apply_checkers(checkers: &CheckerSet) -> PebbleSet {
    let board = checkers.board;
    let mut pebbles = PebbleSet::empty(board);
    for (col, row) in checkers.squares() {
        for (c, r) in board.neighbors(col, row) {
            pebbles
                .toggle(c, r)
                .expect("neighbors of dark squares are light");
        }
    }
    pebbles
}

/// Greedy top-to-bottom pass: whenever a light square above the bottom row
/// is unsatisfied, place a checker directly under it.
///
/// Returns the checkers placed and the pebbles still unmatched, which all
/// lie in the bottom row.
pub fn light_chase(pebbles: &PebbleSet) -> (CheckerSet, PebbleSet) {
    let board = pebbles.board;
    let mut partial = CheckerSet::empty(board);
    // pending = pebbles XOR apply_checkers(partial)
    let mut pending = pebbles.clone();
    for row in (1..board.rows).rev() {
        for col in 0..board.cols {
            if Board::is_dark(col, row) || !pending.contains(col, row) {
                continue;
            }
            partial.toggle(col, row - 1).expect("square below a light square is dark");
            for (c, r) in board.neighbors(col, row - 1) {
                pending.toggle(c, r).expect("neighbors of dark squares are light");
            }
        }
    }
    (partial, pending)
}

fn require_coprime(m: u64, n: u64) -> Result<()> {
    let g = gcd_raw(m, n);
    if g != 1 {
        return Err(Error::NotCoprime { m, n, gcd: g });
    }
    Ok(())
}

fn lattice_to_board(board: Board, points: BTreeSet<LatticePoint>) -> Result<CheckerSet> {
    CheckerSet::from_squares(
        board,
        points
            .into_iter()
            .map(|(x, y)| ((x - 1) as usize, (y - 1) as usize)),
    )
}

/// Solution of the puzzle with one pebble on bottom-row square `2k - 1`,
/// read off the two-colored billiards path.
pub fn solve_single_pebble(m: u64, n: u64, k: u64) -> Result<CheckerSet> {
    require_coprime(m, n)?;
    let board = Board::for_rect(m, n)?;
    lattice_to_board(board, two_color_checkers(Rect::new(m, n)?, k)?)
}

/// The unique solution on a board with `gcd(rows + 1, cols + 1) = 1`:
/// light chasing, then one billiards construction per leftover bottom pebble.
pub fn solve(pebbles: &PebbleSet) -> Result<CheckerSet> {
    let board = pebbles.board;
    let (m, n) = board.rect_sides();
    if !board.is_coprime() {
        return Err(Error::NotUniquelySolvable {
            rows: board.rows,
            cols: board.cols,
            m,
            n,
        });
    }
    let (mut solution, residual) = light_chase(pebbles);
    for (col, row) in residual.squares() {
        debug_assert_eq!(row, 0);
        let k = (col as u64).div_ceil(2);
        solution = solution.xor(&solve_single_pebble(m, n, k)?);
    }
    Ok(solution)
}

/// Outcome of solving a puzzle by elimination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EliminationOutcome {
    Unique(CheckerSet),
    /// Solvable, but any kernel element can be added.
    Singular {
        particular: CheckerSet,
        kernel: Vec<CheckerSet>,
    },
    /// No checker configuration produces these pebbles.
    Inconsistent { kernel: Vec<CheckerSet> },
}

/// Solves the puzzle by Gaussian elimination on the adjacency matrix,
/// independently of the billiards construction.
pub fn solve_elimination(pebbles: &PebbleSet) -> EliminationOutcome {
    let board = pebbles.board;
    let matrix = board.adjacency_matrix();
    let wrap = |bits| CheckerSet::from_bits(board, bits);
    match matrix.solve(pebbles.bits()) {
        Mod2Solution::Unique(x) => EliminationOutcome::Unique(wrap(x)),
        Mod2Solution::Many { particular, kernel } => EliminationOutcome::Singular {
            particular: wrap(particular),
            kernel: kernel.into_iter().map(wrap).collect(),
        },
        Mod2Solution::Inconsistent { kernel } => EliminationOutcome::Inconsistent {
            kernel: kernel.into_iter().map(wrap).collect(),
        },
    }
}

/// A nonzero solution of the empty puzzle when `gcd(m, n) > 1`: checkers
/// where the main path passes only once.
pub fn kernel_element(m: u64, n: u64) -> Result<CheckerSet> {
    let board = Board::for_rect(m, n)?;
    lattice_to_board(board, kernel_checkers(Rect::new(m, n)?)?)
}

/// Pebbles on every light square of the bottom row.
pub fn bottom_row_puzzle(board: Board) -> PebbleSet {
    let squares = if board.rows == 0 {
        Vec::new()
    } else {
        (0..board.cols).filter(|c| c % 2 == 1).map(|c| (c, 0)).collect()
    };
    PebbleSet::from_squares(board, squares).expect("bottom-row odd columns are light")
}

/// Pebbles on every light square of the leftmost column.
pub fn left_column_puzzle(board: Board) -> PebbleSet {
    let squares = if board.cols == 0 {
        Vec::new()
    } else {
        (0..board.rows).filter(|r| r % 2 == 1).map(|r| (0, r)).collect()
    };
    PebbleSet::from_squares(board, squares).expect("left-column odd rows are light")
}

/// `(m|n)` as the parity of the bottom-row puzzle solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckerEvidence {
    pub value: SymbolValue,
    pub checker_count: u64,
    pub solution: CheckerSet,
}

pub fn bottom_row_symbol(m: u64, n: u64) -> Result<CheckerEvidence> {
    require_coprime(m, n)?;
    let solution = solve(&bottom_row_puzzle(Board::for_rect(m, n)?))?;
    let checker_count = solution.len() as u64;
    Ok(CheckerEvidence {
        value: SymbolValue::from_parity(checker_count),
        checker_count,
        solution,
    })
}

/// Checker counts of the bottom-row (`s`), left-column (`t`), and combined
/// (`u`) puzzles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superposition {
    pub s: u64,
    pub t: u64,
    pub u: u64,
    pub combined: CheckerSet,
}

pub fn superposition(m: u64, n: u64) -> Result<Superposition> {
    if m % 2 == 0 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "both sides must be odd, got ({m}, {n})"
        )));
    }
    require_coprime(m, n)?;
    let board = Board::for_rect(m, n)?;
    let bottom = bottom_row_puzzle(board);
    let left = left_column_puzzle(board);
    let combined = solve(&bottom.xor(&left))?;
    Ok(Superposition {
        s: solve(&bottom)?.len() as u64,
        t: solve(&left)?.len() as u64,
        u: combined.len() as u64,
        combined,
    })
}

/// Checker count of the puzzle with pebbles on the bottom row and the
/// leftmost column.
pub fn combined_puzzle_count(m: u64, n: u64) -> Result<u64> {
    Ok(superposition(m, n)?.u)
}
