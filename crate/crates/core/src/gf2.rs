//! Dense bit-packed vectors and matrices over GF(2).

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVector::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    /// Parity of the bitwise AND with `other`.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor<&BitVector> for &BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "BitVector({s})")
    }
}

/// A `rows x cols` matrix over GF(2), stored as packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Mod2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

/// Result of solving `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mod2Solution {
    /// Consistent, and the kernel is trivial.
    Unique(BitVector),
    /// Consistent with a nontrivial kernel.
    Many {
        particular: BitVector,
        kernel: Vec<BitVector>,
    },
    /// `b` is not in the column space.
    Inconsistent { kernel: Vec<BitVector> },
}

/// Reduced row echelon form of a matrix, possibly with an augmented column.
struct Echelon {
    /// Rows after elimination; the first `pivots.len()` are the pivot rows.
    rows: Vec<BitVector>,
    /// Pivot column of each pivot row.
    pivots: Vec<usize>,
    /// Right-hand side after the same row operations.
    rhs: Option<BitVector>,
}

impl Mod2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mod2Matrix {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Mod2Matrix::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        self.data[r].toggle(c);
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.data[r]
    }

    /// `A x`.
    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        let mut out = BitVector::zeros(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            if row.dot(x) {
                out.set(r, true);
            }
        }
        out
    }

    /// Gauss–Jordan elimination on a private copy. Pivot rows are chosen by
    /// lowest available index.
    fn eliminate(&self, rhs: Option<&BitVector>) -> Echelon {
        let mut rows = self.data.clone();
        let mut rhs = rhs.cloned();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(found) = (next..self.rows).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            if let Some(b) = rhs.as_mut() {
                let (a, c) = (b.get(next), b.get(found));
                b.set(next, c);
                b.set(found, a);
            }
            let pivot_row = rows[next].clone();
            let pivot_bit = rhs.as_ref().map(|b| b.get(next));
            for r in 0..self.rows {
                if r != next && rows[r].get(col) {
                    rows[r] ^= &pivot_row;
                    if let (Some(b), Some(true)) = (rhs.as_mut(), pivot_bit) {
                        b.toggle(r);
                    }
                }
            }
            pivots.push(col);
            next += 1;
        }
        Echelon { rows, pivots, rhs }
    }

    pub fn rank(&self) -> usize {
        self.eliminate(None).pivots.len()
    }

    /// Square with full rank.
    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    fn kernel_from(&self, ech: &Echelon) -> Vec<BitVector> {
        let mut is_pivot = vec![false; self.cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::zeros(self.cols);
                v.set(free, true);
                for (r, &pc) in ech.pivots.iter().enumerate() {
                    if ech.rows[r].get(free) {
                        v.set(pc, true);
                    }
                }
                v
            })
            .collect()
    }

    /// A basis of `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let ech = self.eliminate(None);
        self.kernel_from(&ech)
    }

    pub fn solve(&self, b: &BitVector) -> Mod2Solution {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let ech = self.eliminate(Some(b));
        let kernel = self.kernel_from(&ech);
        let rhs = ech.rhs.as_ref().expect("augmented elimination");
        let rank = ech.pivots.len();
        if (rank..self.rows).any(|r| rhs.get(r)) {
            return Mod2Solution::Inconsistent { kernel };
        }
        let mut x = BitVector::zeros(self.cols);
        for (r, &pc) in ech.pivots.iter().enumerate() {
            if rhs.get(r) {
                x.set(pc, true);
            }
        }
        if kernel.is_empty() {
            Mod2Solution::Unique(x)
        } else {
            Mod2Solution::Many {
                particular: x,
                kernel,
            }
        }
    }
}

impl fmt::Debug for Mod2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mod2Matrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            let s: String = (0..self.cols)
                .map(|c| if row.get(c) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}
