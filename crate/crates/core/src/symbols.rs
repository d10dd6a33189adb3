//! The billiards residue symbol `(m|n)` and the identities that lead to
//! quadratic reciprocity.
//!
//! For coprime `m, n` the symbol is the product of the signs of the base
//! bounces of the `m x n` path; otherwise it is zero. It coincides with the
//! Legendre symbol for prime `n`, with the Jacobi symbol for odd `n`, and with
//! Zolotarev's permutation sign for every `n`.

use crate::billiards::{base_bounces, trace_path, BaseBounce, Rect};
use crate::error::{Error, Result};
use crate::oracles::{gcd_raw, SymbolValue};

/// A symbol value together with the base bounces that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolEvidence {
    pub value: SymbolValue,
    pub negative_bounce_count: u64,
    pub base_bounces: Vec<BaseBounce>,
}

fn positive(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be positive")));
    }
    Ok(())
}

fn odd_at_least_three(n: u64) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::EvenDenominator(n));
    }
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need odd n >= 3, got {n}")));
    }
    Ok(())
}

/// `(m|n)` from the signs of the base bounces of the `m x n` path.
pub fn billiard_symbol(m: u64, n: u64) -> Result<SymbolEvidence> {
    positive("m", m)?;
    positive("n", n)?;
    let path = trace_path(Rect::new(m, n)?);
    let base = base_bounces(&path);
    let negative_bounce_count = base.iter().filter(|b| b.sign.as_i8() < 0).count() as u64;
    let value = if gcd_raw(m, n) == 1 {
        SymbolValue::from_parity(negative_bounce_count)
    } else {
        SymbolValue::Zero
    };
    Ok(SymbolEvidence {
        value,
        negative_bounce_count,
        base_bounces: base,
    })
}

/// Shorthand for `billiard_symbol(m, n)?.value`.
pub fn symbol(m: u64, n: u64) -> Result<SymbolValue> {
    Ok(billiard_symbol(m, n)?.value)
}

/// `(-1|n)` in closed form: `+1` iff `n = 1 (mod 4)`.
pub fn symbol_supplement_minus_one(n: u64) -> Result<SymbolValue> {
    odd_at_least_three(n)?;
    Ok(if n % 4 == 1 {
        SymbolValue::One
    } else {
        SymbolValue::MinusOne
    })
}

/// `(2|n)` in closed form: `+1` iff `n = +-1 (mod 8)`.
pub fn symbol_supplement_two(n: u64) -> Result<SymbolValue> {
    odd_at_least_three(n)?;
    Ok(match n % 8 {
        1 | 7 => SymbolValue::One,
        _ => SymbolValue::MinusOne,
    })
}

/// Both sides of `(m|n)(n|m) = (m|n-m)` for odd `m < n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostReciprocityRecord {
    pub m: u64,
    pub n: u64,
    pub m_over_n: SymbolEvidence,
    pub n_over_m: SymbolEvidence,
    pub m_over_difference: SymbolEvidence,
    pub lhs: SymbolValue,
    pub rhs: SymbolValue,
}

impl AlmostReciprocityRecord {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn check_almost_reciprocity(m: u64, n: u64) -> Result<AlmostReciprocityRecord> {
    if m % 2 == 0 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "both arguments must be odd, got ({m}, {n})"
        )));
    }
    if m >= n {
        return Err(Error::InvalidArgument(format!("need m < n, got ({m}, {n})")));
    }
    let m_over_n = billiard_symbol(m, n)?;
    let n_over_m = billiard_symbol(n, m)?;
    let m_over_difference = billiard_symbol(m, n - m)?;
    Ok(AlmostReciprocityRecord {
        m,
        n,
        lhs: m_over_n.value * n_over_m.value,
        rhs: m_over_difference.value,
        m_over_n,
        n_over_m,
        m_over_difference,
    })
}

/// `(m|d)` for odd `m`, even `d`, coprime: `+1` when `d = 2 (mod 4)`,
/// `(-1)^((m-1)/2)` when `d = 0 (mod 4)`.
pub fn mod4_symbol(m: u64, d: u64) -> Result<SymbolValue> {
    if m % 2 == 0 || d % 2 == 1 || d == 0 {
        return Err(Error::InvalidArgument(format!(
            "need odd m and even positive d, got ({m}, {d})"
        )));
    }
    let g = gcd_raw(m, d);
    if g != 1 {
        return Err(Error::NotCoprime { m, n: d, gcd: g });
    }
    Ok(if d % 4 == 2 {
        SymbolValue::One
    } else {
        SymbolValue::from_parity((m - 1) / 2)
    })
}

/// Both sides of `(m|n)(n|m) = (-1)^((m-1)(n-1)/4)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocityRecord {
    pub m: u64,
    pub n: u64,
    pub m_over_n: SymbolEvidence,
    pub n_over_m: SymbolEvidence,
    pub exponent: u64,
    pub lhs: SymbolValue,
    pub rhs: SymbolValue,
}

impl ReciprocityRecord {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn check_reciprocity(m: u64, n: u64) -> Result<ReciprocityRecord> {
    odd_at_least_three(m)?;
    odd_at_least_three(n)?;
    let g = gcd_raw(m, n);
    if g != 1 {
        return Err(Error::NotCoprime { m, n, gcd: g });
    }
    let m_over_n = billiard_symbol(m, n)?;
    let n_over_m = billiard_symbol(n, m)?;
    let exponent = (m - 1) * (n - 1) / 4;
    Ok(ReciprocityRecord {
        m,
        n,
        lhs: m_over_n.value * n_over_m.value,
        rhs: SymbolValue::from_parity(exponent),
        exponent,
        m_over_n,
        n_over_m,
    })
}
