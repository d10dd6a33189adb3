//! Classical number-theory primitives.
//!
//! These are the ground truth that the geometric symbols are checked
//! against: Euler's criterion, the Jacobi recursion, and Zolotarev's
//! permutation sign. None of them touches the billiards code.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Mul, MulAssign, Neg};

use crate::error::{Error, Result};

/// A residue symbol value in `{-1, 0, +1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolValue {
    MinusOne,
    Zero,
    One,
}

impl SymbolValue {
    pub fn as_i8(self) -> i8 {
        match self {
            SymbolValue::MinusOne => -1,
            SymbolValue::Zero => 0,
            SymbolValue::One => 1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            -1 => Some(SymbolValue::MinusOne),
            0 => Some(SymbolValue::Zero),
            1 => Some(SymbolValue::One),
            _ => None,
        }
    }

    /// `(-1)^count`.
    pub fn from_parity(count: u64) -> Self {
        if count % 2 == 0 {
            SymbolValue::One
        } else {
            SymbolValue::MinusOne
        }
    }
}

impl Mul for SymbolValue {
    type Output = SymbolValue;

    fn mul(self, rhs: SymbolValue) -> SymbolValue {
        match (self, rhs) {
            (SymbolValue::Zero, _) | (_, SymbolValue::Zero) => SymbolValue::Zero,
            (a, b) if a == b => SymbolValue::One,
            _ => SymbolValue::MinusOne,
        }
    }
}

impl MulAssign for SymbolValue {
    fn mul_assign(&mut self, rhs: SymbolValue) {
        *self = *self * rhs;
    }
}

impl Neg for SymbolValue {
    type Output = SymbolValue;

    fn neg(self) -> SymbolValue {
        self * SymbolValue::MinusOne
    }
}

impl std::iter::Product for SymbolValue {
    fn product<I: Iterator<Item = SymbolValue>>(iter: I) -> SymbolValue {
        iter.fold(SymbolValue::One, Mul::mul)
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolValue::MinusOne => f.write_str("-1"),
            SymbolValue::Zero => f.write_str("0"),
            SymbolValue::One => f.write_str("+1"),
        }
    }
}

pub(crate) fn gcd_raw(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Greatest common divisor. `gcd(0, 0)` is rejected.
pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::GcdOfZeros);
    }
    Ok(gcd_raw(a, b))
}

/// Least common multiple of two positive integers.
///
/// Panics on zero arguments or if the result overflows `u64`.
pub fn lcm(a: u64, b: u64) -> u64 {
    assert!(a > 0 && b > 0, "lcm of non-positive arguments");
    (a / gcd_raw(a, b))
        .checked_mul(b)
        .expect("lcm overflows u64")
}

/// `base^exp` reduced into `[0, modulus)`. Negative bases are reduced first.
pub fn mod_pow(base: i64, mut exp: u64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(Error::ModulusTooSmall(modulus));
    }
    let m = modulus as u128;
    let mut b = (base as i128).rem_euclid(modulus as i128) as u128;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    Ok(acc as u64)
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    Ok(())
}

/// Legendre symbol `(a|p)` by Euler's criterion.
pub fn euler_symbol(a: i64, p: u64) -> Result<SymbolValue> {
    require_odd_prime(p)?;
    let r = (a as i128).rem_euclid(p as i128) as u64;
    if r == 0 {
        return Ok(SymbolValue::Zero);
    }
    match mod_pow(r as i64, (p - 1) / 2, p)? {
        1 => Ok(SymbolValue::One),
        v if v == p - 1 => Ok(SymbolValue::MinusOne),
        value => Err(Error::EulerInconsistent { base: r, p, value }),
    }
}

/// The set `{x^2 mod n : 1 <= x <= n-1}`.
pub fn residue_table(n: u64) -> Result<BTreeSet<u64>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "residue table needs n >= 2, got {n}"
        )));
    }
    let n128 = n as u128;
    Ok((1..n)
        .map(|x| ((x as u128 * x as u128) % n128) as u64)
        .collect())
}

/// Jacobi symbol `(a|n)` for odd positive `n`, with `(a|1) = +1`.
pub fn jacobi_symbol(a: i64, n: u64) -> Result<SymbolValue> {
    if n % 2 == 0 {
        return Err(Error::EvenDenominator(n));
    }
    let mut a = (a as i128).rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut negate = false;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            // (2|n) = -1 exactly when n = 3, 5 (mod 8)
            if n % 8 == 3 || n % 8 == 5 {
                negate = !negate;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            negate = !negate;
        }
        a %= n;
    }
    Ok(match (n, negate) {
        (1, false) => SymbolValue::One,
        (1, true) => SymbolValue::MinusOne,
        _ => SymbolValue::Zero,
    })
}

/// Sign of the permutation `x -> m*x` of `Z/nZ`, by cycle decomposition.
pub fn zolotarev_perm_sign(m: u64, n: u64) -> Result<SymbolValue> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let g = gcd_raw(m, n);
    if g != 1 {
        return Err(Error::NotCoprime { m, n, gcd: g });
    }
    let len = n as usize;
    let step = (m % n) as u128;
    let mut seen = vec![false; len];
    let mut cycles = 0usize;
    for start in 0..len {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = ((x as u128 * step) % n as u128) as usize;
        }
    }
    // a permutation of n points with c cycles has sign (-1)^(n - c)
    Ok(SymbolValue::from_parity((len - cycles) as u64))
}

/// Outcome of the Hardy–Wright pairing argument for one `(p, a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WilsonRecord {
    pub p: u64,
    /// `a` reduced into `[1, p)`.
    pub a: u64,
    /// Pairs `{x, y}` with `x < y` and `x*y = a (mod p)`.
    pub pairs: Vec<(u64, u64)>,
    /// The square roots `{x, p - x}` of `a`, when `a` is a residue.
    pub leftover: Option<(u64, u64)>,
    /// `(p-1)! mod p`.
    pub factorial: u64,
    /// `a^((p-1)/2) mod p`.
    pub euler_power: u64,
    /// Every nonzero residue lies in exactly one pair or in the leftover.
    pub partition_ok: bool,
    /// `(p-1)! = a^((p-1)/2)` for non-residues, `-a^((p-1)/2)` for residues.
    pub product_ok: bool,
    /// `(p-1)! = -1 (mod p)`.
    pub wilson_ok: bool,
}

impl WilsonRecord {
    pub fn is_residue(&self) -> bool {
        self.leftover.is_some()
    }

    pub fn holds(&self) -> bool {
        self.partition_ok && self.product_ok && self.wilson_ok
    }
}

/// Builds the pairing `xy = a (mod p)` over the nonzero residues and checks
/// the factorial identities it implies.
pub fn wilson_pairing_check(p: u64, a: i64) -> Result<WilsonRecord> {
    require_odd_prime(p)?;
    let r = (a as i128).rem_euclid(p as i128) as u64;
    if r == 0 {
        return Err(Error::Divisible { a, p });
    }
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;

    let mut pairs = Vec::new();
    let mut roots = Vec::new();
    for x in 1..p {
        let y = mul(r, mod_pow(x as i64, p - 2, p)?);
        match x.cmp(&y) {
            std::cmp::Ordering::Less => pairs.push((x, y)),
            std::cmp::Ordering::Equal => roots.push(x),
            std::cmp::Ordering::Greater => {}
        }
    }
    let leftover = match roots.as_slice() {
        [] => None,
        [x, y] => Some((*x, *y)),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "{} square roots of {r} modulo {p}",
                roots.len()
            )))
        }
    };

    let mut seen = vec![0u32; p as usize];
    for &(x, y) in pairs.iter().chain(leftover.iter()) {
        seen[x as usize] += 1;
        seen[y as usize] += 1;
    }
    let partition_ok = seen[1..].iter().all(|&c| c == 1);

    let factorial = (1..p).fold(1u64, &mul);
    let euler_power = mod_pow(r as i64, (p - 1) / 2, p)?;
    let pair_product = pairs.iter().fold(1u64, |acc, &(x, y)| mul(acc, mul(x, y)));
    let product_ok = match leftover {
        None => factorial == euler_power && pair_product == euler_power,
        Some((x, y)) => {
            // x * (-x) = -a, so the full product picks up one extra sign
            mul(x, y) == p - r && factorial == (p - euler_power) % p
        }
    };
    Ok(WilsonRecord {
        p,
        a: r,
        pairs,
        leftover,
        factorial,
        euler_power,
        partition_ok,
        product_ok,
        wilson_ok: factorial == p - 1,
    })
}
