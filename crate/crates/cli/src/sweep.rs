//! Verification sweeps: each check family walks a grid of `(m, n)` cases
//! and compares independent computations of the same quantity.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use quadres::billiards::{base_bounces, trace_path, Rect};
use quadres::checkers::{
    apply_checkers, bottom_row_symbol, kernel_element, solve_single_pebble, superposition, Board,
    PebbleSet,
};
use quadres::oracles::{euler_symbol, is_prime, jacobi_symbol, zolotarev_perm_sign, SymbolValue};
use quadres::symbols::{
    billiard_symbol, check_almost_reciprocity, check_reciprocity, mod4_symbol,
    symbol_supplement_minus_one, symbol_supplement_two,
};
use quadres::tilings::tiling_parity_check;

/// Default bound on `max_n * max_m`.
pub const DEFAULT_MAX_CELLS: u64 = 500 * 500;
/// How many failing cases each family keeps as witnesses.
const WITNESS_LIMIT: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckFamily {
    Euler,
    Zolotarev,
    Jacobi,
    Supplements,
    AlmostReciprocity,
    Mod4,
    Reciprocity,
    CheckersSymbol,
    Kernel,
    Superposition,
    Tilings,
}

impl CheckFamily {
    pub const ALL: [CheckFamily; 11] = [
        CheckFamily::Euler,
        CheckFamily::Zolotarev,
        CheckFamily::Jacobi,
        CheckFamily::Supplements,
        CheckFamily::AlmostReciprocity,
        CheckFamily::Mod4,
        CheckFamily::Reciprocity,
        CheckFamily::CheckersSymbol,
        CheckFamily::Kernel,
        CheckFamily::Superposition,
        CheckFamily::Tilings,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckFamily::Euler => "euler",
            CheckFamily::Zolotarev => "zolotarev",
            CheckFamily::Jacobi => "jacobi",
            CheckFamily::Supplements => "supplements",
            CheckFamily::AlmostReciprocity => "almost_reciprocity",
            CheckFamily::Mod4 => "mod4",
            CheckFamily::Reciprocity => "reciprocity",
            CheckFamily::CheckersSymbol => "checkers_symbol",
            CheckFamily::Kernel => "kernel",
            CheckFamily::Superposition => "superposition",
            CheckFamily::Tilings => "tilings",
        }
    }

    /// The `(m, n)` grid this family checks, in sorted order.
    pub fn cases(self, max_m: u64, max_n: u64) -> Vec<(u64, u64)> {
        let coprime = |m: u64, n: u64| quadres::oracles::gcd(m, n) == Ok(1);
        let grid = |m_lo: u64, n_lo: u64| {
            (m_lo..=max_m).flat_map(move |m| (n_lo..=max_n).map(move |n| (m, n)))
        };
        let odd = |v: u64| v % 2 == 1;
        match self {
            CheckFamily::Euler => grid(1, 3)
                .filter(|&(m, n)| odd(n) && is_prime(n) && m % n != 0)
                .collect(),
            CheckFamily::Zolotarev => grid(1, 1).filter(|&(m, n)| coprime(m, n)).collect(),
            CheckFamily::Jacobi => grid(1, 1).filter(|&(_, n)| odd(n)).collect(),
            CheckFamily::Supplements => (3..=max_n).filter(|&n| odd(n)).map(|n| (0, n)).collect(),
            CheckFamily::AlmostReciprocity => grid(1, 1)
                .filter(|&(m, n)| odd(m) && odd(n) && m < n)
                .collect(),
            CheckFamily::Mod4 => grid(1, 2)
                .filter(|&(m, d)| odd(m) && !odd(d) && coprime(m, d))
                .collect(),
            CheckFamily::Reciprocity => grid(3, 3)
                .filter(|&(m, n)| odd(m) && odd(n) && m != n && coprime(m, n))
                .collect(),
            CheckFamily::CheckersSymbol => grid(1, 1).filter(|&(m, n)| coprime(m, n)).collect(),
            CheckFamily::Kernel | CheckFamily::Tilings => grid(2, 2).collect(),
            CheckFamily::Superposition => grid(1, 1)
                .filter(|&(m, n)| odd(m) && odd(n) && coprime(m, n))
                .collect(),
        }
    }

    /// Runs one case; `Err` carries a witness describing the disagreement.
    pub fn check(self, m: u64, n: u64) -> Result<(), String> {
        let fail = |msg: String| Err(format!("({m}, {n}): {msg}"));
        let sym = |a: u64, b: u64| billiard_symbol(a, b).map(|e| e.value).map_err(|e| e.to_string());
        match self {
            CheckFamily::Euler => {
                let b = sym(m, n)?;
                let e = euler_symbol(m as i64, n).map_err(|e| e.to_string())?;
                if b != e {
                    return fail(format!("billiards {b}, euler {e}"));
                }
            }
            CheckFamily::Zolotarev => {
                let b = sym(m, n)?;
                let z = zolotarev_perm_sign(m, n).map_err(|e| e.to_string())?;
                if b != z {
                    return fail(format!("billiards {b}, zolotarev {z}"));
                }
            }
            CheckFamily::Jacobi => {
                let b = sym(m, n)?;
                let j = jacobi_symbol(m as i64, n).map_err(|e| e.to_string())?;
                if b != j {
                    return fail(format!("billiards {b}, jacobi {j}"));
                }
            }
            CheckFamily::Supplements => {
                let minus_one = symbol_supplement_minus_one(n).map_err(|e| e.to_string())?;
                let two = symbol_supplement_two(n).map_err(|e| e.to_string())?;
                let (b1, b2) = (sym(n - 1, n)?, sym(2, n)?);
                if minus_one != b1 || two != b2 {
                    return fail(format!(
                        "(-1|n) closed {minus_one} vs billiards {b1}; (2|n) closed {two} vs billiards {b2}"
                    ));
                }
            }
            CheckFamily::AlmostReciprocity => {
                let r = check_almost_reciprocity(m, n).map_err(|e| e.to_string())?;
                if !r.holds() {
                    return fail(format!("(m|n)(n|m) = {}, (m|n-m) = {}", r.lhs, r.rhs));
                }
            }
            CheckFamily::Mod4 => {
                let closed = mod4_symbol(m, n).map_err(|e| e.to_string())?;
                let b = sym(m, n)?;
                if closed != b {
                    return fail(format!("closed form {closed}, billiards {b}"));
                }
            }
            CheckFamily::Reciprocity => {
                let r = check_reciprocity(m, n).map_err(|e| e.to_string())?;
                if !r.holds() {
                    return fail(format!("(m|n)(n|m) = {}, (-1)^{} = {}", r.lhs, r.exponent, r.rhs));
                }
            }
            CheckFamily::CheckersSymbol => {
                let c = bottom_row_symbol(m, n).map_err(|e| e.to_string())?;
                let b = sym(m, n)?;
                if c.value != b {
                    return fail(format!("checkers {} ({} checkers), billiards {b}", c.value, c.checker_count));
                }
                let rect = Rect::new(m, n).map_err(|e| e.to_string())?;
                let board = Board::for_rect(m, n).map_err(|e| e.to_string())?;
                for bounce in base_bounces(&trace_path(rect)) {
                    let k = bounce.x / 2;
                    let single = solve_single_pebble(m, n, k).map_err(|e| e.to_string())?;
                    if SymbolValue::from_parity(single.len() as u64) != bounce.sign.symbol() {
                        return fail(format!(
                            "bounce at ({}, 0) is {} but its single-pebble solution has {} checkers",
                            bounce.x,
                            bounce.sign.as_char(),
                            single.len()
                        ));
                    }
                    if board.rows() > 0 {
                        let target = PebbleSet::from_squares(board, [(bounce.x as usize - 1, 0)])
                            .map_err(|e| e.to_string())?;
                        if apply_checkers(&single) != target {
                            return fail(format!("single-pebble solution for k = {k} is wrong"));
                        }
                    }
                }
            }
            CheckFamily::Kernel => {
                let board = Board::for_rect(m, n).map_err(|e| e.to_string())?;
                let invertible = board.adjacency_matrix().is_invertible();
                let coprime = board.is_coprime();
                if invertible != coprime {
                    return fail(format!("invertible = {invertible}, coprime = {coprime}"));
                }
                if !coprime {
                    let k = kernel_element(m, n).map_err(|e| e.to_string())?;
                    if k.is_empty() || !apply_checkers(&k).is_empty() {
                        return fail(format!("kernel element {k:?} is not a nonzero solution"));
                    }
                }
            }
            CheckFamily::Superposition => {
                let s = superposition(m, n).map_err(|e| e.to_string())?;
                let expected = (m - 1) * (n - 1) / 4;
                if s.u != expected || s.u % 2 != (s.s + s.t) % 2 {
                    return fail(format!("s = {}, t = {}, u = {}, expected u = {expected}", s.s, s.t, s.u));
                }
            }
            CheckFamily::Tilings => {
                let r = tiling_parity_check((m - 1) as usize, (n - 1) as usize)
                    .map_err(|e| e.to_string())?;
                if !r.consistent() {
                    return fail(format!(
                        "count {:?}, gcd flag {}, invertible {}",
                        r.count, r.gcd_flag, r.rank_full
                    ));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for CheckFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CheckFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = CheckFamily::ALL.iter().map(|f| f.name()).collect();
                format!("unknown check {s:?}; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_n: u64,
    pub max_m: u64,
    pub checks: Vec<CheckFamily>,
    pub parallelism: usize,
}

impl SweepConfig {
    pub fn validate(&self, max_cells: u64) -> Result<(), String> {
        if self.max_n == 0 || self.max_m == 0 {
            return Err("sweep bounds must be positive".into());
        }
        if self.parallelism == 0 {
            return Err("parallelism must be positive".into());
        }
        if self.checks.is_empty() {
            return Err("no check families selected".into());
        }
        match self.max_n.checked_mul(self.max_m) {
            Some(cells) if cells <= max_cells => Ok(()),
            _ => Err(format!(
                "max_n * max_m = {} x {} exceeds the safety limit {max_cells} (set QUADRES_MAX_CELLS to raise it)",
                self.max_n, self.max_m
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub family: CheckFamily,
    pub cases: usize,
    pub failures: usize,
    /// The first few failing cases, in case order.
    pub witnesses: Vec<String>,
    pub elapsed: Duration,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Runs one family over its grid on `parallelism` threads. Cases are dealt
/// round-robin and results merged back in case order.
pub fn run_family(family: CheckFamily, max_m: u64, max_n: u64, parallelism: usize) -> FamilyReport {
    let start = Instant::now();
    let cases = family.cases(max_m, max_n);
    let workers = parallelism.clamp(1, cases.len().max(1));
    let mut outcomes: Vec<(usize, Result<(), String>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let cases = &cases;
                scope.spawn(move || {
                    cases
                        .iter()
                        .enumerate()
                        .skip(w)
                        .step_by(workers)
                        .map(|(i, &(m, n))| (i, family.check(m, n)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    outcomes.sort_by_key(|(i, _)| *i);
    let failed: Vec<String> = outcomes.into_iter().filter_map(|(_, r)| r.err()).collect();
    FamilyReport {
        family,
        cases: cases.len(),
        failures: failed.len(),
        witnesses: failed.into_iter().take(WITNESS_LIMIT).collect(),
        elapsed: start.elapsed(),
    }
}

/// Runs every selected family in order, calling `on_done` as each finishes.
pub fn run(config: &SweepConfig, mut on_done: impl FnMut(&FamilyReport)) -> Vec<FamilyReport> {
    let mut families = config.checks.clone();
    families.sort();
    families.dedup();
    families
        .into_iter()
        .map(|family| {
            let report = run_family(family, config.max_m, config.max_n, config.parallelism);
            on_done(&report);
            report
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in CheckFamily::ALL {
            assert_eq!(f.name().parse::<CheckFamily>(), Ok(f));
        }
        assert!("kronecker".parse::<CheckFamily>().is_err());
    }

    #[test]
    fn config_limits() {
        let cfg = SweepConfig {
            max_n: 600,
            max_m: 600,
            checks: vec![CheckFamily::Euler],
            parallelism: 1,
        };
        assert!(cfg.validate(DEFAULT_MAX_CELLS).is_err());
        assert!(cfg.validate(400_000).is_ok());
        let cfg = SweepConfig { checks: vec![], ..cfg };
        assert!(cfg.validate(u64::MAX).is_err());
    }

    #[test]
    fn results_do_not_depend_on_parallelism() {
        for family in CheckFamily::ALL {
            let one = run_family(family, 12, 12, 1);
            let four = run_family(family, 12, 12, 4);
            assert_eq!((one.cases, one.failures), (four.cases, four.failures));
            assert!(one.passed(), "{family}: {:?}", one.witnesses);
        }
    }

    #[test]
    fn case_grids() {
        assert_eq!(CheckFamily::Supplements.cases(5, 9), vec![(0, 3), (0, 5), (0, 7), (0, 9)]);
        assert!(CheckFamily::Euler.cases(10, 10).contains(&(5, 7)));
        assert!(!CheckFamily::Euler.cases(10, 10).contains(&(7, 7)));
        assert!(CheckFamily::Reciprocity.cases(7, 7).iter().all(|&(m, n)| m >= 3 && m != n));
    }
}
