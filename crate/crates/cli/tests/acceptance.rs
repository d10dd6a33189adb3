//! Acceptance gate: one PASS/FAIL line per criterion, with elapsed time
//! checked against each criterion's budget.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use quadres::billiards::{base_bounces, trace_path, Rect};
use quadres::checkers::{
    apply_checkers, combined_puzzle_count, kernel_element, solve, solve_elimination, Board,
    EliminationOutcome, PebbleSet,
};
use quadres::oracles::{gcd, is_prime};
use quadres::tilings::{count_tilings, tiling_parity_check};
use quadres::Sign;
use quadres_cli::CheckFamily;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs `family` over explicit cases and reports the first few failures.
fn sweep(family: CheckFamily, cases: impl IntoIterator<Item = (u64, u64)>) -> Outcome {
    let mut count = 0;
    let failures: Vec<String> = cases
        .into_iter()
        .inspect(|_| count += 1)
        .filter_map(|(m, n)| family.check(m, n).err())
        .collect();
    ensure(count > 0, || format!("{family}: no cases"))?;
    ensure(failures.is_empty(), || {
        format!("{family}: {} failures, first: {:?}", failures.len(), &failures[..failures.len().min(3)])
    })
}

fn quadres(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_quadres"))
        .args(args)
        .arg("--json")
        .output()
        .expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json)
}

fn odd_coprime_pairs(lo: u64, hi: u64) -> impl Iterator<Item = (u64, u64)> {
    (lo..=hi)
        .flat_map(move |m| (lo..=hi).map(move |n| (m, n)))
        .filter(|&(m, n)| m % 2 == 1 && n % 2 == 1 && gcd(m, n) == Ok(1))
}

fn figure_one() -> Outcome {
    let start = Instant::now();
    let path = trace_path(Rect::new(5, 7).map_err(|e| e.to_string())?);
    let base: Vec<(u64, Sign, u64)> = base_bounces(&path).iter().map(|b| (b.x, b.sign, b.t)).collect();
    let elapsed = start.elapsed();
    ensure(
        base == [(4, Sign::Minus, 10), (6, Sign::Plus, 20), (2, Sign::Plus, 30)],
        || format!("base bounces {base:?}"),
    )?;
    ensure(path.end() == (7, 5) && path.length() == 35, || {
        format!("end {:?} at t={}", path.end(), path.length())
    })?;
    ensure(elapsed < Duration::from_millis(1), || format!("library trace took {elapsed:?}"))?;

    let (code, json) = quadres(&["trace", "5", "7"]);
    ensure(code == 0, || format!("trace exited {code}"))?;
    let cli: Vec<(u64, String, u64)> = json["result"]["base_bounces"]
        .as_array()
        .map(|a| {
            a.iter()
                .map(|b| {
                    (
                        b["x"].as_u64().unwrap_or(0),
                        b["sign"].as_str().unwrap_or("").to_owned(),
                        b["t"].as_u64().unwrap_or(0),
                    )
                })
                .collect()
        })
        .unwrap_or_default();
    let expected = [(4, "-".to_owned(), 10), (6, "+".to_owned(), 20), (2, "+".to_owned(), 30)];
    ensure(cli == expected, || format!("cli base bounces {cli:?}"))?;
    ensure(json["result"]["end"] == serde_json::json!([7, 5]) && json["result"]["length"] == 35, || {
        format!("cli end {} length {}", json["result"]["end"], json["result"]["length"])
    })
}

fn legendre_sweep() -> Outcome {
    let cases = (3..=199u64)
        .filter(|&n| is_prime(n))
        .flat_map(|n| (1..=2 * n).filter(move |m| m % n != 0).map(move |m| (m, n)));
    sweep(CheckFamily::Euler, cases)
}

fn zolotarev_sweep() -> Outcome {
    ensure(
        quadres::symbols::symbol(5, 8) == Ok(quadres::SymbolValue::One),
        || "(5|8) is not +1".into(),
    )?;
    sweep(CheckFamily::Zolotarev, CheckFamily::Zolotarev.cases(100, 100))
}

fn supplements() -> Outcome {
    sweep(CheckFamily::Supplements, (3..=199).step_by(2).map(|n| (0, n)))
}

fn proof_chain() -> Outcome {
    sweep(
        CheckFamily::AlmostReciprocity,
        (1..=201u64)
            .flat_map(|m| (m + 1..=201).map(move |n| (m, n)))
            .filter(|&(m, n)| m % 2 == 1 && n % 2 == 1),
    )?;
    sweep(
        CheckFamily::Mod4,
        (1..=200u64)
            .flat_map(|d| (1..d).map(move |m| (m, d)))
            .filter(|&(m, d)| m % 2 == 1 && d % 2 == 0 && gcd(m, d) == Ok(1)),
    )?;
    sweep(CheckFamily::Reciprocity, odd_coprime_pairs(3, 199).filter(|&(m, n)| m != n))
}

fn checkers_figure() -> Outcome {
    let (code, json) = quadres(&["solve", "5", "7", "--bottom-row"]);
    ensure(code == 0, || format!("solve exited {code}"))?;
    let got: BTreeSet<(u64, u64)> = json["result"]["checkers"]
        .as_array()
        .map(|a| {
            a.iter()
                .map(|p| (p[0].as_u64().unwrap_or(99), p[1].as_u64().unwrap_or(99)))
                .collect()
        })
        .unwrap_or_default();
    let expected: BTreeSet<(u64, u64)> =
        [(0, 2), (1, 1), (1, 3), (2, 2), (4, 0), (4, 2), (5, 3)].into();
    ensure(got == expected, || format!("checkers {got:?}"))?;
    ensure(json["result"]["count"] == 7 && json["result"]["value"] == -1, || {
        format!("count {} value {}", json["result"]["count"], json["result"]["value"])
    })
}

fn checkers_sweep() -> Outcome {
    // the family also checks the per-bounce bridge; run it where required and
    // the symbol comparison alone up to 50
    sweep(CheckFamily::CheckersSymbol, CheckFamily::CheckersSymbol.cases(30, 30))?;
    let mut failures = Vec::new();
    for (m, n) in CheckFamily::CheckersSymbol.cases(50, 50) {
        if m <= 30 && n <= 30 {
            continue;
        }
        let c = quadres::checkers::bottom_row_symbol(m, n).map_err(|e| e.to_string())?;
        let b = quadres::symbols::symbol(m, n).map_err(|e| e.to_string())?;
        if c.value != b {
            failures.push((m, n));
        }
    }
    ensure(failures.is_empty(), || format!("disagreements at {failures:?}"))
}

fn dichotomy() -> Outcome {
    sweep(CheckFamily::Kernel, CheckFamily::Kernel.cases(14, 14))?;
    let k = kernel_element(6, 9).map_err(|e| e.to_string())?;
    let expected: BTreeSet<(usize, usize)> = [
        (1, 1), (2, 2), (4, 4), (5, 5), (7, 5), (8, 4),
        (8, 2), (7, 1), (5, 1), (4, 2), (2, 4), (1, 5),
    ]
    .into_iter()
    .map(|(x, y)| (x - 1, y - 1))
    .collect();
    ensure(k.square_set() == expected, || format!("(6, 9) kernel {:?}", k.squares()))?;
    ensure(apply_checkers(&k).is_empty(), || "(6, 9) kernel has nonzero image".into())
}

fn superposition() -> Outcome {
    ensure(combined_puzzle_count(7, 11) == Ok(15), || {
        format!("u(7, 11) = {:?}", combined_puzzle_count(7, 11))
    })?;
    sweep(CheckFamily::Superposition, odd_coprime_pairs(1, 31))
}

fn tilings() -> Outcome {
    ensure(count_tilings(2, 3) == Ok(3) && count_tilings(4, 4) == Ok(36), || {
        "2x3 or 4x4 count wrong".into()
    })?;
    for rows in 1..=6 {
        for cols in 1..=6 {
            let r = tiling_parity_check(rows, cols).map_err(|e| e.to_string())?;
            ensure(r.count.is_some() && r.consistent(), || format!("{r:?}"))?;
        }
    }
    Ok(())
}

fn solver_cross_validation() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let boards: Vec<(u64, u64)> = (2..=13u64)
        .flat_map(|m| (2..=13).map(move |n| (m, n)))
        .filter(|&(m, n)| gcd(m, n) == Ok(1))
        .collect();
    for i in 0..200 {
        let (m, n) = boards[rng.gen_range(0..boards.len())];
        let board = Board::for_rect(m, n).map_err(|e| e.to_string())?;
        let light: Vec<(usize, usize)> = (0..board.rows())
            .flat_map(|r| (0..board.cols()).map(move |c| (c, r)))
            .filter(|&(c, r)| !Board::is_dark(c, r))
            .filter(|_| rng.gen_bool(0.4))
            .collect();
        let pebbles = PebbleSet::from_squares(board, light).map_err(|e| e.to_string())?;
        let constructive = solve(&pebbles).map_err(|e| e.to_string())?;
        ensure(apply_checkers(&constructive) == pebbles, || {
            format!("puzzle {i} on ({m}, {n}): round trip failed")
        })?;
        match solve_elimination(&pebbles) {
            EliminationOutcome::Unique(e) if e == constructive => {}
            other => return Err(format!("puzzle {i} on ({m}, {n}): elimination gave {other:?}")),
        }
    }
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "figure 1 trace", budget: None, run: figure_one },
        Criterion { id: 2, name: "legendre sweep", budget: Some(secs(5)), run: legendre_sweep },
        Criterion { id: 3, name: "zolotarev equivalence", budget: Some(secs(5)), run: zolotarev_sweep },
        Criterion { id: 4, name: "supplements", budget: None, run: supplements },
        Criterion { id: 5, name: "proof-chain identities", budget: Some(secs(10)), run: proof_chain },
        Criterion { id: 6, name: "bottom-row checkers figure", budget: None, run: checkers_figure },
        Criterion { id: 7, name: "checkers symbol sweep", budget: Some(secs(20)), run: checkers_sweep },
        Criterion { id: 8, name: "solvability dichotomy", budget: None, run: dichotomy },
        Criterion { id: 9, name: "superposition identity", budget: None, run: superposition },
        Criterion { id: 10, name: "tiling parity", budget: Some(secs(10)), run: tilings },
        Criterion { id: 11, name: "solver cross-validation", budget: None, run: solver_cross_validation },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(()), Some(budget)) = (&outcome, c.budget) {
            if elapsed >= budget {
                outcome = Err(format!("took {elapsed:.2?}, budget {budget:?}"));
            }
        }
        match outcome {
            Ok(()) => println!("PASS criterion {:>2}: {} ({elapsed:.2?})", c.id, c.name),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {} ({elapsed:.2?}): {e}", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
