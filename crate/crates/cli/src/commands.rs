//! Subcommand implementations. Each returns a [`Report`]; printing and exit
//! codes are left to the binary.

use std::fmt::Write as _;

use serde_json::{json, Value};

use quadres::billiards::{base_bounces, trace_path, Rect};
use quadres::checkers::{
    apply_checkers, bottom_row_puzzle, bottom_row_symbol, kernel_element, left_column_puzzle, solve,
    solve_elimination, Board, CheckerSet, EliminationOutcome, PebbleSet,
};
use quadres::oracles::{euler_symbol, is_prime, jacobi_symbol, zolotarev_perm_sign, SymbolValue};
use quadres::render::{render_board_ascii, render_board_svg, render_path_svg, RenderSpec};
use quadres::symbols::billiard_symbol;

use crate::report::{Report, Status, UsageError};
use crate::sweep::{self, FamilyReport, SweepConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

impl RenderFormat {
    pub fn name(self) -> &'static str {
        match self {
            RenderFormat::Ascii => "ascii",
            RenderFormat::Svg => "svg",
        }
    }
}

/// Rejects zero sides and rectangles above the cell limit.
pub fn check_sides(m: u64, n: u64, max_cells: u64) -> Result<(), UsageError> {
    if m == 0 || n == 0 {
        return Err(UsageError(format!("sides must be positive, got ({m}, {n})")));
    }
    match m.checked_mul(n) {
        Some(c) if c <= max_cells => Ok(()),
        _ => Err(UsageError(format!(
            "{m}x{n} exceeds the safety limit of {max_cells} cells (set QUADRES_MAX_CELLS to raise it)"
        ))),
    }
}

fn squares_json(squares: &[(usize, usize)]) -> Value {
    Value::Array(squares.iter().map(|&(c, r)| json!([c, r])).collect())
}

fn squares_text(squares: &[(usize, usize)]) -> String {
    let parts: Vec<String> = squares.iter().map(|(c, r)| format!("({c},{r})")).collect();
    parts.join(" ")
}

/// The corner reached at `t = lcm`: `x` is at `n` after an odd number of
/// widths, and likewise for `y`.
fn expected_corner(rect: Rect) -> (u64, u64) {
    let l = rect.lcm();
    let side = |s: u64| if (l / s) % 2 == 1 { s } else { 0 };
    (side(rect.n()), side(rect.m()))
}

pub fn trace(m: u64, n: u64, render: Option<RenderFormat>, max_cells: u64) -> Result<Report, UsageError> {
    check_sides(m, n, max_cells)?;
    if render == Some(RenderFormat::Ascii) {
        return Err(UsageError("trace renders paths as svg only".into()));
    }
    let rect = Rect::new(m, n)?;
    let path = trace_path(rect);
    let base = base_bounces(&path);
    let (ex, ey) = path.end();
    let mut report = Report::new("trace", Some(m), Some(n));
    if let Some(r) = render {
        report.flag("render", r.name());
    }

    let mut text = String::new();
    if path.bounces().is_empty() {
        let _ = writeln!(text, "no bounces; end ({ex},{ey})");
    } else {
        let _ = writeln!(text, "{:>6} {:>5} {:>5}  {:<7} sign", "t", "x", "y", "wall");
        for b in path.bounces() {
            let _ = writeln!(
                text,
                "{:>6} {:>5} {:>5}  {:<7} {}",
                b.t,
                b.x,
                b.y,
                b.wall.name(),
                b.sign.as_char()
            );
        }
        let _ = writeln!(text, "end ({ex},{ey}) at t={}", path.length());
    }
    if !base.is_empty() {
        let parts: Vec<String> = base
            .iter()
            .map(|b| format!("({},{},t={})", b.x, b.sign.as_char(), b.t))
            .collect();
        let _ = writeln!(text, "base bounces: {}", parts.join(" "));
    }
    report.text = text;

    report.result = json!({
        "length": path.length(),
        "end": [ex, ey],
        "bounces": path.bounces().iter().map(|b| json!({
            "t": b.t, "x": b.x, "y": b.y, "wall": b.wall.name(), "sign": b.sign.as_char().to_string(),
        })).collect::<Vec<_>>(),
        "base_bounces": base.iter().map(|b| json!({
            "x": b.x, "sign": b.sign.as_char().to_string(), "t": b.t,
        })).collect::<Vec<_>>(),
    });

    report.check(
        "endpoint_at_lcm",
        Status::from_bool(path.length() == rect.lcm() && path.end() == expected_corner(rect)),
        json!({"t": path.length(), "end": [ex, ey]}),
    );
    // t = sign * x (mod n) at every base bounce
    let bad: Vec<Value> = base
        .iter()
        .filter(|b| (b.t as i128 - b.sign.as_i8() as i128 * b.x as i128).rem_euclid(n as i128) != 0)
        .map(|b| json!({"x": b.x, "t": b.t}))
        .collect();
    report.check(
        "base_sign_congruence",
        Status::from_bool(bad.is_empty()),
        if bad.is_empty() { Value::Null } else { Value::Array(bad) },
    );

    if render == Some(RenderFormat::Svg) {
        report.svg = Some(render_path_svg(&path, &RenderSpec::default(), None)?);
    }
    Ok(report)
}

pub fn symbol(m: u64, n: u64, verify: bool, max_cells: u64) -> Result<Report, UsageError> {
    check_sides(m, n, max_cells)?;
    let evidence = billiard_symbol(m, n)?;
    let value = evidence.value;
    let mut report = Report::new("symbol", Some(m), Some(n));
    report.flag("verify", verify);

    let mut text = format!(
        "({m}|{n}) = {value}  [billiards: {} negative of {} base bounces]\n",
        evidence.negative_bounce_count,
        evidence.base_bounces.len()
    );
    let mut methods = serde_json::Map::new();
    methods.insert("billiards".into(), json!(value.as_i8()));

    if verify {
        let coprime = quadres::oracles::gcd(m, n)? == 1;
        let odd = n % 2 == 1;
        let mut columns: Vec<(&str, Option<SymbolValue>)> = Vec::new();
        let oracle = |r: quadres::Result<SymbolValue>| r.map_err(UsageError::from);
        columns.push((
            "euler",
            if odd && is_prime(n) { Some(oracle(euler_symbol(m as i64, n))?) } else { None },
        ));
        columns.push(("jacobi", if odd { Some(oracle(jacobi_symbol(m as i64, n))?) } else { None }));
        columns.push((
            "zolotarev",
            if coprime { Some(oracle(zolotarev_perm_sign(m, n))?) } else { None },
        ));
        columns.push((
            "checkers",
            if coprime { Some(bottom_row_symbol(m, n)?.value) } else { None },
        ));

        let _ = writeln!(text, "{:<10} {:>3}", "billiards", value.to_string());
        for (name, v) in &columns {
            match v {
                Some(v) => {
                    let _ = writeln!(text, "{name:<10} {:>3}", v.to_string());
                    methods.insert((*name).into(), json!(v.as_i8()));
                    report.check(
                        *name,
                        Status::from_bool(*v == value),
                        json!({"billiards": value.as_i8(), *name: v.as_i8()}),
                    );
                }
                None => {
                    let _ = writeln!(text, "{name:<10} n/a");
                    methods.insert((*name).into(), Value::Null);
                    report.check(*name, Status::Skip, Value::Null);
                }
            }
        }
        let _ = writeln!(text, "verdict: {}", if report.failed() { "DISAGREE" } else { "OK" });
    }
    report.text = text;
    report.result = json!({
        "value": value.as_i8(),
        "negative_bounce_count": evidence.negative_bounce_count,
        "base_bounces": evidence.base_bounces.iter().map(|b| json!({
            "x": b.x, "sign": b.sign.as_char().to_string(), "t": b.t,
        })).collect::<Vec<_>>(),
        "methods": methods,
    });
    Ok(report)
}

/// Which puzzle `solve` should build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Puzzle {
    BottomRow,
    LeftColumn,
    Both,
    Pebbles(Vec<(usize, usize)>),
    Kernel,
}

impl Puzzle {
    fn name(&self) -> &'static str {
        match self {
            Puzzle::BottomRow => "bottom-row",
            Puzzle::LeftColumn => "left-column",
            Puzzle::Both => "both",
            Puzzle::Pebbles(_) => "pebbles",
            Puzzle::Kernel => "kernel",
        }
    }
}

pub fn solve_puzzle(
    m: u64,
    n: u64,
    puzzle: &Puzzle,
    render: Option<RenderFormat>,
    max_cells: u64,
) -> Result<Report, UsageError> {
    check_sides(m, n, max_cells)?;
    let board = Board::for_rect(m, n)?;
    let mut report = Report::new("solve", Some(m), Some(n));
    report.flag("puzzle", puzzle.name());
    if let Puzzle::Pebbles(p) = puzzle {
        report.flag("pebbles", squares_json(p));
    }
    if let Some(r) = render {
        report.flag("render", r.name());
    }

    let pebbles = match puzzle {
        Puzzle::BottomRow => Some(bottom_row_puzzle(board)),
        Puzzle::LeftColumn => Some(left_column_puzzle(board)),
        Puzzle::Both => Some(bottom_row_puzzle(board).xor(&left_column_puzzle(board))),
        Puzzle::Pebbles(sq) => Some(PebbleSet::from_squares(board, sq.iter().copied())?),
        Puzzle::Kernel => None,
    };

    let mut text = format!(
        "{} board ({}x{} squares), puzzle {}\n",
        Rect::new(m, n)?,
        board.rows(),
        board.cols(),
        puzzle.name()
    );
    let kernel_witness = || -> Result<Value, UsageError> {
        Ok(squares_json(&kernel_element(m, n)?.squares()))
    };

    let checkers: Option<CheckerSet> = match &pebbles {
        None => {
            if board.is_coprime() {
                let _ = writeln!(text, "gcd({m}, {n}) = 1: the kernel is trivial");
                report.check("kernel_nonzero", Status::Fail, Value::Null);
                None
            } else {
                let k = kernel_element(m, n)?;
                let image_empty = apply_checkers(&k).is_empty();
                report.check("kernel_nonzero", Status::from_bool(!k.is_empty()), json!(k.len()));
                report.check("empty_image", Status::from_bool(image_empty), Value::Null);
                Some(k)
            }
        }
        Some(p) if board.is_coprime() => {
            let sol = solve(p)?;
            report.check("round_trip", Status::from_bool(&apply_checkers(&sol) == p), Value::Null);
            let agrees = matches!(solve_elimination(p), EliminationOutcome::Unique(ref e) if *e == sol);
            report.check("elimination_agrees", Status::from_bool(agrees), Value::Null);
            Some(sol)
        }
        Some(p) => {
            let g = quadres::oracles::gcd(m, n)?;
            let _ = writeln!(
                text,
                "gcd({m}, {n}) = {g}: the puzzle map is singular"
            );
            report.check("unique_solution", Status::Fail, kernel_witness()?);
            match solve_elimination(p) {
                EliminationOutcome::Singular { particular, .. } => Some(particular),
                _ => {
                    let _ = writeln!(text, "this puzzle has no solution");
                    None
                }
            }
        }
    };

    if let Some(c) = &checkers {
        let s = c.len() as u64;
        let value = SymbolValue::from_parity(s);
        let _ = writeln!(text, "checkers: {}", squares_text(&c.squares()));
        let _ = writeln!(text, "count s = {s}, (-1)^s = {value}");
        report.result = json!({
            "checkers": squares_json(&c.squares()),
            "count": s,
            "value": value.as_i8(),
        });
    } else {
        report.result = json!({"checkers": null, "count": null, "value": null});
    }
    if report.failed() && !board.is_coprime() {
        let k = kernel_element(m, n)?;
        let _ = writeln!(text, "kernel witness: {}", squares_text(&k.squares()));
        report.result["kernel_witness"] = squares_json(&k.squares());
    }

    match render {
        Some(RenderFormat::Ascii) => {
            let art = render_board_ascii(board, pebbles.as_ref(), checkers.as_ref());
            text.push_str(&art);
            report.result["rendering"] = Value::String(art);
        }
        Some(RenderFormat::Svg) => {
            report.svg = Some(render_board_svg(
                board,
                pebbles.as_ref(),
                checkers.as_ref(),
                &RenderSpec::default(),
            )?);
        }
        None => {}
    }
    report.text = text;
    Ok(report)
}

/// Runs a sweep, passing each finished family's summary line to `on_line`.
pub fn verify(
    config: &SweepConfig,
    max_cells: u64,
    mut on_line: impl FnMut(&str),
) -> Result<Report, UsageError> {
    config.validate(max_cells).map_err(UsageError)?;
    let mut report = Report::new("verify", None, None);
    report.flag("max_n", config.max_n);
    report.flag("max_m", config.max_m);
    report.flag("checks", config.checks.iter().map(|c| c.name()).collect::<Vec<_>>());
    report.flag("parallelism", config.parallelism as u64);

    let families = sweep::run(config, |f| on_line(&family_line(f)));
    let mut text = String::new();
    for f in &families {
        text.push_str(&family_line(f));
        text.push('\n');
        let witness = if f.witnesses.is_empty() {
            Value::Null
        } else {
            json!(f.witnesses)
        };
        report.check(f.family.name(), Status::from_bool(f.passed()), witness);
    }
    let total_cases: usize = families.iter().map(|f| f.cases).sum();
    let total_failures: usize = families.iter().map(|f| f.failures).sum();
    let _ = writeln!(text, "total: {total_cases} cases, {total_failures} failures");
    report.text = text;
    report.result = json!({
        "families": families.iter().map(|f| json!({
            "name": f.family.name(),
            "cases": f.cases,
            "failures": f.failures,
            "witnesses": f.witnesses,
        })).collect::<Vec<_>>(),
        "total_cases": total_cases,
        "total_failures": total_failures,
    });
    Ok(report)
}

/// One summary line per family; failing witnesses follow indented.
pub fn family_line(f: &FamilyReport) -> String {
    let mut line = format!(
        "{:<20} {:>7} cases {:>5} failures  {}",
        f.family.name(),
        f.cases,
        f.failures,
        if f.passed() { "PASS" } else { "FAIL" }
    );
    for w in &f.witnesses {
        let _ = write!(line, "\n    {w}");
    }
    line
}

pub fn render_path(
    m: u64,
    n: u64,
    split: Option<u64>,
    spec: &RenderSpec,
    max_cells: u64,
) -> Result<Report, UsageError> {
    check_sides(m, n, max_cells)?;
    let path = trace_path(Rect::new(m, n)?);
    let svg = render_path_svg(&path, spec, split)?;
    let mut report = Report::new("render", Some(m), Some(n));
    if let Some(k) = split {
        report.flag("split", k);
    }
    report.flag("cell_px", spec.cell_px);
    report.flag("grid", spec.show_grid);
    report.flag("signs", spec.annotate_signs);
    report.flag("color_before", spec.color_before.clone());
    report.flag("color_after", spec.color_after.clone());
    report.result = json!({"format": "svg", "bytes": svg.len(), "svg": svg});
    report.text = svg.clone();
    report.svg = Some(svg);
    Ok(report)
}
