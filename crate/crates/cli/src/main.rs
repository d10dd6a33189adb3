use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use quadres::render::RenderSpec;
use quadres_cli::commands;
use quadres_cli::{
    max_cells_from_env, CheckFamily, Puzzle, RenderFormat, Report, SweepConfig, UsageError,
    EXIT_USAGE,
};

/// Quadratic residue symbols from billiard paths and parity-checkers puzzles.
///
/// Exit status: 0 success, 1 a check failed or methods disagree, 2 usage error.
/// QUADRES_MAX_CELLS bounds m*n (and max-m*max-n for verify); default 250000.
#[derive(Parser, Debug)]
#[command(name = "quadres", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Attach a rendering (trace: svg; solve: ascii or svg).
    #[arg(long, global = true, value_enum)]
    render: Option<RenderArg>,
    /// Write the primary output to FILE (SVG output gets a .svg extension).
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RenderArg {
    Ascii,
    Svg,
}

impl From<RenderArg> for RenderFormat {
    fn from(r: RenderArg) -> Self {
        match r {
            RenderArg::Ascii => RenderFormat::Ascii,
            RenderArg::Svg => RenderFormat::Svg,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trace the path on an M x N rectangle and list its bounces.
    Trace { m: u64, n: u64 },
    /// Evaluate (M|N) from the billiard path.
    Symbol {
        m: u64,
        n: u64,
        /// Compare against Euler, Jacobi, Zolotarev and checkers.
        #[arg(long)]
        verify: bool,
    },
    /// Solve a parity-checkers puzzle on the (M-1) x (N-1) board.
    Solve {
        m: u64,
        n: u64,
        #[command(flatten)]
        puzzle: PuzzleArgs,
    },
    /// Run verification sweeps.
    Verify {
        #[arg(long, default_value_t = 30)]
        max_n: u64,
        /// Defaults to --max-n.
        #[arg(long)]
        max_m: Option<u64>,
        /// Comma-separated check families; all by default. One of euler,
        /// zolotarev, jacobi, supplements, almost_reciprocity, mod4,
        /// reciprocity, checkers_symbol, kernel, superposition, tilings.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<CheckFamily>,
        /// Worker threads; defaults to the available cores.
        #[arg(long)]
        parallelism: Option<usize>,
    },
    /// Render the path on an M x N rectangle as SVG.
    Render {
        m: u64,
        n: u64,
        /// Change color at the base bounce (2K, 0).
        #[arg(long, value_name = "K")]
        split: Option<u64>,
        #[arg(long, value_name = "P", default_value_t = 40)]
        cell_px: u32,
        #[arg(long)]
        no_grid: bool,
        #[arg(long)]
        no_signs: bool,
        #[arg(long, value_name = "COLOR", default_value = "steelblue")]
        color_before: String,
        #[arg(long, value_name = "COLOR", default_value = "darkorange")]
        color_after: String,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("puzzle").required(true).multiple(false)))]
struct PuzzleArgs {
    /// Pebbles on every light square of the bottom row.
    #[arg(long, group = "puzzle")]
    bottom_row: bool,
    /// Pebbles on every light square of the left column.
    #[arg(long, group = "puzzle")]
    left_column: bool,
    /// Bottom row and left column together.
    #[arg(long, group = "puzzle")]
    both: bool,
    /// A pebble on light square (COL, ROW); repeatable, repeats cancel.
    #[arg(long, group = "puzzle", num_args = 2, value_names = ["COL", "ROW"], action = clap::ArgAction::Append)]
    pebble: Vec<usize>,
    /// A nonzero solution of the empty puzzle (needs gcd(M, N) > 1).
    #[arg(long, group = "puzzle")]
    kernel: bool,
}

impl PuzzleArgs {
    fn puzzle(&self) -> Puzzle {
        if self.bottom_row {
            Puzzle::BottomRow
        } else if self.left_column {
            Puzzle::LeftColumn
        } else if self.both {
            Puzzle::Both
        } else if self.kernel {
            Puzzle::Kernel
        } else {
            Puzzle::Pebbles(self.pebble.chunks(2).map(|p| (p[0], p[1])).collect())
        }
    }
}

fn with_svg_extension(path: &Path) -> PathBuf {
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("svg")) {
        path.to_path_buf()
    } else {
        let mut s = path.as_os_str().to_owned();
        s.push(".svg");
        PathBuf::from(s)
    }
}

fn write_out(path: &Path, contents: &str) -> Result<(), UsageError> {
    std::fs::write(path, contents)
        .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<i32, UsageError> {
    let max_cells = max_cells_from_env()?;
    let render = cli.render.map(RenderFormat::from);
    let streaming = matches!(cli.command, Command::Verify { .. }) && !cli.json && cli.out.is_none();
    let report: Report = match &cli.command {
        Command::Trace { m, n } => commands::trace(*m, *n, render, max_cells)?,
        Command::Symbol { m, n, verify } => {
            if render.is_some() {
                return Err(UsageError("symbol has no rendering".into()));
            }
            commands::symbol(*m, *n, *verify, max_cells)?
        }
        Command::Solve { m, n, puzzle } => {
            commands::solve_puzzle(*m, *n, &puzzle.puzzle(), render, max_cells)?
        }
        Command::Verify { max_n, max_m, checks, parallelism } => {
            if render.is_some() {
                return Err(UsageError("verify has no rendering".into()));
            }
            let config = SweepConfig {
                max_n: *max_n,
                max_m: max_m.unwrap_or(*max_n),
                checks: if checks.is_empty() { CheckFamily::ALL.to_vec() } else { checks.clone() },
                parallelism: parallelism.unwrap_or_else(|| {
                    std::thread::available_parallelism().map_or(1, |p| p.get())
                }),
            };
            let start = std::time::Instant::now();
            let report = commands::verify(&config, max_cells, |line| {
                if streaming {
                    println!("{line}");
                    let _ = std::io::stdout().flush();
                }
            })?;
            eprintln!("verify finished in {:.2?}", start.elapsed());
            report
        }
        Command::Render { m, n, split, cell_px, no_grid, no_signs, color_before, color_after } => {
            if render == Some(RenderFormat::Ascii) {
                return Err(UsageError("render produces svg only".into()));
            }
            let spec = RenderSpec {
                cell_px: *cell_px,
                show_grid: !no_grid,
                color_before: color_before.clone(),
                color_after: color_after.clone(),
                annotate_signs: !no_signs,
            };
            commands::render_path(*m, *n, *split, &spec, max_cells)?
        }
    };

    if cli.json {
        let mut json = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
        json.push('\n');
        match &cli.out {
            Some(path) => write_out(path, &json)?,
            None => print!("{json}"),
        }
    } else if let Some(svg) = &report.svg {
        match &cli.out {
            Some(path) => {
                let path = with_svg_extension(path);
                write_out(&path, svg)?;
                if !matches!(cli.command, Command::Render { .. }) {
                    print!("{}", report.text);
                }
                eprintln!("wrote {}", path.display());
            }
            None => print!("{svg}"),
        }
    } else if streaming {
        if let Some(last) = report.text.lines().last() {
            println!("{last}");
        }
    } else {
        match &cli.out {
            Some(path) => write_out(path, &report.text)?,
            None => print!("{}", report.text),
        }
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
