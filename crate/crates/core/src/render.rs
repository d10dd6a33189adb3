//! SVG and ASCII renderings of billiard paths and checkerboards.
//!
//! Output is a pure function of the inputs. SVG uses only `rect`, `line`,
//! `polyline`, `circle` and `text` elements, with the y-axis flipped so the
//! origin sits at the lower left.

use std::fmt::Write as _;

use crate::billiards::{BilliardPath, LatticePoint, Wall};
use crate::checkers::{Board, CheckerSet, PebbleSet};
use crate::error::{Error, Result};

pub const DARK_GLYPH: char = '#';
pub const LIGHT_GLYPH: char = '.';
pub const PEBBLE_GLYPH: char = 'o';
pub const CHECKER_GLYPH: char = 'O';

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    /// Pixels per lattice unit, at least 4.
    pub cell_px: u32,
    pub show_grid: bool,
    /// Stroke color of the path before the split bounce (or the whole path).
    pub color_before: String,
    pub color_after: String,
    pub annotate_signs: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            cell_px: 40,
            show_grid: true,
            color_before: "steelblue".into(),
            color_after: "darkorange".into(),
            annotate_signs: true,
        }
    }
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        if self.cell_px < 4 {
            return Err(Error::InvalidArgument(format!(
                "cell size must be at least 4 px, got {}",
                self.cell_px
            )));
        }
        for color in [&self.color_before, &self.color_after] {
            if color.is_empty() || !color.chars().all(|c| c.is_ascii_alphanumeric() || c == '#') {
                return Err(Error::InvalidArgument(format!("bad color name {color:?}")));
            }
        }
        Ok(())
    }
}

/// Maps lattice coordinates to SVG pixels with one unit of margin.
struct Canvas {
    px: u64,
    height: u64,
}

impl Canvas {
    fn x(&self, x: u64) -> u64 {
        (x + 1) * self.px
    }

    fn y(&self, y: u64) -> u64 {
        (self.height - y + 1) * self.px
    }

    fn open(out: &mut String, width_units: u64, height_units: u64, px: u64) {
        let (w, h) = ((width_units + 2) * px, (height_units + 2) * px);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let _ = writeln!(out, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    }
}

fn polyline(out: &mut String, canvas: &Canvas, points: &[LatticePoint], color: &str) {
    let coords: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{},{}", canvas.x(x), canvas.y(y)))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
        coords.join(" ")
    );
}

/// The path as SVG. With `split_k`, the path changes color at the base
/// bounce `(2k, 0)`.
pub fn render_path_svg(path: &BilliardPath, spec: &RenderSpec, split_k: Option<u64>) -> Result<String> {
    spec.validate()?;
    let rect = path.rect();
    let (m, n) = (rect.m(), rect.n());
    let canvas = Canvas {
        px: spec.cell_px as u64,
        height: m,
    };
    let mut out = String::new();
    Canvas::open(&mut out, n, m, canvas.px);

    if spec.show_grid {
        for x in 1..n {
            let _ = writeln!(
                out,
                r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="lightgray" stroke-width="1"/>"#,
                canvas.x(x),
                canvas.y(m),
                canvas.y(0)
            );
        }
        for y in 1..m {
            let _ = writeln!(
                out,
                r#"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}" stroke="lightgray" stroke-width="1"/>"#,
                canvas.y(y),
                canvas.x(0),
                canvas.x(n)
            );
        }
    }
    let _ = writeln!(
        out,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        canvas.x(0),
        canvas.y(m),
        n * canvas.px,
        m * canvas.px
    );

    let vertices = path.vertices();
    match split_k {
        None => polyline(&mut out, &canvas, vertices, &spec.color_before),
        Some(k) => {
            let split = path
                .bounces()
                .iter()
                .position(|b| b.wall == Wall::Bottom && b.x == 2 * k)
                .ok_or(Error::NoBaseBounce { x: 2 * k })?
                + 1;
            polyline(&mut out, &canvas, &vertices[..=split], &spec.color_before);
            polyline(&mut out, &canvas, &vertices[split..], &spec.color_after);
        }
    }

    if spec.annotate_signs {
        let font = (canvas.px / 2).max(4);
        for b in path.bounces().iter().filter(|b| b.wall == Wall::Bottom) {
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" font-size="{font}" text-anchor="middle">{}{}</text>"#,
                canvas.x(b.x),
                canvas.y(0) + canvas.px * 2 / 3,
                b.sign.as_char(),
                b.x
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// The board as SVG: shaded dark squares, checkers as large circles and
/// pebbles as small ones.
pub fn render_board_svg(
    board: Board,
    pebbles: Option<&PebbleSet>,
    checkers: Option<&CheckerSet>,
    spec: &RenderSpec,
) -> Result<String> {
    spec.validate()?;
    let (rows, cols) = (board.rows() as u64, board.cols() as u64);
    let canvas = Canvas {
        px: spec.cell_px as u64,
        height: rows,
    };
    let mut out = String::new();
    Canvas::open(&mut out, cols, rows, canvas.px);
    let px = canvas.px;
    for row in 0..rows {
        for col in 0..cols {
            let fill = if Board::is_dark(col as usize, row as usize) {
                "lightgray"
            } else {
                "white"
            };
            let stroke = if spec.show_grid { "gray" } else { fill };
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{px}" height="{px}" fill="{fill}" stroke="{stroke}" stroke-width="1"/>"#,
                canvas.x(col),
                canvas.y(row + 1)
            );
        }
    }
    let centre = |col: usize, row: usize| {
        (
            canvas.x(col as u64) + px / 2,
            canvas.y(row as u64 + 1) + px / 2,
        )
    };
    if let Some(c) = checkers {
        for (col, row) in c.squares() {
            let (cx, cy) = centre(col, row);
            let _ = writeln!(
                out,
                r#"<circle cx="{cx}" cy="{cy}" r="{}" fill="{}" stroke="black" stroke-width="1"/>"#,
                px * 3 / 10,
                spec.color_after
            );
        }
    }
    if let Some(p) = pebbles {
        for (col, row) in p.squares() {
            let (cx, cy) = centre(col, row);
            let _ = writeln!(
                out,
                r#"<circle cx="{cx}" cy="{cy}" r="{}" fill="black"/>"#,
                (px * 3 / 20).max(1)
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// One character per square, top row first: `#` dark, `.` light,
/// `o` pebble, `O` checker.
pub fn render_board_ascii(
    board: Board,
    pebbles: Option<&PebbleSet>,
    checkers: Option<&CheckerSet>,
) -> String {
    let mut out = String::with_capacity((board.cols() + 1) * board.rows());
    for row in (0..board.rows()).rev() {
        for col in 0..board.cols() {
            let glyph = if checkers.is_some_and(|c| c.contains(col, row)) {
                CHECKER_GLYPH
            } else if pebbles.is_some_and(|p| p.contains(col, row)) {
                PEBBLE_GLYPH
            } else if Board::is_dark(col, row) {
                DARK_GLYPH
            } else {
                LIGHT_GLYPH
            };
            out.push(glyph);
        }
        out.push('\n');
    }
    out
}

/// Structural well-formedness of generated SVG: a single `svg` root, every
/// tag closed in order, and only the element names this module emits.
pub fn check_svg_structure(svg: &str) -> std::result::Result<(), String> {
    const ALLOWED: [&str; 6] = ["svg", "rect", "line", "polyline", "circle", "text"];
    let mut stack: Vec<&str> = Vec::new();
    let mut roots = 0;
    let mut rest = svg;
    while let Some(start) = rest.find('<') {
        if stack.is_empty() && !rest[..start].trim().is_empty() {
            return Err("text outside the root element".into());
        }
        let end = rest[start..]
            .find('>')
            .ok_or("unterminated tag")?
            + start;
        let tag = &rest[start + 1..end];
        rest = &rest[end + 1..];
        if let Some(name) = tag.strip_prefix('/') {
            match stack.pop() {
                Some(open) if open == name.trim() => {}
                Some(open) => return Err(format!("</{}> closes <{open}>", name.trim())),
                None => return Err(format!("stray </{}>", name.trim())),
            }
            continue;
        }
        let self_closing = tag.ends_with('/');
        let name = tag
            .trim_end_matches('/')
            .split_whitespace()
            .next()
            .ok_or("empty tag")?;
        if !ALLOWED.contains(&name) {
            return Err(format!("unexpected element <{name}>"));
        }
        if stack.is_empty() {
            roots += 1;
            if name != "svg" || roots > 1 {
                return Err(format!("unexpected root <{name}>"));
            }
        }
        if tag.matches('"').count() % 2 != 0 {
            return Err(format!("unbalanced quotes in <{name}>"));
        }
        if !self_closing {
            stack.push(name);
        }
    }
    if !rest.trim().is_empty() {
        return Err("trailing text after the root element".into());
    }
    match (stack.last(), roots) {
        (Some(open), _) => Err(format!("<{open}> never closed")),
        (None, 1) => Ok(()),
        (None, _) => Err("no root element".into()),
    }
}
