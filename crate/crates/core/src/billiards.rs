//! Arithmetic billiards on an integer `m x n` rectangle.
//!
//! The ball starts at the origin, moves along unit diagonals at one diagonal
//! per time unit, and stops at the first corner it reaches, at time
//! `lcm(m, n)`. Coordinates put the width `n` on the x-axis and the height
//! `m` on the y-axis.
//!
//! Each coordinate is an independent triangle wave, so the trace is built
//! from bounce times alone: top/bottom contacts happen at multiples of `m`,
//! left/right contacts at multiples of `n`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::oracles::{gcd_raw, lcm, SymbolValue};

/// A lattice point `(x, y)`.
pub type LatticePoint = (u64, u64);

/// An `m x n` rectangle: height `m`, width `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rect {
    m: u64,
    n: u64,
}

impl Rect {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidArgument(format!(
                "rectangle sides must be positive, got {m}x{n}"
            )));
        }
        Ok(Rect { m, n })
    }

    /// Height (vertical side).
    pub fn m(&self) -> u64 {
        self.m
    }

    /// Width (horizontal side).
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn lcm(&self) -> u64 {
        lcm(self.m, self.n)
    }

    pub fn gcd(&self) -> u64 {
        gcd_raw(self.m, self.n)
    }

    pub fn is_coprime(&self) -> bool {
        self.gcd() == 1
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Wall {
    Bottom,
    Top,
    Left,
    Right,
}

impl Wall {
    pub fn name(self) -> &'static str {
        match self {
            Wall::Bottom => "bottom",
            Wall::Top => "top",
            Wall::Left => "left",
            Wall::Right => "right",
        }
    }
}

/// Sign of a bounce: rightward on the top and bottom walls, upward on the
/// side walls counts as positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    fn of_direction(d: i8) -> Sign {
        if d > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> SymbolValue {
        match self {
            Sign::Plus => SymbolValue::One,
            Sign::Minus => SymbolValue::MinusOne,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One wall contact. Corners are never bounces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BounceEvent {
    pub t: u64,
    pub x: u64,
    pub y: u64,
    pub wall: Wall,
    pub sign: Sign,
}

/// A bounce on the base, reduced to `(x, sign, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BaseBounce {
    pub x: u64,
    pub sign: Sign,
    pub t: u64,
}

/// Position and outgoing direction at a given time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub x: u64,
    pub y: u64,
    /// `+1`, `-1`, or `0` once the path has ended.
    pub dx: i8,
    pub dy: i8,
}

/// Interior lattice point crossed twice, at times `t1 < t2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub x: u64,
    pub y: u64,
    pub t1: u64,
    pub t2: u64,
}

/// The complete corner-to-corner trajectory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilliardPath {
    rect: Rect,
    vertices: Vec<LatticePoint>,
    bounces: Vec<BounceEvent>,
}

impl BilliardPath {
    pub fn rect(&self) -> Rect {
        self.rect
    }

    /// Start corner, every reflection point, end corner.
    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn bounces(&self) -> &[BounceEvent] {
        &self.bounces
    }

    pub fn end(&self) -> LatticePoint {
        *self.vertices.last().expect("path has at least two vertices")
    }

    /// Total travel time, `lcm(m, n)`.
    pub fn length(&self) -> u64 {
        self.rect.lcm()
    }

    /// Position at time `t`, reusing this path's rectangle.
    pub fn position_at(&self, t: u64) -> Result<Position> {
        position_at(self.rect, t)
    }

    /// Times at which the path passes each interior lattice point.
    ///
    /// Indexed by `y * (n + 1) + x`; boundary entries stay empty.
    fn interior_visits(&self) -> Vec<Vec<(u64, i8, i8)>> {
        let (m, n) = (self.rect.m, self.rect.n);
        let width = (n + 1) as usize;
        let mut visits = vec![Vec::new(); width * (m + 1) as usize];
        for t in 1..self.length() {
            let (x, y) = (triangle(t, n), triangle(t, m));
            if x == 0 || x == n || y == 0 || y == m {
                continue;
            }
            visits[y as usize * width + x as usize].push((t, direction(t, n), direction(t, m)));
        }
        visits
    }

    /// Number of times the path passes each interior point `(x, y)`,
    /// as `(x, y, count)` for every interior point with `x + y` even.
    pub fn visit_counts(&self) -> Vec<(u64, u64, usize)> {
        let (m, n) = (self.rect.m, self.rect.n);
        let width = (n + 1) as usize;
        let visits = self.interior_visits();
        let mut out = Vec::new();
        for y in 1..m {
            for x in 1..n {
                if (x + y) % 2 == 0 {
                    out.push((x, y, visits[y as usize * width + x as usize].len()));
                }
            }
        }
        out
    }
}

/// `t` folded into `[0, side]` with period `2 * side`.
fn triangle(t: u64, side: u64) -> u64 {
    let phase = t % (2 * side);
    if phase <= side {
        phase
    } else {
        2 * side - phase
    }
}

/// Outgoing direction along one axis; at a wall this is post-reflection.
fn direction(t: u64, side: u64) -> i8 {
    if t % (2 * side) < side {
        1
    } else {
        -1
    }
}

/// Position and outgoing direction at time `t`, for `0 <= t <= lcm(m, n)`.
pub fn position_at(rect: Rect, t: u64) -> Result<Position> {
    let end = rect.lcm();
    if t > end {
        return Err(Error::TimeOutOfRange { t, end });
    }
    let (x, y) = (triangle(t, rect.n), triangle(t, rect.m));
    if t == end {
        return Ok(Position { x, y, dx: 0, dy: 0 });
    }
    Ok(Position {
        x,
        y,
        dx: direction(t, rect.n),
        dy: direction(t, rect.m),
    })
}

/// Traces the whole path, one segment per bounce.
pub fn trace_path(rect: Rect) -> BilliardPath {
    let (m, n) = (rect.m, rect.n);
    let end = rect.lcm();
    let mut bounces = Vec::new();

    // merge the multiples of m and of n below lcm; none is a multiple of both
    let (mut next_m, mut next_n) = (m, n);
    while next_m < end || next_n < end {
        let event = if next_m < next_n {
            let t = next_m;
            next_m += m;
            let wall = if (t / m) % 2 == 0 { Wall::Bottom } else { Wall::Top };
            BounceEvent {
                t,
                x: triangle(t, n),
                y: triangle(t, m),
                wall,
                sign: Sign::of_direction(direction(t, n)),
            }
        } else {
            let t = next_n;
            next_n += n;
            let wall = if (t / n) % 2 == 0 { Wall::Left } else { Wall::Right };
            BounceEvent {
                t,
                x: triangle(t, n),
                y: triangle(t, m),
                wall,
                sign: Sign::of_direction(direction(t, m)),
            }
        };
        bounces.push(event);
    }

    let mut vertices = Vec::with_capacity(bounces.len() + 2);
    vertices.push((0, 0));
    vertices.extend(bounces.iter().map(|b| (b.x, b.y)));
    vertices.push((triangle(end, n), triangle(end, m)));
    BilliardPath {
        rect,
        vertices,
        bounces,
    }
}

/// The bottom-wall bounces in time order.
pub fn base_bounces(path: &BilliardPath) -> Vec<BaseBounce> {
    path.bounces
        .iter()
        .filter(|b| b.wall == Wall::Bottom)
        .map(|b| BaseBounce {
            x: b.x,
            sign: b.sign,
            t: b.t,
        })
        .collect()
}

/// Interior points the path passes twice in crossing directions, sorted by
/// `(x, y)`.
pub fn crossings(path: &BilliardPath) -> Vec<Crossing> {
    let width = (path.rect.n + 1) as usize;
    let mut out = Vec::new();
    for (idx, visits) in path.interior_visits().iter().enumerate() {
        if let [(t1, dx1, dy1), (t2, dx2, dy2)] = visits.as_slice() {
            // a diagonal has slope dy/dx; crossing means the slopes differ
            if dx1 * dy1 != dx2 * dy2 {
                out.push(Crossing {
                    x: (idx % width) as u64,
                    y: (idx / width) as u64,
                    t1: *t1,
                    t2: *t2,
                });
            }
        }
    }
    out.sort_by_key(|c| (c.x, c.y));
    out
}

/// Crossings whose two passes lie on opposite sides of the base bounce at
/// `(2k, 0)`.
///
/// Coloring the path one way before that bounce and another way after it,
/// these are the crossings where the two colors meet.
pub fn two_color_checkers(rect: Rect, k: u64) -> Result<BTreeSet<LatticePoint>> {
    if !rect.is_coprime() {
        return Err(Error::NotCoprime {
            m: rect.m,
            n: rect.n,
            gcd: rect.gcd(),
        });
    }
    if k == 0 || 2 * k >= rect.n {
        return Err(Error::InvalidArgument(format!(
            "need 0 < 2k < {}, got k = {k}",
            rect.n
        )));
    }
    let path = trace_path(rect);
    let split = base_bounces(&path)
        .into_iter()
        .find(|b| b.x == 2 * k)
        .ok_or(Error::NoBaseBounce { x: 2 * k })?
        .t;
    Ok(crossings(&path)
        .into_iter()
        .filter(|c| c.t1 < split && split < c.t2)
        .map(|c| (c.x, c.y))
        .collect())
}

/// Interior points the main path passes exactly once; only defined when
/// `gcd(m, n) > 1`.
pub fn kernel_checkers(rect: Rect) -> Result<BTreeSet<LatticePoint>> {
    if rect.is_coprime() {
        return Err(Error::Coprime {
            m: rect.m,
            n: rect.n,
        });
    }
    let out: BTreeSet<_> = trace_path(rect)
        .visit_counts()
        .into_iter()
        .filter(|&(_, _, count)| count == 1)
        .map(|(x, y, _)| (x, y))
        .collect();
    debug_assert!(!out.is_empty());
    Ok(out)
}
