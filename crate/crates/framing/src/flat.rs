//! One-cylinder translation surfaces built from a gluing permutation, with
//! exact turning numbers of polygonal paths measured against the horizontal
//! direction.
//!
//! Model. The cylinder is `[0, C) x [0, h]` with `x` taken mod the
//! circumference `C`. The top edge is cut into segments `1..=m` (left to
//! right, lengths `l_1..l_m`). Reading the bottom edge left to right from the
//! twist offset, position `j` carries a copy of top segment `perm[j]`, and the
//! two copies are glued by translation. Top corner `T_k` sits at the left end
//! of top segment `k`, bottom corner `B_j` at the left end of bottom position
//! `j`.
//!
//! Every zero is a cycle of corners: going counterclockwise, a bottom corner
//! contributes the upper half-disk (directions `0..pi`) and a top corner the
//! lower half-disk (`pi..2pi`). The prongs of a zero are its bottom corners,
//! numbered in cycle order from the one with the smallest index.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero as _};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::HalfInt;

pub type Q = Ratio<i128>;

pub fn parse_q(s: &str) -> Result<Q> {
    let q: Q = s
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("rational `{s}`: {e}")))?;
    Ok(q)
}

/// Largest number of segments accepted.
pub const MAX_SEGMENTS: usize = 1 << 12;
/// Bound on the common denominator of the input data.
pub const MAX_DENOMINATOR: i128 = 1 << 20;
/// Bound on each input value.
pub const MAX_MAGNITUDE: i128 = 1 << 40;

/// Keeps every coordinate on a grid `1/L` with `L <= 2^20` and bounded
/// values, so exact arithmetic on corners and paths stays far from `i128`
/// limits.
fn check_size<'a>(m: usize, values: impl Iterator<Item = &'a Q>) -> Result<()> {
    if m > MAX_SEGMENTS {
        return Err(Error::InvalidFlat(format!(
            "{m} segments exceed the supported {MAX_SEGMENTS}"
        )));
    }
    let mut common: i128 = 1;
    for v in values {
        if *v.denom() > MAX_DENOMINATOR {
            return Err(Error::InvalidFlat(format!(
                "denominator of {v} exceeds {MAX_DENOMINATOR}"
            )));
        }
        if v.numer().unsigned_abs() > (MAX_MAGNITUDE as u128) * v.denom().unsigned_abs() {
            return Err(Error::InvalidFlat(format!(
                "value {v} exceeds {MAX_MAGNITUDE}"
            )));
        }
        common = num_integer::lcm(common, *v.denom());
        if common > MAX_DENOMINATOR {
            return Err(Error::InvalidFlat(format!(
                "common denominator of the data exceeds {MAX_DENOMINATOR}"
            )));
        }
    }
    Ok(())
}

/// Parses a comma separated permutation of `1..=m`.
pub fn parse_perm(s: &str) -> Result<Vec<usize>> {
    let perm = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("permutation entry `{t}`: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    check_perm(&perm)?;
    Ok(perm)
}

fn check_perm(perm: &[usize]) -> Result<()> {
    let m = perm.len();
    if m == 0 {
        return Err(Error::InvalidFlat("empty permutation".into()));
    }
    let mut seen = vec![false; m];
    for &p in perm {
        if p == 0 || p > m || seen[p - 1] {
            return Err(Error::InvalidFlat(format!(
                "{perm:?} is not a permutation of 1..={m}"
            )));
        }
        seen[p - 1] = true;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Corner {
    Top(usize),
    Bottom(usize),
}

impl Corner {
    pub fn top_index(self) -> Option<usize> {
        match self {
            Corner::Top(k) => Some(k),
            Corner::Bottom(_) => None,
        }
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Corner::Top(k) => write!(f, "T{k}"),
            Corner::Bottom(j) => write!(f, "B{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatZero {
    pub order: u32,
    /// Counterclockwise, alternating bottom and top corners, starting at prong 0.
    pub cycle: Vec<Corner>,
}

impl FlatZero {
    pub fn prongs(&self) -> impl Iterator<Item = Corner> + '_ {
        self.cycle.iter().copied().step_by(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlatPoint {
    pub x: Q,
    pub y: Q,
}

impl FlatPoint {
    pub fn new(x: Q, y: Q) -> Self {
        FlatPoint { x, y }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneCylinderSurface {
    perm: Vec<usize>,
    inv: Vec<usize>,
    lengths: Vec<Q>,
    height: Q,
    twist: Q,
    circumference: Q,
    zeros: Vec<FlatZero>,
    /// Zero index of each corner: top corners first, then bottom corners.
    corner_zero: Vec<usize>,
}

enum Located {
    Interior(usize, Q),
    Corner(usize),
}

impl OneCylinderSurface {
    pub fn from_permutation(
        perm: Vec<usize>,
        lengths: Vec<Q>,
        height: Q,
        twist: Q,
    ) -> Result<Self> {
        check_perm(&perm)?;
        let m = perm.len();
        if lengths.len() != m {
            return Err(Error::LengthMismatch {
                what: "segment lengths",
                expected: m,
                got: lengths.len(),
            });
        }
        if lengths.iter().any(|l| !l.is_positive()) || !height.is_positive() {
            return Err(Error::InvalidFlat(
                "lengths and height must be positive".into(),
            ));
        }
        check_size(m, lengths.iter().chain([&height, &twist]))?;
        let circumference: Q = lengths.iter().sum();
        let twist = modulo(twist, circumference);
        let mut inv = vec![0; m + 1];
        for (j, &x) in perm.iter().enumerate() {
            inv[x] = j + 1;
        }
        let mut s = OneCylinderSurface {
            perm,
            inv,
            lengths,
            height,
            twist,
            circumference,
            zeros: Vec::new(),
            corner_zero: vec![usize::MAX; 2 * m],
        };
        for j in 1..=m {
            if s.corner_zero[s.corner_slot(Corner::Bottom(j))] != usize::MAX {
                continue;
            }
            let id = s.zeros.len();
            let mut cycle = Vec::new();
            let mut b = j;
            loop {
                let t = s.next_top(b);
                for c in [Corner::Bottom(b), Corner::Top(t)] {
                    let slot = s.corner_slot(c);
                    s.corner_zero[slot] = id;
                    cycle.push(c);
                }
                b = s.inv[t];
                if b == j {
                    break;
                }
            }
            s.zeros.push(FlatZero {
                order: (cycle.len() / 2 - 1) as u32,
                cycle,
            });
        }
        Ok(s)
    }

    /// Shorthand with integer lengths, height 1 and no twist.
    pub fn with_unit_height(perm: Vec<usize>, lengths: &[i128]) -> Result<Self> {
        let lengths = lengths.iter().map(|&l| Q::from_integer(l)).collect();
        Self::from_permutation(perm, lengths, Q::one(), Q::zero())
    }

    fn m(&self) -> usize {
        self.perm.len()
    }

    fn corner_slot(&self, c: Corner) -> usize {
        match c {
            Corner::Top(k) => k - 1,
            Corner::Bottom(j) => self.m() + j - 1,
        }
    }

    /// The top corner reached by turning counterclockwise past direction `pi`
    /// at bottom corner `B_j`.
    fn next_top(&self, j: usize) -> usize {
        let m = self.m();
        let left = if j == 1 { m } else { j - 1 };
        self.perm[left - 1] % m + 1
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn lengths(&self) -> &[Q] {
        &self.lengths
    }

    pub fn height(&self) -> Q {
        self.height
    }

    pub fn twist(&self) -> Q {
        self.twist
    }

    pub fn circumference(&self) -> Q {
        self.circumference
    }

    /// All corner classes, including unmarked regular points.
    pub fn zeros(&self) -> &[FlatZero] {
        &self.zeros
    }

    pub fn zero(&self, index: usize) -> Result<&FlatZero> {
        index
            .checked_sub(1)
            .and_then(|i| self.zeros.get(i))
            .ok_or(Error::UnknownBoundary(index))
    }

    /// 1-based index of the zero at a corner.
    pub fn zero_of(&self, c: Corner) -> usize {
        self.corner_zero[self.corner_slot(c)] + 1
    }

    /// Orders of the genuine zeros, in zero-index order.
    pub fn kappa(&self) -> Vec<u32> {
        self.zeros
            .iter()
            .map(|z| z.order)
            .filter(|&k| k > 0)
            .collect()
    }

    pub fn genus(&self) -> usize {
        (self.m() + 2 - self.zeros.len()) / 2
    }

    /// A corner class of order 0 on a surface with more than one segment.
    pub fn is_degenerate(&self) -> bool {
        self.m() > 1 && self.zeros.iter().any(|z| z.order == 0)
    }

    pub fn require_nondegenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            return Err(Error::DegenerateIdentification(format!(
                "permutation {:?} glues some corners into a regular point",
                self.perm
            )));
        }
        Ok(())
    }

    fn top_x(&self, k: usize) -> Q {
        self.lengths[..k - 1].iter().sum()
    }

    fn bottom_offset(&self, j: usize) -> Q {
        self.perm[..j - 1]
            .iter()
            .map(|&x| self.lengths[x - 1])
            .sum()
    }

    fn bottom_x(&self, j: usize) -> Q {
        modulo(self.twist + self.bottom_offset(j), self.circumference)
    }

    pub fn corner_point(&self, c: Corner) -> FlatPoint {
        match c {
            Corner::Top(k) => FlatPoint::new(self.top_x(k), self.height),
            Corner::Bottom(j) => FlatPoint::new(self.bottom_x(j), Q::zero()),
        }
    }

    fn locate_top(&self, x: Q) -> Located {
        let x = modulo(x, self.circumference);
        let mut start = Q::zero();
        for (i, l) in self.lengths.iter().enumerate() {
            if x == start {
                return Located::Corner(i + 1);
            }
            if x < start + l {
                return Located::Interior(i + 1, x - start);
            }
            start += l;
        }
        unreachable!("x reduced mod the circumference")
    }

    fn locate_bottom(&self, x: Q) -> Located {
        let rel = modulo(x - self.twist, self.circumference);
        let mut start = Q::zero();
        for (j, &lab) in self.perm.iter().enumerate() {
            if rel == start {
                return Located::Corner(j + 1);
            }
            let l = self.lengths[lab - 1];
            if rel < start + l {
                return Located::Interior(j + 1, rel - start);
            }
            start += l;
        }
        unreachable!("x reduced mod the circumference")
    }

    fn corner_at(&self, p: &FlatPoint) -> Option<Corner> {
        if p.y == Q::zero() {
            if let Located::Corner(j) = self.locate_bottom(p.x) {
                return Some(Corner::Bottom(j));
            }
        } else if p.y == self.height {
            if let Located::Corner(k) = self.locate_top(p.x) {
                return Some(Corner::Top(k));
            }
        }
        None
    }

    fn is_zero_corner(&self, c: Corner) -> bool {
        self.zeros[self.zero_of(c) - 1].order > 0
    }

    /// Position of a corner on its zero, in half-disks counted from `prong`,
    /// returned as the number of full turns before the corner's sector.
    fn turns_from_prong(&self, c: Corner, prong: usize) -> Result<i64> {
        let z = &self.zeros[self.zero_of(c) - 1];
        let k = z.order as usize + 1;
        if prong >= k {
            return Err(Error::InvalidFlat(format!(
                "zero of order {} has prongs 0..{}, got {prong}",
                z.order, k
            )));
        }
        let pos = z
            .cycle
            .iter()
            .position(|&d| d == c)
            .expect("corner in its cycle")
            / 2;
        Ok(((pos + k - prong) % k) as i64)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(FlatSurfaceJson::from(self)).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: FlatSurfaceJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        j.try_into()
    }
}

/// Serialized form; rationals are strings `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatSurfaceJson {
    pub perm: Vec<usize>,
    pub lengths: Vec<String>,
    pub height: String,
    pub twist: String,
}

impl From<&OneCylinderSurface> for FlatSurfaceJson {
    fn from(s: &OneCylinderSurface) -> Self {
        FlatSurfaceJson {
            perm: s.perm.clone(),
            lengths: s.lengths.iter().map(|l| l.to_string()).collect(),
            height: s.height.to_string(),
            twist: s.twist.to_string(),
        }
    }
}

impl TryFrom<FlatSurfaceJson> for OneCylinderSurface {
    type Error = Error;
    fn try_from(j: FlatSurfaceJson) -> Result<Self> {
        let lengths = j
            .lengths
            .iter()
            .map(|l| parse_q(l))
            .collect::<Result<Vec<_>>>()?;
        OneCylinderSurface::from_permutation(
            j.perm,
            lengths,
            parse_q(&j.height)?,
            parse_q(&j.twist)?,
        )
    }
}

fn modulo(x: Q, c: Q) -> Q {
    x - (x / c).floor() * c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathEnds {
    Closed,
    /// A legal arc between two zeros: it leaves corner `from` and arrives at
    /// corner `to`, with prongs fixed at both ends.
    Arc {
        from: Corner,
        prong_from: usize,
        to: Corner,
        prong_to: usize,
    },
}

/// A polygonal path given by its start point and displacement vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatPath {
    pub start: FlatPoint,
    pub segments: Vec<(Q, Q)>,
    pub ends: PathEnds,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCrossing {
    pub segment: usize,
    /// Crossing the top edge upward (true) or the bottom edge downward.
    pub upward: bool,
    /// Top segment label crossed.
    pub label: usize,
    /// Offset of the crossing point inside that segment.
    pub offset: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub crossings: Vec<PathCrossing>,
    /// Start point of every segment, after passing through the boundary.
    pub segment_starts: Vec<FlatPoint>,
    pub end: FlatPoint,
}

impl FlatPath {
    pub fn closed(start: FlatPoint, segments: Vec<(Q, Q)>) -> Self {
        FlatPath {
            start,
            segments,
            ends: PathEnds::Closed,
        }
    }

    pub fn arc(
        s: &OneCylinderSurface,
        from: Corner,
        prong_from: usize,
        segments: Vec<(Q, Q)>,
        to: Corner,
        prong_to: usize,
    ) -> Self {
        FlatPath {
            start: s.corner_point(from),
            segments,
            ends: PathEnds::Arc {
                from,
                prong_from,
                to,
                prong_to,
            },
        }
    }

    pub fn is_closed(&self) -> bool {
        self.ends == PathEnds::Closed
    }

    /// Sum of the displacement vectors.
    pub fn holonomy(&self) -> (Q, Q) {
        self.segments
            .iter()
            .fold((Q::zero(), Q::zero()), |(a, b), (dx, dy)| (a + dx, b + dy))
    }

    /// Closed paths traversed backwards; arcs are returned unchanged.
    pub fn reversed(&self) -> FlatPath {
        if !self.is_closed() {
            return self.clone();
        }
        FlatPath::closed(
            self.start,
            self.segments
                .iter()
                .rev()
                .map(|&(dx, dy)| (-dx, -dy))
                .collect(),
        )
    }

    /// Where the segments lead from the start point, without requiring the
    /// path to close up or reach its declared end corner.
    pub fn endpoint(&self, s: &OneCylinderSurface) -> Result<FlatPoint> {
        Ok(self.walk(s)?.end)
    }

    /// Follows the path across the glued edges, checking that it avoids zeros
    /// away from its declared endpoints and that closed paths close up.
    pub fn trace(&self, s: &OneCylinderSurface) -> Result<Trace> {
        let t = self.walk(s)?;
        let last = self.segments.len() - 1;
        let end = t.end;
        match self.ends {
            PathEnds::Closed => {
                let c = s.circumference;
                if canonical(s, &end)
                    != canonical(s, &FlatPoint::new(modulo(self.start.x, c), self.start.y))
                {
                    return Err(Error::InvalidFlat(
                        "closed path does not return to its start".into(),
                    ));
                }
            }
            PathEnds::Arc { to, .. } => {
                if s.corner_at(&end) != Some(to) {
                    return Err(Error::InvalidFlat(format!("arc does not end at {to}")));
                }
                let dy = self.segments[last].1;
                let inward = match to {
                    Corner::Top(_) => dy.is_positive(),
                    Corner::Bottom(_) => dy.is_negative(),
                };
                if !inward {
                    return Err(Error::InvalidFlat(format!(
                        "arc must reach {to} from inside the cylinder"
                    )));
                }
            }
        }
        Ok(t)
    }

    fn walk(&self, s: &OneCylinderSurface) -> Result<Trace> {
        if self.segments.is_empty() {
            return Err(Error::InvalidFlat("path has no segments".into()));
        }
        let h = s.height;
        let c = s.circumference;
        if self.start.y.is_negative() || self.start.y > h {
            return Err(Error::InvalidFlat(
                "start point outside the cylinder".into(),
            ));
        }
        let (mut x, mut y) = (modulo(self.start.x, c), self.start.y);
        match self.ends {
            PathEnds::Closed => check_point(s, x, y)?,
            PathEnds::Arc { from, .. } => {
                if s.corner_at(&FlatPoint::new(x, y)) != Some(from) {
                    return Err(Error::InvalidFlat(format!("arc does not start at {from}")));
                }
                let dy = self.segments[0].1;
                let inward = match from {
                    Corner::Bottom(_) => dy.is_positive(),
                    Corner::Top(_) => dy.is_negative(),
                };
                if !inward {
                    return Err(Error::InvalidFlat(format!(
                        "arc must leave {from} into the cylinder"
                    )));
                }
            }
        }
        let mut crossings = Vec::new();
        let mut starts = Vec::with_capacity(self.segments.len());
        let last = self.segments.len() - 1;
        for (i, &(dx, dy)) in self.segments.iter().enumerate() {
            if dx.is_zero() && dy.is_zero() {
                return Err(Error::InvalidFlat(format!("segment {i} has zero length")));
            }
            let mut rem = Q::one();
            let mut first = true;
            loop {
                // Pass through the edge when sitting on it and moving across.
                if dy.is_positive() && y == h || dy.is_negative() && y.is_zero() {
                    let (nx, ny, cr) = pass_edge(s, x, dy.is_positive(), i)?;
                    x = nx;
                    y = ny;
                    crossings.extend(cr);
                }
                if first {
                    starts.push(FlatPoint::new(x, y));
                    first = false;
                }
                if dy.is_zero() {
                    if y.is_zero() || y == h {
                        check_sweep(s, x, y, dx * rem)?;
                    }
                    x = modulo(x + dx * rem, c);
                    break;
                }
                let target = if dy.is_positive() { h } else { Q::zero() };
                let t = (target - y) / dy;
                if t < rem {
                    x = modulo(x + dx * t, c);
                    y = target;
                    rem -= t;
                    if let Some(cn) = s.corner_at(&FlatPoint::new(x, y)) {
                        if s.is_zero_corner(cn) {
                            return Err(Error::CornerAtZero(format!("segment {i} runs into {cn}")));
                        }
                    }
                } else {
                    x = modulo(x + dx * rem, c);
                    y += dy * rem;
                    break;
                }
            }
            let at_end = i == last && !self.is_closed();
            if !at_end {
                check_point(s, x, y).map_err(|_| {
                    Error::CornerAtZero(format!("vertex after segment {i} lies on a zero"))
                })?;
            }
        }
        Ok(Trace {
            crossings,
            segment_starts: starts,
            end: FlatPoint::new(x, y),
        })
    }
}

fn check_point(s: &OneCylinderSurface, x: Q, y: Q) -> Result<()> {
    match s.corner_at(&FlatPoint::new(x, y)) {
        Some(c) if s.is_zero_corner(c) => Err(Error::CornerAtZero(format!("point on {c}"))),
        _ => Ok(()),
    }
}

/// Horizontal motion along an edge must not pass over a zero.
fn check_sweep(s: &OneCylinderSurface, x: Q, y: Q, dx: Q) -> Result<()> {
    let c = s.circumference;
    let corners: Vec<Corner> = if y.is_zero() {
        (1..=s.m()).map(Corner::Bottom).collect()
    } else {
        (1..=s.m()).map(Corner::Top).collect()
    };
    for cn in corners {
        if !s.is_zero_corner(cn) {
            continue;
        }
        let p = s.corner_point(cn).x;
        let hit = if dx.is_positive() {
            let n = ((x - p) / c).floor() + Q::one();
            p + n * c < x + dx
        } else {
            let n = ((x - p) / c).ceil() - Q::one();
            p + n * c > x + dx
        };
        if hit {
            return Err(Error::CornerAtZero(format!(
                "horizontal segment passes over {cn}"
            )));
        }
    }
    Ok(())
}

fn pass_edge(
    s: &OneCylinderSurface,
    x: Q,
    upward: bool,
    segment: usize,
) -> Result<(Q, Q, Option<PathCrossing>)> {
    if upward {
        match s.locate_top(x) {
            Located::Interior(lab, off) => {
                let nx = modulo(s.bottom_x(s.inv[lab]) + off, s.circumference);
                let cr = PathCrossing {
                    segment,
                    upward,
                    label: lab,
                    offset: off,
                };
                Ok((nx, Q::zero(), Some(cr)))
            }
            Located::Corner(k) => {
                let partner = regular_partner(s, Corner::Top(k))?;
                Ok((s.corner_point(partner).x, Q::zero(), None))
            }
        }
    } else {
        match s.locate_bottom(x) {
            Located::Interior(j, off) => {
                let lab = s.perm[j - 1];
                let cr = PathCrossing {
                    segment,
                    upward,
                    label: lab,
                    offset: off,
                };
                Ok((s.top_x(lab) + off, s.height, Some(cr)))
            }
            Located::Corner(j) => {
                let partner = regular_partner(s, Corner::Bottom(j))?;
                Ok((s.corner_point(partner).x, s.height, None))
            }
        }
    }
}

/// Other corner of a regular point (a class with one top and one bottom corner).
fn regular_partner(s: &OneCylinderSurface, c: Corner) -> Result<Corner> {
    let z = &s.zeros[s.zero_of(c) - 1];
    if z.order > 0 {
        return Err(Error::CornerAtZero(format!("path passes through {c}")));
    }
    Ok(*z.cycle.iter().find(|&&d| d != c).expect("two corners"))
}

#[derive(Debug, PartialEq, Eq)]
enum Canon {
    Point(Q, Q),
    Zero(usize),
}

fn canonical(s: &OneCylinderSurface, p: &FlatPoint) -> Canon {
    if let Some(c) = s.corner_at(p) {
        return Canon::Zero(s.zero_of(c));
    }
    if p.y == s.height {
        if let Located::Interior(lab, off) = s.locate_top(p.x) {
            return Canon::Point(
                modulo(s.bottom_x(s.inv[lab]) + off, s.circumference),
                Q::zero(),
            );
        }
    }
    Canon::Point(modulo(p.x, s.circumference), p.y)
}

/// Direction lies in the half-open upper half plane, arguments `[0, pi)`.
fn upper(d: (Q, Q)) -> bool {
    d.1.is_positive() || d.1.is_zero() && d.0.is_positive()
}

fn cross(a: (Q, Q), b: (Q, Q)) -> Q {
    a.0 * b.1 - a.1 * b.0
}

/// `arg(a) < arg(b)` with arguments in `[0, 2pi)`.
fn arg_less(a: (Q, Q), b: (Q, Q)) -> bool {
    if upper(a) != upper(b) {
        upper(a)
    } else {
        cross(a, b).is_positive()
    }
}

/// Signed number of times the turn from `a` to `b` (through less than a half
/// turn) passes the direction `(1, 0)`.
fn wraps(a: (Q, Q), b: (Q, Q)) -> Result<i64> {
    let c = cross(a, b);
    if c.is_positive() {
        Ok(i64::from(arg_less(b, a)))
    } else if c.is_negative() {
        Ok(-i64::from(arg_less(a, b)))
    } else if (a.0 * b.0 + a.1 * b.1).is_positive() {
        Ok(0)
    } else {
        Err(Error::InvalidFlat("path doubles back on itself".into()))
    }
}

/// Winding number of a path against the horizontal direction: an integer for
/// closed paths, a half-integer for legal arcs.
///
/// For arcs the path is completed at each end by sliding along the blown-up
/// zero: counterclockwise from the prong at the start, clockwise back to the
/// prong at the end.
pub fn turning_wn(path: &FlatPath, s: &OneCylinderSurface) -> Result<HalfInt> {
    path.trace(s)?;
    let segs = &path.segments;
    let mut count = 0i64;
    for w in segs.windows(2) {
        count += wraps(w[0], w[1])?;
    }
    match path.ends {
        PathEnds::Closed => {
            count += wraps(segs[segs.len() - 1], segs[0])?;
            Ok(HalfInt::from_int(count))
        }
        PathEnds::Arc {
            from,
            prong_from,
            to,
            prong_to,
        } => {
            let r_start = s.turns_from_prong(from, prong_from)?;
            let r_end = s.turns_from_prong(to, prong_to)?;
            let last = segs[segs.len() - 1];
            let tail = if upper(last) { -1 } else { 1 };
            Ok(HalfInt::from_doubled(2 * (r_start + count - r_end) + tail))
        }
    }
}

/// Small polygon around a zero, traversed with the zero on its right, which
/// is the boundary orientation of the blown-up surface.
pub fn blowup_boundary(s: &OneCylinderSurface, zero: usize) -> Result<FlatPath> {
    let z = s.zero(zero)?;
    let min_len = s.lengths.iter().copied().min().expect("nonempty");
    let eps = min_len.min(s.height) / Q::from_integer(4);
    let Corner::Bottom(j) = z.cycle[0] else {
        unreachable!("cycles start at a bottom corner")
    };
    let b = s.corner_point(Corner::Bottom(j));
    let start = FlatPoint::new(b.x + eps, eps);
    let two = eps * Q::from_integer(2);
    let mut segs = Vec::new();
    for _ in 0..=z.order {
        segs.extend([
            (-two, Q::zero()),
            (Q::zero(), -two),
            (two, Q::zero()),
            (Q::zero(), two),
        ]);
    }
    Ok(FlatPath::closed(start, segs).reversed())
}

/// Image of a path under the affine shear `(x, y) -> (x + C y / h, y)`, which
/// is the Dehn twist about the core curve.
pub fn shear_twist(s: &OneCylinderSurface, path: &FlatPath) -> Result<FlatPath> {
    let trace = path.trace(s)?;
    for (i, (&(_, dy), p)) in path.segments.iter().zip(&trace.segment_starts).enumerate() {
        if dy.is_zero() && p.y.is_positive() && p.y < s.height {
            return Err(Error::NonTransverse(format!(
                "segment {i} is horizontal inside the cylinder"
            )));
        }
    }
    let k = s.circumference / s.height;
    let start = FlatPoint::new(
        modulo(path.start.x + k * path.start.y, s.circumference),
        path.start.y,
    );
    Ok(FlatPath {
        start,
        segments: path
            .segments
            .iter()
            .map(|&(dx, dy)| (dx + k * dy, dy))
            .collect(),
        ends: path.ends,
    })
}

/// The straight crossing arc from prong `prong_p` of zero `p` to the top
/// corner `T_k`, with prong 0 at the far end.
pub fn crossing_arc(
    s: &OneCylinderSurface,
    p: usize,
    prong_p: usize,
    k: usize,
) -> Result<FlatPath> {
    let z = s.zero(p)?;
    let b = z
        .prongs()
        .nth(prong_p)
        .ok_or_else(|| Error::InvalidFlat(format!("zero {p} has no prong {prong_p}")))?;
    let from = s.corner_point(b);
    let to = s.corner_point(Corner::Top(k));
    let dx = modulo(to.x - from.x, s.circumference);
    Ok(FlatPath::arc(
        s,
        b,
        prong_p,
        vec![(dx, s.height)],
        Corner::Top(k),
        0,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaddleArcRow {
    pub top_corner: usize,
    pub wn: HalfInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaddleArcTable {
    pub p: usize,
    pub q: usize,
    pub prong_p: usize,
    /// `|phi| = order(q) + 1`.
    pub modulus: u32,
    pub arcs: Vec<SaddleArcRow>,
    pub residues: BTreeSet<HalfInt>,
}

/// Winding numbers of the crossing arcs from a fixed prong of `p` to every
/// top corner at `q`.
pub fn saddle_arc_table(
    s: &OneCylinderSurface,
    p: usize,
    q: usize,
    prong_p: usize,
) -> Result<SaddleArcTable> {
    if p == q {
        return Err(Error::SameZero);
    }
    let zq = s.zero(q)?;
    let modulus = zq.order + 1;
    let mut arcs = Vec::new();
    let mut residues = BTreeSet::new();
    for c in zq.cycle.iter().skip(1).step_by(2) {
        let Corner::Top(k) = *c else { unreachable!() };
        let wn = turning_wn(&crossing_arc(s, p, prong_p, k)?, s)?;
        residues.insert(half_residue(wn, modulus));
        arcs.push(SaddleArcRow { top_corner: k, wn });
    }
    Ok(SaddleArcTable {
        p,
        q,
        prong_p,
        modulus,
        arcs,
        residues,
    })
}

/// Residues mod `order(q) + 1` of the crossing-arc winding numbers.
pub fn saddle_arc_wns(
    s: &OneCylinderSurface,
    p: usize,
    q: usize,
    prong_p: usize,
) -> Result<BTreeSet<HalfInt>> {
    Ok(saddle_arc_table(s, p, q, prong_p)?.residues)
}

/// `v mod k`, as a half-integer in `[0, k)`.
pub fn half_residue(v: HalfInt, k: u32) -> HalfInt {
    HalfInt::from_doubled(v.doubled().rem_euclid(2 * i64::from(k)))
}

/// `{1/2, 3/2, ..., k - 1/2}`.
pub fn full_half_residues(k: u32) -> BTreeSet<HalfInt> {
    (0..i64::from(k)).map(HalfInt::half_plus).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn js() -> OneCylinderSurface {
        OneCylinderSurface::with_unit_height(vec![4, 3, 2, 6, 5, 1], &[1, 2, 1, 3, 2, 1]).unwrap()
    }

    fn q(n: i128, d: i128) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn torus() {
        let s = OneCylinderSurface::with_unit_height(vec![1], &[1]).unwrap();
        assert!(s.kappa().is_empty());
        assert_eq!(s.genus(), 1);
        assert!(!s.is_degenerate());
    }

    #[test]
    fn figure_surface() {
        let s = js();
        let mut k = s.kappa();
        k.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(k, vec![3, 1]);
        assert_eq!(s.genus(), 3);
    }

    #[test]
    fn degenerate_gluing_is_flagged() {
        let s = OneCylinderSurface::with_unit_height(vec![1, 2], &[1, 1]).unwrap();
        assert!(s.is_degenerate());
        assert!(matches!(
            s.require_nondegenerate(),
            Err(Error::DegenerateIdentification(_))
        ));
    }

    #[test]
    fn core_curve_and_boundaries() {
        let s = js();
        let c = s.circumference();
        let core = FlatPath::closed(FlatPoint::new(q(1, 3), q(1, 2)), vec![(c, Q::zero())]);
        assert_eq!(turning_wn(&core, &s), Ok(HalfInt::from_int(0)));
        for (i, z) in s.zeros().iter().enumerate() {
            let b = blowup_boundary(&s, i + 1).unwrap();
            assert_eq!(
                turning_wn(&b, &s),
                Ok(HalfInt::from_int(-1 - i64::from(z.order)))
            );
        }
    }

    #[test]
    fn saddle_residues_on_the_figure() {
        let s = js();
        let (big, small) = if s.zeros()[0].order == 3 {
            (1, 2)
        } else {
            (2, 1)
        };
        let r = saddle_arc_wns(&s, big, small, 0).unwrap();
        assert_eq!(r, full_half_residues(2));
        assert_eq!(
            saddle_arc_wns(&s, small, big, 1).unwrap(),
            full_half_residues(4)
        );
        assert_eq!(saddle_arc_wns(&s, big, big, 0), Err(Error::SameZero));
    }

    #[test]
    fn shear_keeps_winding() {
        let s = js();
        let arc = crossing_arc(&s, 1, 0, s.zeros()[1].cycle[1].top_index().unwrap()).unwrap();
        let img = shear_twist(&s, &arc).unwrap();
        assert_eq!(turning_wn(&img, &s), turning_wn(&arc, &s));
        let core = FlatPath::closed(
            FlatPoint::new(q(1, 3), q(1, 2)),
            vec![(s.circumference(), Q::zero())],
        );
        assert!(matches!(
            shear_twist(&s, &core),
            Err(Error::NonTransverse(_))
        ));
    }

    #[test]
    fn horizontal_edge_loop_on_the_torus_is_fixed() {
        let s = OneCylinderSurface::with_unit_height(vec![1], &[2]).unwrap();
        let loop_ = FlatPath::closed(
            FlatPoint::new(q(1, 2), Q::zero()),
            vec![(q(2, 1), Q::zero())],
        );
        assert_eq!(shear_twist(&s, &loop_).unwrap(), loop_);
    }

    #[test]
    fn corner_hits_are_rejected() {
        let s = js();
        let b = s.corner_point(Corner::Bottom(1));
        let p = FlatPath::closed(
            FlatPoint::new(b.x, q(1, 2)),
            vec![(Q::zero(), q(-1, 2)), (Q::zero(), q(1, 2))],
        );
        assert!(matches!(p.trace(&s), Err(Error::CornerAtZero(_))));
    }

    #[test]
    fn json_uses_rational_strings() {
        let s = OneCylinderSurface::from_permutation(
            vec![2, 1],
            vec![q(1, 2), q(3, 4)],
            q(2, 3),
            q(1, 5),
        )
        .unwrap();
        let v = s.to_json();
        assert_eq!(v["lengths"][0], "1/2");
        assert_eq!(OneCylinderSurface::from_json(&v).unwrap(), s);
    }
}
