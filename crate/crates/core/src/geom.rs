//! Exact planar primitives.
//!
//! Coordinates are arbitrary-precision rationals. Every predicate first runs a
//! floating-point evaluation with a conservative error bound and only falls
//! back to rational arithmetic when the sign is not certified, so results are
//! always exact.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Planar point with exact rational coordinates and a cached `f64` shadow
/// used by the filtered predicates.
#[derive(Clone)]
pub struct Point {
    x: BigRational,
    y: BigRational,
    approx: (f64, f64),
}

impl Point {
    pub fn new(x: BigRational, y: BigRational) -> Point {
        let approx = (x.to_f64().unwrap_or(f64::NAN), y.to_f64().unwrap_or(f64::NAN));
        Point { x, y, approx }
    }

    pub fn from_ints(x: i64, y: i64) -> Point {
        Point::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    /// `x = xn / xd`, `y = yn / yd`. Panics on a zero denominator.
    pub fn from_ratios(xn: i64, xd: i64, yn: i64, yd: i64) -> Point {
        Point::new(
            BigRational::new(xn.into(), xd.into()),
            BigRational::new(yn.into(), yd.into()),
        )
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn to_f64(&self) -> (f64, f64) {
        self.approx
    }

    pub fn dist(&self, other: &Point) -> f64 {
        let (ax, ay) = self.approx;
        let (bx, by) = other.approx;
        (ax - bx).hypot(ay - by)
    }

    /// Lexicographic (x, then y) comparison.
    pub fn lex_cmp(&self, other: &Point) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }

    fn translate(&self, dx: &BigRational, dy: &BigRational) -> Point {
        Point::new(&self.x + dx, &self.y + dy)
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y
    }
}

impl Eq for Point {}

impl std::hash::Hash for Point {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.x.hash(state);
        self.y.hash(state);
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i32 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }

    pub fn from_sign(s: i32) -> Orientation {
        match s.signum() {
            -1 => Orientation::Clockwise,
            0 => Orientation::Collinear,
            _ => Orientation::CounterClockwise,
        }
    }
}

// Relative error allowance for the floating filter; roughly 45 ulps of the
// magnitude of the summed products.
const FILTER_EPS: f64 = 1e-14;

/// Sign of `(q - p) x (r - p)`.
pub fn orient(p: &Point, q: &Point, r: &Point) -> Orientation {
    let (px, py) = p.approx;
    let (qx, qy) = q.approx;
    let (rx, ry) = r.approx;
    let det = (qx - px) * (ry - py) - (qy - py) * (rx - px);
    let mag = (qx.abs() + px.abs()) * (ry.abs() + py.abs()) + (qy.abs() + py.abs()) * (rx.abs() + px.abs());
    if det.is_finite() && mag.is_finite() && mag > 1e-250 && det.abs() > FILTER_EPS * mag {
        return if det > 0.0 { Orientation::CounterClockwise } else { Orientation::Clockwise };
    }
    orient_exact(p, q, r)
}

fn orient_exact(p: &Point, q: &Point, r: &Point) -> Orientation {
    let det = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
    if det.is_zero() {
        Orientation::Collinear
    } else if det.is_positive() {
        Orientation::CounterClockwise
    } else {
        Orientation::Clockwise
    }
}

/// Unordered pair of point indices stored as `(min, max)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Edge {
    a: usize,
    b: usize,
}

/// A straight segment between two points of a point set.
pub type Segment = Edge;

impl Edge {
    /// Panics when `a == b`.
    pub fn new(a: usize, b: usize) -> Edge {
        assert_ne!(a, b, "edge endpoints must differ");
        if a < b {
            Edge { a, b }
        } else {
            Edge { a: b, b: a }
        }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.contains(other.a) || self.contains(other.b)
    }

    pub fn length(&self, pts: &[Point]) -> f64 {
        pts[self.a].dist(&pts[self.b])
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> [usize; 2] {
        [e.a, e.b]
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = String;

    fn try_from(v: [usize; 2]) -> std::result::Result<Edge, String> {
        if v[0] == v[1] {
            return Err(format!("degenerate edge [{}, {}]", v[0], v[1]));
        }
        Ok(Edge::new(v[0], v[1]))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// True iff the open segments `ab` and `cd` share a point.
pub fn open_segments_cross(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    use Orientation::Collinear;
    if o1 != Collinear && o2 != Collinear && o3 != Collinear && o4 != Collinear {
        return o1 != o2 && o3 != o4;
    }
    if o1 == Collinear && o2 == Collinear {
        // Overlap of collinear open intervals, measured along the dominant axis.
        let use_x = a.x != b.x;
        let proj = |p: &Point| if use_x { p.x.clone() } else { p.y.clone() };
        let (mut s0, mut s1) = (proj(a), proj(b));
        let (mut t0, mut t1) = (proj(c), proj(d));
        if s0 > s1 {
            std::mem::swap(&mut s0, &mut s1);
        }
        if t0 > t1 {
            std::mem::swap(&mut t0, &mut t1);
        }
        let lo = if s0 > t0 { s0 } else { t0 };
        let hi = if s1 < t1 { s1 } else { t1 };
        return lo < hi;
    }
    false
}

/// True iff the two segments cross in their interiors. Segments sharing an
/// endpoint do not cross (under general position).
pub fn segments_cross(pts: &[Point], s1: Edge, s2: Edge) -> bool {
    if s1 == s2 {
        return false;
    }
    if s1.shares_endpoint(&s2) {
        // Only collinear overlap could make these cross.
        let (p, q) = (&pts[s1.a], &pts[s1.b]);
        let (r, s) = (&pts[s2.a], &pts[s2.b]);
        if orient(p, q, r) != Orientation::Collinear || orient(p, q, s) != Orientation::Collinear {
            return false;
        }
        return open_segments_cross(p, q, r, s);
    }
    open_segments_cross(&pts[s1.a], &pts[s1.b], &pts[s2.a], &pts[s2.b])
}

/// Vertices of the convex hull in counterclockwise order, collinear boundary
/// points excluded.
pub fn convex_hull(pts: &[Point]) -> Result<Vec<usize>> {
    convex_hull_of(pts, &(0..pts.len()).collect::<Vec<_>>())
}

/// Convex hull of a subset given by indices.
pub fn convex_hull_of(pts: &[Point], subset: &[usize]) -> Result<Vec<usize>> {
    if subset.len() < 3 {
        return Err(Error::Degenerate(format!(
            "convex hull needs at least 3 points, got {}",
            subset.len()
        )));
    }
    let mut idx = subset.to_vec();
    idx.sort_by(|&i, &j| pts[i].lex_cmp(&pts[j]));
    idx.dedup_by(|i, j| pts[*i] == pts[*j]);

    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && orient(&pts[lower[lower.len() - 2]], &pts[lower[lower.len() - 1]], &pts[i])
                != Orientation::CounterClockwise
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && orient(&pts[upper[upper.len() - 2]], &pts[upper[upper.len() - 1]], &pts[i])
                != Orientation::CounterClockwise
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(lower)
}

/// Line through two distinct points, directed from `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub a: Point,
    pub b: Point,
}

impl Line {
    pub fn through(a: Point, b: Point) -> Result<Line> {
        if a == b {
            return Err(Error::Degenerate("line through coincident points".into()));
        }
        Ok(Line { a, b })
    }

    /// `CounterClockwise` = left of the directed line.
    pub fn side(&self, p: &Point) -> Orientation {
        orient(&self.a, &self.b, p)
    }
}

/// Tangent found between two separated point sets; `red` from the first set,
/// `blue` from the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tangent {
    pub red: usize,
    pub blue: usize,
}

impl Tangent {
    pub fn edge(&self) -> Edge {
        Edge::new(self.red, self.blue)
    }
}

/// Checks that every point of `set` other than `r` and `b` lies strictly on
/// `side` of the directed line `r -> b`.
fn all_on_side(pts: &[Point], set: &[usize], r: usize, b: usize, side: Orientation) -> bool {
    set.iter()
        .filter(|&&c| c != r && c != b)
        .all(|&c| orient(&pts[r], &pts[b], &pts[c]) == side)
}

/// Alternating scan toward the unique pair `(r, b)` for which every point of
/// `red` lies on `red_side` and every point of `blue` on `blue_side` of
/// `r -> b`. Falls back to exhaustive search, and fails if the sets are not
/// separated.
fn tangent_search(
    pts: &[Point],
    red: &[usize],
    blue: &[usize],
    red_side: Orientation,
    blue_side: Orientation,
) -> Result<Tangent> {
    if red.is_empty() || blue.is_empty() {
        return Err(Error::Degenerate("tangent of an empty set".into()));
    }
    let ok = |r: usize, b: usize| {
        all_on_side(pts, red, r, b, red_side) && all_on_side(pts, blue, r, b, blue_side)
    };
    let (mut r, mut b) = (red[0], blue[0]);
    let guard = 4 * (red.len() + blue.len()) + 8;
    for _ in 0..guard {
        let mut changed = false;
        for &c in blue {
            if c != b && orient(&pts[r], &pts[b], &pts[c]) != blue_side {
                b = c;
                changed = true;
            }
        }
        for &c in red {
            if c != r && orient(&pts[r], &pts[b], &pts[c]) != red_side {
                r = c;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if ok(r, b) {
        return Ok(Tangent { red: r, blue: b });
    }
    for &r in red {
        for &b in blue {
            if ok(r, b) {
                return Ok(Tangent { red: r, blue: b });
            }
        }
    }
    Err(Error::NotSeparated)
}

/// Upper common tangent of two separated sets: with `red` to the left of
/// `blue`, all remaining points lie strictly below the line `r b` (strictly
/// right of the directed line `r -> b`).
pub fn upper_tangent(pts: &[Point], red: &[usize], blue: &[usize]) -> Result<Tangent> {
    tangent_search(pts, red, blue, Orientation::Clockwise, Orientation::Clockwise)
}

/// The two crossing tangents of separated sets. In the first, red lies left
/// of `r -> b` and blue right; in the second the sides are exchanged.
pub fn crossing_tangents(pts: &[Point], red: &[usize], blue: &[usize]) -> Result<(Tangent, Tangent)> {
    let t1 = tangent_search(pts, red, blue, Orientation::CounterClockwise, Orientation::Clockwise)?;
    let t2 = tangent_search(pts, red, blue, Orientation::Clockwise, Orientation::CounterClockwise)?;
    Ok((t1, t2))
}

/// Intersection point of the lines through `ab` and `cd`; `None` if parallel.
pub fn line_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Point> {
    let (bax, bay) = (&b.x - &a.x, &b.y - &a.y);
    let (dcx, dcy) = (&d.x - &c.x, &d.y - &c.y);
    let denom = &bax * &dcy - &bay * &dcx;
    if denom.is_zero() {
        return None;
    }
    let (cax, cay) = (&c.x - &a.x, &c.y - &a.y);
    let t = (&cax * &dcy - &cay * &dcx) / denom;
    Some(Point::new(&a.x + &t * &bax, &a.y + &t * &bay))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Red,
    Blue,
}

#[derive(Default, Clone, Copy, Debug, PartialEq, Eq)]
struct SideCount {
    left: usize,
    on: usize,
    right: usize,
}

impl SideCount {
    fn add(&mut self, side: Orientation) {
        match side {
            Orientation::CounterClockwise => self.left += 1,
            Orientation::Collinear => self.on += 1,
            Orientation::Clockwise => self.right += 1,
        }
    }

    /// Exact bisection contract for a class of `size` points.
    fn bisects(&self, size: usize) -> bool {
        let half = size / 2;
        self.left == half && self.right == half && self.on == size % 2
    }
}

fn counts(line: &Line, pts: &[Point], red: &[usize], blue: &[usize]) -> (SideCount, SideCount) {
    let mut rc = SideCount::default();
    let mut bc = SideCount::default();
    for &i in red {
        rc.add(line.side(&pts[i]));
    }
    for &i in blue {
        bc.add(line.side(&pts[i]));
    }
    (rc, bc)
}

/// True iff `line` has `floor(|S|/2)` points of each class strictly on each
/// side, with exactly one on the line for an odd class.
pub fn is_ham_sandwich_cut(line: &Line, pts: &[Point], red: &[usize], blue: &[usize]) -> bool {
    let (rc, bc) = counts(line, pts, red, blue);
    rc.bisects(red.len()) && bc.bisects(blue.len())
}

/// Simultaneous bisector of `red` and `blue`.
///
/// Searches lines through two input points. Each of the two anchor points is
/// either kept on the line or pushed infinitesimally to one side; a chosen
/// candidate is then made concrete by shrinking a rational perturbation until
/// the exact side counts match.
pub fn ham_sandwich_cut(pts: &[Point], red: &[usize], blue: &[usize]) -> Result<Line> {
    let all: Vec<(usize, Color)> = red
        .iter()
        .map(|&i| (i, Color::Red))
        .chain(blue.iter().map(|&i| (i, Color::Blue)))
        .collect();
    match all.len() {
        0 => return Line::through(Point::from_ints(0, 0), Point::from_ints(1, 0)),
        1 => {
            let p = pts[all[0].0].clone();
            let q = p.translate(&BigRational::one(), &BigRational::zero());
            return Line::through(p, q);
        }
        _ => {}
    }

    // Red/blue pairs first: with equal odd sizes only those can work.
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(all.len() * all.len() / 2);
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            if all[i].1 != all[j].1 {
                pairs.push((i, j));
            }
        }
    }
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            if all[i].1 == all[j].1 {
                pairs.push((i, j));
            }
        }
    }

    const SIDES: [Orientation; 3] =
        [Orientation::Collinear, Orientation::CounterClockwise, Orientation::Clockwise];
    for (i, j) in pairs {
        let (pi, ci) = all[i];
        let (pj, cj) = all[j];
        if pts[pi] == pts[pj] {
            continue;
        }
        let mut rc = SideCount::default();
        let mut bc = SideCount::default();
        for (k, &(pk, ck)) in all.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            let s = orient(&pts[pi], &pts[pj], &pts[pk]);
            if s == Orientation::Collinear {
                // Degenerate anchor pair; concrete lines from it cannot be
                // reasoned about symbolically.
                rc.on = usize::MAX / 4;
            }
            match ck {
                Color::Red => rc.add(s),
                Color::Blue => bc.add(s),
            }
        }
        for si in SIDES {
            for sj in SIDES {
                let (mut r2, mut b2) = (rc, bc);
                match ci {
                    Color::Red => r2.add(si),
                    Color::Blue => b2.add(si),
                }
                match cj {
                    Color::Red => r2.add(sj),
                    Color::Blue => b2.add(sj),
                }
                if r2.bisects(red.len()) && b2.bisects(blue.len()) {
                    if let Some(line) = concretize(pts, pi, pj, si, sj, red, blue) {
                        return Ok(line);
                    }
                }
            }
        }
    }
    Err(Error::Internal("no ham-sandwich cut found".into()))
}

fn push_factor(side: Orientation) -> i64 {
    match side {
        Orientation::CounterClockwise => -1,
        Orientation::Collinear => 0,
        Orientation::Clockwise => 1,
    }
}

/// Moves the anchors of the line `pi pj` along its normal by a shrinking
/// rational amount until `pi` and `pj` land on the requested sides and the
/// exact bisection contract holds.
fn concretize(
    pts: &[Point],
    pi: usize,
    pj: usize,
    si: Orientation,
    sj: Orientation,
    red: &[usize],
    blue: &[usize],
) -> Option<Line> {
    let (a, b) = (&pts[pi], &pts[pj]);
    let nx = -(&b.y - &a.y);
    let ny = &b.x - &a.x;
    let fa = BigRational::from_integer(push_factor(si).into());
    let fb = BigRational::from_integer(push_factor(sj).into());
    let mut eps = BigRational::one();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for _ in 0..256 {
        let a2 = a.translate(&(&fa * &eps * &nx), &(&fa * &eps * &ny));
        let b2 = b.translate(&(&fb * &eps * &nx), &(&fb * &eps * &ny));
        if a2 != b2 {
            let line = Line { a: a2, b: b2 };
            if line.side(a) == si && line.side(b) == sj && is_ham_sandwich_cut(&line, pts, red, blue) {
                return Some(line);
            }
        }
        eps = &eps * &half;
    }
    None
}

/// A degenerate configuration found by [`check_general_position`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    Duplicate(usize, usize),
    Collinear(usize, usize, usize),
}

impl From<Degeneracy> for Error {
    fn from(d: Degeneracy) -> Error {
        match d {
            Degeneracy::Duplicate(i, j) => Error::Duplicate(i, j),
            Degeneracy::Collinear(i, j, k) => Error::Collinear(i, j, k),
        }
    }
}

/// Exhaustive general-position test in `O(n^2 log n)`: for every point the
/// directions to all others are folded into a half-turn and sorted; two equal
/// neighbours are a collinear triple.
pub fn check_general_position(pts: &[Point]) -> std::result::Result<(), Degeneracy> {
    for p in 0..pts.len() {
        // (index, flipped) with direction folded into [0, pi).
        let mut dirs: Vec<(usize, bool)> = Vec::with_capacity(pts.len());
        for q in 0..pts.len() {
            if q == p {
                continue;
            }
            let ord = pts[q].y.cmp(&pts[p].y).then_with(|| pts[q].x.cmp(&pts[p].x));
            match ord {
                Ordering::Equal => return Err(Degeneracy::Duplicate(p.min(q), p.max(q))),
                Ordering::Greater => dirs.push((q, false)),
                Ordering::Less => dirs.push((q, true)),
            }
        }
        let cross = |a: &(usize, bool), b: &(usize, bool)| {
            let s = orient(&pts[p], &pts[a.0], &pts[b.0]).sign();
            if a.1 != b.1 {
                -s
            } else {
                s
            }
        };
        // Collinear pairs compare equal; a stable sort keeps them adjacent.
        dirs.sort_by(|a, b| 0.cmp(&cross(a, b)));
        for w in dirs.windows(2) {
            if cross(&w[0], &w[1]) == 0 {
                let mut t = [p, w[0].0, w[1].0];
                t.sort_unstable();
                return Err(Degeneracy::Collinear(t[0], t[1], t[2]));
            }
        }
    }
    Ok(())
}

pub fn in_general_position(pts: &[Point]) -> bool {
    check_general_position(pts).is_ok()
}

/// Brute-force `O(n^3)` general-position test.
pub fn check_general_position_naive(pts: &[Point]) -> std::result::Result<(), Degeneracy> {
    let n = pts.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if pts[i] == pts[j] {
                return Err(Degeneracy::Duplicate(i, j));
            }
            for k in (j + 1)..n {
                if orient(&pts[i], &pts[j], &pts[k]) == Orientation::Collinear {
                    return Err(Degeneracy::Collinear(i, j, k));
                }
            }
        }
    }
    Ok(())
}

/// Horizontal shear `x' = x + s y` that makes all abscissae distinct.
///
/// Orientation is invariant under the shear, so "vertical" separation in the
/// sheared frame is separation by a genuine line in the original frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shear {
    slope: BigRational,
}

impl Shear {
    pub fn identity() -> Shear {
        Shear { slope: BigRational::zero() }
    }

    pub fn with_slope(slope: BigRational) -> Shear {
        Shear { slope }
    }

    pub fn slope(&self) -> &BigRational {
        &self.slope
    }

    pub fn key(&self, p: &Point) -> BigRational {
        if self.slope.is_zero() {
            p.x.clone()
        } else {
            &p.x + &self.slope * &p.y
        }
    }

    /// Smallest-index shear from the sequence `0, 1/1024, 1/1025, ...` that
    /// separates all keys. Fails only on coincident points.
    pub fn for_points(pts: &[Point], subset: &[usize]) -> Result<Shear> {
        for t in 0..4096u32 {
            let shear = if t == 0 {
                Shear::identity()
            } else {
                Shear::with_slope(BigRational::new(BigInt::one(), BigInt::from(1023 + t)))
            };
            let mut keys: Vec<BigRational> = subset.iter().map(|&i| shear.key(&pts[i])).collect();
            keys.sort();
            if keys.windows(2).all(|w| w[0] != w[1]) {
                return Ok(shear);
            }
        }
        Err(Error::Degenerate("no shear separates the x-coordinates".into()))
    }

    /// `subset` sorted by increasing key; errors on equal keys.
    pub fn sorted(&self, pts: &[Point], subset: &[usize]) -> Result<Vec<usize>> {
        let mut keyed: Vec<(BigRational, usize)> = subset.iter().map(|&i| (self.key(&pts[i]), i)).collect();
        keyed.sort();
        if let Some(w) = keyed.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Degenerate(format!(
                "points {} and {} share a sweep coordinate",
                w[0].1, w[1].1
            )));
        }
        Ok(keyed.into_iter().map(|(_, i)| i).collect())
    }
}

/// Sorts `idx` clockwise as seen from `center`. Only meaningful when all the
/// points lie inside an open half-plane through `center`.
pub fn sort_clockwise_in_wedge(pts: &[Point], center: &Point, idx: &mut [usize]) {
    idx.sort_by(|&a, &b| match orient(center, &pts[a], &pts[b]) {
        Orientation::Clockwise => Ordering::Less,
        Orientation::CounterClockwise => Ordering::Greater,
        Orientation::Collinear => pts[a].lex_cmp(&pts[b]),
    });
}
