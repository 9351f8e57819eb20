//! Point sets and the generators for every configuration family used by the
//! packers and oracles.

use std::collections::HashSet;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{check_general_position, convex_hull, orient, Orientation, Point};

/// Free-form provenance attached to a point set and carried through files.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Wheel families: indices `0..circle_count` lie on the circle in
    /// counterclockwise order, the rest inside.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circle_count: Option<usize>,
    /// Nested triangles `(a_i, b_i, c_i)`, outermost first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triangles: Option<Vec<[usize; 3]>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
    pub meta: Meta,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> PointSet {
        PointSet { points, meta: Meta::default() }
    }

    pub fn with_meta(points: Vec<Point>, meta: Meta) -> PointSet {
        PointSet { points, meta }
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> PointSet {
        PointSet::new(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn in_general_position(&self) -> bool {
        check_general_position(&self.points).is_ok()
    }

    /// Restriction to `idx`, re-indexed `0..idx.len()`.
    pub fn subset(&self, idx: &[usize]) -> PointSet {
        PointSet::new(idx.iter().map(|&i| self.points[i].clone()).collect())
    }
}

/// Parameters of the wheel-variation family: `x_count` points on the circle,
/// `y_count` strictly inside the region bounded by all chords.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WheelVariationSpec {
    pub n: usize,
    pub x_count: usize,
    pub y_count: usize,
}

impl WheelVariationSpec {
    /// The instance with `|Y| = 2 floor(n/6) - 1`.
    pub fn for_n(n: usize) -> Result<WheelVariationSpec> {
        if n < 6 || n % 2 != 0 {
            return Err(Error::InvalidSize(format!("wheel variation needs even n >= 6, got {n}")));
        }
        let y_count = 2 * (n / 6) - 1;
        Ok(WheelVariationSpec { n, x_count: n - y_count, y_count })
    }
}

const CIRCLE_DENOM_BITS: u32 = 24;

/// Rational point exactly on the circle of radius `radius`, close to angle
/// `theta`, via the tangent half-angle parametrisation with parameter
/// `p / 2^bits`.
fn circle_point(theta: f64, radius: &BigRational, bits: u32) -> Point {
    let mut t = theta.rem_euclid(2.0 * PI);
    let flip = t > PI / 2.0 && t <= 3.0 * PI / 2.0;
    if flip {
        t -= PI;
    }
    if t > PI {
        t -= 2.0 * PI;
    }
    let q: i64 = 1 << bits;
    let p = ((t / 2.0).tan() * q as f64).round() as i64;
    let (p, q) = (BigInt::from(p), BigInt::from(q));
    let den = &q * &q + &p * &p;
    let mut x = BigRational::new(&q * &q - &p * &p, den.clone());
    let mut y = BigRational::new(BigInt::from(2) * &p * &q, den);
    if flip {
        x = -x;
        y = -y;
    }
    Point::new(x * radius, y * radius)
}

fn unit() -> BigRational {
    BigRational::from_integer(1.into())
}

fn require_even(n: usize, min: usize, what: &str) -> Result<()> {
    if n % 2 != 0 || n < min {
        return Err(Error::InvalidSize(format!("{what} needs an even n >= {min}, got {n}")));
    }
    Ok(())
}

/// `n` points in strictly convex position on a circle, jittered angles,
/// listed counterclockwise.
pub fn gen_convex(n: usize, seed: u64) -> Result<PointSet> {
    require_even(n, 4, "convex family")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = unit();
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    for i in 0..n {
        let jitter: f64 = rng.gen_range(0.0..0.6);
        let theta = 2.0 * PI * (i as f64 + jitter) / n as f64;
        pts.push(circle_point(theta, &r, CIRCLE_DENOM_BITS));
    }
    let meta = Meta { family: Some("convex".into()), seed: Some(seed), ..Meta::default() };
    let set = PointSet::with_meta(pts, meta);
    check_general_position(set.points())?;
    Ok(set)
}

/// `n - 1` points regularly spaced on the unit circle (rational
/// approximation) and the center as index `n - 1`.
pub fn gen_regular_wheel(n: usize) -> Result<PointSet> {
    require_even(n, 6, "regular wheel")?;
    let r = unit();
    let k = n - 1;
    let mut pts: Vec<Point> = (0..k)
        .map(|i| circle_point(PI / 2.0 + 2.0 * PI * i as f64 / k as f64, &r, CIRCLE_DENOM_BITS))
        .collect();
    pts.push(Point::from_ints(0, 0));
    let meta = Meta { family: Some("wheel".into()), circle_count: Some(k), ..Meta::default() };
    let set = PointSet::with_meta(pts, meta);
    check_general_position(set.points())?;
    Ok(set)
}

/// True iff every `Y` point lies strictly on the center side of the line
/// through every pair of circle points.
pub fn inside_all_chords(circle: &[Point], inner: &[Point]) -> bool {
    let center = Point::from_ints(0, 0);
    for i in 0..circle.len() {
        for j in (i + 1)..circle.len() {
            let cs = orient(&circle[i], &circle[j], &center);
            if cs == Orientation::Collinear {
                return false;
            }
            if inner.iter().any(|y| orient(&circle[i], &circle[j], y) != cs) {
                return false;
            }
        }
    }
    true
}

/// Wheel variation: odd `|X|` regular on the unit circle, `|Y| = 2 floor(n/6) - 1`
/// points strictly inside all chords. `|Y| = 1` is the regular wheel.
pub fn gen_wheel_variation(n: usize) -> Result<PointSet> {
    let spec = WheelVariationSpec::for_n(n)?;
    if spec.y_count == 1 {
        let mut set = gen_regular_wheel(n)?;
        set.meta.family = Some("wheel-variation".into());
        return Ok(set);
    }
    let r = unit();
    let k = spec.x_count;
    let circle: Vec<Point> = (0..k)
        .map(|i| circle_point(PI / 2.0 + 2.0 * PI * i as f64 / k as f64, &r, CIRCLE_DENOM_BITS))
        .collect();
    // Distance from the center to the innermost chords is sin(pi / 2k).
    let inner_radius = (PI / (2.0 * k as f64)).sin() / 4.0;
    let rho = BigRational::new(BigInt::from((inner_radius * 1048576.0).floor() as i64), BigInt::from(1048576));
    for attempt in 0..64 {
        let offset = 0.3 + 0.17 * attempt as f64;
        let inner: Vec<Point> = (0..spec.y_count)
            .map(|j| circle_point(offset + 2.0 * PI * j as f64 / spec.y_count as f64, &rho, 20))
            .collect();
        let mut pts = circle.clone();
        pts.extend(inner.iter().cloned());
        if check_general_position(&pts).is_ok() && inside_all_chords(&circle, &inner) {
            let meta = Meta {
                family: Some("wheel-variation".into()),
                circle_count: Some(k),
                ..Meta::default()
            };
            return Ok(PointSet::with_meta(pts, meta));
        }
    }
    Err(Error::Internal("could not place interior points of the wheel variation".into()))
}

const RANDOM_COORD_RANGE: i64 = 1 << 20;

fn direction(dx: i64, dy: i64) -> (i64, i64) {
    let g = dx.gcd(&dy);
    let (dx, dy) = (dx / g, dy / g);
    if dy < 0 || (dy == 0 && dx < 0) {
        (-dx, -dy)
    } else {
        (dx, dy)
    }
}

/// `n` random integer points in `[0, 2^20)^2`, general position enforced by
/// rejection against a per-point set of reduced directions.
pub fn gen_random(n: usize, seed: u64) -> Result<PointSet> {
    if n % 2 != 0 || n < 2 {
        return Err(Error::InvalidSize(format!("random family needs an even n >= 2, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords: Vec<(i64, i64)> = Vec::with_capacity(n);
    let mut dirs: Vec<HashSet<(i64, i64)>> = Vec::with_capacity(n);
    while coords.len() < n {
        let q = (rng.gen_range(0..RANDOM_COORD_RANGE), rng.gen_range(0..RANDOM_COORD_RANGE));
        let mut new_dirs = Vec::with_capacity(coords.len());
        let mut ok = true;
        for (i, &p) in coords.iter().enumerate() {
            if p == q {
                ok = false;
                break;
            }
            let d = direction(q.0 - p.0, q.1 - p.1);
            if dirs[i].contains(&d) {
                ok = false;
                break;
            }
            new_dirs.push(d);
        }
        if !ok {
            continue;
        }
        let mut own = HashSet::with_capacity(n);
        for (i, d) in new_dirs.into_iter().enumerate() {
            dirs[i].insert(d);
            own.insert(d);
        }
        dirs.push(own);
        coords.push(q);
    }
    let mut set = PointSet::from_ints(&coords);
    set.meta = Meta { family: Some("random".into()), seed: Some(seed), ..Meta::default() };
    Ok(set)
}

/// Nesting ratio between consecutive triangles.
pub const NESTED_RATIO: (i64, i64) = (1, 3);

/// `k` nested triangles `t_i = (a_i, b_i, c_i)`, each strictly inside the
/// previous one; `3k` points with `t_i` at indices `3i, 3i+1, 3i+2`.
pub fn gen_nested_triangles(k: usize) -> Result<PointSet> {
    gen_nested_triangles_with_ratio(k, NESTED_RATIO)
}

pub fn gen_nested_triangles_with_ratio(k: usize, ratio: (i64, i64)) -> Result<PointSet> {
    if k == 0 || k % 2 != 0 {
        return Err(Error::InvalidSize(format!("nested triangles need a positive even count, got {k}")));
    }
    if ratio.0 <= 0 || ratio.1 <= ratio.0 {
        return Err(Error::InvalidSize("nesting ratio must lie in (0, 1)".into()));
    }
    let rho = BigRational::new(ratio.0.into(), ratio.1.into());
    let twist = 7.0_f64.to_radians();
    let mut pts = Vec::with_capacity(3 * k);
    let mut triangles = Vec::with_capacity(k);
    let mut scale = unit();
    for i in 0..k {
        let base = PI / 2.0 + twist * i as f64;
        for j in 0..3 {
            pts.push(circle_point(base + 2.0 * PI * j as f64 / 3.0, &scale, 16));
        }
        triangles.push([3 * i, 3 * i + 1, 3 * i + 2]);
        scale = scale * &rho;
    }
    for w in triangles.windows(2) {
        let [a, b, c] = w[0];
        for &v in &w[1] {
            let inside = [(a, b), (b, c), (c, a)]
                .iter()
                .all(|&(s, t)| orient(&pts[s], &pts[t], &pts[v]) == Orientation::CounterClockwise);
            if !inside {
                return Err(Error::Internal(format!("triangle containment failed at point {v}")));
            }
        }
    }
    check_general_position(&pts)?;
    let meta = Meta {
        family: Some("nested-triangles".into()),
        triangles: Some(triangles),
        ..Meta::default()
    };
    Ok(PointSet::with_meta(pts, meta))
}

/// True iff all points are hull vertices.
pub fn is_convex_position(set: &PointSet) -> bool {
    set.len() >= 3 && convex_hull(set.points()).map(|h| h.len() == set.len()).unwrap_or(false)
}
