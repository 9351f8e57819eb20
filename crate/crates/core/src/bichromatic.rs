//! Plane red-blue matchings (minimum length, recursive bisection, iterated
//! tangents) and plane multicolored matchings.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{crossing_tangents, ham_sandwich_cut, orient, segments_cross, upper_tangent, Edge, Orientation, Point};
use crate::matching::Matching;

/// Largest class size for which a minimum-length result is reported as
/// certified.
pub const EXACT_RB_LIMIT: usize = 16;
/// Largest point count handled by the exact subset dynamic program.
pub const EXACT_COLORED_LIMIT: usize = 20;

/// How much is known about a matching returned by a minimum-length routine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quality {
    /// Minimum total length, and plane.
    Exact,
    /// Plane; minimality not certified at this size.
    PlaneUncertified,
    /// The optimiser's output crossed (floating ties) and was uncrossed.
    Repaired,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinMatching {
    pub matching: Matching,
    pub quality: Quality,
}

/// Minimum-cost perfect assignment on a square cost matrix (shortest
/// augmenting paths with potentials). Returns `col[row]`.
pub fn min_cost_assignment(cost: &[Vec<f64>]) -> Vec<usize> {
    let k = cost.len();
    if k == 0 {
        return Vec::new();
    }
    let inf = f64::INFINITY;
    // 1-based internally; row 0 / column 0 are sentinels.
    let mut u = vec![0.0; k + 1];
    let mut v = vec![0.0; k + 1];
    let mut owner = vec![0usize; k + 1];
    let mut way = vec![0usize; k + 1];
    for i in 1..=k {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; k + 1];
        let mut used = vec![false; k + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=k {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=k {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut col = vec![0; k];
    for j in 1..=k {
        col[owner[j] - 1] = j - 1;
    }
    col
}

fn require_equal(red: &[usize], blue: &[usize]) -> Result<()> {
    if red.len() != blue.len() {
        return Err(Error::InvalidSize(format!(
            "red and blue classes differ in size ({} vs {})",
            red.len(),
            blue.len()
        )));
    }
    Ok(())
}

/// Swaps crossing red-blue pairs `(r1 b1), (r2 b2) -> (r1 b2), (r2 b1)` until
/// none cross. Each swap strictly shortens the matching. Returns whether any
/// swap happened.
fn uncross_pairs(pts: &[Point], pairs: &mut [(usize, usize)]) -> bool {
    let mut changed = false;
    'outer: loop {
        for i in 0..pairs.len() {
            for j in (i + 1)..pairs.len() {
                let (r1, b1) = pairs[i];
                let (r2, b2) = pairs[j];
                if segments_cross(pts, Edge::new(r1, b1), Edge::new(r2, b2)) {
                    pairs[i] = (r1, b2);
                    pairs[j] = (r2, b1);
                    changed = true;
                    continue 'outer;
                }
            }
        }
        return changed;
    }
}

/// Minimum total length red-blue perfect matching (plane by the triangle
/// inequality). Planarity is verified exactly and repaired if floating
/// point ties produced a crossing.
pub fn min_rb_matching(pts: &[Point], red: &[usize], blue: &[usize]) -> Result<MinMatching> {
    require_equal(red, blue)?;
    let cost: Vec<Vec<f64>> = red.iter().map(|&r| blue.iter().map(|&b| pts[r].dist(&pts[b])).collect()).collect();
    let col = min_cost_assignment(&cost);
    let mut pairs: Vec<(usize, usize)> = red.iter().enumerate().map(|(i, &r)| (r, blue[col[i]])).collect();
    let quality = if uncross_pairs(pts, &mut pairs) {
        Quality::Repaired
    } else if red.len() <= EXACT_RB_LIMIT {
        Quality::Exact
    } else {
        Quality::PlaneUncertified
    };
    Ok(MinMatching { matching: Matching::from_pairs(&pairs), quality })
}

/// Statistics of a recursive bisection run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CutStats {
    /// Number of nested cut levels (0 when at most one pair).
    pub depth: usize,
    /// Number of bisecting lines computed.
    pub cuts: usize,
}

/// Plane red-blue matching by recursive simultaneous bisection. With odd
/// class sizes the cut passes through one red and one blue point, which are
/// matched to each other.
pub fn cut_rb_matching(pts: &[Point], red: &[usize], blue: &[usize]) -> Result<Matching> {
    cut_rb_matching_with_stats(pts, red, blue).map(|(m, _)| m)
}

pub fn cut_rb_matching_with_stats(pts: &[Point], red: &[usize], blue: &[usize]) -> Result<(Matching, CutStats)> {
    require_equal(red, blue)?;
    let mut edges = Vec::with_capacity(red.len());
    let mut stats = CutStats::default();
    cut_rec(pts, red.to_vec(), blue.to_vec(), 0, &mut edges, &mut stats)?;
    Ok((Matching::new(edges), stats))
}

fn cut_rec(
    pts: &[Point],
    red: Vec<usize>,
    blue: Vec<usize>,
    depth: usize,
    edges: &mut Vec<Edge>,
    stats: &mut CutStats,
) -> Result<()> {
    match red.len() {
        0 => return Ok(()),
        1 => {
            edges.push(Edge::new(red[0], blue[0]));
            return Ok(());
        }
        _ => {}
    }
    let line = ham_sandwich_cut(pts, &red, &blue)?;
    stats.cuts += 1;
    stats.depth = stats.depth.max(depth + 1);
    let split = |set: &[usize]| {
        let mut parts: [Vec<usize>; 3] = Default::default();
        for &i in set {
            let slot = match line.side(&pts[i]) {
                Orientation::CounterClockwise => 0,
                Orientation::Collinear => 1,
                Orientation::Clockwise => 2,
            };
            parts[slot].push(i);
        }
        parts
    };
    let [rl, ron, rr] = split(&red);
    let [bl, bon, br] = split(&blue);
    if rl.len() != bl.len() || rr.len() != br.len() || ron.len() != bon.len() || ron.len() > 1 {
        return Err(Error::Internal("bisecting line does not balance the classes".into()));
    }
    if let (Some(&r), Some(&b)) = (ron.first(), bon.first()) {
        edges.push(Edge::new(r, b));
    }
    cut_rec(pts, rl, bl, depth + 1, edges, stats)?;
    cut_rec(pts, rr, br, depth + 1, edges, stats)
}

/// One step of the iterated tangent construction: the chosen edge and how
/// many of the still unmatched points of each class lie below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TangentStep {
    pub red: usize,
    pub blue: usize,
    pub red_below: usize,
    pub blue_below: usize,
}

/// Plane red-blue matching for classes separated by a line: repeatedly match
/// the endpoints of the upper common tangent and remove them.
pub fn tangent_rb_matching(pts: &[Point], red: &[usize], blue: &[usize]) -> Result<Matching> {
    let steps = tangent_rb_steps(pts, red, blue)?;
    Ok(Matching::new(steps.iter().map(|s| Edge::new(s.red, s.blue)).collect()))
}

pub fn tangent_rb_steps(pts: &[Point], red: &[usize], blue: &[usize]) -> Result<Vec<TangentStep>> {
    require_equal(red, blue)?;
    if red.is_empty() {
        return Ok(Vec::new());
    }
    // Separability check: crossing tangents exist iff a line separates.
    crossing_tangents(pts, red, blue)?;
    let mut red = red.to_vec();
    let mut blue = blue.to_vec();
    let mut steps = Vec::with_capacity(red.len());
    while !red.is_empty() {
        let t = upper_tangent(pts, &red, &blue)?;
        red.retain(|&i| i != t.red);
        blue.retain(|&i| i != t.blue);
        let below = |set: &[usize]| {
            set.iter().filter(|&&i| orient(&pts[t.red], &pts[t.blue], &pts[i]) == Orientation::Clockwise).count()
        };
        steps.push(TangentStep { red: t.red, blue: t.blue, red_below: below(&red), blue_below: below(&blue) });
    }
    Ok(steps)
}

/// Checks the feasibility condition for a colored matching: `n` even and no
/// class larger than `n / 2`.
pub fn colored_matching_feasible(colors: &[usize]) -> bool {
    let n = colors.len();
    if n % 2 != 0 {
        return false;
    }
    let mut counts = std::collections::HashMap::new();
    for &c in colors {
        *counts.entry(c).or_insert(0usize) += 1;
    }
    counts.values().all(|&c| 2 * c <= n)
}

/// Minimum total length perfect matching with no monochromatic edge; plane.
/// Exact (subset dynamic program) up to [`EXACT_COLORED_LIMIT`] points;
/// beyond that a balanced initial pairing is uncrossed.
pub fn min_colored_matching(pts: &[Point], colors: &[usize]) -> Result<MinMatching> {
    let n = pts.len();
    if colors.len() != n {
        return Err(Error::InvalidSize(format!("{} colors for {n} points", colors.len())));
    }
    if n % 2 != 0 {
        return Err(Error::InvalidSize(format!("odd point count {n}")));
    }
    if !colored_matching_feasible(colors) {
        return Err(Error::Infeasible("a color class holds more than half of the points".into()));
    }
    if n <= EXACT_COLORED_LIMIT {
        let mut pairs = colored_dp(pts, colors);
        let repaired = uncross_colored(pts, colors, &mut pairs);
        let quality = if repaired { Quality::Repaired } else { Quality::Exact };
        return Ok(MinMatching { matching: Matching::from_pairs(&pairs), quality });
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut counts = std::collections::HashMap::new();
    for &c in colors {
        *counts.entry(c).or_insert(0usize) += 1;
    }
    order.sort_by_key(|&i| (std::cmp::Reverse(counts[&colors[i]]), colors[i], i));
    let mut pairs: Vec<(usize, usize)> = (0..n / 2).map(|i| (order[i], order[i + n / 2])).collect();
    debug_assert!(pairs.iter().all(|&(a, b)| colors[a] != colors[b]));
    uncross_colored(pts, colors, &mut pairs);
    Ok(MinMatching { matching: Matching::from_pairs(&pairs), quality: Quality::PlaneUncertified })
}

/// Exact minimum-length colored matching over subsets of matched points;
/// the lowest unmatched point is paired first, ties go to the smaller
/// partner.
fn colored_dp(pts: &[Point], colors: &[usize]) -> Vec<(usize, usize)> {
    let n = pts.len();
    if n == 0 {
        return Vec::new();
    }
    let full: usize = (1 << n) - 1;
    let mut best = vec![f64::INFINITY; 1 << n];
    let mut choice = vec![u8::MAX; 1 << n];
    best[full] = 0.0;
    let dist: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| pts[i].dist(&pts[j])).collect()).collect();
    for mask in (0..full).rev() {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let i = (!mask).trailing_zeros() as usize;
        let mut b = f64::INFINITY;
        let mut c = u8::MAX;
        for j in (i + 1)..n {
            if mask & (1 << j) != 0 || colors[i] == colors[j] {
                continue;
            }
            let rest = best[mask | (1 << i) | (1 << j)];
            let v = dist[i][j] + rest;
            if v < b {
                b = v;
                c = j as u8;
            }
        }
        best[mask] = b;
        choice[mask] = c;
    }
    let mut pairs = Vec::with_capacity(n / 2);
    let mut mask = 0usize;
    while mask != full {
        let i = (!mask).trailing_zeros() as usize;
        let j = choice[mask] as usize;
        pairs.push((i, j));
        mask |= (1 << i) | (1 << j);
    }
    pairs
}

/// Replaces crossing pairs `ab, cd` by whichever reconnection (`ac, bd` or
/// `ad, bc`) is bichromatic; at least one always is, and both are shorter.
fn uncross_colored(pts: &[Point], colors: &[usize], pairs: &mut [(usize, usize)]) -> bool {
    let mut changed = false;
    'outer: loop {
        for i in 0..pairs.len() {
            for j in (i + 1)..pairs.len() {
                let (a, b) = pairs[i];
                let (c, d) = pairs[j];
                if segments_cross(pts, Edge::new(a, b), Edge::new(c, d)) {
                    let first = colors[a] != colors[c] && colors[b] != colors[d];
                    let len1 = pts[a].dist(&pts[c]) + pts[b].dist(&pts[d]);
                    let len2 = pts[a].dist(&pts[d]) + pts[b].dist(&pts[c]);
                    let second = colors[a] != colors[d] && colors[b] != colors[c];
                    if first && (!second || len1 <= len2) {
                        pairs[i] = (a, c);
                        pairs[j] = (b, d);
                    } else {
                        pairs[i] = (a, d);
                        pairs[j] = (b, c);
                    }
                    changed = true;
                    continue 'outer;
                }
            }
        }
        return changed;
    }
}
