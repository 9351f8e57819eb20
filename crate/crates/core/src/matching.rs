//! Matchings, packings, exact validation, plane Hamiltonian cycles and the
//! cycle structure of two matchings.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{orient, segments_cross, Edge, Orientation, Point};

/// A set of vertex-disjoint edges, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(mut edges: Vec<Edge>) -> Matching {
        edges.sort();
        edges.dedup();
        Matching { edges }
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Matching {
        Matching::new(pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Union with another edge set over disjoint vertices.
    pub fn merged(&self, other: &Matching) -> Matching {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Matching::new(edges)
    }

    /// `partner[v]` for each vertex `v < n`; fails unless the edges cover
    /// every vertex exactly once.
    pub fn partners(&self, n: usize) -> Result<Vec<usize>> {
        if self.edges.len() * 2 != n {
            return Err(Error::InvalidMatching(format!(
                "{} edges cannot cover {n} points",
                self.edges.len()
            )));
        }
        let mut partner = vec![usize::MAX; n];
        for e in &self.edges {
            for (v, w) in [(e.a(), e.b()), (e.b(), e.a())] {
                if v >= n {
                    return Err(Error::InvalidMatching(format!("edge {e} references point {v} >= {n}")));
                }
                if partner[v] != usize::MAX {
                    return Err(Error::InvalidMatching(format!("point {v} is matched twice")));
                }
                partner[v] = w;
            }
        }
        Ok(partner)
    }

    pub fn is_perfect(&self, n: usize) -> bool {
        self.partners(n).is_ok()
    }

    pub fn total_length(&self, pts: &[Point]) -> f64 {
        self.edges.iter().map(|e| e.length(pts)).sum()
    }

    /// First pair of crossing edges, if any.
    pub fn find_crossing(&self, pts: &[Point]) -> Option<(Edge, Edge)> {
        first_crossing(pts, &self.edges, &self.edges)
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn first_crossing(pts: &[Point], xs: &[Edge], ys: &[Edge]) -> Option<(Edge, Edge)> {
    let same = std::ptr::eq(xs, ys);
    for (i, &e) in xs.iter().enumerate() {
        let start = if same { i + 1 } else { 0 };
        for &f in &ys[start..] {
            if segments_cross(pts, e, f) {
                return Some((e, f));
            }
        }
    }
    None
}

/// An ordered list of matchings meant to be pairwise edge-disjoint.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Packing {
    matchings: Vec<Matching>,
}

impl Packing {
    pub fn new(matchings: Vec<Matching>) -> Packing {
        Packing { matchings }
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    pub fn len(&self) -> usize {
        self.matchings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matchings.is_empty()
    }

    pub fn push(&mut self, m: Matching) {
        self.matchings.push(m);
    }

    pub fn into_matchings(self) -> Vec<Matching> {
        self.matchings
    }

    pub fn distinct_edges(&self) -> usize {
        self.matchings.iter().flat_map(|m| m.edges().iter()).collect::<BTreeSet<_>>().len()
    }
}

/// True iff no two edges of `m` cross. `m` must be perfect on `pts`.
pub fn is_plane_matching(pts: &[Point], m: &Matching) -> Result<bool> {
    m.partners(pts.len())?;
    Ok(m.find_crossing(pts).is_none())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotPerfect { matching: usize, reason: String },
    InternalCrossing { matching: usize, edges: [Edge; 2] },
    SharedEdge { matchings: [usize; 2], edge: Edge },
    MutualCrossing { matchings: [usize; 2], edges: [Edge; 2] },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPerfect { matching, reason } => {
                write!(f, "matching {matching} is not perfect: {reason}")
            }
            Violation::InternalCrossing { matching, edges } => {
                write!(f, "matching {matching}: edges {} and {} cross", edges[0], edges[1])
            }
            Violation::SharedEdge { matchings, edge } => {
                write!(f, "matchings {} and {} share edge {edge}", matchings[0], matchings[1])
            }
            Violation::MutualCrossing { matchings, edges } => write!(
                f,
                "edge {} of matching {} crosses edge {} of matching {}",
                edges[0], matchings[0], edges[1], matchings[1]
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PackingReport {
    pub size: usize,
    pub violations: Vec<Violation>,
}

impl PackingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks perfectness, pairwise edge-disjointness and, on request,
/// planarity of each matching and crossings between different matchings.
/// Every crossing found is reported.
pub fn verify_packing(pts: &[Point], packing: &Packing, require_plane: bool, require_noncrossing: bool) -> PackingReport {
    let n = pts.len();
    let mut violations = Vec::new();
    let ms = packing.matchings();
    for (i, m) in ms.iter().enumerate() {
        if let Err(e) = m.partners(n) {
            violations.push(Violation::NotPerfect { matching: i, reason: e.to_string() });
        }
        if require_plane {
            let es = m.edges();
            for x in 0..es.len() {
                for y in (x + 1)..es.len() {
                    if es[x].b() < n && es[y].b() < n && segments_cross(pts, es[x], es[y]) {
                        violations.push(Violation::InternalCrossing { matching: i, edges: [es[x], es[y]] });
                    }
                }
            }
        }
    }
    let mut owner: HashMap<Edge, usize> = HashMap::new();
    for (i, m) in ms.iter().enumerate() {
        for &e in m.edges() {
            if let Some(&j) = owner.get(&e) {
                violations.push(Violation::SharedEdge { matchings: [j, i], edge: e });
            } else {
                owner.insert(e, i);
            }
        }
    }
    if require_noncrossing {
        for i in 0..ms.len() {
            for j in (i + 1)..ms.len() {
                for &e in ms[i].edges() {
                    for &f in ms[j].edges() {
                        if e.b() < n && f.b() < n && segments_cross(pts, e, f) {
                            violations.push(Violation::MutualCrossing { matchings: [i, j], edges: [e, f] });
                        }
                    }
                }
            }
        }
    }
    PackingReport { size: ms.len(), violations }
}

fn tour_length(pts: &[Point], tour: &[usize]) -> f64 {
    (0..tour.len()).map(|i| pts[tour[i]].dist(&pts[tour[(i + 1) % tour.len()]])).sum()
}

/// Repeatedly replaces a crossing pair of tour edges by the uncrossed
/// reconnection (2-opt) until the closed tour is plane. Returns the tour
/// length after every step, starting with the initial length; the sequence
/// is strictly decreasing.
pub fn uncross_tour(pts: &[Point], tour: &mut [usize]) -> Vec<f64> {
    let mut history = vec![tour_length(pts, tour)];
    let k = tour.len();
    if k < 4 {
        return history;
    }
    'outer: loop {
        for i in 0..k {
            for j in (i + 2)..k {
                if i == 0 && j == k - 1 {
                    continue;
                }
                let e = Edge::new(tour[i], tour[i + 1]);
                let f = Edge::new(tour[j], tour[(j + 1) % k]);
                if segments_cross(pts, e, f) {
                    tour[i + 1..=j].reverse();
                    history.push(tour_length(pts, tour));
                    continue 'outer;
                }
            }
        }
        break;
    }
    history
}

/// A plane Hamiltonian cycle through the points `idx` (global indices):
/// the radial order about the lowest point, cleaned by 2-opt uncrossing.
pub fn plane_hamiltonian_cycle(pts: &[Point], idx: &[usize]) -> Result<Vec<usize>> {
    if idx.len() < 3 {
        return Err(Error::Degenerate(format!("a cycle needs 3 points, got {}", idx.len())));
    }
    let pivot = *idx
        .iter()
        .min_by(|&&a, &&b| pts[a].y().cmp(pts[b].y()).then_with(|| pts[a].x().cmp(pts[b].x())))
        .expect("nonempty");
    let mut rest: Vec<usize> = idx.iter().copied().filter(|&i| i != pivot).collect();
    let p = &pts[pivot];
    rest.sort_by(|&a, &b| match orient(p, &pts[a], &pts[b]) {
        Orientation::CounterClockwise => std::cmp::Ordering::Less,
        Orientation::Clockwise => std::cmp::Ordering::Greater,
        Orientation::Collinear => pts[a].dist(p).total_cmp(&pts[b].dist(p)),
    });
    let mut tour = Vec::with_capacity(idx.len());
    tour.push(pivot);
    tour.extend(rest);
    uncross_tour(pts, &mut tour);
    Ok(tour)
}

/// Splits an even cycle into its two alternating perfect matchings: edges
/// at even positions and edges at odd positions.
pub fn split_cycle(cycle: &[usize]) -> Result<(Matching, Matching)> {
    let k = cycle.len();
    if k % 2 != 0 || k < 2 {
        return Err(Error::InvalidSize(format!("cannot split a cycle of length {k}")));
    }
    if k == 2 {
        let e = Matching::new(vec![Edge::new(cycle[0], cycle[1])]);
        return Ok((e.clone(), e));
    }
    let mut m1 = Vec::with_capacity(k / 2);
    let mut m2 = Vec::with_capacity(k / 2);
    for i in 0..k {
        let e = Edge::new(cycle[i], cycle[(i + 1) % k]);
        if i % 2 == 0 {
            m1.push(e);
        } else {
            m2.push(e);
        }
    }
    Ok((Matching::new(m1), Matching::new(m2)))
}

/// Alternating cycles of two edge-disjoint perfect matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<usize>>,
}

/// Decomposes `m1 + m2` (perfect on the same vertex set) into alternating
/// cycles. Each cycle starts at its smallest vertex with an `m1` edge.
pub fn union_cycles(m1: &Matching, m2: &Matching) -> Result<CycleDecomposition> {
    if let Some(e) = m1.edges().iter().find(|e| m2.contains(**e)) {
        return Err(Error::InvalidMatching(format!("matchings share edge {e}")));
    }
    let vertices = |m: &Matching| -> BTreeSet<usize> { m.edges().iter().flat_map(|e| [e.a(), e.b()]).collect() };
    let vs = vertices(m1);
    if vs != vertices(m2) || vs.len() != 2 * m1.len() || vs.len() != 2 * m2.len() {
        return Err(Error::InvalidMatching("matchings are not perfect on a common vertex set".into()));
    }
    let partner = |m: &Matching| -> HashMap<usize, usize> {
        m.edges().iter().flat_map(|e| [(e.a(), e.b()), (e.b(), e.a())]).collect()
    };
    let (p1, p2) = (partner(m1), partner(m2));
    let mut seen = BTreeSet::new();
    let mut cycles = Vec::new();
    for &start in &vs {
        if seen.contains(&start) {
            continue;
        }
        let mut cycle = vec![start];
        seen.insert(start);
        let mut v = start;
        let mut use_first = true;
        loop {
            let w = if use_first { p1[&v] } else { p2[&v] };
            use_first = !use_first;
            if w == start {
                break;
            }
            seen.insert(w);
            cycle.push(w);
            v = w;
        }
        cycles.push(cycle);
    }
    Ok(CycleDecomposition { cycles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointgen::{gen_convex, gen_random};

    fn square() -> Vec<Point> {
        [(0, 0), (1, 0), (1, 1), (0, 1)].iter().map(|&(x, y)| Point::from_ints(x, y)).collect()
    }

    #[test]
    fn plane_matching_examples() {
        let pts = square();
        assert!(is_plane_matching(&pts, &Matching::from_pairs(&[(0, 1), (2, 3)])).unwrap());
        assert!(!is_plane_matching(&pts, &Matching::from_pairs(&[(0, 2), (1, 3)])).unwrap());
        assert!(is_plane_matching(&pts, &Matching::from_pairs(&[(0, 1)])).is_err());
        assert!(is_plane_matching(&pts, &Matching::from_pairs(&[(0, 1), (1, 2)])).is_err());
    }

    #[test]
    fn verify_flags_shared_edges_and_crossings() {
        let pts = square();
        let a = Matching::from_pairs(&[(0, 1), (2, 3)]);
        let b = Matching::from_pairs(&[(0, 2), (1, 3)]);
        let dup = Packing::new(vec![a.clone(), a.clone()]);
        let rep = verify_packing(&pts, &dup, true, false);
        assert_eq!(rep.violations.len(), 2);
        assert!(matches!(rep.violations[0], Violation::SharedEdge { .. }));
        let rep = verify_packing(&pts, &Packing::new(vec![a.clone(), b.clone()]), true, false);
        assert_eq!(rep.violations, vec![Violation::InternalCrossing { matching: 1, edges: [Edge::new(0, 2), Edge::new(1, 3)] }]);
        let c = Matching::from_pairs(&[(0, 3), (1, 2)]);
        let rep = verify_packing(&pts, &Packing::new(vec![a, c]), true, true);
        assert!(rep.is_valid());
    }

    #[test]
    fn cycle_split_square() {
        let (m1, m2) = split_cycle(&[0, 1, 2, 3]).unwrap();
        assert_eq!(m1, Matching::from_pairs(&[(0, 1), (2, 3)]));
        assert_eq!(m2, Matching::from_pairs(&[(1, 2), (3, 0)]));
        assert!(split_cycle(&[0, 1, 2]).is_err());
    }

    #[test]
    fn hamiltonian_cycle_examples() {
        let s = gen_convex(8, 3).unwrap();
        let idx: Vec<usize> = (0..8).collect();
        let c = plane_hamiltonian_cycle(s.points(), &idx).unwrap();
        let start = c.iter().position(|&v| v == 0).unwrap();
        let rotated: Vec<usize> = (0..8).map(|i| c[(start + i) % 8]).collect();
        assert!(rotated == idx || rotated == [0, 7, 6, 5, 4, 3, 2, 1]);

        let mut pts = square();
        pts.push(Point::from_ratios(1, 2, 1, 3));
        let c = plane_hamiltonian_cycle(&pts, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(c.len(), 5);
        for i in 0..5 {
            for j in (i + 2)..5 {
                if (j + 1) % 5 == i {
                    continue;
                }
                assert!(!segments_cross(&pts, Edge::new(c[i], c[i + 1]), Edge::new(c[j], c[(j + 1) % 5])));
            }
        }

        let s = gen_random(12, 7).unwrap();
        let idx: Vec<usize> = (0..12).collect();
        let c = plane_hamiltonian_cycle(s.points(), &idx).unwrap();
        let (m1, m2) = split_cycle(&c).unwrap();
        assert!(verify_packing(s.points(), &Packing::new(vec![m1, m2]), true, true).is_valid());
    }

    #[test]
    fn uncrossing_strictly_shortens() {
        let s = gen_random(16, 11).unwrap();
        let mut tour: Vec<usize> = (0..16).collect();
        let lengths = uncross_tour(s.points(), &mut tour);
        assert!(lengths.len() > 1);
        assert!(lengths.windows(2).all(|w| w[1] < w[0]));
        let (m1, m2) = split_cycle(&tour).unwrap();
        assert!(verify_packing(s.points(), &Packing::new(vec![m1, m2]), true, true).is_valid());
    }

    #[test]
    fn union_cycles_examples() {
        let (m1, m2) = split_cycle(&[0, 1, 2, 3]).unwrap();
        let d = union_cycles(&m1, &m2).unwrap();
        assert_eq!(d.cycles, vec![vec![0, 1, 2, 3]]);
        assert!(union_cycles(&m1, &m1).is_err());
        let a = Matching::from_pairs(&[(0, 1), (2, 3), (4, 5), (6, 7)]);
        let b = Matching::from_pairs(&[(1, 2), (3, 0), (4, 7), (5, 6)]);
        let d = union_cycles(&a, &b).unwrap();
        assert_eq!(d.cycles.len(), 2);
        assert!(d.cycles.iter().all(|c| c.len() % 2 == 0 && c.len() >= 4));
    }
}
