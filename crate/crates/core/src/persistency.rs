//! Matching persistency: factorizations and kill sets of complete graphs,
//! an exact perfect-matching test for small graphs, and the constructions
//! that survive the removal of one or two plane matchings.

use std::collections::{BTreeSet, HashMap};

use crate::bichromatic::min_colored_matching;
use crate::error::{Error, Result};
use crate::geom::Edge;
use crate::matching::{is_plane_matching, verify_packing, Matching, Packing};
use crate::pointgen::PointSet;

/// Largest vertex count accepted by [`has_perfect_matching`].
pub const PERFECT_MATCHING_LIMIT: usize = 64;

/// A simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractGraph {
    n: usize,
    edges: BTreeSet<Edge>,
}

impl AbstractGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> AbstractGraph {
        AbstractGraph { n, edges: edges.into_iter().filter(|e| e.b() < n).collect() }
    }

    pub fn complete(n: usize) -> AbstractGraph {
        AbstractGraph::new(n, (0..n).flat_map(|a| ((a + 1)..n).map(move |b| Edge::new(a, b))))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn remove_matching(&mut self, m: &Matching) {
        for e in m.edges() {
            self.edges.remove(e);
        }
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while p[r] != r {
                r = p[r];
            }
            let mut v = v;
            while p[v] != r {
                let next = p[v];
                p[v] = r;
                v = next;
            }
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.a()), find(&mut parent, e.b()));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for v in 0..self.n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    fn neighbor_masks(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for e in &self.edges {
            adj[e.a()] |= 1 << e.b();
            adj[e.b()] |= 1 << e.a();
        }
        adj
    }
}

fn require_even(n: usize, min: usize) -> Result<()> {
    if n % 2 != 0 || n < min {
        return Err(Error::InvalidSize(format!("need an even n >= {min}, got {n}")));
    }
    Ok(())
}

/// The `n - 1` perfect matchings of `K_n` given by the regular wheel
/// coloring: matching `i` holds the spoke `(i, n-1)` and the chords
/// `(i - j, i + j)` modulo `n - 1`.
pub fn one_factorize_kn(n: usize) -> Result<Vec<Matching>> {
    require_even(n, 2)?;
    let k = n - 1;
    Ok((0..k)
        .map(|i| {
            let mut edges = vec![Edge::new(i, k)];
            edges.extend((1..n / 2).map(|j| Edge::new((i + k - j) % k, (i + j) % k)));
            Matching::new(edges)
        })
        .collect())
}

/// For `n = 2 mod 4`: `n/2` perfect matchings partitioning the edges of the
/// complete bipartite graph between `0..n/2` and `n/2..n`. Removing them from
/// `K_n` leaves two odd cliques, which have no perfect matching.
pub fn bipartite_kill_set(n: usize) -> Result<Vec<Matching>> {
    if n % 4 != 2 {
        return Err(Error::InvalidSize(format!("need n = 2 mod 4, got {n}")));
    }
    let h = n / 2;
    Ok((0..h).map(|s| Matching::new((0..h).map(|a| Edge::new(a, h + (a + s) % h)).collect())).collect())
}

/// Exact perfect-matching test by memoized search over the set of still
/// unmatched vertices. Intended for small graphs; panics above
/// [`PERFECT_MATCHING_LIMIT`] vertices.
pub fn has_perfect_matching(g: &AbstractGraph) -> bool {
    assert!(g.n <= PERFECT_MATCHING_LIMIT, "perfect matching search is limited to {PERFECT_MATCHING_LIMIT} vertices");
    if g.n % 2 != 0 {
        return false;
    }
    let adj = g.neighbor_masks();
    let full: u64 = if g.n == 64 { u64::MAX } else { (1u64 << g.n) - 1 };
    fn rec(free: u64, adj: &[u64], memo: &mut HashMap<u64, bool>) -> bool {
        if free == 0 {
            return true;
        }
        if let Some(&v) = memo.get(&free) {
            return v;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1u64 << v);
        let mut cand = adj[v] & rest;
        let mut ok = false;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if rec(rest & !(1u64 << w), adj, memo) {
                ok = true;
                break;
            }
        }
        memo.insert(free, ok);
        ok
    }
    rec(full, &adj, &mut HashMap::new())
}

fn require_plane_perfect(set: &PointSet, m: &Matching, what: &str) -> Result<()> {
    match is_plane_matching(set.points(), m) {
        Ok(true) => Ok(()),
        Ok(false) => Err(Error::InvalidMatching(format!("{what} is not plane"))),
        Err(e) => Err(Error::InvalidMatching(format!("{what}: {e}"))),
    }
}

/// A plane perfect matching edge-disjoint from the plane perfect matching
/// `m`: both endpoints of each edge of `m` get the same color and a plane
/// colored matching is computed.
pub fn survive_plane_matching_removal(set: &PointSet, m: &Matching) -> Result<Matching> {
    require_plane_perfect(set, m, "input matching")?;
    let mut colors = vec![0usize; set.len()];
    for (c, e) in m.edges().iter().enumerate() {
        colors[e.a()] = c;
        colors[e.b()] = c;
    }
    let out = min_colored_matching(set.points(), &colors)?.matching;
    let report = verify_packing(set.points(), &Packing::new(vec![m.clone(), out.clone()]), true, false);
    if let Some(v) = report.violations.first() {
        return Err(Error::Internal(format!("surviving matching is invalid: {v}")));
    }
    Ok(out)
}

/// Third plane perfect matching for the nested-triangle family, avoiding the
/// edges of two edge-disjoint plane perfect matchings `m1` and `m2`.
///
/// One edge outside `G = m1 + m2` is taken from every triangle; triangles
/// are paired outermost first and each pair is completed locally: the free
/// outer vertex `x` is joined to the free inner vertex `y`, and if `xy` is in
/// `G` the inner edge is rotated (at most twice) until a free pair avoiding
/// `G` exists. `G` has no odd cycles, which guarantees each step.
pub fn nested_triangle_third_matching(set: &PointSet, m1: &Matching, m2: &Matching) -> Result<Matching> {
    let triangles = set
        .meta
        .triangles
        .as_ref()
        .ok_or_else(|| Error::InvalidMatching("point set carries no triangle metadata".into()))?;
    if triangles.len() % 2 != 0 || triangles.len() * 3 != set.len() {
        return Err(Error::InvalidMatching("triangle metadata does not cover the points in pairs".into()));
    }
    require_plane_perfect(set, m1, "first matching")?;
    require_plane_perfect(set, m2, "second matching")?;
    if let Some(e) = m1.edges().iter().find(|e| m2.contains(**e)) {
        return Err(Error::InvalidMatching(format!("input matchings share edge {e}")));
    }
    let in_g = |e: Edge| m1.contains(e) || m2.contains(e);

    // One edge outside G per triangle, plus the triangle vertex it leaves out.
    let mut picks: Vec<(Edge, usize)> = Vec::with_capacity(triangles.len());
    for t in triangles {
        let [a, b, c] = *t;
        let options = [(Edge::new(a, b), c), (Edge::new(b, c), a), (Edge::new(c, a), b)];
        let pick = options
            .into_iter()
            .find(|&(e, _)| !in_g(e))
            .ok_or_else(|| Error::Internal(format!("triangle {t:?} lies entirely in the union (odd cycle)")))?;
        picks.push(pick);
    }

    let mut edges = Vec::with_capacity(set.len() / 2);
    for pair in picks.chunks(2) {
        let (outer, x) = pair[0];
        let (inner, y) = pair[1];
        edges.push(outer);
        if !in_g(Edge::new(x, y)) {
            edges.push(inner);
            edges.push(Edge::new(x, y));
            continue;
        }
        // y has degree two in G and xy uses one of its edges, so one of the
        // triangle edges at y is free.
        let (u, w) = (inner.a(), inner.b());
        let (a2, c2) = if !in_g(Edge::new(y, u)) {
            (u, w)
        } else if !in_g(Edge::new(y, w)) {
            (w, u)
        } else {
            return Err(Error::Internal("inner vertex has degree three in the union".into()));
        };
        if !in_g(Edge::new(x, c2)) {
            edges.push(Edge::new(y, a2));
            edges.push(Edge::new(x, c2));
            continue;
        }
        // xy and x c2 are both in G; y c2 would close a triangle.
        if in_g(Edge::new(y, c2)) {
            return Err(Error::Internal("union contains a triangle".into()));
        }
        if in_g(Edge::new(x, a2)) {
            return Err(Error::Internal("outer vertex has degree three in the union".into()));
        }
        edges.push(Edge::new(y, c2));
        edges.push(Edge::new(x, a2));
    }
    let m3 = Matching::new(edges);
    let report = verify_packing(set.points(), &Packing::new(vec![m1.clone(), m2.clone(), m3.clone()]), true, false);
    if let Some(v) = report.violations.first() {
        return Err(Error::Internal(format!("third matching is invalid: {v}")));
    }
    Ok(m3)
}
