//! Constructions of packings of plane perfect matchings: convex position,
//! regular wheels, three matchings for any set, the binary-tree packing with
//! at least `ceil(log2 n) - 2` matchings, and the power-of-two recursion.

use serde::Serialize;

use crate::bichromatic::{cut_rb_matching, min_rb_matching, tangent_rb_matching, Quality};
use crate::error::{Error, Result};
use crate::geom::{convex_hull, crossing_tangents, line_intersection, orient, sort_clockwise_in_wedge, Edge, Orientation, Point, Shear};
use crate::matching::{plane_hamiltonian_cycle, split_cycle, verify_packing, Matching, Packing};

fn require_even(n: usize, min: usize, what: &str) -> Result<()> {
    if n % 2 != 0 || n < min {
        return Err(Error::InvalidSize(format!("{what} needs an even number of at least {min} points, got {n}")));
    }
    Ok(())
}

fn ensure_valid(pts: &[Point], packing: &Packing, what: &str) -> Result<()> {
    let report = verify_packing(pts, packing, true, false);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::Internal(format!("{what} produced an invalid packing: {v}"))),
    }
}

/// Matchings `M_i = { o[i+j-1] o[n+i-j] : j = 1..n/2 }` (indices mod n) for
/// points listed in convex radial order `o`.
pub fn convex_packing_for_order(order: &[usize]) -> Packing {
    let n = order.len();
    let at = |k: isize| order[k.rem_euclid(n as isize) as usize];
    let half = (n / 2) as isize;
    let matchings = (0..half)
        .map(|i| Matching::new((1..=half).map(|j| Edge::new(at(i + j - 1), at(n as isize + i - j))).collect()))
        .collect();
    Packing::new(matchings)
}

fn is_cyclic_order(hull: &[usize], order: &[usize]) -> bool {
    let k = order.len();
    if hull.len() != k {
        return false;
    }
    let Some(s) = hull.iter().position(|&v| v == order[0]) else {
        return false;
    };
    let forward = (0..k).all(|i| hull[(s + i) % k] == order[i]);
    let backward = (0..k).all(|i| hull[(s + k - i) % k] == order[i]);
    forward || backward
}

/// `n/2` edge-disjoint plane matchings for points in convex position listed
/// in radial order (either direction).
pub fn pack_convex(pts: &[Point]) -> Result<Packing> {
    let n = pts.len();
    require_even(n, 4, "convex packing")?;
    let hull = convex_hull(pts)?;
    let order: Vec<usize> = (0..n).collect();
    if !is_cyclic_order(&hull, &order) {
        return Err(Error::Layout("points are not in convex position in radial index order".into()));
    }
    let packing = convex_packing_for_order(&order);
    ensure_valid(pts, &packing, "convex packing")?;
    Ok(packing)
}

/// Wheel matchings for circle points listed radially in `ring` around
/// `center`: `M_i = R_i + L_i + {ring[i] center}` for `i = 0..n/2-2`.
pub fn wheel_packing_for_order(ring: &[usize], center: usize) -> Packing {
    let k = ring.len() as isize;
    let n = ring.len() + 1;
    let at = |t: isize| ring[t.rem_euclid(k) as usize];
    let up = n.saturating_sub(2).div_ceil(4) as isize;
    let down = ((n.saturating_sub(2)) / 4) as isize;
    let count = (n / 2).saturating_sub(1) as isize;
    let matchings = (0..count)
        .map(|i| {
            let mut edges = vec![Edge::new(at(i), center)];
            edges.extend((1..=up).map(|j| Edge::new(at(i + j), at(i + 2 * up - j + 1))));
            edges.extend((1..=down).map(|j| Edge::new(at(i - j), at(i - 2 * down + j - 1))));
            Matching::new(edges)
        })
        .collect();
    Packing::new(matchings)
}

/// Indices sorted counterclockwise by angle around `center`, starting from
/// the positive x direction.
fn angular_sort(pts: &[Point], center: &Point, idx: &mut [usize]) {
    let upper = |p: &Point| p.y() > center.y() || (p.y() == center.y() && p.x() > center.x());
    idx.sort_by(|&a, &b| {
        let (pa, pb) = (&pts[a], &pts[b]);
        upper(pb).cmp(&upper(pa)).then_with(|| match orient(center, pa, pb) {
            Orientation::CounterClockwise => std::cmp::Ordering::Less,
            Orientation::Clockwise => std::cmp::Ordering::Greater,
            Orientation::Collinear => std::cmp::Ordering::Equal,
        })
    });
}

/// Checks that `ring` is the angular order of its points around `center`
/// (either direction) and that `center` is interior to their hull.
fn is_radial_order(pts: &[Point], ring: &[usize], center: usize) -> bool {
    let c = &pts[center];
    let k = ring.len();
    let turn = orient(c, &pts[ring[0]], &pts[ring[1 % k]]);
    if turn == Orientation::Collinear {
        return false;
    }
    if (0..k).any(|i| orient(c, &pts[ring[i]], &pts[ring[(i + 1) % k]]) != turn) {
        return false;
    }
    let mut sorted = ring.to_vec();
    angular_sort(pts, c, &mut sorted);
    is_cyclic_order(&sorted, ring)
}

/// `n/2 - 1` edge-disjoint plane matchings for the regular wheel layout:
/// indices `0..n-1` radially ordered around the center `n-1`.
pub fn pack_wheel(pts: &[Point]) -> Result<Packing> {
    let n = pts.len();
    require_even(n, 6, "wheel packing")?;
    let ring: Vec<usize> = (0..n - 1).collect();
    if !is_radial_order(pts, &ring, n - 1) {
        return Err(Error::Layout("points 0..n-2 are not radially ordered around point n-1".into()));
    }
    let packing = wheel_packing_for_order(&ring, n - 1);
    let report = verify_packing(pts, &packing, true, false);
    if let Some(v) = report.violations.first() {
        return Err(Error::Layout(format!("wheel formula does not fit this layout: {v}")));
    }
    Ok(packing)
}

/// Which branch of the three-matching construction ran.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThreeCase {
    /// `n = 4k`: plane cycles on both halves plus a bisection matching.
    Even,
    /// `n = 4k + 2`, the crossing tangents meet between the hulls.
    TangentsCross,
    /// `n = 4k + 2`, the crossing tangents share a red endpoint.
    SharedRed,
    /// `n = 4k + 2`, the crossing tangents share a blue endpoint (mirrored).
    SharedBlue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeReport {
    pub case: ThreeCase,
    /// The two crossing-tangent edges (odd case only).
    pub tangent_edges: Option<[Edge; 2]>,
    /// In the case of crossing tangents: the matchings (0 or 1) that
    /// received `r1 b1` and `rm bm`.
    pub closing_parity: Option<(usize, usize)>,
    /// Whether the iterated tangent matching had to be taken from below
    /// because the upper version reused a tangent edge.
    pub used_lower_tangents: bool,
}

/// Three edge-disjoint plane matchings for any `n >= 8` points in general
/// position.
pub fn pack_three(pts: &[Point]) -> Result<Packing> {
    pack_three_with_report(pts).map(|(p, _)| p)
}

pub fn pack_three_with_report(pts: &[Point]) -> Result<(Packing, ThreeReport)> {
    require_even(pts.len(), 8, "three-matching packing")?;
    let idx: Vec<usize> = (0..pts.len()).collect();
    let (ms, report) = pack_three_on(pts, &idx)?;
    let packing = Packing::new(ms.to_vec());
    ensure_valid(pts, &packing, "three-matching packing")?;
    Ok((packing, report))
}

/// Three-matching construction on the subset `idx` (global indices).
pub fn pack_three_on(pts: &[Point], idx: &[usize]) -> Result<([Matching; 3], ThreeReport)> {
    let n = idx.len();
    require_even(n, 8, "three-matching packing")?;
    let shear = Shear::for_points(pts, idx)?;
    let sorted = shear.sorted(pts, idx)?;
    let (red, blue) = sorted.split_at(n / 2);
    let (red, blue) = (red.to_vec(), blue.to_vec());

    if n % 4 == 0 {
        let (r1, r2) = split_cycle(&plane_hamiltonian_cycle(pts, &red)?)?;
        let (b1, b2) = split_cycle(&plane_hamiltonian_cycle(pts, &blue)?)?;
        let m3 = cut_rb_matching(pts, &red, &blue)?;
        let report = ThreeReport { case: ThreeCase::Even, tangent_edges: None, closing_parity: None, used_lower_tangents: false };
        return Ok(([r1.merged(&b1), r2.merged(&b2), m3], report));
    }

    let (t1, t2) = crossing_tangents(pts, &red, &blue)?;
    let tangent_edges = [t1.edge(), t2.edge()];
    let (case, m1, m2, parity) = if t1.red != t2.red && t1.blue != t2.blue {
        let c = line_intersection(&pts[t1.red], &pts[t1.blue], &pts[t2.red], &pts[t2.blue])
            .ok_or_else(|| Error::Internal("crossing tangents are parallel".into()))?;
        let mut rs = red.clone();
        let mut bs = blue.clone();
        sort_clockwise_in_wedge(pts, &c, &mut rs);
        sort_clockwise_in_wedge(pts, &c, &mut bs);
        let m = rs.len();
        let first = Edge::new(rs[0], bs[0]);
        let last = Edge::new(rs[m - 1], bs[m - 1]);
        let expected = [first, last];
        if !(expected.contains(&tangent_edges[0]) && expected.contains(&tangent_edges[1])) {
            return Err(Error::Internal("angular order does not start and end on the tangents".into()));
        }
        // r1 .. rm, bm .. b1, closed by b1 r1.
        let mut cycle = rs.clone();
        cycle.extend(bs.iter().rev());
        let (m1, m2) = split_cycle(&cycle)?;
        let side = |e: Edge| if m1.contains(e) { 0 } else { 1 };
        let parity = (side(first), side(last));
        if parity.0 == parity.1 {
            return Err(Error::Internal("closing edges landed in the same matching".into()));
        }
        (ThreeCase::TangentsCross, m1, m2, Some(parity))
    } else {
        // Shared endpoint `s`; `own` is its class, `other` the opposite one.
        let (case, s, own, other) = if t1.red == t2.red {
            (ThreeCase::SharedRed, t1.red, &red, &blue)
        } else {
            (ThreeCase::SharedBlue, t1.blue, &blue, &red)
        };
        let rest: Vec<usize> = own.iter().copied().filter(|&v| v != s).collect();
        let (a1, a2) = split_cycle(&plane_hamiltonian_cycle(pts, &rest)?)?;
        let mut fan = other.clone();
        sort_clockwise_in_wedge(pts, &pts[s], &mut fan);
        let ends = [fan[0], fan[fan.len() - 1]];
        let tangent_ends = if case == ThreeCase::SharedRed { [t1.blue, t2.blue] } else { [t1.red, t2.red] };
        if !(ends.contains(&tangent_ends[0]) && ends.contains(&tangent_ends[1])) {
            return Err(Error::Internal("fan order does not end on the tangents".into()));
        }
        let mut cycle = vec![s];
        cycle.extend(fan);
        let (b1, b2) = split_cycle(&cycle)?;
        (case, a1.merged(&b1), a2.merged(&b2), None)
    };

    let mut m3 = tangent_rb_matching(pts, &red, &blue)?;
    let mut used_lower = false;
    if tangent_edges.iter().any(|&e| m3.contains(e)) {
        // Iterating from below is the mirror image of the same procedure.
        m3 = tangent_rb_matching(pts, &blue, &red)?;
        used_lower = true;
        if tangent_edges.iter().any(|&e| m3.contains(e)) {
            return Err(Error::Internal("tangent matching reuses a crossing-tangent edge".into()));
        }
    }
    let report = ThreeReport { case, tangent_edges: Some(tangent_edges), closing_parity: parity, used_lower_tangents: used_lower };
    Ok(([m1, m2, m3], report))
}

/// Position of a node relative to its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Root,
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PackNode {
    pub value: usize,
    pub side: Side,
    pub level: usize,
    pub parent: Option<usize>,
    pub left: Option<usize>,
    pub right: Option<usize>,
    /// First sorted position of the points assigned to this subtree.
    pub start: usize,
}

impl PackNode {
    pub fn is_leaf(&self) -> bool {
        self.left.is_none()
    }

    /// Sorted positions covered by this subtree.
    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.value
    }
}

/// Binary tree whose root stores `n` and whose leaves store 2, splitting
/// values not divisible by four unevenly towards the outside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PackTree {
    nodes: Vec<PackNode>,
}

impl PackTree {
    pub fn nodes(&self) -> &[PackNode] {
        &self.nodes
    }

    pub fn root(&self) -> &PackNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: usize) -> &PackNode {
        &self.nodes[id]
    }

    pub fn height(&self) -> usize {
        self.nodes.iter().map(|u| u.level).max().unwrap_or(0)
    }

    /// Number of edges on a shortest root-to-leaf path.
    pub fn min_leaf_depth(&self) -> usize {
        self.nodes.iter().filter(|u| u.is_leaf()).map(|u| u.level).min().unwrap_or(0)
    }

    /// Node ids per level, left to right.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        let mut levels = vec![Vec::new(); self.height() + 1];
        let mut stack = vec![0usize];
        // Depth-first, right child pushed first, yields left-to-right order.
        while let Some(id) = stack.pop() {
            let u = &self.nodes[id];
            levels[u.level].push(id);
            if let (Some(l), Some(r)) = (u.left, u.right) {
                stack.push(r);
                stack.push(l);
            }
        }
        levels
    }

    /// Leaves left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            let u = &self.nodes[id];
            match (u.left, u.right) {
                (Some(l), Some(r)) => {
                    stack.push(r);
                    stack.push(l);
                }
                _ => out.push(id),
            }
        }
        out
    }

    /// Structural invariants: stored values, child differences, per-level
    /// spread of at most 2, leaves only on the last two levels, and leaf
    /// ranges tiling `0..n` in order.
    pub fn check_invariants(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Internal(msg));
        for (id, u) in self.nodes.iter().enumerate() {
            if u.value % 2 != 0 || u.value < 2 {
                return bad(format!("node {id} stores {}", u.value));
            }
            match (u.left, u.right) {
                (Some(l), Some(r)) => {
                    let (a, b) = (self.nodes[l].value, self.nodes[r].value);
                    if a + b != u.value {
                        return bad(format!("children of node {id} do not sum to its value"));
                    }
                    if u.value % 4 == 0 && a != b {
                        return bad(format!("node {id}: divisible value split unevenly"));
                    }
                    if u.value % 4 != 0 && a.abs_diff(b) != 2 {
                        return bad(format!("node {id}: children differ by {}", a.abs_diff(b)));
                    }
                    if self.nodes[l].start != u.start || self.nodes[r].start != u.start + a {
                        return bad(format!("node {id}: child ranges misaligned"));
                    }
                }
                (None, None) => {
                    if u.value != 2 {
                        return bad(format!("leaf {id} stores {}", u.value));
                    }
                }
                _ => return bad(format!("node {id} has a single child")),
            }
        }
        let levels = self.levels();
        for (i, level) in levels.iter().enumerate() {
            let vals: Vec<usize> = level.iter().map(|&id| self.nodes[id].value).collect();
            let spread = vals.iter().max().unwrap() - vals.iter().min().unwrap();
            if spread > 2 {
                return bad(format!("level {i} values spread by {spread}"));
            }
        }
        let min_leaf = self.min_leaf_depth();
        if self.nodes.iter().any(|u| u.is_leaf() && u.level > min_leaf + 1) {
            return bad("leaves on more than two levels".into());
        }
        let mut next = 0;
        for id in self.leaves() {
            if self.nodes[id].start != next {
                return bad("leaf ranges do not tile the points".into());
            }
            next += 2;
        }
        if next != self.root().value {
            return bad("leaves do not cover the root value".into());
        }
        Ok(())
    }
}

pub fn build_pack_tree(n: usize) -> Result<PackTree> {
    require_even(n, 2, "pack tree")?;
    let mut nodes = vec![PackNode { value: n, side: Side::Root, level: 0, parent: None, left: None, right: None, start: 0 }];
    let mut id = 0;
    while id < nodes.len() {
        let (m, side, level, start) = (nodes[id].value, nodes[id].side, nodes[id].level, nodes[id].start);
        if m >= 4 {
            let q = 2 * (m / 4);
            let (a, b) = if m % 4 == 0 {
                (m / 2, m / 2)
            } else if side == Side::Right {
                (m - q, q)
            } else {
                (q, m - q)
            };
            let l = nodes.len();
            nodes.push(PackNode { value: a, side: Side::Left, level: level + 1, parent: Some(id), left: None, right: None, start });
            nodes.push(PackNode { value: b, side: Side::Right, level: level + 1, parent: Some(id), left: None, right: None, start: start + a });
            nodes[id].left = Some(l);
            nodes[id].right = Some(l + 1);
        }
        id += 1;
    }
    Ok(PackTree { nodes })
}

/// Result of the binary-tree packing, with the data needed to audit it.
#[derive(Clone, Debug)]
pub struct LognPacking {
    pub packing: Packing,
    pub tree: PackTree,
    /// Point indices in increasing sweep order; leaf `k` holds positions
    /// `2k, 2k+1`.
    pub order: Vec<usize>,
    /// Whether any node matching fell outside the certified-minimal regime.
    pub all_certified: bool,
}

/// At least `ceil(log2 n) - 2` edge-disjoint plane matchings, one per tree
/// level above the shallowest leaf.
pub fn pack_logn(pts: &[Point]) -> Result<Packing> {
    pack_logn_detailed(pts).map(|r| r.packing)
}

pub fn pack_logn_detailed(pts: &[Point]) -> Result<LognPacking> {
    let n = pts.len();
    require_even(n, 4, "tree packing")?;
    let idx: Vec<usize> = (0..n).collect();
    let shear = Shear::for_points(pts, &idx)?;
    let order = shear.sorted(pts, &idx)?;
    let tree = build_pack_tree(n)?;
    let levels = tree.levels();
    let depth = tree.min_leaf_depth();
    let mut matchings = Vec::with_capacity(depth);
    let mut all_certified = true;
    for level in levels.iter().take(depth) {
        let mut edges = Vec::with_capacity(n / 2);
        for &id in level {
            let u = tree.node(id);
            let (l, r) = (tree.node(u.left.expect("internal")), tree.node(u.right.expect("internal")));
            let mut lu: Vec<usize> = order[l.range()].to_vec();
            let mut ru: Vec<usize> = order[r.range()].to_vec();
            if u.value % 4 != 0 {
                if u.side == Side::Right {
                    let ab: Vec<usize> = lu.drain(..2).collect();
                    edges.push(Edge::new(ab[0], ab[1]));
                } else {
                    let ab: Vec<usize> = ru.drain(ru.len() - 2..).collect();
                    edges.push(Edge::new(ab[0], ab[1]));
                }
            }
            let mm = min_rb_matching(pts, &lu, &ru)?;
            all_certified &= mm.quality == Quality::Exact;
            edges.extend_from_slice(mm.matching.edges());
        }
        matchings.push(Matching::new(edges));
    }
    let packing = Packing::new(matchings);
    ensure_valid(pts, &packing, "tree packing")?;
    Ok(LognPacking { packing, tree, order, all_certified })
}

/// `log2 n` edge-disjoint plane matchings when `n` is a power of two:
/// matchings of the two halves are paired level by level and a bisection
/// matching across the halves is added.
pub fn pack_power_of_two(pts: &[Point]) -> Result<Packing> {
    let n = pts.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidSize(format!("{n} is not a power of two")));
    }
    let idx: Vec<usize> = (0..n).collect();
    let order = Shear::for_points(pts, &idx)?.sorted(pts, &idx)?;
    let packing = Packing::new(halving(pts, &order, &|_, sub| Ok(vec![Matching::new(vec![Edge::new(sub[0], sub[1])])]), 2)?);
    ensure_valid(pts, &packing, "power-of-two packing")?;
    Ok(packing)
}

type BaseCase<'a> = dyn Fn(&[Point], &[usize]) -> Result<Vec<Matching>> + 'a;

/// Recursive halving over a sweep-sorted subset: blocks of `base` points are
/// handled by `base_case`; above that, the two halves' matchings are paired
/// and one bisection matching across the split is added.
fn halving(pts: &[Point], order: &[usize], base_case: &BaseCase<'_>, base: usize) -> Result<Vec<Matching>> {
    if order.len() <= base {
        return base_case(pts, order);
    }
    let (left, right) = order.split_at(order.len() / 2);
    let a = halving(pts, left, base_case, base)?;
    let b = halving(pts, right, base_case, base)?;
    let mut out: Vec<Matching> = a.iter().zip(b.iter()).map(|(x, y)| x.merged(y)).collect();
    out.push(cut_rb_matching(pts, left, right)?);
    Ok(out)
}

/// For `n = 2^i m` with `m >= 4`: blocks of `2m` points get three matchings
/// each, and `i - 1` halving levels add one bisection matching each, for
/// `i + 2` in total. Uses the largest such `i`.
pub fn pack_blocks_of_three(pts: &[Point]) -> Result<Packing> {
    let n = pts.len();
    let Some((i, m)) = block_split(n) else {
        return Err(Error::InvalidSize(format!("{n} is not of the form 2^i m with i >= 1, m >= 4")));
    };
    let idx: Vec<usize> = (0..n).collect();
    let order = Shear::for_points(pts, &idx)?.sorted(pts, &idx)?;
    let base = |p: &[Point], sub: &[usize]| -> Result<Vec<Matching>> { Ok(pack_three_on(p, sub)?.0.to_vec()) };
    let packing = Packing::new(halving(pts, &order, &base, 2 * m)?);
    debug_assert_eq!(packing.len(), i + 2);
    ensure_valid(pts, &packing, "block packing")?;
    Ok(packing)
}

/// Largest `i >= 1` with `n = 2^i m`, `m >= 4` integral.
pub fn block_split(n: usize) -> Option<(usize, usize)> {
    let mut best = None;
    let mut i = 1;
    while n % (1 << i) == 0 && n >> i >= 4 {
        best = Some((i, n >> i));
        i += 1;
    }
    best
}

/// Which construction `pack_auto` picked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    SingleEdge,
    Convex,
    Wheel,
    PowerOfTwo,
    Blocks,
    Three,
    Logn,
    Cycle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::SingleEdge => "single-edge",
            Method::Convex => "convex",
            Method::Wheel => "wheel",
            Method::PowerOfTwo => "pow2",
            Method::Blocks => "blocks",
            Method::Three => "three",
            Method::Logn => "logn",
            Method::Cycle => "cycle",
        }
    }
}

/// Bisection-based constructions cost cubic time per cut; above this size
/// `pack_auto` skips them.
pub const AUTO_CUT_LIMIT: usize = 512;

/// Runs every construction whose preconditions hold and keeps the largest
/// packing (earliest method on ties).
pub fn pack_auto(pts: &[Point]) -> Result<(Packing, Method)> {
    let n = pts.len();
    require_even(n, 2, "packing")?;
    if n == 2 {
        return Ok((Packing::new(vec![Matching::new(vec![Edge::new(0, 1)])]), Method::SingleEdge));
    }
    let mut best: Option<(Packing, Method)> = None;
    let mut offer = |p: Result<Packing>, m: Method| {
        if let Ok(p) = p {
            if best.as_ref().is_none_or(|(b, _)| p.len() > b.len()) {
                best = Some((p, m));
            }
        }
    };
    let hull = convex_hull(pts)?;
    if hull.len() == n {
        offer(Ok(convex_packing_for_order(&hull)).and_then(|p| ensure_valid(pts, &p, "convex").map(|_| p)), Method::Convex);
    }
    if hull.len() == n - 1 && n >= 6 {
        let center = (0..n).find(|v| !hull.contains(v)).expect("one interior point");
        let p = wheel_packing_for_order(&hull, center);
        if verify_packing(pts, &p, true, false).is_valid() {
            offer(Ok(p), Method::Wheel);
        }
    }
    if n.is_power_of_two() && n <= AUTO_CUT_LIMIT {
        offer(pack_power_of_two(pts), Method::PowerOfTwo);
    }
    if block_split(n).is_some() && n <= AUTO_CUT_LIMIT {
        offer(pack_blocks_of_three(pts), Method::Blocks);
    }
    if n >= 8 && n <= AUTO_CUT_LIMIT {
        offer(pack_three(pts), Method::Three);
    }
    offer(pack_logn(pts), Method::Logn);
    let idx: Vec<usize> = (0..n).collect();
    offer(
        plane_hamiltonian_cycle(pts, &idx).and_then(|c| split_cycle(&c)).map(|(a, b)| Packing::new(vec![a, b])),
        Method::Cycle,
    );
    best.ok_or_else(|| Error::Internal("no construction applies".into()))
}
