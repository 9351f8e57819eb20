//! Exhaustive search over plane perfect matchings at small sizes: counting,
//! maximum packings, maximum pairwise non-crossing packings and the exact
//! plane matching persistency.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{segments_cross, Edge, Point};
use crate::matching::{Matching, Packing};

/// Hard limit of the enumeration (edge sets are 128-bit masks).
pub const ENUMERATION_LIMIT: usize = 16;

/// Environment variable holding a node budget for the oracles.
pub const BUDGET_ENV: &str = "MATCHPACK_BUDGET";

/// Size caps and node budget of the exhaustive searches. Without a budget
/// the default caps apply; a budget unlocks the extended caps and stops the
/// search after that many nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_enumerate: usize,
    pub max_packing: usize,
    pub max_pmp: usize,
    pub budget: Option<u64>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_enumerate: ENUMERATION_LIMIT, max_packing: 12, max_pmp: 10, budget: None }
    }
}

impl OracleConfig {
    pub fn with_budget(budget: u64) -> OracleConfig {
        OracleConfig { max_enumerate: ENUMERATION_LIMIT, max_packing: 14, max_pmp: 12, budget: Some(budget) }
    }

    /// Default caps, or the extended ones if `MATCHPACK_BUDGET` holds a node
    /// count.
    pub fn from_env() -> Result<OracleConfig> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse::<u64>()
                .map(OracleConfig::with_budget)
                .map_err(|_| Error::Parse(format!("{BUDGET_ENV} must be a node count, got {v:?}"))),
            Err(_) => Ok(OracleConfig::default()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    Count,
    MaxPacking,
    MaxNoncrossing,
    Pmp,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub kind: OracleKind,
    pub value: u64,
    /// Attaining packing (count reports carry none).
    pub witness: Option<Packing>,
    pub nodes_explored: u64,
    #[serde(serialize_with = "ser_millis", rename = "elapsed_ms")]
    pub elapsed: Duration,
}

fn ser_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1000.0)
}

struct Budget {
    nodes: u64,
    limit: Option<u64>,
}

impl Budget {
    fn new(limit: Option<u64>) -> Budget {
        Budget { nodes: 0, limit }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        match self.limit {
            Some(l) if self.nodes > l => Err(Error::BudgetExhausted(l)),
            _ => Ok(()),
        }
    }
}

/// Edge numbering and crossing table for up to 16 points.
struct EdgeTable {
    n: usize,
    index: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    crossing: Vec<u128>,
}

impl EdgeTable {
    fn new(pts: &[Point]) -> EdgeTable {
        let n = pts.len();
        let mut index = vec![vec![usize::MAX; n]; n];
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                index[a][b] = edges.len();
                index[b][a] = edges.len();
                edges.push(Edge::new(a, b));
            }
        }
        let mut crossing = vec![0u128; edges.len()];
        for i in 0..edges.len() {
            for j in (i + 1)..edges.len() {
                if segments_cross(pts, edges[i], edges[j]) {
                    crossing[i] |= 1 << j;
                    crossing[j] |= 1 << i;
                }
            }
        }
        EdgeTable { n, index, edges, crossing }
    }

    fn matching(&self, mask: u128) -> Matching {
        Matching::new(bits(mask).map(|i| self.edges[i]).collect())
    }

    /// Union of the crossing sets of the edges in `mask`.
    fn crossing_closure(&self, mask: u128) -> u128 {
        bits(mask).fold(0, |acc, i| acc | self.crossing[i])
    }
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn require_even_within(n: usize, cap: usize, what: &str) -> Result<()> {
    if n % 2 != 0 {
        return Err(Error::InvalidSize(format!("{what} needs an even point count, got {n}")));
    }
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "{what} is limited to {cap} points here (got {n}); set a node budget to raise the cap"
        )));
    }
    Ok(())
}

/// All plane perfect matchings as edge masks, in canonical order: the lowest
/// unmatched point takes partners in increasing order.
fn enumerate_masks(table: &EdgeTable, budget: &mut Budget) -> Result<Vec<u128>> {
    fn rec(t: &EdgeTable, used: u32, chosen: u128, blocked: u128, out: &mut Vec<u128>, budget: &mut Budget) -> Result<()> {
        budget.tick()?;
        if used.count_ones() as usize == t.n {
            out.push(chosen);
            return Ok(());
        }
        let a = (!used).trailing_zeros() as usize;
        for b in (a + 1)..t.n {
            if used & (1 << b) != 0 {
                continue;
            }
            let e = t.index[a][b];
            if blocked & (1 << e) != 0 {
                continue;
            }
            rec(t, used | (1 << a) | (1 << b), chosen | (1 << e), blocked | t.crossing[e], out, budget)?;
        }
        Ok(())
    }
    let mut out = Vec::new();
    if table.n == 0 {
        return Ok(out);
    }
    rec(table, 0, 0, 0, &mut out, budget)?;
    Ok(out)
}

/// Every plane perfect matching of `pts`, without duplicates.
pub fn enumerate_plane_matchings(pts: &[Point]) -> Result<Vec<Matching>> {
    enumerate_plane_matchings_with(pts, &OracleConfig::default())
}

pub fn enumerate_plane_matchings_with(pts: &[Point], cfg: &OracleConfig) -> Result<Vec<Matching>> {
    require_even_within(pts.len(), cfg.max_enumerate.min(ENUMERATION_LIMIT), "enumeration")?;
    let table = EdgeTable::new(pts);
    let masks = enumerate_masks(&table, &mut Budget::new(cfg.budget))?;
    Ok(masks.into_iter().map(|m| table.matching(m)).collect())
}

pub fn count_plane_matchings(pts: &[Point], cfg: &OracleConfig) -> Result<OracleReport> {
    let start = Instant::now();
    require_even_within(pts.len(), cfg.max_enumerate.min(ENUMERATION_LIMIT), "enumeration")?;
    let table = EdgeTable::new(pts);
    let mut budget = Budget::new(cfg.budget);
    let masks = enumerate_masks(&table, &mut budget)?;
    Ok(OracleReport {
        kind: OracleKind::Count,
        value: masks.len() as u64,
        witness: None,
        nodes_explored: budget.nodes,
        elapsed: start.elapsed(),
    })
}

/// `(n-1)!!`.
pub fn double_factorial_count(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    let mut k = 1usize;
    while k < n {
        acc *= k;
        k += 2;
    }
    acc
}

/// Perfect matchings of `K_n` by `M(n) = M(n-2) + 2 C(n-2, 2) M(n-4)` with
/// `M(2) = 1`, `M(4) = 3`.
pub fn recurrence_count(n: usize) -> BigUint {
    let mut table: Vec<BigUint> = vec![BigUint::one(); n / 2 + 1];
    for h in 1..=n / 2 {
        let m = 2 * h;
        table[h] = match m {
            2 => BigUint::one(),
            4 => BigUint::from(3u32),
            _ => {
                let c = BigUint::from((m - 2) * (m - 3) / 2);
                &table[h - 1] + BigUint::from(2u32) * c * &table[h - 2]
            }
        };
    }
    table[n / 2].clone()
}

/// Number of perfect matchings of the abstract `K_n`, computed two ways; the
/// results must agree.
pub fn count_abstract_matchings(n: usize) -> Result<BigUint> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidSize(format!("need an even n >= 2, got {n}")));
    }
    let a = double_factorial_count(n);
    let b = recurrence_count(n);
    if a != b {
        return Err(Error::Internal(format!("counts disagree for n = {n}: {a} vs {b}")));
    }
    Ok(a)
}

/// Bitset over candidate matchings.
#[derive(Clone)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn empty(len: usize) -> BitSet {
        BitSet { words: vec![0; len.div_ceil(64)] }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| bits(w as u128).map(move |b| 64 * k + b))
    }
}

/// Maximum clique by branch and bound with a greedy coloring bound; each
/// branched vertex is removed afterwards so every clique is reached once.
struct CliqueSearch<'a> {
    adj: &'a [BitSet],
    best: Vec<usize>,
    limit: usize,
    budget: Budget,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, current: &mut Vec<usize>, cand: BitSet) -> Result<()> {
        self.budget.tick()?;
        if current.len() > self.best.len() {
            self.best = current.clone();
        }
        if self.best.len() >= self.limit || cand.is_empty() {
            return Ok(());
        }
        // Greedy coloring: any clique takes at most one vertex per class.
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in cand.iter() {
            match classes.iter_mut().find(|cls| cls.iter().all(|&u| !self.adj[v].contains(u))) {
                Some(cls) => cls.push(v),
                None => classes.push(vec![v]),
            }
        }
        let order: Vec<(usize, usize)> =
            classes.iter().enumerate().flat_map(|(c, cls)| cls.iter().map(move |&v| (v, c + 1))).collect();
        let mut rest = cand;
        for &(v, color) in order.iter().rev() {
            if current.len() + color <= self.best.len() {
                return Ok(());
            }
            current.push(v);
            let next = rest.and(&self.adj[v]);
            self.expand(current, next)?;
            current.pop();
            rest.remove(v);
            if self.best.len() >= self.limit {
                return Ok(());
            }
        }
        Ok(())
    }
}

fn max_compatible_family(pts: &[Point], cfg: &OracleConfig, noncrossing: bool) -> Result<OracleReport> {
    let start = Instant::now();
    let n = pts.len();
    let what = if noncrossing { "non-crossing packing search" } else { "packing search" };
    require_even_within(n, cfg.max_packing.min(ENUMERATION_LIMIT), what)?;
    let kind = if noncrossing { OracleKind::MaxNoncrossing } else { OracleKind::MaxPacking };
    let table = EdgeTable::new(pts);
    let mut budget = Budget::new(cfg.budget);
    let masks = enumerate_masks(&table, &mut budget)?;
    let closure: Vec<u128> = masks.iter().map(|&m| if noncrossing { table.crossing_closure(m) } else { 0 }).collect();
    let k = masks.len();
    let mut adj = vec![BitSet::empty(k); k];
    for i in 0..k {
        for j in (i + 1)..k {
            if masks[i] & masks[j] == 0 && masks[j] & closure[i] == 0 {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let mut all = BitSet::empty(k);
    for i in 0..k {
        all.insert(i);
    }
    // n - 1 edge-disjoint perfect matchings exhaust K_n.
    let limit = n.saturating_sub(1).max(1);
    let mut search = CliqueSearch { adj: &adj, best: Vec::new(), limit, budget };
    search.expand(&mut Vec::new(), all)?;
    let witness = Packing::new(search.best.iter().map(|&i| table.matching(masks[i])).collect());
    Ok(OracleReport {
        kind,
        value: search.best.len() as u64,
        witness: Some(witness),
        nodes_explored: search.budget.nodes,
        elapsed: start.elapsed(),
    })
}

/// Largest number of pairwise edge-disjoint plane perfect matchings.
pub fn max_packing(pts: &[Point], cfg: &OracleConfig) -> Result<OracleReport> {
    max_compatible_family(pts, cfg, false)
}

/// Largest number of edge-disjoint plane perfect matchings no two of which
/// have crossing edges.
pub fn max_noncrossing_packing(pts: &[Point], cfg: &OracleConfig) -> Result<OracleReport> {
    max_compatible_family(pts, cfg, true)
}

/// Exact plane matching persistency: the fewest edge-disjoint plane perfect
/// matchings whose removal leaves no plane perfect matching. Fails with
/// `Infeasible` if no such family exists.
pub fn pmp_exact(pts: &[Point], cfg: &OracleConfig) -> Result<OracleReport> {
    let start = Instant::now();
    let n = pts.len();
    require_even_within(n, cfg.max_pmp.min(ENUMERATION_LIMIT), "persistency search")?;
    let table = EdgeTable::new(pts);
    let mut budget = Budget::new(cfg.budget);
    let masks = enumerate_masks(&table, &mut budget)?;
    if masks.is_empty() {
        return Err(Error::Infeasible("no plane perfect matching to remove".into()));
    }

    struct Pmp<'a> {
        masks: &'a [u128],
        budget: Budget,
    }

    impl Pmp<'_> {
        /// Hitting search: some unhit matching must share an edge with a
        /// member of the family; branch on the unhit matching with the
        /// fewest admissible hitters.
        fn search(&mut self, removed: u128, family: &mut Vec<usize>, depth: usize) -> Result<bool> {
            self.budget.tick()?;
            let unhit: Vec<usize> = (0..self.masks.len()).filter(|&i| self.masks[i] & removed == 0).collect();
            if unhit.is_empty() {
                return Ok(true);
            }
            if family.len() == depth {
                return Ok(false);
            }
            let hitters = |x: usize| -> Vec<usize> {
                (0..self.masks.len())
                    .filter(|&y| self.masks[y] & removed == 0 && self.masks[y] & self.masks[x] != 0)
                    .collect()
            };
            let target = unhit.iter().copied().min_by_key(|&x| hitters(x).len()).expect("nonempty");
            for y in hitters(target) {
                family.push(y);
                if self.search(removed | self.masks[y], family, depth)? {
                    return Ok(true);
                }
                family.pop();
            }
            Ok(false)
        }
    }

    let mut s = Pmp { masks: &masks, budget };
    for depth in 1..n.max(2) {
        let mut family = Vec::new();
        if s.search(0, &mut family, depth)? {
            let witness = Packing::new(family.iter().map(|&i| table.matching(masks[i])).collect());
            return Ok(OracleReport {
                kind: OracleKind::Pmp,
                value: depth as u64,
                witness: Some(witness),
                nodes_explored: s.budget.nodes,
                elapsed: start.elapsed(),
            });
        }
    }
    Err(Error::Infeasible("no family of edge-disjoint plane matchings blocks every plane matching".into()))
}

/// True iff removing the edges of `packing` leaves no plane perfect matching.
pub fn blocks_all_plane_matchings(pts: &[Point], packing: &Packing) -> Result<bool> {
    let removed: std::collections::HashSet<Edge> =
        packing.matchings().iter().flat_map(|m| m.edges().iter().copied()).collect();
    Ok(enumerate_plane_matchings(pts)?.iter().all(|m| m.edges().iter().any(|e| removed.contains(e))))
}

/// Catalan number `C_k`.
pub fn catalan(k: usize) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * BigUint::from(2 * (2 * i + 1)) / BigUint::from(i + 2);
    }
    c
}
