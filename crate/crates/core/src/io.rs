//! JSON reading and writing of point sets and packings.
//!
//! Point set: `{"n": 4, "points": [[num_x, den_x, num_y, den_y], ...], "meta": {...}}`.
//! Integers that do not fit in 64 bits are written as decimal strings; both
//! forms are accepted on input.
//!
//! Packing: `{"n": 4, "matchings": [[[0, 3], [1, 2]], ...]}` with `i < j`.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geom::{check_general_position, orient, Degeneracy, Edge, Orientation, Point};
use crate::matching::{Matching, Packing};
use crate::pointgen::{Meta, PointSet};

/// How thoroughly a loaded point set is checked for collinear triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositionCheck {
    /// Every triple (via angular sorting).
    Full,
    /// This many random triples with a fixed seed.
    Sampled(usize),
    Skip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoadOptions {
    pub require_even: bool,
    pub position_check: PositionCheck,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions { require_even: true, position_check: PositionCheck::Full }
    }
}

fn int_to_json(v: &BigInt) -> String {
    match v.to_i64() {
        Some(x) => x.to_string(),
        None => format!("\"{v}\""),
    }
}

fn rational_parts(r: &BigRational) -> [String; 2] {
    [int_to_json(r.numer()), int_to_json(r.denom())]
}

/// Serialises a point set; one point per line.
pub fn point_set_to_json(set: &PointSet) -> String {
    let mut out = String::new();
    out.push_str(&format!("{{\n  \"n\": {},\n  \"points\": [", set.len()));
    for (i, p) in set.points().iter().enumerate() {
        let [xn, xd] = rational_parts(p.x());
        let [yn, yd] = rational_parts(p.y());
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        out.push_str(&format!("[{xn}, {xd}, {yn}, {yd}]"));
    }
    if !set.is_empty() {
        out.push_str("\n  ");
    }
    let meta = serde_json::to_string(&set.meta).expect("metadata serialises");
    out.push_str(&format!("],\n  \"meta\": {meta}\n}}\n"));
    out
}

fn parse_int(v: &Value, at: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::Parse(format!("{at}: expected an integer, got {n}")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("{at}: expected an integer string, got {s:?}"))),
        other => Err(Error::Parse(format!("{at}: expected an integer, got {other}"))),
    }
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("missing field \"{key}\"")))
}

fn parse_count(v: &Value) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| Error::Parse(format!("\"n\" must be a non-negative integer, got {v}")))
}

fn sampled_check(pts: &[Point], samples: usize) -> Result<()> {
    let n = pts.len();
    if n < 3 {
        return Ok(());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..samples {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let k = rng.gen_range(0..n);
        if i == j || j == k || i == k {
            continue;
        }
        if orient(&pts[i], &pts[j], &pts[k]) == Orientation::Collinear {
            let mut t = [i, j, k];
            t.sort();
            return Err(Error::Parse(format!("points {}, {} and {} are collinear", t[0], t[1], t[2])));
        }
    }
    Ok(())
}

pub fn parse_point_set(text: &str, opts: &LoadOptions) -> Result<PointSet> {
    let root = parse_json(text)?;
    let n = parse_count(field(&root, "n")?)?;
    let list = field(&root, "points")?.as_array().ok_or_else(|| Error::Parse("\"points\" must be an array".into()))?;
    if list.len() != n {
        return Err(Error::Parse(format!("\"n\" is {n} but {} points are listed", list.len())));
    }
    if opts.require_even && n % 2 != 0 {
        return Err(Error::Parse(format!("odd number of points ({n})")));
    }
    let mut pts = Vec::with_capacity(n);
    for (i, item) in list.iter().enumerate() {
        let at = format!("points[{i}]");
        let parts = item
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| Error::Parse(format!("{at}: expected [num_x, den_x, num_y, den_y]")))?;
        let v: Vec<BigInt> = parts.iter().enumerate().map(|(k, x)| parse_int(x, &format!("{at}[{k}]"))).collect::<Result<_>>()?;
        if v[1].is_zero() || v[3].is_zero() {
            return Err(Error::Parse(format!("{at}: zero denominator")));
        }
        pts.push(Point::new(BigRational::new(v[0].clone(), v[1].clone()), BigRational::new(v[2].clone(), v[3].clone())));
    }
    let meta: Meta = match root.get("meta") {
        None | Some(Value::Null) => Meta::default(),
        Some(m) => serde_json::from_value(m.clone()).map_err(|e| Error::Parse(format!("meta: {e}")))?,
    };
    match opts.position_check {
        PositionCheck::Full => match check_general_position(&pts) {
            Ok(()) => {}
            Err(Degeneracy::Collinear(a, b, c)) => {
                return Err(Error::Parse(format!("points {a}, {b} and {c} are collinear")));
            }
            Err(Degeneracy::Duplicate(a, b)) => {
                return Err(Error::Parse(format!("points {a} and {b} coincide")));
            }
        },
        PositionCheck::Sampled(k) => sampled_check(&pts, k)?,
        PositionCheck::Skip => {}
    }
    Ok(PointSet::with_meta(pts, meta))
}

pub fn load_point_set(path: &Path, opts: &LoadOptions) -> Result<PointSet> {
    let text = fs::read_to_string(path)?;
    parse_point_set(&text, opts).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn save_point_set(set: &PointSet, path: &Path) -> Result<()> {
    fs::write(path, point_set_to_json(set))?;
    Ok(())
}

/// Serialises a packing; one matching per line.
pub fn packing_to_json(n: usize, packing: &Packing) -> String {
    let mut out = format!("{{\n  \"n\": {n},\n  \"matchings\": [");
    for (i, m) in packing.matchings().iter().enumerate() {
        let edges: Vec<String> = m.edges().iter().map(|e| format!("[{}, {}]", e.a(), e.b())).collect();
        out.push_str(if i == 0 { "\n    " } else { ",\n    " });
        out.push_str(&format!("[{}]", edges.join(", ")));
    }
    if !packing.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

/// Parses a packing; with `expected_n` the point count must match. Indices
/// must be below `n` and each pair must have two distinct entries.
pub fn parse_packing(text: &str, expected_n: Option<usize>) -> Result<Packing> {
    let root = parse_json(text)?;
    let n = parse_count(field(&root, "n")?)?;
    if let Some(m) = expected_n {
        if m != n {
            return Err(Error::Parse(format!("packing is for {n} points, the point set has {m}")));
        }
    }
    let list = field(&root, "matchings")?.as_array().ok_or_else(|| Error::Parse("\"matchings\" must be an array".into()))?;
    let mut matchings = Vec::with_capacity(list.len());
    for (i, m) in list.iter().enumerate() {
        let edges = m.as_array().ok_or_else(|| Error::Parse(format!("matchings[{i}] must be an array")))?;
        let mut out = Vec::with_capacity(edges.len());
        for (k, e) in edges.iter().enumerate() {
            let at = format!("matchings[{i}][{k}]");
            let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Parse(format!("{at}: expected [i, j]")))?;
            let idx: Vec<usize> = pair
                .iter()
                .map(|v| v.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("{at}: indices must be non-negative integers"))))
                .collect::<Result<_>>()?;
            if idx[0] >= n || idx[1] >= n {
                return Err(Error::Parse(format!("{at}: index {} out of range for {n} points", idx[0].max(idx[1]))));
            }
            if idx[0] == idx[1] {
                return Err(Error::Parse(format!("{at}: loop at point {}", idx[0])));
            }
            out.push(Edge::new(idx[0], idx[1]));
        }
        let before = out.len();
        let m = Matching::new(out);
        if m.len() != before {
            return Err(Error::Parse(format!("matchings[{i}] lists an edge twice")));
        }
        matchings.push(m);
    }
    Ok(Packing::new(matchings))
}

pub fn load_packing(path: &Path, expected_n: Option<usize>) -> Result<Packing> {
    let text = fs::read_to_string(path)?;
    parse_packing(&text, expected_n).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn save_packing(n: usize, packing: &Packing, path: &Path) -> Result<()> {
    fs::write(path, packing_to_json(n, packing))?;
    Ok(())
}
