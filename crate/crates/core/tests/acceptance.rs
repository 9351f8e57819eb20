//! Acceptance suite: one pass/fail line per criterion. Runs without the
//! standard harness so the lines always reach the terminal.

use std::collections::BTreeSet;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use matchpack::bichromatic::{cut_rb_matching, min_rb_matching, tangent_rb_matching, Quality};
use matchpack::geom::{convex_hull, Edge, Point, Shear};
use matchpack::io::{load_point_set, LoadOptions};
use matchpack::matching::{is_plane_matching, union_cycles, verify_packing, Matching, Packing};
use matchpack::oracle::{
    catalan, count_abstract_matchings, double_factorial_count, enumerate_plane_matchings, max_noncrossing_packing,
    max_packing, pmp_exact, recurrence_count, OracleConfig,
};
use matchpack::packers::{
    build_pack_tree, pack_convex, pack_logn_detailed, pack_power_of_two, pack_three_with_report, pack_wheel, ThreeCase,
};
use matchpack::persistency::{
    bipartite_kill_set, has_perfect_matching, one_factorize_kn, survive_plane_matching_removal, AbstractGraph,
};
use matchpack::pointgen::{gen_convex, gen_nested_triangles, gen_random, gen_regular_wheel, gen_wheel_variation, PointSet};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn ceil_log2(n: usize) -> usize {
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

fn valid(pts: &[Point], p: &Packing) -> Result<(), String> {
    let report = verify_packing(pts, p, true, false);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(v.to_string()),
    }
}

fn hull_edges(pts: &[Point]) -> BTreeSet<Edge> {
    let hull = convex_hull(pts).expect("hull");
    (0..hull.len()).map(|i| Edge::new(hull[i], hull[(i + 1) % hull.len()])).collect()
}

fn min_hull_edges(pts: &[Point]) -> (usize, usize) {
    let hull = hull_edges(pts);
    let all = enumerate_plane_matchings(pts).expect("enumeration");
    let fewest = all.iter().map(|m| m.edges().iter().filter(|e| hull.contains(e)).count()).min().unwrap_or(0);
    (all.len(), fewest)
}

fn convex_tightness() -> Outcome {
    let start = Instant::now();
    let cfg = OracleConfig::default();
    for n in [4, 6, 8, 10, 12] {
        let set = gen_convex(n, n as u64).map_err(|e| e.to_string())?;
        let p = pack_convex(set.points()).map_err(|e| e.to_string())?;
        ensure!(p.len() == n / 2, "n = {n}: packed {}", p.len());
        valid(set.points(), &p)?;
        let best = max_packing(set.points(), &cfg).map_err(|e| e.to_string())?;
        ensure!(best.value as usize == n / 2, "n = {n}: oracle {}", best.value);
    }
    let t = start.elapsed();
    ensure!(t < Duration::from_secs(60), "took {t:?}");
    Ok(format!("n/2 packed and optimal for n = 4..12 in {:.2?}", t))
}

fn wheel_tightness() -> Outcome {
    let cfg = OracleConfig::default();
    for n in [6, 8, 10, 12] {
        let set = gen_regular_wheel(n).map_err(|e| e.to_string())?;
        let p = pack_wheel(set.points()).map_err(|e| e.to_string())?;
        ensure!(p.len() == n / 2 - 1, "n = {n}: packed {}", p.len());
        valid(set.points(), &p)?;
        if n <= 10 {
            let best = max_packing(set.points(), &cfg).map_err(|e| e.to_string())?;
            ensure!(best.value as usize == n / 2 - 1, "n = {n}: oracle {}", best.value);
        }
    }
    Ok("n/2 - 1 packed for n = 6..12, optimal for n <= 10".into())
}

fn wheel_variation_bound() -> Outcome {
    let set = gen_wheel_variation(12).map_err(|e| e.to_string())?;
    let best = max_packing(set.points(), &OracleConfig::default()).map_err(|e| e.to_string())?;
    ensure!(best.value <= 4, "oracle found {}", best.value);
    let (count, fewest) = min_hull_edges(set.points());
    ensure!(fewest >= 2, "a plane matching uses only {fewest} hull edges");
    Ok(format!("max packing {} <= 4; all {count} plane matchings use >= 2 hull edges", best.value))
}

fn two_convex_edges() -> Outcome {
    let mut total = 0;
    for n in [4, 6, 8, 10, 12] {
        let set = gen_convex(n, 7).map_err(|e| e.to_string())?;
        let (count, fewest) = min_hull_edges(set.points());
        ensure!(fewest >= 2, "n = {n}: a plane matching uses only {fewest} hull edges");
        total += count;
    }
    Ok(format!("{total} plane matchings checked, zero exceptions"))
}

fn three_matching() -> Outcome {
    let mut cases: BTreeSet<String> = BTreeSet::new();
    let mut parities = BTreeSet::new();
    let mut runs = 0;
    for n in [8, 10, 12, 14, 16] {
        for seed in 0..50 {
            let set = gen_random(n, seed).map_err(|e| e.to_string())?;
            let (p, r) = pack_three_with_report(set.points()).map_err(|e| format!("n = {n}, seed {seed}: {e}"))?;
            ensure!(p.len() == 3, "n = {n}, seed {seed}: {} matchings", p.len());
            valid(set.points(), &p).map_err(|e| format!("n = {n}, seed {seed}: {e}"))?;
            cases.insert(format!("{:?}", r.case));
            if let Some(par) = r.closing_parity {
                parities.insert(par);
            }
            runs += 1;
        }
    }
    let mut fixtures: Vec<PointSet> = [11, 28].iter().map(|&s| gen_random(14, s).expect("generator")).collect();
    fixtures.push(load_point_set(&fixture("three_lower14.json"), &LoadOptions::default()).map_err(|e| e.to_string())?);
    for set in &fixtures {
        let (p, r) = pack_three_with_report(set.points()).map_err(|e| e.to_string())?;
        valid(set.points(), &p)?;
        cases.insert(format!("{:?}", r.case));
    }
    for c in [ThreeCase::Even, ThreeCase::TangentsCross, ThreeCase::SharedRed, ThreeCase::SharedBlue] {
        ensure!(cases.contains(&format!("{c:?}")), "case {c:?} never exercised");
    }
    Ok(format!("{runs} random runs + 3 fixtures valid; cases {cases:?}; closing parities {parities:?}"))
}

fn logn_packing() -> Outcome {
    let mut detail = Vec::new();
    for n in [16, 64, 256, 1024] {
        let set = gen_random(n, 5).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let lp = pack_logn_detailed(set.points()).map_err(|e| e.to_string())?;
        let t = start.elapsed();
        let bound = ceil_log2(n) - 2;
        ensure!(lp.packing.len() >= bound, "n = {n}: {} < {bound}", lp.packing.len());
        valid(set.points(), &lp.packing)?;
        if n == 1024 {
            ensure!(t < Duration::from_secs(10), "n = 1024 took {t:?}");
        }
        detail.push(format!("{n}:{}", lp.packing.len()));
    }
    for n in (2..=4096).step_by(2) {
        let tree = build_pack_tree(n).map_err(|e| e.to_string())?;
        tree.check_invariants().map_err(|e| format!("tree for n = {n}: {e}"))?;
    }
    Ok(format!("sizes {}; trees for every even n <= 4096 pass", detail.join(" ")))
}

fn power_of_two() -> Outcome {
    let mut detail = Vec::new();
    for k in 3..=6 {
        let n = 1usize << k;
        let set = gen_random(n, 9).map_err(|e| e.to_string())?;
        let p = pack_power_of_two(set.points()).map_err(|e| e.to_string())?;
        ensure!(p.len() >= k, "n = {n}: {} < {k}", p.len());
        valid(set.points(), &p)?;
        detail.push(format!("{n}:{}", p.len()));
    }
    Ok(format!("sizes {}", detail.join(" ")))
}

fn counting() -> Outcome {
    for n in (2..=40).step_by(2) {
        ensure!(double_factorial_count(n) == recurrence_count(n), "n = {n}: formulas disagree");
        count_abstract_matchings(n).map_err(|e| e.to_string())?;
    }
    let mut convex = Vec::new();
    for n in [4, 6, 8, 10, 12] {
        let set = gen_convex(n, 3).map_err(|e| e.to_string())?;
        let c = enumerate_plane_matchings(set.points()).map_err(|e| e.to_string())?.len();
        ensure!(BigUint::from(c) == catalan(n / 2), "convex n = {n}: {c}");
        convex.push(c.to_string());
    }
    for n in [4, 6, 8, 10, 12] {
        for seed in 0..5 {
            let set = gen_random(n, seed).map_err(|e| e.to_string())?;
            let c = enumerate_plane_matchings(set.points()).map_err(|e| e.to_string())?.len();
            ensure!(BigUint::from(c) >= catalan(n / 2), "random n = {n}, seed {seed}: {c}");
        }
    }
    Ok(format!("formulas agree for n = 2..40; convex counts {}", convex.join(", ")))
}

fn noncrossing_bounds() -> Outcome {
    let cfg = OracleConfig::default();
    for n in [4, 6, 8, 10] {
        let set = gen_convex(n, 2).map_err(|e| e.to_string())?;
        let r = max_noncrossing_packing(set.points(), &cfg).map_err(|e| e.to_string())?;
        ensure!(r.value == 2, "convex n = {n}: {}", r.value);
    }
    let mut values = BTreeSet::new();
    let mut pairs = 0;
    for n in [6, 8, 10] {
        for seed in 0..4 {
            let set = gen_random(n, seed).map_err(|e| e.to_string())?;
            let r = max_noncrossing_packing(set.points(), &cfg).map_err(|e| e.to_string())?;
            ensure!((2..=5).contains(&r.value), "random n = {n}, seed {seed}: {}", r.value);
            values.insert(r.value);
            let all = enumerate_plane_matchings(set.points()).map_err(|e| e.to_string())?;
            for (i, a) in all.iter().enumerate() {
                for b in &all[i + 1..] {
                    if b.edges().iter().any(|e| a.contains(*e)) {
                        continue;
                    }
                    let d = union_cycles(a, b).map_err(|e| e.to_string())?;
                    ensure!(d.cycles.iter().all(|c| c.len() % 2 == 0), "odd cycle in union");
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("convex value 2 for n = 4..10; random values {values:?}; {pairs} disjoint pairs give even cycles"))
}

fn persistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for t in 0..100u64 {
        let n = [6, 8, 10][(t % 3) as usize];
        let set = gen_random(n, 1000 + t).map_err(|e| e.to_string())?;
        let all = enumerate_plane_matchings(set.points()).map_err(|e| e.to_string())?;
        let m = all.choose(&mut rng).expect("plane matchings exist");
        let s = survive_plane_matching_removal(&set, m).map_err(|e| format!("instance {t}: {e}"))?;
        ensure!(s.edges().iter().all(|e| !m.contains(*e)), "instance {t}: survivor reuses an edge");
        ensure!(is_plane_matching(set.points(), &s).unwrap_or(false), "instance {t}: survivor not plane");
    }
    let cfg = OracleConfig::default();
    for n in [4, 6, 8] {
        let set = gen_convex(n, 4).map_err(|e| e.to_string())?;
        let r = pmp_exact(set.points(), &cfg).map_err(|e| e.to_string())?;
        ensure!(r.value == 2, "convex n = {n}: pmp {}", r.value);
    }
    let nested = gen_nested_triangles(2).map_err(|e| e.to_string())?;
    let r = pmp_exact(nested.points(), &cfg).map_err(|e| e.to_string())?;
    ensure!(r.value >= 3, "nested triangles: pmp {}", r.value);
    for n in [6, 10] {
        let mut g = AbstractGraph::complete(n);
        for m in bipartite_kill_set(n).map_err(|e| e.to_string())? {
            g.remove_matching(&m);
        }
        ensure!(!has_perfect_matching(&g), "n = {n}: kill set leaves a perfect matching");
        let factors = one_factorize_kn(n).map_err(|e| e.to_string())?;
        for trial in 0..200 {
            let k = rng.gen_range(0..n / 2);
            let mut g = AbstractGraph::complete(n);
            for m in factors.choose_multiple(&mut rng, k) {
                g.remove_matching(m);
            }
            ensure!(has_perfect_matching(&g), "n = {n}, trial {trial}: removing {k} factors kills all matchings");
        }
    }
    Ok(format!("100 removals survived; pmp convex = 2, nested triangles = {}; kill sets verified", r.value))
}

fn separated(set: &PointSet) -> (Vec<usize>, Vec<usize>) {
    let all: Vec<usize> = (0..set.len()).collect();
    let order = Shear::for_points(set.points(), &all).expect("shear").sorted(set.points(), &all).expect("sort");
    let h = order.len() / 2;
    (order[..h].to_vec(), order[h..].to_vec())
}

fn brute_force_rb(pts: &[Point], red: &[usize], blue: &[usize]) -> f64 {
    fn go(pts: &[Point], red: &[usize], blue: &[usize], used: &mut Vec<bool>, i: usize, acc: f64, best: &mut f64) {
        if i == red.len() {
            *best = best.min(acc);
            return;
        }
        for j in 0..blue.len() {
            if !used[j] {
                used[j] = true;
                go(pts, red, blue, used, i + 1, acc + pts[red[i]].dist(&pts[blue[j]]), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(pts, red, blue, &mut vec![false; blue.len()], 0, 0.0, &mut best);
    best
}

fn bichromatic() -> Outcome {
    let rb_ok = |pts: &[Point], red: &[usize], m: &Matching| -> bool {
        is_plane_matching(pts, m).unwrap_or(false) && m.edges().iter().all(|e| red.contains(&e.a()) != red.contains(&e.b()))
    };
    for t in 0..100u64 {
        let k = 1 + (t % 32) as usize;
        let set = gen_random(2 * k, 500 + t).map_err(|e| e.to_string())?;
        let pts = set.points();
        let (red, blue) = separated(&set);
        let min = min_rb_matching(pts, &red, &blue).map_err(|e| e.to_string())?;
        let cut = cut_rb_matching(pts, &red, &blue).map_err(|e| e.to_string())?;
        let tan = tangent_rb_matching(pts, &red, &blue).map_err(|e| e.to_string())?;
        for (name, m) in [("min", &min.matching), ("cut", &cut), ("tangent", &tan)] {
            ensure!(rb_ok(pts, &red, m) && m.len() == k, "{name} failed on instance {t} (k = {k})");
        }
        // Interleaved colors for the two methods that do not need separation.
        let red: Vec<usize> = (0..k).map(|i| 2 * i).collect();
        let blue: Vec<usize> = (0..k).map(|i| 2 * i + 1).collect();
        let min = min_rb_matching(pts, &red, &blue).map_err(|e| e.to_string())?;
        let cut = cut_rb_matching(pts, &red, &blue).map_err(|e| e.to_string())?;
        ensure!(rb_ok(pts, &red, &min.matching) && rb_ok(pts, &red, &cut), "interleaved instance {t} failed");
        if k <= 6 {
            ensure!(min.quality == Quality::Exact, "instance {t}: not exact");
            let opt = brute_force_rb(pts, &red, &blue);
            let got = min.matching.total_length(pts);
            ensure!((got - opt).abs() <= 1e-9 * opt.max(1.0), "instance {t}: {got} vs optimum {opt}");
        }
    }
    let mut odd_runs = 0;
    let mut lower = 0;
    for n in [10, 14, 18, 22] {
        for seed in 0..50 {
            let set = gen_random(n, seed).map_err(|e| e.to_string())?;
            let (p, r) = pack_three_with_report(set.points()).map_err(|e| e.to_string())?;
            let tangents = r.tangent_edges.ok_or("odd case without tangents")?;
            ensure!(tangents.iter().all(|e| !p.matchings()[2].contains(*e)), "n = {n}, seed {seed}: M3 reuses a tangent edge");
            odd_runs += 1;
            lower += r.used_lower_tangents as usize;
        }
    }
    Ok(format!(
        "300 plane RB matchings (k <= 32), exact optimum for k <= 6; {odd_runs} odd runs avoid tangent edges \
         ({lower} needed the lower tangent iteration)"
    ))
}

fn cli(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_matchpack")).args(args).output().map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    Ok(())
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("matchpack-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let s = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let round = |tag: &str| -> Result<Vec<Vec<u8>>, String> {
        let mut files = Vec::new();
        for (family, n) in [("convex", "8"), ("wheel", "8"), ("random", "32"), ("nested-triangles", "2")] {
            let pts = s(&format!("{tag}-{family}.json"));
            let pk = s(&format!("{tag}-{family}.packing.json"));
            let svg = s(&format!("{tag}-{family}.svg"));
            cli(&["generate", "--family", family, "--n", n, "--seed", "17", "--out", &pts])?;
            if family != "nested-triangles" {
                cli(&["pack", "--points", &pts, "--out", &pk])?;
                cli(&["render", "--points", &pts, "--packing", &pk, "--out", &svg])?;
                files.push(fs::read(&pk).map_err(|e| e.to_string())?);
            } else {
                cli(&["render", "--points", &pts, "--out", &svg])?;
            }
            files.push(fs::read(&pts).map_err(|e| e.to_string())?);
            files.push(fs::read(&svg).map_err(|e| e.to_string())?);
        }
        Ok(files)
    };
    let first = round("a")?;
    let second = round("b")?;
    ensure!(first == second, "outputs differ between runs");
    for (points, packing, golden) in [
        ("convex8.json", Some("convex8.packing.json"), "convex8.svg"),
        ("convex8.json", None, "convex8_points.svg"),
        ("wheel8.json", Some("wheel8.packing.json"), "wheel8.svg"),
    ] {
        let out = s(golden);
        let pts = fixture(points).to_string_lossy().into_owned();
        let mut args = vec!["render", "--points", &pts, "--out", &out];
        let pk = packing.map(|p| fixture(p).to_string_lossy().into_owned());
        if let Some(p) = &pk {
            args.extend(["--packing", p.as_str()]);
        }
        cli(&args)?;
        let same = fs::read(&out).map_err(|e| e.to_string())? == fs::read(fixture(golden)).map_err(|e| e.to_string())?;
        ensure!(same, "{golden} differs from the golden file");
    }
    let _ = fs::remove_dir_all(&dir);
    Ok(format!("{} files identical across two runs; 3 SVG goldens match", first.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("convex tightness", convex_tightness),
        ("wheel tightness", wheel_tightness),
        ("wheel variation bound", wheel_variation_bound),
        ("two convex hull edges", two_convex_edges),
        ("three matchings", three_matching),
        ("log n packing", logn_packing),
        ("power of two", power_of_two),
        ("counting", counting),
        ("non-crossing bounds", noncrossing_bounds),
        ("persistency", persistency),
        ("bichromatic", bichromatic),
        ("determinism and goldens", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({t:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({t:.2?}): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
