//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails. Runs without the libtest harness so the
//! criteria execute one after another and the timings are not disturbed.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use naw_cli::bench::{run_bench, run_stats};
use naw_core::delaunay::{delaunay_triangulate, Point2};
use naw_core::geometry::Point3;
use naw_core::hull::build_hull;
use naw_core::io::{generate_points, read_points_from, write_triangles_to, GenMode};
use naw_core::verify::{
    audit_delaunay, audit_hull, brute_hull, plane_support, AuditConfig, ViolationKind, DEFAULT_BRUTE_CAP,
};
use naw_core::{HullConfig, Triangulation};

/// Bounds on the median-time ratio between successive decades of n.
const SCALING_RATIO: (f64, f64) = (8.0, 25.0);
/// Wall-clock ceiling for the whole oracle sweep and for the 10⁶ build.
const TIME_LIMIT_S: f64 = 60.0;
/// Largest allowed ratio between the two visible-facet increments.
const INCREMENT_RATIO: f64 = 3.0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn criterion(name: &str, check: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let o = check();
    let verdict = if o.pass { "PASS" } else { "FAIL" };
    println!("{verdict} {name}: {} [{:.1}s]", o.detail, t.elapsed().as_secs_f64());
    o.pass
}

/// `n` in [4, 50] and integer coordinates in [-100, 100].
fn oracle_input(seed: u64) -> Vec<Point3> {
    let n = 4 + (seed as usize % 47);
    let mut p = generate_points(n, seed, GenMode::Box3d, 200.0);
    for q in &mut p {
        q.x = q.x.round();
        q.y = q.y.round();
        q.z = q.z.round();
    }
    p
}

fn vertex_set(t: &Triangulation) -> BTreeSet<usize> {
    t.facets.iter().flat_map(|f| f.vertices()).map(|v| v as usize).collect()
}

fn hull_oracle() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for seed in 0..200u64 {
        let t = match build_hull(&oracle_input(seed)) {
            Ok(t) => t,
            Err(e) => {
                failures.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        let oracle = match brute_hull(&t.points, DEFAULT_BRUTE_CAP) {
            Ok(o) => o,
            Err(e) => {
                failures.push(format!("seed {seed}: oracle {e}"));
                continue;
            }
        };
        if vertex_set(&t) != oracle.vertex_set() {
            failures.push(format!("seed {seed}: vertex sets differ"));
            continue;
        }
        let got: BTreeSet<Vec<usize>> = t
            .facets
            .iter()
            .map(|f| plane_support(&t.points, f.a as usize, f.b as usize, f.c as usize))
            .collect();
        if got != oracle.supports() {
            failures.push(format!("seed {seed}: plane supports differ"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = failures.is_empty() && secs < TIME_LIMIT_S;
    let mut detail = format!("200 seeds, {} mismatches, {secs:.2}s (limit {TIME_LIMIT_S}s)", failures.len());
    for f in failures.iter().take(5) {
        detail += &format!("; {f}");
    }
    outcome(pass, detail)
}

fn delaunay_correctness() -> Outcome {
    let mut circ = 0;
    let mut count_fail = Vec::new();
    let mut other = 0;
    for seed in 1..=20u64 {
        let pts: Vec<Point2> =
            generate_points(2000, seed, GenMode::Square2d, 500.0).iter().map(Point2::from).collect();
        let tri = match delaunay_triangulate(&pts) {
            Ok(t) => t,
            Err(e) => return outcome(false, format!("seed {seed}: {e}")),
        };
        let planar: Vec<Point2> = tri.points.iter().map(Point2::from).collect();
        let r = audit_delaunay(&tri.facets, &planar, &AuditConfig::default());
        circ += r.count(ViolationKind::Circumcircle);
        if !r.euler_ok || r.count(ViolationKind::BoundaryCount) > 0 {
            count_fail.push(seed);
        }
        other += r.total_violations()
            - r.count(ViolationKind::Circumcircle)
            - r.count(ViolationKind::Euler)
            - r.count(ViolationKind::BoundaryCount);
    }
    outcome(
        circ == 0 && count_fail.is_empty() && other == 0,
        format!(
            "20 seeds x 2000 points: {circ} circumcircle violations, count identity failed for {count_fail:?}, \
             {other} other violations"
        ),
    )
}

fn grid(k: i32) -> Vec<Point3> {
    let mut p = Vec::new();
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                p.push(Point3::new(p.len() as i64, x as _, y as _, z as _));
            }
        }
    }
    p
}

fn sphere(n: usize) -> Vec<Point3> {
    // Fibonacci lattice
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let t = golden * i as f64;
            Point3::new(i as i64, (r * t.cos()) as _, (r * t.sin()) as _, z as _)
        })
        .collect()
}

fn structural() -> Outcome {
    let mut cases: Vec<(String, Vec<Point3>)> = vec![
        ("cube".into(), grid(2)),
        ("grid 3^3".into(), grid(3)),
        ("grid 5^3".into(), grid(5)),
        ("sphere 1000".into(), sphere(1000)),
        ("box 20000".into(), generate_points(20000, 3, GenMode::Box3d, 500.0)),
        ("parabola 5000".into(), generate_points(5000, 4, GenMode::Parabola, 500.0)),
    ];
    for seed in 0..200u64 {
        cases.push((format!("oracle seed {seed}"), oracle_input(seed)));
    }
    let mut bad = Vec::new();
    for (name, pts) in &cases {
        match build_hull(pts) {
            Ok(t) => {
                let r = audit_hull(&t.facets, &t.points, &AuditConfig::default());
                if !r.is_clean() {
                    bad.push(format!("{name}: {} violations", r.total_violations()));
                }
            }
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    let mut detail = format!("{} builds audited, {} not clean", cases.len(), bad.len());
    for b in bad.iter().take(5) {
        detail += &format!("; {b}");
    }
    outcome(bad.is_empty(), detail)
}

fn scaling() -> Outcome {
    let sizes = [10_000, 100_000, 1_000_000];
    let recs = match run_bench(&sizes, &[1], 3, GenMode::Square2d, 500.0, &HullConfig::default(), false) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let t: Vec<f64> = recs.iter().map(|r| r.wall_s).collect();
    let (r1, r2) = (t[1] / t[0], t[2] / t[1]);
    let within = |r: f64| (SCALING_RATIO.0..=SCALING_RATIO.1).contains(&r);
    outcome(
        within(r1) && within(r2) && t[2] < TIME_LIMIT_S,
        format!(
            "median of 3: t(1e4)={:.4}s t(1e5)={:.4}s t(1e6)={:.3}s; ratios {r1:.2}, {r2:.2} (need {}..{}); \
             1e6 under {TIME_LIMIT_S}s",
            t[0], t[1], t[2], SCALING_RATIO.0, SCALING_RATIO.1
        ),
    )
}

fn visible_facets() -> Outcome {
    let sizes = [1_000, 10_000, 100_000];
    let runs =
        match run_stats(&sizes, &[1, 2, 3, 4, 5], GenMode::Parabola, 500.0, &HullConfig::default(), false, false) {
            Ok(r) => r,
            Err(e) => return outcome(false, e.to_string()),
        };
    let means: Vec<f64> = sizes
        .iter()
        .map(|&n| {
            let v: Vec<f64> = runs.iter().filter(|r| r.record.n == n).map(|r| r.record.mean_visible).collect();
            v.iter().sum::<f64>() / v.len() as f64
        })
        .collect();
    let (d1, d2) = (means[1] - means[0], means[2] - means[1]);
    let increasing = d1 > 0.0 && d2 > 0.0;
    let ratio = d1.max(d2) / d1.min(d2);
    outcome(
        increasing && ratio <= INCREMENT_RATIO,
        format!(
            "mean visible {:.3} / {:.3} / {:.3} at 1e3/1e4/1e5 (5 seeds); increments {d1:.3}, {d2:.3}, \
             ratio {ratio:.2} (limit {INCREMENT_RATIO})",
            means[0], means[1], means[2]
        ),
    )
}

fn format_compat() -> Outcome {
    let mut problems = Vec::new();

    let two = read_points_from("3 2 points\n0 0\n1 0\n0 1\n".as_bytes()).unwrap();
    let got: Vec<[f64; 3]> = two.iter().map(|p| [p.x as f64, p.y as f64, p.z as f64]).collect();
    if got != [[0., 0., 0.], [1., 0., 1.], [0., 1., 1.]] {
        problems.push(format!("2-column lift read {got:?}"));
    }
    let bare = read_points_from("2 3\n".as_bytes()).unwrap();
    if (bare.len(), bare[0].z as f64) != (1, 13.0) {
        problems.push("headerless 2-column line".to_string());
    }
    let three = read_points_from("2 3 points\n1.5 -2 7\n0.25 1e3 -0\n".as_bytes()).unwrap();
    let got: Vec<[f64; 3]> = three.iter().map(|p| [p.x as f64, p.y as f64, p.z as f64]).collect();
    if got != [[1.5, -2., 7.], [0.25, 1000., 0.]] {
        problems.push(format!("3-column read {got:?}"));
    }

    let square: Vec<Point2> =
        [(0., 0.), (1., 0.), (0., 1.), (1., 1.)].iter().enumerate().map(|(i, &(x, y))| Point2::new(i as i64, x, y)).collect();
    let tri = delaunay_triangulate(&square).unwrap();
    let mut buf = Vec::new();
    write_triangles_to(&mut buf, &tri.facets).unwrap();
    let want = "2 6 point-ids (1,2,3) adjacent triangle-ids ( limbs ab ac bc )\n1 3 2 0 0 2\n4 2 3 0 0 1\n";
    if buf != want.as_bytes() {
        problems.push(format!("unit square triangles {:?}", String::from_utf8_lossy(&buf)));
    }

    let tet = build_hull(&grid(2)[..4].iter().copied().chain([Point3::new(9, 1.0, 1.0, 1.0)]).collect::<Vec<_>>())
        .unwrap();
    let mut buf = Vec::new();
    write_triangles_to(&mut buf, &tet.facets).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    let header = format!("{} 6 point-ids (1,2,3) adjacent triangle-ids ( limbs ab ac bc )", tet.facets.len());
    if lines.next() != Some(header.as_str()) {
        problems.push("hull header".to_string());
    }
    for l in lines {
        let cols: Vec<Result<u64, _>> = l.split_whitespace().map(str::parse::<u64>).collect();
        if cols.len() != 6 || cols.iter().any(|c| c.is_err()) {
            problems.push(format!("row {l:?}"));
        }
    }
    let detail = if problems.is_empty() {
        "points reader (2- and 3-column, header and bare) and triangles writer match golden text".to_string()
    } else {
        problems.join("; ")
    };
    outcome(problems.is_empty(), detail)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut problems = Vec::new();
    for (cmd, file) in [("delaunay", "delaunay_300_7.txt"), ("hull3d", "hull3d_300_7.txt")] {
        let mut outs = Vec::new();
        for run in 0..2 {
            let out = dir.path().join(format!("{cmd}-{run}.txt"));
            let status = Command::new(env!("CARGO_BIN_EXE_naw"))
                .args([cmd, "--gen", "300", "--seed", "7", "-o"])
                .arg(&out)
                .output()
                .unwrap()
                .status;
            if !status.success() {
                problems.push(format!("{cmd} run {run} exited {status}"));
            }
            outs.push(std::fs::read(&out).unwrap_or_default());
        }
        if outs[0] != outs[1] {
            problems.push(format!("{cmd}: two runs differ"));
        }
        if std::fs::read(golden.join(file)).unwrap_or_default() != outs[0] {
            problems.push(format!("{cmd}: differs from pinned {file}"));
        }
    }
    let detail = if problems.is_empty() {
        format!(
            "two runs byte-identical and equal to pinned golden files ({} {}); other platforms not exercised here",
            std::env::consts::OS,
            std::env::consts::ARCH
        )
    } else {
        problems.join("; ")
    };
    outcome(problems.is_empty(), detail)
}

fn main() {
    let results = [
        criterion("hull oracle equivalence", hull_oracle),
        criterion("delaunay correctness", delaunay_correctness),
        criterion("structural invariants", structural),
        criterion("scaling", scaling),
        criterion("visible-facet statistic", visible_facets),
        criterion("format compatibility", format_compat),
        criterion("determinism", determinism),
    ];
    let failed = results.iter().filter(|&&p| !p).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
