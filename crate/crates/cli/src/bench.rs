//! Timed builds over generated point sets.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::time::Instant;

use naw_core::delaunay::triangulate_unique;
use naw_core::hull::hull_of_unique;
use naw_core::io::{generate_points, GenMode};
use naw_core::{dedup, HullConfig, InsertionStats};
use rayon::prelude::*;

use crate::CliError;

pub const CSV_HEADER: [&str; 8] =
    ["n", "seed", "mode", "wall_s", "facets", "mean_visible", "max_visible", "scan_mean"];

pub const SERIES_HEADER: [&str; 7] = ["n", "seed", "index", "point", "visible", "scan_len", "coplanar"];

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub seed: u64,
    pub mode: GenMode,
    /// Build time only; generation and de-duplication are excluded.
    pub wall_s: f64,
    pub facets: usize,
    /// Over insertions that struck at least one facet.
    pub mean_visible: f64,
    pub max_visible: usize,
    pub scan_mean: f64,
}

#[derive(Debug, Clone)]
pub struct Run {
    pub record: BenchRecord,
    pub dedup_s: f64,
    pub removed: usize,
    /// Every insertion, when requested.
    pub series: Option<Vec<InsertionStats>>,
}

#[derive(Default)]
struct Tally {
    count: usize,
    visible: usize,
    max_visible: usize,
    scan: usize,
}

impl Tally {
    fn add(&mut self, s: &InsertionStats) {
        if s.visible == 0 {
            return;
        }
        self.count += 1;
        self.visible += s.visible;
        self.max_visible = self.max_visible.max(s.visible);
        self.scan += s.scan_len;
    }

    fn mean(&self, total: usize) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            total as f64 / self.count as f64
        }
    }
}

/// Generates one point set and builds it: a Delaunay triangulation for the
/// planar modes, a 3D hull for `box3d`.
pub fn run_cell(
    n: usize,
    seed: u64,
    mode: GenMode,
    range: f64,
    config: &HullConfig,
    keep_series: bool,
) -> Result<Run, CliError> {
    let mut points = generate_points(n, seed, mode, range);
    if mode == GenMode::Square2d {
        for p in &mut points {
            p.z = p.x * p.x + p.y * p.y;
        }
    }

    let t = Instant::now();
    let unique = dedup(&points);
    let removed = unique.removed.len();
    let unique = unique.with_source_ids();
    let dedup_s = t.elapsed().as_secs_f64();

    let mut tally = Tally::default();
    let mut series = Vec::new();
    let observe = |s: &InsertionStats| {
        tally.add(s);
        if keep_series {
            series.push(*s);
        }
    };
    let t = Instant::now();
    let facets = match mode {
        GenMode::Box3d => hull_of_unique(unique, config.clone(), observe)?.facets.len(),
        _ => triangulate_unique(unique, config.clone(), observe)?.facets.len(),
    };
    let wall_s = t.elapsed().as_secs_f64();

    let record = BenchRecord {
        n,
        seed,
        mode,
        wall_s,
        facets,
        mean_visible: tally.mean(tally.visible),
        max_visible: tally.max_visible,
        scan_mean: tally.mean(tally.scan),
    };
    Ok(Run { record, dedup_s, removed, series: keep_series.then_some(series) })
}

fn cells(sizes: &[usize], seeds: &[u64]) -> Vec<(usize, u64)> {
    sizes.iter().flat_map(|&n| seeds.iter().map(move |&s| (n, s))).collect()
}

fn map_cells<T: Send>(
    cells: &[(usize, u64)],
    parallel: bool,
    f: impl Fn(usize, u64) -> Result<T, CliError> + Sync,
) -> Result<Vec<T>, CliError> {
    if parallel {
        cells.par_iter().map(|&(n, s)| f(n, s)).collect()
    } else {
        cells.iter().map(|&(n, s)| f(n, s)).collect()
    }
}

/// One run per (size, seed), in that order.
pub fn run_stats(
    sizes: &[usize],
    seeds: &[u64],
    mode: GenMode,
    range: f64,
    config: &HullConfig,
    keep_series: bool,
    parallel: bool,
) -> Result<Vec<Run>, CliError> {
    map_cells(&cells(sizes, seeds), parallel, |n, s| run_cell(n, s, mode, range, config, keep_series))
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    if values.is_empty() {
        f64::NAN
    } else if values.len() % 2 == 1 {
        values[m]
    } else {
        (values[m - 1] + values[m]) / 2.0
    }
}

/// Median wall time of `repeats` builds per (size, seed).
pub fn run_bench(
    sizes: &[usize],
    seeds: &[u64],
    repeats: usize,
    mode: GenMode,
    range: f64,
    config: &HullConfig,
    parallel: bool,
) -> Result<Vec<BenchRecord>, CliError> {
    if repeats == 0 {
        return Err(CliError::Usage("--repeats must be at least 1".into()));
    }
    map_cells(&cells(sizes, seeds), parallel, |n, s| {
        let mut first = run_cell(n, s, mode, range, config, false)?.record;
        let mut times = vec![first.wall_s];
        for _ in 1..repeats {
            let r = run_cell(n, s, mode, range, config, false)?.record;
            debug_assert_eq!(r.facets, first.facets);
            times.push(r.wall_s);
        }
        first.wall_s = median(&mut times);
        Ok(first)
    })
}

pub fn write_csv(w: impl Write, records: &[BenchRecord]) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in records {
        out.write_record([
            r.n.to_string(),
            r.seed.to_string(),
            r.mode.to_string(),
            format!("{:.6}", r.wall_s),
            r.facets.to_string(),
            format!("{:.4}", r.mean_visible),
            r.max_visible.to_string(),
            format!("{:.4}", r.scan_mean),
        ])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_series(w: impl Write, runs: &[Run]) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SERIES_HEADER)?;
    for run in runs {
        let (n, seed) = (run.record.n.to_string(), run.record.seed.to_string());
        for (i, s) in run.series.iter().flatten().enumerate() {
            out.write_record([
                n.clone(),
                seed.clone(),
                i.to_string(),
                s.point.to_string(),
                s.visible.to_string(),
                s.scan_len.to_string(),
                (s.coplanar as u8).to_string(),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Another tool's timing, read from a user-supplied CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub tool: String,
    pub n: usize,
    pub wall_s: f64,
    /// The timing was given as "<x": only an upper bound is known.
    pub upper_bound: bool,
}

impl Comparison {
    pub fn render(&self) -> String {
        if self.upper_bound {
            format!("≤{}", self.wall_s)
        } else {
            format!("{}", self.wall_s)
        }
    }
}

/// Reads `tool,n,wall_s` rows (with a header).
pub fn read_comparison(r: impl BufRead) -> Result<Vec<Comparison>, CliError> {
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let mut out = Vec::new();
    for (i, row) in rd.records().enumerate() {
        let row = row?;
        let line = i + 2;
        let bad = |what: &str| CliError::Parse(format!("comparison line {line}: bad {what}"));
        if row.len() != 3 {
            return Err(bad("column count"));
        }
        let n = row[1].parse().map_err(|_| bad("n"))?;
        let (upper_bound, t) = match row[2].strip_prefix('<') {
            Some(rest) => (true, rest.trim()),
            None => (false, &row[2]),
        };
        let wall_s = t.parse().map_err(|_| bad("wall_s"))?;
        out.push(Comparison { tool: row[0].to_string(), n, wall_s, upper_bound });
    }
    Ok(out)
}

/// Side-by-side table of our timings and the compared tools', one row per
/// size.
pub fn comparison_table(records: &[BenchRecord], others: &[Comparison]) -> String {
    let mut tools: Vec<&str> = Vec::new();
    for c in others {
        if !tools.contains(&c.tool.as_str()) {
            tools.push(&c.tool);
        }
    }
    let mut sizes: Vec<usize> = records.iter().map(|r| r.n).chain(others.iter().map(|c| c.n)).collect();
    sizes.sort_unstable();
    sizes.dedup();

    let mut s = format!("{:>10} {:>12}", "n", "naw");
    for t in &tools {
        let _ = write!(s, " {t:>12}");
    }
    for n in sizes {
        let mut ours: Vec<f64> = records.iter().filter(|r| r.n == n).map(|r| r.wall_s).collect();
        let ours = if ours.is_empty() { "-".to_string() } else { format!("{:.6}", median(&mut ours)) };
        let _ = write!(s, "\n{n:>10} {ours:>12}");
        for t in &tools {
            let cell = others
                .iter()
                .find(|c| c.n == n && c.tool == *t)
                .map(Comparison::render)
                .unwrap_or_else(|| "-".into());
            let _ = write!(s, " {cell:>12}");
        }
    }
    s
}
