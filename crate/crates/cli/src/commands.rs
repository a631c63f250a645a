use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use log::info;
use naw_core::delaunay::{lift, triangulate_unique, Point2};
use naw_core::geometry::Point3;
use naw_core::hull::hull_of_unique;
use naw_core::io::{
    generate_points, read_points, read_triangles, write_points_to, write_svg, write_triangles_to, GenMode,
    IoError, Precision,
};
use naw_core::verify::{audit_delaunay, audit_hull, AuditConfig};
use naw_core::{dedup, HullConfig, Triangulation};

use crate::args::{BenchArgs, BuildArgs, Cli, Command, GenArgs, Source, StatsArgs, VerifyArgs, VerifyMode};
use crate::bench::{comparison_table, read_comparison, run_bench, run_stats, write_csv, write_series};
use crate::CliError;

/// Environment variable overriding the containment slack factor.
pub const EPSILON_VAR: &str = "NAW_EPSILON";

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Delaunay(a) => cmd_build(a, false),
        Command::Hull3d(a) => cmd_build(a, true),
        Command::Gen(a) => cmd_gen(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Stats(a) => cmd_stats(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

/// Writes through a temporary file in the target directory, so a failed
/// run never leaves a partial file behind. `None` means standard output.
pub fn write_output(
    path: Option<&Path>,
    body: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    let Some(path) = path else {
        let stdout = io::stdout();
        let mut w = BufWriter::new(stdout.lock());
        body(&mut w)?;
        w.flush()?;
        return Ok(());
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let tmp = tempfile::NamedTempFile::new_in(dir)?;
    let mut w = BufWriter::new(tmp);
    body(&mut w)?;
    let tmp = w.into_inner().map_err(|e| e.into_error())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn config(strict: bool) -> HullConfig {
    if strict {
        HullConfig::strict()
    } else {
        HullConfig::default()
    }
}

fn precision(compat: bool) -> Precision {
    if compat {
        Precision::Compat
    } else {
        Precision::Shortest
    }
}

fn load(source: &Source, default_mode: GenMode) -> Result<Vec<Point3>, CliError> {
    match (&source.input, source.gen) {
        (_, Some(n)) => {
            if n == 0 {
                return Err(CliError::Usage("--gen needs at least one point".into()));
            }
            let pts = generate_points(n, source.seed, source.mode.unwrap_or(default_mode), source.range);
            eprintln!("{n} randomly generated points");
            Ok(pts)
        }
        (Some(path), None) => {
            let pts = read_points(path)?;
            eprintln!("read {} points from {}", pts.len(), path.display());
            Ok(pts)
        }
        (None, None) => Err(CliError::Usage("give a points file or --gen N".into())),
    }
}

fn cmd_build(a: BuildArgs, hull3d: bool) -> Result<(), CliError> {
    if hull3d && a.svg.is_some() {
        return Err(CliError::Usage("--svg applies to delaunay only".into()));
    }
    let default_mode = if hull3d { GenMode::Box3d } else { GenMode::Square2d };
    let mut points = load(&a.source, default_mode)?;
    if !hull3d {
        let planar: Vec<Point2> = points.iter().map(Point2::from).collect();
        points = lift(&planar)?;
    }

    let t = Instant::now();
    let unique = dedup(&points);
    eprintln!("duplicates filtered {}", unique.removed.len());
    let unique = unique.with_source_ids();
    info!("{} seconds for de-duplication", t.elapsed().as_secs_f64());

    let cfg = config(a.strict_compat);
    let t = Instant::now();
    let tri: Triangulation = if hull3d {
        hull_of_unique(unique, cfg, |_| {})?
    } else {
        triangulate_unique(unique, cfg, |_| {})?
    };
    eprintln!("{} seconds for triangulation", t.elapsed().as_secs_f64());

    write_output(a.output.as_deref(), |w| Ok(write_triangles_to(w, &tri.facets)?))?;
    eprintln!("{} triangles written", tri.facets.len());

    if let Some(path) = &a.points_out {
        let p = precision(a.compat_precision);
        write_output(Some(path), |w| Ok(write_points_to(w, &tri.points, p)?))?;
    }
    if let Some(path) = &a.svg {
        let planar: Vec<Point2> = tri.points.iter().map(Point2::from).collect();
        let svg = write_svg(&tri.facets, &planar);
        write_output(Some(path), |w| Ok(w.write_all(svg.as_bytes())?))?;
    }
    Ok(())
}

fn cmd_gen(a: GenArgs) -> Result<(), CliError> {
    if a.n == 0 {
        return Err(CliError::Usage("need at least one point".into()));
    }
    let pts = generate_points(a.n, a.seed, a.mode, a.range);
    let p = precision(a.compat_precision);
    write_output(a.output.as_deref(), |w| Ok(write_points_to(w, &pts, p)?))?;
    eprintln!("{} randomly generated points written", pts.len());
    Ok(())
}

fn parse_error(what: &Path, e: IoError) -> CliError {
    CliError::Parse(format!("{}: {e}", what.display()))
}

fn audit_config() -> Result<AuditConfig, CliError> {
    let mut cfg = AuditConfig::default();
    if let Ok(v) = std::env::var(EPSILON_VAR) {
        cfg.contain_factor = v
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|f| f.is_finite() && *f >= 0.0)
            .ok_or_else(|| CliError::Usage(format!("{EPSILON_VAR}={v:?} is not a non-negative number")))?;
    }
    Ok(cfg)
}

fn cmd_verify(a: VerifyArgs) -> Result<(), CliError> {
    let cfg = audit_config()?;
    let raw = read_points(&a.points).map_err(|e| parse_error(&a.points, e))?;
    let facets = read_triangles(&a.triangles).map_err(|e| parse_error(&a.triangles, e))?;

    // rebuild the point order the triangle ids refer to
    let points = match a.mode {
        VerifyMode::Hull => raw,
        VerifyMode::Delaunay => {
            let planar: Vec<Point2> = raw.iter().map(Point2::from).collect();
            lift(&planar).map_err(|e| CliError::Parse(e.to_string()))?
        }
    };
    let mut points = dedup(&points).points;
    points.sort_by(naw_core::geometry::compare_points);

    let n = points.len();
    if let Some((row, v)) = facets
        .iter()
        .enumerate()
        .find_map(|(i, f)| f.vertices().into_iter().find(|&v| v as usize >= n).map(|v| (i, v)))
    {
        return Err(CliError::Parse(format!(
            "triangle {} names point {} but there are {n} unique points",
            row + 1,
            v as u64 + 1
        )));
    }

    let report = match a.mode {
        VerifyMode::Hull => audit_hull(&facets, &points, &cfg),
        VerifyMode::Delaunay => {
            let planar: Vec<Point2> = points.iter().map(Point2::from).collect();
            audit_delaunay(&facets, &planar, &cfg)
        }
    };
    println!("{report}");
    if report.is_clean() {
        Ok(())
    } else {
        Err(CliError::Violations(report.total_violations()))
    }
}

fn check_sizes(sizes: &[usize], min: usize) -> Result<(), CliError> {
    match sizes.iter().find(|&&n| n < min) {
        Some(n) => Err(CliError::Usage(format!("size {n} is below the minimum of {min}"))),
        None if sizes.is_empty() => Err(CliError::Usage("no sizes given".into())),
        None => Ok(()),
    }
}

fn cmd_stats(a: StatsArgs) -> Result<(), CliError> {
    check_sizes(&a.sizes, 10)?;
    let runs = run_stats(
        &a.sizes,
        &a.seeds,
        a.mode,
        a.range,
        &config(a.strict_compat),
        a.per_insertion.is_some(),
        a.parallel,
    )?;
    let records: Vec<_> = runs.iter().map(|r| r.record.clone()).collect();
    write_output(a.output.as_deref(), |w| write_csv(w, &records))?;
    if let Some(path) = &a.per_insertion {
        write_output(Some(path), |w| write_series(w, &runs))?;
    }
    Ok(())
}

fn cmd_bench(a: BenchArgs) -> Result<(), CliError> {
    check_sizes(&a.sizes, 4)?;
    let others = match &a.compare {
        Some(path) => {
            let f = File::open(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            read_comparison(BufReader::new(f))?
        }
        None => Vec::new(),
    };
    let records = run_bench(
        &a.sizes,
        &a.seeds,
        a.repeats,
        a.mode,
        a.range,
        &config(a.strict_compat),
        a.parallel,
    )?;
    write_output(a.output.as_deref(), |w| write_csv(w, &records))?;
    if a.compare.is_some() {
        eprintln!("{}", comparison_table(&records, &others));
    }
    Ok(())
}
