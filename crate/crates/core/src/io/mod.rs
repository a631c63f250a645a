//! Text formats for points and triangles, random point sets, and SVG plots.
//!
//! Points files hold an optional `"<N> 3 points"` header followed by one
//! `x y z` (or `x y`) row per point. Triangles files hold 1-based vertex
//! and neighbor ids, with `0` for a missing neighbor.

mod format;
mod generate;
mod svg;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use log::warn;
use thiserror::Error;

use crate::geometry::{Facet, Point3, Real, UNSET};

pub use format::{format_compat, format_shortest, Precision};
pub use generate::{generate_points, GenMode, DEFAULT_RANGE};
pub use svg::{emit_svg, write_svg, SVG_MARGIN};

/// Longest line the reader accepts, excluding the terminator.
pub const MAX_LINE: usize = 512;

pub const TRIANGLES_HEADER: &str = "6 point-ids (1,2,3) adjacent triangle-ids ( limbs ab ac bc )";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),
    #[error("no data rows in input")]
    EmptyInput,
    #[error("line {line}: non-finite coordinate")]
    NonFinite { line: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn open(path: &Path) -> Result<BufReader<File>, IoError> {
    match File::open(path) {
        Ok(f) => Ok(BufReader::new(f)),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Err(IoError::FileNotFound(path.into())),
        Err(e) => Err(e.into()),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, IoError> {
    Ok(BufWriter::new(File::create(path)?))
}

pub fn read_points(path: impl AsRef<Path>) -> Result<Vec<Point3>, IoError> {
    read_points_from(open(path.as_ref())?)
}

/// Reads a points file. A first line mentioning `points` is a header and
/// its count is ignored. Rows with two numbers are lifted to
/// `(x, y, x² + y²)`.
pub fn read_points_from(reader: impl BufRead) -> Result<Vec<Point3>, IoError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if i == 0 && line.contains("points") {
            continue;
        }
        if line.len() > MAX_LINE {
            warn!("line {lineno}: longer than {MAX_LINE} characters, skipped");
            continue;
        }
        let nums: Vec<f64> = line
            .split_whitespace()
            .map_while(|t| t.parse::<f64>().ok())
            .take(3)
            .collect();
        let (x, y, z) = match nums[..] {
            [x, y, z] => (x as Real, y as Real, z as Real),
            [x, y] => {
                let (x, y) = (x as Real, y as Real);
                (x, y, x * x + y * y)
            }
            [] if line.trim().is_empty() => continue,
            _ => {
                warn!("line {lineno}: expected 2 or 3 numbers, skipped");
                continue;
            }
        };
        let p = Point3::new(out.len() as i64, x, y, z);
        if !p.is_finite() {
            return Err(IoError::NonFinite { line: lineno });
        }
        out.push(p);
    }
    if out.is_empty() {
        return Err(IoError::EmptyInput);
    }
    Ok(out)
}

pub fn write_points(points: &[Point3], path: impl AsRef<Path>, precision: Precision) -> Result<(), IoError> {
    let mut w = create(path.as_ref())?;
    write_points_to(&mut w, points, precision)?;
    w.flush()?;
    Ok(())
}

pub fn write_points_to(w: &mut (impl Write + ?Sized), points: &[Point3], precision: Precision) -> io::Result<()> {
    writeln!(w, "{} 3 points", points.len())?;
    for p in points {
        writeln!(
            w,
            "{} {} {}",
            precision.format(p.x),
            precision.format(p.y),
            precision.format(p.z)
        )?;
    }
    Ok(())
}

pub fn write_triangles(facets: &[Facet], path: impl AsRef<Path>) -> Result<(), IoError> {
    let mut w = create(path.as_ref())?;
    write_triangles_to(&mut w, facets)?;
    w.flush()?;
    Ok(())
}

/// Neighbor columns are in `ab ac bc` order.
pub fn write_triangles_to(w: &mut (impl Write + ?Sized), facets: &[Facet]) -> io::Result<()> {
    let one = |v: u32| if v == UNSET { 0 } else { v as u64 + 1 };
    writeln!(w, "{} {}", facets.len(), TRIANGLES_HEADER)?;
    for f in facets {
        writeln!(
            w,
            "{} {} {} {} {} {}",
            one(f.a),
            one(f.b),
            one(f.c),
            one(f.nab),
            one(f.nac),
            one(f.nbc)
        )?;
    }
    Ok(())
}

pub fn read_triangles(path: impl AsRef<Path>) -> Result<Vec<Facet>, IoError> {
    read_triangles_from(open(path.as_ref())?)
}

/// Parses rows of exactly six non-negative integers back into 0-based
/// facets. Normals are left zero.
pub fn read_triangles_from(reader: impl BufRead) -> Result<Vec<Facet>, IoError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if (i == 0 && line.contains("point-ids")) || line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split_whitespace().collect();
        if cols.len() != 6 {
            return Err(IoError::Parse { line: lineno, msg: format!("expected 6 columns, found {}", cols.len()) });
        }
        let mut ids = [0u32; 6];
        for (slot, tok) in ids.iter_mut().zip(&cols) {
            let v: u32 = tok.parse().map_err(|_| IoError::Parse {
                line: lineno,
                msg: format!("not a non-negative integer: {tok:?}"),
            })?;
            if v == u32::MAX {
                return Err(IoError::Parse { line: lineno, msg: format!("id {v} out of range") });
            }
            *slot = v;
        }
        let zero = |v: u32| v.checked_sub(1).unwrap_or(UNSET);
        for (k, &v) in ids[..3].iter().enumerate() {
            if v == 0 {
                return Err(IoError::Parse { line: lineno, msg: format!("vertex column {} is 0", k + 1) });
            }
        }
        let mut f = Facet::new(ids[0] - 1, ids[1] - 1, ids[2] - 1);
        f.nab = zero(ids[3]);
        f.nac = zero(ids[4]);
        f.nbc = zero(ids[5]);
        out.push(f);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(s: &str) -> Result<Vec<Point3>, IoError> {
        read_points_from(s.as_bytes())
    }

    #[test]
    fn two_column_rows_are_lifted() {
        let p = read("3 2 points\n0 0\n1 0\n0 1\n").unwrap();
        assert_eq!(p.len(), 3);
        let z: Vec<f64> = p.iter().map(|p| p.z as f64).collect();
        assert_eq!(z, [0.0, 1.0, 1.0]);
    }

    #[test]
    fn headerless_line_is_data() {
        let p = read("2 3\n").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!((p[0].x, p[0].y, p[0].z), (2.0, 3.0, 13.0));
    }

    #[test]
    fn three_columns_verbatim() {
        let p = read("1 3 points\n1 2 7\n").unwrap();
        assert_eq!((p[0].x, p[0].y, p[0].z), (1.0, 2.0, 7.0));
        assert_eq!(p[0].id, 0);
    }

    #[test]
    fn header_count_is_not_trusted() {
        let p = read("10 3 points\n1 2 3\n4 5 6\n").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[1].id, 1);
    }

    #[test]
    fn long_lines_are_skipped() {
        let long = format!("1 2 3 {}\n", "0 ".repeat(300));
        let p = read(&format!("{long}4 5 6\n")).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].x, 4.0);
    }

    #[test]
    fn read_errors() {
        assert!(matches!(read("0 3 points\n"), Err(IoError::EmptyInput)));
        assert!(matches!(read(""), Err(IoError::EmptyInput)));
        assert!(matches!(read("1 inf 2\n"), Err(IoError::NonFinite { line: 1 })));
        assert!(matches!(
            read_points("/nonexistent/naw/points.txt"),
            Err(IoError::FileNotFound(_))
        ));
    }

    fn written(points: &[Point3], precision: Precision) -> String {
        let mut buf = Vec::new();
        write_points_to(&mut buf, points, precision).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn points_writer_format() {
        let p = [Point3::new(0, 1.0, 2.5, -3.0), Point3::new(1, 0.1, 0.0, 1e20)];
        assert_eq!(written(&p, Precision::Shortest), "2 3 points\n1 2.5 -3\n0.1 0 1e20\n");
        assert_eq!(written(&[], Precision::Shortest), "0 3 points\n");
    }

    #[test]
    fn triangles_writer_format() {
        let mut buf = Vec::new();
        write_triangles_to(&mut buf, &[Facet::new(0, 1, 2)]).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(
            s,
            "1 6 point-ids (1,2,3) adjacent triangle-ids ( limbs ab ac bc )\n1 2 3 0 0 0\n"
        );
        let back = read_triangles_from(s.as_bytes()).unwrap();
        assert_eq!(back[0].vertices(), [0, 1, 2]);
        assert_eq!(back[0].nab, UNSET);
    }

    #[test]
    fn triangles_column_order() {
        let mut f = Facet::new(3, 4, 5);
        f.nab = 7;
        f.nac = 8;
        f.nbc = 9;
        let mut buf = Vec::new();
        write_triangles_to(&mut buf, &[f]).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.ends_with("\n4 5 6 8 9 10\n"));
        let back = read_triangles_from(s.as_bytes()).unwrap();
        assert_eq!((back[0].nab, back[0].nac, back[0].nbc), (7, 8, 9));
    }

    #[test]
    fn triangles_reader_rejects_bad_rows() {
        assert!(read_triangles_from("1 2 3 0 0\n".as_bytes()).is_err());
        assert!(read_triangles_from("1 2 3 0 0 -1\n".as_bytes()).is_err());
        assert!(read_triangles_from("0 2 3 0 0 0\n".as_bytes()).is_err());
    }
}
