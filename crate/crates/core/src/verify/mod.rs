//! Independent oracles and structural auditors.
//!
//! Nothing here shares arithmetic with the hull builder: orientation and
//! in-circle signs come from [`exact`], and the brute-force hull enumerates
//! supporting planes directly.

mod audit;
mod brute;
pub mod exact;

use thiserror::Error;

use crate::delaunay::Point2;

pub use audit::{audit_delaunay, audit_hull, AuditConfig, AuditReport, Violation, ViolationKind};
pub use brute::{
    brute_hull, hull2d_boundary_count, hull2d_vertices, plane_support, BruteHull, OracleFace,
    DEFAULT_BRUTE_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("brute-force oracle limited to {cap} points, got {found}")]
    CapExceeded { found: usize, cap: usize },
    #[error("points are coplanar; no solid hull to enumerate")]
    Flat,
    #[error("triangle ({a}, {b}, {c}) is collinear")]
    CollinearTriangle { a: i64, b: i64, c: i64 },
}

pub(crate) fn xy(p: &Point2) -> [f64; 2] {
    [p.x as f64, p.y as f64]
}

/// Signed in-circle determinant, positive iff `p` is strictly inside the
/// circumcircle of `a, b, c` whatever their winding.
pub fn in_circumcircle(a: &Point2, b: &Point2, c: &Point2, p: &Point2) -> Result<f64, VerifyError> {
    let o = exact::orient2d_sign(xy(a), xy(b), xy(c));
    if o == 0 {
        return Err(VerifyError::CollinearTriangle { a: a.id, b: b.id, c: c.id });
    }
    Ok(o as f64 * exact::incircle(xy(a), xy(b), xy(c), xy(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(0, x as _, y as _)
    }

    #[test]
    fn circumcircle_examples() {
        let (a, b, c) = (p(0., 0.), p(1., 0.), p(0., 1.));
        assert_eq!(in_circumcircle(&a, &b, &c, &p(1., 1.)).unwrap(), 0.0);
        assert!(in_circumcircle(&a, &b, &c, &p(0.5, 0.5)).unwrap() > 0.0);
        assert!(in_circumcircle(&a, &b, &c, &p(2., 2.)).unwrap() < 0.0);
        // clockwise input gets the same answer
        assert!(in_circumcircle(&a, &c, &b, &p(0.5, 0.5)).unwrap() > 0.0);
    }

    #[test]
    fn circumcircle_rejects_collinear() {
        let r = in_circumcircle(&p(0., 0.), &p(1., 1.), &p(2., 2.), &p(0., 1.));
        assert!(matches!(r, Err(VerifyError::CollinearTriangle { .. })));
    }

    proptest! {
        #[test]
        fn circumcircle_sign_ignores_vertex_order(
            pts in prop::collection::vec((-1000i32..1000, -1000i32..1000), 4),
        ) {
            let q: Vec<Point2> = pts.iter().map(|&(x, y)| p(x as f64 / 4.0, y as f64 / 4.0)).collect();
            let base = in_circumcircle(&q[0], &q[1], &q[2], &q[3]);
            prop_assume!(base.is_ok());
            let sgn = |v: f64| (v > 0.0) as i8 - (v < 0.0) as i8;
            let s = sgn(base.unwrap());
            let perms = [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            for [i, j, k] in perms {
                let v = in_circumcircle(&q[i], &q[j], &q[k], &q[3]).unwrap();
                prop_assert_eq!(sgn(v), s);
            }
        }
    }
}
