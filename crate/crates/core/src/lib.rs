//! Sweep-hull ("Newton Apple Wrapper") convex hulls in 3D and Delaunay
//! triangulations in 2D via the paraboloid lift.
//!
//! ```
//! use naw_core::delaunay::{delaunay_triangulate, Point2};
//!
//! let pts = [(0., 0.), (1., 0.), (0., 1.), (5., 5.)]
//!     .iter()
//!     .enumerate()
//!     .map(|(i, &(x, y))| Point2::new(i as i64, x, y))
//!     .collect::<Vec<_>>();
//! let tri = delaunay_triangulate(&pts).unwrap();
//! assert_eq!(tri.facets.len(), 2);
//! ```

pub mod delaunay;
pub mod geometry;
pub mod hull;
pub mod io;
pub mod verify;

pub use delaunay::{delaunay_triangulate, dedup, lift, Point2};
pub use geometry::{Facet, FacetState, Point3, Real};
pub use hull::{build_hull, HullConfig, HullError, HullState, InsertionStats, Triangulation};
