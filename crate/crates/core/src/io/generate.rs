use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::geometry::{Point3, Real};

/// Side length of the generated region.
pub const DEFAULT_RANGE: f64 = 500.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GenMode {
    /// Uniform in a square, `z = 0`.
    #[default]
    Square2d,
    /// Uniform in a cube.
    Box3d,
    /// Uniform square lifted to `z = x² + y²`.
    Parabola,
}

impl FromStr for GenMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "square2d" => Ok(GenMode::Square2d),
            "box3d" => Ok(GenMode::Box3d),
            "parabola" => Ok(GenMode::Parabola),
            _ => Err(format!("unknown mode {s:?}; expected square2d, box3d or parabola")),
        }
    }
}

impl fmt::Display for GenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenMode::Square2d => "square2d",
            GenMode::Box3d => "box3d",
            GenMode::Parabola => "parabola",
        })
    }
}

/// `n` points with coordinates uniform in `[-range/2, range/2)`, from a
/// xoshiro256++ stream seeded with `seed`.
pub fn generate_points(n: usize, seed: u64, mode: GenMode, range: f64) -> Vec<Point3> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let half = range / 2.0;
    let mut coord = || rng.random_range(-half..half) as Real;
    (0..n)
        .map(|i| {
            let (x, y) = (coord(), coord());
            let z = match mode {
                GenMode::Square2d => 0.0,
                GenMode::Box3d => coord(),
                GenMode::Parabola => x * x + y * y,
            };
            Point3::new(i as i64, x, y, z)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = generate_points(5, 1, GenMode::Box3d, DEFAULT_RANGE);
        let b = generate_points(5, 1, GenMode::Box3d, DEFAULT_RANGE);
        assert_eq!(a, b);
        assert_ne!(a, generate_points(5, 2, GenMode::Box3d, DEFAULT_RANGE));
    }

    #[test]
    fn square_bounds() {
        for p in generate_points(10_000, 3, GenMode::Square2d, 500.0) {
            assert!((-250.0..250.0).contains(&p.x) && (-250.0..250.0).contains(&p.y));
            assert_eq!(p.z, 0.0);
        }
    }

    #[test]
    fn parabola_is_lifted() {
        for p in generate_points(100, 4, GenMode::Parabola, 500.0) {
            assert_eq!(p.z, p.x * p.x + p.y * p.y);
        }
    }

    #[test]
    fn mode_names_round_trip() {
        for m in [GenMode::Square2d, GenMode::Box3d, GenMode::Parabola] {
            assert_eq!(m.to_string().parse::<GenMode>(), Ok(m));
        }
        assert!("cube".parse::<GenMode>().is_err());
    }
}
