//! Orientation and in-circle determinants with exact signs.
//!
//! Each predicate first evaluates the determinant in `f64` with a forward
//! error bound on the result. Only when the value falls inside that band
//! are the inputs rescaled to big integers (every finite `f64` is an
//! integer times a power of two) and the determinant recomputed exactly.

use num_bigint::BigInt;
use num_traits::{Float, Signed, ToPrimitive, Zero};

// Shewchuk's first-stage bounds, doubled.
const ORIENT2D_BOUND: f64 = 2.0 * 3.330_669_073_875_471_6e-16;
const ORIENT3D_BOUND: f64 = 2.0 * 7.771_561_172_376_103e-16;
const INCIRCLE_BOUND: f64 = 2.0 * 1.110_223_024_625_156_8e-15;

/// Big-integer images of a set of `f64` values, all scaled by `2^-exp`.
struct Scaled {
    ints: Vec<BigInt>,
    exp: i32,
}

fn scale(values: &[f64]) -> Scaled {
    let decoded: Vec<(u64, i16, i8)> = values.iter().map(|v| v.integer_decode()).collect();
    let exp = decoded
        .iter()
        .filter(|(m, _, _)| *m != 0)
        .map(|&(_, e, _)| e as i32)
        .min()
        .unwrap_or(0);
    let ints = decoded
        .iter()
        .map(|&(m, e, s)| {
            if m == 0 {
                return BigInt::zero();
            }
            let v = BigInt::from(m) << ((e as i32 - exp) as usize);
            if s < 0 {
                -v
            } else {
                v
            }
        })
        .collect();
    Scaled { ints, exp }
}

/// `x · 2^e` without intermediate overflow.
fn ldexp(mut x: f64, mut e: i32) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e)
}

/// Nearest `f64` to `v · 2^e`.
fn big_to_f64(v: &BigInt, e: i32) -> f64 {
    let bits = v.bits() as i32;
    let shift = (bits - 64).max(0);
    let head = (v >> (shift as usize)).to_f64().unwrap_or(0.0);
    ldexp(head, e + shift)
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Twice the signed area of `(a, b, c)`: positive iff counter-clockwise.
pub fn orient2d(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    let left = (a[0] - c[0]) * (b[1] - c[1]);
    let right = (a[1] - c[1]) * (b[0] - c[0]);
    let det = left - right;
    if det.abs() > ORIENT2D_BOUND * (left.abs() + right.abs()) {
        return det;
    }

    let s = scale(&[a[0], a[1], b[0], b[1], c[0], c[1]]);
    let [ax, ay, bx, by, cx, cy] = <[BigInt; 6]>::try_from(s.ints).unwrap();
    let exact = (&ax - &cx) * (&by - &cy) - (&ay - &cy) * (&bx - &cx);
    big_to_f64(&exact, 2 * s.exp)
}

pub fn orient2d_sign(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> i8 {
    sign(orient2d(a, b, c))
}

/// Positive iff `d` lies below the plane of `(a, b, c)`, where "below"
/// means the side from which `a, b, c` appear counter-clockwise.
pub fn orient3d(a: [f64; 3], b: [f64; 3], c: [f64; 3], d: [f64; 3]) -> f64 {
    let (adx, ady, adz) = (a[0] - d[0], a[1] - d[1], a[2] - d[2]);
    let (bdx, bdy, bdz) = (b[0] - d[0], b[1] - d[1], b[2] - d[2]);
    let (cdx, cdy, cdz) = (c[0] - d[0], c[1] - d[1], c[2] - d[2]);

    let (bdxcdy, cdxbdy) = (bdx * cdy, cdx * bdy);
    let (cdxady, adxcdy) = (cdx * ady, adx * cdy);
    let (adxbdy, bdxady) = (adx * bdy, bdx * ady);

    let det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) + cdz * (adxbdy - bdxady);
    let permanent = (bdxcdy.abs() + cdxbdy.abs()) * adz.abs()
        + (cdxady.abs() + adxcdy.abs()) * bdz.abs()
        + (adxbdy.abs() + bdxady.abs()) * cdz.abs();
    if det.abs() > ORIENT3D_BOUND * permanent {
        return det;
    }

    let s = scale(&[a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2], d[0], d[1], d[2]]);
    let v = s.ints;
    let diff = |i: usize, j: usize| &v[i] - &v[j];
    let (adx, ady, adz) = (diff(0, 9), diff(1, 10), diff(2, 11));
    let (bdx, bdy, bdz) = (diff(3, 9), diff(4, 10), diff(5, 11));
    let (cdx, cdy, cdz) = (diff(6, 9), diff(7, 10), diff(8, 11));
    let exact = &adz * (&bdx * &cdy - &cdx * &bdy)
        + &bdz * (&cdx * &ady - &adx * &cdy)
        + &cdz * (&adx * &bdy - &bdx * &ady);
    big_to_f64(&exact, 3 * s.exp)
}

pub fn orient3d_sign(a: [f64; 3], b: [f64; 3], c: [f64; 3], d: [f64; 3]) -> i8 {
    sign(orient3d(a, b, c, d))
}

/// Positive iff `d` is strictly inside the circle through `a, b, c` when
/// those are counter-clockwise (the sign flips for clockwise input).
pub fn incircle(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> f64 {
    let (adx, ady) = (a[0] - d[0], a[1] - d[1]);
    let (bdx, bdy) = (b[0] - d[0], b[1] - d[1]);
    let (cdx, cdy) = (c[0] - d[0], c[1] - d[1]);

    let (bdxcdy, cdxbdy) = (bdx * cdy, cdx * bdy);
    let alift = adx * adx + ady * ady;
    let (cdxady, adxcdy) = (cdx * ady, adx * cdy);
    let blift = bdx * bdx + bdy * bdy;
    let (adxbdy, bdxady) = (adx * bdy, bdx * ady);
    let clift = cdx * cdx + cdy * cdy;

    let det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    let permanent = (bdxcdy.abs() + cdxbdy.abs()) * alift
        + (cdxady.abs() + adxcdy.abs()) * blift
        + (adxbdy.abs() + bdxady.abs()) * clift;
    if det.abs() > INCIRCLE_BOUND * permanent {
        return det;
    }

    let s = scale(&[a[0], a[1], b[0], b[1], c[0], c[1], d[0], d[1]]);
    let v = s.ints;
    let diff = |i: usize, j: usize| &v[i] - &v[j];
    let (adx, ady) = (diff(0, 6), diff(1, 7));
    let (bdx, bdy) = (diff(2, 6), diff(3, 7));
    let (cdx, cdy) = (diff(4, 6), diff(5, 7));
    let alift = &adx * &adx + &ady * &ady;
    let blift = &bdx * &bdx + &bdy * &bdy;
    let clift = &cdx * &cdx + &cdy * &cdy;
    let exact = alift * (&bdx * &cdy - &cdx * &bdy)
        + blift * (&cdx * &ady - &adx * &cdy)
        + clift * (&adx * &bdy - &bdx * &ady);
    if exact.is_zero() {
        return 0.0;
    }
    let out = big_to_f64(&exact, 4 * s.exp);
    // keep the sign even if the magnitude underflows
    if out == 0.0 {
        if exact.is_negative() {
            -f64::MIN_POSITIVE
        } else {
            f64::MIN_POSITIVE
        }
    } else {
        out
    }
}
