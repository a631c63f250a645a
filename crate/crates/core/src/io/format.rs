use crate::geometry::Real;

/// How coordinates are printed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Precision {
    /// Shortest decimal that reads back to the same value.
    #[default]
    Shortest,
    /// Six significant digits in the style of C's `%g`.
    Compat,
}

impl Precision {
    pub fn format(self, v: Real) -> String {
        match self {
            Precision::Shortest => format_shortest(v),
            Precision::Compat => format_compat(v as f64),
        }
    }
}

/// Plain notation for moderate magnitudes, exponent notation otherwise.
pub fn format_shortest(v: Real) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// `%g` with six significant digits.
pub fn format_compat(v: f64) -> String {
    const DIGITS: i32 = 6;
    if v == 0.0 || !v.is_finite() {
        return match v {
            x if x.is_nan() => "nan".into(),
            x if x.is_infinite() && x > 0.0 => "inf".into(),
            x if x.is_infinite() => "-inf".into(),
            x if x.is_sign_negative() => "-0".into(),
            _ => "0".into(),
        };
    }
    // exponent after rounding to six digits
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if exp < -4 || exp >= DIGITS {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
