//! Bound values: exact rationals, or reals when a logarithm enters.

use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

pub type Rational = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Ratio::new(n, d)
}

pub fn int(n: i128) -> Rational {
    Ratio::from_integer(n)
}

/// Parses `"a/b"`, `"a.bc"` or `"a"` exactly.
pub fn parse_exact(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let d: i128 = d.trim().parse().ok()?;
        let n: i128 = n.trim().parse().ok()?;
        return if d == 0 { None } else { Some(rat(n, d)) };
    }
    match s.split_once('.') {
        Some((w, f)) if !f.is_empty() && f.bytes().all(|b| b.is_ascii_digit()) => {
            let scale = 10i128.checked_pow(f.len() as u32)?;
            let whole: i128 = if w.is_empty() || w == "-" { 0 } else { w.parse().ok()? };
            let frac: i128 = f.parse().ok()?;
            let sign = if w.starts_with('-') { -1 } else { 1 };
            Some(int(whole) + rat(sign * frac, scale))
        }
        Some(_) => None,
        None => s.parse().ok().map(int),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundValue {
    Exact(Rational),
    Real(f64),
}

impl BoundValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            BoundValue::Real(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<Rational> {
        match self {
            BoundValue::Exact(r) => Some(*r),
            BoundValue::Real(_) => None,
        }
    }

    /// Rounded to `sig` significant digits, trailing zeros trimmed.
    pub fn render_sig(&self, sig: usize) -> String {
        let x = self.to_f64();
        if x == 0.0 || !x.is_finite() {
            return format!("{x}");
        }
        let mag = x.abs().log10().floor() as i32;
        let decimals = (sig as i32 - 1 - mag).max(0) as usize;
        match self {
            BoundValue::Exact(r) => trim(&round_rational(r, decimals)),
            BoundValue::Real(_) => trim(&format!("{x:.decimals$}")),
        }
    }

    /// Exact form when rational ("87/19"), else the 4-digit decimal.
    pub fn render_exact(&self) -> String {
        match self {
            BoundValue::Exact(r) if r.is_integer() => r.numer().to_string(),
            BoundValue::Exact(r) => format!("{}/{}", r.numer(), r.denom()),
            BoundValue::Real(_) => self.render_sig(4),
        }
    }

    /// Whether this value prints as `printed`: equality for fractions,
    /// half-up rounding at the printed number of decimals otherwise.
    pub fn matches_printed(&self, printed: &str) -> bool {
        if printed.contains('/') {
            return parse_exact(printed).is_some_and(|r| self.exact() == Some(r));
        }
        let decimals = printed.split_once('.').map_or(0, |(_, f)| f.len());
        match self {
            BoundValue::Exact(r) => round_rational(r, decimals) == printed,
            BoundValue::Real(x) => format!("{x:.decimals$}") == printed,
        }
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Half-up decimal rounding of a rational, computed exactly.
pub fn round_rational(r: &Rational, decimals: usize) -> String {
    let scale = 10i128.pow(decimals as u32);
    let scaled = r.abs() * int(scale);
    let rounded = (scaled + rat(1, 2)).floor().to_integer();
    let sign = if r.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if decimals == 0 {
        return format!("{sign}{rounded}");
    }
    format!("{sign}{}.{:0width$}", rounded / scale, rounded % scale, width = decimals)
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_exact())
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render_exact())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_exact_and_half_up() {
        assert_eq!(round_rational(&rat(16, 3), 2), "5.33");
        assert_eq!(round_rational(&rat(27, 4), 0), "7");
        assert_eq!(round_rational(&rat(1, 8), 2), "0.13");
        assert_eq!(round_rational(&rat(-1, 2), 0), "-1");
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_exact("4.5"), Some(rat(9, 2)));
        assert_eq!(parse_exact("87/19"), Some(rat(87, 19)));
        assert_eq!(parse_exact("-0.25"), Some(rat(-1, 4)));
        assert_eq!(parse_exact("7"), Some(int(7)));
        assert_eq!(parse_exact("1/0"), None);
        assert_eq!(parse_exact("x"), None);
    }

    #[test]
    fn printed_forms() {
        let v = BoundValue::Exact(rat(87, 19));
        assert!(v.matches_printed("87/19"));
        assert!(v.matches_printed("4.579"));
        assert!(!v.matches_printed("4.58x"));
        assert_eq!(v.render_sig(4), "4.579");
        assert_eq!(BoundValue::Exact(int(10)).render_sig(4), "10");
        assert_eq!(BoundValue::Exact(rat(1933, 250)).render_sig(4), "7.732");
        assert!(BoundValue::Real(5.2129).matches_printed("5.21"));
    }
}
