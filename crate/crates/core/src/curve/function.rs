use std::fmt;

use super::local::Locus;
use super::model::CurveModel;
use super::place::CurvePlace;
use crate::gf::{Field, Poly, Series};

/// `(a(x) + b(x)·y) / den(x)` with `den` monic and `gcd(a, b, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionElement {
    pub a: Poly<u32>,
    pub b: Poly<u32>,
    pub den: Poly<u32>,
}

impl FunctionElement {
    pub fn new(curve: &CurveModel, a: Poly<u32>, b: Poly<u32>, den: Poly<u32>) -> Self {
        let f = curve.field.as_ref();
        assert!(!den.is_zero(), "zero denominator");
        if a.is_zero() && b.is_zero() {
            return Self::zero(curve);
        }
        let g = a.gcd(f, &b).gcd(f, &den).monic(f);
        let (a, b, den) = if g.deg() == Some(0) {
            (a, b, den)
        } else {
            (a.divrem(f, &g).0, b.divrem(f, &g).0, den.divrem(f, &g).0)
        };
        let li = f.inv(den.lead().unwrap()).unwrap();
        FunctionElement { a: a.scale(f, &li), b: b.scale(f, &li), den: den.scale(f, &li) }
    }

    pub fn polynomial(curve: &CurveModel, a: Poly<u32>, b: Poly<u32>) -> Self {
        Self::new(curve, a, b, Poly::one(curve.field.as_ref()))
    }

    pub fn zero(curve: &CurveModel) -> Self {
        FunctionElement { a: Poly::zero(), b: Poly::zero(), den: Poly::one(curve.field.as_ref()) }
    }

    pub fn constant(curve: &CurveModel, c: u32) -> Self {
        Self::polynomial(curve, Poly::constant(curve.field.as_ref(), c), Poly::zero())
    }

    pub fn x(curve: &CurveModel) -> Self {
        Self::polynomial(curve, Poly::x(curve.field.as_ref()), Poly::zero())
    }

    pub fn y(curve: &CurveModel) -> Self {
        Self::polynomial(curve, Poly::zero(), Poly::one(curve.field.as_ref()))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, curve: &CurveModel, o: &Self) -> Self {
        let f = curve.field.as_ref();
        let a = self.a.mul(f, &o.den).add(f, &o.a.mul(f, &self.den));
        let b = self.b.mul(f, &o.den).add(f, &o.b.mul(f, &self.den));
        Self::new(curve, a, b, self.den.mul(f, &o.den))
    }

    pub fn scale(&self, curve: &CurveModel, c: u32) -> Self {
        let f = curve.field.as_ref();
        Self::new(curve, self.a.scale(f, &c), self.b.scale(f, &c), self.den.clone())
    }

    pub fn sub(&self, curve: &CurveModel, o: &Self) -> Self {
        let neg1 = curve.field.as_ref().from_int(-1);
        self.add(curve, &o.scale(curve, neg1))
    }

    /// Product, reducing `y²` to `f - h·y`.
    pub fn mul(&self, curve: &CurveModel, o: &Self) -> Self {
        let f = curve.field.as_ref();
        let bb = self.b.mul(f, &o.b);
        let a = self.a.mul(f, &o.a).add(f, &bb.mul(f, &curve.f));
        let b = self.a.mul(f, &o.b).add(f, &o.a.mul(f, &self.b)).sub(f, &bb.mul(f, &curve.h));
        Self::new(curve, a, b, self.den.mul(f, &o.den))
    }

    /// Linear combination `Σ c_i·f_i`.
    pub fn combine(curve: &CurveModel, coeffs: &[u32], funcs: &[Self]) -> Self {
        coeffs
            .iter()
            .zip(funcs)
            .filter(|(c, _)| **c != 0)
            .fold(Self::zero(curve), |acc, (c, g)| acc.add(curve, &g.scale(curve, *c)))
    }

    /// Pole order at infinity of the numerator `a + b·y`.
    pub fn numerator_pole_order(&self, curve: &CurveModel) -> i64 {
        let pa = self.a.deg().map_or(-1, |d| 2 * d as i64);
        let pb = self.b.deg().map_or(-1, |d| 2 * d as i64 + 2 * curve.genus as i64 + 1);
        pa.max(pb)
    }

    /// Exact valuation at infinity; `None` for the zero function.
    pub fn valuation_at_infinity(&self, curve: &CurveModel) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(2 * self.den.deg().unwrap() as i64 - self.numerator_pole_order(curve))
    }

    /// Expansion using a precomputed locus; the result may be known to less
    /// precision than the locus when the denominator vanishes at the place.
    pub fn expand_with(&self, loc: &Locus) -> Option<Series<Vec<u32>>> {
        if self.is_zero() {
            return Some(Series::zero(loc.rel));
        }
        let num = loc.eval(&self.a, &self.b);
        if self.den.deg() == Some(0) {
            return Some(num);
        }
        let den = loc.eval(&self.den, &Poly::zero());
        num.div(&loc.k, &den)
    }

    /// Valuation at a place.
    pub fn valuation(&self, curve: &CurveModel, place: &CurvePlace) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        if *place == CurvePlace::Infinity {
            return self.valuation_at_infinity(curve);
        }
        let upto = self.numerator_pole_order(curve) + 1;
        let s = expand_all(curve, std::slice::from_ref(self), place, upto).pop().unwrap();
        s.valuation(&place.residue_field(curve))
    }
}

/// Expansions of several functions at one place, each known at least below
/// exponent `upto`.
pub fn expand_all(curve: &CurveModel, funcs: &[FunctionElement], place: &CurvePlace, upto: i64) -> Vec<Series<Vec<u32>>> {
    let worst_pole = funcs.iter().map(|g| g.numerator_pole_order(curve)).max().unwrap_or(0).max(0);
    let worst_den = funcs.iter().map(|g| g.den.deg().unwrap() as i64).max().unwrap_or(0);
    let mut rel = match place {
        CurvePlace::Infinity => upto + worst_pole + 2,
        CurvePlace::Finite { .. } => upto.max(1) + 4 * worst_den + 2,
    }
    .max(2);
    loop {
        let loc = Locus::new(curve, place, rel);
        let out: Option<Vec<_>> = funcs
            .iter()
            .map(|g| g.expand_with(&loc).filter(|s| s.prec() >= upto))
            .collect();
        if let Some(v) = out {
            return v;
        }
        rel *= 2;
        assert!(rel < 1 << 16, "expansion precision runaway");
    }
}

impl fmt::Display for FunctionElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => "0".to_string(),
            (false, true) => format!("{}", self.a.display()),
            (true, false) => format!("({})y", self.b.display()),
            (false, false) => format!("{} + ({})y", self.a.display(), self.b.display()),
        };
        if self.den.deg() == Some(0) {
            write!(out, "{num}")
        } else {
            write!(out, "({num}) / ({})", self.den.display())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::place::enumerate_curve_places;
    use crate::gf::GaloisField;
    use std::sync::Arc;

    fn curve() -> CurveModel {
        CurveModel::weierstrass(Arc::new(GaloisField::of_order(3).unwrap()), [0, 0, 0, 1, 2]).unwrap()
    }

    #[test]
    fn y_squared_reduces() {
        let c = curve();
        let y = FunctionElement::y(&c);
        let y2 = y.mul(&c, &y);
        assert_eq!(y2, FunctionElement::polynomial(&c, c.f.clone(), Poly::zero()));
        assert_eq!(y2.to_string(), "x^3 + x + 2");
    }

    #[test]
    fn normal_form_cancels_common_factors() {
        let c = curve();
        let f = c.field.as_ref();
        let p = Poly::new(f, vec![1, 1]);
        let e = FunctionElement::new(&c, p.mul(f, &p), p.clone(), p.scale(f, &2));
        assert_eq!(e.den, Poly::one(f));
        assert_eq!(e.b, Poly::new(f, vec![2]));
    }

    #[test]
    fn valuations_of_coordinates() {
        let c = curve();
        let x = FunctionElement::x(&c);
        let y = FunctionElement::y(&c);
        assert_eq!(x.valuation(&c, &CurvePlace::Infinity), Some(-2));
        assert_eq!(y.valuation(&c, &CurvePlace::Infinity), Some(-3));
        // y vanishes to order 1 at the ramified point (2, 0) and x - 2 to order 2
        let p = CurvePlace::Finite { degree: 1, x: vec![2], y: vec![0] };
        assert_eq!(y.valuation(&c, &p), Some(1));
        let xm2 = x.sub(&c, &FunctionElement::constant(&c, 2));
        assert_eq!(xm2.valuation(&c, &p), Some(2));
        let inv = FunctionElement::new(&c, Poly::one(c.field.as_ref()), Poly::zero(), xm2.a.clone());
        assert_eq!(inv.valuation(&c, &p), Some(-2));
    }

    #[test]
    fn valuation_is_additive() {
        let c = curve();
        let x = FunctionElement::x(&c);
        let y = FunctionElement::y(&c);
        let g = x.add(&c, &y).add(&c, &FunctionElement::constant(&c, 1));
        let h = y.mul(&c, &x).sub(&c, &FunctionElement::constant(&c, 2));
        for p in enumerate_curve_places(&c, 1).unwrap() {
            let (vg, vh) = (g.valuation(&c, &p).unwrap(), h.valuation(&c, &p).unwrap());
            assert_eq!(g.mul(&c, &h).valuation(&c, &p), Some(vg + vh));
        }
    }
}
