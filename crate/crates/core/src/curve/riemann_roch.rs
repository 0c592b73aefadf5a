use std::collections::BTreeSet;

use super::divisor::CurveDivisor;
use super::function::{expand_all, FunctionElement};
use super::model::CurveModel;
use super::place::{places_over, x_min_poly, CurvePlace};
use crate::error::Result;
use crate::gf::irreducible::IrreducibleWalk;
use crate::gf::Poly;
use crate::guard;
use crate::linalg::Mat;

/// Basis of L(m·O) ordered by pole order: `x^i` (order `2i`) and `x^i y`
/// (order `2i + 2g + 1`).
pub fn pole_basis(curve: &CurveModel, m: i64) -> Vec<FunctionElement> {
    let f = curve.field.as_ref();
    let odd = 2 * curve.genus as i64 + 1;
    (0..=m)
        .filter_map(|o| {
            if o % 2 == 0 {
                Some(FunctionElement::polynomial(curve, Poly::monomial(f, 1, (o / 2) as usize), Poly::zero()))
            } else if o >= odd {
                Some(FunctionElement::polynomial(curve, Poly::zero(), Poly::monomial(f, 1, ((o - odd) / 2) as usize)))
            } else {
                None
            }
        })
        .collect()
}

/// Rows forcing the first `r` expansion coefficients at `place` to vanish.
fn vanishing_rows(curve: &CurveModel, funcs: &[FunctionElement], place: &CurvePlace, r: i64) -> Mat {
    let k = place.residue_field(curve);
    let d = place.degree();
    let series = expand_all(curve, funcs, place, r);
    let mut m = Mat::zeros(d * r as usize, funcs.len());
    for (j, s) in series.iter().enumerate() {
        for e in 0..r {
            let c = s.coeff(&k, e);
            for (i, v) in c.iter().enumerate() {
                m.set(e as usize * d + i, j, *v);
            }
        }
    }
    m
}

/// A basis of L(D) = { f : div(f) + D ≥ 0 }.
///
/// Functions with poles at finite places are written `g / φ` where `φ` is a
/// product of powers of the x-minimal polynomials of those places; `g` then
/// runs over a pole-order space at infinity cut down by vanishing conditions.
pub fn riemann_roch_basis(curve: &CurveModel, d: &CurveDivisor) -> Result<Vec<FunctionElement>> {
    let f = curve.field.as_ref();
    guard::check(d.terms().map(|(p, c)| c.unsigned_abs() as u128 * p.degree() as u128).sum())?;
    let mut phi = Poly::one(f);
    let mut places: BTreeSet<CurvePlace> = BTreeSet::new();
    for (p, c) in d.terms() {
        if *p == CurvePlace::Infinity {
            continue;
        }
        places.insert(p.clone());
        if c > 0 {
            let pi = x_min_poly(curve, p).unwrap();
            phi = phi.mul(f, &pi.pow(f, c as usize));
            places.extend(places_over(curve, &pi));
        }
    }
    let m = d.coeff(&CurvePlace::Infinity) + 2 * phi.deg().unwrap() as i64;
    if m < 0 {
        return Ok(Vec::new());
    }
    let ambient = pole_basis(curve, m);
    let phi_fn = FunctionElement::polynomial(curve, phi.clone(), Poly::zero());
    let mut constraints = Mat::zeros(0, ambient.len());
    for p in &places {
        let r = phi_fn.valuation(curve, p).unwrap() - d.coeff(p);
        if r > 0 {
            constraints = constraints.vstack(&vanishing_rows(curve, &ambient, p, r));
        }
    }
    let kernel = if constraints.rows == 0 {
        (0..ambient.len())
            .map(|i| (0..ambient.len()).map(|j| u32::from(i == j)).collect())
            .collect()
    } else {
        constraints.kernel(f)
    };
    Ok(kernel
        .iter()
        .map(|v| {
            let g = FunctionElement::combine(curve, v, &ambient);
            FunctionElement::new(curve, g.a, g.b, phi.clone())
        })
        .collect())
}

/// dim L(D).
pub fn dimension(curve: &CurveModel, d: &CurveDivisor) -> Result<usize> {
    riemann_roch_basis(curve, d).map(|b| b.len())
}

/// Whether `g` lies in L(D), checked at every place of D and every pole of `g`.
pub fn in_space(curve: &CurveModel, g: &FunctionElement, d: &CurveDivisor) -> bool {
    if g.is_zero() {
        return true;
    }
    let fr = curve.field.as_ref();
    let mut places: BTreeSet<CurvePlace> = d.terms().map(|(p, _)| p.clone()).collect();
    places.insert(CurvePlace::Infinity);
    let mut den = g.den.clone();
    // finite poles lie over the irreducible factors of the denominator
    let mut deg = 1;
    while den.deg().unwrap_or(0) > 0 {
        for pi in IrreducibleWalk::new(fr, deg) {
            while den.rem(fr, &pi).is_zero() {
                den = den.divrem(fr, &pi).0;
                places.extend(places_over(curve, &pi));
            }
            if den.deg() == Some(0) {
                break;
            }
        }
        deg += 1;
    }
    places.iter().all(|p| g.valuation(curve, p).unwrap() + d.coeff(p) >= 0)
}
