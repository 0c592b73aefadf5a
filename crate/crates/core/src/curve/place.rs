use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::model::CurveModel;
use crate::error::{Error, Result};
use crate::gf::irreducible::IrreducibleWalk;
use crate::gf::{roots, ExtField, Field, Poly};
use crate::guard;

/// A closed point: the Frobenius orbit of a point over F_{q^d}, stored as its
/// least member (by element index) in the canonical F_{q^d}; or the place at
/// infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurvePlace {
    Finite { degree: usize, x: Vec<u32>, y: Vec<u32> },
    Infinity,
}

impl CurvePlace {
    pub fn degree(&self) -> usize {
        match self {
            CurvePlace::Finite { degree, .. } => *degree,
            CurvePlace::Infinity => 1,
        }
    }

    pub fn residue_field(&self, curve: &CurveModel) -> ExtField {
        ExtField::canonical(Arc::clone(&curve.field), self.degree())
    }

    /// Sort key: degree, then coordinates by index, infinity last.
    pub fn key(&self, curve: &CurveModel) -> (usize, u128, u128) {
        match self {
            CurvePlace::Finite { degree, x, y } => {
                let k = self.residue_field(curve);
                (*degree, k.index_of(x), k.index_of(y))
            }
            CurvePlace::Infinity => (1, u128::MAX, u128::MAX),
        }
    }
}

impl fmt::Display for CurvePlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePlace::Finite { degree, x, y } => write!(f, "P{degree}({x:?}, {y:?})"),
            CurvePlace::Infinity => write!(f, "O"),
        }
    }
}

/// Roots `y0` of `y² + h(x0)·y - f(x0)` in `k`.
fn fiber_ys(curve: &CurveModel, k: &ExtField, x0: &[u32]) -> Vec<Vec<u32>> {
    let (hx, fx) = curve.eval_at(k, |c| k.embed(c), &x0.to_vec());
    let p = Poly::new(k, vec![k.neg(&fx), hx, k.one()]);
    roots::roots(k, &p)
}

/// Orbit size of `(x, y)` under Frobenius and its least member.
fn orbit(k: &ExtField, x: &[u32], y: &[u32]) -> (usize, Vec<u32>, Vec<u32>) {
    let key = |a: &Vec<u32>, b: &Vec<u32>| (k.index_of(a), k.index_of(b));
    let (mut cx, mut cy) = (x.to_vec(), y.to_vec());
    let mut best = (cx.clone(), cy.clone());
    let mut size = 0;
    loop {
        size += 1;
        cx = k.frobenius(&cx, 1);
        cy = k.frobenius(&cy, 1);
        if cx == x && cy == y {
            break;
        }
        if key(&cx, &cy) < key(&best.0, &best.1) {
            best = (cx.clone(), cy.clone());
        }
    }
    (size, best.0, best.1)
}

fn sort_places(curve: &CurveModel, v: &mut Vec<CurvePlace>) {
    v.sort_by_cached_key(|p| p.key(curve));
    v.dedup();
}

/// All places of degree `d`, sorted by coordinates, with infinity last.
pub fn enumerate_curve_places(curve: &CurveModel, d: usize) -> Result<Vec<CurvePlace>> {
    if d == 0 {
        return Ok(Vec::new());
    }
    let k = ExtField::canonical(Arc::clone(&curve.field), d);
    let mut out = Vec::new();
    for x0 in k.elements()? {
        for y0 in fiber_ys(curve, &k, &x0) {
            let (size, rx, ry) = orbit(&k, &x0, &y0);
            if size == d && rx == x0 && ry == y0 {
                out.push(CurvePlace::Finite { degree: d, x: x0.clone(), y: y0 });
            }
        }
    }
    sort_places(curve, &mut out);
    if d == 1 {
        out.push(CurvePlace::Infinity);
    }
    Ok(out)
}

/// Places of degree `d` lying over the x-place `pi` (monic irreducible).
pub fn places_over_of_degree(curve: &CurveModel, pi: &Poly<u32>, d: usize) -> Vec<CurvePlace> {
    let k = ExtField::canonical(Arc::clone(&curve.field), d);
    let mut out = Vec::new();
    for x0 in roots::roots(&k, &k.embed_poly(pi)) {
        for y0 in fiber_ys(curve, &k, &x0) {
            let (size, rx, ry) = orbit(&k, &x0, &y0);
            if size == d {
                out.push(CurvePlace::Finite { degree: d, x: rx, y: ry });
            }
        }
    }
    sort_places(curve, &mut out);
    out
}

/// Every place over the x-place `pi`: one or two of degree `deg pi`, or one of twice that degree.
pub fn places_over(curve: &CurveModel, pi: &Poly<u32>) -> Vec<CurvePlace> {
    let e = pi.deg().unwrap();
    let low = places_over_of_degree(curve, pi, e);
    if low.is_empty() {
        places_over_of_degree(curve, pi, 2 * e)
    } else {
        low
    }
}

/// Minimal polynomial over F_q of the x-coordinate of a finite place.
pub fn x_min_poly(curve: &CurveModel, p: &CurvePlace) -> Option<Poly<u32>> {
    match p {
        CurvePlace::Finite { x, .. } => Some(p.residue_field(curve).min_poly(x)),
        CurvePlace::Infinity => None,
    }
}

/// A place of degree `n` found by walking monic irreducibles in lexicographic
/// order, first of degree `n` and then of degree `n/2`, and taking the least
/// place of degree `n` above the first one that has any.
pub fn find_degree_place(curve: &CurveModel, n: usize) -> Result<CurvePlace> {
    let limit = guard::limit();
    let mut tried = 0u128;
    let degrees = if n % 2 == 0 { vec![n, n / 2] } else { vec![n] };
    for e in degrees {
        for pi in IrreducibleWalk::new(curve.field.as_ref(), e) {
            tried += 1;
            if tried > limit {
                return Err(Error::Guard { requested: tried, limit });
            }
            if let Some(p) = places_over_of_degree(curve, &pi, n).into_iter().next() {
                return Ok(p);
            }
        }
    }
    Err(Error::SearchExhausted(tried as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::model::CurveShape;
    use crate::gf::GaloisField;

    fn curve(q: u64, a: [u32; 5]) -> CurveModel {
        CurveModel::weierstrass(Arc::new(GaloisField::of_order(q).unwrap()), a).unwrap()
    }

    #[test]
    fn fermat_curve_over_f4_is_maximal() {
        let c = curve(4, [0, 0, 1, 0, 1]);
        let p = enumerate_curve_places(&c, 1).unwrap();
        assert_eq!(p.len(), 9);
        assert_eq!(*p.last().unwrap(), CurvePlace::Infinity);
    }

    #[test]
    fn ternary_curve_counts() {
        let c = curve(3, [0, 0, 0, 1, 2]);
        assert_eq!(enumerate_curve_places(&c, 1).unwrap().len(), 4);
        let p2 = enumerate_curve_places(&c, 2).unwrap();
        assert!(p2.len() >= 6);
        assert_eq!(p2.len(), 6);
        for p in &p2 {
            if let CurvePlace::Finite { x, y, .. } = p {
                let k = p.residue_field(&c);
                assert_eq!(k.frobenius(x, 2), *x);
                assert_eq!(k.frobenius(y, 2), *y);
            }
        }
    }

    #[test]
    fn hyperelliptic_has_33_rational_places() {
        let f = Arc::new(GaloisField::of_order(16).unwrap());
        let c = CurveModel::new(f, CurveShape::Y2PlusYEqX5, 2).unwrap();
        assert_eq!(enumerate_curve_places(&c, 1).unwrap().len(), 33);
    }

    #[test]
    fn fibers_have_total_degree_two() {
        let c = curve(3, [0, 0, 0, 1, 2]);
        for pi in crate::gf::irreducibles(c.field.as_ref(), 2).unwrap() {
            let over = places_over(&c, &pi);
            let total: usize = over.iter().map(|p| p.degree()).sum();
            let ramified = over.len() == 1 && over[0].degree() == 2;
            assert!(total == 4 || ramified, "{pi:?}");
            for p in &over {
                assert_eq!(x_min_poly(&c, p).unwrap(), pi);
            }
        }
    }

    #[test]
    fn degree_place_found() {
        let c = curve(3, [0, 0, 0, 1, 2]);
        let q = find_degree_place(&c, 9).unwrap();
        assert_eq!(q.degree(), 9);
        let pi = x_min_poly(&c, &q).unwrap();
        assert_eq!(pi.deg(), Some(9));
    }
}
