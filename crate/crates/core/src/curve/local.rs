//! Power-series parametrizations of a curve around a place.

use super::model::CurveModel;
use super::place::CurvePlace;
use crate::gf::{ExtField, Field, Poly, Series};

/// Which function serves as uniformizer at a place.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Uniformizer {
    /// `x - x0`.
    X,
    /// `y - y0`, used where the place ramifies over the x-line.
    Y,
    /// `x^g / y` at infinity.
    Infinity,
}

/// `x` and `y` as Laurent series in the uniformizer, with coefficients in the
/// residue field, each known to `rel` terms past its leading exponent.
pub struct Locus {
    pub k: ExtField,
    pub uniformizer: Uniformizer,
    pub x: Series<Vec<u32>>,
    pub y: Series<Vec<u32>>,
    pub rel: i64,
}

fn lift(k: &ExtField, p: &Poly<u32>) -> Poly<Vec<u32>> {
    p.map(k, |c| k.embed(*c))
}

impl Locus {
    pub fn new(curve: &CurveModel, place: &CurvePlace, rel: i64) -> Self {
        let k = place.residue_field(curve);
        match place {
            CurvePlace::Finite { x, y, .. } => Self::finite(curve, k, x, y, rel),
            CurvePlace::Infinity => Self::infinity(curve, k, rel),
        }
    }

    fn finite(curve: &CurveModel, k: ExtField, x0: &[u32], y0: &[u32], rel: i64) -> Self {
        let h = lift(&k, &curve.h);
        let f = lift(&k, &curve.f);
        let (x0, y0) = (x0.to_vec(), y0.to_vec());
        let two = k.from_int(2);
        let dy = k.add(&k.mul(&two, &y0), &h.eval(&k, &x0));
        let residual = |x: &Series<Vec<u32>>, y: &Series<Vec<u32>>| {
            let hx = x.eval_poly(&k, &h, rel);
            let fx = x.eval_poly(&k, &f, rel);
            y.mul(&k, y).add(&k, &hx.mul(&k, y)).sub(&k, &fx).truncate(rel)
        };
        let line = |c: &Vec<u32>| {
            let mut s = Series::constant(&k, c.clone(), rel);
            if rel > 1 {
                s.coeffs[1] = k.one();
            }
            s
        };
        let (uniformizer, x, y) = if !k.is_zero(&dy) {
            let x = line(&x0);
            let mut y = Series::constant(&k, y0.clone(), rel);
            let c = k.inv(&dy).unwrap();
            for _ in 0..rel {
                let r = residual(&x, &y);
                y = y.sub(&k, &r.scale(&k, &c));
            }
            (Uniformizer::X, x, y)
        } else {
            let dx = k.sub(&k.mul(&h.derivative(&k).eval(&k, &x0), &y0), &f.derivative(&k).eval(&k, &x0));
            let c = k.inv(&dx).expect("smooth model");
            let y = line(&y0);
            let mut x = Series::constant(&k, x0.clone(), rel);
            for _ in 0..rel {
                let r = residual(&x, &y);
                x = x.sub(&k, &r.scale(&k, &c));
            }
            (Uniformizer::Y, x, y)
        };
        Locus { k, uniformizer, x, y, rel }
    }

    fn infinity(curve: &CurveModel, k: ExtField, rel: i64) -> Self {
        // With x = 1/z and y = x^g / t the equation becomes z (1 + t H(z)) = t² F(z),
        // H and F the coefficient reversals of h and f.
        let g = curve.genus;
        let rev = |p: &Poly<u32>, len: usize| {
            let mut c: Vec<Vec<u32>> = (0..len).map(|i| k.embed(p.coeff(curve.field.as_ref(), i))).collect();
            c.reverse();
            Poly::new(&k, c)
        };
        let hr = rev(&curve.h, g + 1);
        let fr = rev(&curve.f, 2 * g + 2);
        let zprec = rel + 2;
        let t = Series::monomial(&k, k.one(), 1, zprec + 4);
        let t2 = Series::monomial(&k, k.one(), 2, zprec + 4);
        let one = Series::constant(&k, k.one(), zprec + 4);
        let mut z = Series::zero(zprec);
        for _ in 0..(zprec / 2 + 2) {
            let num = t2.mul(&k, &z.eval_poly(&k, &fr, zprec + 4));
            let den = one.add(&k, &t.mul(&k, &z.eval_poly(&k, &hr, zprec + 4)));
            z = num.div(&k, &den).unwrap().truncate(zprec);
        }
        let x = z.inv(&k).unwrap();
        let mut xg = Series::constant(&k, k.one(), rel);
        for _ in 0..g {
            xg = xg.mul(&k, &x);
        }
        let y = xg.shift(-1);
        Locus { k, uniformizer: Uniformizer::Infinity, x, y, rel }
    }

    /// `a(x) + b(x)·y` as a series.
    pub fn eval(&self, a: &Poly<u32>, b: &Poly<u32>) -> Series<Vec<u32>> {
        let k = &self.k;
        let cap = self.rel + 64;
        let ak = a.map(k, |c| k.embed(*c));
        let bk = b.map(k, |c| k.embed(*c));
        let sa = if a.is_zero() { Series::zero(cap) } else { self.x.eval_poly(k, &ak, cap) };
        if b.is_zero() {
            return sa;
        }
        sa.add(k, &self.x.eval_poly(k, &bk, cap).mul(k, &self.y))
    }
}
