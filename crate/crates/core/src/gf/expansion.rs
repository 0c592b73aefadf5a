//! Local expansions of rational functions on the projective line.

use std::sync::Arc;

use super::ext::ExtField;
use super::field::Field;
use super::galois::GaloisField;
use super::irreducible;
use super::poly::Poly;
use super::series::Series;
use crate::error::{Error, Result};

/// Expansion coefficients in the residue field (polynomials of degree below
/// the degree of the place) together with the pole order that was factored out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExpansion {
    pub coeffs: Vec<Poly<u32>>,
    /// At infinity, the function was multiplied by `x^(-pole_order)` first.
    pub pole_order: usize,
}

/// `p(head + s)` as a power series in `s`, exact up to `s^prec`.
fn shift_series<F: Field>(f: &F, p: &Poly<F::Elem>, head: &F::Elem, prec: usize) -> Series<F::Elem> {
    let mut c = vec![f.zero(); prec.max(1)];
    c[0] = head.clone();
    if prec > 1 {
        c[1] = f.one();
    }
    let x = Series { start: 0, coeffs: c };
    x.eval_poly(f, p, prec as i64).truncate(prec as i64)
}

/// `p(s)` for a power series `s` with positive valuation, `p` given by its coefficients.
fn compose<F: Field>(f: &F, p: &[F::Elem], s: &Series<F::Elem>, prec: usize) -> Series<F::Elem> {
    let mut acc = Series::zero(prec as i64);
    for c in p.iter().rev() {
        acc = acc.mul(f, s).add(f, &Series::constant(f, c.clone(), prec as i64));
    }
    acc.truncate(prec as i64)
}

/// First `order` coefficients of `num/den` in the local parameter at `place`:
/// the irreducible itself at a finite place, `1/x` at infinity (`place = None`).
pub fn local_expansion(
    field: &Arc<GaloisField>,
    num: &Poly<u32>,
    den: &Poly<u32>,
    place: Option<&Poly<u32>>,
    order: usize,
) -> Result<LocalExpansion> {
    let g = field.as_ref();
    if den.is_zero() {
        return Err(Error::Pole);
    }
    let common = num.gcd(g, den);
    let (num, den) = if common.is_zero() {
        (num.clone(), den.clone())
    } else {
        (num.divrem(g, &common).0, den.divrem(g, &common).0)
    };
    match place {
        None => {
            let a = num.deg().unwrap_or(0);
            let b = den.deg().unwrap();
            let m = a.saturating_sub(b);
            let shift = (b + m - a) as i64;
            let rev = |p: &Poly<u32>, len: usize| {
                let mut c: Vec<u32> = p.coeffs.clone();
                c.resize(len + 1, 0);
                c.reverse();
                Series { start: 0, coeffs: c.into_iter().chain(std::iter::repeat(0)).take(order).collect() }
            };
            let nr = rev(&num, a);
            let dr = rev(&den, b);
            let s = nr.div(g, &dr).ok_or(Error::Pole)?.shift(shift);
            let coeffs = s.head(g, order).into_iter().map(|c| Poly::new(g, vec![c])).collect();
            Ok(LocalExpansion { coeffs, pole_order: m })
        }
        Some(pi) => {
            if !pi.is_monic(g) || !irreducible::is_irreducible(g, pi) {
                return Err(Error::InvalidField("place must be a monic irreducible".into()));
            }
            if den.rem(g, pi).is_zero() {
                return Err(Error::Pole);
            }
            let k = ExtField::new_unchecked(Arc::clone(field), pi.clone());
            let alpha = k.generator();
            let prec = order + 1;
            let num_s = shift_series(&k, &k.embed_poly(&num), &alpha, prec);
            let den_s = shift_series(&k, &k.embed_poly(&den), &alpha, prec);
            let f_s = num_s.div(&k, &den_s).ok_or(Error::Pole)?;
            // t = pi(alpha + s) = s * u(s); invert to s = s(t)
            let pi_s = shift_series(&k, &k.embed_poly(pi), &alpha, prec + 1);
            let u = Series { start: 0, coeffs: pi_s.coeffs[1..].to_vec() };
            let t = Series::monomial(&k, k.one(), 1, prec as i64);
            let mut s = t.clone();
            for _ in 0..prec {
                let us = compose(&k, &u.coeffs, &s, prec);
                s = t.div(&k, &us).ok_or(Error::Pole)?.truncate(prec as i64);
            }
            let f_t = compose(&k, &f_s.head(&k, prec), &s, prec);
            let coeffs = f_t.head(&k, order).iter().map(|c| k.to_poly(c)).collect();
            Ok(LocalExpansion { coeffs, pole_order: 0 })
        }
    }
}
