//! The relative extension F_q[z]/(h) over a table-driven base field.

use std::sync::Arc;

use super::field::Field;
use super::galois::GaloisField;
use super::irreducible;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::guard;

#[derive(Clone, Debug)]
pub struct ExtField {
    base: Arc<GaloisField>,
    modulus: Poly<u32>,
    d: usize,
}

impl ExtField {
    pub fn new(base: Arc<GaloisField>, modulus: Poly<u32>) -> Result<Self> {
        if !modulus.is_monic(base.as_ref()) || !irreducible::is_irreducible(base.as_ref(), &modulus) {
            return Err(Error::InvalidField("extension modulus must be monic irreducible".into()));
        }
        Ok(Self::new_unchecked(base, modulus))
    }

    /// Caller guarantees `modulus` is monic irreducible.
    pub fn new_unchecked(base: Arc<GaloisField>, modulus: Poly<u32>) -> Self {
        let d = modulus.deg().expect("nonzero modulus");
        ExtField { base, modulus, d }
    }

    /// Extension of degree `d` by the lexicographically least irreducible.
    pub fn canonical(base: Arc<GaloisField>, d: usize) -> Self {
        let m = irreducible::least_irreducible(base.as_ref(), d);
        Self::new_unchecked(base, m)
    }

    pub fn base(&self) -> &Arc<GaloisField> {
        &self.base
    }

    pub fn modulus(&self) -> &Poly<u32> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn embed(&self, c: u32) -> Vec<u32> {
        let mut v = vec![0; self.d];
        v[0] = c;
        v
    }

    /// The class of `z`.
    pub fn generator(&self) -> Vec<u32> {
        if self.d == 1 {
            let g = &self.base;
            return vec![g.neg_u(self.modulus.coeffs[0])];
        }
        let mut v = vec![0; self.d];
        v[1] = 1;
        v
    }

    pub fn from_poly(&self, p: &Poly<u32>) -> Vec<u32> {
        let r = p.rem(self.base.as_ref(), &self.modulus);
        let mut v = r.coeffs;
        v.resize(self.d, 0);
        v
    }

    pub fn to_poly(&self, a: &[u32]) -> Poly<u32> {
        Poly::new(self.base.as_ref(), a.to_vec())
    }

    /// Returns `Some(c)` when `a` lies in the base field.
    pub fn as_base(&self, a: &[u32]) -> Option<u32> {
        if a[1..].iter().all(|&c| c == 0) {
            Some(a[0])
        } else {
            None
        }
    }

    pub fn embed_poly(&self, p: &Poly<u32>) -> Poly<Vec<u32>> {
        Poly::new(self, p.coeffs.iter().map(|&c| self.embed(c)).collect())
    }

    /// `a^(q^i)`.
    pub fn frobenius(&self, a: &[u32], i: usize) -> Vec<u32> {
        let mut cur = a.to_vec();
        for _ in 0..i {
            cur = self.pow(&cur, self.base.order());
        }
        cur
    }

    /// Minimal polynomial over the base field.
    pub fn min_poly(&self, a: &[u32]) -> Poly<u32> {
        let mut conj = vec![a.to_vec()];
        loop {
            let next = self.pow(conj.last().unwrap(), self.base.order());
            if next == conj[0] {
                break;
            }
            conj.push(next);
        }
        let mut acc: Poly<Vec<u32>> = Poly::one(self);
        for c in &conj {
            let lin = Poly::new(self, vec![self.neg(c), self.one()]);
            acc = acc.mul(self, &lin);
        }
        let coeffs = acc
            .coeffs
            .iter()
            .map(|c| self.as_base(c).expect("conjugate product has base coefficients"))
            .collect();
        Poly { coeffs }
    }

    /// Every element, in index order; guarded.
    pub fn elements(&self) -> Result<Vec<Vec<u32>>> {
        let n = self.order();
        guard::check(n)?;
        Ok((0..n).map(|i| self.elem_at(i)).collect())
    }
}

impl Field for ExtField {
    type Elem = Vec<u32>;

    fn zero(&self) -> Vec<u32> {
        vec![0; self.d]
    }

    fn one(&self) -> Vec<u32> {
        self.embed(1)
    }

    fn add(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.base.add_u(x, y)).collect()
    }

    fn neg(&self, a: &Vec<u32>) -> Vec<u32> {
        a.iter().map(|&x| self.base.neg_u(x)).collect()
    }

    fn sub(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.base.sub_u(x, y)).collect()
    }

    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let g = self.base.as_ref();
        let d = self.d;
        let mut prod = vec![0u32; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = g.add_u(prod[i + j], g.mul_u(x, y));
                }
            }
        }
        let m = &self.modulus.coeffs;
        for i in (d..2 * d - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                let idx = i - d + j;
                prod[idx] = g.sub_u(prod[idx], g.mul_u(c, m[j]));
            }
        }
        prod.truncate(d);
        prod
    }

    fn inv(&self, a: &Vec<u32>) -> Option<Vec<u32>> {
        if a.iter().all(|&c| c == 0) {
            return None;
        }
        let g = self.base.as_ref();
        let p = Poly::new(g, a.clone());
        let inv = p.inv_mod(g, &self.modulus)?;
        let mut v = inv.coeffs;
        v.resize(self.d, 0);
        Some(v)
    }

    fn is_zero(&self, a: &Vec<u32>) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn characteristic(&self) -> u32 {
        self.base.p()
    }

    fn order(&self) -> u128 {
        guard::pow_sat(self.base.order(), self.d as u32)
    }

    fn elem_at(&self, mut index: u128) -> Vec<u32> {
        let q = self.base.order();
        let mut v = Vec::with_capacity(self.d);
        for _ in 0..self.d {
            v.push((index % q) as u32);
            index /= q;
        }
        v
    }

    fn index_of(&self, a: &Vec<u32>) -> u128 {
        let q = self.base.order();
        a.iter().rev().fold(0u128, |acc, &c| acc * q + c as u128)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f8_over_f2_inverses() {
        let b = Arc::new(GaloisField::prime_field(2).unwrap());
        let k = ExtField::canonical(b, 3);
        for i in 1..8 {
            let a = k.elem_at(i);
            let ai = k.inv(&a).unwrap();
            assert_eq!(k.mul(&a, &ai), k.one());
        }
    }

    #[test]
    fn min_poly_of_generator_is_modulus() {
        let b = Arc::new(GaloisField::of_order(4).unwrap());
        let k = ExtField::canonical(b, 3);
        assert_eq!(k.min_poly(&k.generator()), *k.modulus());
        assert_eq!(k.min_poly(&k.one()).deg(), Some(1));
    }

    #[test]
    fn frobenius_has_order_d() {
        let b = Arc::new(GaloisField::prime_field(3).unwrap());
        let k = ExtField::canonical(b, 4);
        let a = k.elem_at(17);
        assert_eq!(k.frobenius(&a, 4), a);
    }
}
