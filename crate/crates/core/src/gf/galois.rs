//! Table-driven arithmetic in F_{p^k}.
//!
//! An element is stored as its index `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`,
//! where `c_i` are the coefficients in the power basis of the defining
//! polynomial.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::irreducible;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::guard;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    /// Coefficients low to high of the monic defining polynomial; `None` when `k = 1`.
    pub defining_poly: Option<Vec<u32>>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if n as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^k`; `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    if r == 1 && p <= u32::MAX as u64 {
        Some((p as u32, k))
    } else {
        None
    }
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec { p, k: 1, defining_poly: None })
    }

    pub fn new(p: u32, k: u32, defining_poly: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        if k == 1 {
            return match defining_poly {
                None => Ok(FieldSpec { p, k, defining_poly: None }),
                Some(_) => Err(Error::InvalidField("k = 1 takes no defining polynomial".into())),
            };
        }
        let poly = defining_poly
            .ok_or_else(|| Error::InvalidField("missing defining polynomial".into()))?;
        if poly.len() != k as usize + 1 || poly[k as usize] != 1 || poly.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!(
                "defining polynomial must be monic of degree {k} with coefficients below {p}"
            )));
        }
        let fp = GaloisField::prime_field(p)?;
        if !irreducible::is_irreducible(&fp, &Poly::new(&fp, poly.clone())) {
            return Err(Error::InvalidField("defining polynomial is reducible".into()));
        }
        Ok(FieldSpec { p, k, defining_poly: Some(poly) })
    }

    /// F_{p^k} defined by the lexicographically least monic irreducible of degree k.
    pub fn canonical(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) || k == 0 {
            return Err(Error::InvalidField(format!("no field of order {p}^{k}")));
        }
        if k == 1 {
            return Ok(FieldSpec { p, k, defining_poly: None });
        }
        let fp = GaloisField::prime_field(p)?;
        let poly = irreducible::least_irreducible(&fp, k as usize);
        Ok(FieldSpec { p, k, defining_poly: Some(poly.coeffs) })
    }

    /// Canonical spec for a field of order `q`.
    pub fn for_order(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Self::canonical(p, k)
    }

    pub fn order(&self) -> u128 {
        guard::pow_sat(self.p as u128, self.k)
    }

    /// Defining polynomial including the `k = 1` case, where it is `x`.
    pub fn modulus(&self) -> Vec<u32> {
        match &self.defining_poly {
            Some(v) => v.clone(),
            None => vec![0, 1],
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.k)
        }
    }
}

/// The field F_{p^k} with exp/log tables.
pub struct GaloisField {
    spec: FieldSpec,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    zech: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaloisField({})", self.spec)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for GaloisField {}

fn digits(mut v: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn slow_mul(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for i in (k..2 * k).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &m) in modulus.iter().enumerate().take(k) {
            let idx = i - k + j;
            prod[idx] = (prod[idx] + (p - c) * m) % p;
        }
    }
    prod.truncate(k);
    prod
}

fn slow_pow(a: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut acc = vec![0u64; k];
    acc[0] = 1;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(&acc, &base, modulus, p);
        }
        base = slow_mul(&base, &base, modulus, p);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl GaloisField {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let q = spec.order();
        guard::check(q)?;
        let p = spec.p as u64;
        let k = spec.k as usize;
        let q = q as u64;
        let modulus: Vec<u64> = spec.modulus().iter().map(|&c| c as u64).collect();
        let one = {
            let mut v = vec![0u64; k];
            v[0] = 1;
            v
        };
        let factors = prime_factors(q - 1);
        let is_primitive = |g: &[u64]| {
            factors
                .iter()
                .all(|&r| slow_pow(g, (q - 1) / r, &modulus, p) != one)
        };
        let mut gen = None;
        for idx in 1..q {
            let g = digits(idx, p, k);
            if q == 2 || is_primitive(&g) {
                gen = Some(g);
                break;
            }
        }
        let g = gen.ok_or_else(|| Error::InvalidField("no primitive element".into()))?;
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![NONE; q as usize];
        let mut cur = one.clone();
        for (i, e) in exp.iter_mut().enumerate() {
            let v = undigits(&cur, p) as u32;
            *e = v;
            if log[v as usize] != NONE {
                return Err(Error::InvalidField("defining polynomial is reducible".into()));
            }
            log[v as usize] = i as u32;
            cur = slow_mul(&cur, &g, &modulus, p);
        }
        let neg: Vec<u32> = (0..q)
            .map(|v| {
                let d: Vec<u64> = digits(v, p, k).iter().map(|&c| (p - c) % p).collect();
                undigits(&d, p) as u32
            })
            .collect();
        // zech[j] = log(1 + g^j), NONE when 1 + g^j = 0
        let zech = if p == 2 || k == 1 {
            Vec::new()
        } else {
            exp.iter()
                .map(|&v| {
                    let mut d = digits(v as u64, p, k);
                    d[0] = (d[0] + 1) % p;
                    let s = undigits(&d, p) as usize;
                    if s == 0 {
                        NONE
                    } else {
                        log[s]
                    }
                })
                .collect()
        };
        Ok(GaloisField { spec, q: q as u32, exp, log, neg, zech })
    }

    pub fn prime_field(p: u32) -> Result<Self> {
        Self::new(FieldSpec::prime(p)?)
    }

    /// Canonical field of order `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        Self::new(FieldSpec::for_order(q)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn k(&self) -> u32 {
        self.spec.k
    }

    /// Coefficient tuple of an element in the power basis.
    pub fn coeffs(&self, a: u32) -> Vec<u32> {
        digits(a as u64, self.spec.p as u64, self.spec.k as usize)
            .into_iter()
            .map(|c| c as u32)
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<u32> {
        if c.len() != self.spec.k as usize || c.iter().any(|&x| x >= self.spec.p) {
            return Err(Error::InvalidField(format!("bad coefficient tuple {c:?} for {}", self.spec)));
        }
        let d: Vec<u64> = c.iter().map(|&x| x as u64).collect();
        Ok(undigits(&d, self.spec.p as u64) as u32)
    }

    /// Generator of the multiplicative group used for the tables.
    pub fn primitive(&self) -> u32 {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn element(self: &Arc<Self>, value: u32) -> FieldElement {
        FieldElement { field: Arc::clone(self), value: value % self.q }
    }

    #[inline]
    pub fn add_u(&self, a: u32, b: u32) -> u32 {
        if self.spec.p == 2 {
            return a ^ b;
        }
        if self.spec.k == 1 {
            let s = a + b;
            return if s >= self.q { s - self.q } else { s };
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = self.q - 1;
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[d as usize];
        if z == NONE {
            0
        } else {
            let e = la + z;
            self.exp[(if e >= n { e - n } else { e }) as usize]
        }
    }

    #[inline]
    pub fn neg_u(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub_u(&self, a: u32, b: u32) -> u32 {
        self.add_u(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul_u(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let e = self.log[a as usize] + self.log[b as usize];
        self.exp[(if e >= n { e - n } else { e }) as usize]
    }

    #[inline]
    pub fn inv_u(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        let l = self.log[a as usize];
        Some(self.exp[((n - l) % n) as usize])
    }
}

impl Field for GaloisField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.add_u(*a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        self.neg_u(*a)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.sub_u(*a, *b)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_u(*a, *b)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        self.inv_u(*a)
    }
    fn characteristic(&self) -> u32 {
        self.spec.p
    }
    fn order(&self) -> u128 {
        self.q as u128
    }
    fn elem_at(&self, index: u128) -> u32 {
        index as u32
    }
    fn index_of(&self, a: &u32) -> u128 {
        *a as u128
    }
    fn pow(&self, a: &u32, e: u128) -> u32 {
        if *a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1) as u128;
        let l = self.log[*a as usize] as u128;
        self.exp[((l * (e % n)) % n) as usize]
    }
}

/// A field element bundled with its field, for ergonomic arithmetic.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<GaloisField>,
    value: u32,
}

impl FieldElement {
    pub fn spec(&self) -> &FieldSpec {
        self.field.spec()
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Option<FieldElement> {
        self.field.inv_u(self.value).map(|v| self.with(v))
    }

    pub fn pow(&self, e: u128) -> FieldElement {
        self.with(self.field.pow(&self.value, e))
    }

    fn with(&self, value: u32) -> FieldElement {
        FieldElement { field: Arc::clone(&self.field), value }
    }

    fn same_field(&self, other: &FieldElement) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field.spec() == other.field.spec(),
            "arithmetic between elements of different fields"
        );
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.spec() == other.field.spec() && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs())
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.same_field(&rhs);
        self.with(self.field.add_u(self.value, rhs.value))
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.same_field(&rhs);
        self.with(self.field.sub_u(self.value, rhs.value))
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.same_field(&rhs);
        self.with(self.field.mul_u(self.value, rhs.value))
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg_u(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn f4_tables() {
        let f = GaloisField::of_order(4).unwrap();
        assert_eq!(f.spec().defining_poly, Some(vec![1, 1, 1]));
        // u * u = u + 1
        assert_eq!(f.mul_u(2, 2), 3);
        assert_eq!(f.add_u(2, 3), 1);
        for a in 1..4 {
            assert_eq!(f.mul_u(a, f.inv_u(a).unwrap()), 1);
        }
    }

    #[test]
    fn f9_zech_addition_matches_digits() {
        let f = GaloisField::of_order(9).unwrap();
        for a in 0..9u32 {
            for b in 0..9u32 {
                let (ca, cb) = (f.coeffs(a), f.coeffs(b));
                let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!(f.add_u(a, b), f.from_coeffs(&s).unwrap());
            }
        }
    }

    #[test]
    fn rejects_reducible() {
        assert!(FieldSpec::new(2, 2, Some(vec![1, 0, 1])).is_err());
        assert!(FieldSpec::new(4, 1, None).is_err());
        assert!(FieldSpec::new(2, 2, Some(vec![1, 1, 1])).is_ok());
    }

    #[test]
    fn element_ops() {
        let f = Arc::new(GaloisField::of_order(8).unwrap());
        let a = f.element(5);
        let b = f.element(3);
        assert_eq!((a.clone() * b.clone()) * b.inv().unwrap(), a);
        assert_eq!(a.coeffs().len(), 3);
    }
}
