//! Dense univariate polynomials over any [`Field`].

use std::fmt;

use super::field::Field;

/// Coefficients low to high; the top coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<E> {
    pub coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E) -> Self {
        Self::new(f, vec![c])
    }

    pub fn one<F: Field<Elem = E>>(f: &F) -> Self {
        Poly { coeffs: vec![f.one()] }
    }

    /// The monomial `x`.
    pub fn x<F: Field<Elem = E>>(f: &F) -> Self {
        Poly { coeffs: vec![f.zero(), f.one()] }
    }

    pub fn monomial<F: Field<Elem = E>>(f: &F, c: E, e: usize) -> Self {
        let mut v = vec![f.zero(); e + 1];
        v[e] = c;
        Self::new(f, v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| f.add(&self.coeff(f, i), &o.coeff(f, i))).collect();
        Self::new(f, v)
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| f.sub(&self.coeff(f, i), &o.coeff(f, i))).collect();
        Self::new(f, v)
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        Self::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = f.add(&v[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem<F: Field<Elem = E>>(&self, f: &F, d: &Self) -> (Self, Self) {
        let dd = d.deg().expect("division by the zero polynomial");
        let lead_inv = f.inv(d.lead().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(&r[i], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = f.sub(&r[idx], &f.mul(&c, dc));
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Self::new(f, q), Self::new(f, r))
    }

    pub fn rem<F: Field<Elem = E>>(&self, f: &F, d: &Self) -> Self {
        self.divrem(f, d).1
    }

    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => {
                let li = f.inv(l).unwrap();
                self.scale(f, &li)
            }
        }
    }

    pub fn is_monic<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.lead().is_some_and(|l| *l == f.one())
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g` and `g` monic.
    pub fn xgcd<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(f, &r1);
            let s2 = s0.sub(f, &q.mul(f, &s1));
            let t2 = t0.sub(f, &q.mul(f, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = f.inv(l).unwrap();
                (r0.scale(f, &li), s0.scale(f, &li), t0.scale(f, &li))
            }
        }
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inv_mod<F: Field<Elem = E>>(&self, f: &F, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(f, m).xgcd(f, m);
        if g.deg() == Some(0) {
            Some(s.rem(f, m))
        } else {
            None
        }
    }

    pub fn mulmod<F: Field<Elem = E>>(&self, f: &F, o: &Self, m: &Self) -> Self {
        self.mul(f, o).rem(f, m)
    }

    pub fn powmod<F: Field<Elem = E>>(&self, f: &F, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(f, m);
        let mut acc = Self::one(f).rem(f, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(f, &base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(f, &base, m);
            }
        }
        acc
    }

    pub fn pow<F: Field<Elem = E>>(&self, f: &F, e: usize) -> Self {
        let mut acc = Self::one(f);
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    pub fn eval<F: Field<Elem = E>>(&self, f: &F, x: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn derivative<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_int(i as i64)))
            .collect();
        Self::new(f, v)
    }

    /// `self(g(x))`.
    pub fn compose<F: Field<Elem = E>>(&self, f: &F, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(f, g).add(f, &Self::constant(f, c.clone())))
    }

    /// Reduction of `self` modulo `x^n`.
    pub fn truncate<F: Field<Elem = E>>(&self, f: &F, n: usize) -> Self {
        Self::new(f, self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn map<F2: Field>(&self, f2: &F2, g: impl Fn(&E) -> F2::Elem) -> Poly<F2::Elem> {
        Poly::new(f2, self.coeffs.iter().map(g).collect())
    }
}

impl Poly<u32> {
    /// Index `Σ c_i q^i` used to order polynomials of equal degree.
    pub fn index(&self, q: u32) -> u128 {
        self.coeffs.iter().rev().fold(0u128, |acc, &c| acc * q as u128 + c as u128)
    }

    pub fn display(&self) -> PolyDisplay<'_> {
        PolyDisplay { poly: self }
    }
}

/// Human-readable rendering such as `x^3 + x + 1`; coefficients of
/// extension fields are printed as their element index.
pub struct PolyDisplay<'a> {
    poly: &'a Poly<u32>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.poly.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}
