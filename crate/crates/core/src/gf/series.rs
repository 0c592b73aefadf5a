//! Truncated Laurent series `Σ_{i ≥ val} c_i t^i` known up to an absolute precision.

use super::field::Field;
use super::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<E> {
    /// Exponent of `coeffs[0]`.
    pub start: i64,
    pub coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> Series<E> {
    /// Exponents `>= prec` are unknown.
    pub fn prec(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    pub fn zero(prec: i64) -> Self {
        Series { start: prec, coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(f: &F, c: E, prec: i64) -> Self {
        let mut s = Series { start: 0, coeffs: vec![f.zero(); prec.max(0) as usize] };
        if prec > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// The monomial `c t^e` known to precision `prec`.
    pub fn monomial<F: Field<Elem = E>>(f: &F, c: E, e: i64, prec: i64) -> Self {
        let mut s = Series { start: e, coeffs: vec![f.zero(); (prec - e).max(0) as usize] };
        if prec > e {
            s.coeffs[0] = c;
        }
        s
    }

    /// Coefficient of `t^i` (zero below `start`); panics above precision.
    pub fn coeff<F: Field<Elem = E>>(&self, f: &F, i: i64) -> E {
        assert!(i < self.prec(), "coefficient t^{i} beyond precision {}", self.prec());
        if i < self.start {
            f.zero()
        } else {
            self.coeffs[(i - self.start) as usize].clone()
        }
    }

    /// Drops leading zeros; the valuation is `start` afterwards unless the series is zero.
    pub fn normalize<F: Field<Elem = E>>(mut self, f: &F) -> Self {
        let lead = self.coeffs.iter().take_while(|c| f.is_zero(c)).count();
        self.coeffs.drain(..lead);
        self.start += lead as i64;
        self
    }

    /// Valuation, `None` when every known coefficient vanishes.
    pub fn valuation<F: Field<Elem = E>>(&self, f: &F) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !f.is_zero(c))
            .map(|i| self.start + i as i64)
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let prec = self.prec().min(o.prec());
        let start = self.start.min(o.start).min(prec);
        let coeffs = (start..prec)
            .map(|i| {
                let a = if i >= self.start { self.coeffs[(i - self.start) as usize].clone() } else { f.zero() };
                let b = if i >= o.start { o.coeffs[(i - o.start) as usize].clone() } else { f.zero() };
                f.add(&a, &b)
            })
            .collect();
        Series { start, coeffs }
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Series { start: self.start, coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        self.add(f, &o.neg(f))
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        Series { start: self.start, coeffs: self.coeffs.iter().map(|a| f.mul(a, c)).collect() }
    }

    /// Multiplication by `t^e`.
    pub fn shift(&self, e: i64) -> Self {
        Series { start: self.start + e, coeffs: self.coeffs.clone() }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        let a = self.clone().normalize(f);
        let b = o.clone().normalize(f);
        let start = a.start + b.start;
        let prec = (a.prec() + b.start).min(b.prec() + a.start);
        let n = (prec - start).max(0) as usize;
        let mut coeffs = vec![f.zero(); n];
        for (i, x) in a.coeffs.iter().enumerate().take(n) {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(x, y));
            }
        }
        Series { start, coeffs }
    }

    /// Multiplicative inverse; `None` when no nonzero coefficient is known.
    pub fn inv<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        let a = self.clone().normalize(f);
        if a.coeffs.is_empty() {
            return None;
        }
        let n = a.coeffs.len();
        let c0i = f.inv(&a.coeffs[0])?;
        let mut out = vec![f.zero(); n];
        out[0] = c0i.clone();
        for k in 1..n {
            let mut s = f.zero();
            for j in 1..=k {
                s = f.add(&s, &f.mul(&a.coeffs[j], &out[k - j]));
            }
            out[k] = f.neg(&f.mul(&s, &c0i));
        }
        Some(Series { start: -a.start, coeffs: out })
    }

    pub fn div<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Option<Self> {
        o.inv(f).map(|oi| self.mul(f, &oi))
    }

    /// `p(self)` by Horner's rule; `self` must have been computed to enough precision.
    pub fn eval_poly<F: Field<Elem = E>>(&self, f: &F, p: &Poly<E>, prec: i64) -> Self {
        let mut acc = Series::zero(prec);
        for c in p.coeffs.iter().rev() {
            acc = acc.mul(f, self).add(f, &Series::constant(f, c.clone(), prec));
        }
        acc
    }

    pub fn truncate(&self, prec: i64) -> Self {
        let mut s = self.clone();
        let keep = (prec - s.start).max(0) as usize;
        s.coeffs.truncate(keep);
        if s.coeffs.is_empty() {
            s.start = s.start.min(prec);
        }
        s
    }

    /// Coefficients of `t^0 .. t^{n-1}`.
    pub fn head<F: Field<Elem = E>>(&self, f: &F, n: usize) -> Vec<E> {
        (0..n as i64).map(|i| self.coeff(f, i)).collect()
    }
}
