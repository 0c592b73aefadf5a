//! Irreducibility testing and enumeration of monic irreducibles in
//! lexicographic order (coefficients compared from the top degree down).

use super::field::Field;
use super::poly::Poly;
use crate::error::Result;
use crate::guard;

fn prime_divisors(mut n: usize) -> Vec<usize> {
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

/// `x^(Q^i) mod f` for `i = 0..=n`.
fn frobenius_powers<F: Field>(f: &F, m: &Poly<F::Elem>, n: usize) -> Vec<Poly<F::Elem>> {
    let q = f.order();
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = Poly::x(f).rem(f, m);
    out.push(cur.clone());
    for _ in 0..n {
        cur = cur.powmod(f, q, m);
        out.push(cur.clone());
    }
    out
}

/// Rabin's test over any finite field.
pub fn is_irreducible<F: Field>(f: &F, m: &Poly<F::Elem>) -> bool {
    let d = match m.deg() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(d) => d,
    };
    let m = m.monic(f);
    let pows = frobenius_powers(f, &m, d);
    let x = Poly::x(f);
    if pows[d] != x.rem(f, &m) {
        return false;
    }
    prime_divisors(d).into_iter().all(|r| {
        let h = pows[d / r].sub(f, &x);
        h.gcd(f, &m).deg() == Some(0)
    })
}

/// Monic polynomial of degree `d` with index `idx` in the lexicographic order.
pub fn monic_at<F: Field>(f: &F, d: usize, mut idx: u128) -> Poly<F::Elem> {
    let q = f.order();
    let mut c = Vec::with_capacity(d + 1);
    for _ in 0..d {
        c.push(f.elem_at(idx % q));
        idx /= q;
    }
    c.push(f.one());
    Poly { coeffs: c }
}

/// Walks monic irreducibles of degree `d` in lexicographic order without
/// materializing the full list.
pub struct IrreducibleWalk<'a, F: Field> {
    f: &'a F,
    d: usize,
    next: u128,
    end: u128,
}

impl<'a, F: Field> IrreducibleWalk<'a, F> {
    pub fn new(f: &'a F, d: usize) -> Self {
        let end = guard::pow_sat(f.order(), d as u32);
        IrreducibleWalk { f, d, next: 0, end }
    }
}

impl<F: Field> Iterator for IrreducibleWalk<'_, F> {
    type Item = Poly<F::Elem>;

    fn next(&mut self) -> Option<Self::Item> {
        while self.next < self.end {
            let p = monic_at(self.f, self.d, self.next);
            self.next += 1;
            if is_irreducible(self.f, &p) {
                return Some(p);
            }
        }
        None
    }
}

/// Lexicographically least monic irreducible of degree `d`.
pub fn least_irreducible<F: Field>(f: &F, d: usize) -> Poly<F::Elem> {
    IrreducibleWalk::new(f, d)
        .next()
        .expect("irreducible polynomials exist in every degree")
}

/// All monic irreducibles of degree `d`, sorted; refuses when `q^d` exceeds the guard.
pub fn irreducibles<F: Field>(f: &F, d: usize) -> Result<Vec<Poly<F::Elem>>> {
    guard::check(guard::pow_sat(f.order(), d as u32))?;
    Ok(IrreducibleWalk::new(f, d).collect())
}

fn mobius(mut n: u64) -> i128 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducibles of degree `d` over F_q, `(1/d) Σ_{e|d} μ(e) q^{d/e}`.
pub fn count_irreducibles(q: u128, d: u32) -> u128 {
    let mut total: i128 = 0;
    for e in 1..=d {
        if d % e == 0 {
            let term = guard::pow_sat(q, d / e) as i128;
            total += mobius(e as u64) * term;
        }
    }
    (total / d as i128) as u128
}
