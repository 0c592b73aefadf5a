use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::poly::Poly;

const BRUTE_FORCE_ORDER: u128 = 64;

/// Distinct roots of `p` in the field, sorted by element index.
pub fn roots<F: Field>(f: &F, p: &Poly<F::Elem>) -> Vec<F::Elem> {
    if p.deg().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let p = p.monic(f);
    let mut out = if f.order() <= BRUTE_FORCE_ORDER {
        (0..f.order())
            .map(|i| f.elem_at(i))
            .filter(|x| f.is_zero(&p.eval(f, x)))
            .collect()
    } else {
        // product of the distinct linear factors
        let x = Poly::x(f);
        let xq = x.powmod(f, f.order(), &p);
        let g = xq.sub(f, &x).gcd(f, &p);
        let mut acc = Vec::new();
        split(f, &g, &mut acc);
        acc
    };
    out.sort_by_key(|r| f.index_of(r));
    out
}

/// Least root by element index.
pub fn least_root<F: Field>(f: &F, p: &Poly<F::Elem>) -> Option<F::Elem> {
    roots(f, p).into_iter().next()
}

fn split<F: Field>(f: &F, g: &Poly<F::Elem>, acc: &mut Vec<F::Elem>) {
    match g.deg() {
        None | Some(0) => return,
        Some(1) => {
            let g = g.monic(f);
            acc.push(f.neg(&g.coeffs[0]));
            return;
        }
        _ => {}
    }
    let q = f.order();
    let p = f.characteristic();
    let m = f.prime_degree();
    let mut rng = ChaCha8Rng::seed_from_u64(q as u64 ^ g.deg().unwrap() as u64);
    loop {
        let delta = f.elem_at(rng.gen_range(1..q));
        let h = if p == 2 {
            let t0 = Poly::new(f, vec![f.zero(), delta]).rem(f, g);
            let mut t = t0.clone();
            let mut s = t0;
            for _ in 1..m {
                t = t.mulmod(f, &t, g);
                s = s.add(f, &t);
            }
            s
        } else {
            let lin = Poly::new(f, vec![delta, f.one()]);
            lin.powmod(f, (q - 1) / 2, g).sub(f, &Poly::one(f))
        };
        let d = h.gcd(f, g);
        let dd = d.deg().unwrap_or(0);
        if dd > 0 && dd < g.deg().unwrap() {
            let (other, _) = g.divrem(f, &d);
            split(f, &d, acc);
            split(f, &other, acc);
            return;
        }
    }
}
