#![allow(dead_code)]

use std::sync::Arc;

use ccma::bilinear::{compose_tower, formulas, schoolbook, BilinearAlgorithm, TargetAlgebra};
use ccma::curve::riemann_roch::{dimension, in_space, riemann_roch_basis};
use ccma::curve::{builtin_instances, enumerate_curve_places, CurveDivisor, CurveModel, CurvePlace, FunctionElement};
use ccma::gf::{crt_reconstruct, irreducibles, GaloisField, Poly};
use ccma::planner::{Planner, SynthOptions};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(q: u64) -> Arc<GaloisField> {
    Arc::new(GaloisField::of_order(q).unwrap())
}

/// A shipped curve with its places of degree 1 and 2.
pub struct CurveFixture {
    pub name: String,
    pub curve: CurveModel,
    pub rational: Vec<CurvePlace>,
    pub quadratic: Vec<CurvePlace>,
}

pub fn curves() -> Vec<CurveFixture> {
    builtin_instances()
        .into_iter()
        .map(|inst| {
            let curve = inst.model().unwrap();
            let rational = enumerate_curve_places(&curve, 1).unwrap();
            let quadratic = enumerate_curve_places(&curve, 2).unwrap();
            CurveFixture { name: inst.name, curve, rational, quadratic }
        })
        .collect()
}

/// Random divisor on up to four places with total degree exactly `deg`.
pub fn random_divisor(c: &CurveFixture, r: &mut ChaCha8Rng, deg: i64) -> CurveDivisor {
    let anchor = c.rational.choose(r).unwrap().clone();
    let mut d = CurveDivisor::zero();
    for _ in 0..r.gen_range(0..=3) {
        let p = if !c.quadratic.is_empty() && r.gen_bool(0.3) { c.quadratic.choose(r).unwrap() } else { c.rational.choose(r).unwrap() };
        if *p != anchor && !d.contains(p) {
            d.add_term(p.clone(), r.gen_range(-2..=3));
        }
    }
    let rest = d.degree();
    d.add_term(anchor, deg - rest);
    d
}

/// dim L(D) = deg D + 1 - g for random D with deg D >= 2g - 1, and 0 below degree 0.
pub fn riemann_roch_law(c: &CurveFixture, seed: u64) -> Check {
    let mut r = rng(seed);
    let g = c.curve.genus as i64;
    let deg = r.gen_range(2 * g - 1..=2 * g + 4);
    let d = random_divisor(c, &mut r, deg);
    let dim = dimension(&c.curve, &d).map_err(|e| e.to_string())? as i64;
    if dim != deg + 1 - g {
        return Err(format!("{}: dim L({d}) = {dim}, expected {}", c.name, deg + 1 - g));
    }
    let neg_deg = -r.gen_range(1..=3);
    let neg = random_divisor(c, &mut r, neg_deg);
    let dim = dimension(&c.curve, &neg).map_err(|e| e.to_string())?;
    if dim != 0 {
        return Err(format!("{}: dim L({neg}) = {dim} for negative degree", c.name));
    }
    Ok(())
}

fn random_element(c: &CurveFixture, r: &mut ChaCha8Rng, basis: &[FunctionElement]) -> FunctionElement {
    let q = c.curve.field.q();
    let coeffs: Vec<u32> = basis.iter().map(|_| r.gen_range(0..q)).collect();
    FunctionElement::combine(&c.curve, &coeffs, basis)
}

/// f in L(D1), g in L(D2) implies fg in L(D1 + D2).
pub fn product_closure(c: &CurveFixture, seed: u64) -> Check {
    let mut r = rng(seed);
    let g = c.curve.genus as i64;
    let (e1, e2) = (r.gen_range(0..=2 * g + 2), r.gen_range(0..=2 * g + 2));
    let d1 = random_divisor(c, &mut r, e1);
    let d2 = random_divisor(c, &mut r, e2);
    let b1 = riemann_roch_basis(&c.curve, &d1).map_err(|e| e.to_string())?;
    let b2 = riemann_roch_basis(&c.curve, &d2).map_err(|e| e.to_string())?;
    let f = random_element(c, &mut r, &b1);
    let h = random_element(c, &mut r, &b2);
    if !in_space(&c.curve, &f, &d1) {
        return Err(format!("{}: {f} not in L({d1})", c.name));
    }
    let fh = f.mul(&c.curve, &h);
    if !in_space(&c.curve, &fh, &d1.add(&d2)) {
        return Err(format!("{}: ({f})({h}) not in L({d1} + {d2})", c.name));
    }
    Ok(())
}

/// Reducing modulo pairwise coprime prime powers and reconstructing is the identity.
pub fn crt_round_trip(seed: u64) -> Check {
    let mut r = rng(seed);
    let q = *[2u64, 3, 4, 5, 7, 9].choose(&mut r).unwrap();
    let f = GaloisField::of_order(q).unwrap();
    let mut pool: Vec<Poly<u32>> = (1..=3).flat_map(|d| irreducibles(&f, d).unwrap()).collect();
    pool.shuffle(&mut r);
    let k = r.gen_range(1..=4).min(pool.len());
    let moduli: Vec<Poly<u32>> = pool[..k].iter().map(|p| p.pow(&f, r.gen_range(1..=3))).collect();
    let total: usize = moduli.iter().map(|m| m.deg().unwrap()).sum();
    let coeffs: Vec<u32> = (0..total).map(|_| r.gen_range(0..f.q())).collect();
    let poly = Poly::new(&f, coeffs);
    let residues: Vec<(Poly<u32>, Poly<u32>)> = moduli.iter().map(|m| (m.clone(), poly.rem(&f, m))).collect();
    let back = crt_reconstruct(&f, &residues).map_err(|e| e.to_string())?;
    if back != poly {
        return Err(format!("q={q}: reconstructed {} from residues of {}", back.display(), poly.display()));
    }
    Ok(())
}

/// Either the schoolbook algorithm or the planner's best for `F_{q^n}/F_q`.
fn random_algorithm(r: &mut ChaCha8Rng, planner: &Planner, q: u64, n: usize) -> BilinearAlgorithm {
    if n == 1 || r.gen_bool(0.5) {
        let f = planner.field(q).unwrap();
        let t = TargetAlgebra::extension_canonical(&f, n);
        schoolbook(f, t)
    } else {
        planner.realize(q, n, 1).unwrap().0
    }
}

/// rank(outer ∘ inner) = rank(outer)·rank(inner), and the composite verifies.
pub fn composition_multiplicative(seed: u64) -> Check {
    let mut r = rng(seed);
    let (q, a, b) = *[(2, 1, 2), (2, 2, 2), (2, 2, 3), (2, 3, 2), (2, 1, 3), (3, 2, 2), (3, 1, 2), (4, 2, 2), (4, 1, 3), (5, 2, 1), (3, 3, 1), (7, 1, 2)]
        .choose(&mut r)
        .unwrap();
    let planner = Planner::new(SynthOptions::default());
    let outer = random_algorithm(&mut r, &planner, q, a);
    let inner = random_algorithm(&mut r, &planner, q.pow(a as u32), b);
    let c = compose_tower(&outer, &inner).map_err(|e| e.to_string())?;
    let label = format!("q={q} a={a} b={b} ranks {}·{}", outer.rank(), inner.rank());
    if c.rank() != outer.rank() * inner.rank() {
        return Err(format!("{label}: composite rank {}", c.rank()));
    }
    if c.dim() != a * b || !c.verify().map_err(|e| e.to_string())? {
        return Err(format!("{label}: composite does not verify"));
    }
    if outer.is_symmetric() && inner.is_symmetric() && !c.is_symmetric() {
        return Err(format!("{label}: symmetry lost"));
    }
    Ok(())
}

fn random_vec(r: &mut ChaCha8Rng, q: u32, n: usize) -> Vec<u32> {
    (0..n).map(|_| r.gen_range(0..q)).collect()
}

/// Number of `pairs` random products on which `alg` disagrees with its target.
pub fn random_disagreements(alg: &BilinearAlgorithm, r: &mut ChaCha8Rng, pairs: usize) -> usize {
    let f = alg.field.as_ref();
    (0..pairs)
        .filter(|_| {
            let x = random_vec(r, f.q(), alg.dim());
            let y = random_vec(r, f.q(), alg.dim());
            alg.apply(&x, &y) != alg.target.multiply(f, &x, &y)
        })
        .count()
}

/// A verified algorithm passes 500 random pairs; one reconstruction entry
/// perturbed on a live product fails both exhaustive and random checks.
pub fn mutant_detected(seed: u64) -> Check {
    let mut r = rng(seed);
    let planner = Planner::new(SynthOptions::default());
    let (q, m, l) = *[(2, 2, 1), (2, 3, 1), (2, 4, 1), (3, 2, 1), (3, 3, 1), (4, 2, 1), (4, 3, 1), (5, 3, 1), (2, 1, 2), (2, 2, 2), (3, 1, 3)]
        .choose(&mut r)
        .unwrap();
    let alg = if (q, m, l) == (2, 2, 1) && r.gen_bool(0.5) { formulas::karatsuba(field(2)) } else { planner.realize(q, m, l).unwrap().0 };
    let label = format!("q={q} m={m} l={l} rank {}", alg.rank());
    if !alg.verify().unwrap() || random_disagreements(&alg, &mut r, 500) != 0 {
        return Err(format!("{label}: original rejected"));
    }
    let f = alg.field.as_ref();
    let live: Vec<usize> = (0..alg.rank()).filter(|&k| alg.a.row(k).iter().any(|&v| v != 0) && alg.b.row(k).iter().any(|&v| v != 0)).collect();
    let k = *live.choose(&mut r).unwrap();
    let i = r.gen_range(0..alg.dim());
    let delta = r.gen_range(1..f.q());
    let mut mutant = alg.clone();
    mutant.w.set(i, k, f.add_u(alg.w.get(i, k), delta));
    if mutant.verify().unwrap() {
        return Err(format!("{label}: mutant at W[{i}][{k}] still verifies"));
    }
    if random_disagreements(&mutant, &mut r, 500) == 0 {
        return Err(format!("{label}: mutant at W[{i}][{k}] agrees on 500 random pairs"));
    }
    Ok(())
}

pub fn run_seeds(count: u64, base: u64, check: impl Fn(u64) -> Check) -> Check {
    (0..count).try_for_each(|s| check(base + s).map_err(|e| format!("seed {}: {e}", base + s)))
}
