//! Nesting an algorithm over F_{q^m} inside an algorithm for F_{q^m}/F_q.

use std::collections::HashMap;
use std::sync::Arc;

use super::algebra::{AlgebraKind, TargetAlgebra};
use super::algorithm::BilinearAlgorithm;
use crate::error::{Error, Result};
use crate::gf::{self, irreducible, roots, ExtField, Field, GaloisField, Poly};
use crate::linalg::Mat;

/// Isomorphism between F_q[z]/(h) (coordinates over F_q) and an absolute field G.
struct Iso {
    f: Arc<GaloisField>,
    m: usize,
    beta_pows: Vec<u32>,
    emb: Vec<u32>,
    reverse: Vec<u32>,
}

impl Iso {
    fn new(f: &Arc<GaloisField>, g: &GaloisField, h: &Poly<u32>) -> Result<Iso> {
        let m = h.deg().unwrap_or(0);
        if g.p() != f.p() || g.k() != f.k() * m as u32 {
            return Err(Error::FieldMismatch(format!(
                "inner field {} is not an extension of degree {m} of {}",
                g.spec(),
                f.spec()
            )));
        }
        let emb = gf::embedding(f, g)?;
        let h_g = Poly::new(g, h.coeffs.iter().map(|&c| emb[c as usize]).collect());
        let beta = roots::least_root(g, &h_g)
            .ok_or_else(|| Error::FieldMismatch("modulus has no root in the inner field".into()))?;
        let beta_pows: Vec<u32> = (0..m).map(|j| g.pow(&beta, j as u128)).collect();
        let q = f.q() as u64;
        let mut reverse = vec![0u32; g.q() as usize];
        for idx in 0..g.q() as u64 {
            let mut rem = idx;
            let mut val = 0u32;
            for bp in &beta_pows {
                let c = (rem % q) as u32;
                rem /= q;
                val = g.add_u(val, g.mul_u(emb[c as usize], *bp));
            }
            reverse[val as usize] = idx as u32;
        }
        Ok(Iso { f: Arc::clone(f), m, beta_pows, emb, reverse })
    }

    fn to_g(&self, g: &GaloisField, coords: &[u32]) -> u32 {
        coords
            .iter()
            .zip(&self.beta_pows)
            .fold(0, |acc, (&c, &bp)| g.add_u(acc, g.mul_u(self.emb[c as usize], bp)))
    }

    fn from_g(&self, x: u32) -> Vec<u32> {
        let q = self.f.q();
        let mut idx = self.reverse[x as usize];
        (0..self.m)
            .map(|_| {
                let c = idx % q;
                idx /= q;
                c
            })
            .collect()
    }

    /// Matrix over F_q of multiplication by `c` in z-coordinates.
    fn mult_matrix(&self, g: &GaloisField, c: u32) -> Mat {
        let cols: Vec<Vec<u32>> = self
            .beta_pows
            .iter()
            .map(|&bp| self.from_g(g.mul_u(c, bp)))
            .collect();
        Mat::from_cols(&cols, self.m)
    }
}

fn is_truncation_over_base(t: &TargetAlgebra) -> bool {
    let (m, _, _) = t.local_params();
    m == 1
}

/// Core nesting; the result lives in coordinates `(j, a)` where `j` indexes the
/// inner basis and `a` the z-coordinates of F_{q^m}.
fn nest(outer: &BilinearAlgorithm, inner: &BilinearAlgorithm) -> Result<(Iso, Mat, Mat, Mat)> {
    let f = &outer.field;
    let (m, l, h) = outer.target.local_params();
    if l != 1 {
        return Err(Error::FieldMismatch("outer algorithm must target a field extension".into()));
    }
    let g = inner.field.as_ref();
    let iso = Iso::new(f, g, h)?;
    let dim_i = inner.dim();
    let (no, ni) = (outer.rank(), inner.rank());
    let mut cache: HashMap<u32, Mat> = HashMap::new();
    let mut mult = |c: u32| -> Mat { cache.entry(c).or_insert_with(|| iso.mult_matrix(g, c)).clone() };
    let fr = f.as_ref();
    let build_forms = |src: &Mat, outer_forms: &Mat, mult: &mut dyn FnMut(u32) -> Mat| -> Mat {
        let mut out = Mat::zeros(ni * no, dim_i * m);
        for i in 0..ni {
            for j in 0..dim_i {
                let c = src.get(i, j);
                if c == 0 {
                    continue;
                }
                let mc = mult(c);
                for r in 0..no {
                    let row = Mat::from_rows(&[outer_forms.row(r).to_vec()]).mul(fr, &mc);
                    for a in 0..m {
                        out.set(i * no + r, j * m + a, row.get(0, a));
                    }
                }
            }
        }
        out
    };
    let a = build_forms(&inner.a, &outer.a, &mut mult);
    let b = if inner.is_symmetric() && outer.is_symmetric() {
        a.clone()
    } else {
        build_forms(&inner.b, &outer.b, &mut mult)
    };
    let mut w = Mat::zeros(dim_i * m, ni * no);
    for i in 0..ni {
        for j in 0..dim_i {
            let c = inner.w.get(j, i);
            if c == 0 {
                continue;
            }
            let mc = mult(c);
            for r in 0..no {
                let col = mc.mul(fr, &Mat::from_cols(&[outer.w.col(r)], m));
                for a in 0..m {
                    w.set(j * m + a, i * no + r, col.get(a, 0));
                }
            }
        }
    }
    Ok((iso, a, b, w))
}

/// Algorithm for F_{q^{mn}}/F_q from one for F_{q^m}/F_q and one for
/// F_{q^{mn}}/F_{q^m}; the result targets the canonical F_{q^{mn}}.
pub fn compose_tower(outer: &BilinearAlgorithm, inner: &BilinearAlgorithm) -> Result<BilinearAlgorithm> {
    if !inner.target.is_extension() {
        return Err(Error::FieldMismatch("compose_tower needs an extension-field inner target".into()));
    }
    let (iso, a, b, w) = nest(outer, inner)?;
    let f = &outer.field;
    let fr = f.as_ref();
    let g = inner.field.as_ref();
    let m = iso.m;
    let n = inner.dim();
    let dim = m * n;
    if n == 1 {
        let alg = BilinearAlgorithm::new(Arc::clone(f), outer.target.clone(), a, b, w)?;
        return canonicalize(&alg);
    }
    let tower_mul = |x: &[u32], y: &[u32]| -> Vec<u32> {
        let xg: Vec<u32> = (0..n).map(|j| iso.to_g(g, &x[j * m..(j + 1) * m])).collect();
        let yg: Vec<u32> = (0..n).map(|j| iso.to_g(g, &y[j * m..(j + 1) * m])).collect();
        let z = inner.target.multiply(g, &xg, &yg);
        z.iter().flat_map(|&c| iso.from_g(c)).collect()
    };
    let mut one = vec![0u32; dim];
    one[0] = 1;
    let q = f.q() as u128;
    let limit = crate::guard::pow_sat(q, dim as u32);
    let mut idx: u128 = 1;
    let (p_mat, modulus) = loop {
        if idx >= limit {
            return Err(Error::Infeasible("no primitive element found for the tower".into()));
        }
        let mut theta = vec![0u32; dim];
        let mut r = idx;
        for c in theta.iter_mut() {
            *c = (r % q) as u32;
            r /= q;
        }
        idx += 1;
        let mut pows = vec![one.clone()];
        for _ in 0..dim {
            let next = tower_mul(pows.last().unwrap(), &theta);
            pows.push(next);
        }
        let p_mat = Mat::from_cols(&pows[..dim], dim);
        if p_mat.rank(fr) < dim {
            continue;
        }
        let c = p_mat.solve_vec(fr, &pows[dim]).expect("powers span the algebra");
        let mut coeffs: Vec<u32> = c.iter().map(|&v| fr.neg_u(v)).collect();
        coeffs.push(1);
        break (p_mat, Poly::new(fr, coeffs));
    };
    let target = TargetAlgebra::extension(fr, modulus)?;
    let p_inv = p_mat
        .inverse(fr)
        .ok_or_else(|| Error::Infeasible("power basis matrix is singular".into()))?;
    let alg = BilinearAlgorithm::new(
        Arc::clone(f),
        target,
        a.mul(fr, &p_mat),
        b.mul(fr, &p_mat),
        p_inv.mul(fr, &w),
    )?;
    canonicalize(&alg)
}

/// Algorithm for F_{q^d}[t]/(t^u) over F_q from one for F_{q^d}/F_q and one for
/// F_{q^d}[t]/(t^u) over F_{q^d}.
pub fn compose_truncated(outer: &BilinearAlgorithm, inner: &BilinearAlgorithm) -> Result<BilinearAlgorithm> {
    if !is_truncation_over_base(&inner.target) {
        return Err(Error::FieldMismatch("inner target must be a truncation over its own base field".into()));
    }
    let (_, l, _) = inner.target.local_params();
    let (_, a, b, w) = nest(outer, inner)?;
    let fr = outer.field.as_ref();
    let (m, _, h) = outer.target.local_params();
    let target = if l == 1 {
        TargetAlgebra::extension(fr, h.clone())?
    } else {
        TargetAlgebra { base: fr.spec().clone(), kind: AlgebraKind::Truncated { m, l, modulus: h.clone() } }
    };
    let alg = BilinearAlgorithm::new(Arc::clone(&outer.field), target, a, b, w)?;
    canonicalize(&alg)
}

/// Rewrites an algorithm so its target uses the canonical (lexicographically
/// least) irreducible of the same degree.
pub fn canonicalize(alg: &BilinearAlgorithm) -> Result<BilinearAlgorithm> {
    let f = &alg.field;
    let fr = f.as_ref();
    let (m, l, modulus) = alg.target.local_params();
    let canonical = irreducible::least_irreducible(fr, m);
    if *modulus == canonical {
        return Ok(alg.clone());
    }
    let k = ExtField::new_unchecked(Arc::clone(f), modulus.clone());
    let beta = roots::least_root(&k, &k.embed_poly(&canonical))
        .ok_or_else(|| Error::FieldMismatch("canonical modulus has no root".into()))?;
    let cols: Vec<Vec<u32>> = (0..m).map(|i| k.pow(&beta, i as u128)).collect();
    let block = Mat::from_cols(&cols, m);
    let t = Mat::block_diag(&vec![block; l]);
    let target = match alg.target.kind {
        AlgebraKind::Extension { .. } => TargetAlgebra::extension_canonical(fr, m),
        AlgebraKind::Truncated { .. } => TargetAlgebra::truncated_canonical(fr, m, l),
    };
    alg.change_basis(target, &t)
}
