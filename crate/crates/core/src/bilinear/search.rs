//! Exhaustive minimum-rank search for tiny algebras.

use std::sync::Arc;

use super::algebra::TargetAlgebra;
use super::algorithm::BilinearAlgorithm;
use crate::error::Result;
use crate::gf::GaloisField;
use crate::guard;
use crate::linalg::Mat;

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(BilinearAlgorithm),
    ExceedsMaxRank,
}

impl SearchOutcome {
    pub fn rank(&self) -> Option<usize> {
        match self {
            SearchOutcome::Found(a) => Some(a.rank()),
            SearchOutcome::ExceedsMaxRank => None,
        }
    }
}

/// Incrementally maintained row echelon basis.
#[derive(Clone)]
struct Echelon {
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    fn reduce(&self, f: &GaloisField, v: &[u32]) -> Vec<u32> {
        let mut v = v.to_vec();
        for (p, r) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(r) {
                    *x = f.sub_u(*x, f.mul_u(c, y));
                }
            }
        }
        v
    }

    /// Adds `v` when independent; returns whether it was.
    fn insert(&mut self, f: &GaloisField, v: &[u32]) -> bool {
        let r = self.reduce(f, v);
        let Some(p) = r.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = f.inv_u(r[p]).unwrap();
        let r: Vec<u32> = r.iter().map(|&c| f.mul_u(c, inv)).collect();
        for (_, row) in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&r) {
                    *x = f.sub_u(*x, f.mul_u(c, y));
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    fn contains(&self, f: &GaloisField, v: &[u32]) -> bool {
        self.reduce(f, v).iter().all(|&c| c == 0)
    }
}

/// Nonzero vectors whose first nonzero coordinate is 1, in lexicographic order.
fn projective_points(q: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let total = (q as u64).pow(n as u32);
    for idx in 0..total {
        let mut v = vec![0u32; n];
        let mut r = idx;
        for c in v.iter_mut().rev() {
            *c = (r % q as u64) as u32;
            r /= q as u64;
        }
        if v.iter().find(|&&c| c != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

struct Ctx<'a> {
    f: &'a GaloisField,
    cands: &'a [(usize, usize)],
    tensors: &'a [Vec<u32>],
    targets: &'a [Vec<u32>],
}

fn dfs(ctx: &Ctx, start: usize, left: usize, ech: &Echelon, chosen: &mut Vec<usize>) -> bool {
    if left == 0 {
        return ctx.targets.iter().all(|t| ech.contains(ctx.f, t));
    }
    for c in start..=ctx.cands.len() - left {
        let mut next = ech.clone();
        if !next.insert(ctx.f, &ctx.tensors[c]) {
            continue;
        }
        chosen.push(c);
        if dfs(ctx, c + 1, left - 1, &next, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Least rank `r <= max_rank` of a decomposition, with the lexicographically
/// least witness; candidate rank-one forms are normalized projectively.
pub fn brute_force_min_rank(
    field: Arc<GaloisField>,
    target: &TargetAlgebra,
    max_rank: usize,
    symmetric_only: bool,
) -> Result<SearchOutcome> {
    let f = field.as_ref();
    let n = target.dim();
    let pts = projective_points(f.q(), n);
    let cands: Vec<(usize, usize)> = if symmetric_only {
        (0..pts.len()).map(|i| (i, i)).collect()
    } else {
        (0..pts.len()).flat_map(|i| (0..pts.len()).map(move |j| (i, j))).collect()
    };
    let space: u128 = (1..=max_rank as u128)
        .map(|r| binomial(cands.len() as u128, r))
        .fold(0u128, |a, b| a.saturating_add(b));
    guard::check(space)?;
    let tensors: Vec<Vec<u32>> = cands
        .iter()
        .map(|&(i, j)| {
            let (u, v) = (&pts[i], &pts[j]);
            u.iter().flat_map(|&x| v.iter().map(move |&y| f.mul_u(x, y))).collect()
        })
        .collect();
    let st = target.structure_tensor(f);
    let targets: Vec<Vec<u32>> = st.iter().map(|m| m.iter().flatten().copied().collect()).collect();
    let mut span = Echelon { rows: Vec::new() };
    for t in &targets {
        span.insert(f, t);
    }
    let lower = span.rows.len();
    let ctx = Ctx { f, cands: &cands, tensors: &tensors, targets: &targets };
    for r in lower.max(1)..=max_rank.min(cands.len()) {
        let mut chosen = Vec::new();
        if !dfs(&ctx, 0, r, &Echelon { rows: Vec::new() }, &mut chosen) {
            continue;
        }
        let a = Mat::from_rows(&chosen.iter().map(|&c| pts[cands[c].0].clone()).collect::<Vec<_>>());
        let b = Mat::from_rows(&chosen.iter().map(|&c| pts[cands[c].1].clone()).collect::<Vec<_>>());
        let basis = Mat::from_cols(&chosen.iter().map(|&c| tensors[c].clone()).collect::<Vec<_>>(), n * n);
        let rhs = Mat::from_cols(&targets, n * n);
        let w = basis.solve(f, &rhs).expect("targets lie in the span").transpose();
        let alg = BilinearAlgorithm::new(Arc::clone(&field), target.clone(), a, b, w)?;
        return Ok(SearchOutcome::Found(alg));
    }
    Ok(SearchOutcome::ExceedsMaxRank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<GaloisField> {
        Arc::new(GaloisField::prime_field(2).unwrap())
    }

    #[test]
    fn f4_needs_three() {
        let f = f2();
        let t = TargetAlgebra::extension_canonical(&f, 2);
        let out = brute_force_min_rank(f.clone(), &t, 3, false).unwrap();
        let SearchOutcome::Found(alg) = out else { panic!("expected a witness") };
        assert_eq!(alg.rank(), 3);
        assert!(alg.verify().unwrap());
        let two = brute_force_min_rank(f, &t, 2, false).unwrap();
        assert!(matches!(two, SearchOutcome::ExceedsMaxRank));
    }

    #[test]
    fn trivial_extension() {
        let f = Arc::new(GaloisField::prime_field(5).unwrap());
        let t = TargetAlgebra::extension_canonical(&f, 1);
        assert_eq!(brute_force_min_rank(f, &t, 1, false).unwrap().rank(), Some(1));
    }

    #[test]
    fn f8_symmetric_exceeds_five() {
        let f = f2();
        let t = TargetAlgebra::extension_canonical(&f, 3);
        assert!(matches!(
            brute_force_min_rank(f.clone(), &t, 5, true).unwrap(),
            SearchOutcome::ExceedsMaxRank
        ));
        let six = brute_force_min_rank(f, &t, 6, true).unwrap();
        assert_eq!(six.rank(), Some(6));
    }

    #[test]
    fn truncated_cube_rank_five_over_f2() {
        let f = f2();
        let t = TargetAlgebra::truncated_canonical(&f, 1, 3);
        let out = brute_force_min_rank(f.clone(), &t, 5, true).unwrap();
        assert_eq!(out.rank(), Some(5));
        assert!(matches!(brute_force_min_rank(f, &t, 4, false).unwrap(), SearchOutcome::ExceedsMaxRank));
    }

    #[test]
    fn guard_counts_binomial_space() {
        let f = Arc::new(GaloisField::prime_field(3).unwrap());
        let t = TargetAlgebra::extension_canonical(&f, 3);
        assert!(brute_force_min_rank(f, &t, 9, false).unwrap_err().is_guard());
    }
}
