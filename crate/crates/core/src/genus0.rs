//! Interpolation on the projective line: places are monic irreducibles plus
//! infinity, and L(D) is a space of polynomials of bounded degree.

use std::fmt;
use std::sync::Arc;

use crate::bilinear::{BilinearAlgorithm, CostModel, CostTable, TargetAlgebra};
use crate::error::{Error, Result};
use crate::gf::irreducible::{self, IrreducibleWalk};
use crate::gf::{roots, ExtField, Field, GaloisField, Poly};
use crate::interp::{Interpolation, LocalEval};
use crate::linalg::Mat;
use crate::plan::{optimal_multiset, PlanBounds};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum G0Place {
    Finite(Poly<u32>),
    Infinity,
}

impl G0Place {
    pub fn finite(f: &GaloisField, p: Poly<u32>) -> Result<Self> {
        if !p.is_monic(f) || !irreducible::is_irreducible(f, &p) {
            return Err(Error::InvalidField("a finite place must be a monic irreducible".into()));
        }
        Ok(G0Place::Finite(p))
    }

    pub fn degree(&self) -> usize {
        match self {
            G0Place::Finite(p) => p.deg().unwrap(),
            G0Place::Infinity => 1,
        }
    }
}

impl fmt::Display for G0Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            G0Place::Finite(p) => write!(f, "{}", p.display()),
            G0Place::Infinity => write!(f, "inf"),
        }
    }
}

/// Places of degree `d`: irreducibles in lexicographic order, then infinity for `d = 1`.
pub fn enumerate_g0_places(f: &GaloisField, d: usize) -> Result<Vec<G0Place>> {
    let mut out: Vec<G0Place> = irreducible::irreducibles(f, d)?
        .into_iter()
        .map(G0Place::Finite)
        .collect();
    if d == 1 {
        out.push(G0Place::Infinity);
    }
    Ok(out)
}

/// Number of places of degree `d` other than the degree-`n` place Q.
pub fn available_places(q: u128, d: usize, n: usize) -> usize {
    let mut c = irreducible::count_irreducibles(q, d as u32);
    if d == 1 {
        c += 1;
    }
    if d == n {
        c -= 1;
    }
    c.min(usize::MAX as u128) as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalPlan {
    pub n: usize,
    pub l: usize,
    /// The degree-`n` place realizing the target.
    pub modulus: Poly<u32>,
    pub items: Vec<(G0Place, usize)>,
    pub cost: usize,
}

impl EvalPlan {
    /// Validates the plan invariants and prices it with `cost`.
    pub fn new(
        f: &GaloisField,
        n: usize,
        l: usize,
        modulus: Poly<u32>,
        items: Vec<(G0Place, usize)>,
        cost: &dyn CostModel,
    ) -> Result<Self> {
        if modulus.deg() != Some(n) || !modulus.is_monic(f) || !irreducible::is_irreducible(f, &modulus) {
            return Err(Error::InvalidField(format!("Q must be monic irreducible of degree {n}")));
        }
        let mut total = 0;
        for (i, (p, u)) in items.iter().enumerate() {
            if *p == G0Place::Finite(modulus.clone()) {
                return Err(Error::SupportOverlap("Q is among the evaluation places".into()));
            }
            if items[..i].iter().any(|(o, _)| o == p) {
                return Err(Error::SupportOverlap(format!("place {p} repeated")));
            }
            if *u == 0 {
                return Err(Error::Dimension("multiplicity must be at least 1".into()));
            }
            total += cost
                .cost(p.degree(), *u)
                .ok_or_else(|| Error::Infeasible(format!("no cost for ({}, {u})", p.degree())))?;
        }
        let plan = EvalPlan { n, l, modulus, items, cost: total };
        if plan.degree_sum() < 2 * n * l - 1 {
            return Err(Error::Infeasible(format!(
                "degree sum {} below 2nl - 1 = {}",
                plan.degree_sum(),
                2 * n * l - 1
            )));
        }
        Ok(plan)
    }

    pub fn degree_sum(&self) -> usize {
        self.items.iter().map(|(p, u)| p.degree() * u).sum()
    }

    /// `(d, u)` pairs in ascending order.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.items.iter().map(|(p, u)| (p.degree(), *u)).collect();
        v.sort();
        v
    }
}

/// Minimal-cost plan for F_{q^n}[t]/(t^l) (F_{q^n} when `l = 1`) with Q the
/// canonical irreducible of degree `n`.
pub fn plan_search(
    f: &GaloisField,
    n: usize,
    l: usize,
    cost: &dyn CostModel,
    bounds: PlanBounds,
) -> Result<EvalPlan> {
    let q = f.order();
    let need = 2 * n * l - 1;
    let avail = |d: usize| available_places(q, d, n);
    let (shape, _) = optimal_multiset(need, &avail, cost, bounds)
        .ok_or_else(|| Error::Infeasible(format!("no plan within degree {} and multiplicity {}", bounds.max_degree, bounds.max_mult)))?;
    let modulus = irreducible::least_irreducible(f, n);
    let items = assign_places(f, &shape, &modulus);
    EvalPlan::new(f, n, l, modulus, items, cost)
}

/// Gives the sorted `(d, u)` shape concrete places, in place order per degree.
fn assign_places(f: &GaloisField, shape: &[(usize, usize)], modulus: &Poly<u32>) -> Vec<(G0Place, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < shape.len() {
        let d = shape[i].0;
        let group: Vec<usize> = shape[i..].iter().take_while(|(dd, _)| *dd == d).map(|(_, u)| *u).collect();
        let mut places = IrreducibleWalk::new(f, d)
            .filter(|p| p != modulus)
            .map(G0Place::Finite)
            .chain(std::iter::once(G0Place::Infinity).filter(|_| d == 1));
        for &u in &group {
            out.push((places.next().expect("availability was counted"), u));
        }
        i += group.len();
    }
    out
}

/// `(root + t)^j` truncated to `terms` coefficients, for `j < count`; each
/// coefficient as a coordinate vector.
fn shifted_powers(k: &ExtField, root: &[u32], count: usize, terms: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::with_capacity(count);
    let mut cur = vec![k.zero(); terms];
    cur[0] = k.one();
    for _ in 0..count {
        out.push(cur.clone());
        let mut next = vec![k.zero(); terms];
        for i in 0..terms {
            next[i] = k.mul(&cur[i], &root.to_vec());
            if i > 0 {
                next[i] = k.add(&next[i], &cur[i - 1]);
            }
        }
        cur = next;
    }
    out
}

fn expansion_matrix(powers: &[Vec<Vec<u32>>], d: usize, terms: usize) -> Mat {
    let cols: Vec<Vec<u32>> = powers.iter().map(|s| s.iter().flatten().copied().collect()).collect();
    Mat::from_cols(&cols, d * terms)
}

/// Local expansion of `x^j` (`j < count`) at a place, twisted by `t^twist` at infinity.
fn local_matrix(field: &Arc<GaloisField>, place: &G0Place, u: usize, count: usize, twist: usize) -> Mat {
    match place {
        G0Place::Infinity => {
            let mut m = Mat::zeros(u, count);
            for j in 0..count.min(twist + 1) {
                let k = twist - j;
                if k < u {
                    m.set(k, j, 1);
                }
            }
            m
        }
        G0Place::Finite(pi) => {
            let d = pi.deg().unwrap();
            let k = ExtField::canonical(Arc::clone(field), d);
            let beta = roots::least_root(&k, &k.embed_poly(pi)).expect("irreducible splits over its extension");
            expansion_matrix(&shifted_powers(&k, &beta, count, u), d, u)
        }
    }
}

/// Assembles the algorithm of a plan; errors signal an inconsistent plan.
pub fn build(field: &Arc<GaloisField>, plan: &EvalPlan, table: &CostTable) -> Result<BilinearAlgorithm> {
    let f = field.as_ref();
    let (n, l) = (plan.n, plan.l);
    let k1 = n * l;
    let k2 = 2 * n * l - 1;
    let target = if l == 1 {
        TargetAlgebra::extension(f, plan.modulus.clone())?
    } else {
        TargetAlgebra::truncated(f, plan.modulus.clone(), l)?
    };
    let kq = ExtField::new_unchecked(Arc::clone(field), plan.modulus.clone());
    let alpha = kq.generator();
    let q_pows = shifted_powers(&kq, &alpha, k2, l);
    let evq = expansion_matrix(&q_pows, n, l);
    let evq1 = expansion_matrix(&q_pows[..k1], n, l);
    let s = evq1
        .inverse(f)
        .ok_or_else(|| Error::Condition("evaluation at Q is not onto".into()))?;
    let c1 = k1 - 1;
    let mut locals = Vec::new();
    for (p, u) in &plan.items {
        let e1 = local_matrix(field, p, *u, k1, c1);
        let e12 = local_matrix(field, p, *u, k2, 2 * c1);
        locals.push(LocalEval { e2: e1.clone(), e1, e12, alg: table.algorithm(p.degree(), *u) });
    }
    let interp = Interpolation { field: Arc::clone(field), target, s1: s.clone(), s2: s, evq, locals };
    let alg = interp.assemble()?;
    if !alg.verify()? {
        return Err(Error::Verification("genus-0 assembly does not verify".into()));
    }
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> Arc<GaloisField> {
        Arc::new(GaloisField::of_order(q).unwrap())
    }

    #[test]
    fn place_lists() {
        let f2 = field(2);
        let p1 = enumerate_g0_places(&f2, 1).unwrap();
        assert_eq!(p1.iter().map(|p| p.to_string()).collect::<Vec<_>>(), vec!["x", "x + 1", "inf"]);
        assert_eq!(enumerate_g0_places(&f2, 2).unwrap().len(), 1);
        assert_eq!(enumerate_g0_places(&field(3), 1).unwrap().len(), 4);
    }

    #[test]
    fn q5_n3_uses_five_rational_places() {
        let f = field(5);
        let t = CostTable::seeded(f.clone()).unwrap();
        let plan = plan_search(&f, 3, 1, &t, PlanBounds::for_degree(3)).unwrap();
        assert_eq!(plan.cost, 5);
        assert_eq!(plan.shape(), vec![(1, 1); 5]);
        let alg = build(&f, &plan, &t).unwrap();
        assert_eq!(alg.rank(), 5);
        assert!(alg.is_symmetric());
    }

    #[test]
    fn q2_n3_plan() {
        let f = field(2);
        let t = CostTable::seeded(f.clone()).unwrap();
        let plan = plan_search(&f, 3, 1, &t, PlanBounds::for_degree(3)).unwrap();
        assert_eq!(plan.cost, 6);
        let names: Vec<String> = plan.items.iter().map(|(p, u)| format!("{p}@{u}")).collect();
        assert_eq!(names, vec!["x@1", "x + 1@1", "inf@1", "x^2 + x + 1@1"]);
        assert_eq!(build(&f, &plan, &t).unwrap().rank(), 6);
    }

    #[test]
    fn q2_n4_genus_zero_cost_ten() {
        let f = field(2);
        let t = CostTable::seeded(f.clone()).unwrap();
        let plan = plan_search(&f, 4, 1, &t, PlanBounds::for_degree(4)).unwrap();
        assert_eq!(plan.cost, 10);
        assert!(plan.degree_sum() >= 7);
        assert_eq!(build(&f, &plan, &t).unwrap().rank(), 10);
    }

    #[test]
    fn q2_n2_karatsuba_equivalent() {
        let f = field(2);
        let t = CostTable::seeded(f.clone()).unwrap();
        let plan = plan_search(&f, 2, 1, &t, PlanBounds::for_degree(2)).unwrap();
        assert_eq!(plan.items.len(), 3);
        assert_eq!(build(&f, &plan, &t).unwrap().rank(), 3);
    }

    #[test]
    fn truncated_target_with_derived_infinity() {
        let f = field(2);
        let t = CostTable::seeded(f.clone()).unwrap();
        let x = Poly::new(f.as_ref(), vec![0, 1]);
        let x1 = Poly::new(f.as_ref(), vec![1, 1]);
        let items = vec![(G0Place::Finite(x1), 1), (G0Place::Infinity, 2)];
        let plan = EvalPlan::new(&f, 1, 2, x, items, &t).unwrap();
        assert_eq!(plan.cost, 4);
        let alg = build(&f, &plan, &t).unwrap();
        assert_eq!(alg.rank(), 4);
        assert!(alg.verify().unwrap());
    }

    #[test]
    fn plan_rejects_q_as_item() {
        let f = field(2);
        let t = CostTable::seeded(f.clone()).unwrap();
        let q = Poly::new(f.as_ref(), vec![1, 1, 1]);
        let items = vec![(G0Place::Finite(q.clone()), 2), (G0Place::Infinity, 1)];
        assert!(matches!(EvalPlan::new(&f, 2, 1, q, items, &t), Err(Error::SupportOverlap(_))));
    }

    #[test]
    fn higher_degree_places_in_odd_characteristic() {
        let f = field(3);
        let t = CostTable::seeded(f.clone()).unwrap();
        for n in 2..=5 {
            let plan = plan_search(&f, n, 1, &t, PlanBounds::for_degree(n)).unwrap();
            let alg = build(&f, &plan, &t).unwrap();
            assert_eq!(alg.rank(), plan.cost);
        }
    }
}
