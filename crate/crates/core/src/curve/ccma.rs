//! Assembly of multiplication algorithms from evaluation on a curve.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::divisor::CurveDivisor;
use super::function::{expand_all, FunctionElement};
use super::model::{CurveJson, CurveModel};
use super::place::{enumerate_curve_places, find_degree_place, CurvePlace};
use super::riemann_roch::riemann_roch_basis;
use crate::bilinear::{BilinearAlgorithm, CostTable, TargetAlgebra};
use crate::error::{Error, Result};
use crate::interp::{Interpolation, LocalEval};
use crate::linalg::Mat;

/// Candidate cap for [`find_divisor`].
pub const MAX_CANDIDATES: usize = 5000;

/// Outcome of checking the interpolation conditions for `(Q, D1, D2, G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub dim_l1: usize,
    pub dim_l2: usize,
    pub dim_l12: usize,
    pub rank_q1: usize,
    pub rank_q2: usize,
    pub rank_eval: usize,
    /// Evaluation at Q maps L(D1) and L(D2) onto the target.
    pub surjective: bool,
    /// Evaluation at the places of G is injective on L(D1+D2).
    pub injective: bool,
    /// `deg Di - l·n ≥ 2g - 1`, which forces surjectivity.
    pub numeric_surjective: bool,
    /// `deg(D1 + D2) < deg G`, which forces injectivity.
    pub numeric_injective: bool,
}

impl ConditionReport {
    pub fn passes(&self) -> bool {
        self.surjective && self.injective
    }
}

/// Twisted local evaluation: coefficients of `t^c·f` at `t^0 .. t^{u-1}` for
/// each basis function, `c` the coefficient of the place in the divisor.
pub fn twisted_eval(curve: &CurveModel, basis: &[FunctionElement], place: &CurvePlace, u: usize, twist: i64) -> Mat {
    let d = place.degree();
    let k = place.residue_field(curve);
    let series = expand_all(curve, basis, place, u as i64 - twist);
    let mut m = Mat::zeros(d * u, basis.len());
    for (j, s) in series.iter().enumerate() {
        for e in 0..u {
            for (i, v) in s.coeff(&k, e as i64 - twist).iter().enumerate() {
                m.set(e * d + i, j, *v);
            }
        }
    }
    m
}

struct Spaces {
    b1: Vec<FunctionElement>,
    b2: Vec<FunctionElement>,
    b12: Vec<FunctionElement>,
    evq1: Mat,
    evq2: Mat,
}

fn check_support(q: &CurvePlace, d1: &CurveDivisor, d2: &CurveDivisor, g: &CurveDivisor) -> Result<()> {
    if *q == CurvePlace::Infinity {
        return Err(Error::Unsupported("Q must be a finite place".into()));
    }
    for (name, d) in [("D1", d1), ("D2", d2), ("G", g)] {
        if d.contains(q) {
            return Err(Error::SupportOverlap(format!("Q lies in the support of {name}")));
        }
    }
    if !g.is_effective() {
        return Err(Error::Dimension("evaluation multiplicities must be positive".into()));
    }
    Ok(())
}

fn spaces(curve: &CurveModel, q: &CurvePlace, d1: &CurveDivisor, d2: &CurveDivisor, l: usize) -> Result<Spaces> {
    let b1 = riemann_roch_basis(curve, d1)?;
    let b2 = if d1 == d2 { b1.clone() } else { riemann_roch_basis(curve, d2)? };
    let evq1 = twisted_eval(curve, &b1, q, l, 0);
    let evq2 = if d1 == d2 { evq1.clone() } else { twisted_eval(curve, &b2, q, l, 0) };
    Ok(Spaces { b1, b2, b12: Vec::new(), evq1, evq2 })
}

fn report(
    curve: &CurveModel,
    q: &CurvePlace,
    d1: &CurveDivisor,
    d2: &CurveDivisor,
    g: &CurveDivisor,
    l: usize,
    early_exit: bool,
) -> Result<(ConditionReport, Spaces)> {
    check_support(q, d1, d2, g)?;
    let f = curve.field.as_ref();
    let nl = q.degree() * l;
    let mut sp = spaces(curve, q, d1, d2, l)?;
    let rank_q1 = sp.evq1.rank(f);
    let rank_q2 = if d1 == d2 { rank_q1 } else { sp.evq2.rank(f) };
    let surjective = rank_q1 == nl && rank_q2 == nl;
    let gen = 2 * curve.genus as i64 - 1;
    let mut rep = ConditionReport {
        dim_l1: sp.b1.len(),
        dim_l2: sp.b2.len(),
        dim_l12: 0,
        rank_q1,
        rank_q2,
        rank_eval: 0,
        surjective,
        injective: false,
        numeric_surjective: d1.degree() - nl as i64 >= gen && d2.degree() - nl as i64 >= gen,
        numeric_injective: d1.degree() + d2.degree() < g.degree(),
    };
    if early_exit && !surjective {
        return Ok((rep, sp));
    }
    let d12 = d1.add(d2);
    sp.b12 = riemann_roch_basis(curve, &d12)?;
    rep.dim_l12 = sp.b12.len();
    let e = evaluation_matrix(curve, &sp.b12, &d12, g);
    rep.rank_eval = e.rank(f);
    rep.injective = rep.rank_eval == rep.dim_l12;
    Ok((rep, sp))
}

fn evaluation_matrix(curve: &CurveModel, basis: &[FunctionElement], d: &CurveDivisor, g: &CurveDivisor) -> Mat {
    g.terms().fold(Mat::zeros(0, basis.len()), |acc, (p, u)| {
        acc.vstack(&twisted_eval(curve, basis, p, u as usize, d.coeff(p)))
    })
}

/// Checks that evaluation at `Q` (to order `l`) is onto on L(D1) and L(D2),
/// and that evaluation along `G` is injective on L(D1+D2). Places of G may
/// meet the supports of D1 and D2; evaluation there is twisted.
pub fn check_conditions(
    curve: &CurveModel,
    q: &CurvePlace,
    d1: &CurveDivisor,
    d2: &CurveDivisor,
    g: &CurveDivisor,
    l: usize,
) -> Result<ConditionReport> {
    report(curve, q, d1, d2, g, l, false).map(|r| r.0)
}

/// Divisor of degree `n·l + g - 1` passing the conditions with `D1 = D2 = D`:
/// first `(deg - k)·O + E` for effective `E` of degree `k ≤ g` on rational
/// places, then random translates by differences of rational places.
pub fn find_divisor(curve: &CurveModel, q: &CurvePlace, g: &CurveDivisor, l: usize, seed: u64) -> Result<CurveDivisor> {
    let deg = (q.degree() * l + curve.genus) as i64 - 1;
    let rational: Vec<CurvePlace> = enumerate_curve_places(curve, 1)?.into_iter().filter(|p| p != q).collect();
    let base = CurveDivisor::single(CurvePlace::Infinity, deg);
    let mut structured = Vec::new();
    for k in 0..=curve.genus.min(deg.max(0) as usize) {
        for combo in multisets(rational.len(), k) {
            let mut d = base.clone();
            d.add_term(CurvePlace::Infinity, -(k as i64));
            for i in combo {
                d.add_term(rational[i].clone(), 1);
            }
            structured.push(d);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::new();
    for i in 0..MAX_CANDIDATES {
        let cand = if i < structured.len() {
            structured[i].clone()
        } else {
            let mut d = structured[rng.gen_range(0..structured.len())].clone();
            for _ in 0..rng.gen_range(1..=3) {
                d.add_term(rational[rng.gen_range(0..rational.len())].clone(), 1);
                d.add_term(rational[rng.gen_range(0..rational.len())].clone(), -1);
            }
            d
        };
        if !seen.insert(cand.clone()) {
            continue;
        }
        if report(curve, q, &cand, &cand, g, l, true)?.0.passes() {
            return Ok(cand);
        }
    }
    Err(Error::SearchExhausted(MAX_CANDIDATES))
}

/// Sorted `k`-multisets of `0..n`.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in multisets(n, k - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for i in lo..n {
            let mut v = rest.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

/// Builds the algorithm for `F_{q^n}[t]/(t^l)` (`F_{q^n}` when `l = 1`),
/// identifying the residue field at Q with the canonical `F_{q^n}` through the
/// stored representative point.
pub fn ccma_build_curve(
    curve: &CurveModel,
    q: &CurvePlace,
    d1: &CurveDivisor,
    d2: &CurveDivisor,
    g: &CurveDivisor,
    l: usize,
    table: &CostTable,
) -> Result<BilinearAlgorithm> {
    let field = &curve.field;
    let f = field.as_ref();
    let (rep, sp) = report(curve, q, d1, d2, g, l, true)?;
    if !rep.surjective {
        return Err(Error::Condition(format!(
            "evaluation at Q is not onto (ranks {} and {}, need {})",
            rep.rank_q1,
            rep.rank_q2,
            q.degree() * l
        )));
    }
    if !rep.injective {
        return Err(Error::Condition(format!(
            "evaluation on L(D1+D2) is not injective (rank {} < {})",
            rep.rank_eval, rep.dim_l12
        )));
    }
    let section = |ev: &Mat| {
        ev.transpose()
            .left_inverse(f)
            .map(|m| m.transpose())
            .ok_or_else(|| Error::Condition("evaluation at Q is not onto".into()))
    };
    let s1 = section(&sp.evq1)?;
    let s2 = if d1 == d2 { s1.clone() } else { section(&sp.evq2)? };
    let d12 = d1.add(d2);
    let evq = twisted_eval(curve, &sp.b12, q, l, 0);
    let mut locals = Vec::new();
    for (p, u) in g.terms() {
        let u = u as usize;
        let e1 = twisted_eval(curve, &sp.b1, p, u, d1.coeff(p));
        let e2 = if d1 == d2 { e1.clone() } else { twisted_eval(curve, &sp.b2, p, u, d2.coeff(p)) };
        let e12 = twisted_eval(curve, &sp.b12, p, u, d12.coeff(p));
        locals.push(LocalEval { e1, e2, e12, alg: table.algorithm(p.degree(), u) });
    }
    let n = q.degree();
    let target = if l == 1 {
        TargetAlgebra::extension_canonical(f, n)
    } else {
        TargetAlgebra::truncated_canonical(f, n, l)
    };
    let interp = Interpolation { field: Arc::clone(field), target, s1, s2, evq, locals };
    let alg = interp.assemble()?;
    if !alg.verify()? {
        return Err(Error::Verification("curve assembly does not verify".into()));
    }
    Ok(alg)
}

/// Evaluation places of an instance, by degree and index into
/// [`enumerate_curve_places`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemSpec {
    pub degree: usize,
    pub mult: usize,
    pub places: Vec<usize>,
}

/// A shipped or user-supplied curve configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInstance {
    pub name: String,
    pub curve: CurveJson,
    pub n: usize,
    #[serde(default = "one")]
    pub l: usize,
    pub items: Vec<ItemSpec>,
    #[serde(default)]
    pub seed: u64,
}

fn one() -> usize {
    1
}

/// Everything needed to reproduce a curve build.
#[derive(Clone, Debug)]
pub struct CurveBuild {
    pub curve: CurveModel,
    pub q: CurvePlace,
    pub divisor: CurveDivisor,
    pub evaluation: CurveDivisor,
    pub report: ConditionReport,
    pub algorithm: BilinearAlgorithm,
}

impl CurveInstance {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn model(&self) -> Result<CurveModel> {
        CurveModel::from_json(&self.curve)
    }

    pub fn q(&self) -> u64 {
        self.curve.base.order() as u64
    }

    /// The divisor G of evaluation places with multiplicities.
    pub fn evaluation_divisor(&self, curve: &CurveModel) -> Result<CurveDivisor> {
        let mut g = CurveDivisor::zero();
        for it in &self.items {
            let places = enumerate_curve_places(curve, it.degree)?;
            for &i in &it.places {
                let p = places.get(i).ok_or_else(|| {
                    Error::Parse(format!("{}: no place {i} of degree {}", self.name, it.degree))
                })?;
                if g.contains(p) {
                    return Err(Error::SupportOverlap(format!("{}: place {p} listed twice", self.name)));
                }
                g.add_term(p.clone(), it.mult as i64);
            }
        }
        Ok(g)
    }

    /// Sum of local costs, without building anything.
    pub fn estimated_rank(&self, table: &CostTable) -> Option<usize> {
        use crate::bilinear::CostModel;
        self.items
            .iter()
            .map(|it| table.cost(it.degree, it.mult).map(|c| c * it.places.len()))
            .sum()
    }

    pub fn build(&self, table: &CostTable) -> Result<CurveBuild> {
        let curve = self.model()?;
        if curve.field.spec() != table.field().spec() {
            return Err(Error::FieldMismatch("cost table is over a different field".into()));
        }
        let q = find_degree_place(&curve, self.n)?;
        let g = self.evaluation_divisor(&curve)?;
        let divisor = find_divisor(&curve, &q, &g, self.l, self.seed)?;
        let report = check_conditions(&curve, &q, &divisor, &divisor, &g, self.l)?;
        let algorithm = ccma_build_curve(&curve, &q, &divisor, &divisor, &g, self.l, table)?;
        Ok(CurveBuild { curve, q, divisor, evaluation: g, report, algorithm })
    }
}

/// The instances shipped with the library.
pub fn builtin_instances() -> Vec<CurveInstance> {
    [
        include_str!("../../data/curves/fermat_f4.json"),
        include_str!("../../data/curves/hyperelliptic_f16.json"),
        include_str!("../../data/curves/elliptic_f3.json"),
    ]
    .iter()
    .map(|s| CurveInstance::from_json(s).expect("shipped curve config parses"))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::model::CurveShape;
    use crate::gf::GaloisField;

    fn fermat() -> CurveModel {
        CurveModel::weierstrass(Arc::new(GaloisField::of_order(4).unwrap()), [0, 0, 1, 0, 1]).unwrap()
    }

    fn rational_g(curve: &CurveModel, count: usize) -> CurveDivisor {
        enumerate_curve_places(curve, 1)
            .unwrap()
            .into_iter()
            .take(count)
            .fold(CurveDivisor::zero(), |d, p| d.add(&CurveDivisor::single(p, 1)))
    }

    #[test]
    fn multisets_count() {
        assert_eq!(multisets(4, 2).len(), 10);
        assert_eq!(multisets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn undersized_g_is_not_injective() {
        let c = fermat();
        let q = find_degree_place(&c, 4).unwrap();
        let d = CurveDivisor::single(CurvePlace::Infinity, 4);
        let r = check_conditions(&c, &q, &d, &d, &rational_g(&c, 7), 1).unwrap();
        assert!(!r.injective);
        assert!(!r.numeric_injective);
        assert_eq!(r.dim_l12, 8);
    }

    #[test]
    fn q_in_support_is_rejected() {
        let c = fermat();
        let q = find_degree_place(&c, 4).unwrap();
        let d = CurveDivisor::single(q.clone(), 1);
        let g = rational_g(&c, 8);
        assert!(matches!(check_conditions(&c, &q, &d, &d, &g, 1), Err(Error::SupportOverlap(_))));
    }

    #[test]
    fn fermat_curve_rank_eight() {
        let c = fermat();
        let table = CostTable::seeded(Arc::clone(&c.field)).unwrap();
        let q = find_degree_place(&c, 4).unwrap();
        let g = rational_g(&c, 8);
        let d = find_divisor(&c, &q, &g, 1, 0).unwrap();
        assert_eq!(d.degree(), 4);
        let r = check_conditions(&c, &q, &d, &d, &g, 1).unwrap();
        assert!(r.surjective && r.injective);
        let alg = ccma_build_curve(&c, &q, &d, &d, &g, 1, &table).unwrap();
        assert_eq!(alg.rank(), 8);
        assert!(alg.is_symmetric());
    }

    #[test]
    fn rational_curve_matches_genus_zero() {
        let f = Arc::new(GaloisField::of_order(2).unwrap());
        let c = CurveModel::new(Arc::clone(&f), CurveShape::Rational, 0).unwrap();
        let table = CostTable::seeded(Arc::clone(&f)).unwrap();
        let q = find_degree_place(&c, 2).unwrap();
        let g = rational_g(&c, 3);
        let d = find_divisor(&c, &q, &g, 1, 0).unwrap();
        assert_eq!(d, CurveDivisor::single(CurvePlace::Infinity, 1));
        let alg = ccma_build_curve(&c, &q, &d, &d, &g, 1, &table).unwrap();
        let plan = crate::genus0::plan_search(&f, 2, 1, &table, crate::plan::PlanBounds::for_degree(2)).unwrap();
        assert_eq!(alg.rank(), crate::genus0::build(&f, &plan, &table).unwrap().rank());
    }

    #[test]
    fn truncated_target_on_a_curve() {
        let c = fermat();
        let table = CostTable::seeded(Arc::clone(&c.field)).unwrap();
        let q = find_degree_place(&c, 1).unwrap();
        let g = enumerate_curve_places(&c, 1)
            .unwrap()
            .into_iter()
            .filter(|p| *p != q)
            .take(6)
            .fold(CurveDivisor::zero(), |d, p| d.add(&CurveDivisor::single(p, 1)));
        let d = find_divisor(&c, &q, &g, 3, 0).unwrap();
        assert_eq!(d.degree(), 3);
        let alg = ccma_build_curve(&c, &q, &d, &d, &g, 3, &table).unwrap();
        assert_eq!(alg.rank(), 6);
        assert_eq!(alg.target.local_params(), (1, 3, &crate::gf::Poly::x(c.field.as_ref())));
    }

    #[test]
    fn no_degree_two_places_on_the_maximal_curve() {
        assert!(enumerate_curve_places(&fermat(), 2).unwrap().is_empty());
        assert!(matches!(find_degree_place(&fermat(), 2), Err(Error::SearchExhausted(_))));
    }
}
