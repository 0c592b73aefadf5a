//! Cross-strategy synthesis: estimate every strategy's rank exactly, then
//! realize the best one and certify the result.

pub mod certificate;
pub mod report;

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bilinear::{compose_tower, compose_truncated, schoolbook, BilinearAlgorithm, CostModel, CostTable, TargetAlgebra};
use crate::curve::{builtin_instances, CurveInstance};
use crate::error::{Error, Result};
use crate::genus0::{self, available_places};
use crate::gf::GaloisField;
use crate::guard;
use crate::plan::{optimal_multiset, PlanBounds};

pub use certificate::{load_algorithm, verify_file, verify_str, SynthesisCertificate, VerifyReport};

/// Synthesis strategies; the declaration order breaks rank ties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Tower,
    G0,
    Curve,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Tower, Strategy::G0, Strategy::Curve];
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "tower" | "composition" => Ok(Strategy::Tower),
            "g0" | "genus0" => Ok(Strategy::G0),
            "curve" => Ok(Strategy::Curve),
            other => Err(Error::Parse(format!("unknown strategy {other:?}; expected g0, tower or curve"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Tower => "tower",
            Strategy::G0 => "g0",
            Strategy::Curve => "curve",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SynthOptions {
    pub strategies: BTreeSet<Strategy>,
    pub max_place_degree: Option<usize>,
    pub max_mult: Option<usize>,
    pub instances: Vec<CurveInstance>,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions {
            strategies: Strategy::ALL.into_iter().collect(),
            max_place_degree: None,
            max_mult: None,
            instances: builtin_instances(),
        }
    }
}

impl SynthOptions {
    pub fn with_strategies(strategies: &[Strategy]) -> Self {
        SynthOptions { strategies: strategies.iter().copied().collect(), ..Self::default() }
    }

    fn bounds(&self, dim: usize) -> PlanBounds {
        let d = PlanBounds::for_degree(dim);
        PlanBounds {
            max_degree: self.max_place_degree.unwrap_or(d.max_degree),
            max_mult: self.max_mult.unwrap_or(d.max_mult),
        }
    }
}

/// How a certified algorithm was put together.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StrategyTree {
    Formula { q: u64, m: usize, l: usize, name: String, rank: usize },
    Genus0 { q: u64, m: usize, l: usize, rank: usize, places: Vec<LocalUse> },
    Curve { q: u64, m: usize, l: usize, rank: usize, instance: String, divisor: String },
    Tower { q: u64, m: usize, rank: usize, outer: Box<StrategyTree>, inner: Box<StrategyTree> },
    Truncation { q: u64, m: usize, l: usize, rank: usize, outer: Box<StrategyTree>, inner: Box<StrategyTree> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalUse {
    pub place: String,
    pub mult: usize,
    pub local: StrategyTree,
}

impl StrategyTree {
    pub fn rank(&self) -> usize {
        match self {
            StrategyTree::Formula { rank, .. }
            | StrategyTree::Genus0 { rank, .. }
            | StrategyTree::Curve { rank, .. }
            | StrategyTree::Tower { rank, .. }
            | StrategyTree::Truncation { rank, .. } => *rank,
        }
    }

    /// Names of the constructions used anywhere in the tree.
    pub fn techniques(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<String>) {
        match self {
            StrategyTree::Formula { name, .. } => {
                out.insert(format!("formula:{name}"));
            }
            StrategyTree::Genus0 { places, .. } => {
                out.insert("interpolation on the projective line".into());
                for p in places {
                    p.local.collect(out);
                }
            }
            StrategyTree::Curve { instance, .. } => {
                out.insert(format!("interpolation on curve {instance}"));
            }
            StrategyTree::Tower { outer, inner, .. } => {
                out.insert("tower composition".into());
                outer.collect(out);
                inner.collect(out);
            }
            StrategyTree::Truncation { outer, inner, .. } => {
                out.insert("truncation over an extension".into());
                outer.collect(out);
                inner.collect(out);
            }
        }
    }
}

/// A costed way to realize `F_{q^m}[t]/(t^l)` over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Choice {
    Formula(&'static str),
    Schoolbook,
    Tower(usize),
    Truncation,
    Genus0(Vec<(usize, usize)>),
    Curve(usize),
}

impl Choice {
    /// Leaves first, then the documented strategy order.
    fn order(&self) -> usize {
        match self {
            Choice::Formula(_) => 0,
            Choice::Tower(_) | Choice::Truncation => 1,
            Choice::Genus0(_) => 2,
            Choice::Curve(_) => 3,
            Choice::Schoolbook => 4,
        }
    }
}

type Key = (u64, usize, usize);

fn seeded_formula(m: usize, l: usize) -> Option<&'static str> {
    match (m, l) {
        (1, 1) => Some("identity"),
        (1, 2) => Some("truncated2"),
        (1, 3) => Some("truncated3"),
        (2, 1) => Some("karatsuba"),
        _ => None,
    }
}

/// Memoizing planner; one instance may serve many requests with the same options.
pub struct Planner {
    opts: SynthOptions,
    estimates: RefCell<HashMap<Key, Vec<(usize, Choice)>>>,
    realized: RefCell<HashMap<Key, (BilinearAlgorithm, StrategyTree)>>,
    fields: RefCell<HashMap<u64, Arc<GaloisField>>>,
}

struct LocalCosts<'a> {
    planner: &'a Planner,
    q: u64,
    dim: usize,
}

impl CostModel for LocalCosts<'_> {
    fn cost(&self, d: usize, u: usize) -> Option<usize> {
        if d * u < self.dim {
            Some(self.planner.estimate(self.q, d, u))
        } else {
            Some((d * u) * (d * u))
        }
    }
}

impl Planner {
    pub fn new(opts: SynthOptions) -> Self {
        Planner {
            opts,
            estimates: RefCell::new(HashMap::new()),
            realized: RefCell::new(HashMap::new()),
            fields: RefCell::new(HashMap::new()),
        }
    }

    pub fn options(&self) -> &SynthOptions {
        &self.opts
    }

    fn enabled(&self, s: Strategy) -> bool {
        self.opts.strategies.contains(&s)
    }

    pub fn field(&self, q: u64) -> Result<Arc<GaloisField>> {
        if let Some(f) = self.fields.borrow().get(&q) {
            return Ok(Arc::clone(f));
        }
        let f = Arc::new(GaloisField::of_order(q)?);
        self.fields.borrow_mut().insert(q, Arc::clone(&f));
        Ok(f)
    }

    /// Best estimated rank for `F_{q^m}[t]/(t^l)`.
    pub fn estimate(&self, q: u64, m: usize, l: usize) -> usize {
        self.candidates(q, m, l)[0].0
    }

    fn candidates(&self, q: u64, m: usize, l: usize) -> Vec<(usize, Choice)> {
        if let Some(c) = self.estimates.borrow().get(&(q, m, l)) {
            return c.clone();
        }
        let mut cands: Vec<(usize, Choice)> = Vec::new();
        let dim = m * l;
        cands.push((dim * dim, Choice::Schoolbook));
        if let Some(name) = seeded_formula(m, l) {
            cands.push((2 * dim - 1, Choice::Formula(name)));
        }
        if self.enabled(Strategy::Tower) {
            let limit = guard::limit();
            if l == 1 {
                for a in (2..m).filter(|a| m % a == 0) {
                    if guard::pow_sat(q as u128, a as u32) <= limit {
                        let r = self.estimate(q, a, 1) * self.estimate(q.pow(a as u32), m / a, 1);
                        cands.push((r, Choice::Tower(a)));
                    }
                }
            } else if m > 1 && guard::pow_sat(q as u128, m as u32) <= limit {
                let r = self.estimate(q, m, 1) * self.estimate(q.pow(m as u32), 1, l);
                cands.push((r, Choice::Truncation));
            }
        }
        if self.enabled(Strategy::G0) && dim > 1 {
            let bounds = self.opts.bounds(dim);
            let costs = LocalCosts { planner: self, q, dim };
            let avail = |d: usize| available_places(q as u128, d, m);
            if let Some((shape, cost)) = optimal_multiset(2 * dim - 1, &avail, &costs, bounds) {
                cands.push((cost, Choice::Genus0(shape)));
            }
        }
        if self.enabled(Strategy::Curve) {
            for (i, inst) in self.opts.instances.iter().enumerate() {
                if inst.q() == q && inst.n == m && inst.l == l {
                    let costs = LocalCosts { planner: self, q, dim };
                    let r: usize = inst
                        .items
                        .iter()
                        .map(|it| costs.cost(it.degree, it.mult).unwrap_or(usize::MAX) * it.places.len())
                        .sum();
                    cands.push((r, Choice::Curve(i)));
                }
            }
        }
        cands.sort_by_key(|(r, c)| (*r, c.order()));
        self.estimates.borrow_mut().insert((q, m, l), cands.clone());
        cands
    }

    /// Realizes the best candidate that builds; later candidates are fallbacks.
    pub fn realize(&self, q: u64, m: usize, l: usize) -> Result<(BilinearAlgorithm, StrategyTree)> {
        if let Some(r) = self.realized.borrow().get(&(q, m, l)) {
            return Ok(r.clone());
        }
        let mut last = None;
        for (_, choice) in self.candidates(q, m, l) {
            match self.realize_choice(q, m, l, &choice) {
                Ok(out) => {
                    self.realized.borrow_mut().insert((q, m, l), out.clone());
                    return Ok(out);
                }
                Err(e) if e.is_guard() => return Err(e),
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap_or_else(|| Error::Infeasible(format!("no strategy realizes ({q}, {m}, {l})"))))
    }

    fn local_table(&self, q: u64, dim: usize, shape: &[(usize, usize)]) -> Result<(CostTable, HashMap<(usize, usize), StrategyTree>)> {
        let field = self.field(q)?;
        let mut table = CostTable::empty(Arc::clone(&field));
        let mut trees = HashMap::new();
        for &(d, u) in shape {
            if trees.contains_key(&(d, u)) {
                continue;
            }
            let (alg, tree) = if d * u < dim {
                self.realize(q, d, u)?
            } else {
                let alg = schoolbook(Arc::clone(&field), TargetAlgebra::local(&field, d, u));
                let tree = StrategyTree::Formula { q, m: d, l: u, name: "schoolbook".into(), rank: alg.rank() };
                (alg, tree)
            };
            table.insert(d, u, alg)?;
            trees.insert((d, u), tree);
        }
        Ok((table, trees))
    }

    fn realize_choice(&self, q: u64, m: usize, l: usize, choice: &Choice) -> Result<(BilinearAlgorithm, StrategyTree)> {
        let field = self.field(q)?;
        let f = field.as_ref();
        let dim = m * l;
        match choice {
            Choice::Schoolbook => {
                let alg = schoolbook(Arc::clone(&field), TargetAlgebra::local(f, m, l));
                let rank = alg.rank();
                Ok((alg, StrategyTree::Formula { q, m, l, name: "schoolbook".into(), rank }))
            }
            Choice::Formula(name) => {
                let table = CostTable::seeded(Arc::clone(&field))?;
                let alg = table.get(m, l).cloned().ok_or_else(|| Error::Infeasible(format!("no formula {name}")))?;
                let rank = alg.rank();
                Ok((alg, StrategyTree::Formula { q, m, l, name: name.to_string(), rank }))
            }
            Choice::Tower(a) => {
                let (outer, ot) = self.realize(q, *a, 1)?;
                let (inner, it) = self.realize(q.pow(*a as u32), m / a, 1)?;
                let alg = compose_tower(&outer, &inner)?;
                let rank = alg.rank();
                Ok((alg, StrategyTree::Tower { q, m, rank, outer: Box::new(ot), inner: Box::new(it) }))
            }
            Choice::Truncation => {
                let (outer, ot) = self.realize(q, m, 1)?;
                let (inner, it) = self.realize(q.pow(m as u32), 1, l)?;
                let alg = compose_truncated(&outer, &inner)?;
                let rank = alg.rank();
                Ok((alg, StrategyTree::Truncation { q, m, l, rank, outer: Box::new(ot), inner: Box::new(it) }))
            }
            Choice::Genus0(shape) => {
                let (table, trees) = self.local_table(q, dim, shape)?;
                let costs = LocalCosts { planner: self, q, dim };
                let plan = genus0::plan_search(f, m, l, &costs, self.opts.bounds(dim))?;
                let alg = genus0::build(&field, &plan, &table)?;
                let places = plan
                    .items
                    .iter()
                    .map(|(p, u)| LocalUse { place: p.to_string(), mult: *u, local: trees[&(p.degree(), *u)].clone() })
                    .collect();
                let rank = alg.rank();
                Ok((alg, StrategyTree::Genus0 { q, m, l, rank, places }))
            }
            Choice::Curve(i) => {
                let inst = &self.opts.instances[*i];
                let shape: Vec<(usize, usize)> = inst.items.iter().map(|it| (it.degree, it.mult)).collect();
                let (table, _) = self.local_table(q, dim, &shape)?;
                if inst.model()?.field.spec() != f.spec() {
                    return Err(Error::FieldMismatch(format!("instance {} uses another model of F_{q}", inst.name)));
                }
                let built = inst.build(&table)?;
                let rank = built.algorithm.rank();
                let tree = StrategyTree::Curve {
                    q,
                    m,
                    l,
                    rank,
                    instance: inst.name.clone(),
                    divisor: built.divisor.to_string(),
                };
                Ok((built.algorithm, tree))
            }
        }
    }
}

/// Best verified algorithm for `F_{q^n}` over `F_q`.
pub fn synth(q: u64, n: usize, opts: &SynthOptions) -> Result<SynthesisCertificate> {
    synth_truncated(q, n, 1, opts)
}

/// Best verified algorithm for `F_{q^m}[t]/(t^l)` over `F_q`.
pub fn synth_truncated(q: u64, m: usize, l: usize, opts: &SynthOptions) -> Result<SynthesisCertificate> {
    if m == 0 || l == 0 {
        return Err(Error::Dimension("degree and truncation order must be at least 1".into()));
    }
    let planner = Planner::new(opts.clone());
    planner.field(q)?;
    let (alg, tree) = planner.realize(q, m, l)?;
    SynthesisCertificate::new(q, m, l, tree, &alg)
}
