//! Upper-limit bounds on `M_q` and `M^sym_q` from curve-family parameters.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::finite::{exact_sqrt, prime_power, BoundResult};
use super::value::{int, parse_exact, rat, BoundValue, Rational};
use crate::error::{Error, Result};

/// Dense curve-family constants `A'_r(q)`, supplied by the caller.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AsymptoticParams {
    values: BTreeMap<(u64, u32), Rational>,
}

#[derive(Serialize, Deserialize)]
struct ParamEntry {
    q: u64,
    r: u32,
    value: String,
    #[serde(default)]
    note: String,
}

impl AsymptoticParams {
    pub fn insert(&mut self, q: u64, r: u32, value: Rational) -> Result<()> {
        if r == 0 || value < int(0) {
            return Err(Error::Parse(format!("A'_{r}({q}) must have r >= 1 and be nonnegative")));
        }
        self.values.insert((q, r), value);
        Ok(())
    }

    pub fn get(&self, q: u64, r: u32) -> Option<Rational> {
        self.values.get(&(q, r)).copied()
    }

    /// Parses `[{"q":2,"r":2,"value":"1/2"}, ...]`.
    pub fn from_json(s: &str) -> Result<Self> {
        let entries: Vec<ParamEntry> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = Self::default();
        for e in entries {
            let v = parse_exact(&e.value).ok_or_else(|| Error::Parse(format!("not a rational: {:?}", e.value)))?;
            out.insert(e.q, e.r, v)?;
        }
        Ok(out)
    }

    /// The shipped reference values.
    pub fn reference() -> Self {
        Self::from_json(include_str!("../../data/asymptotic_params.json")).expect("shipped parameters parse")
    }
}

/// `A'_2(q) = (q - 1)/2`.
pub fn a_prime_degree2(q: u64) -> Rational {
    rat(q as i128 - 1, 2)
}

/// `A'_1(q) = √q - 1` for square `q`.
pub fn a_prime_square(q: u64) -> Option<Rational> {
    exact_sqrt(q).map(|s| int(s as i128 - 1))
}

/// Upper cap `(√(q^r) - 1)/r`, when `q^r` is a square.
pub fn a_r_cap(q: u64, r: u32) -> Option<Rational> {
    exact_sqrt(q.checked_pow(r)?).map(|s| rat(s as i128 - 1, r as i128))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymClause {
    A,
    B,
    C,
    D,
}

impl SymClause {
    pub fn label(self) -> &'static str {
        match self {
            SymClause::A => "a",
            SymClause::B => "b",
            SymClause::C => "c",
            SymClause::D => "d",
        }
    }
}

/// Inputs of a rank-length bound: degree `r`, length `l`, a bound `μ` on
/// the complexity of `F_{q^r}[t]/(t^l)`, and `A'_r(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankLength {
    pub r: u32,
    pub l: u32,
    pub mu: u64,
    pub a_prime: Rational,
}

impl RankLength {
    fn params(&self) -> String {
        format!("r={},l={},mu={},A'={}", self.r, self.l, self.mu, show(self.a_prime))
    }

    fn base(&self) -> Rational {
        rat(2 * self.mu as i128, (self.r * self.l) as i128)
    }

    fn x(&self) -> Rational {
        int((self.r * self.l) as i128) * self.a_prime
    }
}

fn show(r: Rational) -> String {
    BoundValue::Exact(r).render_exact()
}

/// Symmetric upper-limit bound, clause `(a)` to `(d)`.
pub fn rank_length_sym(q: u64, clause: SymClause, rl: RankLength) -> BoundResult {
    let name = format!("rank-length-sym({})", clause.label());
    let base = rl.base();
    let x = rl.x();
    let even = q % 2 == 0;
    let log2 = (2f64).ln() / (q as f64).ln();
    let (applicable, note) = match clause {
        SymClause::A => (rl.r == 1 && rl.a_prime > int(5) && x > int(1), "needs r = 1 and A'_1(q) > 5"),
        SymClause::B => (x > int(2), "needs rl·A'_r(q) > 2"),
        SymClause::C => (even && x.to_f64().unwrap() - 1.0 - log2 > 0.0, "needs q even and a positive denominator"),
        SymClause::D => (!even && x.to_f64().unwrap() - 1.0 - 2.0 * log2 > 0.0, "needs q odd and a positive denominator"),
    };
    BoundResult::new(&name, q, rl.params(), applicable, || match clause {
        SymClause::A => BoundValue::Exact(base * (int(1) + int(1) / (x - int(1)))),
        SymClause::B => BoundValue::Exact(base * (int(1) + int(2) / (x - int(2)))),
        SymClause::C | SymClause::D => {
            let lg = if clause == SymClause::D { 2 } else { 1 };
            match exact_log2(q) {
                Some(l) => {
                    let l = l * int(lg);
                    BoundValue::Exact(base * (int(1) + (int(1) + l) / (x - int(1) - l)))
                }
                None => {
                    let l = lg as f64 * log2;
                    let (b, x) = (base.to_f64().unwrap(), x.to_f64().unwrap());
                    BoundValue::Real(b * (1.0 + (1.0 + l) / (x - 1.0 - l)))
                }
            }
        }
    })
    .with_note(note)
}

/// General (not necessarily symmetric) upper-limit bound.
pub fn rank_length(q: u64, rl: RankLength) -> BoundResult {
    let x = rl.x();
    BoundResult::new("rank-length", q, rl.params(), x > int(1), || {
        BoundValue::Exact(rl.base() * (int(1) + int(1) / (x - int(1))))
    })
    .with_note("needs rl·A'_r(q) > 1")
}

/// `M_q <= 2(1 + 1/(√q - 2))` for square `q >= 9`.
pub fn square_field_general(q: u64) -> BoundResult {
    let s = exact_sqrt(q).filter(|_| q >= 9 && prime_power(q).is_some());
    BoundResult::new("square-field", q, String::new(), s.is_some(), || {
        BoundValue::Exact(int(2) * (int(1) + rat(1, s.unwrap() as i128 - 2)))
    })
    .with_note("needs q a square prime power >= 9")
}

/// `M^sym_q <= 2(1 + 1/(√q - 3))` for square `q >= 16`.
pub fn square_field_sym(q: u64) -> BoundResult {
    let s = exact_sqrt(q).filter(|_| q >= 16 && prime_power(q).is_some());
    BoundResult::new("square-field-sym", q, String::new(), s.is_some(), || {
        BoundValue::Exact(int(2) * (int(1) + rat(1, s.unwrap() as i128 - 3)))
    })
    .with_note("needs q a square prime power >= 16")
}

/// `log_q 2` when it is rational, that is when `q` is a power of two.
fn exact_log2(q: u64) -> Option<Rational> {
    match prime_power(q) {
        Some((2, k)) => Some(rat(1, k as i128)),
        _ => None,
    }
}

/// A row of the symmetric upper-limit table and the recipe behind it.
#[derive(Clone, Debug, PartialEq)]
pub enum SymRecipe {
    RankLength(SymClause, RankLength),
    SquareField,
}

/// The recipes that produce the best printed `M^sym_q`, with the printed value.
pub fn msym_recipes(params: &AsymptoticParams) -> Vec<(u64, SymRecipe, &'static str)> {
    let rl = |q: u64, r: u32, l: u32, mu: u64| RankLength {
        r,
        l,
        mu,
        a_prime: params.get(q, r).unwrap_or_else(|| a_prime_degree2(q)),
    };
    use SymClause::*;
    vec![
        (2, SymRecipe::RankLength(B, rl(2, 2, 5, 30)), "10"),
        (3, SymRecipe::RankLength(B, rl(3, 2, 3, 15)), "7.5"),
        (4, SymRecipe::RankLength(C, rl(4, 2, 2, 8)), "5.33"),
        (5, SymRecipe::RankLength(D, rl(5, 2, 2, 8)), "5.21"),
        (7, SymRecipe::RankLength(D, rl(7, 2, 2, 7)), "4.08"),
        (8, SymRecipe::RankLength(C, rl(8, 2, 1, 3)), "3.71"),
        (9, SymRecipe::RankLength(D, rl(9, 2, 1, 3)), "3.77"),
        (11, SymRecipe::RankLength(D, rl(11, 2, 1, 3)), "3.56"),
        (25, SymRecipe::SquareField, "3"),
    ]
}

pub fn eval_sym_recipe(q: u64, recipe: &SymRecipe) -> BoundResult {
    match recipe {
        SymRecipe::RankLength(c, rl) => rank_length_sym(q, *c, *rl),
        SymRecipe::SquareField => square_field_sym(q),
    }
}
