//! Closed-form bounds on the bilinear complexity of a fixed extension.

use serde::Serialize;

use super::value::{int, rat, BoundValue, Rational};

/// One evaluated bound, with its applicability decided before evaluation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundResult {
    pub name: String,
    pub q: u64,
    pub params: String,
    pub value: Option<BoundValue>,
    pub applicable: bool,
    pub note: String,
}

impl BoundResult {
    pub fn new(name: &str, q: u64, params: String, applicable: bool, value: impl FnOnce() -> BoundValue) -> Self {
        BoundResult {
            name: name.to_string(),
            q,
            params,
            value: applicable.then(value),
            applicable,
            note: String::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

/// Prime `p` and exponent `k` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Exact square root when `q` is a perfect square.
pub fn exact_sqrt(q: u64) -> Option<u64> {
    let s = q.isqrt();
    (s * s == q).then_some(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Winograd {
    pub lower: u64,
    pub tight: bool,
}

/// `μ_q(n) >= 2n - 1`, with equality exactly when `n <= q/2 + 1`.
pub fn winograd(q: u64, n: u64) -> Winograd {
    Winograd { lower: 2 * n - 1, tight: 2 * n <= q + 2 }
}

pub fn epsilon(q: u64) -> u64 {
    if let Some(s) = exact_sqrt(q) {
        return 2 * s;
    }
    let (p, _) = prime_power(q).expect("q must be a prime power");
    let top = (4 * q).isqrt();
    (1..=top).rev().find(|e| e % p != 0).unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShokrollahiRange {
    pub epsilon: u64,
    /// Exclusive lower end `q/2 + 1`.
    pub above: Rational,
    /// Inclusive upper end `(q + 1 + ε)/2`.
    pub upto: Rational,
}

impl ShokrollahiRange {
    pub fn contains(&self, n: u64) -> bool {
        let n = int(n as i128);
        n > self.above && n <= self.upto
    }

    pub fn degrees(&self) -> Vec<u64> {
        let lo = self.above.floor().to_integer() as u64 + 1;
        let hi = self.upto.floor().to_integer() as u64;
        (lo..=hi).collect()
    }
}

/// The range of `n` where symmetric complexity is exactly `2n`.
pub fn shokrollahi_range(q: u64) -> ShokrollahiRange {
    let e = epsilon(q);
    ShokrollahiRange {
        epsilon: e,
        above: rat(q as i128, 2) + int(1),
        upto: rat((q + 1 + e) as i128, 2),
    }
}

/// Least `k` with `q^k >= x`.
fn ceil_log(q: u64, x: u64) -> u64 {
    let mut k = 0;
    let mut acc: u128 = 1;
    while acc < x as u128 {
        acc *= q as u128;
        k += 1;
    }
    k
}

/// The slowly growing factor `f_q(n)` with `μ_q(n) <= f_q(n)·n`.
pub fn lsw_f(q: u64, n: u64) -> Rational {
    match n {
        0 | 1 => int(1),
        2 => rat(3, 2),
        3 if q >= 4 => rat(5, 3),
        3 => int(2),
        _ => int(2) * lsw_f(q, ceil_log(q, 2 * (q - 1) * n)),
    }
}

pub fn lsw_bound(q: u64, n: u64) -> Rational {
    lsw_f(q, n) * int(n as i128)
}

/// Place counts of a function field fed to [`curve_criteria`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CurveCounts {
    pub genus: u64,
    pub n1: u64,
    pub n2: u64,
    pub a: u64,
    pub a1: u64,
    pub a2: u64,
}

/// The three place-count criteria on a curve of genus `g`, each reported
/// with its own predicate.
pub fn curve_criteria(q: u64, n: u64, c: CurveCounts) -> Vec<BoundResult> {
    let CurveCounts { genus: g, n1, n2, a, a1, a2 } = c;
    let (n, g) = (n as i128, g as i128);
    let (n1, n2, a, a1, a2) = (n1 as i128, n2 as i128, a as i128, a1 as i128, a2 as i128);
    let params = format!("n={n},g={g},N1={n1},N2={n2},a={a},a1={a1},a2={a2}");
    vec![
        BoundResult::new("criterion-1", q, params.clone(), n1 + a > 2 * n + 2 * g - 2, || {
            BoundValue::Exact(int(2 * n + g - 1 + a))
        })
        .with_note(format!("N1+a = {} against 2n+2g-2 = {}", n1 + a, 2 * n + 2 * g - 2)),
        BoundResult::new(
            "criterion-2",
            q,
            params.clone(),
            q >= 4 && n1 + a1 + 2 * (n2 + a2) > 2 * n + 2 * g - 2,
            || BoundValue::Exact(int(3 * n + 2 * g + 3 * a2 - 1) + rat(a1, 2)),
        )
        .with_note(if q >= 4 {
            format!("N1+a1+2(N2+a2) = {} against {}", n1 + a1 + 2 * (n2 + a2), 2 * n + 2 * g - 2)
        } else {
            "needs a nonspecial divisor of degree g-1, only guaranteed for q >= 4".to_string()
        }),
        BoundResult::new("criterion-3", q, params, n1 + 2 * n2 > 2 * n + 4 * g - 2, || {
            BoundValue::Exact(int(3 * n + 6 * g))
        })
        .with_note(format!("N1+2N2 = {} against 2n+4g-2 = {}", n1 + 2 * n2, 2 * n + 4 * g - 2)),
    ]
}

/// The linear constant `C^sym_q` with `μ^sym_q(n) <= C^sym_q · n`.
pub fn uniform_constant(q: u64) -> BoundResult {
    let Some((p, k)) = prime_power(q) else {
        return BoundResult::new("uniform-constant", q, String::new(), false, || BoundValue::Exact(int(0)))
            .with_note("q is not a prime power");
    };
    let (pi, qi) = (p as i128, q as i128);
    let (case, value) = match (q, k) {
        (2, _) => ("(1)", rat(154575, 10000)),
        (3, _) => ("(2)", rat(1933, 250)),
        (_, 1) if p >= 7 => ("(3)", int(3) * (int(1) + rat(8, 3 * pi - 5))),
        (_, 2) if q >= 25 => ("(4)", int(2) * (int(1) + int(2) / (int(pi) - rat(33, 16)))),
        (_, _) if k % 2 == 0 && k >= 4 && q >= 64 => {
            let s = int(exact_sqrt(q).unwrap() as i128);
            let denom = s - int(3) + int(pi - 1) * s / (s + int(1));
            ("(5)", int(2) * (int(1) + int(pi) / denom))
        }
        _ if q >= 4 => {
            let denom = int(qi - 3) + int(2 * (pi - 1)) * rat(qi, qi + 1);
            ("(6)", int(3) * (int(1) + rat(4, 3) * int(pi) / denom))
        }
        _ => unreachable!("q = 2, 3 handled above"),
    };
    BoundResult::new("uniform-constant", q, format!("case {case}"), true, || BoundValue::Exact(value))
}
