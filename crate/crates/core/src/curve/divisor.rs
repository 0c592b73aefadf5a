use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::place::CurvePlace;

/// A finite formal sum of places with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<DivisorTerm>", from = "Vec<DivisorTerm>")]
pub struct CurveDivisor {
    support: BTreeMap<CurvePlace, i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DivisorTerm {
    pub place: CurvePlace,
    pub coeff: i64,
}

impl From<CurveDivisor> for Vec<DivisorTerm> {
    fn from(d: CurveDivisor) -> Self {
        d.support.into_iter().map(|(place, coeff)| DivisorTerm { place, coeff }).collect()
    }
}

impl From<Vec<DivisorTerm>> for CurveDivisor {
    fn from(v: Vec<DivisorTerm>) -> Self {
        v.into_iter().fold(CurveDivisor::zero(), |d, t| d.add(&CurveDivisor::single(t.place, t.coeff)))
    }
}

impl CurveDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(place: CurvePlace, coeff: i64) -> Self {
        let mut d = Self::zero();
        d.add_term(place, coeff);
        d
    }

    pub fn add_term(&mut self, place: CurvePlace, coeff: i64) {
        let c = self.support.entry(place.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.support.remove(&place);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut d = self.clone();
        for (p, c) in &o.support {
            d.add_term(p.clone(), *c);
        }
        d
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        CurveDivisor { support: self.support.iter().map(|(p, c)| (p.clone(), c * k)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn coeff(&self, p: &CurvePlace) -> i64 {
        self.support.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.support.iter().map(|(p, c)| c * p.degree() as i64).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CurvePlace, i64)> {
        self.support.iter().map(|(p, c)| (p, *c))
    }

    pub fn contains(&self, p: &CurvePlace) -> bool {
        self.support.contains_key(p)
    }

    pub fn is_effective(&self) -> bool {
        self.support.values().all(|&c| c > 0)
    }
}

impl fmt::Display for CurveDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.support.iter().map(|(p, c)| format!("{c}*{p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: u32) -> CurvePlace {
        CurvePlace::Finite { degree: 1, x: vec![x], y: vec![0] }
    }

    #[test]
    fn degree_is_additive() {
        let a = CurveDivisor::single(p(0), 2).add(&CurveDivisor::single(CurvePlace::Infinity, 3));
        let b = CurveDivisor::single(p(0), -2).add(&CurveDivisor::single(
            CurvePlace::Finite { degree: 2, x: vec![0, 1], y: vec![1, 1] },
            1,
        ));
        assert_eq!(a.degree(), 5);
        assert_eq!(b.degree(), 0);
        assert_eq!(a.add(&b).degree(), 5);
        assert!(!a.add(&b).contains(&p(0)));
        assert_eq!(a.sub(&a), CurveDivisor::zero());
    }

    #[test]
    fn json_round_trip() {
        let a = CurveDivisor::single(p(1), -1).add(&CurveDivisor::single(CurvePlace::Infinity, 4));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<CurveDivisor>(&s).unwrap(), a);
    }
}
