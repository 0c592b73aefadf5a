use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::TargetAlgebra;
use super::algorithm::{schoolbook, BilinearAlgorithm};
use super::formulas;
use crate::error::{Error, Result};
use crate::gf::GaloisField;

/// Cost of the local product at a place of degree `d` with multiplicity `u`.
pub trait CostModel {
    fn cost(&self, d: usize, u: usize) -> Option<usize>;
}

/// Certified algorithms for F_{q^d}[t]/(t^u) over F_q; missing entries fall
/// back to schoolbook multiplication, generated on demand.
#[derive(Clone, Debug)]
pub struct CostTable {
    field: Arc<GaloisField>,
    entries: BTreeMap<(usize, usize), BilinearAlgorithm>,
}

impl CostTable {
    pub fn empty(field: Arc<GaloisField>) -> Self {
        CostTable { field, entries: BTreeMap::new() }
    }

    /// Trivial, Karatsuba and the truncated rank-3 and rank-5 formulas.
    pub fn seeded(field: Arc<GaloisField>) -> Result<Self> {
        let mut t = Self::empty(Arc::clone(&field));
        t.insert(1, 1, formulas::identity(Arc::clone(&field)))?;
        t.insert(1, 2, formulas::truncated2(Arc::clone(&field)))?;
        t.insert(1, 3, formulas::truncated3(Arc::clone(&field)))?;
        t.insert(2, 1, formulas::karatsuba(field))?;
        Ok(t)
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    /// Adds an entry after verifying it; keeps the cheaper of old and new.
    pub fn insert(&mut self, d: usize, u: usize, alg: BilinearAlgorithm) -> Result<()> {
        let expect = TargetAlgebra::local(&self.field, d, u);
        if !alg.target.same_structure(&expect) {
            return Err(Error::FieldMismatch(format!("entry ({d},{u}) targets {}", alg.target)));
        }
        if !alg.verify()? {
            return Err(Error::Verification(format!("cost table entry ({d},{u}) does not verify")));
        }
        let alg = alg.relabel(expect)?;
        match self.entries.get(&(d, u)) {
            Some(old) if old.rank() <= alg.rank() => {}
            _ => {
                self.entries.insert((d, u), alg);
            }
        }
        Ok(())
    }

    pub fn get(&self, d: usize, u: usize) -> Option<&BilinearAlgorithm> {
        self.entries.get(&(d, u))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BilinearAlgorithm)> {
        self.entries.iter()
    }

    /// The stored entry or a freshly generated schoolbook algorithm.
    pub fn algorithm(&self, d: usize, u: usize) -> BilinearAlgorithm {
        match self.entries.get(&(d, u)) {
            Some(a) => a.clone(),
            None => schoolbook(Arc::clone(&self.field), TargetAlgebra::local(&self.field, d, u)),
        }
    }
}

impl CostModel for CostTable {
    fn cost(&self, d: usize, u: usize) -> Option<usize> {
        Some(self.entries.get(&(d, u)).map_or((d * u) * (d * u), |a| a.rank()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;

    #[test]
    fn seeded_costs() {
        let t = CostTable::seeded(Arc::new(GaloisField::prime_field(2).unwrap())).unwrap();
        assert_eq!(t.cost(1, 1), Some(1));
        assert_eq!(t.cost(1, 2), Some(3));
        assert_eq!(t.cost(1, 3), Some(5));
        assert_eq!(t.cost(2, 1), Some(3));
        assert_eq!(t.cost(2, 2), Some(16));
        assert_eq!(t.algorithm(3, 1).rank(), 9);
    }

    #[test]
    fn bad_entry_rejected() {
        let f = Arc::new(GaloisField::prime_field(2).unwrap());
        let mut t = CostTable::empty(f.clone());
        let mut k = formulas::karatsuba(f);
        k.w = Mat::from_rows(&[vec![1, 1, 1], vec![1, 0, 1]]);
        assert!(matches!(t.insert(2, 1, k), Err(Error::Verification(_))));
    }
}
