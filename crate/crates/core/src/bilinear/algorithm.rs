use std::sync::Arc;

use super::algebra::TargetAlgebra;
use crate::error::{Error, Result};
use crate::gf::GaloisField;
use crate::linalg::Mat;

/// A length-N decomposition `x·y = Σ_i (A_i·x)(B_i·y) W_i` of the product of
/// a target algebra over F_q.
#[derive(Clone, Debug)]
pub struct BilinearAlgorithm {
    pub field: Arc<GaloisField>,
    pub target: TargetAlgebra,
    /// N × dim, rows are the linear forms applied to the left factor.
    pub a: Mat,
    /// N × dim, rows are the linear forms applied to the right factor.
    pub b: Mat,
    /// dim × N, columns are the output vectors.
    pub w: Mat,
}

impl PartialEq for BilinearAlgorithm {
    fn eq(&self, o: &Self) -> bool {
        self.field.spec() == o.field.spec()
            && self.target == o.target
            && self.a == o.a
            && self.b == o.b
            && self.w == o.w
    }
}

impl BilinearAlgorithm {
    pub fn new(field: Arc<GaloisField>, target: TargetAlgebra, a: Mat, b: Mat, w: Mat) -> Result<Self> {
        let alg = BilinearAlgorithm { field, target, a, b, w };
        alg.check_dims()?;
        Ok(alg)
    }

    pub fn rank(&self) -> usize {
        self.a.rows
    }

    pub fn dim(&self) -> usize {
        self.target.dim()
    }

    pub fn is_symmetric(&self) -> bool {
        self.a == self.b
    }

    pub fn check_dims(&self) -> Result<()> {
        let n = self.target.dim();
        let r = self.a.rows;
        if self.field.spec() != &self.target.base {
            return Err(Error::Dimension(format!(
                "algorithm field {} differs from target base {}",
                self.field.spec(),
                self.target.base
            )));
        }
        if self.a.cols != n || self.b.cols != n || self.b.rows != r || self.w.rows != n || self.w.cols != r {
            return Err(Error::Dimension(format!(
                "A {}x{}, B {}x{}, W {}x{} inconsistent with dim {n}",
                self.a.rows, self.a.cols, self.b.rows, self.b.cols, self.w.rows, self.w.cols
            )));
        }
        let q = self.field.q();
        if [&self.a, &self.b, &self.w].iter().any(|m| m.data.iter().any(|&v| v >= q)) {
            return Err(Error::Dimension("matrix entry outside the field".into()));
        }
        Ok(())
    }

    /// `W · ((A x) ⊙ (B y))`.
    pub fn apply(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field.as_ref();
        let ax = self.a.mul_vec(f, x);
        let by = self.b.mul_vec(f, y);
        let prod: Vec<u32> = ax.iter().zip(&by).map(|(&u, &v)| f.mul_u(u, v)).collect();
        self.w.mul_vec(f, &prod)
    }

    /// First basis pair `(i, j)` on which the algorithm disagrees with the algebra.
    pub fn first_failure(&self) -> Result<Option<(usize, usize)>> {
        self.check_dims()?;
        let f = self.field.as_ref();
        let n = self.dim();
        for i in 0..n {
            let ei = self.target.basis(i);
            for j in 0..n {
                let ej = self.target.basis(j);
                if self.apply(&ei, &ej) != self.target.multiply(f, &ei, &ej) {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }

    /// Exhaustive check on all basis pairs.
    pub fn verify(&self) -> Result<bool> {
        Ok(self.first_failure()?.is_none())
    }

    /// Check on explicit element pairs.
    pub fn agrees_on(&self, pairs: &[(Vec<u32>, Vec<u32>)]) -> bool {
        let f = self.field.as_ref();
        pairs
            .iter()
            .all(|(x, y)| self.apply(x, y) == self.target.multiply(f, x, y))
    }

    /// Same products, relabelled as another target with the identical multiplication table.
    pub fn relabel(&self, target: TargetAlgebra) -> Result<Self> {
        if !self.target.same_structure(&target) {
            return Err(Error::FieldMismatch(format!("{} and {} differ", self.target, target)));
        }
        Ok(BilinearAlgorithm { target, ..self.clone() })
    }

    /// Basis change: with `x_old = T x_new`, returns the algorithm in new coordinates.
    pub fn change_basis(&self, target: TargetAlgebra, t: &Mat) -> Result<Self> {
        let f = self.field.as_ref();
        let t_inv = t
            .inverse(f)
            .ok_or_else(|| Error::Dimension("basis change matrix is singular".into()))?;
        BilinearAlgorithm::new(
            Arc::clone(&self.field),
            target,
            self.a.mul(f, t),
            self.b.mul(f, t),
            t_inv.mul(f, &self.w),
        )
    }

    /// `2n - 1` for extension targets.
    pub fn lower_bound(&self) -> Option<usize> {
        if self.target.is_extension() {
            Some(2 * self.dim() - 1)
        } else {
            None
        }
    }
}

/// All `dim²` products `x_i y_j`, reduced by the algebra's structure constants.
pub fn schoolbook(field: Arc<GaloisField>, target: TargetAlgebra) -> BilinearAlgorithm {
    let f = field.as_ref();
    let n = target.dim();
    let r = n * n;
    let mut a = Mat::zeros(r, n);
    let mut b = Mat::zeros(r, n);
    let mut w = Mat::zeros(n, r);
    for i in 0..n {
        for j in 0..n {
            let k = i * n + j;
            a.set(k, i, 1);
            b.set(k, j, 1);
            let p = target.multiply(f, &target.basis(i), &target.basis(j));
            for (h, c) in p.into_iter().enumerate() {
                w.set(h, k, c);
            }
        }
    }
    BilinearAlgorithm { field, target, a, b, w }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<GaloisField> {
        Arc::new(GaloisField::prime_field(2).unwrap())
    }

    fn karatsuba_f4() -> BilinearAlgorithm {
        let f = f2();
        let t = TargetAlgebra::extension_canonical(&f, 2);
        let ab = Mat::from_rows(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        let w = Mat::from_rows(&[vec![1, 1, 0], vec![1, 0, 1]]);
        BilinearAlgorithm::new(f, t, ab.clone(), ab, w).unwrap()
    }

    #[test]
    fn karatsuba_verifies() {
        let k = karatsuba_f4();
        assert!(k.verify().unwrap());
        assert!(k.is_symmetric());
        assert_eq!(k.lower_bound(), Some(3));
    }

    #[test]
    fn flipped_entry_fails() {
        let mut k = karatsuba_f4();
        let v = k.w.get(0, 2);
        k.w.set(0, 2, 1 - v);
        assert!(!k.verify().unwrap());
        assert!(k.first_failure().unwrap().is_some());
    }

    #[test]
    fn schoolbook_ranks() {
        let f = f2();
        let f4 = schoolbook(f.clone(), TargetAlgebra::extension_canonical(&f, 2));
        assert_eq!(f4.rank(), 4);
        assert!(f4.verify().unwrap());
        let f8 = schoolbook(f.clone(), TargetAlgebra::extension_canonical(&f, 3));
        assert_eq!(f8.rank(), 9);
        assert!(f8.verify().unwrap());
        assert!(!f8.is_symmetric());
        let t = schoolbook(f.clone(), TargetAlgebra::truncated_canonical(&f, 1, 2));
        assert_eq!(t.rank(), 4);
        assert!(t.verify().unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let mut k = karatsuba_f4();
        k.w = Mat::zeros(3, 3);
        assert!(matches!(k.verify(), Err(Error::Dimension(_))));
    }
}
