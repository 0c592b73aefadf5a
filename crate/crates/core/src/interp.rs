//! Linear-algebra assembly shared by the genus-0 and curve constructions.

use std::sync::Arc;

use crate::bilinear::{BilinearAlgorithm, TargetAlgebra};
use crate::error::{Error, Result};
use crate::gf::GaloisField;
use crate::linalg::Mat;

/// Local data at one evaluation place: the twisted expansions of the bases of
/// L(D1), L(D2) and L(D1+D2) to `d·u` coordinates, and the local algorithm.
pub struct LocalEval {
    pub e1: Mat,
    pub e2: Mat,
    pub e12: Mat,
    pub alg: BilinearAlgorithm,
}

/// Spaces and maps describing one interpolation instance.
pub struct Interpolation {
    pub field: Arc<GaloisField>,
    pub target: TargetAlgebra,
    /// Section of evaluation at Q on L(D1): target coordinates to L(D1) coordinates.
    pub s1: Mat,
    pub s2: Mat,
    /// Evaluation at Q on L(D1+D2).
    pub evq: Mat,
    pub locals: Vec<LocalEval>,
}

impl Interpolation {
    /// Stacked local evaluation map on L(D1+D2).
    pub fn evaluation_matrix(&self) -> Mat {
        let cols = self.evq.cols;
        self.locals
            .iter()
            .fold(Mat::zeros(0, cols), |acc, l| acc.vstack(&l.e12))
    }

    /// The algorithm `x·y = R · blockdiag(W_i) ((A_i E1_i S1 x) ⊙ (B_i E2_i S2 y))`.
    pub fn assemble(&self) -> Result<BilinearAlgorithm> {
        let f = self.field.as_ref();
        let e = self.evaluation_matrix();
        let linv = e.left_inverse(f).ok_or_else(|| {
            Error::Condition(format!(
                "evaluation map on L(D1+D2) is not injective (rank {} < {})",
                e.rank(f),
                e.cols
            ))
        })?;
        let r = self.evq.mul(f, &linv);
        let n = self.target.dim();
        let mut a = Mat::zeros(0, n);
        let mut b = Mat::zeros(0, n);
        let mut wblocks = Vec::new();
        for l in &self.locals {
            let du = l.alg.dim();
            if l.e1.rows != du || l.e2.rows != du || l.e12.rows != du {
                return Err(Error::Dimension("local evaluation size differs from local algebra".into()));
            }
            a = a.vstack(&l.alg.a.mul(f, &l.e1).mul(f, &self.s1));
            b = b.vstack(&l.alg.b.mul(f, &l.e2).mul(f, &self.s2));
            wblocks.push(l.alg.w.clone());
        }
        let w = r.mul(f, &Mat::block_diag(&wblocks));
        BilinearAlgorithm::new(Arc::clone(&self.field), self.target.clone(), a, b, w)
    }
}
