//! Small explicit algorithms valid over every F_q.

use std::sync::Arc;

use super::algebra::TargetAlgebra;
use super::algorithm::BilinearAlgorithm;
use crate::gf::GaloisField;
use crate::linalg::Mat;

/// Rank 1 for F_q over itself.
pub fn identity(field: Arc<GaloisField>) -> BilinearAlgorithm {
    let t = TargetAlgebra::extension_canonical(&field, 1);
    let one = Mat::identity(1);
    BilinearAlgorithm { field, target: t, a: one.clone(), b: one.clone(), w: one }
}

/// Products `a0 b0, a1 b1, (a0 + a1)(b0 + b1)`.
fn karatsuba_forms() -> Mat {
    Mat::from_rows(&[vec![1, 0], vec![0, 1], vec![1, 1]])
}

/// Rank 3 for F_{q^2} = F_q[u]/(u^2 + c1 u + c0), the canonical quadratic.
pub fn karatsuba(field: Arc<GaloisField>) -> BilinearAlgorithm {
    let f = field.as_ref();
    let t = TargetAlgebra::extension_canonical(f, 2);
    let m = t.modulus().clone();
    let c0 = m.coeff(f, 0);
    let c1 = m.coeff(f, 1);
    let minus_one = f.neg_u(1);
    let w = Mat::from_rows(&[
        vec![1, f.neg_u(c0), 0],
        vec![minus_one, f.sub_u(minus_one, c1), 1],
    ]);
    BilinearAlgorithm { field, target: t, a: karatsuba_forms(), b: karatsuba_forms(), w }
}

/// Rank 3 for F_q[t]/(t^2).
pub fn truncated2(field: Arc<GaloisField>) -> BilinearAlgorithm {
    let f = field.as_ref();
    let t = TargetAlgebra::truncated_canonical(f, 1, 2);
    let m1 = f.neg_u(1);
    let w = Mat::from_rows(&[vec![1, 0, 0], vec![m1, m1, 1]]);
    BilinearAlgorithm { field, target: t, a: karatsuba_forms(), b: karatsuba_forms(), w }
}

/// Rank 5 for F_q[t]/(t^3): `a0b0, a1b1, a2b2, (a0+a1)(b0+b1), (a0+a2)(b0+b2)`.
pub fn truncated3(field: Arc<GaloisField>) -> BilinearAlgorithm {
    let f = field.as_ref();
    let t = TargetAlgebra::truncated_canonical(f, 1, 3);
    let forms = Mat::from_rows(&[
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![1, 1, 0],
        vec![1, 0, 1],
    ]);
    let m1 = f.neg_u(1);
    let w = Mat::from_rows(&[
        vec![1, 0, 0, 0, 0],
        vec![m1, m1, 0, 1, 0],
        vec![m1, 1, m1, 0, 1],
    ]);
    BilinearAlgorithm { field, target: t, a: forms.clone(), b: forms, w }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas_verify_over_several_fields() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 13, 16, 25] {
            let f = Arc::new(GaloisField::of_order(q).unwrap());
            for alg in [identity(f.clone()), karatsuba(f.clone()), truncated2(f.clone()), truncated3(f.clone())] {
                assert!(alg.verify().unwrap(), "q = {q}: {}", alg.target);
                assert!(alg.is_symmetric());
            }
        }
    }

    #[test]
    fn karatsuba_over_f2_matches_the_textbook_form() {
        let f = Arc::new(GaloisField::prime_field(2).unwrap());
        let k = karatsuba(f);
        assert_eq!(k.w, Mat::from_rows(&[vec![1, 1, 0], vec![1, 0, 1]]));
    }
}
