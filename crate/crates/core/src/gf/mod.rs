//! Finite fields, polynomials over them, and local expansions.

pub mod crt;
pub mod expansion;
pub mod ext;
pub mod field;
pub mod galois;
pub mod irreducible;
pub mod poly;
pub mod roots;
pub mod series;

use std::sync::Arc;

pub use crt::crt_reconstruct;
pub use expansion::{local_expansion, LocalExpansion};
pub use ext::ExtField;
pub use field::Field;
pub use galois::{FieldElement, FieldSpec, GaloisField};
pub use irreducible::{count_irreducibles, irreducibles, is_irreducible};
pub use poly::Poly;
pub use series::Series;

use crate::error::Result;

/// F_{q^m} as an absolute extension of the prime field, with the canonical
/// defining polynomial of degree `k m`.
pub fn field_extend(spec: &FieldSpec, m: u32) -> Result<FieldSpec> {
    if m == 1 {
        return Ok(spec.clone());
    }
    FieldSpec::canonical(spec.p, spec.k * m)
}

/// Embedding of `small` into `big` as a table indexed by element of `small`:
/// the generator of `small` goes to the least root of its defining polynomial.
pub fn embedding(small: &GaloisField, big: &GaloisField) -> Result<Vec<u32>> {
    use crate::error::Error;
    if small.p() != big.p() || big.k() % small.k() != 0 {
        return Err(Error::FieldMismatch(format!("{} does not embed in {}", small.spec(), big.spec())));
    }
    let p = small.p();
    let image_of_gen = if small.k() == 1 {
        0
    } else {
        let m = Poly::new(big, small.spec().modulus());
        roots::least_root(big, &m)
            .ok_or_else(|| Error::FieldMismatch("defining polynomial has no root".into()))?
    };
    let mut table = Vec::with_capacity(small.q() as usize);
    for v in 0..small.q() {
        let c = small.coeffs(v);
        let img = if small.k() == 1 {
            c[0] % p
        } else {
            Poly::new(big, c).eval(big, &image_of_gen)
        };
        table.push(img);
    }
    Ok(table)
}

/// Shared handle type for fields.
pub type FieldRef = Arc<GaloisField>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extend_f2() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(field_extend(&f2, 1).unwrap(), f2);
        let f4 = field_extend(&f2, 2).unwrap();
        assert_eq!(f4.defining_poly, Some(vec![1, 1, 1]));
        assert_eq!(field_extend(&f2, 2).unwrap(), f4);
    }

    #[test]
    fn f4_embeds_in_f16() {
        let f4s = field_extend(&FieldSpec::prime(2).unwrap(), 2).unwrap();
        let f16s = field_extend(&f4s, 2).unwrap();
        assert_eq!(f16s.k, 4);
        let f4 = GaloisField::new(f4s).unwrap();
        let f16 = GaloisField::new(f16s).unwrap();
        let e = embedding(&f4, &f16).unwrap();
        for a in 0..4u32 {
            for b in 0..4u32 {
                assert_eq!(e[f4.add_u(a, b) as usize], f16.add_u(e[a as usize], e[b as usize]));
                assert_eq!(e[f4.mul_u(a, b) as usize], f16.mul_u(e[a as usize], e[b as usize]));
            }
        }
    }
}
