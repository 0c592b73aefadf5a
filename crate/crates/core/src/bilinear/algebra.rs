use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{irreducible, FieldSpec, GaloisField, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    /// F_q[u]/(Q) with `deg Q = n`, power basis.
    Extension { n: usize, modulus: Poly<u32> },
    /// F_{q^m}[t]/(t^l) with F_{q^m} = F_q[u]/(Q); basis `u^i t^j` ordered by `(j, i)`.
    Truncated { m: usize, l: usize, modulus: Poly<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetAlgebra {
    pub base: FieldSpec,
    pub kind: AlgebraKind,
}

fn check_modulus(f: &GaloisField, modulus: &Poly<u32>, deg: usize) -> Result<()> {
    if modulus.deg() != Some(deg) || !modulus.is_monic(f) || !irreducible::is_irreducible(f, modulus) {
        return Err(Error::InvalidField(format!("modulus must be monic irreducible of degree {deg}")));
    }
    Ok(())
}

impl TargetAlgebra {
    pub fn extension(f: &GaloisField, modulus: Poly<u32>) -> Result<Self> {
        let n = modulus.deg().unwrap_or(0);
        check_modulus(f, &modulus, n.max(1))?;
        Ok(TargetAlgebra { base: f.spec().clone(), kind: AlgebraKind::Extension { n, modulus } })
    }

    /// F_{q^n} by the lexicographically least irreducible of degree `n`.
    pub fn extension_canonical(f: &GaloisField, n: usize) -> Self {
        let modulus = irreducible::least_irreducible(f, n);
        TargetAlgebra { base: f.spec().clone(), kind: AlgebraKind::Extension { n, modulus } }
    }

    pub fn truncated(f: &GaloisField, modulus: Poly<u32>, l: usize) -> Result<Self> {
        let m = modulus.deg().unwrap_or(0);
        check_modulus(f, &modulus, m.max(1))?;
        if l == 0 {
            return Err(Error::Dimension("truncation order must be at least 1".into()));
        }
        Ok(TargetAlgebra { base: f.spec().clone(), kind: AlgebraKind::Truncated { m, l, modulus } })
    }

    pub fn truncated_canonical(f: &GaloisField, m: usize, l: usize) -> Self {
        let modulus = irreducible::least_irreducible(f, m);
        TargetAlgebra { base: f.spec().clone(), kind: AlgebraKind::Truncated { m, l, modulus } }
    }

    /// Algebra of the local product at a place of degree `d` with multiplicity `u`.
    pub fn local(f: &GaloisField, d: usize, u: usize) -> Self {
        if u == 1 {
            Self::extension_canonical(f, d)
        } else {
            Self::truncated_canonical(f, d, u)
        }
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            AlgebraKind::Extension { n, .. } => *n,
            AlgebraKind::Truncated { m, l, .. } => m * l,
        }
    }

    /// `(m, l, Q)`, reading an extension as the truncation of order 1.
    pub fn local_params(&self) -> (usize, usize, &Poly<u32>) {
        match &self.kind {
            AlgebraKind::Extension { n, modulus } => (*n, 1, modulus),
            AlgebraKind::Truncated { m, l, modulus } => (*m, *l, modulus),
        }
    }

    pub fn modulus(&self) -> &Poly<u32> {
        self.local_params().2
    }

    pub fn is_extension(&self) -> bool {
        matches!(self.kind, AlgebraKind::Extension { .. })
    }

    /// Same multiplication table; an extension equals a truncation of order 1.
    pub fn same_structure(&self, o: &TargetAlgebra) -> bool {
        self.base == o.base && self.local_params() == o.local_params()
    }

    fn mul_mod(f: &GaloisField, a: &[u32], b: &[u32], modulus: &Poly<u32>) -> Vec<u32> {
        let m = modulus.deg().unwrap();
        let pa = Poly::new(f, a.to_vec());
        let pb = Poly::new(f, b.to_vec());
        let mut v = pa.mul(f, &pb).rem(f, modulus).coeffs;
        v.resize(m, 0);
        v
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, f: &GaloisField, x: &[u32], y: &[u32]) -> Vec<u32> {
        debug_assert_eq!(f.spec(), &self.base);
        let (m, l, modulus) = self.local_params();
        let mut out = vec![0u32; m * l];
        for j1 in 0..l {
            let a = &x[j1 * m..(j1 + 1) * m];
            if a.iter().all(|&c| c == 0) {
                continue;
            }
            for j2 in 0..l - j1 {
                let b = &y[j2 * m..(j2 + 1) * m];
                let p = Self::mul_mod(f, a, b, modulus);
                let j = j1 + j2;
                for (i, c) in p.into_iter().enumerate() {
                    out[j * m + i] = f.add_u(out[j * m + i], c);
                }
            }
        }
        out
    }

    pub fn basis(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// `T[h][i][j]`: coefficient of `e_h` in `e_i e_j`.
    pub fn structure_tensor(&self, f: &GaloisField) -> Vec<Vec<Vec<u32>>> {
        let n = self.dim();
        let mut t = vec![vec![vec![0; n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = self.multiply(f, &self.basis(i), &self.basis(j));
                for (h, c) in p.into_iter().enumerate() {
                    t[h][i][j] = c;
                }
            }
        }
        t
    }
}

impl fmt::Display for TargetAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AlgebraKind::Extension { n, modulus } => {
                write!(f, "extension({n}) over {} mod {}", self.base, modulus.display())
            }
            AlgebraKind::Truncated { m, l, modulus } => {
                write!(f, "truncated({m},{l}) over {} mod {}", self.base, modulus.display())
            }
        }
    }
}
