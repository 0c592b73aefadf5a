use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Unique polynomial of degree below `Σ deg m_i` congruent to each residue.
pub fn crt_reconstruct<F: Field>(f: &F, residues: &[(Poly<F::Elem>, Poly<F::Elem>)]) -> Result<Poly<F::Elem>> {
    for (m, r) in residues {
        let md = m.deg().ok_or(Error::NotCoprime)?;
        if md == 0 {
            return Err(Error::NotCoprime);
        }
        if let Some(rd) = r.deg() {
            if rd >= md {
                return Err(Error::DegreeOverflow { residue: rd, modulus: md });
            }
        }
    }
    let mut acc = Poly::zero();
    let mut modulus = Poly::one(f);
    for (m, r) in residues {
        let (g, s, _) = modulus.xgcd(f, m);
        if g.deg() != Some(0) {
            return Err(Error::NotCoprime);
        }
        // acc + modulus * s * (r - acc) is ≡ r mod m and ≡ acc mod modulus
        let diff = r.sub(f, &acc).rem(f, m);
        let lift = s.mul(f, &diff).rem(f, m);
        acc = acc.add(f, &modulus.mul(f, &lift));
        modulus = modulus.mul(f, m);
        acc = acc.rem(f, &modulus);
    }
    Ok(acc)
}
