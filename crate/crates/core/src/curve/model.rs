use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldSpec, GaloisField, Poly};

/// Supported defining equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveShape {
    /// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
    Weierstrass([u32; 5]),
    /// `y² + y = x⁵`.
    Y2PlusYEqX5,
    /// `y² + y = x` in characteristic 2, `y² = x` otherwise.
    Rational,
}

/// A plane curve `y² + h(x)·y = f(x)` with `deg f = 2g + 1` and `deg h ≤ g`.
/// There is a single place at infinity, where `x` and `y` have pole orders
/// `2` and `2g + 1`.
#[derive(Clone, Debug)]
pub struct CurveModel {
    pub field: Arc<GaloisField>,
    pub shape: CurveShape,
    pub h: Poly<u32>,
    pub f: Poly<u32>,
    pub genus: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveJson {
    pub base: FieldSpec,
    pub shape: String,
    #[serde(default)]
    pub coefficients: Vec<u32>,
    pub genus: usize,
}

impl CurveModel {
    pub fn new(field: Arc<GaloisField>, shape: CurveShape, genus: usize) -> Result<Self> {
        let fr = field.as_ref();
        let (h, f) = match &shape {
            CurveShape::Weierstrass([a1, a2, a3, a4, a6]) => {
                for &c in &[*a1, *a2, *a3, *a4, *a6] {
                    if c >= field.q() {
                        return Err(Error::InvalidField(format!("coefficient {c} outside F_{}", field.q())));
                    }
                }
                (Poly::new(fr, vec![*a3, *a1]), Poly::new(fr, vec![*a6, *a4, *a2, 1]))
            }
            CurveShape::Y2PlusYEqX5 => (Poly::one(fr), Poly::monomial(fr, 1, 5)),
            CurveShape::Rational => {
                let h = if field.p() == 2 { Poly::one(fr) } else { Poly::zero() };
                (h, Poly::x(fr))
            }
        };
        let expected = (f.deg().unwrap() - 1) / 2;
        if genus != expected {
            return Err(Error::Unsupported(format!("declared genus {genus}, shape has genus {expected}")));
        }
        let c = CurveModel { field, shape, h, f, genus };
        if !c.is_smooth() {
            return Err(Error::Unsupported(format!("{c} is singular")));
        }
        Ok(c)
    }

    pub fn weierstrass(field: Arc<GaloisField>, a: [u32; 5]) -> Result<Self> {
        Self::new(field, CurveShape::Weierstrass(a), 1)
    }

    /// Affine smoothness of `y² + h y - f`.
    fn is_smooth(&self) -> bool {
        let fr = self.field.as_ref();
        if self.field.p() == 2 {
            if self.h.is_zero() {
                return false;
            }
            // singular points sit over roots of h where h'^2 f + f'^2 vanishes
            let hd = self.h.derivative(fr);
            let fd = self.f.derivative(fr);
            let cond = hd.mul(fr, &hd).mul(fr, &self.f).add(fr, &fd.mul(fr, &fd));
            self.h.gcd(fr, &cond).deg() == Some(0)
        } else {
            let four = fr.from_int(4);
            let disc = self.f.scale(fr, &four).add(fr, &self.h.mul(fr, &self.h));
            disc.gcd(fr, &disc.derivative(fr)).deg() == Some(0)
        }
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// `(h(x0), f(x0))` lifted to a field containing the base.
    pub fn eval_at<K: Field>(&self, k: &K, embed: impl Fn(u32) -> K::Elem, x0: &K::Elem) -> (K::Elem, K::Elem) {
        let hk = self.h.map(k, |c| embed(*c));
        let fk = self.f.map(k, |c| embed(*c));
        (hk.eval(k, x0), fk.eval(k, x0))
    }

    pub fn from_json(j: &CurveJson) -> Result<Self> {
        let b = &j.base;
        let spec = match &b.defining_poly {
            None => FieldSpec::canonical(b.p, b.k)?,
            Some(v) => FieldSpec::new(b.p, b.k, Some(v.clone()))?,
        };
        let field = Arc::new(GaloisField::new(spec)?);
        let shape = match j.shape.as_str() {
            "weierstrass" => {
                let a: [u32; 5] = j.coefficients.clone().try_into().map_err(|_| {
                    Error::Parse("weierstrass needs coefficients [a1, a2, a3, a4, a6]".into())
                })?;
                CurveShape::Weierstrass(a)
            }
            "y2+y=x5" => CurveShape::Y2PlusYEqX5,
            "rational" => CurveShape::Rational,
            s => return Err(Error::Parse(format!("unknown curve shape {s:?}"))),
        };
        Self::new(field, shape, j.genus)
    }

    pub fn to_json(&self) -> CurveJson {
        let (shape, coefficients) = match &self.shape {
            CurveShape::Weierstrass(a) => ("weierstrass", a.to_vec()),
            CurveShape::Y2PlusYEqX5 => ("y2+y=x5", vec![]),
            CurveShape::Rational => ("rational", vec![]),
        };
        CurveJson { base: self.field.spec().clone(), shape: shape.into(), coefficients, genus: self.genus }
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = if self.h.is_zero() { String::new() } else { format!(" + ({})y", self.h.display()) };
        write!(out, "y^2{h} = {} over F_{}", self.f.display(), self.q())
    }
}
