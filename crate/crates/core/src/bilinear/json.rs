//! JSON encoding of algorithms; field elements are coefficient arrays of length k.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::algebra::{AlgebraKind, TargetAlgebra};
use super::algorithm::BilinearAlgorithm;
use crate::error::{Error, Result};
use crate::gf::{FieldSpec, GaloisField, Poly};
use crate::linalg::Mat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TargetJson {
    Extension {
        n: usize,
        #[serde(rename = "Q")]
        modulus: Vec<Vec<u32>>,
    },
    Truncated {
        m: usize,
        l: usize,
        #[serde(rename = "Q")]
        modulus: Vec<Vec<u32>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgorithmJson {
    pub q: u64,
    pub p: u32,
    pub k: u32,
    pub defining_poly: Option<Vec<u32>>,
    pub target: TargetJson,
    #[serde(rename = "N")]
    pub rank: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Vec<u32>>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<Vec<u32>>>,
    #[serde(rename = "W")]
    pub w: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<bool>,
}

pub fn encode_elem(f: &GaloisField, v: u32) -> Vec<u32> {
    f.coeffs(v)
}

pub fn decode_elem(f: &GaloisField, c: &[u32]) -> Result<u32> {
    f.from_coeffs(c).map_err(|e| Error::Parse(e.to_string()))
}

pub fn encode_mat(f: &GaloisField, m: &Mat) -> Vec<Vec<Vec<u32>>> {
    (0..m.rows)
        .map(|i| m.row(i).iter().map(|&v| encode_elem(f, v)).collect())
        .collect()
}

pub fn decode_mat(f: &GaloisField, rows: &[Vec<Vec<u32>>], expect_cols: usize) -> Result<Mat> {
    let mut out = Mat::zeros(rows.len(), expect_cols);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != expect_cols {
            return Err(Error::Dimension(format!("row {i} has {} entries, expected {expect_cols}", r.len())));
        }
        for (j, c) in r.iter().enumerate() {
            out.set(i, j, decode_elem(f, c)?);
        }
    }
    Ok(out)
}

pub fn encode_poly(f: &GaloisField, p: &Poly<u32>) -> Vec<Vec<u32>> {
    p.coeffs.iter().map(|&c| encode_elem(f, c)).collect()
}

pub fn decode_poly(f: &GaloisField, c: &[Vec<u32>]) -> Result<Poly<u32>> {
    let v = c.iter().map(|e| decode_elem(f, e)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(f, v))
}

pub fn to_json(alg: &BilinearAlgorithm) -> AlgorithmJson {
    let f = alg.field.as_ref();
    let spec = f.spec();
    let target = match &alg.target.kind {
        AlgebraKind::Extension { n, modulus } => TargetJson::Extension { n: *n, modulus: encode_poly(f, modulus) },
        AlgebraKind::Truncated { m, l, modulus } => {
            TargetJson::Truncated { m: *m, l: *l, modulus: encode_poly(f, modulus) }
        }
    };
    AlgorithmJson {
        q: f.q() as u64,
        p: spec.p,
        k: spec.k,
        defining_poly: spec.defining_poly.clone(),
        target,
        rank: alg.rank(),
        a: encode_mat(f, &alg.a),
        b: encode_mat(f, &alg.b),
        w: encode_mat(f, &alg.w),
        symmetric: Some(alg.is_symmetric()),
    }
}

/// Parses and validates shapes; correctness is left to `verify`.
pub fn from_json(j: &AlgorithmJson) -> Result<BilinearAlgorithm> {
    let spec = FieldSpec::new(j.p, j.k, j.defining_poly.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    if spec.order() != j.q as u128 {
        return Err(Error::Parse(format!("q = {} does not equal {}^{}", j.q, j.p, j.k)));
    }
    let field = Arc::new(GaloisField::new(spec)?);
    let f = field.as_ref();
    let target = match &j.target {
        TargetJson::Extension { n, modulus } => {
            let m = decode_poly(f, modulus)?;
            if m.deg() != Some(*n) {
                return Err(Error::Parse(format!("target modulus degree differs from n = {n}")));
            }
            TargetAlgebra::extension(f, m)?
        }
        TargetJson::Truncated { m, l, modulus } => {
            let md = decode_poly(f, modulus)?;
            if md.deg() != Some(*m) {
                return Err(Error::Parse(format!("target modulus degree differs from m = {m}")));
            }
            TargetAlgebra::truncated(f, md, *l)?
        }
    };
    let dim = target.dim();
    if j.a.len() != j.rank || j.b.len() != j.rank || j.w.len() != dim {
        return Err(Error::Dimension(format!("declared N = {} inconsistent with matrix shapes", j.rank)));
    }
    let a = decode_mat(f, &j.a, dim)?;
    let b = decode_mat(f, &j.b, dim)?;
    let w = decode_mat(f, &j.w, j.rank)?;
    BilinearAlgorithm::new(field, target, a, b, w)
}

pub fn to_string(alg: &BilinearAlgorithm) -> String {
    serde_json::to_string_pretty(&to_json(alg)).expect("algorithm JSON is serializable")
}

pub fn from_str(s: &str) -> Result<BilinearAlgorithm> {
    let j: AlgorithmJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    from_json(&j)
}
