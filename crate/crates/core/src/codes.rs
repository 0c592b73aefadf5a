//! Linear codes and supercodes attached to multiplication algorithms.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bilinear::json::{decode_mat, encode_mat};
use crate::bilinear::{BilinearAlgorithm, TargetAlgebra};
use crate::error::{Error, Result};
use crate::gf::{FieldSpec, GaloisField};
use crate::guard;
use crate::linalg::Mat;

/// A linear code given by an `n × N` generator matrix in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    pub field: Arc<GaloisField>,
    pub generator: Mat,
    distance: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub q: u64,
    pub p: u32,
    pub k: u32,
    pub defining_poly: Option<Vec<u32>>,
    #[serde(rename = "N")]
    pub length: usize,
    pub n: usize,
    pub generator: Vec<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
}

impl LinearCode {
    /// Code spanned by the rows of `generator`, which must be independent.
    pub fn new(field: Arc<GaloisField>, generator: &Mat) -> Result<Self> {
        let (r, pivots) = generator.rref(field.as_ref());
        if pivots.len() != generator.rows {
            return Err(Error::Dimension(format!(
                "generator rows are dependent (rank {} < {})",
                pivots.len(),
                generator.rows
            )));
        }
        Ok(LinearCode { field, generator: r, distance: None })
    }

    pub fn repetition(field: Arc<GaloisField>, len: usize) -> Self {
        Self::new(field, &Mat::from_rows(&[vec![1; len]])).unwrap()
    }

    pub fn length(&self) -> usize {
        self.generator.cols
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows
    }

    /// Cached minimum distance, if computed.
    pub fn distance(&self) -> Option<usize> {
        self.distance
    }

    pub fn compute_distance(&mut self) -> Result<usize> {
        if let Some(d) = self.distance {
            return Ok(d);
        }
        let d = min_distance(self)?;
        self.distance = Some(d);
        Ok(d)
    }

    pub fn to_json(&self) -> CodeJson {
        let s = self.field.spec();
        CodeJson {
            q: self.field.q() as u64,
            p: s.p,
            k: s.k,
            defining_poly: s.defining_poly.clone(),
            length: self.length(),
            n: self.dimension(),
            generator: encode_mat(&self.field, &self.generator),
            d: self.distance,
        }
    }

    pub fn from_json(j: &CodeJson) -> Result<Self> {
        let spec = FieldSpec::new(j.p, j.k, j.defining_poly.clone())?;
        let field = Arc::new(GaloisField::new(spec)?);
        let g = decode_mat(&field, &j.generator, j.length)?;
        if g.rows != j.n {
            return Err(Error::Parse(format!("expected {} generator rows, found {}", j.n, g.rows)));
        }
        let mut c = Self::new(field, &g)?;
        c.distance = j.d;
        Ok(c)
    }
}

/// Minimum Hamming weight of a nonzero codeword, by enumerating messages up to scaling.
pub fn min_distance(code: &LinearCode) -> Result<usize> {
    let f = code.field.as_ref();
    let q = f.q() as u128;
    let n = code.dimension();
    guard::check(guard::pow_sat(q, n as u32))?;
    if n == 0 {
        return Ok(0);
    }
    let rows: Vec<&[u32]> = (0..n).map(|i| code.generator.row(i)).collect();
    let mut best = code.length();
    let mut word = vec![0u32; code.length()];
    search(f, &rows, 0, false, &mut word, &mut best);
    Ok(best)
}

fn search(f: &GaloisField, rows: &[&[u32]], j: usize, nonzero: bool, word: &mut Vec<u32>, best: &mut usize) {
    if j == rows.len() {
        if nonzero {
            let w = word.iter().filter(|&&c| c != 0).count();
            *best = (*best).min(w);
        }
        return;
    }
    // the first nonzero message coordinate is normalized to 1
    let coeffs: Vec<u32> = if nonzero { (0..f.q()).collect() } else { vec![0, 1] };
    for c in coeffs {
        if c == 0 {
            search(f, rows, j + 1, nonzero, word, best);
            continue;
        }
        let saved = word.clone();
        for (w, &g) in word.iter_mut().zip(rows[j]) {
            *w = f.add_u(*w, f.mul_u(c, g));
        }
        search(f, rows, j + 1, true, word, best);
        *word = saved;
    }
}

/// The code `{(a_1(x), …, a_N(x)) : x}` of the linear forms of A.
pub fn code_from_decomposition(alg: &BilinearAlgorithm) -> Result<LinearCode> {
    if !alg.target.is_extension() {
        return Err(Error::Unsupported("codes are defined for extension-field targets".into()));
    }
    LinearCode::new(Arc::clone(&alg.field), &alg.a.transpose()).map_err(|_| {
        Error::Dimension(format!(
            "A has rank {} < {}; the decomposition is degenerate",
            alg.a.rank(&alg.field),
            alg.dim()
        ))
    })
}

/// A subspace of `T ⊕ F_q^N` given by basis rows of length `n + N`, where the
/// first `n` coordinates are an element of the target algebra `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Supercode {
    pub field: Arc<GaloisField>,
    pub target: TargetAlgebra,
    pub basis: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupercodeJson {
    pub q: u64,
    pub n: usize,
    #[serde(rename = "N")]
    pub length: usize,
    pub exact: bool,
    pub basis: Vec<Vec<Vec<u32>>>,
}

impl Supercode {
    pub fn new(field: Arc<GaloisField>, target: TargetAlgebra, basis: Mat) -> Result<Self> {
        if basis.cols < target.dim() {
            return Err(Error::Dimension("supercode rows are shorter than the target".into()));
        }
        Ok(Supercode { field, target, basis })
    }

    pub fn n(&self) -> usize {
        self.target.dim()
    }

    pub fn length(&self) -> usize {
        self.basis.cols - self.n()
    }

    pub fn dim(&self) -> usize {
        self.basis.rank(&self.field)
    }

    fn first(&self) -> Mat {
        let cols: Vec<Vec<u32>> = (0..self.n()).map(|j| self.basis.col(j)).collect();
        Mat::from_cols(&cols, self.basis.rows)
    }

    fn second(m: &Mat, n: usize) -> Mat {
        let cols: Vec<Vec<u32>> = (n..m.cols).map(|j| m.col(j)).collect();
        Mat::from_cols(&cols, m.rows)
    }

    /// Pairwise products of basis rows.
    fn squares(&self) -> Mat {
        let f = self.field.as_ref();
        let n = self.n();
        let rows = self.basis.to_rows();
        let mut out = Vec::new();
        for i in 0..rows.len() {
            for j in i..rows.len() {
                let mut v = self.target.multiply(f, &rows[i][..n], &rows[j][..n]);
                v.extend(rows[i][n..].iter().zip(&rows[j][n..]).map(|(&a, &b)| f.mul_u(a, b)));
                out.push(v);
            }
        }
        if out.is_empty() {
            Mat::zeros(0, self.basis.cols)
        } else {
            Mat::from_rows(&out)
        }
    }

    /// The first projection maps S onto the target.
    pub fn condition1(&self) -> bool {
        self.first().rank(&self.field) == self.n()
    }

    /// The second projection is injective on the span of S².
    pub fn condition2(&self) -> bool {
        let sq = self.squares();
        sq.rank(&self.field) == Self::second(&sq, self.n()).rank(&self.field)
    }

    pub fn is_exact(&self) -> bool {
        self.condition1() && self.dim() == self.n()
    }

    fn check(&self) -> Result<()> {
        if !self.condition1() {
            return Err(Error::Condition("condition 1: the first projection is not onto".into()));
        }
        if !self.condition2() {
            return Err(Error::Condition(
                "condition 2: the second projection is not injective on the span of S^2".into(),
            ));
        }
        Ok(())
    }

    /// The sub-supercode spanned by preimages of the standard basis under the first projection.
    pub fn exact_subcode(&self) -> Result<Supercode> {
        self.check()?;
        let f = self.field.as_ref();
        let n = self.n();
        // rows c with c · first = I select combinations of basis rows
        let c = self
            .first()
            .transpose()
            .solve(f, &Mat::identity(n))
            .ok_or_else(|| Error::Condition("condition 1: the first projection is not onto".into()))?
            .transpose();
        Supercode::new(Arc::clone(&self.field), self.target.clone(), c.mul(f, &self.basis))
    }

    pub fn to_json(&self) -> SupercodeJson {
        SupercodeJson {
            q: self.field.q() as u64,
            n: self.n(),
            length: self.length(),
            exact: self.is_exact(),
            basis: encode_mat(&self.field, &self.basis),
        }
    }
}

/// `S = {(x, A x)}` for a verified symmetric algorithm.
pub fn supercode_from_symmetric(alg: &BilinearAlgorithm) -> Result<Supercode> {
    if !alg.is_symmetric() {
        return Err(Error::Unsupported("supercodes come from symmetric algorithms (A = B)".into()));
    }
    if !alg.verify()? {
        return Err(Error::Verification("input algorithm does not verify".into()));
    }
    let basis = Mat::identity(alg.dim()).hstack(&alg.a.transpose());
    Supercode::new(Arc::clone(&alg.field), alg.target.clone(), basis)
}

/// Symmetric algorithm of an (exact sub-)supercode; identically zero forms are dropped.
pub fn symmetric_from_supercode(s: &Supercode) -> Result<BilinearAlgorithm> {
    let exact = s.exact_subcode()?;
    let f = exact.field.as_ref();
    let n = exact.n();
    let u = Supercode::second(&exact.basis, n);
    let keep: Vec<usize> = (0..u.cols).filter(|&i| (0..n).any(|j| u.get(j, i) != 0)).collect();
    let a = Mat::from_cols(&keep.iter().map(|&i| u.col(i)).collect::<Vec<_>>(), n).transpose();
    // W maps the second projection of each product back to the first
    let sq = exact.squares();
    let x = Mat::from_cols(&(0..n).map(|j| sq.col(j)).collect::<Vec<_>>(), sq.rows);
    let v = Mat::from_cols(&keep.iter().map(|&i| sq.col(n + i)).collect::<Vec<_>>(), sq.rows);
    let w = v
        .solve(f, &x)
        .ok_or_else(|| Error::Condition("condition 2: products do not determine the first projection".into()))?
        .transpose();
    let alg = BilinearAlgorithm::new(Arc::clone(&exact.field), exact.target.clone(), a.clone(), a, w)?;
    if !alg.verify()? {
        return Err(Error::Verification("algorithm from supercode does not verify".into()));
    }
    Ok(alg)
}
