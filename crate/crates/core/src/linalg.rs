//! Dense matrices over a table-driven finite field.

use crate::gf::GaloisField;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend_from_slice(r);
        }
        Mat { rows: rows.len(), cols, data }
    }

    pub fn from_cols(cols: &[Vec<u32>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &GaloisField, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matrix product dimension mismatch");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b != 0 {
                        let idx = i * o.cols + j;
                        out.data[idx] = f.add_u(out.data[idx], f.mul_u(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &GaloisField, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add_u(acc, f.mul_u(a, b)))
            })
            .collect()
    }

    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, o: &Mat) -> Mat {
        self.transpose().vstack(&o.transpose()).transpose()
    }

    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let rows: Vec<Vec<u32>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        let mut m = Mat::from_rows(&rows);
        m.cols = self.cols;
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &GaloisField) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv_u(m.get(r, c)).unwrap();
            for j in 0..m.cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul_u(v, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub_u(m.get(i, j), f.mul_u(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &GaloisField) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel(&self, f: &GaloisField) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref(f);
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg_u(r.get(i, free));
            }
            out.push(v);
        }
        out
    }

    /// Some `X` with `self · X = b`, if one exists.
    pub fn solve(&self, f: &GaloisField, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows);
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref(f);
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, f: &GaloisField, b: &[u32]) -> Option<Vec<u32>> {
        let bm = Mat::from_cols(&[b.to_vec()], self.rows);
        self.solve(f, &bm).map(|x| x.col(0))
    }

    pub fn inverse(&self, f: &GaloisField) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(f, &Mat::identity(self.rows))?;
        if self.mul(f, &x) == Mat::identity(self.rows) {
            Some(x)
        } else {
            None
        }
    }

    /// `L` with `L · self = I` when `self` has full column rank.
    pub fn left_inverse(&self, f: &GaloisField) -> Option<Mat> {
        let (_, rows) = self.transpose().rref(f);
        if rows.len() != self.cols {
            return None;
        }
        let sub = self.select_rows(&rows);
        let inv = sub.inverse(f)?;
        let mut l = Mat::zeros(self.cols, self.rows);
        for (k, &ri) in rows.iter().enumerate() {
            for i in 0..self.cols {
                l.set(i, ri, inv.get(i, k));
            }
        }
        Some(l)
    }

    /// Indices of a maximal independent subset of rows, chosen greedily in order.
    pub fn independent_rows(&self, f: &GaloisField) -> Vec<usize> {
        self.transpose().rref(f).1
    }
}
