//! Small dense exact linear algebra over a [`Scalar`] field.
//!
//! Sizes in this crate stay below ~50, so plain Gaussian elimination with
//! exact pivots is entirely adequate.

use crate::field::{FieldKind, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub kind: FieldKind,
    pub a: Vec<Vec<Scalar>>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize, kind: FieldKind) -> Self {
        Mat {
            rows,
            cols,
            kind,
            a: vec![vec![Scalar::zero(kind); cols]; rows],
        }
    }

    pub fn identity(n: usize, kind: FieldKind) -> Self {
        let mut m = Mat::zero(n, n, kind);
        for i in 0..n {
            m.a[i][i] = Scalar::one(kind);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, kind: FieldKind) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        Mat {
            rows: r,
            cols: c,
            kind,
            a: rows,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.a[i][j] = self.a[i][j].add(&other.a[i][j]);
            }
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.scale(&Scalar::from_int(-1, self.kind)))
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let mut out = self.clone();
        for row in &mut out.a {
            for x in row.iter_mut() {
                *x = x.mul(c);
            }
        }
        out
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols, self.kind);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.a[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = self.a[i][k].mul(&other.a[k][j]);
                    out.a[i][j] = out.a[i][j].add(&t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.kind);
                for j in 0..self.cols {
                    acc = acc.add(&self.a[i][j].mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    /// Row echelon form; returns (reduced matrix, pivot columns).
    pub fn row_reduce(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.a[i][c].is_zero()) else {
                continue;
            };
            m.a.swap(r, pr);
            let inv = m.a[r][c].inv().unwrap();
            for j in 0..m.cols {
                m.a[r][j] = m.a[r][j].mul(&inv);
            }
            for i in 0..m.rows {
                if i != r && !m.a[i][c].is_zero() {
                    let f = m.a[i][c].clone();
                    for j in 0..m.cols {
                        let t = m.a[r][j].mul(&f);
                        m.a[i][j] = m.a[i][j].sub(&t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1.len()
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (red, pivots) = self.row_reduce();
        let mut basis = Vec::new();
        let piv_set: std::collections::BTreeSet<usize> = pivots.iter().cloned().collect();
        for free in 0..self.cols {
            if piv_set.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(self.kind); self.cols];
            v[free] = Scalar::one(self.kind);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = red.a[r][free].neg();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zero(n, 2 * n, self.kind);
        for i in 0..n {
            for j in 0..n {
                aug.a[i][j] = self.a[i][j].clone();
            }
            aug.a[i][n + i] = Scalar::one(self.kind);
        }
        let (red, pivots) = aug.row_reduce();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = Mat::zero(n, n, self.kind);
        for i in 0..n {
            for j in 0..n {
                out.a[i][j] = red.a[i][n + j].clone();
            }
        }
        Some(out)
    }

    /// Solve `self * x = b`; returns one solution if consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut aug = Mat::zero(self.rows, self.cols + 1, self.kind);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.a[i][j] = self.a[i][j].clone();
            }
            aug.a[i][self.cols] = b[i].clone();
        }
        let (red, pivots) = aug.row_reduce();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(self.kind); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = red.a[r][self.cols].clone();
        }
        Some(x)
    }
}

/// Dimension of the span of a family of matrices, each flattened to a vector.
pub fn span_dimension(mats: &[Mat]) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let kind = mats[0].kind;
    let rows: Vec<Vec<Scalar>> = mats
        .iter()
        .map(|m| m.a.iter().flatten().cloned().collect())
        .collect();
    Mat::from_rows(rows, kind).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x, FieldKind::Q)).collect())
                .collect(),
            FieldKind::Q,
        )
    }

    #[test]
    fn inverse_and_solve() {
        let m = qm(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2, FieldKind::Q));
        let x = m
            .solve(&[Scalar::from_int(3, FieldKind::Q), Scalar::from_int(2, FieldKind::Q)])
            .unwrap();
        assert_eq!(x, vec![Scalar::from_int(1, FieldKind::Q), Scalar::from_int(1, FieldKind::Q)]);
    }

    #[test]
    fn kernel_dimension() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }
}
