//! Small dense linear algebra: just enough for minors, least squares, and
//! singular values of the small Jacobians this crate meets.

/// Row-major dense matrix.
#[derive(Clone, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
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

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det(m: &Mat) -> f64 {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.data.clone();
    let mut sign = 1.0;
    let mut d = 1.0;
    for k in 0..n {
        let mut piv = k;
        for i in (k + 1)..n {
            if a[i * n + k].abs() > a[piv * n + k].abs() {
                piv = i;
            }
        }
        if a[piv * n + k] == 0.0 {
            return 0.0;
        }
        if piv != k {
            for j in 0..n {
                a.swap(k * n + j, piv * n + j);
            }
            sign = -sign;
        }
        let akk = a[k * n + k];
        d *= akk;
        for i in (k + 1)..n {
            let f = a[i * n + k] / akk;
            for j in k..n {
                a[i * n + j] -= f * a[k * n + j];
            }
        }
    }
    sign * d
}

/// Solve `A x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` for (numerically) singular systems.
pub fn solve(a: &Mat, b: &[f64]) -> Option<Vec<f64>> {
    assert_eq!(a.rows, a.cols);
    assert_eq!(a.rows, b.len());
    let n = a.rows;
    let mut m = a.data.clone();
    let mut x = b.to_vec();
    for k in 0..n {
        let mut piv = k;
        for i in (k + 1)..n {
            if m[i * n + k].abs() > m[piv * n + k].abs() {
                piv = i;
            }
        }
        if m[piv * n + k].abs() < 1e-300 {
            return None;
        }
        if piv != k {
            for j in 0..n {
                m.swap(k * n + j, piv * n + j);
            }
            x.swap(k, piv);
        }
        let akk = m[k * n + k];
        for i in (k + 1)..n {
            let f = m[i * n + k] / akk;
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                m[i * n + j] -= f * m[k * n + j];
            }
            x[i] -= f * x[k];
        }
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        for j in (i + 1)..n {
            s -= m[i * n + j] * x[j];
        }
        x[i] = s / m[i * n + i];
    }
    Some(x)
}

/// Minimum-norm solution of the underdetermined full-row-rank system
/// `A x = b` via `x = Aᵀ (A Aᵀ)⁻¹ b`.
pub fn min_norm_solve(a: &Mat, b: &[f64]) -> Option<Vec<f64>> {
    let at = a.transpose();
    let aat = a.matmul(&at);
    let y = solve(&aat, b)?;
    Some(at.matvec(&y))
}

/// Singular values of an `m × n` matrix, descending, via one-sided Jacobi
/// on the Gram matrix columns. Adequate for the tiny Jacobians used here.
pub fn singular_values(m: &Mat) -> Vec<f64> {
    // Work on columns of A (n of them, each length rows).
    let rows = m.rows;
    let cols = m.cols;
    let mut a: Vec<Vec<f64>> = (0..cols)
        .map(|j| (0..rows).map(|i| m.get(i, j)).collect())
        .collect();
    let dot = |u: &[f64], v: &[f64]| -> f64 { u.iter().zip(v).map(|(x, y)| x * y).sum() };
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let apq = dot(&a[p], &a[q]);
                let app = dot(&a[p], &a[p]);
                let aqq = dot(&a[q], &a[q]);
                off = off.max(apq.abs());
                if apq.abs() <= 1e-30 * (app * aqq).sqrt().max(1e-300) {
                    continue;
                }
                let tau = (aqq - app) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..rows {
                    let ap = a[p][i];
                    let aq = a[q][i];
                    a[p][i] = c * ap - s * aq;
                    a[q][i] = s * ap + c * aq;
                }
            }
        }
        if off < 1e-300 {
            break;
        }
    }
    let mut sv: Vec<f64> = a.iter().map(|col| dot(col, col).sqrt()).collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sv
}

/// Ordinary least squares line fit `y ≈ slope·x + intercept`.
/// Returns `(slope, intercept, rms_residual)`.
pub fn line_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    let slope = if denom.abs() < 1e-300 { 0.0 } else { (n * sxy - sx * sy) / denom };
    let intercept = (sy - slope * sx) / n;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let e = y - (slope * x + intercept);
            e * e
        })
        .sum();
    (slope, intercept, (rss / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_solve_small() {
        let a = Mat::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]);
        assert!((det(&a) - 5.0).abs() < 1e-14);
        let x = solve(&a, &[3.0, 4.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14);
        assert!((x[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn min_norm_recovers_consistent_solution() {
        // 1x2 system x + y = 2 -> minimum norm (1,1).
        let a = Mat::from_rows(&[vec![1.0, 1.0]]);
        let x = min_norm_solve(&a, &[2.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14);
        assert!((x[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn singular_values_of_rank_one() {
        let m = Mat::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0], vec![3.0, 6.0]]);
        let sv = singular_values(&m);
        assert!(sv[0] > 1.0);
        assert!(sv[1] < 1e-12, "rank-1 matrix second singular value {}", sv[1]);
    }

    #[test]
    fn line_fit_exact() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 * x - 1.0).collect();
        let (s, i, r) = line_fit(&xs, &ys);
        assert!((s - 2.5).abs() < 1e-12);
        assert!((i + 1.0).abs() < 1e-12);
        assert!(r < 1e-12);
    }
}
