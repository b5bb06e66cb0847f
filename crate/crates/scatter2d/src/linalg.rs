//! Small dense complex linear algebra: just enough for the block-symbol
//! determinants and the projection identities. Matrices here are tiny
//! (at most ~50x50), so plain row-major storage and O(n^3) algorithms
//! are the right tool.

use num_complex::Complex64;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub n_rows: usize,
    pub n_cols: usize,
    pub data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        CMat { n_rows, n_cols, data: vec![Complex64::new(0.0, 0.0); n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n_rows = rows.len();
        let n_cols = if n_rows > 0 { rows[0].len() } else { 0 };
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for r in rows {
            assert_eq!(r.len(), n_cols, "ragged rows");
            data.extend_from_slice(r);
        }
        CMat { n_rows, n_cols, data }
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.n_cols, other.n_rows, "dimension mismatch");
        let mut out = CMat::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.n_cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.n_cols, v.len());
        (0..self.n_rows)
            .map(|i| (0..self.n_cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += *b;
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> CMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    /// Largest entry-wise absolute difference.
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Deviation from unitarity, max |(M* M - I)_{ij}|.
    pub fn unitarity_defect(&self) -> f64 {
        assert!(self.is_square());
        let p = self.adjoint().mul(self);
        p.max_abs_diff(&CMat::identity(self.n_rows))
    }

    /// Determinant by LU factorization with partial pivoting.
    pub fn det(&self) -> Complex64 {
        assert!(self.is_square());
        let n = self.n_rows;
        let mut a = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let mut pivot = col;
            let mut best = a[col * n + col].norm();
            for row in (col + 1)..n {
                let v = a[row * n + col].norm();
                if v > best {
                    best = v;
                    pivot = row;
                }
            }
            if best == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let d = a[col * n + col];
            det *= d;
            for row in (col + 1)..n {
                let f = a[row * n + col] / d;
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in (col + 1)..n {
                    let v = a[col * n + j];
                    a[row * n + j] -= f * v;
                }
                a[row * n + col] = Complex64::new(0.0, 0.0);
            }
        }
        det
    }

    /// Solve A X = B for X (B consumed column-wise), LU with partial pivoting.
    pub fn solve(&self, b: &CMat) -> Option<CMat> {
        assert!(self.is_square());
        assert_eq!(self.n_rows, b.n_rows);
        let n = self.n_rows;
        let m = b.n_cols;
        let mut a = self.data.clone();
        let mut x = b.data.clone();
        for col in 0..n {
            let mut pivot = col;
            let mut best = a[col * n + col].norm();
            for row in (col + 1)..n {
                let v = a[row * n + col].norm();
                if v > best {
                    best = v;
                    pivot = row;
                }
            }
            if best == 0.0 {
                return None;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                for j in 0..m {
                    x.swap(col * m + j, pivot * m + j);
                }
            }
            let d = a[col * n + col];
            for row in (col + 1)..n {
                let f = a[row * n + col] / d;
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in (col + 1)..n {
                    let v = a[col * n + j];
                    a[row * n + j] -= f * v;
                }
                for j in 0..m {
                    let v = x[col * m + j];
                    x[row * m + j] -= f * v;
                }
            }
        }
        for col in (0..n).rev() {
            let d = a[col * n + col];
            for j in 0..m {
                let mut s = x[col * m + j];
                for k in (col + 1)..n {
                    s -= a[col * n + k] * x[k * m + j];
                }
                x[col * m + j] = s / d;
            }
        }
        Some(CMat { n_rows: n, n_cols: m, data: x })
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n_cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n_cols + j]
    }
}

/// Rank-1 update target: out += s * |u><v|.
pub fn add_outer(out: &mut CMat, s: Complex64, u: &[Complex64], v: &[Complex64]) {
    assert_eq!(out.n_rows, u.len());
    assert_eq!(out.n_cols, v.len());
    for i in 0..u.len() {
        for j in 0..v.len() {
            out[(i, j)] += s * u[i] * v[j].conj();
        }
    }
}

/// Inner product <u, v> antilinear in the first argument.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm_sq(u: &[Complex64]) -> f64 {
    u.iter().map(|a| a.norm_sqr()).sum()
}

/// Eigenvalues of a Hermitian matrix by the cyclic Jacobi method.
///
/// The input is symmetrized first; returns eigenvalues in ascending order.
pub fn hermitian_eigenvalues(h: &CMat) -> Vec<f64> {
    assert!(h.is_square());
    let n = h.n_rows;
    let mut a = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
        }
    }
    let off = |a: &CMat| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let scale: f64 = a.data.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    for _sweep in 0..60 {
        if off(&a) <= 1e-15 * scale * n as f64 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.norm() <= 1e-18 * scale {
                    continue;
                }
                // Unitary 2x2 rotation annihilating the (p,q) entry.
                let phase = apq / apq.norm();
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = phase * s;
                // Rows p, q.
                for j in 0..n {
                    let ap = a[(p, j)];
                    let aq = a[(q, j)];
                    a[(p, j)] = ap * c - sp * aq;
                    a[(q, j)] = sp.conj() * ap + aq * c;
                }
                // Columns p, q.
                for i in 0..n {
                    let ap = a[(i, p)];
                    let aq = a[(i, q)];
                    a[(i, p)] = ap * c - sp.conj() * aq;
                    a[(i, q)] = sp * ap + aq * c;
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eigs
}

/// Eigenvalues of a unitary matrix, as unimodular complex numbers sorted by
/// argument in (-pi, pi].
///
/// Uses the Cayley transform: for unitary B with -1 not in the spectrum,
/// K = i (I - B)(I + B)^{-1} is Hermitian with eigenvalues tan(theta/2).
/// A pre-rotation by a scalar phase moves the spectrum away from -1.
pub fn unitary_eigenvalues(b: &CMat) -> Vec<Complex64> {
    assert!(b.is_square());
    let n = b.n_rows;
    let i1 = Complex64::new(0.0, 1.0);
    for &phi in &[0.0_f64, 0.377, 0.811, 1.239, 1.731] {
        let rot = Complex64::from_polar(1.0, phi);
        let bp = b.scale(rot);
        let ident = CMat::identity(n);
        let ip = ident.add(&bp);
        // |det(I + B')| small means an eigenvalue close to -1; try next phase.
        if ip.det().norm() < 1e-6 {
            continue;
        }
        let im = ident.add(&bp.scale(Complex64::new(-1.0, 0.0)));
        let k = match ip.solve(&im) {
            Some(x) => x.scale(i1),
            None => continue,
        };
        let tans = hermitian_eigenvalues(&k);
        let mut eigs: Vec<Complex64> = tans
            .iter()
            .map(|t| Complex64::from_polar(1.0, 2.0 * t.atan() - phi))
            .collect();
        eigs.sort_by(|x, y| x.arg().partial_cmp(&y.arg()).unwrap());
        return eigs;
    }
    panic!("unitary_eigenvalues: all pre-rotations hit an eigenvalue at -1");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn det_of_identity_and_permutation() {
        assert!((CMat::identity(5).det() - c(1.0, 0.0)).norm() < 1e-14);
        let mut p = CMat::zeros(2, 2);
        p[(0, 1)] = c(1.0, 0.0);
        p[(1, 0)] = c(1.0, 0.0);
        assert!((p.det() - c(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn det_of_triangular_product() {
        // det(AB) = det(A) det(B) on a hand-built pair.
        let a = CMat::from_rows(&[
            vec![c(1.0, 1.0), c(2.0, 0.0)],
            vec![c(0.0, 0.0), c(3.0, -1.0)],
        ]);
        let b = CMat::from_rows(&[
            vec![c(0.5, 0.0), c(0.0, 2.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        ]);
        let lhs = a.mul(&b).det();
        let rhs = a.det() * b.det();
        assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn solve_roundtrip() {
        let a = CMat::from_rows(&[
            vec![c(2.0, 1.0), c(-1.0, 0.5), c(0.0, 0.0)],
            vec![c(0.0, 1.0), c(3.0, 0.0), c(1.0, -1.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(2.0, 2.0)],
        ]);
        let x = CMat::from_rows(&[
            vec![c(1.0, 0.0)],
            vec![c(0.0, 1.0)],
            vec![c(-1.0, 2.0)],
        ]);
        let b = a.mul(&x);
        let xs = a.solve(&b).unwrap();
        assert!(xs.max_abs_diff(&x) < 1e-12);
    }

    #[test]
    fn hermitian_eigenvalues_match_known_2x2() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let h = CMat::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, -1.0), c(1.0, 0.0)],
        ]);
        let e = hermitian_eigenvalues(&h);
        assert!((e[0] - 0.0).abs() < 1e-12);
        assert!((e[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn unitary_eigenvalues_recover_diagonal_phases() {
        let phases = [-2.5_f64, -0.3, 0.0, 1.1, 3.0];
        let mut u = CMat::zeros(5, 5);
        for (i, &p) in phases.iter().enumerate() {
            u[(i, i)] = Complex64::from_polar(1.0, p);
        }
        let eigs = unitary_eigenvalues(&u);
        let mut want: Vec<f64> = phases
            .iter()
            .map(|p| {
                let mut a = *p;
                if a > std::f64::consts::PI {
                    a -= 2.0 * std::f64::consts::PI;
                }
                a
            })
            .collect();
        want.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (e, w) in eigs.iter().zip(want.iter()) {
            assert!((e.arg() - w).abs() < 1e-10, "{} vs {}", e.arg(), w);
        }
    }
}
