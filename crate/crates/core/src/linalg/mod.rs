//! Dense complex eigenvalue solvers and polynomial root finding.

mod eig;
mod poly;
mod qz;

pub use eig::{eigenvalues, hessenberg_eigenvalues};
pub use poly::{
    aberth_roots, cluster_roots, companion_roots, horner, newton_polish, poly_roots, winding_count,
    CircleTable, RootMethod,
};
pub use qz::{generalized_eigenvalues, GenEig};

use num_complex::Complex64;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub n: usize,
    pub a: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat {
            n,
            a: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(n: usize, a: Vec<Complex64>) -> Self {
        assert_eq!(a.len(), n * n);
        CMat { n, a }
    }

    pub fn frobenius(&self) -> f64 {
        self.a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Determinant by partial-pivot LU.
    pub fn det(&self) -> Complex64 {
        det_in_place(&mut self.a.clone(), self.n)
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.a[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.a[i * self.n + j]
    }
}

/// Determinant of a row-major `n x n` buffer, destroying it.
pub fn det_in_place(a: &mut [Complex64], n: usize) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let mut p = k;
        let mut best = a[k * n + k].norm_sqr();
        for i in k + 1..n {
            let v = a[i * n + k].norm_sqr();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let piv = a[k * n + k];
        det *= piv;
        let inv = 1.0 / piv;
        for i in k + 1..n {
            let f = a[i * n + k] * inv;
            if f.norm_sqr() == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let t = a[k * n + j];
                a[i * n + j] -= f * t;
            }
        }
    }
    det
}

/// Rotation `[c s; -conj(s) c]` mapping `(x, y)` to `(r, 0)`.
#[inline]
pub(crate) fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let nrm = ax.hypot(ay);
    let c = ax / nrm;
    let s = (x / ax) * y.conj() / nrm;
    (c, s)
}

/// Apply the rotation to a pair `(u, v)` from the left.
#[inline]
pub(crate) fn rot_left(c: f64, s: Complex64, u: Complex64, v: Complex64) -> (Complex64, Complex64) {
    (u * c + s * v, -s.conj() * u + v * c)
}

/// Apply the conjugate transpose of the rotation from the right to a row pair `(u, v)`.
#[inline]
pub(crate) fn rot_right(
    c: f64,
    s: Complex64,
    u: Complex64,
    v: Complex64,
) -> (Complex64, Complex64) {
    (u * c + v * s.conj(), -u * s + v * c)
}
