use num_complex::Complex64;

use super::{givens, rot_left, rot_right, CMat};
use crate::error::{Error, Result};

/// Eigenvalues of a general complex matrix.
pub fn eigenvalues(m: &CMat) -> Result<Vec<Complex64>> {
    let mut h = m.clone();
    balance(&mut h);
    to_hessenberg(&mut h);
    hessenberg_eigenvalues(&mut h)
}

/// Diagonal similarity scaling by powers of two.
pub(crate) fn balance(m: &mut CMat) {
    let n = m.n;
    let radix = 2.0f64;
    let mut done = false;
    let mut sweeps = 0;
    while !done && sweeps < 100 {
        done = true;
        sweeps += 1;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].l1_norm();
                    r += m[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / radix;
            let mut cc = c;
            while cc < g {
                f *= radix;
                cc *= radix * radix;
            }
            g = r * radix;
            while cc > g {
                f /= radix;
                cc /= radix * radix;
            }
            if (cc + r / f) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// Unitary similarity to upper Hessenberg form.
pub(crate) fn to_hessenberg(h: &mut CMat) {
    let n = h.n;
    if n < 3 {
        return;
    }
    for j in 0..n - 2 {
        for i in (j + 2..n).rev() {
            let x = h[(i - 1, j)];
            let y = h[(i, j)];
            if y.norm_sqr() == 0.0 {
                continue;
            }
            let (c, s) = givens(x, y);
            for col in j..n {
                let (u, v) = rot_left(c, s, h[(i - 1, col)], h[(i, col)]);
                h[(i - 1, col)] = u;
                h[(i, col)] = v;
            }
            h[(i, j)] = Complex64::new(0.0, 0.0);
            for row in 0..n {
                let (u, v) = rot_right(c, s, h[(row, i - 1)], h[(row, i)]);
                h[(row, i - 1)] = u;
                h[(row, i)] = v;
            }
        }
    }
}

/// Eigenvalues of an upper Hessenberg matrix by single-shift implicit QR.
pub fn hessenberg_eigenvalues(h: &mut CMat) -> Result<Vec<Complex64>> {
    let n = h.n;
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(eig);
    }
    let eps = f64::EPSILON;
    let norm = h.frobenius().max(f64::MIN_POSITIVE);
    let mut ihi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    loop {
        if ihi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        let mut l = ihi;
        while l > 0 {
            let sub = h[(l, l - 1)].l1_norm();
            let mut d = h[(l - 1, l - 1)].l1_norm() + h[(l, l)].l1_norm();
            if d == 0.0 {
                d = norm;
            }
            if sub <= eps * d {
                h[(l, l - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == ihi {
            eig[ihi] = h[(ihi, ihi)];
            ihi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > 60 * n.max(10) {
            return Err(Error::NoConvergence("Hessenberg QR".into()));
        }
        let shift = if iter % 11 == 10 {
            h[(ihi, ihi)] + Complex64::new(h[(ihi, ihi - 1)].re.abs(), 0.0) * 1.5
        } else {
            wilkinson(
                h[(ihi - 1, ihi - 1)],
                h[(ihi - 1, ihi)],
                h[(ihi, ihi - 1)],
                h[(ihi, ihi)],
            )
        };
        let mut x = h[(l, l)] - shift;
        let mut y = h[(l + 1, l)];
        for k in l..ihi {
            if k > l {
                x = h[(k, k - 1)];
                y = h[(k + 1, k - 1)];
            }
            let (c, s) = givens(x, y);
            let c0 = if k > l { k - 1 } else { l };
            for col in c0..=ihi {
                let (u, v) = rot_left(c, s, h[(k, col)], h[(k + 1, col)]);
                h[(k, col)] = u;
                h[(k + 1, col)] = v;
            }
            if k > l {
                h[(k + 1, k - 1)] = Complex64::new(0.0, 0.0);
            }
            let r1 = (k + 2).min(ihi);
            for row in l..=r1 {
                let (u, v) = rot_right(c, s, h[(row, k)], h[(row, k + 1)]);
                h[(row, k)] = u;
                h[(row, k + 1)] = v;
            }
        }
    }
    Ok(eig)
}

/// Eigenvalue of `[a b; c d]` closer to `d`.
fn wilkinson(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let tr = a + d;
    let det = a * d - b * c;
    let disc = (tr * tr * 0.25 - det).sqrt();
    let l1 = tr * 0.5 + disc;
    let l2 = tr * 0.5 - disc;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{complex_gaussian, RngStream};

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        v
    }

    #[test]
    fn triangular() {
        let c = |r: f64| Complex64::new(r, 0.0);
        let m = CMat::from_rows(
            3,
            vec![
                c(1.0),
                c(5.0),
                c(2.0),
                c(0.0),
                c(-2.0),
                c(7.0),
                c(0.0),
                c(0.0),
                c(3.0),
            ],
        );
        let e = sorted(eigenvalues(&m).unwrap());
        for (a, b) in e.iter().zip([-2.0, 1.0, 3.0]) {
            assert!((a - c(b)).norm() < 1e-12);
        }
    }

    #[test]
    fn trace_and_det_match() {
        let mut rng = RngStream::new(3).rng();
        for n in [2, 5, 12, 30] {
            let m = CMat::from_rows(n, (0..n * n).map(|_| complex_gaussian(&mut rng)).collect());
            let e = eigenvalues(&m).unwrap();
            let tr: Complex64 = (0..n).map(|i| m[(i, i)]).sum();
            let sum: Complex64 = e.iter().sum();
            assert!((tr - sum).norm() < 1e-10 * n as f64);
            let det = m.det();
            let prod: Complex64 = e.iter().product();
            assert!((det - prod).norm() < 1e-9 * det.norm().max(1.0));
            for &z in &e {
                let mut a = m.clone();
                for i in 0..n {
                    a[(i, i)] -= z;
                }
                let scale = m.frobenius().powi(n as i32);
                assert!(a.det().norm() < 1e-10 * scale);
            }
        }
    }

    #[test]
    fn rotation_matrix() {
        let m = CMat::from_rows(
            2,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        );
        let e = sorted(eigenvalues(&m).unwrap());
        assert!((e[0] - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((e[1] - Complex64::new(0.0, 1.0)).norm() < 1e-14);
    }
}
