use num_complex::Complex64;

use super::{givens, rot_left, CMat};
use crate::error::{Error, Result};

/// One generalized eigenvalue in homogeneous form `alpha / beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenEig {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub infinite: bool,
}

impl GenEig {
    pub fn value(&self) -> Option<Complex64> {
        if self.infinite {
            None
        } else {
            Some(self.alpha / self.beta)
        }
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Rotation `Z` with `[x y] Z = [0 r]`; columns map to `(c p - conj(s) q, s p + c q)`.
#[inline]
fn givens_right(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ax == 0.0 {
        return (1.0, ZERO);
    }
    if ay == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let n = ax.hypot(ay);
    (ay / n, x.conj() * ay / (y.conj() * n))
}

#[inline]
fn apply_right(
    m: &mut CMat,
    rows: std::ops::RangeInclusive<usize>,
    p: usize,
    c: f64,
    s: Complex64,
) {
    let sc = s.conj();
    for r in rows {
        let u = m[(r, p)];
        let v = m[(r, p + 1)];
        m[(r, p)] = u * c - sc * v;
        m[(r, p + 1)] = s * u + v * c;
    }
}

#[inline]
fn apply_left(m: &mut CMat, p: usize, cols: std::ops::RangeInclusive<usize>, c: f64, s: Complex64) {
    for col in cols {
        let (u, v) = rot_left(c, s, m[(p, col)], m[(p + 1, col)]);
        m[(p, col)] = u;
        m[(p + 1, col)] = v;
    }
}

/// Generalized eigenvalues of the pencil `A - lambda B` by single-shift QZ.
///
/// Eigenvalues whose normalized `|beta|` falls below `1e-12` are flagged infinite.
pub fn generalized_eigenvalues(a: &CMat, b: &CMat) -> Result<Vec<GenEig>> {
    let n = a.n;
    if b.n != n {
        return Err(Error::InvalidParameter("pencil dimensions differ".into()));
    }
    let na = a.frobenius();
    let nb = b.frobenius();
    if n == 0 {
        return Ok(Vec::new());
    }
    if na == 0.0 && nb == 0.0 {
        return Err(Error::InvalidParameter("singular pencil".into()));
    }
    let sa = if na > 0.0 { na } else { 1.0 };
    let sb = if nb > 0.0 { nb } else { 1.0 };
    let mut h = CMat::from_rows(n, a.a.iter().map(|z| z / sa).collect());
    let mut t = CMat::from_rows(n, b.a.iter().map(|z| z / sb).collect());

    for j in 0..n {
        for i in (j + 1..n).rev() {
            if t[(i, j)].norm_sqr() == 0.0 {
                continue;
            }
            let (c, s) = givens(t[(i - 1, j)], t[(i, j)]);
            apply_left(&mut t, i - 1, j..=n - 1, c, s);
            apply_left(&mut h, i - 1, 0..=n - 1, c, s);
            t[(i, j)] = ZERO;
        }
    }
    if n > 2 {
        for j in 0..n - 2 {
            for i in (j + 2..n).rev() {
                if h[(i, j)].norm_sqr() == 0.0 {
                    continue;
                }
                let (c, s) = givens(h[(i - 1, j)], h[(i, j)]);
                apply_left(&mut h, i - 1, j..=n - 1, c, s);
                apply_left(&mut t, i - 1, (i - 1)..=n - 1, c, s);
                h[(i, j)] = ZERO;
                let (c, s) = givens_right(t[(i, i - 1)], t[(i, i)]);
                apply_right(&mut t, 0..=i, i - 1, c, s);
                apply_right(&mut h, 0..=n - 1, i - 1, c, s);
                t[(i, i - 1)] = ZERO;
            }
        }
    }

    let eps = f64::EPSILON;
    let atol = eps * h.frobenius().max(f64::MIN_POSITIVE);
    let btol = eps * t.frobenius().max(f64::MIN_POSITIVE);
    let mut out = vec![
        GenEig {
            alpha: ZERO,
            beta: ZERO,
            infinite: false
        };
        n
    ];
    let mut ilast = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let mut eshift = ZERO;
    loop {
        if ilast == 0 {
            out[0] = finish(h[(0, 0)], t[(0, 0)], sa, sb, btol);
            break;
        }
        if h[(ilast, ilast - 1)].norm() <= atol {
            h[(ilast, ilast - 1)] = ZERO;
            out[ilast] = finish(h[(ilast, ilast)], t[(ilast, ilast)], sa, sb, btol);
            ilast -= 1;
            iter = 0;
            eshift = ZERO;
            continue;
        }
        if t[(ilast, ilast)].norm() <= btol {
            t[(ilast, ilast)] = ZERO;
            let (c, s) = givens_right(h[(ilast, ilast - 1)], h[(ilast, ilast)]);
            apply_right(&mut h, 0..=ilast, ilast - 1, c, s);
            apply_right(&mut t, 0..=ilast - 1, ilast - 1, c, s);
            h[(ilast, ilast - 1)] = ZERO;
            out[ilast] = finish(h[(ilast, ilast)], ZERO, sa, sb, btol);
            ilast -= 1;
            iter = 0;
            eshift = ZERO;
            continue;
        }
        let mut ilo = 0;
        for j in (1..ilast).rev() {
            if h[(j, j - 1)].norm() <= atol {
                h[(j, j - 1)] = ZERO;
                ilo = j;
                break;
            }
        }
        if let Some(j) = (ilo..ilast).find(|&j| t[(j, j)].norm() <= btol) {
            t[(j, j)] = ZERO;
            for jch in j..ilast {
                let (c, s) = givens(t[(jch, jch + 1)], t[(jch + 1, jch + 1)]);
                apply_left(&mut t, jch, (jch + 1)..=ilast, c, s);
                t[(jch + 1, jch + 1)] = ZERO;
                let c0 = if jch > ilo { jch - 1 } else { ilo };
                apply_left(&mut h, jch, c0..=ilast, c, s);
                if jch > ilo {
                    let (c, s) = givens_right(h[(jch + 1, jch - 1)], h[(jch + 1, jch)]);
                    apply_right(&mut h, ilo..=(jch + 1), jch - 1, c, s);
                    apply_right(&mut t, ilo..=jch, jch - 1, c, s);
                    h[(jch + 1, jch - 1)] = ZERO;
                }
            }
            continue;
        }
        iter += 1;
        total += 1;
        if total > 80 * n.max(10) {
            return Err(Error::NoConvergence("QZ".into()));
        }
        let shift = if iter.is_multiple_of(10) {
            eshift += h[(ilast, ilast - 1)] / t[(ilast - 1, ilast - 1)];
            eshift
        } else {
            pencil_shift(
                [
                    h[(ilast - 1, ilast - 1)],
                    h[(ilast - 1, ilast)],
                    h[(ilast, ilast - 1)],
                    h[(ilast, ilast)],
                ],
                [
                    t[(ilast - 1, ilast - 1)],
                    t[(ilast - 1, ilast)],
                    t[(ilast, ilast)],
                ],
            )
        };
        let x = h[(ilo, ilo)] - shift * t[(ilo, ilo)];
        let y = h[(ilo + 1, ilo)];
        let (c, s) = givens(x, y);
        apply_left(&mut h, ilo, ilo..=ilast, c, s);
        apply_left(&mut t, ilo, ilo..=ilast, c, s);
        for k in ilo..ilast {
            let (c, s) = givens_right(t[(k + 1, k)], t[(k + 1, k + 1)]);
            apply_right(&mut h, ilo..=(k + 2).min(ilast), k, c, s);
            apply_right(&mut t, ilo..=(k + 1), k, c, s);
            t[(k + 1, k)] = ZERO;
            if k + 1 < ilast {
                let (c, s) = givens(h[(k + 1, k)], h[(k + 2, k)]);
                apply_left(&mut h, k + 1, k..=ilast, c, s);
                apply_left(&mut t, k + 1, (k + 1)..=ilast, c, s);
                h[(k + 2, k)] = ZERO;
            }
        }
    }
    Ok(out)
}

fn finish(alpha: Complex64, beta: Complex64, sa: f64, sb: f64, btol: f64) -> GenEig {
    let nrm = alpha.norm().hypot(beta.norm());
    let infinite = nrm == 0.0 || beta.norm() <= btol.max(1e-12 * nrm);
    let a = alpha * sa;
    let b = beta * sb;
    let m = a.norm().hypot(b.norm()).max(f64::MIN_POSITIVE);
    GenEig {
        alpha: a / m,
        beta: b / m,
        infinite,
    }
}

/// Root of the 2x2 pencil closest to the trailing ratio.
fn pencil_shift(h: [Complex64; 4], t: [Complex64; 3]) -> Complex64 {
    let [h11, h12, h21, h22] = h;
    let [t11, t12, t22] = t;
    let qa = t11 * t22;
    let qb = -(h11 * t22 + h22 * t11 - t12 * h21);
    let qc = h11 * h22 - h12 * h21;
    let target = h22 / t22;
    if qa.norm() == 0.0 {
        return target;
    }
    let disc = (qb * qb - qa * qc * 4.0).sqrt();
    let r1 = (-qb + disc) / (qa * 2.0);
    let r2 = (-qb - disc) / (qa * 2.0);
    let pick = if (r1 - target).norm() < (r2 - target).norm() {
        r1
    } else {
        r2
    };
    if pick.re.is_finite() && pick.im.is_finite() {
        pick
    } else {
        target
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{complex_gaussian, RngStream};

    fn residual(a: &CMat, b: &CMat, z: Complex64) -> f64 {
        let n = a.n;
        let mut m = CMat::zeros(n);
        for i in 0..n * n {
            m.a[i] = a.a[i] - z * b.a[i];
        }
        let scale = (a.frobenius() + z.norm() * b.frobenius()).powi(n as i32);
        m.det().norm() / scale
    }

    #[test]
    fn random_pencils() {
        let mut rng = RngStream::new(11).rng();
        for n in [1, 2, 3, 8, 20, 40] {
            let a = CMat::from_rows(n, (0..n * n).map(|_| complex_gaussian(&mut rng)).collect());
            let b = CMat::from_rows(n, (0..n * n).map(|_| complex_gaussian(&mut rng)).collect());
            let e = generalized_eigenvalues(&a, &b).unwrap();
            assert_eq!(e.len(), n);
            for g in e {
                let z = g.value().unwrap();
                assert!(residual(&a, &b, z) < 1e-10, "n={n} z={z}");
            }
        }
    }

    #[test]
    fn singular_b_gives_infinity() {
        let c = |r: f64| Complex64::new(r, 0.0);
        let a = CMat::from_rows(2, vec![c(1.0), c(2.0), c(3.0), c(5.0)]);
        let b = CMat::from_rows(2, vec![c(1.0), c(0.0), c(0.0), c(0.0)]);
        let e = generalized_eigenvalues(&a, &b).unwrap();
        let inf = e.iter().filter(|g| g.infinite).count();
        assert_eq!(inf, 1);
        let fin = e.iter().find_map(|g| g.value()).unwrap();
        assert!(residual(&a, &b, fin) < 1e-12);
        // det(A - zB) = (1-z)5 - 6 => z = -1/5
        assert!((fin - c(-0.2)).norm() < 1e-12);
    }

    #[test]
    fn interior_zero_on_diagonal_of_b() {
        let mut rng = RngStream::new(12).rng();
        let n = 5;
        let a = CMat::from_rows(n, (0..n * n).map(|_| complex_gaussian(&mut rng)).collect());
        let mut b = CMat::from_rows(n, (0..n * n).map(|_| complex_gaussian(&mut rng)).collect());
        for j in 0..n {
            b[(2, j)] = ZERO;
        }
        let e = generalized_eigenvalues(&a, &b).unwrap();
        assert_eq!(e.iter().filter(|g| g.infinite).count(), 1);
        for g in e.iter().filter_map(|g| g.value()) {
            assert!(residual(&a, &b, g) < 1e-10);
        }
    }

    #[test]
    fn identity_b_matches_standard() {
        let mut rng = RngStream::new(13).rng();
        let n = 10;
        let a = CMat::from_rows(n, (0..n * n).map(|_| complex_gaussian(&mut rng)).collect());
        let mut g: Vec<Complex64> = generalized_eigenvalues(&a, &CMat::identity(n))
            .unwrap()
            .iter()
            .map(|g| g.value().unwrap())
            .collect();
        let mut s = crate::linalg::eigenvalues(&a).unwrap();
        let key = |z: &Complex64| (z.re * 1e6).round() as i64;
        g.sort_by_key(key);
        s.sort_by_key(key);
        for (x, y) in g.iter().zip(&s) {
            assert!((x - y).norm() < 1e-9);
        }
    }
}
