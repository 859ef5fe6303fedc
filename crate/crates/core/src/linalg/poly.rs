//! Roots of polynomials given by coefficients in increasing degree.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::eig::{balance, hessenberg_eigenvalues};
use super::CMat;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RootMethod {
    /// Companion matrix eigenvalues.
    Companion,
    /// Aberth-Ehrlich simultaneous iteration.
    #[default]
    Aberth,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Value and derivative at `z`.
#[inline]
pub fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn trim(c: &[Complex64]) -> Result<&[Complex64]> {
    let deg = c
        .iter()
        .rposition(|z| z.norm_sqr() > 0.0)
        .ok_or(Error::ZeroPolynomial)?;
    Ok(&c[..=deg])
}

/// All roots, by the chosen method, each polished by Newton steps.
pub fn poly_roots(c: &[Complex64], method: RootMethod) -> Result<Vec<Complex64>> {
    match method {
        RootMethod::Companion => companion_roots(c),
        RootMethod::Aberth => aberth_roots(c),
    }
}

/// Roots as eigenvalues of the balanced companion matrix, then Newton-polished.
pub fn companion_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let c = trim(c)?;
    let zeros_at_origin = c.iter().position(|z| z.norm_sqr() > 0.0).unwrap();
    let q = &c[zeros_at_origin..];
    let n = q.len() - 1;
    let mut roots = vec![ZERO; zeros_at_origin];
    if n == 0 {
        return Ok(roots);
    }
    let lead = q[n];
    let mut m = CMat::zeros(n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -q[i] / lead;
    }
    balance(&mut m);
    let mut ev = hessenberg_eigenvalues(&mut m)?;
    for z in ev.iter_mut() {
        *z = newton_polish(q, *z, 20);
    }
    roots.extend(ev);
    Ok(roots)
}

/// At most `steps` Newton steps, stopping once the residual stops decreasing.
pub fn newton_polish(c: &[Complex64], mut z: Complex64, steps: usize) -> Complex64 {
    let (mut p, mut dp) = horner(c, z);
    for _ in 0..steps {
        if p.norm_sqr() == 0.0 || dp.norm_sqr() == 0.0 {
            break;
        }
        let cand = z - p / dp;
        let (p2, dp2) = horner(c, cand);
        if !(p2.norm_sqr() < p.norm_sqr()) {
            break;
        }
        z = cand;
        p = p2;
        dp = dp2;
    }
    z
}

/// Newton correction `p/p'` and whether `p(z)` is below its rounding bound.
#[inline]
fn newton_ratio(c: &[Complex64], abs: &[f64], z: Complex64) -> (Complex64, bool) {
    let n = c.len() - 1;
    let r2 = z.norm_sqr();
    let tol = 4.0 * f64::EPSILON * (n as f64 + 1.0);
    if r2 <= 1.0 {
        let r = r2.sqrt();
        let mut p = ZERO;
        let mut dp = ZERO;
        let mut e = 0.0;
        for (&a, &m) in c.iter().zip(abs).rev() {
            dp = dp * z + p;
            p = p * z + a;
            e = e * r + m;
        }
        (p / dp, p.norm_sqr() <= (tol * e).powi(2))
    } else {
        let w = 1.0 / z;
        let rw = w.norm_sqr().sqrt();
        let mut q = ZERO;
        let mut dq = ZERO;
        let mut e = 0.0;
        for (&a, &m) in c.iter().zip(abs) {
            dq = dq * w + q;
            q = q * w + a;
            e = e * rw + m;
        }
        let denom = q * n as f64 - w * dq;
        (z * q / denom, q.norm_sqr() <= (tol * e).powi(2))
    }
}

/// Starting points on circles given by the upper convex hull of `log|c_k|`.
fn initial_guesses(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let pts: Vec<(usize, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .map(|(k, a)| (k, a.norm().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (k1, y1) = hull[hull.len() - 2];
            let (k2, y2) = hull[hull.len() - 1];
            let cross = (k2 as f64 - k1 as f64) * (p.1 - y1) - (y2 - y1) * (p.0 as f64 - k1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    let sigma = 0.7;
    for w in hull.windows(2) {
        let (k1, y1) = w[0];
        let (k2, y2) = w[1];
        let m = k2 - k1;
        let u = ((y1 - y2) / m as f64).exp();
        for j in 0..m {
            let theta = 2.0 * PI * j as f64 / m as f64 + 2.0 * PI * k1 as f64 / n as f64 + sigma;
            out.push(Complex64::from_polar(u, theta));
        }
    }
    out
}

/// Roots by Aberth-Ehrlich iteration, then Newton-polished.
pub fn aberth_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let c = trim(c)?;
    let zeros_at_origin = c.iter().position(|z| z.norm_sqr() > 0.0).unwrap();
    let q = &c[zeros_at_origin..];
    let n = q.len() - 1;
    let mut roots = vec![ZERO; zeros_at_origin];
    if n == 0 {
        return Ok(roots);
    }
    if n == 1 {
        roots.push(-q[0] / q[1]);
        return Ok(roots);
    }
    let abs: Vec<f64> = q.iter().map(|a| a.norm()).collect();
    let mut z = initial_guesses(q);
    let mut done = vec![false; n];
    let mut remaining = n;
    let mut iter = 0;
    while remaining > 0 {
        iter += 1;
        if iter > 500 {
            return Err(Error::NoConvergence("Aberth".into()));
        }
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (ratio, small) = newton_ratio(q, &abs, z[i]);
            if small || !(ratio.re.is_finite() && ratio.im.is_finite()) {
                done[i] = true;
                remaining -= 1;
                continue;
            }
            let zi = z[i];
            let mut s = ZERO;
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    let d = zi - zj;
                    s += d.conj() / d.norm_sqr();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if !(w.re.is_finite() && w.im.is_finite()) {
                done[i] = true;
                remaining -= 1;
                continue;
            }
            z[i] = zi - w;
            if w.norm_sqr() <= 4.0 * f64::EPSILON * f64::EPSILON * z[i].norm_sqr() {
                done[i] = true;
                remaining -= 1;
            }
        }
    }
    for r in z.iter_mut() {
        if r.norm_sqr() <= 4.0 {
            *r = newton_polish(q, *r, 20);
        }
    }
    roots.extend(z);
    Ok(roots)
}

/// Merge roots closer than `tol`; returns `(mean location, multiplicity)`.
pub fn cluster_roots(roots: &[Complex64], tol: f64) -> Vec<(Complex64, u32)> {
    let mut used = vec![false; roots.len()];
    let mut out = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut members = vec![roots[i]];
        let mut k = 0;
        while k < members.len() {
            let c = members[k];
            for j in 0..roots.len() {
                if !used[j] && (roots[j] - c).norm() <= tol {
                    used[j] = true;
                    members.push(roots[j]);
                }
            }
            k += 1;
        }
        let m = members.len();
        let mean = members.iter().sum::<Complex64>() / m as f64;
        out.push((mean, m as u32));
    }
    out
}

/// Number of zeros inside `|z| < r` by the argument principle, with adaptive refinement.
pub fn winding_count(c: &[Complex64], r: f64) -> Result<i64> {
    let c = trim(c)?;
    let table = CircleTable::new((2 * (c.len() - 1)).max(32));
    table.winding(c, r)
}

/// Equispaced points on the unit circle, reused across winding counts.
#[derive(Debug, Clone)]
pub struct CircleTable {
    points: Vec<Complex64>,
}

#[inline]
fn quadrant(z: Complex64) -> i32 {
    match (z.re >= 0.0, z.im >= 0.0) {
        (true, true) => 0,
        (false, true) => 1,
        (false, false) => 2,
        (true, false) => 3,
    }
}

impl CircleTable {
    pub fn new(k: usize) -> Self {
        let k = k.max(8);
        CircleTable {
            points: (0..k)
                .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / k as f64))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Winding number of `p` around the circle `|z| = r`.
    ///
    /// Counts quarter turns between consecutive samples. A step is bisected when it skips a
    /// quadrant or when `|p'/p|` times its arc length exceeds one radian.
    pub fn winding(&self, c: &[Complex64], r: f64) -> Result<i64> {
        let c = trim(c)?;
        let deg = c.len() - 1;
        let mut scaled = Vec::with_capacity(c.len());
        let mut p = 1.0;
        let mut scale = 0.0;
        for a in c {
            let v = a * p;
            scale += v.norm_sqr().sqrt();
            scaled.push(v);
            p *= r;
        }
        let tiny = 64.0 * f64::EPSILON * scale * (deg as f64 + 1.0);
        let ctx = Ctx { c: &scaled, tiny2: tiny * tiny, radius: r };
        let k = self.points.len();
        let step = 2.0 * PI / k as f64;
        let s0 = ctx.eval(self.points[0])?;
        let mut prev = s0;
        let mut quarters: i64 = 0;
        for j in 1..=k {
            let next = if j == k { s0 } else { ctx.eval(self.points[j])? };
            quarters += ctx.turns(step * (j - 1) as f64, step, prev, next, 0)?;
            prev = next;
        }
        if quarters % 4 != 0 {
            return Err(Error::NoConvergence(format!("winding {quarters} quarter turns")));
        }
        Ok(quarters / 4)
    }
}

struct Ctx<'a> {
    c: &'a [Complex64],
    tiny2: f64,
    radius: f64,
}

#[derive(Clone, Copy)]
struct Sample {
    quadrant: i32,
    /// `|p'/p|` on the unit circle.
    rate: f64,
}

impl Ctx<'_> {
    #[inline]
    fn eval(&self, u: Complex64) -> Result<Sample> {
        let (v, dv) = horner(self.c, u);
        let m2 = v.norm_sqr();
        if m2 <= self.tiny2 {
            return Err(Error::BoundaryProximity { radius: self.radius, margin: 0.0 });
        }
        Ok(Sample { quadrant: quadrant(v), rate: (dv.norm_sqr() / m2).sqrt() })
    }

    fn turns(&self, a: f64, h: f64, fa: Sample, fb: Sample, depth: u32) -> Result<i64> {
        let d = (fb.quadrant - fa.quadrant).rem_euclid(4);
        if d != 2 && h * fa.rate.max(fb.rate) <= 1.0 {
            return Ok(match d {
                0 => 0,
                1 => 1,
                _ => -1,
            });
        }
        if depth >= 48 {
            return Err(Error::NoConvergence("winding refinement".into()));
        }
        let m = a + 0.5 * h;
        let fm = self.eval(Complex64::from_polar(1.0, m))?;
        Ok(self.turns(a, 0.5 * h, fa, fm, depth + 1)? + self.turns(m, 0.5 * h, fm, fb, depth + 1)?)
    }
}
