//! Wick-power expansion of `log|Q|` for standard complex Gaussian arguments.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{run_blocks, Parallel};
use crate::error::{Error, Result};
use crate::gaf::GafSpec;
use crate::points::DomainTag;
use crate::polygaf::HomPoly;
use crate::rng::{complex_gaussian, RngStream};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// `:a^m conj(a)^n: = sum_r (-1)^r r! C(m,r) C(n,r) a^(m-r) conj(a)^(n-r)`.
pub fn wick_power(a: Complex64, m: u32, n: u32) -> Complex64 {
    let ab = a.conj();
    let mut s = Complex64::new(0.0, 0.0);
    for r in 0..=m.min(n) {
        let c = if r % 2 == 0 { 1.0 } else { -1.0 } * factorial(r) * binom(m, r) * binom(n, r);
        s += c * a.powu(m - r) * ab.powu(n - r);
    }
    s
}

/// Exponent vectors over `k` variables with total degree `<= order`, by degree then lexicographic.
pub fn multi_indices(k: usize, order: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 0..=order {
        let mut cur = vec![0u32; k];
        fill(&mut out, &mut cur, 0, d);
    }
    out
}

fn fill(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill(out, cur, pos + 1, left - e);
    }
    cur[pos] = 0;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WickEntry {
    pub m: Vec<u32>,
    pub n: Vec<u32>,
    pub estimate: Complex64,
    /// `sqrt(Var(re) + Var(im))` of the estimate.
    pub se: f64,
}

impl WickEntry {
    pub fn degrees(&self) -> (u32, u32) {
        (self.m.iter().sum(), self.n.iter().sum())
    }
}

/// Estimated coefficients `C_{m,n}` and the grouped sums `|C~_p|^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WickCoeffs {
    pub q_id: String,
    pub order: u32,
    pub samples: usize,
    pub phases: usize,
    pub entries: Vec<WickEntry>,
    /// `|C~_p|^2` for `p = 0..=order`, bias-corrected.
    pub ctilde_sq: Vec<f64>,
    pub ctilde_sq_se: Vec<f64>,
}

impl WickCoeffs {
    /// Exact coefficients of `Q(a) = a`: `C_00 = -gamma/2`, `C_pp = (-1)^(p+1) / (2p)`.
    pub fn linear(order: u32) -> Self {
        let mut entries = Vec::new();
        let mut ct = Vec::new();
        for p in 0..=order {
            let v = if p == 0 { -EULER_GAMMA / 2.0 } else { (if p % 2 == 1 { 1.0 } else { -1.0 }) / (2.0 * p as f64) };
            entries.push(WickEntry { m: vec![p], n: vec![p], estimate: Complex64::new(v, 0.0), se: 0.0 });
            ct.push(v * v);
        }
        WickCoeffs {
            q_id: "zeta".into(),
            order,
            samples: 0,
            phases: 1,
            entries,
            ctilde_sq: ct,
            ctilde_sq_se: vec![0.0; order as usize + 1],
        }
    }

    pub fn c00(&self) -> &WickEntry {
        &self.entries[0]
    }

    pub fn get(&self, m: &[u32], n: &[u32]) -> Option<&WickEntry> {
        self.entries.iter().find(|e| e.m == m && e.n == n)
    }

    /// `kappa = sum_{p >= 1} |C~_p|^2 / (4 pi p)` over the available orders, with its standard error.
    pub fn kappa(&self) -> (f64, f64) {
        let mut k = 0.0;
        let mut v = 0.0;
        for p in 1..self.ctilde_sq.len() {
            let w = 1.0 / (4.0 * PI * p as f64);
            k += w * self.ctilde_sq[p];
            v += (w * self.ctilde_sq_se[p]).powi(2);
        }
        (k, v.sqrt())
    }

    /// Largest `|C_{m,n}| / se` over entries with unequal total degrees.
    pub fn max_offdiagonal_z(&self) -> f64 {
        self.entries
            .iter()
            .filter(|e| {
                let (a, b) = e.degrees();
                a != b
            })
            .map(|e| if e.se > 0.0 { e.estimate.norm() / e.se } else if e.estimate.norm() == 0.0 { 0.0 } else { f64::INFINITY })
            .fold(0.0, f64::max)
    }
}

#[derive(Clone)]
struct Acc {
    sum: Vec<Complex64>,
    sq_re: Vec<f64>,
    sq_im: Vec<f64>,
}

/// Monte Carlo estimates of `C_{m,n} = E[log|Q(a)| prod_j :conj(a_j)^{m_j} a_j^{n_j}:] / sqrt(m! n!)`
/// for all `|m|, |n| <= order`.
///
/// With `phases > 1` each sample is averaged over `a -> e^{2 pi i j / phases} a`; by homogeneity
/// this zeroes every coefficient whose degrees differ by a non-multiple of `phases`.
pub fn estimate_wick_coeffs(
    q: &HomPoly,
    q_id: &str,
    order: u32,
    stream: &RngStream,
    samples: usize,
    phases: usize,
    par: Parallel,
) -> Result<WickCoeffs> {
    if samples < 2 || phases == 0 {
        return Err(Error::TooFewSamples(format!("{samples} samples, {phases} phases")));
    }
    let k = q.k;
    let idx = multi_indices(k, order);
    let deg: Vec<u32> = idx.iter().map(|m| m.iter().sum()).collect();
    let norm: Vec<f64> = idx.iter().map(|m| m.iter().map(|&e| factorial(e)).product::<f64>()).collect();
    let pairs: Vec<(usize, usize)> = (0..idx.len()).flat_map(|i| (0..idx.len()).map(move |j| (i, j))).collect();
    let mask: Vec<f64> = pairs
        .iter()
        .map(|&(i, j)| {
            let d = deg[j] as i64 - deg[i] as i64;
            let s: Complex64 = (0..phases).map(|t| Complex64::from_polar(1.0, 2.0 * PI * (t as f64) * d as f64 / phases as f64)).sum();
            (s / phases as f64).re.round()
        })
        .collect();
    let o = order as usize + 1;
    let np = pairs.len();
    let blocks = run_blocks(
        stream,
        samples,
        Parallel { block: 4096, ..par },
        || Acc { sum: vec![Complex64::new(0.0, 0.0); np], sq_re: vec![0.0; np], sq_im: vec![0.0; np] },
        |acc, _, s| {
            let mut rng = s.rng();
            let a: Vec<Complex64> = (0..k).map(|_| complex_gaussian(&mut rng)).collect();
            let l = q.eval(&a).norm().ln();
            // table[j][mm * o + nn] = :conj(a_j)^mm a_j^nn:
            let table: Vec<Vec<Complex64>> = a
                .iter()
                .map(|&x| {
                    let mut t = Vec::with_capacity(o * o);
                    for mm in 0..o {
                        for nn in 0..o {
                            t.push(wick_power(x, nn as u32, mm as u32));
                        }
                    }
                    t
                })
                .collect();
            for (p, &(i, j)) in pairs.iter().enumerate() {
                if mask[p] == 0.0 {
                    continue;
                }
                let mut w = Complex64::new(l, 0.0);
                for v in 0..k {
                    w *= table[v][idx[i][v] as usize * o + idx[j][v] as usize];
                }
                acc.sum[p] += w;
                acc.sq_re[p] += w.re * w.re;
                acc.sq_im[p] += w.im * w.im;
            }
            Ok(())
        },
    )?;
    let mut total = Acc { sum: vec![Complex64::new(0.0, 0.0); np], sq_re: vec![0.0; np], sq_im: vec![0.0; np] };
    for b in &blocks {
        for p in 0..np {
            total.sum[p] += b.sum[p];
            total.sq_re[p] += b.sq_re[p];
            total.sq_im[p] += b.sq_im[p];
        }
    }
    let m = samples as f64;
    let mut entries = Vec::with_capacity(np);
    let mut ct = vec![0.0; o];
    let mut ct_var = vec![0.0; o];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        let scale = 1.0 / (norm[i] * norm[j]).sqrt();
        let mean = total.sum[p] / m;
        let var_re = (total.sq_re[p] / m - mean.re * mean.re).max(0.0) * m / (m - 1.0);
        let var_im = (total.sq_im[p] / m - mean.im * mean.im).max(0.0) * m / (m - 1.0);
        let est = mean * scale;
        let se = ((var_re + var_im) / m).sqrt() * scale;
        if deg[i] == deg[j] {
            let d = deg[i] as usize;
            ct[d] += est.norm_sqr() - se * se;
            ct_var[d] += (2.0 * est.norm() * se).powi(2) + se.powi(4);
        }
        entries.push(WickEntry { m: idx[i].clone(), n: idx[j].clone(), estimate: est, se });
    }
    Ok(WickCoeffs {
        q_id: q_id.to_string(),
        order,
        samples,
        phases,
        entries,
        ctilde_sq: ct,
        ctilde_sq_se: ct_var.iter().map(|v| v.sqrt()).collect(),
    })
}

/// `|K^(z, w)|^2 = |K(z, w)|^2 / (K(z, z) K(w, w))`.
pub fn normalized_kernel_sq(spec: &GafSpec, z: Complex64, w: Complex64) -> f64 {
    let l = spec.l;
    match spec.domain {
        DomainTag::Plane => (-l * (z - w).norm_sqr()).exp(),
        DomainTag::Sphere => ((1.0 + z * w.conj()).norm_sqr() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr()))).powf(l),
        DomainTag::Disk => ((1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr()) / (1.0 - z * w.conj()).norm_sqr()).powf(l),
    }
}

/// Value and standard error of `rho2(z, w) - rho1(z) rho1(w)` from the Wick expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoPoint {
    pub value: f64,
    pub se: f64,
}

/// `(1 / 4 pi^2) Lap_z Lap_w sum_p |C~_p|^2 |K^(z, w)|^{2p}` by finite differences.
///
/// Step `h = 1e-2` with one Richardson extrapolation. Fails when the last available order still
/// contributes more than `1e-8` at this pair.
pub fn two_point_from_formula(coeffs: &WickCoeffs, spec: &GafSpec, z: Complex64, w: Complex64) -> Result<TwoPoint> {
    let h = 1e-2;
    if (z - w).norm() <= 10.0 * h {
        return Err(Error::InvalidParameter("points closer than ten finite-difference steps".into()));
    }
    let k0 = normalized_kernel_sq(spec, z, w);
    let pmax = coeffs.ctilde_sq.len() - 1;
    if pmax == 0 || coeffs.ctilde_sq[pmax].abs().max(coeffs.ctilde_sq_se[pmax]) * k0.powi(pmax as i32) >= 1e-8 {
        return Err(Error::NoConvergence(format!("Wick series at order {pmax} is not converged at this pair")));
    }
    let mut value = 0.0;
    let mut var = 0.0;
    for p in 1..=pmax {
        let f = |a: Complex64, b: Complex64| normalized_kernel_sq(spec, a, b).powi(p as i32);
        let d = (4.0 * lap_lap(&f, z, w, h / 2.0) - lap_lap(&f, z, w, h)) / 3.0 / (4.0 * PI * PI);
        value += coeffs.ctilde_sq[p] * d;
        var += (coeffs.ctilde_sq_se[p] * d).powi(2);
    }
    Ok(TwoPoint { value, se: var.sqrt() })
}

fn lap<F: Fn(Complex64) -> f64>(f: F, z: Complex64, h: f64) -> f64 {
    let e = [Complex64::new(h, 0.0), Complex64::new(0.0, h)];
    (f(z + e[0]) + f(z - e[0]) + f(z + e[1]) + f(z - e[1]) - 4.0 * f(z)) / (h * h)
}

fn lap_lap<F: Fn(Complex64, Complex64) -> f64>(f: &F, z: Complex64, w: Complex64, h: f64) -> f64 {
    lap(|a| lap(|b| f(a, b), w, h), z, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::quadrature::composite;

    #[test]
    fn wick_powers_are_orthogonal_polynomials() {
        let a = Complex64::new(0.3, -1.2);
        assert_eq!(wick_power(a, 0, 0), Complex64::new(1.0, 0.0));
        assert!((wick_power(a, 1, 1) - (a.norm_sqr() - 1.0)).norm() < 1e-15);
        let want = a * a * a.conj() - 2.0 * a;
        assert!((wick_power(a, 2, 1) - want).norm() < 1e-14);
    }

    #[test]
    fn multi_index_counts() {
        assert_eq!(multi_indices(1, 3).len(), 4);
        assert_eq!(multi_indices(4, 2).len(), 15);
        assert_eq!(multi_indices(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
    }

    // E[log|a| :conj(a)^p a^p:] with t = |a|^2 ~ Exp(1), by quadrature in x = log t
    fn diagonal_by_quadrature(p: u32) -> f64 {
        composite(-40.0, 5.0, 200, 16)
            .into_iter()
            .map(|(x, w)| {
                let t = x.exp();
                let poly: f64 = (0..=p)
                    .map(|r| (if r % 2 == 0 { 1.0 } else { -1.0 }) * factorial(r) * binom(p, r).powi(2) * t.powi((p - r) as i32))
                    .sum();
                w * 0.5 * x * poly * (-t).exp() * t
            })
            .sum::<f64>()
            / factorial(p)
    }

    #[test]
    fn linear_coefficients_match_quadrature() {
        let exact = WickCoeffs::linear(6);
        for p in 0..=6u32 {
            let q = diagonal_by_quadrature(p);
            assert!((q - exact.entries[p as usize].estimate.re).abs() < 1e-9, "p={p}: {q}");
        }
        assert!((exact.c00().estimate.re + 0.288608).abs() < 1e-6);
        let kappa_inf = 1.202_056_903_159_594 / (16.0 * PI);
        assert!((WickCoeffs::linear(200).kappa().0 - kappa_inf).abs() < 1e-6);
    }

    #[test]
    fn monte_carlo_linear() {
        let c = estimate_wick_coeffs(&HomPoly::identity(), "zeta", 3, &RngStream::new(4), 200_000, 1, Parallel::default()).unwrap();
        let exact = WickCoeffs::linear(3);
        for p in 0..=3u32 {
            let e = c.get(&[p], &[p]).unwrap();
            let want = exact.entries[p as usize].estimate;
            assert!((e.estimate - want).norm() < 4.0 * e.se, "p={p} {e:?}");
        }
        assert!(c.max_offdiagonal_z() < 4.0);
        // conjugate symmetry C_{m,n} = conj(C_{n,m})
        let a = c.get(&[1], &[2]).unwrap();
        let b = c.get(&[2], &[1]).unwrap();
        assert!((a.estimate - b.estimate.conj()).norm() < 1e-12);
    }

    #[test]
    fn phases_enforce_selection_rule() {
        let c = estimate_wick_coeffs(&HomPoly::product(2), "product2", 2, &RngStream::new(4), 2000, 8, Parallel::default()).unwrap();
        assert_eq!(c.max_offdiagonal_z(), 0.0);
    }

    #[test]
    fn two_point_linear_sphere_is_minus_rho1_squared() {
        // one uniform point on the sphere: rho2 = 0
        let spec = GafSpec::sphere(1);
        let c = WickCoeffs::linear(60);
        for (z, w) in [(0.0, 2.0), (0.5, -1.5), (1.0, 3.0)] {
            let (z, w) = (Complex64::new(z, 0.1), Complex64::new(w, -0.2));
            let got = two_point_from_formula(&c, &spec, z, w).unwrap().value;
            let r1 = |u: Complex64| 1.0 / (PI * (1.0 + u.norm_sqr()).powi(2));
            assert!((got + r1(z) * r1(w)).abs() < 2e-3 * r1(z) * r1(w), "{got} {}", -r1(z) * r1(w));
        }
    }

    #[test]
    fn two_point_linear_disk_is_bergman() {
        let spec = GafSpec::disk(1.0);
        let c = WickCoeffs::linear(60);
        let z = Complex64::new(0.1, 0.0);
        let w = Complex64::new(-0.3, 0.4);
        let got = two_point_from_formula(&c, &spec, z, w).unwrap().value;
        let k = 1.0 / (PI * (1.0 - z * w.conj()).powi(2));
        assert!((got + k.norm_sqr()).abs() < 1e-3 * k.norm_sqr(), "{got} {}", k.norm_sqr());
    }

    #[test]
    fn two_point_far_apart_vanishes() {
        let v = two_point_from_formula(&WickCoeffs::linear(10), &GafSpec::plane(1.0), Complex64::new(0.0, 0.0), Complex64::new(8.0, 0.0)).unwrap();
        assert!(v.value.abs() < 1e-20);
        assert!(two_point_from_formula(&WickCoeffs::linear(2), &GafSpec::plane(1.0), Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)).is_err());
    }
}
