//! Determinantal point processes: invariant kernels, projection sampling and radial laws.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Beta, Distribution, Gamma};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma_lr, ln_gamma};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, CMat};
use crate::points::{DomainTag, Point, PointSet};
use crate::rng::{complex_gaussian, open_uniform, RngStream};

/// Invariant determinantal process with parameter `alpha` (the point count on the sphere).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DppKernelSpec {
    pub domain: DomainTag,
    pub alpha: f64,
}

impl DppKernelSpec {
    pub fn new(domain: DomainTag, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} must be positive"
            )));
        }
        if domain == DomainTag::Sphere && (alpha.fract() != 0.0 || alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "sphere needs integer alpha >= 1, got {alpha}"
            )));
        }
        Ok(DppKernelSpec { domain, alpha })
    }
}

/// Kernel with respect to the reference measure.
pub fn kernel_eval(spec: &DppKernelSpec, z: Complex64, w: Complex64) -> Complex64 {
    let a = spec.alpha;
    let zw = z * w.conj();
    let one = Complex64::new(1.0, 0.0);
    match spec.domain {
        DomainTag::Plane => (zw * a).exp() * (a / PI),
        DomainTag::Sphere => (one + zw).powf(a - 1.0) * (a / PI),
        DomainTag::Disk => (one - zw).powf(-a - 1.0) * (a / PI),
    }
}

/// Density of the reference measure with respect to Lebesgue measure.
pub fn reference_density(spec: &DppKernelSpec, z: Complex64) -> f64 {
    let t = z.norm_sqr();
    let a = spec.alpha;
    match spec.domain {
        DomainTag::Plane => (-a * t).exp(),
        DomainTag::Sphere => (1.0 + t).powf(-(a + 1.0)),
        DomainTag::Disk => (1.0 - t).powf(a - 1.0),
    }
}

/// First intensity with respect to Lebesgue measure.
pub fn dpp_intensity(spec: &DppKernelSpec, z: Complex64) -> Result<f64> {
    if !spec.domain.contains(z) {
        return Err(Error::OutsideDomain(format!("{z}")));
    }
    Ok(kernel_eval(spec, z, z).re * reference_density(spec, z))
}

/// Kernel with respect to Lebesgue measure, `sqrt(mu(z) mu(w)) K(z, w)`.
pub fn lebesgue_kernel(spec: &DppKernelSpec, z: Complex64, w: Complex64) -> Complex64 {
    kernel_eval(spec, z, w) * (reference_density(spec, z) * reference_density(spec, w)).sqrt()
}

/// Finite rotation-invariant projection basis `phi_k = c_k z^k`, `k < size`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialBasis {
    pub spec: DppKernelSpec,
    pub size: usize,
    log_c2: Vec<f64>,
}

impl RadialBasis {
    pub fn new(spec: DppKernelSpec, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidParameter("empty basis".into()));
        }
        let a = spec.alpha;
        if spec.domain == DomainTag::Sphere && size > a as usize {
            return Err(Error::InvalidParameter(format!(
                "sphere basis has at most {a} functions"
            )));
        }
        let log_c2 = (0..size)
            .map(|k| {
                let kf = k as f64;
                match spec.domain {
                    DomainTag::Plane => (kf + 1.0) * a.ln() - PI.ln() - ln_gamma(kf + 1.0),
                    DomainTag::Sphere => {
                        a.ln() - PI.ln() + ln_gamma(a) - ln_gamma(kf + 1.0) - ln_gamma(a - kf)
                    }
                    DomainTag::Disk => {
                        ln_gamma(kf + a + 1.0) - PI.ln() - ln_gamma(kf + 1.0) - ln_gamma(a)
                    }
                }
            })
            .collect();
        Ok(RadialBasis { spec, size, log_c2 })
    }

    /// Full sphere basis with `n` functions.
    pub fn sphere(n: usize) -> Result<Self> {
        Self::new(DppKernelSpec::new(DomainTag::Sphere, n as f64)?, n)
    }

    /// Smallest basis whose omitted mass inside `|z| < window` is below `tol`.
    pub fn for_window(spec: DppKernelSpec, window: f64, tol: f64, cap: usize) -> Result<Self> {
        if spec.domain == DomainTag::Sphere {
            return Self::new(spec, spec.alpha as usize);
        }
        let t = window * window;
        let mut k = 0usize;
        let mut tail = f64::INFINITY;
        // mass of |phi_k|^2 mu in the window decreases in k; sum the tail from k onward
        while k <= cap {
            let mut s = 0.0;
            for j in k..k + 10_000 {
                let p = component_mass(&spec, j, t);
                s += p;
                if p < 1e-3 * tol * 1e-3 && j > k + 10 {
                    break;
                }
            }
            tail = s;
            if tail < tol {
                break;
            }
            k += 1;
        }
        if tail >= tol {
            return Err(Error::TruncationCap { needed: k, cap });
        }
        Self::new(spec, k.max(1))
    }

    /// `phi_k(z)` for all `k`, scaled by the square root of the reference density.
    pub fn eval_weighted(&self, z: Complex64, out: &mut [Complex64]) {
        let lw = 0.5 * reference_density(&self.spec, z).ln();
        let r = z.norm();
        let th = z.arg();
        let lr = r.ln();
        for (k, o) in out.iter_mut().enumerate().take(self.size) {
            let lm = 0.5 * self.log_c2[k] + lw + if k == 0 { 0.0 } else { k as f64 * lr };
            *o = Complex64::from_polar(lm.exp(), k as f64 * th);
        }
    }

    /// Draw from the probability density `|phi_k|^2` times the reference density.
    pub fn sample_component<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> Complex64 {
        let a = self.spec.alpha;
        let kf = k as f64;
        let t = match self.spec.domain {
            DomainTag::Plane => Gamma::new(kf + 1.0, 1.0 / a).unwrap().sample(rng),
            DomainTag::Sphere => {
                let b: f64 = Beta::new(kf + 1.0, a - kf).unwrap().sample(rng);
                b / (1.0 - b)
            }
            DomainTag::Disk => Beta::new(kf + 1.0, a).unwrap().sample(rng),
        };
        Complex64::from_polar(t.sqrt(), 2.0 * PI * rng.random::<f64>())
    }
}

/// Probability that the `k`-th radial component lands in `|z|^2 < t`.
fn component_mass(spec: &DppKernelSpec, k: usize, t: f64) -> f64 {
    let a = spec.alpha;
    let kf = k as f64;
    match spec.domain {
        DomainTag::Plane => gamma_lr(kf + 1.0, a * t),
        DomainTag::Sphere => statrs::function::beta::beta_reg(kf + 1.0, a - kf, t / (1.0 + t)),
        DomainTag::Disk => statrs::function::beta::beta_reg(kf + 1.0, a, t.min(1.0)),
    }
}

/// Exact sampler for the projection process spanned by a radial basis.
pub fn sample_projection_dpp(basis: &RadialBasis, stream: &RngStream) -> Result<PointSet> {
    sample_projection_dpp_with(basis, &mut stream.rng())
}

pub fn sample_projection_dpp_with<R: Rng + ?Sized>(
    basis: &RadialBasis,
    rng: &mut R,
) -> Result<PointSet> {
    let n = basis.size;
    let zero = Complex64::new(0.0, 0.0);
    let mut sub: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            let mut e = vec![zero; n];
            e[i] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();
    let mut v = vec![zero; n];
    let mut pts = Vec::with_capacity(n);
    let mut proposals = 0usize;
    let mut accepted = 0usize;
    while !sub.is_empty() {
        let (x, proj) = loop {
            proposals += 1;
            if proposals > 100_000 && (accepted as f64) < 1e-3 * proposals as f64 {
                return Err(Error::RejectionRate(format!("{accepted}/{proposals}")));
            }
            let k = rng.random_range(0..n);
            let x = basis.sample_component(k, rng);
            basis.eval_weighted(x, &mut v);
            for c in v.iter_mut() {
                *c = c.conj();
            }
            let total: f64 = v.iter().map(|c| c.norm_sqr()).sum();
            let coords: Vec<Complex64> = sub
                .iter()
                .map(|u| u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum())
                .collect();
            let inside: f64 = coords.iter().map(|c| c.norm_sqr()).sum();
            if rng.random::<f64>() * total < inside {
                break (x, coords);
            }
        };
        accepted += 1;
        pts.push(x);
        // unit vector of the projection, then orthonormal basis of its complement in the subspace
        let nrm: f64 = proj.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let e: Vec<Complex64> = {
            let mut e = vec![zero; n];
            for (u, c) in sub.iter().zip(&proj) {
                for (ei, ui) in e.iter_mut().zip(u) {
                    *ei += ui * (c / nrm);
                }
            }
            e
        };
        let mut next: Vec<Vec<Complex64>> = Vec::with_capacity(sub.len() - 1);
        let mut cands: Vec<(f64, Vec<Complex64>)> = sub
            .into_iter()
            .map(|mut u| {
                let d: Complex64 = e.iter().zip(&u).map(|(a, b)| a.conj() * b).sum();
                for (ui, ei) in u.iter_mut().zip(&e) {
                    *ui -= ei * d;
                }
                (1.0 - d.norm_sqr(), u)
            })
            .collect();
        // drop the direction most aligned with e before orthonormalizing
        let drop = cands
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .0.partial_cmp(&b.1 .0).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        cands.remove(drop);
        for (_, mut u) in cands {
            for _ in 0..2 {
                for w in next.iter().chain(std::iter::once(&e)) {
                    let d: Complex64 = w.iter().zip(&u).map(|(a, b)| a.conj() * b).sum();
                    for (ui, wi) in u.iter_mut().zip(w) {
                        *ui -= wi * d;
                    }
                }
            }
            let l: f64 = u.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if l > 1e-10 {
                for ui in u.iter_mut() {
                    *ui /= l;
                }
                next.push(u);
            }
        }
        if next.len() + pts.len() != n {
            return Err(Error::NoConvergence("projection sampler lost rank".into()));
        }
        sub = next;
    }
    let mut ps = PointSet::new(basis.spec.domain, None);
    for z in pts {
        ps.push(z, 1)?;
    }
    ps.meta.insert("basis_size".into(), n.to_string());
    Ok(ps)
}

/// Exact `n`-point invariant process on the sphere.
pub fn sample_det_sphere(n: usize, stream: &RngStream) -> Result<PointSet> {
    sample_projection_dpp(&RadialBasis::sphere(n)?, stream)
}

/// Plane or disk process restricted to `|z| < window`, using a truncated basis.
pub fn sample_dpp_window(
    spec: &DppKernelSpec,
    window: f64,
    stream: &RngStream,
) -> Result<PointSet> {
    let basis = RadialBasis::for_window(*spec, window, 1e-6, 4096)?;
    let full = sample_projection_dpp(&basis, stream)?;
    let mut ps = PointSet::new(spec.domain, Some(window));
    ps.points = full
        .points
        .into_iter()
        .filter(|p| p.z.norm() < window)
        .collect();
    ps.meta = full.meta;
    Ok(ps)
}

/// Eigenvalues of an `n x n` matrix of i.i.d. standard complex Gaussians.
pub fn sample_ginibre(n: usize, stream: &RngStream) -> Result<PointSet> {
    let mut rng = stream.rng();
    let m = CMat::from_rows(n, (0..n * n).map(|_| complex_gaussian(&mut rng)).collect());
    let ev = eigenvalues(&m)?;
    let mut ps = PointSet::new(DomainTag::Plane, None);
    ps.points = ev
        .into_iter()
        .map(|z| Point { z, multiplicity: 1 })
        .collect();
    Ok(ps)
}

/// Moduli of the hyperbolic `alpha = 1` process inside `|z| < r_max`: `U_n^{1/(2n)}`.
pub fn sample_radii_hyperbolic1(
    stream: &RngStream,
    r_max: f64,
    count_cap: usize,
) -> Result<Vec<f64>> {
    if !(r_max > 0.0 && r_max < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "r_max = {r_max} must lie in (0, 1)"
        )));
    }
    let q = r_max * r_max;
    // omitted indices have total inclusion probability below 1e-12
    let needed = ((1e-12 * (1.0 - q)).ln() / q.ln()).ceil().max(1.0) as usize;
    if needed > count_cap {
        return Err(Error::TruncationCap {
            needed,
            cap: count_cap,
        });
    }
    let mut rng = stream.rng();
    let mut out = Vec::new();
    for n in 1..=needed {
        let u = open_uniform(&mut rng);
        let rho = u.powf(1.0 / (2.0 * n as f64));
        if rho < r_max {
            out.push(rho);
        }
    }
    Ok(out)
}

/// Independent inclusion probabilities describing counts in centred disks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum RadialLaw {
    /// `|z_k|^2 ~ Gamma(k, 1)`, `k = 1..n`.
    Ginibre { n: usize },
    /// `|z_n| = U^{1/(2n)}`, `n >= 1`.
    HyperbolicOne,
    /// Fixed probabilities, independent of the radius.
    Fixed { p: Vec<f64> },
}

impl RadialLaw {
    pub fn for_kernel(spec: &DppKernelSpec) -> Result<Self> {
        match spec.domain {
            DomainTag::Disk if spec.alpha == 1.0 => Ok(RadialLaw::HyperbolicOne),
            _ => Err(Error::Unsupported(format!("no radial law for {spec:?}"))),
        }
    }

    /// Bernoulli parameters for the count in `|z| < r`.
    pub fn probabilities(&self, r: f64) -> Result<Vec<f64>> {
        match self {
            RadialLaw::Ginibre { n } => Ok((1..=*n).map(|k| gamma_lr(k as f64, r * r)).collect()),
            RadialLaw::HyperbolicOne => {
                if !(0.0..1.0).contains(&r) {
                    return Err(Error::InvalidParameter(format!(
                        "radius {r} outside the disk"
                    )));
                }
                let q = r * r;
                let mut out = Vec::new();
                let mut p = q;
                while p > 1e-17 {
                    out.push(p);
                    p *= q;
                }
                Ok(out)
            }
            RadialLaw::Fixed { p } => {
                if p.iter().any(|x| !(0.0..=1.0).contains(x)) {
                    return Err(Error::InvalidParameter(
                        "probabilities outside [0, 1]".into(),
                    ));
                }
                Ok(p.clone())
            }
        }
    }
}

/// Poisson-binomial distribution of a sum of independent Bernoulli variables.
pub fn poisson_binomial(p: &[f64]) -> Vec<f64> {
    let mut d = vec![1.0];
    for &q in p {
        let mut next = vec![0.0; d.len() + 1];
        for (k, &x) in d.iter().enumerate() {
            next[k] += x * (1.0 - q);
            next[k + 1] += x * q;
        }
        d = next;
    }
    d
}

/// Exact count distribution in `|z| < r`, `P[count = k]` for each `k`.
pub fn count_distribution_exact(law: &RadialLaw, r: f64) -> Result<Vec<f64>> {
    Ok(poisson_binomial(&law.probabilities(r)?))
}
