//! Gaussian analytic functions on the plane, sphere and disk.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{cluster_roots, horner, poly_roots, winding_count, RootMethod};
use crate::points::{DomainTag, ExtPoint, PointSet};
use crate::rng::{complex_gaussian, RngStream};

/// A canonical GAF: domain and intensity parameter `L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GafSpec {
    pub domain: DomainTag,
    #[serde(rename = "L")]
    pub l: f64,
}

impl GafSpec {
    pub fn new(domain: DomainTag, l: f64) -> Result<Self> {
        let s = GafSpec { domain, l };
        s.validate()?;
        Ok(s)
    }

    pub fn plane(l: f64) -> Self {
        GafSpec {
            domain: DomainTag::Plane,
            l,
        }
    }
    pub fn sphere(l: u32) -> Self {
        GafSpec {
            domain: DomainTag::Sphere,
            l: l as f64,
        }
    }
    pub fn disk(l: f64) -> Self {
        GafSpec {
            domain: DomainTag::Disk,
            l,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.l > 0.0) || !self.l.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "L = {} must be positive",
                self.l
            )));
        }
        if self.domain == DomainTag::Sphere && self.l.fract() != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "sphere needs integer L, got {}",
                self.l
            )));
        }
        Ok(())
    }

    /// Largest radius on which the series converges.
    pub fn max_radius(&self) -> f64 {
        match self.domain {
            DomainTag::Disk => 1.0,
            _ => f64::INFINITY,
        }
    }

    /// Squared coefficient weights `w_0^2, ..., w_{count-1}^2`.
    pub fn weights_sq(&self, count: usize) -> Vec<f64> {
        let l = self.l;
        let mut out = Vec::with_capacity(count);
        let mut w = 1.0f64;
        for n in 0..count {
            if n > 0 {
                let nf = n as f64;
                w *= match self.domain {
                    DomainTag::Plane => l / nf,
                    DomainTag::Sphere => ((l - nf + 1.0) / nf).max(0.0),
                    DomainTag::Disk => (l + nf - 1.0) / nf,
                };
            }
            out.push(w);
        }
        out
    }

    pub fn weights(&self, count: usize) -> Vec<f64> {
        self.weights_sq(count).into_iter().map(f64::sqrt).collect()
    }

    /// Covariance kernel `K(z, w)`.
    pub fn kernel(&self, z: Complex64, w: Complex64) -> Complex64 {
        let zw = z * w.conj();
        match self.domain {
            DomainTag::Plane => (zw * self.l).exp(),
            DomainTag::Sphere => (zw + 1.0).powf(self.l),
            DomainTag::Disk => (Complex64::new(1.0, 0.0) - zw).powf(-self.l),
        }
    }

    /// `log K(z, z)`.
    pub fn log_kernel_diag(&self, z: Complex64) -> f64 {
        let t = z.norm_sqr();
        match self.domain {
            DomainTag::Plane => self.l * t,
            DomainTag::Sphere => self.l * (1.0 + t).ln(),
            DomainTag::Disk => -self.l * (1.0 - t).ln(),
        }
    }
}

/// Density of the isometry-invariant measure with respect to Lebesgue measure.
pub fn invariant_density(domain: DomainTag, z: Complex64) -> f64 {
    let t = z.norm_sqr();
    match domain {
        DomainTag::Plane => 1.0,
        DomainTag::Sphere => 1.0 / (1.0 + t).powi(2),
        DomainTag::Disk => 1.0 / (1.0 - t).powi(2),
    }
}

/// First intensity of the zero set, `L / pi` times the invariant density.
pub fn edelman_kostlan_intensity(spec: &GafSpec, z: Complex64) -> Result<f64> {
    if !spec.domain.contains(z) {
        return Err(Error::OutsideDomain(format!("{z}")));
    }
    Ok(spec.l / PI * invariant_density(spec.domain, z))
}

/// `(1/4pi) Laplacian log K(z, z)` by a Richardson-extrapolated five-point stencil.
pub fn intensity_finite_difference(spec: &GafSpec, z: Complex64, h: f64) -> f64 {
    let lap = |h: f64| {
        let f = |d: Complex64| spec.log_kernel_diag(z + d);
        (f(Complex64::new(h, 0.0))
            + f(Complex64::new(-h, 0.0))
            + f(Complex64::new(0.0, h))
            + f(Complex64::new(0.0, -h))
            - 4.0 * f(Complex64::new(0.0, 0.0)))
            / (h * h)
    };
    let l = (4.0 * lap(h / 2.0) - lap(h)) / 3.0;
    l / (4.0 * PI)
}

/// Expected number of zeros in `|z| < r`.
pub fn expected_count_in_disk(spec: &GafSpec, r: f64) -> f64 {
    let t = r * r;
    match spec.domain {
        DomainTag::Plane => spec.l * t,
        DomainTag::Sphere => {
            if r.is_infinite() {
                spec.l
            } else {
                spec.l * t / (1.0 + t)
            }
        }
        DomainTag::Disk => spec.l * t / (1.0 - t),
    }
}

/// A sampled GAF truncated to a polynomial, certified on `|z| <= radius`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    pub spec: GafSpec,
    /// Coefficients `a_n w_n`, increasing degree.
    pub coeffs: Vec<Complex64>,
    pub radius: f64,
    /// Sup of the omitted tail on `|z| <= radius`, holding with probability `confidence`.
    pub tail_bound: f64,
    pub confidence: f64,
}

impl TruncatedSeries {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
    pub fn is_exact(&self) -> bool {
        self.tail_bound == 0.0
    }
}

/// Default cap on the truncation degree.
pub const DEFAULT_DEGREE_CAP: usize = 4096;

/// Standard deviation of the field at `|z| = r`, the scale against which `eps` is measured.
pub fn field_scale(spec: &GafSpec, r: f64) -> f64 {
    if r.is_infinite() {
        return 1.0;
    }
    (0.5 * spec.log_kernel_diag(Complex64::new(r, 0.0))).exp()
}

/// Terms `w_n r^n` from index 0 until the remainder is negligible against `floor`.
fn tail_terms(spec: &GafSpec, r: f64, floor: f64, cap: usize) -> Result<(Vec<f64>, f64)> {
    let mut logs: Vec<f64> = Vec::new();
    let mut lw = 0.0f64;
    let lr = r.ln();
    let mut n = 0usize;
    loop {
        if n > 0 {
            let nf = n as f64;
            lw += 0.5
                * match spec.domain {
                    DomainTag::Plane => (spec.l / nf).ln(),
                    _ => ((spec.l + nf - 1.0) / nf).ln(),
                };
        }
        logs.push(lw + lr * n as f64);
        let nf = n as f64;
        let q = match spec.domain {
            DomainTag::Plane => r * (spec.l / (nf + 1.0)).sqrt(),
            _ => r * ((spec.l + nf) / (nf + 1.0)).sqrt().max(1.0),
        };
        if q < 1.0 {
            let tail = logs[n].exp() * q / (1.0 - q);
            if tail < floor {
                return Ok((logs.iter().map(|x| x.exp()).collect(), tail));
            }
        }
        n += 1;
        if n > cap + 64 {
            return Err(Error::TruncationCap { needed: n, cap });
        }
    }
}

/// Expected sup on `|z| <= r` of the tail after degree `n`.
fn expected_tail_sup(spec: &GafSpec, r: f64, n: usize, floor: f64, cap: usize) -> Result<f64> {
    let (terms, rem) = tail_terms(spec, r, floor, cap.max(n + 64))?;
    let s: f64 = terms.iter().skip(n + 1).sum::<f64>() + rem;
    Ok(s * PI.sqrt() / 2.0)
}

/// Smallest `N` whose expected tail sup on `|z| <= r` is at most `eps * scale / 100`, and that bound.
///
/// `scale` is [`field_scale`], so `eps` is a tolerance relative to the size of the field.
pub fn truncation_degree(spec: &GafSpec, r: f64, eps: f64, cap: usize) -> Result<(usize, f64)> {
    spec.validate()?;
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter("eps must be positive".into()));
    }
    if spec.domain == DomainTag::Sphere {
        return Ok((spec.l as usize, 0.0));
    }
    if !(r > 0.0) || r >= spec.max_radius() || !r.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "radius {r} outside convergence region"
        )));
    }
    let target = eps * field_scale(spec, r) * 1e-2;
    let mean_abs = PI.sqrt() / 2.0;
    let (terms, rem) = tail_terms(spec, r, target * 1e-3 / mean_abs, cap)?;
    let mut suffix = rem;
    let mut best = terms.len() - 1;
    let mut best_tail = rem;
    for k in (0..terms.len()).rev() {
        // suffix = sum of t_n for n > k
        if suffix * mean_abs <= target {
            best = k;
            best_tail = suffix;
        } else {
            break;
        }
        suffix += terms[k];
    }
    if best > cap {
        return Err(Error::TruncationCap { needed: best, cap });
    }
    Ok((best, best_tail * mean_abs))
}

/// Precomputed truncation plan for repeated sampling of one GAF on one disk.
#[derive(Debug, Clone, PartialEq)]
pub struct GafSampler {
    pub spec: GafSpec,
    pub radius: f64,
    pub eps: f64,
    pub degree: usize,
    pub cap: usize,
    weights: Vec<f64>,
    expected_tail: f64,
    threshold: f64,
}

const EXTRA: usize = 6;

impl GafSampler {
    pub fn new(spec: &GafSpec, r: f64, eps: f64, cap: usize) -> Result<Self> {
        let (degree, expected_tail) = truncation_degree(spec, r, eps, cap)?;
        let radius = if spec.domain == DomainTag::Sphere {
            f64::INFINITY
        } else {
            r
        };
        let weights = spec.weights(degree + EXTRA + 1);
        let threshold = eps * field_scale(spec, radius);
        Ok(GafSampler {
            spec: *spec,
            radius,
            eps,
            degree,
            cap,
            weights,
            expected_tail,
            threshold,
        })
    }

    /// One sample; the tail sup is below `eps * scale` with probability at least 0.99.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<TruncatedSeries> {
        if self.spec.domain == DomainTag::Sphere {
            let coeffs = self.weights[..=self.degree]
                .iter()
                .map(|&w| complex_gaussian(rng) * w)
                .collect();
            return Ok(TruncatedSeries {
                spec: self.spec,
                coeffs,
                radius: f64::INFINITY,
                tail_bound: 0.0,
                confidence: 1.0,
            });
        }
        let r = self.radius;
        let mut coeffs: Vec<Complex64> = self
            .weights
            .iter()
            .map(|&w| complex_gaussian(rng) * w)
            .collect();
        let mut n = self.degree;
        loop {
            let ok =
                (n + 1..=n + EXTRA).all(|k| coeffs[k].norm() * r.powi(k as i32) < self.threshold);
            if ok {
                break;
            }
            n += EXTRA;
            if n > self.cap {
                return Err(Error::TruncationCap {
                    needed: n,
                    cap: self.cap,
                });
            }
            let weights = self.spec.weights(n + EXTRA + 1);
            while coeffs.len() < n + EXTRA + 1 {
                let k = coeffs.len();
                coeffs.push(complex_gaussian(rng) * weights[k]);
            }
        }
        coeffs.truncate(n + 1);
        let tail = if n == self.degree {
            self.expected_tail
        } else {
            expected_tail_sup(&self.spec, r, n, self.expected_tail * 1e-3, self.cap)?
        };
        Ok(TruncatedSeries {
            spec: self.spec,
            coeffs,
            radius: r,
            tail_bound: 100.0 * tail,
            confidence: 0.99,
        })
    }
}

/// Sample a truncated series certified on `|z| <= r`, with relative tolerance `eps` at 99% confidence.
pub fn sample_gaf(spec: &GafSpec, stream: &RngStream, r: f64, eps: f64) -> Result<TruncatedSeries> {
    sample_gaf_with(spec, &mut stream.rng(), r, eps, DEFAULT_DEGREE_CAP)
}

pub fn sample_gaf_with<R: Rng + ?Sized>(
    spec: &GafSpec,
    rng: &mut R,
    r: f64,
    eps: f64,
    cap: usize,
) -> Result<TruncatedSeries> {
    GafSampler::new(spec, r, eps, cap)?.sample(rng)
}

/// Value of the truncated series at `z`.
pub fn evaluate(s: &TruncatedSeries, z: Complex64) -> Result<Complex64> {
    if z.norm() > s.radius {
        return Err(Error::OutsideRadius {
            z: z.norm(),
            radius: s.radius,
        });
    }
    Ok(horner(&s.coeffs, z).0)
}

/// Options for zero extraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroOptions {
    pub method: RootMethod,
    /// Cross-check the count against the argument principle on the boundary.
    pub certify: bool,
    /// Roots within this relative distance of `|z| = r` flag the sample.
    pub boundary_margin: f64,
    pub cluster_tol: f64,
}

impl Default for ZeroOptions {
    fn default() -> Self {
        ZeroOptions {
            method: RootMethod::Aberth,
            certify: true,
            boundary_margin: 1e-6,
            cluster_tol: 1e-8,
        }
    }
}

/// Zeros of a polynomial in `|z| < r`, as a point set.
pub fn polynomial_zeros_in_disk(
    coeffs: &[Complex64],
    domain: DomainTag,
    r: f64,
    nominal_degree: usize,
    opts: &ZeroOptions,
) -> Result<PointSet> {
    let deg = coeffs
        .iter()
        .rposition(|z| z.norm_sqr() > 0.0)
        .ok_or(Error::ZeroPolynomial)?;
    let whole = r.is_infinite();
    let (scaled, scale): (Vec<Complex64>, f64) = if whole {
        (coeffs[..=deg].to_vec(), 1.0)
    } else {
        let mut p = 1.0;
        let v = coeffs[..=deg]
            .iter()
            .map(|c| {
                let out = c * p;
                p *= r;
                out
            })
            .collect();
        (v, r)
    };
    let roots = poly_roots(&scaled, opts.method)?;
    let mut inside = Vec::new();
    for u in roots {
        if !(u.re.is_finite() && u.im.is_finite()) {
            return Err(Error::NoConvergence("non-finite root".into()));
        }
        if whole {
            inside.push(u);
            continue;
        }
        let m = u.norm();
        if (m - 1.0).abs() < opts.boundary_margin {
            return Err(Error::BoundaryProximity {
                radius: r,
                margin: opts.boundary_margin * r,
            });
        }
        if m < 1.0 {
            inside.push(u);
        }
    }
    if opts.certify && !whole {
        let w = winding_count(&scaled, 1.0)?;
        if w != inside.len() as i64 {
            return Err(Error::CountMismatch {
                roots: inside.len(),
                contour: w,
            });
        }
    }
    let mut ps = PointSet::new(domain, if whole { None } else { Some(r) });
    for (z, m) in cluster_roots(&inside, opts.cluster_tol / scale) {
        let z = z * scale;
        if !domain.contains(z) {
            return Err(Error::OutsideDomain(format!("{z}")));
        }
        ps.points.push(crate::points::Point { z, multiplicity: m });
    }
    if whole && domain == DomainTag::Sphere && nominal_degree > deg {
        ps.at_infinity = (nominal_degree - deg) as u32;
    }
    Ok(ps)
}

/// Zeros of a sampled series in `|z| < r`.
///
/// On the sphere `r` may be infinite, giving the full zero set including any zero at infinity.
pub fn zeros_in_disk(s: &TruncatedSeries, r: f64, opts: &ZeroOptions) -> Result<PointSet> {
    if r > s.radius {
        return Err(Error::OutsideRadius {
            z: r,
            radius: s.radius,
        });
    }
    if r.is_infinite() && !s.is_exact() {
        return Err(Error::InvalidParameter(
            "whole-domain zeros need an exact polynomial".into(),
        ));
    }
    let nominal = if s.spec.domain == DomainTag::Sphere {
        s.spec.l as usize
    } else {
        s.degree()
    };
    let mut ps = polynomial_zeros_in_disk(&s.coeffs, s.spec.domain, r, nominal, opts)?;
    ps.meta.insert("degree".into(), s.degree().to_string());
    Ok(ps)
}

/// Zero count in `|z| < r` by the argument principle alone.
pub fn count_zeros(s: &TruncatedSeries, r: f64) -> Result<usize> {
    if r > s.radius {
        return Err(Error::OutsideRadius {
            z: r,
            radius: s.radius,
        });
    }
    let w = winding_count(&s.coeffs, r)?;
    Ok(w as usize)
}

/// An isometry of one of the three geometries.
///
/// Plane: `z -> a z + b` with `|a| = 1`. Sphere: `(a z + b) / (-conj(b) z + conj(a))` with
/// `|a|^2 + |b|^2 = 1`. Disk: `(a z + b) / (conj(b) z + conj(a))` with `|a|^2 - |b|^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusMap {
    pub domain: DomainTag,
    pub a: Complex64,
    pub b: Complex64,
}

impl MobiusMap {
    pub fn new(domain: DomainTag, a: Complex64, b: Complex64) -> Result<Self> {
        let det = match domain {
            DomainTag::Plane => a.norm_sqr(),
            DomainTag::Sphere => a.norm_sqr() + b.norm_sqr(),
            DomainTag::Disk => a.norm_sqr() - b.norm_sqr(),
        };
        if (det - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "map is not an isometry (determinant {det})"
            )));
        }
        Ok(MobiusMap { domain, a, b })
    }

    pub fn identity(domain: DomainTag) -> Self {
        MobiusMap {
            domain,
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
        }
    }

    /// Plane rotation by `theta` followed by translation by `shift`.
    pub fn plane(theta: f64, shift: Complex64) -> Self {
        MobiusMap {
            domain: DomainTag::Plane,
            a: Complex64::from_polar(1.0, theta),
            b: shift,
        }
    }

    /// Sphere rotation by angle `2 t` about an axis determined by `phase` and `psi`.
    pub fn sphere(t: f64, phase: f64, psi: f64) -> Self {
        MobiusMap {
            domain: DomainTag::Sphere,
            a: Complex64::from_polar(t.cos(), psi),
            b: Complex64::from_polar(t.sin(), phase),
        }
    }

    /// Disk automorphism with hyperbolic displacement `t` in direction `phase`, rotated by `psi`.
    pub fn disk(t: f64, phase: f64, psi: f64) -> Self {
        MobiusMap {
            domain: DomainTag::Disk,
            a: Complex64::from_polar(t.cosh(), psi),
            b: Complex64::from_polar(t.sinh(), phase),
        }
    }

    fn denom(&self, z: Complex64) -> Complex64 {
        match self.domain {
            DomainTag::Plane => Complex64::new(1.0, 0.0),
            DomainTag::Sphere => -self.b.conj() * z + self.a.conj(),
            DomainTag::Disk => self.b.conj() * z + self.a.conj(),
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        match self.domain {
            DomainTag::Plane => self.a * z + self.b,
            _ => (self.a * z + self.b) / self.denom(z),
        }
    }

    pub fn apply_ext(&self, p: ExtPoint) -> ExtPoint {
        match (self.domain, p) {
            (DomainTag::Plane, ExtPoint::Finite(z)) => ExtPoint::Finite(self.apply(z)),
            (_, ExtPoint::Finite(z)) => {
                let d = self.denom(z);
                let num = self.a * z + self.b;
                if d.norm() <= 1e-14 * num.norm() {
                    ExtPoint::Infinity
                } else {
                    ExtPoint::Finite(num / d)
                }
            }
            (DomainTag::Sphere, ExtPoint::Infinity) => {
                if self.b.norm() == 0.0 {
                    ExtPoint::Infinity
                } else {
                    ExtPoint::Finite(-self.a / self.b.conj())
                }
            }
            (_, ExtPoint::Infinity) => ExtPoint::Infinity,
        }
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        match self.domain {
            DomainTag::Plane => self.a,
            _ => 1.0 / (self.denom(z) * self.denom(z)),
        }
    }

    pub fn inverse(&self) -> Self {
        match self.domain {
            DomainTag::Plane => MobiusMap {
                domain: self.domain,
                a: 1.0 / self.a,
                b: -self.b / self.a,
            },
            _ => MobiusMap {
                domain: self.domain,
                a: self.a.conj(),
                b: -self.b,
            },
        }
    }

    /// Composition `self o other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        assert_eq!(self.domain, other.domain);
        match self.domain {
            DomainTag::Plane => MobiusMap {
                domain: self.domain,
                a: self.a * other.a,
                b: self.a * other.b + self.b,
            },
            DomainTag::Sphere => MobiusMap {
                domain: self.domain,
                a: self.a * other.a - self.b * other.b.conj(),
                b: self.a * other.b + self.b * other.a.conj(),
            },
            DomainTag::Disk => MobiusMap {
                domain: self.domain,
                a: self.a * other.a + self.b * other.b.conj(),
                b: self.a * other.b + self.b * other.a.conj(),
            },
        }
    }
}

/// Multiplier `Delta` with `f(phi(z)) = Delta(z) f(z)` in distribution.
pub fn mobius_cocycle(spec: &GafSpec, map: &MobiusMap, z: Complex64) -> Result<Complex64> {
    if spec.domain != map.domain {
        return Err(Error::InvalidParameter(
            "map and GAF live on different domains".into(),
        ));
    }
    let l = spec.l;
    Ok(match spec.domain {
        DomainTag::Plane => (z * map.a * map.b.conj() * l + 0.5 * l * map.b.norm_sqr()).exp(),
        DomainTag::Sphere => map.denom(z).powf(-l),
        DomainTag::Disk => map.denom(z).powf(l),
    })
}
