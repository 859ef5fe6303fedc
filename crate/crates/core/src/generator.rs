//! Declarative point-process generators with cached set-up and resampling of flagged draws.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma_ur;
use std::f64::consts::PI;

use crate::dpp::{
    dpp_intensity, lebesgue_kernel, sample_ginibre, sample_projection_dpp, DppKernelSpec, RadialBasis, RadialLaw,
};
use crate::error::{Error, Result};
use crate::gaf::{
    count_zeros, edelman_kostlan_intensity, polynomial_zeros_in_disk, zeros_in_disk, GafSampler,
    GafSpec, ZeroOptions, DEFAULT_DEGREE_CAP,
};
use crate::points::{DomainTag, PointSet};
use crate::polygaf::{
    det_pencil_zeros, linearized_zeros, coefficient_matrices, polygaf_series, HomPoly,
    MatrixSeriesMethod, MATRIX_DEGREE_CAP,
};
use crate::rng::RngStream;
use crate::stats::quadrature::composite;

/// Default relative truncation tolerance for random series.
pub const DEFAULT_EPS: f64 = 1e-9;
/// Attempts per replication before a flagged draw becomes an error.
pub const MAX_ATTEMPTS: u64 = 8;

fn default_eps() -> f64 {
    DEFAULT_EPS
}

/// Named homogeneous polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "q", rename_all = "kebab-case")]
pub enum QSpec {
    Identity,
    Product { k: usize },
    Power { d: u32 },
    Det { n: usize },
}

impl QSpec {
    pub fn build(&self) -> Result<HomPoly> {
        match *self {
            QSpec::Identity => Ok(HomPoly::identity()),
            QSpec::Product { k } if k >= 1 => Ok(HomPoly::product(k)),
            QSpec::Power { d } if d >= 1 => Ok(HomPoly::power(d)),
            QSpec::Det { n } if n >= 1 => Ok(HomPoly::det(n)),
            _ => Err(Error::InvalidParameter(format!("{self:?}"))),
        }
    }

    pub fn id(&self) -> String {
        match self {
            QSpec::Identity => "zeta".into(),
            QSpec::Product { k } => format!("product{k}"),
            QSpec::Power { d } => format!("power{d}"),
            QSpec::Det { n } => format!("det{n}"),
        }
    }
}

/// A point-process generator.
///
/// `window` is the radius of the disk on which the sample is complete. Sphere generators may
/// omit it to return the whole zero set including infinity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Gaf {
        domain: DomainTag,
        #[serde(rename = "L")]
        l: f64,
        window: Option<f64>,
        #[serde(default = "default_eps")]
        eps: f64,
    },
    Polygaf {
        #[serde(flatten)]
        q: QSpec,
        domain: DomainTag,
        #[serde(rename = "L")]
        l: f64,
        window: Option<f64>,
        #[serde(default = "default_eps")]
        eps: f64,
    },
    /// `det(A_0 + z A_1 + z^2 A_2 + ...)` with i.i.d. standard complex Gaussian matrices.
    MatrixSeries {
        n: usize,
        window: f64,
        #[serde(default = "default_eps")]
        eps: f64,
        #[serde(default)]
        method: MatrixSeriesMethod,
    },
    /// Generalized eigenvalues of `z A - B`.
    DetPencil { n: usize },
    Ginibre { n: usize },
    /// The sphere process of rank `n` from the projection sampler.
    DetSphere { n: usize },
    /// Plane or disk determinantal process restricted to a window.
    DppWindow {
        domain: DomainTag,
        alpha: f64,
        window: f64,
    },
    /// Poisson process of constant intensity in a disk.
    Poisson { intensity: f64, window: f64 },
}

enum Inner {
    Gaf(GafSampler, Option<f64>),
    Polygaf(HomPoly, GafSampler, Option<f64>),
    Matrix(usize, GafSampler, MatrixSeriesMethod),
    Pencil(usize),
    Ginibre(usize),
    Projection(RadialBasis, Option<f64>),
    Poisson(f64, f64),
}

/// A prepared generator.
pub struct Generator {
    pub spec: GeneratorSpec,
    pub opts: ZeroOptions,
    inner: Inner,
}

fn check_window(domain: DomainTag, window: Option<f64>) -> Result<f64> {
    match window {
        None if domain == DomainTag::Sphere => Ok(f64::INFINITY),
        None => Err(Error::InvalidParameter(format!("a {} generator needs a window", domain.name()))),
        Some(w) if !(w > 0.0) => Err(Error::InvalidParameter(format!("window {w} must be positive"))),
        Some(w) if domain == DomainTag::Disk && w >= 1.0 => {
            Err(Error::InvalidParameter(format!("window {w} must be below 1 on the disk")))
        }
        Some(w) => Ok(w),
    }
}

fn is_flagged(e: &Error) -> bool {
    matches!(e, Error::BoundaryProximity { .. } | Error::CountMismatch { .. } | Error::NoConvergence(_))
}

impl GeneratorSpec {
    pub fn prepare(&self) -> Result<Generator> {
        let inner = match self {
            GeneratorSpec::Gaf { domain, l, window, eps } => {
                let spec = GafSpec::new(*domain, *l)?;
                let w = check_window(*domain, *window)?;
                let r = if w.is_infinite() { 1.0 } else { w };
                Inner::Gaf(GafSampler::new(&spec, r, *eps, DEFAULT_DEGREE_CAP)?, *window)
            }
            GeneratorSpec::Polygaf { q, domain, l, window, eps } => {
                let spec = GafSpec::new(*domain, *l)?;
                let w = check_window(*domain, *window)?;
                let r = if w.is_infinite() { 1.0 } else { w };
                Inner::Polygaf(q.build()?, GafSampler::new(&spec, r, *eps, DEFAULT_DEGREE_CAP)?, *window)
            }
            GeneratorSpec::MatrixSeries { n, window, eps, method } => {
                if *n == 0 {
                    return Err(Error::InvalidParameter("n must be positive".into()));
                }
                check_window(DomainTag::Disk, Some(*window))?;
                let s = GafSampler::new(&GafSpec::disk(1.0), *window, *eps, DEFAULT_DEGREE_CAP)?;
                Inner::Matrix(*n, s, *method)
            }
            GeneratorSpec::DetPencil { n } | GeneratorSpec::Ginibre { n } if *n == 0 => {
                return Err(Error::InvalidParameter("n must be positive".into()))
            }
            GeneratorSpec::DetPencil { n } => Inner::Pencil(*n),
            GeneratorSpec::Ginibre { n } => Inner::Ginibre(*n),
            GeneratorSpec::DetSphere { n } => Inner::Projection(RadialBasis::sphere(*n)?, None),
            GeneratorSpec::DppWindow { domain, alpha, window } => {
                if *domain == DomainTag::Sphere {
                    return Err(Error::InvalidParameter("use det-sphere for the sphere".into()));
                }
                let w = check_window(*domain, Some(*window))?;
                let spec = DppKernelSpec::new(*domain, *alpha)?;
                Inner::Projection(RadialBasis::for_window(spec, w, 1e-6, 4096)?, Some(w))
            }
            GeneratorSpec::Poisson { intensity, window } => {
                if !(*intensity > 0.0 && *window > 0.0) {
                    return Err(Error::InvalidParameter("intensity and window must be positive".into()));
                }
                Inner::Poisson(*intensity, *window)
            }
        };
        Ok(Generator { spec: self.clone(), opts: ZeroOptions::default(), inner })
    }

    pub fn domain(&self) -> DomainTag {
        match self {
            GeneratorSpec::Gaf { domain, .. }
            | GeneratorSpec::Polygaf { domain, .. }
            | GeneratorSpec::DppWindow { domain, .. } => *domain,
            GeneratorSpec::MatrixSeries { .. } => DomainTag::Disk,
            GeneratorSpec::DetPencil { .. } | GeneratorSpec::DetSphere { .. } => DomainTag::Sphere,
            GeneratorSpec::Ginibre { .. } | GeneratorSpec::Poisson { .. } => DomainTag::Plane,
        }
    }

    /// Short identifier used in metadata and reports.
    pub fn id(&self) -> String {
        match self {
            GeneratorSpec::Gaf { domain, l, .. } => format!("gaf-{}-L{l}", domain.name()),
            GeneratorSpec::Polygaf { q, domain, l, .. } => format!("polygaf-{}-{}-L{l}", q.id(), domain.name()),
            GeneratorSpec::MatrixSeries { n, .. } => format!("matrix-series-n{n}"),
            GeneratorSpec::DetPencil { n } => format!("det-pencil-n{n}"),
            GeneratorSpec::Ginibre { n } => format!("ginibre-n{n}"),
            GeneratorSpec::DetSphere { n } => format!("det-sphere-n{n}"),
            GeneratorSpec::DppWindow { domain, alpha, .. } => format!("dpp-{}-alpha{alpha}", domain.name()),
            GeneratorSpec::Poisson { intensity, .. } => format!("poisson-{intensity}"),
        }
    }

    /// Radius of the disk on which samples are complete; `None` means the whole domain.
    pub fn window(&self) -> Option<f64> {
        match self {
            GeneratorSpec::Gaf { window, .. } | GeneratorSpec::Polygaf { window, .. } => *window,
            GeneratorSpec::MatrixSeries { window, .. }
            | GeneratorSpec::DppWindow { window, .. }
            | GeneratorSpec::Poisson { window, .. } => Some(*window),
            _ => None,
        }
    }

    /// Closed-form first intensity with respect to Lebesgue measure.
    pub fn intensity(&self, z: Complex64) -> Result<f64> {
        let t = z.norm_sqr();
        match self {
            GeneratorSpec::Gaf { domain, l, .. } => edelman_kostlan_intensity(&GafSpec::new(*domain, *l)?, z),
            GeneratorSpec::Polygaf { q, domain, l, .. } => {
                Ok(q.build()?.degree()? as f64 * edelman_kostlan_intensity(&GafSpec::new(*domain, *l)?, z)?)
            }
            GeneratorSpec::MatrixSeries { n, .. } => {
                if t >= 1.0 {
                    return Err(Error::OutsideDomain(format!("{z}")));
                }
                Ok(*n as f64 / (PI * (1.0 - t).powi(2)))
            }
            GeneratorSpec::DetPencil { n } | GeneratorSpec::DetSphere { n } => {
                Ok(*n as f64 / (PI * (1.0 + t).powi(2)))
            }
            GeneratorSpec::Ginibre { n } => Ok(if t == 0.0 { 1.0 / PI } else { gamma_ur(*n as f64, t) / PI }),
            GeneratorSpec::DppWindow { domain, alpha, window } => {
                if z.norm() >= *window {
                    return Ok(0.0);
                }
                dpp_intensity(&DppKernelSpec::new(*domain, *alpha)?, z)
            }
            GeneratorSpec::Poisson { intensity, window } => Ok(if z.norm() < *window { *intensity } else { 0.0 }),
        }
    }

    /// Expected number of points in `a <= |z| < b` from the closed-form intensity.
    pub fn expected_count(&self, a: f64, b: f64) -> Result<f64> {
        let mut s = 0.0;
        for (rho, w) in composite(a, b, 32, 16) {
            s += w * 2.0 * PI * rho * self.intensity(Complex64::new(rho, 0.0))?;
        }
        Ok(s)
    }

    /// Two-point intensity `rho_1(z) rho_1(w) - |K(z, w)|^2` for generators whose points are
    /// determinantal (for `MatrixSeries` this is the conjectured disk kernel with `alpha = n`).
    pub fn determinantal_two_point(&self, z: Complex64, w: Complex64) -> Option<f64> {
        let k2 = match self {
            GeneratorSpec::Poisson { .. } => 0.0,
            GeneratorSpec::Ginibre { n } => {
                let zw = z * w.conj();
                let mut term = Complex64::new(1.0, 0.0);
                let mut s = term;
                for k in 1..*n {
                    term *= zw / k as f64;
                    s += term;
                }
                s.norm_sqr() * (-(z.norm_sqr() + w.norm_sqr())).exp() / (PI * PI)
            }
            GeneratorSpec::DetPencil { n } | GeneratorSpec::DetSphere { n } => {
                lebesgue_kernel(&DppKernelSpec::new(DomainTag::Sphere, *n as f64).ok()?, z, w).norm_sqr()
            }
            GeneratorSpec::DppWindow { domain, alpha, window } => {
                if z.norm() >= *window || w.norm() >= *window {
                    return Some(0.0);
                }
                lebesgue_kernel(&DppKernelSpec::new(*domain, *alpha).ok()?, z, w).norm_sqr()
            }
            GeneratorSpec::MatrixSeries { n, .. } => {
                lebesgue_kernel(&DppKernelSpec::new(DomainTag::Disk, *n as f64).ok()?, z, w).norm_sqr()
            }
            GeneratorSpec::Gaf { domain: DomainTag::Disk, l, .. } if *l == 1.0 => {
                lebesgue_kernel(&DppKernelSpec::new(DomainTag::Disk, 1.0).ok()?, z, w).norm_sqr()
            }
            _ => return None,
        };
        Some(self.intensity(z).ok()? * self.intensity(w).ok()? - k2)
    }

    /// Exact independent-radii law, where one is known.
    pub fn radial_law(&self) -> Option<RadialLaw> {
        match self {
            GeneratorSpec::Ginibre { n } => Some(RadialLaw::Ginibre { n: *n }),
            GeneratorSpec::Gaf { domain: DomainTag::Disk, l, .. } if *l == 1.0 => Some(RadialLaw::HyperbolicOne),
            GeneratorSpec::MatrixSeries { n: 1, .. } => Some(RadialLaw::HyperbolicOne),
            GeneratorSpec::DppWindow { domain: DomainTag::Disk, alpha, .. } if *alpha == 1.0 => {
                Some(RadialLaw::HyperbolicOne)
            }
            _ => None,
        }
    }
}

impl Generator {
    pub fn domain(&self) -> DomainTag {
        self.spec.domain()
    }

    pub fn window(&self) -> Option<f64> {
        self.spec.window()
    }

    /// One replication. Draws flagged by the boundary or certification checks are redrawn from
    /// child streams of `stream`.
    pub fn sample(&self, stream: &RngStream) -> Result<PointSet> {
        let mut last = None;
        for attempt in 0..MAX_ATTEMPTS {
            let s = if attempt == 0 { stream.clone() } else { stream.split(attempt) };
            match self.sample_once(&s) {
                Ok(mut ps) => {
                    ps.meta.insert("generator".into(), self.spec.id());
                    ps.meta.insert("stream".into(), format_path(stream));
                    if attempt > 0 {
                        ps.meta.insert("attempt".into(), attempt.to_string());
                    }
                    return Ok(ps);
                }
                Err(e) if is_flagged(&e) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last.unwrap())
    }

    /// Number of points with `|z| <= r`.
    ///
    /// GAF generators count by the argument principle without extracting roots.
    pub fn count_in_disk(&self, stream: &RngStream, r: f64) -> Result<usize> {
        if let Some(w) = self.window() {
            if r > w {
                return Err(Error::SupportOutsideWindow);
            }
        }
        if let Inner::Gaf(sampler, _) = &self.inner {
            if sampler.spec.domain != DomainTag::Sphere || r <= sampler.radius {
                let mut last = None;
                for attempt in 0..MAX_ATTEMPTS {
                    let s = if attempt == 0 { stream.clone() } else { stream.split(attempt) };
                    let series = sampler.sample(&mut s.rng())?;
                    match count_zeros(&series, r) {
                        Ok(c) => return Ok(c),
                        Err(e) if is_flagged(&e) => last = Some(e),
                        Err(e) => return Err(e),
                    }
                }
                return Err(last.unwrap());
            }
        }
        let ps = self.sample(stream)?;
        Ok(ps.points.iter().filter(|p| p.z.norm() <= r).map(|p| p.multiplicity as usize).sum())
    }

    fn sample_once(&self, stream: &RngStream) -> Result<PointSet> {
        match &self.inner {
            Inner::Gaf(sampler, window) => {
                let s = sampler.sample(&mut stream.rng())?;
                let r = window.unwrap_or(f64::INFINITY);
                zeros_in_disk(&s, r, &self.opts)
            }
            Inner::Polygaf(q, sampler, window) => {
                let mut rng = stream.rng();
                let comps = (0..q.k).map(|_| sampler.sample(&mut rng)).collect::<Result<Vec<_>>>()?;
                let s = polygaf_series(q, &comps)?;
                let r = window.unwrap_or(f64::INFINITY);
                let nominal = if s.spec.domain == DomainTag::Sphere { s.spec.l as usize } else { s.degree() };
                polynomial_zeros_in_disk(&s.coeffs, s.spec.domain, r, nominal, &self.opts)
            }
            Inner::Matrix(n, sampler, method) => {
                let mut rng = stream.rng();
                let entries = (0..n * n).map(|_| sampler.sample(&mut rng)).collect::<Result<Vec<_>>>()?;
                let r = sampler.radius;
                match method {
                    MatrixSeriesMethod::Linearization => {
                        let deg = entries.iter().map(|s| s.degree()).max().unwrap_or(0);
                        if deg > MATRIX_DEGREE_CAP {
                            return Err(Error::TruncationCap { needed: deg, cap: MATRIX_DEGREE_CAP });
                        }
                        linearized_zeros(&coefficient_matrices(*n, &entries), DomainTag::Disk, r, self.opts.boundary_margin)
                    }
                    MatrixSeriesMethod::DeterminantSeries => {
                        let s = polygaf_series(&HomPoly::det(*n), &entries)?;
                        polynomial_zeros_in_disk(&s.coeffs, DomainTag::Disk, r, s.degree(), &self.opts)
                    }
                }
            }
            Inner::Pencil(n) => det_pencil_zeros(*n, stream),
            Inner::Ginibre(n) => sample_ginibre(*n, stream),
            Inner::Projection(basis, window) => {
                let full = sample_projection_dpp(basis, stream)?;
                match window {
                    None => Ok(full),
                    Some(w) => {
                        let mut ps = PointSet::new(full.domain, Some(*w));
                        ps.points = full.points.into_iter().filter(|p| p.z.norm() < *w).collect();
                        ps.meta = full.meta;
                        Ok(ps)
                    }
                }
            }
            Inner::Poisson(lambda, w) => {
                let mut rng = stream.rng();
                let mean = lambda * PI * w * w;
                let count = Poisson::new(mean).map_err(|e| Error::InvalidParameter(e.to_string()))?.sample(&mut rng) as usize;
                let mut ps = PointSet::new(DomainTag::Plane, Some(*w));
                for _ in 0..count {
                    let rho = w * rng.random::<f64>().sqrt();
                    let th = 2.0 * PI * rng.random::<f64>();
                    ps.push(Complex64::from_polar(rho, th), 1)?;
                }
                Ok(ps)
            }
        }
    }
}

fn format_path(s: &RngStream) -> String {
    let mut out = s.seed.to_string();
    for i in &s.path {
        out.push('/');
        out.push_str(&i.to_string());
    }
    out
}
