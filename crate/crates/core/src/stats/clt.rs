//! Smooth linear statistics and their fluctuations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::quadrature::composite;
use super::{run_blocks, Moments, Parallel};
use crate::error::{Error, Result};
use crate::generator::{GeneratorSpec, QSpec};
use crate::points::{DomainTag, PointSet};
use crate::rng::RngStream;

/// A test function summed over a point set.
pub trait TestFunction {
    fn eval(&self, z: Complex64) -> f64;
    /// Disk outside which the function vanishes; `None` if unbounded.
    fn support(&self) -> Option<(Complex64, f64)> {
        None
    }
}

impl<F: Fn(Complex64) -> f64> TestFunction for F {
    fn eval(&self, z: Complex64) -> f64 {
        self(z)
    }
}

/// Compactly supported radial bumps with closed-form Laplacians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "bump", rename_all = "kebab-case")]
pub enum Bump {
    /// `(1 - |z - c|^2 / R^2)^3` inside the disk.
    Cubic { center: [f64; 2], radius: f64 },
    /// 1 on `|z - c| <= inner`, 0 beyond `outer`, quintic smoothstep in `|z - c|^2` between.
    Plateau { center: [f64; 2], inner: f64, outer: f64 },
}

fn smoothstep(u: f64) -> (f64, f64, f64) {
    let s = u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
    let d1 = 30.0 * u * u * (1.0 - u) * (1.0 - u);
    let d2 = 60.0 * u * (1.0 - u) * (1.0 - 2.0 * u);
    (s, d1, d2)
}

impl Bump {
    pub fn cubic(radius: f64) -> Self {
        Bump::Cubic { center: [0.0, 0.0], radius }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Bump::Cubic { radius, .. } => radius > 0.0,
            Bump::Plateau { inner, outer, .. } => inner >= 0.0 && outer > inner,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("{self:?}")))
        }
    }

    pub fn center(&self) -> Complex64 {
        let c = match self {
            Bump::Cubic { center, .. } | Bump::Plateau { center, .. } => center,
        };
        Complex64::new(c[0], c[1])
    }

    pub fn radius(&self) -> f64 {
        match *self {
            Bump::Cubic { radius, .. } => radius,
            Bump::Plateau { outer, .. } => outer,
        }
    }

    /// Value and Euclidean Laplacian at `z`.
    pub fn value_laplacian(&self, z: Complex64) -> (f64, f64) {
        let rho2 = (z - self.center()).norm_sqr();
        match *self {
            Bump::Cubic { radius, .. } => {
                let r2 = radius * radius;
                let t = rho2 / r2;
                if t >= 1.0 {
                    return (0.0, 0.0);
                }
                ((1.0 - t).powi(3), (1.0 - t) * (36.0 * t - 12.0) / r2)
            }
            Bump::Plateau { inner, outer, .. } => {
                let d = outer * outer - inner * inner;
                let u = (rho2 - inner * inner) / d;
                if u <= 0.0 {
                    return (1.0, 0.0);
                }
                if u >= 1.0 {
                    return (0.0, 0.0);
                }
                let (s, d1, d2) = smoothstep(u);
                (1.0 - s, -(d2 * 4.0 * rho2 / (d * d) + d1 * 4.0 / d))
            }
        }
    }

    /// `Delta* phi`: the Laplacian times `1`, `(1 + |z|^2)^2` or `(1 - |z|^2)^2`.
    pub fn invariant_laplacian(&self, domain: DomainTag, z: Complex64) -> f64 {
        self.value_laplacian(z).1 * conformal_factor(domain, z)
    }

    /// `int g(z) phi(z) dm(z)` over the support.
    pub fn integrate<G: Fn(Complex64) -> f64>(&self, g: G) -> f64 {
        let c = self.center();
        let nth = 64;
        let mut s = 0.0;
        for (rho, wr) in self.radial_nodes() {
            let mut ring = 0.0;
            for k in 0..nth {
                let z = c + Complex64::from_polar(rho, 2.0 * PI * k as f64 / nth as f64);
                ring += self.value_laplacian(z).0 * g(z);
            }
            s += wr * rho * ring * 2.0 * PI / nth as f64;
        }
        s
    }

    /// `||Delta* phi||^2` in `L^2(m*)`, i.e. `int (Delta phi)^2 c(z) dm(z)` with the conformal factor `c`.
    pub fn norm_sq_invariant_laplacian(&self, domain: DomainTag) -> f64 {
        let c = self.center();
        let nth = 64;
        let mut s = 0.0;
        for (rho, wr) in self.radial_nodes() {
            let mut ring = 0.0;
            for k in 0..nth {
                let z = c + Complex64::from_polar(rho, 2.0 * PI * k as f64 / nth as f64);
                ring += self.value_laplacian(z).1.powi(2) * conformal_factor(domain, z);
            }
            s += wr * rho * ring * 2.0 * PI / nth as f64;
        }
        s
    }

    fn radial_nodes(&self) -> Vec<(f64, f64)> {
        match *self {
            Bump::Cubic { radius, .. } => composite(0.0, radius, 8, 16),
            Bump::Plateau { inner, outer, .. } => {
                let mut v = composite(0.0, inner, 8, 16);
                v.extend(composite(inner, outer, 8, 16));
                v
            }
        }
    }
}

impl TestFunction for Bump {
    fn eval(&self, z: Complex64) -> f64 {
        self.value_laplacian(z).0
    }

    fn support(&self) -> Option<(Complex64, f64)> {
        Some((self.center(), self.radius()))
    }
}

/// Ratio of the invariant Laplacian to the Euclidean one.
pub fn conformal_factor(domain: DomainTag, z: Complex64) -> f64 {
    match domain {
        DomainTag::Plane => 1.0,
        DomainTag::Sphere => (1.0 + z.norm_sqr()).powi(2),
        DomainTag::Disk => (1.0 - z.norm_sqr()).powi(2),
    }
}

/// Sum of `phi` over the points with multiplicity. Infinity contributes nothing.
pub fn smooth_statistic<T: TestFunction + ?Sized>(ps: &PointSet, phi: &T) -> Result<f64> {
    if let Some(w) = ps.window {
        match phi.support() {
            Some((c, r)) if c.norm() + r <= w => {}
            _ => return Err(Error::SupportOutsideWindow),
        }
    }
    Ok(ps.points.iter().map(|p| p.multiplicity as f64 * phi.eval(p.z)).sum())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CltRow {
    #[serde(rename = "L")]
    pub l: f64,
    pub moments: Moments,
    pub expected_mean: f64,
    pub variance_times_l: f64,
    pub predicted_variance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CltReport {
    pub q: QSpec,
    pub domain: DomainTag,
    pub bump: Bump,
    pub kappa: f64,
    pub kappa_se: f64,
    pub norm_sq: f64,
    pub rows: Vec<CltRow>,
    /// `Var * L` at each `L` divided by the value at the previous `L`.
    pub ratios: Vec<f64>,
}

/// Generator whose zeros are those of `Q` applied to copies of the GAF with parameter `l`.
pub fn clt_generator(q: QSpec, domain: DomainTag, l: f64, bump: &Bump) -> GeneratorSpec {
    let window = Some(bump.center().norm() + bump.radius());
    match q {
        QSpec::Identity => GeneratorSpec::Gaf { domain, l, window, eps: crate::generator::DEFAULT_EPS },
        _ => GeneratorSpec::Polygaf { q, domain, l, window, eps: crate::generator::DEFAULT_EPS },
    }
}

/// Moments of `Z_L(phi)` for each `L`, with `kappa / L * ||Delta* phi||^2` as the predicted variance.
///
/// The replications for the `j`-th `L` use `stream.split(j)`.
#[allow(clippy::too_many_arguments)]
pub fn clt_experiment(
    q: QSpec,
    domain: DomainTag,
    ls: &[f64],
    bump: &Bump,
    kappa: (f64, f64),
    stream: &RngStream,
    samples: usize,
    par: Parallel,
) -> Result<CltReport> {
    bump.validate()?;
    if ls.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("L values must increase".into()));
    }
    let norm_sq = bump.norm_sq_invariant_laplacian(domain);
    let mut rows = Vec::new();
    for (j, &l) in ls.iter().enumerate() {
        let spec = clt_generator(q, domain, l, bump);
        let g = spec.prepare()?;
        let blocks = run_blocks(&stream.split(j as u64), samples, par, Vec::new, |acc: &mut Vec<f64>, _, s| {
            acc.push(smooth_statistic(&g.sample(s)?, bump)?);
            Ok(())
        })?;
        let values: Vec<f64> = blocks.into_iter().flatten().collect();
        let moments = Moments::from_slice(&values)?;
        let expected_mean = bump.integrate(|z| spec.intensity(z).unwrap_or(0.0));
        rows.push(CltRow {
            l,
            moments,
            expected_mean,
            variance_times_l: moments.variance * l,
            predicted_variance: kappa.0 / l * norm_sq,
        });
    }
    let ratios = rows.windows(2).map(|w| w[1].variance_times_l / w[0].variance_times_l).collect();
    Ok(CltReport { q, domain, bump: *bump, kappa: kappa.0, kappa_se: kappa.1, norm_sq, rows, ratios })
}
