//! Pair correlation by separation, with exact pair-mass normalization.
//!
//! Ordered pairs with both points in `|z| < region` are binned by a separation metric. Each bin
//! count is divided by the integral of `rho1(z) rho1(w)` over the same set of pairs, computed by
//! quadrature, so the window edge needs no further correction.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::quadrature::{composite, gauss_legendre};
use super::{bin_index, check_edges, BinAccumulator, BinnedEstimate};
use crate::error::{Error, Result};
use crate::points::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    /// `|z - w|`.
    Euclidean,
    /// `|z - w| / |1 - conj(z) w|`, invariant under disk automorphisms.
    PseudoHyperbolic,
    /// `|z - w| / sqrt((1 + |z|^2)(1 + |w|^2))`, invariant under sphere rotations.
    Chordal,
}

impl Metric {
    pub fn distance(self, z: Complex64, w: Complex64) -> f64 {
        match self {
            Metric::Euclidean => (z - w).norm(),
            Metric::PseudoHyperbolic => (z - w).norm() / (1.0 - z.conj() * w).norm(),
            Metric::Chordal => (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt(),
        }
    }

    // sign in the isometry u -> (u + rho) / (1 + sigma rho u) carrying 0 to rho
    fn sigma(self) -> f64 {
        match self {
            Metric::Euclidean => 0.0,
            Metric::PseudoHyperbolic => 1.0,
            Metric::Chordal => -1.0,
        }
    }

    // modulus of u at the given distance from 0
    fn radius_of(self, d: f64) -> f64 {
        match self {
            Metric::Chordal => {
                if d >= 1.0 {
                    f64::INFINITY
                } else {
                    d / (1.0 - d * d).sqrt()
                }
            }
            _ => d,
        }
    }

    /// Point at parameter `u` around the real point `rho`, and `dm(w) / dm(u)`.
    fn chart(self, rho: f64, u: Complex64) -> (Complex64, f64) {
        match self {
            Metric::Euclidean => (u + rho, 1.0),
            _ => {
                let sg = self.sigma();
                let den = 1.0 + sg * rho * u;
                let w = (u + rho) / den;
                let j = (1.0 - sg * rho * rho).powi(2) / den.norm_sqr().powi(2);
                (w, j)
            }
        }
    }

    // |chart(rho, s e^{i theta})| < big_r  <=>  cos(theta) < bound
    fn cos_bound(self, rho: f64, s: f64, big_r: f64) -> f64 {
        let r2 = big_r * big_r;
        let (num, den) = match self {
            Metric::Euclidean => (r2 - s * s - rho * rho, 2.0 * rho * s),
            _ => {
                let sg = self.sigma();
                (r2 * (1.0 + rho * rho * s * s) - s * s - rho * rho, 2.0 * rho * s * (1.0 - sg * r2))
            }
        };
        if den == 0.0 {
            return if num > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        num / den
    }

    // values of s where cos_bound crosses +-1
    fn breakpoints(self, rho: f64, big_r: f64) -> Vec<f64> {
        let r2 = big_r * big_r;
        let mut out = Vec::new();
        match self {
            Metric::Euclidean => {
                out.push((big_r - rho).abs());
                out.push(big_r + rho);
            }
            _ => {
                let sg = self.sigma();
                let a = r2 * rho * rho - 1.0;
                let c = r2 - rho * rho;
                for sign in [1.0, -1.0] {
                    let b = -sign * 2.0 * rho * (1.0 - sg * r2);
                    if a.abs() < 1e-300 {
                        if b != 0.0 {
                            out.push(-c / b);
                        }
                        continue;
                    }
                    let disc = b * b - 4.0 * a * c;
                    if disc >= 0.0 {
                        let q = disc.sqrt();
                        out.push((-b + q) / (2.0 * a));
                        out.push((-b - q) / (2.0 * a));
                    }
                }
            }
        }
        out.retain(|s| s.is_finite() && *s > 0.0);
        out
    }
}

/// Geometry of a pair-correlation estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSetup {
    pub metric: Metric,
    /// Both points of a pair lie in `|z| < region`.
    pub region: f64,
    /// Separation bin edges in the chosen metric.
    pub edges: Vec<f64>,
}

impl PairSetup {
    pub fn new(metric: Metric, region: f64, edges: &[f64]) -> Result<Self> {
        check_edges(edges)?;
        if !(region > 0.0 && region.is_finite()) {
            return Err(Error::InvalidParameter(format!("region radius {region}")));
        }
        if metric != Metric::Euclidean && *edges.last().unwrap() > 1.0 {
            return Err(Error::InvalidParameter("separations of this metric lie in [0, 1]".into()));
        }
        Ok(PairSetup { metric, region, edges: edges.to_vec() })
    }

    pub fn bins(&self) -> usize {
        self.edges.len() - 1
    }

    /// Bin counts of ordered distinct pairs in one sample.
    pub fn pair_counts(&self, ps: &PointSet) -> Result<Vec<f64>> {
        if let Some(w) = ps.window {
            if w < self.region {
                return Err(Error::SupportOutsideWindow);
            }
        }
        let pts: Vec<Complex64> = ps.expanded().into_iter().filter(|z| z.norm() < self.region).collect();
        let mut row = vec![0.0; self.bins()];
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if let Some(b) = bin_index(&self.edges, self.metric.distance(pts[i], pts[j])) {
                    row[b] += 2.0;
                }
            }
        }
        Ok(row)
    }

    /// `int int f(z, w)` over pairs in the region with separation in each bin.
    ///
    /// `f` must be invariant under the joint rotation `(z, w) -> (e^{it} z, e^{it} w)`.
    pub fn pair_integral<F: Fn(Complex64, Complex64) -> f64>(&self, f: F) -> Vec<f64> {
        let big_r = self.region;
        let (tx, tw) = gauss_legendre(24);
        let rho_nodes = composite(0.0, big_r, 12, 16);
        let mut out = vec![0.0; self.bins()];
        for (b, e) in self.edges.windows(2).enumerate() {
            let s0 = self.metric.radius_of(e[0]);
            let s1 = self.metric.radius_of(e[1]);
            let mut total = 0.0;
            for &(rho, wr) in &rho_nodes {
                let mut cuts = vec![s0];
                let mut bp = self.metric.breakpoints(rho, big_r);
                bp.sort_by(f64::total_cmp);
                // beyond the last breakpoint the arc is empty
                let s_hi = bp.iter().copied().filter(|&s| self.metric.cos_bound(rho, s * (1.0 + 1e-9), big_r) < -1.0).fold(f64::INFINITY, f64::min);
                let top = s1.min(s_hi);
                if !(top > s0) {
                    continue;
                }
                cuts.extend(bp.into_iter().filter(|&s| s > s0 && s < top));
                cuts.push(top);
                let mut inner = 0.0;
                for seg in cuts.windows(2) {
                    for (s, ws) in composite(seg[0], seg[1], 4, 16) {
                        let c = self.metric.cos_bound(rho, s, big_r);
                        if c <= -1.0 {
                            continue;
                        }
                        let th0 = if c >= 1.0 { 0.0 } else { c.acos() };
                        // theta over (th0, 2 pi - th0), split at pi
                        let half = PI - th0;
                        let mut arc = 0.0;
                        for (lo, sgn) in [(th0, 1.0), (2.0 * PI - th0, -1.0)] {
                            for (x, w) in tx.iter().zip(&tw) {
                                let th = lo + sgn * 0.5 * half * (x + 1.0);
                                let (wpt, jac) = self.metric.chart(rho, Complex64::from_polar(s, th));
                                arc += 0.5 * half * w * jac * f(Complex64::new(rho, 0.0), wpt);
                            }
                        }
                        inner += ws * s * arc;
                    }
                }
                total += wr * 2.0 * PI * rho * inner;
            }
            out[b] = total;
        }
        out
    }
}

/// Accumulates pair counts over samples.
#[derive(Debug, Clone, PartialEq)]
pub struct PairAccumulator {
    pub setup: PairSetup,
    pub acc: BinAccumulator,
}

impl PairAccumulator {
    pub fn new(setup: PairSetup) -> Self {
        let n = setup.bins();
        PairAccumulator { setup, acc: BinAccumulator::new(n) }
    }

    pub fn add(&mut self, ps: &PointSet) -> Result<()> {
        let row = self.setup.pair_counts(ps)?;
        self.acc.add(&row);
        Ok(())
    }

    pub fn merge(&mut self, other: &PairAccumulator) {
        self.acc.merge(&other.acc);
    }

    /// Bin means divided by a reference pair mass.
    pub fn finish(&self, reference: &[f64]) -> Result<BinnedEstimate> {
        let (mean, se) = self.acc.mean_se()?;
        if reference.iter().any(|r| !(*r > 0.0)) {
            return Err(Error::InvalidParameter("reference pair mass must be positive".into()));
        }
        Ok(BinnedEstimate {
            edges: self.setup.edges.clone(),
            values: mean.iter().zip(reference).map(|(m, r)| m / r).collect(),
            se: se.iter().zip(reference).map(|(s, r)| s / r).collect(),
            samples: self.acc.n,
        })
    }
}

/// Estimate of `rho2 / (rho1 rho1)` averaged over each separation bin.
pub fn estimate_pair_correlation<F>(samples: &[PointSet], setup: &PairSetup, rho1: F) -> Result<BinnedEstimate>
where
    F: Fn(Complex64) -> f64,
{
    let mut acc = PairAccumulator::new(setup.clone());
    for s in samples {
        acc.add(s)?;
    }
    acc.finish(&setup.pair_integral(|z, w| rho1(z) * rho1(w)))
}

/// Bin averages of `rho2 / (rho1 rho1)` from closed forms, weighted as in the estimator.
pub fn predicted_pair_ratio<F, G>(setup: &PairSetup, rho1: F, rho2: G) -> Vec<f64>
where
    F: Fn(Complex64) -> f64,
    G: Fn(Complex64, Complex64) -> f64,
{
    let num = setup.pair_integral(rho2);
    let den = setup.pair_integral(|z, w| rho1(z) * rho1(w));
    num.iter().zip(&den).map(|(a, b)| a / b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::GeneratorSpec;
    use crate::rng::RngStream;
    use rand::Rng;

    #[test]
    fn total_pair_mass() {
        let s = PairSetup::new(Metric::Euclidean, 1.5, &[0.0, 0.5, 1.0, 2.0, 3.0]).unwrap();
        let v = s.pair_integral(|_, _| 1.0);
        let want = (PI * 1.5 * 1.5).powi(2);
        assert!((v.iter().sum::<f64>() - want).abs() < 1e-6 * want, "{v:?} {want}");
    }

    #[test]
    fn uniform_pair_mass_matches_monte_carlo() {
        // bin fractions of two independent uniform points in the region
        let mut rng = RngStream::new(11).rng();
        for (metric, region, edges) in [
            (Metric::Euclidean, 1.0, vec![0.0, 0.3, 0.8, 1.5, 2.0]),
            (Metric::PseudoHyperbolic, 0.6, vec![0.0, 0.2, 0.4, 0.6, 0.8, 0.9]),
            (Metric::Chordal, 2.0, vec![0.0, 0.2, 0.5, 0.7, 0.9]),
        ] {
            let s = PairSetup::new(metric, region, &edges).unwrap();
            let area = PI * region * region;
            let exact: Vec<f64> = s.pair_integral(|_, _| 1.0).iter().map(|v| v / (area * area)).collect();
            let n = 400_000;
            let mut hits = vec![0.0; s.bins()];
            let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
                Complex64::from_polar(region * rng.random::<f64>().sqrt(), 2.0 * PI * rng.random::<f64>())
            };
            for _ in 0..n {
                let z = draw(&mut rng);
                let w = draw(&mut rng);
                if let Some(b) = bin_index(&edges, metric.distance(z, w)) {
                    hits[b] += 1.0;
                }
            }
            for b in 0..s.bins() {
                let p = hits[b] / n as f64;
                let se = (p * (1.0 - p) / n as f64).sqrt();
                assert!((p - exact[b]).abs() < 4.0 * se + 1e-6, "{metric:?} bin {b}: {p} vs {}", exact[b]);
            }
        }
    }

    #[test]
    fn poisson_control_is_flat() {
        let g = GeneratorSpec::Poisson { intensity: 10.0, window: 1.0 }.prepare().unwrap();
        let root = RngStream::new(3);
        let samples: Vec<PointSet> = (0..2000).map(|i| g.sample(&root.split(i)).unwrap()).collect();
        let setup = PairSetup::new(Metric::Euclidean, 1.0, &[0.0, 0.25, 0.5, 1.0, 1.5]).unwrap();
        let est = estimate_pair_correlation(&samples, &setup, |_| 10.0).unwrap();
        assert!(est.max_z(&[1.0; 4]) < 3.5, "{est:?}");
    }

    #[test]
    fn ginibre_bulk_profile() {
        let n = 30;
        let g = GeneratorSpec::Ginibre { n }.prepare().unwrap();
        let root = RngStream::new(21);
        let samples: Vec<PointSet> = (0..3000).map(|i| g.sample(&root.split(i)).unwrap()).collect();
        let setup = PairSetup::new(Metric::Euclidean, 2.5, &[0.0, 0.4, 0.8, 1.2, 1.6, 2.4]).unwrap();
        let kern = |z: Complex64, w: Complex64| {
            let x = z * w.conj();
            let mut term = Complex64::new(1.0, 0.0);
            let mut s = term;
            for k in 1..n {
                term *= x / k as f64;
                s += term;
            }
            s * (-(z.norm_sqr() + w.norm_sqr()) / 2.0).exp() / PI
        };
        let rho1 = |z: Complex64| kern(z, z).re;
        let want = predicted_pair_ratio(&setup, rho1, |z, w| rho1(z) * rho1(w) - kern(z, w).norm_sqr());
        let est = estimate_pair_correlation(&samples, &setup, rho1).unwrap();
        assert!(est.max_z(&want) < 3.5, "{est:?} {want:?}");
        // bulk: close to the bin average of 1 - exp(-s^2)
        assert!(want[0] < 0.1 && want[4] > 0.95, "{want:?}");
    }
}
