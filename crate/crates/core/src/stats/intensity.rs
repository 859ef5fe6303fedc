//! Radial intensity profiles.

use std::f64::consts::PI;

use super::{bin_index, check_edges, BinAccumulator, BinnedEstimate};
use crate::error::{Error, Result};
use crate::generator::GeneratorSpec;
use crate::points::PointSet;

/// Accumulates per-annulus counts of finite points.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityAccumulator {
    pub edges: Vec<f64>,
    pub acc: BinAccumulator,
}

impl IntensityAccumulator {
    pub fn new(edges: &[f64]) -> Result<Self> {
        check_edges(edges)?;
        Ok(IntensityAccumulator { edges: edges.to_vec(), acc: BinAccumulator::new(edges.len() - 1) })
    }

    pub fn add(&mut self, ps: &PointSet) -> Result<()> {
        let outer = *self.edges.last().unwrap();
        if let Some(w) = ps.window {
            if w < outer {
                return Err(Error::SupportOutsideWindow);
            }
        }
        let mut row = vec![0.0; self.edges.len() - 1];
        for p in &ps.points {
            if let Some(b) = bin_index(&self.edges, p.z.norm()) {
                row[b] += p.multiplicity as f64;
            }
        }
        self.acc.add(&row);
        Ok(())
    }

    pub fn merge(&mut self, other: &IntensityAccumulator) {
        self.acc.merge(&other.acc);
    }

    pub fn finish(&self) -> Result<BinnedEstimate> {
        let (mean, se) = self.acc.mean_se()?;
        let areas = annulus_areas(&self.edges);
        Ok(BinnedEstimate {
            edges: self.edges.clone(),
            values: mean.iter().zip(&areas).map(|(m, a)| m / a).collect(),
            se: se.iter().zip(&areas).map(|(s, a)| s / a).collect(),
            samples: self.acc.n,
        })
    }
}

pub fn annulus_areas(edges: &[f64]) -> Vec<f64> {
    edges.windows(2).map(|w| PI * (w[1] * w[1] - w[0] * w[0])).collect()
}

/// Mean count per unit area in each annulus `edges[i] <= |z| < edges[i+1]`.
pub fn estimate_intensity(samples: &[PointSet], edges: &[f64]) -> Result<BinnedEstimate> {
    if samples.is_empty() {
        return Err(Error::TooFewSamples("no samples".into()));
    }
    let domain = samples[0].domain;
    if samples.iter().any(|s| s.domain != domain) {
        return Err(Error::InvalidParameter("samples from different domains".into()));
    }
    let mut acc = IntensityAccumulator::new(edges)?;
    for s in samples {
        acc.add(s)?;
    }
    acc.finish()
}

/// Annulus averages of the closed-form intensity.
pub fn intensity_profile(g: &GeneratorSpec, edges: &[f64]) -> Result<Vec<f64>> {
    check_edges(edges)?;
    edges
        .windows(2)
        .zip(annulus_areas(edges))
        .map(|(w, a)| Ok(g.expected_count(w[0], w[1])? / a))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::DomainTag;
    use crate::Complex64;

    #[test]
    fn deterministic_origin() {
        let ps = PointSet::from_simple(DomainTag::Plane, None, &[Complex64::new(0.0, 0.0)]).unwrap();
        let est = estimate_intensity(&[ps.clone(), ps], &[0.0, 1.0]).unwrap();
        assert_eq!(est.values, vec![1.0 / PI]);
        assert_eq!(est.se, vec![0.0]);
        assert!(estimate_intensity(&[], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn window_checked() {
        let ps = PointSet::new(DomainTag::Plane, Some(1.0));
        assert!(estimate_intensity(&[ps.clone(), ps], &[0.0, 2.0]).is_err());
    }

    #[test]
    fn profile_of_flat_intensity() {
        let g = GeneratorSpec::Gaf { domain: DomainTag::Plane, l: 2.0, window: Some(2.0), eps: 1e-9 };
        for v in intensity_profile(&g, &[0.0, 0.5, 1.0, 2.0]).unwrap() {
            assert!((v - 2.0 / PI).abs() < 1e-12);
        }
    }
}
