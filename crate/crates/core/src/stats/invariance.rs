//! Two-sample tests of isometry invariance for counts in regions.

use serde::{Deserialize, Serialize};

use super::hypothesis::{ks_two_sample, KsResult};
use super::{run_blocks, Parallel};
use crate::error::{Error, Result};
use crate::gaf::MobiusMap;
use crate::generator::Generator;
use crate::points::{count_in_region, ExtPoint, Region, Shape};
use crate::rng::RngStream;
use crate::Complex64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionVerdict {
    pub region: Shape,
    pub ks: KsResult,
    pub mean_in_region: f64,
    pub mean_in_image: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub generator: String,
    pub map: MobiusMap,
    pub samples: usize,
    pub alpha: f64,
    /// Per-region level after the Bonferroni correction.
    pub level: f64,
    pub regions: Vec<RegionVerdict>,
    pub pass: bool,
}

/// Points of `phi(D)`: those whose preimage lies in `D`.
struct Image<'a> {
    inv: MobiusMap,
    region: &'a Shape,
}

impl Region for Image<'_> {
    fn contains(&self, z: Complex64) -> bool {
        self.region.contains_ext(self.inv.apply_ext(ExtPoint::Finite(z)))
    }
    fn contains_infinity(&self) -> bool {
        self.region.contains_ext(self.inv.apply_ext(ExtPoint::Infinity))
    }
}

fn boundary(region: &Shape) -> Vec<Complex64> {
    let circle = |c: Complex64, r: f64| (0..720).map(move |k| c + Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / 720.0));
    match *region {
        Shape::Disk { center, radius } | Shape::Exterior { center, radius } => circle(Complex64::new(center[0], center[1]), radius).collect(),
        Shape::Annulus { inner, outer } => circle(Complex64::new(0.0, 0.0), inner).chain(circle(Complex64::new(0.0, 0.0), outer)).collect(),
    }
}

// both the region and its image must lie inside the certified window
fn check_window(region: &Shape, map: &MobiusMap, window: Option<f64>) -> Result<()> {
    let Some(w) = window else { return Ok(()) };
    if matches!(region, Shape::Exterior { .. }) {
        return Err(Error::SupportOutsideWindow);
    }
    let inv = map.inverse();
    if let ExtPoint::Finite(p) = inv.apply_ext(ExtPoint::Infinity) {
        if region.contains(p) {
            return Err(Error::SupportOutsideWindow);
        }
    }
    let b = boundary(region);
    let r0 = b.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let r1 = b.iter().map(|z| map.apply(*z).norm()).fold(0.0, f64::max);
    if r0.max(r1) * (1.0 + 1e-3) > w {
        return Err(Error::SupportOutsideWindow);
    }
    Ok(())
}

/// For each region `D`, a two-sample KS test between counts in `D` and counts in `phi(D)`, taken
/// from the same replications. Regions are tested at `alpha / regions.len()`.
pub fn invariance_test(
    g: &Generator,
    map: &MobiusMap,
    regions: &[Shape],
    stream: &RngStream,
    samples: usize,
    alpha: f64,
    par: Parallel,
) -> Result<InvarianceReport> {
    if map.domain != g.domain() {
        return Err(Error::InvalidParameter(format!(
            "map acts on the {} but the generator lives on the {}",
            map.domain.name(),
            g.domain().name()
        )));
    }
    if regions.is_empty() {
        return Err(Error::InvalidParameter("no regions".into()));
    }
    for r in regions {
        check_window(r, map, g.window())?;
    }
    let inv = map.inverse();
    let k = regions.len();
    let blocks = run_blocks(stream, samples, par, Vec::new, |acc: &mut Vec<(Vec<f64>, Vec<f64>)>, _, s| {
        let ps = g.sample(s)?;
        let x = regions.iter().map(|r| count_in_region(&ps, r) as f64).collect();
        let y = regions.iter().map(|r| count_in_region(&ps, &Image { inv, region: r }) as f64).collect();
        acc.push((x, y));
        Ok(())
    })?;
    let rows: Vec<(Vec<f64>, Vec<f64>)> = blocks.into_iter().flatten().collect();
    let level = alpha / k as f64;
    let mut verdicts = Vec::with_capacity(k);
    for (j, region) in regions.iter().enumerate() {
        let x: Vec<f64> = rows.iter().map(|r| r.0[j]).collect();
        let y: Vec<f64> = rows.iter().map(|r| r.1[j]).collect();
        let ks = ks_two_sample(&x, &y)?;
        let n = samples as f64;
        verdicts.push(RegionVerdict {
            region: *region,
            ks,
            mean_in_region: x.iter().sum::<f64>() / n,
            mean_in_image: y.iter().sum::<f64>() / n,
            pass: ks.p_value >= level,
        });
    }
    let pass = verdicts.iter().all(|v| v.pass);
    Ok(InvarianceReport { generator: g.spec.id(), map: *map, samples, alpha, level, regions: verdicts, pass })
}
