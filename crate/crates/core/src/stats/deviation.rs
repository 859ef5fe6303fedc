//! Overcrowding probabilities and deviation tables.

use serde::{Deserialize, Serialize};

use super::hypothesis::{total_variation, wilson_interval};
use super::{run_blocks, Parallel};
use crate::dpp::count_distribution_exact;
use crate::error::{Error, Result};
use crate::gaf::{count_zeros, evaluate, TruncatedSeries};
use crate::generator::Generator;
use crate::rng::RngStream;
use crate::Complex64;

/// Minimum number of observed events for a tail probability to count as resolved.
pub const RESOLUTION_EVENTS: u64 = 30;
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailPoint {
    pub m: usize,
    /// Number of samples with `n(r) >= m`.
    pub events: u64,
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
    /// False when fewer than `RESOLUTION_EVENTS` events were seen; then only `upper` is meaningful.
    pub resolved: bool,
    pub exact: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationCurve {
    pub generator: String,
    pub r: f64,
    pub samples: usize,
    /// `histogram[k]` = number of samples with exactly `k` points.
    pub histogram: Vec<u64>,
    pub points: Vec<TailPoint>,
    pub exact_pmf: Option<Vec<f64>>,
    pub tv_to_exact: Option<f64>,
}

impl DeviationCurve {
    pub fn empirical_pmf(&self) -> Vec<f64> {
        self.histogram.iter().map(|&c| c as f64 / self.samples as f64).collect()
    }

    pub fn point(&self, m: usize) -> Option<&TailPoint> {
        self.points.iter().find(|p| p.m == m)
    }

    /// Whether `-log P[n >= m]` is strictly increasing and strictly convex over `ms` (consecutive).
    pub fn neg_log_increasing_convex(&self, ms: std::ops::RangeInclusive<usize>) -> Result<bool> {
        let mut v = Vec::new();
        for m in ms {
            let p = self.point(m).ok_or_else(|| Error::InvalidParameter(format!("m = {m} not estimated")))?;
            if !p.resolved {
                return Err(Error::TooFewSamples(format!(
                    "P[n >= {m}] unresolved: {} events in {} samples, upper bound {:.3e}",
                    p.events, self.samples, p.upper
                )));
            }
            v.push(-p.estimate.ln());
        }
        let inc = v.windows(2).all(|w| w[1] > w[0]);
        let convex = v.windows(3).all(|w| w[2] - 2.0 * w[1] + w[0] > 0.0);
        Ok(inc && convex)
    }
}

/// Histogram of the number of points in `|z| <= r` over replications.
pub fn count_histogram(g: &Generator, r: f64, stream: &RngStream, samples: usize, par: Parallel) -> Result<Vec<u64>> {
    let blocks = run_blocks(stream, samples, par, Vec::<u64>::new, |h, _, s| {
        let c = g.count_in_disk(s, r)?;
        if h.len() <= c {
            h.resize(c + 1, 0);
        }
        h[c] += 1;
        Ok(())
    })?;
    let mut h: Vec<u64> = Vec::new();
    for b in blocks {
        if h.len() < b.len() {
            h.resize(b.len(), 0);
        }
        for (k, c) in b.into_iter().enumerate() {
            h[k] += c;
        }
    }
    Ok(h)
}

/// Monte Carlo `P[n(r) >= m]` for `m = 0..=m_max` with Wilson intervals, plus the exact law when known.
pub fn overcrowding_curve(
    g: &Generator,
    r: f64,
    m_max: usize,
    stream: &RngStream,
    samples: usize,
    par: Parallel,
) -> Result<DeviationCurve> {
    if samples < 2 {
        return Err(Error::TooFewSamples(format!("{samples}")));
    }
    let histogram = count_histogram(g, r, stream, samples, par)?;
    let exact_pmf = match g.spec.radial_law() {
        Some(law) => Some(count_distribution_exact(&law, r)?),
        None => None,
    };
    let mut points = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        let events: u64 = histogram.iter().skip(m).sum();
        let (lower, upper) = wilson_interval(events, samples as u64, Z95);
        let exact = exact_pmf.as_ref().map(|p| p.iter().skip(m).sum::<f64>().max(0.0));
        points.push(TailPoint {
            m,
            events,
            estimate: events as f64 / samples as f64,
            lower,
            upper,
            resolved: events >= RESOLUTION_EVENTS,
            exact,
        });
    }
    let curve_pmf: Vec<f64> = histogram.iter().map(|&c| c as f64 / samples as f64).collect();
    let tv_to_exact = exact_pmf.as_ref().map(|p| total_variation(&curve_pmf, p));
    Ok(DeviationCurve { generator: g.spec.id(), r, samples, histogram, points, exact_pmf, tv_to_exact })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeRow {
    pub r: f64,
    pub expected_count: f64,
    /// The event is `n(r) >= threshold`.
    pub threshold: usize,
    pub tail: TailPoint,
    /// `log(-log P) / log r` when resolved.
    pub loglog_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeTable {
    pub alpha: f64,
    pub gamma: f64,
    pub rows: Vec<SlopeRow>,
    /// `d log(-log P) / d log r` between consecutive resolved rows.
    pub slopes: Vec<Option<f64>>,
}

impl SlopeTable {
    /// Resolved probabilities are non-increasing in `r` beyond their confidence intervals.
    pub fn monotone(&self) -> bool {
        self.rows.windows(2).all(|w| !(w[0].tail.resolved && w[1].tail.resolved) || w[1].tail.lower <= w[0].tail.upper)
            && self.rows.windows(2).all(|w| !(w[0].tail.resolved && w[1].tail.resolved) || w[1].tail.estimate <= w[0].tail.estimate)
    }
}

/// `P[n(r) >= E n(r) + gamma r^alpha]` over radii; row `j` uses `stream.split(j)`.
pub fn deviation_slope_experiment(
    g: &Generator,
    rs: &[f64],
    alpha: f64,
    gamma: f64,
    stream: &RngStream,
    samples: usize,
    par: Parallel,
) -> Result<SlopeTable> {
    let mut rows = Vec::new();
    for (j, &r) in rs.iter().enumerate() {
        let mean = g.spec.expected_count(0.0, r)?;
        let threshold = (mean + gamma * r.powf(alpha) - 1e-12).ceil().max(0.0) as usize;
        let curve = overcrowding_curve(g, r, threshold, &stream.split(j as u64), samples, par)?;
        let tail = curve.points[threshold].clone();
        let loglog_ratio = if tail.resolved && tail.estimate < 1.0 && r != 1.0 {
            Some((-tail.estimate.ln()).ln() / r.ln())
        } else {
            None
        };
        rows.push(SlopeRow { r, expected_count: mean, threshold, tail, loglog_ratio });
    }
    let slopes = rows
        .windows(2)
        .map(|w| {
            if w[0].tail.resolved && w[1].tail.resolved && w[0].tail.estimate < 1.0 && w[1].tail.estimate < 1.0 {
                let a = (-w[0].tail.estimate.ln()).ln();
                let b = (-w[1].tail.estimate.ln()).ln();
                Some((b - a) / (w[1].r.ln() - w[0].r.ln()))
            } else {
                None
            }
        })
        .collect();
    Ok(SlopeTable { alpha, gamma, rows, slopes })
}

/// Jensen gap `mean log|f| on |z|=R - mean on |z|=r - n(r) log(R/r)`, which is non-negative.
///
/// Circle means use a `points`-point trapezoid rule.
pub fn jensen_gap(s: &TruncatedSeries, r: f64, big_r: f64, points: usize) -> Result<f64> {
    if !(0.0 < r && r < big_r) {
        return Err(Error::InvalidParameter("need 0 < r < R".into()));
    }
    let mean_log = |rho: f64| -> Result<f64> {
        let mut acc = 0.0;
        for k in 0..points {
            let z = Complex64::from_polar(rho, 2.0 * std::f64::consts::PI * k as f64 / points as f64);
            acc += evaluate(s, z)?.norm().ln();
        }
        Ok(acc / points as f64)
    };
    let n = count_zeros(s, r)? as f64;
    Ok(mean_log(big_r)? - mean_log(r)? - n * (big_r / r).ln())
}
