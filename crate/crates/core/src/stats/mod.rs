//! Estimators and hypothesis tests for point-process statistics.

pub mod clt;
pub mod deviation;
pub mod hypothesis;
pub mod intensity;
pub mod invariance;
pub mod paircorr;
pub mod quadrature;
pub mod wick;

use serde::{Deserialize, Serialize};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Sample moments of a scalar statistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    /// Standard error of the mean.
    pub se: f64,
    /// Standard error of the variance.
    pub variance_se: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
}

impl Moments {
    pub fn from_slice(x: &[f64]) -> Result<Self> {
        let n = x.len();
        if n < 2 {
            return Err(Error::TooFewSamples(format!("{n} < 2")));
        }
        let nf = n as f64;
        let mean = x.iter().sum::<f64>() / nf;
        let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
        for &v in x {
            let d = v - mean;
            let d2 = d * d;
            m2 += d2;
            m3 += d2 * d;
            m4 += d2 * d2;
        }
        m2 /= nf;
        m3 /= nf;
        m4 /= nf;
        let variance = m2 * nf / (nf - 1.0);
        let (skewness, excess_kurtosis) = if m2 > 0.0 { (m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0) } else { (0.0, 0.0) };
        let variance_se = ((m4 - m2 * m2).max(0.0) / nf).sqrt();
        Ok(Moments { n, mean, variance, se: (variance / nf).sqrt(), variance_se, skewness, excess_kurtosis })
    }
}

/// Binned estimate with standard errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinnedEstimate {
    pub edges: Vec<f64>,
    pub values: Vec<f64>,
    pub se: Vec<f64>,
    pub samples: usize,
}

impl BinnedEstimate {
    pub fn bins(&self) -> usize {
        self.values.len()
    }

    /// Largest `|value - reference| / se` over bins.
    pub fn max_z(&self, reference: &[f64]) -> f64 {
        self.values
            .iter()
            .zip(&self.se)
            .zip(reference)
            .map(|((v, s), r)| if *s > 0.0 { (v - r).abs() / s } else if v == r { 0.0 } else { f64::INFINITY })
            .fold(0.0, f64::max)
    }
}

pub(crate) fn check_edges(edges: &[f64]) -> Result<()> {
    if edges.len() < 2 || edges.windows(2).any(|w| !(w[1] > w[0])) || edges[0] < 0.0 {
        return Err(Error::InvalidParameter("bin edges must be non-negative and increasing".into()));
    }
    Ok(())
}

/// Index of the bin containing `x`, if any.
#[inline]
pub(crate) fn bin_index(edges: &[f64], x: f64) -> Option<usize> {
    if x < edges[0] || x >= edges[edges.len() - 1] {
        return None;
    }
    let i = edges.partition_point(|&e| e <= x);
    Some(i - 1)
}

/// Running per-bin sums and sums of squares over replications.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinAccumulator {
    pub sum: Vec<f64>,
    pub sum_sq: Vec<f64>,
    pub n: usize,
}

impl BinAccumulator {
    pub fn new(bins: usize) -> Self {
        BinAccumulator { sum: vec![0.0; bins], sum_sq: vec![0.0; bins], n: 0 }
    }

    pub fn add(&mut self, row: &[f64]) {
        for (b, &x) in row.iter().enumerate() {
            self.sum[b] += x;
            self.sum_sq[b] += x * x;
        }
        self.n += 1;
    }

    pub fn merge(&mut self, other: &BinAccumulator) {
        for b in 0..self.sum.len() {
            self.sum[b] += other.sum[b];
            self.sum_sq[b] += other.sum_sq[b];
        }
        self.n += other.n;
    }

    /// Per-bin means and standard errors of the mean.
    pub fn mean_se(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        if self.n < 2 {
            return Err(Error::TooFewSamples(format!("{} < 2", self.n)));
        }
        let m = self.n as f64;
        let mut mean = vec![0.0; self.sum.len()];
        let mut se = vec![0.0; self.sum.len()];
        for b in 0..self.sum.len() {
            mean[b] = self.sum[b] / m;
            let var = (self.sum_sq[b] / m - mean[b] * mean[b]).max(0.0) * m / (m - 1.0);
            se[b] = (var / m).sqrt();
        }
        Ok((mean, se))
    }
}

/// Work split for replicated experiments.
///
/// Replication `i` always draws from `stream.split(i)`. Replications are grouped in fixed
/// blocks; `shards` only controls scheduling, so results do not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parallel {
    pub shards: usize,
    pub block: usize,
}

impl Default for Parallel {
    fn default() -> Self {
        Parallel { shards: rayon::current_num_threads().max(1), block: 256 }
    }
}

impl Parallel {
    pub fn serial() -> Self {
        Parallel { shards: 1, block: 256 }
    }

    pub fn with_shards(shards: usize) -> Self {
        Parallel { shards: shards.max(1), ..Default::default() }
    }
}

/// Fold replications `0..count` into one accumulator per block, returned in block order.
pub fn run_blocks<A, I, F>(stream: &RngStream, count: usize, par: Parallel, init: I, fold: F) -> Result<Vec<A>>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, u64, &RngStream) -> Result<()> + Sync,
{
    let block = par.block.max(1);
    let nblocks = count.div_ceil(block);
    let shards = par.shards.max(1).min(nblocks.max(1));
    let per_shard: Vec<Result<Vec<(usize, A)>>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut out = Vec::new();
            let mut b = s;
            while b < nblocks {
                let mut acc = init();
                for i in b * block..((b + 1) * block).min(count) {
                    let sub = stream.split(i as u64);
                    fold(&mut acc, i as u64, &sub).map_err(|e| match e {
                        Error::Sample { .. } => e,
                        e => Error::Sample { index: i as u64, seed: sub.seed, path: sub.path.clone(), source: Box::new(e) },
                    })?;
                }
                out.push((b, acc));
                b += shards;
            }
            Ok(out)
        })
        .collect();
    let mut all: Vec<(usize, A)> = Vec::with_capacity(nblocks);
    for r in per_shard {
        all.extend(r?);
    }
    all.sort_by_key(|(b, _)| *b);
    Ok(all.into_iter().map(|(_, a)| a).collect())
}

/// Per-replication results in replication order.
pub fn replicate<T, F>(stream: &RngStream, count: usize, par: Parallel, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64, &RngStream) -> Result<T> + Sync,
{
    let blocks = run_blocks(stream, count, par, Vec::new, |acc: &mut Vec<T>, i, s| {
        acc.push(f(i, s)?);
        Ok(())
    })?;
    Ok(blocks.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_known() {
        let m = Moments::from_slice(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(m.mean, 2.5);
        assert!((m.variance - 5.0 / 3.0).abs() < 1e-15);
        assert!(m.skewness.abs() < 1e-15);
        assert!((m.excess_kurtosis - (-1.36)).abs() < 1e-12);
        assert!(Moments::from_slice(&[1.0]).is_err());
    }

    #[test]
    fn blocks_independent_of_shards() {
        let s = RngStream::new(5);
        let run = |k| {
            replicate(&s, 1000, Parallel { shards: k, block: 64 }, |i, st| {
                use rand::Rng;
                Ok((i, st.rng().random::<u64>()))
            })
            .unwrap()
        };
        let a = run(1);
        assert_eq!(a, run(4));
        assert_eq!(a, run(16));
        assert!(a.iter().enumerate().all(|(k, (i, _))| k as u64 == *i));
    }

    #[test]
    fn accumulator() {
        let mut a = BinAccumulator::new(1);
        for x in [1.0, 2.0, 3.0] {
            a.add(&[x]);
        }
        let (m, se) = a.mean_se().unwrap();
        assert_eq!(m, vec![2.0]);
        assert!((se[0] - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn binning() {
        let e = [0.0, 1.0, 2.0];
        assert_eq!(bin_index(&e, 0.0), Some(0));
        assert_eq!(bin_index(&e, 1.0), Some(1));
        assert_eq!(bin_index(&e, 2.0), None);
        assert!(check_edges(&[0.0, 0.0]).is_err());
    }
}
