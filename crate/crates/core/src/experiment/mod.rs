//! Declarative experiments: TOML configs, dispatch, reports and output files.

pub mod emit;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaf::MobiusMap;
use crate::generator::{GeneratorSpec, QSpec};
use crate::points::{DomainTag, PointSet, Shape};
use crate::rng::RngStream;
use crate::stats::clt::{clt_experiment, Bump};
use crate::stats::deviation::{deviation_slope_experiment, overcrowding_curve};
use crate::stats::intensity::{intensity_profile, IntensityAccumulator};
use crate::stats::invariance::invariance_test;
use crate::stats::paircorr::{predicted_pair_ratio, Metric as PairMetric, PairAccumulator, PairSetup};
use crate::stats::wick::{estimate_wick_coeffs, EULER_GAMMA};
use crate::stats::{replicate, run_blocks, BinnedEstimate, Parallel};
use emit::{emit_points, Format};

/// Apery's constant.
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

fn default_shards() -> usize {
    1
}
fn default_z() -> f64 {
    3.0
}
fn default_formats() -> Vec<Format> {
    vec![Format::Csv, Format::Jsonl]
}
fn default_phases() -> usize {
    1
}
fn default_alpha() -> f64 {
    0.01
}
fn default_tv() -> f64 {
    0.02
}
fn default_ratio_range() -> [f64; 2] {
    [0.8, 1.25]
}
fn default_skew() -> f64 {
    0.1
}
fn default_kurtosis() -> f64 {
    0.25
}
fn default_kappa_order() -> u32 {
    4
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub seed: u64,
    #[serde(default = "default_shards")]
    pub shards: usize,
    /// Number of replications `M`.
    pub samples: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
    pub experiment: Experiment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Experiment {
    Sample {
        #[serde(default = "default_formats")]
        formats: Vec<Format>,
    },
    Intensity {
        edges: Vec<f64>,
        #[serde(default = "default_z")]
        z_tol: f64,
    },
    Paircorr {
        metric: PairMetric,
        region: f64,
        edges: Vec<f64>,
        #[serde(default = "default_z")]
        z_tol: f64,
    },
    Wick {
        q: QSpec,
        order: u32,
        #[serde(default = "default_phases")]
        phases: usize,
        #[serde(default = "default_z")]
        z_tol: f64,
    },
    Clt {
        q: QSpec,
        domain: DomainTag,
        #[serde(rename = "L")]
        ls: Vec<f64>,
        bump: Bump,
        #[serde(default = "default_ratio_range")]
        ratio_range: [f64; 2],
        #[serde(default = "default_skew")]
        skew_tol: f64,
        #[serde(default = "default_kurtosis")]
        kurtosis_tol: f64,
        /// Wick order used to estimate `kappa` when `q` is not the identity.
        #[serde(default = "default_kappa_order")]
        kappa_order: u32,
    },
    Overcrowd {
        r: f64,
        m_max: usize,
        #[serde(default = "default_tv")]
        tv_tol: f64,
        #[serde(default = "default_z")]
        z_tol: f64,
        /// Inclusive range of `m` over which `-log P[n >= m]` must be increasing and convex.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        convex: Option<[usize; 2]>,
    },
    Invariance {
        map: MobiusMap,
        regions: Vec<Shape>,
        #[serde(default = "default_alpha")]
        alpha: f64,
    },
    DeviationSlope {
        rs: Vec<f64>,
        alpha: f64,
        gamma: f64,
    },
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Sample { .. } => "sample",
            Experiment::Intensity { .. } => "intensity",
            Experiment::Paircorr { .. } => "paircorr",
            Experiment::Wick { .. } => "wick",
            Experiment::Clt { .. } => "clt",
            Experiment::Overcrowd { .. } => "overcrowd",
            Experiment::Invariance { .. } => "invariance",
            Experiment::DeviationSlope { .. } => "deviation-slope",
        }
    }

    fn needs_generator(&self) -> bool {
        !matches!(self, Experiment::Wick { .. } | Experiment::Clt { .. })
    }
}

fn config_error(path: &str, message: impl Into<String>) -> Error {
    Error::Config { path: path.to_string(), message: message.into() }
}

fn check_positive(path: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(config_error(path, format!("must be positive and finite, got {x}")))
    }
}

fn check_increasing(path: &str, xs: &[f64], min_len: usize) -> Result<()> {
    if xs.len() < min_len {
        return Err(config_error(path, format!("needs at least {min_len} values")));
    }
    if xs.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(config_error(path, "values must be finite and non-negative"));
    }
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(config_error(path, "values must be strictly increasing"));
    }
    Ok(())
}

/// Parse a TOML config; errors carry the path of the offending field.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let de = toml::Deserializer::parse(text).map_err(|e| config_error("", e.to_string()))?;
    let cfg: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        config_error(if path == "." { "" } else { &path }, e.into_inner().to_string())
    })?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

impl ExperimentConfig {
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < 1 {
            return Err(config_error("samples", "must be at least 1"));
        }
        if self.shards < 1 {
            return Err(config_error("shards", "must be at least 1"));
        }
        let stats_kind = !matches!(self.experiment, Experiment::Sample { .. });
        if stats_kind && self.samples < 2 {
            return Err(config_error("samples", "statistical experiments need at least 2 replications"));
        }
        let gen = match (&self.generator, self.experiment.needs_generator()) {
            (Some(g), _) => {
                g.prepare().map_err(|e| config_error("generator", e.to_string()))?;
                Some(g)
            }
            (None, true) => return Err(config_error("generator", format!("required by `{}`", self.experiment.name()))),
            (None, false) => None,
        };
        let window = gen.and_then(|g| g.window());
        let within = |path: &str, r: f64| -> Result<()> {
            match window {
                Some(w) if r > w => Err(config_error(path, format!("{r} exceeds the generator window {w}"))),
                _ => Ok(()),
            }
        };
        match &self.experiment {
            Experiment::Sample { formats } => {
                if formats.is_empty() {
                    return Err(config_error("experiment.formats", "at least one format"));
                }
            }
            Experiment::Intensity { edges, z_tol } => {
                check_increasing("experiment.edges", edges, 2)?;
                within("experiment.edges", *edges.last().unwrap())?;
                check_positive("experiment.z_tol", *z_tol)?;
            }
            Experiment::Paircorr { region, edges, z_tol, .. } => {
                check_positive("experiment.region", *region)?;
                within("experiment.region", *region)?;
                check_increasing("experiment.edges", edges, 2)?;
                check_positive("experiment.z_tol", *z_tol)?;
            }
            Experiment::Wick { q, phases, z_tol, .. } => {
                q.build().map_err(|e| config_error("experiment.q", e.to_string()))?;
                if *phases < 1 {
                    return Err(config_error("experiment.phases", "must be at least 1"));
                }
                check_positive("experiment.z_tol", *z_tol)?;
            }
            Experiment::Clt { q, ls, bump, ratio_range, skew_tol, kurtosis_tol, .. } => {
                q.build().map_err(|e| config_error("experiment.q", e.to_string()))?;
                check_increasing("experiment.L", ls, 1)?;
                if ls[0] <= 0.0 {
                    return Err(config_error("experiment.L", "values must be positive"));
                }
                bump.validate().map_err(|e| config_error("experiment.bump", e.to_string()))?;
                if !(ratio_range[0] < ratio_range[1]) {
                    return Err(config_error("experiment.ratio_range", "need lower < upper"));
                }
                check_positive("experiment.skew_tol", *skew_tol)?;
                check_positive("experiment.kurtosis_tol", *kurtosis_tol)?;
            }
            Experiment::Overcrowd { r, tv_tol, z_tol, convex, .. } => {
                check_positive("experiment.r", *r)?;
                within("experiment.r", *r)?;
                check_positive("experiment.tv_tol", *tv_tol)?;
                check_positive("experiment.z_tol", *z_tol)?;
                if let (Some([a, b]), Experiment::Overcrowd { m_max, .. }) = (convex, &self.experiment) {
                    if a + 2 > *b || b > m_max {
                        return Err(config_error("experiment.convex", "need a + 2 <= b <= m_max"));
                    }
                }
            }
            Experiment::Invariance { map, regions, alpha } => {
                MobiusMap::new(map.domain, map.a, map.b).map_err(|e| config_error("experiment.map", e.to_string()))?;
                if let Some(g) = gen {
                    if g.domain() != map.domain {
                        return Err(config_error("experiment.map.domain", "must match the generator domain"));
                    }
                }
                if regions.is_empty() {
                    return Err(config_error("experiment.regions", "at least one region"));
                }
                if !(*alpha > 0.0 && *alpha < 1.0) {
                    return Err(config_error("experiment.alpha", "must lie in (0, 1)"));
                }
            }
            Experiment::DeviationSlope { rs, alpha, .. } => {
                check_increasing("experiment.rs", rs, 1)?;
                check_positive("experiment.rs", rs[0])?;
                within("experiment.rs", *rs.last().unwrap())?;
                check_positive("experiment.alpha", *alpha)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// No pass/fail criterion attached.
    None,
}

impl Verdict {
    fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricResult {
    pub name: String,
    pub estimate: f64,
    pub se: Option<f64>,
    pub reference: Option<f64>,
    pub tolerance: Option<String>,
    pub verdict: Verdict,
}

impl MetricResult {
    fn info(name: impl Into<String>, estimate: f64, se: Option<f64>) -> Self {
        MetricResult { name: name.into(), estimate, se, reference: None, tolerance: None, verdict: Verdict::None }
    }

    fn z_check(name: impl Into<String>, estimate: f64, se: f64, reference: f64, z_tol: f64) -> Self {
        MetricResult {
            name: name.into(),
            estimate,
            se: Some(se),
            reference: Some(reference),
            tolerance: Some(format!("|estimate - reference| <= {z_tol} se")),
            verdict: Verdict::of((estimate - reference).abs() <= z_tol * se),
        }
    }

    fn bound(name: impl Into<String>, estimate: f64, se: Option<f64>, tolerance: String, ok: bool) -> Self {
        MetricResult { name: name.into(), estimate, se, reference: None, tolerance: Some(tolerance), verdict: Verdict::of(ok) }
    }
}

/// How replications map to random streams and shards.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShardSeed {
    pub shard: usize,
    pub seed: u64,
    /// Replication `i` always uses the stream at path `[i]` under `seed`, whatever the shard.
    pub first_block: usize,
    pub block_stride: usize,
    pub block_size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: ExperimentConfig,
    pub verdict: Verdict,
    pub metrics: Vec<MetricResult>,
    pub details: serde_json::Value,
    pub shards: Vec<ShardSeed>,
    pub wall_clock_seconds: f64,
}

impl Report {
    /// The report without wall-clock time; identical across reruns with the same config.
    pub fn deterministic_json(&self) -> Result<String> {
        let mut v = serde_json::to_value(self).map_err(|e| Error::Io(e.to_string()))?;
        if let Some(o) = v.as_object_mut() {
            o.remove("wall_clock_seconds");
        }
        serde_json::to_string_pretty(&v).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn metric(&self, name: &str) -> Option<&MetricResult> {
        self.metrics.iter().find(|m| m.name == name)
    }
}

fn to_value<T: Serialize>(x: &T) -> Result<serde_json::Value> {
    serde_json::to_value(x).map_err(|e| Error::Io(e.to_string()))
}

fn bin_name(prefix: &str, edges: &[f64], i: usize) -> String {
    format!("{prefix}[{},{})", edges[i], edges[i + 1])
}

fn binned_metrics(prefix: &str, est: &BinnedEstimate, reference: Option<&[f64]>, z_tol: f64) -> Vec<MetricResult> {
    (0..est.bins())
        .map(|i| {
            let name = bin_name(prefix, &est.edges, i);
            match reference {
                Some(r) => MetricResult::z_check(name, est.values[i], est.se[i], r[i], z_tol),
                None => MetricResult::info(name, est.values[i], Some(est.se[i])),
            }
        })
        .collect()
}

struct Outcome {
    metrics: Vec<MetricResult>,
    details: serde_json::Value,
    points: Option<(Vec<PointSet>, Vec<Format>)>,
}

/// Run an experiment and, when `out` is set, write `report.json`, `metrics.json` and any point files.
pub fn run(cfg: &ExperimentConfig) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let stream = RngStream::new(cfg.seed);
    let par = Parallel::with_shards(cfg.shards);
    let outcome = dispatch(cfg, &stream, par)?;
    let verdict = if outcome.metrics.iter().any(|m| m.verdict == Verdict::Fail) {
        Verdict::Fail
    } else if outcome.metrics.iter().any(|m| m.verdict == Verdict::Pass) {
        Verdict::Pass
    } else {
        Verdict::None
    };
    let shards = (0..par.shards)
        .map(|s| ShardSeed { shard: s, seed: cfg.seed, first_block: s, block_stride: par.shards, block_size: par.block })
        .collect();
    let report = Report {
        config: cfg.clone(),
        verdict,
        metrics: outcome.metrics,
        details: outcome.details,
        shards,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    };
    if let Some(out) = &cfg.out {
        write_outputs(out, &report, outcome.points.as_ref())?;
    }
    Ok(report)
}

fn write_outputs(out: &Path, report: &Report, points: Option<&(Vec<PointSet>, Vec<Format>)>) -> Result<()> {
    fs::create_dir_all(out).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    let write = |name: &str, body: String| -> Result<()> {
        let p = out.join(name);
        fs::write(&p, body + "\n").map_err(|e| Error::Io(format!("{}: {e}", p.display())))
    };
    write("report.json", report.to_json()?)?;
    write("metrics.json", report.deterministic_json()?)?;
    if let Some((sets, formats)) = points {
        for f in formats {
            emit_points(sets, &out.join(f.file_name()), *f)?;
        }
    }
    Ok(())
}

fn dispatch(cfg: &ExperimentConfig, stream: &RngStream, par: Parallel) -> Result<Outcome> {
    let m = cfg.samples;
    let spec = cfg.generator.as_ref();
    let prepared = match spec {
        Some(s) if cfg.experiment.needs_generator() => Some(s.prepare()?),
        _ => None,
    };
    let g = || prepared.as_ref().expect("validated");
    match &cfg.experiment {
        Experiment::Sample { formats } => {
            let gen = g();
            let sets = replicate(stream, m, par, |_, s| gen.sample(s))?;
            let counts: Vec<f64> = sets.iter().map(|p| p.total() as f64).collect();
            let mo = crate::stats::Moments::from_slice(&counts).ok();
            let metrics = vec![MetricResult::info("points_per_sample", counts.iter().sum::<f64>() / m as f64, mo.map(|x| x.se))];
            Ok(Outcome { metrics, details: serde_json::Value::Null, points: Some((sets, formats.clone())) })
        }
        Experiment::Intensity { edges, z_tol } => {
            let gen = g();
            let init = || IntensityAccumulator::new(edges).expect("validated edges");
            let blocks = run_blocks(stream, m, par, init, |acc, _, s| acc.add(&gen.sample(s)?))?;
            let mut acc = init();
            for b in &blocks {
                acc.merge(b);
            }
            let est = acc.finish()?;
            let reference = intensity_profile(&gen.spec, edges)?;
            let metrics = binned_metrics("intensity", &est, Some(&reference), *z_tol);
            let details = serde_json::json!({ "estimate": to_value(&est)?, "reference": reference });
            Ok(Outcome { metrics, details, points: None })
        }
        Experiment::Paircorr { metric, region, edges, z_tol } => {
            let gen = g();
            let setup = PairSetup::new(*metric, *region, edges)?;
            let init = || PairAccumulator::new(setup.clone());
            let blocks = run_blocks(stream, m, par, init, |acc, _, s| acc.add(&gen.sample(s)?))?;
            let mut acc = init();
            for b in &blocks {
                acc.merge(b);
            }
            let sp = &gen.spec;
            let rho1 = |z| sp.intensity(z).unwrap_or(0.0);
            let est = acc.finish(&setup.pair_integral(|z, w| rho1(z) * rho1(w)))?;
            let zero = crate::Complex64::new(0.0, 0.0);
            let predicted = sp
                .determinantal_two_point(zero, zero)
                .map(|_| predicted_pair_ratio(&setup, rho1, |z, w| sp.determinantal_two_point(z, w).unwrap_or(0.0)));
            let metrics = binned_metrics("pair_ratio", &est, predicted.as_deref(), *z_tol);
            let details = serde_json::json!({ "estimate": to_value(&est)?, "predicted": predicted });
            Ok(Outcome { metrics, details, points: None })
        }
        Experiment::Wick { q, order, phases, z_tol } => {
            let poly = q.build()?;
            let c = estimate_wick_coeffs(&poly, &q.id(), *order, stream, m, *phases, par)?;
            let mut metrics = vec![MetricResult::bound(
                "max_offdiagonal_z",
                c.max_offdiagonal_z(),
                None,
                format!("|C_mn| <= {z_tol} se whenever |m| != |n|"),
                c.max_offdiagonal_z() <= *z_tol,
            )];
            let c00 = c.c00();
            let (kappa, kappa_se) = c.kappa();
            if *q == QSpec::Identity {
                metrics.push(MetricResult::z_check("C00", c00.estimate.re, c00.se, -EULER_GAMMA / 2.0, *z_tol));
                let truncated: f64 = (1..=*order).map(|p| 1.0 / (16.0 * std::f64::consts::PI * (p as f64).powi(3))).sum();
                metrics.push(MetricResult::z_check("kappa_truncated", kappa, kappa_se, truncated, *z_tol));
            } else {
                metrics.push(MetricResult::info("C00", c00.estimate.re, Some(c00.se)));
                metrics.push(MetricResult::info("kappa_truncated", kappa, Some(kappa_se)));
            }
            Ok(Outcome { metrics, details: to_value(&c)?, points: None })
        }
        Experiment::Clt { q, domain, ls, bump, ratio_range, skew_tol, kurtosis_tol, kappa_order } => {
            let kappa = if *q == QSpec::Identity {
                (ZETA3 / (16.0 * std::f64::consts::PI), 0.0)
            } else {
                // the last substream after the L rows
                let c = estimate_wick_coeffs(&q.build()?, &q.id(), *kappa_order, &stream.split(ls.len() as u64), m, 1, par)?;
                c.kappa()
            };
            let r = clt_experiment(*q, *domain, ls, bump, kappa, stream, m, par)?;
            let mut metrics = Vec::new();
            for row in &r.rows {
                metrics.push(MetricResult {
                    name: format!("var_times_L[{}]", row.l),
                    estimate: row.variance_times_l,
                    se: Some(row.moments.variance_se * row.l),
                    reference: Some(row.predicted_variance * row.l),
                    tolerance: None,
                    verdict: Verdict::None,
                });
            }
            for (w, ratio) in r.rows.windows(2).zip(&r.ratios) {
                metrics.push(MetricResult::bound(
                    format!("var_ratio[{}->{}]", w[0].l, w[1].l),
                    *ratio,
                    None,
                    format!("in [{}, {}]", ratio_range[0], ratio_range[1]),
                    *ratio >= ratio_range[0] && *ratio <= ratio_range[1],
                ));
            }
            let last = r.rows.last().expect("validated");
            let mo = &last.moments;
            metrics.push(MetricResult::bound(format!("skewness[{}]", last.l), mo.skewness, None, format!("|x| < {skew_tol}"), mo.skewness.abs() < *skew_tol));
            metrics.push(MetricResult::bound(
                format!("excess_kurtosis[{}]", last.l),
                mo.excess_kurtosis,
                None,
                format!("|x| < {kurtosis_tol}"),
                mo.excess_kurtosis.abs() < *kurtosis_tol,
            ));
            Ok(Outcome { metrics, details: to_value(&r)?, points: None })
        }
        Experiment::Overcrowd { r, m_max, tv_tol, z_tol, convex } => {
            let c = overcrowding_curve(g(), *r, *m_max, stream, m, par)?;
            let mut metrics = Vec::new();
            if let Some(tv) = c.tv_to_exact {
                metrics.push(MetricResult::bound("tv_to_exact", tv, None, format!("< {tv_tol}"), tv < *tv_tol));
            }
            for p in &c.points {
                let name = format!("P[n>={}]", p.m);
                metrics.push(match p.exact {
                    Some(e) => {
                        let se = (e * (1.0 - e) / m as f64).sqrt();
                        MetricResult::z_check(name, p.estimate, se, e, *z_tol)
                    }
                    None => MetricResult::info(name, p.estimate, Some((p.estimate * (1.0 - p.estimate) / m as f64).sqrt())),
                });
            }
            if let Some([a, b]) = convex {
                let tol = format!("-log P strictly increasing and convex, each P resolved by >= {} events", crate::stats::deviation::RESOLUTION_EVENTS);
                let ok = c.neg_log_increasing_convex(*a..=*b).unwrap_or(false);
                metrics.push(MetricResult::bound(format!("neg_log_convex[{a}..{b}]"), ok as u8 as f64, None, tol, ok));
            }
            Ok(Outcome { metrics, details: to_value(&c)?, points: None })
        }
        Experiment::Invariance { map, regions, alpha } => {
            let map = MobiusMap::new(map.domain, map.a, map.b)?;
            let rep = invariance_test(g(), &map, regions, stream, m, *alpha, par)?;
            let metrics = rep
                .regions
                .iter()
                .enumerate()
                .map(|(i, v)| MetricResult::bound(format!("ks_p_value[{i}]"), v.ks.p_value, None, format!(">= {}", rep.level), v.pass))
                .collect();
            Ok(Outcome { metrics, details: to_value(&rep)?, points: None })
        }
        Experiment::DeviationSlope { rs, alpha, gamma } => {
            let t = deviation_slope_experiment(g(), rs, *alpha, *gamma, stream, m, par)?;
            let mut metrics: Vec<MetricResult> = t
                .rows
                .iter()
                .map(|row| MetricResult::info(format!("P[n({})>={}]", row.r, row.threshold), row.tail.estimate, None))
                .collect();
            metrics.push(MetricResult::bound("monotone_in_r", t.monotone() as u8 as f64, None, "resolved tail probabilities non-increasing in r".into(), t.monotone()));
            Ok(Outcome { metrics, details: to_value(&t)?, points: None })
        }
    }
}
