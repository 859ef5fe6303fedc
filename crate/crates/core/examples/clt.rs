//! Variance of smooth linear statistics of planar GAF zeros as `L` grows.

use gafzeros::experiment::ZETA3;
use gafzeros::generator::QSpec;
use gafzeros::points::DomainTag;
use gafzeros::rng::RngStream;
use gafzeros::stats::clt::{clt_experiment, Bump};
use gafzeros::stats::Parallel;

fn main() -> gafzeros::Result<()> {
    let bump = Bump::cubic(0.75);
    let kappa = (ZETA3 / (16.0 * std::f64::consts::PI), 0.0);
    let r = clt_experiment(QSpec::Identity, DomainTag::Plane, &[10.0, 20.0, 40.0], &bump, kappa, &RngStream::new(21), 3000, Parallel::default())?;
    println!("bump {:?}, ||Delta* phi||^2 = {:.4}", r.bump, r.norm_sq);
    for row in &r.rows {
        println!(
            "L = {:>4}: mean {:.3} (exact {:.3}), Var*L = {:.4} +- {:.4}, asymptote {:.4}, skew {:+.3}, excess kurtosis {:+.3}",
            row.l,
            row.moments.mean,
            row.expected_mean,
            row.variance_times_l,
            row.moments.variance_se * row.l,
            row.predicted_variance * row.l,
            row.moments.skewness,
            row.moments.excess_kurtosis
        );
    }
    println!("successive Var*L ratios {:?}", r.ratios);
    Ok(())
}
