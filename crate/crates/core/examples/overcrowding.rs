//! Overcrowding probabilities `P[n(r) >= m]` with Wilson intervals.

use gafzeros::generator::GeneratorSpec;
use gafzeros::points::DomainTag;
use gafzeros::rng::RngStream;
use gafzeros::stats::deviation::{deviation_slope_experiment, overcrowding_curve};
use gafzeros::stats::Parallel;

fn main() -> gafzeros::Result<()> {
    let plane = GeneratorSpec::Gaf { domain: DomainTag::Plane, l: 1.0, window: Some(1.0), eps: 1e-9 }.prepare()?;
    let c = overcrowding_curve(&plane, 1.0, 5, &RngStream::new(31), 200_000, Parallel::default())?;
    println!("planar GAF, n(1):");
    for p in &c.points {
        println!("  P[n >= {}] = {:.3e}  [{:.3e}, {:.3e}]  events {}{}", p.m, p.estimate, p.lower, p.upper, p.events, if p.resolved { "" } else { "  (unresolved)" });
    }
    let gin = GeneratorSpec::Ginibre { n: 20 }.prepare()?;
    let c = overcrowding_curve(&gin, 1.5, 6, &RngStream::new(32), 20_000, Parallel::default())?;
    println!("Ginibre n = 20 in |z| < 1.5: TV to the exact law {:.4}", c.tv_to_exact.unwrap());

    let wide = GeneratorSpec::Gaf { domain: DomainTag::Plane, l: 1.0, window: Some(2.0), eps: 1e-9 }.prepare()?;
    let t = deviation_slope_experiment(&wide, &[1.0, 1.5, 2.0], 1.0, 1.0, &RngStream::new(33), 20_000, Parallel::default())?;
    for row in &t.rows {
        println!("P[n({}) >= {}] = {:.4}", row.r, row.threshold, row.tail.estimate);
    }
    println!("monotone in r: {}", t.monotone());
    Ok(())
}
