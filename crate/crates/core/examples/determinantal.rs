//! Determinantal processes: Ginibre radii, the projection sampler on the sphere and the
//! exact count law of hyperbolic GAF zeros.

use gafzeros::dpp::{count_distribution_exact, RadialLaw};
use gafzeros::generator::GeneratorSpec;
use gafzeros::points::DomainTag;
use gafzeros::rng::RngStream;
use gafzeros::stats::deviation::overcrowding_curve;
use gafzeros::stats::{replicate, Parallel};

fn main() -> gafzeros::Result<()> {
    let gin = GeneratorSpec::Ginibre { n: 20 }.prepare()?;
    let sets = replicate(&RngStream::new(3), 2000, Parallel::default(), |_, s| gin.sample(s))?;
    for t in [0.5, 1.0, 2.0, 4.0] {
        let mean = sets.iter().map(|ps| ps.points.iter().filter(|p| p.z.norm_sqr() < t).count()).sum::<usize>() as f64 / sets.len() as f64;
        let exact = gin.spec.expected_count(0.0, t.sqrt())?;
        println!("Ginibre n = 20, |z|^2 < {t}: {mean:.3} (exact {exact:.3})");
    }

    let sphere = GeneratorSpec::DetSphere { n: 5 }.prepare()?;
    let ps = sphere.sample(&RngStream::new(4))?;
    println!("projection sample on the sphere: {} points", ps.total());

    let law = RadialLaw::HyperbolicOne;
    let exact = count_distribution_exact(&law, 0.5)?;
    let hyper = GeneratorSpec::Gaf { domain: DomainTag::Disk, l: 1.0, window: Some(0.5), eps: 1e-9 }.prepare()?;
    let curve = overcrowding_curve(&hyper, 0.5, 4, &RngStream::new(8), 20_000, Parallel::default())?;
    println!("hyperbolic L = 1 zeros in |z| < 0.5: TV to exact law {:.4}", curve.tv_to_exact.unwrap());
    for (k, p) in exact.iter().take(4).enumerate() {
        println!("  P[n = {k}] exact {p:.5}  empirical {:.5}", curve.empirical_pmf().get(k).copied().unwrap_or(0.0));
    }
    Ok(())
}
