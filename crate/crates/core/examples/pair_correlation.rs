//! Pair correlation of matrix-series zeros against the conjectured determinantal kernel.

use gafzeros::generator::GeneratorSpec;
use gafzeros::rng::RngStream;
use gafzeros::stats::paircorr::{predicted_pair_ratio, Metric, PairAccumulator, PairSetup};
use gafzeros::stats::{run_blocks, Parallel};

fn main() -> gafzeros::Result<()> {
    let spec = GeneratorSpec::MatrixSeries { n: 2, window: 0.6, eps: 1e-9, method: Default::default() };
    let g = spec.prepare()?;
    let setup = PairSetup::new(Metric::PseudoHyperbolic, 0.6, &[0.0, 0.2, 0.3, 0.45, 0.6, 0.9])?;
    let blocks = run_blocks(&RngStream::new(11), 3000, Parallel::default(), || PairAccumulator::new(setup.clone()), |acc, _, s| {
        acc.add(&g.sample(s)?)
    })?;
    let mut acc = PairAccumulator::new(setup.clone());
    blocks.iter().for_each(|b| acc.merge(b));
    let rho1 = |z| spec.intensity(z).unwrap();
    let est = acc.finish(&setup.pair_integral(|z, w| rho1(z) * rho1(w)))?;
    let want = predicted_pair_ratio(&setup, rho1, |z, w| spec.determinantal_two_point(z, w).unwrap());
    println!("n = 2 matrix series, pseudo-hyperbolic separation bins, max |z-score| {:.2}", est.max_z(&want));
    for i in 0..est.bins() {
        println!("  [{:.2}, {:.2})  {:.4} +- {:.4}   kernel {:.4}", est.edges[i], est.edges[i + 1], est.values[i], est.se[i], want[i]);
    }
    Ok(())
}
