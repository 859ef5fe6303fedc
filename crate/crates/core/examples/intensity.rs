//! Binned zero intensity for the three GAF families against the closed forms.

use gafzeros::generator::GeneratorSpec;
use gafzeros::points::DomainTag;
use gafzeros::rng::RngStream;
use gafzeros::stats::intensity::{intensity_profile, IntensityAccumulator};
use gafzeros::stats::{run_blocks, Parallel};

fn main() -> gafzeros::Result<()> {
    let cases = [
        (DomainTag::Plane, vec![0.0, 0.5, 1.0, 1.5, 2.0]),
        (DomainTag::Sphere, vec![0.0, 0.5, 1.0, 2.0, 4.0]),
        (DomainTag::Disk, vec![0.0, 0.3, 0.5, 0.7, 0.8]),
    ];
    for (domain, edges) in cases {
        let spec = GeneratorSpec::Gaf { domain, l: 2.0, window: Some(*edges.last().unwrap()), eps: 1e-9 };
        let g = spec.prepare()?;
        let blocks = run_blocks(&RngStream::new(1), 2000, Parallel::default(), || IntensityAccumulator::new(&edges).unwrap(), |acc, _, s| {
            acc.add(&g.sample(s)?)
        })?;
        let mut acc = IntensityAccumulator::new(&edges)?;
        blocks.iter().for_each(|b| acc.merge(b));
        let est = acc.finish()?;
        let want = intensity_profile(&spec, &edges)?;
        println!("{} (L = 2), max |z-score| {:.2}", domain.name(), est.max_z(&want));
        for i in 0..est.bins() {
            println!("  [{:.1}, {:.1})  {:.4} +- {:.4}   closed form {:.4}", edges[i], edges[i + 1], est.values[i], est.se[i], want[i]);
        }
    }
    Ok(())
}
