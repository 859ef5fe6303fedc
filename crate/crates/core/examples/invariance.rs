//! Counts in a region and in its image under an isometry have the same law.

use gafzeros::gaf::MobiusMap;
use gafzeros::generator::GeneratorSpec;
use gafzeros::points::{DomainTag, Shape};
use gafzeros::rng::RngStream;
use gafzeros::stats::invariance::invariance_test;
use gafzeros::stats::Parallel;
use gafzeros::Complex64;

fn main() -> gafzeros::Result<()> {
    let origin = Complex64::new(0.0, 0.0);
    let cases = [
        (
            GeneratorSpec::Gaf { domain: DomainTag::Plane, l: 1.0, window: Some(2.6), eps: 1e-9 },
            MobiusMap::plane(0.7, Complex64::new(1.0, 0.0)),
            Shape::disk(origin, 1.0),
        ),
        (GeneratorSpec::DetPencil { n: 4 }, MobiusMap::sphere(0.6, 0.3, 0.0), Shape::Exterior { center: [0.0, 0.0], radius: 1.5 }),
        (
            GeneratorSpec::Gaf { domain: DomainTag::Disk, l: 2.0, window: Some(0.85), eps: 1e-9 },
            MobiusMap::disk(0.5, 1.0, 0.2),
            Shape::disk(origin, 0.4),
        ),
    ];
    for (spec, map, region) in cases {
        let g = spec.prepare()?;
        let r = invariance_test(&g, &map, &[region], &RngStream::new(41), 3000, 0.01, Parallel::default())?;
        let v = &r.regions[0];
        println!("{}: mean count {:.3} vs image {:.3}, KS p = {:.3} -> {}", spec.id(), v.mean_in_region, v.mean_in_image, v.ks.p_value, if r.pass { "pass" } else { "fail" });
    }
    Ok(())
}
