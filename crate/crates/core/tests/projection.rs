//! The projection sampler against independent constructions of the same processes.

use gafzeros::generator::GeneratorSpec;
use gafzeros::points::{count_in_region, DomainTag, Shape};
use gafzeros::rng::RngStream;
use gafzeros::stats::hypothesis::ks_two_sample;
use gafzeros::stats::{replicate, Parallel};
use gafzeros::Complex64;

fn counts(spec: &GeneratorSpec, region: &Shape, seed: u64, m: usize) -> Vec<f64> {
    let g = spec.prepare().unwrap();
    replicate(&RngStream::new(seed), m, Parallel::default(), |_, s| Ok(count_in_region(&g.sample(s)?, region) as f64)).unwrap()
}

#[test]
fn sphere_projection_matches_pencil() {
    for (n, r) in [(2usize, 1.0), (5, 0.7), (5, 2.0)] {
        let d = Shape::disk(Complex64::new(0.3, -0.2), r);
        let x = counts(&GeneratorSpec::DetSphere { n }, &d, 1, 5000);
        let y = counts(&GeneratorSpec::DetPencil { n }, &d, 2, 5000);
        let ks = ks_two_sample(&x, &y).unwrap();
        assert!(ks.p_value > 0.001, "n = {n}, r = {r}: {ks:?}");
    }
}

#[test]
fn plane_projection_matches_ginibre_bulk() {
    // n = 40 Ginibre agrees with the infinite process well inside |z| < sqrt(40)
    let region = Shape::disk(Complex64::new(0.5, 0.0), 1.2);
    let x = counts(&GeneratorSpec::DppWindow { domain: DomainTag::Plane, alpha: 1.0, window: 2.0 }, &region, 3, 4000);
    let y = counts(&GeneratorSpec::Ginibre { n: 40 }, &region, 4, 4000);
    let ks = ks_two_sample(&x, &y).unwrap();
    assert!(ks.p_value > 0.001, "{ks:?}");
}

#[test]
fn disk_projection_matches_hyperbolic_gaf() {
    let region = Shape::disk(Complex64::new(0.0, 0.2), 0.5);
    let x = counts(&GeneratorSpec::DppWindow { domain: DomainTag::Disk, alpha: 1.0, window: 0.75 }, &region, 5, 4000);
    let y = counts(&GeneratorSpec::Gaf { domain: DomainTag::Disk, l: 1.0, window: Some(0.75), eps: 1e-9 }, &region, 6, 4000);
    let ks = ks_two_sample(&x, &y).unwrap();
    assert!(ks.p_value > 0.001, "{ks:?}");
}
