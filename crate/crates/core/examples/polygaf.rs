//! Polygaf zeros: `det` of a 2x2 matrix of independent disk GAFs has twice the base intensity,
//! and `det(z A - B)` gives a rank-n process on the sphere.

use gafzeros::generator::{GeneratorSpec, QSpec};
use gafzeros::points::DomainTag;
use gafzeros::rng::RngStream;
use gafzeros::stats::{replicate, Parallel};

fn mean_count(spec: &GeneratorSpec, r: f64, m: usize) -> gafzeros::Result<f64> {
    let g = spec.prepare()?;
    let counts = replicate(&RngStream::new(5), m, Parallel::default(), |_, s| g.count_in_disk(s, r))?;
    Ok(counts.iter().sum::<usize>() as f64 / m as f64)
}

fn main() -> gafzeros::Result<()> {
    let r = 0.6;
    let base = GeneratorSpec::Gaf { domain: DomainTag::Disk, l: 1.0, window: Some(r), eps: 1e-9 };
    let det2 = GeneratorSpec::Polygaf { q: QSpec::Det { n: 2 }, domain: DomainTag::Disk, l: 1.0, window: Some(r), eps: 1e-9 };
    let (b, d) = (mean_count(&base, r, 4000)?, mean_count(&det2, r, 4000)?);
    println!("disk, |z| < {r}: base {b:.3} (exact {:.3}), det2 {d:.3} (exact {:.3})", base.expected_count(0.0, r)?, det2.expected_count(0.0, r)?);

    let pencil = GeneratorSpec::DetPencil { n: 4 };
    for r in [0.5, 1.0, 2.0] {
        println!("pencil n = 4, |z| < {r}: {:.3} (exact {:.3})", mean_count(&pencil, r, 4000)?, 4.0 * r * r / (1.0 + r * r));
    }
    Ok(())
}
