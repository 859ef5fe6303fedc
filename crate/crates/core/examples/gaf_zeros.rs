//! Sample a planar GAF, extract its zeros in a disk and check the mean count.

use gafzeros::gaf::{count_zeros, expected_count_in_disk, sample_gaf, zeros_in_disk, GafSpec, ZeroOptions};
use gafzeros::rng::RngStream;

fn main() -> gafzeros::Result<()> {
    let spec = GafSpec::plane(1.0);
    let root = RngStream::new(2024);
    let r = 2.0;

    let s = sample_gaf(&spec, &root.split(0), r, 1e-9)?;
    println!("degree {} tail bound {:.2e} at confidence {}", s.coeffs.len() - 1, s.tail_bound, s.confidence);
    let zeros = zeros_in_disk(&s, r, &ZeroOptions::default())?;
    for p in &zeros.points {
        println!("  z = {:+.6} {:+.6}i  (multiplicity {})", p.z.re, p.z.im, p.multiplicity);
    }
    println!("argument-principle count {}", count_zeros(&s, r)?);

    let m = 2000;
    let mut total = 0usize;
    for i in 1..=m {
        total += count_zeros(&sample_gaf(&spec, &root.split(i), r, 1e-9)?, r)?;
    }
    println!("mean count in |z| < {r}: {:.3} (expected {:.3})", total as f64 / m as f64, expected_count_in_disk(&spec, r));
    Ok(())
}
