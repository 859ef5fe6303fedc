//! Wick coefficients of `log|Q|` and the CLT constant `kappa`.

use gafzeros::experiment::ZETA3;
use gafzeros::generator::QSpec;
use gafzeros::rng::RngStream;
use gafzeros::stats::wick::{estimate_wick_coeffs, EULER_GAMMA};
use gafzeros::stats::Parallel;

fn main() -> gafzeros::Result<()> {
    for q in [QSpec::Identity, QSpec::Product { k: 2 }, QSpec::Det { n: 2 }] {
        let c = estimate_wick_coeffs(&q.build()?, &q.id(), 3, &RngStream::new(17), 200_000, 1, Parallel::default())?;
        let (k, se) = c.kappa();
        println!(
            "{:>8}: C00 = {:.4} +- {:.4}, max off-diagonal |C|/se = {:.2}, kappa (order 3) = {:.5} +- {:.5}",
            q.id(),
            c.c00().estimate.re,
            c.c00().se,
            c.max_offdiagonal_z(),
            k,
            se
        );
    }
    println!("zeta: C00 = -gamma/2 = {:.6}, kappa = zeta(3)/(16 pi) = {:.6}", -EULER_GAMMA / 2.0, ZETA3 / (16.0 * std::f64::consts::PI));
    Ok(())
}
