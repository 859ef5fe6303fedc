//! Addressable random streams.
//!
//! A stream is a root seed plus a path of child indices. Each path maps to an
//! independent ChaCha8 key, so a replication can be regenerated from its
//! address alone, whatever the sharding.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub path: Vec<u64>,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream {
            seed,
            path: Vec::new(),
        }
    }

    /// Child stream with the given index.
    pub fn split(&self, index: u64) -> Self {
        let mut path = self.path.clone();
        path.push(index);
        RngStream {
            seed: self.seed,
            path,
        }
    }

    fn key(&self) -> [u8; 32] {
        let mut h = splitmix(self.seed ^ 0x6A09_E667_F3BC_C908);
        for (depth, &p) in self.path.iter().enumerate() {
            h = splitmix(h ^ splitmix(p.wrapping_add((depth as u64 + 1) << 56)));
        }
        let mut key = [0u8; 32];
        let mut s = h;
        for chunk in key.chunks_mut(8) {
            s = splitmix(s);
            chunk.copy_from_slice(&s.to_le_bytes());
        }
        key
    }

    /// Generator positioned at the start of this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::from_seed(self.key())
    }
}

/// `split_stream(s, i)` as a free function.
pub fn split_stream(s: &RngStream, index: u64) -> RngStream {
    s.split(index)
}

/// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let x: f64 = rng.sample(StandardNormal);
    let y: f64 = rng.sample(StandardNormal);
    Complex64::new(x, y) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn sample_complex_gaussian(s: &RngStream, count: usize) -> Vec<Complex64> {
    let mut rng = s.rng();
    (0..count).map(|_| complex_gaussian(&mut rng)).collect()
}

/// Uniform on (0, 1], never zero.
pub fn open_uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    1.0 - rng.random::<f64>()
}
