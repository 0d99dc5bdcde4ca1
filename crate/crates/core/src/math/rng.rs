use rand::distr::{Distribution, Uniform};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;

/// Master seed for a run. Equal seeds give bitwise-identical initialization
/// and batch order on every platform (ChaCha is a counter-based stream).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngSeed(pub u64);

impl RngSeed {
    /// Derive an independent named sub-stream, e.g. `seed.derive("init/x")`
    /// or `seed.derive("shuffle/17")`.
    pub fn derive(self, label: &str) -> RngSeed {
        RngSeed(splitmix64(self.0 ^ fnv1a(label.as_bytes())))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Xavier/Glorot uniform init: entries i.i.d. on
/// [-sqrt(6/(rows+cols)), +sqrt(6/(rows+cols))].
pub fn xavier_init(rows: usize, cols: usize, seed: RngSeed) -> Matrix {
    assert!(rows >= 1 && cols >= 1, "xavier_init needs rows, cols >= 1");
    let bound = (6.0 / (rows + cols) as f64).sqrt();
    let dist = Uniform::new_inclusive(-bound, bound).expect("valid uniform bounds");
    let mut rng = seed.rng();
    let data = (0..rows * cols).map(|_| dist.sample(&mut rng)).collect();
    Matrix::from_vec(rows, cols, data)
}

/// A seeded permutation of 0..n (Fisher-Yates).
pub fn shuffled_indices(n: usize, seed: RngSeed) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut seed.rng());
    idx
}
