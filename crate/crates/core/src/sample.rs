//! Seeded instance generation.
//!
//! Uses a SplitMix64 stream with the `(x >> 11) · 2⁻⁵³` float conversion so
//! that generated instances can be reproduced bit-for-bit from other
//! languages.

use crate::pair::InterlacingPair;
use crate::wronski::NormalizedPair;
use crate::Result;

/// SplitMix64 (Steele, Lea, Flood).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// `2k − 1` strictly increasing reals on `[−k, k]` with gaps of at least
/// `2k / (4(2k − 1))`: sorted uniform draws on the shortened interval, then
/// the `i`-th draw is shifted by `i` gaps.
pub fn interlacing_roots(rng: &mut SplitMix64, k: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(k >= 2, "k must be at least 2");
    let n = 2 * k - 1;
    let length = 2.0 * k as f64;
    let gap = length / (4.0 * n as f64);
    let free = length - (n - 1) as f64 * gap;
    let mut u: Vec<f64> = (0..n).map(|_| rng.uniform(0.0, free)).collect();
    u.sort_by(f64::total_cmp);
    let xs: Vec<f64> = u
        .iter()
        .enumerate()
        .map(|(i, x)| -(k as f64) + x + i as f64 * gap)
        .collect();
    let p = xs.iter().step_by(2).copied().collect();
    let q = xs.iter().skip(1).step_by(2).copied().collect();
    (p, q)
}

/// A random interlacing pair of degree `k` for `seed`.
pub fn random_pair(seed: u64, k: usize) -> Result<InterlacingPair> {
    let mut rng = SplitMix64::new(seed);
    let (p, q) = interlacing_roots(&mut rng, k);
    InterlacingPair::from_roots(&p, &q)
}

/// A random pair in depressed coordinates: the roots are shifted so that the
/// roots of `p` sum to zero.
pub fn random_normalized_pair(seed: u64, k: usize) -> Result<NormalizedPair> {
    let mut rng = SplitMix64::new(seed);
    let (p, q) = interlacing_roots(&mut rng, k);
    let mean = p.iter().sum::<f64>() / k as f64;
    let shift = |v: &[f64]| v.iter().map(|x| x - mean).collect::<Vec<_>>();
    let pair = InterlacingPair::from_roots(&shift(&p), &shift(&q))?;
    NormalizedPair::from_polynomials(pair.p(), pair.q())
}

/// The seeded family used by the verification sweeps: instance `i` has seed
/// `base + i` and degree `lo + i mod (hi − lo + 1)`.
pub fn sweep(base: u64, count: usize, lo: usize, hi: usize) -> Vec<InterlacingPair> {
    (0..count)
        .map(|i| {
            let k = lo + i % (hi - lo + 1);
            random_pair(base + i as u64, k).expect("generator produces interlacing pairs")
        })
        .collect()
}
