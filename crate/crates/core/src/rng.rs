//! Small deterministic PRNG for parameter sampling and verification batteries.
//!
//! SplitMix64 is enough here: samples only seed generic-position parameters
//! and test points, never statistics. Keeping it local makes every battery
//! bit-reproducible across platforms.

use crate::C64;

#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Complex uniform in the box [re_lo, re_hi) + i [im_lo, im_hi).
    pub fn complex_box(&mut self, re_lo: f64, re_hi: f64, im_lo: f64, im_hi: f64) -> C64 {
        C64::new(self.range(re_lo, re_hi), self.range(im_lo, im_hi))
    }

    /// Default sampling box for spectral parameters and boundary data:
    /// [-0.4, 0.4] + i [-0.2, 0.2].
    pub fn generic_point(&mut self) -> C64 {
        self.complex_box(-0.4, 0.4, -0.2, 0.2)
    }
}
