//! Seeded sampling for the verification suites.
//!
//! The generator is ChaCha20 (RFC 7539 block function, 64-bit counter). The
//! 256-bit key is the seed as a little-endian `u64` followed by 24 zero
//! bytes, and each suite reads its own stream. A uniform `f64` is
//! `(next_u64 >> 11) · 2⁻⁵³`, where `next_u64` consumes two consecutive
//! little-endian 32-bit output words.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::clifford::C64;
use crate::spinor::Spinor;

pub struct SuiteRng(ChaCha20Rng);

impl SuiteRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let mut rng = ChaCha20Rng::from_seed(key);
        rng.set_stream(stream);
        SuiteRng(rng)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// `±` a value uniform on `[lo, hi)`.
    pub fn signed_range(&mut self, lo: f64, hi: f64) -> f64 {
        let v = self.range(lo, hi);
        if self.coin() {
            -v
        } else {
            v
        }
    }

    /// Real and imaginary parts uniform on `[−1, 1)`.
    pub fn complex(&mut self) -> C64 {
        let re = self.range(-1.0, 1.0);
        let im = self.range(-1.0, 1.0);
        C64::new(re, im)
    }

    pub fn unit_phase(&mut self) -> C64 {
        C64::from_polar(1.0, self.range(0.0, std::f64::consts::TAU))
    }

    /// Components drawn in order `ψ₁₁, ψ₁₂, ψ₂₁, ψ₂₂` with [`Self::complex`].
    pub fn spinor(&mut self) -> Spinor {
        Spinor::new(std::array::from_fn(|_| self.complex()))
    }
}
