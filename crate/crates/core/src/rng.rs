//! Seeded linear-congruential generator shared by every sampler.
//!
//! `state ← state · 6364136223846793005 + 1442695040888963407 (mod 2^64)`;
//! a coefficient is `((state >> 33) mod 7) − 3`, uniform on `[−3, 3]` up to
//! the negligible modulo bias.

use crate::linalg::scalar::int;
use crate::linalg::Scalar;

const MUL: u64 = 6364136223846793005;
const INC: u64 = 1442695040888963407;

#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        let mut g = Lcg { state: seed };
        g.next_u64();
        g
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MUL).wrapping_add(INC);
        self.state
    }

    /// Integer in `[-3, 3]`.
    pub fn coeff_i64(&mut self) -> i64 {
        ((self.next_u64() >> 33) % 7) as i64 - 3
    }

    pub fn coeff(&mut self) -> Scalar {
        int(self.coeff_i64())
    }

    pub fn vector(&mut self, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| self.coeff()).collect()
    }

    /// Uniform index below `n` (`n > 0`).
    pub fn below(&mut self, n: usize) -> usize {
        ((self.next_u64() >> 33) % n as u64) as usize
    }
}
