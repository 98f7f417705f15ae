//! Platform-independent 64-bit linear congruential generator.
//!
//! `state ← state · 6364136223846793005 + 1442695040888963407 (mod 2^64)`;
//! each draw returns the new state. Uniform doubles take the top 53 bits:
//! `(state >> 11) / 2^53 ∈ [0, 1)`.

pub const MULTIPLIER: u64 = 6364136223846793005;
pub const INCREMENT: u64 = 1442695040888963407;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        self.state
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}
