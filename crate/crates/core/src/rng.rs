//! Counter-based innovation streams.
//!
//! Trajectory `i` under master seed `m` reads ChaCha8 keyed by `m` on stream
//! `i`; step `n` consumes exactly one 64-bit word at word position `2n`. Any
//! step can therefore be regenerated without replaying the trajectory, and
//! results do not depend on how trajectories are scheduled.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::open_unit;
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrajectorySeed {
    pub master: u64,
    pub index: u64,
}

impl TrajectorySeed {
    pub fn new(master: u64, index: u64) -> Self {
        Self { master, index }
    }
}

#[derive(Debug, Clone)]
pub struct UniformStream {
    rng: ChaCha8Rng,
}

impl UniformStream {
    pub fn new(seed: TrajectorySeed) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.master);
        rng.set_stream(seed.index);
        Self { rng }
    }

    /// Stream positioned so the next draw is the one used at `step` (0-based).
    pub fn at_step(seed: TrajectorySeed, step: u64) -> Self {
        let mut s = Self::new(seed);
        s.rng.set_word_pos(2 * step as u128);
        s
    }

    #[inline]
    pub fn next_bits(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Next uniform in the open interval (0, 1).
    #[inline]
    pub fn next_uniform<T: Real>(&mut self) -> T {
        open_unit(self.rng.next_u64())
    }
}
