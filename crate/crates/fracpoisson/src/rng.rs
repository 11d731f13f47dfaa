//! Reproducible random streams.
//!
//! Each stream is ChaCha8 keyed by a 64-bit seed and positioned on its own
//! 64-bit stream id, so path `i` of a simulation reads stream `i` no matter
//! which worker runs it. Draws are counted; a stream can be reopened at any
//! draw index.

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    draws: u64,
    core: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> RngStream {
        let mut core = ChaCha8Rng::seed_from_u64(seed);
        core.set_stream(stream_id);
        RngStream { seed, stream_id, draws: 0, core }
    }

    /// The stream positioned just before draw number `index`.
    pub fn at_draw(seed: u64, stream_id: u64, index: u64) -> RngStream {
        let mut s = RngStream::new(seed, stream_id);
        // one draw consumes two 32-bit words of the block function
        s.core.set_word_pos(2 * index as u128);
        s.draws = index;
        s
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    pub fn draws(&self) -> u64 {
        self.draws
    }

    pub fn next_u64(&mut self) -> u64 {
        self.draws += 1;
        self.core.next_u64()
    }

    /// Uniform on the open interval (0, 1), 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Unit-mean exponential.
    pub fn exponential(&mut self) -> f64 {
        -self.uniform().ln()
    }
}
