//! Reproducible random streams.
//!
//! Every random decision draws from a stream keyed by
//! `(seed, generation, purpose, task index)`. Parallel workers therefore see
//! the same numbers as a sequential loop, and a run resumed from a checkpoint
//! only needs the seed and the generation counter to continue identically.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    Init = 1,
    Measure = 2,
    Sample = 3,
    Mutate = 4,
    Select = 5,
    Breed = 6,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn stream(seed: u64, generation: u64, purpose: Purpose, index: u64) -> StreamRng {
    let mut state = seed;
    let mut mix = splitmix64(&mut state);
    for word in [generation, purpose as u64, index] {
        state ^= mix.rotate_left(17) ^ word.wrapping_mul(0xD6E8_FEB8_6659_FD93);
        mix = splitmix64(&mut state);
    }
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}
