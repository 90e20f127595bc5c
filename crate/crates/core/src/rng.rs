//! Counter-based random streams.
//!
//! Every random draw in an experiment is keyed by `(seed, stream, trial)`, so
//! trial `i` can be regenerated without replaying trials `0..i` and every
//! method sees the same channel regardless of which other methods ran.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent purposes that consume randomness within one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Channel,
    HillClimbInit,
    Evolution,
}

impl Stream {
    fn tag(self) -> u64 {
        match self {
            Stream::Channel => 0x43_48_41_4e,
            Stream::HillClimbInit => 0x48_43_49_4e,
            Stream::Evolution => 0x45_56_4f_4c,
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Random stream for `trial` of the experiment seeded with `seed`.
pub fn trial_rng(seed: u64, stream: Stream, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(stream.tag())));
    rng.set_stream(trial);
    rng
}
