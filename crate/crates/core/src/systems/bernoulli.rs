use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::frac::Frac128;

/// Source of the raw binary digits `r_0, r_1, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BitSource {
    /// ChaCha8 keystream; raw bit `j` is bit `63 - j % 64` of word `j / 64`.
    Seeded(u64),
    /// `r_j = pattern[j % len]`.
    Periodic(Vec<bool>),
}

/// A point of the one-sided Bernoulli shift, `x = 0.b_1 b_2 b_3 ...` with
/// `b_i = r_{offset + i - 1}`.
///
/// The doubling map `x -> 2x mod 1` acts as `offset -> offset + 1`, so orbits
/// are read off the bitstream without any arithmetic loss.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BernoulliState {
    pub source: BitSource,
    pub offset: u64,
}

impl BernoulliState {
    pub fn seeded(seed: u64) -> Self {
        BernoulliState {
            source: BitSource::Seeded(seed),
            offset: 0,
        }
    }

    pub fn periodic(pattern: Vec<bool>) -> Self {
        assert!(!pattern.is_empty(), "empty bit pattern");
        BernoulliState {
            source: BitSource::Periodic(pattern),
            offset: 0,
        }
    }

    pub fn shift(&self) -> Self {
        BernoulliState {
            source: self.source.clone(),
            offset: self.offset + 1,
        }
    }

    /// Binary digit `b_i`, `i >= 1`.
    pub fn bit(&self, i: u64) -> bool {
        assert!(i >= 1, "binary digits are indexed from 1");
        self.raw_bits(self.offset + i - 1).next().expect("infinite stream")
    }

    fn raw_bits(&self, start: u64) -> RawBits {
        RawBits::new(&self.source, start)
    }

    /// `x` truncated to its first `precision` digits.
    pub fn point(&self, precision: u32) -> Frac128 {
        self.points(precision).next().expect("infinite orbit")
    }

    /// The orbit `x, 2x, 4x, ... (mod 1)`, each point truncated to
    /// `precision <= 128` digits.
    pub fn points(&self, precision: u32) -> DoublingPoints {
        assert!((1..=128).contains(&precision), "precision must be in 1..=128");
        let mut bits = self.raw_bits(self.offset);
        let mut window = 0u128;
        for _ in 0..128 {
            window = (window << 1) | bits.next().expect("infinite stream") as u128;
        }
        DoublingPoints {
            bits,
            window,
            precision,
        }
    }
}

struct RawBits {
    kind: RawKind,
    pos: u64,
}

enum RawKind {
    Seeded { rng: ChaCha8Rng, word: u64, index: u64 },
    Periodic(Vec<bool>),
}

impl RawBits {
    fn new(source: &BitSource, start: u64) -> Self {
        let kind = match source {
            BitSource::Seeded(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                // Each u64 consumes two 32-bit keystream words.
                rng.set_word_pos(2 * (start / 64) as u128);
                let word = rng.next_u64();
                RawKind::Seeded {
                    rng,
                    word,
                    index: start / 64,
                }
            }
            BitSource::Periodic(p) => RawKind::Periodic(p.clone()),
        };
        RawBits { kind, pos: start }
    }
}

impl Iterator for RawBits {
    type Item = bool;

    fn next(&mut self) -> Option<bool> {
        let bit = match &mut self.kind {
            RawKind::Seeded { rng, word, index } => {
                if self.pos / 64 != *index {
                    *word = rng.next_u64();
                    *index += 1;
                }
                (*word >> (63 - self.pos % 64)) & 1 == 1
            }
            RawKind::Periodic(p) => p[(self.pos % p.len() as u64) as usize],
        };
        self.pos += 1;
        Some(bit)
    }
}

/// Iterator over doubling-map orbit points, see [`BernoulliState::points`].
pub struct DoublingPoints {
    bits: RawBits,
    window: u128,
    precision: u32,
}

impl Iterator for DoublingPoints {
    type Item = Frac128;

    fn next(&mut self) -> Option<Frac128> {
        let x = Frac128(self.window).truncate(self.precision);
        self.window = (self.window << 1) | self.bits.next().expect("infinite stream") as u128;
        Some(x)
    }
}
