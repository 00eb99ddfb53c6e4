//! Counter-based random numbers (Philox4x32-10) and the Box–Muller normals
//! built on them.
//!
//! A normal variate is a pure function of `(seed, stream, index)`, so paths
//! can be generated in any order and on any number of threads with
//! identical results.

use std::f64::consts::TAU;

const PHILOX_M0: u32 = 0xD251_1F53;
const PHILOX_M1: u32 = 0xCD9E_8D57;
const PHILOX_W0: u32 = 0x9E37_79B9;
const PHILOX_W1: u32 = 0xBB67_AE85;
const PHILOX_ROUNDS: usize = 10;

#[inline]
fn mulhilo(a: u32, b: u32) -> (u32, u32) {
    let p = u64::from(a) * u64::from(b);
    ((p >> 32) as u32, p as u32)
}

/// The Philox4x32 bijection with 10 rounds.
#[inline]
pub fn philox4x32(counter: [u32; 4], key: [u32; 2]) -> [u32; 4] {
    let mut c = counter;
    let mut k = key;
    for round in 0..PHILOX_ROUNDS {
        if round > 0 {
            k[0] = k[0].wrapping_add(PHILOX_W0);
            k[1] = k[1].wrapping_add(PHILOX_W1);
        }
        let (hi0, lo0) = mulhilo(PHILOX_M0, c[0]);
        let (hi1, lo1) = mulhilo(PHILOX_M1, c[2]);
        c = [hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0];
    }
    c
}

/// 128 random bits for block `(stream, index)` under `seed`.
#[inline]
pub fn random_block(seed: u64, stream: u64, index: u64) -> (u64, u64) {
    let out = philox4x32(
        [index as u32, (index >> 32) as u32, stream as u32, (stream >> 32) as u32],
        [seed as u32, (seed >> 32) as u32],
    );
    (
        u64::from(out[0]) | (u64::from(out[1]) << 32),
        u64::from(out[2]) | (u64::from(out[3]) << 32),
    )
}

/// Uniform in `(0, 1]` from the top 53 bits.
#[inline]
fn open_unit(bits: u64) -> f64 {
    ((bits >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform in `[0, 1)` from the top 53 bits.
#[inline]
fn half_open_unit(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Two independent standard normals from block `(stream, pair)`.
#[inline]
pub fn normal_pair(seed: u64, stream: u64, pair: u64) -> (f64, f64) {
    let (a, b) = random_block(seed, stream, pair);
    let radius = (-2.0 * open_unit(a).ln()).sqrt();
    let (sin, cos) = (TAU * half_open_unit(b)).sin_cos();
    (radius * cos, radius * sin)
}

/// The `index`-th standard normal of `stream`; consecutive even/odd indices
/// share one Box–Muller pair.
pub fn normal(seed: u64, stream: u64, index: u64) -> f64 {
    let (z0, z1) = normal_pair(seed, stream, index / 2);
    if index % 2 == 0 {
        z0
    } else {
        z1
    }
}

/// Sequential view of one Philox stream, for auxiliary sampling.
#[derive(Debug, Clone)]
pub struct CounterRng {
    seed: u64,
    stream: u64,
    index: u64,
    buffered: Option<u64>,
}

impl CounterRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self {
            seed,
            stream,
            index: 0,
            buffered: None,
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        if let Some(x) = self.buffered.take() {
            return x;
        }
        let (a, b) = random_block(self.seed, self.stream, self.index);
        self.index += 1;
        self.buffered = Some(b);
        a
    }

    /// Uniform integer in `0..bound` (Lemire's multiply-shift with rejection).
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        loop {
            let m = u128::from(self.next_u64()) * u128::from(bound);
            let low = m as u64;
            if low >= bound.wrapping_neg() % bound {
                return (m >> 64) as u64;
            }
        }
    }
}
