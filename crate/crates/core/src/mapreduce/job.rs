use bitvec::prelude::*;
use num_integer::Integer;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arrays::{compute_stats, CodedArray};

pub type Bits = BitVec<u8, Msb0>;

/// Simulation parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    /// `N`, number of input files.
    pub files: usize,
    /// `Q`, number of output functions.
    pub functions: usize,
    /// `t`, bits per intermediate value.
    pub iv_bits: usize,
    pub seed: u64,
}

impl JobSpec {
    /// Files per batch, `η1 = N / F`.
    pub fn files_per_batch(&self, batches: usize) -> Option<usize> {
        (batches > 0 && self.files.is_multiple_of(batches)).then(|| self.files / batches)
    }

    /// Functions per reducer, `η2 = Q / K`.
    pub fn functions_per_reducer(&self, reducers: usize) -> Option<usize> {
        (reducers > 0 && self.functions.is_multiple_of(reducers)).then(|| self.functions / reducers)
    }
}

/// Smallest multiple `t` of `t_base` such that every `g_s - 1` divides
/// `η1·η2·t`.
pub fn choose_iv_bits(array: &CodedArray, t_base: usize, eta1: usize, eta2: usize) -> usize {
    let base = eta1 * eta2 * t_base.max(1);
    let c = compute_stats(array)
        .multiplicity_histogram
        .keys()
        .filter(|&&g| g >= 2)
        .map(|&g| (g - 1) / (g - 1).gcd(&base))
        .fold(1usize, |acc, x| acc.lcm(&x));
    t_base.max(1) * c
}

/// Intermediate value `v_{q,n}`: the first `t` bits of a ChaCha8 keystream
/// keyed by the job seed, on stream `(q << 32) | n`.
pub fn intermediate_value(seed: u64, q: usize, n: usize, t: usize) -> Bits {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((q as u64) << 32) | n as u64);
    let mut bytes = vec![0u8; t.div_ceil(8)];
    rng.fill_bytes(&mut bytes);
    let mut bits = Bits::from_vec(bytes);
    bits.truncate(t);
    bits
}

/// All `Q x N` intermediate values, computed once.
pub(crate) struct IvTable {
    files: usize,
    bits: usize,
    data: Bits,
}

impl IvTable {
    pub(crate) fn new(spec: &JobSpec) -> Self {
        let mut data = Bits::with_capacity(spec.functions * spec.files * spec.iv_bits);
        for q in 0..spec.functions {
            for n in 0..spec.files {
                data.extend_from_bitslice(&intermediate_value(spec.seed, q, n, spec.iv_bits));
            }
        }
        IvTable {
            files: spec.files,
            bits: spec.iv_bits,
            data,
        }
    }

    pub(crate) fn get(&self, q: usize, n: usize) -> &BitSlice<u8, Msb0> {
        let start = (q * self.files + n) * self.bits;
        &self.data[start..start + self.bits]
    }
}
