//! Map, shuffle and reduce for the coded scheme induced by an MRA.
//!
//! Cell `(f, k)` holding symbol `s` stands for `U_{W_k, B_f}`: the IVs of
//! reducer `k`'s functions on batch `f`, ordered by function then file. It is
//! split into `g_s - 1` equal packets, one per other column holding `s`
//! (ascending). Reducer `k` broadcasts, for each symbol `s` in its column,
//! the XOR of the packets labelled `k` from every other occurrence of `s`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use bitvec::prelude::*;
use serde::Serialize;

use crate::arrays::{validate_mra, CodedArray};
use crate::metrics::Rational;

use super::job::{intermediate_value, Bits, IvTable, JobSpec};
use super::MapReduceError;

/// One coded multicast.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Message {
    pub sender: usize,
    pub symbol: usize,
    pub payload: Bits,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleTranscript {
    /// Sender ascending, then symbol ascending.
    pub messages: Vec<Message>,
    pub total_bits: usize,
}

impl ShuffleTranscript {
    /// One line per message: `sender symbol length_bits hex`. The payload is
    /// zero-padded to whole bytes before hex encoding.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for m in &self.messages {
            let mut hex = String::new();
            let mut bytes = m.payload.clone();
            bytes.set_uninitialized(false);
            for b in bytes.as_raw_slice() {
                let _ = write!(hex, "{b:02x}");
            }
            let _ = writeln!(out, "{} {} {} {}", m.sender, m.symbol, m.payload.len(), hex);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducerOutcome {
    pub reducer: usize,
    pub success: bool,
    /// IVs of the reducer's functions that match the oracle.
    pub recovered_ivs: usize,
    /// How many of those came out of the shuffle.
    pub decoded_ivs: usize,
    /// `η2 · N`.
    pub expected_ivs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecodeReport {
    pub all_decoded: bool,
    pub message_count: usize,
    pub total_bits: usize,
    /// `Q · N · t`.
    pub normalizer_bits: usize,
    pub measured_load: Rational,
    pub iv_bits: usize,
    pub per_reducer: Vec<ReducerOutcome>,
}

struct Layout<'a> {
    array: &'a CodedArray,
    occurrences: BTreeMap<usize, Vec<(usize, usize)>>,
    /// Columns holding each symbol, ascending.
    columns: BTreeMap<usize, Vec<usize>>,
    eta1: usize,
    eta2: usize,
    t: usize,
    /// `U_{W_v, B_u}` at index `v * F + u`.
    blocks: Vec<Bits>,
}

impl<'a> Layout<'a> {
    fn new(array: &'a CodedArray, spec: &JobSpec, eta1: usize, eta2: usize) -> Self {
        let table = IvTable::new(spec);
        let (f_count, k_count) = (array.rows(), array.cols());
        let mut blocks = Vec::with_capacity(f_count * k_count);
        for v in 0..k_count {
            for u in 0..f_count {
                let mut block = Bits::with_capacity(eta1 * eta2 * spec.iv_bits);
                for q in v * eta2..(v + 1) * eta2 {
                    for n in u * eta1..(u + 1) * eta1 {
                        block.extend_from_bitslice(table.get(q, n));
                    }
                }
                blocks.push(block);
            }
        }
        let occurrences = array.occurrences();
        let columns = occurrences
            .iter()
            .map(|(&s, cells)| {
                let mut cols: Vec<usize> = cells.iter().map(|&(_, v)| v).collect();
                cols.sort_unstable();
                (s, cols)
            })
            .collect();
        Layout {
            array,
            occurrences,
            columns,
            eta1,
            eta2,
            t: spec.iv_bits,
            blocks,
        }
    }

    fn packet_len(&self, symbol: usize) -> usize {
        self.eta1 * self.eta2 * self.t / (self.occurrences[&symbol].len() - 1)
    }

    /// Position of packet `label` within the split of the occurrence in `col`.
    fn packet_index(&self, symbol: usize, col: usize, label: usize) -> usize {
        let below = self.columns[&symbol].partition_point(|&v| v < label);
        if col < label {
            below - 1
        } else {
            below
        }
    }

    /// `U_{W_v, B_u}` as computed by reducer `k` from its own batches.
    fn block_for(&self, k: usize, v: usize, u: usize) -> Result<&BitSlice<u8, Msb0>, MapReduceError> {
        if !self.array.is_star(u, k) {
            return Err(MapReduceError::NotAccessible { reducer: k, batch: u });
        }
        Ok(&self.blocks[v * self.array.rows() + u])
    }

    fn packet_of<'b>(
        &self,
        block: &'b BitSlice<u8, Msb0>,
        symbol: usize,
        col: usize,
        label: usize,
    ) -> &'b BitSlice<u8, Msb0> {
        let len = self.packet_len(symbol);
        let i = self.packet_index(symbol, col, label);
        &block[i * len..(i + 1) * len]
    }

    fn encode(&self, k: usize, symbol: usize) -> Result<Bits, MapReduceError> {
        let mut payload = bitvec![u8, Msb0; 0; self.packet_len(symbol)];
        for &(u, v) in &self.occurrences[&symbol] {
            if v == k {
                continue;
            }
            let block = self.block_for(k, v, u)?;
            payload ^= self.packet_of(block, symbol, v, k);
        }
        Ok(payload)
    }

    /// Rebuilds `U_{W_k, B_f}` at reducer `k` from the broadcasts.
    fn decode(
        &self,
        k: usize,
        f: usize,
        symbol: usize,
        inbox: &HashMap<(usize, usize), &Bits>,
    ) -> Result<Bits, MapReduceError> {
        let occ = &self.occurrences[&symbol];
        let mut out = Bits::with_capacity(self.eta1 * self.eta2 * self.t);
        for &v in self.columns[&symbol].iter().filter(|&&v| v != k) {
            let mut packet = inbox[&(v, symbol)].clone();
            for &(u2, v2) in occ {
                if (u2, v2) == (f, k) || v2 == v {
                    continue;
                }
                let block = self.block_for(k, v2, u2)?;
                packet ^= self.packet_of(block, symbol, v2, v);
            }
            out.extend_from_bitslice(&packet);
        }
        Ok(out)
    }
}

fn check_spec(array: &CodedArray, spec: &JobSpec) -> Result<(usize, usize), MapReduceError> {
    let eta1 = spec
        .files_per_batch(array.rows())
        .filter(|&e| e > 0)
        .ok_or(MapReduceError::FilesNotDivisible {
            files: spec.files,
            batches: array.rows(),
        })?;
    let eta2 = spec
        .functions_per_reducer(array.cols())
        .filter(|&e| e > 0)
        .ok_or(MapReduceError::FunctionsNotDivisible {
            functions: spec.functions,
            reducers: array.cols(),
        })?;
    if spec.iv_bits == 0 {
        return Err(MapReduceError::ZeroIvBits);
    }
    let block_bits = eta1 * eta2 * spec.iv_bits;
    for (symbol, cells) in array.occurrences() {
        let g = cells.len();
        if g >= 2 && !block_bits.is_multiple_of(g - 1) {
            return Err(MapReduceError::PacketNotDivisible {
                symbol,
                g,
                block_bits,
            });
        }
    }
    Ok((eta1, eta2))
}

/// Runs Map, Shuffle and Reduce and certifies every reducer's IVs against
/// the oracle.
pub fn run_job(
    array: &CodedArray,
    spec: &JobSpec,
) -> Result<(ShuffleTranscript, DecodeReport), MapReduceError> {
    let report = validate_mra(array);
    if !report.passed() {
        return Err(MapReduceError::InvalidMra(report.first_violation));
    }
    let (eta1, eta2) = check_spec(array, spec)?;
    simulate(array, spec, eta1, eta2)
}

fn simulate(
    array: &CodedArray,
    spec: &JobSpec,
    eta1: usize,
    eta2: usize,
) -> Result<(ShuffleTranscript, DecodeReport), MapReduceError> {
    let layout = Layout::new(array, spec, eta1, eta2);
    let t = spec.iv_bits;

    let mut messages = Vec::new();
    for k in 0..array.cols() {
        for symbol in array.column_symbols(k) {
            messages.push(Message {
                sender: k,
                symbol,
                payload: layout.encode(k, symbol)?,
            });
        }
    }
    let total_bits = messages.iter().map(|m| m.payload.len()).sum();
    let inbox: HashMap<(usize, usize), &Bits> = messages
        .iter()
        .map(|m| ((m.sender, m.symbol), &m.payload))
        .collect();

    let mut per_reducer = Vec::with_capacity(array.cols());
    for k in 0..array.cols() {
        let mut recovered = 0;
        let mut decoded = 0;
        for f in 0..array.rows() {
            let block: Bits = match array.get(f, k).symbol() {
                None => layout.block_for(k, k, f)?.to_bitvec(),
                Some(symbol) => layout.decode(k, f, symbol, &inbox)?,
            };
            let mut matches = 0;
            for (i, q) in (k * eta2..(k + 1) * eta2).enumerate() {
                for (j, n) in (f * eta1..(f + 1) * eta1).enumerate() {
                    let start = (i * eta1 + j) * t;
                    if block[start..start + t] == intermediate_value(spec.seed, q, n, t)[..] {
                        matches += 1;
                    }
                }
            }
            recovered += matches;
            if !array.is_star(f, k) {
                decoded += matches;
            }
        }
        let expected = eta2 * spec.files;
        per_reducer.push(ReducerOutcome {
            reducer: k,
            success: recovered == expected,
            recovered_ivs: recovered,
            decoded_ivs: decoded,
            expected_ivs: expected,
        });
    }

    let normalizer_bits = spec.functions * spec.files * t;
    let report = DecodeReport {
        all_decoded: per_reducer.iter().all(|r| r.success),
        message_count: messages.len(),
        total_bits,
        normalizer_bits,
        measured_load: Rational::new(total_bits as i64, normalizer_bits as i64),
        iv_bits: t,
        per_reducer,
    };
    Ok((
        ShuffleTranscript {
            messages,
            total_bits,
        },
        report,
    ))
}
