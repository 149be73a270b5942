//! Brute-force oracles and parameter sweeps shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use mra_core::constructors::{GcParameters, NncShape};
use mra_core::mapreduce::{choose_iv_bits, run_job, JobSpec};
use mra_core::metrics::load_from_array;
use mra_core::{CodedArray, Entry};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcome of the quadratic pair scan.
#[derive(Debug, PartialEq, Eq)]
pub struct PairScan {
    pub c1: bool,
    pub c2_1: bool,
    pub c2_2: bool,
    /// First violating pair in row-major order of both cells.
    pub first_pair: Option<((usize, usize), (usize, usize))>,
}

/// Enumerates every pair of cells, with no use of the crate's indexing.
pub fn pair_scan(a: &CodedArray) -> PairScan {
    let cells: Vec<(usize, usize, Entry)> = a.cells().collect();
    let mut partner = vec![false; cells.len()];
    let (mut c2_1, mut c2_2) = (true, true);
    let mut first_pair = None;
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            let (f1, k1, e1) = cells[i];
            let (f2, k2, e2) = cells[j];
            if e1.is_star() || e1 != e2 {
                continue;
            }
            partner[i] = true;
            partner[j] = true;
            let bad = if f1 == f2 || k1 == k2 {
                c2_1 = false;
                true
            } else if !a.get(f1, k2).is_star() || !a.get(f2, k1).is_star() {
                c2_2 = false;
                true
            } else {
                false
            };
            if bad && first_pair.is_none() {
                first_pair = Some(((f1, k1), (f2, k2)));
            }
        }
    }
    let has_symbol = cells.iter().any(|c| !c.2.is_star());
    let c1 = has_symbol
        && cells
            .iter()
            .zip(&partner)
            .all(|(c, &p)| c.2.is_star() || p);
    PairScan {
        c1,
        c2_1,
        c2_2,
        first_pair,
    }
}

pub fn oracle_mra(a: &CodedArray) -> bool {
    let s = pair_scan(a);
    s.c1 && s.c2_1 && s.c2_2
}

pub fn oracle_pda(a: &CodedArray) -> bool {
    let stars: Vec<usize> = (0..a.cols())
        .map(|k| (0..a.rows()).filter(|&f| a.get(f, k).is_star()).count())
        .collect();
    let a1 = stars.iter().all(|&z| z == stars[0]);
    let mut seen = BTreeMap::new();
    for (_, _, e) in a.cells() {
        if let Entry::Symbol(s) = e {
            seen.insert(s, ());
        }
    }
    let a2 = !seen.is_empty() && seen.keys().enumerate().all(|(i, &s)| i == s);
    let scan = pair_scan(a);
    a1 && a2 && scan.c2_1 && scan.c2_2
}

/// Symbol multiplicities counted cell by cell.
pub fn oracle_multiplicities(a: &CodedArray) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for f in 0..a.rows() {
        for k in 0..a.cols() {
            if let Entry::Symbol(s) = a.get(f, k) {
                *m.entry(s).or_insert(0) += 1;
            }
        }
    }
    m
}

/// `(Λ, r, α)` with `α ∈ [1, Λ-1]`, `r ∈ [1, Λ-α]`.
pub fn ct_triples(max_lambda: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for lambda in 2..=max_lambda {
        for alpha in 1..lambda {
            for r in 1..=lambda - alpha {
                out.push((lambda, r, alpha));
            }
        }
    }
    out
}

/// Every `GcParameters` with `Λ ≤ max_lambda` and each `K_α ≤ max_k`,
/// using the full vector length `Λ - r`.
pub fn gc_sweep(max_lambda: usize, max_k: usize) -> Vec<GcParameters> {
    let mut out = Vec::new();
    for lambda in 2..=max_lambda {
        for r in 1..lambda {
            let len = lambda - r;
            let total = (max_k + 1).pow(len as u32);
            for code in 1..total {
                let mut kvec = Vec::with_capacity(len);
                let mut c = code;
                for _ in 0..len {
                    kvec.push(c % (max_k + 1));
                    c /= max_k + 1;
                }
                out.push(GcParameters::new(lambda, r, kvec).expect("valid sweep point"));
            }
        }
    }
    out
}

/// `(Λ, r, α)` passing the cyclic family's preconditions.
pub fn nnc_triples(max_lambda: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for lambda in 2..=max_lambda {
        for r in 1..=lambda {
            if lambda % r != 0 {
                continue;
            }
            for alpha in 1..lambda / r {
                if NncShape::new(lambda, r, alpha).is_ok() {
                    out.push((lambda, r, alpha));
                }
            }
        }
    }
    out
}

/// `m`-subsets of `[0, n)` in lexicographic order, by plain recursion.
pub fn subsets_lex(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for e in start..n {
            cur.push(e);
            go(e + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, m, &mut Vec::new(), &mut out);
    out
}

/// Binomial coefficient by Pascal's rule.
pub fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut row = vec![1usize; 1];
    for i in 1..=n {
        let mut next = vec![1usize; i + 1];
        for j in 1..i {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    row[k]
}

/// Intermediate value as plain bools, straight from the keystream.
pub fn iv(seed: u64, q: usize, n: usize, t: usize) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((q as u64) << 32) | n as u64);
    let mut bytes = vec![0u8; t.div_ceil(8)];
    rng.fill_bytes(&mut bytes);
    (0..t).map(|i| bytes[i / 8] >> (7 - i % 8) & 1 == 1).collect()
}

struct Oracle<'a> {
    a: &'a CodedArray,
    spec: JobSpec,
    e1: usize,
    e2: usize,
}

impl Oracle<'_> {
    fn block(&self, v: usize, u: usize) -> Vec<bool> {
        let mut out = Vec::new();
        for q in v * self.e2..(v + 1) * self.e2 {
            for n in u * self.e1..(u + 1) * self.e1 {
                out.extend(iv(self.spec.seed, q, n, self.spec.iv_bits));
            }
        }
        out
    }

    fn cells_of(&self, s: usize) -> Vec<(usize, usize)> {
        self.a
            .cells()
            .filter(|c| c.2.symbol() == Some(s))
            .map(|c| (c.0, c.1))
            .collect()
    }

    /// Packet of the occurrence in column `v` that is labelled `label`.
    fn packet(&self, s: usize, u: usize, v: usize, label: usize) -> Vec<bool> {
        let cells = self.cells_of(s);
        let mut labels: Vec<usize> = cells.iter().map(|c| c.1).filter(|&c| c != v).collect();
        labels.sort();
        let len = self.e1 * self.e2 * self.spec.iv_bits / (cells.len() - 1);
        let i = labels.iter().position(|&c| c == label).unwrap();
        self.block(v, u)[i * len..(i + 1) * len].to_vec()
    }

    fn encode(&self, k: usize, s: usize) -> Vec<bool> {
        let cells = self.cells_of(s);
        let len = self.e1 * self.e2 * self.spec.iv_bits / (cells.len() - 1);
        let mut out = vec![false; len];
        for &(u, v) in cells.iter().filter(|c| c.1 != k) {
            assert!(self.a.is_star(u, k), "term not computable by sender {k}");
            for (o, b) in out.iter_mut().zip(self.packet(s, u, v, k)) {
                *o ^= b;
            }
        }
        out
    }
}

pub fn bools(bits: &mra_core::mapreduce::Bits) -> Vec<bool> {
    bits.iter().map(|b| *b).collect()
}

/// Re-derives every message and every decoded block independently of the
/// crate's shuffle.
pub fn check_against_oracle(a: &CodedArray, e1: usize, e2: usize, seed: u64) {
    let t = choose_iv_bits(a, 1, e1, e2);
    let spec = JobSpec {
        files: e1 * a.rows(),
        functions: e2 * a.cols(),
        iv_bits: t,
        seed,
    };
    let (transcript, report) = run_job(a, &spec).unwrap();
    assert!(report.all_decoded);
    assert!(report.per_reducer.iter().all(|r| r.success));
    assert_eq!(report.measured_load, load_from_array(a).unwrap());

    let oracle = Oracle { a, spec, e1, e2 };
    let mut expected = Vec::new();
    for k in 0..a.cols() {
        let mut syms: Vec<usize> = (0..a.rows()).filter_map(|f| a.get(f, k).symbol()).collect();
        syms.sort();
        for s in syms {
            expected.push((k, s, oracle.encode(k, s)));
        }
    }
    let got: Vec<_> = transcript
        .messages
        .iter()
        .map(|m| (m.sender, m.symbol, bools(&m.payload)))
        .collect();
    assert_eq!(got, expected);
    let bits: usize = expected.iter().map(|m| m.2.len()).sum();
    assert_eq!(transcript.total_bits, bits);

    // Each reducer rebuilds its missing blocks from the broadcasts alone.
    for k in 0..a.cols() {
        for f in 0..a.rows() {
            let Some(s) = a.get(f, k).symbol() else { continue };
            let cells = oracle.cells_of(s);
            let mut cols: Vec<usize> = cells.iter().map(|c| c.1).filter(|&c| c != k).collect();
            cols.sort();
            let mut rebuilt = Vec::new();
            for v in cols {
                let (_, _, x) = expected.iter().find(|m| m.0 == v && m.1 == s).unwrap();
                let mut p = x.clone();
                for &(u2, v2) in cells.iter().filter(|c| **c != (f, k) && c.1 != v) {
                    assert!(a.is_star(u2, k));
                    for (o, b) in p.iter_mut().zip(oracle.packet(s, u2, v2, v)) {
                        *o ^= b;
                    }
                }
                rebuilt.extend(p);
            }
            assert_eq!(rebuilt, oracle.block(k, f), "reducer {k} batch {f}");
        }
    }
}
