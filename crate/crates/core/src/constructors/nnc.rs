//! `r`-cyclic PDAs for the nearest-neighbour topology.
//!
//! The star layout is forced: column `k` holds stars in rows
//! `[rk, rk + αr) mod Λ`. The integers are placed by a closed-form rule on an
//! `m x m` base array (`m = Λ/r`) which is then blown up by `r` in both
//! directions. The rule needs `g` even or `m - α = 1`; other parameter points
//! go through an exhaustive clique-partition search.

use serde::Serialize;

use crate::arrays::{CodedArray, Entry};

use super::ConstructError;

/// Node budget used by [`nnc_pda`] when the closed form does not apply.
pub const DEFAULT_SEARCH_BUDGET: u64 = 20_000_000;

/// Derived parameters of the cyclic family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NncShape {
    pub lambda: usize,
    pub r: usize,
    pub alpha: usize,
    /// Common symbol multiplicity `2Λ / (Λ - (α-1)r)`.
    pub g: usize,
    /// `(Λ - αr)(Λ - (α-1)r) / 2`.
    pub symbol_count: usize,
    /// Stars per column, `αr`.
    pub star_count: usize,
}

impl NncShape {
    pub fn new(lambda: usize, r: usize, alpha: usize) -> Result<Self, ConstructError> {
        if lambda < 2 {
            return Err(ConstructError::LambdaTooSmall { lambda });
        }
        if r == 0 || r > lambda {
            return Err(ConstructError::ROutOfRange { r, max: lambda });
        }
        if !lambda.is_multiple_of(r) {
            return Err(ConstructError::RMustDivideLambda { lambda, r });
        }
        let m = lambda / r;
        if alpha == 0 || alpha >= m {
            return Err(ConstructError::AlphaOutOfRange {
                alpha,
                max: m.saturating_sub(1),
            });
        }
        let denominator = lambda - (alpha - 1) * r;
        if !(2 * lambda).is_multiple_of(denominator) {
            return Err(ConstructError::NonIntegralG {
                numerator: 2 * lambda,
                denominator,
            });
        }
        let numerator = (lambda - alpha * r) * denominator;
        if !numerator.is_multiple_of(2) {
            return Err(ConstructError::OddSymbolNumerator { numerator });
        }
        Ok(NncShape {
            lambda,
            r,
            alpha,
            g: 2 * lambda / denominator,
            symbol_count: numerator / 2,
            star_count: alpha * r,
        })
    }

    pub fn is_star(&self, row: usize, col: usize) -> bool {
        (row + self.lambda - (self.r * col) % self.lambda) % self.lambda < self.star_count
    }

    fn base_dim(&self) -> usize {
        self.lambda / self.r
    }

    fn gap(&self) -> usize {
        self.base_dim() - self.alpha
    }

    /// Whether the closed-form placement applies.
    pub fn has_closed_form(&self) -> bool {
        self.g.is_multiple_of(2) || self.gap() == 1
    }
}

/// The `r`-cyclic, `g`-regular `(Λ, Λ, αr, S)` PDA.
///
/// Errors name the violated precondition, or report [`ConstructError::NoCyclicFill`]
/// when the search proves no array with the required parameters exists.
pub fn nnc_pda(lambda: usize, r: usize, alpha: usize) -> Result<CodedArray, ConstructError> {
    let shape = NncShape::new(lambda, r, alpha)?;
    if shape.has_closed_form() {
        if let Some(array) = closed_form(&shape) {
            return Ok(array);
        }
    }
    nnc_search(lambda, r, alpha, DEFAULT_SEARCH_BUDGET)
}

/// Base cell placement: symbol `(p, q)` with `p < q ≤ d` walks from `p`
/// with steps alternating between `q - p` and `d + 1 - (q - p)`, and each
/// step `x -> y` fills cell `(x mod m, y mod m)`.
fn base_fill(shape: &NncShape) -> Option<Vec<Option<usize>>> {
    let m = shape.base_dim();
    let d = shape.gap();
    let mut base: Vec<Option<usize>> = vec![None; m * m];
    let base_star = |b: usize, c: usize| (b + m - c) % m < shape.alpha;
    let mut symbol = 0;
    for p in 0..=d {
        for q in p + 1..=d {
            let a = q - p;
            let mut pos = p;
            for i in 0..shape.g {
                let step = if i % 2 == 0 { a } else { d + 1 - a };
                let next = pos + step;
                let (b, c) = (pos % m, next % m);
                if base_star(b, c) || base[b * m + c].is_some() {
                    return None;
                }
                base[b * m + c] = Some(symbol);
                pos = next;
            }
            symbol += 1;
        }
    }
    Some(base)
}

fn closed_form(shape: &NncShape) -> Option<CodedArray> {
    let base = base_fill(shape)?;
    let (lambda, r, m) = (shape.lambda, shape.r, shape.base_dim());
    let per_block = shape.gap() * (shape.gap() + 1) / 2;
    let mut cells = vec![Entry::Star; lambda * lambda];
    for b in 0..m {
        for c in 0..m {
            let Some(s) = base[b * m + c] else { continue };
            for i in 0..r {
                for j in 0..r {
                    let (row, col) = (r * b + i, c + m * j);
                    cells[row * lambda + col] = Entry::Symbol(s + per_block * (i + r * j));
                }
            }
        }
    }
    let array = CodedArray::new(lambda, lambda, cells).expect("square grid");
    debug_assert_eq!(array.symbol_count(), shape.symbol_count);
    Some(array)
}

/// Exhaustive search for a cyclic fill.
///
/// Non-star cells are partitioned into cliques of size `g` under the
/// relation "distinct rows, distinct columns, both crossing cells are stars".
/// The first unassigned cell in row-major order always starts the next
/// clique, so symbols come out numbered by first occurrence.
pub fn nnc_search(
    lambda: usize,
    r: usize,
    alpha: usize,
    budget: u64,
) -> Result<CodedArray, ConstructError> {
    let shape = NncShape::new(lambda, r, alpha)?;
    let free: Vec<(usize, usize)> = (0..lambda)
        .flat_map(|f| (0..lambda).map(move |k| (f, k)))
        .filter(|&(f, k)| !shape.is_star(f, k))
        .collect();
    let n = free.len();
    let compatible: Vec<Vec<bool>> = free
        .iter()
        .map(|&(f1, k1)| {
            free.iter()
                .map(|&(f2, k2)| {
                    f1 != f2 && k1 != k2 && shape.is_star(f1, k2) && shape.is_star(f2, k1)
                })
                .collect()
        })
        .collect();

    let mut search = CliqueSearch {
        compatible: &compatible,
        group: shape.g,
        assigned: vec![None; n],
        next_symbol: 0,
        nodes: 0,
        budget,
    };
    match search.solve() {
        Some(true) => {
            let mut cells = vec![Entry::Star; lambda * lambda];
            for (i, &(f, k)) in free.iter().enumerate() {
                cells[f * lambda + k] = Entry::Symbol(search.assigned[i].expect("complete"));
            }
            Ok(CodedArray::new(lambda, lambda, cells).expect("square grid"))
        }
        Some(false) => Err(ConstructError::NoCyclicFill {
            lambda,
            r,
            alpha,
            g: shape.g,
        }),
        None => Err(ConstructError::BudgetExhausted { budget }),
    }
}

struct CliqueSearch<'a> {
    compatible: &'a [Vec<bool>],
    group: usize,
    assigned: Vec<Option<usize>>,
    next_symbol: usize,
    nodes: u64,
    budget: u64,
}

impl CliqueSearch<'_> {
    /// `Some(found)` on a completed search, `None` when out of budget.
    fn solve(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let Some(first) = self.assigned.iter().position(Option::is_none) else {
            return Some(true);
        };
        let symbol = self.next_symbol;
        self.assigned[first] = Some(symbol);
        self.next_symbol += 1;
        let candidates: Vec<usize> = (first + 1..self.assigned.len())
            .filter(|&j| self.assigned[j].is_none() && self.compatible[first][j])
            .collect();
        let outcome = self.extend(symbol, 1, &candidates);
        if outcome != Some(true) {
            self.next_symbol -= 1;
            self.assigned[first] = None;
        }
        outcome
    }

    fn extend(&mut self, symbol: usize, size: usize, candidates: &[usize]) -> Option<bool> {
        if size == self.group {
            return self.solve();
        }
        if candidates.len() < self.group - size {
            return Some(false);
        }
        for (idx, &c) in candidates.iter().enumerate() {
            let narrowed: Vec<usize> = candidates[idx + 1..]
                .iter()
                .copied()
                .filter(|&d| self.compatible[c][d])
                .collect();
            self.assigned[c] = Some(symbol);
            match self.extend(symbol, size + 1, &narrowed) {
                Some(false) => self.assigned[c] = None,
                other => return other,
            }
        }
        Some(false)
    }
}
