//! Lexicographic ranking of fixed-size subsets of `[0, n)`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::ConstructError;

/// `C(n, k)`, or `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

pub(crate) fn binom_usize(n: usize, k: usize) -> Result<usize, ConstructError> {
    binomial(n, k)
        .and_then(|v| usize::try_from(v).ok())
        .ok_or(ConstructError::TooLarge)
}

/// A subset together with its position among all subsets of the same size.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsetRank {
    pub universe_size: usize,
    pub subset_size: usize,
    pub rank: usize,
}

impl SubsetRank {
    pub fn of(subset: &[usize], universe_size: usize) -> Result<Self, ConstructError> {
        Ok(SubsetRank {
            universe_size,
            subset_size: subset.len(),
            rank: lex_rank(subset, universe_size)?,
        })
    }

    pub fn subset(&self) -> Result<Vec<usize>, ConstructError> {
        lex_unrank(self.rank, self.subset_size, self.universe_size)
    }
}

/// 0-based position of `subset` in the lexicographic order of all
/// `|subset|`-subsets of `[0, universe)`. Elements may be given in any order.
pub fn lex_rank(subset: &[usize], universe: usize) -> Result<usize, ConstructError> {
    if subset.is_empty() {
        return Err(ConstructError::EmptySubset);
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    if let Some(&element) = sorted.iter().find(|&&e| e >= universe) {
        return Err(ConstructError::ElementOutOfRange { element, universe });
    }
    if let Some((&element, _)) = sorted.iter().tuple_windows().find(|(a, b)| a == b) {
        return Err(ConstructError::DuplicateElement { element });
    }
    let m = sorted.len();
    let mut rank = 0usize;
    let mut next_free = 0;
    for (i, &t) in sorted.iter().enumerate() {
        // subsets agreeing on the first i elements whose i-th element is below t
        rank += binom_usize(universe - next_free, m - i)? - binom_usize(universe - t, m - i)?;
        next_free = t + 1;
    }
    Ok(rank)
}

/// Inverse of [`lex_rank`].
pub fn lex_unrank(rank: usize, size: usize, universe: usize) -> Result<Vec<usize>, ConstructError> {
    if size == 0 {
        return Err(ConstructError::EmptySubset);
    }
    let total = binom_usize(universe, size)?;
    if rank >= total {
        return Err(ConstructError::RankOutOfRange { rank, total });
    }
    let mut out = Vec::with_capacity(size);
    let mut remaining = rank;
    let mut candidate = 0;
    for i in 0..size {
        loop {
            let block = binom_usize(universe - candidate - 1, size - i - 1)?;
            if remaining < block {
                break;
            }
            remaining -= block;
            candidate += 1;
        }
        out.push(candidate);
        candidate += 1;
    }
    Ok(out)
}

/// All `size`-subsets of `[0, universe)` in lexicographic order.
pub fn lex_subsets(universe: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..universe).combinations(size)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_ranks() {
        assert_eq!(lex_rank(&[0, 1, 2, 3], 5).unwrap(), 0);
        assert_eq!(lex_rank(&[0, 1, 2, 4], 5).unwrap(), 1);
        assert_eq!(lex_rank(&[1, 2, 3, 4], 5).unwrap(), 4);
        assert_eq!(lex_rank(&[0, 1, 2], 3).unwrap(), 0);
    }

    #[test]
    fn round_trip_all_triples_of_six() {
        let all: Vec<Vec<usize>> = lex_subsets(6, 3).collect();
        assert_eq!(all.len(), 20);
        for (i, t) in all.iter().enumerate() {
            assert_eq!(lex_rank(t, 6).unwrap(), i);
            assert_eq!(&lex_unrank(i, 3, 6).unwrap(), t);
        }
        let r = SubsetRank::of(&[4, 1, 2], 6).unwrap();
        assert_eq!(r.subset().unwrap(), vec![1, 2, 4]);
    }

    #[test]
    fn errors() {
        assert_eq!(
            lex_rank(&[0, 5], 5),
            Err(ConstructError::ElementOutOfRange {
                element: 5,
                universe: 5
            })
        );
        assert_eq!(
            lex_rank(&[1, 1], 5),
            Err(ConstructError::DuplicateElement { element: 1 })
        );
        assert_eq!(lex_rank(&[], 5), Err(ConstructError::EmptySubset));
        assert_eq!(
            lex_unrank(10, 2, 5),
            Err(ConstructError::RankOutOfRange { rank: 10, total: 10 })
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(12, 4), Some(495));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(64, 32), Some(1_832_624_140_942_590_534));
        assert_eq!(binomial(0, 0), Some(1));
    }
}
