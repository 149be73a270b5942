use std::collections::BTreeMap;

use serde::Serialize;

use super::CodedArray;

/// Symbol multiplicities and star counts of an array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrayStats {
    /// `g_s` for every symbol `s`.
    pub per_symbol_multiplicity: BTreeMap<usize, usize>,
    /// `S_g`: how many symbols occur exactly `g` times.
    pub multiplicity_histogram: BTreeMap<usize, usize>,
    /// `Z_k`: stars in column `k`.
    pub per_column_stars: Vec<usize>,
    /// Set iff every symbol has the same multiplicity.
    pub common_g: Option<usize>,
    /// Smallest `l` in `[0, F)` for which the star layout is `l`-cyclic.
    pub cyclic_shift: Option<usize>,
}

impl ArrayStats {
    pub fn symbol_count(&self) -> usize {
        self.per_symbol_multiplicity.len()
    }

    /// `Z` if every column holds the same number of stars.
    pub fn uniform_stars(&self) -> Option<usize> {
        let first = *self.per_column_stars.first()?;
        self.per_column_stars
            .iter()
            .all(|&z| z == first)
            .then_some(first)
    }
}

pub fn compute_stats(array: &CodedArray) -> ArrayStats {
    let mut per_symbol_multiplicity = BTreeMap::new();
    for (_, _, e) in array.cells() {
        if let Some(s) = e.symbol() {
            *per_symbol_multiplicity.entry(s).or_insert(0) += 1;
        }
    }
    let mut multiplicity_histogram = BTreeMap::new();
    for &g in per_symbol_multiplicity.values() {
        *multiplicity_histogram.entry(g).or_insert(0) += 1;
    }
    let common_g = match multiplicity_histogram.len() {
        1 => multiplicity_histogram.keys().next().copied(),
        _ => None,
    };
    let per_column_stars = (0..array.cols())
        .map(|k| array.column(k).filter(|e| e.is_star()).count())
        .collect();
    let cyclic_shift = (0..array.rows()).find(|&l| star_layout_is_cyclic(array, l));
    ArrayStats {
        per_symbol_multiplicity,
        multiplicity_histogram,
        per_column_stars,
        common_g,
        cyclic_shift,
    }
}

/// Start row of the cyclically consecutive star block in `col`.
///
/// `None` if the stars are not one cyclic run or the column has no stars.
/// A column made entirely of stars starts at row 0.
pub(crate) fn star_block_start(array: &CodedArray, col: usize) -> Option<usize> {
    let f = array.rows();
    let stars: Vec<bool> = array.column(col).map(|e| e.is_star()).collect();
    let count = stars.iter().filter(|&&s| s).count();
    if count == 0 {
        return None;
    }
    if count == f {
        return Some(0);
    }
    // A run starts where a star follows a non-star; exactly one such row.
    let starts: Vec<usize> = (0..f)
        .filter(|&i| stars[i] && !stars[(i + f - 1) % f])
        .collect();
    match starts.as_slice() {
        [start] => Some(*start),
        _ => None,
    }
}

pub(crate) fn star_layout_is_cyclic(array: &CodedArray, shift: usize) -> bool {
    let f = array.rows();
    let Some(first) = star_block_start(array, 0) else {
        return false;
    };
    let z = array.column(0).filter(|e| e.is_star()).count();
    (0..array.cols()).all(|k| {
        let zk = array.column(k).filter(|e| e.is_star()).count();
        zk == z && (z == f || star_block_start(array, k) == Some((first + k * shift) % f))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrays::grid;

    fn p1() -> CodedArray {
        grid(&[
            "* * * 0 *",
            "* 0 1 * 3",
            "0 * 2 * *",
            "1 2 * 3 *",
        ])
    }

    #[test]
    fn p1_counts() {
        let s = compute_stats(&p1());
        assert_eq!(
            s.per_symbol_multiplicity,
            BTreeMap::from([(0, 3), (1, 2), (2, 2), (3, 2)])
        );
        assert_eq!(s.multiplicity_histogram, BTreeMap::from([(2, 3), (3, 1)]));
        assert_eq!(s.per_column_stars, vec![2, 2, 2, 2, 3]);
        assert_eq!(s.common_g, None);
        assert_eq!(s.uniform_stars(), None);
    }

    #[test]
    fn all_star_array() {
        let s = compute_stats(&grid(&["* *", "* *"]));
        assert_eq!(s.symbol_count(), 0);
        assert!(s.multiplicity_histogram.is_empty());
        assert_eq!(s.common_g, None);
    }

    #[test]
    fn cyclic_detection() {
        let a3 = grid(&["* 0 * 2", "* 1 * 3", "0 * 2 *", "1 * 3 *"]);
        assert_eq!(compute_stats(&a3).cyclic_shift, Some(2));
        let a1 = grid(&["* * * 0", "* 0 1 *", "0 * 2 *", "1 2 * 3"]);
        assert_eq!(compute_stats(&a1).cyclic_shift, None);
    }

    #[test]
    fn wrapping_block_start() {
        let a = grid(&["*", "0", "*"]);
        assert_eq!(star_block_start(&a, 0), Some(2));
        let b = grid(&["*", "0", "*", "0"]);
        assert_eq!(star_block_start(&b, 0), None);
    }
}
