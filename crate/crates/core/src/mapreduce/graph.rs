use std::collections::BTreeSet;

use serde::Serialize;

use crate::arrays::CodedArray;
use crate::constructors::{check_combinatorial, lex_subsets, GcParameters};
use crate::metrics::Rational;

use super::MapReduceError;

/// Batches, mappers and reducers of a Map-Reduce job.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapReduceGraph {
    batch_count: usize,
    mapper_storage: Vec<BTreeSet<usize>>,
    reducer_links: Vec<BTreeSet<usize>>,
}

/// Parameterized topologies with a known graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Topology {
    /// One mapper per row; reducer `k` links to the rows starred in column `k`.
    Canonical(CodedArray),
    /// One reducer per `α`-subset of `Λ` mappers.
    Ct { lambda: usize, r: usize, alpha: usize },
    /// `K_α` reducers per `α`-subset.
    Gc(GcParameters),
    /// Wrap-around: reducer `λ` links to mappers `λ, …, λ+α-1`.
    Nnc { lambda: usize, r: usize, alpha: usize },
}

impl MapReduceGraph {
    pub fn new(
        batch_count: usize,
        mapper_storage: Vec<BTreeSet<usize>>,
        reducer_links: Vec<BTreeSet<usize>>,
    ) -> Result<Self, MapReduceError> {
        if batch_count == 0 || mapper_storage.is_empty() || reducer_links.is_empty() {
            return Err(MapReduceError::EmptyGraph);
        }
        for (mapper, batches) in mapper_storage.iter().enumerate() {
            if let Some(&batch) = batches.iter().find(|&&b| b >= batch_count) {
                return Err(MapReduceError::BatchOutOfRange { mapper, batch });
            }
        }
        let mappers = mapper_storage.len();
        for (reducer, links) in reducer_links.iter().enumerate() {
            if let Some(&mapper) = links.iter().find(|&&m| m >= mappers) {
                return Err(MapReduceError::MapperOutOfRange { reducer, mapper });
            }
        }
        Ok(MapReduceGraph {
            batch_count,
            mapper_storage,
            reducer_links,
        })
    }

    pub fn batch_count(&self) -> usize {
        self.batch_count
    }

    pub fn mapper_count(&self) -> usize {
        self.mapper_storage.len()
    }

    pub fn reducer_count(&self) -> usize {
        self.reducer_links.len()
    }

    pub fn mapper_storage(&self, mapper: usize) -> &BTreeSet<usize> {
        &self.mapper_storage[mapper]
    }

    pub fn reducer_links(&self, reducer: usize) -> &BTreeSet<usize> {
        &self.reducer_links[reducer]
    }

    /// `R_k`: every batch stored by a mapper linked to reducer `k`.
    pub fn reducer_access(&self, reducer: usize) -> BTreeSet<usize> {
        self.reducer_links[reducer]
            .iter()
            .flat_map(|&m| self.mapper_storage[m].iter().copied())
            .collect()
    }

    /// `F x K` grid, `true` where batch `f` is reachable from reducer `k`.
    pub fn access_pattern(&self) -> Vec<Vec<bool>> {
        let access: Vec<BTreeSet<usize>> =
            (0..self.reducer_count()).map(|k| self.reducer_access(k)).collect();
        (0..self.batch_count)
            .map(|f| access.iter().map(|a| a.contains(&f)).collect())
            .collect()
    }

    /// Average number of mappers storing each batch.
    pub fn computation_load(&self) -> Rational {
        let stored: usize = self.mapper_storage.iter().map(BTreeSet::len).sum();
        Rational::new(stored as i64, self.batch_count as i64)
    }
}

/// Star positions of an array as an `F x K` grid.
pub fn star_pattern(array: &CodedArray) -> Vec<Vec<bool>> {
    (0..array.rows())
        .map(|f| array.row(f).iter().map(|e| e.is_star()).collect())
        .collect()
}

fn combinatorial_graph(lambda: usize, r: usize, blocks: &[(usize, usize)]) -> MapReduceGraph {
    let batches: Vec<Vec<usize>> = lex_subsets(lambda, r).collect();
    let mapper_storage = (0..lambda)
        .map(|m| {
            batches
                .iter()
                .enumerate()
                .filter(|(_, t)| t.contains(&m))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut reducer_links = Vec::new();
    for &(alpha, copies) in blocks {
        for _ in 0..copies {
            reducer_links.extend(lex_subsets(lambda, alpha).map(|u| u.into_iter().collect()));
        }
    }
    MapReduceGraph {
        batch_count: batches.len(),
        mapper_storage,
        reducer_links,
    }
}

pub fn build_mrg(topology: &Topology) -> Result<MapReduceGraph, MapReduceError> {
    match topology {
        Topology::Canonical(array) => {
            let mapper_storage = (0..array.rows()).map(|f| BTreeSet::from([f])).collect();
            let reducer_links = (0..array.cols())
                .map(|k| (0..array.rows()).filter(|&f| array.is_star(f, k)).collect())
                .collect();
            MapReduceGraph::new(array.rows(), mapper_storage, reducer_links)
        }
        Topology::Ct { lambda, r, alpha } => {
            check_combinatorial(*lambda, *r, *alpha)?;
            Ok(combinatorial_graph(*lambda, *r, &[(*alpha, 1)]))
        }
        Topology::Gc(params) => {
            params.check()?;
            let blocks: Vec<(usize, usize)> = params.active().collect();
            Ok(combinatorial_graph(params.mappers, params.computation, &blocks))
        }
        Topology::Nnc { lambda, r, alpha } => {
            let (lambda, r, alpha) = (*lambda, *r, *alpha);
            if r == 0 || lambda == 0 || lambda % r != 0 {
                return Err(MapReduceError::RMustDivideLambda { lambda, r });
            }
            if alpha == 0 || alpha >= lambda / r {
                return Err(MapReduceError::AlphaOutOfRange { lambda, r, alpha });
            }
            let mapper_storage = (0..lambda)
                .map(|m| (0..r).map(|j| (r * m + j) % lambda).collect())
                .collect();
            let reducer_links = (0..lambda)
                .map(|k| (0..alpha).map(|j| (k + j) % lambda).collect())
                .collect();
            MapReduceGraph::new(lambda, mapper_storage, reducer_links)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrays::grid;
    use crate::constructors::{algorithm1, algorithm2, nnc_pda};

    #[test]
    fn ct_example() {
        let g = build_mrg(&Topology::Ct {
            lambda: 4,
            r: 2,
            alpha: 2,
        })
        .unwrap();
        // batches 01, 02, 03 carry indices 0, 1, 2
        assert_eq!(g.mapper_storage(0), &BTreeSet::from([0, 1, 2]));
        let access = g.reducer_access(0);
        let union: BTreeSet<usize> = g
            .mapper_storage(0)
            .union(g.mapper_storage(1))
            .copied()
            .collect();
        assert_eq!(access, union);
        assert_eq!(access.len(), 5);
        assert_eq!(g.computation_load(), Rational::integer(2));
        assert_eq!(g.access_pattern(), star_pattern(&algorithm1(4, 2, 2).unwrap()));
    }

    #[test]
    fn nnc_example() {
        let g = build_mrg(&Topology::Nnc {
            lambda: 12,
            r: 2,
            alpha: 4,
        })
        .unwrap();
        assert_eq!(g.reducer_access(0), (0..8).collect());
        assert_eq!(g.access_pattern(), star_pattern(&nnc_pda(12, 2, 4).unwrap()));
        assert_eq!(g.computation_load(), Rational::integer(2));
    }

    #[test]
    fn gc_example() {
        let params = GcParameters::new(4, 2, vec![2, 3]).unwrap();
        let g = build_mrg(&Topology::Gc(params.clone())).unwrap();
        assert_eq!(g.reducer_count(), 26);
        assert_eq!(g.access_pattern(), star_pattern(&algorithm2(&params).unwrap()));
    }

    #[test]
    fn canonical_single_column() {
        let g = build_mrg(&Topology::Canonical(grid(&["*", "*", "*"]))).unwrap();
        assert_eq!(g.reducer_links(0), &BTreeSet::from([0, 1, 2]));
        assert_eq!(g.computation_load(), Rational::integer(1));
    }

    #[test]
    fn invalid_graphs() {
        assert!(matches!(
            MapReduceGraph::new(2, vec![BTreeSet::from([2])], vec![BTreeSet::new()]),
            Err(MapReduceError::BatchOutOfRange { .. })
        ));
        assert!(matches!(
            build_mrg(&Topology::Nnc {
                lambda: 5,
                r: 2,
                alpha: 1
            }),
            Err(MapReduceError::RMustDivideLambda { .. })
        ));
    }
}
