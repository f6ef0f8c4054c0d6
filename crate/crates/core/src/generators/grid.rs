use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::{GenError, DEFAULT_VERTEX_BUDGET};
use crate::graph::{Graph, Vertex, VertexSet};

/// What a vertex of a [`SubdividedGrid`] stands for. Columns and rows are
/// 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum GridRole {
    Grid { column: usize, row: usize },
    /// `position` counts from the `column` side of the edge towards `column + 1`.
    Subdivision { column: usize, row: usize, position: usize },
}

/// The `x × y` grid with each horizontal edge replaced by a path.
///
/// Grid vertex `(i, j)` has id `i * y + j`, so column `i` is the id range
/// `i*y .. (i+1)*y`. Subdivision vertices follow, chain by chain, with the
/// chain of the edge `(i, j)–(i+1, j)` stored at index `i * y + j`.
#[derive(Debug, Clone)]
pub struct SubdividedGrid {
    x: usize,
    y: usize,
    chains: Vec<Range<Vertex>>,
    pub graph: Graph,
}

impl SubdividedGrid {
    /// `divisions[i * y + j]` is the number of vertices placed on the edge
    /// `(i, j)–(i+1, j)`; zero keeps the edge.
    pub fn new(x: usize, y: usize, divisions: &[usize]) -> Result<Self, GenError> {
        Self::with_budget(x, y, divisions, DEFAULT_VERTEX_BUDGET)
    }

    pub fn uniform(x: usize, y: usize, per_edge: usize) -> Result<Self, GenError> {
        let count = x.saturating_sub(1) * y;
        Self::new(x, y, &vec![per_edge; count])
    }

    pub fn with_budget(x: usize, y: usize, divisions: &[usize], budget: usize) -> Result<Self, GenError> {
        if x == 0 || y == 0 {
            return Err(GenError::InvalidParameter("grid needs x, y >= 1".into()));
        }
        let horizontal = (x - 1) * y;
        if divisions.len() != horizontal {
            return Err(GenError::InvalidParameter(format!(
                "expected {horizontal} division counts, got {}",
                divisions.len()
            )));
        }
        let vertices = (x as u128) * (y as u128) + divisions.iter().map(|&d| d as u128).sum::<u128>();
        if vertices > budget as u128 {
            return Err(GenError::GridTooLarge { vertices, budget });
        }
        let n = vertices as usize;
        let id = |i: usize, j: usize| i * y + j;
        let mut edges = Vec::new();
        for i in 0..x {
            for j in 1..y {
                edges.push((id(i, j - 1), id(i, j)));
            }
        }
        let mut chains = Vec::with_capacity(horizontal);
        let mut next = x * y;
        for i in 0..x - 1 {
            for j in 0..y {
                let d = divisions[i * y + j];
                let chain = next..next + d;
                next += d;
                let mut prev = id(i, j);
                for s in chain.clone() {
                    edges.push((prev, s));
                    prev = s;
                }
                edges.push((prev, id(i + 1, j)));
                chains.push(chain);
            }
        }
        let graph = Graph::new(n, &edges).expect("grid edges are well formed");
        Ok(Self { x, y, chains, graph })
    }

    pub fn columns(&self) -> usize {
        self.x
    }

    pub fn rows(&self) -> usize {
        self.y
    }

    pub fn grid_vertex(&self, column: usize, row: usize) -> Vertex {
        column * self.y + row
    }

    pub fn column(&self, i: usize) -> Range<Vertex> {
        i * self.y..(i + 1) * self.y
    }

    /// Subdivision vertices of the edge `(i, j)–(i+1, j)`, ordered from column `i`.
    pub fn chain(&self, i: usize, j: usize) -> Range<Vertex> {
        self.chains[i * self.y + j].clone()
    }

    pub fn divisions(&self) -> Vec<usize> {
        self.chains.iter().map(|c| c.len()).collect()
    }

    pub fn is_subdivision(&self, v: Vertex) -> bool {
        v >= self.x * self.y && v < self.graph.vertex_count()
    }

    pub fn subdivision_vertices(&self) -> VertexSet {
        (self.x * self.y..self.graph.vertex_count()).collect()
    }

    pub fn role(&self, v: Vertex) -> GridRole {
        if v < self.x * self.y {
            return GridRole::Grid { column: v / self.y, row: v % self.y };
        }
        let e = self.chains.partition_point(|c| c.end <= v);
        let c = &self.chains[e];
        GridRole::Subdivision { column: e / self.y, row: e % self.y, position: v - c.start }
    }

    /// Contracts every chain back into a single edge. Grid vertices keep
    /// their ids.
    pub fn contract_chains(&self) -> Graph {
        let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
        for i in 0..self.x {
            for j in 0..self.y {
                if j + 1 < self.y {
                    edges.push((self.grid_vertex(i, j), self.grid_vertex(i, j + 1)));
                }
                if i + 1 < self.x {
                    edges.push((self.grid_vertex(i, j), self.grid_vertex(i + 1, j)));
                }
            }
        }
        // Rebuild from the subdivided graph: walk each chain end to end.
        let grid_n = self.x * self.y;
        let mut found = Vec::new();
        for u in 0..grid_n {
            for w in self.graph.neighbors(u) {
                let mut prev = u;
                let mut cur = w;
                while cur >= grid_n {
                    let next = self.graph.neighbors(cur).find(|&z| z != prev).expect("chain vertices have degree 2");
                    prev = cur;
                    cur = next;
                }
                if u < cur {
                    found.push((u, cur));
                }
            }
        }
        let contracted = Graph::from_edges_merged(grid_n, found).expect("ids in range");
        debug_assert_eq!(contracted, Graph::from_edges_merged(grid_n, edges).unwrap());
        contracted
    }

    /// The plain `x × y` grid, ids as in [`SubdividedGrid::grid_vertex`].
    pub fn plain(x: usize, y: usize) -> Result<Graph, GenError> {
        Ok(Self::uniform(x, y, 0)?.graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cycle() {
        let g = SubdividedGrid::uniform(2, 2, 0).unwrap();
        assert_eq!((g.graph.vertex_count(), g.graph.edge_count()), (4, 4));
    }

    #[test]
    fn subdivided_edge_is_a_path() {
        let g = SubdividedGrid::new(2, 1, &[1]).unwrap();
        assert_eq!(g.graph.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn three_by_two_divided_once() {
        let g = SubdividedGrid::uniform(3, 2, 1).unwrap();
        assert_eq!(g.graph.vertex_count(), 10);
        // 3 vertical edges, 4 horizontal edges split into 8 halves
        assert_eq!(g.graph.edge_count(), 11);
        assert_eq!(g.contract_chains(), SubdividedGrid::plain(3, 2).unwrap());
    }

    #[test]
    fn roles() {
        let g = SubdividedGrid::new(3, 2, &[0, 2, 1, 0]).unwrap();
        assert_eq!(g.role(3), GridRole::Grid { column: 1, row: 1 });
        assert_eq!(g.chain(0, 1), 6..8);
        assert_eq!(g.role(7), GridRole::Subdivision { column: 0, row: 1, position: 1 });
        assert_eq!(g.role(8), GridRole::Subdivision { column: 1, row: 0, position: 0 });
        assert_eq!(g.column(2), 4..6);
        assert!(g.is_subdivision(8) && !g.is_subdivision(5));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(SubdividedGrid::new(0, 3, &[]).is_err());
        assert!(SubdividedGrid::new(3, 2, &[1]).is_err());
        assert!(matches!(
            SubdividedGrid::with_budget(2, 2, &[5, 5], 10),
            Err(GenError::GridTooLarge { vertices: 14, .. })
        ));
    }
}
