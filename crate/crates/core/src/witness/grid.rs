use serde::{Deserialize, Serialize};

use super::WitnessError;
use crate::generators::{GhGraph, SubdividedGrid};
use crate::graph::{component_labels, Vertex, VertexSet};

/// Columns `first..=last` of a grid, all in one component after removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnRun {
    pub first: usize,
    pub last: usize,
}

impl ColumnRun {
    pub fn len(&self) -> usize {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Longest run of consecutive columns of `sg` lying in a single component
/// of `sg - s` (leftmost on ties). `s` must consist of subdivision vertices
/// with `|s| < p * rows`; the run then has at least `ceil(columns / p)`
/// columns.
pub fn grid_connectivity(sg: &SubdividedGrid, s: &VertexSet, p: usize) -> Result<ColumnRun, WitnessError> {
    if p == 0 {
        return Err(WitnessError::InvalidParameter("p must be at least 1".into()));
    }
    if let Some(v) = s.iter().find(|&v| !sg.is_subdivision(v)) {
        return Err(WitnessError::SNotSubdivisionOnly(v));
    }
    let limit = p.saturating_mul(sg.rows());
    if s.len() >= limit {
        return Err(WitnessError::TooManyRemoved { removed: s.len(), limit });
    }
    let mask = s.mask(sg.graph.vertex_count());
    let labels = component_labels(&sg.graph, Some(&mask));
    // Columns are never cut: their vertical edges have no subdivisions.
    let label = |i: usize| labels.label[sg.grid_vertex(i, 0)];
    let mut best = ColumnRun { first: 0, last: 0 };
    let mut start = 0;
    for i in 1..=sg.columns() {
        if i == sg.columns() || label(i) != label(start) {
            let run = ColumnRun { first: start, last: i - 1 };
            if run.len() > best.len() {
                best = run;
            }
            start = i;
        }
    }
    Ok(best)
}

/// A grid found inside `G_h`: columns are vertical tree paths, rows are
/// the bottom levels, and the level-path segments between consecutive
/// columns become subdivision chains.
#[derive(Debug, Clone)]
pub struct EscapeGrid {
    pub grid: SubdividedGrid,
    /// Blocked vertices translated to grid ids.
    pub removed: VertexSet,
    /// Depth of the top row.
    pub top_depth: usize,
}

/// Builds the grid spanned by `paths` (each from a vertex down to a leaf,
/// given in left-to-right order of their first vertices) on the bottom
/// `rows` levels of `G_h`, and maps `blocked` into it. Fails if a blocked
/// vertex lands on a column.
pub fn escape_grid(gh: &GhGraph, paths: &[Vec<Vertex>], rows: usize, blocked: &VertexSet) -> Result<EscapeGrid, WitnessError> {
    let t = &gh.tree;
    let h = gh.height();
    if paths.is_empty() || rows == 0 || rows > h + 1 {
        return Err(WitnessError::InvalidParameter(format!("{} columns, {rows} rows", paths.len())));
    }
    let top_depth = h + 1 - rows;
    let at = |c: usize, d: usize| -> Result<Vertex, WitnessError> {
        let p = &paths[c];
        let start = t.depth(p[0]);
        if start > top_depth || p.len() != h - start + 1 {
            return Err(WitnessError::InvalidParameter(format!("path from {} does not span the rows", p[0])));
        }
        Ok(p[d - start])
    };
    let x = paths.len();
    let mut divisions = Vec::with_capacity((x - 1) * rows);
    for c in 0..x - 1 {
        for r in 0..rows {
            let d = top_depth + r;
            let (a, b) = (at(c, d)?, at(c + 1, d)?);
            if a >= b {
                return Err(WitnessError::InvalidParameter("columns are not in left-to-right order".into()));
            }
            divisions.push(b - a - 1);
        }
    }
    let grid = SubdividedGrid::with_budget(x, rows, &divisions, gh.graph.vertex_count().max(x * rows))?;
    let mut removed = Vec::new();
    for c in 0..x {
        for r in 0..rows {
            let v = at(c, top_depth + r)?;
            if blocked.contains(v) {
                return Err(WitnessError::InvalidParameter(format!("column vertex {v} is blocked")));
            }
            if c + 1 < x {
                let chain = grid.chain(c, r);
                for (k, u) in (v + 1..v + 1 + chain.len()).enumerate() {
                    if blocked.contains(u) {
                        removed.push(chain.start + k);
                    }
                }
            }
        }
    }
    Ok(EscapeGrid { grid, removed: VertexSet::from(removed), top_depth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::components_avoiding;

    #[test]
    fn nothing_removed_gives_whole_grid() {
        let sg = SubdividedGrid::uniform(4, 2, 1).unwrap();
        let run = grid_connectivity(&sg, &VertexSet::new(), 1).unwrap();
        assert_eq!(run, ColumnRun { first: 0, last: 3 });
    }

    #[test]
    fn cut_between_second_and_third_column() {
        let sg = SubdividedGrid::uniform(4, 2, 1).unwrap();
        let cut: Vec<Vertex> = (0..2).map(|j| sg.chain(1, j).start).collect();
        let extra = sg.chain(0, 0).start;
        let s: VertexSet = cut.into_iter().chain([extra]).collect();
        let run = grid_connectivity(&sg, &s, 2).unwrap();
        assert!(run.len() >= 2);
        let comps = components_avoiding(&sg.graph, &s).unwrap();
        let home = comps.iter().find(|c| c.contains(sg.grid_vertex(run.first, 0))).unwrap();
        assert!((run.first..=run.last).all(|i| sg.column(i).all(|v| home.contains(v))));
    }

    #[test]
    fn boundary_and_bad_input() {
        let sg = SubdividedGrid::uniform(3, 2, 1).unwrap();
        let s: VertexSet = sg.subdivision_vertices().iter().take(4).collect();
        assert!(matches!(grid_connectivity(&sg, &s, 2), Err(WitnessError::TooManyRemoved { .. })));
        assert_eq!(grid_connectivity(&sg, &VertexSet::from(vec![0]), 2), Err(WitnessError::SNotSubdivisionOnly(0)));
    }

    #[test]
    fn escape_grid_on_g3() {
        let gh = GhGraph::new(3).unwrap();
        // columns through 3 and 6, rows at depths 2 and 3
        let paths = vec![vec![3, 7], vec![6, 13]];
        let eg = escape_grid(&gh, &paths, 2, &VertexSet::from(vec![4, 9])).unwrap();
        assert_eq!(eg.grid.divisions(), vec![2, 5]);
        assert_eq!(eg.removed.len(), 2);
        assert!(eg.removed.iter().all(|v| eg.grid.is_subdivision(v)));
    }
}
