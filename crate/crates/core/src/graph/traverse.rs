use std::collections::VecDeque;

use super::{Graph, GraphError, Vertex, VertexSet};

/// Marker for "not reached" in distance and label arrays.
pub const UNREACHED: u32 = u32::MAX;

/// A graph distance; disconnected pairs are infinitely far apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

/// Breadth-first distances from `source`; `UNREACHED` where unreachable.
pub fn bfs_distances(g: &Graph, source: Vertex) -> Vec<u32> {
    let mut dist = vec![UNREACHED; g.vertex_count()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v) {
            if dist[w] == UNREACHED {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn distance(g: &Graph, u: Vertex, v: Vertex) -> Distance {
    match bfs_distances(g, u)[v] {
        UNREACHED => Distance::Infinite,
        d => Distance::Finite(d as usize),
    }
}

/// Connected-component labelling of `G - removed`.
#[derive(Debug, Clone)]
pub struct ComponentLabels {
    /// Component index per vertex, `UNREACHED` for removed vertices.
    /// Components are numbered by increasing smallest member.
    pub label: Vec<u32>,
    pub sizes: Vec<usize>,
    pub count: usize,
}

impl ComponentLabels {
    pub fn same(&self, u: Vertex, v: Vertex) -> bool {
        self.label[u] != UNREACHED && self.label[u] == self.label[v]
    }

    pub fn largest(&self) -> Option<(usize, usize)> {
        self.sizes
            .iter()
            .copied()
            .enumerate()
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
    }
}

/// Labels the components of `G - removed`; `removed` is a membership mask.
pub fn component_labels(g: &Graph, removed: Option<&[bool]>) -> ComponentLabels {
    let n = g.vertex_count();
    let gone = |v: Vertex| removed.is_some_and(|m| m[v]);
    let mut label = vec![UNREACHED; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if label[s] != UNREACHED || gone(s) {
            continue;
        }
        let id = sizes.len() as u32;
        label[s] = id;
        queue.push_back(s);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for w in g.neighbors(v) {
                if label[w] == UNREACHED && !gone(w) {
                    label[w] = id;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }
    let count = sizes.len();
    ComponentLabels { label, sizes, count }
}

/// Components of `G - removed`, ordered by smallest member.
pub fn components_avoiding(g: &Graph, removed: &VertexSet) -> Result<Vec<VertexSet>, GraphError> {
    g.check_subset(removed)?;
    let mask = removed.mask(g.vertex_count());
    let labels = component_labels(g, Some(&mask));
    let mut parts: Vec<Vec<Vertex>> = labels.sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
    for (v, &l) in labels.label.iter().enumerate() {
        if l != UNREACHED {
            parts[l as usize].push(v);
        }
    }
    Ok(parts.into_iter().map(VertexSet::from_sorted_unchecked).collect())
}

/// `max dist(v, w)` over pairs of members of `r`, by a breadth-first search
/// from each member that stops once every member has been reached.
pub fn diameter_of_subset(g: &Graph, r: &VertexSet) -> Result<Distance, GraphError> {
    if r.is_empty() {
        return Err(GraphError::EmptySubset);
    }
    g.check_subset(r)?;
    let n = g.vertex_count();
    let target = r.mask(n);
    let mut dist = vec![UNREACHED; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    let mut best = 0usize;
    for s in r.iter() {
        for &v in &touched {
            dist[v] = UNREACHED;
        }
        touched.clear();
        dist[s] = 0;
        touched.push(s);
        queue.clear();
        queue.push_back(s);
        let mut left = r.len() - 1;
        while left > 0 {
            let Some(v) = queue.pop_front() else { break };
            for w in g.neighbors(v) {
                if dist[w] == UNREACHED {
                    dist[w] = dist[v] + 1;
                    touched.push(w);
                    queue.push_back(w);
                    if target[w] {
                        best = best.max(dist[w] as usize);
                        left -= 1;
                    }
                }
            }
        }
        if left > 0 {
            return Ok(Distance::Infinite);
        }
    }
    Ok(Distance::Finite(best))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn cut_vertex_splits_path() {
        let comps = components_avoiding(&path(3), &VertexSet::from(vec![1])).unwrap();
        assert_eq!(comps, vec![VertexSet::from(vec![0]), VertexSet::from(vec![2])]);
    }

    #[test]
    fn connected_triangle_is_one_component() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let comps = components_avoiding(&g, &VertexSet::new()).unwrap();
        assert_eq!(comps, vec![VertexSet::from(vec![0, 1, 2])]);
    }

    #[test]
    fn removed_must_be_vertices() {
        assert!(components_avoiding(&path(3), &VertexSet::from(vec![3])).is_err());
    }

    #[test]
    fn subset_diameters() {
        let g = path(4);
        assert_eq!(diameter_of_subset(&g, &VertexSet::from(vec![2])).unwrap(), Distance::Finite(0));
        assert_eq!(diameter_of_subset(&g, &VertexSet::from(vec![0, 3])).unwrap(), Distance::Finite(3));
        assert_eq!(diameter_of_subset(&g, &VertexSet::new()), Err(GraphError::EmptySubset));
        let split = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(diameter_of_subset(&split, &VertexSet::from(vec![0, 2])).unwrap(), Distance::Infinite);
    }

    #[test]
    fn distances() {
        let g = path(5);
        assert_eq!(distance(&g, 0, 4), Distance::Finite(4));
        assert_eq!(bfs_distances(&g, 2), vec![2, 1, 0, 1, 2]);
        let g2 = Graph::empty(2);
        assert_eq!(distance(&g2, 0, 1), Distance::Infinite);
    }
}
