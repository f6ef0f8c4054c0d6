use std::collections::{HashMap, HashSet};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::certificate::{GridRecord, Inequality, Relation, StartupCase, StartupRecord};
use super::{check_separator_depths, escape_grid, find_balanced_bag, grid_connectivity, Infeasible, WitnessError};
use crate::arith::{ceil, int, ratio};
use crate::generators::GhGraph;
use crate::graph::{Vertex, VertexSet};
use crate::percolation::{find_escape_in, PercolationError};
use crate::products::{shared_neighbor_bag, validate_hpartition, HPartition, PartitionError};

pub type StartupOutcome = StartupRecord;

fn as_usize(q: &BigRational) -> usize {
    ceil(q).to_usize().unwrap_or(usize::MAX)
}

fn infeasible(checks: &[Inequality]) -> Option<WitnessError> {
    checks.iter().find(|c| !c.holds).map(|c| {
        WitnessError::Infeasible(Infeasible { stage: "startup".into(), inequality: c.clone() })
    })
}

/// Finds a bag holding an unrelated set `R` of at least `ceil(alpha^2 h / c)`
/// vertices, each of height at least `ceil(alpha h)`.
///
/// `tp` must be a tree-partition of `G_h` of width below `c h`, and
/// `0 < alpha < 1/4`.
pub fn startup(gh: &GhGraph, tp: &HPartition, alpha: &BigRational, c: &BigRational) -> Result<StartupOutcome, WitnessError> {
    if alpha <= &BigRational::zero() || alpha >= &ratio(1, 4) {
        return Err(WitnessError::InvalidParameter(format!("alpha = {alpha} is not in (0, 1/4)")));
    }
    let g = &gh.graph;
    let t = &gh.tree;
    let h = gh.height();
    let bad = validate_hpartition(g, tp)?;
    if let Some(&first) = bad.first() {
        return Err(PartitionError::Invalid { kind: "tree-partition", count: bad.len(), first }.into());
    }
    let limit = c * int(h as i128);
    if int(tp.width() as i128) >= limit {
        return Err(WitnessError::WidthTooLarge { width: tp.width(), limit: limit.to_string() });
    }
    let hq = int(h as i128);
    let need_r = as_usize(&(alpha * alpha * &hq / c));
    let need_height = as_usize(&(alpha * &hq));

    let x = find_balanced_bag(g, tp)?;
    let bag = tp.part(x);
    let depths = check_separator_depths(gh, bag)?;
    let y: Vec<Vertex> = bag.iter().filter(|&v| 4 * t.height_of(v) >= h).collect();
    let mut checks = vec![Inequality::new("|Y| >= 1", &int(y.len() as i128), Relation::Ge, &int(1))];
    if let Some(e) = infeasible(&checks) {
        return Err(e);
    }

    // The smallest subtree of T_h spanning Y.
    let top = y.iter().copied().reduce(|a, b| t.lca(a, b)).expect("Y is nonempty");
    let mut span: HashSet<Vertex> = HashSet::new();
    for &v in &y {
        let mut u = v;
        while span.insert(u) && u != top {
            u = t.parent(u).expect("top is an ancestor");
        }
    }
    let mut children: HashMap<Vertex, usize> = HashMap::new();
    for &v in &span {
        if v != top {
            *children.entry(t.parent(v).expect("below top")).or_default() += 1;
        }
    }
    let mut leaves: Vec<Vertex> = span.iter().copied().filter(|&v| v != top && !children.contains_key(&v)).collect();
    leaves.sort_unstable();

    let mut record = StartupRecord {
        balanced: x,
        i0: depths.i0,
        depths_hit: depths.pass,
        y_size: y.len(),
        leaves: leaves.len(),
        z_size: 0,
        case: StartupCase::Leaves,
        grid: None,
        x,
        r: VertexSet::new(),
        checks: Vec::new(),
    };

    let r: Vec<Vertex>;
    if leaves.len() >= need_r {
        r = leaves;
    } else {
        record.case = StartupCase::Grid;
        let leaf_set: HashSet<Vertex> = leaves.iter().copied().collect();
        let mut z: Vec<Vertex> = y
            .iter()
            .filter(|v| !leaf_set.contains(v) && !t.is_leaf(**v))
            .flat_map(|&v| [2 * v + 1, 2 * v + 2])
            .filter(|u| !span.contains(u))
            .collect();
        z.sort_unstable();
        record.z_size = z.len();

        let mut columns: Vec<(Vertex, Vec<Vertex>)> = Vec::new();
        for &r0 in &z {
            let found = if !bag.iter().any(|v| t.is_ancestor(r0, v)) {
                Some((r0, t.left_spine(r0)))
            } else {
                match find_escape_in(t, r0, bag) {
                    Ok(e) if t.parent(e.vertex) == Some(r0) && !bag.contains(r0) => {
                        let mut path = vec![r0];
                        path.extend(e.path);
                        Some((r0, path))
                    }
                    Ok(e) => Some((e.vertex, e.path)),
                    Err(PercolationError::PreconditionFailed(_)) | Err(PercolationError::NoEscape) => None,
                    Err(e) => return Err(e.into()),
                }
            };
            if let Some((v, path)) = found {
                if t.height_of(v) >= need_height {
                    columns.push((v, path));
                }
            }
        }
        checks.push(Inequality::new("|Z'| >= 1", &int(columns.len() as i128), Relation::Ge, &int(1)));
        checks.push(Inequality::new("ceil(alpha h) >= 1", &int(need_height as i128), Relation::Ge, &int(1)));
        if let Some(e) = infeasible(&checks) {
            return Err(e);
        }
        // Z is unrelated and each vertex was replaced by a descendant, so
        // id order within a level is not enough; sort by leaf interval.
        columns.sort_by_key(|(v, _)| t.leaf_interval(*v).start);
        let paths: Vec<Vec<Vertex>> = columns.iter().map(|(_, p)| p.clone()).collect();
        let eg = escape_grid(gh, &paths, need_height, bag)?;
        let p = eg.removed.len() / need_height + 1;
        let run = grid_connectivity(&eg.grid, &eg.removed, p)?;
        record.grid = Some(GridRecord {
            columns: paths.len(),
            rows: need_height,
            removed: eg.removed.len(),
            p,
            first: run.first,
            last: run.last,
        });
        r = columns[run.first..=run.last].iter().map(|(v, _)| *v).collect();
    }

    let min_height = r.iter().map(|&v| t.height_of(v)).min().unwrap_or(0);
    checks.push(Inequality::new("|R| >= alpha^2 h / c", &int(r.len() as i128), Relation::Ge, &(alpha * alpha * &hq / c)));
    checks.push(Inequality::new("min height(R) >= alpha h", &int(min_height as i128), Relation::Ge, &(alpha * &hq)));
    if let Some(e) = infeasible(&checks) {
        return Err(e);
    }
    record.x = match record.case {
        StartupCase::Leaves => x,
        StartupCase::Grid => {
            let first = r[0];
            let mut hop = None;
            for &v in &r {
                let y = shared_neighbor_bag(g, tp, x, first, v)?;
                debug_assert!(hop.is_none_or(|h| h == y));
                hop = Some(y);
            }
            hop.expect("R is nonempty")
        }
    };
    record.r = VertexSet::from(r);
    record.checks = checks;
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn alpha_must_be_below_quarter() {
        let gh = GhGraph::new(4).unwrap();
        let tp = HPartition::one_bag(gh.graph.vertex_count());
        let e = startup(&gh, &tp, &ratio(1, 4), &int(100));
        assert!(matches!(e, Err(WitnessError::InvalidParameter(_))));
    }

    #[test]
    fn width_must_be_below_ch() {
        let gh = GhGraph::new(4).unwrap();
        let tp = HPartition::one_bag(gh.graph.vertex_count());
        assert!(matches!(startup(&gh, &tp, &ratio(1, 5), &int(2)), Err(WitnessError::WidthTooLarge { .. })));
    }

    #[test]
    fn one_bag_small_h_is_infeasible_or_sound() {
        let gh = GhGraph::new(4).unwrap();
        let tp = HPartition::one_bag(gh.graph.vertex_count());
        match startup(&gh, &tp, &ratio(1, 5), &int(100)) {
            Ok(rec) => {
                assert!(gh.tree.is_unrelated(&rec.r));
                assert!(rec.r.is_subset(tp.part(rec.x)));
            }
            Err(WitnessError::Infeasible(inf)) => assert!(!inf.inequality.holds),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn two_bags_hop_to_the_neighbor() {
        // Bag 0 is the top three levels of G_8, bag 1 the rest.
        let gh = GhGraph::new(8).unwrap();
        let n = gh.graph.vertex_count();
        let assignment: Vec<usize> = (0..n).map(|v| usize::from(v >= 7)).collect();
        let host = Graph::new(2, &[(0, 1)]).unwrap();
        let tp = HPartition::from_assignment(host, &assignment).unwrap();
        let rec = startup(&gh, &tp, &ratio(1, 5), &int(1 << 10)).unwrap();
        assert!(gh.tree.is_unrelated(&rec.r));
        assert!(rec.r.is_subset(tp.part(rec.x)));
        assert!(rec.checks.iter().all(|c| c.holds));
    }
}
