use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::certificate::{
    Branch, FinalCell, GridRecord, Inequality, MaxBag, Relation, StageRecord, TRecord, WitnessCertificate,
};
use super::{escape_grid, grid_connectivity, startup, Infeasible, WitnessError};
use crate::arith::{ceil, ceil_log2, ceil_sqrt_log2, floor_log, int, ratio};
use crate::generators::GhGraph;
use crate::graph::{Vertex, VertexSet};
use crate::percolation::{grow_compact, CompactFamily};
use crate::products::{
    diameter_spread, shared_neighbor_bag, validate_hpartition, validate_layering, HPartition, Layering, PartitionError,
};

/// Knobs for [`extract_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessConfig {
    pub alpha: BigRational,
    /// Replaces the default `c = 2^ceil(sqrt(log2 h))`.
    pub c: Option<u64>,
    /// Replaces the computed number of growth rounds `t`.
    pub iterations: Option<usize>,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig { alpha: ratio(1, 5), c: None, iterations: None }
    }
}

/// `2^ceil(sqrt(log2 h))`.
pub fn default_c(h: usize) -> u64 {
    1u64 << ceil_sqrt_log2(h.max(1) as u128)
}

/// The bag and family at the start of a growth round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationState {
    pub x: Vertex,
    pub family: CompactFamily,
}

fn pow2_rational(e: i64) -> BigRational {
    let p = BigRational::from_integer(BigInt::one() << e.unsigned_abs());
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

fn q(n: usize) -> BigRational {
    int(n as i128)
}

fn stop(stage: String, checks: &[Inequality]) -> Result<(), WitnessError> {
    match checks.iter().find(|c| !c.holds) {
        Some(c) => Err(WitnessError::Infeasible(Infeasible { stage, inequality: c.clone() })),
        None => Ok(()),
    }
}

/// One growth round: grows the family held by bag `x_i` against that bag,
/// keeps the parts whose columns fall in the largest connected run of the
/// resulting grid, and moves to the neighboring bag that holds them.
/// Returns the record of stage `i + 1`.
pub fn iterate(gh: &GhGraph, tp: &HPartition, c: u64, i: usize, state: &IterationState) -> Result<StageRecord, WitnessError> {
    let t = &gh.tree;
    let h = gh.height();
    let stage = format!("round {i}");
    let s = tp.part(state.x);
    let f = &state.family;
    let room = f.m as i64 - f.ell as i64 - 2;
    let mut checks = vec![Inequality::new("|B_x| < 2^(m - ell - 2)", &q(s.len()), Relation::Lt, &pow2_rational(room))];
    stop(stage.clone(), &checks)?;
    let grown = grow_compact(t, f, s)?;

    let mut columns: Vec<(Vertex, usize, &Vec<Vertex>)> = Vec::new();
    for (part, (members, paths)) in grown.family.parts.iter().zip(&grown.paths).enumerate() {
        for (v, path) in members.iter().zip(paths) {
            columns.push((v, part, path));
        }
    }
    columns.sort_by_key(|&(v, _, _)| t.leaf_interval(v).start);
    let m_next = columns.iter().map(|&(v, _, _)| t.height_of(v)).min().expect("family is nonempty");
    let rows = m_next + 1;
    let paths: Vec<Vec<Vertex>> = columns.iter().map(|(_, _, p)| (*p).clone()).collect();
    let eg = escape_grid(gh, &paths, rows, s)?;
    let p = eg.removed.len() / rows + 1;
    let run = grid_connectivity(&eg.grid, &eg.removed, p)?;

    let mut inside = vec![0usize; grown.family.parts.len()];
    for &(_, part, _) in &columns[run.first..=run.last] {
        inside[part] += 1;
    }
    let kept: Vec<usize> = (0..inside.len()).filter(|&j| inside[j] == grown.family.parts[j].len()).collect();
    let q_prev = f.parts.len();
    let ch = c as u128 * h as u128;
    checks.push(Inequality::new("q_next >= 1", &q(kept.len()), Relation::Ge, &int(1)));
    checks.push(Inequality::new(
        "q_next > q / (10 c) - 2",
        &q(kept.len()),
        Relation::Gt,
        &(q(q_prev) / int(10 * c as i128) - int(2)),
    ));
    checks.push(Inequality::new(
        "ell <= i (ceil(log2(c h)) + 2)",
        &q(grown.family.ell),
        Relation::Le,
        &q(i * (ceil_log2(ch.max(1)) as usize + 2)),
    ));
    stop(stage, &checks)?;

    let parts: Vec<VertexSet> = kept.iter().map(|&j| grown.family.parts[j].clone()).collect();
    let anchors: Vec<Vertex> = kept.iter().map(|&j| grown.family.anchors[j]).collect();
    let first = parts[0].first().expect("parts are nonempty");
    let mut next = None;
    for v in parts.iter().flat_map(|p| p.iter()) {
        let y = shared_neighbor_bag(&gh.graph, tp, state.x, first, v)?;
        assert!(next.is_none_or(|n| n == y), "members of one component share a bag");
        next = Some(y);
    }
    let family = CompactFamily { parts, anchors, ..grown.family };
    Ok(StageRecord {
        i: i + 1,
        x: next.expect("family is nonempty"),
        family,
        grid: Some(GridRecord { columns: paths.len(), rows, removed: eg.removed.len(), p, first: run.first, last: run.last }),
        checks,
    })
}

fn host_checks(tp: &HPartition) -> Vec<Inequality> {
    let host = tp.host();
    let labels = crate::graph::component_labels(host, None);
    let rank = host.edge_count() as i128 - host.vertex_count() as i128 + labels.count as i128;
    vec![
        Inequality::new("host components <= 1", &int(labels.count as i128), Relation::Le, &int(1)),
        Inequality::new("host cycle rank <= 0", &int(rank), Relation::Le, &int(0)),
    ]
}

/// Runs the whole pipeline on a tree-partition and a layering of `G_h`.
///
/// The result is a certificate on every branch: an early exit when some bag
/// already has at least `c h` vertices, the main branch, or an infeasible
/// record naming the inequality that failed. Invalid inputs are errors.
pub fn extract_witness(
    gh: &GhGraph,
    tp: &HPartition,
    lay: &Layering,
    cfg: &WitnessConfig,
) -> Result<WitnessCertificate, WitnessError> {
    let g = &gh.graph;
    let h = gh.height();
    let bad = validate_hpartition(g, tp)?;
    if let Some(&first) = bad.first() {
        return Err(PartitionError::Invalid { kind: "tree-partition", count: bad.len(), first }.into());
    }
    let bad = validate_layering(g, lay)?;
    if let Some(&first) = bad.first() {
        return Err(PartitionError::Invalid { kind: "layering", count: bad.len(), first }.into());
    }
    if cfg.alpha <= ratio(0, 1) || cfg.alpha >= ratio(1, 4) {
        return Err(WitnessError::InvalidParameter(format!("alpha = {} is not in (0, 1/4)", cfg.alpha)));
    }
    let c = cfg.c.unwrap_or_else(|| default_c(h));
    if c == 0 {
        return Err(WitnessError::InvalidParameter("c must be positive".into()));
    }
    let mut cert = WitnessCertificate {
        h,
        c: c.to_string(),
        c_overridden: cfg.c.is_some(),
        alpha: cfg.alpha.to_string(),
        branch: Branch::Infeasible,
        max_bag: None,
        startup: None,
        t: None,
        stages: Vec::new(),
        final_cell: None,
        infeasible: None,
        inputs: None,
    };
    let checks = host_checks(tp);
    if let Some(bad) = checks.into_iter().find(|c| !c.holds) {
        cert.infeasible = Some(Infeasible { stage: "input".into(), inequality: bad });
        return Ok(cert);
    }

    let (x, size) = tp
        .parts()
        .iter()
        .enumerate()
        .map(|(x, b)| (x, b.len()))
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .expect("host is nonempty");
    cert.max_bag = Some(MaxBag { x, size });
    let ch = c as u128 * h as u128;
    if size as u128 >= ch {
        let bag = tp.part(x);
        let spread = diameter_spread(bag, lay)?;
        let bound = ceil(&ratio(size as i128, 2 * h as i128 + 1)).to_usize().expect("fits");
        cert.branch = Branch::EarlyExit;
        cert.final_cell = Some(FinalCell { x, y: spread.layer, cell: spread.count, bound, part: bag.clone() });
        return Ok(cert);
    }

    let cq = int(c as i128);
    let first = match startup(gh, tp, &cfg.alpha, &cq) {
        Ok(rec) => rec,
        Err(WitnessError::Infeasible(inf)) => {
            cert.infeasible = Some(inf);
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };
    let family = CompactFamily::singletons(&gh.tree, &first.r);
    let q1 = family.parts.len();
    cert.stages.push(StageRecord { i: 1, x: first.x, family: family.clone(), grid: None, checks: Vec::new() });
    cert.startup = Some(first);

    let t1 = floor_log(10 * c, &ratio(q1 as i128, 3));
    let log_c = ceil_log2(c as u128) as usize;
    let t2 = (h / (10 * (log_c + ceil_log2(h as u128) as usize) + 2)) as i64;
    let t = cfg.iterations.unwrap_or(t1.min(t2).max(0) as usize);
    cert.t = Some(TRecord { t1, t2, t, overridden: cfg.iterations.is_some() });

    let mut state = super::IterationState { x: cert.stages[0].x, family };
    for i in 1..=t {
        match iterate(gh, tp, c, i, &state) {
            Ok(rec) => {
                state = super::IterationState { x: rec.x, family: rec.family.clone() };
                cert.stages.push(rec);
            }
            Err(WitnessError::Infeasible(inf)) => {
                cert.infeasible = Some(inf);
                return Ok(cert);
            }
            Err(e) => return Err(e),
        }
    }

    let part = state.family.parts[0].clone();
    let spread = diameter_spread(&part, lay)?;
    let bag = tp.part(state.x);
    let cell = bag.iter().filter(|&v| lay.layer_of(v) == spread.layer).count();
    let denom = 2 * t as u128 * (ceil_log2(ch.max(1)) as u128 + 2) + 1;
    let bound = ceil(&(pow2_rational(t as i64) / int(denom as i128))).to_usize().expect("fits");
    assert!(cell >= spread.count && spread.count >= bound, "final cell meets its bound");
    cert.branch = Branch::Main;
    cert.final_cell = Some(FinalCell { x: state.x, y: spread.layer, cell, bound, part });
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::products::bfs_layering;
    use crate::witness::certificate::{StartupCase, StartupRecord};
    use crate::witness::{audit, lower_bound_report, ProductClaim};

    fn depth_layering(gh: &GhGraph) -> Layering {
        bfs_layering(&gh.graph, 0).unwrap()
    }

    fn two_bags(gh: &GhGraph, small: &[Vertex]) -> HPartition {
        let n = gh.graph.vertex_count();
        let assignment: Vec<usize> = (0..n).map(|v| usize::from(!small.contains(&v))).collect();
        HPartition::from_assignment(Graph::new(2, &[(0, 1)]).unwrap(), &assignment).unwrap()
    }

    #[test]
    fn default_c_values() {
        assert_eq!(default_c(1), 1);
        assert_eq!(default_c(16), 4);
        assert_eq!(default_c(17), 8);
        assert_eq!(default_c(20), 8);
    }

    #[test]
    fn one_bag_exits_early() {
        let gh = GhGraph::new(10).unwrap();
        let tp = HPartition::one_bag(gh.graph.vertex_count());
        let lay = depth_layering(&gh);
        let cert = extract_witness(&gh, &tp, &lay, &WitnessConfig::default()).unwrap();
        assert_eq!(cert.branch, Branch::EarlyExit);
        let f = cert.final_cell.as_ref().unwrap();
        assert_eq!(f.bound, 2047usize.div_ceil(21));
        assert_eq!(f.cell, 1024);
        audit(&cert, &gh, &tp, &lay).unwrap();
        let rep = lower_bound_report(&cert, &ProductClaim { c: 1, delta: 3, treewidth: 2 }).unwrap();
        assert_eq!(rep.n, "2047");
        assert!(rep.refuted);
    }

    #[test]
    fn non_tree_host_is_infeasible() {
        let gh = GhGraph::new(5).unwrap();
        let tp = HPartition::singletons(gh.graph.clone());
        let lay = depth_layering(&gh);
        let cert = extract_witness(&gh, &tp, &lay, &WitnessConfig::default()).unwrap();
        assert_eq!(cert.branch, Branch::Infeasible);
        assert_eq!(cert.infeasible.as_ref().unwrap().stage, "input");
        audit(&cert, &gh, &tp, &lay).unwrap();
    }

    #[test]
    fn large_c_reaches_the_main_branch() {
        let gh = GhGraph::new(12).unwrap();
        let tp = two_bags(&gh, &(0..15).collect::<Vec<_>>());
        let lay = depth_layering(&gh);
        let cfg = WitnessConfig { c: Some(1 << 20), ..WitnessConfig::default() };
        let cert = extract_witness(&gh, &tp, &lay, &cfg).unwrap();
        assert_eq!(cert.branch, Branch::Main, "{cert:?}");
        audit(&cert, &gh, &tp, &lay).unwrap();

        let mut bad = cert.clone();
        bad.final_cell.as_mut().unwrap().cell += 1;
        assert!(audit(&bad, &gh, &tp, &lay).is_err());
        let mut bad = cert.clone();
        bad.startup.as_mut().unwrap().r.insert(0);
        assert!(audit(&bad, &gh, &tp, &lay).is_err());
        let mut bad = cert;
        bad.c_overridden = false;
        assert!(audit(&bad, &gh, &tp, &lay).is_err());
    }

    #[test]
    fn one_round_from_a_single_vertex() {
        let gh = GhGraph::new(12).unwrap();
        let tp = two_bags(&gh, &[3]);
        let c = 1 << 20;
        let family = CompactFamily::singletons(&gh.tree, &VertexSet::from(vec![3]));
        let state = IterationState { x: 0, family: family.clone() };
        let rec = iterate(&gh, &tp, c, 1, &state).unwrap();
        assert_eq!(rec.i, 2);
        assert_eq!(rec.x, 1);
        assert_eq!(rec.family.parts, vec![VertexSet::from(vec![7, 8])]);
        assert_eq!(rec.family.k, 2);
        assert!(crate::percolation::validate_compact(&rec.family).is_empty());

        // A hand-assembled certificate around this round replays cleanly.
        let lay = depth_layering(&gh);
        let h = gh.height();
        let r = VertexSet::from(vec![3]);
        let startup = StartupRecord {
            balanced: 0,
            i0: 0,
            depths_hit: false,
            y_size: 1,
            leaves: 1,
            z_size: 0,
            case: StartupCase::Leaves,
            grid: None,
            x: 0,
            r: r.clone(),
            checks: Vec::new(),
        };
        let log_c = ceil_log2(c as u128) as usize;
        let t2 = (h / (10 * (log_c + ceil_log2(h as u128) as usize) + 2)) as i64;
        let part = rec.family.parts[0].clone();
        let spread = diameter_spread(&part, &lay).unwrap();
        let cell = tp.part(1).iter().filter(|&v| lay.layer_of(v) == spread.layer).count();
        let ch = (c as u128) * h as u128;
        let bound = ceil(&(int(2) / int(2 * (ceil_log2(ch) as i128 + 2) + 1))).to_usize().unwrap();
        let cert = WitnessCertificate {
            h,
            c: c.to_string(),
            c_overridden: true,
            alpha: "1/5".into(),
            branch: Branch::Main,
            max_bag: Some(MaxBag { x: 1, size: gh.graph.vertex_count() - 1 }),
            startup: Some(startup),
            t: Some(TRecord { t1: floor_log(10 * c, &ratio(1, 3)), t2, t: 1, overridden: true }),
            stages: vec![StageRecord { i: 1, x: 0, family, grid: None, checks: Vec::new() }, rec],
            final_cell: Some(FinalCell { x: 1, y: spread.layer, cell, bound, part }),
            infeasible: None,
            inputs: None,
        };
        audit(&cert, &gh, &tp, &lay).unwrap();
        let json = cert.to_json();
        assert_eq!(WitnessCertificate::from_json(&json).unwrap(), cert);

        let mut bad = cert.clone();
        bad.stages[1].family.parts[0] = VertexSet::from(vec![7, 17]);
        assert!(audit(&bad, &gh, &tp, &lay).is_err());
        let mut bad = cert;
        bad.stages[1].checks[2].lhs = "5".into();
        assert!(audit(&bad, &gh, &tp, &lay).is_err());
    }

    #[test]
    fn grow_precondition_failure_is_named() {
        let gh = GhGraph::new(8).unwrap();
        let tp = two_bags(&gh, &(0..31).collect::<Vec<_>>());
        let family = CompactFamily::singletons(&gh.tree, &VertexSet::from(vec![3]));
        let err = iterate(&gh, &tp, 1 << 20, 1, &IterationState { x: 0, family }).unwrap_err();
        let WitnessError::Infeasible(inf) = err else { panic!("{err}") };
        assert_eq!(inf.inequality.name, "|B_x| < 2^(m - ell - 2)");
    }
}
