use std::str::FromStr;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::certificate::{Branch, Relation, StageRecord, StartupCase, WitnessCertificate};
use crate::arith::{ceil, ceil_log2, ceil_sqrt_log2, floor_log, int, ratio};
use crate::generators::{CompleteBinaryTree, GhGraph};
use crate::graph::{component_labels, Vertex, VertexSet};
use crate::products::{validate_hpartition, validate_layering, HPartition, Layering};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("audit failed at {stage}: {reason}")]
pub struct AuditError {
    pub stage: String,
    pub reason: String,
}

fn fail<T>(stage: &str, reason: impl Into<String>) -> Result<T, AuditError> {
    Err(AuditError { stage: stage.into(), reason: reason.into() })
}

fn ensure(ok: bool, stage: &str, reason: impl FnOnce() -> String) -> Result<(), AuditError> {
    if ok {
        Ok(())
    } else {
        fail(stage, reason())
    }
}

fn parse_rational(s: &str, stage: &str) -> Result<BigRational, AuditError> {
    BigRational::from_str(s).or_else(|_| fail(stage, format!("'{s}' is not a rational")))
}

// A leaf of `t` is reachable from `v` without touching `s`.
fn reaches_leaf(t: &CompleteBinaryTree, v: Vertex, s: &VertexSet) -> bool {
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        if s.contains(u) {
            continue;
        }
        if t.is_leaf(u) {
            return true;
        }
        stack.push(2 * u + 1);
        stack.push(2 * u + 2);
    }
    false
}

fn pairwise_unrelated(t: &CompleteBinaryTree, vs: &[Vertex]) -> bool {
    let mut spans: Vec<_> = vs.iter().map(|&v| t.leaf_interval(v)).collect();
    spans.sort_by_key(|r| r.start);
    spans.windows(2).all(|w| w[0].end <= w[1].start)
}

/// Replays a certificate against the inputs it was produced from.
///
/// Every set, size and inequality is recomputed from the partition, the
/// layering and the tree structure; nothing in the certificate is trusted
/// beyond the choices it records.
pub fn audit(cert: &WitnessCertificate, gh: &GhGraph, tp: &HPartition, lay: &Layering) -> Result<(), AuditError> {
    let g = &gh.graph;
    let h = gh.height();
    ensure(cert.h == h, "input", || format!("certificate is for h = {}, graph has h = {h}", cert.h))?;
    match validate_hpartition(g, tp) {
        Ok(v) if v.is_empty() => {}
        _ => return fail("input", "partition is not valid for the graph"),
    }
    match validate_layering(g, lay) {
        Ok(v) if v.is_empty() => {}
        _ => return fail("input", "layering is not valid for the graph"),
    }
    let c = parse_rational(&cert.c, "input")?;
    let alpha = parse_rational(&cert.alpha, "input")?;
    ensure(c.is_integer() && c >= int(1), "input", || format!("c = {c} is not a positive integer"))?;
    ensure(alpha > int(0) && alpha < ratio(1, 4), "input", || format!("alpha = {alpha} is not in (0, 1/4)"))?;
    if !cert.c_overridden {
        let expected = int(1i128 << ceil_sqrt_log2(h.max(1) as u128));
        ensure(c == expected, "input", || format!("c = {c}, expected {expected}"))?;
    }
    let c_int = c.to_integer().to_u64().unwrap_or(u64::MAX);
    let ch = c_int as u128 * h as u128;

    let host = tp.host();
    let host_labels = component_labels(host, None);
    let is_tree = host_labels.count == 1 && host.edge_count() + 1 == host.vertex_count();

    if cert.branch != Branch::Infeasible || cert.max_bag.is_some() {
        let (x, size) = tp
            .parts()
            .iter()
            .enumerate()
            .map(|(x, b)| (x, b.len()))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("host is nonempty");
        match cert.max_bag {
            Some(m) if m.x == x && m.size == size => {}
            _ => return fail("max-bag", format!("largest bag is {x} with {size} vertices")),
        }
    }

    match cert.branch {
        Branch::EarlyExit => {
            let m = cert.max_bag.expect("checked above");
            ensure(m.size as u128 >= ch, "early-exit", || format!("bag of {} is below c h = {ch}", m.size))?;
            let f = cert.final_cell.as_ref().map_or_else(|| fail("final", "missing final cell"), Ok)?;
            ensure(f.x == m.x && &f.part == tp.part(m.x), "final", || "part is not the largest bag".into())?;
            check_cell(tp, lay, f.x, f.y, f.cell)?;
            let bound = ceil(&ratio(m.size as i128, 2 * h as i128 + 1)).to_usize().unwrap_or(usize::MAX);
            ensure(f.bound == bound, "final", || format!("bound {} should be {bound}", f.bound))?;
            ensure(f.cell >= f.bound && f.bound >= 1, "final", || "cell is below its bound".into())?;
            ensure(cert.stages.is_empty() && cert.infeasible.is_none(), "final", || "extra records".into())?;
            Ok(())
        }
        Branch::Main | Branch::Infeasible => {
            let main = cert.branch == Branch::Main;
            if !is_tree {
                ensure(!main, "input", || "host is not a tree".into())?;
            }
            if let Some(m) = cert.max_bag {
                ensure((m.size as u128) < ch, "max-bag", || format!("bag of {} is not below c h = {ch}", m.size))?;
            }
            replay_main(cert, gh, tp, &alpha, c_int)?;
            if main {
                ensure(cert.infeasible.is_none(), "final", || "main branch with an infeasible record".into())?;
                let tr = cert.t.map_or_else(|| fail("t", "missing t record"), Ok)?;
                ensure(cert.stages.len() == tr.t + 1, "t", || format!("{} stages for t = {}", cert.stages.len(), tr.t))?;
                let last = cert.stages.last().expect("t + 1 >= 1 stages");
                let f = cert.final_cell.as_ref().map_or_else(|| fail("final", "missing final cell"), Ok)?;
                ensure(f.x == last.x, "final", || "final bag is not the last stage's bag".into())?;
                ensure(Some(&f.part) == last.family.parts.first(), "final", || "part is not the first family part".into())?;
                check_cell(tp, lay, f.x, f.y, f.cell)?;
                let denom = 2 * tr.t as u128 * (ceil_log2(ch.max(1)) as u128 + 2) + 1;
                let bound = ceil(&(BigRational::from_integer((1u128 << tr.t).into()) / int(denom as i128)));
                ensure(int(f.bound as i128) == BigRational::from_integer(bound), "final", || "bound mismatch".into())?;
                ensure(f.part.len() == 1 << tr.t, "final", || "part size is not 2^t".into())?;
                ensure(f.cell >= f.bound && f.bound >= 1, "final", || "cell is below its bound".into())?;
            } else {
                let inf = cert.infeasible.as_ref().map_or_else(|| fail("infeasible", "missing record"), Ok)?;
                ensure(!inf.stage.is_empty(), "infeasible", || "unnamed stage".into())?;
                ensure(inf.inequality.evaluate() == Some(false) && !inf.inequality.holds, "infeasible", || {
                    format!("recorded inequality '{}' does not fail", inf.inequality)
                })?;
                ensure(cert.final_cell.is_none(), "infeasible", || "infeasible run with a final cell".into())?;
                if inf.stage == "input" {
                    ensure(!is_tree, "infeasible", || "host is a tree".into())?;
                }
            }
            Ok(())
        }
    }
}

fn check_cell(tp: &HPartition, lay: &Layering, x: Vertex, y: usize, cell: usize) -> Result<(), AuditError> {
    ensure(x < tp.host().vertex_count() && y < lay.len(), "final", || "cell index out of range".into())?;
    let actual = tp.part(x).intersection(lay.layer(y)).len();
    ensure(actual == cell, "final", || format!("cell ({x}, {y}) has {actual} vertices, certificate says {cell}"))
}

fn replay_main(
    cert: &WitnessCertificate,
    gh: &GhGraph,
    tp: &HPartition,
    alpha: &BigRational,
    c: u64,
) -> Result<(), AuditError> {
    let t = &gh.tree;
    let h = gh.height();
    let hq = int(h as i128);
    let cq = int(c as i128);
    let nodes = tp.host().vertex_count();
    if let Some(s) = &cert.startup {
        let stage = "startup";
        ensure(s.x < nodes && s.balanced < nodes, stage, || "node out of range".into())?;
        ensure(!s.r.is_empty() && s.r.is_subset(tp.part(s.x)), stage, || "R is not inside its bag".into())?;
        ensure(pairwise_unrelated(t, s.r.as_slice()), stage, || "R is not unrelated".into())?;
        let need_r = alpha * alpha * &hq / &cq;
        ensure(int(s.r.len() as i128) >= need_r, stage, || format!("|R| = {} < {need_r}", s.r.len()))?;
        let need_height = alpha * &hq;
        ensure(s.r.iter().all(|v| int(t.height_of(v) as i128) >= need_height), stage, || "R has a low vertex".into())?;
        ensure(s.checks.iter().all(|c| c.holds && c.is_consistent()), stage, || "a recorded check fails".into())?;
        if s.case == StartupCase::Grid && s.x != s.balanced {
            ensure(tp.host().has_edge(s.x, s.balanced), stage, || "hop is not along a host edge".into())?;
        }
    }
    if cert.stages.is_empty() {
        return Ok(());
    }
    let s = cert.startup.as_ref().map_or_else(|| fail("stage 1", "stages without a startup record"), Ok)?;
    let first = &cert.stages[0];
    ensure(first.i == 1 && first.x == s.x, "stage 1", || "does not start at the startup bag".into())?;
    let singletons: Vec<VertexSet> = s.r.iter().map(|v| VertexSet::from(vec![v])).collect();
    ensure(first.family.parts == singletons && first.family.anchors == s.r.to_vec(), "stage 1", || {
        "family is not the singletons of R".into()
    })?;
    let min_height = s.r.iter().map(|v| t.height_of(v)).min().unwrap_or(0);
    ensure(first.family.m == min_height && first.family.k == 1 && first.family.ell == 0, "stage 1", || {
        "family parameters differ from (1, 0, m)".into()
    })?;
    let ch = c as u128 * h as u128;
    for (idx, st) in cert.stages.iter().enumerate() {
        let name = format!("stage {}", idx + 1);
        ensure(st.i == idx + 1, &name, || "stage numbers are out of order".into())?;
        check_family(t, tp, st, &name)?;
        ensure(st.checks.iter().all(|c| c.holds && c.is_consistent()), &name, || "a recorded check fails".into())?;
        let want_ell = idx * (ceil_log2(ch.max(1)) as usize + 2);
        ensure(st.family.ell <= want_ell, &name, || format!("ell = {} exceeds {want_ell}", st.family.ell))?;
        if idx == 0 {
            continue;
        }
        let prev = &cert.stages[idx - 1];
        let blocked = tp.part(prev.x);
        ensure(tp.host().has_edge(prev.x, st.x), &name, || "hop is not along a host edge".into())?;
        let q_prev = int(prev.family.parts.len() as i128);
        let q_now = int(st.family.parts.len() as i128);
        ensure(q_now > &q_prev / (int(10) * &cq) - int(2), &name, || "part count dropped too far".into())?;
        let recorded = st.checks.iter().any(|c| {
            c.relation == Relation::Gt && c.lhs == q_now.to_string() && c.rhs == (&q_prev / (int(10) * &cq) - int(2)).to_string()
        });
        ensure(recorded, &name, || "part-count inequality is not recorded with these numbers".into())?;
        for (part, &a) in st.family.parts.iter().zip(&st.family.anchors) {
            let j = prev.family.anchors.iter().position(|&b| b == a);
            let Some(j) = j else { return fail(&name, format!("anchor {a} is new")) };
            let before = &prev.family.parts[j];
            ensure(part.len() == 2 * before.len(), &name, || "part did not double".into())?;
            for v in part.iter() {
                let parent = t.parent(v);
                ensure(parent.is_some_and(|p| blocked.contains(p)), &name, || format!("parent of {v} is not blocked"))?;
                ensure(reaches_leaf(t, v, blocked), &name, || format!("{v} has no escape path"))?;
                let from = before.iter().filter(|&r| t.is_ancestor(r, v)).count();
                ensure(from == 1, &name, || format!("{v} does not descend from the previous part"))?;
            }
        }
    }
    if let Some(tr) = cert.t {
        let q1 = cert.stages[0].family.parts.len();
        let t1 = floor_log(10 * c, &ratio(q1 as i128, 3));
        let log_c = ceil_log2(c as u128) as usize;
        let t2 = (h / (10 * (log_c + ceil_log2(h as u128) as usize) + 2)) as i64;
        ensure(tr.t1 == t1 && tr.t2 == t2, "t", || format!("t1, t2 should be {t1}, {t2}"))?;
        ensure(tr.overridden || tr.t == t1.min(t2).max(0) as usize, "t", || "t is not min(t1, t2)".into())?;
    }
    Ok(())
}

fn check_family(t: &CompleteBinaryTree, tp: &HPartition, st: &StageRecord, name: &str) -> Result<(), AuditError> {
    let f = &st.family;
    ensure(st.x < tp.host().vertex_count(), name, || "node out of range".into())?;
    ensure(f.tree_height == t.height(), name, || "family is over another tree".into())?;
    ensure(!f.parts.is_empty() && f.parts.len() == f.anchors.len(), name, || "empty or ragged family".into())?;
    let k = 1usize << (st.i - 1);
    ensure(f.k == k, name, || format!("k = {} should be {k}", f.k))?;
    let bag = tp.part(st.x);
    let mut all = Vec::new();
    for (part, &a) in f.parts.iter().zip(&f.anchors) {
        ensure(t.contains(a) && t.height_of(a) >= f.m, name, || format!("anchor {a} is too low"))?;
        ensure(part.len() >= f.k, name, || "part is too small".into())?;
        for v in part.iter() {
            ensure(t.contains(v) && t.is_ancestor(a, v), name, || format!("{v} is not below anchor {a}"))?;
            ensure(t.depth(v) - t.depth(a) <= f.ell, name, || format!("{v} is too far from anchor {a}"))?;
            ensure(bag.contains(v), name, || format!("{v} is not in bag {}", st.x))?;
            all.push(v);
        }
    }
    ensure(pairwise_unrelated(t, &f.anchors), name, || "anchors are related".into())?;
    ensure(pairwise_unrelated(t, &all), name, || "members are related".into())?;
    Ok(())
}

/// A claimed embedding `G_h ⊆ H ⊠ P ⊠ K_c` with `H` of maximum degree
/// `delta` and treewidth `treewidth`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductClaim {
    pub c: u64,
    pub delta: u64,
    pub treewidth: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBoundReport {
    pub h: usize,
    /// `2^(h+1) - 1`, as a decimal string.
    pub n: String,
    pub cell: usize,
    /// `24 c delta (treewidth + 1)`: the width of the tree product the
    /// claim would yield.
    pub implied_width: u128,
    /// The claim forces `c delta (treewidth + 1) >= ceil(cell / 24)`.
    pub min_c_delta_tw1: u128,
    pub refuted: bool,
    pub verdict: String,
}

/// Compares a claimed product structure with the cell a certificate found.
pub fn lower_bound_report(cert: &WitnessCertificate, claim: &ProductClaim) -> Result<LowerBoundReport, AuditError> {
    let f = cert.final_cell.as_ref().map_or_else(|| fail("report", "certificate has no final cell"), Ok)?;
    let implied = 24u128 * claim.c as u128 * claim.delta as u128 * (claim.treewidth as u128 + 1);
    let refuted = implied < f.cell as u128;
    let n = (num_bigint::BigUint::from(1u8) << (cert.h + 1)) - 1u8;
    let verdict = if refuted {
        "claim refuted for this partition pair".to_string()
    } else {
        "claim not refuted by this certificate".to_string()
    };
    Ok(LowerBoundReport {
        h: cert.h,
        n: n.to_string(),
        cell: f.cell,
        implied_width: implied,
        min_c_delta_tw1: (f.cell as u128).div_ceil(24),
        refuted,
        verdict,
    })
}
