//! The acceptance battery: ten independent checks, each a pure call into the
//! library with its own oracle.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{
    build_leftmost_path_partition, find_unshared_boundary, outerplanarity_check_small, treewidth_at_most_2,
};
use crate::generators::GhGraph;
use crate::graph::{Graph, Vertex};
use crate::oracle::{
    exact_treewidth_tiny, exhaustive_lemma_sweep, min_product_c, minimal_balanced_separators, Lemma, SweepParams,
};
use crate::products::{
    bfs_layering, compose_tree_partition, embedding_to_partitions, partitions_to_embedding, validate_embedding,
    validate_hpartition, validate_layering, HPartition, Layering, ProductCoord, ProductEmbedding,
};
use crate::witness::{audit, check_separator_depths, extract_witness, separator_i0, Branch, WitnessCertificate, WitnessConfig};

pub const CHECK_COUNT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Largest `h` used by the pipeline check; it covers `14..=max_height`.
    pub max_height: usize,
    /// Worker threads; 0 picks the machine default.
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 42, max_height: 20, jobs: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub detail: String,
    /// Wall time; left out of JSON so reports are reproducible.
    #[serde(default, skip_serializing)]
    pub millis: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn check_name(id: usize) -> &'static str {
    match id {
        1 => "gh-structure",
        2 => "embedding-round-trip",
        3 => "escape-exhaustive",
        4 => "two-escapes",
        5 => "grid-columns",
        6 => "separator-depths",
        7 => "compact-growth",
        8 => "pipeline-soundness",
        9 => "leftmost-construction",
        10 => "oracle-regressions",
        _ => "unknown",
    }
}

/// Cases run and the first failure, if any.
type Tally = (u64, Option<String>);

fn tally(cases: u64, failure: Option<String>, ok_detail: String) -> (bool, u64, String) {
    match failure {
        None => (true, cases, ok_detail),
        Some(f) => (false, cases, f),
    }
}

/// Runs one check by number (1 to 10).
pub fn run_check(id: usize, cfg: &SuiteConfig) -> CheckResult {
    let start = Instant::now();
    let (passed, cases, detail) = match id {
        1 => gh_structure(),
        2 => round_trip(cfg.seed, 1000),
        3 => sweep_check(Lemma::Escape, &[(3, true, 0)], cfg.seed),
        // T_1 admits no set for the two-escape lemma.
        4 => sweep_check(Lemma::TwoEscapes, &[(2, true, 0), (3, true, 0), (4, false, 10_000)], cfg.seed),
        5 => {
            let p = SweepParams { exhaustive: false, samples: 10_000, seed: cfg.seed, max_x: 5, max_y: 5, ..SweepParams::default() };
            sweep_one(Lemma::Grid, &p)
        }
        6 => separators(),
        7 => {
            let p = SweepParams { height: 10, min_height: 6, samples: 1000, seed: cfg.seed, ..SweepParams::default() };
            sweep_one(Lemma::Compact, &p)
        }
        8 => pipeline(cfg.max_height),
        9 => leftmost(12),
        10 => oracles(),
        _ => (false, 0, format!("no check numbered {id}")),
    };
    CheckResult { id, name: check_name(id).into(), passed, cases, detail, millis: start.elapsed().as_millis() }
}

/// Runs the checks in `ids` on a pool of `cfg.jobs` threads.
pub fn run_suite(ids: &[usize], cfg: &SuiteConfig) -> SuiteReport {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().expect("thread pool");
    let checks = pool.install(|| ids.par_iter().map(|&id| run_check(id, cfg)).collect());
    SuiteReport { seed: cfg.seed, checks }
}

pub fn run_all(cfg: &SuiteConfig) -> SuiteReport {
    run_suite(&(1..=CHECK_COUNT).collect::<Vec<_>>(), cfg)
}

// Edge counts of G_1..G_4 counted by hand from the definition.
const SMALL_EDGE_COUNTS: [usize; 4] = [3, 10, 25, 56];

fn gh_edges_by_definition(h: usize) -> Vec<(Vertex, Vertex)> {
    let mut edges = Vec::new();
    for d in 1..=h {
        let first = (1 << d) - 1;
        let last = (1 << (d + 1)) - 2;
        for v in first..=last {
            edges.push(((v - 1) / 2, v));
            if v < last {
                edges.push((v, v + 1));
            }
        }
    }
    edges.sort_unstable();
    edges
}

fn gh_structure() -> (bool, u64, String) {
    let mut failure = None;
    for h in 1..=20usize {
        let gh = match GhGraph::new(h) {
            Ok(g) => g,
            Err(e) => {
                failure = Some(format!("h = {h}: {e}"));
                break;
            }
        };
        let g = &gh.graph;
        let n = (1usize << (h + 1)) - 1;
        let m = (1usize << (h + 2)) - h - 4;
        if g.vertex_count() != n || g.edge_count() != m || g.max_degree() > 5 {
            failure = Some(format!("h = {h}: |V| = {}, |E| = {}, max degree {}", g.vertex_count(), g.edge_count(), g.max_degree()));
            break;
        }
        if h <= 4 {
            let mine: Vec<_> = g.edges().collect();
            if m != SMALL_EDGE_COUNTS[h - 1] || mine != gh_edges_by_definition(h) {
                failure = Some(format!("h = {h}: edge set differs from the definition"));
                break;
            }
        }
    }
    tally(20, failure, "h = 1..20: vertex, edge and degree counts match".into())
}

fn random_embedding(rng: &mut ChaCha8Rng) -> (Graph, ProductEmbedding) {
    let hn = rng.gen_range(1..=6);
    let host_edges: Vec<_> = (0..hn).flat_map(|a| (a + 1..hn).map(move |b| (a, b))).filter(|_| rng.gen_bool(0.5)).collect();
    let host = Graph::new(hn, &host_edges).expect("simple host");
    let path_vertices = rng.gen_range(1..=7);
    let c = rng.gen_range(1..=3);
    let coords: Vec<ProductCoord> = (0..hn)
        .flat_map(|h| (0..path_vertices).flat_map(move |layer| (0..c).map(move |slot| ProductCoord { h, layer, slot })))
        .collect();
    let k = rng.gen_range(1..=coords.len().min(14));
    let map: Vec<ProductCoord> = sample(rng, coords.len(), k).into_iter().map(|i| coords[i]).collect();
    let e = ProductEmbedding { factor_h: host, path_vertices, clique_size: c, map };
    let mut edges = Vec::new();
    for v in 0..k {
        for w in v + 1..k {
            let (a, b) = (e.map[v], e.map[w]);
            let adjacent = (a.h == b.h || e.factor_h.has_edge(a.h, b.h)) && a.layer.abs_diff(b.layer) <= 1;
            if adjacent && rng.gen_bool(0.6) {
                edges.push((v, w));
            }
        }
    }
    (Graph::new(k, &edges).expect("simple subgraph"), e)
}

fn round_trip_case(seed: u64, case: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    let (g, e) = random_embedding(&mut rng);
    let msg = |what: &str| format!("case {case}: {what}");
    let fail = |what: &str| Err(msg(what));
    validate_embedding(&g, &e).map_err(|err| msg(&err.to_string()))?;
    let (hp, lay, c) = embedding_to_partitions(&g, &e).map_err(|err| msg(&err.to_string()))?;
    if !validate_hpartition(&g, &hp).is_ok_and(|v| v.is_empty()) || !validate_layering(&g, &lay).is_ok_and(|v| v.is_empty()) {
        return fail("extracted partitions are not valid");
    }
    let e2 = partitions_to_embedding(&g, &hp, &lay, c).map_err(|err| msg(&err.to_string()))?;
    validate_embedding(&g, &e2).map_err(|err| msg(&err.to_string()))?;
    let same_cells = e.map.iter().zip(&e2.map).all(|(a, b)| (a.h, a.layer) == (b.h, b.layer));
    if !same_cells || e2.clique_size != c || e2.path_vertices != e.path_vertices || e2.factor_h != e.factor_h {
        return fail("embedding changed cells on the way back");
    }
    if embedding_to_partitions(&g, &e2).ok() != Some((hp, lay, c)) {
        return fail("partitions changed on the second pass");
    }
    // Renumbering slots by increasing id must reproduce e2 exactly.
    let mut next: BTreeMap<(Vertex, usize), usize> = BTreeMap::new();
    let canon: Vec<ProductCoord> = e
        .map
        .iter()
        .map(|p| {
            let s = next.entry((p.h, p.layer)).or_insert(0);
            *s += 1;
            ProductCoord { slot: *s - 1, ..*p }
        })
        .collect();
    if canon != e2.map {
        return fail("slots are not in increasing id order");
    }
    Ok(())
}

fn round_trip(seed: u64, cases: u64) -> (bool, u64, String) {
    let failure = (0..cases).into_par_iter().map(|case| round_trip_case(seed, case).err()).find_first(|e| e.is_some()).flatten();
    tally(cases, failure, format!("{cases} random instances, seed {seed}"))
}

fn sweep_one(lemma: Lemma, p: &SweepParams) -> (bool, u64, String) {
    match exhaustive_lemma_sweep(lemma, p) {
        Ok(r) => {
            let ok = format!("{} cases, largest observed {}", r.cases, r.max_observed());
            tally(r.cases, r.first_failure, ok)
        }
        Err(e) => (false, 0, e.to_string()),
    }
}

fn sweep_check(lemma: Lemma, runs: &[(usize, bool, usize)], seed: u64) -> (bool, u64, String) {
    let mut total: Tally = (0, None);
    let mut notes = Vec::new();
    for &(height, exhaustive, samples) in runs {
        let p = SweepParams { height, exhaustive, samples, seed, ..SweepParams::default() };
        let (ok, cases, detail) = sweep_one(lemma, &p);
        total.0 += cases;
        if !ok {
            total.1 = Some(format!("h = {height}: {detail}"));
            break;
        }
        let mode = if exhaustive { "exhaustive".to_string() } else { format!("{samples} samples") };
        notes.push(format!("h = {height} {mode}: {detail}"));
    }
    tally(total.0, total.1, notes.join("; "))
}

// Largest separator enumerated at each height; sized to finish in seconds.
const SEPARATOR_BUDGETS: [(usize, usize); 4] = [(2, 7), (3, 6), (4, 6), (5, 5)];

fn separators() -> (bool, u64, String) {
    let mut cases = 0u64;
    let mut notes = Vec::new();
    for (h, max_size) in SEPARATOR_BUDGETS {
        let gh = GhGraph::new(h).expect("small height");
        let seps = match minimal_balanced_separators(&gh, max_size) {
            Ok(s) => s,
            Err(e) => return (false, cases, format!("h = {h}: {e}")),
        };
        for s in &seps {
            cases += 1;
            let rep = match check_separator_depths(&gh, s) {
                Ok(r) => r,
                Err(e) => return (false, cases, format!("h = {h}, s = {:?}: {e}", s.as_slice())),
            };
            let i0 = separator_i0(h, s.len());
            if !rep.pass || rep.i0 != i0 || s.len() + i0 < h + 1 {
                return (false, cases, format!("h = {h}, s = {:?}: depth check fails (i0 = {i0})", s.as_slice()));
            }
        }
        notes.push(format!("h = {h}: {} separators of size <= {max_size}", seps.len()));
    }
    (true, cases, notes.join("; "))
}

/// Tree-partition and layering pairs of `G_h` the pipeline is run on.
pub fn pipeline_inputs(gh: &GhGraph) -> Vec<(String, HPartition, Layering)> {
    let g = &gh.graph;
    let n = g.vertex_count();
    let depth = Layering::from_assignment(&(0..n).map(|v| gh.tree.depth(v)).collect::<Vec<_>>()).expect("depths");
    let leftmost_leaf = gh.tree.leaves().start;
    let bfs = bfs_layering(g, leftmost_leaf).expect("G_h is connected");
    let lp = build_leftmost_path_partition(gh);
    let mut tps = vec![
        ("one-bag".to_string(), HPartition::one_bag(n)),
        ("singletons".to_string(), HPartition::singletons(g.clone())),
    ];
    // The chain host is tree-partitioned by a BFS layering (a path), or,
    // when it is tiny, by the best tree-partition the oracle finds.
    let host = lp.host();
    if let Ok(host_layers) = bfs_layering(host, 0) {
        let path_host = host_layers.to_hpartition();
        if let Ok(tp) = compose_tree_partition(&lp.partition, &path_host) {
            tps.push(("chains/bfs-path".to_string(), tp));
        }
    }
    if host.vertex_count() <= 8 {
        if let Ok(best) = min_product_c(host, host.vertex_count(), host.vertex_count()) {
            if let Ok(tp) = compose_tree_partition(&lp.partition, &best.tree_partition) {
                tps.push(("chains/oracle-tree".to_string(), tp));
            }
        }
    }
    let mut out = Vec::new();
    for (name, tp) in tps {
        out.push((format!("{name}+depth"), tp.clone(), depth.clone()));
        out.push((format!("{name}+bfs"), tp, bfs.clone()));
    }
    out
}

/// Corrupted copies of a certificate, each of which must fail the audit.
pub fn tampered(cert: &WitnessCertificate) -> Vec<WitnessCertificate> {
    let mut out = Vec::new();
    let mut a = cert.clone();
    if let Some(f) = a.final_cell.as_mut() {
        f.cell += 1;
    } else if let Some(inf) = a.infeasible.as_mut() {
        inf.inequality.holds = true;
    }
    out.push(a);
    if cert.max_bag.is_some() {
        let mut b = cert.clone();
        if let Some(m) = b.max_bag.as_mut() {
            m.size += 1;
        }
        out.push(b);
    }
    let mut c = cert.clone();
    c.h += 1;
    out.push(c);
    if cert.branch == Branch::Main {
        let mut d = cert.clone();
        if let Some(f) = d.final_cell.as_mut() {
            f.bound += 1;
        }
        out.push(d);
    }
    out
}

fn pipeline_case(gh: &GhGraph, name: &str, tp: &HPartition, lay: &Layering) -> Result<Branch, String> {
    let h = gh.height();
    let tag = |m: String| format!("h = {h}, {name}: {m}");
    let cert = extract_witness(gh, tp, lay, &WitnessConfig::default()).map_err(|e| tag(e.to_string()))?;
    audit(&cert, gh, tp, lay).map_err(|e| tag(e.to_string()))?;
    match cert.branch {
        Branch::Infeasible if cert.infeasible.is_none() => return Err(tag("infeasible without a named inequality".into())),
        Branch::Main | Branch::EarlyExit => {
            let f = cert.final_cell.as_ref().ok_or_else(|| tag("no final cell".into()))?;
            if f.cell < f.bound || f.bound < 1 {
                return Err(tag(format!("cell {} below bound {}", f.cell, f.bound)));
            }
        }
        _ => {}
    }
    let back = WitnessCertificate::from_json(&cert.to_json()).map_err(|e| tag(e.to_string()))?;
    if back != cert {
        return Err(tag("certificate does not survive JSON".into()));
    }
    for (i, bad) in tampered(&cert).iter().enumerate() {
        if audit(bad, gh, tp, lay).is_ok() {
            return Err(tag(format!("tampered copy {i} passed the audit")));
        }
    }
    Ok(cert.branch)
}

fn pipeline(max_height: usize) -> (bool, u64, String) {
    let mut heights: Vec<usize> = vec![2, 3];
    heights.extend(14.min(max_height)..=max_height);
    heights.dedup();
    let mut cases = 0u64;
    let mut branches: BTreeMap<&'static str, u64> = BTreeMap::new();
    for h in heights {
        let gh = match GhGraph::new(h) {
            Ok(g) => g,
            Err(e) => return (false, cases, format!("h = {h}: {e}")),
        };
        let inputs = pipeline_inputs(&gh);
        let results: Vec<_> = inputs.par_iter().map(|(name, tp, lay)| pipeline_case(&gh, name, tp, lay)).collect();
        for r in results {
            cases += 1;
            match r {
                Ok(b) => {
                    let key = match b {
                        Branch::Main => "main",
                        Branch::EarlyExit => "early-exit",
                        Branch::Infeasible => "infeasible",
                    };
                    *branches.entry(key).or_default() += 1;
                }
                Err(e) => return (false, cases, e),
            }
        }
    }
    let summary: Vec<String> = branches.iter().map(|(k, v)| format!("{k} {v}")).collect();
    (true, cases, format!("{cases} runs audited, tampering caught; branches: {}", summary.join(", ")))
}

fn leftmost(max_h: usize) -> (bool, u64, String) {
    let mut largest_boundary = 0;
    for h in 1..=max_h {
        let gh = GhGraph::new(h).expect("small height");
        let g = &gh.graph;
        let lp = build_leftmost_path_partition(&gh);
        let fail = |m: &str| (false, h as u64, format!("h = {h}: {m}"));
        if !validate_hpartition(g, &lp.partition).is_ok_and(|v| v.is_empty()) {
            return fail("partition is invalid");
        }
        if !validate_layering(g, &lp.layering).is_ok_and(|v| v.is_empty()) {
            return fail("layering is invalid");
        }
        match partitions_to_embedding(g, &lp.partition, &lp.layering, 1) {
            Ok(e) if validate_embedding(g, &e).is_ok() => {}
            _ => return fail("a cell has more than one vertex"),
        }
        if !treewidth_at_most_2(lp.host()).treewidth_le_2 {
            return fail("host has treewidth above 2");
        }
        if h <= 6 && outerplanarity_check_small(lp.host()).outerplanar != Some(true) {
            return fail("host is not outerplanar");
        }
        if h >= 3 {
            match find_unshared_boundary(g, &lp.partition) {
                Some(b) if b.boundary >= h && b.max_per_part <= 1 => largest_boundary = b.boundary,
                other => return fail(&format!("no unshared boundary of size {h}: {other:?}")),
            }
        }
    }
    (true, max_h as u64, format!("h = 1..{max_h} clean; boundary {largest_boundary} at h = {max_h}"))
}

/// Value found by exhaustive search and frozen as a regression constant.
pub const MIN_PRODUCT_C_G2: usize = 1;

fn oracles() -> (bool, u64, String) {
    let mut cases = 0u64;
    for (h, want) in [(1, 1), (2, MIN_PRODUCT_C_G2)] {
        cases += 1;
        let gh = GhGraph::new(h).expect("small height");
        let n = gh.graph.vertex_count();
        match min_product_c(&gh.graph, n, n) {
            Ok(r) if r.c == want && validate_embedding(&gh.graph, &r.embedding).is_ok() => {}
            Ok(r) => return (false, cases, format!("min c of G_{h} is {}, expected {want}", r.c)),
            Err(e) => return (false, cases, format!("G_{h}: {e}")),
        }
    }
    for n in 0..=6usize {
        let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let failure = (0u64..1 << pairs.len())
            .into_par_iter()
            .map(|mask| {
                let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                let g = Graph::new(n, &edges).expect("simple");
                let tw = exact_treewidth_tiny(&g).expect("tiny");
                ((tw <= 2) != treewidth_at_most_2(&g).treewidth_le_2).then(|| format!("{n} vertices, edges {edges:?}: tw = {tw}"))
            })
            .find_first(|f| f.is_some())
            .flatten();
        cases += 1 << pairs.len();
        if let Some(f) = failure {
            return (false, cases, f);
        }
    }
    (true, cases, format!("min c(G_1) = 1, min c(G_2) = {MIN_PRODUCT_C_G2}, treewidth agrees on all labeled graphs up to 6 vertices"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definition_edges_match_counts() {
        for h in 1..=4 {
            assert_eq!(gh_edges_by_definition(h).len(), SMALL_EDGE_COUNTS[h - 1]);
        }
    }

    #[test]
    fn round_trip_small_batch() {
        let (ok, _, detail) = round_trip(3, 50);
        assert!(ok, "{detail}");
    }

    #[test]
    fn tampering_changes_every_branch() {
        let gh = GhGraph::new(10).unwrap();
        for (name, tp, lay) in pipeline_inputs(&gh) {
            pipeline_case(&gh, &name, &tp, &lay).unwrap();
        }
    }
}
