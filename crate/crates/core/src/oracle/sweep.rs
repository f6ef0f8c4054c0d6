use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{minimal_balanced_separators, OracleError};
use crate::generators::{CompleteBinaryTree, GhGraph, SubdividedGrid};
use crate::graph::{components_avoiding, Graph, Vertex, VertexSet};
use crate::percolation::{find_escape, find_two_escapes, grow_compact, is_compatible, validate_compact, CompactFamily};
use crate::witness::{check_separator_depths, grid_connectivity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    /// One escape vertex.
    Escape,
    /// Two escape vertices in opposite subtrees.
    TwoEscapes,
    /// Consecutive columns in subdivided grids.
    Grid,
    /// Depths met by balanced separators of `G_h`.
    SeparatorDepths,
    /// Growth of compact families.
    Compact,
}

impl Lemma {
    pub fn from_number(n: u32) -> Option<Self> {
        match n {
            5 => Some(Lemma::Escape),
            6 => Some(Lemma::TwoEscapes),
            7 => Some(Lemma::Grid),
            9 => Some(Lemma::SeparatorDepths),
            11 => Some(Lemma::Compact),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepParams {
    pub height: usize,
    pub exhaustive: bool,
    pub samples: usize,
    pub seed: u64,
    /// Grid sweeps: largest number of columns and rows.
    pub max_x: usize,
    pub max_y: usize,
    /// Separator sweeps: largest separator enumerated.
    pub max_size: usize,
    /// Compact sweeps: trees of height `min_height..=height`.
    pub min_height: usize,
}

impl Default for SweepParams {
    fn default() -> Self {
        SweepParams { height: 3, exhaustive: true, samples: 10_000, seed: 42, max_x: 5, max_y: 5, max_size: 4, min_height: 6 }
    }
}

/// One checked case: what was measured against the bound it must respect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub size: u64,
    pub observed: u64,
    pub bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub lemma: Lemma,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn max_observed(&self) -> u64 {
        self.rows.iter().map(|r| r.observed).max().unwrap_or(0)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,observed,bound\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.size, r.observed, r.bound));
        }
        out
    }

    fn collect(lemma: Lemma, results: Vec<Result<SweepRow, String>>) -> Self {
        let cases = results.len() as u64;
        let mut rows = Vec::with_capacity(results.len());
        let mut failures = 0;
        let mut first_failure = None;
        for r in results {
            match r {
                Ok(row) => rows.push(row),
                Err(e) => {
                    failures += 1;
                    first_failure.get_or_insert(e);
                }
            }
        }
        SweepReport { lemma, cases, failures, first_failure, rows }
    }
}

const EXHAUSTIVE_MAX_VERTICES: usize = 20;

/// Runs a lemma on every admissible input (or a seeded sample) and checks
/// each result with primitives that do not share code with the lemma's
/// implementation.
pub fn exhaustive_lemma_sweep(lemma: Lemma, params: &SweepParams) -> Result<SweepReport, OracleError> {
    let results = match lemma {
        Lemma::Escape | Lemma::TwoEscapes => escape_sweep(lemma, params)?,
        Lemma::Grid => grid_sweep(params)?,
        Lemma::SeparatorDepths => separator_sweep(params)?,
        Lemma::Compact => compact_sweep(params)?,
    };
    Ok(SweepReport::collect(lemma, results))
}

fn rng_for(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

fn tree(h: usize) -> Result<CompleteBinaryTree, OracleError> {
    CompleteBinaryTree::new(h).map_err(|e| OracleError::InvalidParameter(e.to_string()))
}

// v reaches a leaf of the tree graph without touching s.
fn escapes(tree_graph: &Graph, t: &CompleteBinaryTree, s: &VertexSet, v: Vertex) -> bool {
    let comps = components_avoiding(tree_graph, s).expect("s is in range");
    comps.iter().find(|c| c.contains(v)).is_some_and(|c| c.iter().any(|u| t.is_leaf(u)))
}

fn check_escape(
    tree_graph: &Graph,
    t: &CompleteBinaryTree,
    s: &VertexSet,
    v: Vertex,
    slack: u64,
) -> Result<SweepRow, String> {
    let depth = t.depth(v) as u64;
    let bound = slack * s.len() as u64;
    let parent_ok = t.parent(v).is_some_and(|p| p == t.root() || s.contains(p));
    if v == t.root() || (1u64 << depth) > bound || !parent_ok || !escapes(tree_graph, t, s, v) {
        return Err(format!("s = {:?}: vertex {v} fails", s.as_slice()));
    }
    Ok(SweepRow { size: s.len() as u64, observed: depth, bound })
}

fn escape_sweep(lemma: Lemma, p: &SweepParams) -> Result<Vec<Result<SweepRow, String>>, OracleError> {
    let t = tree(p.height)?;
    let n = t.vertex_count();
    if p.height == 0 {
        return Err(OracleError::InvalidParameter("height must be at least 1".into()));
    }
    let limit: usize = match lemma {
        Lemma::Escape => (1usize << p.height.min(60)) - 1,
        _ => (1usize << (p.height - 1).min(60)) - 1,
    };
    if limit == 0 {
        return Err(OracleError::InvalidParameter("no admissible sets at this height".into()));
    }
    let tree_graph = t.to_graph();
    let run = |s: VertexSet| -> Result<SweepRow, String> {
        match lemma {
            Lemma::Escape => {
                let e = find_escape(&t, &s).map_err(|e| format!("s = {:?}: {e}", s.as_slice()))?;
                check_escape(&tree_graph, &t, &s, e.vertex, 2)
            }
            _ => {
                let r = find_two_escapes(&t, &s).map_err(|e| format!("s = {:?}: {e}", s.as_slice()))?;
                let (a, b) = (r.left.vertex, r.right.vertex);
                if !t.is_ancestor(1, a) || !t.is_ancestor(2, b) {
                    return Err(format!("s = {:?}: escapes on the wrong sides", s.as_slice()));
                }
                let ra = check_escape(&tree_graph, &t, &s, a, 4)?;
                let rb = check_escape(&tree_graph, &t, &s, b, 4)?;
                Ok(SweepRow { observed: ra.observed.max(rb.observed), ..ra })
            }
        }
    };
    if p.exhaustive {
        if n > EXHAUSTIVE_MAX_VERTICES {
            return Err(OracleError::BudgetExceeded { what: format!("2^{n} subsets"), limit: 1 << EXHAUSTIVE_MAX_VERTICES });
        }
        Ok((1u64..1 << n)
            .into_par_iter()
            .filter(|m| (m.count_ones() as usize) <= limit)
            .map(|m| run((0..n).filter(|&v| m >> v & 1 == 1).collect()))
            .collect())
    } else {
        Ok((0..p.samples as u64)
            .into_par_iter()
            .map(|case| {
                let mut rng = rng_for(p.seed, case);
                let size = rng.gen_range(1..=limit.min(n));
                run(sample(&mut rng, n, size).into_iter().collect())
            })
            .collect())
    }
}

fn grid_sweep(p: &SweepParams) -> Result<Vec<Result<SweepRow, String>>, OracleError> {
    if p.max_x == 0 || p.max_y == 0 {
        return Err(OracleError::InvalidParameter("grid needs at least one row and column".into()));
    }
    Ok((0..p.samples as u64)
        .into_par_iter()
        .map(|case| {
            let mut rng = rng_for(p.seed, case);
            let x = rng.gen_range(1..=p.max_x);
            let y = rng.gen_range(1..=p.max_y);
            let divisions: Vec<usize> = (0..(x - 1) * y).map(|_| rng.gen_range(0..=2)).collect();
            let sg = SubdividedGrid::new(x, y, &divisions).map_err(|e| e.to_string())?;
            let pp = rng.gen_range(1..=x);
            let subs = sg.subdivision_vertices();
            let most = (pp * y - 1).min(subs.len());
            let size = rng.gen_range(0..=most);
            let s: VertexSet = sample(&mut rng, subs.len(), size).into_iter().map(|i| subs.as_slice()[i]).collect();
            let run = grid_connectivity(&sg, &s, pp).map_err(|e| format!("x={x} y={y} p={pp}: {e}"))?;
            let need = x.div_ceil(pp);
            let comps = components_avoiding(&sg.graph, &s).expect("in range");
            let home = comps.iter().find(|c| c.contains(sg.grid_vertex(run.first, 0)));
            let together = home.is_some_and(|c| (run.first..=run.last).all(|i| sg.column(i).all(|v| c.contains(v))));
            if run.len() < need || !together {
                return Err(format!("x={x} y={y} p={pp} |s|={size}: run {run:?}"));
            }
            Ok(SweepRow { size: x as u64, observed: run.len() as u64, bound: need as u64 })
        })
        .collect())
}

fn separator_sweep(p: &SweepParams) -> Result<Vec<Result<SweepRow, String>>, OracleError> {
    let gh = GhGraph::new(p.height).map_err(|e| OracleError::InvalidParameter(e.to_string()))?;
    let h = p.height as u64;
    let seps = minimal_balanced_separators(&gh, p.max_size)?;
    Ok(seps
        .into_par_iter()
        .map(|s| {
            let rep = check_separator_depths(&gh, &s).map_err(|e| format!("{:?}: {e}", s.as_slice()))?;
            let floor = (h + 1).saturating_sub(rep.i0 as u64);
            if !rep.pass || (s.len() as u64) < floor {
                return Err(format!("{:?}: depth check failed with i0 = {}", s.as_slice(), rep.i0));
            }
            Ok(SweepRow { size: s.len() as u64, observed: rep.i0 as u64, bound: h })
        })
        .collect())
}

/// A random valid compact family on `T_h` and a set `s ⊇ ∪parts` of
/// admissible size, or `None` when the drawn parameters leave no room.
fn random_compact(rng: &mut ChaCha8Rng, t: &CompleteBinaryTree) -> Option<(CompactFamily, VertexSet)> {
    let h = t.height();
    let m = rng.gen_range(3..=h);
    let ell = rng.gen_range(0..=m - 3);
    let room = (m - ell - 2).min(6) as u32;
    let cap = (1usize << room) - 1;
    let q = rng.gen_range(1..=cap);
    let k = rng.gen_range(1..=(cap / q).max(1));
    let j = (usize::BITS - (k - 1).leading_zeros()) as usize; // ceil(log2 k)
    if j > ell || q * k > cap {
        return None;
    }
    let qd = (usize::BITS - (q - 1).leading_zeros()) as usize;
    if qd > h - m {
        return None;
    }
    let d = rng.gen_range(qd..=h - m);
    let level = t.level(d);
    let anchors: Vec<Vertex> = {
        let mut a: Vec<Vertex> = sample(rng, level.len(), q).into_iter().map(|i| level.start + i).collect();
        a.sort_unstable();
        a
    };
    let depth_below = rng.gen_range(j..=ell);
    let parts: Vec<VertexSet> = anchors
        .iter()
        .map(|&a| {
            let below = t.descendants_at(a, depth_below);
            sample(rng, below.len(), k).into_iter().map(|i| below.start + i).collect()
        })
        .collect();
    let m_actual = anchors.iter().map(|&a| t.height_of(a)).min().expect("q >= 1");
    let family = CompactFamily { tree_height: h, parts, anchors, k, ell, m: m_actual.min(m) };
    let mut s = family.union();
    let extra = rng.gen_range(0..=cap - s.len());
    for i in sample(rng, t.vertex_count(), extra.min(t.vertex_count())) {
        if s.len() < cap {
            s.insert(i);
        }
    }
    Some((family, s))
}

fn compact_sweep(p: &SweepParams) -> Result<Vec<Result<SweepRow, String>>, OracleError> {
    if p.min_height < 3 || p.min_height > p.height {
        return Err(OracleError::InvalidParameter("need 3 <= min_height <= height".into()));
    }
    let trees: Vec<CompleteBinaryTree> = (p.min_height..=p.height).map(tree).collect::<Result<_, _>>()?;
    Ok((0..p.samples as u64)
        .into_par_iter()
        .map(|case| {
            let mut rng = rng_for(p.seed, case);
            let t = &trees[rng.gen_range(0..trees.len())];
            let (f, s) = loop {
                if let Some(found) = random_compact(&mut rng, t) {
                    break found;
                }
            };
            if !validate_compact(&f).is_empty() {
                return Err(format!("generator produced an invalid family {f:?}"));
            }
            let grown = grow_compact(t, &f, &s).map_err(|e| format!("{f:?} with {:?}: {e}", s.as_slice()))?;
            let g = &grown.family;
            let doubled = g.parts.iter().zip(&f.parts).all(|(a, b)| a.len() == 2 * b.len());
            let violations = validate_compact(g);
            let compatible = g.union().iter().all(|v| matches!(is_compatible(t, v, &s), Ok(Some(_))));
            if !violations.is_empty() || !compatible || !doubled || g.k != 2 * f.k {
                return Err(format!("grown family fails: {violations:?}"));
            }
            let bound = f.ell as u64 + s.len().next_power_of_two().trailing_zeros() as u64 + 2;
            Ok(SweepRow { size: s.len() as u64, observed: g.ell as u64, bound })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escape_h3_exhaustive() {
        let r = exhaustive_lemma_sweep(Lemma::Escape, &SweepParams::default()).unwrap();
        assert_eq!(r.cases, (1 << 15) - 1 - (8..=15).map(|k| binom(15, k)).sum::<u64>());
        assert!(r.passed(), "{:?}", r.first_failure);
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |a, i| a * (n - i) / (i + 1))
    }

    #[test]
    fn small_samples_pass() {
        let p = SweepParams { exhaustive: false, samples: 200, height: 4, ..SweepParams::default() };
        for lemma in [Lemma::Escape, Lemma::TwoEscapes, Lemma::Grid] {
            let r = exhaustive_lemma_sweep(lemma, &p).unwrap();
            assert!(r.passed(), "{lemma:?}: {:?}", r.first_failure);
        }
        let p = SweepParams { samples: 100, height: 8, min_height: 6, ..SweepParams::default() };
        let r = exhaustive_lemma_sweep(Lemma::Compact, &p).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure);
    }

    #[test]
    fn separators_h3() {
        let p = SweepParams { height: 3, max_size: 4, ..SweepParams::default() };
        let r = exhaustive_lemma_sweep(Lemma::SeparatorDepths, &p).unwrap();
        assert!(r.cases > 0 && r.passed());
    }

    #[test]
    fn sweeps_are_reproducible() {
        let p = SweepParams { exhaustive: false, samples: 50, height: 4, ..SweepParams::default() };
        let a = exhaustive_lemma_sweep(Lemma::Grid, &p).unwrap();
        let b = exhaustive_lemma_sweep(Lemma::Grid, &p).unwrap();
        assert_eq!(a, b);
    }
}
