//! Orbit enumeration: all group elements whose basepoint displacement is at
//! most a cutoff, walked over the reduced-word tree.
//!
//! The tree is partitioned by first letter into `2r` independent subtrees,
//! each explored depth-first with an explicit stack (constant-size frontier
//! on chains, so rank-one groups at large cutoffs stay in memory). Subtree
//! results are merged in letter order and sorted by a deterministic key, so
//! the output is byte-identical no matter how many workers run.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::spec::GroupSpec;
use crate::group::word::Word;
use crate::hypgeom::{dist, HPoint};
use crate::moebius::MobiusMap;

/// Default node budget for tree traversals.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// How the reduced-word tree is cut off.
#[derive(Clone, Copy, Debug)]
pub enum EnumerationMode {
    /// Visit every reduced word of length at most `depth_limit`; complete
    /// only if the depth suffices for the displacement cutoff.
    Exact {
        /// Maximum word length explored.
        depth_limit: u32,
    },
    /// Stop expanding once the displacement exceeds `cutoff + slack`;
    /// `None` uses the largest single-generator displacement.
    Pruned {
        /// Pruning margin; defaults to the max generator displacement.
        slack: Option<f64>,
    },
}

impl EnumerationMode {
    /// The default pruned mode.
    pub fn pruned() -> EnumerationMode {
        EnumerationMode::Pruned { slack: None }
    }
}

/// Completeness statement attached to every enumeration result.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Certificate {
    /// Every reduced word of length ≤ `depth_limit` was visited.
    Exact {
        /// Word-length limit that was exhausted.
        depth_limit: u32,
    },
    /// Subtrees were pruned where displacement exceeded cutoff + slack.
    PrunedWithSlack {
        /// The slack that was in force.
        slack: f64,
    },
}

/// One orbit element: its reduced word and basepoint displacement.
#[derive(Clone, Debug)]
pub struct OrbitEntry {
    /// Reduced word over the spec's generators.
    pub word: Word,
    /// `d(x₀, γ x₀)`.
    pub displacement: f64,
}

/// All group elements with displacement at most `cutoff`, sorted by
/// (displacement, word length, lexicographic letters). Contains the
/// identity (displacement 0).
#[derive(Clone, Debug)]
pub struct OrbitBatch {
    /// Displacement cutoff the batch was built for.
    pub cutoff: f64,
    /// Sorted entries.
    pub entries: Vec<OrbitEntry>,
    /// Completeness statement.
    pub certificate: Certificate,
}

impl OrbitBatch {
    /// Orbit counting function `N(t)`: entries with displacement ≤ `t`
    /// (identity included).
    pub fn count_within(&self, t: f64) -> usize {
        self.entries
            .partition_point(|e| e.displacement <= t)
    }
}

/// Displacement-only enumeration result for large cutoffs.
#[derive(Clone, Debug)]
pub struct LeanOrbit {
    /// Displacement cutoff.
    pub cutoff: f64,
    /// Sorted displacements, identity's 0 included.
    pub displacements: Vec<f64>,
    /// Completeness statement.
    pub certificate: Certificate,
    /// Total tree nodes visited.
    pub nodes_visited: u64,
}

impl LeanOrbit {
    /// Orbit counting function `N(t)` (identity included).
    pub fn count_within(&self, t: f64) -> usize {
        self.displacements.partition_point(|&d| d <= t)
    }
}

#[derive(Clone, Copy)]
enum ResolvedMode {
    Exact { max_len: u32 },
    Pruned { expand_cutoff: f64 },
}

struct Frame {
    letter: u16,
    depth: u32,
    map: MobiusMap,
}

trait Sink: Default + Send {
    fn record(&mut self, path: &[u16], map: &MobiusMap, displacement: f64);
}

#[derive(Default)]
struct LeanSink(Vec<f64>);

impl Sink for LeanSink {
    fn record(&mut self, _path: &[u16], _map: &MobiusMap, displacement: f64) {
        self.0.push(displacement);
    }
}

#[derive(Default)]
struct FullSink(Vec<(Word, MobiusMap, f64)>);

impl Sink for FullSink {
    fn record(&mut self, path: &[u16], map: &MobiusMap, displacement: f64) {
        self.0.push((Word::from_letters(path), *map, displacement));
    }
}

struct TraversalCtx {
    letters: Vec<MobiusMap>,
    x0: HPoint,
    keep: f64,
    mode: ResolvedMode,
}

fn explore_subtree<S: Sink>(
    ctx: &TraversalCtx,
    first: u16,
    sub_budget: u64,
) -> Result<(S, u64)> {
    let mut sink = S::default();
    let nl = ctx.letters.len() as u16;
    let mut stack = vec![Frame {
        letter: first,
        depth: 0,
        map: ctx.letters[first as usize],
    }];
    let mut path: Vec<u16> = Vec::new();
    let mut nodes: u64 = 0;
    while let Some(fr) = stack.pop() {
        nodes += 1;
        if nodes > sub_budget {
            return Err(Error::BudgetExceeded { nodes_visited: nodes });
        }
        path.truncate(fr.depth as usize);
        path.push(fr.letter);
        let image = fr.map.apply(&ctx.x0)?;
        let d = dist(&ctx.x0, &image)?;
        if d <= ctx.keep {
            sink.record(&path, &fr.map, d);
        }
        let expand = match ctx.mode {
            ResolvedMode::Exact { max_len } => fr.depth + 1 < max_len,
            ResolvedMode::Pruned { expand_cutoff } => d <= expand_cutoff,
        };
        if expand {
            let skip = fr.letter ^ 1;
            // Push in reverse so children pop in ascending letter order.
            for l in (0..nl).rev() {
                if l != skip {
                    stack.push(Frame {
                        letter: l,
                        depth: fr.depth + 1,
                        map: fr.map.compose(&ctx.letters[l as usize]),
                    });
                }
            }
        }
    }
    Ok((sink, nodes))
}

fn resolve_mode(
    spec: &GroupSpec,
    t: f64,
    mode: EnumerationMode,
) -> Result<(ResolvedMode, Certificate)> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "displacement cutoff must be positive and finite, got {t}"
        )));
    }
    match mode {
        EnumerationMode::Exact { depth_limit } => {
            if depth_limit == 0 {
                return Err(Error::InvalidParameter(
                    "exact mode needs depth_limit ≥ 1".into(),
                ));
            }
            Ok((
                ResolvedMode::Exact { max_len: depth_limit },
                Certificate::Exact { depth_limit },
            ))
        }
        EnumerationMode::Pruned { slack } => {
            if !spec.freeness_assumed() {
                return Err(Error::InvalidParameter(
                    "pruned enumeration requires the freeness assumption".into(),
                ));
            }
            let s = match slack {
                Some(s) if s.is_finite() && s >= 0.0 => s,
                Some(s) => {
                    return Err(Error::InvalidParameter(format!(
                        "pruning slack must be nonnegative and finite, got {s}"
                    )))
                }
                None => spec.max_generator_displacement()?,
            };
            Ok((
                ResolvedMode::Pruned { expand_cutoff: t + s },
                Certificate::PrunedWithSlack { slack: s },
            ))
        }
    }
}

/// Run all subtrees (in parallel when the `parallel` feature is on) and
/// merge in letter order. Returns per-subtree sinks and total node count.
fn run_subtrees<S: Sink>(ctx: &TraversalCtx, budget: u64) -> Result<(Vec<S>, u64)> {
    let nl = ctx.letters.len();
    let sub_budget = (budget / nl as u64).max(1);

    #[cfg(feature = "parallel")]
    let results: Vec<Result<(S, u64)>> = {
        use rayon::prelude::*;
        (0..nl as u16)
            .into_par_iter()
            .map(|l| explore_subtree::<S>(ctx, l, sub_budget))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<(S, u64)>> = (0..nl as u16)
        .map(|l| explore_subtree::<S>(ctx, l, sub_budget))
        .collect();

    let mut sinks = Vec::with_capacity(nl);
    let mut total: u64 = 0;
    for r in results {
        match r {
            Ok((sink, nodes)) => {
                total += nodes;
                sinks.push(sink);
            }
            Err(Error::BudgetExceeded { nodes_visited }) => {
                return Err(Error::BudgetExceeded { nodes_visited: total + nodes_visited })
            }
            Err(e) => return Err(e),
        }
    }
    Ok((sinks, total))
}

fn make_ctx(spec: &GroupSpec, t: f64, mode: ResolvedMode) -> TraversalCtx {
    TraversalCtx {
        letters: spec.letter_maps(),
        x0: spec.basepoint(),
        keep: t,
        mode,
    }
}

/// Enumerate the orbit ball of radius `t` with reduced words, sorted by
/// (displacement, word length, lexicographic letters).
pub fn enumerate_orbit(
    spec: &GroupSpec,
    t: f64,
    mode: EnumerationMode,
    budget: u64,
) -> Result<OrbitBatch> {
    let (entries, certificate) = enumerate_full(spec, t, mode, budget)?;
    Ok(OrbitBatch {
        cutoff: t,
        entries: entries
            .into_iter()
            .map(|(word, _, displacement)| OrbitEntry { word, displacement })
            .collect(),
        certificate,
    })
}

/// Sorted (word, matrix, displacement) rows plus the completeness
/// certificate of the enumeration that produced them.
pub(crate) type FullEnumeration = (Vec<(Word, MobiusMap, f64)>, Certificate);

/// Internal full enumeration carrying the evaluated matrices; shared by the
/// class, coset, and measure pipelines.
pub(crate) fn enumerate_full(
    spec: &GroupSpec,
    t: f64,
    mode: EnumerationMode,
    budget: u64,
) -> Result<FullEnumeration> {
    let (rmode, certificate) = resolve_mode(spec, t, mode)?;
    let ctx = make_ctx(spec, t, rmode);
    let (sinks, _) = run_subtrees::<FullSink>(&ctx, budget)?;
    let mut entries = Vec::with_capacity(sinks.iter().map(|s| s.0.len()).sum::<usize>() + 1);
    entries.push((Word::identity(), MobiusMap::identity(spec.dim()), 0.0));
    for s in sinks {
        entries.extend(s.0);
    }
    entries.sort_by(|a, b| {
        a.2.total_cmp(&b.2)
            .then_with(|| a.0.len().cmp(&b.0.len()))
            .then_with(|| a.0.letter_cmp(&b.0))
    });
    Ok((entries, certificate))
}

/// Displacement-only enumeration (no words, no matrices): the memory-lean
/// path for large cutoffs such as exponent estimation.
pub fn enumerate_displacements(
    spec: &GroupSpec,
    t: f64,
    mode: EnumerationMode,
    budget: u64,
) -> Result<LeanOrbit> {
    let (rmode, certificate) = resolve_mode(spec, t, mode)?;
    let ctx = make_ctx(spec, t, rmode);
    let (sinks, nodes_visited) = run_subtrees::<LeanSink>(&ctx, budget)?;
    let mut displacements = Vec::with_capacity(sinks.iter().map(|s| s.0.len()).sum::<usize>() + 1);
    displacements.push(0.0);
    for s in sinks {
        displacements.extend(s.0);
    }
    displacements.sort_by(|a, b| a.total_cmp(b));
    Ok(LeanOrbit { cutoff: t, displacements, certificate, nodes_visited })
}

/// Verify that no two batch entries are the same isometry (±M quotient):
/// re-evaluates words and compares matrices within displacement windows.
/// Guards bad inputs; free groups cannot trip it.
pub fn verify_batch_distinct(spec: &GroupSpec, batch: &OrbitBatch, tol: f64) -> Result<()> {
    let maps: Vec<MobiusMap> = batch
        .entries
        .iter()
        .map(|e| e.word.evaluate(spec))
        .collect::<Result<_>>()?;
    for i in 0..batch.entries.len() {
        for j in (i + 1)..batch.entries.len() {
            if batch.entries[j].displacement - batch.entries[i].displacement > tol {
                break;
            }
            if maps[i].proj_dist(&maps[j]) <= tol {
                return Err(Error::FreenessViolated(format!(
                    "words `{}` and `{}` evaluate to the same isometry",
                    batch.entries[i].word.format(spec),
                    batch.entries[j].word.format(spec)
                )));
            }
        }
    }
    Ok(())
}
