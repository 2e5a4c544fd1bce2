//! Minimal projective resolutions of truncated string complexes.
//!
//! One step of the syzygy recursion replaces each kernel generator `g` by
//! the generators of `ker p(g)`. Branches never interact: generators of one
//! kernel end with distinct arrows and different branches live in different
//! projective covers, so the kernel of the diagonal cover map is the direct
//! sum of the per-generator kernels. The resolution is therefore a backward
//! walk in the syzygy graph, and unboundedness is reachability of a cycle.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::StringAlgebra;
use crate::complex::{build_string_complex, good_truncation, Truncation};
use crate::error::Result;
use crate::quiver::{Path, VertexId};
use crate::syzygy::minimal_killers;
use crate::walk::GeneralizedWalk;

/// Generators entering one homological degree, with multiplicity, plus the
/// vertices of their projective covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionStep {
    pub generators: BTreeMap<Path, usize>,
    pub covers: BTreeMap<VertexId, usize>,
}

impl ResolutionStep {
    fn from_multiset(sa: &StringAlgebra, generators: BTreeMap<Path, usize>) -> Self {
        let mut covers = BTreeMap::new();
        for (g, &count) in &generators {
            *covers.entry(sa.path_source(g)).or_insert(0) += count;
        }
        ResolutionStep { generators, covers }
    }

    pub fn generator_count(&self) -> usize {
        self.generators.values().sum()
    }

    /// Generator paths repeated by multiplicity, in the global order.
    pub fn generator_list(&self) -> Vec<Path> {
        self.generators
            .iter()
            .flat_map(|(g, &count)| std::iter::repeat_n(g.clone(), count))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolutionStatus {
    /// The generator multiset became empty at this (1-based) step.
    Terminated { at_step: usize },
    /// A syzygy cycle is backward-reachable; the resolution never stops.
    Periodic { cycle: Vec<Path> },
    /// Still alive at the requested depth but no cycle is reachable, so it
    /// terminates beyond the horizon.
    DepthExhausted,
}

#[derive(Debug, Clone)]
pub struct ResolutionTrace {
    pub walk: GeneralizedWalk,
    pub truncation: Truncation,
    pub steps: Vec<ResolutionStep>,
    pub status: ResolutionStatus,
    pub depth_requested: usize,
}

impl ResolutionTrace {
    /// Per-step multiset of cover vertices.
    pub fn betti_data(&self) -> Vec<BTreeMap<VertexId, usize>> {
        self.steps.iter().map(|s| s.covers.clone()).collect()
    }
}

pub fn betti_data(trace: &ResolutionTrace) -> Vec<BTreeMap<VertexId, usize>> {
    trace.betti_data()
}

/// Runs the syzygy recursion from the good-truncation kernel up to `depth`
/// steps or termination. The status is exact: `Periodic` and
/// `DepthExhausted` are decided by graph reachability, not by the horizon.
pub fn resolve(sa: &StringAlgebra, walk: &GeneralizedWalk, depth: usize) -> Result<ResolutionTrace> {
    let sc = build_string_complex(sa, walk)?;
    let truncation = good_truncation(sa, &sc)?;
    let mut current: BTreeMap<Path, usize> = BTreeMap::new();
    for g in truncation.generators() {
        *current.entry(g).or_insert(0) += 1;
    }
    let mut steps = Vec::new();
    let mut status = None;
    for k in 1..=depth {
        if current.is_empty() {
            status = Some(ResolutionStatus::Terminated { at_step: k });
            break;
        }
        steps.push(ResolutionStep::from_multiset(sa, current.clone()));
        let mut next = BTreeMap::new();
        for (g, &count) in &current {
            for killer in minimal_killers(sa, g).generators {
                *next.entry(killer).or_insert(0) += count;
            }
        }
        current = next;
    }
    let status = match status {
        Some(s) => s,
        None if current.is_empty() => ResolutionStatus::Terminated { at_step: depth + 1 },
        None => match decide(sa, &truncation) {
            Periodicity::Periodic { cycle } => ResolutionStatus::Periodic { cycle },
            Periodicity::Bounded { .. } => ResolutionStatus::DepthExhausted,
        },
    };
    Ok(ResolutionTrace {
        walk: walk.clone(),
        truncation,
        steps,
        status,
        depth_requested: depth,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Periodicity {
    Periodic { cycle: Vec<Path> },
    Bounded { length: usize },
}

impl Periodicity {
    pub fn is_periodic(&self) -> bool {
        matches!(self, Periodicity::Periodic { .. })
    }
}

/// Depth-free periodicity decision: walk the syzygy graph backwards from
/// the truncation generators; the resolution is unbounded exactly when that
/// ancestor set contains a directed cycle. Bounded verdicts carry the
/// number of resolution steps, computed as the longest backward chain.
pub fn is_periodic(sa: &StringAlgebra, walk: &GeneralizedWalk) -> Result<Periodicity> {
    let sc = build_string_complex(sa, walk)?;
    let truncation = good_truncation(sa, &sc)?;
    Ok(decide(sa, &truncation))
}

fn decide(sa: &StringAlgebra, truncation: &Truncation) -> Periodicity {
    let graph = sa.syzygy_graph();
    let mut starts: Vec<usize> = truncation
        .generators()
        .iter()
        .map(|g| graph.node_index(g).expect("generator is a nonzero path"))
        .collect();
    starts.sort_unstable();
    starts.dedup();
    let ancestors = graph.ancestors(&starts);
    if let Some(cycle) = graph.cycle_inside(&ancestors) {
        return Periodicity::Periodic { cycle };
    }
    // Acyclic ancestor set: the resolution length is the longest chain of
    // minimal killers above any starting generator.
    let mut memo: HashMap<usize, usize> = HashMap::new();
    fn chain(
        graph: &crate::syzygy::SyzygyGraph,
        memo: &mut HashMap<usize, usize>,
        node: usize,
    ) -> usize {
        if let Some(&d) = memo.get(&node) {
            return d;
        }
        let d = 1 + graph
            .killers_of(node)
            .iter()
            .map(|&k| chain(graph, memo, k))
            .max()
            .unwrap_or(0);
        memo.insert(node, d);
        d
    }
    let length = starts
        .iter()
        .map(|&s| chain(graph, &mut memo, s))
        .max()
        .unwrap_or(0);
    Periodicity::Bounded { length }
}
