//! Kernels of path morphisms and the syzygy graph.
//!
//! For a nonzero path `w`, right multiplication `u -> uw` is a map of
//! projectives `P_{s(w)} -> P_{t(w)}`. Its kernel is generated by at most
//! one path per arrow `a` ending at `s(w)`: every path ending with `a` is a
//! suffix of `left_completion(a)·a` (uniqueness of the completion), so the
//! shortest suffix killing `w` generates everything through `a`. That
//! observation turns kernel computation into a linear scan and the whole
//! resolution theory into graph traversal.

use std::collections::BTreeSet;

use crate::algebra::StringAlgebra;
use crate::error::{Error, Result};
use crate::quiver::Path;

/// A path morphism `u -> uw` between indecomposable projectives, determined
/// by the nonzero path `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathMorphism {
    pub path: Path,
}

impl PathMorphism {
    pub fn new(sa: &StringAlgebra, path: Path) -> Result<Self> {
        if path.is_trivial() {
            return Err(Error::Precondition {
                expected: "path of length >= 1".into(),
                actual: format!("trivial path {}", sa.path_label(&path)),
            });
        }
        Ok(PathMorphism { path })
    }

    /// Domain vertex `s(w)`: the map goes out of `P_{s(w)}`.
    pub fn domain(&self, sa: &StringAlgebra) -> crate::quiver::VertexId {
        sa.path_source(&self.path)
    }

    pub fn codomain(&self, sa: &StringAlgebra) -> crate::quiver::VertexId {
        sa.path_target(&self.path)
    }
}

/// Generators of a kernel: at most two paths with distinct final arrows,
/// each suffix-minimal for its target(s).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KernelPresentation {
    pub generators: Vec<Path>,
}

impl KernelPresentation {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Asserts the kill equations against `targets` and joint
    /// suffix-minimality of every generator.
    pub(crate) fn assert_presents(&self, sa: &StringAlgebra, targets: &[Path]) {
        for g in &self.generators {
            assert_generator(sa, g, &targets.iter().collect::<Vec<_>>());
        }
        debug_assert_eq!(
            self.generators
                .iter()
                .map(|g| g.last_arrow())
                .collect::<BTreeSet<_>>()
                .len(),
            self.generators.len(),
            "kernel generators must end with distinct arrows"
        );
    }
}

/// True when `w` kills `u` and no proper suffix of `w` does.
pub fn is_minimal_for(sa: &StringAlgebra, w: &Path, u: &Path) -> Result<bool> {
    if sa.path_target(w) != sa.path_source(u) {
        return Err(Error::Precondition {
            expected: "t(w) = s(u)".into(),
            actual: format!(
                "t({}) != s({})",
                sa.path_label(w),
                sa.path_label(u)
            ),
        });
    }
    if !sa.product_is_zero(w, u) {
        return Err(Error::Precondition {
            expected: "wu = 0".into(),
            actual: format!("{}{} != 0", sa.path_label(w), sa.path_label(u)),
        });
    }
    let arrows = w.arrows();
    for start in 1..arrows.len() {
        let suffix = Path::Arrows(arrows[start..].to_vec());
        if sa.is_nonzero(suffix.arrows()) && sa.product_is_zero(&suffix, u) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn assert_generator(sa: &StringAlgebra, g: &Path, targets: &[&Path]) {
    for t in targets {
        assert!(
            sa.product_is_zero(g, t),
            "kernel generator {} does not kill {}",
            sa.path_label(g),
            sa.path_label(t)
        );
    }
    // Suffix-minimality against the joint targets.
    let arrows = g.arrows();
    for start in 1..arrows.len() {
        let suffix = Path::Arrows(arrows[start..].to_vec());
        if sa.is_nonzero(suffix.arrows())
            && targets.iter().all(|t| sa.product_is_zero(&suffix, t))
        {
            panic!(
                "kernel generator {} has a smaller suffix {} with the same kills",
                sa.path_label(g),
                sa.path_label(&suffix)
            );
        }
    }
}

/// Presents `ker p(v)`: one generator per incoming arrow of `s(v)` whose
/// completion admits a killing suffix. Empty presentation means `p(v)` is
/// injective. The scan over completion suffixes is computed once per path
/// and cached on the algebra.
pub fn minimal_killers(sa: &StringAlgebra, v: &Path) -> KernelPresentation {
    assert!(!v.is_trivial(), "kernel of a trivial path morphism");
    sa.minimal_killers_of(v).clone()
}

/// Presents the kernel at a valley vertex. With only one side present this
/// is `minimal_killers` of that side. With both, the generator through each
/// incoming arrow is the longer of the two single-sided generators when both
/// exist: the longer suffix kills everything the shorter one kills, and
/// paths carrying both suffixes are exactly those carrying the longer.
pub fn valley_kernel(
    sa: &StringAlgebra,
    entering: Option<&Path>,
    leaving: Option<&Path>,
) -> Result<KernelPresentation> {
    match (entering, leaving) {
        (None, None) => Err(Error::Precondition {
            expected: "at least one side of the valley".into(),
            actual: "both absent".into(),
        }),
        (Some(u), None) => Ok(minimal_killers(sa, u)),
        (None, Some(v)) => Ok(minimal_killers(sa, v)),
        (Some(u), Some(v)) => {
            let valley = sa.path_source(u);
            if sa.path_source(v) != valley {
                return Err(Error::Precondition {
                    expected: "s(u) = s(v) at the valley".into(),
                    actual: format!(
                        "s({}) != s({})",
                        sa.path_label(u),
                        sa.path_label(v)
                    ),
                });
            }
            let killers_u = sa.minimal_killers_of(u);
            let killers_v = sa.minimal_killers_of(v);
            let mut generators = Vec::new();
            for &a in sa.quiver().arrows_into(valley) {
                let gu = killers_u
                    .generators
                    .iter()
                    .find(|g| g.last_arrow() == Some(a));
                let gv = killers_v
                    .generators
                    .iter()
                    .find(|g| g.last_arrow() == Some(a));
                if let (Some(gu), Some(gv)) = (gu, gv) {
                    let g = if gu.len() >= gv.len() { gu } else { gv };
                    assert_generator(sa, g, &[u, v]);
                    generators.push(g.clone());
                }
            }
            generators.sort();
            Ok(KernelPresentation { generators })
        }
    }
}

/// Directed graph on the nonzero paths with an edge `u -> v` whenever `u` is
/// a minimal killer of `v`. In-neighbors of `v` are its kernel generators.
#[derive(Debug)]
pub struct SyzygyGraph {
    nodes: Vec<Path>,
    in_edges: Vec<Vec<usize>>,
    out_edges: Vec<Vec<usize>>,
    /// Nodes lying on a directed cycle (nontrivial SCC or self-loop).
    cycle_members: Vec<usize>,
    /// Nodes reachable from a cycle member, sorted in the global path order.
    cyclic: Vec<Path>,
}

impl SyzygyGraph {
    pub fn build(sa: &StringAlgebra) -> Self {
        let nodes: Vec<Path> = sa.nontrivial_paths().to_vec();
        let index = |p: &Path| nodes.binary_search(p).expect("kernel generator is a path");
        let mut in_edges: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for (vi, v) in nodes.iter().enumerate() {
            for g in &sa.minimal_killers_of(v).generators {
                let ui = index(g);
                in_edges[vi].push(ui);
                out_edges[ui].push(vi);
            }
        }
        let scc = strongly_connected_components(&out_edges);
        let mut on_cycle = vec![false; nodes.len()];
        for component in &scc {
            if component.len() > 1 {
                for &n in component {
                    on_cycle[n] = true;
                }
            } else {
                let n = component[0];
                if out_edges[n].contains(&n) {
                    on_cycle[n] = true;
                }
            }
        }
        // Forward reachability from cycle members.
        let mut reachable = on_cycle.clone();
        let mut stack: Vec<usize> = (0..nodes.len()).filter(|&n| on_cycle[n]).collect();
        while let Some(n) = stack.pop() {
            for &m in &out_edges[n] {
                if !reachable[m] {
                    reachable[m] = true;
                    stack.push(m);
                }
            }
        }
        let cyclic: Vec<Path> = (0..nodes.len())
            .filter(|&n| reachable[n])
            .map(|n| nodes[n].clone())
            .collect();
        let cycle_members: Vec<usize> = (0..nodes.len()).filter(|&n| on_cycle[n]).collect();
        SyzygyGraph {
            nodes,
            in_edges,
            out_edges,
            cycle_members,
            cyclic,
        }
    }

    pub fn nodes(&self) -> &[Path] {
        &self.nodes
    }

    pub fn node_index(&self, p: &Path) -> Option<usize> {
        self.nodes.binary_search(p).ok()
    }

    /// Minimal killers of `v`, as graph in-neighbors.
    pub fn killers_of(&self, v: usize) -> &[usize] {
        &self.in_edges[v]
    }

    pub fn killed_by(&self, u: usize) -> &[usize] {
        &self.out_edges[u]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_edges
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn is_cycle_member(&self, n: usize) -> bool {
        self.cycle_members.binary_search(&n).is_ok()
    }

    pub fn cyclic_paths(&self) -> &[Path] {
        &self.cyclic
    }

    pub fn is_cyclic_path(&self, p: &Path) -> bool {
        self.cyclic.binary_search(p).is_ok()
    }

    /// Walking backwards (towards killers) from `start` nodes: the set of
    /// ancestors, including the starts.
    pub fn ancestors(&self, starts: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack: Vec<usize> = starts.to_vec();
        for &s in starts {
            seen[s] = true;
        }
        while let Some(n) = stack.pop() {
            for &k in &self.in_edges[n] {
                if !seen[k] {
                    seen[k] = true;
                    stack.push(k);
                }
            }
        }
        (0..self.nodes.len()).filter(|&n| seen[n]).collect()
    }

    /// The smallest directed cycle inside `within` (by the global order of
    /// the member paths), if any. Used for periodicity witnesses.
    pub fn cycle_inside(&self, within: &[usize]) -> Option<Vec<Path>> {
        let inside: BTreeSet<usize> = within.iter().copied().collect();
        let sub_edges: Vec<Vec<usize>> = (0..self.nodes.len())
            .map(|n| {
                if inside.contains(&n) {
                    self.out_edges[n]
                        .iter()
                        .copied()
                        .filter(|m| inside.contains(m))
                        .collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for component in strongly_connected_components(&sub_edges) {
            if component.len() > 1 {
                cycles.push(component);
            } else {
                let n = component[0];
                if inside.contains(&n) && sub_edges[n].contains(&n) {
                    cycles.push(component);
                }
            }
        }
        cycles
            .into_iter()
            .map(|mut c| {
                c.sort();
                c
            })
            .min_by(|a, b| self.nodes[a[0]].cmp(&self.nodes[b[0]]))
            .map(|c| c.into_iter().map(|n| self.nodes[n].clone()).collect())
    }

    /// DOT rendering with cycle members double-circled.
    pub fn to_dot(&self, sa: &StringAlgebra) -> String {
        let mut out = String::from("digraph syzygy {\n");
        for (n, p) in self.nodes.iter().enumerate() {
            let label = sa.path_label(p);
            if self.is_cycle_member(n) {
                out.push_str(&format!("    \"{label}\" [shape=doublecircle];\n"));
            } else {
                out.push_str(&format!("    \"{label}\";\n"));
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&format!(
                "    \"{}\" -> \"{}\";\n",
                sa.path_label(&self.nodes[u]),
                sa.path_label(&self.nodes[v])
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Kosaraju over adjacency lists; components come back in an order that only
/// depends on the input, so downstream output stays deterministic.
fn strongly_connected_components(out_edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = out_edges.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // Iterative post-order.
        let mut stack = vec![(start, 0usize)];
        seen[start] = true;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if *next < out_edges[node].len() {
                let to = out_edges[node][*next];
                *next += 1;
                if !seen[to] {
                    seen[to] = true;
                    stack.push((to, 0));
                }
            } else {
                order.push(node);
                stack.pop();
            }
        }
    }
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, vs) in out_edges.iter().enumerate() {
        for &v in vs {
            rev[v].push(u);
        }
    }
    let mut component = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for &start in order.iter().rev() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = Vec::new();
        let mut stack = vec![start];
        component[start] = id;
        while let Some(node) = stack.pop() {
            members.push(node);
            for &m in &rev[node] {
                if component[m] == usize::MAX {
                    component[m] = id;
                    stack.push(m);
                }
            }
        }
        members.sort();
        components.push(members);
    }
    components
}
