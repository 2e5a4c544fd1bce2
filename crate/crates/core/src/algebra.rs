//! A validated string algebra with its cached path combinatorics.
//!
//! Everything downstream (kernels, resolutions, classification) assumes the
//! string axioms, so those operations hang off this wrapper rather than the
//! raw bound quiver. All caches are computed once and only read afterwards.

use std::ops::Deref;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, BoundQuiver, Path};
use crate::syzygy::{KernelPresentation, SyzygyGraph};

#[derive(Debug)]
pub struct StringAlgebra {
    bq: BoundQuiver,
    paths: Vec<Path>,
    nontrivial: Vec<Path>,
    maximal: OnceLock<Vec<Path>>,
    /// Per arrow `a`, the arrows of `left_completion(a)·a`: every path
    /// ending with `a` is one of its suffixes.
    ladders: OnceLock<Vec<Vec<ArrowId>>>,
    /// Kernel generators of `p(v)` per nontrivial path, computed once.
    killers: OnceLock<Vec<KernelPresentation>>,
    syzygy: OnceLock<SyzygyGraph>,
}

impl Deref for StringAlgebra {
    type Target = BoundQuiver;

    fn deref(&self) -> &BoundQuiver {
        &self.bq
    }
}

impl StringAlgebra {
    pub fn new(bq: BoundQuiver) -> Result<Self> {
        let report = bq.validate_string_algebra();
        if !report.is_string_algebra() {
            return Err(Error::NotStringAlgebra { report });
        }
        let paths = bq.enumerate_paths(0);
        let nontrivial = paths.iter().filter(|p| !p.is_trivial()).cloned().collect();
        Ok(StringAlgebra {
            bq,
            paths,
            nontrivial,
            maximal: OnceLock::new(),
            ladders: OnceLock::new(),
            killers: OnceLock::new(),
            syzygy: OnceLock::new(),
        })
    }

    pub fn from_text(text: &str) -> Result<Self> {
        StringAlgebra::new(BoundQuiver::parse(text)?)
    }

    pub fn bound_quiver(&self) -> &BoundQuiver {
        &self.bq
    }

    /// The full path basis, trivial paths included, in the global order.
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn nontrivial_paths(&self) -> &[Path] {
        &self.nontrivial
    }

    /// Paths not extendable by any arrow on either side without hitting the
    /// ideal.
    pub fn maximal_paths(&self) -> &[Path] {
        self.maximal.get_or_init(|| {
            self.nontrivial
                .iter()
                .filter(|w| {
                    let left_ext = self
                        .bq
                        .quiver()
                        .arrows_into(self.bq.path_source(w))
                        .iter()
                        .any(|&a| self.extends_left(a, w));
                    let right_ext = self
                        .bq
                        .quiver()
                        .arrows_from(self.bq.path_target(w))
                        .iter()
                        .any(|&b| self.extends_right(w, b));
                    !left_ext && !right_ext
                })
                .cloned()
                .collect()
        })
    }

    fn extends_left(&self, a: ArrowId, w: &Path) -> bool {
        let mut arrows = vec![a];
        arrows.extend_from_slice(w.arrows());
        self.bq.is_nonzero(&arrows)
    }

    fn extends_right(&self, w: &Path, b: ArrowId) -> bool {
        let mut arrows = w.arrows().to_vec();
        arrows.push(b);
        self.bq.is_nonzero(&arrows)
    }

    /// The longest path composing nonzero on the left of `w`; trivial at
    /// `s(w)` when no arrow extends. Unique by the string axioms.
    pub fn left_completion(&self, w: &Path) -> Result<Path> {
        if w.is_trivial() {
            return Err(Error::Precondition {
                expected: "path of length >= 1".into(),
                actual: "trivial path".into(),
            });
        }
        let mut prefix: Vec<ArrowId> = Vec::new();
        loop {
            let mut whole = prefix.clone();
            whole.extend_from_slice(w.arrows());
            let front = match prefix.first() {
                Some(&a) => self.bq.quiver().arrow(a).source,
                None => self.bq.path_source(w),
            };
            let candidates: Vec<ArrowId> = self
                .bq
                .quiver()
                .arrows_into(front)
                .iter()
                .copied()
                .filter(|&a| {
                    let mut ext = vec![a];
                    ext.extend_from_slice(&whole);
                    self.bq.is_nonzero(&ext)
                })
                .collect();
            match candidates.len() {
                0 => break,
                1 => prefix.insert(0, candidates[0]),
                n => {
                    return Err(Error::Precondition {
                        expected: "a unique maximal left extension (string axioms)".into(),
                        actual: format!("{n} extensions at {}", self.bq.path_label(w)),
                    });
                }
            }
        }
        if prefix.is_empty() {
            Ok(Path::Trivial(self.bq.path_source(w)))
        } else {
            Ok(Path::Arrows(prefix))
        }
    }

    /// Dual of `left_completion`: the longest path composing nonzero on the
    /// right of `w`.
    pub fn right_completion(&self, w: &Path) -> Result<Path> {
        if w.is_trivial() {
            return Err(Error::Precondition {
                expected: "path of length >= 1".into(),
                actual: "trivial path".into(),
            });
        }
        let mut suffix: Vec<ArrowId> = Vec::new();
        loop {
            let mut whole = w.arrows().to_vec();
            whole.extend_from_slice(&suffix);
            let end = self.bq.quiver().arrow(*whole.last().unwrap()).target;
            let candidates: Vec<ArrowId> = self
                .bq
                .quiver()
                .arrows_from(end)
                .iter()
                .copied()
                .filter(|&b| {
                    let mut ext = whole.clone();
                    ext.push(b);
                    self.bq.is_nonzero(&ext)
                })
                .collect();
            match candidates.len() {
                0 => break,
                1 => suffix.push(candidates[0]),
                n => {
                    return Err(Error::Precondition {
                        expected: "a unique maximal right extension (string axioms)".into(),
                        actual: format!("{n} extensions at {}", self.bq.path_label(w)),
                    });
                }
            }
        }
        if suffix.is_empty() {
            Ok(Path::Trivial(self.bq.path_target(w)))
        } else {
            Ok(Path::Arrows(suffix))
        }
    }

    /// `None` when every arrow occurs in exactly one maximal path; otherwise
    /// the smallest arrow lying in two or more of them.
    pub fn unique_maximal_path_witness(&self) -> Option<ArrowId> {
        let maximal = self.maximal_paths();
        for a in self.bq.quiver().arrow_ids() {
            let count = maximal
                .iter()
                .filter(|m| m.arrows().contains(&a))
                .count();
            assert!(
                count >= 1,
                "arrow {} lies in no maximal path",
                self.bq.quiver().arrow(a).name
            );
            if count >= 2 {
                return Some(a);
            }
        }
        None
    }

    pub fn syzygy_graph(&self) -> &SyzygyGraph {
        self.syzygy.get_or_init(|| SyzygyGraph::build(self))
    }

    /// Paths reachable in the syzygy graph from a directed cycle; exactly
    /// the generators of unbounded syzygy chains.
    pub fn cyclic_paths(&self) -> &[Path] {
        self.syzygy_graph().cyclic_paths()
    }

    /// The arrows of `left_completion(a)·a`.
    pub(crate) fn completion_ladder(&self, a: ArrowId) -> &[ArrowId] {
        let ladders = self.ladders.get_or_init(|| {
            self.bq
                .quiver()
                .arrow_ids()
                .map(|a| {
                    let arrow_path = Path::Arrows(vec![a]);
                    let hat = self
                        .left_completion(&arrow_path)
                        .expect("completion of an arrow");
                    let mut full = hat.arrows().to_vec();
                    full.push(a);
                    full
                })
                .collect()
        });
        &ladders[a.0 as usize]
    }

    /// Cached kernel presentation of `p(v)` for a nontrivial path `v`.
    pub fn minimal_killers_of(&self, v: &Path) -> &KernelPresentation {
        let killers = self.killers.get_or_init(|| {
            self.nontrivial
                .iter()
                .map(|v| self.compute_killers(v))
                .collect()
        });
        let idx = self
            .nontrivial
            .binary_search(v)
            .expect("kernel of a nonzero path of the algebra");
        &killers[idx]
    }

    fn compute_killers(&self, v: &Path) -> KernelPresentation {
        let mut generators = Vec::new();
        for &a in self.bq.quiver().arrows_into(self.bq.path_source(v)) {
            let ladder = self.completion_ladder(a).to_vec();
            for len in 1..=ladder.len() {
                let suffix = &ladder[ladder.len() - len..];
                if self.bq.junction_obstructed(suffix, v.arrows()) {
                    generators.push(Path::Arrows(suffix.to_vec()));
                    break;
                }
            }
        }
        generators.sort();
        let presentation = KernelPresentation { generators };
        presentation.assert_presents(self, std::slice::from_ref(v));
        presentation
    }

    /// Zero test for products of relation-free paths; non-composable pairs
    /// and identities give a nonzero verdict, matching `compose`.
    pub(crate) fn product_is_zero(&self, p: &Path, q: &Path) -> bool {
        if p.is_trivial() || q.is_trivial() {
            return false;
        }
        if self.bq.path_target(p) != self.bq.path_source(q) {
            return false;
        }
        self.bq.junction_obstructed(p.arrows(), q.arrows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn algebra(text: &str) -> StringAlgebra {
        StringAlgebra::from_text(text).unwrap()
    }

    fn labels(sa: &StringAlgebra, paths: &[Path]) -> Vec<String> {
        paths.iter().map(|p| sa.path_label(p)).collect()
    }

    #[test]
    fn maximal_paths_line4() {
        let sa = algebra(fixtures::LINE4);
        assert_eq!(labels(&sa, sa.maximal_paths()), vec!["ab", "bc"]);
        let witness = sa.unique_maximal_path_witness().unwrap();
        assert_eq!(sa.quiver().arrow(witness).name, "b");
    }

    #[test]
    fn maximal_paths_umpp7() {
        let sa = algebra(fixtures::UMPP7);
        let mut m = labels(&sa, sa.maximal_paths());
        m.sort();
        assert_eq!(m, vec!["bcab", "bpcpapbp", "d"]);
        assert_eq!(sa.unique_maximal_path_witness(), None);
    }

    #[test]
    fn maximal_paths_triangle() {
        let sa = algebra(fixtures::TRIANGLE);
        assert_eq!(labels(&sa, sa.maximal_paths()), vec!["ab", "bc"]);
        let witness = sa.unique_maximal_path_witness().unwrap();
        assert_eq!(sa.quiver().arrow(witness).name, "b");
    }

    #[test]
    fn left_completions_triangle() {
        let sa = algebra(fixtures::TRIANGLE);
        let a = sa.path_from_names(&["a"]).unwrap();
        let b = sa.path_from_names(&["b"]).unwrap();
        assert_eq!(sa.path_label(&sa.left_completion(&b).unwrap()), "a");
        assert_eq!(sa.path_label(&sa.left_completion(&a).unwrap()), "e_1");
    }

    #[test]
    fn right_completions_triangle() {
        let sa = algebra(fixtures::TRIANGLE);
        let a = sa.path_from_names(&["a"]).unwrap();
        let b = sa.path_from_names(&["b"]).unwrap();
        assert_eq!(sa.path_label(&sa.right_completion(&a).unwrap()), "b");
        assert_eq!(sa.path_label(&sa.right_completion(&b).unwrap()), "c");
    }

    #[test]
    fn left_completion_fivevertex_d() {
        let sa = algebra(fixtures::FIVEVERTEX);
        let d = sa.path_from_names(&["d"]).unwrap();
        assert_eq!(sa.path_label(&sa.left_completion(&d).unwrap()), "e_5");
    }

    #[test]
    fn every_path_ending_with_an_arrow_is_a_suffix_of_its_completion() {
        for (_, text) in fixtures::ALL {
            let sa = algebra(text);
            for w in sa.nontrivial_paths() {
                let last = w.last_arrow().unwrap();
                let arrow_path = Path::Arrows(vec![last]);
                let hat = sa.left_completion(&arrow_path).unwrap();
                let mut full = hat.arrows().to_vec();
                full.push(last);
                assert!(
                    full.ends_with(w.arrows()),
                    "{} not a suffix of completion {}",
                    sa.path_label(w),
                    sa.path_label(&Path::Arrows(full.clone()))
                );
            }
        }
    }

    #[test]
    fn every_nontrivial_path_sits_inside_a_maximal_path() {
        for (_, text) in fixtures::ALL {
            let sa = algebra(text);
            let maximal = sa.maximal_paths();
            for w in sa.nontrivial_paths() {
                assert!(
                    maximal.iter().any(|m| {
                        m.arrows()
                            .windows(w.len())
                            .any(|win| win == w.arrows())
                    }),
                    "{} not inside any maximal path",
                    sa.path_label(w)
                );
            }
        }
    }
}
