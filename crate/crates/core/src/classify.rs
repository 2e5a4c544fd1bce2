//! Periodicity witnesses and the classification of string complexes.
//!
//! A truncated string complex has an unbounded minimal resolution exactly
//! when some kernel generator at a deepest valley is a cyclic path. The
//! witness sets package that criterion walk-side: a head witness extends
//! the walk in front or sits at an interior deepest valley, a tail witness
//! extends it at the back. `classify` decides membership and independently
//! runs the resolution engine; disagreement is reported as a bug, never as
//! a verdict.

use crate::algebra::StringAlgebra;
use crate::complex::{build_string_complex, good_truncation};
use crate::error::{Error, Result};
use crate::quiver::Path;
use crate::resolution::{is_periodic, Periodicity};
use crate::syzygy::{is_minimal_for, minimal_killers, valley_kernel};
use crate::walk::{is_generalized_string, Direction, GeneralizedWalk, Letter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessKind {
    /// `w . walk` is again a generalized string.
    Prefix,
    /// `w` generates the kernel intersection at interior position `index`.
    InteriorValley { index: usize },
    /// `walk . w~` is again a generalized string.
    Suffix,
}

/// A cyclic path certifying an unbounded resolution, with the profile depth
/// of the valley it kills at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicityWitness {
    pub kind: WitnessKind,
    pub path: Path,
    pub valley_depth: i64,
}

impl PeriodicityWitness {
    /// Re-derives every claim the witness makes: cyclic-path membership,
    /// kill equations, minimality, and the profile side conditions.
    fn revalidate(&self, sa: &StringAlgebra, walk: &GeneralizedWalk) {
        assert!(
            sa.syzygy_graph().is_cyclic_path(&self.path),
            "witness {} is not a cyclic path",
            sa.path_label(&self.path)
        );
        let profile = walk.degree_profile();
        let letters = walk.letters();
        match &self.kind {
            WitnessKind::Prefix => {
                assert_eq!(profile.min(), 0, "prefix witness needs the minimum at the start");
                let first = &letters[0];
                assert_eq!(first.direction, Direction::Direct);
                assert!(sa.product_is_zero(&self.path, &first.path));
                assert!(is_minimal_for(sa, &self.path, &first.path).unwrap());
                let mut extended = vec![Letter::direct(self.path.clone())];
                extended.extend_from_slice(letters);
                let extended = GeneralizedWalk::from_letters(sa, extended).unwrap();
                assert!(is_generalized_string(sa, &extended));
            }
            WitnessKind::InteriorValley { index } => {
                let l = *index;
                assert!(l > 0 && l < walk.len());
                assert_eq!(profile.values[l], profile.min());
                let entering = &letters[l - 1];
                let leaving = &letters[l];
                assert_eq!(entering.direction, Direction::Inverse);
                assert_eq!(leaving.direction, Direction::Direct);
                assert!(sa.product_is_zero(&self.path, &entering.path));
                assert!(sa.product_is_zero(&self.path, &leaving.path));
                let kernel = valley_kernel(sa, Some(&entering.path), Some(&leaving.path)).unwrap();
                assert!(kernel.generators.contains(&self.path));
            }
            WitnessKind::Suffix => {
                let n = walk.len();
                assert_eq!(profile.values[n], profile.min());
                let last = &letters[n - 1];
                assert_eq!(last.direction, Direction::Inverse);
                assert!(sa.product_is_zero(&self.path, &last.path));
                assert!(is_minimal_for(sa, &self.path, &last.path).unwrap());
                let mut extended = letters.to_vec();
                extended.push(Letter::inverse(self.path.clone()));
                let extended = GeneralizedWalk::from_letters(sa, extended).unwrap();
                assert!(is_generalized_string(sa, &extended));
            }
        }
    }
}

fn require_generalized_string(sa: &StringAlgebra, walk: &GeneralizedWalk) -> Result<()> {
    if !is_generalized_string(sa, walk) {
        return Err(Error::NotGeneralizedString {
            details: walk.label(sa),
        });
    }
    Ok(())
}

/// Head-side witness: a cyclic minimal killer of the first letter when the
/// profile minimum sits at position 0, or a cyclic valley-kernel generator
/// at an interior position attaining the minimum. The interior clause tests
/// the valley depth against the profile minimum itself, not against zero:
/// walks whose minimum lies strictly below both endpoints (the profile of
/// `a~ . c . d . (c b)~` reaches -1, for instance) resolve from those
/// interior valleys and nowhere else.
pub fn periodic_head_witness(
    sa: &StringAlgebra,
    walk: &GeneralizedWalk,
) -> Result<Option<PeriodicityWitness>> {
    require_generalized_string(sa, walk)?;
    if walk.is_trivial() {
        return Ok(None);
    }
    let profile = walk.degree_profile();
    let depth = profile.min();
    let letters = walk.letters();
    let graph = sa.syzygy_graph();
    if depth == 0 {
        let first = &letters[0];
        debug_assert_eq!(first.direction, Direction::Direct);
        for g in minimal_killers(sa, &first.path).generators {
            if graph.is_cyclic_path(&g) {
                let witness = PeriodicityWitness {
                    kind: WitnessKind::Prefix,
                    path: g,
                    valley_depth: 0,
                };
                witness.revalidate(sa, walk);
                return Ok(Some(witness));
            }
        }
    }
    for l in 1..walk.len() {
        if profile.values[l] != depth {
            continue;
        }
        let entering = &letters[l - 1];
        let leaving = &letters[l];
        debug_assert_eq!(entering.direction, Direction::Inverse);
        debug_assert_eq!(leaving.direction, Direction::Direct);
        let kernel = valley_kernel(sa, Some(&entering.path), Some(&leaving.path))?;
        for g in kernel.generators {
            if graph.is_cyclic_path(&g) {
                let witness = PeriodicityWitness {
                    kind: WitnessKind::InteriorValley { index: l },
                    path: g,
                    valley_depth: depth,
                };
                witness.revalidate(sa, walk);
                return Ok(Some(witness));
            }
        }
    }
    Ok(None)
}

/// Tail-side witness: a cyclic minimal killer of the reversed last letter
/// when the profile minimum sits at position n. Minimality for the
/// underlying path of the last letter is imposed as the mirror of the
/// head-side condition.
pub fn periodic_tail_witness(
    sa: &StringAlgebra,
    walk: &GeneralizedWalk,
) -> Result<Option<PeriodicityWitness>> {
    require_generalized_string(sa, walk)?;
    if walk.is_trivial() {
        return Ok(None);
    }
    let profile = walk.degree_profile();
    let n = walk.len();
    if profile.values[n] != profile.min() {
        return Ok(None);
    }
    let last = &walk.letters()[n - 1];
    debug_assert_eq!(last.direction, Direction::Inverse);
    let graph = sa.syzygy_graph();
    for g in minimal_killers(sa, &last.path).generators {
        if graph.is_cyclic_path(&g) {
            let witness = PeriodicityWitness {
                kind: WitnessKind::Suffix,
                path: g,
                valley_depth: profile.values[n],
            };
            witness.revalidate(sa, walk);
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub enum Classification {
    Periodic {
        witness: PeriodicityWitness,
        cycle: Vec<Path>,
    },
    Bounded {
        resolution_length: usize,
    },
}

impl Classification {
    pub fn is_periodic(&self) -> bool {
        matches!(self, Classification::Periodic { .. })
    }
}

/// Decides periodicity twice: by witness membership and by the resolution
/// engine. The walk is canonicalized first; both decisions are invariant
/// under inversion. Disagreement raises `ClassificationMismatch`.
pub fn classify(sa: &StringAlgebra, walk: &GeneralizedWalk) -> Result<Classification> {
    let walk = walk.canonicalize();
    require_generalized_string(sa, &walk)?;
    let membership = match periodic_head_witness(sa, &walk)? {
        Some(w) => Some(w),
        None => periodic_tail_witness(sa, &walk)?,
    };
    let engine = is_periodic(sa, &walk)?;
    match (membership, engine) {
        (Some(witness), Periodicity::Periodic { cycle }) => {
            Ok(Classification::Periodic { witness, cycle })
        }
        (None, Periodicity::Bounded { length }) => Ok(Classification::Bounded {
            resolution_length: length,
        }),
        (membership, engine) => Err(Error::ClassificationMismatch {
            details: format!(
                "walk {}: witness membership says {}, resolution engine says {}",
                walk.label(sa),
                match &membership {
                    Some(w) => format!("periodic via {}", sa.path_label(&w.path)),
                    None => "bounded".to_string(),
                },
                match &engine {
                    Periodicity::Periodic { .. } => "periodic".to_string(),
                    Periodicity::Bounded { length } => format!("bounded at length {length}"),
                }
            ),
        }),
    }
}

#[derive(Debug, Clone)]
pub enum GlobalDimension {
    /// A witness walk proves the global dimension is infinite.
    Infinite {
        walk: GeneralizedWalk,
        witness: PeriodicityWitness,
    },
    /// No witness up to the cap. Not a finiteness proof.
    NoWitnessFound { max_len: usize },
}

/// Searches canonical generalized strings by letter count for a periodicity
/// witness; the first hit proves infinite global dimension.
pub fn gldim_witness(sa: &StringAlgebra, max_len: usize) -> Result<GlobalDimension> {
    for walk in crate::walk::enumerate_generalized_strings(sa, max_len) {
        if walk.is_trivial() {
            continue;
        }
        let witness = match periodic_head_witness(sa, &walk)? {
            Some(w) => Some(w),
            None => periodic_tail_witness(sa, &walk)?,
        };
        if let Some(witness) = witness {
            return Ok(GlobalDimension::Infinite { walk, witness });
        }
    }
    Ok(GlobalDimension::NoWitnessFound { max_len })
}

/// The three families of the indecomposables catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    /// Shifted string complexes, one per canonical generalized string.
    Plain,
    /// Shifted truncations of walks with a head witness.
    TruncatedHead,
    /// Shifted truncations of walks with a tail witness but no head witness.
    TruncatedTailOnly,
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::Plain => "plain",
            Family::TruncatedHead => "truncated-head",
            Family::TruncatedTailOnly => "truncated-tail-only",
        }
    }
}

#[derive(Debug, Clone)]
pub struct IndecEntry {
    pub family: Family,
    pub shift: i64,
    pub walk: GeneralizedWalk,
}

/// Enumerates the catalog of pairwise distinct indecomposable objects over
/// canonical representatives up to `max_len` letters and shifts up to
/// `shift_range`. Refused unless every arrow lies in a unique maximal path.
pub fn enumerate_indecomposables(
    sa: &StringAlgebra,
    max_len: usize,
    shift_range: i64,
) -> Result<Vec<IndecEntry>> {
    if let Some(arrow) = sa.unique_maximal_path_witness() {
        let count = sa
            .maximal_paths()
            .iter()
            .filter(|m| m.arrows().contains(&arrow))
            .count();
        return Err(Error::NotUniqueMaximalPath {
            arrow: sa.quiver().arrow(arrow).name.clone(),
            count,
        });
    }
    let walks = crate::walk::enumerate_generalized_strings(sa, max_len);
    let mut entries = Vec::new();
    for walk in &walks {
        for shift in -shift_range..=shift_range {
            entries.push(IndecEntry {
                family: Family::Plain,
                shift,
                walk: walk.clone(),
            });
        }
    }
    for walk in &walks {
        if walk.is_trivial() {
            continue;
        }
        let head = periodic_head_witness(sa, walk)?;
        let family = if head.is_some() {
            Some(Family::TruncatedHead)
        } else if periodic_tail_witness(sa, walk)?.is_some() {
            Some(Family::TruncatedTailOnly)
        } else {
            None
        };
        if let Some(family) = family {
            for shift in -shift_range..=shift_range {
                entries.push(IndecEntry {
                    family,
                    shift,
                    walk: walk.clone(),
                });
            }
        }
    }
    entries.sort_by(|a, b| {
        a.family
            .cmp(&b.family)
            .then_with(|| a.walk.cmp(&b.walk))
            .then_with(|| a.shift.cmp(&b.shift))
    });
    Ok(entries)
}

/// Truncation kernel generators, for the oracle and the CLI.
pub fn truncation_generators(sa: &StringAlgebra, walk: &GeneralizedWalk) -> Result<Vec<Path>> {
    let sc = build_string_complex(sa, walk)?;
    Ok(good_truncation(sa, &sc)?.generators())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;
    use crate::fixtures;
    use crate::walk::{enumerate_generalized_strings, parse_walk, WalkSyntax};

    fn algebra(text: &str) -> StringAlgebra {
        StringAlgebra::from_text(text).unwrap()
    }

    fn walk(sa: &StringAlgebra, text: &str) -> GeneralizedWalk {
        parse_walk(text, sa, WalkSyntax::Generalized).unwrap()
    }

    #[test]
    fn triangle_bc_has_prefix_witness() {
        let sa = algebra(fixtures::TRIANGLE);
        let w = walk(&sa, "(b c)");
        let witness = periodic_head_witness(&sa, &w).unwrap().unwrap();
        assert_eq!(witness.kind, WitnessKind::Prefix);
        assert_eq!(sa.path_label(&witness.path), "a");
    }

    #[test]
    fn fivevertex_interior_witness() {
        let sa = algebra(fixtures::FIVEVERTEX);
        let w = walk(&sa, "a . b~ . c");
        let witness = periodic_head_witness(&sa, &w).unwrap().unwrap();
        assert_eq!(witness.kind, WitnessKind::InteriorValley { index: 2 });
        assert_eq!(sa.path_label(&witness.path), "d");
        assert!(periodic_tail_witness(&sa, &w).unwrap().is_none());
    }

    #[test]
    fn raw_tail_witness_on_inverse_letter() {
        let sa = algebra(fixtures::TRIANGLE);
        let w = walk(&sa, "c~");
        let witness = periodic_tail_witness(&sa, &w).unwrap().unwrap();
        assert_eq!(witness.kind, WitnessKind::Suffix);
        assert_eq!(sa.path_label(&witness.path), "ab");
    }

    #[test]
    fn trivial_walks_have_no_witness() {
        let sa = algebra(fixtures::TRIANGLE);
        let w = walk(&sa, "e_1");
        assert!(periodic_head_witness(&sa, &w).unwrap().is_none());
        assert!(periodic_tail_witness(&sa, &w).unwrap().is_none());
        assert!(!classify(&sa, &w).unwrap().is_periodic());
    }

    #[test]
    fn hereditary_everything_bounded() {
        let sa = algebra("vertices 1 2 3\narrow a 1 2\narrow b 2 3\n");
        for w in enumerate_generalized_strings(&sa, 4) {
            assert!(periodic_head_witness(&sa, &w).unwrap().is_none());
            assert!(periodic_tail_witness(&sa, &w).unwrap().is_none());
            assert!(!classify(&sa, &w).unwrap().is_periodic());
        }
        match gldim_witness(&sa, 4).unwrap() {
            GlobalDimension::NoWitnessFound { max_len } => assert_eq!(max_len, 4),
            other => panic!("expected no witness, got {other:?}"),
        }
    }

    #[test]
    fn classify_agrees_on_fixture_walks() {
        for (_, text) in fixtures::ALL {
            let sa = algebra(text);
            for w in enumerate_generalized_strings(&sa, 5) {
                classify(&sa, &w).unwrap();
            }
        }
    }

    #[test]
    fn interior_minimum_below_endpoints_is_classified_periodic() {
        let sa = algebra(fixtures::FIVEVERTEX);
        let w = walk(&sa, "b~ . c");
        let result = classify(&sa, &w).unwrap();
        assert!(result.is_periodic());
        if let Classification::Periodic { witness, .. } = result {
            assert_eq!(witness.kind, WitnessKind::InteriorValley { index: 1 });
            assert_eq!(witness.valley_depth, -1);
        }
    }

    #[test]
    fn gldim_fixtures() {
        let triangle = algebra(fixtures::TRIANGLE);
        match gldim_witness(&triangle, 2).unwrap() {
            GlobalDimension::Infinite { .. } => {}
            other => panic!("triangle must be infinite, got {other:?}"),
        }
        let fivevertex = algebra(fixtures::FIVEVERTEX);
        match gldim_witness(&fivevertex, 3).unwrap() {
            GlobalDimension::Infinite { .. } => {}
            other => panic!("fivevertex must be infinite, got {other:?}"),
        }
    }

    #[test]
    fn indec_refuses_triangle() {
        let sa = algebra(fixtures::TRIANGLE);
        let err = enumerate_indecomposables(&sa, 1, 0).unwrap_err();
        match err {
            Error::NotUniqueMaximalPath { arrow, count } => {
                assert_eq!(arrow, "b");
                assert_eq!(count, 2);
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn indec_catalog_on_umpp7() {
        let sa = algebra(fixtures::UMPP7);
        let entries = enumerate_indecomposables(&sa, 1, 0).unwrap();
        assert!(!entries.is_empty());
        // Every single-letter generalized string appears as a plain entry,
        // trivial strings included.
        let walks = enumerate_generalized_strings(&sa, 1);
        let plain: Vec<&IndecEntry> = entries
            .iter()
            .filter(|e| e.family == Family::Plain)
            .collect();
        assert_eq!(plain.len(), walks.len());
        let trivial_count = plain.iter().filter(|e| e.walk.is_trivial()).count();
        assert_eq!(trivial_count, sa.quiver().vertex_count());
        // Families are disjoint by tag: a walk never appears under both
        // truncated families.
        let heads: BTreeSet<&GeneralizedWalk> = entries
            .iter()
            .filter(|e| e.family == Family::TruncatedHead)
            .map(|e| &e.walk)
            .collect();
        let tails: BTreeSet<&GeneralizedWalk> = entries
            .iter()
            .filter(|e| e.family == Family::TruncatedTailOnly)
            .map(|e| &e.walk)
            .collect();
        assert!(heads.is_disjoint(&tails));
    }

    #[test]
    fn gldim_monotone_in_max_len() {
        let sa = algebra(fixtures::TRIANGLE);
        let at_1 = matches!(gldim_witness(&sa, 1).unwrap(), GlobalDimension::Infinite { .. });
        let at_3 = matches!(gldim_witness(&sa, 3).unwrap(), GlobalDimension::Infinite { .. });
        assert!(at_1);
        assert!(at_3);
    }
}
