//! String complexes: projective complexes built from generalized strings.
//!
//! Position `j` of a walk carries the projective at its vertex, placed in
//! the homological degree given by the degree profile. Each letter
//! contributes one path-labeled cell between adjacent positions, pointing
//! from the lower-degree side to the higher one. The good truncation
//! attaches the kernel of the leftmost differential, presented valley by
//! valley.

use serde::{Deserialize, Serialize};

use crate::algebra::StringAlgebra;
use crate::error::{Error, Result};
use crate::quiver::{Path, VertexId};
use crate::syzygy::{valley_kernel, KernelPresentation};
use crate::walk::{
    check_generalized_string, parse_walk, Direction, GeneralizedWalk, WalkSyntax,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Position {
    pub index: usize,
    pub vertex: VertexId,
    pub degree: i64,
}

/// A nonzero entry of a differential: right multiplication by `path` from
/// position `from` into position `to`, one degree up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub from: usize,
    pub to: usize,
    pub path: Path,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringComplex {
    pub walk: GeneralizedWalk,
    pub positions: Vec<Position>,
    pub cells: Vec<Cell>,
}

/// Builds the string complex of a generalized string. Trivial walks give a
/// stalk projective in degree 0.
pub fn build_string_complex(sa: &StringAlgebra, walk: &GeneralizedWalk) -> Result<StringComplex> {
    let check = check_generalized_string(sa, walk);
    if !check.is_generalized_string {
        let bad: Vec<String> = check
            .letter_problems
            .iter()
            .cloned()
            .chain(
                check
                    .junctions
                    .iter()
                    .filter(|j| !j.ok)
                    .map(|j| format!("junction {}: {}", j.index, j.detail)),
            )
            .collect();
        return Err(Error::NotGeneralizedString {
            details: bad.join("; "),
        });
    }
    let profile = walk.degree_profile();
    let mut positions = Vec::with_capacity(walk.len() + 1);
    positions.push(Position {
        index: 0,
        vertex: walk.source(sa),
        degree: profile.values[0],
    });
    for (i, letter) in walk.letters().iter().enumerate() {
        positions.push(Position {
            index: i + 1,
            vertex: letter.target(sa),
            degree: profile.values[i + 1],
        });
    }
    let mut cells = Vec::new();
    for (i, letter) in walk.letters().iter().enumerate() {
        match letter.direction {
            Direction::Direct => cells.push(Cell {
                from: i,
                to: i + 1,
                path: letter.path.clone(),
            }),
            Direction::Inverse => cells.push(Cell {
                from: i + 1,
                to: i,
                path: letter.path.clone(),
            }),
        }
    }
    Ok(StringComplex {
        walk: walk.clone(),
        positions,
        cells,
    })
}

impl StringComplex {
    pub fn degree_range(&self) -> (i64, i64) {
        let min = self.positions.iter().map(|p| p.degree).min().unwrap();
        let max = self.positions.iter().map(|p| p.degree).max().unwrap();
        (min, max)
    }

    /// Positions sitting in degree `i`, in position order.
    pub fn summands(&self, degree: i64) -> Vec<&Position> {
        self.positions
            .iter()
            .filter(|p| p.degree == degree)
            .collect()
    }

    pub fn cell_degree(&self, cell: &Cell) -> i64 {
        self.positions[cell.from].degree
    }

    /// The compressed block matrix of the differential out of degree `i`:
    /// rows indexed by degree-`i` summands, columns by degree-`i+1`
    /// summands, entries the cell paths.
    pub fn reduced_matrix(&self, degree: i64) -> Vec<Vec<Option<Path>>> {
        let sources = self.summands(degree);
        let targets = self.summands(degree + 1);
        let mut matrix = vec![vec![None; targets.len()]; sources.len()];
        for cell in &self.cells {
            if self.cell_degree(cell) != degree {
                continue;
            }
            let row = sources.iter().position(|p| p.index == cell.from).unwrap();
            let col = targets.iter().position(|p| p.index == cell.to).unwrap();
            matrix[row][col] = Some(cell.path.clone());
        }
        matrix
    }

    /// The full positional matrix of the differential out of degree `i`:
    /// `(n+1) x (n+1)` with rows and columns indexed by positions.
    pub fn positional_matrix(&self, degree: i64) -> Vec<Vec<Option<Path>>> {
        let n = self.positions.len();
        let mut matrix = vec![vec![None; n]; n];
        for cell in &self.cells {
            if self.cell_degree(cell) == degree {
                matrix[cell.from][cell.to] = Some(cell.path.clone());
            }
        }
        matrix
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks endpoint consistency of every cell, the radical condition (no
/// trivial-path cells), and that consecutive differentials compose to zero
/// cell by cell.
pub fn verify_complex(sa: &StringAlgebra, sc: &StringComplex) -> VerifyReport {
    let mut failures = Vec::new();
    for cell in &sc.cells {
        let label = sa.path_label(&cell.path);
        if cell.path.is_trivial() {
            failures.push(format!(
                "radical violation: cell {} -> {} is labeled by the trivial path {}",
                cell.from, cell.to, label
            ));
            continue;
        }
        let from = &sc.positions[cell.from];
        let to = &sc.positions[cell.to];
        if sa.path_source(&cell.path) != from.vertex || sa.path_target(&cell.path) != to.vertex {
            failures.push(format!(
                "endpoint mismatch: p({label}) does not map P_{} to P_{}",
                sa.quiver().vertex_name(from.vertex),
                sa.quiver().vertex_name(to.vertex)
            ));
        }
        if to.degree != from.degree + 1 {
            failures.push(format!(
                "degree mismatch: cell p({label}) goes from degree {} to degree {}",
                from.degree, to.degree
            ));
        }
    }
    for c1 in &sc.cells {
        for c2 in &sc.cells {
            if c2.from != c1.to {
                continue;
            }
            match sa.compose(&c1.path, &c2.path) {
                Ok(prod) if prod.is_zero() => {}
                Ok(_) => failures.push(format!(
                    "d after d is nonzero: p({})p({}) through position {}",
                    sa.path_label(&c1.path),
                    sa.path_label(&c2.path),
                    c1.to
                )),
                Err(_) => failures.push(format!(
                    "cells p({}) and p({}) meet at position {} but do not compose",
                    sa.path_label(&c1.path),
                    sa.path_label(&c2.path),
                    c1.to
                )),
            }
        }
    }
    VerifyReport { failures }
}

/// A global-minimum position of the profile together with the generators of
/// its kernel summand.
#[derive(Debug, Clone)]
pub struct Valley {
    pub position: usize,
    pub vertex: VertexId,
    /// Underlying path of the inverse letter entering the valley, if any.
    pub entering: Option<Path>,
    /// Path of the direct letter leaving the valley, if any.
    pub leaving: Option<Path>,
    pub kernel: KernelPresentation,
}

/// The good truncation data: the leftmost degree and the kernel of the
/// differential out of it, presented valley by valley.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub depth: i64,
    pub valleys: Vec<Valley>,
}

impl Truncation {
    /// All kernel generators across valleys, with multiplicity, in valley
    /// order.
    pub fn generators(&self) -> Vec<Path> {
        self.valleys
            .iter()
            .flat_map(|v| v.kernel.generators.iter().cloned())
            .collect()
    }
}

/// Identifies the valleys at the leftmost degree and attaches their kernel
/// presentations. Every position at the global minimum is a valley: an
/// interior one is entered by an inverse letter and left by a direct one,
/// so its kernel is the two-sided intersection.
pub fn good_truncation(sa: &StringAlgebra, sc: &StringComplex) -> Result<Truncation> {
    if sc.walk.is_trivial() {
        return Ok(Truncation {
            depth: 0,
            valleys: Vec::new(),
        });
    }
    let profile = sc.walk.degree_profile();
    let depth = profile.min();
    let n = sc.walk.len();
    let letters = sc.walk.letters();
    let mut valleys = Vec::new();
    for j in 0..=n {
        if profile.values[j] != depth {
            continue;
        }
        let entering = if j > 0 {
            let letter = &letters[j - 1];
            assert_eq!(
                letter.direction,
                Direction::Inverse,
                "descent into a valley must be an inverse letter"
            );
            Some(letter.path.clone())
        } else {
            None
        };
        let leaving = if j < n {
            let letter = &letters[j];
            assert_eq!(
                letter.direction,
                Direction::Direct,
                "ascent out of a valley must be a direct letter"
            );
            Some(letter.path.clone())
        } else {
            None
        };
        let kernel = valley_kernel(sa, entering.as_ref(), leaving.as_ref())?;
        valleys.push(Valley {
            position: j,
            vertex: sc.positions[j].vertex,
            entering,
            leaving,
            kernel,
        });
    }
    Ok(Truncation { depth, valleys })
}

fn entry_label(sa: &StringAlgebra, entry: &Option<Path>) -> String {
    match entry {
        Some(p) => format!("p({})", sa.path_label(p)),
        None => "0".to_string(),
    }
}

/// Degree-by-degree listing with the compressed block matrices; `verbose`
/// additionally prints the full positional matrices.
pub fn render_text(sa: &StringAlgebra, sc: &StringComplex, verbose: bool) -> String {
    let mut out = String::new();
    out.push_str(&format!("walk: {}\n", sc.walk.label(sa)));
    let (min, max) = sc.degree_range();
    for degree in min..=max {
        let summands: Vec<String> = sc
            .summands(degree)
            .iter()
            .map(|p| format!("P_{}", sa.quiver().vertex_name(p.vertex)))
            .collect();
        out.push_str(&format!("degree {degree}: {}\n", summands.join(" + ")));
    }
    for degree in min..max {
        let matrix = sc.reduced_matrix(degree);
        if matrix.is_empty() || matrix[0].is_empty() {
            continue;
        }
        let rendered: Vec<Vec<String>> = matrix
            .iter()
            .map(|row| row.iter().map(|e| entry_label(sa, e)).collect())
            .collect();
        let width = rendered
            .iter()
            .flatten()
            .map(|s| s.len())
            .max()
            .unwrap_or(1);
        let head = format!("d^{degree} = ");
        for (i, row) in rendered.iter().enumerate() {
            let pad = if i == 0 {
                head.clone()
            } else {
                " ".repeat(head.len())
            };
            let cells: Vec<String> = row.iter().map(|s| format!("{s:width$}")).collect();
            out.push_str(&format!("{pad}[ {} ]\n", cells.join(" ")));
        }
        if verbose {
            out.push_str(&format!("full positional matrix at degree {degree}:\n"));
            for row in sc.positional_matrix(degree) {
                let cells: Vec<String> = row.iter().map(|e| entry_label(sa, e)).collect();
                out.push_str(&format!("    [ {} ]\n", cells.join(" ")));
            }
        }
    }
    out
}

/// Staircase rendering: one node per position labeled by its projective,
/// edges labeled by cell paths.
pub fn render_dot(sa: &StringAlgebra, sc: &StringComplex) -> String {
    let mut out = String::from("digraph string_complex {\n    rankdir=LR;\n");
    for p in &sc.positions {
        out.push_str(&format!(
            "    {} [label=\"P_{}\"];\n",
            p.index,
            sa.quiver().vertex_name(p.vertex)
        ));
    }
    for cell in &sc.cells {
        out.push_str(&format!(
            "    {} -> {} [label=\"{}\"];\n",
            cell.from,
            cell.to,
            sa.path_label(&cell.path)
        ));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct DegreesJson {
    pub min: i64,
    pub max: i64,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct PositionJson {
    pub index: usize,
    pub vertex: String,
    pub degree: i64,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct CellJson {
    pub from: usize,
    pub to: usize,
    pub path: String,
    pub degree: i64,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ComplexJson {
    pub walk: String,
    pub degrees: DegreesJson,
    pub positions: Vec<PositionJson>,
    pub cells: Vec<CellJson>,
}

pub fn to_json(sa: &StringAlgebra, sc: &StringComplex) -> ComplexJson {
    let (min, max) = sc.degree_range();
    ComplexJson {
        walk: sc.walk.label(sa),
        degrees: DegreesJson { min, max },
        positions: sc
            .positions
            .iter()
            .map(|p| PositionJson {
                index: p.index,
                vertex: sa.quiver().vertex_name(p.vertex).to_string(),
                degree: p.degree,
            })
            .collect(),
        cells: sc
            .cells
            .iter()
            .map(|c| CellJson {
                from: c.from,
                to: c.to,
                path: sa.path_label(&c.path),
                degree: sc.cell_degree(c),
            })
            .collect(),
    }
}

/// Rebuilds the complex from its JSON document and checks that the listed
/// positions and cells agree with the reconstruction.
pub fn from_json(sa: &StringAlgebra, text: &str) -> Result<StringComplex> {
    let doc: ComplexJson =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let walk = parse_walk(&doc.walk, sa, WalkSyntax::Generalized)?;
    let sc = build_string_complex(sa, &walk)?;
    let roundtrip = to_json(sa, &sc);
    if roundtrip != doc {
        return Err(Error::Json(
            "complex document does not match its walk".to_string(),
        ));
    }
    Ok(sc)
}

pub fn render(
    sa: &StringAlgebra,
    sc: &StringComplex,
    format: &str,
    verbose: bool,
) -> Result<String> {
    match format {
        "text" => Ok(render_text(sa, sc, verbose)),
        "dot" => Ok(render_dot(sa, sc)),
        "json" => Ok(serde_json::to_string_pretty(&to_json(sa, sc))
            .expect("complex document serializes")),
        other => Err(Error::UnknownFormat(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::walk::enumerate_generalized_strings;

    fn algebra(text: &str) -> StringAlgebra {
        StringAlgebra::from_text(text).unwrap()
    }

    fn walk(sa: &StringAlgebra, text: &str) -> GeneralizedWalk {
        parse_walk(text, sa, WalkSyntax::Generalized).unwrap()
    }

    fn vertex_names(sa: &StringAlgebra, sc: &StringComplex, degree: i64) -> Vec<String> {
        sc.summands(degree)
            .iter()
            .map(|p| sa.quiver().vertex_name(p.vertex).to_string())
            .collect()
    }

    fn matrix_labels(sa: &StringAlgebra, m: &[Vec<Option<Path>>]) -> Vec<Vec<String>> {
        m.iter()
            .map(|row| row.iter().map(|e| entry_label(sa, e)).collect())
            .collect()
    }

    #[test]
    fn four_letter_complex_on_parallel() {
        let sa = algebra(fixtures::PARALLEL);
        let w = walk(&sa, "a~ . c . d . (c b)~");
        let sc = build_string_complex(&sa, &w).unwrap();
        assert_eq!(sc.degree_range(), (-1, 1));
        assert_eq!(vertex_names(&sa, &sc, -1), vec!["1"]);
        assert_eq!(vertex_names(&sa, &sc, 0), vec!["2", "2", "1"]);
        assert_eq!(vertex_names(&sa, &sc, 1), vec!["3"]);
        assert_eq!(
            matrix_labels(&sa, &sc.reduced_matrix(-1)),
            vec![vec!["p(a)", "p(c)", "0"]]
        );
        assert_eq!(
            matrix_labels(&sa, &sc.reduced_matrix(0)),
            vec![vec!["0"], vec!["p(d)"], vec!["p(cb)"]]
        );
        assert!(verify_complex(&sa, &sc).passed());
    }

    #[test]
    fn single_letter_complex_on_triangle() {
        let sa = algebra(fixtures::TRIANGLE);
        let sc = build_string_complex(&sa, &walk(&sa, "(b c)")).unwrap();
        assert_eq!(sc.degree_range(), (0, 1));
        assert_eq!(vertex_names(&sa, &sc, 0), vec!["2"]);
        assert_eq!(vertex_names(&sa, &sc, 1), vec!["1"]);
        assert_eq!(
            matrix_labels(&sa, &sc.reduced_matrix(0)),
            vec![vec!["p(bc)"]]
        );
    }

    #[test]
    fn trivial_complex_is_a_stalk() {
        let sa = algebra(fixtures::TRIANGLE);
        let sc = build_string_complex(&sa, &walk(&sa, "e_1")).unwrap();
        assert_eq!(sc.degree_range(), (0, 0));
        assert!(sc.cells.is_empty());
        let t = good_truncation(&sa, &sc).unwrap();
        assert!(t.valleys.is_empty());
    }

    #[test]
    fn rejects_non_generalized_strings() {
        let sa = algebra(fixtures::TRIANGLE);
        let w = walk(&sa, "b . c");
        assert!(build_string_complex(&sa, &w).is_err());
    }

    #[test]
    fn verify_catches_trivial_cell_and_bad_composition() {
        let sa = algebra(fixtures::TRIANGLE);
        let v2 = sa.quiver().vertex_by_name("2").unwrap();
        let v3 = sa.quiver().vertex_by_name("3").unwrap();
        let v1 = sa.quiver().vertex_by_name("1").unwrap();
        let hand_built = StringComplex {
            walk: GeneralizedWalk::Trivial(v2),
            positions: vec![
                Position { index: 0, vertex: v2, degree: 0 },
                Position { index: 1, vertex: v3, degree: 1 },
                Position { index: 2, vertex: v1, degree: 2 },
            ],
            cells: vec![
                Cell { from: 0, to: 1, path: sa.path_from_names(&["b"]).unwrap() },
                Cell { from: 1, to: 2, path: sa.path_from_names(&["c"]).unwrap() },
            ],
        };
        let report = verify_complex(&sa, &hand_built);
        assert!(report
            .failures
            .iter()
            .any(|f| f.contains("d after d is nonzero")));

        let stalk = StringComplex {
            walk: GeneralizedWalk::Trivial(v2),
            positions: vec![
                Position { index: 0, vertex: v2, degree: 0 },
                Position { index: 1, vertex: v2, degree: 1 },
            ],
            cells: vec![Cell {
                from: 0,
                to: 1,
                path: Path::Trivial(v2),
            }],
        };
        let report = verify_complex(&sa, &stalk);
        assert!(report.failures.iter().any(|f| f.contains("radical")));
    }

    #[test]
    fn truncation_of_fivevertex_walk() {
        let sa = algebra(fixtures::FIVEVERTEX);
        let sc = build_string_complex(&sa, &walk(&sa, "a . b~ . c")).unwrap();
        let t = good_truncation(&sa, &sc).unwrap();
        assert_eq!(t.depth, 0);
        let positions: Vec<usize> = t.valleys.iter().map(|v| v.position).collect();
        assert_eq!(positions, vec![0, 2]);
        assert!(t.valleys[0].kernel.is_zero());
        let labels: Vec<String> = t.valleys[1]
            .kernel
            .generators
            .iter()
            .map(|g| sa.path_label(g))
            .collect();
        assert_eq!(labels, vec!["d"]);
    }

    #[test]
    fn truncation_of_triangle_bc() {
        let sa = algebra(fixtures::TRIANGLE);
        let sc = build_string_complex(&sa, &walk(&sa, "(b c)")).unwrap();
        let t = good_truncation(&sa, &sc).unwrap();
        assert_eq!(t.depth, 0);
        assert_eq!(t.valleys.len(), 1);
        assert_eq!(t.valleys[0].position, 0);
        let labels: Vec<String> = t.generators().iter().map(|g| sa.path_label(g)).collect();
        assert_eq!(labels, vec!["a"]);
    }

    #[test]
    fn staircase_dot_counts() {
        let sa = algebra(fixtures::PARALLEL);
        let sc = build_string_complex(&sa, &walk(&sa, "a~ . c . d . (c b)~")).unwrap();
        let dot = render_dot(&sa, &sc);
        assert_eq!(dot.matches("label=\"P_").count(), 5);
        assert_eq!(dot.matches(" -> ").count(), 4);
        for path in ["a", "c", "d", "cb"] {
            assert!(dot.contains(&format!("label=\"{path}\"")));
        }
    }

    #[test]
    fn json_round_trip() {
        let sa = algebra(fixtures::PARALLEL);
        let sc = build_string_complex(&sa, &walk(&sa, "a~ . c . d . (c b)~")).unwrap();
        let text = render(&sa, &sc, "json", false).unwrap();
        let back = from_json(&sa, &text).unwrap();
        assert_eq!(back, sc);
        assert!(render(&sa, &sc, "svg", false).is_err());
    }

    #[test]
    fn every_short_string_builds_a_verified_complex() {
        for (_, text) in fixtures::ALL {
            let sa = algebra(text);
            for w in enumerate_generalized_strings(&sa, 4) {
                let sc = build_string_complex(&sa, &w).unwrap();
                let report = verify_complex(&sa, &sc);
                assert!(
                    report.passed(),
                    "{}: {:?}",
                    w.label(&sa),
                    report.failures
                );
                // Dimension bookkeeping: summand count per degree matches
                // the profile.
                let profile = w.degree_profile();
                let (min, max) = sc.degree_range();
                for degree in min..=max {
                    let expected =
                        profile.values.iter().filter(|&&v| v == degree).count();
                    assert_eq!(sc.summands(degree).len(), expected);
                }
            }
        }
    }

    #[test]
    fn inverted_walk_builds_the_mirrored_complex() {
        for (_, text) in fixtures::ALL {
            let sa = algebra(text);
            for w in enumerate_generalized_strings(&sa, 3) {
                let sc = build_string_complex(&sa, &w).unwrap();
                let mirrored = build_string_complex(&sa, &w.invert()).unwrap();
                let shift = w.degree_profile().end();
                let (min, max) = sc.degree_range();
                for degree in min..=max {
                    let mut ours: Vec<VertexId> =
                        sc.summands(degree).iter().map(|p| p.vertex).collect();
                    let mut theirs: Vec<VertexId> = mirrored
                        .summands(degree - shift)
                        .iter()
                        .map(|p| p.vertex)
                        .collect();
                    ours.sort();
                    theirs.sort();
                    assert_eq!(ours, theirs);
                }
                let mut ours: Vec<&Path> = sc.cells.iter().map(|c| &c.path).collect();
                let mut theirs: Vec<&Path> = mirrored.cells.iter().map(|c| &c.path).collect();
                ours.sort();
                theirs.sort();
                assert_eq!(ours, theirs);
            }
        }
    }
}
