//! Independent linear-algebra verification of resolutions.
//!
//! Projectives are materialized on their path bases, differentials become
//! incidence matrices, kernels come from row reduction, and minimal
//! generators from the quotient by the radical action (prepending arrows).
//! Nothing here consults completions, suffix scans, or the syzygy graph, so
//! agreement with the combinatorial resolution is a genuine cross-check.

use std::collections::BTreeMap;

use crate::algebra::StringAlgebra;
use crate::complex::build_string_complex;
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{rank_of_rows, Matrix};
use crate::quiver::{Path, PathProduct, VertexId};
use crate::walk::GeneralizedWalk;

use num_traits::Zero;

/// A direct summand `P_vertex` with its path basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatSummand {
    pub vertex: VertexId,
    pub basis: Vec<Path>,
}

/// A direct sum of indecomposable projectives in flat coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatModule {
    pub summands: Vec<FlatSummand>,
}

impl FlatModule {
    pub fn dim(&self) -> usize {
        self.summands.iter().map(|s| s.basis.len()).sum()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.summands.len());
        let mut acc = 0;
        for s in &self.summands {
            offsets.push(acc);
            acc += s.basis.len();
        }
        offsets
    }

    fn locate(&self, summand: usize, path: &Path) -> Option<usize> {
        let offset = self.offsets()[summand];
        self.summands[summand]
            .basis
            .binary_search(path)
            .ok()
            .map(|i| offset + i)
    }
}

/// Materializes `P_vertex`: the paths ending at the vertex, sorted.
pub fn flatten(sa: &StringAlgebra, vertex: VertexId) -> FlatModule {
    let basis: Vec<Path> = sa
        .paths()
        .iter()
        .filter(|p| sa.path_target(p) == vertex)
        .cloned()
        .collect();
    FlatModule {
        summands: vec![FlatSummand { vertex, basis }],
    }
}

/// The incidence matrix of right multiplication by `w` in flat bases,
/// row-vector convention.
#[derive(Debug, Clone)]
pub struct FlatMap<F> {
    pub source: FlatModule,
    pub target: FlatModule,
    pub matrix: Matrix<F>,
}

pub fn flat_path_map<F: Field>(sa: &StringAlgebra, w: &Path) -> FlatMap<F> {
    assert!(!w.is_trivial(), "path morphisms have length >= 1");
    let source = flatten(sa, sa.path_source(w));
    let target = flatten(sa, sa.path_target(w));
    let mut matrix = Matrix::zeros(source.dim(), target.dim());
    for (i, u) in source.summands[0].basis.iter().enumerate() {
        if let Ok(PathProduct::Nonzero(p)) = sa.compose(u, w) {
            let j = target.locate(0, &p).expect("product is a basis path");
            matrix.set(i, j, F::one());
        }
    }
    FlatMap {
        source,
        target,
        matrix,
    }
}

/// Left action of `p` on a flat vector: prepend `p` to every basis path in
/// the support, dropping terms that leave the path basis.
fn left_mult<F: Field>(sa: &StringAlgebra, module: &FlatModule, p: &Path, vec: &[F]) -> Vec<F> {
    let offsets = module.offsets();
    let mut out = vec![F::zero(); module.dim()];
    for (si, summand) in module.summands.iter().enumerate() {
        for (bi, u) in summand.basis.iter().enumerate() {
            let coeff = vec[offsets[si] + bi];
            if coeff.is_zero() {
                continue;
            }
            if sa.path_target(p) != sa.path_source(u) {
                continue;
            }
            if let Ok(PathProduct::Nonzero(pu)) = sa.compose(p, u) {
                let idx = module.locate(si, &pu).expect("product ends at the same vertex");
                out[idx] = out[idx] + coeff;
            }
        }
    }
    out
}

/// Projection onto the coordinates whose basis path starts at `vertex`.
fn project_by_source<F: Field>(
    sa: &StringAlgebra,
    module: &FlatModule,
    vertex: VertexId,
    vec: &[F],
) -> Vec<F> {
    let offsets = module.offsets();
    let mut out = vec![F::zero(); module.dim()];
    for (si, summand) in module.summands.iter().enumerate() {
        for (bi, u) in summand.basis.iter().enumerate() {
            if sa.path_source(u) == vertex {
                out[offsets[si] + bi] = vec[offsets[si] + bi];
            }
        }
    }
    out
}

fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[derive(Debug, Clone)]
pub struct OracleStep {
    pub betti: BTreeMap<VertexId, usize>,
    pub kernel_dim: usize,
    pub exact: bool,
}

#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub steps: Vec<OracleStep>,
}

impl OracleOutcome {
    pub fn betti(&self) -> Vec<BTreeMap<VertexId, usize>> {
        self.steps.iter().map(|s| s.betti.clone()).collect()
    }

    pub fn all_exact(&self) -> bool {
        self.steps.iter().all(|s| s.exact)
    }
}

/// Resolves the truncated string complex numerically: kernel of the
/// leftmost differential by row reduction, minimal covers from the radical
/// quotient, iterated to `depth` steps or until the kernel vanishes. Each
/// step reports the cover multiplicities and whether the cover map hits the
/// kernel exactly.
pub fn oracle_resolve<F: Field>(
    sa: &StringAlgebra,
    walk: &GeneralizedWalk,
    depth: usize,
) -> Result<OracleOutcome> {
    let sc = build_string_complex(sa, walk)?;
    if walk.is_trivial() {
        // Stalk projective: already its own resolution.
        return Ok(OracleOutcome { steps: Vec::new() });
    }
    let (tmin, _) = sc.degree_range();
    let source_positions = sc.summands(tmin);
    let target_positions = sc.summands(tmin + 1);
    let mut ambient = FlatModule {
        summands: source_positions
            .iter()
            .map(|p| flatten(sa, p.vertex).summands.remove(0))
            .collect(),
    };
    let target = FlatModule {
        summands: target_positions
            .iter()
            .map(|p| flatten(sa, p.vertex).summands.remove(0))
            .collect(),
    };
    let src_offsets = ambient.offsets();
    let mut differential: Matrix<F> = Matrix::zeros(ambient.dim(), target.dim());
    for cell in &sc.cells {
        if sc.cell_degree(cell) != tmin {
            continue;
        }
        let si = source_positions
            .iter()
            .position(|p| p.index == cell.from)
            .unwrap();
        let ti = target_positions
            .iter()
            .position(|p| p.index == cell.to)
            .unwrap();
        for (bi, u) in ambient.summands[si].basis.iter().enumerate() {
            if let Ok(PathProduct::Nonzero(p)) = sa.compose(u, &cell.path) {
                let col = target.locate(ti, &p).expect("product is a basis path");
                differential.set(src_offsets[si] + bi, col, F::one());
            }
        }
    }
    let mut kernel: Vec<Vec<F>> = differential.left_null_space();
    let arrows: Vec<Path> = sa
        .quiver()
        .arrow_ids()
        .map(|a| Path::Arrows(vec![a]))
        .collect();
    let mut steps = Vec::new();
    for _ in 0..depth {
        if kernel.is_empty() {
            break;
        }
        let radical: Vec<Vec<F>> = kernel
            .iter()
            .flat_map(|k| arrows.iter().map(|a| left_mult(sa, &ambient, a, k)))
            .filter(|v| !is_zero_vec(v))
            .collect();
        let mut betti: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut generators: Vec<(VertexId, Vec<F>)> = Vec::new();
        for vertex in sa.quiver().vertices() {
            let mut span: Vec<Vec<F>> = radical
                .iter()
                .map(|v| project_by_source(sa, &ambient, vertex, v))
                .filter(|v| !is_zero_vec(v))
                .collect();
            let mut rank = rank_of_rows(&span);
            for k in &kernel {
                let candidate = project_by_source(sa, &ambient, vertex, k);
                if is_zero_vec(&candidate) {
                    continue;
                }
                span.push(candidate.clone());
                let new_rank = rank_of_rows(&span);
                if new_rank > rank {
                    rank = new_rank;
                    *betti.entry(vertex).or_insert(0) += 1;
                    generators.push((vertex, candidate));
                } else {
                    span.pop();
                }
            }
        }
        assert!(!generators.is_empty(), "nonzero kernel with zero top");
        let mut rows: Vec<Vec<F>> = Vec::new();
        let mut new_summands = Vec::new();
        for (vertex, gvec) in &generators {
            let summand = flatten(sa, *vertex).summands.remove(0);
            for u in &summand.basis {
                rows.push(left_mult(sa, &ambient, u, gvec));
            }
            new_summands.push(summand);
        }
        let cover = Matrix::from_rows(rows);
        let image_rank = cover.rank();
        let mut stacked = kernel.clone();
        stacked.extend((0..cover.rows()).map(|i| cover.row(i).to_vec()));
        let exact = image_rank == kernel.len() && rank_of_rows(&stacked) == kernel.len();
        steps.push(OracleStep {
            betti,
            kernel_dim: kernel.len(),
            exact,
        });
        kernel = cover.left_null_space();
        ambient = FlatModule {
            summands: new_summands,
        };
    }
    Ok(OracleOutcome { steps })
}
