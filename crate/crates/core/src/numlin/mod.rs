//! Floating-point kernel: complex matrices, polynomial roots, nullspaces and eigenpairs.

pub mod cmatrix;
pub mod cpoly;
pub mod linalg;

pub use cmatrix::{c64, CMatrix, C64};
pub use cpoly::{aberth_roots, aberth_roots_tol, cluster_roots, CUniPoly, RootSet};
pub use linalg::{charpoly, eigen, eigen_with, newton_polish, nullspace, nullspace_scaled, poly_of_matrix, Eigen, EigenOptions, NewtonOutcome};

/// Relative backward error accepted for a polynomial root.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;
/// Singular values below this fraction of the largest count as zero.
pub const RANK_TOL: f64 = 1e-9;
/// Max-norm distance under which two solutions are the same.
pub const DEDUP_TOL: f64 = 1e-6;

/// Tolerance set shared by the solvers; the CLI can override each field.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    pub root: f64,
    pub rank: f64,
    pub dedup: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { root: ROOT_RESIDUAL_TOL, rank: RANK_TOL, dedup: DEDUP_TOL }
    }
}

/// Removes near-duplicates (max-norm distance below `tol`), keeping first occurrences.
pub fn dedup_matrices(ms: &[CMatrix], tol: f64) -> Vec<usize> {
    let mut keep: Vec<usize> = Vec::new();
    for (i, m) in ms.iter().enumerate() {
        if keep.iter().all(|&j| ms[j].dist(m) > tol) {
            keep.push(i);
        }
    }
    keep
}
