//! Nullspaces, eigenpairs, matrix polynomial evaluation and Newton refinement.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_traits::Zero;

use super::cmatrix::{c64, CMatrix, C64};
use super::cpoly::{aberth_roots_tol, cluster_roots, CUniPoly};
use crate::error::{Error, Result};

/// Orthonormal basis of the numerical right nullspace: right singular vectors whose
/// singular value is at most `rank_tol * sigma_max`.
pub fn nullspace(m: &CMatrix, rank_tol: f64) -> Vec<Vec<C64>> {
    nullspace_scaled(m, rank_tol, None)
}

/// Like [`nullspace`] but measures singular values against `scale` instead of
/// the largest singular value of `m` (useful for shifted matrices `m - lambda I`).
pub fn nullspace_scaled(m: &CMatrix, rank_tol: f64, scale: Option<f64>) -> Vec<Vec<C64>> {
    let (r, c) = (m.rows(), m.cols());
    // pad to at least square so the SVD returns a full set of right singular vectors
    let mut a = DMatrix::<C64>::zeros(r.max(c), c);
    for i in 0..r {
        for j in 0..c {
            a[(i, j)] = m.get(i, j);
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma = &svd.singular_values;
    let smax = scale.unwrap_or_else(|| sigma.iter().copied().fold(0.0, f64::max));
    (0..c)
        .filter(|&k| smax == 0.0 || sigma[k] <= rank_tol * smax)
        .map(|k| (0..c).map(|j| v_t[(k, j)].conj()).collect())
        .collect()
}

/// Characteristic polynomial `det(lambda I - m)` by interpolation on a circle.
pub fn charpoly(m: &CMatrix) -> Result<CUniPoly> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("characteristic polynomial of a non-square matrix".into()));
    }
    let n = m.rows();
    let radius = m.norm_fro().max(1.0);
    let nodes = n + 1;
    let samples = (0..nodes)
        .map(|k| {
            let z = C64::from_polar(radius, 2.0 * PI * k as f64 / nodes as f64);
            (&CMatrix::identity(n).scale(z) - m).det()
        })
        .collect::<Result<Vec<_>>>()?;
    let p = CUniPoly::from_circle_samples(&samples, radius);
    // the leading coefficient is exactly one
    let mut c = p.coeffs().to_vec();
    c.resize(n + 1, C64::zero());
    c[n] = c64(1.0, 0.0);
    Ok(CUniPoly::new(c))
}

pub const DEFAULT_CLUSTER_TOL: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenOptions {
    pub rank_tol: f64,
    /// Eigenvalues closer than this (relative) are treated as one repeated value.
    /// A k-fold root is only resolved to about eps^(1/k), so this is looser than
    /// the solution dedup tolerance.
    pub cluster_tol: f64,
    pub root_tol: f64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions { rank_tol: super::RANK_TOL, cluster_tol: DEFAULT_CLUSTER_TOL, root_tol: super::ROOT_RESIDUAL_TOL }
    }
}

#[derive(Clone, Debug)]
pub struct Eigen {
    /// Eigenvalues with algebraic multiplicity.
    pub values: Vec<C64>,
    /// Independent eigenvectors as columns.
    pub vectors: CMatrix,
    /// Eigenvalue belonging to each column of `vectors`.
    pub vector_values: Vec<C64>,
    /// True when fewer independent eigenvectors than the matrix size were found.
    pub deficient: bool,
    /// True when some eigenvalue has more than one independent eigenvector.
    pub derogatory: bool,
}

impl Eigen {
    /// True when all eigenvalues are distinct and each has one eigenvector.
    pub fn is_simple(&self) -> bool {
        !self.deficient && !self.derogatory && self.vector_values.len() == self.values.len()
    }
}

pub fn eigen(m: &CMatrix) -> Result<Eigen> {
    eigen_with(m, &EigenOptions::default())
}

pub fn eigen_with(m: &CMatrix, opts: &EigenOptions) -> Result<Eigen> {
    let n = m.rows();
    let scale = m.singular_values().first().copied().unwrap_or(0.0).max(1.0);
    let p = charpoly(m)?;
    let roots = aberth_roots_tol(&p, opts.root_tol)?;
    let clusters = cluster_roots(&roots.roots, opts.cluster_tol);
    let mut values = Vec::with_capacity(n);
    let mut cols = Vec::new();
    let mut vector_values = Vec::new();
    let mut deficient = false;
    let mut derogatory = false;
    for (centre, mult) in clusters {
        let lambda = refine_multiple_root(&p, centre, mult);
        values.extend(std::iter::repeat_n(lambda, mult));
        let shifted = m - &CMatrix::identity(n).scale(lambda);
        let mut ker = nullspace_scaled(&shifted, opts.rank_tol * mult as f64, Some(scale));
        if ker.is_empty() {
            // the eigenvalue is only accurate to the root tolerance; take the best vector
            ker = smallest_singular_vector(&shifted).into_iter().collect();
        }
        deficient |= ker.len() < mult;
        derogatory |= ker.len() > 1;
        ker.truncate(mult);
        for v in ker {
            cols.push(v);
            vector_values.push(lambda);
        }
    }
    Ok(Eigen { values, vectors: CMatrix::from_columns(&cols)?, vector_values, deficient, derogatory })
}

/// A root of multiplicity `mult` is a simple root of the `(mult-1)`-th derivative,
/// where Newton converges quadratically instead of stalling near sqrt(eps).
fn refine_multiple_root(p: &CUniPoly, centre: C64, mult: usize) -> C64 {
    if mult < 2 {
        return centre;
    }
    let d = (1..mult).fold(p.clone(), |q, _| q.derivative());
    let mut z = centre;
    for _ in 0..20 {
        let (v, dv) = d.eval_with_derivative(z);
        if dv.is_zero() {
            break;
        }
        let step = v / dv;
        z -= step;
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    if (z - centre).norm() <= DEFAULT_CLUSTER_TOL * centre.norm().max(1.0) {
        z
    } else {
        centre
    }
}

fn smallest_singular_vector(m: &CMatrix) -> Option<Vec<C64>> {
    let svd = m.to_nalgebra().svd(false, true);
    let v_t = svd.v_t?;
    let k = svd.singular_values.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1))?.0;
    Some((0..m.cols()).map(|j| v_t[(k, j)].conj()).collect())
}

/// Horner evaluation of a scalar polynomial at a square matrix.
pub fn poly_of_matrix(p: &CUniPoly, x: &CMatrix) -> CMatrix {
    assert!(x.is_square(), "polynomial of a non-square matrix");
    let n = x.rows();
    let id = CMatrix::identity(n);
    p.coeffs().iter().rev().fold(CMatrix::zeros(n, n), |acc, c| &(&acc * x) + &id.scale(*c))
}

/// Result of [`newton_polish`].
#[derive(Clone, Debug)]
pub struct NewtonOutcome {
    pub x: CMatrix,
    pub residual: f64,
    pub iterations: usize,
}

/// Newton's method on `f(X) = 0` where `jac(X)` is the Jacobian of the row-major
/// vectorization. Steps that do not reduce the residual are rejected.
pub fn newton_polish<F, J>(x0: &CMatrix, f: F, jac: J, max_iter: usize) -> NewtonOutcome
where
    F: Fn(&CMatrix) -> CMatrix,
    J: Fn(&CMatrix) -> CMatrix,
{
    let (r, c) = (x0.rows(), x0.cols());
    let mut x = x0.clone();
    let mut res = f(&x).norm_max();
    let mut iterations = 0;
    while iterations < max_iter && res > 0.0 {
        iterations += 1;
        let fx = f(&x);
        let rhs = CMatrix::column(fx.entries());
        let Ok(step) = jac(&x).solve(&rhs) else { break };
        let Ok(step) = CMatrix::from_vec(r, c, step.entries().to_vec()) else { break };
        let cand = &x - &step;
        let cand_res = f(&cand).norm_max();
        if !(cand_res < res) {
            break;
        }
        x = cand;
        res = cand_res;
    }
    NewtonOutcome { x, residual: res, iterations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn nullspace_of_zero_is_everything() {
        assert_eq!(nullspace(&CMatrix::zeros(2, 2), 1e-9).len(), 2);
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = CMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
        let ker = nullspace(&m, 1e-9);
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        assert!((v[0] + v[1]).norm() < 1e-14);
        assert!((v[0].norm() - 0.5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn nullspace_of_wide_matrix() {
        let m = CMatrix::from_real(1, 3, &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(nullspace(&m, 1e-9).len(), 2);
    }

    #[test]
    fn eigen_of_diagonal() {
        let e = eigen(&CMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 2.0]).unwrap()).unwrap();
        assert!(e.is_simple());
        for (k, lam) in e.vector_values.iter().enumerate() {
            let v = e.vectors.col(k);
            let idx = if (lam - c64(1.0, 0.0)).norm() < 1e-12 { 0 } else { 1 };
            assert!((lam.re - (idx + 1) as f64).abs() < 1e-12);
            assert!(v[1 - idx].norm() < 1e-12);
        }
    }

    #[test]
    fn eigen_of_jordan_block_is_deficient() {
        let e = eigen(&CMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap()).unwrap();
        assert_eq!(e.values.len(), 2);
        assert!(e.values.iter().all(|v| v.norm() < 1e-6));
        assert_eq!(e.vectors.cols(), 1);
        assert!(e.deficient);
    }

    #[test]
    fn eigen_of_identity_is_derogatory() {
        let e = eigen(&CMatrix::identity(3)).unwrap();
        assert!(e.derogatory && !e.deficient);
        assert_eq!(e.vectors.cols(), 3);
    }

    #[test]
    fn poly_of_matrix_basics() {
        let p = CUniPoly::from_real(&[-1.0, 0.0, 1.0]);
        assert!(poly_of_matrix(&p, &CMatrix::identity(2)).norm_max() < 1e-15);
        let x = CMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(poly_of_matrix(&CUniPoly::from_real(&[0.0, 1.0]), &x).dist(&x) < 1e-15);
    }

    #[test]
    fn newton_finds_square_root() {
        // X^2 = diag(4, 9) starting near diag(2, 3)
        let target = CMatrix::from_real(2, 2, &[4.0, 0.0, 0.0, 9.0]).unwrap();
        let f = |x: &CMatrix| &(x * x) - &target;
        let jac = |x: &CMatrix| &x.kron(&CMatrix::identity(2)) + &CMatrix::identity(2).kron(&x.transpose());
        let x0 = CMatrix::from_real(2, 2, &[2.1, 0.05, -0.02, 2.9]).unwrap();
        let out = newton_polish(&x0, f, jac, 20);
        assert!(out.residual < 1e-13);
        assert!(out.x.dist(&CMatrix::from_real(2, 2, &[2.0, 0.0, 0.0, 3.0]).unwrap()) < 1e-12);
    }

    proptest! {
        #[test]
        fn nullspace_vectors_are_annihilated(entries in prop::collection::vec(-2i32..=2, 6)) {
            // 3x2 of rank <= 2 padded into a 3x3 with dependent third column
            let e: Vec<f64> = entries.iter().map(|&v| f64::from(v)).collect();
            let m = CMatrix::from_real(3, 3, &[
                e[0], e[1], e[0] + e[1],
                e[2], e[3], e[2] + e[3],
                e[4], e[5], e[4] + e[5],
            ]).unwrap();
            let tol = 1e-9;
            let smax = m.singular_values()[0];
            let ker = nullspace(&m, tol);
            prop_assert!(!ker.is_empty());
            for v in ker {
                let mv = &m * &CMatrix::column(&v);
                prop_assert!(mv.norm_fro() <= 10.0 * tol * smax.max(f64::MIN_POSITIVE) + 1e-300);
            }
        }

        #[test]
        fn eigenvalues_sum_to_trace(entries in prop::collection::vec(-2i32..=2, 9)) {
            let e: Vec<f64> = entries.iter().map(|&v| f64::from(v)).collect();
            let m = CMatrix::from_real(3, 3, &e).unwrap();
            let ev = eigen_with(&m, &EigenOptions { root_tol: 1e-8, ..Default::default() }).unwrap();
            let s: C64 = ev.values.iter().sum();
            prop_assert!((s - m.trace()).norm() < 1e-6);
        }
    }
}
