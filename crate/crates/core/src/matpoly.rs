//! Matrix polynomials `sum lambda^i A_i`, their determinant, and the eigenvector
//! construction of all solvents of `A_k X^k + ... + A_1 X + A_0 = 0`.

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, GenericityFailure, Result};
use crate::exactalg::{rat, Rat, RatMatrix, RatUniPoly};
use crate::json::{parse_square, rat_rows, RatRows};
use crate::numlin::{
    aberth_roots_tol, dedup_matrices, newton_polish, nullspace, poly_of_matrix, CMatrix, CUniPoly, Tolerances, C64,
};

/// `A_0 + lambda A_1 + ... + lambda^k A_k` with `n x n` coefficients.
#[derive(Clone, Debug)]
pub struct MatPolynomial {
    n: usize,
    exact: Option<Vec<RatMatrix>>,
    numeric: Vec<CMatrix>,
}

impl MatPolynomial {
    pub fn from_rat(coeffs: Vec<RatMatrix>) -> Result<Self> {
        let n = validate_shapes(coeffs.iter().map(|m| (m.rows(), m.cols())))?;
        if coeffs.last().is_some_and(RatMatrix::is_zero) {
            return Err(Error::Invalid("leading coefficient matrix is zero".into()));
        }
        let numeric = coeffs.iter().map(CMatrix::from_rat).collect();
        Ok(MatPolynomial { n, exact: Some(coeffs), numeric })
    }

    pub fn from_complex(coeffs: Vec<CMatrix>) -> Result<Self> {
        let n = validate_shapes(coeffs.iter().map(|m| (m.rows(), m.cols())))?;
        if coeffs.last().is_some_and(|m| m.norm_max() == 0.0) {
            return Err(Error::Invalid("leading coefficient matrix is zero".into()));
        }
        Ok(MatPolynomial { n, exact: None, numeric: coeffs })
    }

    /// The specialization with `A_k = I`, `A_1 = (-1)^n E_{1n}` and `A_0` carrying
    /// ones on the subdiagonal plus `(-1)^n` at `(1, n)`; its determinant is
    /// `lambda^{nk} - lambda - 1`.
    pub fn trinomial_specialization(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k < 2 {
            return Err(Error::Invalid("specialization needs n >= 1 and k >= 2".into()));
        }
        let sign = if n.is_multiple_of(2) { rat(1) } else { rat(-1) };
        let mut coeffs = vec![RatMatrix::zeros(n, n); k + 1];
        coeffs[k] = RatMatrix::identity(n);
        coeffs[1].set(0, n - 1, sign.clone());
        for i in 1..n {
            coeffs[0].set(i, i - 1, rat(1));
        }
        let corner = coeffs[0].get(0, n - 1) + &sign;
        coeffs[0].set(0, n - 1, corner);
        Self::from_rat(coeffs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.numeric.len() - 1
    }

    pub fn coeffs(&self) -> &[CMatrix] {
        &self.numeric
    }

    pub fn exact_coeffs(&self) -> Option<&[RatMatrix]> {
        self.exact.as_deref()
    }

    /// `sum lambda^i A_i`
    pub fn at(&self, lambda: C64) -> CMatrix {
        self.numeric.iter().rev().fold(CMatrix::zeros(self.n, self.n), |acc, a| &acc.scale(lambda) + a)
    }

    fn at_rat(exact: &[RatMatrix], t: &Rat) -> RatMatrix {
        let n = exact[0].rows();
        exact.iter().rev().fold(RatMatrix::zeros(n, n), |acc, a| &acc.scale(t) + a)
    }

    /// `sum A_i X^i`
    pub fn apply(&self, x: &CMatrix) -> CMatrix {
        let mut acc = CMatrix::zeros(self.n, self.n);
        let mut pow = CMatrix::identity(self.n);
        for (i, a) in self.numeric.iter().enumerate() {
            if i > 0 {
                pow = &pow * x;
            }
            acc = &acc + &(a * &pow);
        }
        acc
    }

    /// Jacobian of `X -> sum A_i X^i` on row-major vectorizations:
    /// `A X^a H X^b` contributes `(A X^a) kron (X^b)^T`.
    pub fn jacobian(&self, x: &CMatrix) -> CMatrix {
        let n = self.n;
        let powers: Vec<CMatrix> = (0..self.k().max(1)).map(|e| x.pow(e)).collect();
        let mut jac = CMatrix::zeros(n * n, n * n);
        for (i, a) in self.numeric.iter().enumerate().skip(1) {
            for p in 0..i {
                let left = a * &powers[p];
                jac = &jac + &left.kron(&powers[i - 1 - p].transpose());
            }
        }
        jac
    }

    pub fn to_json(&self) -> Result<MatPolyFile> {
        let exact = self.exact.as_ref().ok_or_else(|| Error::Invalid("only rational matrix polynomials serialize".into()))?;
        Ok(MatPolyFile { n: self.n, coeffs: exact.iter().map(rat_rows).collect() })
    }
}

fn validate_shapes(shapes: impl Iterator<Item = (usize, usize)>) -> Result<usize> {
    let shapes: Vec<_> = shapes.collect();
    let &(n, _) = shapes.first().ok_or_else(|| Error::Invalid("matrix polynomial needs coefficients".into()))?;
    if shapes.len() < 2 {
        return Err(Error::Invalid("matrix polynomial needs degree at least 1".into()));
    }
    if n == 0 || shapes.iter().any(|&(r, c)| r != n || c != n) {
        return Err(Error::DimensionMismatch("coefficients must all be square of the same size".into()));
    }
    Ok(n)
}

/// JSON form: `{"n": 2, "coeffs": [A_0, A_1, ...]}` with rational string entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatPolyFile {
    pub n: usize,
    pub coeffs: Vec<RatRows>,
}

impl MatPolyFile {
    pub fn parse(&self) -> Result<MatPolynomial> {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, m)| parse_square(m, self.n, &format!("A_{i}"))).collect::<Result<_>>()?;
        MatPolynomial::from_rat(coeffs)
    }
}

/// Scalar polynomial in lambda, exact when the input was rational.
#[derive(Clone, Debug, PartialEq)]
pub enum LambdaPoly {
    Exact(RatUniPoly),
    Numeric(CUniPoly),
}

impl LambdaPoly {
    pub fn to_complex(&self) -> CUniPoly {
        match self {
            LambdaPoly::Exact(p) => CUniPoly::from_rat(p),
            LambdaPoly::Numeric(p) => p.clone(),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            LambdaPoly::Exact(p) => p.degree(),
            LambdaPoly::Numeric(p) => p.degree(),
        }
    }
}

/// `det(sum lambda^i A_i)` by evaluation at `nk + 1` nodes and interpolation: integer
/// nodes and exact Lagrange for rational input, roots of unity otherwise.
pub fn det_lambda(mp: &MatPolynomial) -> Result<LambdaPoly> {
    let nodes = mp.n * mp.k() + 1;
    if let Some(exact) = &mp.exact {
        let xs: Vec<Rat> = (0..nodes as i64).map(rat).collect();
        let ys = xs.iter().map(|t| MatPolynomial::at_rat(exact, t).det()).collect::<Result<Vec<_>>>()?;
        return Ok(LambdaPoly::Exact(RatUniPoly::interpolate(&xs, &ys)));
    }
    let samples = (0..nodes)
        .map(|j| mp.at(C64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / nodes as f64)).det())
        .collect::<Result<Vec<_>>>()?;
    let scale = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let p = CUniPoly::from_circle_samples(&samples, 1.0);
    // interpolation noise above the true degree is dropped
    let c: Vec<C64> = p.coeffs().iter().map(|z| if z.norm() <= 1e-13 * scale { C64::zero() } else { *z }).collect();
    Ok(LambdaPoly::Numeric(CUniPoly::new(c)))
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Which construction produced a solution set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Eigen,
    Hamiltonian,
    Groebner,
    ClosedForm,
}

/// One solution together with the eigen-data it came from.
#[derive(Clone, Debug)]
pub struct Solvent {
    pub x: CMatrix,
    /// Indices (into the root list) of the chosen eigenvalues; empty when not applicable.
    pub subset: Vec<usize>,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub solutions: Vec<Solvent>,
    pub count_expected: Option<usize>,
    pub all_simple: bool,
    pub method: Method,
    /// Spectrum the solutions were assembled from (roots of the determinant, or of M).
    pub roots: Vec<C64>,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn matrices(&self) -> Vec<CMatrix> {
        self.solutions.iter().map(|s| s.x.clone()).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.solutions.iter().map(|s| s.residual).fold(0.0, f64::max)
    }

    /// Number of solutions that remain after merging near-duplicates.
    pub fn distinct_count(&self, tol: f64) -> usize {
        dedup_matrices(&self.matrices(), tol).len()
    }

    /// True when every solution of `self` has a partner in `other` within `tol`, and vice versa.
    pub fn matches(&self, other: &SolutionSet, tol: f64) -> bool {
        let covered = |a: &SolutionSet, b: &SolutionSet| a.solutions.iter().all(|s| b.solutions.iter().any(|t| s.x.dist(&t.x) <= tol));
        self.len() == other.len() && covered(self, other) && covered(other, self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnilateralOptions {
    pub tol: Tolerances,
    /// Largest number of subsets enumerated in one call.
    pub cap: u128,
    /// Eigenvector matrices with a larger condition number are rejected.
    pub cond_gate: f64,
    pub newton_steps: usize,
}

pub const ENUMERATION_CAP: u128 = 20_000;
pub const COND_GATE: f64 = 1e12;

impl Default for UnilateralOptions {
    fn default() -> Self {
        UnilateralOptions { tol: Tolerances::default(), cap: ENUMERATION_CAP, cond_gate: COND_GATE, newton_steps: 3 }
    }
}

/// Roots of the determinant with one kernel vector each.
#[derive(Clone, Debug)]
pub struct EigenData {
    pub roots: Vec<C64>,
    pub vectors: Vec<Vec<C64>>,
}

/// Roots of `det(sum lambda^i A_i)` and their kernel vectors, checking that the roots
/// are simple and every kernel is a line.
pub fn unilateral_eigendata(mp: &MatPolynomial, tol: &Tolerances) -> Result<EigenData> {
    let nk = mp.n * mp.k();
    let phi = det_lambda(mp)?;
    if phi.degree() != Some(nk) {
        return Err(Error::NotGeneric(GenericityFailure::Other(format!(
            "determinant has degree {:?} < {nk}: leading coefficient matrix is singular",
            phi.degree()
        ))));
    }
    if let LambdaPoly::Exact(p) = &phi {
        if !p.is_squarefree() {
            return Err(Error::NotGeneric(GenericityFailure::RepeatedRoots));
        }
    }
    let cphi = phi.to_complex();
    let rs = aberth_roots_tol(&cphi, tol.root)?;
    let spread = rs.roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if rs.pairwise_min_separation <= tol.dedup * 1e-2 * spread {
        return Err(Error::NotGeneric(GenericityFailure::RepeatedRoots));
    }
    let mut vectors = Vec::with_capacity(nk);
    for (i, &lambda) in rs.roots.iter().enumerate() {
        let m = mp.at(lambda);
        let ker = nullspace(&m, tol.rank);
        match ker.len() {
            0 | 1 => vectors.push(kernel_vector(&m, ker)),
            d => return Err(Error::NotGeneric(GenericityFailure::KernelDimension { root: i, dimension: d })),
        }
    }
    Ok(EigenData { roots: rs.roots, vectors })
}

/// The computed root is only approximate, so an empty numerical kernel falls back to
/// the right singular vector of the smallest singular value.
fn kernel_vector(m: &CMatrix, mut ker: Vec<Vec<C64>>) -> Vec<C64> {
    if let Some(v) = ker.pop() {
        return v;
    }
    let svd = m.to_nalgebra().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let k = (0..m.cols()).min_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b])).unwrap_or(0);
    (0..m.cols()).map(|j| v_t[(k, j)].conj()).collect()
}

/// Assembles `X_J = P_J D_J P_J^{-1}` for one subset of root indices.
pub fn solvent_for_subset(mp: &MatPolynomial, data: &EigenData, subset: &[usize], opts: &UnilateralOptions) -> Result<Solvent> {
    if subset.len() != mp.n || subset.iter().any(|&i| i >= data.roots.len()) {
        return Err(Error::Invalid(format!("subset {subset:?} is not an n-subset of the roots")));
    }
    let cols: Vec<Vec<C64>> = subset.iter().map(|&i| data.vectors[i].clone()).collect();
    let p = CMatrix::from_columns(&cols)?;
    if p.condition() > opts.cond_gate {
        return Err(Error::NotGeneric(GenericityFailure::SingularSubset { subset: subset.to_vec() }));
    }
    let d = CMatrix::diag(&subset.iter().map(|&i| data.roots[i]).collect::<Vec<_>>());
    let pinv = p.inverse().map_err(|_| Error::NotGeneric(GenericityFailure::SingularSubset { subset: subset.to_vec() }))?;
    let x0 = &(&p * &d) * &pinv;
    let out = newton_polish(&x0, |x| mp.apply(x), |x| mp.jacobian(x), opts.newton_steps);
    Ok(Solvent { x: out.x, subset: subset.to_vec(), residual: out.residual })
}

/// Every solvent `X_J`, one per n-subset `J` of the `nk` determinant roots.
pub fn solve_unilateral(mp: &MatPolynomial) -> Result<SolutionSet> {
    solve_unilateral_with(mp, &UnilateralOptions::default())
}

pub fn solve_unilateral_with(mp: &MatPolynomial, opts: &UnilateralOptions) -> Result<SolutionSet> {
    let nk = mp.n * mp.k();
    let count = binomial(nk, mp.n);
    if count > opts.cap {
        return Err(Error::CapExceeded { count, cap: opts.cap });
    }
    let data = unilateral_eigendata(mp, &opts.tol)?;
    let subsets: Vec<Vec<usize>> = (0..nk).combinations(mp.n).collect();
    let solutions = subsets.par_iter().map(|j| solvent_for_subset(mp, &data, j, opts)).collect::<Result<Vec<_>>>()?;
    let distinct = dedup_matrices(&solutions.iter().map(|s| s.x.clone()).collect::<Vec<_>>(), opts.tol.dedup).len();
    Ok(SolutionSet {
        all_simple: distinct == solutions.len(),
        count_expected: Some(count as usize),
        solutions,
        method: Method::Eigen,
        roots: data.roots,
    })
}

/// Solvents for caller-chosen subsets only, for instances beyond the enumeration cap.
pub fn solve_unilateral_subsets(mp: &MatPolynomial, subsets: &[Vec<usize>], opts: &UnilateralOptions) -> Result<Vec<Solvent>> {
    let data = unilateral_eigendata(mp, &opts.tol)?;
    subsets.par_iter().map(|j| solvent_for_subset(mp, &data, j, opts)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolventCheck {
    /// `||sum A_i X^i||_max`
    pub residual: f64,
    /// `||phi(X)||_max` with `phi` the determinant polynomial.
    pub phi_residual: f64,
}

pub fn verify_solvent(mp: &MatPolynomial, x: &CMatrix) -> Result<SolventCheck> {
    if x.rows() != mp.n || x.cols() != mp.n {
        return Err(Error::DimensionMismatch(format!("solvent must be {0}x{0}", mp.n)));
    }
    let phi = det_lambda(mp)?.to_complex();
    Ok(SolventCheck { residual: mp.apply(x).norm_max(), phi_residual: poly_of_matrix(&phi, x).norm_max() })
}

/// Exact genericity gate for rational input: `det A_k != 0` and a squarefree determinant.
pub fn is_generic_exact(mp: &MatPolynomial) -> Result<bool> {
    let Some(exact) = &mp.exact else { return Err(Error::Invalid("exact check needs rational coefficients".into())) };
    if exact[mp.k()].det()?.is_zero() {
        return Ok(false);
    }
    match det_lambda(mp)? {
        LambdaPoly::Exact(p) => Ok(p.is_squarefree()),
        LambdaPoly::Numeric(_) => unreachable!("rational input interpolates exactly"),
    }
}

/// Every n-subset of root eigenvectors is a basis (condition below the gate), so
/// that each subset yields a solvent.
pub fn subsets_independent(mp: &MatPolynomial, opts: &UnilateralOptions) -> Result<bool> {
    let data = match unilateral_eigendata(mp, &opts.tol) {
        Ok(d) => d,
        Err(Error::NotGeneric(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let nk = data.roots.len();
    Ok((0..nk).combinations(mp.n).collect::<Vec<_>>().par_iter().all(|j| {
        let cols: Vec<Vec<C64>> = j.iter().map(|&i| data.vectors[i].clone()).collect();
        CMatrix::from_columns(&cols).is_ok_and(|p| p.condition() <= opts.cond_gate)
    }))
}

/// Seeded random instance with integer entries in [-2, 2]; `A_k = I` when `monic`.
pub fn random_unilateral(n: usize, k: usize, seed: u64, monic: bool) -> MatPolynomial {
    let mut rng = crate::random::rng(seed);
    let mut coeffs: Vec<RatMatrix> = (0..=k).map(|_| crate::random::int_matrix(&mut rng, n)).collect();
    if monic {
        coeffs[k] = RatMatrix::identity(n);
    }
    if coeffs[k].is_zero() {
        coeffs[k] = RatMatrix::identity(n);
    }
    MatPolynomial::from_rat(coeffs).expect("well-formed random instance")
}

/// First generic instance in the retry sequence of `seed`, with the seed used.
pub fn random_generic_unilateral(n: usize, k: usize, seed: u64, max_retries: u32) -> Result<(MatPolynomial, u64)> {
    for attempt in 0..=max_retries {
        let s = crate::random::retry_seed(seed, attempt);
        let mp = random_unilateral(n, k, s, false);
        if is_generic_exact(&mp)? && subsets_independent(&mp, &UnilateralOptions::default())? {
            return Ok((mp, s));
        }
    }
    Err(Error::NotGeneric(GenericityFailure::Other(format!("no generic instance within {max_retries} retries of seed {seed}"))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    fn cofactor_det_lambda(exact: &[RatMatrix]) -> RatUniPoly {
        // independent oracle: expand the determinant over the polynomial ring
        let n = exact[0].rows();
        let entry = |i: usize, j: usize| RatUniPoly::new(exact.iter().map(|a| a.get(i, j).clone()).collect());
        fn det(m: &[Vec<RatUniPoly>]) -> RatUniPoly {
            if m.len() == 1 {
                return m[0][0].clone();
            }
            let mut acc = RatUniPoly::zero();
            for j in 0..m.len() {
                let minor: Vec<Vec<RatUniPoly>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect()).collect();
                let term = m[0][j].mul(&det(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
        let m: Vec<Vec<RatUniPoly>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
        det(&m)
    }

    #[test]
    fn specialization_gives_trinomial() {
        for (n, k) in [(2, 2), (2, 3), (3, 2)] {
            let mp = MatPolynomial::trinomial_specialization(n, k).unwrap();
            let mut want = vec![rat(0); n * k + 1];
            want[0] = rat(-1);
            want[1] = rat(-1);
            want[n * k] = rat(1);
            assert_eq!(det_lambda(&mp).unwrap(), LambdaPoly::Exact(RatUniPoly::new(want)), "n={n} k={k}");
        }
    }

    #[test]
    fn characteristic_polynomial_of_diagonal() {
        let mp = MatPolynomial::from_rat(vec![RatMatrix::diag(&[rat(-1), rat(-2)]), RatMatrix::identity(2)]).unwrap();
        assert_eq!(det_lambda(&mp).unwrap(), LambdaPoly::Exact(RatUniPoly::from_i64(&[2, -3, 1])));
    }

    #[test]
    fn interpolated_determinant_matches_cofactor_expansion() {
        for seed in 0..10 {
            for (n, k) in [(2, 2), (3, 2), (2, 3)] {
                let mp = random_unilateral(n, k, seed, false);
                let LambdaPoly::Exact(p) = det_lambda(&mp).unwrap() else { panic!() };
                assert_eq!(p, cofactor_det_lambda(mp.exact_coeffs().unwrap()));
                let exact = mp.exact_coeffs().unwrap();
                assert_eq!(p.coeff(0), exact[0].det().unwrap());
                if let Some(d) = p.degree().filter(|&d| d == n * k) {
                    assert_eq!(p.coeff(d), exact[k].det().unwrap());
                }
            }
        }
    }

    #[test]
    fn numeric_determinant_matches_exact() {
        let mp = random_unilateral(2, 2, 3, false);
        let num = MatPolynomial::from_complex(mp.coeffs().to_vec()).unwrap();
        let a = det_lambda(&mp).unwrap().to_complex();
        let b = det_lambda(&num).unwrap().to_complex();
        for i in 0..=4 {
            assert!((a.coeff(i) - b.coeff(i)).norm() < 1e-12);
        }
    }

    #[test]
    fn linear_case_returns_the_matrix() {
        let a = RatMatrix::from_rows(vec![vec![rat(1), ratio(1, 2)], vec![rat(0), rat(3)]]).unwrap();
        let mp = MatPolynomial::from_rat(vec![a.scale(&rat(-1)), RatMatrix::identity(2)]).unwrap();
        let sols = solve_unilateral(&mp).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(sols.solutions[0].x.dist(&CMatrix::from_rat(&a)) < 1e-12);
    }

    #[test]
    fn random_quadratic_has_six_solvents() {
        let (mp, _) = random_generic_unilateral(2, 2, 11, 5).unwrap();
        let sols = solve_unilateral(&mp).unwrap();
        assert_eq!(sols.len(), 6);
        assert!(sols.all_simple);
        for s in &sols.solutions {
            let check = verify_solvent(&mp, &s.x).unwrap();
            assert!(check.residual <= 1e-8 && check.phi_residual <= 1e-7, "{check:?}");
        }
    }

    #[test]
    fn kernels_at_roots_are_lines() {
        let (mp, _) = random_generic_unilateral(2, 2, 5, 5).unwrap();
        let data = unilateral_eigendata(&mp, &Tolerances::default()).unwrap();
        for (lambda, v) in data.roots.iter().zip(&data.vectors) {
            assert_eq!(nullspace(&mp.at(*lambda), 1e-9).len(), 1);
            assert!((&mp.at(*lambda) * &CMatrix::column(v)).norm_max() < 1e-9);
        }
    }

    #[test]
    fn verify_detects_non_solutions() {
        let mp = random_unilateral(2, 2, 1, false);
        let zero = CMatrix::zeros(2, 2);
        let check = verify_solvent(&mp, &zero).unwrap();
        assert_eq!(check.residual, mp.coeffs()[0].norm_max());
        let junk = CMatrix::from_real(2, 2, &[3.0, -1.0, 0.5, 2.0]).unwrap();
        assert!(verify_solvent(&mp, &junk).unwrap().residual > 1e-3);
    }

    #[test]
    fn repeated_roots_are_not_generic() {
        // X^2 - I = 0 has a determinant (lambda^2 - 1)^2
        let mp = MatPolynomial::from_rat(vec![RatMatrix::identity(2).scale(&rat(-1)), RatMatrix::zeros(2, 2), RatMatrix::identity(2)]).unwrap();
        assert!(matches!(solve_unilateral(&mp), Err(Error::NotGeneric(GenericityFailure::RepeatedRoots))));
    }

    #[test]
    fn cap_is_enforced() {
        let mp = random_unilateral(2, 2, 0, true);
        let opts = UnilateralOptions { cap: 5, ..Default::default() };
        assert!(matches!(solve_unilateral_with(&mp, &opts), Err(Error::CapExceeded { count: 6, cap: 5 })));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(3, 5), 0);
    }
}
