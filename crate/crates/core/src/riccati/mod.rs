//! `XAX + B1 X + X B2 + C = 0`: reduction to a monic unilateral equation, the
//! invariant-subspace solver on `M = [[-B2, -A], [C, B1]]`, and the trace test.

pub mod catalogue;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{RatMatrix, RatUniPoly};
use crate::json::{parse_square, rat_rows, RatRows};
use crate::matpoly::{binomial, is_generic_exact, subsets_independent, solve_unilateral_with, MatPolynomial, Method, SolutionSet, Solvent, UnilateralOptions};
use crate::numlin::{dedup_matrices, eigen_with, newton_polish, CMatrix, CUniPoly, EigenOptions, Tolerances, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct RiccatiProblem {
    pub a: RatMatrix,
    pub b1: RatMatrix,
    pub b2: RatMatrix,
    pub c: RatMatrix,
}

impl RiccatiProblem {
    pub fn new(a: RatMatrix, b1: RatMatrix, b2: RatMatrix, c: RatMatrix) -> Result<Self> {
        let n = a.rows();
        if [&a, &b1, &b2, &c].iter().any(|m| m.rows() != n || m.cols() != n) || n == 0 {
            return Err(Error::DimensionMismatch("Riccati coefficients must all be n x n".into()));
        }
        Ok(RiccatiProblem { a, b1, b2, c })
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    fn numeric(&self) -> [CMatrix; 4] {
        [&self.a, &self.b1, &self.b2, &self.c].map(CMatrix::from_rat)
    }

    /// `XAX + B1 X + X B2 + C`
    pub fn residual_matrix(&self, x: &CMatrix) -> CMatrix {
        let [a, b1, b2, c] = self.numeric();
        riccati_value(&a, &b1, &b2, &c, x)
    }

    pub fn residual(&self, x: &CMatrix) -> f64 {
        self.residual_matrix(x).norm_max()
    }

    /// Row-major Jacobian: `HAX + XAH + B1 H + H B2`.
    pub fn jacobian(&self, x: &CMatrix) -> CMatrix {
        let [a, b1, b2, _] = self.numeric();
        riccati_jacobian(&a, &b1, &b2, x)
    }

    /// `||M [I; X] - [I; X](-B2 - AX)||_max`, zero iff the graph of `X` is M-invariant.
    pub fn graph_residual(&self, x: &CMatrix) -> f64 {
        let n = self.n();
        let m = HamiltonianM::new(self).numeric;
        let mut g = CMatrix::zeros(2 * n, n);
        g.set_block(0, 0, &CMatrix::identity(n));
        g.set_block(n, 0, x);
        let [a, _, b2, _] = self.numeric();
        let lam = &(-&b2) - &(&a * x);
        (&(&m * &g) - &(&g * &lam)).norm_max()
    }

    pub fn to_json(&self) -> RiccatiFile {
        RiccatiFile { n: self.n(), a: rat_rows(&self.a), b1: rat_rows(&self.b1), b2: rat_rows(&self.b2), c: rat_rows(&self.c) }
    }
}

fn riccati_value(a: &CMatrix, b1: &CMatrix, b2: &CMatrix, c: &CMatrix, x: &CMatrix) -> CMatrix {
    &(&(&(&(x * a) * x) + &(b1 * x)) + &(x * b2)) + c
}

fn riccati_jacobian(a: &CMatrix, b1: &CMatrix, b2: &CMatrix, x: &CMatrix) -> CMatrix {
    let id = CMatrix::identity(x.rows());
    let t1 = id.kron(&(a * x).transpose());
    let t2 = (x * a).kron(&id);
    let t3 = b1.kron(&id);
    let t4 = id.kron(&b2.transpose());
    &(&(&t1 + &t2) + &t3) + &t4
}

/// JSON form with rational string entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiccatiFile {
    pub n: usize,
    pub a: RatRows,
    pub b1: RatRows,
    pub b2: RatRows,
    pub c: RatRows,
}

impl RiccatiFile {
    pub fn parse(&self) -> Result<RiccatiProblem> {
        let n = self.n;
        RiccatiProblem::new(
            parse_square(&self.a, n, "A")?,
            parse_square(&self.b1, n, "B1")?,
            parse_square(&self.b2, n, "B2")?,
            parse_square(&self.c, n, "C")?,
        )
    }
}

/// The pseudo-Hamiltonian matrix `[[-B2, -A], [C, B1]]`.
#[derive(Clone, Debug)]
pub struct HamiltonianM {
    pub exact: RatMatrix,
    pub numeric: CMatrix,
}

impl HamiltonianM {
    pub fn new(p: &RiccatiProblem) -> Self {
        let n = p.n();
        let mut m = RatMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, -p.b2.get(i, j).clone());
                m.set(i, n + j, -p.a.get(i, j).clone());
                m.set(n + i, j, p.c.get(i, j).clone());
                m.set(n + i, n + j, p.b1.get(i, j).clone());
            }
        }
        let numeric = CMatrix::from_rat(&m);
        HamiltonianM { exact: m, numeric }
    }

    /// Exact characteristic polynomial `det(lambda I - M)`.
    pub fn charpoly(&self) -> Result<RatUniPoly> {
        let size = self.exact.rows();
        let mp = MatPolynomial::from_rat(vec![self.exact.scale(&crate::exactalg::rat(-1)), RatMatrix::identity(size)])?;
        match crate::matpoly::det_lambda(&mp)? {
            crate::matpoly::LambdaPoly::Exact(p) => Ok(p),
            crate::matpoly::LambdaPoly::Numeric(_) => unreachable!("rational input"),
        }
    }
}

/// Data of the substitution `X = A^{-1} Z + U`, `U = -A^{-1} B2`, turning the Riccati
/// equation into `Z^2 + B Z + C' = 0`.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub u_shift: RatMatrix,
    pub a_inv: RatMatrix,
    /// Monic degree-2 matrix polynomial `[C', B, I]`.
    pub unilateral: MatPolynomial,
}

impl ReductionTrace {
    /// `X = A^{-1} Z + U`
    pub fn back_map(&self, z: &CMatrix) -> CMatrix {
        &(&CMatrix::from_rat(&self.a_inv) * z) + &CMatrix::from_rat(&self.u_shift)
    }
}

pub fn reduce_riccati(p: &RiccatiProblem) -> Result<ReductionTrace> {
    let a_inv = p.a.inverse().map_err(|_| Error::SingularA)?;
    let u = (&a_inv * &p.b2).scale(&crate::exactalg::rat(-1));
    // Y = X - U solves Y A Y + (U A + B1) Y + C1 = 0
    let b = &(&u * &p.a) + &p.b1;
    let c1 = &(&(&(&(&u * &p.a) * &u) + &(&p.b1 * &u)) + &(&u * &p.b2)) + &p.c;
    // Z = A Y solves Z^2 + (A B A^{-1}) Z + A C1 = 0
    let bz = &(&p.a * &b) * &a_inv;
    let cz = &p.a * &c1;
    let unilateral = MatPolynomial::from_rat(vec![cz, bz, RatMatrix::identity(p.n())])?;
    Ok(ReductionTrace { u_shift: u, a_inv, unilateral })
}

/// Solutions through the reduction and the unilateral eigen-solver, polished on the
/// original equation.
pub fn solve_by_reduction(p: &RiccatiProblem, opts: &UnilateralOptions) -> Result<SolutionSet> {
    let trace = reduce_riccati(p)?;
    let mut set = solve_unilateral_with(&trace.unilateral, opts)?;
    let [a, b1, b2, c] = p.numeric();
    for s in &mut set.solutions {
        let x0 = trace.back_map(&s.x);
        let out = newton_polish(&x0, |x| riccati_value(&a, &b1, &b2, &c, x), |x| riccati_jacobian(&a, &b1, &b2, x), opts.newton_steps);
        s.x = out.x;
        s.residual = out.residual;
    }
    Ok(set)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HamiltonianOptions {
    pub tol: Tolerances,
    /// `|det U|` relative to the product of its column norms below this counts as singular.
    pub det_gate: f64,
    /// Condition-number backstop for the same test.
    pub cond_gate: f64,
    pub newton_steps: usize,
    pub eigen: EigenOptions,
}

impl Default for HamiltonianOptions {
    fn default() -> Self {
        HamiltonianOptions {
            tol: Tolerances::default(),
            det_gate: 1e-10,
            cond_gate: crate::matpoly::COND_GATE,
            newton_steps: 3,
            eigen: EigenOptions::default(),
        }
    }
}

/// Result of [`hamiltonian_solve`], with the subsets whose invariant subspace is not
/// a graph (not complementary to `{0} x K^n`).
#[derive(Clone, Debug)]
pub struct HamiltonianSolution {
    pub set: SolutionSet,
    pub at_infinity: Vec<Vec<usize>>,
    pub eigenvectors: CMatrix,
}

pub fn hamiltonian_solve(p: &RiccatiProblem) -> Result<HamiltonianSolution> {
    hamiltonian_solve_with(p, &HamiltonianOptions::default())
}

pub fn hamiltonian_solve_with(p: &RiccatiProblem, opts: &HamiltonianOptions) -> Result<HamiltonianSolution> {
    let n = p.n();
    let m = HamiltonianM::new(p);
    let eig = eigen_with(&m.numeric, &opts.eigen)?;
    if !eig.is_simple() {
        return Err(Error::DefectiveM);
    }
    let subsets: Vec<Vec<usize>> = (0..2 * n).combinations(n).collect();
    let [a, b1, b2, c] = p.numeric();
    let results: Vec<(Vec<usize>, Option<Solvent>)> = subsets
        .par_iter()
        .map(|j| {
            let cols: Vec<Vec<C64>> = j.iter().map(|&i| eig.vectors.col(i)).collect();
            let e = CMatrix::from_columns(&cols).expect("equal lengths");
            let sol = graph_solution(&e, n, opts).map(|x0| {
                let out =
                    newton_polish(&x0, |x| riccati_value(&a, &b1, &b2, &c, x), |x| riccati_jacobian(&a, &b1, &b2, x), opts.newton_steps);
                Solvent { x: out.x, subset: j.clone(), residual: out.residual }
            });
            (j.clone(), sol)
        })
        .collect();
    let mut solutions = Vec::new();
    let mut at_infinity = Vec::new();
    for (j, s) in results {
        match s {
            Some(s) => solutions.push(s),
            None => at_infinity.push(j),
        }
    }
    let distinct = dedup_matrices(&solutions.iter().map(|s| s.x.clone()).collect::<Vec<_>>(), opts.tol.dedup).len();
    let expected = binomial(2 * n, n) as usize;
    Ok(HamiltonianSolution {
        set: SolutionSet {
            all_simple: distinct == solutions.len() && solutions.len() == expected,
            count_expected: Some(expected),
            solutions,
            method: Method::Hamiltonian,
            roots: eig.vector_values.clone(),
        },
        at_infinity,
        eigenvectors: eig.vectors,
    })
}

/// `X = V U^{-1}` for a `2n x n` basis `[U; V]`, or `None` if `U` fails the gate.
pub fn graph_solution(basis: &CMatrix, n: usize, opts: &HamiltonianOptions) -> Option<CMatrix> {
    let u = basis.block(0, 0, n, n);
    let v = basis.block(n, 0, n, n);
    let col_norms: f64 = (0..n).map(|j| u.col(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).product();
    let det = u.det().ok()?.norm();
    if col_norms == 0.0 || det <= opts.det_gate * col_norms || u.condition() > opts.cond_gate {
        return None;
    }
    Some(&v * &u.inverse().ok()?)
}

/// Outcome of the trace evenness test.
#[derive(Clone, Debug)]
pub struct TraceEvenness {
    /// `P(z) = prod (z - tr X_J)`
    pub p: CUniPoly,
    /// `-a_{tau-1} / tau`, the mean trace.
    pub shift: C64,
    /// `Q(u) = P(u + shift)`
    pub q: CUniPoly,
    /// `R` with `Q(u) = R(u^2)`
    pub r: CUniPoly,
    /// Largest odd coefficient of `Q` over its largest coefficient.
    pub odd_ratio: f64,
    pub even: bool,
}

pub const EVENNESS_TOL: f64 = 1e-6;

/// Checks that the centred trace polynomial of a complete solution set is even.
pub fn trace_evenness_check(solutions: &SolutionSet) -> Result<TraceEvenness> {
    let tau = solutions.count_expected.ok_or(Error::IncompleteSolutionSet { expected: 0, found: solutions.len() })?;
    if solutions.len() != tau || tau == 0 {
        return Err(Error::IncompleteSolutionSet { expected: tau, found: solutions.len() });
    }
    let traces: Vec<C64> = solutions.solutions.iter().map(|s| s.x.trace()).collect();
    let p = CUniPoly::from_roots(&traces);
    let shift = -p.coeff(tau - 1) / tau as f64;
    let q = p.shift(shift);
    let scale = q.scale();
    let odd = (1..=tau).step_by(2).map(|i| q.coeff(i).norm()).fold(0.0, f64::max);
    let odd_ratio = if scale == 0.0 { 0.0 } else { odd / scale };
    let r = CUniPoly::new((0..=tau).step_by(2).map(|i| q.coeff(i)).collect());
    Ok(TraceEvenness { p, shift, q, r, odd_ratio, even: odd_ratio <= EVENNESS_TOL })
}

/// Seeded random instance with entries in [-2, 2].
pub fn random_riccati(n: usize, seed: u64) -> RiccatiProblem {
    let mut rng = crate::random::rng(seed);
    let mut m = || crate::random::int_matrix(&mut rng, n);
    let (a, b1, b2, c) = (m(), m(), m(), m());
    RiccatiProblem::new(a, b1, b2, c).expect("square")
}

/// `A` invertible, the reduced determinant squarefree (both exact), and every
/// pair of eigenvectors independent.
pub fn is_generic_riccati(p: &RiccatiProblem) -> Result<bool> {
    match reduce_riccati(p) {
        Ok(t) => Ok(is_generic_exact(&t.unilateral)? && subsets_independent(&t.unilateral, &UnilateralOptions::default())?),
        Err(Error::SingularA) => Ok(false),
        Err(e) => Err(e),
    }
}

/// First generic instance in the retry sequence of `seed`, with the seed used.
pub fn random_generic_riccati(n: usize, seed: u64, max_retries: u32) -> Result<(RiccatiProblem, u64)> {
    for attempt in 0..=max_retries {
        let s = crate::random::retry_seed(seed, attempt);
        let p = random_riccati(n, s);
        if is_generic_riccati(&p)? {
            return Ok((p, s));
        }
    }
    Err(Error::NotGeneric(crate::error::GenericityFailure::Other(format!(
        "no generic Riccati instance within {max_retries} retries of seed {seed}"
    ))))
}
