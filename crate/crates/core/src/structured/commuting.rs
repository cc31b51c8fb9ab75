//! `X^k + X^{k-1} B_{k-1} + ... + X B_1 + B_0 = 0` with pairwise commuting coefficients.

use itertools::Itertools;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{rat, rat_charpoly, RatMatrix};
use crate::matpoly::{det_lambda, LambdaPoly, MatPolynomial, Method, SolutionSet, Solvent};
use crate::numlin::{aberth_roots, eigen, newton_polish, poly_of_matrix, CMatrix, CUniPoly, C64};

/// Numeric commutators below this (relative to the coefficient norms) count as zero.
pub const COMMUTATOR_TOL: f64 = 1e-12;
/// Minimum gap between the scalar roots when the input is not rational.
pub const MU_GAP: f64 = 1e-7;

#[derive(Clone, Debug)]
pub struct CommutingFamily {
    pub n: usize,
    pub k: usize,
    /// `B_0, ..., B_{k-1}`
    pub b: Vec<CMatrix>,
    pub exact: Option<Vec<RatMatrix>>,
    /// `P_1, ..., P_{k-1}` with `P_j(B_0) = B_j`; filled by [`CommutingFamily::recover_polys`].
    pub p_polys: Vec<CUniPoly>,
}

impl CommutingFamily {
    pub fn from_rat(b: Vec<RatMatrix>) -> Result<Self> {
        let mut fam = Self::from_complex(b.iter().map(CMatrix::from_rat).collect())?;
        fam.exact = Some(b);
        Ok(fam)
    }

    pub fn from_complex(b: Vec<CMatrix>) -> Result<Self> {
        let Some(first) = b.first() else { return Err(Error::Invalid("at least B_0 is required".into())) };
        let n = first.rows();
        if n == 0 || b.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::DimensionMismatch("coefficients must all be n x n".into()));
        }
        Ok(CommutingFamily { n, k: b.len(), b, exact: None, p_polys: Vec::new() })
    }

    /// The equation as a matrix polynomial with coefficients `B_0, ..., B_{k-1}, I`.
    pub fn mat_poly(&self) -> MatPolynomial {
        match &self.exact {
            Some(e) => {
                let mut c = e.clone();
                c.push(RatMatrix::identity(self.n));
                MatPolynomial::from_rat(c).expect("square coefficients")
            }
            None => {
                let mut c = self.b.clone();
                c.push(CMatrix::identity(self.n));
                MatPolynomial::from_complex(c).expect("square coefficients")
            }
        }
    }

    pub fn max_commutator(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, j) in (0..self.k).tuple_combinations() {
            worst = worst.max(self.b[i].commutator_norm(&self.b[j]));
        }
        worst
    }

    fn check_commuting(&self) -> Result<()> {
        let ok = match &self.exact {
            Some(e) => (0..self.k).tuple_combinations().all(|(i, j)| (&(&e[i] * &e[j]) - &(&e[j] * &e[i])).is_zero()),
            None => {
                let scale = self.b.iter().map(CMatrix::norm_max).fold(1.0, f64::max);
                self.max_commutator() <= COMMUTATOR_TOL * scale * scale
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotGenericCommuting("coefficients do not commute".into()))
        }
    }

    /// Eigenpairs of `B_0` and the interpolating polynomials `P_j` through
    /// `(lambda_i, beta_{j,i})`, where `beta_{j,i}` is the eigenvalue of `B_j` on the
    /// `i`-th eigenvector. Returns `(eigenvalues, eigenvector matrix, betas)`.
    pub fn recover_polys(&mut self) -> Result<(Vec<C64>, CMatrix, Vec<Vec<C64>>)> {
        self.check_commuting()?;
        if let Some(e) = &self.exact {
            if !rat_charpoly(&e[0])?.is_squarefree() {
                return Err(Error::NotGenericCommuting("B_0 has a repeated eigenvalue".into()));
            }
        }
        let eig = eigen(&self.b[0])?;
        if !eig.is_simple() || eig.values.len() != self.n {
            return Err(Error::NotGenericCommuting("B_0 is not diagonalizable with distinct eigenvalues".into()));
        }
        let p = eig.vectors.clone();
        let pinv = p.inverse()?;
        let betas: Vec<Vec<C64>> = self.b[1..].iter().map(|bj| (0..self.n).map(|i| (&(&pinv * bj) * &p).get(i, i)).collect()).collect();
        self.p_polys = betas.iter().map(|beta| lagrange(&eig.vector_values, beta)).collect();
        Ok((eig.vector_values, p, betas))
    }

    /// `max_j ||P_j(B_0) - B_j||_max`
    pub fn poly_residual(&self) -> f64 {
        self.p_polys.iter().zip(&self.b[1..]).map(|(pj, bj)| poly_of_matrix(pj, &self.b[0]).dist(bj)).fold(0.0, f64::max)
    }
}

fn lagrange(xs: &[C64], ys: &[C64]) -> CUniPoly {
    let mut acc = CUniPoly::new(vec![C64::new(0.0, 0.0)]);
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = CUniPoly::new(vec![C64::new(1.0, 0.0)]);
        let mut denom = C64::new(1.0, 0.0);
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&CUniPoly::new(vec![-xj, C64::new(1.0, 0.0)]));
                denom *= xi - xj;
            }
        }
        acc = acc.add(&basis.scale_by(yi / denom));
    }
    acc
}

/// Roots of `theta(x, lambda_i) = x^k + beta_{k-1,i} x^{k-1} + ... + beta_{1,i} x + lambda_i`.
fn scalar_roots(k: usize, lambda: C64, betas: &[C64]) -> Result<Vec<C64>> {
    let mut coeffs = vec![lambda];
    coeffs.extend_from_slice(betas);
    coeffs.push(C64::new(1.0, 0.0));
    debug_assert_eq!(coeffs.len(), k + 1);
    if k == 1 {
        return Ok(vec![-lambda]);
    }
    Ok(aberth_roots(&CUniPoly::new(coeffs))?.roots)
}

/// All `k^n` solutions `X = P diag(mu_{1,j_1}, ..., mu_{n,j_n}) P^{-1}`.
pub fn commuting_solve(fam: &CommutingFamily) -> Result<SolutionSet> {
    let mut fam = fam.clone();
    let (lambdas, p, betas) = fam.recover_polys()?;
    let (n, k) = (fam.n, fam.k);
    let mus: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            let bi: Vec<C64> = betas.iter().map(|b| b[i]).collect();
            scalar_roots(k, lambdas[i], &bi)
        })
        .collect::<Result<_>>()?;

    // every mu is a root of det(sum mu^j B_j + mu^k I); distinct iff that is squarefree
    let mp = fam.mat_poly();
    match det_lambda(&mp)? {
        LambdaPoly::Exact(d) if !d.is_squarefree() => return Err(Error::NotGenericCommuting("the scalar roots mu_ij are not distinct".into())),
        LambdaPoly::Exact(_) => {}
        LambdaPoly::Numeric(_) => {
            let all: Vec<C64> = mus.iter().flatten().copied().collect();
            let gap = all.iter().tuple_combinations().map(|(a, b)| (a - b).norm()).fold(f64::INFINITY, f64::min);
            if gap < MU_GAP {
                return Err(Error::NotGenericCommuting(format!("scalar roots are {gap:.1e} apart")));
            }
        }
    }

    let pinv = p.inverse()?;
    let choices: Vec<Vec<usize>> = (0..n).map(|_| 0..k).multi_cartesian_product().collect();
    let solutions: Vec<Solvent> = choices
        .par_iter()
        .map(|choice| {
            let d = CMatrix::diag(&choice.iter().enumerate().map(|(i, &j)| mus[i][j]).collect::<Vec<_>>());
            let x0 = &(&p * &d) * &pinv;
            let out = newton_polish(&x0, |x| mp.apply(x), |x| mp.jacobian(x), 3);
            Solvent { x: out.x, subset: choice.clone(), residual: out.residual }
        })
        .collect();
    let roots = mus.into_iter().flatten().collect();
    Ok(SolutionSet { count_expected: Some(k.pow(n as u32)), all_simple: true, solutions, method: Method::ClosedForm, roots })
}

/// `max_i ||X B_i - B_i X||_max`
pub fn max_commutator_with(fam: &CommutingFamily, x: &CMatrix) -> f64 {
    fam.b.iter().map(|b| x.commutator_norm(b)).fold(0.0, f64::max)
}

/// Random integer `B_0` with `B_j` integer polynomials of degree `< n` in `B_0`.
pub fn random_commuting_family(n: usize, k: usize, seed: u64) -> CommutingFamily {
    let mut rng = crate::random::rng(seed);
    let b0 = crate::random::int_matrix(&mut rng, n);
    let mut b = vec![b0.clone()];
    for _ in 1..k {
        let mut acc = RatMatrix::zeros(n, n);
        let mut pw = RatMatrix::identity(n);
        for _ in 0..n {
            let c = rat(rng.gen_range(crate::random::ENTRY_RANGE.0..=crate::random::ENTRY_RANGE.1));
            acc = &acc + &pw.scale(&c);
            pw = &pw * &b0;
        }
        b.push(acc);
    }
    CommutingFamily::from_rat(b).expect("square")
}

/// First family in the retry sequence of `seed` that [`commuting_solve`] accepts.
pub fn random_generic_commuting(n: usize, k: usize, seed: u64, max_retries: u32) -> Result<(CommutingFamily, u64)> {
    for attempt in 0..=max_retries {
        let s = crate::random::retry_seed(seed, attempt);
        let fam = random_commuting_family(n, k, s);
        match commuting_solve(&fam) {
            Ok(_) => return Ok((fam, s)),
            Err(Error::NotGenericCommuting(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NotGenericCommuting(format!("no generic family within {max_retries} retries of seed {seed}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_quadratic_by_hand() {
        // x^2 + x + 1 and x^2 + x + 2
        let fam = CommutingFamily::from_rat(vec![RatMatrix::from_i64(&[&[1, 0], &[0, 2]]), RatMatrix::identity(2)]).unwrap();
        let sols = commuting_solve(&fam).unwrap();
        assert_eq!(sols.len(), 4);
        let s3 = 3f64.sqrt() / 2.0;
        let s7 = 7f64.sqrt() / 2.0;
        let first = [C64::new(-0.5, s3), C64::new(-0.5, -s3)];
        let second = [C64::new(-0.5, s7), C64::new(-0.5, -s7)];
        for s in &sols.solutions {
            assert!(s.x.get(0, 1).norm() < 1e-12 && s.x.get(1, 0).norm() < 1e-12);
            assert!(first.iter().any(|z| (z - s.x.get(0, 0)).norm() < 1e-10));
            assert!(second.iter().any(|z| (z - s.x.get(1, 1)).norm() < 1e-10));
            assert!(max_commutator_with(&fam, &s.x) < 1e-12);
        }
        assert_eq!(sols.distinct_count(1e-6), 4);
    }

    #[test]
    fn linear_case_is_minus_b0() {
        let b0 = RatMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let sols = commuting_solve(&CommutingFamily::from_rat(vec![b0.clone()]).unwrap()).unwrap();
        assert_eq!(sols.len(), 1);
        assert!(sols.solutions[0].x.dist(&CMatrix::from_rat(&b0).scale(C64::new(-1.0, 0.0))) < 1e-10);
    }

    #[test]
    fn repeated_eigenvalue_is_rejected() {
        let fam = CommutingFamily::from_rat(vec![RatMatrix::identity(2), RatMatrix::identity(2)]).unwrap();
        assert!(matches!(commuting_solve(&fam), Err(Error::NotGenericCommuting(_))));
    }

    #[test]
    fn non_commuting_is_rejected() {
        let fam = CommutingFamily::from_rat(vec![RatMatrix::from_i64(&[&[1, 1], &[0, 2]]), RatMatrix::from_i64(&[&[0, 0], &[1, 0]])]).unwrap();
        assert!(matches!(commuting_solve(&fam), Err(Error::NotGenericCommuting(_))));
    }

    #[test]
    fn random_families_commute_and_interpolate() {
        for (n, k) in [(2, 2), (2, 3), (3, 2)] {
            let (mut fam, _) = random_generic_commuting(n, k, 11, 10).unwrap();
            assert_eq!(fam.max_commutator(), 0.0);
            fam.recover_polys().unwrap();
            assert!(fam.poly_residual() < 1e-9);
            let sols = commuting_solve(&fam).unwrap();
            assert_eq!(sols.len(), k.pow(n as u32));
            assert_eq!(sols.distinct_count(1e-6), sols.len());
        }
    }
}
