//! `X^2 + BX + XB + C = 0`, i.e. `(X + B)^2 = B^2 - C`.

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, GenericityFailure, Result};
use crate::exactalg::{rat_charpoly, RatMatrix};
use crate::matpoly::{Method, SolutionSet, Solvent};
use crate::numlin::{eigen, newton_polish, CMatrix, C64};
use crate::syscount::EquationSpec;

pub fn symmetric_spec(b: &RatMatrix, c: &RatMatrix) -> EquationSpec {
    EquationSpec::new(b.rows())
        .with_constant("B", b.clone())
        .with_constant("C", c.clone())
        .with_word(&["X", "X"])
        .with_word(&["B", "X"])
        .with_word(&["X", "B"])
        .with_word(&["C"])
}

/// `B^2 - C`
pub fn shifted_square(b: &RatMatrix, c: &RatMatrix) -> RatMatrix {
    &(b * b) - c
}

/// The `2^n` solutions `-B + P diag(+-sqrt(lambda_i)) P^{-1}`; bit `i` of the pattern
/// index set means the negative branch for eigenvalue `i` (principal square root).
pub fn symmetric_quadratic_solve(b: &RatMatrix, c: &RatMatrix) -> Result<SolutionSet> {
    let n = b.rows();
    if b.cols() != n || c.rows() != n || c.cols() != n {
        return Err(Error::DimensionMismatch("B and C must be n x n".into()));
    }
    if n >= usize::BITS as usize {
        return Err(Error::Invalid("n too large for sign enumeration".into()));
    }
    let s = shifted_square(b, c);
    if s.det()?.is_zero() {
        return Err(Error::NotGeneric(GenericityFailure::ZeroEigenvalue));
    }
    if !rat_charpoly(&s)?.is_squarefree() {
        return Err(Error::NotGeneric(GenericityFailure::RepeatedEigenvalues));
    }
    let eig = eigen(&CMatrix::from_rat(&s))?;
    let p = eig.vectors.clone();
    let pinv = p.inverse()?;
    let roots: Vec<C64> = eig.vector_values.iter().map(|l| l.sqrt()).collect();
    let bn = CMatrix::from_rat(b);
    let spec = symmetric_spec(b, c);
    let solutions: Vec<Solvent> = (0..1usize << n)
        .into_par_iter()
        .map(|pattern| {
            let d: Vec<C64> = roots.iter().enumerate().map(|(i, r)| if pattern >> i & 1 == 1 { -r } else { *r }).collect();
            let x0 = &(&(&p * &CMatrix::diag(&d)) * &pinv) - &bn;
            let out = newton_polish(&x0, |x| spec.eval(x), |x| spec.jacobian_numeric(x), 3);
            Solvent { x: out.x, subset: (0..n).filter(|i| pattern >> i & 1 == 1).collect(), residual: out.residual }
        })
        .collect();
    Ok(SolutionSet { count_expected: Some(1 << n), all_simple: true, solutions, method: Method::ClosedForm, roots: eig.values })
}

/// Seeded integer `B`, `C` for which [`symmetric_quadratic_solve`] is generic.
pub fn random_symmetric(n: usize, seed: u64, max_retries: u32) -> Result<(RatMatrix, RatMatrix, u64)> {
    for attempt in 0..=max_retries {
        let s = crate::random::retry_seed(seed, attempt);
        let mut rng = crate::random::rng(s);
        let b = crate::random::int_matrix(&mut rng, n);
        let c = crate::random::int_matrix(&mut rng, n);
        let sq = shifted_square(&b, &c);
        if !sq.det()?.is_zero() && rat_charpoly(&sq)?.is_squarefree() {
            return Ok((b, c, s));
        }
    }
    Err(Error::NotGeneric(GenericityFailure::Other(format!("no generic (B, C) within {max_retries} retries of seed {seed}"))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots_of_identity() {
        let sols = symmetric_quadratic_solve(&RatMatrix::zeros(2, 2), &RatMatrix::from_i64(&[&[-1, 0], &[0, -1]])).unwrap_err();
        // B^2 - C = I has a repeated eigenvalue: infinitely many roots, not the generic path
        assert!(matches!(sols, Error::NotGeneric(GenericityFailure::RepeatedEigenvalues)));
        let sols = symmetric_quadratic_solve(&RatMatrix::zeros(2, 2), &RatMatrix::from_i64(&[&[-1, 0], &[0, -4]])).unwrap();
        let mut diag: Vec<(i64, i64)> = sols.solutions.iter().map(|s| (s.x.get(0, 0).re.round() as i64, s.x.get(1, 1).re.round() as i64)).collect();
        diag.sort();
        assert_eq!(diag, [(-1, -2), (-1, 2), (1, -2), (1, 2)]);
    }

    #[test]
    fn random_instances_have_two_to_the_n_solutions() {
        for n in [2, 3] {
            let (b, c, _) = random_symmetric(n, 5, 10).unwrap();
            let sols = symmetric_quadratic_solve(&b, &c).unwrap();
            assert_eq!(sols.len(), 1 << n);
            assert_eq!(sols.distinct_count(1e-6), 1 << n);
            assert!(sols.max_residual() <= 1e-8);
            // X + B is a square root of B^2 - C, so it commutes with it
            let s = CMatrix::from_rat(&shifted_square(&b, &c));
            let bn = CMatrix::from_rat(&b);
            for x in sols.matrices() {
                assert!((&x + &bn).commutator_norm(&s) < 1e-8);
            }
        }
    }

    #[test]
    fn zero_eigenvalue_is_rejected() {
        let r = symmetric_quadratic_solve(&RatMatrix::zeros(2, 2), &RatMatrix::from_i64(&[&[0, 0], &[0, -1]]));
        assert!(matches!(r, Err(Error::NotGeneric(GenericityFailure::ZeroEigenvalue))));
    }
}
