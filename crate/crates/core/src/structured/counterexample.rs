//! `X^2 + BXB + C = 0` with commuting diagonal `B`, `C` at `n = 2`: four isolated
//! commuting solutions plus a one-parameter family that does not commute.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{buchberger_with, rat, MultiPoly, RatMatrix};
use crate::numlin::{aberth_roots, CMatrix, CUniPoly, C64};
use crate::syscount::{groebner_of, points_of_ideal, CountOptions, EquationSpec};

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub hilbert_dimension: usize,
    pub diagonal_solutions: Vec<CMatrix>,
    pub max_diagonal_residual: f64,
    /// Largest commutator of a diagonal solution with `B` or `C`.
    pub max_diagonal_commutator: f64,
    /// A point of the family, found on the slice `x_ij = 1` for an off-diagonal entry.
    pub family_member: Option<CMatrix>,
    pub family_residual: f64,
    /// `||XB - BX||_max` for the family member.
    pub family_commutator: f64,
}

pub fn plex2_spec(b: &RatMatrix, c: &RatMatrix) -> EquationSpec {
    EquationSpec::new(b.rows())
        .with_constant("B", b.clone())
        .with_constant("C", c.clone())
        .with_word(&["X", "X"])
        .with_word(&["B", "X", "B"])
        .with_word(&["C"])
}

pub fn commuting_counterexample_check(b: &RatMatrix, c: &RatMatrix) -> Result<CounterexampleReport> {
    let n = b.rows();
    if n != 2 || b.cols() != 2 || c.rows() != 2 || c.cols() != 2 {
        return Err(Error::DimensionMismatch("the check is for 2x2 B and C".into()));
    }
    if !b.get(0, 1).is_zero() || !b.get(1, 0).is_zero() || !c.get(0, 1).is_zero() || !c.get(1, 0).is_zero() {
        return Err(Error::Invalid("B and C must be diagonal".into()));
    }
    let spec = plex2_spec(b, c);
    let opts = CountOptions::default();
    let (sys, gb) = groebner_of(&spec, &opts)?;
    let hilbert_dimension = gb.hilbert_dimension();

    // diagonal X: x_i^2 + b_i^2 x_i + c_i = 0 for each i
    let roots: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            let bi = crate::exactalg::rat_to_f64(b.get(i, i));
            let ci = crate::exactalg::rat_to_f64(c.get(i, i));
            aberth_roots(&CUniPoly::from_real(&[ci, bi * bi, 1.0])).map(|r| r.roots)
        })
        .collect::<Result<_>>()?;
    let mut diagonal_solutions = Vec::new();
    for &x0 in &roots[0] {
        for &x1 in &roots[1] {
            diagonal_solutions.push(CMatrix::diag(&[x0, x1]));
        }
    }
    let (bn, cn) = (CMatrix::from_rat(b), CMatrix::from_rat(c));
    let max_diagonal_residual = diagonal_solutions.iter().map(|x| spec.eval(x).norm_max()).fold(0.0, f64::max);
    let max_diagonal_commutator = diagonal_solutions.iter().map(|x| x.commutator_norm(&bn).max(x.commutator_norm(&cn))).fold(0.0, f64::max);

    // slice the family by fixing an off-diagonal entry to one
    let ring = sys.ring.clone();
    let mut family_member = None;
    for var in ["x12", "x21"] {
        let i = ring.index_of(var).expect("2x2 variables");
        let mut gens = gb.generators().to_vec();
        gens.push(MultiPoly::var(&ring, i).sub(&MultiPoly::constant(&ring, rat(1))));
        let slice = buchberger_with(&gens, opts.order, &opts.groebner)?;
        if slice.is_zero_dimensional() && !slice.is_unit() {
            if let Some(p) = points_of_ideal(&spec, &slice, &opts)?.into_iter().next() {
                family_member = Some(p.x);
                break;
            }
        }
    }
    let (family_residual, family_commutator) = match &family_member {
        Some(x) => (spec.eval(x).norm_max(), x.commutator_norm(&bn)),
        None => (f64::NAN, 0.0),
    };
    Ok(CounterexampleReport {
        hilbert_dimension,
        diagonal_solutions,
        max_diagonal_residual,
        max_diagonal_commutator,
        family_member,
        family_residual,
        family_commutator,
    })
}

/// Seeded diagonal `B`, `C` with distinct non-zero diagonal entries.
pub fn random_diagonal_pair(seed: u64) -> (RatMatrix, RatMatrix) {
    let mut attempt = 0;
    loop {
        let mut rng = crate::random::rng(crate::random::retry_seed(seed, attempt));
        let b = crate::random::int_diagonal(&mut rng, 2);
        let c = crate::random::int_diagonal(&mut rng, 2);
        let distinct = |m: &RatMatrix| m.get(0, 0) != m.get(1, 1) && !m.get(0, 0).is_zero() && !m.get(1, 1).is_zero();
        if distinct(&b) && distinct(&c) {
            return (b, c);
        }
        attempt += 1;
    }
}
