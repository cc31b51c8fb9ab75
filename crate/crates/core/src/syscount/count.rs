//! Gröbner-based counting and numerical recovery of the solutions of a matricized system.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::spec::{matricize_with, EquationSpec, MatricizedSystem};
use crate::error::{Error, Result};
use crate::exactalg::{
    buchberger_with, rat, GroebnerBasis, GroebnerOptions, IdealSummary, Monomial, MonomialOrder, MultiPoly,
    QuotientAlgebra, rat_charpoly, RatMatrix, RatUniPoly, ShapeBasis,
};
use crate::matpoly::{Method, SolutionSet, Solvent};
use crate::numlin::{aberth_roots, newton_polish, CMatrix, CUniPoly, C64};

/// Numeric Jacobians with `sigma_min <= SINGULAR_TOL * sigma_max` count as singular.
pub const SINGULAR_TOL: f64 = 1e-8;
/// Random separating forms tried before giving up on point recovery.
const FORM_ATTEMPTS: u32 = 8;

#[derive(Clone, Debug)]
pub struct CountOptions {
    pub order: MonomialOrder,
    pub groebner: GroebnerOptions,
    /// Recover the points numerically when the ideal is zero-dimensional.
    pub extract: bool,
    pub newton_steps: usize,
    pub seed: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            order: MonomialOrder::Grevlex,
            groebner: GroebnerOptions::default(),
            extract: true,
            newton_steps: 8,
            seed: 0,
        }
    }
}

/// One point of a zero-dimensional variety.
#[derive(Clone, Debug)]
pub struct CountedPoint {
    pub x: CMatrix,
    /// Local multiplicity (dimension of the local quotient ring).
    pub multiplicity: usize,
    pub residual: f64,
    /// Numerical Jacobian test at the polished point.
    pub jacobian_singular: bool,
}

#[derive(Clone, Debug)]
pub struct CountReport {
    pub summary: IdealSummary,
    /// Number of distinct points; `None` for positive-dimensional ideals or when
    /// extraction was skipped.
    pub distinct: Option<usize>,
    pub points: Vec<CountedPoint>,
    pub basis_size: usize,
}

impl CountReport {
    /// Count with multiplicity, or `PositiveDimensional`.
    pub fn require_count(&self) -> Result<usize> {
        self.summary.count().ok_or(Error::PositiveDimensional { dimension: self.summary.hilbert_dimension })
    }

    pub fn all_simple(&self) -> bool {
        self.points.iter().all(|p| p.multiplicity == 1)
    }

    pub fn solution_set(&self) -> SolutionSet {
        SolutionSet {
            solutions: self.points.iter().map(|p| Solvent { x: p.x.clone(), subset: Vec::new(), residual: p.residual }).collect(),
            count_expected: self.summary.count(),
            all_simple: self.all_simple(),
            method: Method::Groebner,
            roots: Vec::new(),
        }
    }

    pub fn to_json(&self) -> CountJson {
        CountJson {
            summary: self.summary,
            count: self.summary.count(),
            distinct: self.distinct,
            basis_size: self.basis_size,
            points: self
                .points
                .iter()
                .map(|p| PointJson {
                    x: crate::json::complex_rows(&p.x),
                    multiplicity: p.multiplicity,
                    residual: p.residual,
                    jacobian_singular: p.jacobian_singular,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountJson {
    pub summary: IdealSummary,
    pub count: Option<usize>,
    pub distinct: Option<usize>,
    pub basis_size: usize,
    pub points: Vec<PointJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointJson {
    pub x: Vec<Vec<crate::json::JsonComplex>>,
    pub multiplicity: usize,
    pub residual: f64,
    pub jacobian_singular: bool,
}

pub fn groebner_of(spec: &EquationSpec, opts: &CountOptions) -> Result<(MatricizedSystem, GroebnerBasis)> {
    let sys = matricize_with(spec, opts.order)?;
    let gb = buchberger_with(&sys.polys, opts.order, &opts.groebner)?;
    Ok((sys, gb))
}

pub fn count_solutions(spec: &EquationSpec) -> Result<CountReport> {
    count_solutions_with(spec, &CountOptions::default())
}

pub fn count_solutions_with(spec: &EquationSpec, opts: &CountOptions) -> Result<CountReport> {
    let (_, gb) = groebner_of(spec, opts)?;
    let summary = gb.summary();
    let mut report = CountReport { summary, distinct: None, points: Vec::new(), basis_size: gb.generators().len() };
    if opts.extract && summary.is_zero_dimensional {
        report.points = points_of_ideal(spec, &gb, opts)?;
        report.distinct = Some(report.points.len());
    }
    Ok(report)
}

/// True when the ideal's only zero is `point`, i.e. every `x_ij - p_ij` is nilpotent
/// in the quotient.
pub fn is_sole_solution(gb: &GroebnerBasis, point: &RatMatrix) -> bool {
    let Some(q) = QuotientAlgebra::new(gb) else { return false };
    if q.dim() == 0 {
        return false;
    }
    let ring = gb.ring();
    point.entries().iter().enumerate().all(|(i, p)| q.is_nilpotent(&MultiPoly::var(ring, i).sub(&MultiPoly::constant(ring, p.clone()))))
}

/// Zero set of the top-degree part of `spec`.
#[derive(Clone, Debug)]
pub struct InfinityReport {
    pub degree: usize,
    pub summary: IdealSummary,
    /// The homogeneous part vanishes only at `X = 0`.
    pub only_zero: bool,
    /// Dimension of the affine cone of non-zero solutions (positive-dimensional case).
    pub cone_dimension: Option<usize>,
    /// `degree^(n^2)`
    pub bezout: u128,
    /// No solutions at infinity, so the affine count with multiplicity equals the Bézout number.
    pub affine_count_is_bezout: bool,
}

pub fn homogeneous_infinity_check(spec: &EquationSpec) -> Result<InfinityReport> {
    homogeneous_infinity_check_with(spec, &GroebnerOptions::default())
}

pub fn homogeneous_infinity_check_with(spec: &EquationSpec, groebner: &GroebnerOptions) -> Result<InfinityReport> {
    spec.validate()?;
    let top = spec.homogeneous_part();
    let opts = CountOptions { groebner: *groebner, extract: false, ..CountOptions::default() };
    let (_, gb) = groebner_of(&top, &opts)?;
    let summary = gb.summary();
    let n = spec.n();
    let only_zero = summary.is_zero_dimensional && is_sole_solution(&gb, &RatMatrix::zeros(n, n));
    let degree = spec.max_degree();
    let bezout = (degree as u128).pow((n * n) as u32);
    Ok(InfinityReport {
        degree,
        summary,
        only_zero,
        cone_dimension: (!summary.is_zero_dimensional).then_some(summary.hilbert_dimension),
        bezout,
        affine_count_is_bezout: only_zero,
    })
}

fn monomial_poly(gb: &GroebnerBasis, m: &Monomial) -> MultiPoly {
    MultiPoly::from_terms(gb.ring(), vec![(*m, rat(1))])
}

/// Matrix of multiplication by `l` on the standard-monomial basis.
fn multiplication_matrix(q: &QuotientAlgebra<'_>, gb: &GroebnerBasis, l: &MultiPoly) -> RatMatrix {
    let d = q.dim();
    let mut m = RatMatrix::zeros(d, d);
    for (c, b) in q.basis().iter().enumerate() {
        for (r, v) in q.coords(&l.mul(&monomial_poly(gb, b))).into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    m
}

fn uni_at(p: &RatUniPoly, x: &MultiPoly) -> MultiPoly {
    let ring = x.ring();
    p.coeffs().iter().rev().fold(MultiPoly::zero(ring), |acc, c| acc.mul(x).add(&MultiPoly::constant(ring, c.clone())))
}

/// Seidenberg: adding the squarefree parts of the variables' minimal polynomials
/// yields the radical of a zero-dimensional ideal.
fn radical(gb: &GroebnerBasis, q: &QuotientAlgebra<'_>, opts: &CountOptions) -> Result<Option<GroebnerBasis>> {
    let ring = gb.ring();
    let mut extra = Vec::new();
    for i in 0..ring.nvars() {
        let x = MultiPoly::var(ring, i);
        let m = q.min_poly(&x);
        if !m.is_squarefree() {
            extra.push(uni_at(&m.squarefree_part(), &x));
        }
    }
    if extra.is_empty() {
        return Ok(None);
    }
    let mut gens = gb.generators().to_vec();
    gens.extend(extra);
    Ok(Some(buchberger_with(&gens, gb.order(), &opts.groebner)?))
}

fn linear_form(gb: &GroebnerBasis, attempt: u32, seed: u64) -> MultiPoly {
    let ring = gb.ring();
    if attempt == 0 {
        return MultiPoly::var(ring, 0);
    }
    let mut rng = crate::random::rng(crate::random::retry_seed(seed, attempt));
    (0..ring.nvars()).fold(MultiPoly::zero(ring), |acc, i| {
        acc.add(&MultiPoly::var(ring, i).scale(&rat(rng.gen_range(1..=(3 * ring.nvars() as i64)))))
    })
}

fn separating_shape(q: &QuotientAlgebra<'_>, gb: &GroebnerBasis, seed: u64) -> Option<(MultiPoly, ShapeBasis)> {
    (0..FORM_ATTEMPTS).find_map(|attempt| {
        let l = linear_form(gb, attempt, seed);
        q.shape(&l).map(|s| (l, s))
    })
}

/// Points of a zero-dimensional ideal with multiplicities; `spec` supplies the Newton polish.
pub fn points_of_ideal(spec: &EquationSpec, gb: &GroebnerBasis, opts: &CountOptions) -> Result<Vec<CountedPoint>> {
    let Some(q) = QuotientAlgebra::new(gb) else { return Ok(Vec::new()) };
    if q.dim() == 0 {
        return Ok(Vec::new());
    }
    let rad_gb = radical(gb, &q, opts)?;
    let rad_q = match &rad_gb {
        Some(r) => QuotientAlgebra::new(r).expect("radical of a zero-dimensional ideal"),
        None => QuotientAlgebra::new(gb).expect("zero-dimensional"),
    };
    let rad_basis = rad_gb.as_ref().unwrap_or(gb);
    let (l, shape) = separating_shape(&rad_q, rad_basis, opts.seed).ok_or(Error::NoConvergence { iterations: FORM_ATTEMPTS as usize, residual: f64::NAN })?;

    // multiplicities: the characteristic polynomial of multiplication by l on the
    // full quotient has l(p) as a root of order mult(p)
    let groups: Vec<(usize, RatUniPoly)> = if rad_gb.is_none() {
        vec![(1, shape.min_poly.clone())]
    } else {
        let chi = rat_charpoly(&multiplication_matrix(&q, gb, &l))?;
        chi.squarefree_decomposition().into_iter().enumerate().map(|(j, f)| (j + 1, f)).filter(|(_, f)| f.degree().unwrap_or(0) > 0).collect()
    };

    let n = spec.n();
    let coords: Vec<CUniPoly> = shape.coordinates.iter().map(CUniPoly::from_rat).collect();
    let mut points = Vec::new();
    for (mult, factor) in groups {
        let thetas: Vec<C64> = match factor.degree() {
            Some(1) => vec![C64::new(crate::exactalg::rat_to_f64(&(-&factor.coeff(0) / factor.coeff(1))), 0.0)],
            _ => aberth_roots(&CUniPoly::from_rat(&factor))?.roots,
        };
        for theta in thetas {
            let x0 = CMatrix::from_vec(n, n, coords.iter().map(|p| p.eval(theta)).collect())?;
            let steps = if mult == 1 { opts.newton_steps } else { 0 };
            let out = newton_polish(&x0, |x| spec.eval(x), |x| spec.jacobian_numeric(x), steps);
            let jacobian_singular = super::spec::is_singular_numeric(spec, &out.x, SINGULAR_TOL);
            points.push(CountedPoint { x: out.x, multiplicity: mult, residual: out.residual, jacobian_singular });
        }
    }
    debug_assert_eq!(points.iter().map(|p| p.multiplicity).sum::<usize>(), q.dim());
    Ok(points)
}

/// Sum of the recovered multiplicities (equals the quotient dimension).
pub fn multiplicity_total(points: &[CountedPoint]) -> usize {
    points.iter().map(|p| p.multiplicity).sum()
}

