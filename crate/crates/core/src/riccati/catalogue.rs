//! Explicit non-generic 2x2 instances with their expected classification.
//!
//! Each instance is written as `phi(X) = Y` with `phi(X) = XAX + B1 X + X B2`,
//! stored as the Riccati problem with `C = -Y`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{random_generic_riccati, RiccatiProblem};
use crate::error::Result;
use crate::exactalg::{rat, ratio, RatMatrix};
use crate::numlin::CMatrix;
use crate::syscount::{count_solutions, groebner_of, is_sole_solution, CountOptions, CountReport, EquationFile, EquationSpec};

impl RiccatiProblem {
    /// The same equation as a word sum, omitting zero coefficients.
    pub fn to_spec(&self) -> EquationSpec {
        let mut s = EquationSpec::new(self.n());
        for (name, m, word) in [
            ("A", &self.a, &["X", "A", "X"][..]),
            ("B1", &self.b1, &["B1", "X"][..]),
            ("B2", &self.b2, &["X", "B2"][..]),
            ("C", &self.c, &["C"][..]),
        ] {
            if !m.is_zero() {
                s = s.with_constant(name, m.clone()).with_word(word);
            }
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Classification {
    /// Finitely many solutions; `count` is with multiplicity.
    Finite { count: usize },
    /// Solution set of the given Hilbert dimension.
    Family { dimension: usize },
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub problem: RiccatiProblem,
    pub expected: Classification,
    /// Expected number of distinct points, where the instance pins it down.
    pub expected_distinct: Option<usize>,
    /// The only solution, when there is exactly one point.
    pub sole_solution: Option<RatMatrix>,
    /// Known isolated solutions with non-singular Jacobian.
    pub nonsingular: Vec<RatMatrix>,
}

fn m(rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_i64(rows)
}

fn problem(a: RatMatrix, b1: RatMatrix, b2: RatMatrix, y: RatMatrix) -> RiccatiProblem {
    RiccatiProblem::new(a, b1, b2, -&y).expect("2x2 fixture")
}

const Z: &[&[i64]] = &[&[0, 0], &[0, 0]];
const I: &[&[i64]] = &[&[1, 0], &[0, 1]];

/// `X^2 + diag(2, -1) X`, used for several counts.
fn phi3(y: RatMatrix) -> RiccatiProblem {
    problem(m(I), m(&[&[2, 0], &[0, -1]]), m(Z), y)
}

/// Seed of the generic six-solution instance.
pub const GENERIC_SEED: u64 = 6;

pub fn catalogue_fixtures() -> Vec<Fixture> {
    let generic = random_generic_riccati(2, GENERIC_SEED, 8).expect("a generic draw exists").0;
    let fixture = |name, description, problem, expected, expected_distinct| Fixture {
        name,
        description,
        problem,
        expected,
        expected_distinct,
        sole_solution: None,
        nonsingular: Vec::new(),
    };
    vec![
        fixture("nu0", "X^2 = [[0,1],[0,0]]: no square root", problem(m(I), m(Z), m(Z), m(&[&[0, 1], &[0, 0]])), Classification::Finite { count: 0 }, Some(0)),
        fixture(
            "nu1",
            "X [[0,1],[0,1]] X + [[-1,2],[0,-1]] X = [[1,0],[-1,1]]",
            problem(m(&[&[0, 1], &[0, 1]]), m(&[&[-1, 2], &[0, -1]]), m(Z), m(&[&[1, 0], &[-1, 1]])),
            Classification::Finite { count: 1 },
            Some(1),
        ),
        fixture("nu2", "X^2 + X = [[0,0],[-2,0]]", problem(m(I), m(I), m(Z), m(&[&[0, 0], &[-2, 0]])), Classification::Finite { count: 2 }, Some(2)),
        Fixture {
            sole_solution: Some(RatMatrix::from_rows(vec![vec![rat(-1), ratio(1, 3)], vec![rat(0), rat(2)]]).expect("2x2")),
            ..fixture("nu3", "X^2 + diag(2,-1) X = [[-1,1],[0,2]]: one triple point", phi3(m(&[&[-1, 1], &[0, 2]])), Classification::Finite { count: 3 }, Some(1))
        },
        fixture("nu4", "X^2 + diag(2,-1) X = diag(1,3)", phi3(m(&[&[1, 0], &[0, 3]])), Classification::Finite { count: 4 }, Some(4)),
        fixture("nu5", "X^2 + diag(2,-1) X = [[1,2],[0,3]]", phi3(m(&[&[1, 2], &[0, 3]])), Classification::Finite { count: 5 }, Some(5)),
        Fixture {
            sole_solution: Some(RatMatrix::zeros(2, 2)),
            ..fixture(
                "nu6_nilpotent",
                "X [[0,1],[1,1]] X - [[0,1],[0,0]] X + X [[0,1],[0,0]] = 0: X = 0 with multiplicity 6",
                problem(m(&[&[0, 1], &[1, 1]]), m(&[&[0, -1], &[0, 0]]), m(&[&[0, 1], &[0, 0]]), m(Z)),
                Classification::Finite { count: 6 },
                Some(1),
            )
        },
        fixture("nu6_generic", "random integer instance with six simple solutions", generic, Classification::Finite { count: 6 }, Some(6)),
        fixture(
            "nu6_commutator",
            "XAX + BX - XB = 0: zero with multiplicity 4 and two more points",
            problem(m(&[&[1, 2], &[-1, 1]]), m(&[&[1, -1], &[2, 0]]), m(&[&[-1, 1], &[-2, 0]]), m(Z)),
            Classification::Finite { count: 6 },
            Some(3),
        ),
        fixture("dim1_binome", "X^2 + diag(1,2) X = 0: two lines", problem(m(I), m(&[&[1, 0], &[0, 2]]), m(Z), m(Z)), Classification::Family { dimension: 1 }, None),
        Fixture {
            nonsingular: vec![m(I), m(&[&[-1, 0], &[0, -1]])],
            ..fixture("dim2_unipotent_roots", "X^2 = I: +-I and a quadric surface", problem(m(I), m(Z), m(Z), m(I)), Classification::Family { dimension: 2 }, None)
        },
        fixture("dim2_xax", "X [[1,2],[-1,1]] X = 0: a cone", problem(m(&[&[1, 2], &[-1, 1]]), m(Z), m(Z), m(Z)), Classification::Family { dimension: 2 }, None),
    ]
}

pub fn classify(report: &CountReport) -> Classification {
    match report.summary.count() {
        Some(count) => Classification::Finite { count },
        None => Classification::Family { dimension: report.summary.hilbert_dimension },
    }
}

#[derive(Clone, Debug)]
pub struct FixtureOutcome {
    pub name: &'static str,
    pub expected: Classification,
    pub observed: Classification,
    pub distinct: Option<usize>,
    /// `None` when the fixture makes no such claim.
    pub sole_solution_ok: Option<bool>,
    pub nonsingular_ok: Option<bool>,
    pub max_residual: f64,
}

impl FixtureOutcome {
    pub fn passed(&self, expected_distinct: Option<usize>) -> bool {
        self.expected == self.observed
            && (expected_distinct.is_none() || expected_distinct == self.distinct)
            && self.sole_solution_ok != Some(false)
            && self.nonsingular_ok != Some(false)
    }
}

pub fn check_fixture(f: &Fixture) -> Result<FixtureOutcome> {
    let spec = f.problem.to_spec();
    let report = count_solutions(&spec)?;
    let sole_solution_ok = match &f.sole_solution {
        Some(p) => {
            let (_, gb) = groebner_of(&spec, &CountOptions::default())?;
            let exact = spec.eval_rat(p).is_zero();
            Some(exact && is_sole_solution(&gb, p))
        }
        None => None,
    };
    let nonsingular_ok = if f.nonsingular.is_empty() {
        None
    } else {
        let mut ok = true;
        for x in &f.nonsingular {
            ok &= spec.eval_rat(x).is_zero() && !spec.jacobian_rat(x).det()?.is_zero();
        }
        Some(ok)
    };
    Ok(FixtureOutcome {
        name: f.name,
        expected: f.expected,
        observed: classify(&report),
        distinct: report.distinct,
        sole_solution_ok,
        nonsingular_ok,
        max_residual: report.points.iter().map(|p| p.residual).fold(0.0, f64::max),
    })
}

/// Residual of a claimed solution, for cross-checks against the numeric solvers.
pub fn fixture_residual(f: &Fixture, x: &CMatrix) -> f64 {
    f.problem.residual(x)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureJson {
    pub name: String,
    pub description: String,
    pub equation: EquationFile,
    pub riccati: super::RiccatiFile,
    pub expected: Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_distinct: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sole_solution: Option<crate::json::RatRows>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub nonsingular: Vec<crate::json::RatRows>,
}

pub fn catalogue_json() -> Vec<FixtureJson> {
    catalogue_fixtures()
        .into_iter()
        .map(|f| FixtureJson {
            name: f.name.to_string(),
            description: f.description.to_string(),
            equation: f.problem.to_spec().to_file(),
            riccati: f.problem.to_json(),
            expected: f.expected,
            expected_distinct: f.expected_distinct,
            sole_solution: f.sole_solution.as_ref().map(crate::json::rat_rows),
            nonsingular: f.nonsingular.iter().map(crate::json::rat_rows).collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_form_matches_riccati_residual() {
        for f in catalogue_fixtures() {
            let x = CMatrix::from_real(2, 2, &[0.3, -1.1, 0.7, 2.0]).unwrap();
            let d = f.problem.to_spec().eval(&x).dist(&f.problem.residual_matrix(&x));
            assert!(d < 1e-12, "{}", f.name);
        }
    }

    #[test]
    fn every_fixture_classifies_as_stated() {
        for f in catalogue_fixtures() {
            let out = check_fixture(&f).unwrap();
            assert!(out.passed(f.expected_distinct), "{}: {:?}", f.name, out);
        }
    }

    #[test]
    fn json_export_parses_back() {
        let text = serde_json::to_string(&catalogue_json()).unwrap();
        let back: Vec<FixtureJson> = serde_json::from_str(&text).unwrap();
        assert_eq!(back.len(), catalogue_fixtures().len());
        for (j, f) in back.iter().zip(catalogue_fixtures()) {
            assert_eq!(j.equation.parse().unwrap(), f.problem.to_spec());
            assert_eq!(j.riccati.parse().unwrap(), f.problem);
        }
    }
}
