//! Command dispatch for the `matsolve` binary, kept in the library so it can be tested
//! without spawning processes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactalg::{format_rat, GroebnerOptions, MonomialOrder, RatMatrix};
use crate::json::{complex_list, complex_rows, parse_rat_rows, parse_square, rat_rows, RatRows};
use crate::matpoly::{solve_unilateral_with, MatPolyFile, MatPolynomial, Method, SolutionSet, UnilateralOptions};
use crate::numlin::Tolerances;
use crate::riccati::catalogue::{catalogue_fixtures, check_fixture};
use crate::riccati::{hamiltonian_solve_with, random_generic_riccati, HamiltonianOptions, RiccatiFile};
use crate::structured::{
    binome_family_emit, binome_stratum_count, commuting_counterexample_check, commuting_solve, random_generic_commuting,
    random_symmetric, symmetric_quadratic_solve, symmetric_spec, BinomeFamilyDescriptor, CommutingFamily,
};
use crate::syscount::{count_solutions_with, jacobian_at, matricize, random_spec, CountOptions, EquationFile, EquationSpec, Shape};

/// The bundled generic 2x2 Riccati instance, counted when `count` gets no input.
pub const RICCATI_2X2: &str = include_str!("../data/riccati-2x2.json");

/// Retries granted to the random generators before giving up on genericity.
const RANDOM_RETRIES: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    SolveUnilateral,
    SolveRiccati,
    SolveCommuting,
    SolveSymmetric,
    Families,
    Count,
    Jacobian,
    Fixtures,
    RandomInstance,
}

pub const COMMANDS: [Command; 9] = [
    Command::SolveUnilateral,
    Command::SolveRiccati,
    Command::SolveCommuting,
    Command::SolveSymmetric,
    Command::Families,
    Command::Count,
    Command::Jacobian,
    Command::Fixtures,
    Command::RandomInstance,
];

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::SolveUnilateral => "solve-unilateral",
            Command::SolveRiccati => "solve-riccati",
            Command::SolveCommuting => "solve-commuting",
            Command::SolveSymmetric => "solve-symmetric",
            Command::Families => "families",
            Command::Count => "count",
            Command::Jacobian => "jacobian",
            Command::Fixtures => "fixtures",
            Command::RandomInstance => "random-instance",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        COMMANDS.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::Parse(format!("unknown command {s:?}")))
    }
}

/// Shapes accepted by `random-instance`.
pub const RANDOM_SHAPES: [Shape; 8] =
    [Shape::Unilateral, Shape::Riccati, Shape::Plex1, Shape::Plex2, Shape::Degmax, Shape::Commuting, Shape::Symmetric, Shape::Binome];

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    /// Raw input text; `None` when the command needs none.
    pub input: Option<String>,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub pair_budget: Option<usize>,
    pub order: MonomialOrder,
    /// `random-instance` only.
    pub shape: Option<Shape>,
    pub n: usize,
    pub k: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            seed: 0,
            tolerances: Tolerances::default(),
            pair_budget: None,
            order: MonomialOrder::Grevlex,
            shape: None,
            n: 2,
            k: 2,
        }
    }

    pub fn with_input(mut self, text: impl Into<String>) -> Self {
        self.input = Some(text.into());
        self
    }

    fn input(&self) -> Result<&str> {
        self.input.as_deref().ok_or_else(|| Error::Parse(format!("{} needs --input", self.command)))
    }

    fn count_options(&self) -> CountOptions {
        let mut groebner = GroebnerOptions::default();
        if let Some(b) = self.pair_budget {
            groebner.pair_budget = b;
        }
        CountOptions { order: self.order, groebner, seed: self.seed, ..CountOptions::default() }
    }
}

/// What a run produced. `body` is the whole output for `random-instance` and a report
/// envelope otherwise; `timings_ms` is kept apart so two runs compare equal without it.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: Command,
    pub digest: Option<String>,
    pub body: Value,
    pub timings_ms: BTreeMap<String, f64>,
    /// Set when the run completed but a check inside it failed (a fixture mismatch).
    pub failed_checks: bool,
}

impl RunReport {
    pub fn to_json(&self) -> Value {
        if self.command == Command::RandomInstance {
            return self.body.clone();
        }
        let mut v = self.body.clone();
        v["timings_ms"] = json!(self.timings_ms);
        v
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed_checks)
    }
}

/// Exit status for an error: 2 parse, 3 not generic, 4 budget, 5 no convergence, 1 other.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Json(_) | Error::Io(_) | Error::DimensionMismatch(_) | Error::Invalid(_) | Error::DegreeCapExceeded { .. } => 2,
        Error::NotGeneric(_) | Error::NotGenericCommuting(_) | Error::SingularA | Error::DefectiveM => 3,
        Error::BudgetExceeded { .. } | Error::CapExceeded { .. } => 4,
        Error::NoConvergence { .. } | Error::IncompleteSolutionSet { .. } => 5,
        Error::SingularMatrix | Error::ZeroPolynomial | Error::PositiveDimensional { .. } => 1,
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) | Error::Json(_) => "parse",
        Error::Io(_) => "io",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::Invalid(_) => "invalid_input",
        Error::DegreeCapExceeded { .. } => "degree_cap_exceeded",
        Error::NotGeneric(_) | Error::NotGenericCommuting(_) => "not_generic",
        Error::SingularA => "singular_a",
        Error::DefectiveM => "defective_m",
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::CapExceeded { .. } => "cap_exceeded",
        Error::NoConvergence { .. } => "no_convergence",
        Error::IncompleteSolutionSet { .. } => "incomplete_solution_set",
        Error::SingularMatrix => "singular_matrix",
        Error::ZeroPolynomial => "zero_polynomial",
        Error::PositiveDimensional { .. } => "positive_dimensional",
    }
}

pub fn error_json(command: Option<&str>, e: &Error) -> Value {
    json!({
        "command": command,
        "error": { "kind": error_kind(e), "exit_code": exit_code(e), "message": e.to_string() },
    })
}

pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Any of the three equation encodings, told apart by their keys.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum EquationInput {
    Equation(EquationFile),
    Riccati(RiccatiFile),
    MatPoly(MatPolyFile),
}

impl EquationInput {
    pub fn to_spec(&self) -> Result<EquationSpec> {
        match self {
            EquationInput::Equation(f) => f.parse(),
            EquationInput::Riccati(f) => Ok(f.parse()?.to_spec()),
            EquationInput::MatPoly(f) => Ok(mat_poly_spec(&f.parse()?)?),
        }
    }
}

/// `sum A_i X^i` as a word equation with constants `A0, A1, ...`.
pub fn mat_poly_spec(mp: &MatPolynomial) -> Result<EquationSpec> {
    let exact = mp.exact_coeffs().ok_or_else(|| Error::Invalid("only rational matrix polynomials expand".into()))?;
    let mut spec = EquationSpec::new(mp.n());
    for (i, a) in exact.iter().enumerate() {
        let name = format!("A{i}");
        spec = spec.with_constant(&name, a.clone());
        let word: Vec<&str> = std::iter::once(name.as_str()).chain(std::iter::repeat_n("X", i)).collect();
        spec = spec.with_word(&word);
    }
    Ok(spec)
}

/// `{"n": 2, "B": [[...]], "C": [[...]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricFile {
    pub n: usize,
    #[serde(rename = "B")]
    pub b: RatRows,
    #[serde(rename = "C")]
    pub c: RatRows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyFile {
    /// A member of the stratum of `Z^2 + TZ = 0` left by excluding `excluded`.
    Binome {
        #[serde(rename = "T")]
        t: RatRows,
        excluded: Vec<usize>,
        #[serde(rename = "Y")]
        y: RatRows,
    },
    /// `X^2 + BXB + C = 0` with diagonal 2x2 `B`, `C`.
    Counterexample {
        #[serde(rename = "B")]
        b: RatRows,
        #[serde(rename = "C")]
        c: RatRows,
    },
}

/// `{"equation": {...}, "at": [[...]]}`
#[derive(Clone, Debug, Deserialize)]
pub struct JacobianFile {
    pub equation: EquationInput,
    pub at: RatRows,
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Solutions with their solver residual and an independent residual from the
/// expanded scalar system.
fn solutions_json(set: &SolutionSet, spec: &EquationSpec, dedup: f64) -> Result<Value> {
    let sys = matricize(spec)?;
    let sols: Vec<Value> = set
        .solutions
        .iter()
        .map(|s| {
            json!({
                "x": complex_rows(&s.x),
                "subset": s.subset,
                "residual": s.residual,
                "check_residual": sys.eval_complex(&s.x).norm_max(),
            })
        })
        .collect();
    Ok(json!({
        "method": set.method,
        "count": set.len(),
        "count_expected": set.count_expected,
        "distinct": set.distinct_count(dedup),
        "all_simple": set.all_simple,
        "max_residual": set.max_residual(),
        "roots": complex_list(&set.roots),
        "solutions": sols,
    }))
}

struct Timer(BTreeMap<String, f64>);

impl Timer {
    fn time<T>(&mut self, label: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let t = Instant::now();
        let out = f();
        self.0.insert(label.to_string(), t.elapsed().as_secs_f64() * 1e3);
        out
    }
}

pub fn run(config: &RunConfig) -> Result<RunReport> {
    let started = Instant::now();
    let mut timer = Timer(BTreeMap::new());
    let tol = config.tolerances;
    let mut failed_checks = false;
    let input_text = match config.command {
        Command::Count => Some(config.input.as_deref().unwrap_or(RICCATI_2X2)),
        Command::Fixtures | Command::RandomInstance => None,
        _ => Some(config.input()?),
    };

    let result = match config.command {
        Command::SolveUnilateral => {
            let mp = parse_json::<MatPolyFile>(input_text.unwrap())?.parse()?;
            let opts = UnilateralOptions { tol, ..UnilateralOptions::default() };
            let set = timer.time("solve", || solve_unilateral_with(&mp, &opts))?;
            solutions_json(&set, &mat_poly_spec(&mp)?, tol.dedup)?
        }
        Command::SolveRiccati => {
            let p = parse_json::<RiccatiFile>(input_text.unwrap())?.parse()?;
            let opts = HamiltonianOptions { tol, ..HamiltonianOptions::default() };
            let sol = timer.time("solve", || hamiltonian_solve_with(&p, &opts))?;
            let mut v = solutions_json(&sol.set, &p.to_spec(), tol.dedup)?;
            v["at_infinity"] = json!(sol.at_infinity);
            v
        }
        Command::SolveCommuting => {
            let file = parse_json::<MatPolyFile>(input_text.unwrap())?;
            let b = file.coeffs.iter().enumerate().map(|(i, m)| parse_square(m, file.n, &format!("B_{i}"))).collect::<Result<Vec<_>>>()?;
            let fam = CommutingFamily::from_rat(b)?;
            let set = timer.time("solve", || commuting_solve(&fam))?;
            solutions_json(&set, &mat_poly_spec(&fam.mat_poly())?, tol.dedup)?
        }
        Command::SolveSymmetric => {
            let file = parse_json::<SymmetricFile>(input_text.unwrap())?;
            let (b, c) = (parse_square(&file.b, file.n, "B")?, parse_square(&file.c, file.n, "C")?);
            let set = timer.time("solve", || symmetric_quadratic_solve(&b, &c))?;
            solutions_json(&set, &symmetric_spec(&b, &c), tol.dedup)?
        }
        Command::Families => timer.time("families", || families(parse_json(input_text.unwrap())?))?,
        Command::Count => {
            let spec = parse_json::<EquationInput>(input_text.unwrap())?.to_spec()?;
            let opts = config.count_options();
            let report = timer.time("count", || count_solutions_with(&spec, &opts))?;
            let sys = matricize(&spec)?;
            let mut v = serde_json::to_value(report.to_json())?;
            for (pj, p) in v["points"].as_array_mut().expect("points array").iter_mut().zip(&report.points) {
                pj["check_residual"] = json!(sys.eval_complex(&p.x).norm_max());
            }
            v["method"] = json!(Method::Groebner);
            v["order"] = json!(format!("{:?}", config.order).to_lowercase());
            v["nu"] = json!(report.summary.count());
            v["hilbert_dimension"] = json!(report.summary.hilbert_dimension);
            v
        }
        Command::Jacobian => {
            let file = parse_json::<JacobianFile>(input_text.unwrap())?;
            let spec = file.equation.to_spec()?;
            let at = parse_rat_rows(&file.at)?;
            let r = timer.time("jacobian", || jacobian_at(&spec, &at))?;
            json!({
                "point": rat_rows(&r.point),
                "residual": rat_rows(&spec.eval_rat(&at)),
                "jacobian": rat_rows(&r.jacobian),
                "determinant": format_rat(&r.determinant),
                "singular": r.singular,
            })
        }
        Command::Fixtures => {
            let rows = timer.time("fixtures", || {
                catalogue_fixtures()
                    .iter()
                    .map(|f| {
                        let out = check_fixture(f)?;
                        Ok(json!({
                            "name": f.name,
                            "expected": f.expected,
                            "observed": out.observed,
                            "method": Method::Groebner,
                            "expected_distinct": f.expected_distinct,
                            "distinct": out.distinct,
                            "sole_solution_ok": out.sole_solution_ok,
                            "nonsingular_ok": out.nonsingular_ok,
                            "max_residual": out.max_residual,
                            "passed": out.passed(f.expected_distinct),
                        }))
                    })
                    .collect::<Result<Vec<_>>>()
            })?;
            let all = rows.iter().all(|r| r["passed"] == json!(true));
            failed_checks = !all;
            json!({ "all_passed": all, "fixtures": rows })
        }
        Command::RandomInstance => {
            let shape = config.shape.ok_or_else(|| Error::Parse("random-instance needs --shape".into()))?;
            let body = random_instance(shape, config.n, config.k, config.seed)?;
            return Ok(RunReport { command: config.command, digest: None, body, timings_ms: BTreeMap::new(), failed_checks: false });
        }
    };

    timer.0.insert("total".into(), started.elapsed().as_secs_f64() * 1e3);
    let digest = input_text.map(digest);
    let body = json!({
        "command": config.command.name(),
        "digest": digest,
        "seed": config.seed,
        "tolerances": tol,
        "result": result,
    });
    Ok(RunReport { command: config.command, digest, body, timings_ms: timer.0, failed_checks })
}

fn families(file: FamilyFile) -> Result<Value> {
    match file {
        FamilyFile::Binome { t, excluded, y } => {
            let t = parse_rat_rows(&t)?;
            let desc = BinomeFamilyDescriptor { r: excluded.len(), t: t.clone(), excluded, y: parse_rat_rows(&y)? };
            let member = binome_family_emit(&desc)?;
            let spec = EquationSpec::new(t.rows()).with_constant("T", t).with_word(&["X", "X"]).with_word(&["T", "X"]);
            let (max_dimension, components) = binome_stratum_count(desc.n());
            Ok(json!({
                "kind": "binome",
                "family_dimension": desc.family_dimension(),
                "member": complex_rows(&member.z),
                "member_exact": member.exact.as_ref().map(rat_rows),
                "residual": member.residual,
                "check_residual": matricize(&spec)?.eval_complex(&member.z).norm_max(),
                "top_stratum": { "dimension": max_dimension, "components": components.to_string() },
            }))
        }
        FamilyFile::Counterexample { b, c } => {
            let (b, c) = (parse_square(&b, 2, "B")?, parse_square(&c, 2, "C")?);
            let r = commuting_counterexample_check(&b, &c)?;
            Ok(json!({
                "kind": "counterexample",
                "hilbert_dimension": r.hilbert_dimension,
                "method": Method::Groebner,
                "diagonal_solutions": r.diagonal_solutions.iter().map(complex_rows).collect::<Vec<_>>(),
                "max_diagonal_residual": r.max_diagonal_residual,
                "max_diagonal_commutator": r.max_diagonal_commutator,
                "family_member": r.family_member.as_ref().map(complex_rows),
                "family_residual": r.family_residual,
                "family_commutator": r.family_commutator,
            }))
        }
    }
}

/// Seeded instance file for one of [`RANDOM_SHAPES`]. Unilateral, Riccati, commuting
/// and symmetric draws move along the retry sequence until they are generic.
pub fn random_instance(shape: Shape, n: usize, k: usize, seed: u64) -> Result<Value> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let v = match shape {
        Shape::Unilateral => {
            if k == 0 {
                return Err(Error::Invalid("k must be positive".into()));
            }
            let (mp, _) = crate::matpoly::random_generic_unilateral(n, k, seed, RANDOM_RETRIES)?;
            serde_json::to_value(mp.to_json()?)?
        }
        Shape::Riccati => serde_json::to_value(random_generic_riccati(n, seed, RANDOM_RETRIES)?.0.to_json())?,
        Shape::Commuting => {
            if k == 0 {
                return Err(Error::Invalid("k must be positive".into()));
            }
            let (fam, _) = random_generic_commuting(n, k, seed, RANDOM_RETRIES)?;
            let exact = fam.exact.as_ref().expect("rational by construction");
            serde_json::to_value(MatPolyFile { n, coeffs: exact.iter().map(rat_rows).collect() })?
        }
        Shape::Symmetric => {
            let (b, c, _) = random_symmetric(n, seed, RANDOM_RETRIES)?;
            serde_json::to_value(SymmetricFile { n, b: rat_rows(&b), c: rat_rows(&c) })?
        }
        Shape::Plex1 | Shape::Plex2 | Shape::Degmax | Shape::Binome => serde_json::to_value(random_spec(shape, n, seed).to_file())?,
        other => {
            let names: Vec<_> = RANDOM_SHAPES.iter().map(|s| s.name()).collect();
            return Err(Error::Parse(format!("random-instance does not offer {other}; expected one of {}", names.join(", "))));
        }
    };
    Ok(v)
}

/// Checks that a commuting instance file really commutes, exactly.
pub fn commutes_exactly(coeffs: &[RatMatrix]) -> bool {
    coeffs.iter().enumerate().all(|(i, a)| coeffs[i + 1..].iter().all(|b| (a * b) == (b * a)))
}
