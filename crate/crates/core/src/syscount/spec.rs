//! Matrix equations as sums of words in `X` and constant matrices, their scalar
//! expansion, and Jacobians.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{format_rat, parse_rat, MonomialOrder, MultiPoly, Rat, RatMatrix, Ring};
use crate::json::{parse_square, rat_rows, RatRows};
use crate::numlin::{CMatrix, C64};

/// Words of higher degree in `X` are rejected.
pub const DEGREE_CAP: usize = 4;

/// The reserved symbol for the unknown.
pub const UNKNOWN: &str = "X";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    X,
    Const(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub coeff: Rat,
    pub factors: Vec<Factor>,
}

impl Word {
    pub fn degree(&self) -> usize {
        self.factors.iter().filter(|f| **f == Factor::X).count()
    }
}

/// `sum_w coeff_w * w(X) + F = 0`
#[derive(Clone, Debug, PartialEq)]
pub struct EquationSpec {
    n: usize,
    words: Vec<Word>,
    constants: BTreeMap<String, RatMatrix>,
    f: Option<RatMatrix>,
}

impl EquationSpec {
    pub fn new(n: usize) -> Self {
        EquationSpec { n, words: Vec::new(), constants: BTreeMap::new(), f: None }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn constants(&self) -> &BTreeMap<String, RatMatrix> {
        &self.constants
    }

    pub fn constant_term(&self) -> Option<&RatMatrix> {
        self.f.as_ref()
    }

    pub fn with_constant(mut self, name: &str, m: RatMatrix) -> Self {
        self.constants.insert(name.to_string(), m);
        self
    }

    /// Adds a word such as `["A", "X", "B", "X"]` with coefficient one.
    pub fn with_word(self, word: &[&str]) -> Self {
        self.with_scaled_word(Rat::one(), word)
    }

    pub fn with_scaled_word(mut self, coeff: Rat, word: &[&str]) -> Self {
        let factors = word.iter().map(|s| if *s == UNKNOWN { Factor::X } else { Factor::Const(s.to_string()) }).collect();
        self.words.push(Word { coeff, factors });
        self
    }

    pub fn with_f(mut self, f: RatMatrix) -> Self {
        self.f = Some(f);
        self
    }

    /// Checks shapes, names and the degree cap.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Invalid("matrix size must be positive".into()));
        }
        if self.n * self.n > crate::exactalg::poly::MAX_VARS {
            return Err(Error::Invalid(format!("n = {} gives more unknowns than the polynomial ring supports", self.n)));
        }
        for (name, m) in &self.constants {
            if m.rows() != self.n || m.cols() != self.n {
                return Err(Error::DimensionMismatch(format!("constant {name} is not {0}x{0}", self.n)));
            }
        }
        if let Some(f) = &self.f {
            if f.rows() != self.n || f.cols() != self.n {
                return Err(Error::DimensionMismatch(format!("F is not {0}x{0}", self.n)));
            }
        }
        for w in &self.words {
            if w.factors.is_empty() {
                return Err(Error::Invalid("empty word".into()));
            }
            if w.degree() > DEGREE_CAP {
                return Err(Error::DegreeCapExceeded { degree: w.degree(), cap: DEGREE_CAP });
            }
            for f in &w.factors {
                if let Factor::Const(name) = f {
                    if !self.constants.contains_key(name) {
                        return Err(Error::Invalid(format!("word uses undefined constant {name}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn max_degree(&self) -> usize {
        self.words.iter().map(Word::degree).max().unwrap_or(0)
    }

    /// Keeps only the words of top degree and drops `F`.
    pub fn homogeneous_part(&self) -> EquationSpec {
        let d = self.max_degree();
        EquationSpec {
            n: self.n,
            words: self.words.iter().filter(|w| w.degree() == d).cloned().collect(),
            constants: self.constants.clone(),
            f: None,
        }
    }

    /// `f(X)` by direct matrix arithmetic.
    pub fn eval(&self, x: &CMatrix) -> CMatrix {
        let n = self.n;
        let consts: BTreeMap<&str, CMatrix> = self.constants.iter().map(|(k, v)| (k.as_str(), CMatrix::from_rat(v))).collect();
        let mut acc = self.f.as_ref().map_or_else(|| CMatrix::zeros(n, n), CMatrix::from_rat);
        for w in &self.words {
            let prod = w.factors.iter().fold(CMatrix::identity(n), |p, f| match f {
                Factor::X => &p * x,
                Factor::Const(name) => &p * &consts[name.as_str()],
            });
            acc = &acc + &prod.scale(C64::new(crate::exactalg::rat_to_f64(&w.coeff), 0.0));
        }
        acc
    }

    /// `f(X)` in exact arithmetic.
    pub fn eval_rat(&self, x: &RatMatrix) -> RatMatrix {
        let n = self.n;
        let mut acc = self.f.clone().unwrap_or_else(|| RatMatrix::zeros(n, n));
        for w in &self.words {
            let prod = w.factors.iter().fold(RatMatrix::identity(n), |p, f| match f {
                Factor::X => &p * x,
                Factor::Const(name) => &p * &self.constants[name],
            });
            acc = &acc + &prod.scale(&w.coeff);
        }
        acc
    }

    /// Row-major Jacobian at `x`: the occurrence of `X` between `L` and `R` in a word
    /// contributes `L kron R^T`.
    pub fn jacobian_numeric(&self, x: &CMatrix) -> CMatrix {
        let n = self.n;
        let consts: BTreeMap<&str, CMatrix> = self.constants.iter().map(|(k, v)| (k.as_str(), CMatrix::from_rat(v))).collect();
        let value = |f: &Factor| match f {
            Factor::X => x.clone(),
            Factor::Const(name) => consts[name.as_str()].clone(),
        };
        let mut jac = CMatrix::zeros(n * n, n * n);
        for w in &self.words {
            let c = C64::new(crate::exactalg::rat_to_f64(&w.coeff), 0.0);
            for (pos, f) in w.factors.iter().enumerate() {
                if *f != Factor::X {
                    continue;
                }
                let left = w.factors[..pos].iter().fold(CMatrix::identity(n), |p, g| &p * &value(g));
                let right = w.factors[pos + 1..].iter().fold(CMatrix::identity(n), |p, g| &p * &value(g));
                jac = &jac + &left.kron(&right.transpose()).scale(c);
            }
        }
        jac
    }

    pub fn jacobian_rat(&self, x: &RatMatrix) -> RatMatrix {
        let n = self.n;
        let value = |f: &Factor| match f {
            Factor::X => x.clone(),
            Factor::Const(name) => self.constants[name].clone(),
        };
        let mut jac = RatMatrix::zeros(n * n, n * n);
        for w in &self.words {
            for (pos, f) in w.factors.iter().enumerate() {
                if *f != Factor::X {
                    continue;
                }
                let left = w.factors[..pos].iter().fold(RatMatrix::identity(n), |p, g| &p * &value(g));
                let right = w.factors[pos + 1..].iter().fold(RatMatrix::identity(n), |p, g| &p * &value(g));
                jac = &jac + &left.kron(&right.transpose()).scale(&w.coeff);
            }
        }
        jac
    }

    pub fn to_file(&self) -> EquationFile {
        EquationFile {
            n: self.n,
            terms: self
                .words
                .iter()
                .map(|w| TermFile {
                    word: w
                        .factors
                        .iter()
                        .map(|f| match f {
                            Factor::X => UNKNOWN.to_string(),
                            Factor::Const(s) => s.clone(),
                        })
                        .collect(),
                    coeff: if w.coeff.is_one() { None } else { Some(format_rat(&w.coeff)) },
                })
                .collect(),
            constants: self.constants.iter().map(|(k, v)| (k.clone(), rat_rows(v))).collect(),
            f: self.f.as_ref().map(rat_rows),
        }
    }
}

/// JSON form: `{"n": 2, "terms": [{"word": ["A","X","B","X"]}], "constants": {...}, "F": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationFile {
    pub n: usize,
    pub terms: Vec<TermFile>,
    #[serde(default)]
    pub constants: BTreeMap<String, RatRows>,
    #[serde(rename = "F", default, skip_serializing_if = "Option::is_none")]
    pub f: Option<RatRows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermFile {
    pub word: Vec<String>,
    /// Optional rational multiplier, default one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff: Option<String>,
}

impl EquationFile {
    pub fn parse(&self) -> Result<EquationSpec> {
        let mut spec = EquationSpec::new(self.n);
        for (name, rows) in &self.constants {
            if name == UNKNOWN {
                return Err(Error::Parse("X is reserved for the unknown".into()));
            }
            spec = spec.with_constant(name, parse_square(rows, self.n, name)?);
        }
        for t in &self.terms {
            let coeff = t.coeff.as_deref().map(parse_rat).transpose()?.unwrap_or_else(Rat::one);
            let word: Vec<&str> = t.word.iter().map(String::as_str).collect();
            spec = spec.with_scaled_word(coeff, &word);
        }
        if let Some(f) = &self.f {
            spec = spec.with_f(parse_square(f, self.n, "F")?);
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// The `n^2` scalar polynomials `f_ij` in the unknowns `x_kl` (row-major).
#[derive(Clone, Debug)]
pub struct MatricizedSystem {
    pub ring: Arc<Ring>,
    pub polys: Vec<MultiPoly>,
}

impl MatricizedSystem {
    /// Values of all `f_ij` at a point given as a matrix.
    pub fn eval_complex(&self, x: &CMatrix) -> CMatrix {
        let n = x.rows();
        let point = x.entries().to_vec();
        CMatrix::from_vec(n, n, self.polys.iter().map(|p| p.eval_complex(&point)).collect()).expect("n^2 values")
    }

    /// Symbolic Jacobian `d f_ij / d x_kl` evaluated at a rational point.
    pub fn jacobian_rat(&self, x: &RatMatrix) -> RatMatrix {
        let m = self.polys.len();
        let point = x.entries().to_vec();
        let mut j = RatMatrix::zeros(m, m);
        for (r, p) in self.polys.iter().enumerate() {
            for c in 0..m {
                j.set(r, c, p.derivative(c).eval(&point));
            }
        }
        j
    }
}

pub fn variable_names(n: usize) -> Vec<String> {
    (1..=n).flat_map(|i| (1..=n).map(move |j| format!("x{i}{j}"))).collect()
}

pub fn matricize(spec: &EquationSpec) -> Result<MatricizedSystem> {
    matricize_with(spec, MonomialOrder::Grevlex)
}

pub fn matricize_with(spec: &EquationSpec, order: MonomialOrder) -> Result<MatricizedSystem> {
    spec.validate()?;
    let n = spec.n;
    let ring = Ring::new(variable_names(n), order)?;
    let xs: Vec<MultiPoly> = (0..n * n).map(|i| MultiPoly::var(&ring, i)).collect();
    let lift = |m: &RatMatrix| -> Vec<MultiPoly> { m.entries().iter().map(|c| MultiPoly::constant(&ring, c.clone())).collect() };
    let mul = |a: &[MultiPoly], b: &[MultiPoly]| -> Vec<MultiPoly> {
        (0..n * n)
            .map(|ij| {
                let (i, j) = (ij / n, ij % n);
                (0..n).fold(MultiPoly::zero(&ring), |acc, k| acc.add(&a[i * n + k].mul(&b[k * n + j])))
            })
            .collect()
    };
    let mut acc: Vec<MultiPoly> = match &spec.f {
        Some(f) => lift(f),
        None => vec![MultiPoly::zero(&ring); n * n],
    };
    for w in &spec.words {
        let mut prod: Option<Vec<MultiPoly>> = None;
        for f in &w.factors {
            let m = match f {
                Factor::X => xs.clone(),
                Factor::Const(name) => lift(&spec.constants[name]),
            };
            prod = Some(match prod {
                None => m,
                Some(p) => mul(&p, &m),
            });
        }
        let prod = prod.expect("validated non-empty word");
        for (a, p) in acc.iter_mut().zip(prod) {
            *a = a.add(&p.scale(&w.coeff));
        }
    }
    Ok(MatricizedSystem { ring, polys: acc })
}

/// Jacobian of the expanded system at an exact point.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobianReport {
    pub point: RatMatrix,
    pub jacobian: RatMatrix,
    pub determinant: Rat,
    pub singular: bool,
}

pub fn jacobian_at(spec: &EquationSpec, x0: &RatMatrix) -> Result<JacobianReport> {
    spec.validate()?;
    if x0.rows() != spec.n || x0.cols() != spec.n {
        return Err(Error::DimensionMismatch(format!("point must be {0}x{0}", spec.n)));
    }
    let jacobian = spec.jacobian_rat(x0);
    let determinant = jacobian.det()?;
    Ok(JacobianReport { point: x0.clone(), singular: determinant.is_zero(), jacobian, determinant })
}

/// Relative singularity test for a numerical point.
pub fn is_singular_numeric(spec: &EquationSpec, x: &CMatrix, rel_tol: f64) -> bool {
    let s = spec.jacobian_numeric(x).singular_values();
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) => hi == 0.0 || lo <= rel_tol * hi,
        _ => true,
    }
}
