//! Seeded random instances of the equation families used for counting.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::count::{count_solutions_with, CountOptions, CountReport};
use super::spec::EquationSpec;
use crate::error::{Error, Result};
use crate::exactalg::RatMatrix;
use crate::random::{int_diagonal, int_matrix, retry_seed, rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// `XAX + B1 X + X B2 + C`
    Riccati,
    /// `X^2 + B X + C`
    Unilateral,
    /// `X^2 + B X C + D`
    Plex1,
    /// `X^2 + B X B + C`
    Plex2,
    /// `A X B1 X + X B2 X + X^2 C + D X + F`
    Degmax,
    /// `A X B1 X + X B2 X + X^2 C`
    Homog,
    /// `A X B1 X + X B2 X + D X + F`
    NoSquare,
    /// `X^2 + B X B + C` with diagonal `B`, `C`
    Commuting,
    /// `X^2 + B X + X B + C`
    Symmetric,
    /// `X^2 + T X` with diagonal `T`
    Binome,
    /// `X A X`
    Xax,
}

pub const ALL_SHAPES: [Shape; 11] = [
    Shape::Riccati,
    Shape::Unilateral,
    Shape::Plex1,
    Shape::Plex2,
    Shape::Degmax,
    Shape::Homog,
    Shape::NoSquare,
    Shape::Commuting,
    Shape::Symmetric,
    Shape::Binome,
    Shape::Xax,
];

impl Shape {
    pub fn name(self) -> &'static str {
        match self {
            Shape::Riccati => "riccati",
            Shape::Unilateral => "unilateral",
            Shape::Plex1 => "plex1",
            Shape::Plex2 => "plex2",
            Shape::Degmax => "degmax",
            Shape::Homog => "homog",
            Shape::NoSquare => "no_square",
            Shape::Commuting => "commuting",
            Shape::Symmetric => "symmetric",
            Shape::Binome => "binome",
            Shape::Xax => "xax",
        }
    }

    /// Generic count at `n = 2` where one is known; `None` for positive-dimensional shapes.
    pub fn expected_count_2x2(self) -> Option<usize> {
        match self {
            Shape::Riccati | Shape::Unilateral | Shape::Plex2 => Some(6),
            Shape::Plex1 | Shape::NoSquare => Some(8),
            Shape::Degmax | Shape::Homog => Some(16),
            Shape::Symmetric => Some(4),
            Shape::Commuting | Shape::Binome | Shape::Xax => None,
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_SHAPES.into_iter().find(|sh| sh.name() == s).ok_or_else(|| {
            let names: Vec<_> = ALL_SHAPES.iter().map(|s| s.name()).collect();
            Error::Parse(format!("unknown shape {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

pub fn random_spec(shape: Shape, n: usize, seed: u64) -> EquationSpec {
    let mut r = rng(seed);
    let mut m = || int_matrix(&mut r, n);
    let s = EquationSpec::new(n);
    match shape {
        Shape::Riccati => s
            .with_constant("A", m())
            .with_constant("B1", m())
            .with_constant("B2", m())
            .with_constant("C", m())
            .with_word(&["X", "A", "X"])
            .with_word(&["B1", "X"])
            .with_word(&["X", "B2"])
            .with_word(&["C"]),
        Shape::Unilateral => s.with_constant("B", m()).with_constant("C", m()).with_word(&["X", "X"]).with_word(&["B", "X"]).with_word(&["C"]),
        Shape::Plex1 => s
            .with_constant("B", m())
            .with_constant("C", m())
            .with_constant("D", m())
            .with_word(&["X", "X"])
            .with_word(&["B", "X", "C"])
            .with_word(&["D"]),
        Shape::Plex2 => s.with_constant("B", m()).with_constant("C", m()).with_word(&["X", "X"]).with_word(&["B", "X", "B"]).with_word(&["C"]),
        Shape::Degmax | Shape::Homog | Shape::NoSquare => {
            let (a, b1, b2, c, d, f) = (m(), m(), m(), m(), m(), m());
            let s = s
                .with_constant("A", a)
                .with_constant("B1", b1)
                .with_constant("B2", b2)
                .with_word(&["A", "X", "B1", "X"])
                .with_word(&["X", "B2", "X"]);
            match shape {
                Shape::Degmax => s.with_constant("C", c).with_constant("D", d).with_constant("F", f).with_word(&["X", "X", "C"]).with_word(&["D", "X"]).with_word(&["F"]),
                Shape::Homog => s.with_constant("C", c).with_word(&["X", "X", "C"]),
                _ => s.with_constant("D", d).with_constant("F", f).with_word(&["D", "X"]).with_word(&["F"]),
            }
        }
        Shape::Commuting => {
            let (b, c) = (int_diagonal(&mut r, n), int_diagonal(&mut r, n));
            s.with_constant("B", b).with_constant("C", c).with_word(&["X", "X"]).with_word(&["B", "X", "B"]).with_word(&["C"])
        }
        Shape::Symmetric => s
            .with_constant("B", m())
            .with_constant("C", m())
            .with_word(&["X", "X"])
            .with_word(&["B", "X"])
            .with_word(&["X", "B"])
            .with_word(&["C"]),
        Shape::Binome => s.with_constant("T", int_diagonal(&mut r, n)).with_word(&["X", "X"]).with_word(&["T", "X"]),
        Shape::Xax => s.with_constant("A", m()).with_word(&["X", "A", "X"]),
    }
}

/// A counted random instance together with the seed that produced it.
#[derive(Clone, Debug)]
pub struct GenericCount {
    pub spec: EquationSpec,
    pub seed: u64,
    pub retries: u32,
    pub report: CountReport,
}

/// A zero-dimensional ideal whose points are all simple.
pub fn looks_generic(report: &CountReport) -> bool {
    report.summary.is_zero_dimensional && report.distinct.is_some_and(|d| Some(d) == report.summary.count())
}

/// Counts `random_spec(shape, n, seed)`, moving to a derived seed when the draw is
/// degenerate, at most `max_retries` times. A draw is degenerate when it is not
/// [`looks_generic`] or, if `generic_count` is given, when its count differs from
/// the family's generic count (solutions escaping to infinity). The last attempt is
/// returned even if it is still degenerate.
pub fn count_random_generic(
    shape: Shape,
    n: usize,
    seed: u64,
    generic_count: Option<usize>,
    max_retries: u32,
    opts: &CountOptions,
) -> Result<GenericCount> {
    let mut attempt = 0;
    loop {
        let s = retry_seed(seed, attempt);
        let spec = random_spec(shape, n, s);
        let report = count_solutions_with(&spec, &CountOptions { extract: true, ..opts.clone() })?;
        let ok = looks_generic(&report) && generic_count.is_none_or(|g| report.summary.count() == Some(g));
        if ok || attempt >= max_retries {
            return Ok(GenericCount { spec, seed: s, retries: attempt, report });
        }
        attempt += 1;
    }
}

/// Every constant of `spec` is diagonal.
pub fn has_diagonal_constants(spec: &EquationSpec) -> bool {
    spec.constants().values().all(is_diagonal)
}

fn is_diagonal(m: &RatMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || num_traits::Zero::is_zero(m.get(i, j))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in ALL_SHAPES {
            assert_eq!(s.name().parse::<Shape>().unwrap(), s);
        }
        assert!("nope".parse::<Shape>().is_err());
    }

    #[test]
    fn random_specs_are_deterministic_and_valid() {
        for s in ALL_SHAPES {
            let a = random_spec(s, 2, 7);
            a.validate().unwrap();
            assert_eq!(a, random_spec(s, 2, 7));
        }
        assert!(has_diagonal_constants(&random_spec(Shape::Commuting, 3, 1)));
    }

    #[test]
    fn degree_bookkeeping() {
        assert_eq!(random_spec(Shape::Degmax, 2, 0).max_degree(), 2);
        let h = random_spec(Shape::Degmax, 2, 0).homogeneous_part();
        assert_eq!(h.words().len(), 3);
        assert!(h.constant_term().is_none());
    }
}
