//! Univariate polynomials over the rationals.

use std::fmt;

use num_traits::{One, Zero};

use super::rat::{format_rat, rat, Rat, RatMatrix};
use crate::error::{Error, Result};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatUniPoly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for RatUniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(format_rat).collect();
        write!(f, "RatUniPoly{c:?}")
    }
}

impl RatUniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatUniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        RatUniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rat) -> Self {
        Self::new(vec![-r.clone(), Rat::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * rat(i as i64)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[top - dd + j] -= &c * d;
                }
                quot[top - dd] = c;
            }
            rem.pop();
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("non-zero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Lagrange interpolation through `(x_i, y_i)`; nodes must be distinct.
    pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> Self {
        let mut acc = Self::zero();
        for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Self::constant(Rat::one());
            let mut denom = Rat::one();
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&Self::linear_root(xj));
                    denom *= xi - xj;
                }
            }
            acc = acc.add(&basis.scale(&(yi / denom)));
        }
        acc
    }

    /// `p(x + shift)`
    pub fn shift(&self, shift: &Rat) -> Self {
        let step = Self::new(vec![shift.clone(), Rat::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| acc.mul(&step).add(&Self::constant(c.clone())))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree().unwrap_or(0) == 0
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd of a non-zero polynomial").0.monic()
    }

    /// Yun's algorithm: monic `q_1, q_2, ...` with `self = lc * prod q_j^j`, each
    /// `q_j` squarefree and pairwise coprime. Entry `j - 1` holds `q_j`.
    pub fn squarefree_decomposition(&self) -> Vec<Self> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).expect("non-zero").0;
        let mut c = df.div_rem(&a0).expect("non-zero").0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            b = b.div_rem(&a).expect("non-zero").0;
            c = d.div_rem(&a).expect("non-zero").0;
            d = c.sub(&b.derivative());
            out.push(a.monic());
        }
        while out.last().is_some_and(|q| q.degree() == Some(0)) {
            out.pop();
        }
        out
    }
}

/// Exact `det(t I - M)` by interpolation at `t = 0..=n`.
pub fn rat_charpoly(m: &RatMatrix) -> Result<RatUniPoly> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch("characteristic polynomial of a non-square matrix".into()));
    }
    let d = m.rows();
    let xs: Vec<Rat> = (0..=d as i64).map(rat).collect();
    let ys = xs.iter().map(|t| (&RatMatrix::identity(d).scale(t) - m).det()).collect::<Result<Vec<_>>>()?;
    Ok(RatUniPoly::interpolate(&xs, &ys))
}

/// Resultant of two non-zero polynomials as the determinant of their Sylvester matrix.
pub fn rat_resultant(p: &RatUniPoly, q: &RatUniPoly) -> Result<Rat> {
    let m = p.degree().ok_or(Error::ZeroPolynomial)?;
    let n = q.degree().ok_or(Error::ZeroPolynomial)?;
    if m + n == 0 {
        return Ok(Rat::one());
    }
    let size = m + n;
    let mut s = RatMatrix::zeros(size, size);
    // rows hold descending coefficients, shifted right per row
    for r in 0..n {
        for (k, c) in p.coeffs().iter().rev().enumerate() {
            s.set(r, r + k, c.clone());
        }
    }
    for r in 0..m {
        for (k, c) in q.coeffs().iter().rev().enumerate() {
            s.set(n + r, r + k, c.clone());
        }
    }
    s.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::ratio;
    use proptest::prelude::*;

    #[test]
    fn charpoly_of_companion_matrix() {
        // companion of t^3 - 2t + 5
        let c = RatMatrix::from_i64(&[&[0, 0, -5], &[1, 0, 2], &[0, 1, 0]]);
        assert_eq!(rat_charpoly(&c).unwrap(), RatUniPoly::from_i64(&[5, -2, 0, 1]));
    }

    #[test]
    fn yun_splits_multiplicities() {
        // (x - 1) (x + 2)^3
        let f = RatUniPoly::from_i64(&[-1, 1]).mul(&RatUniPoly::from_i64(&[2, 1]).mul(&RatUniPoly::from_i64(&[2, 1])).mul(&RatUniPoly::from_i64(&[2, 1])));
        let parts = f.squarefree_decomposition();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], RatUniPoly::from_i64(&[-1, 1]));
        assert_eq!(parts[1].degree(), Some(0));
        assert_eq!(parts[2], RatUniPoly::from_i64(&[2, 1]));
        assert_eq!(f.squarefree_part(), RatUniPoly::from_i64(&[-2, 1, 1]));
    }

    proptest! {
        #[test]
        fn yun_reassembles(roots in prop::collection::vec((-3i64..=3, 1usize..=3), 1..4)) {
            let f = roots.iter().fold(RatUniPoly::constant(rat(1)), |acc, &(r, m)| {
                (0..m).fold(acc, |a, _| a.mul(&RatUniPoly::from_i64(&[-r, 1])))
            });
            let parts = f.squarefree_decomposition();
            let back = parts.iter().enumerate().fold(RatUniPoly::constant(rat(1)), |acc, (j, q)| {
                (0..=j).fold(acc, |a, _| a.mul(q))
            });
            prop_assert_eq!(back, f.monic());
            for q in &parts {
                prop_assert!(q.is_squarefree());
            }
        }
    }

    #[test]
    fn resultant_shared_root_vanishes() {
        let p = RatUniPoly::from_i64(&[-1, 0, 1]);
        let q = RatUniPoly::from_i64(&[-1, 1]);
        assert_eq!(rat_resultant(&p, &q).unwrap(), rat(0));
    }

    #[test]
    fn resultant_against_linear_is_evaluation() {
        // Res(p, x - a) = (-1)^deg p * p(a) ... for monic linear q: p(2) = 3
        let p = RatUniPoly::from_i64(&[-1, 0, 1]);
        let q = RatUniPoly::from_i64(&[-2, 1]);
        assert_eq!(rat_resultant(&p, &q).unwrap(), rat(3));
    }

    #[test]
    fn resultant_with_constant_one() {
        let p = RatUniPoly::from_i64(&[-1, -1, 0, 0, 1]);
        let q = RatUniPoly::from_i64(&[1]);
        assert_eq!(rat_resultant(&p, &q).unwrap(), rat(1));
    }

    #[test]
    fn resultant_of_zero_polynomial_errors() {
        let p = RatUniPoly::from_i64(&[1, 1]);
        assert!(matches!(rat_resultant(&p, &RatUniPoly::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = RatUniPoly::new(vec![ratio(1, 3), rat(-2), rat(0), rat(5)]);
        let xs: Vec<Rat> = (0..4).map(rat).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(RatUniPoly::interpolate(&xs, &ys), p);
    }

    #[test]
    fn shift_matches_evaluation() {
        let p = RatUniPoly::from_i64(&[1, 2, 3]);
        let s = p.shift(&rat(2));
        assert_eq!(s.eval(&rat(1)), p.eval(&rat(3)));
    }

    fn small_poly() -> impl Strategy<Value = RatUniPoly> {
        prop::collection::vec(-3i64..=3, 1..5).prop_map(|c| RatUniPoly::from_i64(&c))
    }

    proptest! {
        #[test]
        fn resultant_zero_iff_common_factor(p in small_poly(), q in small_poly()) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            let res = rat_resultant(&p, &q).unwrap();
            let g = p.gcd(&q);
            prop_assert_eq!(res.is_zero(), g.degree().unwrap_or(0) > 0);
        }
    }
}
