//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rat::{format_rat, rat, rat_to_f64, Rat};
use crate::error::{Error, Result};

/// Largest number of ring variables (covers 3x3 unknown matrices with room to spare).
pub const MAX_VARS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: [0; MAX_VARS], degree: 0 }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).expect("exponent overflow");
            m.degree += e;
        }
        m
    }

    pub fn exponent(&self, i: usize) -> u32 {
        u32::from(self.exps[i])
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| u32::from(e)).collect()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] += other.exps[i];
        }
        m.degree += other.degree;
        m
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] -= other.exps[i];
        }
        m.degree -= other.degree;
        m
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut m = Self::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.degree += u32::from(m.exps[i]);
        }
        m
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit mask of the variables that occur.
    pub fn support(&self) -> u32 {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (i, _)| m | (1 << i))
    }

    /// The variable index if this monomial is a pure power `x_i^e`, `e >= 1`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let s = self.support();
        (s.count_ones() == 1).then(|| s.trailing_zeros() as usize)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for i in 0..MAX_VARS {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Grevlex => match a.degree.cmp(&b.degree) {
                Ordering::Equal => {
                    for i in (0..MAX_VARS).rev() {
                        match a.exps[i].cmp(&b.exps[i]) {
                            Ordering::Equal => continue,
                            o => return o.reverse(),
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            },
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(Error::Parse(format!("unknown monomial order {other:?}"))),
        }
    }
}

/// Variable names plus the monomial order used to sort terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    order: MonomialOrder,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, order: MonomialOrder) -> Result<Arc<Ring>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(Error::Invalid(format!("ring must have 1..={MAX_VARS} variables, got {}", names.len())));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Invalid(format!("duplicate variable {n:?}")));
            }
        }
        Ok(Arc::new(Ring { names, order }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring { names: self.names.clone(), order })
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = (0..self.nvars())
            .filter(|&i| m.exponent(i) > 0)
            .map(|i| match m.exponent(i) {
                1 => self.names[i].clone(),
                e => format!("{}^{e}", self.names[i]),
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Polynomial with terms sorted in decreasing monomial order and no zero coefficients.
#[derive(Clone)]
pub struct MultiPoly {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Rat)>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring.names == other.ring.names && self.terms == other.terms
    }
}
impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{}", format_rat(&a))?;
            } else if a.is_one() {
                write!(f, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(f, "{}*{}", format_rat(&a), self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl MultiPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        MultiPoly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rat) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(), c)])
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Self::from_terms(ring, vec![(Monomial::var(i), Rat::one())])
    }

    /// Collects arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<(Monomial, Rat)>) -> Self {
        let order = ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rat)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        MultiPoly { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Rat> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Same polynomial re-sorted for a ring with another order.
    pub fn in_ring(&self, ring: &Arc<Ring>) -> Self {
        assert_eq!(ring.names, self.ring.names, "incompatible rings");
        Self::from_terms(ring, self.terms.clone())
    }

    fn merge(&self, other: &Self, sign: &Rat) -> Self {
        let order = self.ring.order;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => order.cmp(&x.0, &y.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, &b[j].1 * sign));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1 * sign;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MultiPoly { ring: self.ring.clone(), terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, &Rat::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, &rat(-1))
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    /// `c * m * self`
    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut all = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                all.push((m1.mul(m2), c1 * c2));
            }
        }
        Self::from_terms(&self.ring, all)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.ring, Rat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) > 0)
            .map(|(m, c)| {
                let e = m.exponent(var);
                (m.div(&Monomial::var(var)), c * rat(i64::from(e)))
            })
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.ring.nvars());
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.clone();
                for (i, x) in point.iter().enumerate() {
                    for _ in 0..m.exponent(i) {
                        v *= x;
                    }
                }
                v
            })
            .fold(Rat::zero(), |a, b| a + b)
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.ring.nvars());
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = Complex64::new(rat_to_f64(c), 0.0);
                for (i, x) in point.iter().enumerate() {
                    let e = m.exponent(i);
                    if e > 0 {
                        v *= x.powu(e);
                    }
                }
                v
            })
            .sum()
    }

    /// Substitutes `x_i -> x_i + shift_i`.
    pub fn translate(&self, shift: &[Rat]) -> Self {
        let ring = &self.ring;
        let mut acc = Self::zero(ring);
        for (m, c) in &self.terms {
            let mut t = Self::constant(ring, c.clone());
            for (i, s) in shift.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    let lin = Self::var(ring, i).add(&Self::constant(ring, s.clone()));
                    t = t.mul(&lin.pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<Ring> {
        Ring::new(["x", "y"], MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn grevlex_ties_broken_by_last_variable() {
        let o = MonomialOrder::Grevlex;
        let x2 = Monomial::from_exponents(&[2, 0, 0]);
        let xz = Monomial::from_exponents(&[1, 0, 1]);
        let y2 = Monomial::from_exponents(&[0, 2, 0]);
        assert_eq!(o.cmp(&x2, &y2), Ordering::Greater);
        assert_eq!(o.cmp(&y2, &xz), Ordering::Greater);
        assert_eq!(o.cmp(&Monomial::from_exponents(&[0, 0, 3]), &x2), Ordering::Greater);
    }

    #[test]
    fn lex_is_lexicographic() {
        let o = MonomialOrder::Lex;
        assert_eq!(
            o.cmp(&Monomial::from_exponents(&[1, 0]), &Monomial::from_exponents(&[0, 5])),
            Ordering::Greater
        );
    }

    #[test]
    fn arithmetic_and_display() {
        let r = xy();
        let x = MultiPoly::var(&r, 0);
        let y = MultiPoly::var(&r, 1);
        let p = x.add(&y).pow(2);
        assert_eq!(p.to_string(), "x^2 + 2*x*y + y^2");
        let q = p.sub(&x.mul(&x));
        assert_eq!(q.to_string(), "2*x*y + y^2");
        assert!(p.sub(&p).is_zero());
        assert_eq!(q.derivative(1).to_string(), "2*x + 2*y");
    }

    #[test]
    fn translate_shifts_root() {
        let r = xy();
        let x = MultiPoly::var(&r, 0);
        let p = x.sub(&MultiPoly::constant(&r, rat(3)));
        let t = p.translate(&[rat(3), rat(0)]);
        assert_eq!(t, x);
    }
}
