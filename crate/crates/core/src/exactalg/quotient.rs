//! Linear algebra in the finite-dimensional quotient ring of a zero-dimensional ideal.

use std::collections::HashMap;

use num_traits::Zero;

use super::groebner::{monomial_index, GroebnerBasis};
use super::poly::{Monomial, MultiPoly};
use super::rat::{Rat, RatMatrix};
use super::unipoly::RatUniPoly;

/// `k[x]/I` with the standard monomials as basis.
pub struct QuotientAlgebra<'a> {
    gb: &'a GroebnerBasis,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

/// Lex shape-lemma form `p(l) = 0, x_i = p_i(l)` with respect to a linear form `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeBasis {
    pub min_poly: RatUniPoly,
    pub coordinates: Vec<RatUniPoly>,
}

impl<'a> QuotientAlgebra<'a> {
    /// `None` unless the ideal is zero-dimensional.
    pub fn new(gb: &'a GroebnerBasis) -> Option<Self> {
        let basis = gb.standard_monomials()?;
        let index = monomial_index(&basis);
        Some(QuotientAlgebra { gb, basis, index })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn coords(&self, p: &MultiPoly) -> Vec<Rat> {
        let nf = self.gb.normal_form(p);
        let mut v = vec![Rat::zero(); self.dim()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    fn from_coords(&self, v: &[Rat]) -> MultiPoly {
        let terms = self.basis.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (*m, c.clone())).collect();
        MultiPoly::from_terms(self.gb.ring(), terms)
    }

    /// Coordinates of `1, l, l^2, ..., l^k` in the quotient.
    fn powers(&self, l: &MultiPoly, k: usize) -> Vec<Vec<Rat>> {
        let mut out = Vec::with_capacity(k + 1);
        let mut cur = self.gb.normal_form(&MultiPoly::constant(self.gb.ring(), Rat::from_integer(1.into())));
        for _ in 0..=k {
            out.push(self.coords(&cur));
            cur = self.gb.normal_form(&cur.mul(l));
        }
        out
    }

    /// Minimal polynomial of multiplication by `l` (monic).
    pub fn min_poly(&self, l: &MultiPoly) -> RatUniPoly {
        let d = self.dim();
        if d == 0 {
            return RatUniPoly::constant(Rat::from_integer(1.into()));
        }
        let pw = self.powers(l, d);
        for j in 1..=d {
            let cols = &pw[..=j];
            let mut m = RatMatrix::zeros(d, j + 1);
            for (c, v) in cols.iter().enumerate() {
                for (r, x) in v.iter().enumerate() {
                    m.set(r, c, x.clone());
                }
            }
            if let Some(k) = m.kernel().into_iter().next() {
                return RatUniPoly::new(k).monic();
            }
        }
        unreachable!("Cayley-Hamilton bounds the degree by the dimension")
    }

    /// Shape form with respect to `l`, if `l` separates all points of the variety
    /// (its minimal polynomial has full degree).
    pub fn shape(&self, l: &MultiPoly) -> Option<ShapeBasis> {
        let d = self.dim();
        if d == 0 {
            return None;
        }
        let min_poly = self.min_poly(l);
        if min_poly.degree() != Some(d) {
            return None;
        }
        let pw = self.powers(l, d - 1);
        let mut v = RatMatrix::zeros(d, d);
        for (c, col) in pw.iter().enumerate() {
            for (r, x) in col.iter().enumerate() {
                v.set(r, c, x.clone());
            }
        }
        let vinv = v.inverse().ok()?;
        let ring = self.gb.ring();
        let coordinates = (0..ring.nvars())
            .map(|i| {
                let target = self.coords(&MultiPoly::var(ring, i));
                let col = RatMatrix::from_vec(d, 1, target).expect("column");
                let c = vinv.try_mul(&col).expect("square system");
                RatUniPoly::new(c.entries().to_vec())
            })
            .collect();
        Some(ShapeBasis { min_poly, coordinates })
    }

    /// True when `p` is nilpotent in the quotient (`p^dim` lies in the ideal).
    pub fn is_nilpotent(&self, p: &MultiPoly) -> bool {
        let d = self.dim();
        let mut cur = self.gb.normal_form(p);
        for _ in 1..d.max(1) {
            if cur.is_zero() {
                return true;
            }
            cur = self.gb.normal_form(&cur.mul(p));
        }
        cur.is_zero()
    }

    /// Product in the quotient, returned as a normal form.
    pub fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        self.from_coords(&self.coords(&a.mul(b)))
    }
}
