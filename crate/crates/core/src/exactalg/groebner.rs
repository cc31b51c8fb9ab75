//! Buchberger's algorithm over the rationals and ideal dimension queries.
//!
//! Reduction runs on primitive integer polynomials (denominators cleared, content
//! removed) so that coefficient growth stays bounded by gcd normalization rather
//! than rational arithmetic. The reduced basis is converted back to monic
//! rational generators at the end.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, MonomialOrder, MultiPoly, Ring};
use super::rat::Rat;
use crate::error::{Error, Result};

pub const DEFAULT_PAIR_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerOptions {
    /// Maximum number of S-pair reductions before giving up.
    pub pair_budget: usize,
}

impl Default for GroebnerOptions {
    fn default() -> Self {
        GroebnerOptions { pair_budget: DEFAULT_PAIR_BUDGET }
    }
}

/// Counters from a Buchberger run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroebnerStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub pairs_discarded: usize,
}

/// Integer polynomial with terms in ascending monomial order (leading term last).
#[derive(Clone, Debug)]
struct IntPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl IntPoly {
    fn from_rational(p: &MultiPoly) -> Self {
        let l = p.terms().iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms = p.terms().iter().rev().map(|(m, c)| (*m, c.numer() * (&l / c.denom()))).collect();
        let mut out = IntPoly { terms };
        out.make_primitive();
        out
    }

    fn to_monic_rational(&self, ring: &Arc<Ring>) -> MultiPoly {
        let lc = &self.terms.last().expect("non-zero polynomial").1;
        let terms = self.terms.iter().rev().map(|(m, c)| (*m, Rat::new(c.clone(), lc.clone()))).collect();
        MultiPoly::from_terms(ring, terms)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Monomial, BigInt) {
        self.terms.last().expect("non-zero polynomial")
    }

    fn make_primitive(&mut self) {
        let g = content(self.terms.iter().map(|(_, c)| c));
        let flip = self.terms.last().is_some_and(|(_, c)| c.is_negative());
        if g.is_zero() {
            return;
        }
        if !g.is_one() || flip {
            let g = if flip { -g } else { g };
            for (_, c) in &mut self.terms {
                *c = &*c / &g;
            }
        }
    }
}

fn content<'a>(coeffs: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for c in coeffs {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// `a * p - b * shift * q` over ascending term lists.
fn combine(
    order: MonomialOrder,
    p: &[(Monomial, BigInt)],
    a: &BigInt,
    q: &[(Monomial, BigInt)],
    b: &BigInt,
    shift: &Monomial,
) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let (mut i, mut j) = (0, 0);
    let a_one = a.is_one();
    while i < p.len() || j < q.len() {
        let qm = q.get(j).map(|(m, _)| m.mul(shift));
        let ord = match (p.get(i), qm.as_ref()) {
            (Some((pm, _)), Some(qm)) => order.cmp(pm, qm),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                let c = if a_one { p[i].1.clone() } else { &p[i].1 * a };
                out.push((p[i].0, c));
                i += 1;
            }
            Ordering::Greater => {
                out.push((qm.unwrap(), -(&q[j].1 * b)));
                j += 1;
            }
            Ordering::Equal => {
                let c = &p[i].1 * a - &q[j].1 * b;
                if !c.is_zero() {
                    out.push((p[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine {
    order: MonomialOrder,
    polys: Vec<IntPoly>,
    active: Vec<usize>,
}

impl Engine {
    /// Full reduction modulo the active generators (optionally skipping one).
    fn reduce(&self, p: IntPoly, skip: Option<usize>) -> IntPoly {
        let mut cur = p.terms;
        let mut rem: Vec<(Monomial, BigInt)> = Vec::new();
        let mut steps = 0usize;
        while let Some((m, c)) = cur.last().cloned() {
            let reducer = self
                .active
                .iter()
                .filter(|&&k| Some(k) != skip)
                .map(|&k| &self.polys[k])
                .find(|g| g.lead().0.divides(&m));
            match reducer {
                Some(g) => {
                    let (gm, gc) = g.lead();
                    let shift = m.div(gm);
                    let d = c.gcd(gc);
                    let a = gc / &d;
                    let b = &c / &d;
                    let (a, b) = if a.is_negative() { (-a, -b) } else { (a, b) };
                    let rest = &cur[..cur.len() - 1];
                    cur = combine(self.order, rest, &a, &g.terms[..g.terms.len() - 1], &b, &shift);
                    if !a.is_one() {
                        for (_, v) in &mut rem {
                            *v *= &a;
                        }
                    }
                    steps += 1;
                    if steps.is_multiple_of(8) {
                        let g = content(cur.iter().chain(rem.iter()).map(|(_, c)| c));
                        if !g.is_zero() && !g.is_one() {
                            for (_, v) in cur.iter_mut().chain(rem.iter_mut()) {
                                *v = &*v / &g;
                            }
                        }
                    }
                }
                None => {
                    rem.push(cur.pop().unwrap());
                }
            }
        }
        rem.reverse();
        let mut out = IntPoly { terms: rem };
        out.make_primitive();
        out
    }

    fn s_poly(&self, i: usize, j: usize) -> IntPoly {
        let (f, g) = (&self.polys[i], &self.polys[j]);
        let (fm, fc) = f.lead();
        let (gm, gc) = g.lead();
        let l = fm.lcm(gm);
        let d = fc.gcd(gc);
        let a = gc / &d;
        let b = fc / &d;
        let sf = l.div(fm);
        let sg = l.div(gm);
        let fr: Vec<_> = f.terms[..f.terms.len() - 1].iter().map(|(m, c)| (m.mul(&sf), c.clone())).collect();
        let terms = combine(self.order, &fr, &a, &g.terms[..g.terms.len() - 1], &b, &sg);
        let mut out = IntPoly { terms };
        out.make_primitive();
        out
    }

    /// Gebauer–Möller installation of a new generator; implements the product
    /// criterion (coprime leading monomials) and the chain criterion.
    fn update(&mut self, pairs: &mut Vec<Pair>, h: IntPoly, stats: &mut GroebnerStats) {
        let hi = self.polys.len();
        let hm = h.lead().0;
        self.polys.push(h);

        let mut candidates: Vec<Pair> =
            self.active.iter().map(|&g| Pair { i: g, j: hi, lcm: self.polys[g].lead().0.lcm(&hm) }).collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let gm = self.polys[p.i].lead().0;
            let coprime = gm.is_coprime(&hm);
            let dominated = candidates.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            } else {
                stats.pairs_discarded += 1;
            }
        }
        let before = kept.len();
        kept.retain(|p| !self.polys[p.i].lead().0.is_coprime(&hm));
        stats.pairs_discarded += before - kept.len();

        let before = pairs.len();
        pairs.retain(|p| {
            if !hm.divides(&p.lcm) {
                return true;
            }
            let li = self.polys[p.i].lead().0.lcm(&hm);
            let lj = self.polys[p.j].lead().0.lcm(&hm);
            li == p.lcm || lj == p.lcm
        });
        stats.pairs_discarded += before - pairs.len();
        pairs.extend(kept);

        self.active.retain(|&g| !hm.divides(&self.polys[g].lead().0));
        self.active.push(hi);
    }
}

/// Reduced Gröbner basis: monic, inter-reduced, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    generators: Vec<MultiPoly>,
    stats: GroebnerStats,
}

pub fn buchberger(generators: &[MultiPoly], order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(generators, order, &GroebnerOptions::default())
}

pub fn buchberger_with(generators: &[MultiPoly], order: MonomialOrder, opts: &GroebnerOptions) -> Result<GroebnerBasis> {
    let first = generators.first().ok_or_else(|| Error::Invalid("empty generator list".into()))?;
    if generators.iter().any(|g| g.ring().names() != first.ring().names()) {
        return Err(Error::Invalid("generators live in different rings".into()));
    }
    let ring = first.ring().with_order(order);
    let mut engine = Engine { order, polys: Vec::new(), active: Vec::new() };
    let mut pairs: Vec<Pair> = Vec::new();
    let mut stats = GroebnerStats::default();

    let unit = |ring: &Arc<Ring>, stats| GroebnerBasis {
        ring: ring.clone(),
        generators: vec![MultiPoly::constant(ring, Rat::one())],
        stats,
    };

    let mut inputs: Vec<IntPoly> =
        generators.iter().filter(|g| !g.is_zero()).map(|g| IntPoly::from_rational(&g.in_ring(&ring))).collect();
    inputs.sort_by(|a, b| order.cmp(&a.lead().0, &b.lead().0));
    for f in inputs {
        let h = engine.reduce(f, None);
        if h.is_zero() {
            continue;
        }
        if h.lead().0.is_one() {
            return Ok(unit(&ring, stats));
        }
        engine.update(&mut pairs, h, &mut stats);
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm.degree().cmp(&b.lcm.degree()).then_with(|| order.cmp(&a.lcm, &b.lcm)).then(a.j.cmp(&b.j))
            })
            .unwrap();
        let pair = pairs.swap_remove(idx);
        if stats.pairs_reduced >= opts.pair_budget {
            return Err(Error::BudgetExceeded { budget: opts.pair_budget });
        }
        stats.pairs_reduced += 1;
        let s = engine.s_poly(pair.i, pair.j);
        let h = engine.reduce(s, None);
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        if h.lead().0.is_one() {
            return Ok(unit(&ring, stats));
        }
        engine.update(&mut pairs, h, &mut stats);
    }

    // inter-reduce the (already minimal) active set
    let active = engine.active.clone();
    let mut reduced = Vec::with_capacity(active.len());
    for &k in &active {
        let r = engine.reduce(engine.polys[k].clone(), Some(k));
        reduced.push(r);
    }
    let mut gens: Vec<MultiPoly> = reduced.iter().map(|p| p.to_monic_rational(&ring)).collect();
    gens.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ok(GroebnerBasis { ring, generators: gens, stats })
}

/// Dimension of the quotient ring as a vector space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientDimension {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSummary {
    pub is_zero_dimensional: bool,
    pub hilbert_dimension: usize,
    pub quotient_dimension: QuotientDimension,
}

impl IdealSummary {
    pub fn count(&self) -> Option<usize> {
        match self.quotient_dimension {
            QuotientDimension::Finite(n) => Some(n),
            QuotientDimension::Infinite => None,
        }
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn stats(&self) -> GroebnerStats {
        self.stats
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().map(|g| *g.leading_monomial().unwrap()).collect()
    }

    /// True when the ideal is the whole ring (no solutions at all).
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.leading_monomial().unwrap().is_one())
    }

    /// Exact remainder of `p` modulo the basis.
    pub fn normal_form(&self, p: &MultiPoly) -> MultiPoly {
        let order = self.order();
        let mut cur = p.in_ring(&self.ring);
        let mut rem: Vec<(Monomial, Rat)> = Vec::new();
        while let Some((m, c)) = cur.terms().first().cloned() {
            match self.generators.iter().find(|g| g.leading_monomial().unwrap().divides(&m)) {
                Some(g) => {
                    let shift = m.div(g.leading_monomial().unwrap());
                    cur = cur.sub(&g.mul_term(&shift, &c));
                }
                None => {
                    rem.push((m, c));
                    cur = MultiPoly::from_terms(&self.ring, cur.terms()[1..].to_vec());
                }
            }
        }
        let _ = order;
        MultiPoly::from_terms(&self.ring, rem)
    }

    pub fn contains(&self, p: &MultiPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Every S-polynomial of a pair of generators reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let g = &self.generators;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let (mi, mj) = (g[i].leading_monomial().unwrap(), g[j].leading_monomial().unwrap());
                let l = mi.lcm(mj);
                let s = g[i].mul_term(&l.div(mi), &Rat::one()).sub(&g[j].mul_term(&l.div(mj), &Rat::one()));
                if !self.contains(&s) {
                    return false;
                }
            }
        }
        true
    }

    /// No term of any generator is divisible by another generator's leading monomial.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.generators.iter().enumerate().all(|(i, g)| {
            g.leading_coefficient().is_some_and(One::is_one)
                && g.terms().iter().all(|(m, _)| lms.iter().enumerate().all(|(j, l)| i == j || !l.divides(m)))
        })
    }

    pub fn hilbert_dimension(&self) -> usize {
        let n = self.ring.nvars();
        if self.is_unit() {
            return 0;
        }
        let supports: Vec<u32> = self.leading_monomials().iter().map(Monomial::support).collect();
        let mut best = 0;
        for s in 0u32..(1 << n) {
            let size = s.count_ones() as usize;
            if size > best && supports.iter().all(|&sup| sup & !s != 0) {
                best = size;
            }
        }
        best
    }

    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        let n = self.ring.nvars();
        let mut seen = vec![false; n];
        for m in self.leading_monomials() {
            if let Some(v) = m.pure_power_of() {
                seen[v] = true;
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// Monomials divisible by no leading monomial, in increasing order; `None`
    /// when the quotient is infinite-dimensional.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        if !self.is_zero_dimensional() {
            return None;
        }
        if self.is_unit() {
            return Some(Vec::new());
        }
        let lms = self.leading_monomials();
        let n = self.ring.nvars();
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut queue = VecDeque::from([Monomial::one()]);
        let mut out = Vec::new();
        while let Some(m) = queue.pop_front() {
            if !seen.insert(m) || lms.iter().any(|l| l.divides(&m)) {
                continue;
            }
            out.push(m);
            for v in 0..n {
                queue.push_back(m.mul(&Monomial::var(v)));
            }
        }
        let order = self.order();
        out.sort_by(|a, b| order.cmp(a, b));
        Some(out)
    }

    pub fn summary(&self) -> IdealSummary {
        quotient_dimension(self)
    }
}

pub fn quotient_dimension(gb: &GroebnerBasis) -> IdealSummary {
    match gb.standard_monomials() {
        Some(sm) => IdealSummary {
            is_zero_dimensional: true,
            hilbert_dimension: 0,
            quotient_dimension: QuotientDimension::Finite(sm.len()),
        },
        None => IdealSummary {
            is_zero_dimensional: false,
            hilbert_dimension: gb.hilbert_dimension(),
            quotient_dimension: QuotientDimension::Infinite,
        },
    }
}

/// Index lookup for standard monomials.
pub(crate) fn monomial_index(sm: &[Monomial]) -> HashMap<Monomial, usize> {
    sm.iter().enumerate().map(|(i, m)| (*m, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_poly;
    use crate::exactalg::rat::rat;
    use proptest::prelude::*;

    fn ring(names: &[&str]) -> Arc<Ring> {
        Ring::new(names.iter().copied(), MonomialOrder::Grevlex).unwrap()
    }

    fn polys(r: &Arc<Ring>, src: &[&str]) -> Vec<MultiPoly> {
        src.iter().map(|s| parse_poly(r, s).unwrap()).collect()
    }

    #[test]
    fn monomial_ideal_is_already_a_basis() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&polys(&r, &["x^2", "y^3"]), MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.generators(), &polys(&r, &["x^2", "y^3"])[..]);
        let sm = gb.standard_monomials().unwrap();
        let names: Vec<String> = sm.iter().map(|m| r.format_monomial(m)).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["1", "x", "x*y", "x*y^2", "y", "y^2"]);
        assert_eq!(gb.summary().count(), Some(6));
    }

    #[test]
    fn linear_ideal() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&polys(&r, &["x - y", "x + y"]), MonomialOrder::Grevlex).unwrap();
        let mut gens: Vec<String> = gb.generators().iter().map(ToString::to_string).collect();
        gens.sort();
        assert_eq!(gens, vec!["x", "y"]);
        assert_eq!(gb.summary().count(), Some(1));
    }

    #[test]
    fn twenty_five_solutions_with_multiplicity() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&polys(&r, &["y^2 - x^5", "x^2 - y^5"]), MonomialOrder::Grevlex).unwrap();
        assert!(gb.is_groebner());
        assert!(gb.is_reduced());
        assert_eq!(gb.summary().count(), Some(25));
        let lex = buchberger(&polys(&r, &["y^2 - x^5", "x^2 - y^5"]), MonomialOrder::Lex).unwrap();
        assert_eq!(lex.summary().count(), Some(25));
    }

    #[test]
    fn line_has_dimension_one() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&polys(&r, &["x"]), MonomialOrder::Grevlex).unwrap();
        let s = gb.summary();
        assert!(!s.is_zero_dimensional);
        assert_eq!(s.hilbert_dimension, 1);
        assert_eq!(s.quotient_dimension, QuotientDimension::Infinite);
    }

    #[test]
    fn inconsistent_system_gives_unit_ideal() {
        let r = ring(&["x", "y"]);
        let gb = buchberger(&polys(&r, &["x*y - 1", "x"]), MonomialOrder::Grevlex).unwrap();
        assert!(gb.is_unit());
        assert_eq!(gb.summary().count(), Some(0));
    }

    #[test]
    fn budget_guard_trips() {
        let r = ring(&["x", "y", "z"]);
        let gens = polys(&r, &["x^2 + y*z - 1", "y^2 - x*z + 2", "z^2 + x*y - 3"]);
        let err = buchberger_with(&gens, MonomialOrder::Grevlex, &GroebnerOptions { pair_budget: 1 }).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 1 }));
    }

    #[test]
    fn empty_generator_list_is_rejected() {
        assert!(buchberger(&[], MonomialOrder::Grevlex).is_err());
    }

    fn small_system() -> impl Strategy<Value = Vec<Vec<(u32, u32, i64)>>> {
        let term = (0u32..3, 0u32..3, -3i64..=3);
        prop::collection::vec(prop::collection::vec(term, 1..4), 1..4)
    }

    fn build(r: &Arc<Ring>, spec: &[Vec<(u32, u32, i64)>]) -> Vec<MultiPoly> {
        spec.iter()
            .map(|ts| {
                MultiPoly::from_terms(r, ts.iter().map(|&(a, b, c)| (Monomial::from_exponents(&[a, b]), rat(c))).collect())
            })
            .filter(|p| !p.is_zero())
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn inputs_reduce_to_zero_and_basis_is_idempotent(spec in small_system()) {
            let r = ring(&["x", "y"]);
            let gens = build(&r, &spec);
            prop_assume!(!gens.is_empty());
            let gb = buchberger(&gens, MonomialOrder::Grevlex).unwrap();
            for g in &gens {
                prop_assert!(gb.contains(g));
            }
            prop_assert!(gb.is_groebner());
            prop_assert!(gb.is_reduced());
            let again = buchberger(gb.generators(), MonomialOrder::Grevlex).unwrap();
            prop_assert_eq!(again.generators(), gb.generators());
        }

        #[test]
        fn count_invariant_under_unimodular_recombination(a in -2i64..=2, b in -2i64..=2) {
            // [[1, a], [b, 1 + a*b]] has determinant 1
            let r = ring(&["x", "y"]);
            let f = polys(&r, &["x^2 - 2*y + 1", "y^2 + x - 3"]);
            let s = |k: i64| MultiPoly::constant(&r, rat(k));
            let g1 = f[0].add(&f[1].mul(&s(a)));
            let g2 = f[0].mul(&s(b)).add(&f[1].mul(&s(1 + a * b)));
            let base = buchberger(&f, MonomialOrder::Grevlex).unwrap().summary();
            let mixed = buchberger(&[g1, g2], MonomialOrder::Grevlex).unwrap().summary();
            prop_assert_eq!(base, mixed);
            prop_assert_eq!(base.count(), Some(4));
        }
    }
}
