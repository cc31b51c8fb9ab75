//! Complex univariate polynomials and simultaneous root finding.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use super::cmatrix::{c64, C64};
use crate::error::{Error, Result};
use crate::exactalg::{rat_to_f64, RatUniPoly};

/// Ascending complex coefficients; trailing exact zeros are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct CUniPoly {
    coeffs: Vec<C64>,
}

impl CUniPoly {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CUniPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| c64(x, 0.0)).collect())
    }

    pub fn from_rat(p: &RatUniPoly) -> Self {
        Self::new(p.coeffs().iter().map(|c| c64(rat_to_f64(c), 0.0)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut c = vec![c64(1.0, 0.0)];
        for r in roots {
            let mut next = vec![C64::zero(); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            c = next;
        }
        Self::new(c)
    }

    /// Drops leading coefficients below `rel_tol` times the largest one.
    pub fn trimmed(&self, rel_tol: f64) -> Self {
        let scale = self.scale();
        let mut c = self.coeffs.clone();
        while c.last().is_some_and(|z| z.norm() <= rel_tol * scale) {
            c.pop();
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C64 {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest coefficient magnitude.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::zero(), |acc, c| acc * z + c)
    }

    /// `p(z)` together with `p'(z)`.
    pub fn eval_with_derivative(&self, z: C64) -> (C64, C64) {
        let mut p = C64::zero();
        let mut dp = C64::zero();
        for c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `|p(z)| / sum |c_i| |z|^i`, the backward error of `z` as a root.
    pub fn relative_residual(&self, z: C64) -> f64 {
        let r = z.norm();
        let denom = self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm());
        if denom == 0.0 {
            0.0
        } else {
            self.eval(z).norm() / denom
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![C64::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale_by(&self, s: C64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `p(x + s)`
    pub fn shift(&self, s: C64) -> Self {
        let step = Self::new(vec![s, c64(1.0, 0.0)]);
        self.coeffs.iter().rev().fold(Self::new(Vec::new()), |acc, c| acc.mul(&step).add(&Self::new(vec![*c])))
    }

    /// Interpolates a polynomial of degree `< nodes` from samples on the circle of
    /// radius `radius`: `f(radius * w^j)` with `w = exp(2 pi i / nodes)`.
    pub fn from_circle_samples(samples: &[C64], radius: f64) -> Self {
        let n = samples.len();
        let coeffs = (0..n)
            .map(|j| {
                let s: C64 = samples
                    .iter()
                    .enumerate()
                    .map(|(k, v)| v * C64::from_polar(1.0, -2.0 * PI * (j * k) as f64 / n as f64))
                    .sum();
                s / (n as f64 * radius.powi(j as i32))
            })
            .collect();
        Self::new(coeffs)
    }
}

/// Roots of a polynomial with their minimum pairwise separation.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<C64>,
    pub pairwise_min_separation: f64,
    /// Largest backward error over the roots.
    pub max_residual: f64,
}

impl RootSet {
    fn new(roots: Vec<C64>, p: &CUniPoly) -> Self {
        let mut sep = f64::INFINITY;
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                sep = sep.min((roots[i] - roots[j]).norm());
            }
        }
        if roots.len() < 2 {
            sep = 0.0;
        }
        let max_residual = roots.iter().map(|z| p.relative_residual(*z)).fold(0.0, f64::max);
        RootSet { roots, pairwise_min_separation: sep, max_residual }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

pub const ABERTH_MAX_ITER: usize = 1000;
/// Rotation of the starting circle, chosen irrational so no start lies on a symmetry axis.
const START_ANGLE: f64 = 0.4;
const START_ANGLE_STEP: f64 = std::f64::consts::SQRT_2;

/// All roots of `p`, with multiplicity, by Aberth–Ehrlich iteration.
pub fn aberth_roots(p: &CUniPoly) -> Result<RootSet> {
    aberth_roots_tol(p, super::ROOT_RESIDUAL_TOL)
}

pub fn aberth_roots_tol(p: &CUniPoly, residual_tol: f64) -> Result<RootSet> {
    let d = match p.degree() {
        None | Some(0) => return Err(Error::Invalid("root finding needs degree at least 1".into())),
        Some(d) => d,
    };
    let lead = p.coeffs[d];
    // zero roots split off exactly
    let zeros = p.coeffs.iter().take_while(|c| c.is_zero()).count();
    let q = CUniPoly::new(p.coeffs[zeros..].to_vec());
    let m = d - zeros;
    let mut roots = vec![C64::zero(); zeros];
    if m == 0 {
        return Ok(RootSet::new(roots, p));
    }

    let cauchy = 1.0 + q.coeffs[..m].iter().map(|c| (c / lead).norm()).fold(0.0, f64::max);
    // geometric mean of root moduli is a better radius than the Cauchy bound itself
    let gm = ((q.coeffs[0] / lead).norm()).powf(1.0 / m as f64);
    let radius = if gm.is_finite() && gm > 0.0 { gm.min(cauchy) } else { cauchy };
    let mut z: Vec<C64> = (0..m)
        .map(|j| C64::from_polar(radius, 2.0 * PI * j as f64 / m as f64 + START_ANGLE + START_ANGLE_STEP / m as f64))
        .collect();
    let mut done = vec![false; m];
    let mut iterations = 0;
    while iterations < ABERTH_MAX_ITER && done.iter().any(|d| !d) {
        iterations += 1;
        for i in 0..m {
            if done[i] {
                continue;
            }
            let (v, dv) = q.eval_with_derivative(z[i]);
            if v.is_zero() {
                done[i] = true;
                continue;
            }
            let ratio = v / dv;
            let s: C64 = (0..m).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (C64::new(1.0, 0.0) - ratio * s);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() <= 1e-15 * z[i].norm().max(1.0) {
                done[i] = true;
            }
        }
    }
    for zi in z.iter_mut() {
        polish(&q, zi);
    }
    roots.extend(z);
    let set = RootSet::new(roots, p);
    // clustered roots stall Aberth at about sqrt(eps); the backward error still certifies them
    if set.max_residual > residual_tol {
        return Err(Error::NoConvergence { iterations, residual: set.max_residual });
    }
    Ok(set)
}

fn polish(p: &CUniPoly, z: &mut C64) {
    for _ in 0..3 {
        let before = p.eval(*z).norm();
        let (v, dv) = p.eval_with_derivative(*z);
        if dv.is_zero() || v.is_zero() {
            return;
        }
        let cand = *z - v / dv;
        if p.eval(cand).norm() < before {
            *z = cand;
        } else {
            return;
        }
    }
}

/// Groups roots lying within `tol` (relative to `max(1, |z|)`) of each other.
pub fn cluster_roots(roots: &[Complex64], tol: f64) -> Vec<(C64, usize)> {
    let mut clusters: Vec<(Vec<C64>, C64)> = Vec::new();
    for &r in roots {
        match clusters.iter_mut().find(|(_, c)| (c - r).norm() <= tol * r.norm().max(1.0)) {
            Some((members, centre)) => {
                members.push(r);
                *centre = members.iter().sum::<C64>() / members.len() as f64;
            }
            None => clusters.push((vec![r], r)),
        }
    }
    clusters.into_iter().map(|(m, c)| (c, m.len())).collect()
}
