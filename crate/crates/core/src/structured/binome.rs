//! Parametric solution families of `Z^2 + TZ = 0` and their strata.

use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, GenericityFailure, Result};
use crate::exactalg::{rat_charpoly, Rat, RatMatrix};
use crate::matpoly::binomial;
use crate::numlin::{eigen, CMatrix, C64};

/// One member of the stratum of solutions whose zero block has size `r`.
///
/// In an eigenbasis of `T` ordered as (kept, excluded), the member is
/// `[[D, Y], [0, 0]]` with `D = -diag(kept eigenvalues)`. `excluded` lists the `r`
/// eigenvalue indices left out of `D`; `y` is the free `(n - r) x r` block.
#[derive(Clone, Debug)]
pub struct BinomeFamilyDescriptor {
    pub t: RatMatrix,
    pub r: usize,
    pub excluded: Vec<usize>,
    pub y: RatMatrix,
}

impl BinomeFamilyDescriptor {
    pub fn n(&self) -> usize {
        self.t.rows()
    }

    /// Dimension `r (n - r)` of the stratum.
    pub fn family_dimension(&self) -> usize {
        self.r * (self.n() - self.r)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.t.cols() != n {
            return Err(Error::DimensionMismatch("T must be square".into()));
        }
        if self.r > n || self.excluded.len() != self.r || !self.excluded.iter().all_unique() || self.excluded.iter().any(|&i| i >= n) {
            return Err(Error::Invalid(format!("excluded must be {} distinct indices below {n}", self.r)));
        }
        if self.y.rows() != n - self.r || self.y.cols() != self.r {
            return Err(Error::DimensionMismatch(format!("Y must be {}x{}", n - self.r, self.r)));
        }
        Ok(())
    }

    fn kept(&self) -> Vec<usize> {
        (0..self.n()).filter(|i| !self.excluded.contains(i)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct BinomeMember {
    pub z: CMatrix,
    /// Present when `T` is diagonal, so the construction stays rational.
    pub exact: Option<RatMatrix>,
    /// `||Z^2 + TZ||_max`
    pub residual: f64,
}

fn is_diagonal(m: &RatMatrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m.get(i, j).is_zero()))
}

/// `[[D, Y], [0, 0]]` in the (kept, excluded) ordering.
fn block_form<T: Clone>(d: &[T], y: impl Fn(usize, usize) -> T, zero: T, n: usize) -> Vec<Vec<T>> {
    let kept = d.len();
    let mut rows = vec![vec![zero; n]; n];
    for i in 0..kept {
        rows[i][i] = d[i].clone();
        for j in kept..n {
            rows[i][j] = y(i, j - kept);
        }
    }
    rows
}

pub fn binome_family_emit(desc: &BinomeFamilyDescriptor) -> Result<BinomeMember> {
    desc.validate()?;
    let n = desc.n();
    let order: Vec<usize> = desc.kept().into_iter().chain(desc.excluded.iter().copied()).collect();
    let tn = CMatrix::from_rat(&desc.t);

    if is_diagonal(&desc.t) {
        let d: Vec<Rat> = desc.kept().iter().map(|&i| -desc.t.get(i, i).clone()).collect();
        let zp = RatMatrix::from_rows(block_form(&d, |i, j| desc.y.get(i, j).clone(), Rat::zero(), n))?;
        // basis vector k of the block form is e_{order[k]}
        let mut q = RatMatrix::zeros(n, n);
        for (k, &i) in order.iter().enumerate() {
            q.set(i, k, Rat::from_integer(1.into()));
        }
        let z = &(&q * &zp) * &q.transpose();
        let resid = &(&z * &z) + &(&desc.t * &z);
        let residual = if resid.is_zero() { 0.0 } else { CMatrix::from_rat(&resid).norm_max() };
        return Ok(BinomeMember { z: CMatrix::from_rat(&z), exact: Some(z), residual });
    }

    if desc.t.det()?.is_zero() || !rat_charpoly(&desc.t)?.is_squarefree() {
        return Err(Error::NotGeneric(GenericityFailure::RepeatedEigenvalues));
    }
    let eig = eigen(&tn)?;
    let d: Vec<C64> = desc.kept().iter().map(|&i| -eig.vector_values[i]).collect();
    let y = CMatrix::from_rat(&desc.y);
    let zp_rows = block_form(&d, |i, j| y.get(i, j), C64::new(0.0, 0.0), n);
    let zp = CMatrix::from_vec(n, n, zp_rows.into_iter().flatten().collect())?;
    let q = CMatrix::from_columns(&order.iter().map(|&i| eig.vectors.col(i)).collect::<Vec<_>>())?;
    let z = &(&q * &zp) * &q.inverse()?;
    let residual = (&(&z * &z) + &(&tn * &z)).norm_max();
    Ok(BinomeMember { z, exact: None, residual })
}

/// `(max_r r (n - r), number of components of that dimension)`, found by enumerating
/// the strata `r = 0..=n`, each made of `C(n, r)` affine pieces.
pub fn binome_stratum_count(n: usize) -> (usize, u128) {
    let dim = (0..=n).map(|r| r * (n - r)).max().unwrap_or(0);
    let count = (0..=n).filter(|r| r * (n - r) == dim).map(|r| binomial(n, r)).sum();
    (dim, count)
}
