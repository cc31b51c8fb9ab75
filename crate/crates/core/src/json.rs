//! Lossless JSON encodings: rationals as `"p/q"` strings, complex numbers as `{"re", "im"}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{format_rat, parse_rat, RatMatrix};
use crate::numlin::{CMatrix, C64};

/// Row lists of rational strings.
pub type RatRows = Vec<Vec<String>>;

pub fn rat_rows(m: &RatMatrix) -> RatRows {
    m.to_rows().iter().map(|r| r.iter().map(format_rat).collect()).collect()
}

pub fn parse_rat_rows(rows: &RatRows) -> Result<RatMatrix> {
    let parsed = rows.iter().map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    RatMatrix::from_rows(parsed)
}

pub fn parse_square(rows: &RatRows, n: usize, what: &str) -> Result<RatMatrix> {
    let m = parse_rat_rows(rows)?;
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch(format!("{what} is {}x{}, expected {n}x{n}", m.rows(), m.cols())));
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for JsonComplex {
    fn from(z: C64) -> Self {
        JsonComplex { re: z.re, im: z.im }
    }
}

impl From<JsonComplex> for C64 {
    fn from(z: JsonComplex) -> Self {
        C64::new(z.re, z.im)
    }
}

pub fn complex_rows(m: &CMatrix) -> Vec<Vec<JsonComplex>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(JsonComplex::from).collect()).collect()
}

pub fn parse_complex_rows(rows: &[Vec<JsonComplex>]) -> Result<CMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::DimensionMismatch("ragged matrix rows".into()));
    }
    CMatrix::from_vec(r, c, rows.iter().flatten().map(|&z| z.into()).collect())
}

pub fn complex_list(v: &[C64]) -> Vec<JsonComplex> {
    v.iter().map(|&z| z.into()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::ratio;

    #[test]
    fn rational_rows_round_trip() {
        let m = RatMatrix::from_rows(vec![vec![ratio(1, 3), ratio(-2, 1)], vec![ratio(0, 1), ratio(7, 4)]]).unwrap();
        let rows = rat_rows(&m);
        assert_eq!(rows[0][0], "1/3");
        assert_eq!(parse_rat_rows(&rows).unwrap(), m);
        assert!(parse_square(&rows, 3, "A").is_err());
    }

    #[test]
    fn complex_rows_round_trip() {
        let m = CMatrix::from_vec(1, 2, vec![C64::new(0.1, -2.5), C64::new(1e-300, 3.0)]).unwrap();
        let text = serde_json::to_string(&complex_rows(&m)).unwrap();
        let back: Vec<Vec<JsonComplex>> = serde_json::from_str(&text).unwrap();
        assert_eq!(parse_complex_rows(&back).unwrap(), m);
    }
}
