//! Floating-point matrix exponential and a numerical check of
//! `Ad_{exp(tX)} = exp(t ad_X)` on faithful matrix models.
//!
//! This is the only module that uses floating point. Tolerances are
//! explicit; the defaults below are used by the CLI and the test-suite.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{generate_model, LieAlgebra};

/// Series cutoff used by `matrix_exp` callers that do not choose one.
pub const DEFAULT_SERIES_TOL: f64 = 1e-15;
/// Acceptance bound for `ad_exp_residual`.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-8;

const MAX_SERIES_TERMS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct FloatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl FloatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::BadParameter("matrix entries must be finite".into()));
        }
        Ok(FloatMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        FloatMatrix::new(rows.len(), cols, data).expect("well-formed rows")
    }

    pub fn zeros(n: usize) -> Self {
        FloatMatrix {
            rows: n,
            cols: n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn scale(&self, s: f64) -> Self {
        FloatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        FloatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![0.0; self.data.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[c * self.rows + r] = self.get(r, c);
            }
        }
        FloatMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimensions");
        let mut out = vec![0.0; self.rows * o.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0.0 {
                    continue;
                }
                for c in 0..o.cols {
                    out[r * o.cols + c] += a * o.get(k, c);
                }
            }
        }
        FloatMatrix {
            rows: self.rows,
            cols: o.cols,
            data: out,
        }
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `exp(A)` by scaling and squaring of the Taylor series.
///
/// `A` is scaled by `2^-s` so that `||A 2^-s||_inf <= 1/2`; the series is
/// summed until a term has norm below `tol * 2^-s`; the result is squared `s`
/// times. With the scaled norm at most 1/2 the neglected tail is bounded by
/// the last term, so the truncation error of the scaled exponential is below
/// `2 tol 2^-s` and that of the result is of order `tol * ||exp(A)||`, plus
/// floating-point roundoff.
pub fn matrix_exp(a: &FloatMatrix, tol: f64) -> Result<FloatMatrix> {
    if a.rows != a.cols {
        return Err(Error::NonSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if !(tol > 0.0) {
        return Err(Error::BadParameter(format!("tolerance must be positive (got {tol})")));
    }
    let n = a.rows;
    let norm = a.norm_inf();
    let mut s = 0u32;
    while norm / 2f64.powi(s as i32) > 0.5 {
        s += 1;
    }
    let scale = 2f64.powi(-(s as i32));
    let b = a.scale(scale);
    let cutoff = tol * scale;
    let mut sum = FloatMatrix::identity(n);
    let mut term = FloatMatrix::identity(n);
    for k in 1..=MAX_SERIES_TERMS {
        term = term.mul(&b).scale(1.0 / k as f64);
        sum = sum.add(&term);
        if term.norm_inf() < cutoff {
            break;
        }
    }
    for _ in 0..s {
        sum = sum.mul(&sum);
    }
    Ok(sum)
}

/// Models that ship a faithful matrix realization.
pub const REALIZED_MODELS: &[&str] = &["so3", "sl2", "su2", "heis3", "gl:n"];

fn unit_matrix(n: usize, r: usize, c: usize) -> Vec<f64> {
    let mut v = vec![0.0; n * n];
    v[r * n + c] = 1.0;
    v
}

/// Complex 2x2 matrix `[[a, b], [c, d]]` (pairs are `(re, im)`) as a real 4x4 block matrix.
fn complex_as_real(entries: [[(f64, f64); 2]; 2]) -> Vec<f64> {
    let mut out = vec![0.0; 16];
    for (r, row) in entries.iter().enumerate() {
        for (c, &(re, im)) in row.iter().enumerate() {
            out[(2 * r) * 4 + 2 * c] = re;
            out[(2 * r) * 4 + 2 * c + 1] = -im;
            out[(2 * r + 1) * 4 + 2 * c] = im;
            out[(2 * r + 1) * 4 + 2 * c + 1] = re;
        }
    }
    out
}

/// Images of the model's basis under its matrix realization.
///
/// so3: 3x3 skew-symmetric generators; sl2: 2x2 traceless; su2: 2x2
/// anti-Hermitian matrices written as real 4x4 blocks; heis3: 3x3 strictly
/// upper triangular; gl:n: the matrix units themselves.
pub fn matrix_realization(model: &str) -> Result<(LieAlgebra, Vec<FloatMatrix>)> {
    let g = generate_model(model)?;
    let sq = |n: usize, v: Vec<f64>| FloatMatrix::new(n, n, v).expect("square");
    let mats = match model {
        "so3" => vec![
            sq(3, vec![0.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0]),
            sq(3, vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0]),
            sq(3, vec![0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
        ],
        "sl2" => vec![
            sq(2, vec![1.0, 0.0, 0.0, -1.0]),
            sq(2, unit_matrix(2, 0, 1)),
            sq(2, unit_matrix(2, 1, 0)),
        ],
        "su2" => {
            let z = (0.0, 0.0);
            vec![
                sq(4, complex_as_real([[(0.0, 1.0), z], [z, (0.0, -1.0)]])),
                sq(4, complex_as_real([[z, (1.0, 0.0)], [(-1.0, 0.0), z]])),
                sq(4, complex_as_real([[z, (0.0, 1.0)], [(0.0, 1.0), z]])),
            ]
        }
        "heis3" => vec![
            sq(3, unit_matrix(3, 0, 1)),
            sq(3, unit_matrix(3, 1, 2)),
            sq(3, unit_matrix(3, 0, 2)),
        ],
        _ if model.starts_with("gl:") => {
            let n = (g.dim() as f64).sqrt().round() as usize;
            (0..n * n).map(|p| sq(n, unit_matrix(n, p / n, p % n))).collect()
        }
        _ => return Err(Error::UnknownModel(format!("{model} (no matrix realization)"))),
    };
    Ok((g, mats))
}

fn combine(mats: &[FloatMatrix], coords: &[f64]) -> FloatMatrix {
    let n = mats[0].rows;
    let mut out = FloatMatrix::zeros(n);
    for (m, &c) in mats.iter().zip(coords) {
        if c != 0.0 {
            out = out.add(&m.scale(c));
        }
    }
    out
}

/// Solve the normal equations `B^T B c = B^T v` where the columns of `B` are
/// the flattened realization matrices.
fn coordinates(mats: &[FloatMatrix], v: &FloatMatrix) -> Result<Vec<f64>> {
    let d = mats.len();
    let mut a = vec![vec![0.0; d + 1]; d];
    for i in 0..d {
        for j in 0..d {
            a[i][j] = mats[i].data.iter().zip(&mats[j].data).map(|(x, y)| x * y).sum();
        }
        a[i][d] = mats[i].data.iter().zip(&v.data).map(|(x, y)| x * y).sum();
    }
    for col in 0..d {
        let piv = (col..d)
            .max_by(|&p, &q| a[p][col].abs().total_cmp(&a[q][col].abs()))
            .expect("nonempty");
        if a[piv][col].abs() < 1e-12 {
            return Err(Error::NonInvertibleRealization);
        }
        a.swap(col, piv);
        for r in 0..d {
            if r != col {
                let f = a[r][col] / a[col][col];
                if f != 0.0 {
                    for c in col..=d {
                        a[r][c] -= f * a[col][c];
                    }
                }
            }
        }
    }
    Ok((0..d).map(|i| a[i][d] / a[i][i]).collect())
}

/// `|| rho^-1(exp(t rho(x)) rho(y) exp(-t rho(x))) - exp(t ad_x)(y) ||_inf`
/// in basis coordinates. `tol` is the series cutoff passed to `matrix_exp`.
pub fn ad_exp_residual(model: &str, x: &[f64], y: &[f64], t: f64, tol: f64) -> Result<f64> {
    let (g, mats) = matrix_realization(model)?;
    residual_with(&g, &mats, x, y, t, tol)
}

fn residual_with(g: &LieAlgebra, mats: &[FloatMatrix], x: &[f64], y: &[f64], t: f64, tol: f64) -> Result<f64> {
    let n = g.dim();
    for v in [x, y] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    let rx = combine(mats, x);
    let ry = combine(mats, y);
    let conj = matrix_exp(&rx.scale(t), tol)?
        .mul(&ry)
        .mul(&matrix_exp(&rx.scale(-t), tol)?);
    let lhs = coordinates(mats, &conj)?;

    let c = g.structure_constants();
    let mut ad = FloatMatrix::zeros(n);
    for j in 0..n {
        for k in 0..n {
            ad.data[k * n + j] = (0..n).map(|i| x[i] * c.get(i, j, k).to_f64()).sum();
        }
    }
    let rhs = matrix_exp(&ad.scale(t), tol)?.mul_vec(y);
    Ok(lhs.iter().zip(&rhs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualRow {
    pub x: usize,
    pub y: usize,
    pub residual: f64,
}

/// Residuals for every ordered pair of basis vectors.
pub fn ad_exp_table(model: &str, t: f64, tol: f64) -> Result<Vec<ResidualRow>> {
    let (g, mats) = matrix_realization(model)?;
    let n = g.dim();
    let e = |i: usize| -> Vec<f64> { (0..n).map(|k| if k == i { 1.0 } else { 0.0 }).collect() };
    let mut rows = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let residual = residual_with(&g, &mats, &e(x), &e(y), t, tol)?;
            rows.push(ResidualRow { x, y, residual });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(
            matrix_exp(&FloatMatrix::zeros(3), 1e-15).unwrap(),
            FloatMatrix::identity(3)
        );
    }

    #[test]
    fn rotation_closed_form() {
        let t = 0.3;
        let a = FloatMatrix::from_rows(&[&[0.0, -t], &[t, 0.0]]);
        let e = matrix_exp(&a, 1e-15).unwrap();
        let want = FloatMatrix::from_rows(&[&[t.cos(), -t.sin()], &[t.sin(), t.cos()]]);
        assert!(e.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn diagonal_closed_form() {
        for (a, b) in [(1.0, -2.0), (3.5, 0.25), (-7.0, 5.0)] {
            let m = FloatMatrix::from_rows(&[&[a, 0.0], &[0.0, b]]);
            let e = matrix_exp(&m, 1e-15).unwrap();
            let want = FloatMatrix::from_rows(&[&[f64::exp(a), 0.0], &[0.0, f64::exp(b)]]);
            for (x, y) in e.entries().iter().zip(want.entries()) {
                assert!((x - y).abs() <= 1e-13 * y.abs().max(1.0), "{x} vs {y}");
            }
        }
    }

    #[test]
    fn exp_errors() {
        let rect = FloatMatrix::new(2, 3, vec![0.0; 6]).unwrap();
        assert!(matches!(matrix_exp(&rect, 1e-15), Err(Error::NonSquare { .. })));
        assert!(matches!(
            matrix_exp(&FloatMatrix::zeros(2), 0.0),
            Err(Error::BadParameter(_))
        ));
        assert!(FloatMatrix::new(1, 1, vec![f64::NAN]).is_err());
    }

    #[test]
    fn residual_at_zero_time() {
        let r = ad_exp_residual("so3", &[0.3, -1.0, 2.0], &[1.0, 0.5, 0.0], 0.0, 1e-15).unwrap();
        assert!(r < 1e-15);
    }

    #[test]
    fn so3_rotation_of_e1() {
        let r = ad_exp_residual("so3", &[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0], 0.1, 1e-15).unwrap();
        assert!(r < 1e-9);
        // closed form: Ad_{exp(t e3)} e1 = cos t e1 + sin t e2
        let (_, mats) = matrix_realization("so3").unwrap();
        let t = 0.1f64;
        let conj = matrix_exp(&mats[2].scale(t), 1e-15)
            .unwrap()
            .mul(&mats[0])
            .mul(&matrix_exp(&mats[2].scale(-t), 1e-15).unwrap());
        let c = coordinates(&mats, &conj).unwrap();
        assert!((c[0] - t.cos()).abs() < 1e-12 && (c[1] - t.sin()).abs() < 1e-12 && c[2].abs() < 1e-12);
    }

    #[test]
    fn heis3_is_polynomial() {
        for t in [0.5, -2.0, 3.0] {
            let (_, mats) = matrix_realization("heis3").unwrap();
            let conj = matrix_exp(&mats[0].scale(t), 1e-15)
                .unwrap()
                .mul(&mats[1])
                .mul(&matrix_exp(&mats[0].scale(-t), 1e-15).unwrap());
            let c = coordinates(&mats, &conj).unwrap();
            assert!(c[0].abs() < 1e-12 && (c[1] - 1.0).abs() < 1e-12 && (c[2] - t).abs() < 1e-12);
            assert!(ad_exp_residual("heis3", &[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], t, 1e-15).unwrap() < 1e-12);
        }
    }

    #[test]
    fn realizations_match_structure_constants() {
        for model in ["so3", "sl2", "su2", "heis3", "gl:2"] {
            let (g, mats) = matrix_realization(model).unwrap();
            for i in 0..g.dim() {
                for j in 0..g.dim() {
                    let comm = mats[i].mul(&mats[j]).add(&mats[j].mul(&mats[i]).scale(-1.0));
                    let c = coordinates(&mats, &comm).unwrap();
                    for (k, v) in c.iter().enumerate() {
                        assert!(
                            (v - g.bracket_basis(i, j)[k].to_f64()).abs() < 1e-12,
                            "{model} [{i},{j}]"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn unrealized_model() {
        assert!(matches!(
            ad_exp_residual("e2", &[1.0; 3], &[1.0; 3], 0.1, 1e-15),
            Err(Error::UnknownModel(_))
        ));
        assert!(matches!(
            ad_exp_residual("nope", &[1.0], &[1.0], 0.1, 1e-15),
            Err(Error::UnknownModel(_))
        ));
    }
}
