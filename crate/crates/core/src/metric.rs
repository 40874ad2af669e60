//! Invariant (pseudo-)metrics on `m` and the Levi-Civita product.
//!
//! For an `ad_h`-invariant nondegenerate symmetric form `g` on `m`, the
//! Levi-Civita connection corresponds to the unique `alpha` with
//!
//! ```text
//! 2 g(alpha(X,Y), Z) = g(X.Y, Z) - g(X.Z, Y) - g(X, Y.Z)
//! ```
//!
//! Each `alpha(e_i, e_j)` is obtained from one Gram solve; no square roots
//! are involved, so everything stays in Q. Indefinite forms are accepted.

use serde::Serialize;

use crate::connections::{ad_on_m, torsion, AlphaTensor};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::matrix::{solve_symmetric, RatMatrix};
use crate::rational::Rational;
use crate::reductive::{binary_unchecked, require_reductive, Decomposition};
use crate::report::{ValidationReport, ViolationKind};
use crate::tensor::Tensor3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricTensor(RatMatrix);

impl MetricTensor {
    pub fn new(g: RatMatrix) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::NonSquare {
                rows: g.rows(),
                cols: g.cols(),
            });
        }
        Ok(MetricTensor(g))
    }

    pub fn identity(n: usize) -> Self {
        MetricTensor(RatMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    /// `g(x, y)`
    pub fn eval(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let gy = self.0.mul_vec(y).expect("metric dimension");
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// `g(e_i, y)`
    fn eval_basis(&self, i: usize, y: &[Rational]) -> Rational {
        self.0.row(i).iter().zip(y).map(|(a, b)| a * b).sum()
    }
}

fn check_metric_dim(d: &Decomposition, met: &MetricTensor) -> Result<()> {
    if met.dim() != d.mdim() {
        return Err(Error::DimensionMismatch {
            expected: d.mdim(),
            found: met.dim(),
        });
    }
    Ok(())
}

/// Symmetry, nondegeneracy and `ad_h`-invariance of `met`. Witnesses use
/// global basis indices: `(m_i, m_j)` for asymmetry, `(U, X, Y)` for
/// invariance failures.
pub fn validate_metric(g: &LieAlgebra, d: &Decomposition, met: &MetricTensor) -> ValidationReport {
    assert_eq!(g.dim(), d.dim(), "decomposition does not match the algebra dimension");
    assert_eq!(met.dim(), d.mdim(), "metric does not match dim m");
    let m = d.m();
    let gm = met.matrix();
    let n = m.len();
    let mut report = ValidationReport::default();
    for i in 0..n {
        for j in i + 1..n {
            if gm.get(i, j) != gm.get(j, i) {
                report.push(ViolationKind::MetricAsymmetric, vec![m[i], m[j]]);
            }
        }
    }
    if gm.rank() < n {
        report.push(ViolationKind::MetricDegenerate, vec![]);
    }
    for &u in d.h() {
        let a = ad_on_m(g, d, u);
        for i in 0..n {
            for j in i..n {
                let v = met.eval(&a.column(i), &crate::tensor::unit(n, j))
                    + met.eval(&crate::tensor::unit(n, i), &a.column(j));
                if !v.is_zero() {
                    report.push(ViolationKind::MetricNotInvariant, vec![u, m[i], m[j]]);
                }
            }
        }
    }
    report
}

/// Basis of the `ad_h`-invariant symmetric bilinear forms on `m`
/// (nondegeneracy not imposed).
pub fn invariant_metric_space(g: &LieAlgebra, d: &Decomposition) -> Vec<RatMatrix> {
    let n = d.mdim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let var = |i: usize, j: usize| pairs.iter().position(|&p| p == (i.min(j), i.max(j))).expect("pair");
    let mut rows = Vec::new();
    for &u in d.h() {
        let a = ad_on_m(g, d, u);
        for &(i, j) in &pairs {
            // sum_k a[k][i] g[k][j] + a[k][j] g[i][k]
            let mut row = vec![Rational::zero(); pairs.len()];
            for k in 0..n {
                row[var(k, j)] += a.get(k, i);
                row[var(i, k)] += a.get(k, j);
            }
            rows.push(row);
        }
    }
    let system = if rows.is_empty() {
        RatMatrix::zeros(0, pairs.len())
    } else {
        RatMatrix::from_rows(rows)
    };
    system
        .null_space_basis()
        .into_iter()
        .map(|v| {
            let mut mat = RatMatrix::zeros(n, n);
            for (s, &(i, j)) in pairs.iter().enumerate() {
                mat.set(i, j, v[s].clone());
                mat.set(j, i, v[s].clone());
            }
            mat
        })
        .collect()
}

pub fn levi_civita_alpha(g: &LieAlgebra, d: &Decomposition, met: &MetricTensor) -> Result<AlphaTensor> {
    require_reductive(g, d)?;
    check_metric_dim(d, met)?;
    let b = binary_unchecked(g, d);
    let n = d.mdim();
    let half = Rational::new(1, 2);
    let mut alpha = Tensor3::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let rhs: Vec<Rational> = (0..n)
                .map(|k| {
                    let t1 = met.eval_basis(k, b.slice(i, j));
                    let t2 = met.eval_basis(j, b.slice(i, k));
                    let t3 = met.eval_basis(i, b.slice(j, k));
                    (t1 - t2 - t3) * &half
                })
                .collect();
            let x = solve_symmetric(met.matrix(), &rhs)?;
            for (k, v) in x.into_iter().enumerate() {
                alpha.set(i, j, k, v);
            }
        }
    }
    Ok(alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MetricFlags {
    pub torsion_free: bool,
    /// `g(alpha(X,Y), Z) + g(Y, alpha(X,Z)) = 0`
    pub skew_compatible: bool,
    /// `g(Y.X, Z) = g(Y, X.Z)`
    pub naturally_reductive: bool,
    /// `2 g(mu(X,Y), Z) = g(Z.X, Y) + g(X, Z.Y)` for `mu = alpha - X.Y/2`
    pub commutative_part_identity: bool,
}

fn all_triples(n: usize, mut pred: impl FnMut(usize, usize, usize) -> bool) -> bool {
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| pred(i, j, k))))
}

/// Flags for a given product `alpha` (normally the Levi-Civita one).
pub fn metric_flags(alpha: &AlphaTensor, g: &LieAlgebra, d: &Decomposition, met: &MetricTensor) -> Result<MetricFlags> {
    check_metric_dim(d, met)?;
    let n = d.mdim();
    let b = binary_unchecked(g, d);
    let half = Rational::new(1, 2);
    let mu = alpha.sub(&b.scale(&half))?;
    let two = Rational::from_int(2);
    Ok(MetricFlags {
        torsion_free: torsion(alpha, g, d)?.is_zero(),
        skew_compatible: all_triples(n, |i, j, k| {
            (met.eval_basis(k, alpha.slice(i, j)) + met.eval_basis(j, alpha.slice(i, k))).is_zero()
        }),
        naturally_reductive: all_triples(n, |x, y, z| {
            met.eval_basis(z, b.slice(y, x)) == met.eval_basis(y, b.slice(x, z))
        }),
        commutative_part_identity: all_triples(n, |x, y, z| {
            &two * met.eval_basis(z, mu.slice(x, y))
                == met.eval_basis(y, b.slice(z, x)) + met.eval_basis(x, b.slice(z, y))
        }),
    })
}

/// [`metric_flags`] for the Levi-Civita product of `met`.
pub fn metric_report(g: &LieAlgebra, d: &Decomposition, met: &MetricTensor) -> Result<MetricFlags> {
    let alpha = levi_civita_alpha(g, d, met)?;
    metric_flags(&alpha, g, d, met)
}
