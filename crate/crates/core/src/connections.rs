//! Invariant affine connections as bilinear products on `m`.
//!
//! An invariant connection is encoded by `alpha: m x m -> m` on which `h`
//! acts by derivations: `ad_U(alpha(X,Y)) = alpha([U,X],Y) + alpha(X,[U,Y])`
//! for all `U` in `h`. This is the infinitesimal form of isotropy
//! equivariance; it agrees with the group condition for connected isotropy.
//! Torsion and curvature at the base point are
//!
//! ```text
//! T(X,Y)   = alpha(X,Y) - alpha(Y,X) - X.Y
//! R(X,Y)Z  = alpha(X,alpha(Y,Z)) - alpha(Y,alpha(X,Z)) - alpha(X.Y,Z) - [X,Y,Z]
//! ```

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::matrix::RatMatrix;
use crate::par;
use crate::rational::Rational;
use crate::reductive::{binary_unchecked, require_reductive, ternary_unchecked, Decomposition};
use crate::tensor::{axpy, Tensor3, Tensor4};

/// `alpha(e_i, e_j) = sum_k a[i][j][k] e_k` on `m`-local indices.
pub type AlphaTensor = Tensor3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionSpace {
    pub mdim: usize,
    pub basis: Vec<AlphaTensor>,
}

impl ConnectionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `sum coeffs[s] * basis[s]`.
    pub fn combine(&self, coeffs: &[Rational]) -> Result<AlphaTensor> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coeffs.len(),
            });
        }
        let mut flat = vec![Rational::zero(); self.mdim.pow(3)];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            axpy(&mut flat, c, b.flat());
        }
        Tensor3::from_flat(self.mdim, flat)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Distinguished {
    /// `alpha(X,Y) = X.Y / 2`
    Natural,
    /// `alpha(X,Y) = 0`
    Canonical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConnectionFlags {
    pub symmetric: bool,
    pub flat: bool,
    pub anticommutative: bool,
    pub equivariant: bool,
}

fn check_shapes(alpha: &AlphaTensor, g: &LieAlgebra, d: &Decomposition) -> Result<()> {
    if g.dim() != d.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: d.dim(),
        });
    }
    alpha.check_dim(d.mdim()).map_err(|_| Error::DimensionMismatch {
        expected: d.mdim(),
        found: alpha.dim(),
    })
}

/// `ad_U` restricted to `m`: entry `(l, k)` is the `m_l` coefficient of `[U, m_k]`.
pub fn ad_on_m(g: &LieAlgebra, d: &Decomposition, u: usize) -> RatMatrix {
    let m = d.m();
    let c = g.structure_constants();
    let mut a = RatMatrix::zeros(m.len(), m.len());
    for (k, &mk) in m.iter().enumerate() {
        for (l, &ml) in m.iter().enumerate() {
            a.set(l, k, c.get(u, mk, ml).clone());
        }
    }
    a
}

/// The linear system whose kernel is the space of `h`-equivariant products.
///
/// Unknown `a[i][j][k]` sits in column `(i*n + j)*n + k`. Row
/// `((u*n + x)*n + y)*n + l` is the `e_l` component of
/// `ad_U(alpha(e_x,e_y)) - alpha([U,e_x],e_y) - alpha(e_x,[U,e_y])` for the
/// `u`-th basis element `U` of `h`.
pub fn equivariance_system(g: &LieAlgebra, d: &Decomposition) -> RatMatrix {
    let n = d.mdim();
    let n3 = n * n * n;
    let ads: Vec<RatMatrix> = d.h().iter().map(|&u| ad_on_m(g, d, u)).collect();
    let col = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let rows = par::map_range(ads.len() * n3, |row| {
        let (u, rest) = (row / n3, row % n3);
        let (x, y, l) = (rest / (n * n), (rest / n) % n, rest % n);
        let a = &ads[u];
        let mut r = vec![Rational::zero(); n3];
        for k in 0..n {
            r[col(x, y, k)] += a.get(l, k);
        }
        for p in 0..n {
            r[col(p, y, l)] -= a.get(p, x);
        }
        for q in 0..n {
            r[col(x, q, l)] -= a.get(q, y);
        }
        r
    });
    RatMatrix::from_vec(rows.len(), n3, rows.into_iter().flatten().collect()).expect("row length n^3")
}

/// Basis of the invariant connections of `(g, d)`, from the deterministic
/// null-space construction on [`equivariance_system`].
pub fn invariant_connection_space(g: &LieAlgebra, d: &Decomposition) -> Result<ConnectionSpace> {
    require_reductive(g, d)?;
    let n = d.mdim();
    let system = equivariance_system(g, d);
    let basis = system
        .null_space_basis()
        .into_iter()
        .map(|v| Tensor3::from_flat(n, v).expect("n^3 entries"))
        .collect();
    Ok(ConnectionSpace { mdim: n, basis })
}

pub fn distinguished_alpha(kind: Distinguished, g: &LieAlgebra, d: &Decomposition) -> Result<AlphaTensor> {
    require_reductive(g, d)?;
    Ok(match kind {
        Distinguished::Natural => binary_unchecked(g, d).scale(&Rational::new(1, 2)),
        Distinguished::Canonical => Tensor3::zeros(d.mdim()),
    })
}

/// Nomizu operator `L_X = alpha(e_x, .)` as a matrix on `m`.
pub fn nomizu_operator(alpha: &AlphaTensor, x: usize) -> RatMatrix {
    let n = alpha.dim();
    let mut l = RatMatrix::zeros(n, n);
    for y in 0..n {
        for (k, v) in alpha.slice(x, y).iter().enumerate() {
            l.set(k, y, v.clone());
        }
    }
    l
}

pub fn torsion(alpha: &AlphaTensor, g: &LieAlgebra, d: &Decomposition) -> Result<Tensor3> {
    check_shapes(alpha, g, d)?;
    let b = binary_unchecked(g, d);
    Ok(Tensor3::from_fn(alpha.dim(), |i, j, k| {
        alpha.get(i, j, k) - alpha.get(j, i, k) - b.get(i, j, k)
    }))
}

pub fn curvature(alpha: &AlphaTensor, g: &LieAlgebra, d: &Decomposition) -> Result<Tensor4> {
    check_shapes(alpha, g, d)?;
    let b = binary_unchecked(g, d);
    let t = ternary_unchecked(g, d);
    Ok(curvature_from_products(alpha, &b, &t))
}

pub(crate) fn curvature_from_products(alpha: &AlphaTensor, b: &Tensor3, t: &Tensor4) -> Tensor4 {
    let n = alpha.dim();
    Tensor4::from_triples(n, |i, j, k| {
        let mut r = alpha.apply_left_basis(i, alpha.slice(j, k));
        let second = alpha.apply_left_basis(j, alpha.slice(i, k));
        let third = alpha.apply_right_basis(b.slice(i, j), k);
        for (((x, s), th), te) in r.iter_mut().zip(&second).zip(&third).zip(t.slice(i, j, k)) {
            *x -= s;
            *x -= th;
            *x -= te;
        }
        r
    })
}

/// Whether `alpha` satisfies the `h`-equivariance equations.
pub fn is_equivariant(alpha: &AlphaTensor, g: &LieAlgebra, d: &Decomposition) -> Result<bool> {
    check_shapes(alpha, g, d)?;
    let n = d.mdim();
    for &u in d.h() {
        let a = ad_on_m(g, d, u);
        for x in 0..n {
            for y in 0..n {
                let lhs = a.mul_vec(alpha.slice(x, y))?;
                let r1 = alpha.apply_right_basis(&a.column(x), y);
                let r2 = alpha.apply_left_basis(x, &a.column(y));
                let ok = lhs.iter().zip(&r1).zip(&r2).all(|((l, p), q)| *l == p + q);
                if !ok {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn is_anticommutative(alpha: &AlphaTensor) -> bool {
    let n = alpha.dim();
    (0..n).all(|i| {
        (i..n).all(|j| {
            alpha
                .slice(i, j)
                .iter()
                .zip(alpha.slice(j, i))
                .all(|(a, b)| (a + b).is_zero())
        })
    })
}

pub fn classify_connection(alpha: &AlphaTensor, g: &LieAlgebra, d: &Decomposition) -> Result<ConnectionFlags> {
    Ok(ConnectionFlags {
        symmetric: torsion(alpha, g, d)?.is_zero(),
        flat: curvature(alpha, g, d)?.is_zero(),
        anticommutative: is_anticommutative(alpha),
        equivariant: is_equivariant(alpha, g, d)?,
    })
}
