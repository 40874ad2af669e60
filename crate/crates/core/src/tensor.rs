//! Dense multilinear maps on a coordinate space of fixed dimension.
//!
//! A [`Tensor3`] is a bilinear map `V x V -> V` stored as
//! `t[i][j][k]` = coefficient of `e_k` in `t(e_i, e_j)`, flattened as
//! `(i*n + j)*n + k`. [`Tensor4`] is the trilinear analogue.

use std::fmt;

use crate::error::{Error, Result};
use crate::par;
use crate::rational::Rational;

pub(crate) fn check_len(v: &[Rational], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    Ok(())
}

/// `acc += s * v`
pub(crate) fn axpy(acc: &mut [Rational], s: &Rational, v: &[Rational]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += s * x;
        }
    }
}

pub(crate) fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    dim: usize,
    data: Vec<Rational>,
}

impl Tensor3 {
    pub fn zeros(dim: usize) -> Self {
        Tensor3 {
            dim,
            data: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn from_fn<F>(dim: usize, f: F) -> Self
    where
        F: Fn(usize, usize, usize) -> Rational + Sync + Send,
    {
        let data = par::map_range(dim * dim * dim, |idx| {
            let k = idx % dim;
            let j = (idx / dim) % dim;
            let i = idx / (dim * dim);
            f(i, j, k)
        });
        Tensor3 { dim, data }
    }

    /// Build from the output vectors `t(e_i, e_j)`, produced in `(i, j)` order.
    pub fn from_pairs<F>(dim: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> Vec<Rational> + Sync + Send,
    {
        let data = par::map_range(dim * dim, |p| f(p / dim, p % dim))
            .into_iter()
            .flatten()
            .collect();
        Tensor3 { dim, data }
    }

    pub fn from_flat(dim: usize, data: Vec<Rational>) -> Result<Self> {
        check_len(&data, dim * dim * dim)?;
        Ok(Tensor3 { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flat(&self) -> &[Rational] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let n = self.dim;
        self.data[(i * n + j) * n + k] = v;
    }

    /// Coordinates of `t(e_i, e_j)`.
    pub fn slice(&self, i: usize, j: usize) -> &[Rational] {
        let n = self.dim;
        &self.data[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Tensor3 {
            dim: self.dim,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        Ok(Tensor3 {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        Ok(Tensor3 {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim != n {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: n,
            });
        }
        Ok(())
    }

    /// Swap the two inputs: `t'(x, y) = t(y, x)`.
    pub fn transpose_inputs(&self) -> Self {
        Tensor3::from_fn(self.dim, |i, j, k| self.get(j, i, k).clone())
    }

    /// `t(e_i, y)` for a general vector `y`.
    pub fn apply_left_basis(&self, i: usize, y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (j, yj) in y.iter().enumerate() {
            axpy(&mut out, yj, self.slice(i, j));
        }
        out
    }

    /// `t(x, e_j)` for a general vector `x`.
    pub fn apply_right_basis(&self, x: &[Rational], j: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            axpy(&mut out, xi, self.slice(i, j));
        }
        out
    }

    /// Bilinear evaluation `t(x, y)`. Panics on length mismatch; use
    /// [`Tensor3::try_apply`] for checked input.
    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), self.slice(i, j));
            }
        }
        out
    }

    pub fn try_apply(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        check_len(x, self.dim)?;
        check_len(y, self.dim)?;
        Ok(self.apply(x, y))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor4 {
    dim: usize,
    data: Vec<Rational>,
}

impl Tensor4 {
    pub fn zeros(dim: usize) -> Self {
        Tensor4 {
            dim,
            data: vec![Rational::zero(); dim * dim * dim * dim],
        }
    }

    /// Build from the output vectors `t(e_i, e_j, e_k)` in `(i, j, k)` order.
    pub fn from_triples<F>(dim: usize, f: F) -> Self
    where
        F: Fn(usize, usize, usize) -> Vec<Rational> + Sync + Send,
    {
        let n = dim;
        let data = par::map_range(n * n * n, |p| f(p / (n * n), (p / n) % n, p % n))
            .into_iter()
            .flatten()
            .collect();
        Tensor4 { dim, data }
    }

    pub fn from_flat(dim: usize, data: Vec<Rational>) -> Result<Self> {
        check_len(&data, dim * dim * dim * dim)?;
        Ok(Tensor4 { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn flat(&self) -> &[Rational] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Rational {
        let n = self.dim;
        &self.data[((i * n + j) * n + k) * n + l]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: Rational) {
        let n = self.dim;
        self.data[((i * n + j) * n + k) * n + l] = v;
    }

    /// Coordinates of `t(e_i, e_j, e_k)`.
    pub fn slice(&self, i: usize, j: usize, k: usize) -> &[Rational] {
        let n = self.dim;
        let start = ((i * n + j) * n + k) * n;
        &self.data[start..start + n]
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(Tensor4 {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Trilinear evaluation `t(x, y, z)`.
    pub fn apply(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let xy = xi * yj;
                for (k, zk) in z.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    axpy(&mut out, &(&xy * zk), self.slice(i, j, k));
                }
            }
        }
        out
    }
}

impl fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor3(dim={}, ", self.dim)?;
        f.debug_list().entries(&self.data).finish()?;
        write!(f, ")")
    }
}

impl fmt::Debug for Tensor4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor4(dim={}, ", self.dim)?;
        f.debug_list().entries(&self.data).finish()?;
        write!(f, ")")
    }
}
