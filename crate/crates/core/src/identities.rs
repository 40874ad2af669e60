//! Identities of nonassociative algebras `(A, alpha)`.
//!
//! All checks use the associator `(x,y,z) = (xy)z - x(yz)` evaluated on basis
//! triples. Quadratic identities (flexibility) are checked in polarized form.

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::connections::AlphaTensor;
use crate::error::{Error, Result};
use crate::lie::{generate_model, jacobi_sum, LieAlgebra};
use crate::par;
use crate::rational::Rational;
use crate::tensor::{check_len, is_zero_vec, Tensor3, Tensor4};

pub fn associator(alpha: &AlphaTensor, x: &[Rational], y: &[Rational], z: &[Rational]) -> Result<Vec<Rational>> {
    let n = alpha.dim();
    check_len(x, n)?;
    check_len(y, n)?;
    check_len(z, n)?;
    let left = alpha.apply(&alpha.apply(x, y), z);
    let right = alpha.apply(x, &alpha.apply(y, z));
    Ok(left.iter().zip(&right).map(|(a, b)| a - b).collect())
}

/// All basis associators `(e_i, e_j, e_k)`.
pub fn associator_tensor(alpha: &AlphaTensor) -> Tensor4 {
    Tensor4::from_triples(alpha.dim(), |i, j, k| {
        let left = alpha.apply_right_basis(alpha.slice(i, j), k);
        let right = alpha.apply_left_basis(i, alpha.slice(j, k));
        left.iter().zip(&right).map(|(a, b)| a - b).collect()
    })
}

/// `alpha^-(x, y) = alpha(x, y) - alpha(y, x)`.
pub fn antisymmetrized(alpha: &AlphaTensor) -> Tensor3 {
    Tensor3::from_fn(alpha.dim(), |i, j, k| alpha.get(i, j, k) - alpha.get(j, i, k))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IdentityWitnesses {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lie_admissible: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flexible: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left_symmetric: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub associative: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ad_derivation: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub lie_admissible: bool,
    pub flexible: bool,
    pub left_symmetric: bool,
    pub associative: bool,
    /// Every `ad^-_x : y -> alpha^-(x, y)` is a derivation of `alpha`.
    pub ad_derivation: bool,
    pub witnesses: IdentityWitnesses,
}

fn first_triple<F>(n: usize, fails: F) -> Option<Vec<usize>>
where
    F: Fn(usize, usize, usize) -> bool + Sync + Send,
{
    par::find_first(n * n * n, |p| fails(p / (n * n), (p / n) % n, p % n))
        .map(|p| vec![p / (n * n), (p / n) % n, p % n])
}

fn sum_is(lhs: &[Rational], a: &[Rational], b: &[Rational]) -> bool {
    lhs.iter().zip(a).zip(b).all(|((l, x), y)| *l == x + y)
}

pub fn identity_report(alpha: &AlphaTensor) -> IdentityReport {
    let n = alpha.dim();
    let assoc = associator_tensor(alpha);
    let minus = antisymmetrized(alpha);

    let lie_admissible = first_triple(n, |i, j, k| {
        i < j && j < k && !is_zero_vec(&jacobi_sum(&minus, i, j, k))
    });
    let associative = first_triple(n, |i, j, k| !is_zero_vec(assoc.slice(i, j, k)));
    let flexible = first_triple(n, |i, j, k| {
        i <= k
            && assoc
                .slice(i, j, k)
                .iter()
                .zip(assoc.slice(k, j, i))
                .any(|(a, b)| !(a + b).is_zero())
    });
    let left_symmetric = first_triple(n, |i, j, k| i < j && assoc.slice(i, j, k) != assoc.slice(j, i, k));
    let ad_derivation = first_triple(n, |x, y, z| {
        let lhs = minus.apply_left_basis(x, alpha.slice(y, z));
        let r1 = alpha.apply_right_basis(minus.slice(x, y), z);
        let r2 = alpha.apply_left_basis(y, minus.slice(x, z));
        !sum_is(&lhs, &r1, &r2)
    });

    IdentityReport {
        lie_admissible: lie_admissible.is_none(),
        flexible: flexible.is_none(),
        left_symmetric: left_symmetric.is_none(),
        associative: associative.is_none(),
        ad_derivation: ad_derivation.is_none(),
        witnesses: IdentityWitnesses {
            lie_admissible,
            flexible,
            left_symmetric,
            associative,
            ad_derivation,
        },
    }
}

/// Exact complex scalar `re + im*i` with rational parts.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Gaussian {
    re: Rational,
    im: Rational,
}

impl Gaussian {
    fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }

    fn real(re: i64) -> Self {
        Gaussian::new(Rational::from_int(re), Rational::zero())
    }

    fn imag(im: i64) -> Self {
        Gaussian::new(Rational::zero(), Rational::from_int(im))
    }

    fn zero() -> Self {
        Gaussian::real(0)
    }

    fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -&self.im)
    }

    fn scale(&self, s: &Rational) -> Self {
        Gaussian::new(&self.re * s, &self.im * s)
    }
}

impl Add for &Gaussian {
    type Output = Gaussian;
    fn add(self, o: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &Gaussian {
    type Output = Gaussian;
    fn sub(self, o: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &Gaussian {
    type Output = Gaussian;
    fn mul(self, o: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl Neg for &Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-&self.re, -&self.im)
    }
}

type CMat2 = [[Gaussian; 2]; 2];

fn cmul(a: &CMat2, b: &CMat2) -> CMat2 {
    let entry = |r: usize, c: usize| &(&a[r][0] * &b[0][c]) + &(&a[r][1] * &b[1][c]);
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

fn cscale(s: &Gaussian, a: &CMat2) -> CMat2 {
    let e = |r: usize, c: usize| s * &a[r][c];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn csub(a: &CMat2, b: &CMat2) -> CMat2 {
    let e = |r: usize, c: usize| &a[r][c] - &b[r][c];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn ctrace(a: &CMat2) -> Gaussian {
    &a[0][0] + &a[1][1]
}

/// `X1 = diag(i,-i)`, `X2 = [[0,1],[-1,0]]`, `X3 = [[0,i],[i,0]]`.
fn su2_basis() -> [CMat2; 3] {
    let z = Gaussian::zero;
    [
        [[Gaussian::imag(1), z()], [z(), Gaussian::imag(-1)]],
        [[z(), Gaussian::real(1)], [Gaussian::real(-1), z()]],
        [[z(), Gaussian::imag(1)], [Gaussian::imag(1), z()]],
    ]
}

/// Coordinates of a matrix in `su2_basis`, or `None` if it is not in su(2).
fn su2_coords(m: &CMat2) -> Option<Vec<Rational>> {
    let c1 = m[0][0].im.clone();
    let c2 = m[0][1].re.clone();
    let c3 = m[0][1].im.clone();
    let basis = su2_basis();
    let mut back: CMat2 = [
        [Gaussian::zero(), Gaussian::zero()],
        [Gaussian::zero(), Gaussian::zero()],
    ];
    for (c, b) in [&c1, &c2, &c3].into_iter().zip(&basis) {
        for r in 0..2 {
            for col in 0..2 {
                back[r][col] = &back[r][col] + &b[r][col].scale(c);
            }
        }
    }
    (back == *m).then(|| vec![c1, c2, c3])
}

/// The product `alpha(X,Y) = mu XY - conj(mu) YX - ((mu - conj(mu))/n) tr(XY) 1`
/// on su(n) with `mu = 1/2 + b i`, expanded on the real su(2) basis
/// `X1 = diag(i,-i)`, `X2 = [[0,1],[-1,0]]`, `X3 = [[0,i],[i,0]]`.
///
/// The real part of `mu` is fixed by `mu + conj(mu) = 1`. Only `n = 2` is
/// supported. The trace term is a multiple of the identity matrix.
pub fn su_n_mu_algebra(n: usize, b: &Rational) -> Result<(LieAlgebra, AlphaTensor)> {
    if n != 2 {
        return Err(Error::BadParameter(format!(
            "su(n) mu-product is only available for n = 2 (got {n})"
        )));
    }
    let mu = Gaussian::new(Rational::new(1, 2), b.clone());
    let mu_bar = mu.conj();
    let trace_coeff = (&mu - &mu_bar).scale(&Rational::new(1, n as i64));
    let basis = su2_basis();
    let identity: CMat2 = [
        [Gaussian::real(1), Gaussian::zero()],
        [Gaussian::zero(), Gaussian::real(1)],
    ];
    let mut alpha = Tensor3::zeros(3);
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let xy = cmul(x, y);
            let yx = cmul(y, x);
            let tr = ctrace(&xy);
            let value = csub(
                &csub(&cscale(&mu, &xy), &cscale(&mu_bar, &yx)),
                &cscale(&(&trace_coeff * &tr), &identity),
            );
            let coords = su2_coords(&value)
                .ok_or_else(|| Error::BadParameter("mu-product left su(2); check the parameter".into()))?;
            for (k, v) in coords.into_iter().enumerate() {
                alpha.set(i, j, k, v);
            }
        }
    }
    Ok((generate_model("su2")?, alpha))
}
