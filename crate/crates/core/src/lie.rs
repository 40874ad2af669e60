//! Lie algebras given by structure constants.
//!
//! `[e_i, e_j] = sum_k c[i][j][k] e_k`. The tensor is stored in full so that
//! arbitrary (possibly invalid) input can be validated; the usual way to build
//! an algebra is [`LieAlgebra::from_brackets`], which takes only pairs `i < j`
//! and completes antisymmetrically.

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::par;
use crate::rational::Rational;
use crate::report::{ValidationReport, ViolationKind};
use crate::tensor::{axpy, check_len, unit, Tensor3};

/// One family of brackets: `[e_i, e_j] = sum (coeff * e_k)` for `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, Rational)>,
}

impl BracketEntry {
    pub fn new(i: usize, j: usize, terms: Vec<(usize, Rational)>) -> Self {
        BracketEntry { i, j, terms }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    basis: Vec<String>,
    c: Tensor3,
}

impl LieAlgebra {
    /// Raw constructor: no antisymmetric completion, no validation.
    pub fn from_structure_constants(name: impl Into<String>, basis: Vec<String>, c: Tensor3) -> Result<Self> {
        c.check_dim(basis.len())?;
        Ok(LieAlgebra {
            name: name.into(),
            basis,
            c,
        })
    }

    /// Build from canonical pairs `i < j`, filling in `[e_j, e_i] = -[e_i, e_j]`.
    pub fn from_brackets(name: impl Into<String>, basis: Vec<String>, entries: &[BracketEntry]) -> Result<Self> {
        let n = basis.len();
        let mut c = Tensor3::zeros(n);
        for e in entries {
            if e.i >= e.j {
                return Err(Error::BadParameter(format!(
                    "bracket pair ({}, {}) must have i < j",
                    e.i, e.j
                )));
            }
            if e.j >= n {
                return Err(Error::BadParameter(format!("bracket index {} out of range", e.j)));
            }
            for (k, v) in &e.terms {
                if *k >= n {
                    return Err(Error::BadParameter(format!("bracket output index {k} out of range")));
                }
                let cur = c.get(e.i, e.j, *k) + v;
                c.set(e.j, e.i, *k, -&cur);
                c.set(e.i, e.j, *k, cur);
            }
        }
        Ok(LieAlgebra {
            name: name.into(),
            basis,
            c,
        })
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            name: format!("abelian:{n}"),
            basis: default_labels(n),
            c: Tensor3::zeros(n),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn structure_constants(&self) -> &Tensor3 {
        &self.c
    }

    /// Canonical `i < j` bracket families with nonzero output.
    pub fn bracket_entries(&self) -> Vec<BracketEntry> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let terms: Vec<_> = self
                    .c
                    .slice(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| (k, v.clone()))
                    .collect();
                if !terms.is_empty() {
                    out.push(BracketEntry::new(i, j, terms));
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        self.c.try_apply(x, y)
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        self.c.slice(i, j)
    }

    /// Matrix of `y -> [x, y]`; column `j` holds `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[Rational]) -> Result<RatMatrix> {
        check_len(x, self.dim())?;
        let n = self.dim();
        let mut m = RatMatrix::zeros(n, n);
        for j in 0..n {
            let col = self.c.apply_right_basis(x, j);
            for (k, v) in col.into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        Ok(m)
    }

    /// Re-express the algebra in the basis `f_i = sum_j p[j][i] e_j`.
    pub fn change_basis(&self, p: &RatMatrix) -> Result<LieAlgebra> {
        let n = self.dim();
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.rows().max(p.cols()),
            });
        }
        let q = p.inverse()?;
        let c = Tensor3::from_pairs(n, |a, b| {
            let fa = p.column(a);
            let fb = p.column(b);
            let br = self.c.apply(&fa, &fb);
            q.mul_vec(&br).expect("square inverse")
        });
        Ok(LieAlgebra {
            name: self.name.clone(),
            basis: self.basis.clone(),
            c,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_basis(mut self, basis: Vec<String>) -> Result<Self> {
        if basis.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: basis.len(),
            });
        }
        self.basis = basis;
        Ok(self)
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

/// Components `m` of the cyclic sum `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
pub(crate) fn jacobi_sum(c: &Tensor3, i: usize, j: usize, k: usize) -> Vec<Rational> {
    let n = c.dim();
    let mut out = vec![Rational::zero(); n];
    for (a, b, z) in [(i, j, k), (j, k, i), (k, i, j)] {
        let ab = c.slice(a, b);
        for (l, coeff) in ab.iter().enumerate() {
            axpy(&mut out, coeff, c.slice(l, z));
        }
    }
    out
}

/// Antisymmetry and Jacobi violations of a structure-constant tensor.
///
/// Jacobi is checked on `i < j < k` when the tensor is antisymmetric (the
/// cyclic sum is then alternating) and on all ordered triples otherwise.
pub fn validate_structure_constants(c: &Tensor3) -> ValidationReport {
    let n = c.dim();
    let mut report = ValidationReport::default();
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                if !(c.get(i, j, k) + c.get(j, i, k)).is_zero() {
                    report.push(ViolationKind::Antisymmetry, vec![i, j, k]);
                }
            }
        }
    }
    let antisymmetric = report.is_empty();
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .filter(|&(i, j, k)| !antisymmetric || (i < j && j < k))
        .collect();
    let found = par::map_range(triples.len(), |t| {
        let (i, j, k) = triples[t];
        jacobi_sum(c, i, j, k)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(m, _)| vec![i, j, k, m])
            .collect::<Vec<_>>()
    });
    for idx in found.into_iter().flatten() {
        report.push(ViolationKind::Jacobi, idx);
    }
    report
}

pub fn validate_lie(g: &LieAlgebra) -> ValidationReport {
    validate_structure_constants(&g.c)
}

/// Names accepted by [`generate_model`].
pub const MODEL_NAMES: &[&str] = &["abelian:n", "heis3", "so3", "sl2", "e2", "su2", "so3xR", "gl:n"];

/// Built-in models with fixed conventions:
///
/// - `abelian:n`: all brackets zero.
/// - `heis3` (x, y, z): `[x,y] = z`.
/// - `so3` (e1, e2, e3): `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`.
/// - `sl2` (h, e, f): `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
/// - `e2` (p1, p2, r): `[r,p1] = p2`, `[r,p2] = -p1`, `[p1,p2] = 0`.
/// - `su2` (X1, X2, X3) with `X1 = diag(i,-i)`, `X2 = [[0,1],[-1,0]]`,
///   `X3 = [[0,i],[i,0]]`: `[X1,X2] = 2X3`, `[X2,X3] = 2X1`, `[X3,X1] = 2X2`.
/// - `so3xR` (e1, e2, e3, e4): `so3` plus a central `e4`.
/// - `gl:n`: matrix units `E_ab` in row-major order,
///   `[E_ab, E_cd] = d_bc E_ad - d_da E_cb`.
pub fn generate_model(spec: &str) -> Result<LieAlgebra> {
    let r = Rational::from_int;
    let labels = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let (base, param) = match spec.split_once(':') {
        Some((b, p)) => (b, Some(p)),
        None => (spec, None),
    };
    let size = |p: Option<&str>| -> Result<usize> {
        let p = p.ok_or_else(|| Error::BadParameter(format!("model `{base}` needs a size, e.g. `{base}:3`")))?;
        match p.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::BadParameter(format!("invalid size `{p}` for model `{base}`"))),
        }
    };
    let no_param = |p: Option<&str>| -> Result<()> {
        match p {
            Some(p) => Err(Error::BadParameter(format!(
                "model `{base}` takes no parameter (got `{p}`)"
            ))),
            None => Ok(()),
        }
    };
    match base {
        "abelian" => Ok(LieAlgebra::abelian(size(param)?)),
        "heis3" => {
            no_param(param)?;
            LieAlgebra::from_brackets(
                "heis3",
                labels(&["x", "y", "z"]),
                &[BracketEntry::new(0, 1, vec![(2, r(1))])],
            )
        }
        "so3" => {
            no_param(param)?;
            LieAlgebra::from_brackets("so3", default_labels(3), &so3_entries(1))
        }
        "sl2" => {
            no_param(param)?;
            LieAlgebra::from_brackets(
                "sl2",
                labels(&["h", "e", "f"]),
                &[
                    BracketEntry::new(0, 1, vec![(1, r(2))]),
                    BracketEntry::new(0, 2, vec![(2, r(-2))]),
                    BracketEntry::new(1, 2, vec![(0, r(1))]),
                ],
            )
        }
        "e2" => {
            no_param(param)?;
            LieAlgebra::from_brackets(
                "e2",
                labels(&["p1", "p2", "r"]),
                &[
                    BracketEntry::new(0, 2, vec![(1, r(-1))]),
                    BracketEntry::new(1, 2, vec![(0, r(1))]),
                ],
            )
        }
        "su2" => {
            no_param(param)?;
            LieAlgebra::from_brackets("su2", labels(&["X1", "X2", "X3"]), &so3_entries(2))
        }
        "so3xR" => {
            no_param(param)?;
            LieAlgebra::from_brackets("so3xR", default_labels(4), &so3_entries(1))
        }
        "gl" => {
            let n = size(param)?;
            Ok(gl(n))
        }
        _ => Err(Error::UnknownModel(spec.to_string())),
    }
}

/// `[e1,e2] = s e3`, `[e2,e3] = s e1`, `[e3,e1] = s e2` in canonical order.
fn so3_entries(s: i64) -> Vec<BracketEntry> {
    let s = Rational::from_int(s);
    vec![
        BracketEntry::new(0, 1, vec![(2, s.clone())]),
        BracketEntry::new(0, 2, vec![(1, -s.clone())]),
        BracketEntry::new(1, 2, vec![(0, s)]),
    ]
}

fn gl(n: usize) -> LieAlgebra {
    let dim = n * n;
    let idx = |a: usize, b: usize| a * n + b;
    let c = Tensor3::from_pairs(dim, |p, q| {
        let (a, b) = (p / n, p % n);
        let (cc, d) = (q / n, q % n);
        let mut v = vec![Rational::zero(); dim];
        if b == cc {
            v[idx(a, d)] += Rational::one();
        }
        if d == a {
            v[idx(cc, b)] -= Rational::one();
        }
        v
    });
    let basis = (0..dim).map(|p| format!("E{}{}", p / n + 1, p % n + 1)).collect();
    LieAlgebra {
        name: format!("gl:{n}"),
        basis,
        c,
    }
}

/// Every shipped model at desk-scale parameters.
pub fn model_corpus() -> Vec<LieAlgebra> {
    [
        "abelian:2",
        "abelian:3",
        "abelian:4",
        "heis3",
        "so3",
        "sl2",
        "e2",
        "su2",
        "so3xR",
        "gl:2",
    ]
    .iter()
    .map(|s| generate_model(s).expect("built-in model"))
    .collect()
}

/// Basis vector `e_i` of `g`.
pub fn basis_vector(g: &LieAlgebra, i: usize) -> Vec<Rational> {
    unit(g.dim(), i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn e(n: usize, i: usize) -> Vec<Rational> {
        unit(n, i)
    }

    /// Commutator `AB - BA` of integer matrices given row-major.
    fn commutator(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
        let mul = |x: &[i64], y: &[i64]| -> Vec<i64> {
            (0..n * n)
                .map(|p| (0..n).map(|k| x[(p / n) * n + k] * y[k * n + p % n]).sum())
                .collect()
        };
        let ab = mul(a, b);
        let ba = mul(b, a);
        ab.iter().zip(&ba).map(|(x, y)| x - y).collect()
    }

    /// Coordinates of `m` in a matrix basis, by least-index pivot search.
    fn coords(m: &[i64], basis: &[Vec<i64>]) -> Vec<Rational> {
        let rows: Vec<Vec<Rational>> = (0..m.len()).map(|p| basis.iter().map(|b| r(b[p])).collect()).collect();
        let a = RatMatrix::from_rows(rows);
        let ata = a.transpose().mul(&a).unwrap();
        let rhs = a
            .transpose()
            .mul_vec(&m.iter().map(|&x| r(x)).collect::<Vec<_>>())
            .unwrap();
        ata.solve(&rhs).unwrap()
    }

    fn check_against_matrices(g: &LieAlgebra, mats: &[Vec<i64>], n: usize) {
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let comm = commutator(&mats[i], &mats[j], n);
                assert_eq!(
                    g.bracket_basis(i, j),
                    coords(&comm, mats).as_slice(),
                    "[{i},{j}] in {}",
                    g.name()
                );
            }
        }
    }

    #[test]
    fn so3_matches_skew_matrices() {
        let g = generate_model("so3").unwrap();
        let l1 = vec![0, 0, 0, 0, 0, -1, 0, 1, 0];
        let l2 = vec![0, 0, 1, 0, 0, 0, -1, 0, 0];
        let l3 = vec![0, -1, 0, 1, 0, 0, 0, 0, 0];
        check_against_matrices(&g, &[l1, l2, l3], 3);
        assert_eq!(g.bracket(&e(3, 0), &e(3, 1)).unwrap(), e(3, 2));
    }

    #[test]
    fn sl2_matches_traceless_matrices() {
        let g = generate_model("sl2").unwrap();
        check_against_matrices(&g, &[vec![1, 0, 0, -1], vec![0, 1, 0, 0], vec![0, 0, 1, 0]], 2);
    }

    #[test]
    fn heis3_matches_strictly_upper_matrices() {
        let g = generate_model("heis3").unwrap();
        let x = vec![0, 1, 0, 0, 0, 0, 0, 0, 0];
        let y = vec![0, 0, 0, 0, 0, 1, 0, 0, 0];
        let z = vec![0, 0, 1, 0, 0, 0, 0, 0, 0];
        check_against_matrices(&g, &[x, y, z], 3);
        assert_eq!(g.bracket(&e(3, 0), &e(3, 1)).unwrap(), e(3, 2));
        assert!(tensor_is_zero(&g.bracket(&e(3, 2), &e(3, 0)).unwrap()));
    }

    #[test]
    fn gl2_matches_matrix_units() {
        let g = generate_model("gl:2").unwrap();
        let units: Vec<Vec<i64>> = (0..4).map(|p| (0..4).map(|q| (p == q) as i64).collect()).collect();
        check_against_matrices(&g, &units, 2);
    }

    fn tensor_is_zero(v: &[Rational]) -> bool {
        v.iter().all(Rational::is_zero)
    }

    #[test]
    fn self_bracket_vanishes() {
        for g in model_corpus() {
            let x: Vec<Rational> = (0..g.dim()).map(|i| Rational::new(i as i64 + 1, 3)).collect();
            assert!(tensor_is_zero(&g.bracket(&x, &x).unwrap()));
        }
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let g = generate_model("so3").unwrap();
        assert!(matches!(
            g.bracket(&e(2, 0), &e(3, 0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn every_model_is_valid() {
        for g in model_corpus() {
            assert!(validate_lie(&g).is_empty(), "{}: {:?}", g.name(), validate_lie(&g));
        }
        assert!(validate_lie(&generate_model("gl:3").unwrap()).is_empty());
    }

    #[test]
    fn antisymmetry_violation_reported() {
        let mut c = Tensor3::zeros(2);
        c.set(0, 1, 0, r(1));
        c.set(1, 0, 0, r(1));
        let g = LieAlgebra::from_structure_constants("bad", default_labels(2), c).unwrap();
        let rep = validate_lie(&g);
        assert_eq!(rep.first().unwrap().kind, ViolationKind::Antisymmetry);
        assert_eq!(rep.first().unwrap().indices, vec![0, 1, 0]);
    }

    #[test]
    fn jacobi_matches_brute_force() {
        // [e1,e2]=e1, [e1,e3]=0, [e2,e3]=e3
        let entries = [
            BracketEntry::new(0, 1, vec![(0, r(1))]),
            BracketEntry::new(1, 2, vec![(2, r(1))]),
        ];
        let g = LieAlgebra::from_brackets("t", default_labels(3), &entries).unwrap();
        let c = g.structure_constants();
        let mut brute_nonzero = false;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for m in 0..3 {
                        let mut s = Rational::zero();
                        for l in 0..3 {
                            s += c.get(i, j, l) * c.get(l, k, m);
                            s += c.get(j, k, l) * c.get(l, i, m);
                            s += c.get(k, i, l) * c.get(l, j, m);
                        }
                        brute_nonzero |= !s.is_zero();
                    }
                }
            }
        }
        assert_eq!(validate_lie(&g).has(ViolationKind::Jacobi), brute_nonzero);
        assert!(!brute_nonzero);

        // [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e1 is not a Lie algebra
        let bad = [
            BracketEntry::new(0, 1, vec![(2, r(1))]),
            BracketEntry::new(1, 2, vec![(0, r(1))]),
            BracketEntry::new(0, 2, vec![(0, r(-1))]),
        ];
        let h = LieAlgebra::from_brackets("t2", default_labels(3), &bad).unwrap();
        assert!(validate_lie(&h).has(ViolationKind::Jacobi));
    }

    #[test]
    fn ad_matrix_examples() {
        let ab = LieAlgebra::abelian(3);
        assert!(ab.ad_matrix(&e(3, 1)).unwrap().is_zero());
        let g = generate_model("so3").unwrap();
        let ad3 = g.ad_matrix(&e(3, 2)).unwrap();
        assert_eq!(ad3.column(0), e(3, 1));
        assert_eq!(ad3.column(1), vec![r(-1), r(0), r(0)]);
        for name in ["so3", "sl2"] {
            let g = generate_model(name).unwrap();
            for i in 0..3 {
                assert!(g.ad_matrix(&e(3, i)).unwrap().trace().is_zero());
            }
        }
    }

    #[test]
    fn change_basis_examples() {
        let g = generate_model("so3").unwrap();
        assert_eq!(g.change_basis(&RatMatrix::identity(3)).unwrap(), g);
        let p = RatMatrix::diagonal(&[r(1), r(1), r(2)]);
        let f = g.change_basis(&p).unwrap();
        assert_eq!(f.bracket_basis(0, 1), &[r(0), r(0), Rational::new(1, 2)]);
        let back = f.change_basis(&p.inverse().unwrap()).unwrap();
        assert_eq!(back, g);
        assert!(matches!(
            g.change_basis(&RatMatrix::zeros(3, 3)),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn unknown_and_bad_models() {
        assert!(matches!(generate_model("so5"), Err(Error::UnknownModel(_))));
        assert!(matches!(generate_model("gl:0"), Err(Error::BadParameter(_))));
        assert!(matches!(generate_model("abelian"), Err(Error::BadParameter(_))));
        assert!(matches!(generate_model("so3:2"), Err(Error::BadParameter(_))));
        let a = generate_model("abelian:4").unwrap();
        assert_eq!(a.dim(), 4);
        assert!(a.structure_constants().is_zero());
    }

    #[test]
    fn sl2_conventions() {
        let g = generate_model("sl2").unwrap();
        assert_eq!(g.bracket_basis(0, 1), &[r(0), r(2), r(0)]);
        assert_eq!(g.bracket_basis(0, 2), &[r(0), r(0), r(-2)]);
        assert_eq!(g.bracket_basis(1, 2), &[r(1), r(0), r(0)]);
    }
}
