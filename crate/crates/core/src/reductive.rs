//! Reductive decompositions `g = h + m` and the Lie-Yamaguti algebra on `m`.
//!
//! The decomposition must be given in an adapted basis: `h` and `m` are
//! complementary sets of basis indices. The binary product is
//! `X.Y = [X,Y]_m` and the ternary product is `[X,Y,Z] = [[X,Y]_h, Z]`.
//! Reductivity is checked at the Lie-algebra level (`[h,m] in m`), which
//! matches the group-level condition when the isotropy group is connected.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::matrix::RatMatrix;
use crate::par;
use crate::rational::Rational;
use crate::report::{ValidationReport, ViolationKind};
use crate::tensor::{axpy, is_zero_vec, Tensor3, Tensor4};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    h: Vec<usize>,
    m: Vec<usize>,
}

impl Decomposition {
    /// `m` defaults to the complement of `h` in index order.
    pub fn new(dim: usize, h: Vec<usize>, m: Option<Vec<usize>>) -> Result<Self> {
        let mut h = h;
        h.sort_unstable();
        let mut m = m.unwrap_or_else(|| (0..dim).filter(|i| !h.contains(i)).collect());
        m.sort_unstable();
        let mut seen = vec![false; dim];
        for &i in h.iter().chain(&m) {
            if i >= dim {
                return Err(Error::InvalidDecomposition(format!(
                    "index {i} out of range for dimension {dim}"
                )));
            }
            if seen[i] {
                return Err(Error::InvalidDecomposition(format!("index {i} listed twice")));
            }
            seen[i] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidDecomposition(format!(
                "index {missing} is in neither h nor m"
            )));
        }
        Ok(Decomposition { h, m })
    }

    /// The group case: `h = 0`, `m = g`.
    pub fn trivial(dim: usize) -> Self {
        Decomposition {
            h: Vec::new(),
            m: (0..dim).collect(),
        }
    }

    pub fn h(&self) -> &[usize] {
        &self.h
    }

    pub fn m(&self) -> &[usize] {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.h.len() + self.m.len()
    }

    pub fn mdim(&self) -> usize {
        self.m.len()
    }

    /// Embed `m`-coordinates into `g`.
    pub fn embed_m(&self, x: &[Rational]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        for (&gi, xi) in self.m.iter().zip(x) {
            v[gi] = xi.clone();
        }
        v
    }

    pub fn project_m(&self, v: &[Rational]) -> Vec<Rational> {
        self.m.iter().map(|&i| v[i].clone()).collect()
    }

    pub fn project_h(&self, v: &[Rational]) -> Vec<Rational> {
        self.h.iter().map(|&i| v[i].clone()).collect()
    }

    fn check_algebra(&self, g: &LieAlgebra) -> Result<()> {
        if g.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: g.dim(),
                found: self.dim(),
            });
        }
        Ok(())
    }

    /// Every partition of `0..dim` into `(h, m)`, ordered by the bitmask of `h`.
    pub fn all_partitions(dim: usize) -> Vec<Decomposition> {
        (0u32..1 << dim)
            .map(|mask| {
                let h = (0..dim).filter(|i| mask & (1 << i) != 0).collect();
                Decomposition::new(dim, h, None).expect("partition")
            })
            .collect()
    }
}

/// Violations of `[h,h] in h` and `[h,m] in m`.
///
/// Panics if `d` was built for a different dimension than `g`.
pub fn check_reductive(g: &LieAlgebra, d: &Decomposition) -> ValidationReport {
    assert_eq!(g.dim(), d.dim(), "decomposition does not match the algebra dimension");
    let mut report = ValidationReport::default();
    for (pos, &a) in d.h.iter().enumerate() {
        for &b in &d.h[pos + 1..] {
            let br = g.bracket_basis(a, b);
            for &k in &d.m {
                if !br[k].is_zero() {
                    report.push(ViolationKind::SubalgebraClosure, vec![a, b, k]);
                }
            }
        }
    }
    for &a in &d.h {
        for &i in &d.m {
            let br = g.bracket_basis(a, i);
            for &k in &d.h {
                if !br[k].is_zero() {
                    report.push(ViolationKind::NotInvariant, vec![a, i, k]);
                }
            }
        }
    }
    report
}

pub(crate) fn require_reductive(g: &LieAlgebra, d: &Decomposition) -> Result<()> {
    d.check_algebra(g)?;
    let rep = check_reductive(g, d);
    match rep.first() {
        None => Ok(()),
        Some(v) => Err(Error::NotReductive(v.to_string())),
    }
}

/// `b[i][j][k]`: the `m`-component of `[m_i, m_j]`, in `m`-local indices.
pub fn binary_product(g: &LieAlgebra, d: &Decomposition) -> Result<Tensor3> {
    require_reductive(g, d)?;
    Ok(binary_unchecked(g, d))
}

pub(crate) fn binary_unchecked(g: &LieAlgebra, d: &Decomposition) -> Tensor3 {
    let c = g.structure_constants();
    let m = &d.m;
    Tensor3::from_fn(m.len(), |i, j, k| c.get(m[i], m[j], m[k]).clone())
}

/// `t[i][j][k][l]`: the `e_l` coefficient of `[[m_i, m_j]_h, m_k]`.
pub fn ternary_product(g: &LieAlgebra, d: &Decomposition) -> Result<Tensor4> {
    require_reductive(g, d)?;
    Ok(ternary_unchecked(g, d))
}

pub(crate) fn ternary_unchecked(g: &LieAlgebra, d: &Decomposition) -> Tensor4 {
    let c = g.structure_constants();
    let (h, m) = (&d.h, &d.m);
    Tensor4::from_triples(m.len(), |i, j, k| {
        let mut out = vec![Rational::zero(); m.len()];
        for &a in h {
            let coeff = c.get(m[i], m[j], a);
            if coeff.is_zero() {
                continue;
            }
            let ak: Vec<Rational> = m.iter().map(|&l| c.get(a, m[k], l).clone()).collect();
            axpy(&mut out, coeff, &ak);
        }
        out
    })
}

/// A binary and a ternary product on the same space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieYamaguti {
    binary: Tensor3,
    ternary: Tensor4,
}

impl LieYamaguti {
    pub fn new(binary: Tensor3, ternary: Tensor4) -> Result<Self> {
        if binary.dim() != ternary.dim() {
            return Err(Error::DimensionMismatch {
                expected: binary.dim(),
                found: ternary.dim(),
            });
        }
        Ok(LieYamaguti { binary, ternary })
    }

    pub fn from_decomposition(g: &LieAlgebra, d: &Decomposition) -> Result<Self> {
        require_reductive(g, d)?;
        Ok(LieYamaguti {
            binary: binary_unchecked(g, d),
            ternary: ternary_unchecked(g, d),
        })
    }

    pub fn dim(&self) -> usize {
        self.binary.dim()
    }

    pub fn binary(&self) -> &Tensor3 {
        &self.binary
    }

    pub fn ternary(&self) -> &Tensor4 {
        &self.ternary
    }

    /// `D(e_i, e_j)` as a matrix on the space: column `k` is `[e_i, e_j, e_k]`.
    pub fn inner_derivation(&self, i: usize, j: usize) -> RatMatrix {
        let n = self.dim();
        let mut mat = RatMatrix::zeros(n, n);
        for k in 0..n {
            for (l, v) in self.ternary.slice(i, j, k).iter().enumerate() {
                mat.set(l, k, v.clone());
            }
        }
        mat
    }
}

pub const AXIOM_NAMES: [&str; 6] = ["LY1", "LY2", "LY3", "LY4", "LY5", "LY6"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: &'static str,
    /// `None` on pass; otherwise the lexicographically first failing basis tuple.
    pub witness: Option<Vec<usize>>,
}

impl AxiomResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LyReport {
    pub axioms: Vec<AxiomResult>,
}

impl LyReport {
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(AxiomResult::passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomResult> {
        self.axioms.iter().find(|a| a.axiom == name)
    }
}

/// Decode a flat lexicographic index into a tuple of `arity` digits base `n`.
fn tuple_of(mut idx: usize, n: usize, arity: usize) -> Vec<usize> {
    let mut t = vec![0; arity];
    for slot in t.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    t
}

/// First tuple (lexicographic) of the given arity on which `fails` holds.
fn first_failure<F>(n: usize, arity: usize, fails: F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync + Send,
{
    let total = n.checked_pow(arity as u32).expect("tuple count overflow");
    par::find_first(total, |idx| fails(&tuple_of(idx, n, arity))).map(|idx| tuple_of(idx, n, arity))
}

/// `sum_p v[p] * t(p, k, l)`, i.e. the ternary product with a general first slot.
fn tern_first(t: &Tensor4, v: &[Rational], k: usize, l: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); t.dim()];
    for (p, vp) in v.iter().enumerate() {
        axpy(&mut out, vp, t.slice(p, k, l));
    }
    out
}

fn tern_second(t: &Tensor4, i: usize, v: &[Rational], l: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); t.dim()];
    for (p, vp) in v.iter().enumerate() {
        axpy(&mut out, vp, t.slice(i, p, l));
    }
    out
}

fn tern_third(t: &Tensor4, i: usize, j: usize, v: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); t.dim()];
    for (p, vp) in v.iter().enumerate() {
        axpy(&mut out, vp, t.slice(i, j, p));
    }
    out
}

fn add_all(parts: &[&[Rational]]) -> Vec<Rational> {
    let n = parts[0].len();
    (0..n).map(|k| parts.iter().map(|p| &p[k]).sum()).collect()
}

/// Check LY1-LY6 exactly on basis tuples.
///
/// The quadratic axioms LY1 and LY2 are checked in polarized form
/// (`X.Y + Y.X = 0`, `[X,Y,Z] + [Y,X,Z] = 0`), which is equivalent over Q.
pub fn ly_axiom_report(ly: &LieYamaguti) -> LyReport {
    let n = ly.dim();
    let b = &ly.binary;
    let t = &ly.ternary;

    let ly1 = first_failure(n, 2, |x| {
        let (i, j) = (x[0], x[1]);
        i <= j && !is_zero_vec(&add_all(&[b.slice(i, j), b.slice(j, i)]))
    });
    let ly2 = first_failure(n, 3, |x| {
        let (i, j, k) = (x[0], x[1], x[2]);
        i <= j && !is_zero_vec(&add_all(&[t.slice(i, j, k), t.slice(j, i, k)]))
    });
    let ly3 = first_failure(n, 3, |x| {
        let (i, j, k) = (x[0], x[1], x[2]);
        let bij_k = b.apply_right_basis(b.slice(i, j), k);
        let bjk_i = b.apply_right_basis(b.slice(j, k), i);
        let bki_j = b.apply_right_basis(b.slice(k, i), j);
        let s = add_all(&[
            t.slice(i, j, k),
            t.slice(j, k, i),
            t.slice(k, i, j),
            &bij_k,
            &bjk_i,
            &bki_j,
        ]);
        !is_zero_vec(&s)
    });
    let ly4 = first_failure(n, 4, |x| {
        let (i, j, k, l) = (x[0], x[1], x[2], x[3]);
        let s = add_all(&[
            &tern_first(t, b.slice(i, j), k, l),
            &tern_first(t, b.slice(j, k), i, l),
            &tern_first(t, b.slice(k, i), j, l),
        ]);
        !is_zero_vec(&s)
    });
    let ly5 = first_failure(n, 4, |x| {
        let (i, j, u, v) = (x[0], x[1], x[2], x[3]);
        let lhs = tern_third(t, i, j, b.slice(u, v));
        let r1 = b.apply_right_basis(t.slice(i, j, u), v);
        let r2 = b.apply_left_basis(u, t.slice(i, j, v));
        lhs != add_all(&[&r1, &r2])
    });
    let ly6 = first_failure(n, 5, |x| {
        let (i, j, u, v, w) = (x[0], x[1], x[2], x[3], x[4]);
        let lhs = tern_third(t, i, j, t.slice(u, v, w));
        let r1 = tern_first(t, t.slice(i, j, u), v, w);
        let r2 = tern_second(t, u, t.slice(i, j, v), w);
        let r3 = tern_third(t, u, v, t.slice(i, j, w));
        lhs != add_all(&[&r1, &r2, &r3])
    });

    let axioms = AXIOM_NAMES
        .iter()
        .zip([ly1, ly2, ly3, ly4, ly5, ly6])
        .map(|(&axiom, witness)| AxiomResult { axiom, witness })
        .collect();
    LyReport { axioms }
}

/// Standard enveloping Lie algebra of a Lie-Yamaguti algebra.
///
/// `h` is the span of the inner derivations `D(e_i, e_j) = [e_i, e_j, .]`
/// inside `End(m)`, with basis taken from the nonzero rows of the rref of the
/// generators listed in `(i, j)` order. The result has `m` at indices
/// `0..n` (labels `e1..en`) and `h` at `n..n+r` (labels `D1..Dr`), with
/// `[D, D'] = DD' - D'D`, `[D, X] = D(X)` and `[X, Y] = D(X, Y) + X.Y`.
pub fn standard_envelope(ly: &LieYamaguti) -> Result<(LieAlgebra, Decomposition)> {
    let report = ly_axiom_report(ly);
    if let Some(bad) = report.axioms.iter().find(|a| !a.passed()) {
        return Err(Error::AxiomsViolated(format!(
            "{} fails at {:?}",
            bad.axiom,
            bad.witness.as_ref().unwrap()
        )));
    }
    let n = ly.dim();
    let nn = n * n;
    let generators: Vec<RatMatrix> = (0..nn).map(|p| ly.inner_derivation(p / n, p % n)).collect();
    let stacked = RatMatrix::from_rows(generators.iter().map(|g| g.entries().to_vec()).collect());
    let (reduced, pivots) = stacked.rref();
    let r = pivots.len();
    let h_basis: Vec<RatMatrix> = (0..r)
        .map(|s| RatMatrix::from_vec(n, n, reduced.row(s).to_vec()).expect("n x n"))
        .collect();

    // Coordinates in the rref basis are read off at the pivot columns.
    let coords = |mat: &RatMatrix| -> Result<Vec<Rational>> {
        let flat = mat.entries();
        let cs: Vec<Rational> = pivots.iter().map(|&p| flat[p].clone()).collect();
        let mut back = vec![Rational::zero(); nn];
        for (s, cv) in cs.iter().enumerate() {
            axpy(&mut back, cv, reduced.row(s));
        }
        if back != flat {
            return Err(Error::AxiomsViolated(
                "inner derivations do not close under the commutator".into(),
            ));
        }
        Ok(cs)
    };

    let dim = n + r;
    let mut c = Tensor3::zeros(dim);
    let mut put = |a: usize, b: usize, v: &[Rational]| {
        for (k, x) in v.iter().enumerate() {
            c.set(a, b, k, x.clone());
            c.set(b, a, k, -x);
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![Rational::zero(); dim];
            v[..n].clone_from_slice(ly.binary.slice(i, j));
            for (s, x) in coords(&generators[i * n + j])?.into_iter().enumerate() {
                v[n + s] = x;
            }
            put(i, j, &v);
        }
    }
    for (s, ds) in h_basis.iter().enumerate() {
        for i in 0..n {
            // [e_i, D_s] = -D_s(e_i)
            let mut v = vec![Rational::zero(); dim];
            for l in 0..n {
                v[l] = -ds.get(l, i);
            }
            put(i, n + s, &v);
        }
        for (s2, dt) in h_basis.iter().enumerate().skip(s + 1) {
            let comm = ds.mul(dt)?.sub(&dt.mul(ds)?)?;
            let mut v = vec![Rational::zero(); dim];
            for (q, x) in coords(&comm)?.into_iter().enumerate() {
                v[n + q] = x;
            }
            put(n + s, n + s2, &v);
        }
    }

    let labels = (1..=n)
        .map(|i| format!("e{i}"))
        .chain((1..=r).map(|s| format!("D{s}")))
        .collect();
    let g = LieAlgebra::from_structure_constants("envelope", labels, c)?;
    let rep = crate::lie::validate_lie(&g);
    if let Some(v) = rep.first() {
        return Err(Error::AxiomsViolated(format!(
            "envelope bracket is not a Lie bracket: {v}"
        )));
    }
    let d = Decomposition::new(dim, (n..dim).collect(), Some((0..n).collect()))?;
    Ok((g, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::generate_model;
    use crate::tensor::unit;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn so3_so2() -> (LieAlgebra, Decomposition) {
        let g = generate_model("so3").unwrap();
        let d = Decomposition::new(3, vec![2], None).unwrap();
        (g, d)
    }

    fn sl2_h() -> (LieAlgebra, Decomposition) {
        let g = generate_model("sl2").unwrap();
        let d = Decomposition::new(3, vec![0], None).unwrap();
        (g, d)
    }

    #[test]
    fn decomposition_validation() {
        assert!(Decomposition::new(3, vec![3], None).is_err());
        assert!(Decomposition::new(3, vec![1], Some(vec![0, 1, 2])).is_err());
        assert!(Decomposition::new(3, vec![1], Some(vec![0])).is_err());
        let d = Decomposition::new(4, vec![3, 1], None).unwrap();
        assert_eq!(d.h(), &[1, 3]);
        assert_eq!(d.m(), &[0, 2]);
        assert_eq!(Decomposition::all_partitions(3).len(), 8);
    }

    #[test]
    fn reductive_examples() {
        let (g, d) = so3_so2();
        assert!(check_reductive(&g, &d).is_empty());
        let (g, d) = sl2_h();
        assert!(check_reductive(&g, &d).is_empty());
        let g = generate_model("so3").unwrap();
        let d = Decomposition::new(3, vec![0, 1], None).unwrap();
        let rep = check_reductive(&g, &d);
        assert_eq!(rep.first().unwrap().kind, ViolationKind::SubalgebraClosure);
        assert_eq!(rep.first().unwrap().indices, vec![0, 1, 2]);
        assert!(matches!(binary_product(&g, &d), Err(Error::NotReductive(_))));
        assert!(matches!(ternary_product(&g, &d), Err(Error::NotReductive(_))));
    }

    #[test]
    fn products_on_symmetric_pairs() {
        let (g, d) = so3_so2();
        assert!(binary_product(&g, &d).unwrap().is_zero());
        let t = ternary_product(&g, &d).unwrap();
        // [e1,e2,e1] = [e3,e1] = e2
        assert_eq!(t.slice(0, 1, 0), &[r(0), r(1)]);
        let (g, d) = sl2_h();
        assert!(binary_product(&g, &d).unwrap().is_zero());
        // [e,f,e] = [h,e] = 2e
        assert_eq!(ternary_product(&g, &d).unwrap().slice(0, 1, 0), &[r(2), r(0)]);
    }

    #[test]
    fn trivial_h_gives_bracket() {
        let g = generate_model("so3").unwrap();
        let d = Decomposition::trivial(3);
        assert_eq!(&binary_product(&g, &d).unwrap(), g.structure_constants());
        assert!(ternary_product(&g, &d).unwrap().is_zero());
    }

    #[test]
    fn zero_tensors_pass() {
        let ly = LieYamaguti::new(Tensor3::zeros(3), Tensor4::zeros(3)).unwrap();
        assert!(ly_axiom_report(&ly).all_pass());
    }

    #[test]
    fn perturbed_ternary_fails() {
        let (g, d) = so3_so2();
        let ly = LieYamaguti::from_decomposition(&g, &d).unwrap();
        let mut t = ly.ternary().clone();
        for l in 0..2 {
            let v = -t.get(0, 1, 0, l);
            t.set(0, 1, 0, l, v);
        }
        let bad = LieYamaguti::new(ly.binary().clone(), t).unwrap();
        let rep = ly_axiom_report(&bad);
        let ly3 = rep.get("LY3").unwrap();
        let ly6 = rep.get("LY6").unwrap();
        assert!(!ly3.passed() || !ly6.passed());
        assert!(matches!(standard_envelope(&bad), Err(Error::AxiomsViolated(_))));
    }

    #[test]
    fn envelope_so3_so2() {
        let (g, d) = so3_so2();
        let ly = LieYamaguti::from_decomposition(&g, &d).unwrap();
        let (env, ed) = standard_envelope(&ly).unwrap();
        assert_eq!(env.dim(), 3);
        assert_eq!(ed.h().len(), 1);
        // the single inner derivation is a multiple of the rotation e1 -> e2, e2 -> -e1
        let dm = ly.inner_derivation(0, 1);
        assert_eq!(dm.column(0), vec![r(0), r(1)]);
        assert_eq!(dm.column(1), vec![r(-1), r(0)]);
        assert_eq!(&binary_product(&env, &ed).unwrap(), ly.binary());
        assert_eq!(&ternary_product(&env, &ed).unwrap(), ly.ternary());
    }

    #[test]
    fn envelope_of_zero_is_abelian() {
        let ly = LieYamaguti::new(Tensor3::zeros(3), Tensor4::zeros(3)).unwrap();
        let (env, ed) = standard_envelope(&ly).unwrap();
        assert_eq!(env.dim(), 3);
        assert!(ed.h().is_empty());
        assert!(env.structure_constants().is_zero());
    }

    #[test]
    fn envelope_sl2() {
        let (g, d) = sl2_h();
        let ly = LieYamaguti::from_decomposition(&g, &d).unwrap();
        let (env, ed) = standard_envelope(&ly).unwrap();
        assert_eq!(env.dim(), 3);
        assert_eq!(ed.h().len(), 1);
        assert!(crate::lie::validate_lie(&env).is_empty());
        assert_eq!(&ternary_product(&env, &ed).unwrap(), ly.ternary());
    }

    #[test]
    fn envelope_group_case_keeps_binary() {
        // h = 0 on so3: ternary vanishes, binary is the bracket; D-span is zero.
        let g = generate_model("so3").unwrap();
        let ly = LieYamaguti::from_decomposition(&g, &Decomposition::trivial(3)).unwrap();
        let (env, ed) = standard_envelope(&ly).unwrap();
        assert!(ed.h().is_empty());
        assert_eq!(env.structure_constants(), g.structure_constants());
    }

    #[test]
    fn tuple_decoding_is_lexicographic() {
        assert_eq!(tuple_of(0, 3, 2), vec![0, 0]);
        assert_eq!(tuple_of(5, 3, 2), vec![1, 2]);
        assert_eq!(first_failure(3, 2, |t| t[1] == 2), Some(vec![0, 2]));
    }

    #[test]
    fn embed_and_project() {
        let d = Decomposition::new(3, vec![1], None).unwrap();
        let v = d.embed_m(&[r(4), r(5)]);
        assert_eq!(v, vec![r(4), r(0), r(5)]);
        assert_eq!(d.project_m(&v), vec![r(4), r(5)]);
        assert_eq!(d.project_h(&unit(3, 1)), vec![r(1)]);
    }
}
