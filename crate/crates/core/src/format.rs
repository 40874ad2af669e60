//! JSON algebra files.
//!
//! ```json
//! {
//!   "name": "so3",
//!   "dim": 3,
//!   "basis": ["e1", "e2", "e3"],
//!   "brackets": [{"i": 0, "j": 1, "c": [[2, "1"]]}],
//!   "h": [2],
//!   "metric": [["1", "0"], ["0", "1"]]
//! }
//! ```
//!
//! Bracket entries require `i < j` and are completed antisymmetrically.
//! `m` defaults to the complement of `h`. `metric`, `alpha`, `binary` and
//! `ternary` are indexed by position in `m`. Rationals are always strings.
//! Unknown keys are rejected.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{default_labels, BracketEntry, LieAlgebra};
use crate::matrix::RatMatrix;
use crate::metric::MetricTensor;
use crate::rational::Rational;
use crate::reductive::{Decomposition, LieYamaguti};
use crate::tensor::{Tensor3, Tensor4};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{what}: index {index} out of range (must be < {bound})")]
    IndexOutOfRange { what: String, index: usize, bound: usize },

    #[error("duplicate entry: {0}")]
    DuplicateEntry(String),

    #[error("bracket entry ({i}, {j}) must have i < j")]
    NonCanonicalPair { i: usize, j: usize },

    #[error("{0}")]
    Invalid(String),
}

/// `t(e_i, e_j) = sum c_k e_k`, written `{"i": .., "j": .., "c": [[k, "p/q"], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub i: usize,
    pub j: usize,
    pub c: Vec<(usize, Rational)>,
}

/// `t(e_i, e_j, e_k) = sum c_l e_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Vec<(usize, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brackets: Option<Vec<PairEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<Rational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<PairEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub binary: Option<Vec<PairEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ternary: Option<Vec<TripleEntry>>,
}

fn check_index(what: &str, index: usize, bound: usize) -> Result<(), FormatError> {
    if index >= bound {
        return Err(FormatError::IndexOutOfRange {
            what: what.to_string(),
            index,
            bound,
        });
    }
    Ok(())
}

fn check_terms(what: &str, c: &[(usize, Rational)], bound: usize) -> Result<(), FormatError> {
    let mut seen = BTreeSet::new();
    for (k, _) in c {
        check_index(what, *k, bound)?;
        if !seen.insert(*k) {
            return Err(FormatError::DuplicateEntry(format!(
                "{what}: output index {k} listed twice"
            )));
        }
    }
    Ok(())
}

fn check_pairs(what: &str, entries: &[PairEntry], bound: usize, canonical: bool) -> Result<(), FormatError> {
    let mut seen = BTreeSet::new();
    for e in entries {
        if canonical && e.i >= e.j {
            return Err(FormatError::NonCanonicalPair { i: e.i, j: e.j });
        }
        check_index(what, e.i, bound)?;
        check_index(what, e.j, bound)?;
        if !seen.insert((e.i, e.j)) {
            return Err(FormatError::DuplicateEntry(format!(
                "{what}: pair ({}, {}) listed twice",
                e.i, e.j
            )));
        }
        check_terms(what, &e.c, bound)?;
    }
    Ok(())
}

fn check_triples(what: &str, entries: &[TripleEntry], bound: usize) -> Result<(), FormatError> {
    let mut seen = BTreeSet::new();
    for e in entries {
        for idx in [e.i, e.j, e.k] {
            check_index(what, idx, bound)?;
        }
        if !seen.insert((e.i, e.j, e.k)) {
            return Err(FormatError::DuplicateEntry(format!(
                "{what}: triple ({}, {}, {}) listed twice",
                e.i, e.j, e.k
            )));
        }
        check_terms(what, &e.c, bound)?;
    }
    Ok(())
}

/// Strict parse followed by index and consistency checks on the indices.
pub fn parse_algebra_file(text: &str) -> Result<AlgebraFile, FormatError> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| FormatError::ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.check()?;
    Ok(file)
}

impl AlgebraFile {
    fn check(&self) -> Result<(), FormatError> {
        let n = self.dim;
        if let Some(basis) = &self.basis {
            if basis.len() != n {
                return Err(FormatError::Invalid(format!(
                    "basis has {} labels but dim is {n}",
                    basis.len()
                )));
            }
        }
        if let Some(b) = &self.brackets {
            check_pairs("brackets", b, n, true)?;
        }
        let mut seen = BTreeSet::new();
        for &i in self.h.iter().flatten().chain(self.m.iter().flatten()) {
            check_index("h/m", i, n)?;
            if !seen.insert(i) {
                return Err(FormatError::DuplicateEntry(format!(
                    "basis index {i} appears twice in h/m"
                )));
            }
        }
        if self.m.is_some() && seen.len() != n {
            return Err(FormatError::Invalid(
                "h and m must together cover every basis index".into(),
            ));
        }
        let mdim = self.mdim();
        if let Some(metric) = &self.metric {
            if metric.len() != mdim || metric.iter().any(|r| r.len() != mdim) {
                return Err(FormatError::Invalid(format!(
                    "metric must be {mdim}x{mdim} (the size of m)"
                )));
            }
        }
        if let Some(a) = &self.alpha {
            check_pairs("alpha", a, mdim, false)?;
        }
        if let Some(b) = &self.binary {
            check_pairs("binary", b, mdim, false)?;
        }
        if let Some(t) = &self.ternary {
            check_triples("ternary", t, mdim)?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis.clone().unwrap_or_else(|| default_labels(self.dim))
    }

    pub fn mdim(&self) -> usize {
        match &self.m {
            Some(m) => m.len(),
            None => self.dim - self.h.as_ref().map_or(0, Vec::len),
        }
    }

    pub fn lie_algebra(&self) -> Result<LieAlgebra, FormatError> {
        let entries: Vec<BracketEntry> = self
            .brackets
            .iter()
            .flatten()
            .map(|e| BracketEntry::new(e.i, e.j, e.c.clone()))
            .collect();
        LieAlgebra::from_brackets(self.name.clone(), self.labels(), &entries)
            .map_err(|e| FormatError::Invalid(e.to_string()))
    }

    pub fn decomposition(&self) -> Result<Decomposition, FormatError> {
        Decomposition::new(self.dim, self.h.clone().unwrap_or_default(), self.m.clone())
            .map_err(|e| FormatError::Invalid(e.to_string()))
    }

    pub fn metric_tensor(&self) -> Option<MetricTensor> {
        self.metric
            .as_ref()
            .map(|rows| MetricTensor::new(RatMatrix::from_rows(rows.clone())).expect("checked square"))
    }

    pub fn alpha_tensor(&self) -> Option<Tensor3> {
        self.alpha.as_ref().map(|a| tensor3_from_sparse(self.mdim(), a))
    }

    /// The stored binary/ternary products, if either section is present.
    /// A missing section is read as zero.
    pub fn stored_lie_yamaguti(&self) -> Option<LieYamaguti> {
        if self.binary.is_none() && self.ternary.is_none() {
            return None;
        }
        let n = self.mdim();
        let b = self
            .binary
            .as_ref()
            .map_or_else(|| Tensor3::zeros(n), |e| tensor3_from_sparse(n, e));
        let t = self
            .ternary
            .as_ref()
            .map_or_else(|| Tensor4::zeros(n), |e| tensor4_from_sparse(n, e));
        Some(LieYamaguti::new(b, t).expect("same dimension"))
    }

    /// Labels of the `m` basis vectors.
    pub fn m_labels(&self) -> Vec<String> {
        let labels = self.labels();
        match self.decomposition() {
            Ok(d) => d.m().iter().map(|&i| labels[i].clone()).collect(),
            Err(_) => labels,
        }
    }

    /// A file describing `g`, with an optional decomposition and metric.
    pub fn from_algebra(g: &LieAlgebra, d: Option<&Decomposition>, metric: Option<&MetricTensor>) -> Self {
        let brackets = g
            .bracket_entries()
            .into_iter()
            .map(|e| PairEntry {
                i: e.i,
                j: e.j,
                c: e.terms,
            })
            .collect();
        let (h, m) = match d {
            Some(d) if !d.h().is_empty() => {
                let complement: Vec<usize> = (0..g.dim()).filter(|i| !d.h().contains(i)).collect();
                let m = (d.m() != complement.as_slice()).then(|| d.m().to_vec());
                (Some(d.h().to_vec()), m)
            }
            _ => (None, None),
        };
        AlgebraFile {
            name: g.name().to_string(),
            dim: g.dim(),
            basis: Some(g.basis().to_vec()),
            brackets: Some(brackets),
            h,
            m,
            metric: metric.map(|mt| mt.matrix().to_rows()),
            alpha: None,
            binary: None,
            ternary: None,
        }
    }
}

pub fn tensor3_from_sparse(n: usize, entries: &[PairEntry]) -> Tensor3 {
    let mut t = Tensor3::zeros(n);
    for e in entries {
        for (k, v) in &e.c {
            t.set(e.i, e.j, *k, v.clone());
        }
    }
    t
}

pub fn tensor4_from_sparse(n: usize, entries: &[TripleEntry]) -> Tensor4 {
    let mut t = Tensor4::zeros(n);
    for e in entries {
        for (l, v) in &e.c {
            t.set(e.i, e.j, e.k, *l, v.clone());
        }
    }
    t
}

fn nonzero_terms(v: &[Rational]) -> Vec<(usize, Rational)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

/// Nonzero `t(e_i, e_j)` in `(i, j)` order.
pub fn tensor3_to_sparse(t: &Tensor3) -> Vec<PairEntry> {
    let n = t.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = nonzero_terms(t.slice(i, j));
            if !c.is_empty() {
                out.push(PairEntry { i, j, c });
            }
        }
    }
    out
}

pub fn tensor4_to_sparse(t: &Tensor4) -> Vec<TripleEntry> {
    let n = t.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = nonzero_terms(t.slice(i, j, k));
                if !c.is_empty() {
                    out.push(TripleEntry { i, j, k, c });
                }
            }
        }
    }
    out
}
