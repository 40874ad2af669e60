use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `c[i][j][k] + c[j][i][k] != 0`, indices `(i, j, k)` with `i <= j`.
    Antisymmetry,
    /// Nonzero `e_m` component of the cyclic Jacobi sum on `(e_i, e_j, e_k)`.
    Jacobi,
    /// `[h_a, h_b]` has a component outside `h`; indices are global `(a, b, k)`.
    SubalgebraClosure,
    /// `[h_a, m_i]` has a component outside `m`; indices are global `(a, i, k)`.
    NotInvariant,
    /// `g[i][j] != g[j][i]` on `m`.
    MetricAsymmetric,
    /// The metric matrix is singular; indices empty.
    MetricDegenerate,
    /// `g([U, X], Y) + g(X, [U, Y]) != 0`; global indices `(U, X, Y)`.
    MetricNotInvariant,
    /// Stored binary/ternary products disagree with those of the brackets.
    ProductMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub indices: Vec<usize>,
}

impl Violation {
    pub fn new(kind: ViolationKind, indices: Vec<usize>) -> Self {
        Violation { kind, indices }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
        write!(f, "{:?} at ({})", self.kind, idx.join(", "))
    }
}

/// Every violation found by a validator. Empty means the input passed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, kind: ViolationKind, indices: Vec<usize>) {
        self.violations.push(Violation::new(kind, indices));
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl Extend<Violation> for ValidationReport {
    fn extend<T: IntoIterator<Item = Violation>>(&mut self, iter: T) {
        self.violations.extend(iter);
    }
}
