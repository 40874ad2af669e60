//! Command-line front end. `run` does all the work so it can be driven from tests.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::connections::{
    classify_connection, curvature, distinguished_alpha, invariant_connection_space, torsion, AlphaTensor,
    Distinguished,
};
use crate::error::Error;
use crate::format::{parse_algebra_file, tensor3_to_sparse, tensor4_to_sparse, AlgebraFile, FormatError};
use crate::identities::identity_report;
use crate::lie::{generate_model, validate_lie, LieAlgebra};
use crate::metric::{levi_civita_alpha, metric_flags, validate_metric, MetricTensor};
use crate::numeric::{ad_exp_table, DEFAULT_RESIDUAL_TOL, DEFAULT_SERIES_TOL};
use crate::rational::Rational;
use crate::reductive::{
    binary_product, check_reductive, ly_axiom_report, standard_envelope, ternary_product, Decomposition, LieYamaguti,
};
use crate::report::{ValidationReport, ViolationKind};
use crate::tensor::{Tensor3, Tensor4};

#[derive(Debug, Parser)]
#[command(
    name = "invconn",
    version,
    about = "Exact invariant connections on reductive homogeneous spaces"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Jacobi identity, reductivity and (if present) the metric.
    Validate { file: PathBuf },
    /// Print the binary and ternary products on m.
    Products { file: PathBuf },
    /// Check the Lie-Yamaguti axioms.
    LyCheck { file: PathBuf },
    /// Basis of the space of invariant connections.
    ConnSpace { file: PathBuf },
    /// Torsion, curvature and algebraic identities of a connection.
    Classify {
        file: PathBuf,
        /// `natural`, `canonical`, or a file with an `alpha` section.
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Levi-Civita connection of the metric in the file.
    LeviCivita { file: PathBuf },
    /// Standard enveloping Lie algebra of the products.
    Envelope { file: PathBuf },
    /// Check Ad(exp tX) = exp(t ad X) on basis vectors.
    Adexp {
        #[arg(long)]
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = DEFAULT_SERIES_TOL)]
        tol: f64,
    },
    /// Write a built-in model as an algebra file.
    Gen {
        #[arg(long)]
        model: String,
        /// Comma-separated basis indices spanning h.
        #[arg(long, value_delimiter = ',')]
        h: Vec<usize>,
        /// Attach the identity metric on m.
        #[arg(long)]
        identity_metric: bool,
    },
}

enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// The computation ran but a check did not hold, or the input has the wrong structure: exit 1.
    Failed(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownModel(_) | Error::BadParameter(_) => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<bool, Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut buf = String::new();
    let result = dispatch(&cli, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Failed(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut String) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Validate { file } => validate(&load(file)?, json, out),
        Command::Products { file } => products(&load(file)?, json, out),
        Command::LyCheck { file } => ly_check(&load(file)?, json, out),
        Command::ConnSpace { file } => conn_space(&load(file)?, json, out),
        Command::Classify { file, alpha } => classify(&load(file)?, alpha.as_deref(), json, out),
        Command::LeviCivita { file } => levi_civita(&load(file)?, json, out),
        Command::Envelope { file } => envelope(&load(file)?, out),
        Command::Adexp { model, t, tol } => adexp(model, *t, *tol, json, out),
        Command::Gen {
            model,
            h,
            identity_metric,
        } => gen(model, h, *identity_metric, out),
    }
}

fn load(path: &Path) -> std::result::Result<AlgebraFile, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_algebra_file(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn push_json(out: &mut String, value: &impl Serialize) {
    out.push_str(&serde_json::to_string_pretty(value).expect("serializable"));
    out.push('\n');
}

/// `2*e1 - 1/2*e3`, or `0`.
fn fmt_vec(v: &[Rational], labels: &[String]) -> String {
    let mut s = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            s.push_str(&format!("{mag}*"));
        }
        s.push_str(&labels[k]);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn fmt_tensor3(out: &mut String, t: &Tensor3, labels: &[String], name: &str) {
    let n = t.dim();
    let mut any = false;
    for i in 0..n {
        for j in 0..n {
            let v = t.slice(i, j);
            if v.iter().any(|x| !x.is_zero()) {
                any = true;
                out.push_str(&format!(
                    "  {name}({}, {}) = {}\n",
                    labels[i],
                    labels[j],
                    fmt_vec(v, labels)
                ));
            }
        }
    }
    if !any {
        out.push_str("  (zero)\n");
    }
}

fn fmt_tensor4(out: &mut String, t: &Tensor4, labels: &[String], name: &str) {
    let n = t.dim();
    let mut any = false;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = t.slice(i, j, k);
                if v.iter().any(|x| !x.is_zero()) {
                    any = true;
                    out.push_str(&format!(
                        "  {name}({}, {}, {}) = {}\n",
                        labels[i],
                        labels[j],
                        labels[k],
                        fmt_vec(v, labels)
                    ));
                }
            }
        }
    }
    if !any {
        out.push_str("  (zero)\n");
    }
}

fn fmt_report(out: &mut String, title: &str, r: Option<&ValidationReport>) {
    match r {
        None => out.push_str(&format!("{title}: skipped\n")),
        Some(r) if r.is_empty() => out.push_str(&format!("{title}: ok\n")),
        Some(r) => {
            out.push_str(&format!("{title}: {} violation(s)\n", r.violations.len()));
            for v in &r.violations {
                out.push_str(&format!("  {v}\n"));
            }
        }
    }
}

fn algebra(file: &AlgebraFile) -> std::result::Result<(LieAlgebra, Decomposition), Failure> {
    Ok((file.lie_algebra()?, file.decomposition()?))
}

/// Stored products compared against those computed from the brackets.
fn stored_product_report(file: &AlgebraFile, g: &LieAlgebra, d: &Decomposition) -> Option<ValidationReport> {
    let stored = file.stored_lie_yamaguti()?;
    file.brackets.as_ref()?;
    let mut report = ValidationReport::default();
    let (b, t) = (binary_product(g, d).ok()?, ternary_product(g, d).ok()?);
    let n = d.mdim();
    for i in 0..n {
        for j in 0..n {
            if file.binary.is_some() && stored.binary().slice(i, j) != b.slice(i, j) {
                report.push(ViolationKind::ProductMismatch, vec![i, j]);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if file.ternary.is_some() && stored.ternary().slice(i, j, k) != t.slice(i, j, k) {
                    report.push(ViolationKind::ProductMismatch, vec![i, j, k]);
                }
            }
        }
    }
    Some(report)
}

fn validate(file: &AlgebraFile, json: bool, out: &mut String) -> Outcome {
    let (g, d) = algebra(file)?;
    let lie = validate_lie(&g);
    let reductive = check_reductive(&g, &d);
    let metric = file.metric_tensor().map(|m| validate_metric(&g, &d, &m));
    let products = if reductive.is_empty() {
        stored_product_report(file, &g, &d)
    } else {
        None
    };
    let ok = lie.is_empty()
        && reductive.is_empty()
        && metric.as_ref().is_none_or(ValidationReport::is_empty)
        && products.as_ref().is_none_or(ValidationReport::is_empty);
    if json {
        push_json(
            out,
            &json!({ "lie": lie, "reductive": reductive, "metric": metric, "products": products, "ok": ok }),
        );
    } else {
        fmt_report(out, "lie", Some(&lie));
        fmt_report(out, "reductive", Some(&reductive));
        fmt_report(out, "metric", metric.as_ref());
        fmt_report(out, "products", products.as_ref());
    }
    Ok(ok)
}

/// Stored products if the file has them, else those of the brackets.
fn lie_yamaguti(file: &AlgebraFile) -> std::result::Result<LieYamaguti, Failure> {
    if let Some(ly) = file.stored_lie_yamaguti() {
        return Ok(ly);
    }
    let (g, d) = algebra(file)?;
    Ok(LieYamaguti::from_decomposition(&g, &d)?)
}

fn products(file: &AlgebraFile, json: bool, out: &mut String) -> Outcome {
    let (g, d) = algebra(file)?;
    let ly = LieYamaguti::from_decomposition(&g, &d)?;
    let labels = file.m_labels();
    if json {
        push_json(
            out,
            &json!({
                "m": labels,
                "binary": tensor3_to_sparse(ly.binary()),
                "ternary": tensor4_to_sparse(ly.ternary()),
            }),
        );
    } else {
        out.push_str("binary:\n");
        fmt_tensor3(out, ly.binary(), &labels, "b");
        out.push_str("ternary:\n");
        fmt_tensor4(out, ly.ternary(), &labels, "t");
    }
    Ok(true)
}

fn ly_check(file: &AlgebraFile, json: bool, out: &mut String) -> Outcome {
    let report = ly_axiom_report(&lie_yamaguti(file)?);
    let ok = report.all_pass();
    if json {
        push_json(out, &json!({ "axioms": report.axioms, "all_pass": ok }));
    } else {
        for a in &report.axioms {
            match &a.witness {
                None => out.push_str(&format!("{}: ok\n", a.axiom)),
                Some(w) => out.push_str(&format!("{}: fails at {w:?}\n", a.axiom)),
            }
        }
    }
    Ok(ok)
}

fn conn_space(file: &AlgebraFile, json: bool, out: &mut String) -> Outcome {
    let (g, d) = algebra(file)?;
    let space = invariant_connection_space(&g, &d)?;
    if json {
        let basis: Vec<_> = space.basis.iter().map(tensor3_to_sparse).collect();
        push_json(out, &json!({ "dimension": space.dim(), "basis": basis }));
    } else {
        let labels = file.m_labels();
        out.push_str(&format!("dimension: {}\n", space.dim()));
        for (s, b) in space.basis.iter().enumerate() {
            out.push_str(&format!("basis {}:\n", s + 1));
            fmt_tensor3(out, b, &labels, "alpha");
        }
    }
    Ok(true)
}

fn choose_alpha(
    file: &AlgebraFile,
    choice: Option<&str>,
    g: &LieAlgebra,
    d: &Decomposition,
) -> std::result::Result<(String, AlphaTensor), Failure> {
    match choice {
        Some("natural") => Ok(("natural".into(), distinguished_alpha(Distinguished::Natural, g, d)?)),
        Some("canonical") => Ok(("canonical".into(), distinguished_alpha(Distinguished::Canonical, g, d)?)),
        Some(path) => {
            let other = load(Path::new(path))?;
            let alpha = other
                .alpha_tensor()
                .ok_or_else(|| Failure::Usage(format!("{path}: no alpha section")))?;
            if alpha.dim() != d.mdim() {
                return Err(Failure::Usage(format!(
                    "{path}: alpha is on a space of dimension {}, m has {}",
                    alpha.dim(),
                    d.mdim()
                )));
            }
            Ok(("file".into(), alpha))
        }
        None => match file.alpha_tensor() {
            Some(a) => Ok(("file".into(), a)),
            None => Ok(("natural".into(), distinguished_alpha(Distinguished::Natural, g, d)?)),
        },
    }
}

fn classify(file: &AlgebraFile, choice: Option<&str>, json: bool, out: &mut String) -> Outcome {
    let (g, d) = algebra(file)?;
    let (source, alpha) = choose_alpha(file, choice, &g, &d)?;
    let tor = torsion(&alpha, &g, &d)?;
    let cur = curvature(&alpha, &g, &d)?;
    let flags = classify_connection(&alpha, &g, &d)?;
    let ids = identity_report(&alpha);
    if json {
        push_json(
            out,
            &json!({
                "connection": source,
                "alpha": tensor3_to_sparse(&alpha),
                "torsion": tensor3_to_sparse(&tor),
                "curvature": tensor4_to_sparse(&cur),
                "flags": flags,
                "identities": ids,
            }),
        );
    } else {
        let labels = file.m_labels();
        out.push_str(&format!("connection: {source}\nalpha:\n"));
        fmt_tensor3(out, &alpha, &labels, "alpha");
        out.push_str("torsion:\n");
        fmt_tensor3(out, &tor, &labels, "T");
        out.push_str("curvature:\n");
        fmt_tensor4(out, &cur, &labels, "R");
        out.push_str(&format!(
            "symmetric: {}\nflat: {}\nanticommutative: {}\nequivariant: {}\n",
            flags.symmetric, flags.flat, flags.anticommutative, flags.equivariant
        ));
        out.push_str(&format!(
            "lie_admissible: {}\nflexible: {}\nleft_symmetric: {}\nassociative: {}\nad_derivation: {}\n",
            ids.lie_admissible, ids.flexible, ids.left_symmetric, ids.associative, ids.ad_derivation
        ));
    }
    Ok(true)
}

fn levi_civita(file: &AlgebraFile, json: bool, out: &mut String) -> Outcome {
    let (g, d) = algebra(file)?;
    let met: MetricTensor = file
        .metric_tensor()
        .ok_or_else(|| Failure::Usage("file has no metric".into()))?;
    let alpha = levi_civita_alpha(&g, &d, &met)?;
    let flags = metric_flags(&alpha, &g, &d, &met)?;
    if json {
        push_json(out, &json!({ "alpha": tensor3_to_sparse(&alpha), "flags": flags }));
    } else {
        out.push_str("alpha:\n");
        fmt_tensor3(out, &alpha, &file.m_labels(), "alpha");
        out.push_str(&format!(
            "torsion_free: {}\nskew_compatible: {}\nnaturally_reductive: {}\ncommutative_part_identity: {}\n",
            flags.torsion_free, flags.skew_compatible, flags.naturally_reductive, flags.commutative_part_identity
        ));
    }
    Ok(true)
}

fn envelope(file: &AlgebraFile, out: &mut String) -> Outcome {
    let ly = lie_yamaguti(file)?;
    let (env, d) = standard_envelope(&ly)?;
    let env = env.with_name(format!("{}-envelope", file.name));
    out.push_str(&AlgebraFile::from_algebra(&env, Some(&d), None).to_json());
    Ok(true)
}

fn adexp(model: &str, t: f64, tol: f64, json: bool, out: &mut String) -> Outcome {
    if !t.is_finite() {
        return Err(Failure::Usage("t must be finite".into()));
    }
    let rows = ad_exp_table(model, t, tol)?;
    let max = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    let ok = max < DEFAULT_RESIDUAL_TOL;
    if json {
        push_json(
            out,
            &json!({ "model": model, "t": t, "max_residual": max, "ok": ok, "rows": rows }),
        );
    } else {
        for r in &rows {
            out.push_str(&format!("e{} e{} {:.3e}\n", r.x + 1, r.y + 1, r.residual));
        }
        out.push_str(&format!("max residual: {max:.3e}\n"));
    }
    Ok(ok)
}

fn gen(model: &str, h: &[usize], identity_metric: bool, out: &mut String) -> Outcome {
    let g = generate_model(model)?;
    let d = Decomposition::new(g.dim(), h.to_vec(), None)?;
    let met = identity_metric.then(|| MetricTensor::identity(d.mdim()));
    out.push_str(&AlgebraFile::from_algebra(&g, Some(&d), met.as_ref()).to_json());
    Ok(true)
}
