//! JSON input formats for algebras, metrics, vector forms, curves and forms.
//!
//! ```text
//! algebra: {"n": 4, "params": ["a1", ...], "d": {"4": "a1*e[1,2|] + ..."}}
//! metric:  {"metric": "diagonal"} | {"F": {"1|2": "expr", ...}}
//! vector:  {"phi": {"k|j": "expr"}}            coefficient of η̄^j ⊗ Z_k
//! curve:   {"parameter": "t", "phi": {"k|j": "expr in t"}}
//! form:    {"form": "expr"}
//! ```
//!
//! Every file may carry a `params` list; entries are names (complex) or
//! `{"name": ..., "kind": "real"}`. Omitted `dη^j` means `dη^j = 0`.

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, ComplexNilAlgebra};
use crate::contraction::VectorForm01;
use crate::deformation::{DeformationCurve, DeformationError};
use crate::exterior::{parse_form, Form, MAX_DIM};
use crate::linalg::Matrix;
use crate::metrics::{HermitianMetric, MetricError};
use crate::scalars::{parse_scalar, Assignment, ParamScalar, ParseError, Registry, VarKind};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("in `{context}`: {source}")]
    Expr { context: String, source: ParseError },
    #[error("bad key `{key}`: {message}")]
    Key { key: String, message: String },
    #[error("parameter `{0}`")]
    Declare(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Deformation(#[from] DeformationError),
}

impl IoError {
    /// Whether the error is a syntax or reference problem in the input.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, IoError::Json { .. } | IoError::Expr { .. } | IoError::Key { .. } | IoError::Declare(_))
    }
}

fn json<'a, T: Deserialize<'a>>(src: &'a str) -> Result<T, IoError> {
    serde_json::from_str(src).map_err(|e| IoError::Json { line: e.line(), column: e.column(), message: e.to_string() })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ParamDecl {
    Name(String),
    Full { name: String, #[serde(default = "complex")] kind: VarKind },
}

fn complex() -> VarKind {
    VarKind::Complex
}

fn declare_all(reg: &mut Registry, params: &[ParamDecl]) -> Result<(), IoError> {
    for p in params {
        let (name, kind) = match p {
            ParamDecl::Name(n) => (n.as_str(), VarKind::Complex),
            ParamDecl::Full { name, kind } => (name.as_str(), *kind),
        };
        reg.declare(name, kind).map_err(IoError::Declare)?;
    }
    Ok(())
}

fn scalar(src: &str, reg: &Registry, context: String) -> Result<ParamScalar, IoError> {
    parse_scalar(src, reg).map_err(|source| IoError::Expr { context, source })
}

fn index_pair(key: &str, n: usize) -> Result<(usize, usize), IoError> {
    let bad = |message: &str| IoError::Key { key: key.to_string(), message: message.to_string() };
    let (a, b) = key.split_once('|').ok_or_else(|| bad("expected `k|j`"))?;
    let a: usize = a.trim().parse().map_err(|_| bad("not an index"))?;
    let b: usize = b.trim().parse().map_err(|_| bad("not an index"))?;
    if a == 0 || b == 0 || a > n || b > n {
        return Err(bad(&format!("index out of range 1..{n}")));
    }
    Ok((a, b))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    n: usize,
    #[serde(default)]
    params: Vec<ParamDecl>,
    #[serde(default)]
    d: BTreeMap<String, String>,
    #[serde(default)]
    paper_mode: bool,
}

pub fn load_algebra(src: &str, reg: &mut Registry) -> Result<ComplexNilAlgebra<ParamScalar>, IoError> {
    let file: AlgebraFile = json(src)?;
    if file.n == 0 || file.n > MAX_DIM {
        return Err(IoError::Key { key: "n".into(), message: format!("dimension must be in 1..={MAX_DIM}") });
    }
    declare_all(reg, &file.params)?;
    let mut d = vec![Form::zero(file.n); file.n];
    for (k, expr) in &file.d {
        let j: usize = k.parse().ok().filter(|&j| j >= 1 && j <= file.n).ok_or_else(|| IoError::Key {
            key: k.clone(),
            message: format!("expected an index in 1..={}", file.n),
        })?;
        d[j - 1] = parse_form(expr, reg, file.n).map_err(|source| IoError::Expr { context: format!("d.{k}"), source })?;
    }
    Ok(ComplexNilAlgebra::new(file.n, d)?.with_paper_mode(file.paper_mode))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MetricFile {
    #[serde(default)]
    params: Vec<ParamDecl>,
    metric: Option<String>,
    #[serde(rename = "F")]
    f: Option<BTreeMap<String, String>>,
}

pub fn load_metric(src: &str, reg: &mut Registry, n: usize) -> Result<HermitianMetric<ParamScalar>, IoError> {
    let file: MetricFile = json(src)?;
    declare_all(reg, &file.params)?;
    match (file.metric.as_deref(), file.f) {
        (Some("diagonal") | Some("standard"), None) => Ok(HermitianMetric::standard(n)),
        (None, Some(entries)) => {
            let mut f = Matrix::zeros(n, n);
            let mut given = vec![vec![false; n]; n];
            for (k, expr) in &entries {
                let (a, b) = index_pair(k, n)?;
                f.set(a - 1, b - 1, scalar(expr, reg, format!("F.{k}"))?);
                given[a - 1][b - 1] = true;
            }
            // fill the Hermitian partner of one-sided entries
            for a in 0..n {
                for b in 0..n {
                    if given[a][b] && !given[b][a] {
                        let v = f.get(a, b).conj();
                        f.set(b, a, v);
                    }
                }
            }
            Ok(HermitianMetric::new(f)?)
        }
        (Some(other), None) => Err(IoError::Key { key: "metric".into(), message: format!("unknown metric `{other}`") }),
        _ => Err(IoError::Key { key: "metric".into(), message: "give exactly one of `metric` and `F`".into() }),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorFile {
    #[serde(default)]
    params: Vec<ParamDecl>,
    #[serde(default)]
    parameter: Option<String>,
    phi: BTreeMap<String, String>,
}

fn vector_entries(file: &VectorFile, reg: &Registry, n: usize) -> Result<VectorForm01<ParamScalar>, IoError> {
    let mut v = VectorForm01::zero(n);
    for (k, expr) in &file.phi {
        let (a, b) = index_pair(k, n)?;
        v.set(a, b, scalar(expr, reg, format!("phi.{k}"))?);
    }
    Ok(v)
}

pub fn load_vector_form(src: &str, reg: &mut Registry, n: usize) -> Result<VectorForm01<ParamScalar>, IoError> {
    let file: VectorFile = json(src)?;
    declare_all(reg, &file.params)?;
    vector_entries(&file, reg, n)
}

/// Loads a curve; its parameter (default `t`) is declared real.
pub fn load_curve(src: &str, reg: &mut Registry, algebra: &ComplexNilAlgebra<ParamScalar>) -> Result<DeformationCurve, IoError> {
    let file: VectorFile = json(src)?;
    let name = file.parameter.clone().unwrap_or_else(|| "t".to_string());
    let t = reg.declare(&name, VarKind::Real).map_err(IoError::Declare)?;
    declare_all(reg, &file.params)?;
    let phi = vector_entries(&file, reg, algebra.n())?;
    Ok(DeformationCurve::new(algebra.clone(), phi, t)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FormFile {
    #[serde(default)]
    params: Vec<ParamDecl>,
    form: String,
}

/// A form file, or a bare expression when the text is not JSON.
pub fn load_form(src: &str, reg: &mut Registry, n: usize) -> Result<Form<ParamScalar>, IoError> {
    let trimmed = src.trim();
    let expr = if trimmed.starts_with('{') {
        let file: FormFile = json(trimmed)?;
        declare_all(reg, &file.params)?;
        file.form
    } else {
        trimmed.to_string()
    };
    parse_form(&expr, reg, n).map_err(|source| IoError::Expr { context: "form".into(), source })
}

/// `name=value` pairs separated by commas, values constant expressions.
pub fn parse_substitutions(src: &str, reg: &Registry) -> Result<Assignment, IoError> {
    let mut out = Assignment::new();
    let empty = Registry::new();
    for item in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| IoError::Key { key: item.to_string(), message: "expected `name=value`".into() })?;
        let name = name.trim();
        let slot = reg
            .slot(name)
            .ok_or_else(|| IoError::Key { key: name.to_string(), message: "unknown parameter".into() })?;
        let v = scalar(value.trim(), &empty, format!("subst.{name}"))?;
        if reg.kind(slot) == VarKind::Real && !v.is_real() {
            return Err(IoError::Key { key: name.to_string(), message: "real parameter needs a real value".into() });
        }
        out.insert(slot, v);
    }
    Ok(out)
}

/// Applies an assignment to every coefficient of a vector form.
pub fn substitute_vector(v: &VectorForm01<ParamScalar>, a: &Assignment) -> Result<VectorForm01<ParamScalar>, IoError> {
    v.try_map(|c| c.substitute(a)).map_err(|e| IoError::Algebra(AlgebraError::Scalar(e)))
}

pub fn substitute_metric(m: &HermitianMetric<ParamScalar>, a: &Assignment) -> Result<HermitianMetric<ParamScalar>, IoError> {
    let rows = m
        .matrix()
        .to_rows()
        .into_iter()
        .map(|r| r.iter().map(|c| c.substitute(a)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| IoError::Algebra(AlgebraError::Scalar(e)))?;
    Ok(HermitianMetric::new(Matrix::from_rows(rows))?)
}

pub fn substitute_form(f: &Form<ParamScalar>, a: &Assignment) -> Result<Form<ParamScalar>, IoError> {
    f.try_map(|c| c.substitute(a)).map_err(|e| IoError::Algebra(AlgebraError::Scalar(e)))
}
