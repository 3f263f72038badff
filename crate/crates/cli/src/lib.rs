//! Session driver behind the `nilgeom` binary.
//!
//! A session loads an algebra file and the optional metric, curve,
//! vector-form and form files, applies `--subst` specializations and runs
//! one command. Reports are JSON values with sorted keys; the text format
//! is a line rendering of the same value, so both are byte-deterministic.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde_json::{json, Map, Value};
use thiserror::Error;

use nilgeom::algebra::{AlgebraError, ComplexNilAlgebra};
use nilgeom::cohomology::{self, BcVerdict, CohomologyError, Functional};
use nilgeom::conditions::{denominator_hypotheses, normalize_conditions};
use nilgeom::contraction::{ContractionError, VectorForm01};
use nilgeom::deformation::{DeformationCurve, DeformationError, DeformedStructure};
use nilgeom::exterior::Form;
use nilgeom::io::{self, IoError};
use nilgeom::metrics::{check_special_metric, HermitianMetric, MetricError, SpecialMetric};
use nilgeom::obstruction::{self, ObstructionError, TheoremVerdict};
use nilgeom::scalars::{parse_scalar, Assignment, GaussianRational, ParamScalar, Poly, Registry, ScalarError, VarKind};

type G = GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Classify,
    MetricCheck,
    Integrability,
    Bc,
    BcClass,
    Harmonic,
    Obstruct,
    TheoremCheck,
    JetCheck,
    Pullback,
}

impl Command {
    pub const ALL: [Command; 11] = [
        Command::Validate,
        Command::Classify,
        Command::MetricCheck,
        Command::Integrability,
        Command::Bc,
        Command::BcClass,
        Command::Harmonic,
        Command::Obstruct,
        Command::TheoremCheck,
        Command::JetCheck,
        Command::Pullback,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Classify => "classify",
            Command::MetricCheck => "metric-check",
            Command::Integrability => "integrability",
            Command::Bc => "bc",
            Command::BcClass => "bc-class",
            Command::Harmonic => "harmonic",
            Command::Obstruct => "obstruct",
            Command::TheoremCheck => "theorem-check",
            Command::JetCheck => "jet-check",
            Command::Pullback => "pullback",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown command `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected text or json)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub command: Command,
    pub algebra: PathBuf,
    pub metric: Option<PathBuf>,
    pub curve: Option<PathBuf>,
    pub vector: Option<PathBuf>,
    pub form: Option<PathBuf>,
    pub omega_prime: Option<PathBuf>,
    pub mode: Option<SpecialMetric>,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub t0: Option<String>,
    pub subst: Option<String>,
    pub format: Format,
}

impl SessionConfig {
    pub fn new(command: Command, algebra: impl Into<PathBuf>) -> Self {
        SessionConfig {
            command,
            algebra: algebra.into(),
            metric: None,
            curve: None,
            vector: None,
            form: None,
            omega_prime: None,
            mode: None,
            p: None,
            q: None,
            t0: None,
            subst: None,
            format: Format::Text,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("math-domain error: {0}")]
    Math(String),
    #[error("refused: {0}")]
    Refused(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Math(_) => 3,
            CliError::Refused(_) => 4,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Deformation(d) => d.into(),
            e => CliError::Parse(e.to_string()),
        }
    }
}

impl From<DeformationError> for CliError {
    fn from(e: DeformationError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<ContractionError> for CliError {
    fn from(e: ContractionError) -> Self {
        match e {
            ContractionError::DimensionMismatch { .. } => CliError::Parse(e.to_string()),
            e => CliError::Math(e.to_string()),
        }
    }
}

impl From<ScalarError> for CliError {
    fn from(e: ScalarError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<MetricError> for CliError {
    fn from(e: MetricError) -> Self {
        match e {
            MetricError::DimensionMismatch { .. } | MetricError::NotHermitian(..) => CliError::Parse(e.to_string()),
            e => CliError::Math(e.to_string()),
        }
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::SymbolicRankRefused => CliError::Refused(e.to_string()),
            CohomologyError::BidegreeOutOfRange { .. } | CohomologyError::Inhomogeneous => CliError::Parse(e.to_string()),
            e => CliError::Math(e.to_string()),
        }
    }
}

impl From<ObstructionError> for CliError {
    fn from(e: ObstructionError) -> Self {
        match e {
            ObstructionError::Cohomology(c) => c.into(),
            ObstructionError::Contraction(c) => c.into(),
            ObstructionError::Metric(m) => m.into(),
            e => CliError::Parse(e.to_string()),
        }
    }
}

/// A finished command.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub value: Value,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.value).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                render_text(&self.value, 0, &mut out);
                out
            }
        }
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(m) if !m.is_empty() => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    Value::Array(a) if !a.is_empty() => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar_text(x))),
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match x {
                    Value::Object(m) if !m.is_empty() => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar_text(x))),
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar_text(x))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(_) => "[]".into(),
        Value::Object(_) => "{}".into(),
        x => x.to_string(),
    }
}

pub fn run(config: &SessionConfig) -> Result<Report, CliError> {
    let s = Session::load(config)?;
    let body = match config.command {
        Command::Validate => s.validate(),
        Command::Classify => s.classify(),
        Command::MetricCheck => s.metric_check(config),
        Command::Integrability => s.integrability(config),
        Command::Bc => s.bc(config),
        Command::BcClass => s.bc_class(),
        Command::Harmonic => s.harmonic(),
        Command::Obstruct => s.obstruct(),
        Command::TheoremCheck => s.theorem_check(),
        Command::JetCheck => s.jet_check(),
        Command::Pullback => s.pullback(config),
    }?;
    let mut value = Map::new();
    value.insert("command".into(), json!(config.command.name()));
    value.insert("n".into(), json!(s.algebra.n()));
    if !s.subst.is_empty() {
        let subst: Map<String, Value> =
            s.subst.iter().map(|(slot, v)| (s.reg.name(*slot).to_string(), json!(s.reg.show(v)))).collect();
        value.insert("substitutions".into(), Value::Object(subst));
    }
    value.extend(body);
    Ok(Report { value: Value::Object(value) })
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Read { path: path.display().to_string(), message: e.to_string() })
}

/// Inputs after specialization.
struct Session {
    reg: Registry,
    subst: Assignment,
    algebra: ComplexNilAlgebra<ParamScalar>,
    metric: Option<HermitianMetric<ParamScalar>>,
    curve: Option<DeformationCurve>,
    vector: Option<VectorForm01<ParamScalar>>,
    form: Option<Form<ParamScalar>>,
    omega_prime: Option<Form<ParamScalar>>,
}

type Body = Result<Map<String, Value>, CliError>;

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("object literal"),
    }
}

impl Session {
    fn load(c: &SessionConfig) -> Result<Self, CliError> {
        let mut reg = Registry::new();
        let algebra = io::load_algebra(&read(&c.algebra)?, &mut reg)?;
        let n = algebra.n();
        let metric = match &c.metric {
            Some(p) => Some(io::load_metric(&read(p)?, &mut reg, n)?),
            None => None,
        };
        let curve = match &c.curve {
            Some(p) => Some(io::load_curve(&read(p)?, &mut reg, &algebra)?),
            None => None,
        };
        let vector = match &c.vector {
            Some(p) => Some(io::load_vector_form(&read(p)?, &mut reg, n)?),
            None => None,
        };
        let form = match &c.form {
            Some(p) => Some(io::load_form(&read(p)?, &mut reg, n)?),
            None => None,
        };
        let omega_prime = match &c.omega_prime {
            Some(p) => Some(io::load_form(&read(p)?, &mut reg, n)?),
            None => None,
        };
        let subst = match &c.subst {
            Some(src) => io::parse_substitutions(src, &reg)?,
            None => Assignment::new(),
        };
        if let Some(curve) = &curve {
            if subst.contains_key(&curve.parameter().slot()) {
                return Err(CliError::Usage("the curve parameter cannot be substituted".into()));
            }
        }
        if subst.is_empty() {
            return Ok(Session { reg, subst, algebra, metric, curve, vector, form, omega_prime });
        }
        let algebra = algebra.substitute(&subst)?;
        let metric = metric.map(|m| io::substitute_metric(&m, &subst)).transpose()?;
        let curve = match curve {
            Some(cv) => {
                let t = cv.parameter();
                Some(DeformationCurve::new(algebra.clone(), io::substitute_vector(cv.phi(), &subst)?, t)?)
            }
            None => None,
        };
        let vector = vector.map(|v| io::substitute_vector(&v, &subst)).transpose()?;
        let form = form.map(|f| io::substitute_form(&f, &subst)).transpose()?;
        let omega_prime = omega_prime.map(|f| io::substitute_form(&f, &subst)).transpose()?;
        Ok(Session { reg, subst, algebra, metric, curve, vector, form, omega_prime })
    }

    fn s(&self, c: &ParamScalar) -> Value {
        json!(self.reg.show(c))
    }

    fn f(&self, f: &Form<ParamScalar>) -> Value {
        json!(f.show(&self.reg))
    }

    fn fg(&self, f: &Form<G>) -> Value {
        self.f(&f.to_param())
    }

    fn polys(&self, ps: &[Poly]) -> Value {
        Value::Array(ps.iter().map(|p| json!(self.reg.show_poly(p))).collect())
    }

    fn coefficients(&self, f: &Form<ParamScalar>) -> Value {
        let m: Map<String, Value> = f.sorted_terms().into_iter().map(|(k, c)| (k.show(), self.s(c))).collect();
        Value::Object(m)
    }

    fn metric(&self) -> HermitianMetric<ParamScalar> {
        self.metric.clone().unwrap_or_else(|| HermitianMetric::standard(self.algebra.n()))
    }

    fn numeric_algebra(&self) -> Result<ComplexNilAlgebra<G>, CliError> {
        Ok(cohomology::require_numeric(&self.algebra)?)
    }

    fn numeric_metric(&self) -> Result<HermitianMetric<G>, CliError> {
        self.metric().to_gaussian().ok_or_else(|| CohomologyError::SymbolicRankRefused.into())
    }

    fn require_form(&self) -> Result<&Form<ParamScalar>, CliError> {
        self.form.as_ref().ok_or_else(|| CliError::Usage("this command needs --form".into()))
    }

    /// `φ′(0)` of the curve, or the vector form itself.
    fn psi(&self) -> Result<VectorForm01<ParamScalar>, CliError> {
        match (&self.curve, &self.vector) {
            (Some(c), _) => Ok(c.derivative_at_zero()?),
            (None, Some(v)) => Ok(v.clone()),
            (None, None) => Err(CliError::Usage("this command needs --curve or --vector".into())),
        }
    }

    fn numeric_psi(&self) -> Result<VectorForm01<G>, CliError> {
        self.psi()?.try_map(|c| c.as_constant().ok_or(())).map_err(|_| CohomologyError::SymbolicRankRefused.into())
    }

    fn vector_value(&self, v: &VectorForm01<ParamScalar>) -> Value {
        let m: Map<String, Value> = v.entries().map(|(k, j, c)| (format!("{k}|{j}"), self.s(c))).collect();
        Value::Object(m)
    }

    fn functional(&self, f: &Functional) -> Value {
        let m: Map<String, Value> =
            f.values.iter().map(|(k, v)| (k.show(), self.s(&ParamScalar::constant(v.clone())))).collect();
        Value::Object(m)
    }

    fn verdict(&self, v: &BcVerdict) -> Value {
        match v {
            BcVerdict::NotClosed => json!({"verdict": v.label()}),
            BcVerdict::Exact(beta) => json!({"verdict": v.label(), "witness": self.fg(beta)}),
            BcVerdict::NonzeroClass(f) => json!({"verdict": v.label(), "functional": self.functional(f)}),
        }
    }

    fn structure(&self) -> Value {
        let m: Map<String, Value> = (1..=self.algebra.n()).map(|j| (j.to_string(), self.f(self.algebra.d_eta(j)))).collect();
        Value::Object(m)
    }

    fn validate(&self) -> Body {
        let report = self.algebra.validate();
        Ok(obj(json!({
            "structure": self.structure(),
            "valid": report.is_valid(),
            "validation": serde_json::to_value(&report).expect("serializable"),
        })))
    }

    fn classify(&self) -> Body {
        let c = self.algebra.classify();
        Ok(obj(json!({
            "abelian": c.abelian,
            "holomorphically_parallelizable": c.holomorphically_parallelizable,
            "nilpotent_coframe": c.nilpotent_coframe,
            "complex_torus": c.complex_torus,
            "abelian_conditions": self.polys(&normalize_conditions(&c.abelian_conditions)),
            "parallelizable_conditions": self.polys(&normalize_conditions(&c.parallelizable_conditions)),
        })))
    }

    fn metric_check(&self, c: &SessionConfig) -> Body {
        let mode = c.mode.ok_or_else(|| CliError::Usage("metric-check needs --mode".into()))?;
        let r = check_special_metric(&self.algebra, &self.metric(), mode);
        let coeffs: Vec<ParamScalar> = r.conditions.iter().map(|(_, c)| c.clone()).collect();
        let status = if r.holds() {
            "holds"
        } else if coeffs.iter().all(|c| c.is_constant()) {
            "fails"
        } else {
            "conditional"
        };
        Ok(obj(json!({
            "mode": serde_json::to_value(mode).expect("serializable"),
            "status": status,
            "residual": self.f(&r.residual),
            "coefficients": self.coefficients(&r.residual),
            "conditions": self.polys(&normalize_conditions(&coeffs)),
            "nonzero_hypotheses": self.polys(&denominator_hypotheses(&coeffs)),
        })))
    }

    fn integrability(&self, c: &SessionConfig) -> Body {
        let structure: DeformedStructure<ParamScalar> = match (&self.curve, &self.vector, &c.t0) {
            (Some(cv), _, Some(t0)) => cv.at(&parse_t0(t0)?)?,
            (Some(cv), _, None) => cv.symbolic()?,
            (None, Some(v), _) => DeformedStructure::new(self.algebra.clone(), v.clone())?,
            (None, None, _) => return Err(CliError::Usage("integrability needs --curve or --vector".into())),
        };
        let residual = structure.integrability_residual();
        let mut coeffs = Vec::new();
        let mut per_index = Map::new();
        for (j, f) in &residual {
            coeffs.extend(f.sorted_terms().into_iter().map(|(_, c)| c.clone()));
            per_index.insert(j.to_string(), self.f(f));
        }
        Ok(obj(json!({
            "phi": self.vector_value(structure.phi()),
            "integrable": residual.iter().all(|(_, f)| f.is_zero()),
            "residual": per_index,
            "conditions": self.polys(&normalize_conditions(&coeffs)),
            "nonzero_hypotheses": self.polys(&denominator_hypotheses(&coeffs)),
        })))
    }

    fn bc(&self, c: &SessionConfig) -> Body {
        let (p, q) = match (c.p, c.q) {
            (Some(p), Some(q)) => (p, q),
            _ => return Err(CliError::Usage("bc needs --p and --q".into())),
        };
        let g = self.numeric_algebra()?;
        let h = cohomology::bc_space(&g, p, q)?;
        Ok(obj(json!({
            "p": p,
            "q": q,
            "dimension": h.dimension,
            "kernel_dimension": h.kernel_dimension,
            "image_rank": h.image_rank,
            "representatives": h.basis.iter().map(|b| self.fg(b)).collect::<Vec<_>>(),
        })))
    }

    fn bc_class(&self) -> Body {
        let g = self.numeric_algebra()?;
        let a = self.require_form()?.to_gaussian().ok_or(CohomologyError::SymbolicRankRefused)?;
        let v = cohomology::bc_class_vanishes(&g, &a)?;
        let mut out = obj(json!({"form": self.fg(&a)}));
        out.extend(obj(self.verdict(&v)));
        Ok(out)
    }

    fn harmonic(&self) -> Body {
        let g = self.numeric_algebra()?;
        let m = self.numeric_metric()?;
        let a = self.require_form()?.to_gaussian().ok_or(CohomologyError::SymbolicRankRefused)?;
        let star = m.hodge_star(&a)?;
        Ok(obj(json!({
            "form": self.fg(&a),
            "harmonic": cohomology::is_bc_harmonic(&g, &m, &a)?,
            "d_form": self.fg(&g.d(&a)),
            "star": self.fg(&star),
            "ddbar_star": self.fg(&g.del_delbar(&star)),
        })))
    }

    fn obstruct(&self) -> Body {
        let m = self.metric();
        let psi = self.psi()?;
        let forms = obstruction::obstruction_forms(&self.algebra, &m, &psi)?;
        let numeric = match (self.algebra.to_gaussian(), m.to_gaussian(), self.numeric_psi().ok()) {
            (Some(g), Some(mg), Some(pg)) => Some((g, mg, pg)),
            _ => None,
        };
        let (corollary, theorem) = match &numeric {
            Some((g, mg, pg)) => {
                let c = obstruction::corollary_check_numeric(g, mg, pg)?;
                let t = obstruction::theorem_check(g, mg, pg, None)?;
                (
                    json!({"kind": "numeric", "theta": self.verdict(&c.theta), "two_i_im_theta": self.verdict(&c.im_theta)}),
                    self.theorem_value(&t),
                )
            }
            None => {
                let c = match obstruction::corollary_check_symbolic(&self.algebra, &m, &psi) {
                    Ok(c) => json!({
                        "kind": "symbolic",
                        "support": c.support.iter().map(|k| k.show()).collect::<Vec<_>>(),
                        "theta_conditions": self.polys(&c.theta_conditions),
                        "two_i_im_theta_conditions": self.polys(&c.im_conditions),
                        "astheno_hypotheses": self.polys(&c.astheno_hypotheses),
                        "nonzero_hypotheses": self.polys(&c.nonzero_hypotheses),
                    }),
                    Err(ObstructionError::Cohomology(CohomologyError::SymbolicRankRefused)) => {
                        let coeffs: Vec<ParamScalar> = forms.theta.sorted_terms().into_iter().map(|(_, c)| c.clone()).collect();
                        json!({
                            "kind": "deferred",
                            "reason": "no class dichotomy applies; substitute numeric values",
                            "theta_coefficient_conditions": self.polys(&normalize_conditions(&coeffs)),
                        })
                    }
                    Err(e) => return Err(e.into()),
                };
                (c, json!({"verdict": "deferred", "reason": "symbolic structure; substitute numeric values"}))
            }
        };
        let monomial_scalar = match &forms.monomial_scalar {
            Some((k, c)) => json!({"monomial": k.show(), "scalar": self.s(c)}),
            None => Value::Null,
        };
        Ok(obj(json!({
            "psi": self.vector_value(&psi),
            "theta": self.f(&forms.theta),
            "theta_coefficients": self.coefficients(&forms.theta),
            "two_i_im_theta": self.f(&forms.two_i_im_theta),
            "two_i_im_theta_coefficients": self.coefficients(&forms.two_i_im_theta),
            "monomial_scalar": monomial_scalar,
            "corollary": corollary,
            "theorem": theorem,
        })))
    }

    fn theorem_value(&self, t: &TheoremVerdict) -> Value {
        match t {
            TheoremVerdict::Holds => json!({"verdict": t.label()}),
            TheoremVerdict::Fails(diff) => json!({"verdict": t.label(), "difference": self.fg(diff)}),
            TheoremVerdict::Solvable(w) => json!({"verdict": t.label(), "omega_prime": self.fg(w)}),
            TheoremVerdict::Unsolvable(f) => json!({"verdict": t.label(), "functional": self.functional(f)}),
        }
    }

    fn theorem_check(&self) -> Body {
        let g = self.numeric_algebra()?;
        let m = self.numeric_metric()?;
        let psi = self.numeric_psi()?;
        let w = match &self.omega_prime {
            Some(f) => Some(f.to_gaussian().ok_or(CohomologyError::SymbolicRankRefused)?),
            None => None,
        };
        let t = obstruction::theorem_check(&g, &m, &psi, w.as_ref())?;
        let target = obstruction::two_i_im(&obstruction::obstruction_form(&g, &m, &psi)?);
        let mut out = obj(json!({"two_i_im_theta": self.fg(&target)}));
        if let TheoremVerdict::Solvable(w) = &t {
            out.insert("verified".into(), json!(g.del_delbar(w) == target));
        }
        out.extend(obj(self.theorem_value(&t)));
        Ok(out)
    }

    fn jet_check(&self) -> Body {
        let m = self.metric();
        let psi = self.psi()?;
        let w = self.omega_prime.clone().unwrap_or_else(|| Form::zero(self.algebra.n()));
        let r = obstruction::taylor_consistency_check(&self.algebra, &m, &psi, &w)?;
        Ok(obj(json!({
            "psi": self.vector_value(&psi),
            "omega_prime": self.f(&w),
            "holds": r.holds,
            "t_coefficient": self.f(&r.t_coefficient),
            "expected": self.f(&r.expected),
            "extended_holds": r.extended_holds,
            "extended_t_coefficient": self.f(&r.extended_t_coefficient),
            "extension_term": self.f(&r.extension_term),
        })))
    }

    fn pullback(&self, c: &SessionConfig) -> Body {
        let curve = self.curve.as_ref().ok_or_else(|| CliError::Usage("pullback needs --curve".into()))?;
        let t0 = c.t0.as_deref().ok_or_else(|| CliError::Usage("pullback needs --t0".into()))?;
        let g = curve.pullback_structure(&parse_t0(t0)?)?;
        let mut vars = std::collections::BTreeSet::new();
        for f in g.structure_forms() {
            for (_, c) in f.terms() {
                vars.extend(c.vars().into_iter().map(|v| v.slot()));
            }
        }
        let params: Vec<Value> = vars
            .into_iter()
            .map(|slot| match self.reg.kind(slot) {
                VarKind::Complex => json!(self.reg.name(slot)),
                VarKind::Real => json!({"name": self.reg.name(slot), "kind": "real"}),
            })
            .collect();
        let d: Map<String, Value> = (1..=g.n())
            .filter(|&j| !g.d_eta(j).is_zero())
            .map(|j| (j.to_string(), json!(g.d_eta(j).show(&self.reg))))
            .collect();
        let report = g.validate();
        Ok(obj(json!({
            "t0": t0,
            "algebra": {"n": g.n(), "params": params, "d": d},
            "valid": report.is_valid(),
            "validation": serde_json::to_value(&report).expect("serializable"),
        })))
    }
}

fn parse_t0(src: &str) -> Result<G, CliError> {
    let v = parse_scalar(src, &Registry::new()).map_err(|e| CliError::Parse(format!("in `--t0`: {e}")))?;
    let c = v.as_constant().ok_or_else(|| CliError::Parse("`--t0` must be a constant".into()))?;
    if !c.is_real() {
        return Err(CliError::Parse("`--t0` must be real".into()));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_names_round_trip() {
        for c in Command::ALL {
            assert_eq!(c.name().parse::<Command>().unwrap(), c);
        }
        assert!("frobnicate".parse::<Command>().is_err());
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
    }

    #[test]
    fn text_rendering() {
        let r = Report { value: json!({"b": [1, {"x": null}], "a": {"k": "v"}, "c": []}) };
        assert_eq!(r.render(Format::Text), "a:\n  k: v\nb:\n  - 1\n  -\n    x: none\nc: []\n");
        assert!(r.render(Format::Json).ends_with("}\n"));
    }

    #[test]
    fn error_exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Math("x".into()).exit_code(), 3);
        assert_eq!(CliError::Refused("x".into()).exit_code(), 4);
    }
}
