//! Complex nilpotent Lie algebras given by structure equations
//! `dη^j = Σ A^j_{ik} η^{ik} + Σ B^j_{ik̄} η^{i|k}` and the operators
//! `d`, `∂`, `∂̄` on invariant forms.

use serde::Serialize;
use thiserror::Error;

use crate::exterior::{Form, Monomial};
use crate::linalg::Matrix;
use crate::scalars::{Assignment, GaussianRational, ParamScalar, Ring, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dη^{index} must be a 2-form of type (2,0)+(1,1)")]
    BadStructureForm { index: usize },
    #[error("expected {expected} structure forms, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("form has dimension {got}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexNilAlgebra<C> {
    n: usize,
    d_eta: Vec<Form<C>>,
    d_eta_bar: Vec<Form<C>>,
    paper_mode: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub d_squared_zero: bool,
    /// Indices `j` with `d²η^j ≠ 0`.
    pub d_squared_failures: Vec<usize>,
    pub triangular: bool,
    /// `None` when undecided (symbolic, non-triangular table).
    pub nilpotent: Option<bool>,
    pub nilpotency_method: String,
    /// `None` when paper mode is off.
    pub paper_mode_constants_ok: Option<bool>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.d_squared_zero && self.nilpotent != Some(false) && self.paper_mode_constants_ok != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification<C> {
    pub abelian: bool,
    pub holomorphically_parallelizable: bool,
    pub nilpotent_coframe: bool,
    pub complex_torus: bool,
    /// The `A` coefficients; the structure is abelian iff all vanish.
    pub abelian_conditions: Vec<C>,
    /// The `B` coefficients; holomorphically parallelizable iff all vanish.
    pub parallelizable_conditions: Vec<C>,
}

impl<C: Ring> ComplexNilAlgebra<C> {
    /// `d_eta[j-1] = dη^j`. Each must be of type (2,0)+(1,1).
    pub fn new(n: usize, d_eta: Vec<Form<C>>) -> Result<Self, AlgebraError> {
        if d_eta.len() != n {
            return Err(AlgebraError::WrongLength { expected: n, got: d_eta.len() });
        }
        for (k, f) in d_eta.iter().enumerate() {
            if f.n() != n {
                return Err(AlgebraError::DimensionMismatch { expected: n, got: f.n() });
            }
            if f.terms().any(|(m, _)| !matches!(m.bidegree(), (2, 0) | (1, 1))) {
                return Err(AlgebraError::BadStructureForm { index: k + 1 });
            }
        }
        let d_eta_bar = d_eta.iter().map(|f| f.conj()).collect();
        Ok(ComplexNilAlgebra { n, d_eta, d_eta_bar, paper_mode: false })
    }

    pub fn torus(n: usize) -> Self {
        Self::new(n, vec![Form::zero(n); n]).expect("zero table is valid")
    }

    pub fn with_paper_mode(mut self, on: bool) -> Self {
        self.paper_mode = on;
        self
    }

    pub fn paper_mode(&self) -> bool {
        self.paper_mode
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d_eta(&self, j: usize) -> &Form<C> {
        &self.d_eta[j - 1]
    }

    pub fn d_eta_bar(&self, j: usize) -> &Form<C> {
        &self.d_eta_bar[j - 1]
    }

    pub fn structure_forms(&self) -> &[Form<C>] {
        &self.d_eta
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> ComplexNilAlgebra<D> {
        let d_eta: Vec<Form<D>> = self.d_eta.iter().map(|x| x.map(&f)).collect();
        ComplexNilAlgebra { n: self.n, d_eta_bar: d_eta.iter().map(|x| x.conj()).collect(), d_eta, paper_mode: self.paper_mode }
    }

    fn check(&self, a: &Form<C>) -> Result<(), AlgebraError> {
        if a.n() == self.n {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch { expected: self.n, got: a.n() })
        }
    }

    fn d_factor(&self, j: usize, bar: bool) -> &Form<C> {
        if bar {
            &self.d_eta_bar[j - 1]
        } else {
            &self.d_eta[j - 1]
        }
    }

    /// `d` of a single canonical monomial by the Leibniz rule.
    pub fn d_monomial(&self, m: Monomial) -> Form<C> {
        let factors = m.factors();
        let mut out = Form::zero(self.n);
        let mut prefix = Monomial::ONE;
        for (r, &(j, bar)) in factors.iter().enumerate() {
            let f = Monomial::factor(j, bar);
            let suffix = Monomial::new(m.holo & !prefix.holo & !f.holo, m.anti & !prefix.anti & !f.anti);
            let df = self.d_factor(j, bar);
            if !df.is_zero() {
                let term = Form::monomial(self.n, prefix, C::one())
                    .wedge(df)
                    .wedge(&Form::monomial(self.n, suffix, C::one()));
                out = if r % 2 == 0 { out.add(&term) } else { out.sub(&term) };
            }
            prefix = Monomial::new(prefix.holo | f.holo, prefix.anti | f.anti);
        }
        out
    }

    pub fn try_d(&self, a: &Form<C>) -> Result<Form<C>, AlgebraError> {
        self.check(a)?;
        Ok(a.linear_map(|m| self.d_monomial(m)))
    }

    /// Panics on dimension mismatch; see [`ComplexNilAlgebra::try_d`].
    pub fn d(&self, a: &Form<C>) -> Form<C> {
        self.try_d(a).expect("form over the algebra's dimension")
    }

    /// `∂`, applied componentwise to inhomogeneous input.
    pub fn del(&self, a: &Form<C>) -> Form<C> {
        self.check(a).expect("form over the algebra's dimension");
        a.linear_map(|m| {
            let (p, q) = m.bidegree();
            self.d_monomial(m).project(p + 1, q)
        })
    }

    /// `∂̄`, applied componentwise to inhomogeneous input.
    pub fn delbar(&self, a: &Form<C>) -> Form<C> {
        self.check(a).expect("form over the algebra's dimension");
        a.linear_map(|m| {
            let (p, q) = m.bidegree();
            self.d_monomial(m).project(p, q + 1)
        })
    }

    pub fn del_delbar(&self, a: &Form<C>) -> Form<C> {
        self.del(&self.delbar(a))
    }

    /// Every term of `dη^j` uses only indices `< j`.
    pub fn is_triangular(&self) -> bool {
        self.d_eta.iter().enumerate().all(|(k, f)| f.terms().all(|(m, _)| m.max_index() <= k))
    }

    fn d_squared_failures(&self) -> Vec<usize> {
        (1..=self.n).filter(|&j| !self.d(self.d_eta(j)).is_zero()).collect()
    }

    pub fn classify(&self) -> Classification<C> {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for f in &self.d_eta {
            for (m, c) in f.terms() {
                if m.bidegree() == (2, 0) {
                    a.push(c.clone());
                } else {
                    b.push(c.clone());
                }
            }
        }
        Classification {
            abelian: a.is_empty(),
            holomorphically_parallelizable: b.is_empty(),
            nilpotent_coframe: self.is_triangular(),
            complex_torus: a.is_empty() && b.is_empty(),
            abelian_conditions: a,
            parallelizable_conditions: b,
        }
    }
}

impl ComplexNilAlgebra<ParamScalar> {
    pub fn validate(&self) -> ValidationReport {
        let failures = self.d_squared_failures();
        let triangular = self.is_triangular();
        let (nilpotent, method) = if triangular {
            (Some(true), "triangular structure equations".to_string())
        } else if let Some(g) = self.to_gaussian() {
            (Some(g.is_nilpotent_numeric()), "lower central series (exact)".to_string())
        } else {
            (None, "undecided: non-triangular symbolic table, specialize parameters".to_string())
        };
        let paper = self.paper_mode.then(|| self.d_eta.iter().all(|f| f.is_constant()));
        ValidationReport {
            d_squared_zero: failures.is_empty(),
            d_squared_failures: failures,
            triangular,
            nilpotent,
            nilpotency_method: method,
            paper_mode_constants_ok: paper,
        }
    }

    /// Descending-series check on a numeric specialization.
    pub fn validate_at(&self, a: &Assignment) -> Result<ValidationReport, AlgebraError> {
        let spec = self.substitute(a)?;
        let mut report = self.validate();
        if !report.triangular {
            if let Some(g) = spec.to_gaussian() {
                report.nilpotent = Some(g.is_nilpotent_numeric());
                report.nilpotency_method = "lower central series at the given specialization (exact)".into();
            }
        }
        Ok(report)
    }

    pub fn substitute(&self, a: &Assignment) -> Result<Self, AlgebraError> {
        let mut d_eta = Vec::with_capacity(self.n);
        for f in &self.d_eta {
            d_eta.push(f.try_map(|c| c.substitute(a))?);
        }
        Ok(ComplexNilAlgebra::new(self.n, d_eta)?.with_paper_mode(self.paper_mode))
    }

    pub fn to_gaussian(&self) -> Option<ComplexNilAlgebra<GaussianRational>> {
        let d_eta = self.d_eta.iter().map(|f| f.to_gaussian()).collect::<Option<Vec<_>>>()?;
        Some(ComplexNilAlgebra::new(self.n, d_eta).expect("same shape").with_paper_mode(self.paper_mode))
    }

    pub fn is_numeric(&self) -> bool {
        self.d_eta.iter().all(|f| f.is_constant())
    }
}

impl ComplexNilAlgebra<GaussianRational> {
    pub fn validate(&self) -> ValidationReport {
        let failures = self.d_squared_failures();
        let triangular = self.is_triangular();
        let nilpotent = triangular || self.is_nilpotent_numeric();
        ValidationReport {
            d_squared_zero: failures.is_empty(),
            d_squared_failures: failures,
            triangular,
            nilpotent: Some(nilpotent),
            nilpotency_method: if triangular {
                "triangular structure equations".into()
            } else {
                "lower central series (exact)".into()
            },
            paper_mode_constants_ok: self.paper_mode.then_some(true),
        }
    }

    pub fn to_param(&self) -> ComplexNilAlgebra<ParamScalar> {
        self.map(|c| ParamScalar::constant(c.clone()))
    }

    /// Structure constants of the complexified Lie algebra in the basis
    /// dual to `η^1..η^n, η̄^1..η̄^n`: `brackets[a][b][c]` is the
    /// `e_c`-component of `[e_a, e_b]`, using `dθ(X, Y) = -θ([X, Y])`.
    fn brackets(&self) -> Vec<Vec<Vec<GaussianRational>>> {
        let n2 = 2 * self.n;
        let mut br = vec![vec![vec![GaussianRational::from_int(0); n2]; n2]; n2];
        let slot = |j: usize, bar: bool| if bar { self.n + j - 1 } else { j - 1 };
        for c in 0..n2 {
            let form = if c < self.n { &self.d_eta[c] } else { &self.d_eta_bar[c - self.n] };
            for (m, coef) in form.terms() {
                let f = m.factors();
                let (a, b) = (slot(f[0].0, f[0].1), slot(f[1].0, f[1].1));
                br[a][b][c] = -coef;
                br[b][a][c] = coef.clone();
            }
        }
        br
    }

    /// Lower central series terminates at zero.
    pub fn is_nilpotent_numeric(&self) -> bool {
        let n2 = 2 * self.n;
        let br = self.brackets();
        let mut current = Matrix::<GaussianRational>::identity(n2).to_rows();
        for _ in 0..=n2 {
            if current.is_empty() {
                return true;
            }
            let mut gens = Vec::new();
            for a in 0..n2 {
                for v in &current {
                    let mut w = vec![GaussianRational::from_int(0); n2];
                    for (b, vb) in v.iter().enumerate() {
                        if vb.is_zero() {
                            continue;
                        }
                        for c in 0..n2 {
                            let k = &br[a][b][c];
                            if !k.is_zero() {
                                w[c] = &w[c] + &(k * vb);
                            }
                        }
                    }
                    if w.iter().any(|x| !x.is_zero()) {
                        gens.push(w);
                    }
                }
            }
            if gens.is_empty() {
                return true;
            }
            let (red, piv) = Matrix::from_rows(gens).rref(crate::linalg::Pivot::First);
            let next: Vec<Vec<GaussianRational>> = (0..piv.len()).map(|r| red.row(r).to_vec()).collect();
            if next.len() == current.len() {
                return false;
            }
            current = next;
        }
        false
    }
}
