//! Invariant Bott-Chern cohomology `ker d / im ∂∂̄` by exact linear algebra.
//!
//! Everything here is invariant-level: forms are left-invariant and the
//! spaces are finite dimensional.

use thiserror::Error;

use crate::algebra::ComplexNilAlgebra;
use crate::exterior::{basis, Form, Monomial};
use crate::linalg::{dot, Matrix, Pivot};
use crate::metrics::{HermitianMetric, MetricError};
use crate::scalars::{GaussianRational, ParamScalar};

type G = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("cohomology over symbolic parameters is refused; substitute numeric values first")]
    SymbolicRankRefused,
    #[error("form is not of pure bidegree")]
    Inhomogeneous,
    #[error("bidegree ({p}, {q}) out of range for n = {n}")]
    BidegreeOutOfRange { p: usize, q: usize, n: usize },
    #[error("rank mismatch between elimination strategies ({0} vs {1})")]
    RankMismatch(usize, usize),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// `H_BC^{p,q}` with representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologySpace {
    pub p: usize,
    pub q: usize,
    pub dimension: usize,
    pub kernel_dimension: usize,
    pub image_rank: usize,
    pub basis: Vec<Form<G>>,
}

/// Linear functional on `(p, q)`-forms, given by its values on monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    pub values: Vec<(Monomial, G)>,
}

impl Functional {
    pub fn eval(&self, a: &Form<G>) -> G {
        self.values.iter().fold(G::from_int(0), |acc, (m, v)| &acc + &(v * &a.coeff(*m)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BcVerdict {
    NotClosed,
    /// `∂∂̄β = α`.
    Exact(Form<G>),
    /// The functional vanishes on `im ∂∂̄` and not on `α`.
    NonzeroClass(Functional),
}

impl BcVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            BcVerdict::NotClosed => "not-closed",
            BcVerdict::Exact(_) => "exact",
            BcVerdict::NonzeroClass(_) => "nonzero-class",
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, BcVerdict::Exact(_))
    }

    pub fn is_nonzero_class(&self) -> bool {
        matches!(self, BcVerdict::NonzeroClass(_))
    }
}

/// The numeric specialization, or a refusal.
pub fn require_numeric(g: &ComplexNilAlgebra<ParamScalar>) -> Result<ComplexNilAlgebra<G>, CohomologyError> {
    g.to_gaussian().ok_or(CohomologyError::SymbolicRankRefused)
}

fn column(f: &Form<G>, rows: &[Monomial]) -> Vec<G> {
    rows.iter().map(|m| f.coeff(*m)).collect()
}

fn from_coords(n: usize, monos: &[Monomial], v: &[G]) -> Form<G> {
    let mut f = Form::zero(n);
    for (m, c) in monos.iter().zip(v) {
        f.add_term(*m, c.clone());
    }
    f
}

/// Matrix of `op` from `(p, q)`-forms to the monomials listed in `rows`.
fn operator_matrix(n: usize, src: &[Monomial], rows: &[Monomial], op: impl Fn(&Form<G>) -> Form<G>) -> Matrix<G> {
    let mut m = Matrix::zeros(rows.len(), src.len());
    for (c, mono) in src.iter().enumerate() {
        let img = op(&Form::monomial(n, *mono, G::from_int(1)));
        for (r, row) in rows.iter().enumerate() {
            let v = img.coeff(*row);
            if !v.is_zero() {
                m.set(r, c, v);
            }
        }
    }
    m
}

fn d_target(n: usize, p: usize, q: usize) -> Vec<Monomial> {
    let mut rows = Vec::new();
    if p < n {
        rows.extend(basis(n, p + 1, q));
    }
    if q < n {
        rows.extend(basis(n, p, q + 1));
    }
    rows
}

fn ddbar_matrix(g: &ComplexNilAlgebra<G>, p: usize, q: usize) -> (Vec<Monomial>, Matrix<G>) {
    let n = g.n();
    let rows = basis(n, p, q);
    if p == 0 || q == 0 {
        return (Vec::new(), Matrix::zeros(rows.len(), 0));
    }
    let src = basis(n, p - 1, q - 1);
    let m = operator_matrix(n, &src, &rows, |f| g.del_delbar(f));
    (src, m)
}

fn checked_rank(m: &Matrix<G>) -> Result<usize, CohomologyError> {
    let a = m.rank_bareiss();
    let b = m.rref(Pivot::Sparsest).1.len();
    if a == b {
        Ok(a)
    } else {
        Err(CohomologyError::RankMismatch(a, b))
    }
}

pub fn bc_space(g: &ComplexNilAlgebra<G>, p: usize, q: usize) -> Result<CohomologySpace, CohomologyError> {
    let n = g.n();
    if p > n || q > n {
        return Err(CohomologyError::BidegreeOutOfRange { p, q, n });
    }
    let cols = basis(n, p, q);
    let d = operator_matrix(n, &cols, &d_target(n, p, q), |f| g.d(f));
    let kernel = d.nullspace();
    let kernel_rank = cols.len() - checked_rank(&d)?;
    debug_assert_eq!(kernel.len(), kernel_rank);
    let (_, dd) = ddbar_matrix(g, p, q);
    let image_rank = checked_rank(&dd)?;

    // extend a basis of the image by kernel vectors
    let mut span: Vec<Vec<G>> = dd.transpose().to_rows();
    let mut reps = Vec::new();
    let mut rank = image_rank;
    for v in &kernel {
        span.push(v.clone());
        let r = if span.is_empty() { 0 } else { Matrix::from_rows(span.clone()).rank() };
        if r > rank {
            rank = r;
            reps.push(from_coords(n, &cols, v));
        } else {
            span.pop();
        }
    }
    Ok(CohomologySpace {
        p,
        q,
        dimension: kernel_rank - image_rank,
        kernel_dimension: kernel_rank,
        image_rank,
        basis: reps,
    })
}

pub fn bc_class_vanishes(g: &ComplexNilAlgebra<G>, a: &Form<G>) -> Result<BcVerdict, CohomologyError> {
    let n = g.n();
    if a.is_zero() {
        return Ok(BcVerdict::Exact(Form::zero(n)));
    }
    let (p, q) = a.bidegree().ok_or(CohomologyError::Inhomogeneous)?;
    if !g.d(a).is_zero() {
        return Ok(BcVerdict::NotClosed);
    }
    Ok(match solve_ddbar(g, a, p, q) {
        Ok(beta) => {
            debug_assert_eq!(&g.del_delbar(&beta), a);
            BcVerdict::Exact(beta)
        }
        Err(f) => BcVerdict::NonzeroClass(f),
    })
}

/// `dα = 0` and `∂∂̄∗α = 0`.
pub fn is_bc_harmonic(g: &ComplexNilAlgebra<G>, m: &HermitianMetric<G>, a: &Form<G>) -> Result<bool, CohomologyError> {
    let star = m.hodge_star(a)?;
    Ok(g.d(a).is_zero() && g.del_delbar(&star).is_zero())
}

/// Exact solution of `∂∂̄X = α` over `(p−1, q−1)`-forms, or a functional
/// separating `α` from the image.
pub fn solve_ddbar(g: &ComplexNilAlgebra<G>, a: &Form<G>, p: usize, q: usize) -> Result<Form<G>, Functional> {
    let n = g.n();
    let rows = basis(n, p, q);
    let (src, dd) = ddbar_matrix(g, p, q);
    let target = column(a, &rows);
    match dd.solve(&target) {
        Some(x) => Ok(from_coords(n, &src, &x)),
        None => {
            let f = dd.left_nullspace().into_iter().find(|f| !dot(f, &target).is_zero()).expect("separating functional");
            Err(Functional { values: rows.into_iter().zip(f).filter(|(_, v)| !v.is_zero()).collect() })
        }
    }
}
