//! The obstruction form `Θ = ∂ ι_{φ′(0)} ∂ ω^{n−2}` and the checks built
//! on it: the Bott-Chern class of `Θ` and of `2i Im Θ = Θ − Θ̄`, the
//! solvability of `∂∂̄ω′ = 2i Im Θ`, and the first-order jet identity.

use thiserror::Error;

use crate::algebra::ComplexNilAlgebra;
use crate::cohomology::{bc_class_vanishes, solve_ddbar, BcVerdict, CohomologyError, Functional};
use crate::conditions::{constant_combination, denominator_hypotheses, normalize_conditions};
use crate::contraction::{ContractionError, VectorForm01};
use crate::deformation::jet_structure;
use crate::exterior::{Form, Monomial};
use crate::metrics::{check_special_metric, HermitianMetric, MetricError, SpecialMetric};
use crate::scalars::{GaussianRational, ParamScalar, Poly, Ring};

type G = GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("dimension mismatch: algebra {algebra}, metric {metric}, vector form {vector}")]
    DimensionMismatch { algebra: usize, metric: usize, vector: usize },
    #[error("ω′ must have bidegree ({expected}, {expected})")]
    WrongBidegree { expected: usize },
    #[error("dimension n = {0} is too small: ω^(n−2) needs n ≥ 2")]
    DimensionTooSmall(usize),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Contraction(#[from] ContractionError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

fn check_dims<C: Ring>(g: &ComplexNilAlgebra<C>, m: &HermitianMetric<C>, psi: &VectorForm01<C>) -> Result<usize, ObstructionError> {
    let n = g.n();
    if m.n() != n || psi.n() != n {
        return Err(ObstructionError::DimensionMismatch { algebra: n, metric: m.n(), vector: psi.n() });
    }
    if n < 2 {
        return Err(ObstructionError::DimensionTooSmall(n));
    }
    Ok(n)
}

/// `Θ = ∂(ι_ψ ∂ ω^{n−2})`.
pub fn obstruction_form<C: Ring>(
    g: &ComplexNilAlgebra<C>,
    m: &HermitianMetric<C>,
    psi: &VectorForm01<C>,
) -> Result<Form<C>, ObstructionError> {
    let n = check_dims(g, m, psi)?;
    let w = m.fundamental_power(n - 2);
    Ok(g.del(&psi.contract(&g.del(&w))))
}

/// `Θ − Θ̄ = 2i Im Θ`.
pub fn two_i_im<C: Ring>(theta: &Form<C>) -> Form<C> {
    theta.sub(&theta.conj())
}

/// `Θ` with its imaginary part and, when it is one monomial, the scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructionForms<C> {
    pub theta: Form<C>,
    pub two_i_im_theta: Form<C>,
    pub monomial_scalar: Option<(Monomial, C)>,
}

pub fn obstruction_forms<C: Ring>(
    g: &ComplexNilAlgebra<C>,
    m: &HermitianMetric<C>,
    psi: &VectorForm01<C>,
) -> Result<ObstructionForms<C>, ObstructionError> {
    let theta = obstruction_form(g, m, psi)?;
    let two_i_im_theta = two_i_im(&theta);
    let monomial_scalar = match theta.len() {
        1 => theta.terms().next().map(|(k, c)| (*k, c.clone())),
        _ => None,
    };
    Ok(ObstructionForms { theta, two_i_im_theta, monomial_scalar })
}

/// Both class verdicts for a numeric structure.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericCorollary {
    pub theta: BcVerdict,
    pub im_theta: BcVerdict,
}

/// Symbolic verdict through the harmonic dichotomy: every monomial in
/// the support of `Θ` is d-closed, and `∂∂̄∗` of it vanishes whenever the
/// metric is astheno-Kähler. Under that hypothesis the support spans
/// harmonic, hence independent, classes, so a class vanishes iff all its
/// coefficients do.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicCorollary {
    pub support: Vec<Monomial>,
    /// `[Θ] = 0` iff these vanish.
    pub theta_conditions: Vec<Poly>,
    /// `[Θ − Θ̄] = 0` iff these vanish.
    pub im_conditions: Vec<Poly>,
    /// Astheno-Kähler conditions assumed to hold.
    pub astheno_hypotheses: Vec<Poly>,
    /// Polynomials assumed nonzero.
    pub nonzero_hypotheses: Vec<Poly>,
}

/// Numeric corollary check.
pub fn corollary_check_numeric(
    g: &ComplexNilAlgebra<G>,
    m: &HermitianMetric<G>,
    psi: &VectorForm01<G>,
) -> Result<NumericCorollary, ObstructionError> {
    let theta = obstruction_form(g, m, psi)?;
    Ok(NumericCorollary {
        theta: bc_class_vanishes(g, &theta)?,
        im_theta: bc_class_vanishes(g, &two_i_im(&theta))?,
    })
}

/// Symbolic corollary check; refuses when the dichotomy does not apply.
pub fn corollary_check_symbolic(
    g: &ComplexNilAlgebra<ParamScalar>,
    m: &HermitianMetric<ParamScalar>,
    psi: &VectorForm01<ParamScalar>,
) -> Result<SymbolicCorollary, ObstructionError> {
    let n = check_dims(g, m, psi)?;
    let theta = obstruction_form(g, m, psi)?;
    let im = two_i_im(&theta);
    let astheno = check_special_metric(g, m, SpecialMetric::Astheno);
    let astheno_hypotheses = normalize_conditions(astheno.conditions.iter().map(|(_, c)| c));
    let theta_coeffs: Vec<ParamScalar> = theta.sorted_terms().into_iter().map(|(_, c)| c.clone()).collect();
    let im_coeffs: Vec<ParamScalar> = im.sorted_terms().into_iter().map(|(_, c)| c.clone()).collect();
    let mut nonzero_hypotheses = denominator_hypotheses(theta_coeffs.iter().chain(&im_coeffs));

    let mut support: Vec<Monomial> = theta.sorted_terms().into_iter().map(|(k, _)| k).collect();
    for (k, _) in im.sorted_terms() {
        if !support.contains(&k) {
            support.push(k);
        }
    }
    if !support.is_empty() {
        if !m.is_diagonal() {
            return Err(CohomologyError::SymbolicRankRefused.into());
        }
        // astheno conditions and their conjugates, as polynomials
        let mut span: Vec<Poly> = Vec::new();
        for (_, c) in &astheno.conditions {
            if !c.is_polynomial() {
                return Err(CohomologyError::SymbolicRankRefused.into());
            }
            span.push(c.numer().clone());
            span.push(c.conj().numer().clone());
        }
        for &k in &support {
            let mono = Form::monomial(n, k, ParamScalar::one());
            if !g.d(&mono).is_zero() {
                return Err(CohomologyError::SymbolicRankRefused.into());
            }
            let h = g.del_delbar(&m.hodge_star(&mono)?);
            for (_, c) in h.terms() {
                if !c.is_polynomial() || constant_combination(&c.numer().scale(&c.denom().leading_coeff().inv().expect("nonzero")), &span).is_none() {
                    return Err(CohomologyError::SymbolicRankRefused.into());
                }
            }
        }
    }
    for d in denominator_hypotheses(astheno.conditions.iter().map(|(_, c)| c)) {
        if !nonzero_hypotheses.contains(&d) {
            nonzero_hypotheses.push(d);
        }
    }
    Ok(SymbolicCorollary {
        support,
        theta_conditions: normalize_conditions(&theta_coeffs),
        im_conditions: normalize_conditions(&im_coeffs),
        astheno_hypotheses,
        nonzero_hypotheses,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum TheoremVerdict {
    /// The supplied `ω′` satisfies `∂∂̄ω′ = Θ − Θ̄`.
    Holds,
    /// The supplied `ω′` fails; carries `∂∂̄ω′ − (Θ − Θ̄)`.
    Fails(Form<G>),
    /// Some `ω′` solves the equation.
    Solvable(Form<G>),
    /// No invariant `ω′` does; the functional separates `Θ − Θ̄` from
    /// `im ∂∂̄`.
    Unsolvable(Functional),
}

impl TheoremVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            TheoremVerdict::Holds => "holds",
            TheoremVerdict::Fails(_) => "fails",
            TheoremVerdict::Solvable(_) => "solvable",
            TheoremVerdict::Unsolvable(_) => "unsolvable",
        }
    }
}

/// `2i Im Θ = ∂∂̄ω′` for a given `ω′`, or its solvability in `ω′`.
pub fn theorem_check(
    g: &ComplexNilAlgebra<G>,
    m: &HermitianMetric<G>,
    psi: &VectorForm01<G>,
    omega_prime: Option<&Form<G>>,
) -> Result<TheoremVerdict, ObstructionError> {
    let n = check_dims(g, m, psi)?;
    let target = two_i_im(&obstruction_form(g, m, psi)?);
    match omega_prime {
        Some(w) => {
            if !w.is_zero() && w.bidegree() != Some((n - 2, n - 2)) {
                return Err(ObstructionError::WrongBidegree { expected: n - 2 });
            }
            let diff = g.del_delbar(w).sub(&target);
            Ok(if diff.is_zero() { TheoremVerdict::Holds } else { TheoremVerdict::Fails(diff) })
        }
        None => Ok(match solve_ddbar(g, &target, n - 1, n - 1) {
            Ok(w) => {
                debug_assert_eq!(g.del_delbar(&w), target);
                TheoremVerdict::Solvable(w)
            }
            Err(f) => TheoremVerdict::Unsolvable(f),
        }),
    }
}

/// The first-order expansion of `∂_t∂̄_t` applied to `ω^{n−2} + tω′`
/// along `φ = tψ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorReport<C> {
    /// `t`-coefficient of `∂_t∂̄_t(α₀ + tω′)` in `η_t` coordinates.
    pub t_coefficient: Form<C>,
    /// `−∂ι_ψ∂α₀ + ∂̄ι_ψ̄∂̄α₀ + ∂∂̄ω′`.
    pub expected: Form<C>,
    pub holds: bool,
    /// `t`-coefficient after the extension map back to the central coframe.
    pub extended_t_coefficient: Form<C>,
    /// `(ι_ψ + ι_ψ̄)(∂∂̄α₀)`, which vanishes when `ω` is astheno-Kähler.
    pub extension_term: Form<C>,
    pub extended_holds: bool,
}

pub fn taylor_consistency_check<C: Ring>(
    g: &ComplexNilAlgebra<C>,
    m: &HermitianMetric<C>,
    psi: &VectorForm01<C>,
    omega_prime: &Form<C>,
) -> Result<TaylorReport<C>, ObstructionError> {
    let n = check_dims(g, m, psi)?;
    if !omega_prime.is_zero() && omega_prime.bidegree() != Some((n - 2, n - 2)) {
        return Err(ObstructionError::WrongBidegree { expected: n - 2 });
    }
    let a0 = m.fundamental_power(n - 2);
    let s = jet_structure(g, psi)?;
    let jet = a0
        .map(|c| crate::scalars::Jet::constant(c.clone()))
        .add(&omega_prime.map(|c| crate::scalars::Jet::new(C::zero(), c.clone())));
    let f = s.del_t_formula(&s.delbar_t_formula(&jet)?)?;
    let t_coefficient = f.map(|c| c.deriv.clone());
    let expected = g
        .del(&psi.contract(&g.del(&a0)))
        .neg()
        .add(&g.delbar(&psi.contract_bar(&g.delbar(&a0))))
        .add(&g.del_delbar(omega_prime));
    let extended_t_coefficient = s.from_deformed(&f).map(|c| c.deriv.clone());
    let dd = g.del_delbar(&a0);
    let extension_term = psi.contract(&dd).add(&psi.contract_bar(&dd));
    Ok(TaylorReport {
        holds: t_coefficient == expected,
        extended_holds: extended_t_coefficient == expected.add(&extension_term),
        t_coefficient,
        expected,
        extended_t_coefficient,
        extension_term,
    })
}
