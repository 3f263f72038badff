//! Deformed coframes `η_t = (I+φ+φ̄)⟟η`, Maurer-Cartan residuals, the
//! deformed operators `∂_t`, `∂̄_t` and first-order jets in the curve
//! parameter.
//!
//! Forms on the deformed fiber are handled through their coordinates in
//! the `η_t` basis: the coordinate form `α` stands for `e(α) = E⟟α`, so
//! the extension map is the identity on coordinates.

use thiserror::Error;

use crate::algebra::{AlgebraError, ComplexNilAlgebra};
use crate::contraction::{ContractionError, CoframeOperator, VectorForm01};
use crate::exterior::Form;
use crate::scalars::{Assignment, GaussianRational, Jet, ParamScalar, Ring, ScalarError, Var};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeformationError {
    #[error("φ(0) ≠ 0: the curve does not start at the central fiber")]
    NonzeroAtOrigin,
    #[error("φ has a pole at t = 0")]
    PoleAtOrigin,
    #[error("complex structure is not integrable at t = {t0}: (dη_t^j)^(0,2) ≠ 0 for j in {indices:?}")]
    NotIntegrableAt { t0: String, indices: Vec<usize> },
    #[error("the curve parameter must take real values")]
    NonRealParameter,
    #[error(transparent)]
    Contraction(#[from] ContractionError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A complex structure `J_φ` on the underlying algebra.
#[derive(Clone, Debug)]
pub struct DeformedStructure<C> {
    algebra: ComplexNilAlgebra<C>,
    phi: VectorForm01<C>,
    forward: CoframeOperator<C>,
    inverse: CoframeOperator<C>,
}

impl<C: Ring> DeformedStructure<C> {
    pub fn new(algebra: ComplexNilAlgebra<C>, phi: VectorForm01<C>) -> Result<Self, ContractionError> {
        if algebra.n() != phi.n() {
            return Err(ContractionError::DimensionMismatch { left: algebra.n(), right: phi.n() });
        }
        let forward = phi.extension_operator();
        let inverse = forward.inverse()?;
        Ok(DeformedStructure { algebra, phi, forward, inverse })
    }

    pub fn algebra(&self) -> &ComplexNilAlgebra<C> {
        &self.algebra
    }

    pub fn phi(&self) -> &VectorForm01<C> {
        &self.phi
    }

    pub fn n(&self) -> usize {
        self.algebra.n()
    }

    /// `I + φ + φ̄`.
    pub fn forward(&self) -> &CoframeOperator<C> {
        &self.forward
    }

    pub fn inverse(&self) -> &CoframeOperator<C> {
        &self.inverse
    }

    /// `η_t^j` in the central coframe.
    pub fn coframe(&self) -> Vec<Form<C>> {
        (1..=self.n()).map(|j| self.forward.image(j, false)).collect()
    }

    /// `η^j` in the deformed coframe.
    pub fn inverse_coframe(&self) -> Vec<Form<C>> {
        (1..=self.n()).map(|j| self.inverse.image(j, false)).collect()
    }

    /// Coordinates in the `η_t` basis of a form written in the `η` basis.
    pub fn to_deformed(&self, a: &Form<C>) -> Form<C> {
        self.inverse.apply(a).expect("dimension checked at construction")
    }

    /// Inverse of [`Self::to_deformed`].
    pub fn from_deformed(&self, a: &Form<C>) -> Form<C> {
        self.forward.apply(a).expect("dimension checked at construction")
    }

    /// `d` in `η_t` coordinates.
    pub fn d_t(&self, a: &Form<C>) -> Form<C> {
        self.to_deformed(&self.algebra.d(&self.from_deformed(a)))
    }

    /// `(dη_t^j)^{0,2}` for every `j` where it is nonzero.
    pub fn integrability_residual(&self) -> Vec<(usize, Form<C>)> {
        (1..=self.n())
            .filter_map(|j| {
                let r = self.d_t(&Form::eta(self.n(), j)).project(0, 2);
                (!r.is_zero()).then_some((j, r))
            })
            .collect()
    }

    pub fn is_integrable(&self) -> bool {
        self.integrability_residual().is_empty()
    }

    fn projected(&self, a: &Form<C>, dp: usize, dq: usize) -> Form<C> {
        let mut out = Form::zero(self.n());
        for (p, q) in a.bidegrees() {
            out = out.add(&self.d_t(&a.project(p, q)).project(p + dp, q + dq));
        }
        out
    }

    /// `∂_t` as the `(p+1, q)` part of `d_t`.
    pub fn del_t(&self, a: &Form<C>) -> Form<C> {
        self.projected(a, 1, 0)
    }

    /// `∂̄_t` as the `(p, q+1)` part of `d_t`.
    pub fn delbar_t(&self, a: &Form<C>) -> Form<C> {
        self.projected(a, 0, 1)
    }

    /// `(I−φφ̄)^{-1}⟟(∂̄ι_φ̄ − ι_φ̄∂̄ + ∂)(I−φφ̄)⟟α`.
    pub fn del_t_formula(&self, a: &Form<C>) -> Result<Form<C>, ContractionError> {
        let s = CoframeOperator::identity(self.n()).sub(&self.phi.phi_phibar());
        let s_inv = s.inverse()?;
        let b = s.apply(a)?;
        let g = &self.algebra;
        let inner = g
            .delbar(&self.phi.contract_bar(&b))
            .sub(&self.phi.contract_bar(&g.delbar(&b)))
            .add(&g.del(&b));
        s_inv.apply(&inner)
    }

    /// `(I−φ̄φ)^{-1}⟟(∂ι_φ − ι_φ∂ + ∂̄)(I−φ̄φ)⟟α`.
    pub fn delbar_t_formula(&self, a: &Form<C>) -> Result<Form<C>, ContractionError> {
        let s = CoframeOperator::identity(self.n()).sub(&self.phi.phibar_phi());
        let s_inv = s.inverse()?;
        let b = s.apply(a)?;
        let g = &self.algebra;
        let inner = g.del(&self.phi.contract(&b)).sub(&self.phi.contract(&g.del(&b))).add(&g.delbar(&b));
        s_inv.apply(&inner)
    }

    /// The structure equations of `J_φ`: `dη_t^j` written in the `η_t`
    /// coframe. Requires integrability.
    pub fn pulled_back_algebra(&self) -> Result<ComplexNilAlgebra<C>, AlgebraError> {
        let d: Vec<Form<C>> = (1..=self.n()).map(|j| self.d_t(&Form::eta(self.n(), j))).collect();
        Ok(ComplexNilAlgebra::new(self.n(), d)?.with_paper_mode(self.algebra.paper_mode()))
    }
}

/// The family `φ = tψ` truncated at first order.
pub fn jet_structure<C: Ring>(
    algebra: &ComplexNilAlgebra<C>,
    psi: &VectorForm01<C>,
) -> Result<DeformedStructure<Jet<C>>, ContractionError> {
    let phi = psi.map(|c| Jet::new(C::zero(), c.clone()));
    DeformedStructure::new(algebra.map(|c| Jet::constant(c.clone())), phi)
}

/// A curve `t ↦ φ(t)` of complex structures with `φ(0) = 0`; entries are
/// rational in the real parameter `t`.
#[derive(Clone, Debug)]
pub struct DeformationCurve {
    algebra: ComplexNilAlgebra<ParamScalar>,
    phi: VectorForm01<ParamScalar>,
    t: Var,
}

impl DeformationCurve {
    pub fn new(
        algebra: ComplexNilAlgebra<ParamScalar>,
        phi: VectorForm01<ParamScalar>,
        t: Var,
    ) -> Result<Self, DeformationError> {
        if !t.is_real() {
            return Err(DeformationError::NonRealParameter);
        }
        if algebra.n() != phi.n() {
            return Err(ContractionError::DimensionMismatch { left: algebra.n(), right: phi.n() }.into());
        }
        let curve = DeformationCurve { algebra, phi, t };
        let at0 = curve.phi_at(&GaussianRational::from_int(0)).map_err(|e| match e {
            DeformationError::Scalar(ScalarError::DenominatorVanishes) => DeformationError::PoleAtOrigin,
            e => e,
        })?;
        if !at0.is_zero() {
            return Err(DeformationError::NonzeroAtOrigin);
        }
        Ok(curve)
    }

    pub fn algebra(&self) -> &ComplexNilAlgebra<ParamScalar> {
        &self.algebra
    }

    pub fn phi(&self) -> &VectorForm01<ParamScalar> {
        &self.phi
    }

    pub fn parameter(&self) -> Var {
        self.t
    }

    fn t_assignment(&self, t0: &GaussianRational) -> Result<Assignment, DeformationError> {
        if !t0.is_real() {
            return Err(DeformationError::NonRealParameter);
        }
        Ok(Assignment::from([(self.t.slot(), ParamScalar::constant(t0.clone()))]))
    }

    pub fn phi_at(&self, t0: &GaussianRational) -> Result<VectorForm01<ParamScalar>, DeformationError> {
        let a = self.t_assignment(t0)?;
        Ok(self.phi.try_map(|c| c.substitute(&a))?)
    }

    /// `φ′(0)`.
    pub fn derivative_at_zero(&self) -> Result<VectorForm01<ParamScalar>, DeformationError> {
        let a = self.t_assignment(&GaussianRational::from_int(0))?;
        Ok(self.phi.try_map(|c| c.derivative(self.t).substitute(&a))?)
    }

    /// The structure with `t` kept symbolic.
    pub fn symbolic(&self) -> Result<DeformedStructure<ParamScalar>, DeformationError> {
        Ok(DeformedStructure::new(self.algebra.clone(), self.phi.clone())?)
    }

    pub fn at(&self, t0: &GaussianRational) -> Result<DeformedStructure<ParamScalar>, DeformationError> {
        Ok(DeformedStructure::new(self.algebra.clone(), self.phi_at(t0)?)?)
    }

    /// `M_{t0} = (M, J_{t0})` as a new structure-constant table.
    pub fn pullback_structure(&self, t0: &GaussianRational) -> Result<ComplexNilAlgebra<ParamScalar>, DeformationError> {
        let s = self.at(t0)?;
        let residual = s.integrability_residual();
        if !residual.is_empty() {
            return Err(DeformationError::NotIntegrableAt {
                t0: t0.to_string(),
                indices: residual.into_iter().map(|(j, _)| j).collect(),
            });
        }
        Ok(s.pulled_back_algebra()?)
    }
}
