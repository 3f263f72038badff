//! Vector-valued forms `φ = Σ φ^k_j η̄^j ⊗ Z_k`, interior products and the
//! simultaneous contraction of covector operators.
//!
//! Sign conventions: `Z_k ⌟` removing the `r`-th holomorphic factor gives
//! `(-1)^{r-1}`; `Z̄_k ⌟` removing the `r`-th antiholomorphic factor of a
//! `(p, q)` monomial gives `(-1)^{p+r-1}`.

use thiserror::Error;

use crate::exterior::{Form, Monomial};
use crate::linalg::Matrix;
use crate::scalars::{GaussianRational, ParamScalar, Ring, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractionError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("singular coframe operator (determinant {determinant})")]
    SingularOperator { determinant: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `Z_k ⌟ α`.
pub fn interior<C: Ring>(k: usize, a: &Form<C>) -> Form<C> {
    let bit = 1u32 << (k - 1);
    let mut out = Form::zero(a.n());
    for (m, c) in a.terms() {
        if m.holo & bit == 0 {
            continue;
        }
        let r = (m.holo & (bit - 1)).count_ones();
        let rest = Monomial::new(m.holo & !bit, m.anti);
        out.add_term(rest, if r % 2 == 1 { c.neg() } else { c.clone() });
    }
    out
}

/// `Z̄_k ⌟ α`.
pub fn interior_bar<C: Ring>(k: usize, a: &Form<C>) -> Form<C> {
    let bit = 1u32 << (k - 1);
    let mut out = Form::zero(a.n());
    for (m, c) in a.terms() {
        if m.anti & bit == 0 {
            continue;
        }
        let r = m.p() as u32 + (m.anti & (bit - 1)).count_ones();
        let rest = Monomial::new(m.holo, m.anti & !bit);
        out.add_term(rest, if r % 2 == 1 { c.neg() } else { c.clone() });
    }
    out
}

/// `φ = Σ_{j,k} φ^k_j η̄^j ⊗ Z_k`, stored as `coeffs[k-1][j-1] = φ^k_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorForm01<C> {
    n: usize,
    coeffs: Vec<Vec<C>>,
}

impl<C: Ring> VectorForm01<C> {
    pub fn zero(n: usize) -> Self {
        VectorForm01 { n, coeffs: vec![vec![C::zero(); n]; n] }
    }

    /// Diagonal `Σ d_k η̄^k ⊗ Z_k`.
    pub fn diagonal(entries: Vec<C>) -> Self {
        let n = entries.len();
        let mut v = Self::zero(n);
        for (k, e) in entries.into_iter().enumerate() {
            v.coeffs[k][k] = e;
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `φ^k_j`, the coefficient of `η̄^j ⊗ Z_k`.
    pub fn get(&self, k: usize, j: usize) -> &C {
        &self.coeffs[k - 1][j - 1]
    }

    pub fn set(&mut self, k: usize, j: usize, c: C) {
        self.coeffs[k - 1][j - 1] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(k, row)| row.iter().enumerate().map(move |(j, c)| (k + 1, j + 1, c)))
            .filter(|(_, _, c)| !c.is_zero())
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> VectorForm01<D> {
        VectorForm01 { n: self.n, coeffs: self.coeffs.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }

    pub fn try_map<D: Ring, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<VectorForm01<D>, E> {
        let mut coeffs = Vec::with_capacity(self.n);
        for r in &self.coeffs {
            coeffs.push(r.iter().map(&f).collect::<Result<Vec<D>, E>>()?);
        }
        Ok(VectorForm01 { n: self.n, coeffs })
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| c.mul(s))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, j, c) in o.entries() {
            let v = out.get(k, j).add(c);
            out.set(k, j, v);
        }
        out
    }

    fn check(&self, a: &Form<C>) -> Result<(), ContractionError> {
        if self.n == a.n() {
            Ok(())
        } else {
            Err(ContractionError::DimensionMismatch { left: self.n, right: a.n() })
        }
    }

    /// `ι_φ α = Σ φ^k_j η̄^j ∧ (Z_k ⌟ α)`, bidegree `(p, q) -> (p-1, q+1)`.
    pub fn try_contract(&self, a: &Form<C>) -> Result<Form<C>, ContractionError> {
        self.check(a)?;
        let mut out = Form::zero(self.n);
        for k in 1..=self.n {
            if self.coeffs[k - 1].iter().all(|c| c.is_zero()) {
                continue;
            }
            let z = interior(k, a);
            if z.is_zero() {
                continue;
            }
            for j in 1..=self.n {
                let c = &self.coeffs[k - 1][j - 1];
                if !c.is_zero() {
                    out = out.add(&Form::eta_bar(self.n, j).wedge(&z).scale(c));
                }
            }
        }
        Ok(out)
    }

    pub fn contract(&self, a: &Form<C>) -> Form<C> {
        self.try_contract(a).expect("forms of equal dimension")
    }

    /// `ι_φ̄ α = Σ conj(φ^k_j) η^j ∧ (Z̄_k ⌟ α)`, bidegree `(p, q) -> (p+1, q-1)`.
    pub fn try_contract_bar(&self, a: &Form<C>) -> Result<Form<C>, ContractionError> {
        self.check(a)?;
        let mut out = Form::zero(self.n);
        for k in 1..=self.n {
            if self.coeffs[k - 1].iter().all(|c| c.is_zero()) {
                continue;
            }
            let z = interior_bar(k, a);
            if z.is_zero() {
                continue;
            }
            for j in 1..=self.n {
                let c = &self.coeffs[k - 1][j - 1];
                if !c.is_zero() {
                    out = out.add(&Form::eta(self.n, j).wedge(&z).scale(&c.conj()));
                }
            }
        }
        Ok(out)
    }

    pub fn contract_bar(&self, a: &Form<C>) -> Form<C> {
        self.try_contract_bar(a).expect("forms of equal dimension")
    }

    /// `I + φ + φ̄` as a coframe operator.
    pub fn extension_operator(&self) -> CoframeOperator<C> {
        let n = self.n;
        let mut m = Matrix::identity(2 * n);
        for k in 1..=n {
            for j in 1..=n {
                let c = self.get(k, j);
                if c.is_zero() {
                    continue;
                }
                // η^k ↦ η^k + Σ_j φ^k_j η̄^j and the conjugate rule
                m.set(k - 1, n + j - 1, c.clone());
                m.set(n + k - 1, j - 1, c.conj());
            }
        }
        CoframeOperator { n, m }
    }

    /// `φφ̄`: `η^i ↦ Σ φ^i_j conj(φ^j_l) η^l`, zero on `η̄`.
    pub fn phi_phibar(&self) -> CoframeOperator<C> {
        let n = self.n;
        let mut m = Matrix::zeros(2 * n, 2 * n);
        for i in 1..=n {
            for l in 1..=n {
                let mut acc = C::zero();
                for j in 1..=n {
                    acc = acc.add(&self.get(i, j).mul(&self.get(j, l).conj()));
                }
                m.set(i - 1, l - 1, acc);
            }
        }
        CoframeOperator { n, m }
    }

    /// `φ̄φ`: `η̄^i ↦ Σ conj(φ^i_j) φ^j_l η̄^l`, zero on `η`.
    pub fn phibar_phi(&self) -> CoframeOperator<C> {
        let n = self.n;
        let mut m = Matrix::zeros(2 * n, 2 * n);
        for i in 1..=n {
            for l in 1..=n {
                let mut acc = C::zero();
                for j in 1..=n {
                    acc = acc.add(&self.get(i, j).conj().mul(self.get(j, l)));
                }
                m.set(n + i - 1, n + l - 1, acc);
            }
        }
        CoframeOperator { n, m }
    }

    /// `e^{ι_φ|ι_φ̄} α = (I + φ + φ̄) ⟟ α`.
    pub fn extension_map(&self, a: &Form<C>) -> Result<Form<C>, ContractionError> {
        self.extension_operator().apply(a)
    }
}

/// Linear map on covectors; row `c` of the `2n × 2n` matrix is the image
/// of basis covector `c` (`η^1..η^n` then `η̄^1..η̄^n`).
#[derive(Clone, Debug, PartialEq)]
pub struct CoframeOperator<C> {
    n: usize,
    m: Matrix<C>,
}

impl<C: Ring> CoframeOperator<C> {
    pub fn identity(n: usize) -> Self {
        CoframeOperator { n, m: Matrix::identity(2 * n) }
    }

    pub fn from_matrix(n: usize, m: Matrix<C>) -> Self {
        assert_eq!((m.rows(), m.cols()), (2 * n, 2 * n));
        CoframeOperator { n, m }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix<C> {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    pub fn sub(&self, o: &Self) -> Self {
        CoframeOperator { n: self.n, m: self.m.sub(&o.m) }
    }

    pub fn add(&self, o: &Self) -> Self {
        CoframeOperator { n: self.n, m: self.m.add(&o.m) }
    }

    /// `self ∘ o`: first `o`, then `self`.
    pub fn compose(&self, o: &Self) -> Self {
        CoframeOperator { n: self.n, m: o.m.mul(&self.m) }
    }

    pub fn determinant(&self) -> C {
        self.m.determinant()
    }

    pub fn inverse(&self) -> Result<Self, ContractionError> {
        match self.m.inverse() {
            Some(m) => Ok(CoframeOperator { n: self.n, m }),
            None => Err(ContractionError::SingularOperator { determinant: format!("{:?}", self.m.determinant()) }),
        }
    }

    /// Image of one basis covector as a 1-form.
    pub fn image(&self, j: usize, bar: bool) -> Form<C> {
        let row = if bar { self.n + j - 1 } else { j - 1 };
        let mut f = Form::zero(self.n);
        for (c, v) in self.m.row(row).iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let mono = if c < self.n { Monomial::eta(c + 1) } else { Monomial::eta_bar(c + 1 - self.n) };
            f.add_term(mono, v.clone());
        }
        f
    }

    /// Simultaneous contraction `E ⟟ α`: every covector factor of every
    /// monomial replaced by its image.
    pub fn apply(&self, a: &Form<C>) -> Result<Form<C>, ContractionError> {
        if a.n() != self.n {
            return Err(ContractionError::DimensionMismatch { left: self.n, right: a.n() });
        }
        let images: Vec<Form<C>> = (0..2 * self.n).map(|c| self.image(c % self.n + 1, c >= self.n)).collect();
        Ok(a.linear_map(|m| {
            let mut f = Form::one(self.n);
            for (j, bar) in m.factors() {
                f = f.wedge(&images[if bar { self.n + j - 1 } else { j - 1 }]);
                if f.is_zero() {
                    break;
                }
            }
            f
        }))
    }
}

impl CoframeOperator<ParamScalar> {
    /// Inverse with the symbolic determinant in the error.
    pub fn inverse_symbolic(&self, show: impl Fn(&ParamScalar) -> String) -> Result<Self, ContractionError> {
        self.inverse().map_err(|_| ContractionError::SingularOperator { determinant: show(&self.determinant()) })
    }
}

impl CoframeOperator<GaussianRational> {
    pub fn to_param(&self) -> CoframeOperator<ParamScalar> {
        CoframeOperator { n: self.n, m: self.m.map(|c| ParamScalar::constant(c.clone())) }
    }
}
