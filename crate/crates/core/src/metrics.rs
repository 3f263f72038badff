//! Hermitian metrics `ω = (i/2) Σ F_{jk} η^{j|k}`, special-metric residuals
//! and the antilinear Hodge star of diagonal metrics.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::ComplexNilAlgebra;
use crate::exterior::{full_mask, Form, Monomial};
use crate::linalg::Matrix;
use crate::scalars::{GaussianRational, ParamScalar, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("metric matrix is not Hermitian at entry ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error("the Hodge star is only implemented for diagonal metrics")]
    NonDiagonalMetric,
    #[error("diagonal metric coefficient {0} is not invertible")]
    DegenerateMetric(usize),
    #[error("metric has dimension {metric}, form has dimension {form}")]
    DimensionMismatch { metric: usize, form: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecialMetric {
    /// `dω = 0`
    Kahler,
    /// `∂∂̄ω = 0`
    Skt,
    /// `∂∂̄ω^{n-2} = 0`
    Astheno,
    /// `dω^{n-1} = 0`
    Balanced,
}

impl std::str::FromStr for SpecialMetric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "kahler" | "kähler" => Ok(SpecialMetric::Kahler),
            "skt" | "pluriclosed" => Ok(SpecialMetric::Skt),
            "astheno" | "astheno-kahler" => Ok(SpecialMetric::Astheno),
            "balanced" => Ok(SpecialMetric::Balanced),
            _ => Err(format!("unknown metric mode `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMetric<C> {
    n: usize,
    f: Matrix<C>,
    diagonal: bool,
}

/// Defining form of a special-metric condition and its coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialMetricResidual<C> {
    pub mode: SpecialMetric,
    pub residual: Form<C>,
    pub conditions: Vec<(Monomial, C)>,
}

impl<C: Ring> SpecialMetricResidual<C> {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

impl<C: Ring> HermitianMetric<C> {
    /// The metric with `F = I`.
    pub fn standard(n: usize) -> Self {
        HermitianMetric { n, f: Matrix::identity(n), diagonal: true }
    }

    pub fn from_diagonal(entries: Vec<C>) -> Result<Self, MetricError> {
        let n = entries.len();
        let mut f = Matrix::zeros(n, n);
        for (j, e) in entries.into_iter().enumerate() {
            if e != e.conj() {
                return Err(MetricError::NotHermitian(j + 1, j + 1));
            }
            f.set(j, j, e);
        }
        Ok(HermitianMetric { n, f, diagonal: true })
    }

    pub fn new(f: Matrix<C>) -> Result<Self, MetricError> {
        let n = f.rows();
        assert_eq!(n, f.cols(), "metric matrix must be square");
        let mut diagonal = true;
        for j in 0..n {
            for k in j..n {
                if *f.get(k, j) != f.get(j, k).conj() {
                    return Err(MetricError::NotHermitian(j + 1, k + 1));
                }
                if j != k && !f.get(j, k).is_zero() {
                    diagonal = false;
                }
            }
        }
        Ok(HermitianMetric { n, f, diagonal })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    pub fn matrix(&self) -> &Matrix<C> {
        &self.f
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> HermitianMetric<D> {
        HermitianMetric { n: self.n, f: self.f.map(f), diagonal: self.diagonal }
    }

    /// `ω = (i/2) Σ F_{jk} η^{j|k}`.
    pub fn fundamental_form(&self) -> Form<C> {
        let half_i = C::from_gaussian(&GaussianRational::from_parts(0, 1, 1, 2));
        let mut w = Form::zero(self.n);
        for j in 1..=self.n {
            for k in 1..=self.n {
                let c = self.f.get(j - 1, k - 1);
                if !c.is_zero() {
                    w.add_term(Monomial::from_indices(&[j], &[k]), c.mul(&half_i));
                }
            }
        }
        w
    }

    /// `ω^k`.
    pub fn fundamental_power(&self, k: usize) -> Form<C> {
        self.fundamental_form().pow(k)
    }

    /// `λ_j` of a diagonal metric.
    fn diagonal_entries(&self) -> Result<Vec<C>, MetricError> {
        if !self.diagonal {
            return Err(MetricError::NonDiagonalMetric);
        }
        Ok((0..self.n).map(|j| self.f.get(j, j).clone()).collect())
    }

    /// Antilinear Hodge star `∗̄`, characterized by
    /// `β ∧ ∗̄α = ⟨β, α⟩ ω^n/n!`, on a diagonal metric.
    ///
    /// With these conventions `|η^j|² = 2/λ_j` and `∗̄η^{1…n−1|1…n−1}` is a
    /// negative multiple of `η^{n|n}` for `n = 4`.
    pub fn hodge_star(&self, a: &Form<C>) -> Result<Form<C>, MetricError> {
        if a.n() != self.n {
            return Err(MetricError::DimensionMismatch { metric: self.n, form: a.n() });
        }
        let lambda = self.diagonal_entries()?;
        let inv: Vec<C> = lambda
            .iter()
            .enumerate()
            .map(|(j, l)| l.try_inv().ok_or(MetricError::DegenerateMetric(j + 1)))
            .collect::<Result<_, _>>()?;
        let n = self.n;
        let two = C::from_int(2);
        // volume ω^n/n! = (i/2)^n Πλ (−1)^{n(n−1)/2} η^{1…n|1…n}
        let half_i = C::from_gaussian(&GaussianRational::from_parts(0, 1, 1, 2));
        let mut vol = C::one();
        for _ in 0..n {
            vol = vol.mul(&half_i);
        }
        for l in &lambda {
            vol = vol.mul(l);
        }
        if (n * (n - 1) / 2) % 2 == 1 {
            vol = vol.neg();
        }
        let top = Monomial::new(full_mask(n), full_mask(n));
        let mut out = Form::zero(n);
        for (&m, c) in a.terms() {
            let comp = m.complement(n);
            let (prod, neg) = m.wedge(comp).expect("complementary monomials");
            debug_assert_eq!(prod, top);
            let mut k = c.conj().mul(&vol);
            for j in m.holo_indices().into_iter().chain(m.anti_indices()) {
                k = k.mul(&two).mul(&inv[j - 1]);
            }
            if neg {
                k = k.neg();
            }
            out.add_term(comp, k);
        }
        Ok(out)
    }
}

impl HermitianMetric<GaussianRational> {
    /// Leading principal minors of `F` are real and positive.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.n).all(|k| {
            let rows = (0..k).map(|r| (0..k).map(|c| self.f.get(r, c).clone()).collect()).collect();
            let d = Matrix::from_rows(rows).determinant();
            d.is_real() && d.is_positive_normalized() && !d.is_zero()
        })
    }
}

impl HermitianMetric<ParamScalar> {
    pub fn to_gaussian(&self) -> Option<HermitianMetric<GaussianRational>> {
        let rows = self.f.to_rows().iter().map(|r| r.iter().map(|c| c.as_constant()).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>()?;
        Some(HermitianMetric { n: self.n, f: Matrix::from_rows(rows), diagonal: self.diagonal })
    }
}

/// The residual of a special-metric condition.
pub fn check_special_metric<C: Ring>(
    g: &ComplexNilAlgebra<C>,
    m: &HermitianMetric<C>,
    mode: SpecialMetric,
) -> SpecialMetricResidual<C> {
    let n = g.n();
    let residual = match mode {
        SpecialMetric::Kahler => g.d(&m.fundamental_form()),
        SpecialMetric::Skt => g.del_delbar(&m.fundamental_form()),
        SpecialMetric::Astheno => g.del_delbar(&m.fundamental_power(n.saturating_sub(2))),
        SpecialMetric::Balanced => g.d(&m.fundamental_power(n.saturating_sub(1))),
    };
    let conditions = residual.sorted_terms().into_iter().map(|(k, c)| (k, c.clone())).collect();
    SpecialMetricResidual { mode, residual, conditions }
}
