use super::{GaussianRational, ParamScalar, Ring};

/// First-order jet `value + deriv * t` with `t^2 = 0` and `t` real.
#[derive(Clone, PartialEq, Debug)]
pub struct Jet<C> {
    pub value: C,
    pub deriv: C,
}

impl<C: Ring> Jet<C> {
    pub fn new(value: C, deriv: C) -> Self {
        Jet { value, deriv }
    }

    pub fn constant(value: C) -> Self {
        Jet { value, deriv: C::zero() }
    }

    /// The jet of `t` itself.
    pub fn t() -> Self {
        Jet { value: C::zero(), deriv: C::one() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Jet { value: self.value.mul(c), deriv: self.deriv.mul(c) }
    }
}

impl<C: Ring> Ring for Jet<C> {
    fn zero() -> Self {
        Jet::constant(C::zero())
    }
    fn one() -> Self {
        Jet::constant(C::one())
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.deriv.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Jet { value: self.value.add(&o.value), deriv: self.deriv.add(&o.deriv) }
    }
    fn sub(&self, o: &Self) -> Self {
        Jet { value: self.value.sub(&o.value), deriv: self.deriv.sub(&o.deriv) }
    }
    fn mul(&self, o: &Self) -> Self {
        Jet {
            value: self.value.mul(&o.value),
            deriv: self.value.mul(&o.deriv).add(&self.deriv.mul(&o.value)),
        }
    }
    fn neg(&self) -> Self {
        Jet { value: self.value.neg(), deriv: self.deriv.neg() }
    }
    fn conj(&self) -> Self {
        Jet { value: self.value.conj(), deriv: self.deriv.conj() }
    }
    fn is_unit(&self) -> bool {
        self.value.is_unit()
    }
    fn try_inv(&self) -> Option<Self> {
        let v = self.value.try_inv()?;
        let d = self.deriv.mul(&v).mul(&v).neg();
        Some(Jet { value: v, deriv: d })
    }
    fn from_gaussian(g: &GaussianRational) -> Self {
        Jet::constant(C::from_gaussian(g))
    }
    fn from_param(p: &ParamScalar) -> Option<Self> {
        C::from_param(p).map(Jet::constant)
    }
}
