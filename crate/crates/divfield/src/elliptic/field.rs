use crate::algebra_core::Rational;
use crate::multiquad::MqElement;
use num_traits::{One, Zero};
use std::fmt::Debug;

/// Coordinate field for curve points: Q itself or a multiquadratic field.
pub trait FieldElem: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rational_like(&self, q: &Rational) -> Self;
    fn same_field(&self, other: &Self) -> bool;
    fn f_add(&self, o: &Self) -> Self;
    fn f_sub(&self, o: &Self) -> Self;
    fn f_mul(&self, o: &Self) -> Self;
    fn f_neg(&self) -> Self;
    /// `None` for zero.
    fn f_inv(&self) -> Option<Self>;
    fn f_is_zero(&self) -> bool;
}

impl FieldElem for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn same_field(&self, _: &Self) -> bool {
        true
    }
    fn f_add(&self, o: &Self) -> Self {
        self + o
    }
    fn f_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn f_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn f_neg(&self) -> Self {
        -self
    }
    fn f_inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn f_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl FieldElem for MqElement {
    fn zero_like(&self) -> Self {
        MqElement::zero(self.field())
    }
    fn one_like(&self) -> Self {
        MqElement::one(self.field())
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        MqElement::from_rational(self.field(), q.clone())
    }
    fn same_field(&self, other: &Self) -> bool {
        self.field() == other.field()
    }
    fn f_add(&self, o: &Self) -> Self {
        self + o
    }
    fn f_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn f_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn f_neg(&self) -> Self {
        -self
    }
    fn f_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn f_is_zero(&self) -> bool {
        self.is_zero()
    }
}
