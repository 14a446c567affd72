use std::fmt::Debug;

use crate::scalar::{FieldElement, Rational};

/// The commutative-ring surface shared by numeric scalars and symbolic
/// polynomials, so that algebra elements and determinants can be computed
/// over either.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, by: &Rational) -> Self;
    /// `self / rhs` when the quotient exists in the ring.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}

impl Ring for FieldElement {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, by: &Rational) -> Self {
        self.scale(by)
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs).ok()
    }
}
