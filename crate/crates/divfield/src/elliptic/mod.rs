//! Weierstrass curves over Q: group law over Q and multiquadratic fields, division
//! polynomials, torsion, twists, isogenies, point halving and CM lookup.

mod cm;
mod curve;
mod divpoly;
mod field;
mod halving;
mod isogeny;
mod point;
mod torsion;

pub use cm::{cm_recognize, curve_with_j, CmRow, CM_TABLE};
pub use curve::{quadratic_twist, WeierstrassCurve};
pub use divpoly::{
    division_polynomial, division_polynomial_generic, division_polynomial_unbounded, doubling_map, DivPolyRing,
};
pub use field::FieldElem;
pub use halving::{
    four_torsion_field, halve_point, halve_point_extending, halving_obstruction, two_division_roots, FourTorsion,
    Halved,
};
pub use isogeny::{rational_isogeny_kernels, velu_isogeny, Kernel};
pub use point::{add_points, scalar_mul, CurvePoint};
pub use torsion::{torsion_over_q, RationalTorsion, TorsionType};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EllipticError {
    #[error("curve is singular")]
    SingularCurve,
    #[error("n = {0} is not supported here")]
    UnsupportedN(u32),
    #[error("point coordinates live in different fields")]
    CoordinateFieldMismatch,
    #[error("prime {0} is not supported")]
    UnsupportedPrime(u32),
    #[error("kernel polynomial does not define a subgroup")]
    InvalidKernel,
    #[error("the 2-division polynomial does not split over the given field")]
    TwoTorsionNotSplit,
}
