//! Exact symbolic computation for Z2-graded (super)algebra.
//!
//! The crate builds, over the rationals and with no floating point anywhere:
//!
//! - [`superpoly`]: the free supercommutative algebra K[S] (x) Lambda(T)
//!   (even polynomial variables, anticommuting odd variables);
//! - [`algebra`]: finite-dimensional Z2-graded algebras from structure
//!   constants, structural checks, and generic traces via the generic
//!   minimal polynomial;
//! - [`tensor`]: arithmetic in A (x) Delta_S, generic superelements, and the
//!   supertrace Strd = Trd (x) id;
//! - [`identities`]: supertrace polynomials, exact identity checking by
//!   generic evaluation, and the theta-transform to ordinary trace
//!   polynomials;
//! - [`universal`]: the A-universal supermap S_A(B) of a finitely presented
//!   graded algebra, with normal forms, embedding checks, power inclusion,
//!   and dimension bounds;
//! - [`smooth`]: affine superschemes and the Jacobian smoothness criterion.

pub mod algebra;
pub mod expr;
pub mod groebner;
pub mod identities;
pub mod linalg;
pub mod scalar;
pub mod selftest;
pub mod smooth;
pub mod superpoly;
pub mod tensor;
pub mod universal;

pub use scalar::Rat;
