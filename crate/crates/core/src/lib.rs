//! Representations of finite groupoids over exact fields: Kan extensions,
//! the Nakayama comparison between them, and span quantization.
//!
//! All algebra is generic over [`Scalar`]; the aliases below fix the usual
//! ground fields.

pub mod corpus;
pub mod error;
pub mod famquant;
pub mod group;
pub mod groupoid;
pub mod kan;
pub mod matrix;
pub mod nakayama;
pub mod pullback;
pub mod rep;
pub mod scalar;
mod wire;

pub use error::{Error, Result};
pub use famquant::{FamObject, QuantResult, Span};
pub use group::{validate_group, FiniteGroup};
pub use groupoid::{
    cardinality, compose_maps, diagonal, product_projections, Groupoid, GroupoidMap,
    GroupoidObject, NatTransf,
};
pub use matrix::{kernel_basis, kronecker, quotient_basis, Matrix, Quotient};
pub use nakayama::{delta, gamma, nakayama_map, WeightTable};
pub use pullback::{
    homotopy_fiber, homotopy_pullback, homotopy_pullback_with, CosetTable, FiberComponent,
    FiberData, Pullback, RepChoice,
};
pub use rep::{
    coevaluation, dimension_scalar, evaluation, intertwiner_basis, restrict_along_transformation,
    swap, swap_matrix, RepMap, Representation,
};
pub use scalar::{from_rational, scalar_inverse, Field, Fp, Rational, Scalar};

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;

pub type QMatrix = Matrix<Rational>;
