//! Exact computational kernel: field scalars, sparse polynomials, parsing,
//! gcds, and linear algebra. Everything downstream builds on this module and
//! never touches floating point.

pub mod field;
pub mod gcd;
pub mod matrix;
pub mod parse;
pub mod poly;

pub use field::{FieldCtx, FieldElement, FieldError};
pub use gcd::{
    gcd, gcd_many, is_squarefree_binary, squarefree_decompose_binary, SquarefreeDecomposition,
    SquarefreeFactor,
};
pub use matrix::{
    det_field, det_poly, invert_field, linear_substitution, minor_gcd_locus, null_space,
    resultant, subsets,
};
pub use parse::{poly_parse, poly_print, ParseError};
pub use poly::{vars, Expo, MultiPoly, VarSet};
