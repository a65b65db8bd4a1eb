//! Exact field arithmetic, sparse homogeneous polynomials and exact linear
//! algebra. Everything downstream builds on these three pieces.

pub mod field;
pub mod linalg;
pub mod poly;

pub use field::{is_prime_u64, prime_power, Field, FieldKind, Scalar};
pub use linalg::{determinant, rank_and_nullspace, Matrix};
pub use poly::{
    binary_resultant_2_3, monomials_of_degree, monomials_up_to_degree, poly_matrix_determinant,
    BinaryForm, HomogPoly, Mono,
};
