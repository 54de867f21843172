//! Root-of-unity arithmetic and the dense numerical kernels.

mod eig;
mod matrix;
mod poly;
mod real;
mod roots;

pub use eig::{eig_dense, eigenvalues, EigenResult};
pub use matrix::{rel_residual, CMatrix};
pub use poly::{cluster, interpolate, poly_roots, ComplexPoly, Var};
pub use real::{cis, cx, ipow, one, rel_diff, zero, Real, C};
pub use roots::{big_f, lambda_bracket, make_root_context, q_bracket, Parity, RootContext};
