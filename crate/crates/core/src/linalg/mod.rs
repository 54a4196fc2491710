//! Exact rational linear algebra: scalars, dense matrices, RREF, kernels,
//! and canonical subspaces.

mod matrix;
mod scalar;
mod subspace;
mod tensor;

pub use matrix::Matrix;
pub use scalar::{fmt_rat, int, parse_rat, rat, Scalar};
pub use subspace::Subspace;
pub use tensor::Tensor3;

use num::Zero;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("basis vector of the claimed subspace lies outside the larger space")]
    NotASubspace,
}

pub fn vec_zero(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| c * x).collect()
}

/// Standard basis vector `e_i` of length `n`.
pub fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec_zero(n);
    v[i] = num::One::one();
    v
}
