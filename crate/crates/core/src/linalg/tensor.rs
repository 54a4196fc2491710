//! Rank-3 coefficient tensors for bilinear maps.

use num::Zero;

use super::scalar::Scalar;
use super::{vec_is_zero, vec_zero};

/// A `d0 x d1 x d2` array of rationals encoding a bilinear map
/// `U x W -> Z` by `t[i][j][k]` = coefficient of `z_k` in `u_i * w_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor3 {
    d0: usize,
    d1: usize,
    d2: usize,
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(d0: usize, d1: usize, d2: usize) -> Self {
        Tensor3 {
            d0,
            d1,
            d2,
            data: vec_zero(d0 * d1 * d2),
        }
    }

    pub fn from_data(d0: usize, d1: usize, d2: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), d0 * d1 * d2, "tensor data length mismatch");
        Tensor3 { d0, d1, d2, data }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.d0, self.d1, self.d2)
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[(i * self.d1 + j) * self.d2 + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        self.data[(i * self.d1 + j) * self.d2 + k] = value;
    }

    /// Coordinates of `u_i * w_j`.
    pub fn basis_slice(&self, i: usize, j: usize) -> &[Scalar] {
        let off = (i * self.d1 + j) * self.d2;
        &self.data[off..off + self.d2]
    }

    /// Bilinear evaluation on coordinate vectors.
    pub fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.d0);
        assert_eq!(y.len(), self.d1);
        let mut out = vec_zero(self.d2);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let factor = xi * yj;
                for (k, cell) in self.basis_slice(i, j).iter().enumerate() {
                    if !cell.is_zero() {
                        out[k] += &factor * cell;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.data)
    }

    pub fn add(&self, rhs: &Tensor3) -> Tensor3 {
        assert_eq!(self.dims(), rhs.dims());
        Tensor3 {
            d0: self.d0,
            d1: self.d1,
            d2: self.d2,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Tensor3) -> Tensor3 {
        assert_eq!(self.dims(), rhs.dims());
        Tensor3 {
            d0: self.d0,
            d1: self.d1,
            d2: self.d2,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Tensor3 {
        Tensor3 {
            d0: self.d0,
            d1: self.d1,
            d2: self.d2,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }
}

impl std::fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tensor3 {}x{}x{} [", self.d0, self.d1, self.d2)?;
        for i in 0..self.d0 {
            write!(f, "[")?;
            for j in 0..self.d1 {
                let cells: Vec<String> = self
                    .basis_slice(i, j)
                    .iter()
                    .map(super::scalar::fmt_rat)
                    .collect();
                write!(f, "({})", cells.join(","))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
