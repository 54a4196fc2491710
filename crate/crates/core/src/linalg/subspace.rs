//! Canonical subspaces of rational coordinate space.

use num::Zero;

use super::matrix::Matrix;
use super::scalar::Scalar;
use super::{vec_is_zero, LinalgError};

/// A linear subspace of an ambient coordinate space, stored as the reduced
/// row echelon basis of its span. RREF is unique per subspace, so two values
/// compare equal exactly when they denote the same space.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_rows(ambient: usize, rows: Vec<Vec<Scalar>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ambient), "ragged rows");
        if rows.is_empty() {
            return Subspace::zero(ambient);
        }
        let (r, pivots) = Matrix::from_rows(rows).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Matrix::identity(ambient).row_space()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        if self.basis.is_empty() {
            Matrix::zeros(0, self.ambient)
        } else {
            Matrix::from_rows(self.basis.clone())
        }
    }

    /// Remainder of `v` after eliminating all pivot coordinates against the
    /// basis. Zero exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut r = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let factor = r[p].clone();
            for (cell, basis_cell) in r.iter_mut().zip(&self.basis[row]) {
                let sub = &factor * basis_cell;
                if !sub.is_zero() {
                    *cell -= sub;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    /// Rows spanning the annihilator: the subspace is exactly
    /// `{x : constraints() * x = 0}`.
    pub fn constraints(&self) -> Matrix {
        if self.basis.is_empty() {
            return Matrix::identity(self.ambient);
        }
        self.basis_matrix().kernel_basis().basis_matrix()
    }

    /// Intersection of two subspaces of the same ambient space.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        self.constraints()
            .vstack(&other.constraints())
            .kernel_basis()
    }

    /// Sum (span of the union) of two subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis.clone();
        rows.extend(other.basis.clone());
        Subspace::from_rows(self.ambient, rows)
    }

    /// Dimension of `self / sub` together with coset representatives: the
    /// RREF basis vectors of `self` whose pivots do not occur among the
    /// pivots of `sub`. Fails if `sub` is not contained in `self`.
    pub fn quotient_by(&self, sub: &Subspace) -> Result<(usize, Vec<Vec<Scalar>>), LinalgError> {
        if sub.ambient != self.ambient || !sub.is_subspace_of(self) {
            return Err(LinalgError::NotASubspace);
        }
        let reps: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .zip(&self.pivots)
            .filter(|(_, p)| !sub.pivots.contains(p))
            .map(|(v, _)| v.clone())
            .collect();
        debug_assert_eq!(reps.len(), self.dim() - sub.dim());
        Ok((reps.len(), reps))
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}, basis {:?})",
            self.dim(),
            self.ambient,
            self.basis_matrix()
        )
    }
}
