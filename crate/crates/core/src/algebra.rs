//! BiHom-associative trialgebras represented by structure constants, with
//! checkers for the defining axioms, multiplicativity, homomorphisms,
//! ideals, and the center.

use crate::linalg::{unit_vec, vec_is_zero, vec_sub, Matrix, Scalar, Subspace, Tensor3};
use crate::report::ViolationReport;
use crate::trees::OpLabel;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// One twisted associativity axiom, of the shape
/// `(x <lhs_inner> y) <lhs_outer> beta(z) = alpha(x) <rhs_outer> (y <rhs_inner> z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub id: u8,
    pub lhs_inner: OpLabel,
    pub lhs_outer: OpLabel,
    pub rhs_outer: OpLabel,
    pub rhs_inner: OpLabel,
}

use OpLabel::{Left as L, Middle as M, Right as R};

macro_rules! axiom {
    ($id:expr, $a:expr, $b:expr, $c:expr, $d:expr) => {
        Axiom {
            id: $id,
            lhs_inner: $a,
            lhs_outer: $b,
            rhs_outer: $c,
            rhs_inner: $d,
        }
    };
}

/// The eleven product axioms of a BiHom-associative trialgebra, numbered
/// 1 through 11:
///
/// ```text
///  1  (x -| y) -| b(z) = a(x) -| (y -| z)
///  2  (x -| y) -| b(z) = a(x) -| (y |- z)
///  3  (x |- y) -| b(z) = a(x) |- (y -| z)
///  4  (x -| y) |- b(z) = a(x) |- (y |- z)
///  5  (x |- y) |- b(z) = a(x) |- (y |- z)
///  6  (x -| y) -| b(z) = a(x) -| (y _|_ z)
///  7  (x _|_ y) -| b(z) = a(x) _|_ (y -| z)
///  8  (x -| y) _|_ b(z) = a(x) _|_ (y |- z)
///  9  (x |- y) _|_ b(z) = a(x) |- (y _|_ z)
/// 10  (x _|_ y) |- b(z) = a(x) |- (y |- z)
/// 11  (x _|_ y) _|_ b(z) = a(x) _|_ (y _|_ z)
/// ```
///
/// together with the separate requirement that the structure maps commute.
pub const AXIOMS: [Axiom; 11] = [
    axiom!(1, L, L, L, L),
    axiom!(2, L, L, L, R),
    axiom!(3, R, L, R, L),
    axiom!(4, L, R, R, R),
    axiom!(5, R, R, R, R),
    axiom!(6, L, L, L, M),
    axiom!(7, M, L, M, L),
    axiom!(8, L, M, M, R),
    axiom!(9, R, M, R, M),
    axiom!(10, M, R, R, R),
    axiom!(11, M, M, M, M),
];

/// A trialgebra of dimension `n` given by three `n x n x n` structure
/// tensors (`tensor(op)[i][j][k]` = coefficient of `e_k` in `e_i op e_j`)
/// and two `n x n` structure-map matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct Trialgebra {
    dim: usize,
    tensors: [Tensor3; 3],
    alpha: Matrix,
    beta: Matrix,
}

impl Trialgebra {
    pub fn new(
        left: Tensor3,
        right: Tensor3,
        middle: Tensor3,
        alpha: Matrix,
        beta: Matrix,
    ) -> Result<Self, AlgebraError> {
        let dim = alpha.rows();
        for (name, t) in [("left", &left), ("right", &right), ("middle", &middle)] {
            if t.dims() != (dim, dim, dim) {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "{name} tensor is {:?}, expected {dim}^3",
                    t.dims()
                )));
            }
        }
        for (name, m) in [("alpha", &alpha), ("beta", &beta)] {
            if m.rows() != dim || m.cols() != dim {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "{name} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Trialgebra {
            dim,
            tensors: [left, right, middle],
            alpha,
            beta,
        })
    }

    /// All products zero.
    pub fn abelian(dim: usize, alpha: Matrix, beta: Matrix) -> Result<Self, AlgebraError> {
        let z = || Tensor3::zeros(dim, dim, dim);
        Trialgebra::new(z(), z(), z(), alpha, beta)
    }

    /// Collapse of an associative-style algebra: all three products equal
    /// the given one.
    pub fn from_associative(
        product: Tensor3,
        alpha: Matrix,
        beta: Matrix,
    ) -> Result<Self, AlgebraError> {
        Trialgebra::new(product.clone(), product.clone(), product, alpha, beta)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tensor(&self, op: OpLabel) -> &Tensor3 {
        &self.tensors[op.index()]
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    pub fn product(&self, op: OpLabel, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.tensor(op).bilinear(x, y)
    }

    /// Coordinates of `e_i op e_j`.
    pub fn basis_product(&self, op: OpLabel, i: usize, j: usize) -> &[Scalar] {
        self.tensor(op).basis_slice(i, j)
    }

    /// True when the three structure tensors coincide.
    pub fn is_collapsed(&self) -> bool {
        self.tensors[0] == self.tensors[1] && self.tensors[1] == self.tensors[2]
    }

    pub fn has_identity_maps(&self) -> bool {
        self.alpha.is_identity() && self.beta.is_identity()
    }

    /// Evaluates the structure-map commutation and the eleven axioms on all
    /// basis triples. Empty report exactly when the value is a
    /// BiHom-associative trialgebra.
    pub fn check_axioms(&self) -> ViolationReport {
        let mut report = ViolationReport::new();
        let commutator = self.alpha.mul(&self.beta).sub(&self.beta.mul(&self.alpha));
        for i in 0..self.dim {
            let defect = commutator.col(i);
            if !vec_is_zero(&defect) {
                report.push("commutation(alpha,beta)", vec![i], defect);
            }
        }
        for ax in &AXIOMS {
            for a in 0..self.dim {
                for b in 0..self.dim {
                    for c in 0..self.dim {
                        let defect = self.axiom_defect(ax, a, b, c);
                        if !vec_is_zero(&defect) {
                            report.push(format!("axiom({})", ax.id), vec![a, b, c], defect);
                        }
                    }
                }
            }
        }
        report
    }

    /// `(e_a A e_b) B beta(e_c) - alpha(e_a) C (e_b D e_c)` for one axiom.
    pub fn axiom_defect(&self, ax: &Axiom, a: usize, b: usize, c: usize) -> Vec<Scalar> {
        let lhs = self.product(
            ax.lhs_outer,
            self.basis_product(ax.lhs_inner, a, b),
            &self.beta.col(c),
        );
        let rhs = self.product(
            ax.rhs_outer,
            &self.alpha.col(a),
            self.basis_product(ax.rhs_inner, b, c),
        );
        vec_sub(&lhs, &rhs)
    }

    /// Checks that both structure maps are endomorphisms for all three
    /// products.
    pub fn check_multiplicative(&self) -> ViolationReport {
        let mut report = ViolationReport::new();
        for (name, map) in [("alpha", &self.alpha), ("beta", &self.beta)] {
            for op in OpLabel::ALL {
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        let lhs = map.apply(self.basis_product(op, i, j));
                        let rhs = self.product(op, &map.col(i), &map.col(j));
                        let defect = vec_sub(&lhs, &rhs);
                        if !vec_is_zero(&defect) {
                            report.push(
                                format!("multiplicative({name},{})", op.name()),
                                vec![i, j],
                                defect,
                            );
                        }
                    }
                }
            }
        }
        report
    }

    /// The largest alpha/beta-stable subspace annihilating everything under
    /// all six one-sided products, computed by fixed-point iteration.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        // z * e_j = 0 and e_j * z = 0 for all j and all products
        let mut rows = Vec::new();
        for op in OpLabel::ALL {
            for j in 0..n {
                for k in 0..n {
                    rows.push((0..n).map(|i| self.tensor(op).get(i, j, k).clone()).collect());
                    rows.push((0..n).map(|i| self.tensor(op).get(j, i, k).clone()).collect());
                }
            }
        }
        let mut space = Matrix::from_rows(rows).kernel_basis();
        loop {
            let constraints = space.constraints();
            let stabilized = constraints
                .vstack(&constraints.mul(&self.alpha))
                .vstack(&constraints.mul(&self.beta))
                .kernel_basis();
            if stabilized == space {
                return space;
            }
            space = stabilized;
        }
    }

    /// True when `s` is alpha/beta-stable and absorbs all six one-sided
    /// products.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        assert_eq!(s.ambient_dim(), self.dim);
        for v in s.basis() {
            if !s.contains(&self.alpha.apply(v)) || !s.contains(&self.beta.apply(v)) {
                return false;
            }
            for op in OpLabel::ALL {
                for j in 0..self.dim {
                    let e = unit_vec(self.dim, j);
                    if !s.contains(&self.product(op, v, &e)) || !s.contains(&self.product(op, &e, v))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl std::fmt::Debug for Trialgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Trialgebra(dim {}, left {:?}, right {:?}, middle {:?}, alpha {:?}, beta {:?})",
            self.dim, self.tensors[0], self.tensors[1], self.tensors[2], self.alpha, self.beta
        )
    }
}

/// Checks `phi(x op y) = phi(x) op phi(y)` for the three products together
/// with `alpha_2 phi = phi alpha_1` and `beta_2 phi = phi beta_1`.
pub fn is_homomorphism(
    phi: &Matrix,
    source: &Trialgebra,
    target: &Trialgebra,
) -> Result<ViolationReport, AlgebraError> {
    if phi.cols() != source.dim() || phi.rows() != target.dim() {
        return Err(AlgebraError::ShapeMismatch(format!(
            "map is {}x{}, expected {}x{}",
            phi.rows(),
            phi.cols(),
            target.dim(),
            source.dim()
        )));
    }
    let mut report = ViolationReport::new();
    for op in OpLabel::ALL {
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let lhs = phi.apply(source.basis_product(op, i, j));
                let rhs = target.product(op, &phi.col(i), &phi.col(j));
                let defect = vec_sub(&lhs, &rhs);
                if !vec_is_zero(&defect) {
                    report.push(format!("homomorphism({})", op.name()), vec![i, j], defect);
                }
            }
        }
    }
    for (name, ms, mt) in [
        ("alpha", source.alpha(), target.alpha()),
        ("beta", source.beta(), target.beta()),
    ] {
        let commutator = mt.mul(phi).sub(&phi.mul(ms));
        for i in 0..source.dim() {
            let defect = commutator.col(i);
            if !vec_is_zero(&defect) {
                report.push(format!("intertwines({name})"), vec![i], defect);
            }
        }
    }
    Ok(report)
}
