//! One-parameter formal deformations of a trialgebra, truncated at a finite
//! order: the three products become polynomials in a formal parameter with
//! the original products in degree zero, the structure maps stay fixed, and
//! the defining axioms become convolution systems order by order.

use num::Zero;

use crate::algebra::{Trialgebra, AXIOMS};
use crate::bimodule::TriBimodule;
use crate::coho2::CocycleTriple;
use crate::hochschild::{delta_bht, tree2_cochain_from_triple, HochschildError, TreeCochain};
use crate::linalg::{vec_add, vec_is_zero, vec_sub, vec_zero, Matrix, Scalar, Tensor3};
use crate::report::ViolationReport;
use crate::trees::OpLabel;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DeformationError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("the order-zero terms must equal the base products")]
    BaseTermMismatch,
    #[error("the deformation has order zero, so there is no infinitesimal")]
    OrderZero,
    #[error("orders do not match")]
    OrderMismatch,
    #[error("the deformations have different base algebras")]
    BaseMismatch,
    #[error("the leading coefficient of a formal automorphism must be the identity")]
    LeadingTermNotIdentity,
    #[error("the map is singular")]
    Singular,
}

/// A deformation truncated at order `N`: `terms[i]` holds the order-`i`
/// triple of product tensors, with `terms[0]` equal to the base products.
/// Arithmetic is exact convolution modulo the (N+1)-st power of the
/// parameter; the structure maps are never deformed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedDeformation {
    base: Trialgebra,
    terms: Vec<[Tensor3; 3]>,
}

impl TruncatedDeformation {
    /// Wraps explicit terms; `terms[0]` must equal the base tensors.
    pub fn from_terms(
        base: Trialgebra,
        terms: Vec<[Tensor3; 3]>,
    ) -> Result<Self, DeformationError> {
        if terms.is_empty() {
            return Err(DeformationError::BaseTermMismatch);
        }
        let n = base.dim();
        for (order, triple) in terms.iter().enumerate() {
            for t in triple {
                if t.dims() != (n, n, n) {
                    return Err(DeformationError::ShapeMismatch(format!(
                        "order-{order} tensor is {:?}, expected {n}^3",
                        t.dims()
                    )));
                }
            }
        }
        for op in OpLabel::ALL {
            if &terms[0][op.index()] != base.tensor(op) {
                return Err(DeformationError::BaseTermMismatch);
            }
        }
        Ok(TruncatedDeformation { base, terms })
    }

    /// The zero deformation of `base` at the given order.
    pub fn trivial(base: Trialgebra, order: usize) -> Self {
        let n = base.dim();
        let mut terms = vec![[
            base.tensor(OpLabel::Left).clone(),
            base.tensor(OpLabel::Right).clone(),
            base.tensor(OpLabel::Middle).clone(),
        ]];
        for _ in 0..order {
            terms.push([
                Tensor3::zeros(n, n, n),
                Tensor3::zeros(n, n, n),
                Tensor3::zeros(n, n, n),
            ]);
        }
        TruncatedDeformation { base, terms }
    }

    pub fn base(&self) -> &Trialgebra {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, order: usize, op: OpLabel) -> &Tensor3 {
        &self.terms[order][op.index()]
    }

    /// Checks the eleven convolution systems at every order up to the
    /// truncation, on all basis triples. Rows are labelled
    /// `axiom(k)@order(n)`.
    pub fn verify(&self) -> ViolationReport {
        let mut report = ViolationReport::new();
        let dim = self.base.dim();
        let alpha = self.base.alpha();
        let beta = self.base.beta();
        for ax in &AXIOMS {
            for order in 0..=self.order() {
                for a in 0..dim {
                    for b in 0..dim {
                        for c in 0..dim {
                            let mut lhs = vec_zero(dim);
                            let mut rhs = vec_zero(dim);
                            for i in 0..=order {
                                let j = order - i;
                                // (x A_j y) B_i beta(z)
                                let inner = self.term(j, ax.lhs_inner).basis_slice(a, b);
                                lhs = vec_add(
                                    &lhs,
                                    &self.term(i, ax.lhs_outer).bilinear(inner, &beta.col(c)),
                                );
                                // alpha(x) C_i (y D_j z)
                                let inner = self.term(j, ax.rhs_inner).basis_slice(b, c);
                                rhs = vec_add(
                                    &rhs,
                                    &self.term(i, ax.rhs_outer).bilinear(&alpha.col(a), inner),
                                );
                            }
                            let defect = vec_sub(&lhs, &rhs);
                            if !vec_is_zero(&defect) {
                                report.push(
                                    format!("axiom({})@order({order})", ax.id),
                                    vec![a, b, c],
                                    defect,
                                );
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// Whether the order-`i` term triple is equivariant for the base
    /// structure maps, i.e. lands in the degree-2 cochain group with
    /// adjoint coefficients. Reported separately from [`verify`](Self::verify).
    pub fn term_is_equivariant(&self, order: usize) -> bool {
        let dim = self.base.dim();
        for map in [self.base.alpha(), self.base.beta()] {
            for op in OpLabel::ALL {
                let tensor = self.term(order, op);
                for i in 0..dim {
                    for j in 0..dim {
                        let twisted = tensor.bilinear(&map.col(i), &map.col(j));
                        let straight = map.apply(tensor.basis_slice(i, j));
                        if twisted != straight {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// The order-1 terms as a degree-2 tree cochain with adjoint
    /// coefficients, under the frozen tree/product bijection.
    pub fn infinitesimal(&self) -> Result<TreeCochain, DeformationError> {
        if self.order() < 1 {
            return Err(DeformationError::OrderZero);
        }
        let triple = CocycleTriple::new(
            self.terms[1][0].clone(),
            self.terms[1][1].clone(),
            self.terms[1][2].clone(),
        )
        .expect("term tensors share a shape");
        Ok(tree2_cochain_from_triple(&triple))
    }

    /// True exactly when the degree-2 coboundary of the infinitesimal
    /// vanishes. Requires the order-1 terms to be equivariant.
    pub fn is_infinitesimal_cocycle(&self) -> Result<bool, InfinitesimalError> {
        let inf = self.infinitesimal()?;
        let adjoint = TriBimodule::adjoint(self.base.clone());
        let image = delta_bht(&self.base, &adjoint, &inf)?;
        Ok(image.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InfinitesimalError {
    #[error(transparent)]
    Deformation(#[from] DeformationError),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
}

/// A truncated formal automorphism: `maps[i]` is the order-`i` coefficient,
/// with `maps[0]` the identity. Always invertible modulo the truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalAutomorphism {
    maps: Vec<Matrix>,
}

impl FormalAutomorphism {
    pub fn from_maps(maps: Vec<Matrix>) -> Result<Self, DeformationError> {
        let Some(first) = maps.first() else {
            return Err(DeformationError::LeadingTermNotIdentity);
        };
        let dim = first.rows();
        if maps
            .iter()
            .any(|m| m.rows() != dim || m.cols() != dim)
        {
            return Err(DeformationError::ShapeMismatch(
                "automorphism coefficients have mixed shapes".into(),
            ));
        }
        if !first.is_identity() {
            return Err(DeformationError::LeadingTermNotIdentity);
        }
        Ok(FormalAutomorphism { maps })
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        let mut maps = vec![Matrix::identity(dim)];
        for _ in 0..order {
            maps.push(Matrix::zeros(dim, dim));
        }
        FormalAutomorphism { maps }
    }

    pub fn order(&self) -> usize {
        self.maps.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.maps[0].rows()
    }

    pub fn map(&self, order: usize) -> &Matrix {
        &self.maps[order]
    }

    /// The truncated inverse series: exists because the leading term is the
    /// identity.
    pub fn inverse(&self) -> FormalAutomorphism {
        let dim = self.dim();
        let mut inv: Vec<Matrix> = vec![Matrix::identity(dim)];
        for order in 1..=self.order() {
            let mut acc = Matrix::zeros(dim, dim);
            for i in 1..=order {
                acc = acc.add(&self.maps[i].mul(&inv[order - i]));
            }
            inv.push(acc.scale(&-num::one::<Scalar>()));
        }
        FormalAutomorphism { maps: inv }
    }
}

/// Checks that `phi` intertwines two truncated deformations of the same
/// base: the three product identities order by order, plus commutation of
/// every coefficient with the structure maps.
pub fn verify_equivalence(
    d1: &TruncatedDeformation,
    d2: &TruncatedDeformation,
    phi: &FormalAutomorphism,
) -> Result<ViolationReport, DeformationError> {
    if d1.base != d2.base {
        return Err(DeformationError::BaseMismatch);
    }
    if d1.order() != d2.order() || phi.order() != d1.order() {
        return Err(DeformationError::OrderMismatch);
    }
    if phi.dim() != d1.base.dim() {
        return Err(DeformationError::ShapeMismatch(format!(
            "automorphism dim {} over algebra dim {}",
            phi.dim(),
            d1.base.dim()
        )));
    }
    let dim = d1.base.dim();
    let mut report = ViolationReport::new();
    for (name, map) in [("alpha", d1.base.alpha()), ("beta", d1.base.beta())] {
        for order in 0..=phi.order() {
            let commutator = phi.map(order).mul(map).sub(&map.mul(phi.map(order)));
            for i in 0..dim {
                let defect = commutator.col(i);
                if !vec_is_zero(&defect) {
                    report.push(format!("commutation(phi_{order},{name})"), vec![i], defect);
                }
            }
        }
    }
    for op in OpLabel::ALL {
        for order in 0..=d1.order() {
            for a in 0..dim {
                for b in 0..dim {
                    // sum_{i+j=order} phi_i(x *_j y)
                    let mut lhs = vec_zero(dim);
                    for i in 0..=order {
                        let j = order - i;
                        lhs = vec_add(
                            &lhs,
                            &phi.map(i).apply(d1.term(j, op).basis_slice(a, b)),
                        );
                    }
                    // sum_{i+j+k=order} phi_i(x) *'_j phi_k(y)
                    let mut rhs = vec_zero(dim);
                    for i in 0..=order {
                        for j in 0..=(order - i) {
                            let k = order - i - j;
                            rhs = vec_add(
                                &rhs,
                                &d2.term(j, op)
                                    .bilinear(&phi.map(i).col(a), &phi.map(k).col(b)),
                            );
                        }
                    }
                    let defect = vec_sub(&lhs, &rhs);
                    if !vec_is_zero(&defect) {
                        report.push(
                            format!("intertwines({})@order({order})", op.name()),
                            vec![a, b],
                            defect,
                        );
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Transports a deformation along a formal automorphism:
/// `*' = phi o * o (phi^{-1} (x) phi^{-1})` truncated at the common order.
/// The result is equivalent to the input with witness `phi` by construction.
pub fn transport(
    d: &TruncatedDeformation,
    phi: &FormalAutomorphism,
) -> Result<TruncatedDeformation, DeformationError> {
    if phi.order() != d.order() {
        return Err(DeformationError::OrderMismatch);
    }
    if phi.dim() != d.base.dim() {
        return Err(DeformationError::ShapeMismatch(format!(
            "automorphism dim {} over algebra dim {}",
            phi.dim(),
            d.base.dim()
        )));
    }
    let dim = d.base.dim();
    let psi = phi.inverse();
    let mut terms = Vec::with_capacity(d.order() + 1);
    for order in 0..=d.order() {
        let mut triple = Vec::with_capacity(3);
        for op in OpLabel::ALL {
            let mut tensor = Tensor3::zeros(dim, dim, dim);
            for i in 0..dim {
                for j in 0..dim {
                    let mut total = vec_zero(dim);
                    for a in 0..=order {
                        for b in 0..=(order - a) {
                            for c in 0..=(order - a - b) {
                                let e = order - a - b - c;
                                let inner = d.term(b, op).bilinear(
                                    &psi.map(c).col(i),
                                    &psi.map(e).col(j),
                                );
                                total = vec_add(&total, &phi.map(a).apply(&inner));
                            }
                        }
                    }
                    for (k, x) in total.into_iter().enumerate() {
                        if !x.is_zero() {
                            tensor.set(i, j, k, x);
                        }
                    }
                }
            }
            triple.push(tensor);
        }
        let middle = triple.pop().unwrap();
        let right = triple.pop().unwrap();
        let left = triple.pop().unwrap();
        terms.push([left, right, middle]);
    }
    TruncatedDeformation::from_terms(d.base.clone(), terms)
}

/// Conjugates a trialgebra by an invertible map: products become
/// `phi o * o (phi^{-1} (x) phi^{-1})` and the structure maps are
/// conjugated. Preserves the axiom checker.
pub fn pushforward(t: &Trialgebra, phi: &Matrix) -> Result<Trialgebra, DeformationError> {
    if phi.rows() != t.dim() || phi.cols() != t.dim() {
        return Err(DeformationError::ShapeMismatch(format!(
            "map is {}x{} over an algebra of dim {}",
            phi.rows(),
            phi.cols(),
            t.dim()
        )));
    }
    let inv = phi.inverse().ok_or(DeformationError::Singular)?;
    conjugate(t, phi, &inv)
}

/// Inverse transport: products become `phi^{-1} o * o (phi (x) phi)`.
/// Exactly undoes [`pushforward`] by the same map.
pub fn pullback(t: &Trialgebra, phi: &Matrix) -> Result<Trialgebra, DeformationError> {
    if phi.rows() != t.dim() || phi.cols() != t.dim() {
        return Err(DeformationError::ShapeMismatch(format!(
            "map is {}x{} over an algebra of dim {}",
            phi.rows(),
            phi.cols(),
            t.dim()
        )));
    }
    let inv = phi.inverse().ok_or(DeformationError::Singular)?;
    conjugate(t, &inv, phi)
}

fn conjugate(
    t: &Trialgebra,
    outer: &Matrix,
    inner: &Matrix,
) -> Result<Trialgebra, DeformationError> {
    let dim = t.dim();
    let mut tensors = Vec::with_capacity(3);
    for op in OpLabel::ALL {
        let mut tensor = Tensor3::zeros(dim, dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let value = outer.apply(&t.product(op, &inner.col(i), &inner.col(j)));
                for (k, x) in value.into_iter().enumerate() {
                    if !x.is_zero() {
                        tensor.set(i, j, k, x);
                    }
                }
            }
        }
        tensors.push(tensor);
    }
    let middle = tensors.pop().unwrap();
    let right = tensors.pop().unwrap();
    let left = tensors.pop().unwrap();
    Trialgebra::new(
        left,
        right,
        middle,
        outer.mul(t.alpha()).mul(inner),
        outer.mul(t.beta()).mul(inner),
    )
    .map_err(|e| DeformationError::ShapeMismatch(e.to_string()))
}
