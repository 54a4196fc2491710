//! BiHom-modules over a trialgebra: six action maps, the compatibility
//! axioms, module morphisms, and the semidirect product.

use num::Zero;

use crate::algebra::{Trialgebra, AXIOMS};
use crate::linalg::{vec_is_zero, vec_sub, Matrix, Scalar, Tensor3};
use crate::report::ViolationReport;
use crate::trees::OpLabel;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("the module structure maps do not commute")]
    NonCommutingStructureMaps,
    #[error("the module fails its axiom checker")]
    InvalidModule,
}

/// A BiHom-module of a trialgebra: a coefficient space of dimension `m`
/// with three left actions (`n x m x m` tensors, `lact(op)[i][j][k]` =
/// coefficient of `v_k` in `e_i op v_j`), three right actions
/// (`m x n x m`), and commuting structure maps `alpha_v`, `beta_v`.
#[derive(Clone, PartialEq, Eq)]
pub struct TriBimodule {
    over: Trialgebra,
    dim: usize,
    lact: [Tensor3; 3],
    ract: [Tensor3; 3],
    alpha_v: Matrix,
    beta_v: Matrix,
}

impl TriBimodule {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        over: Trialgebra,
        lact: [Tensor3; 3],
        ract: [Tensor3; 3],
        alpha_v: Matrix,
        beta_v: Matrix,
    ) -> Result<Self, ModuleError> {
        let n = over.dim();
        let m = alpha_v.rows();
        for t in &lact {
            if t.dims() != (n, m, m) {
                return Err(ModuleError::ShapeMismatch(format!(
                    "left action tensor is {:?}, expected {n}x{m}x{m}",
                    t.dims()
                )));
            }
        }
        for t in &ract {
            if t.dims() != (m, n, m) {
                return Err(ModuleError::ShapeMismatch(format!(
                    "right action tensor is {:?}, expected {m}x{n}x{m}",
                    t.dims()
                )));
            }
        }
        for (name, map) in [("alpha_v", &alpha_v), ("beta_v", &beta_v)] {
            if map.rows() != m || map.cols() != m {
                return Err(ModuleError::ShapeMismatch(format!(
                    "{name} is {}x{}, expected {m}x{m}",
                    map.rows(),
                    map.cols()
                )));
            }
        }
        Ok(TriBimodule {
            over,
            dim: m,
            lact,
            ract,
            alpha_v,
            beta_v,
        })
    }

    /// Central coefficients: all six actions zero. Errors if the maps do
    /// not commute.
    pub fn trivial(
        over: Trialgebra,
        dim: usize,
        alpha_v: Matrix,
        beta_v: Matrix,
    ) -> Result<Self, ModuleError> {
        if !alpha_v.commutes_with(&beta_v) {
            return Err(ModuleError::NonCommutingStructureMaps);
        }
        let n = over.dim();
        let lact = [
            Tensor3::zeros(n, dim, dim),
            Tensor3::zeros(n, dim, dim),
            Tensor3::zeros(n, dim, dim),
        ];
        let ract = [
            Tensor3::zeros(dim, n, dim),
            Tensor3::zeros(dim, n, dim),
            Tensor3::zeros(dim, n, dim),
        ];
        TriBimodule::new(over, lact, ract, alpha_v, beta_v)
    }

    /// The algebra acting on itself: actions are the structure tensors and
    /// the module maps are the algebra maps.
    pub fn adjoint(over: Trialgebra) -> Self {
        let lact = [
            over.tensor(OpLabel::Left).clone(),
            over.tensor(OpLabel::Right).clone(),
            over.tensor(OpLabel::Middle).clone(),
        ];
        let alpha_v = over.alpha().clone();
        let beta_v = over.beta().clone();
        TriBimodule::new(over, lact.clone(), lact, alpha_v, beta_v)
            .expect("adjoint module shapes always agree")
    }

    pub fn algebra(&self) -> &Trialgebra {
        &self.over
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha_v(&self) -> &Matrix {
        &self.alpha_v
    }

    pub fn beta_v(&self) -> &Matrix {
        &self.beta_v
    }

    pub fn lact_tensor(&self, op: OpLabel) -> &Tensor3 {
        &self.lact[op.index()]
    }

    pub fn ract_tensor(&self, op: OpLabel) -> &Tensor3 {
        &self.ract[op.index()]
    }

    /// `x op v` for an algebra vector `x` and module vector `v`.
    pub fn lact(&self, op: OpLabel, x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.lact[op.index()].bilinear(x, v)
    }

    /// `v op x`.
    pub fn ract(&self, op: OpLabel, v: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.ract[op.index()].bilinear(v, x)
    }

    /// All six actions zero.
    pub fn is_central(&self) -> bool {
        self.lact.iter().all(Tensor3::is_zero) && self.ract.iter().all(Tensor3::is_zero)
    }

    /// Checks, on basis elements:
    /// (a) commutation of the module structure maps,
    /// (b) the twelve equivariance identities
    ///     `alpha_v(x op v) = alpha(x) op alpha_v(v)` and companions,
    /// (c) the 33 mixed axioms obtained from the eleven algebra axioms by
    ///     placing the module element in slot x, y, or z and reading each
    ///     product touching it as the matching action.
    pub fn check_module_axioms(&self) -> ViolationReport {
        let mut report = ViolationReport::new();
        let t = &self.over;
        let n = t.dim();
        let m = self.dim;

        let commutator = self
            .alpha_v
            .mul(&self.beta_v)
            .sub(&self.beta_v.mul(&self.alpha_v));
        for i in 0..m {
            let defect = commutator.col(i);
            if !vec_is_zero(&defect) {
                report.push("commutation(alpha_v,beta_v)", vec![i], defect);
            }
        }

        for (name, alg_map, mod_map) in [
            ("alpha", t.alpha(), &self.alpha_v),
            ("beta", t.beta(), &self.beta_v),
        ] {
            for op in OpLabel::ALL {
                for i in 0..n {
                    for j in 0..m {
                        let lhs = mod_map.apply(self.lact[op.index()].basis_slice(i, j));
                        let rhs = self.lact(op, &alg_map.col(i), &mod_map.col(j));
                        let defect = vec_sub(&lhs, &rhs);
                        if !vec_is_zero(&defect) {
                            report.push(
                                format!("equivariance({name},left,{})", op.name()),
                                vec![i, j],
                                defect,
                            );
                        }
                    }
                }
                for i in 0..m {
                    for j in 0..n {
                        let lhs = mod_map.apply(self.ract[op.index()].basis_slice(i, j));
                        let rhs = self.ract(op, &mod_map.col(i), &alg_map.col(j));
                        let defect = vec_sub(&lhs, &rhs);
                        if !vec_is_zero(&defect) {
                            report.push(
                                format!("equivariance({name},right,{})", op.name()),
                                vec![i, j],
                                defect,
                            );
                        }
                    }
                }
            }
        }

        for ax in &AXIOMS {
            // slot x: (v A y) B beta(z) = alpha_v(v) C (y D z)
            for a in 0..m {
                for b in 0..n {
                    for c in 0..n {
                        let lhs = self.ract(
                            ax.lhs_outer,
                            self.ract[ax.lhs_inner.index()].basis_slice(a, b),
                            &t.beta().col(c),
                        );
                        let rhs = self.ract(
                            ax.rhs_outer,
                            &self.alpha_v.col(a),
                            t.basis_product(ax.rhs_inner, b, c),
                        );
                        let defect = vec_sub(&lhs, &rhs);
                        if !vec_is_zero(&defect) {
                            report.push(format!("axiom({})@x", ax.id), vec![a, b, c], defect);
                        }
                    }
                }
            }
            // slot y: (x A v) B beta(z) = alpha(x) C (v D z)
            for a in 0..n {
                for b in 0..m {
                    for c in 0..n {
                        let lhs = self.ract(
                            ax.lhs_outer,
                            self.lact[ax.lhs_inner.index()].basis_slice(a, b),
                            &t.beta().col(c),
                        );
                        let rhs = self.lact(
                            ax.rhs_outer,
                            &t.alpha().col(a),
                            self.ract[ax.rhs_inner.index()].basis_slice(b, c),
                        );
                        let defect = vec_sub(&lhs, &rhs);
                        if !vec_is_zero(&defect) {
                            report.push(format!("axiom({})@y", ax.id), vec![a, b, c], defect);
                        }
                    }
                }
            }
            // slot z: (x A y) B beta_v(v) = alpha(x) C (y D v)
            for a in 0..n {
                for b in 0..n {
                    for c in 0..m {
                        let lhs = self.lact(
                            ax.lhs_outer,
                            t.basis_product(ax.lhs_inner, a, b),
                            &self.beta_v.col(c),
                        );
                        let rhs = self.lact(
                            ax.rhs_outer,
                            &t.alpha().col(a),
                            self.lact[ax.rhs_inner.index()].basis_slice(b, c),
                        );
                        let defect = vec_sub(&lhs, &rhs);
                        if !vec_is_zero(&defect) {
                            report.push(format!("axiom({})@z", ax.id), vec![a, b, c], defect);
                        }
                    }
                }
            }
        }
        report
    }
}

impl std::fmt::Debug for TriBimodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "TriBimodule(dim {} over dim {})",
            self.dim,
            self.over.dim()
        )
    }
}

/// Checks that a linear map between module carriers intertwines the module
/// structure maps.
pub fn is_module_morphism(
    phi: &Matrix,
    source: &TriBimodule,
    target: &TriBimodule,
) -> Result<ViolationReport, ModuleError> {
    if phi.cols() != source.dim() || phi.rows() != target.dim() {
        return Err(ModuleError::ShapeMismatch(format!(
            "map is {}x{}, expected {}x{}",
            phi.rows(),
            phi.cols(),
            target.dim(),
            source.dim()
        )));
    }
    let mut report = ViolationReport::new();
    for (name, ms, mt) in [
        ("alpha_v", &source.alpha_v, &target.alpha_v),
        ("beta_v", &source.beta_v, &target.beta_v),
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

/// The semidirect product `T (+) V` with products
/// `(x + u) op (y + v) = x op y + x op v + u op y` and block-diagonal
/// structure maps. Module elements multiply to zero among themselves.
/// Errors when `V` fails its axiom checker.
pub fn semidirect_product(module: &TriBimodule) -> Result<Trialgebra, ModuleError> {
    if !module.check_module_axioms().is_empty() {
        return Err(ModuleError::InvalidModule);
    }
    Ok(semidirect_product_unchecked(module))
}

/// [`semidirect_product`] without the validity gate; the result passes the
/// algebra checkers exactly when the module passes its own.
pub fn semidirect_product_unchecked(module: &TriBimodule) -> Trialgebra {
    let t = module.algebra();
    let n = t.dim();
    let m = module.dim();
    let total = n + m;
    let mut tensors = Vec::with_capacity(3);
    for op in OpLabel::ALL {
        let mut tensor = Tensor3::zeros(total, total, total);
        for i in 0..n {
            for j in 0..n {
                for (k, c) in t.basis_product(op, i, j).iter().enumerate() {
                    if !c.is_zero() {
                        tensor.set(i, j, k, c.clone());
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..m {
                for (k, c) in module.lact_tensor(op).basis_slice(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        tensor.set(i, n + j, n + k, c.clone());
                    }
                }
            }
        }
        for i in 0..m {
            for j in 0..n {
                for (k, c) in module.ract_tensor(op).basis_slice(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        tensor.set(n + i, j, n + k, c.clone());
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
        t.alpha().block_diag(&module.alpha_v),
        t.beta().block_diag(&module.beta_v),
    )
    .expect("semidirect product shapes always agree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn dual_numbers() -> Trialgebra {
        let mut product = Tensor3::zeros(2, 2, 2);
        product.set(0, 0, 0, int(1));
        product.set(0, 1, 1, int(1));
        product.set(1, 0, 1, int(1));
        Trialgebra::from_associative(product, Matrix::identity(2), Matrix::identity(2)).unwrap()
    }

    #[test]
    fn trivial_module_is_valid() {
        let t = dual_numbers();
        let v = TriBimodule::trivial(t.clone(), 1, Matrix::identity(1), Matrix::identity(1))
            .unwrap();
        assert!(v.check_module_axioms().is_empty());
        let diag = Matrix::from_int_rows(&[&[1, 0], &[0, 2]]);
        let v2 = TriBimodule::trivial(t, 2, diag.clone(), diag.mul(&diag)).unwrap();
        assert!(v2.check_module_axioms().is_empty());
    }

    #[test]
    fn trivial_module_rejects_noncommuting_maps() {
        let t = dual_numbers();
        let a = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let b = Matrix::from_int_rows(&[&[1, 0], &[0, 2]]);
        assert_eq!(
            TriBimodule::trivial(t, 2, a, b).unwrap_err(),
            ModuleError::NonCommutingStructureMaps
        );
    }

    #[test]
    fn noncommuting_maps_cited_by_checker() {
        let t = dual_numbers();
        let a = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let b = Matrix::from_int_rows(&[&[1, 0], &[0, 2]]);
        let zeros_l = [
            Tensor3::zeros(2, 2, 2),
            Tensor3::zeros(2, 2, 2),
            Tensor3::zeros(2, 2, 2),
        ];
        let v = TriBimodule::new(t, zeros_l.clone(), zeros_l, a, b).unwrap();
        let report = v.check_module_axioms();
        assert!(report.cites("commutation(alpha_v,beta_v)"));
    }

    #[test]
    fn adjoint_module_of_dual_numbers_is_valid() {
        let t = dual_numbers();
        let adj = TriBimodule::adjoint(t.clone());
        assert_eq!(adj.dim(), t.dim());
        assert!(adj.check_module_axioms().is_empty());
    }

    #[test]
    fn adjoint_of_abelian_is_trivial() {
        let t = Trialgebra::abelian(2, Matrix::identity(2), Matrix::identity(2)).unwrap();
        let adj = TriBimodule::adjoint(t.clone());
        let triv = TriBimodule::trivial(t, 2, Matrix::identity(2), Matrix::identity(2)).unwrap();
        assert_eq!(adj, triv);
    }

    #[test]
    fn module_morphism_checks() {
        let t = dual_numbers();
        let diag = Matrix::from_int_rows(&[&[1, 0], &[0, 2]]);
        let v = TriBimodule::trivial(t.clone(), 2, diag, Matrix::identity(2)).unwrap();
        assert!(is_module_morphism(&Matrix::identity(2), &v, &v)
            .unwrap()
            .is_empty());
        assert!(is_module_morphism(&Matrix::zeros(2, 2), &v, &v)
            .unwrap()
            .is_empty());
        let swap = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert!(!is_module_morphism(&swap, &v, &v).unwrap().is_empty());
    }

    #[test]
    fn semidirect_with_trivial_line_passes() {
        let t = dual_numbers();
        let v = TriBimodule::trivial(t, 1, Matrix::identity(1), Matrix::identity(1)).unwrap();
        let sd = semidirect_product(&v).unwrap();
        assert_eq!(sd.dim(), 3);
        assert!(sd.check_axioms().is_empty());
        assert!(sd.check_multiplicative().is_empty());
    }

    #[test]
    fn semidirect_with_adjoint_passes() {
        let t = dual_numbers();
        let sd = semidirect_product(&TriBimodule::adjoint(t)).unwrap();
        assert_eq!(sd.dim(), 4);
        assert!(sd.check_axioms().is_empty());
        assert!(sd.check_multiplicative().is_empty());
    }

    #[test]
    fn semidirect_rejects_invalid_module() {
        let t = dual_numbers();
        let mut lact = [
            Tensor3::zeros(2, 1, 1),
            Tensor3::zeros(2, 1, 1),
            Tensor3::zeros(2, 1, 1),
        ];
        // e2 acting nontrivially on the line breaks the mixed axioms
        lact[0].set(1, 0, 0, int(1));
        let ract = [
            Tensor3::zeros(1, 2, 1),
            Tensor3::zeros(1, 2, 1),
            Tensor3::zeros(1, 2, 1),
        ];
        let v = TriBimodule::new(t, lact, ract, Matrix::identity(1), Matrix::identity(1)).unwrap();
        assert!(!v.check_module_axioms().is_empty());
        assert_eq!(
            semidirect_product(&v).unwrap_err(),
            ModuleError::InvalidModule
        );
        // the unchecked product exists and fails the algebra checker instead
        let sd = semidirect_product_unchecked(&v);
        assert!(!sd.check_axioms().is_empty());
    }
}
