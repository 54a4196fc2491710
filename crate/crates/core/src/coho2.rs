//! Degree-2 cohomology machinery: cocycle triples, coboundaries, the second
//! cohomology group, central extensions, and extension equivalence.
//!
//! Coefficients here are always central (a module with all six actions
//! zero); the cocycle identities contain no action terms. General
//! coefficients are handled by the tree-indexed complex in [`crate::hochschild`].

use num::Zero;

use crate::algebra::{is_homomorphism, Trialgebra, AXIOMS};
use crate::bimodule::TriBimodule;
use crate::linalg::{vec_is_zero, vec_sub, Matrix, Scalar, Subspace, Tensor3};
use crate::report::ViolationReport;
use crate::trees::OpLabel;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Coho2Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("coefficients must be central (all module actions zero)")]
    NonCentralCoefficients,
    #[error("the map does not intertwine the structure maps")]
    NotAModuleMorphism,
    #[error("the total algebra is not a standard-form central extension")]
    NotStandardForm,
    #[error("the extensions do not share a base algebra and fiber")]
    MismatchedBase,
}

/// A triple of bilinear forms `T x T -> V`, one per product, stored as
/// `n x n x m` tensors. The vectorized layout is block order left, right,
/// middle, each block `[i][j][k]` row-major, giving ambient dimension
/// `3 n^2 m`.
#[derive(Clone, PartialEq, Eq)]
pub struct CocycleTriple {
    comps: [Tensor3; 3],
}

impl CocycleTriple {
    pub fn new(left: Tensor3, right: Tensor3, middle: Tensor3) -> Result<Self, Coho2Error> {
        if left.dims() != right.dims() || right.dims() != middle.dims() {
            return Err(Coho2Error::ShapeMismatch(
                "cocycle components have different shapes".into(),
            ));
        }
        Ok(CocycleTriple {
            comps: [left, right, middle],
        })
    }

    pub fn zero(alg_dim: usize, val_dim: usize) -> Self {
        let z = || Tensor3::zeros(alg_dim, alg_dim, val_dim);
        CocycleTriple {
            comps: [z(), z(), z()],
        }
    }

    pub fn alg_dim(&self) -> usize {
        self.comps[0].dims().0
    }

    pub fn val_dim(&self) -> usize {
        self.comps[0].dims().2
    }

    pub fn component(&self, op: OpLabel) -> &Tensor3 {
        &self.comps[op.index()]
    }

    pub fn component_mut(&mut self, op: OpLabel) -> &mut Tensor3 {
        &mut self.comps[op.index()]
    }

    /// `f_op(x, y)` on coordinate vectors.
    pub fn eval(&self, op: OpLabel, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.comps[op.index()].bilinear(x, y)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Tensor3::is_zero)
    }

    pub fn add(&self, rhs: &CocycleTriple) -> CocycleTriple {
        CocycleTriple {
            comps: [
                self.comps[0].add(&rhs.comps[0]),
                self.comps[1].add(&rhs.comps[1]),
                self.comps[2].add(&rhs.comps[2]),
            ],
        }
    }

    pub fn sub(&self, rhs: &CocycleTriple) -> CocycleTriple {
        CocycleTriple {
            comps: [
                self.comps[0].sub(&rhs.comps[0]),
                self.comps[1].sub(&rhs.comps[1]),
                self.comps[2].sub(&rhs.comps[2]),
            ],
        }
    }

    pub fn scale(&self, factor: &Scalar) -> CocycleTriple {
        CocycleTriple {
            comps: [
                self.comps[0].scale(factor),
                self.comps[1].scale(factor),
                self.comps[2].scale(factor),
            ],
        }
    }

    pub fn to_vec(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(3 * self.comps[0].data().len());
        for comp in &self.comps {
            out.extend_from_slice(comp.data());
        }
        out
    }

    pub fn from_vec(alg_dim: usize, val_dim: usize, data: &[Scalar]) -> Self {
        let block = alg_dim * alg_dim * val_dim;
        assert_eq!(data.len(), 3 * block, "cocycle vector length mismatch");
        let comp = |b: usize| {
            Tensor3::from_data(
                alg_dim,
                alg_dim,
                val_dim,
                data[b * block..(b + 1) * block].to_vec(),
            )
        };
        CocycleTriple {
            comps: [comp(0), comp(1), comp(2)],
        }
    }
}

impl std::fmt::Debug for CocycleTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CocycleTriple(left {:?}, right {:?}, middle {:?})",
            self.comps[0], self.comps[1], self.comps[2]
        )
    }
}

fn require_central(module: &TriBimodule) -> Result<(), Coho2Error> {
    if module.is_central() {
        Ok(())
    } else {
        Err(Coho2Error::NonCentralCoefficients)
    }
}

fn require_shapes(
    t: &Trialgebra,
    module: &TriBimodule,
    f: &CocycleTriple,
) -> Result<(), Coho2Error> {
    if f.alg_dim() != t.dim() || f.val_dim() != module.dim() {
        return Err(Coho2Error::ShapeMismatch(format!(
            "cocycle is {}x{}x{}, expected {}x{}x{}",
            f.alg_dim(),
            f.alg_dim(),
            f.val_dim(),
            t.dim(),
            t.dim(),
            module.dim()
        )));
    }
    Ok(())
}

/// Every constraint a 2-cocycle must satisfy, in fixed order: the two
/// equivariance families (alpha then beta, each over the three components)
/// followed by the eleven identities, each expanded over basis triples and
/// value coordinates. Used both for reporting and for assembling the
/// cocycle constraint matrix column by column.
fn cocycle_constraint_defects(
    t: &Trialgebra,
    module: &TriBimodule,
    f: &CocycleTriple,
) -> Vec<(String, Vec<usize>, Vec<Scalar>)> {
    let n = t.dim();
    let mut out = Vec::new();
    for (name, alg_map, mod_map) in [
        ("alpha", t.alpha(), module.alpha_v()),
        ("beta", t.beta(), module.beta_v()),
    ] {
        for op in OpLabel::ALL {
            for i in 0..n {
                for j in 0..n {
                    let lhs = f.eval(op, &alg_map.col(i), &alg_map.col(j));
                    let rhs = mod_map.apply(f.component(op).basis_slice(i, j));
                    out.push((
                        format!("equivariance({name},{})", op.name()),
                        vec![i, j],
                        vec_sub(&lhs, &rhs),
                    ));
                }
            }
        }
    }
    for ax in &AXIOMS {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // f_B(x A y, beta(z)) = f_C(alpha(x), y D z)
                    let lhs = f.eval(
                        ax.lhs_outer,
                        t.basis_product(ax.lhs_inner, a, b),
                        &t.beta().col(c),
                    );
                    let rhs = f.eval(
                        ax.rhs_outer,
                        &t.alpha().col(a),
                        t.basis_product(ax.rhs_inner, b, c),
                    );
                    out.push((
                        format!("axiom({})", ax.id),
                        vec![a, b, c],
                        vec_sub(&lhs, &rhs),
                    ));
                }
            }
        }
    }
    out
}

/// Checks the two equivariance families and the eleven cocycle identities
/// on all basis triples. Coefficients must be central.
pub fn is_two_cocycle(
    t: &Trialgebra,
    module: &TriBimodule,
    f: &CocycleTriple,
) -> Result<ViolationReport, Coho2Error> {
    require_central(module)?;
    require_shapes(t, module, f)?;
    let mut report = ViolationReport::new();
    for (law, witness, defect) in cocycle_constraint_defects(t, module, f) {
        if !vec_is_zero(&defect) {
            report.push(law, witness, defect);
        }
    }
    Ok(report)
}

/// The coboundary of a module morphism `mu : T -> V`: the triple with
/// components `mu(x op y)`. Always a 2-cocycle.
pub fn coboundary_of(
    t: &Trialgebra,
    module: &TriBimodule,
    mu: &Matrix,
) -> Result<CocycleTriple, Coho2Error> {
    if mu.rows() != module.dim() || mu.cols() != t.dim() {
        return Err(Coho2Error::ShapeMismatch(format!(
            "mu is {}x{}, expected {}x{}",
            mu.rows(),
            mu.cols(),
            module.dim(),
            t.dim()
        )));
    }
    let intertwines = |alg_map: &Matrix, mod_map: &Matrix| {
        mu.mul(alg_map) == mod_map.mul(mu)
    };
    if !intertwines(t.alpha(), module.alpha_v()) || !intertwines(t.beta(), module.beta_v()) {
        return Err(Coho2Error::NotAModuleMorphism);
    }
    let n = t.dim();
    let m = module.dim();
    let mut f = CocycleTriple::zero(n, m);
    for op in OpLabel::ALL {
        for i in 0..n {
            for j in 0..n {
                let value = mu.apply(t.basis_product(op, i, j));
                for (k, x) in value.into_iter().enumerate() {
                    if !x.is_zero() {
                        f.component_mut(op).set(i, j, k, x);
                    }
                }
            }
        }
    }
    Ok(f)
}

/// The space of 2-cocycles as a subspace of the `3 n^2 m` coefficient
/// space: kernel of the stacked equivariance and identity constraints.
pub fn cocycle_space(t: &Trialgebra, module: &TriBimodule) -> Result<Subspace, Coho2Error> {
    require_central(module)?;
    let n = t.dim();
    let m = module.dim();
    let ambient = 3 * n * n * m;
    // columns are the constraint defects of the unit coefficient tensors
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(ambient);
    for unit in 0..ambient {
        let mut coeffs = crate::linalg::vec_zero(ambient);
        coeffs[unit] = num::One::one();
        let f = CocycleTriple::from_vec(n, m, &coeffs);
        let defects: Vec<Scalar> = cocycle_constraint_defects(t, module, &f)
            .into_iter()
            .flat_map(|(_, _, d)| d)
            .collect();
        columns.push(defects);
    }
    let rows = columns.first().map_or(0, |c| c.len());
    let constraint = Matrix::from_fn(rows, ambient, |r, c| columns[c][r].clone());
    Ok(constraint.kernel_basis())
}

/// The space of linear maps `T -> V` that intertwine the structure maps
/// (`mu alpha = alpha_v mu` and `mu beta = beta_v mu`), as a subspace of
/// the `m x n` entries vectorized row-major. Exactly the maps eligible to
/// produce coboundaries.
pub fn intertwiner_space(t: &Trialgebra, module: &TriBimodule) -> Subspace {
    let n = t.dim();
    let m = module.dim();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (alg_map, mod_map) in [
        (t.alpha(), module.alpha_v()),
        (t.beta(), module.beta_v()),
    ] {
        for k in 0..m {
            for i in 0..n {
                let mut row = crate::linalg::vec_zero(m * n);
                // (mu * alg_map - mod_map * mu)[k][i]
                for l in 0..n {
                    row[k * n + l] += alg_map.get(l, i);
                }
                for l in 0..m {
                    row[l * n + i] -= mod_map.get(k, l);
                }
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(rows).kernel_basis()
}

/// Reshapes a vectorized intertwiner back into its `m x n` matrix.
pub fn intertwiner_from_vec(t: &Trialgebra, module: &TriBimodule, data: &[Scalar]) -> Matrix {
    let n = t.dim();
    let m = module.dim();
    assert_eq!(data.len(), m * n);
    Matrix::from_fn(m, n, |r, c| data[r * n + c].clone())
}

/// The space of 2-coboundaries: image of `mu -> (mu o left, mu o right,
/// mu o middle)` over all structure-map-intertwining `mu`.
pub fn coboundary_space(t: &Trialgebra, module: &TriBimodule) -> Result<Subspace, Coho2Error> {
    require_central(module)?;
    let n = t.dim();
    let m = module.dim();
    let morphisms = intertwiner_space(t, module);
    let mut images = Vec::new();
    for mu_vec in morphisms.basis() {
        let mu = intertwiner_from_vec(t, module, mu_vec);
        let f = coboundary_of(t, module, &mu).expect("kernel vectors are morphisms");
        images.push(f.to_vec());
    }
    Ok(Subspace::from_rows(3 * n * n * m, images))
}

/// Second cohomology: dimension of cocycles modulo coboundaries, plus coset
/// representatives (pairwise non-cohomologous by construction).
pub fn second_cohomology(
    t: &Trialgebra,
    module: &TriBimodule,
) -> Result<(usize, Vec<CocycleTriple>), Coho2Error> {
    let z = cocycle_space(t, module)?;
    let b = coboundary_space(t, module)?;
    let (dim, reps) = z
        .quotient_by(&b)
        .expect("coboundaries are always cocycles");
    let n = t.dim();
    let m = module.dim();
    Ok((
        dim,
        reps.iter()
            .map(|v| CocycleTriple::from_vec(n, m, v))
            .collect(),
    ))
}

/// A central extension in standard form: the first `n` coordinates carry
/// the base algebra, the last `m` the fiber. The inclusion of the last `m`
/// coordinates and the projection onto the first `n` are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtension {
    base: Trialgebra,
    alpha_v: Matrix,
    beta_v: Matrix,
    total: Trialgebra,
}

impl CentralExtension {
    pub fn base(&self) -> &Trialgebra {
        &self.base
    }

    pub fn total(&self) -> &Trialgebra {
        &self.total
    }

    pub fn fiber_dim(&self) -> usize {
        self.total.dim() - self.base.dim()
    }

    /// Wraps a user-supplied total algebra after verifying standard form:
    /// block-diagonal structure maps, products of base coordinates projecting
    /// onto the base products, and a fiber that multiplies to zero on both
    /// sides.
    pub fn from_standard_total(
        base: Trialgebra,
        alpha_v: Matrix,
        beta_v: Matrix,
        total: Trialgebra,
    ) -> Result<Self, Coho2Error> {
        let n = base.dim();
        let m = alpha_v.rows();
        if total.dim() != n + m {
            return Err(Coho2Error::NotStandardForm);
        }
        if total.alpha() != &base.alpha().block_diag(&alpha_v)
            || total.beta() != &base.beta().block_diag(&beta_v)
        {
            return Err(Coho2Error::NotStandardForm);
        }
        for op in OpLabel::ALL {
            for i in 0..(n + m) {
                for j in 0..(n + m) {
                    let prod = total.basis_product(op, i, j);
                    if i >= n || j >= n {
                        if !vec_is_zero(prod) {
                            return Err(Coho2Error::NotStandardForm);
                        }
                        continue;
                    }
                    // base part of a base product must match the base algebra
                    if prod[..n] != *base.basis_product(op, i, j) {
                        return Err(Coho2Error::NotStandardForm);
                    }
                }
            }
        }
        Ok(CentralExtension {
            base,
            alpha_v,
            beta_v,
            total,
        })
    }

    /// Reads off the cocycle with respect to the coordinate section
    /// `s(x) = (x, 0)`: the fiber part of `s(x) op s(y) - s(x op y)`.
    pub fn extract_cocycle(&self) -> CocycleTriple {
        let n = self.base.dim();
        let m = self.fiber_dim();
        let mut f = CocycleTriple::zero(n, m);
        for op in OpLabel::ALL {
            for i in 0..n {
                for j in 0..n {
                    let prod = self.total.basis_product(op, i, j);
                    for k in 0..m {
                        let x = prod[n + k].clone();
                        if !x.is_zero() {
                            f.component_mut(op).set(i, j, k, x);
                        }
                    }
                }
            }
        }
        f
    }
}

/// The extension `T_F = T (+) V` with products
/// `(x + u) op (y + v) = x op y + f_op(x, y)` and block-diagonal structure
/// maps. No validity check: the total passes the axiom checker exactly when
/// `F` is a 2-cocycle.
pub fn central_extension(
    t: &Trialgebra,
    module: &TriBimodule,
    f: &CocycleTriple,
) -> CentralExtension {
    assert_eq!(f.alg_dim(), t.dim(), "cocycle and algebra dims differ");
    assert_eq!(f.val_dim(), module.dim(), "cocycle and fiber dims differ");
    let n = t.dim();
    let m = module.dim();
    let total_dim = n + m;
    let mut tensors = Vec::with_capacity(3);
    for op in OpLabel::ALL {
        let mut tensor = Tensor3::zeros(total_dim, total_dim, total_dim);
        for i in 0..n {
            for j in 0..n {
                for (k, c) in t.basis_product(op, i, j).iter().enumerate() {
                    if !c.is_zero() {
                        tensor.set(i, j, k, c.clone());
                    }
                }
                for (k, c) in f.component(op).basis_slice(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        tensor.set(i, j, n + k, c.clone());
                    }
                }
            }
        }
        tensors.push(tensor);
    }
    let middle = tensors.pop().unwrap();
    let right = tensors.pop().unwrap();
    let left = tensors.pop().unwrap();
    let total = Trialgebra::new(
        left,
        right,
        middle,
        t.alpha().block_diag(module.alpha_v()),
        t.beta().block_diag(module.beta_v()),
    )
    .expect("extension shapes always agree");
    CentralExtension {
        base: t.clone(),
        alpha_v: module.alpha_v().clone(),
        beta_v: module.beta_v().clone(),
        total,
    }
}

/// A verified equivalence between two standard-form extensions:
/// `phi(x + v) = x + mu(x) + v`.
#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    pub mu: Matrix,
    pub phi: Matrix,
    pub report: ViolationReport,
}

/// Decides equivalence of two standard-form extensions over the same base
/// and fiber. Any equivalence fixing the fiber pointwise and covering the
/// identity on the base has the shape `phi(x + v) = x + mu(x) + v`, so the
/// search over linear `mu` is complete; `Some` is returned exactly when the
/// linear system for `mu` is solvable.
pub fn are_equivalent(
    e1: &CentralExtension,
    e2: &CentralExtension,
) -> Result<Option<EquivalenceWitness>, Coho2Error> {
    if e1.base != e2.base || e1.alpha_v != e2.alpha_v || e1.beta_v != e2.beta_v {
        return Err(Coho2Error::MismatchedBase);
    }
    let t = &e1.base;
    let n = t.dim();
    let m = e1.fiber_dim();
    let f = e1.extract_cocycle();
    let g = e2.extract_cocycle();
    let diff = g.sub(&f);

    // unknowns mu[r][c], vectorized row-major
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for (alg_map, mod_map) in [
        (t.alpha(), &e1.alpha_v),
        (t.beta(), &e1.beta_v),
    ] {
        for k in 0..m {
            for i in 0..n {
                let mut row = crate::linalg::vec_zero(m * n);
                for l in 0..n {
                    row[k * n + l] += alg_map.get(l, i);
                }
                for l in 0..m {
                    row[l * n + i] -= mod_map.get(k, l);
                }
                rows.push(row);
                rhs.push(Scalar::zero());
            }
        }
    }
    for op in OpLabel::ALL {
        for i in 0..n {
            for j in 0..n {
                let prod = t.basis_product(op, i, j);
                for k in 0..m {
                    let mut row = crate::linalg::vec_zero(m * n);
                    for (l, p) in prod.iter().enumerate() {
                        if !p.is_zero() {
                            row[k * n + l] += p;
                        }
                    }
                    rows.push(row);
                    rhs.push(diff.component(op).get(i, j, k).clone());
                }
            }
        }
    }
    let system = Matrix::from_rows(rows);
    let Some(solution) = system.solve(&rhs) else {
        return Ok(None);
    };
    let mu = Matrix::from_fn(m, n, |r, c| solution[r * n + c].clone());
    let mut phi = Matrix::identity(n + m);
    for r in 0..m {
        for c in 0..n {
            phi.set(n + r, c, mu.get(r, c).clone());
        }
    }
    let report = is_homomorphism(&phi, e1.total(), e2.total())
        .expect("phi has the right shape by construction");
    Ok(Some(EquivalenceWitness { mu, phi, report }))
}
