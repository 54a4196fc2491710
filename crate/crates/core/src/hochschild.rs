//! The tree-indexed cochain complex of a multiplicative trialgebra with
//! coefficients in a BiHom-module, together with its coboundary and the two
//! specializations it unifies (the single-product coboundary on collapsed
//! algebras and the classical tree coboundary under identity maps).
//!
//! A degree-`n` cochain assigns to every degree-`n` tree an `n`-linear map
//! `T^(x)n -> V`. The cochain group `C^n` consists of the equivariant ones:
//! `f(psi; a(x_1),...,a(x_n)) = a_V f(psi; x_1,...,x_n)` and the beta
//! analogue. The coboundary is
//!
//! ```text
//! (d f)(psi; x_1,...,x_{n+1}) =
//!     a^{n-1}(x_1) o_0 f(d_0 psi; x_2,...,x_{n+1})
//!   + sum_{i=1}^{n} (-1)^i f(d_i psi; a(x_1),...,a(x_{i-1}),
//!                            x_i o_i x_{i+1}, b(x_{i+2}),...,b(x_{n+1}))
//!   + (-1)^{n+1} f(d_{n+1} psi; x_1,...,x_n) o_{n+1} b^{n-1}(x_{n+1})
//! ```
//!
//! where `d_i` deletes leaf `i`, `o_i` is the label at position `i`, the
//! first term acts through the labelled left action and the last through
//! the labelled right action.

use std::collections::HashMap;

use num::{One, Zero};

use crate::algebra::Trialgebra;
use crate::bimodule::{semidirect_product_unchecked, TriBimodule};
use crate::coho2::CocycleTriple;
use crate::linalg::{vec_is_zero, vec_zero, Matrix, Scalar, Subspace};
use crate::trees::{enumerate_trees, OpLabel, Orientation, PlanarTree, TREE2_OPS};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HochschildError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("the cochain is not equivariant, so it lies outside the cochain group")]
    NotEquivariant,
    #[error("the coboundary broke equivariance; the algebra or module is invalid")]
    EquivarianceBroken,
    #[error("the operation requires a collapsed algebra and module (all three products and action families equal)")]
    NotCollapsed,
    #[error("the operation requires identity structure maps everywhere")]
    NotClassical,
}

/// A degree-`n` tree-indexed cochain: one `n`-linear coefficient array per
/// degree-`n` tree, in canonical tree order. Entry layout is
/// `[tree][i_1..i_n row-major][k]` with values in the module.
#[derive(Clone, PartialEq, Eq)]
pub struct TreeCochain {
    degree: usize,
    alg_dim: usize,
    val_dim: usize,
    tree_count: usize,
    data: Vec<Scalar>,
}

/// A degree-`n` cochain without a tree index: a single `n`-linear array,
/// layout `[i_1..i_n row-major][k]`.
#[derive(Clone, PartialEq, Eq)]
pub struct PlainCochain {
    degree: usize,
    in_dim: usize,
    out_dim: usize,
    data: Vec<Scalar>,
}

/// An argument slot for multilinear evaluation: either a standard basis
/// vector or a general coordinate vector.
#[derive(Clone, Copy)]
enum Slot<'a> {
    Basis(usize),
    Vector(&'a [Scalar]),
}

enum Factor<'a> {
    One,
    Zero,
    Value(&'a Scalar),
}

impl Slot<'_> {
    fn factor(&self, index: usize) -> Factor<'_> {
        match self {
            Slot::Basis(b) => {
                if *b == index {
                    Factor::One
                } else {
                    Factor::Zero
                }
            }
            Slot::Vector(v) => {
                if v[index].is_zero() {
                    Factor::Zero
                } else {
                    Factor::Value(&v[index])
                }
            }
        }
    }
}

/// Nonzero entries of one coefficient block, with decoded multi-indices.
type Prepared<'a> = Vec<(Vec<usize>, usize, &'a Scalar)>;

fn prepare_block<'a>(
    data: &'a [Scalar],
    arity: usize,
    alg_dim: usize,
    val_dim: usize,
) -> Prepared<'a> {
    let mut out = Vec::new();
    for (flat, value) in data.iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        let k = flat % val_dim;
        let mut rest = flat / val_dim;
        let mut multi = vec![0usize; arity];
        for j in (0..arity).rev() {
            multi[j] = rest % alg_dim;
            rest /= alg_dim;
        }
        out.push((multi, k, value));
    }
    out
}

fn eval_block(prepared: &Prepared<'_>, slots: &[Slot<'_>], val_dim: usize) -> Vec<Scalar> {
    let mut out = vec_zero(val_dim);
    'entry: for (multi, k, value) in prepared {
        let mut coeff: Option<Scalar> = None;
        for (j, slot) in slots.iter().enumerate() {
            match slot.factor(multi[j]) {
                Factor::One => {}
                Factor::Zero => continue 'entry,
                Factor::Value(f) => {
                    coeff = Some(match coeff {
                        None => f.clone(),
                        Some(c) => c * f,
                    });
                }
            }
        }
        match coeff {
            None => out[*k] += *value,
            Some(c) => out[*k] += c * *value,
        }
    }
    out
}

impl TreeCochain {
    pub fn zero(degree: usize, alg_dim: usize, val_dim: usize) -> Self {
        assert!(degree >= 1, "cochains start at degree 1");
        let tree_count = enumerate_trees(degree).len();
        let len = tree_count * alg_dim.pow(degree as u32) * val_dim;
        TreeCochain {
            degree,
            alg_dim,
            val_dim,
            tree_count,
            data: vec_zero(len),
        }
    }

    pub fn from_vec(degree: usize, alg_dim: usize, val_dim: usize, data: Vec<Scalar>) -> Self {
        let mut c = TreeCochain::zero(degree, alg_dim, val_dim);
        assert_eq!(data.len(), c.data.len(), "cochain vector length mismatch");
        c.data = data;
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn alg_dim(&self) -> usize {
        self.alg_dim
    }

    pub fn val_dim(&self) -> usize {
        self.val_dim
    }

    pub fn tree_count(&self) -> usize {
        self.tree_count
    }

    fn block_len(&self) -> usize {
        self.alg_dim.pow(self.degree as u32) * self.val_dim
    }

    pub fn tree_block(&self, tree: usize) -> &[Scalar] {
        let len = self.block_len();
        &self.data[tree * len..(tree + 1) * len]
    }

    fn flat_index(&self, tree: usize, multi: &[usize], k: usize) -> usize {
        debug_assert_eq!(multi.len(), self.degree);
        let mut idx = 0usize;
        for &i in multi {
            idx = idx * self.alg_dim + i;
        }
        (tree * self.alg_dim.pow(self.degree as u32) + idx) * self.val_dim + k
    }

    pub fn get(&self, tree: usize, multi: &[usize], k: usize) -> &Scalar {
        &self.data[self.flat_index(tree, multi, k)]
    }

    pub fn set(&mut self, tree: usize, multi: &[usize], k: usize, value: Scalar) {
        let idx = self.flat_index(tree, multi, k);
        self.data[idx] = value;
    }

    /// Value on basis arguments, as a module coordinate vector.
    pub fn value(&self, tree: usize, multi: &[usize]) -> Vec<Scalar> {
        (0..self.val_dim)
            .map(|k| self.get(tree, multi, k).clone())
            .collect()
    }

    pub fn to_vec(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.data)
    }

    pub fn add(&self, rhs: &TreeCochain) -> TreeCochain {
        assert_eq!(self.shape(), rhs.shape());
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        TreeCochain { data, ..self.clone() }
    }

    pub fn sub(&self, rhs: &TreeCochain) -> TreeCochain {
        assert_eq!(self.shape(), rhs.shape());
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        TreeCochain { data, ..self.clone() }
    }

    fn shape(&self) -> (usize, usize, usize) {
        (self.degree, self.alg_dim, self.val_dim)
    }

    fn prepared(&self) -> Vec<Prepared<'_>> {
        (0..self.tree_count)
            .map(|t| prepare_block(self.tree_block(t), self.degree, self.alg_dim, self.val_dim))
            .collect()
    }
}

impl std::fmt::Debug for TreeCochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "TreeCochain(degree {}, {} trees, T dim {}, V dim {})",
            self.degree, self.tree_count, self.alg_dim, self.val_dim
        )
    }
}

impl PlainCochain {
    pub fn zero(degree: usize, in_dim: usize, out_dim: usize) -> Self {
        assert!(degree >= 1);
        PlainCochain {
            degree,
            in_dim,
            out_dim,
            data: vec_zero(in_dim.pow(degree as u32) * out_dim),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    fn flat_index(&self, multi: &[usize], k: usize) -> usize {
        debug_assert_eq!(multi.len(), self.degree);
        let mut idx = 0usize;
        for &i in multi {
            idx = idx * self.in_dim + i;
        }
        idx * self.out_dim + k
    }

    pub fn get(&self, multi: &[usize], k: usize) -> &Scalar {
        &self.data[self.flat_index(multi, k)]
    }

    pub fn set(&mut self, multi: &[usize], k: usize, value: Scalar) {
        let idx = self.flat_index(multi, k);
        self.data[idx] = value;
    }

    pub fn value(&self, multi: &[usize]) -> Vec<Scalar> {
        (0..self.out_dim)
            .map(|k| self.get(multi, k).clone())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.data)
    }

    pub fn sub(&self, rhs: &PlainCochain) -> PlainCochain {
        assert_eq!(
            (self.degree, self.in_dim, self.out_dim),
            (rhs.degree, rhs.in_dim, rhs.out_dim)
        );
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        PlainCochain { data, ..self.clone() }
    }

    fn prepared(&self) -> Prepared<'_> {
        prepare_block(&self.data, self.degree, self.in_dim, self.out_dim)
    }
}

impl std::fmt::Debug for PlainCochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PlainCochain(degree {}, in dim {}, out dim {})",
            self.degree, self.in_dim, self.out_dim
        )
    }
}

/// Ambient dimension of the space of all degree-`n` tree-indexed cochains.
pub fn ambient_dim(alg_dim: usize, val_dim: usize, n: usize) -> usize {
    enumerate_trees(n).len() * alg_dim.pow(n as u32) * val_dim
}

fn odometer(len: usize, base: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = base.pow(len as u32);
    (0..total).map(move |mut flat| {
        let mut multi = vec![0usize; len];
        for j in (0..len).rev() {
            multi[j] = flat % base;
            flat /= base;
        }
        multi
    })
}

/// Both equivariance defect families of `f`, flattened in fixed order
/// (alpha family then beta family; trees, multi-indices, coordinates).
fn equivariance_defects(t: &Trialgebra, module: &TriBimodule, f: &TreeCochain) -> Vec<Scalar> {
    let prepared = f.prepared();
    let mut out = Vec::new();
    for (alg_map, mod_map) in [
        (t.alpha(), module.alpha_v()),
        (t.beta(), module.beta_v()),
    ] {
        let cols: Vec<Vec<Scalar>> = (0..t.dim()).map(|i| alg_map.col(i)).collect();
        for (tree, block) in prepared.iter().enumerate() {
            for multi in odometer(f.degree(), f.alg_dim()) {
                let slots: Vec<Slot> = multi.iter().map(|&i| Slot::Vector(&cols[i])).collect();
                let twisted = eval_block(block, &slots, f.val_dim());
                let straight = mod_map.apply(&f.value(tree, &multi));
                for (a, b) in twisted.iter().zip(&straight) {
                    out.push(a - b);
                }
            }
        }
    }
    out
}

/// Membership test for the cochain group `C^n`.
pub fn is_equivariant(t: &Trialgebra, module: &TriBimodule, f: &TreeCochain) -> bool {
    vec_is_zero(&equivariance_defects(t, module, f))
}

/// The cochain group `C^n(T, V)` as a subspace of the ambient coefficient
/// space: the kernel of both equivariance constraint families.
pub fn cochain_space(t: &Trialgebra, module: &TriBimodule, n: usize) -> Subspace {
    assert!(n >= 1, "cochain groups start at degree 1");
    let ambient = ambient_dim(t.dim(), module.dim(), n);
    let mut columns = Vec::with_capacity(ambient);
    for unit in 0..ambient {
        let mut data = vec_zero(ambient);
        data[unit] = Scalar::one();
        let f = TreeCochain::from_vec(n, t.dim(), module.dim(), data);
        columns.push(equivariance_defects(t, module, &f));
    }
    let rows = columns.first().map_or(0, |c| c.len());
    let constraint = Matrix::from_fn(rows, ambient, |r, c| columns[c][r].clone());
    constraint.kernel_basis()
}

/// Face data of one degree-(n+1) tree: for every position `i`, the index of
/// `d_i psi` in the canonical degree-n list together with the label at `i`.
fn face_table(
    n_plus_1: &[PlanarTree],
    n_trees: &[PlanarTree],
    orientation: Orientation,
) -> Vec<Vec<(usize, OpLabel)>> {
    let index: HashMap<String, usize> = n_trees
        .iter()
        .enumerate()
        .map(|(i, t)| (t.serialize(), i))
        .collect();
    n_plus_1
        .iter()
        .map(|psi| {
            (0..=psi.degree())
                .map(|i| {
                    let face = psi.delete_leaf(i).expect("position in range");
                    let tree = index[&face.serialize()];
                    let label = psi.op_label_oriented(i, orientation).expect("in range");
                    (tree, label)
                })
                .collect()
        })
        .collect()
}

fn delta_raw(
    t: &Trialgebra,
    module: &TriBimodule,
    f: &TreeCochain,
    orientation: Orientation,
) -> TreeCochain {
    let n = f.degree();
    let alg = t.dim();
    let trees_above = enumerate_trees(n + 1);
    let trees_below = enumerate_trees(n);
    let faces = face_table(&trees_above, &trees_below, orientation);
    let prepared = f.prepared();

    let alpha_cols: Vec<Vec<Scalar>> = (0..alg).map(|i| t.alpha().col(i)).collect();
    let beta_cols: Vec<Vec<Scalar>> = (0..alg).map(|i| t.beta().col(i)).collect();
    let alpha_pow = t.alpha().pow(n - 1);
    let beta_pow = t.beta().pow(n - 1);
    let alpha_pow_cols: Vec<Vec<Scalar>> = (0..alg).map(|i| alpha_pow.col(i)).collect();
    let beta_pow_cols: Vec<Vec<Scalar>> = (0..alg).map(|i| beta_pow.col(i)).collect();

    let mut out = TreeCochain::zero(n + 1, alg, f.val_dim());
    for (p, _) in trees_above.iter().enumerate() {
        let face = &faces[p];
        for multi in odometer(n + 1, alg) {
            let mut acc = vec_zero(f.val_dim());

            let (d0, l0) = face[0];
            let slots: Vec<Slot> = multi[1..].iter().map(|&b| Slot::Basis(b)).collect();
            let inner = eval_block(&prepared[d0], &slots, f.val_dim());
            if !vec_is_zero(&inner) {
                let acted = module.lact(l0, &alpha_pow_cols[multi[0]], &inner);
                for (a, b) in acc.iter_mut().zip(acted) {
                    *a += b;
                }
            }

            for i in 1..=n {
                let (di, li) = face[i];
                let prod = t.basis_product(li, multi[i - 1], multi[i]);
                let slots: Vec<Slot> = (0..n)
                    .map(|j| {
                        if j < i - 1 {
                            Slot::Vector(&alpha_cols[multi[j]])
                        } else if j == i - 1 {
                            Slot::Vector(prod)
                        } else {
                            Slot::Vector(&beta_cols[multi[j + 1]])
                        }
                    })
                    .collect();
                let inner = eval_block(&prepared[di], &slots, f.val_dim());
                if i % 2 == 1 {
                    for (a, b) in acc.iter_mut().zip(inner) {
                        *a -= b;
                    }
                } else {
                    for (a, b) in acc.iter_mut().zip(inner) {
                        *a += b;
                    }
                }
            }

            let (dl, ll) = face[n + 1];
            let slots: Vec<Slot> = multi[..n].iter().map(|&b| Slot::Basis(b)).collect();
            let inner = eval_block(&prepared[dl], &slots, f.val_dim());
            if !vec_is_zero(&inner) {
                let acted = module.ract(ll, &inner, &beta_pow_cols[multi[n]]);
                if (n + 1) % 2 == 1 {
                    for (a, b) in acc.iter_mut().zip(acted) {
                        *a -= b;
                    }
                } else {
                    for (a, b) in acc.iter_mut().zip(acted) {
                        *a += b;
                    }
                }
            }

            for (k, value) in acc.into_iter().enumerate() {
                if !value.is_zero() {
                    out.set(p, &multi, k, value);
                }
            }
        }
    }
    out
}

/// The coboundary `C^n -> C^{n+1}` under the frozen tree conventions.
/// Errors if the input is not equivariant, or if the output fails
/// equivariance (which signals an invalid algebra or module).
pub fn delta_bht(
    t: &Trialgebra,
    module: &TriBimodule,
    f: &TreeCochain,
) -> Result<TreeCochain, HochschildError> {
    delta_bht_oriented(t, module, f, Orientation::CALIBRATED)
}

/// [`delta_bht`] with an explicit interior orientation convention; used by
/// the calibration search.
pub fn delta_bht_oriented(
    t: &Trialgebra,
    module: &TriBimodule,
    f: &TreeCochain,
    orientation: Orientation,
) -> Result<TreeCochain, HochschildError> {
    if f.alg_dim() != t.dim() || f.val_dim() != module.dim() {
        return Err(HochschildError::ShapeMismatch(format!(
            "cochain over T dim {} with values in dim {}, expected {} and {}",
            f.alg_dim(),
            f.val_dim(),
            t.dim(),
            module.dim()
        )));
    }
    if !is_equivariant(t, module, f) {
        return Err(HochschildError::NotEquivariant);
    }
    let out = delta_raw(t, module, f, orientation);
    if !is_equivariant(t, module, &out) {
        return Err(HochschildError::EquivarianceBroken);
    }
    Ok(out)
}

/// The coboundary as a matrix on the full ambient coefficient spaces,
/// `ambient(n) -> ambient(n+1)`, without equivariance gates.
pub fn coboundary_matrix(t: &Trialgebra, module: &TriBimodule, n: usize) -> Matrix {
    coboundary_matrix_oriented(t, module, n, Orientation::CALIBRATED)
}

pub fn coboundary_matrix_oriented(
    t: &Trialgebra,
    module: &TriBimodule,
    n: usize,
    orientation: Orientation,
) -> Matrix {
    let source = ambient_dim(t.dim(), module.dim(), n);
    let target = ambient_dim(t.dim(), module.dim(), n + 1);
    let mut columns = Vec::with_capacity(source);
    for unit in 0..source {
        let mut data = vec_zero(source);
        data[unit] = Scalar::one();
        let f = TreeCochain::from_vec(n, t.dim(), module.dim(), data);
        columns.push(delta_raw(t, module, &f, orientation).to_vec());
    }
    Matrix::from_fn(target, source, |r, c| columns[c][r].clone())
}

/// Kernel of the coboundary restricted to the cochain group `C^n`,
/// expressed back in the ambient coefficient coordinates.
pub fn restricted_kernel(
    t: &Trialgebra,
    module: &TriBimodule,
    n: usize,
    orientation: Orientation,
) -> Subspace {
    let space = cochain_space(t, module, n);
    let basis_t = space.basis_matrix().transpose();
    let delta = coboundary_matrix_oriented(t, module, n, orientation);
    let restricted = delta.mul(&basis_t);
    let kernel = restricted.kernel_basis();
    let rows: Vec<Vec<Scalar>> = kernel
        .basis()
        .iter()
        .map(|c| {
            let mut v = vec_zero(space.ambient_dim());
            for (coeff, basis_vec) in c.iter().zip(space.basis()) {
                if coeff.is_zero() {
                    continue;
                }
                for (cell, b) in v.iter_mut().zip(basis_vec) {
                    *cell += coeff * b;
                }
            }
            v
        })
        .collect();
    Subspace::from_rows(space.ambient_dim(), rows)
}

/// One row of the cohomology table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyRow {
    pub degree: usize,
    pub cochain_dim: usize,
    pub coboundary_rank: usize,
    pub cohomology_dim: usize,
}

/// Cohomology dimensions for degrees `1..=max_degree`. Degree 0 cochains
/// are taken to be zero, so the degree-1 row reports the plain kernel of
/// the first coboundary.
pub fn cohomology_table(
    t: &Trialgebra,
    module: &TriBimodule,
    max_degree: usize,
) -> Vec<CohomologyRow> {
    assert!(max_degree >= 1);
    let mut rows = Vec::new();
    let mut previous_rank = 0usize;
    for n in 1..=max_degree {
        let space = cochain_space(t, module, n);
        let delta = coboundary_matrix(t, module, n);
        let restricted = delta.mul(&space.basis_matrix().transpose());
        let rank = restricted.rank();
        let kernel = space.dim() - rank;
        rows.push(CohomologyRow {
            degree: n,
            cochain_dim: space.dim(),
            coboundary_rank: rank,
            cohomology_dim: kernel - previous_rank,
        });
        previous_rank = rank;
    }
    rows
}

/// `dim H^n(T, V)` under the degree-0-is-zero convention.
pub fn cohomology_dim(t: &Trialgebra, module: &TriBimodule, n: usize) -> usize {
    cohomology_table(t, module, n)
        .pop()
        .expect("n >= 1")
        .cohomology_dim
}

/// The single-product coboundary on a collapsed algebra with coefficients
/// in a collapsed bimodule, computed by the coefficient-extension route:
/// extend the cochain to the semidirect product by
/// `g~(v_1 + x_1, ..., v_n + x_n) = g(x_1, ..., x_n)`, apply the
/// self-coefficient coboundary there, and restrict back to arguments from
/// the algebra.
pub fn delta_bha(
    a: &Trialgebra,
    module: &TriBimodule,
    g: &PlainCochain,
) -> Result<PlainCochain, HochschildError> {
    if !a.is_collapsed() {
        return Err(HochschildError::NotCollapsed);
    }
    let collapsed_actions = OpLabel::ALL
        .iter()
        .all(|&op| {
            module.lact_tensor(op) == module.lact_tensor(OpLabel::Left)
                && module.ract_tensor(op) == module.ract_tensor(OpLabel::Left)
        });
    if !collapsed_actions {
        return Err(HochschildError::NotCollapsed);
    }
    let n_t = a.dim();
    let m = module.dim();
    if g.in_dim() != n_t || g.out_dim() != m {
        return Err(HochschildError::ShapeMismatch(format!(
            "cochain maps dim {} into dim {}, expected {} into {}",
            g.in_dim(),
            g.out_dim(),
            n_t,
            m
        )));
    }
    if !plain_is_equivariant(a.alpha(), module.alpha_v(), g)
        || !plain_is_equivariant(a.beta(), module.beta_v(), g)
    {
        return Err(HochschildError::NotEquivariant);
    }

    let sd = semidirect_product_unchecked(module);
    let total = sd.dim();
    let n = g.degree();

    let mut extended = PlainCochain::zero(n, total, total);
    for (multi, k, value) in g.prepared() {
        // arguments from the algebra block, value embedded into the module block
        extended.set(&multi, n_t + k, value.clone());
    }

    let full = bha_self_delta(&sd, &extended);

    let mut out = PlainCochain::zero(n + 1, n_t, m);
    for multi in odometer(n + 1, n_t) {
        let value = full.value(&multi);
        debug_assert!(
            vec_is_zero(&value[..n_t]),
            "restricted coboundary must land in the module block"
        );
        for (k, x) in value[n_t..].iter().enumerate() {
            if !x.is_zero() {
                out.set(&multi, k, x.clone());
            }
        }
    }
    Ok(out)
}

fn plain_is_equivariant(alg_map: &Matrix, mod_map: &Matrix, g: &PlainCochain) -> bool {
    let cols: Vec<Vec<Scalar>> = (0..g.in_dim()).map(|i| alg_map.col(i)).collect();
    let prepared = g.prepared();
    for multi in odometer(g.degree(), g.in_dim()) {
        let slots: Vec<Slot> = multi.iter().map(|&i| Slot::Vector(&cols[i])).collect();
        let twisted = eval_block(&prepared, &slots, g.out_dim());
        let straight = mod_map.apply(&g.value(&multi));
        if twisted != straight {
            return false;
        }
    }
    true
}

/// Self-coefficient single-product coboundary on a collapsed algebra:
/// the left tensor is the product and arguments and values live in the
/// same space.
fn bha_self_delta(a: &Trialgebra, g: &PlainCochain) -> PlainCochain {
    let dim = a.dim();
    let n = g.degree();
    let product = a.tensor(OpLabel::Left);
    let alpha_cols: Vec<Vec<Scalar>> = (0..dim).map(|i| a.alpha().col(i)).collect();
    let beta_cols: Vec<Vec<Scalar>> = (0..dim).map(|i| a.beta().col(i)).collect();
    let alpha_pow = a.alpha().pow(n - 1);
    let beta_pow = a.beta().pow(n - 1);
    let prepared = g.prepared();

    let mut out = PlainCochain::zero(n + 1, dim, dim);
    for multi in odometer(n + 1, dim) {
        let mut acc = vec_zero(dim);

        let slots: Vec<Slot> = multi[1..].iter().map(|&b| Slot::Basis(b)).collect();
        let inner = eval_block(&prepared, &slots, dim);
        if !vec_is_zero(&inner) {
            let acted = product.bilinear(&alpha_pow.col(multi[0]), &inner);
            for (a_, b) in acc.iter_mut().zip(acted) {
                *a_ += b;
            }
        }

        for i in 1..=n {
            let prod = product.basis_slice(multi[i - 1], multi[i]);
            let slots: Vec<Slot> = (0..n)
                .map(|j| {
                    if j < i - 1 {
                        Slot::Vector(&alpha_cols[multi[j]])
                    } else if j == i - 1 {
                        Slot::Vector(prod)
                    } else {
                        Slot::Vector(&beta_cols[multi[j + 1]])
                    }
                })
                .collect();
            let inner = eval_block(&prepared, &slots, dim);
            if i % 2 == 1 {
                for (a_, b) in acc.iter_mut().zip(inner) {
                    *a_ -= b;
                }
            } else {
                for (a_, b) in acc.iter_mut().zip(inner) {
                    *a_ += b;
                }
            }
        }

        let slots: Vec<Slot> = multi[..n].iter().map(|&b| Slot::Basis(b)).collect();
        let inner = eval_block(&prepared, &slots, dim);
        if !vec_is_zero(&inner) {
            let acted = product.bilinear(&inner, &beta_pow.col(multi[n]));
            if (n + 1) % 2 == 1 {
                for (a_, b) in acc.iter_mut().zip(acted) {
                    *a_ -= b;
                }
            } else {
                for (a_, b) in acc.iter_mut().zip(acted) {
                    *a_ += b;
                }
            }
        }

        for (k, value) in acc.into_iter().enumerate() {
            if !value.is_zero() {
                out.set(&multi, k, value);
            }
        }
    }
    out
}

/// The classical tree coboundary: requires identity structure maps on both
/// the algebra and the module, where the general coboundary reduces to the
/// alternating sum of face maps.
pub fn delta_trias(
    t: &Trialgebra,
    module: &TriBimodule,
    f: &TreeCochain,
) -> Result<TreeCochain, HochschildError> {
    if !t.has_identity_maps()
        || !module.alpha_v().is_identity()
        || !module.beta_v().is_identity()
    {
        return Err(HochschildError::NotClassical);
    }
    delta_bht(t, module, f)
}

/// Builds the degree-2 tree cochain carrying a triple of bilinear forms
/// under the frozen tree/product bijection.
pub fn tree2_cochain_from_triple(f: &CocycleTriple) -> TreeCochain {
    let n = f.alg_dim();
    let m = f.val_dim();
    let mut out = TreeCochain::zero(2, n, m);
    for (tree, &op) in TREE2_OPS.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                for (k, value) in f.component(op).basis_slice(i, j).iter().enumerate() {
                    if !value.is_zero() {
                        out.set(tree, &[i, j], k, value.clone());
                    }
                }
            }
        }
    }
    out
}

/// Inverse of [`tree2_cochain_from_triple`].
pub fn triple_from_tree2_cochain(f: &TreeCochain) -> CocycleTriple {
    assert_eq!(f.degree(), 2);
    let n = f.alg_dim();
    let m = f.val_dim();
    let mut out = CocycleTriple::zero(n, m);
    for (tree, &op) in TREE2_OPS.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    let value = f.get(tree, &[i, j], k).clone();
                    if !value.is_zero() {
                        out.component_mut(op).set(i, j, k, value);
                    }
                }
            }
        }
    }
    out
}

/// Re-blocks an ambient degree-2 tree cochain vector into the triple layout
/// under an arbitrary tree-to-product assignment. Used by the calibration
/// search; the frozen assignment is [`TREE2_OPS`].
pub fn tree2_vec_to_triple_vec(
    alg_dim: usize,
    val_dim: usize,
    data: &[Scalar],
    assignment: &[OpLabel; 3],
) -> Vec<Scalar> {
    let block = alg_dim * alg_dim * val_dim;
    assert_eq!(data.len(), 3 * block);
    let mut out = vec_zero(3 * block);
    for (tree, &op) in assignment.iter().enumerate() {
        let dst = op.index() * block;
        out[dst..dst + block].clone_from_slice(&data[tree * block..(tree + 1) * block]);
    }
    out
}

/// Translates a subspace of ambient degree-2 tree cochains into the triple
/// coordinate layout.
pub fn translate_tree2_subspace(
    alg_dim: usize,
    val_dim: usize,
    space: &Subspace,
    assignment: &[OpLabel; 3],
) -> Subspace {
    let rows = space
        .basis()
        .iter()
        .map(|v| tree2_vec_to_triple_vec(alg_dim, val_dim, v, assignment))
        .collect();
    Subspace::from_rows(space.ambient_dim(), rows)
}

/// A cochain constant in the tree index.
pub fn tree_constant_cochain(tree_degree: usize, g: &PlainCochain) -> TreeCochain {
    assert_eq!(g.degree(), tree_degree);
    let mut out = TreeCochain::zero(tree_degree, g.in_dim(), g.out_dim());
    for tree in 0..out.tree_count() {
        for (multi, k, value) in g.prepared() {
            out.set(tree, &multi, k, value.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, Tensor3};

    fn dual_numbers() -> Trialgebra {
        let mut product = Tensor3::zeros(2, 2, 2);
        product.set(0, 0, 0, int(1));
        product.set(0, 1, 1, int(1));
        product.set(1, 0, 1, int(1));
        Trialgebra::from_associative(product, Matrix::identity(2), Matrix::identity(2)).unwrap()
    }

    fn abelian_line() -> (Trialgebra, TriBimodule) {
        let t = Trialgebra::abelian(1, Matrix::identity(1), Matrix::identity(1)).unwrap();
        let v = TriBimodule::trivial(t.clone(), 1, Matrix::identity(1), Matrix::identity(1))
            .unwrap();
        (t, v)
    }

    #[test]
    fn ambient_dims() {
        assert_eq!(ambient_dim(1, 1, 2), 3);
        assert_eq!(ambient_dim(2, 1, 3), 11 * 8);
        assert_eq!(ambient_dim(2, 2, 2), 3 * 4 * 2);
    }

    #[test]
    fn identity_maps_leave_cochain_space_full() {
        let (t, v) = abelian_line();
        let space = cochain_space(&t, &v, 2);
        assert_eq!(space.dim(), 3);
    }

    #[test]
    fn scaling_map_kills_cochains() {
        // alpha = (2) on the algebra, alpha_v = (1): equivariance forces
        // f(2x) = f(x), so only the zero cochain survives
        let t = Trialgebra::abelian(1, Matrix::from_int_rows(&[&[2]]), Matrix::identity(1))
            .unwrap();
        let v = TriBimodule::trivial(t.clone(), 1, Matrix::identity(1), Matrix::identity(1))
            .unwrap();
        assert_eq!(cochain_space(&t, &v, 1).dim(), 0);
    }

    #[test]
    fn delta_of_zero_is_zero() {
        let t = dual_numbers();
        let v = TriBimodule::trivial(t.clone(), 1, Matrix::identity(1), Matrix::identity(1))
            .unwrap();
        let f = TreeCochain::zero(1, 2, 1);
        let out = delta_bht(&t, &v, &f).unwrap();
        assert!(out.is_zero());
        assert_eq!(out.degree(), 2);
    }

    #[test]
    fn abelian_trivial_delta_vanishes() {
        let (t, v) = abelian_line();
        let mut f = TreeCochain::zero(1, 1, 1);
        f.set(0, &[0], 0, int(5));
        let out = delta_bht(&t, &v, &f).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn delta_squared_zero_on_dual_numbers_restricted() {
        let t = dual_numbers();
        let v = TriBimodule::trivial(t.clone(), 1, Matrix::identity(1), Matrix::identity(1))
            .unwrap();
        let c1 = cochain_space(&t, &v, 1);
        let d1 = coboundary_matrix(&t, &v, 1);
        let d2 = coboundary_matrix(&t, &v, 2);
        let composite = d2.mul(&d1).mul(&c1.basis_matrix().transpose());
        assert!(composite.is_zero());
    }

    #[test]
    fn non_equivariant_input_rejected() {
        let t = Trialgebra::abelian(1, Matrix::from_int_rows(&[&[2]]), Matrix::identity(1))
            .unwrap();
        let v = TriBimodule::trivial(t.clone(), 1, Matrix::identity(1), Matrix::identity(1))
            .unwrap();
        let mut f = TreeCochain::zero(1, 1, 1);
        f.set(0, &[0], 0, int(1));
        assert_eq!(
            delta_bht(&t, &v, &f).unwrap_err(),
            HochschildError::NotEquivariant
        );
    }

    #[test]
    fn worked_h2_of_the_abelian_line() {
        let (t, v) = abelian_line();
        let table = cohomology_table(&t, &v, 2);
        assert_eq!(table[1].cochain_dim, 3);
        assert_eq!(table[1].coboundary_rank, 0);
        assert_eq!(table[1].cohomology_dim, 3);
        let (h2, _) = crate::coho2::second_cohomology(&t, &v).unwrap();
        assert_eq!(h2, table[1].cohomology_dim);
    }

    #[test]
    fn triple_translation_round_trip() {
        let mut f = CocycleTriple::zero(2, 1);
        f.component_mut(OpLabel::Left).set(0, 1, 0, int(3));
        f.component_mut(OpLabel::Middle).set(1, 1, 0, int(-2));
        let cochain = tree2_cochain_from_triple(&f);
        assert_eq!(triple_from_tree2_cochain(&cochain), f);
        // vector translation agrees with the struct translation
        let vec = tree2_vec_to_triple_vec(2, 1, &cochain.to_vec(), &TREE2_OPS);
        assert_eq!(vec, f.to_vec());
    }

    #[test]
    fn delta_bha_of_zero_is_zero() {
        let t = dual_numbers();
        let adj = TriBimodule::adjoint(t.clone());
        let g = PlainCochain::zero(1, 2, 2);
        let out = delta_bha(&t, &adj, &g).unwrap();
        assert!(out.is_zero());
        assert_eq!(out.degree(), 2);
    }

    #[test]
    fn delta_bha_rejects_uncollapsed() {
        let mut left = Tensor3::zeros(1, 1, 1);
        left.set(0, 0, 0, int(1));
        let t = Trialgebra::new(
            left,
            Tensor3::zeros(1, 1, 1),
            Tensor3::zeros(1, 1, 1),
            Matrix::identity(1),
            Matrix::identity(1),
        )
        .unwrap();
        let v = TriBimodule::trivial(t.clone(), 1, Matrix::identity(1), Matrix::identity(1))
            .unwrap();
        let g = PlainCochain::zero(1, 1, 1);
        assert_eq!(
            delta_bha(&t, &v, &g).unwrap_err(),
            HochschildError::NotCollapsed
        );
    }

    #[test]
    fn delta_trias_requires_identity_maps() {
        let t = Trialgebra::abelian(1, Matrix::from_int_rows(&[&[2]]), Matrix::from_int_rows(&[&[4]]))
            .unwrap();
        let v = TriBimodule::trivial(t.clone(), 1, Matrix::identity(1), Matrix::identity(1))
            .unwrap();
        let f = TreeCochain::zero(1, 1, 1);
        assert_eq!(
            delta_trias(&t, &v, &f).unwrap_err(),
            HochschildError::NotClassical
        );
    }
}
