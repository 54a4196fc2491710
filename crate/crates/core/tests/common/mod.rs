//! Shared fixtures for the integration and acceptance suites: a corpus of
//! small trialgebras and coefficient modules, plus independent oracles that
//! recompute key quantities along different code paths.

#![allow(dead_code)]

use num::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use triaco_core::algebra::{Trialgebra, AXIOMS};
use triaco_core::bimodule::TriBimodule;
use triaco_core::coho2::{self, CocycleTriple};
use triaco_core::hochschild::{self, PlainCochain, TreeCochain};
use triaco_core::linalg::{int, unit_vec, vec_add, vec_scale, vec_zero, Matrix, Scalar, Subspace, Tensor3};
use triaco_core::trees::{enumerate_trees, OpLabel};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(rng: &mut ChaCha8Rng) -> Scalar {
    int(rng.gen_range(-2..=2))
}

// ---------------------------------------------------------------------------
// corpus algebras
// ---------------------------------------------------------------------------

pub fn dual_numbers() -> Trialgebra {
    let mut product = Tensor3::zeros(2, 2, 2);
    product.set(0, 0, 0, int(1));
    product.set(0, 1, 1, int(1));
    product.set(1, 0, 1, int(1));
    Trialgebra::from_associative(product, Matrix::identity(2), Matrix::identity(2)).unwrap()
}

pub fn field_line() -> Trialgebra {
    let mut product = Tensor3::zeros(1, 1, 1);
    product.set(0, 0, 0, int(1));
    Trialgebra::from_associative(product, Matrix::identity(1), Matrix::identity(1)).unwrap()
}

/// One-dimensional algebra whose only nonzero product is the middle one.
pub fn middle_only_line() -> Trialgebra {
    let mut middle = Tensor3::zeros(1, 1, 1);
    middle.set(0, 0, 0, int(1));
    Trialgebra::new(
        Tensor3::zeros(1, 1, 1),
        Tensor3::zeros(1, 1, 1),
        middle,
        Matrix::identity(1),
        Matrix::identity(1),
    )
    .unwrap()
}

/// The dual-number dialgebra `x -| y = x pi(y)`, `x |- y = pi(x) y` for the
/// unit projection `pi`, with the middle product set to one of the sides.
pub fn dual_dialgebra(middle_is_left: bool) -> Trialgebra {
    let mut left = Tensor3::zeros(2, 2, 2);
    left.set(0, 0, 0, int(1));
    left.set(1, 0, 1, int(1));
    let mut right = Tensor3::zeros(2, 2, 2);
    right.set(0, 0, 0, int(1));
    right.set(0, 1, 1, int(1));
    let middle = if middle_is_left {
        left.clone()
    } else {
        right.clone()
    };
    Trialgebra::new(
        left,
        right,
        middle,
        Matrix::identity(2),
        Matrix::identity(2),
    )
    .unwrap()
}

/// Dual numbers with the product twisted by an endomorphism on the right:
/// `x * y = x . beta(y)` with `beta = diag(1, b)`.
pub fn beta_twisted_dual(b: i64) -> Trialgebra {
    let beta = Matrix::from_int_rows(&[&[1, 0], &[0, b]]);
    let mut product = Tensor3::zeros(2, 2, 2);
    // x * y = x beta(y) on the dual-number basis {1, s}
    product.set(0, 0, 0, int(1));
    product.set(0, 1, 1, int(b));
    product.set(1, 0, 1, int(1));
    Trialgebra::from_associative(product, Matrix::identity(2), beta).unwrap()
}

/// Dual numbers twisted on both sides: `x * y = alpha(x) . beta(y)` with
/// `alpha = diag(1, a)`, `beta = diag(1, b)`.
pub fn bihom_twisted_dual(a: i64, b: i64) -> Trialgebra {
    let alpha = Matrix::from_int_rows(&[&[1, 0], &[0, a]]);
    let beta = Matrix::from_int_rows(&[&[1, 0], &[0, b]]);
    let mut product = Tensor3::zeros(2, 2, 2);
    product.set(0, 0, 0, int(1));
    product.set(0, 1, 1, int(b));
    product.set(1, 0, 1, int(a));
    Trialgebra::from_associative(product, alpha, beta).unwrap()
}

/// Direct sum of the unital line and the dual numbers: a collapsed
/// three-dimensional associative algebra.
pub fn field_plus_dual() -> Trialgebra {
    let mut product = Tensor3::zeros(3, 3, 3);
    product.set(0, 0, 0, int(1));
    product.set(1, 1, 1, int(1));
    product.set(1, 2, 2, int(1));
    product.set(2, 1, 2, int(1));
    Trialgebra::from_associative(product, Matrix::identity(3), Matrix::identity(3)).unwrap()
}

fn scalar_triple(a: i64, b: i64, c: i64) -> CocycleTriple {
    let mut f = CocycleTriple::zero(1, 1);
    f.component_mut(OpLabel::Left).set(0, 0, 0, int(a));
    f.component_mut(OpLabel::Right).set(0, 0, 0, int(b));
    f.component_mut(OpLabel::Middle).set(0, 0, 0, int(c));
    f
}

/// Every corpus algebra passes both checkers; dims are at most 2 except for
/// the final three-dimensional entry.
pub fn corpus_algebras() -> Vec<(String, Trialgebra)> {
    let mut out: Vec<(String, Trialgebra)> = Vec::new();
    out.push((
        "abelian-1-id".into(),
        Trialgebra::abelian(1, Matrix::identity(1), Matrix::identity(1)).unwrap(),
    ));
    out.push((
        "abelian-1-scaled".into(),
        Trialgebra::abelian(1, Matrix::from_int_rows(&[&[2]]), Matrix::from_int_rows(&[&[4]]))
            .unwrap(),
    ));
    let shear = Matrix::from_int_rows(&[&[1, 1], &[0, 1]]);
    out.push((
        "abelian-2-shear".into(),
        Trialgebra::abelian(2, shear.clone(), shear.mul(&shear)).unwrap(),
    ));
    let diag = Matrix::from_int_rows(&[&[1, 0], &[0, 2]]);
    out.push((
        "abelian-2-diag".into(),
        Trialgebra::abelian(2, diag.clone(), diag.mul(&diag)).unwrap(),
    ));
    out.push(("dual-numbers".into(), dual_numbers()));
    out.push(("field-1".into(), field_line()));
    out.push(("middle-only-1".into(), middle_only_line()));
    out.push(("dialgebra-left".into(), dual_dialgebra(true)));
    out.push(("dialgebra-right".into(), dual_dialgebra(false)));
    out.push(("dual-beta-twist".into(), beta_twisted_dual(2)));
    out.push(("dual-bihom-twist".into(), bihom_twisted_dual(2, 3)));

    // central extensions of one-dimensional bases by computed cocycles
    let base = Trialgebra::abelian(1, Matrix::identity(1), Matrix::identity(1)).unwrap();
    let line = TriBimodule::trivial(base.clone(), 1, Matrix::identity(1), Matrix::identity(1))
        .unwrap();
    out.push((
        "ext-1-2-3".into(),
        coho2::central_extension(&base, &line, &scalar_triple(1, 2, 3))
            .total()
            .clone(),
    ));
    let base = Trialgebra::abelian(1, Matrix::from_int_rows(&[&[2]]), Matrix::from_int_rows(&[&[3]]))
        .unwrap();
    let fiber = TriBimodule::trivial(
        base.clone(),
        1,
        Matrix::from_int_rows(&[&[4]]),
        Matrix::from_int_rows(&[&[9]]),
    )
    .unwrap();
    out.push((
        "ext-scaled".into(),
        coho2::central_extension(&base, &fiber, &scalar_triple(1, 2, 3))
            .total()
            .clone(),
    ));
    let base = field_line();
    let line = TriBimodule::trivial(base.clone(), 1, Matrix::identity(1), Matrix::identity(1))
        .unwrap();
    out.push((
        "ext-unital".into(),
        coho2::central_extension(&base, &line, &scalar_triple(1, 1, 1))
            .total()
            .clone(),
    ));
    out.push(("field-plus-dual-3".into(), field_plus_dual()));
    out
}

/// Corpus algebras of dimension at most 2.
pub fn corpus_algebras_dim2() -> Vec<(String, Trialgebra)> {
    corpus_algebras()
        .into_iter()
        .filter(|(_, t)| t.dim() <= 2)
        .collect()
}

/// Pairs with central coefficients, for the degree-2 machinery.
pub fn corpus_central_pairs() -> Vec<(String, Trialgebra, TriBimodule)> {
    let mut out = Vec::new();
    for (name, t) in corpus_algebras_dim2() {
        let line = TriBimodule::trivial(t.clone(), 1, Matrix::identity(1), Matrix::identity(1))
            .unwrap();
        out.push((format!("{name}/trivial-1"), t.clone(), line));
        if name == "abelian-1-scaled" {
            let matched = TriBimodule::trivial(
                t.clone(),
                1,
                Matrix::from_int_rows(&[&[4]]),
                Matrix::from_int_rows(&[&[16]]),
            )
            .unwrap();
            out.push((format!("{name}/trivial-matched"), t.clone(), matched));
        }
        if name == "abelian-2-diag" {
            let scaled = TriBimodule::trivial(
                t.clone(),
                1,
                Matrix::from_int_rows(&[&[2]]),
                Matrix::from_int_rows(&[&[4]]),
            )
            .unwrap();
            out.push((format!("{name}/trivial-scaled"), t.clone(), scaled));
        }
        if name == "ext-scaled" {
            let matched = TriBimodule::trivial(
                t.clone(),
                1,
                Matrix::from_int_rows(&[&[4]]),
                Matrix::from_int_rows(&[&[9]]),
            )
            .unwrap();
            out.push((format!("{name}/trivial-matched"), t.clone(), matched));
        }
    }
    out
}

/// The full pair corpus for the complex property: central pairs plus
/// adjoint coefficients over the multiplicative corpus algebras.
pub fn corpus_pairs_dim2() -> Vec<(String, Trialgebra, TriBimodule)> {
    let mut out = corpus_central_pairs();
    for name in [
        "dual-numbers",
        "field-1",
        "middle-only-1",
        "dialgebra-left",
        "dialgebra-right",
        "dual-beta-twist",
        "dual-bihom-twist",
        "ext-1-2-3",
    ] {
        let (_, t) = corpus_algebras_dim2()
            .into_iter()
            .find(|(n, _)| n == name)
            .unwrap();
        out.push((
            format!("{name}/adjoint"),
            t.clone(),
            TriBimodule::adjoint(t),
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// oracles
// ---------------------------------------------------------------------------

/// Little Schroeder numbers via the grafting decomposition recurrence,
/// independent of the tree enumeration.
pub fn schroeder_count(n: usize) -> usize {
    fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
        if parts == 0 {
            return if total == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for head in 0..=total {
            for mut tail in compositions(total - head, parts - 1) {
                tail.insert(0, head);
                out.push(tail);
            }
        }
        out
    }
    let mut counts = vec![1usize];
    for d in 1..=n {
        let mut total = 0;
        for k in 1..=d {
            for comp in compositions(d - k, k + 1) {
                total += comp.iter().map(|&ni| counts[ni]).product::<usize>();
            }
        }
        counts.push(total);
    }
    counts[n]
}

fn eval_cochain_vector_slot(
    f: &TreeCochain,
    tree: usize,
    multi: &[usize],
    slot: usize,
    vector: &[Scalar],
) -> Vec<Scalar> {
    let mut out = vec_zero(f.val_dim());
    for (a, coeff) in vector.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let mut m = multi.to_vec();
        m[slot] = a;
        out = vec_add(&out, &vec_scale(coeff, &f.value(tree, &m)));
    }
    out
}

fn all_multis(len: usize, base: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for m in &out {
            for b in 0..base {
                let mut m2 = m.clone();
                m2.push(b);
                next.push(m2);
            }
        }
        out = next;
    }
    out
}

/// Classical coboundary assembled from the individual face maps, using only
/// the public tree API: face `0` acts on the left through the position-0
/// label, faces `1..=n` insert the labelled product, face `n+1` acts on the
/// right. Valid for identity structure maps.
pub fn delta_faces_oracle(t: &Trialgebra, v: &TriBimodule, f: &TreeCochain) -> TreeCochain {
    let n = f.degree();
    let trees_above = enumerate_trees(n + 1);
    let trees_below = enumerate_trees(n);
    let below_index = |tree: &triaco_core::trees::PlanarTree| {
        trees_below
            .iter()
            .position(|u| u == tree)
            .expect("face stays in the canonical list")
    };
    let mut out = TreeCochain::zero(n + 1, t.dim(), v.dim());
    for (p, psi) in trees_above.iter().enumerate() {
        for multi in all_multis(n + 1, t.dim()) {
            let mut acc = vec_zero(v.dim());
            for i in 0..=(n + 1) {
                let face = below_index(&psi.delete_leaf(i).unwrap());
                let label = psi.op_label(i).unwrap();
                let term = if i == 0 {
                    let inner = f.value(face, &multi[1..]);
                    v.lact(label, &unit_vec(t.dim(), multi[0]), &inner)
                } else if i <= n {
                    let prod = t.basis_product(label, multi[i - 1], multi[i]);
                    let mut rest: Vec<usize> = Vec::with_capacity(n);
                    rest.extend_from_slice(&multi[..i - 1]);
                    rest.push(0);
                    rest.extend_from_slice(&multi[i + 1..]);
                    eval_cochain_vector_slot(f, face, &rest, i - 1, prod)
                } else {
                    let inner = f.value(face, &multi[..n]);
                    v.ract(label, &inner, &unit_vec(t.dim(), multi[n]))
                };
                if i % 2 == 0 {
                    acc = vec_add(&acc, &term);
                } else {
                    acc = triaco_core::linalg::vec_sub(&acc, &term);
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

/// The single-product coboundary with the actions substituted directly into
/// the displayed formula (instead of the coefficient-extension route).
pub fn delta_bha_direct_oracle(
    a: &Trialgebra,
    module: &TriBimodule,
    g: &PlainCochain,
) -> PlainCochain {
    let n = g.degree();
    let dim = a.dim();
    let alpha_pow = a.alpha().pow(n - 1);
    let beta_pow = a.beta().pow(n - 1);

    let eval_plain = |slots: &[Vec<Scalar>]| -> Vec<Scalar> {
        let mut out = vec_zero(g.out_dim());
        for multi in all_multis(n, dim) {
            let mut coeff = int(1);
            let mut zero = false;
            for (j, slot) in slots.iter().enumerate() {
                if slot[multi[j]].is_zero() {
                    zero = true;
                    break;
                }
                coeff *= &slot[multi[j]];
            }
            if zero {
                continue;
            }
            out = vec_add(&out, &vec_scale(&coeff, &g.value(&multi)));
        }
        out
    };

    let mut out = PlainCochain::zero(n + 1, dim, g.out_dim());
    for multi in all_multis(n + 1, dim) {
        let mut acc = vec_zero(g.out_dim());

        let slots: Vec<Vec<Scalar>> = multi[1..].iter().map(|&b| unit_vec(dim, b)).collect();
        let inner = eval_plain(&slots);
        acc = vec_add(
            &acc,
            &module.lact(OpLabel::Left, &alpha_pow.col(multi[0]), &inner),
        );

        for i in 1..=n {
            let prod = a.basis_product(OpLabel::Left, multi[i - 1], multi[i]).to_vec();
            let slots: Vec<Vec<Scalar>> = (0..n)
                .map(|j| {
                    if j < i - 1 {
                        a.alpha().col(multi[j])
                    } else if j == i - 1 {
                        prod.clone()
                    } else {
                        a.beta().col(multi[j + 1])
                    }
                })
                .collect();
            let inner = eval_plain(&slots);
            if i % 2 == 1 {
                acc = triaco_core::linalg::vec_sub(&acc, &inner);
            } else {
                acc = vec_add(&acc, &inner);
            }
        }

        let slots: Vec<Vec<Scalar>> = multi[..n].iter().map(|&b| unit_vec(dim, b)).collect();
        let inner = eval_plain(&slots);
        let last = module.ract(OpLabel::Left, &inner, &beta_pow.col(multi[n]));
        if (n + 1) % 2 == 1 {
            acc = triaco_core::linalg::vec_sub(&acc, &last);
        } else {
            acc = vec_add(&acc, &last);
        }

        for (k, value) in acc.into_iter().enumerate() {
            if !value.is_zero() {
                out.set(&multi, k, value);
            }
        }
    }
    out
}

/// Cocycle constraint matrix assembled entrywise from the structure
/// constants, independent of the checker-based assembly in the library.
pub fn cocycle_matrix_oracle(t: &Trialgebra, module: &TriBimodule) -> Matrix {
    let n = t.dim();
    let m = module.dim();
    let width = 3 * n * n * m;
    let col_of = |op: OpLabel, i: usize, j: usize, k: usize| {
        op.index() * n * n * m + (i * n + j) * m + k
    };
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (alg_map, mod_map) in [
        (t.alpha(), module.alpha_v()),
        (t.beta(), module.beta_v()),
    ] {
        for op in OpLabel::ALL {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..m {
                        let mut row = vec_zero(width);
                        for a in 0..n {
                            for b in 0..n {
                                let c = alg_map.get(a, i) * alg_map.get(b, j);
                                if !c.is_zero() {
                                    row[col_of(op, a, b, k)] += c;
                                }
                            }
                        }
                        for l in 0..m {
                            let c = mod_map.get(k, l);
                            if !c.is_zero() {
                                row[col_of(op, i, j, l)] -= c;
                            }
                        }
                        rows.push(row);
                    }
                }
            }
        }
    }
    for ax in &AXIOMS {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let inner_lhs = t.basis_product(ax.lhs_inner, a, b);
                    let inner_rhs = t.basis_product(ax.rhs_inner, b, c);
                    for k in 0..m {
                        let mut row = vec_zero(width);
                        for (p, x) in inner_lhs.iter().enumerate() {
                            if x.is_zero() {
                                continue;
                            }
                            for q in 0..n {
                                let factor = x * t.beta().get(q, c);
                                if !factor.is_zero() {
                                    row[col_of(ax.lhs_outer, p, q, k)] += factor;
                                }
                            }
                        }
                        for (q, x) in inner_rhs.iter().enumerate() {
                            if x.is_zero() {
                                continue;
                            }
                            for p in 0..n {
                                let factor = t.alpha().get(p, a) * x;
                                if !factor.is_zero() {
                                    row[col_of(ax.rhs_outer, p, q, k)] -= factor;
                                }
                            }
                        }
                        rows.push(row);
                    }
                }
            }
        }
    }
    Matrix::from_rows(rows)
}

/// The space of classical derivations `D(xy) = D(x)y + xD(y)` of the left
/// product, solved directly. For collapsed algebras with identity maps this
/// is the diagonal slice of the generalized solver.
pub fn classical_derivation_space(t: &Trialgebra) -> Subspace {
    let n = t.dim();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let prod = t.basis_product(OpLabel::Left, a, b);
            for k in 0..n {
                let mut row = vec_zero(n * n);
                for l in 0..n {
                    // D'' term: D applied to the product
                    if !prod[l].is_zero() {
                        row[k * n + l] += &prod[l];
                    }
                    // -(e_l . e_b)_k D[l][a] and -(e_a . e_l)_k D[l][b]
                    let left = t.basis_product(OpLabel::Left, l, b)[k].clone();
                    if !left.is_zero() {
                        row[l * n + a] -= left;
                    }
                    let right = t.basis_product(OpLabel::Left, a, l)[k].clone();
                    if !right.is_zero() {
                        row[l * n + b] -= right;
                    }
                }
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(rows).kernel_basis()
}

// ---------------------------------------------------------------------------
// random generation helpers
// ---------------------------------------------------------------------------

/// A random vector in a subspace, with small integer coefficients.
pub fn sample_subspace(space: &Subspace, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    let mut v = vec_zero(space.ambient_dim());
    for basis_vec in space.basis() {
        let c = small_int(rng);
        if c.is_zero() {
            continue;
        }
        v = vec_add(&v, &vec_scale(&c, basis_vec));
    }
    v
}

/// A random equivariant triple of bilinear forms `T x T -> V`, sampled from
/// the degree-2 cochain group and translated along the frozen bijection.
pub fn sample_equivariant_triple(
    t: &Trialgebra,
    module: &TriBimodule,
    rng: &mut ChaCha8Rng,
) -> CocycleTriple {
    let space = hochschild::cochain_space(t, module, 2);
    let v = sample_subspace(&space, rng);
    let cochain = TreeCochain::from_vec(2, t.dim(), module.dim(), v);
    hochschild::triple_from_tree2_cochain(&cochain)
}

/// A random unipotent (hence invertible) matrix.
pub fn random_unipotent(dim: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::identity(dim);
    for r in 0..dim {
        for c in 0..dim {
            if r < c {
                m.set(r, c, small_int(rng));
            }
        }
    }
    m
}

/// The coboundary map `mu -> (mu o left, mu o right, mu o middle)` as an
/// explicit matrix from the `m x n` entries of `mu` to the triple
/// coordinates, assembled directly from the structure constants.
pub fn coboundary_map_oracle(t: &Trialgebra, module: &TriBimodule) -> Matrix {
    let n = t.dim();
    let m = module.dim();
    let col_of = |r: usize, c: usize| r * n + c;
    let row_of = |op: OpLabel, i: usize, j: usize, k: usize| {
        op.index() * n * n * m + (i * n + j) * m + k
    };
    let mut out = Matrix::zeros(3 * n * n * m, m * n);
    for op in OpLabel::ALL {
        for i in 0..n {
            for j in 0..n {
                let prod = t.basis_product(op, i, j);
                for k in 0..m {
                    for (l, p) in prod.iter().enumerate() {
                        if !p.is_zero() {
                            let cell = out
                                .get(row_of(op, i, j, k), col_of(k, l))
                                .clone();
                            out.set(row_of(op, i, j, k), col_of(k, l), cell + p);
                        }
                    }
                }
            }
        }
    }
    out
}
