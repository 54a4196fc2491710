//! Generalized alpha-beta-derivations: triples of endomorphisms
//! `(D, D', D'')` commuting with both structure maps and satisfying the
//! twisted Leibniz rule
//! `D''(a op b) = D(a) op alphabeta(b) + alphabeta(a) op D'(b)`
//! for each of the three products. The full solution space is linear in the
//! `3 n^2` matrix entries, so it is computed exactly as a kernel.

use num::Zero;

use crate::algebra::Trialgebra;
use crate::linalg::{fmt_rat, vec_add, vec_is_zero, vec_sub, vec_zero, Matrix, Scalar, Subspace};
use crate::report::ViolationReport;
use crate::trees::OpLabel;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DerivationError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("the given map does not commute with the structure maps")]
    DNotCommuting,
}

/// A candidate derivation triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTriple {
    pub d: Matrix,
    pub d_prime: Matrix,
    pub d_second: Matrix,
}

impl DerivationTriple {
    pub fn zero(dim: usize) -> Self {
        DerivationTriple {
            d: Matrix::zeros(dim, dim),
            d_prime: Matrix::zeros(dim, dim),
            d_second: Matrix::zeros(dim, dim),
        }
    }

    /// Stacked vectorization (D, then D', then D''), row-major per matrix.
    pub fn to_vec(&self) -> Vec<Scalar> {
        let n = self.d.rows();
        let mut out = Vec::with_capacity(3 * n * n);
        for m in [&self.d, &self.d_prime, &self.d_second] {
            for r in 0..n {
                out.extend_from_slice(m.row(r));
            }
        }
        out
    }

    pub fn from_vec(dim: usize, data: &[Scalar]) -> Self {
        assert_eq!(data.len(), 3 * dim * dim);
        let block = dim * dim;
        let read = |b: usize| {
            Matrix::from_fn(dim, dim, |r, c| data[b * block + r * dim + c].clone())
        };
        DerivationTriple {
            d: read(0),
            d_prime: read(1),
            d_second: read(2),
        }
    }
}

/// Checks the six structure-map commutations and the three Leibniz-type
/// identities on all basis pairs.
pub fn check_derivation(
    t: &Trialgebra,
    triple: &DerivationTriple,
) -> Result<ViolationReport, DerivationError> {
    let n = t.dim();
    for (name, m) in [
        ("D", &triple.d),
        ("D'", &triple.d_prime),
        ("D''", &triple.d_second),
    ] {
        if m.rows() != n || m.cols() != n {
            return Err(DerivationError::ShapeMismatch(format!(
                "{name} is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
    }
    let mut report = ViolationReport::new();
    for (map_name, map) in [("alpha", t.alpha()), ("beta", t.beta())] {
        for (d_name, d) in [
            ("D", &triple.d),
            ("D'", &triple.d_prime),
            ("D''", &triple.d_second),
        ] {
            let commutator = d.mul(map).sub(&map.mul(d));
            for i in 0..n {
                let defect = commutator.col(i);
                if !vec_is_zero(&defect) {
                    report.push(format!("commutation({d_name},{map_name})"), vec![i], defect);
                }
            }
        }
    }
    let ab = t.alpha().mul(t.beta());
    for op in OpLabel::ALL {
        for a in 0..n {
            for b in 0..n {
                let lhs = triple.d_second.apply(t.basis_product(op, a, b));
                let rhs = vec_add(
                    &t.product(op, &triple.d.col(a), &ab.col(b)),
                    &t.product(op, &ab.col(a), &triple.d_prime.col(b)),
                );
                let defect = vec_sub(&lhs, &rhs);
                if !vec_is_zero(&defect) {
                    report.push(format!("leibniz({})", op.name()), vec![a, b], defect);
                }
            }
        }
    }
    Ok(report)
}

/// The full space of derivation triples, as a subspace of the stacked
/// `3 n^2` coordinate space, with a symbolic rendering that names one
/// parameter per basis vector.
#[derive(Clone, Debug)]
pub struct SolutionFamily {
    dim: usize,
    space: Subspace,
}

impl SolutionFamily {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn param_count(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_triples(&self) -> Vec<DerivationTriple> {
        self.space
            .basis()
            .iter()
            .map(|v| DerivationTriple::from_vec(self.dim, v))
            .collect()
    }

    /// Parameter names, one per basis vector: `d_{r}{c}` after the matrix
    /// slot of the basis vector's pivot coordinate (1-based), with a prime
    /// or double prime when the pivot falls inside D' or D''.
    pub fn param_names(&self) -> Vec<String> {
        let block = self.dim * self.dim;
        self.space
            .pivots()
            .iter()
            .map(|&p| {
                let (which, offset) = (p / block, p % block);
                let (r, c) = (offset / self.dim + 1, offset % self.dim + 1);
                let tick = ["", "'", "''"][which];
                format!("d{tick}_{r}{c}")
            })
            .collect()
    }

    /// The three matrices with symbolic entries, mirroring the usual
    /// parametrized-table presentation.
    pub fn render(&self) -> String {
        let names = self.param_names();
        let basis = self.space.basis();
        let block = self.dim * self.dim;
        let mut out = String::new();
        for (which, title) in ["D", "D'", "D''"].iter().enumerate() {
            out.push_str(title);
            out.push_str(" =\n");
            for r in 0..self.dim {
                out.push_str("  [");
                for c in 0..self.dim {
                    if c > 0 {
                        out.push_str(", ");
                    }
                    let coord = which * block + r * self.dim + c;
                    let mut terms: Vec<String> = Vec::new();
                    for (vec, name) in basis.iter().zip(&names) {
                        let coeff = &vec[coord];
                        if coeff.is_zero() {
                            continue;
                        }
                        if coeff == &num::one::<Scalar>() {
                            terms.push(name.clone());
                        } else {
                            terms.push(format!("{}*{}", fmt_rat(coeff), name));
                        }
                    }
                    if terms.is_empty() {
                        out.push('0');
                    } else {
                        out.push_str(&terms.join(" + "));
                    }
                }
                out.push_str("]\n");
            }
        }
        out
    }
}

/// Builds the constraint rows shared by the solver and the companion
/// solver. Unknown layout: `which * n^2 + r * n + c` for `which` in
/// `{D, D', D''}` as in [`DerivationTriple::to_vec`]; `include` masks which
/// of the three matrices are unknowns (the others contribute to the
/// right-hand side via `fixed`).
fn derivation_system(
    t: &Trialgebra,
    unknowns: &[usize],
    fixed: &DerivationTriple,
) -> (Matrix, Vec<Scalar>) {
    let n = t.dim();
    let block = n * n;
    let width = unknowns.len() * block;
    let slot_of = |which: usize| unknowns.iter().position(|&w| w == which);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();

    // commutation with the structure maps, for the unknown matrices only:
    // (X * map - map * X)[k][i] = 0
    for map in [t.alpha(), t.beta()] {
        for (slot, _) in unknowns.iter().enumerate() {
            for k in 0..n {
                for i in 0..n {
                    let mut row = vec_zero(width);
                    for l in 0..n {
                        row[slot * block + k * n + l] += map.get(l, i);
                        row[slot * block + l * n + i] -= map.get(k, l);
                    }
                    rows.push(row);
                    rhs.push(Scalar::zero());
                }
            }
        }
    }

    // Leibniz rows: D''(e_a op e_b) - D(e_a) op ab(e_b) - ab(e_a) op D'(e_b)
    let ab = t.alpha().mul(t.beta());
    for op in OpLabel::ALL {
        for a in 0..n {
            for b in 0..n {
                let prod = t.basis_product(op, a, b);
                for k in 0..n {
                    let mut row = vec_zero(width);
                    let mut rhs_cell = Scalar::zero();

                    // D'' applied to the product
                    match slot_of(2) {
                        Some(slot) => {
                            for (l, p) in prod.iter().enumerate() {
                                if !p.is_zero() {
                                    row[slot * block + k * n + l] += p;
                                }
                            }
                        }
                        None => {
                            rhs_cell -= &fixed.d_second.apply(prod)[k];
                        }
                    }
                    // - D(e_a) op ab(e_b): coefficient of D[l][a] is
                    //   -(e_l op ab(e_b))_k
                    match slot_of(0) {
                        Some(slot) => {
                            for l in 0..n {
                                let mut unit = vec_zero(n);
                                unit[l] = num::one();
                                let c = &t.product(op, &unit, &ab.col(b))[k];
                                if !c.is_zero() {
                                    row[slot * block + l * n + a] -= c;
                                }
                            }
                        }
                        None => {
                            rhs_cell += &t.product(op, &fixed.d.col(a), &ab.col(b))[k];
                        }
                    }
                    // - ab(e_a) op D'(e_b)
                    match slot_of(1) {
                        Some(slot) => {
                            for l in 0..n {
                                let mut unit = vec_zero(n);
                                unit[l] = num::one();
                                let c = &t.product(op, &ab.col(a), &unit)[k];
                                if !c.is_zero() {
                                    row[slot * block + l * n + b] -= c;
                                }
                            }
                        }
                        None => {
                            rhs_cell += &t.product(op, &ab.col(a), &fixed.d_prime.col(b))[k];
                        }
                    }
                    rows.push(row);
                    rhs.push(rhs_cell);
                }
            }
        }
    }
    (Matrix::from_rows(rows), rhs)
}

/// Solves for all derivation triples of `t`. Every basis vector of the
/// returned family passes [`check_derivation`].
pub fn solve_derivations(t: &Trialgebra) -> SolutionFamily {
    let (system, rhs) = derivation_system(t, &[0, 1, 2], &DerivationTriple::zero(t.dim()));
    debug_assert!(vec_is_zero(&rhs));
    SolutionFamily {
        dim: t.dim(),
        space: system.kernel_basis(),
    }
}

/// Companion solutions for a fixed `D`: the affine set of `(D', D'')`
/// completing it to a derivation triple. Uniqueness of companions holds
/// exactly when the homogeneous part is zero-dimensional; it can fail (the
/// abelian algebra leaves companions completely unconstrained).
#[derive(Clone, Debug)]
pub struct CompanionSolutions {
    /// One solution `(D', D'')`, if the system is consistent.
    pub particular: Option<(Matrix, Matrix)>,
    /// Homogeneous solution space in the stacked `2 n^2` coordinates
    /// (D' block then D'' block).
    pub homogeneous: Subspace,
}

pub fn solve_companions(
    t: &Trialgebra,
    d: &Matrix,
) -> Result<CompanionSolutions, DerivationError> {
    let n = t.dim();
    if d.rows() != n || d.cols() != n {
        return Err(DerivationError::ShapeMismatch(format!(
            "D is {}x{}, expected {n}x{n}",
            d.rows(),
            d.cols()
        )));
    }
    if !d.commutes_with(t.alpha()) || !d.commutes_with(t.beta()) {
        return Err(DerivationError::DNotCommuting);
    }
    let fixed = DerivationTriple {
        d: d.clone(),
        d_prime: Matrix::zeros(n, n),
        d_second: Matrix::zeros(n, n),
    };
    let (system, rhs) = derivation_system(t, &[1, 2], &fixed);
    let particular = system.solve(&rhs).map(|solution| {
        let block = n * n;
        let read = |b: usize| {
            Matrix::from_fn(n, n, |r, c| solution[b * block + r * n + c].clone())
        };
        (read(0), read(1))
    });
    Ok(CompanionSolutions {
        particular,
        homogeneous: system.kernel_basis(),
    })
}
