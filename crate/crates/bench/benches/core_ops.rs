use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use triaco_core::bimodule::TriBimodule;
use triaco_core::coho2;
use triaco_core::derivation;
use triaco_core::hochschild;
use triaco_core::linalg::{int, rat, Matrix, Tensor3};
use triaco_core::trees::enumerate_trees;
use triaco_core::Trialgebra;

fn dual_numbers() -> Trialgebra {
    let mut product = Tensor3::zeros(2, 2, 2);
    product.set(0, 0, 0, int(1));
    product.set(0, 1, 1, int(1));
    product.set(1, 0, 1, int(1));
    Trialgebra::from_associative(product, Matrix::identity(2), Matrix::identity(2)).unwrap()
}

fn bench_trees(c: &mut Criterion) {
    c.bench_function("enumerate_trees_degree_6", |b| {
        b.iter(|| enumerate_trees(black_box(6)).len())
    });
}

fn bench_rref(c: &mut Criterion) {
    // fixed pseudo-random rational matrix
    let mut state = 0x243f6a8885a308d3u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let m = Matrix::from_fn(40, 60, |_, _| {
        rat((next() % 13) as i64 - 6, (next() % 3 + 1) as i64)
    });
    c.bench_function("rref_40x60", |b| b.iter(|| black_box(&m).rref().1.len()));
}

fn bench_cocycles(c: &mut Criterion) {
    let t = dual_numbers();
    let line =
        TriBimodule::trivial(t.clone(), 1, Matrix::identity(1), Matrix::identity(1)).unwrap();
    c.bench_function("cocycle_space_dual_numbers", |b| {
        b.iter(|| {
            coho2::cocycle_space(black_box(&t), black_box(&line))
                .unwrap()
                .dim()
        })
    });
}

fn bench_coboundary_matrix(c: &mut Criterion) {
    let t = dual_numbers();
    let adjoint = TriBimodule::adjoint(t.clone());
    c.bench_function("coboundary_matrix_degree_2_adjoint", |b| {
        b.iter(|| hochschild::coboundary_matrix(black_box(&t), black_box(&adjoint), 2).rows())
    });
}

fn bench_derivations(c: &mut Criterion) {
    let mut product = Tensor3::zeros(3, 3, 3);
    product.set(0, 0, 0, int(1));
    product.set(1, 1, 1, int(1));
    product.set(1, 2, 2, int(1));
    product.set(2, 1, 2, int(1));
    let t =
        Trialgebra::from_associative(product, Matrix::identity(3), Matrix::identity(3)).unwrap();
    c.bench_function("solve_derivations_dim_3", |b| {
        b.iter(|| derivation::solve_derivations(black_box(&t)).param_count())
    });
}

criterion_group!(
    benches,
    bench_trees,
    bench_rref,
    bench_cocycles,
    bench_coboundary_matrix,
    bench_derivations
);
criterion_main!(benches);
