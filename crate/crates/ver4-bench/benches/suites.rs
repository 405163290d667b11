use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use ver4_bench::{random_matrix, random_vector};
use ver4_core::dist::DistAlgebra;
use ver4_core::hopf::{build_gl, build_gm, verify_hopf};
use ver4_core::lie::lie_of_group;

fn linalg(c: &mut Criterion) {
    let a = random_matrix(256, 256, 7);
    let b = random_vector(256, 11);
    c.bench_function("kernel-basis-256", |bench| {
        bench.iter(|| black_box(a.kernel_basis()))
    });
    c.bench_function("solve-256", |bench| bench.iter(|| black_box(a.solve(&b).unwrap())));
}

fn builders(c: &mut Criterion) {
    c.bench_function("build-gm-trunc-5", |bench| bench.iter(|| black_box(build_gm(5))));
    c.bench_function("build-gl-2x2-trunc-4", |bench| {
        bench.iter(|| black_box(build_gl(0, 2, 4)))
    });
}

fn verifiers(c: &mut Criterion) {
    let gm = build_gm(5);
    c.bench_function("verify-hopf-gm-trunc-5", |bench| {
        bench.iter(|| black_box(verify_hopf(&gm)))
    });
    let gl = build_gl(0, 2, 4);
    c.bench_function("verify-hopf-gl-2x2-trunc-4", |bench| {
        bench.iter(|| black_box(verify_hopf(&gl)))
    });
    c.bench_function("dist-identities-gl-2x2", |bench| {
        bench.iter(|| {
            let dist = DistAlgebra::new(&gl, 3).unwrap();
            black_box(dist.verify_identities())
        })
    });
    c.bench_function("lie-of-group-gl-2x2", |bench| {
        bench.iter(|| black_box(lie_of_group(&gl).unwrap()))
    });
}

criterion_group!(benches, linalg, builders, verifiers);
criterion_main!(benches);
