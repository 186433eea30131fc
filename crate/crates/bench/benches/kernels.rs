use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use poisson_forge_bench::{dense_matrix, linear, perturbed_so3};
use poisson_forge_core::formal::formal_linearize;
use poisson_forge_core::poisson::{casimir_basis, cohomology_dims};
use poisson_forge_core::polyalg::{det_exact, rank_exact};
use poisson_forge_core::realize::{realization_form, verify_realization};
use std::hint::black_box;

fn schouten(c: &mut Criterion) {
    let mut g = c.benchmark_group("schouten");
    for d in [3, 4, 5] {
        let pi = perturbed_so3(d);
        g.bench_with_input(BenchmarkId::new("jacobiator", d), &pi, |b, pi| b.iter(|| pi.schouten(black_box(pi)).unwrap()));
    }
    g.finish();
}

fn linear_algebra(c: &mut Criterion) {
    let mut g = c.benchmark_group("exact_linear_algebra");
    for n in [8, 16, 32] {
        let m = dense_matrix(n);
        g.bench_with_input(BenchmarkId::new("rank", n), &m, |b, m| b.iter(|| rank_exact(black_box(m))));
        g.bench_with_input(BenchmarkId::new("det", n), &m, |b, m| b.iter(|| det_exact(black_box(m))));
    }
    g.finish();
}

fn cohomology(c: &mut Criterion) {
    let so3 = linear("so3");
    let mut g = c.benchmark_group("cohomology_so3");
    g.sample_size(20);
    for l in [2, 3, 4] {
        g.bench_with_input(BenchmarkId::from_parameter(l), &l, |b, &l| b.iter(|| cohomology_dims(&so3, l, 3).unwrap()));
    }
    g.finish();
    let su3 = linear("su3");
    c.bench_function("casimirs_su3_deg3", |b| b.iter(|| casimir_basis(black_box(&su3), 3).unwrap()));
}

fn formal(c: &mut Criterion) {
    let pi = perturbed_so3(4);
    let mut g = c.benchmark_group("formal");
    g.sample_size(20);
    g.bench_function("linearize_so3_d4", |b| b.iter(|| formal_linearize(black_box(&pi), 4, 8).unwrap()));
    g.finish();
}

fn realize(c: &mut Criterion) {
    let so3 = linear("so3");
    let xi = [0.05, -0.02, 0.03, 0.04, 0.01, -0.06];
    c.bench_function("realization_form_2000_steps", |b| b.iter(|| realization_form(&so3, black_box(&xi), 2000).unwrap()));
    let mut g = c.benchmark_group("verify_realization");
    g.sample_size(10);
    g.bench_function("so3_16_samples", |b| b.iter(|| verify_realization(&so3, 16, 0.1, 42, 500).unwrap()));
    g.finish();
}

criterion_group!(benches, schouten, linear_algebra, cohomology, formal, realize);
criterion_main!(benches);
