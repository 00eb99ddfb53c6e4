use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use klbasel_core::fredholm::nystrom_solve_with;
use klbasel_core::linalg::EigenMethod;
use klbasel_core::mercer::{basel_estimate, ProofId};
use klbasel_core::simulate::{sample_paths, uniform_grid, SimulationConfig};
use klbasel_core::{bessel_root, KernelKind};

fn bessel_roots(c: &mut Criterion) {
    c.bench_function("bessel_root 1..=1000", |b| {
        b.iter(|| (1..=1000).map(|n| bessel_root(black_box(n)).unwrap().z).sum::<f64>())
    });
}

fn basel(c: &mut Criterion) {
    let mut group = c.benchmark_group("basel_estimate J=1e5");
    for proof in ProofId::ALL {
        group.bench_function(proof.to_string(), |b| b.iter(|| basel_estimate(proof, black_box(100_000)).unwrap()));
    }
    group.finish();
}

fn nystrom(c: &mut Criterion) {
    let mut group = c.benchmark_group("nystrom wiener");
    group.sample_size(10);
    for n in [128usize, 256] {
        group.bench_with_input(BenchmarkId::new("jacobi", n), &n, |b, &n| {
            b.iter(|| nystrom_solve_with(KernelKind::Wiener, n, 5, EigenMethod::Jacobi).unwrap())
        });
    }
    for n in [128usize, 256, 1000] {
        group.bench_with_input(BenchmarkId::new("tridiagonal", n), &n, |b, &n| {
            b.iter(|| nystrom_solve_with(KernelKind::Wiener, n, 5, EigenMethod::Tridiagonal).unwrap())
        });
    }
    group.finish();
}

fn simulation(c: &mut Criterion) {
    let config = SimulationConfig {
        kind: KernelKind::Wiener,
        terms: 2000,
        paths: 1000,
        grid: uniform_grid(11).unwrap(),
        seed: 7,
    };
    let mut group = c.benchmark_group("simulate");
    group.sample_size(10);
    group.bench_function("wiener J=2000 M=1000 G=11", |b| b.iter(|| sample_paths(&config).unwrap()));
    group.finish();
}

criterion_group!(benches, bessel_roots, basel, nystrom, simulation);
criterion_main!(benches);
