//! Scaling benchmarks for the quadratic solver paths and the exhaustive
//! kernel enumerator.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use delga_core::digraph::{enumerate_kernels, AcceptabilityDigraph};
use delga_core::distance::solve_equilibrium_db;
use delga_core::dynamics::{default_brd_budget, run_dynamics, MoveRule, TokenFunction};
use delga_core::generate;
use delga_core::profile::DelegationFunction;
use delga_core::single_peaked::{build_auxiliary, equilibrium_from_auxiliary, AxisProfile};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn bench_single_peaked(c: &mut Criterion) {
    let mut group = c.benchmark_group("single_peaked");
    group.sample_size(10);
    for n in [500usize, 2000] {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let axis = AxisProfile::new(generate::random_single_peaked(n, &mut rng)).unwrap();
        group.bench_with_input(BenchmarkId::new("build_auxiliary", n), &axis, |b, axis| {
            b.iter(|| black_box(build_auxiliary(axis)))
        });
        let aux = build_auxiliary(&axis);
        group.bench_with_input(BenchmarkId::new("equilibrium", n), &axis, |b, axis| {
            b.iter(|| black_box(equilibrium_from_auxiliary(axis, &aux)))
        });
    }
    group.finish();
}

fn bench_distance_based(c: &mut Criterion) {
    let mut group = c.benchmark_group("distance_based");
    group.sample_size(10);
    for n in [500usize, 2000] {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let db = generate::random_db_points(n, 2, 0.05, &mut rng);
        group.bench_with_input(BenchmarkId::new("greedy_equilibrium", n), &db, |b, db| {
            b.iter(|| black_box(solve_equilibrium_db(&db.profile, &db.thresholds).unwrap()))
        });
    }
    group.finish();
}

fn bench_kernel_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel_enumeration");
    group.sample_size(10);
    for n in [14usize, 18] {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let p = generate::random_symmetric(n, 0.3, 0.0, &mut rng);
        let g = AcceptabilityDigraph::from_profile(&p);
        group.bench_with_input(BenchmarkId::new("symmetric", n), &g, |b, g| {
            b.iter(|| black_box(enumerate_kernels(g, None).unwrap()))
        });
    }
    group.finish();
}

fn bench_best_response_dynamics(c: &mut Criterion) {
    let mut group = c.benchmark_group("dynamics");
    group.sample_size(10);
    let n = 100;
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let db = generate::random_db_points(n, 2, 0.05, &mut rng);
    group.bench_function("brd_convergence_n100", |b| {
        b.iter(|| {
            let trace = run_dynamics(
                &db.profile,
                DelegationFunction::all_voting(n),
                &TokenFunction::RoundRobin,
                &MoveRule::BestResponse,
                default_brd_budget(n),
            )
            .unwrap();
            black_box(trace.verdict)
        })
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_single_peaked,
    bench_distance_based,
    bench_kernel_enumeration,
    bench_best_response_dynamics
);
criterion_main!(benches);
