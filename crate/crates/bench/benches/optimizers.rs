use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ris_bench::rayleigh_csi;
use ris_core::rng::{trial_rng, Stream};
use ris_core::{
    es_optimize, exhaustive, gradient_ascent, hill_climb, kernel_rollout, sign_alignment, EsParams,
    GradientParams, Kernel, PhaseConfig,
};

fn closed_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("sign_alignment");
    for n in [64, 256, 1024] {
        let csi = rayleigh_csi(n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &csi, |b, csi| {
            b.iter(|| sign_alignment(black_box(csi)))
        });
    }
    group.finish();
}

fn iterative(c: &mut Criterion) {
    let mut group = c.benchmark_group("hill_climb_from_sa");
    for n in [64, 256] {
        let csi = rayleigh_csi(n, 2);
        let init = sign_alignment(&csi).phi;
        group.bench_with_input(BenchmarkId::from_parameter(n), &csi, |b, csi| {
            b.iter(|| hill_climb(black_box(csi), &init, usize::MAX).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("gradient_ascent");
    for n in [64, 256] {
        let csi = rayleigh_csi(n, 3);
        group.bench_with_input(BenchmarkId::from_parameter(n), &csi, |b, csi| {
            b.iter(|| gradient_ascent(black_box(csi), &GradientParams::default()).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("exhaustive");
    group.sample_size(10);
    for n in [12, 16, 20] {
        let csi = rayleigh_csi(n, 4);
        group.bench_with_input(BenchmarkId::from_parameter(n), &csi, |b, csi| {
            b.iter(|| exhaustive(black_box(csi), 26).unwrap())
        });
    }
    group.finish();
}

fn evolution(c: &mut Criterion) {
    let kernel = Kernel::new(3, vec![0.1, 0.2, 0.1, 0.2, 1.0, 0.2, 0.1, 0.2, 0.1]).unwrap();
    let mut group = c.benchmark_group("kernel_rollout");
    for n in [64, 256] {
        let phi = sign_alignment(&rayleigh_csi(n, 5)).phi;
        group.bench_with_input(
            BenchmarkId::from_parameter(n),
            &phi,
            |b, phi: &PhaseConfig| b.iter(|| kernel_rollout(black_box(phi), &kernel, 3).unwrap()),
        );
    }
    group.finish();

    let csi = rayleigh_csi(64, 6);
    let params = EsParams {
        max_generations: 5,
        ..Default::default()
    };
    c.bench_function("es_optimize/64x5", |b| {
        b.iter(|| {
            let mut rng = trial_rng(6, Stream::Evolution, 0);
            es_optimize(black_box(&csi), &params, &mut rng).unwrap()
        })
    });
}

criterion_group!(benches, closed_form, iterative, evolution);
criterion_main!(benches);
