use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hbdisks::analysis::{level_curve_classify, min_modulus_on_halfcircle};
use hbdisks::roots::{complex_roots, wronskian_roots};
use hbdisks::sample::{random_normalized_pair, random_pair};
use hbdisks::univalence::certify_univalent;
use hbdisks::wronski::{invert_wronskian, PositivePolynomial};
use hbdisks::Disk;

fn critical_points(c: &mut Criterion) {
    let mut g = c.benchmark_group("wronskian_roots");
    for k in [4, 8, 16, 32] {
        let pair = random_pair(k as u64, k).unwrap();
        g.bench_with_input(BenchmarkId::new("root_form", k), &pair, |b, pair| {
            b.iter(|| wronskian_roots(black_box(pair)).unwrap())
        });
    }
    for k in [4, 8] {
        let w = random_pair(k as u64, k).unwrap().wronskian().to_complex();
        g.bench_with_input(BenchmarkId::new("expanded", k), &w, |b, w| b.iter(|| complex_roots(black_box(w)).unwrap()));
    }
    g.finish();
}

fn univalence(c: &mut Criterion) {
    let pair = random_pair(7, 5).unwrap();
    let p = pair.p_roots();
    let disk = Disk::from_diameter(p[1], p[2]);
    c.bench_function("certify_univalent_k5_64probes", |b| {
        b.iter(|| certify_univalent(black_box(&pair), &disk, 64).unwrap())
    });
}

fn level_curves(c: &mut Criterion) {
    let pair = random_pair(7, 5).unwrap();
    let r = 0.5 * min_modulus_on_halfcircle(&pair, 2).unwrap().m;
    let mut g = c.benchmark_group("level_curve_classify");
    g.sample_size(20);
    for grid in [128, 256, 512] {
        g.bench_with_input(BenchmarkId::from_parameter(grid), &grid, |b, &grid| {
            b.iter(|| level_curve_classify(black_box(&pair), 2, r, grid).unwrap())
        });
    }
    g.finish();
}

fn wronski_inverse(c: &mut Criterion) {
    let mut g = c.benchmark_group("invert_wronskian");
    for k in [2, 3, 4, 5] {
        let u = PositivePolynomial::new(random_normalized_pair(11, k).unwrap().wronskian()).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(k), &u, |b, u| b.iter(|| invert_wronskian(black_box(u)).unwrap()));
    }
    g.finish();
}

criterion_group!(kernels, critical_points, univalence, level_curves, wronski_inverse);
criterion_main!(kernels);
