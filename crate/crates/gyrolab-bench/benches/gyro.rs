//! Benchmarks for the hot paths: ball arithmetic, exhaustive table
//! verification, subgyrogroup enumeration, and the table search.
//!
//! Search cost grows steeply with order: roughly 151 nodes at order 5,
//! 4.3e3 at 6, 2.5e5 at 7, and 1.5e8 at order 8 (minutes), which is why
//! only orders 5 and 6 are benchmarked.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gyrolab::finite::{
    enumerate_subgyrogroups, product_gyrogroup, search_gyrogroups, verify_gyrogroup, CayleyTable,
    FiniteGyrogroup, SearchOptions,
};
use gyrolab::model::BallGyroModel;
use gyrolab::{gyr_apply, mobius_gyr, EinsteinGyrogroup, MobiusGyrogroup};

fn disk_points(n: usize) -> Vec<gyrolab::DiskPoint> {
    let m = MobiusGyrogroup::new();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..n).map(|_| m.sample_in(&mut rng, 0.95)).collect()
}

fn velocities(n: usize) -> Vec<gyrolab::Velocity3> {
    let g = EinsteinGyrogroup::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    (0..n).map(|_| g.sample_in(&mut rng, 0.95)).collect()
}

fn ball_arithmetic(c: &mut Criterion) {
    let m = MobiusGyrogroup::new();
    let pts = disk_points(1024);
    c.bench_function("mobius_add", |b| {
        let mut i = 0usize;
        b.iter(|| {
            let (x, y) = (pts[i % 1024], pts[(i + 7) % 1024]);
            i += 1;
            black_box(gyrolab::mobius_add(black_box(x), black_box(y)))
        })
    });
    c.bench_function("mobius_gyr_closed_form", |b| {
        let mut i = 0usize;
        b.iter(|| {
            let (x, y, z) = (pts[i % 1024], pts[(i + 7) % 1024], pts[(i + 13) % 1024]);
            i += 1;
            black_box(mobius_gyr(black_box(x), black_box(y), black_box(z)))
        })
    });
    c.bench_function("mobius_gyr_by_definition", |b| {
        let mut i = 0usize;
        b.iter(|| {
            let (x, y, z) = (pts[i % 1024], pts[(i + 7) % 1024], pts[(i + 13) % 1024]);
            i += 1;
            black_box(gyr_apply(&m, black_box(x), black_box(y), black_box(z)))
        })
    });

    let g = EinsteinGyrogroup::new();
    let vs = velocities(1024);
    c.bench_function("einstein_add", |b| {
        let mut i = 0usize;
        b.iter(|| {
            let (u, v) = (vs[i % 1024], vs[(i + 7) % 1024]);
            i += 1;
            black_box(g.add(black_box(u), black_box(v)))
        })
    });
}

fn sampling(c: &mut Criterion) {
    let m = MobiusGyrogroup::new();
    c.bench_function("mobius_sample_in", |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        b.iter(|| black_box(m.sample_in(&mut rng, 0.95)))
    });
    let g = EinsteinGyrogroup::new();
    c.bench_function("einstein_sample_in", |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        b.iter(|| black_box(g.sample_in(&mut rng, 0.95)))
    });
}

fn table_16() -> CayleyTable {
    let z4 = FiniteGyrogroup::verify(gyrolab::tables::cyclic(4).unwrap()).unwrap();
    product_gyrogroup(&z4, &z4).unwrap()
}

fn finite_checks(c: &mut Criterion) {
    let t16 = table_16();
    c.bench_function("verify_order_16", |b| {
        b.iter(|| {
            let r = verify_gyrogroup(black_box(&t16));
            assert!(r.all_passed());
            black_box(r)
        })
    });

    let g16 = FiniteGyrogroup::verify(t16.clone()).unwrap();
    c.bench_function("enumerate_subgyrogroups_order_16", |b| {
        b.iter(|| black_box(enumerate_subgyrogroups(black_box(&g16)).unwrap()))
    });
}

fn search(c: &mut Criterion) {
    c.bench_function("search_order_5", |b| {
        b.iter(|| {
            let out = search_gyrogroups(5, SearchOptions::default()).unwrap();
            assert_eq!(out.tables.len(), 1);
            black_box(out)
        })
    });
    c.bench_function("search_order_6", |b| {
        b.iter(|| {
            let out = search_gyrogroups(6, SearchOptions::default()).unwrap();
            assert_eq!(out.tables.len(), 2);
            black_box(out)
        })
    });
}

criterion_group!(benches, ball_arithmetic, sampling, finite_checks, search);
criterion_main!(benches);
