//! Sequential vs worker-pool throughput on the three data-parallel hot
//! paths: per-prime solvability verdicts, batch code construction, and
//! per-generator point counts.

use criterion::{criterion_group, criterion_main, Criterion};

use cacforge_core::cac::build_optimal_cac;
use cacforge_core::diagonal::{count_affine_with, PowerResidueTable};
use cacforge_core::exec;
use cacforge_core::field::FieldCtx;
use cacforge_core::nt;
use cacforge_core::scan::verify_conjecture;

fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| n % 2 == 1 && nt::is_prime(n)).collect()
}

fn bench_scan(c: &mut Criterion) {
    let primes = primes_in(3, 4000);
    let mut group = c.benchmark_group("scan_verdicts");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| exec::map_seq(primes.clone(), |p| verify_conjecture(p).unwrap()))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| exec::map(primes.clone(), |p| verify_conjecture(p).unwrap()))
    });
    group.finish();
}

fn bench_cac_builds(c: &mut Criterion) {
    let primes = primes_in(5, 1500);
    let mut group = c.benchmark_group("cac_builds");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| exec::map_seq(primes.clone(), |p| build_optimal_cac(p).unwrap().code.size()))
    });
    group.bench_function("parallel", |b| {
        b.iter(|| exec::map(primes.clone(), |p| build_optimal_cac(p).unwrap().code.size()))
    });
    group.finish();
}

fn bench_generator_counts(c: &mut Criterion) {
    let field = FieldCtx::prime(3343).unwrap(); // 3343 - 1 = 2 * 3 * 557
    let table = PowerResidueTable::new(&field, 3).unwrap();
    let generators = field.generators();
    let mut group = c.benchmark_group("generator_counts");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| {
            exec::map_seq(generators.clone(), |g| {
                count_affine_with(&field, &table, g).unwrap()
            })
        })
    });
    group.bench_function("parallel", |b| {
        b.iter(|| {
            exec::map(generators.clone(), |g| {
                count_affine_with(&field, &table, g).unwrap()
            })
        })
    });
    group.finish();
}

criterion_group!(benches, bench_scan, bench_cac_builds, bench_generator_counts);
criterion_main!(benches);
