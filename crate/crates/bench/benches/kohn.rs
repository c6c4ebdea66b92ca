use criterion::{black_box, criterion_group, criterion_main, Criterion};
use subelliptic_bench::{axis_domain, mixed_domain};
use subelliptic_core::finite_type::{type_report, TypeConfig};
use subelliptic_core::kohn::{self, KohnConfig};

fn runs(c: &mut Criterion) {
    let config = KohnConfig::default();
    for (a, b) in [(1, 1), (2, 2), (3, 4)] {
        let d = axis_domain(a, b);
        c.bench_function(&format!("kohn z1^{a}, z2^{b}"), |bench| {
            bench.iter(|| kohn::run(black_box(&d), &config).unwrap())
        });
    }
    let mixed = mixed_domain();
    c.bench_function("kohn mixed", |bench| bench.iter(|| kohn::run(black_box(&mixed), &config).unwrap()));
    let cert = kohn::run(&mixed, &config).unwrap();
    c.bench_function("replay mixed", |bench| bench.iter(|| kohn::replay(black_box(&cert), &mixed)));
}

fn finite_type(c: &mut Criterion) {
    let d = axis_domain(4, 6);
    c.bench_function("type report z1^4, z2^6", |b| b.iter(|| type_report(black_box(&d), &TypeConfig::default()).unwrap()));
}

criterion_group!(benches, runs, finite_type);
criterion_main!(benches);
