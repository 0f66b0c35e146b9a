use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use riviera_core::complexity::{complexity_curve, support, Method};
use riviera_core::enum1d::count_table_brute_with;
use riviera_core::grid2d::enumerate_2d_with;
use riviera_core::{Caps, Exec, Family};

const EXECS: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn brute_1d(c: &mut Criterion) {
    let caps = Caps::default();
    let mut group = c.benchmark_group("count_table_brute");
    group.sample_size(10);
    for n in [18, 22] {
        for (name, exec) in EXECS {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| count_table_brute_with(n, Family::Riviera, &caps, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn search_2d(c: &mut Criterion) {
    let caps = Caps::default();
    let mut group = c.benchmark_group("enumerate_2d");
    group.sample_size(10);
    for (m, n) in [(5, 6), (3, 9)] {
        for (name, exec) in EXECS {
            let id = BenchmarkId::new(name, format!("{m}x{n}"));
            group.bench_function(id, |b| {
                b.iter(|| enumerate_2d_with(m, n, Family::Es, &caps, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn kernel_curve(c: &mut Criterion) {
    let rhos = support(Family::Predator).unwrap().interior_grid(200);
    let mut group = c.benchmark_group("kl_curve");
    for (name, exec) in EXECS {
        group.bench_function(name, |b| {
            b.iter(|| {
                complexity_curve(Family::Predator, Method::Kl, black_box(&rhos), exec).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, brute_1d, search_2d, kernel_curve);
criterion_main!(benches);
