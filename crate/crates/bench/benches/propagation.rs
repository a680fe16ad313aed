use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use doubleslit_bench::fixture;
use doubleslit_core::{accumulate, intensity, FreeParticleKernel, QubitBehavior};

fn bench_kernel(c: &mut Criterion) {
    let (config, derived, grids) = fixture(2000);
    let kernel = FreeParticleKernel::new(&config, &derived).unwrap();
    let x = grids.screen_positions[1700];
    c.bench_function("kernel_eval_row_1000", |b| {
        b.iter(|| {
            grids
                .lower_slit()
                .iter()
                .fold(num_complex_zero(), |acc, &xp| {
                    acc + kernel.eval(black_box(x), xp)
                })
        })
    });
}

fn num_complex_zero() -> doubleslit_core::Complex64 {
    doubleslit_core::Complex64::new(0.0, 0.0)
}

fn bench_accumulate(c: &mut Criterion) {
    let mut group = c.benchmark_group("accumulate");
    group.sample_size(10);
    for n in [250usize, 500, 1000, 2000] {
        let (config, derived, grids) = fixture(n);
        for behavior in [QubitBehavior::None, QubitBehavior::Remembers] {
            group.bench_with_input(BenchmarkId::new(behavior.name(), n), &n, |b, _| {
                b.iter(|| accumulate(&config, &derived, &grids, behavior).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_intensity(c: &mut Criterion) {
    let (config, derived, grids) = fixture(2000);
    let field = accumulate(&config, &derived, &grids, QubitBehavior::Remembers).unwrap();
    c.bench_function("intensity_2000", |b| {
        b.iter(|| intensity(black_box(&field)).unwrap())
    });
}

criterion_group!(benches, bench_kernel, bench_accumulate, bench_intensity);
criterion_main!(benches);
