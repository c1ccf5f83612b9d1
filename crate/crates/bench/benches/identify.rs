use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ordchoice::identify::{identify, identify_min};
use ordchoice::CopulaSpec;
use ordchoice_bench::{arbitrary, one_mistake, SHAPES};

fn bench_identify(c: &mut Criterion) {
    let mut group = c.benchmark_group("identify");
    group.sample_size(10);
    for (name, sizes) in SHAPES {
        let inst = arbitrary(sizes, 7);
        group.bench_with_input(BenchmarkId::new("mobius-M", name), &inst, |b, i| {
            b.iter(|| identify(&CopulaSpec::Min, i).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("breakpoints-M", name), &inst, |b, i| b.iter(|| identify_min(i)));
        let om = one_mistake(sizes, 7);
        group.bench_with_input(BenchmarkId::new("mobius-W", name), &om, |b, i| {
            b.iter(|| identify(&CopulaSpec::FhLower, i).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_identify);
criterion_main!(benches);
