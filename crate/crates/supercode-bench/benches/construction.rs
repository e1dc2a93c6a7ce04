use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use supercode::bounds::{default_weight, lambda_for, length_pairwise};
use supercode::enumcode::sample_uniform_wd_vector;
use supercode::lll::find_violations;
use supercode::types::CodeParameters;

fn bench_construct(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct_superimposed");
    group.sample_size(10);
    for n in [250usize, 500, 1000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            let mut seed = 0;
            b.iter(|| {
                seed += 1;
                let params = CodeParameters::new(n, 3, 4).with_seed(seed);
                supercode::construct_superimposed(&params).unwrap()
            });
        });
    }
    group.finish();
}

fn bench_sample_column(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_uniform_wd_vector");
    for (t, w, d) in [(254usize, 19usize, 4usize), (1000, 40, 10)] {
        let label = format!("t{t}_w{w}_d{d}");
        group.bench_function(&label, |b| {
            let mut rng = ChaCha12Rng::seed_from_u64(1);
            b.iter(|| sample_uniform_wd_vector(t, w, d, &mut rng).unwrap());
        });
    }
    group.finish();
}

fn bench_violation_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_violations");
    for n in [500usize, 1000] {
        let w = default_weight(n, 3).unwrap();
        let lambda = lambda_for(w, 3).unwrap();
        let t = length_pairwise(n, 4, w, lambda).unwrap() as usize;
        let params = CodeParameters::new(n, 3, 4).with_seed(9).with_length(t);
        let (matrix, _) = supercode::construct_superimposed(&params).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &matrix, |b, matrix| {
            b.iter(|| find_violations(matrix, lambda));
        });
    }
    group.finish();
}

criterion_group!(benches, bench_construct, bench_sample_column, bench_violation_scan);
criterion_main!(benches);
