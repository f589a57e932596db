use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use motif_swarm::store::candidate_order;
use motif_swarm::{
    norm_dtw, znorm_euclidean, Measure, MotifQueue, NullSink, SwarmConfig, SwarmMotif, Task,
};
use motif_swarm_bench::{candidates, walk};

fn measures(c: &mut Criterion) {
    let z = walk(1_000);
    let v = z.values();
    let mut g = c.benchmark_group("measures");
    for len in [32usize, 128, 512] {
        g.bench_with_input(BenchmarkId::new("zeuclid", len), &len, |b, &len| {
            b.iter(|| znorm_euclidean(black_box(&v[..len]), black_box(&v[400..400 + len])))
        });
        g.bench_with_input(BenchmarkId::new("zeuclid_upsampled", len), &len, |b, &len| {
            b.iter(|| znorm_euclidean(black_box(&v[..len * 3 / 4]), black_box(&v[400..400 + len])))
        });
        g.bench_with_input(BenchmarkId::new("dtw", len), &len, |b, &len| {
            b.iter(|| norm_dtw(black_box(&v[..len]), black_box(&v[400..400 + len]), None))
        });
        g.bench_with_input(BenchmarkId::new("dtw_band10", len), &len, |b, &len| {
            b.iter(|| norm_dtw(black_box(&v[..len]), black_box(&v[400..400 + len]), Some(10)))
        });
    }
    g.finish();
}

fn engine(c: &mut Criterion) {
    let z = walk(10_000);
    let mut g = c.benchmark_group("engine");
    g.sample_size(10);
    for measure in [Measure::ZNormEuclidean, Measure::NormDtw { band: None }] {
        g.bench_function(BenchmarkId::new("100_iterations", measure.name()), |b| {
            b.iter(|| {
                let task = Task { w_min: 50, w_max: 100, k: 5, t_max: 100 };
                let mut engine = SwarmMotif::new(&z, measure, task, SwarmConfig::default()).unwrap();
                engine.run(NullSink, 0)
            })
        });
    }
    g.finish();
}

fn extraction(c: &mut Criterion) {
    let n = 100_000;
    let mut g = c.benchmark_group("extraction");
    for k in [1usize, 10, 50] {
        let mut queue = MotifQueue::new(n, k, MotifQueue::default_capacity(k));
        for m in candidates(n, 100, 5_000) {
            queue.push(m);
        }
        g.bench_with_input(BenchmarkId::new("top_k", k), &k, |b, &k| b.iter(|| queue.top_k(black_box(k))));
        let mut sorted = candidates(n, 100, 5_000);
        sorted.sort_by(candidate_order);
        g.bench_with_input(BenchmarkId::new("top_k_5000_sorted", k), &k, |b, &k| {
            b.iter(|| motif_swarm::top_k_nonoverlapping(&sorted, black_box(k), n))
        });
    }
    g.bench_function("push_5000", |b| {
        let items = candidates(n, 100, 5_000);
        b.iter(|| {
            let mut queue = MotifQueue::new(n, 10, MotifQueue::default_capacity(10));
            for m in &items {
                queue.push(*m);
            }
            queue.len()
        })
    });
    g.finish();
}

criterion_group!(benches, measures, engine, extraction);
criterion_main!(benches);
