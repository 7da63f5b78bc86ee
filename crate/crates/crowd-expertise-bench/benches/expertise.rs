use criterion::{black_box, criterion_group, criterion_main, Criterion};
use crowd_expertise::belief::belief_expertise_single;
use crowd_expertise::campaign::{score_campaign, GoldenReference, Thresholds};
use crowd_expertise::fagin::{fagin_expertise, kendall_distance};
use crowd_expertise::ScoreVector;
use crowd_expertise_bench::{mixed_population, tied_worker};

fn bench_belief_single(c: &mut Criterion) {
    let golden = ScoreVector::golden();
    let worker = tied_worker();
    c.bench_function("belief_expertise_single", |b| {
        b.iter(|| belief_expertise_single(black_box(&golden), black_box(&worker)))
    });
}

fn bench_kendall(c: &mut Criterion) {
    let golden = ScoreVector::golden();
    let worker = tied_worker();
    c.bench_function("kendall_distance", |b| {
        b.iter(|| kendall_distance(black_box(&golden), black_box(&worker), 0.5).unwrap())
    });
}

fn bench_fagin_four_hits(c: &mut Criterion) {
    let golden = ScoreVector::golden();
    let hits = [tied_worker(); 4];
    c.bench_function("fagin_expertise_4_hits", |b| {
        b.iter(|| fagin_expertise(black_box(&golden), black_box(&hits), 0.5).unwrap())
    });
}

fn bench_campaign(c: &mut Criterion) {
    let golden = GoldenReference::canonical();
    let workers = mixed_population(50);
    c.bench_function("score_campaign_150_workers", |b| {
        b.iter(|| {
            score_campaign(
                black_box(&golden),
                black_box(&workers),
                0.5,
                Thresholds::default(),
            )
            .unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_belief_single,
    bench_kendall,
    bench_fagin_four_hits,
    bench_campaign
);
criterion_main!(benches);
