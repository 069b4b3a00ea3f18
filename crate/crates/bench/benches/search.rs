use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use starclean_bench::{matrix_over_zmod, swap_square};
use starclean_core::{
    check_claim, classify_ring, decomposition_witness, make_matrix_ring, make_zmod, BuildConfig,
    ClaimParams, DecompositionMode, StructureSets, TheoremId,
};

fn construction(c: &mut Criterion) {
    let z4 = make_zmod(4).unwrap();
    c.bench_function("build M2(Z4)", |b| {
        b.iter(|| make_matrix_ring(&z4, 2, &BuildConfig::default()).unwrap())
    });
}

fn sets(c: &mut Criterion) {
    let m = matrix_over_zmod(3, 2);
    c.bench_function("structure sets M2(Z3)", |b| {
        b.iter(|| StructureSets::compute(&m))
    });
}

fn witnesses(c: &mut Criterion) {
    let m = matrix_over_zmod(2, 2);
    m.sets();
    c.bench_function("strongly-star-clean witnesses M2(Z2)", |b| {
        b.iter(|| {
            m.ring()
                .elements()
                .filter(|&a| {
                    decomposition_witness(&m, a, DecompositionMode::StronglyStarClean).exists()
                })
                .count()
        })
    });
}

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    group.bench_function("Z3 x Z3 swap", |b| {
        b.iter_batched(
            || swap_square(3),
            |s| classify_ring(&s),
            BatchSize::SmallInput,
        )
    });
    group.bench_function("M2(Z3)", |b| {
        b.iter_batched(
            || matrix_over_zmod(3, 2),
            |s| classify_ring(&s),
            BatchSize::LargeInput,
        )
    });
    group.finish();
}

fn claims(c: &mut Criterion) {
    let mut group = c.benchmark_group("claims");
    group.sample_size(10);
    let m = matrix_over_zmod(2, 2);
    group.bench_function("corner transfer M2(Z2)", |b| {
        b.iter(|| check_claim(&m, TheoremId::ThmCorner, &ClaimParams::default()))
    });
    group.finish();
}

criterion_group!(
    benches,
    construction,
    sets,
    witnesses,
    classification,
    claims
);
criterion_main!(benches);
