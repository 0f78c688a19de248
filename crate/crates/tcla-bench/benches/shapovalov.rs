use criterion::{criterion_group, criterion_main, Criterion};
use tcla::lie_core::AlgebraSpec;
use tcla::partitions::enumerate_partitions;
use tcla::shapovalov::{assemble_matrix, bareiss_det, determinant, DetMethod, Mode, Variant};
use tcla::truncation::TruncatedAlgebra;

fn trunc(name: &str, n: u16) -> TruncatedAlgebra {
    TruncatedAlgebra::new(AlgebraSpec::builtin(name, None).unwrap(), n).unwrap()
}

fn bench_assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("assemble");
    group.sample_size(10);
    group.bench_function("virasoro-n2-2d-oracle", |b| {
        b.iter(|| {
            // Fresh algebra per iteration so the caches do not amortize.
            let alg = trunc("virasoro", 2);
            let chi = alg.base.parse_weight("2d").unwrap();
            assemble_matrix(&alg, &chi, Variant::F, Mode::Oracle, 1).unwrap()
        })
    });
    group.bench_function("virasoro-n2-2d-fast", |b| {
        b.iter(|| {
            let alg = trunc("virasoro", 2);
            let chi = alg.base.parse_weight("2d").unwrap();
            assemble_matrix(&alg, &chi, Variant::B, Mode::Fast, 1).unwrap()
        })
    });
    group.bench_function("sl2-n1-30a1-oracle", |b| {
        b.iter(|| {
            let alg = trunc("sl2", 1);
            let chi = alg.base.parse_weight("30a1").unwrap();
            assemble_matrix(&alg, &chi, Variant::B, Mode::Oracle, 1).unwrap()
        })
    });
    group.finish();
}

fn bench_determinants(c: &mut Criterion) {
    let mut group = c.benchmark_group("determinant");
    group.sample_size(10);
    let alg = trunc("virasoro", 2);
    let chi = alg.base.parse_weight("2d").unwrap();
    let matrix = assemble_matrix(&alg, &chi, Variant::F, Mode::Oracle, 1).unwrap();
    group.bench_function("virasoro-n2-2d-bareiss", |b| {
        b.iter(|| bareiss_det(&matrix.entries).unwrap())
    });
    group.bench_function("virasoro-n2-2d-block", |b| {
        b.iter(|| determinant(&alg, &chi, DetMethod::Block, 1).unwrap())
    });
    group.finish();
}

fn bench_partitions(c: &mut Criterion) {
    let alg = trunc("virasoro", 2);
    let chi = alg.base.parse_weight("4d").unwrap();
    c.bench_function("partitions/virasoro-n2-4d", |b| {
        b.iter(|| enumerate_partitions(&alg, &chi).unwrap())
    });
}

criterion_group!(benches, bench_assembly, bench_determinants, bench_partitions);
criterion_main!(benches);
