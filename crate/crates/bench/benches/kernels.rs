use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tql_bench::group;
use tql_core::episearch::{find_quadruples, find_triples, QuadrupleSearch, SearchConfig};
use tql_core::fuchsian::snf::smith_diagonal;
use tql_core::fuchsian::{relation_matrix, Signature};
use tql_core::{GroupHandle, GroupMetadata};

fn schreier_sims(c: &mut Criterion) {
    let mut g = c.benchmark_group("schreier_sims");
    for spec in ["psl2:27", "sym:10", "prod:psl2:7,psl2:8"] {
        let gens = group(spec).generators().to_vec();
        g.bench_with_input(BenchmarkId::from_parameter(spec), &gens, |b, gens| {
            b.iter(|| GroupHandle::build(gens.clone(), GroupMetadata::default()).unwrap().order())
        });
    }
    g.finish();
}

fn triples(c: &mut Criterion) {
    let cfg = SearchConfig::default();
    let mut g = c.benchmark_group("find_triples_237");
    g.sample_size(10);
    for spec in ["psl2:13", "psl2:27"] {
        let h = group(spec);
        g.bench_with_input(BenchmarkId::from_parameter(spec), &h, |b, h| {
            b.iter(|| find_triples(h, [2, 3, 7], &cfg).unwrap().total)
        });
    }
    g.finish();
}

fn quadruples(c: &mut Criterion) {
    let cfg = SearchConfig::default();
    let mut g = c.benchmark_group("find_quadruples");
    g.sample_size(10);
    let h = group("psl2:27");
    g.bench_function("psl2:27 counting", |b| {
        b.iter(|| find_quadruples(&h, &QuadrupleSearch::counting(), &cfg).unwrap().total)
    });
    g.bench_function("psl2:27 existence", |b| {
        b.iter(|| find_quadruples(&h, &QuadrupleSearch::existence(), &cfg).unwrap().n_set)
    });
    g.finish();
}

fn smith(c: &mut Criterion) {
    let m = relation_matrix(&Signature::sphere(&[2, 2, 2, 2, 3, 3, 4, 6, 12]).unwrap());
    c.bench_function("smith_diagonal", |b| b.iter(|| smith_diagonal(&m)));
}

criterion_group!(benches, schreier_sims, triples, quadruples, smith);
criterion_main!(benches);
