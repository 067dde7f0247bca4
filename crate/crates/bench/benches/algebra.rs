use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use twistcat::field::EllSpec;
use twistcat::gamma::GammaContext;
use twistcat::group::{make_group, subgroups, DEFAULT_ORDER_CAP};
use twistcat::lambda::{KContext, Kind};
use twistcat::ssc::{gram_radical, t_matrix, GramMode, TRoute};
use twistcat::suites::{cocycle_check, tau_oracle_check};

fn lattices(c: &mut Criterion) {
    let g = make_group("S4", DEFAULT_ORDER_CAP).unwrap();
    c.bench_function("subgroups S4", |b| b.iter(|| subgroups(black_box(&g)).len()));
}

fn contexts(c: &mut Criterion) {
    c.bench_function("context C2,C4", |b| b.iter(|| KContext::parse(&["C2", "C4"], EllSpec::Generic).unwrap().dimension()));
}

fn products(c: &mut Criterion) {
    let ctx = KContext::parse(&["C2", "C4"], EllSpec::Generic).unwrap();
    c.bench_function("cocycle C2,C4", |b| b.iter(|| cocycle_check(&ctx)));
    let keys = ctx.keys();
    let elems: Vec<_> = keys.iter().map(|&k| ctx.basis(Kind::Round, k)).collect();
    c.bench_function("round products C2,C4 from C4", |b| {
        b.iter(|| {
            let mut n = 0;
            for (i, x) in keys.iter().zip(&elems) {
                for (j, y) in keys.iter().zip(&elems) {
                    if i.0 == 1 && i.1 == j.0 {
                        n += ctx.round_multiply(x, y).unwrap().terms().count();
                    }
                }
            }
            n
        })
    });
    c.bench_function("tau routes C2,C4", |b| b.iter(|| tau_oracle_check(&ctx, 2_000).unwrap()));
}

fn t_matrices(c: &mut Criterion) {
    let e = make_group("C2", DEFAULT_ORDER_CAP).unwrap();
    let l = make_group("C2xC2", DEFAULT_ORDER_CAP).unwrap();
    let mut group = c.benchmark_group("T C2 from C2xC2");
    group.bench_function("bruteforce", |b| b.iter(|| t_matrix(&e, &l, TRoute::Bruteforce, &EllSpec::Generic).unwrap()));
    group.bench_function("restricted", |b| b.iter(|| t_matrix(&e, &l, TRoute::Restricted, &EllSpec::Generic).unwrap()));
    group.finish();
}

fn trace_form(c: &mut Criterion) {
    let ctx = KContext::parse(&["C2"], EllSpec::Generic).unwrap();
    c.bench_function("gram radical C2", |b| b.iter(|| gram_radical(&ctx, &GramMode::Symbolic).unwrap().radical_dimension));
}

fn gamma(c: &mut Criterion) {
    let ctx = KContext::parse(&["S3"], EllSpec::Power(1)).unwrap();
    let g = GammaContext::new(&ctx);
    c.bench_function("gamma nu S3", |b| b.iter(|| g.nu_check().unwrap().multiplicative));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = lattices, contexts, products, t_matrices, trace_form, gamma
}
criterion_main!(benches);
