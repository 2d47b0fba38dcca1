use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use lietrace_bench::algebra;
use lietrace_core::matreal::{basis, structure_constants, verify_algebra, MatrixFamily};
use lietrace_core::spectral::{all_projectors, default_spectrum_table};
use lietrace_core::{square_split, weight_system, AlgebraId, RepKind, TraceContext, Weight};

fn representations(c: &mut Criterion) {
    let e6 = algebra("e6");
    c.bench_function("weight system e6 adjoint", |b| b.iter(|| weight_system(&e6, &e6.adjoint()).unwrap()));
    let f4 = algebra("f4");
    c.bench_function("adjoint square split f4", |b| b.iter(|| square_split(&f4, &f4.adjoint()).unwrap()));
    let b4 = algebra("b4");
    let w = Weight(vec![1, 0, 0, 1]);
    c.bench_function("weight system b4 (1,0,0,1)", |b| b.iter(|| weight_system(&b4, black_box(&w)).unwrap()));
}

fn traces(c: &mut Criterion) {
    let mut g = c.benchmark_group("traces");
    g.sample_size(10);
    let a4 = algebra("a4");
    g.bench_function("a4 adjoint self relation degree 12", |b| {
        b.iter_batched(|| TraceContext::new(&a4).unwrap(), |ctx| ctx.self_relation_adjoint(12).unwrap(), BatchSize::PerIteration)
    });
    let e6 = algebra("e6");
    g.bench_function("e6 adjoint power sums to degree 13", |b| {
        b.iter_batched(
            || TraceContext::new(&e6).unwrap(),
            |ctx| (2..=13).map(|k| ctx.power_sum(RepKind::Adjoint, k).unwrap().len()).sum::<usize>(),
            BatchSize::PerIteration,
        )
    });
    let f4 = algebra("f4");
    g.bench_function("f4 defining relation degree 10", |b| {
        b.iter_batched(|| TraceContext::new(&f4).unwrap(), |ctx| ctx.defining_relation(10).unwrap(), BatchSize::PerIteration)
    });
    g.finish();
}

fn spectral(c: &mut Criterion) {
    let e6 = algebra("e6");
    c.bench_function("e6 spectrum and projectors", |b| {
        b.iter(|| {
            let t = default_spectrum_table(&e6).unwrap();
            all_projectors(&t).unwrap().len()
        })
    });
}

fn matrices(c: &mut Criterion) {
    let mut g = c.benchmark_group("matrices");
    g.sample_size(10);
    g.bench_function("su5 structure constants", |b| {
        b.iter(|| structure_constants(&basis(MatrixFamily::SU, 5).unwrap()))
    });
    let so7 = AlgebraId::parse("so7").unwrap();
    g.bench_function("so7 full numeric verification", |b| b.iter(|| verify_algebra(so7, 1e-9).unwrap().passed));
    g.finish();
}

criterion_group!(benches, representations, traces, spectral, matrices);
criterion_main!(benches);
