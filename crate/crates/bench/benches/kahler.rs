use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qkahler::fiber::basis_degree;
use qkahler::hodge::{certify_posdef, gram, hodge, metric};
use qkahler::lefschetz::{lefschetz_pow, operator_matrix};
use qkahler::scalar::parse_sample_point;
use qkahler::sl2::verify_lefschetz_identities;
use qkahler::su2::laplacian0_cp1;
use qkahler::HodgeMode;
use qkahler_bench::dense_form;

fn wedge(c: &mut Criterion) {
    let u = dense_form(3, 2);
    let v = dense_form(3, 3);
    c.bench_function("wedge n=3 (2-form ^ 3-form)", |b| b.iter(|| black_box(&u).wedge(black_box(&v)).unwrap()));
}

fn lefschetz_rank(c: &mut Criterion) {
    let src = basis_degree(3, 1);
    let tgt = basis_degree(3, 5);
    let m = operator_matrix(3, &src, &tgt, |u| lefschetz_pow(u, 2));
    c.bench_function("rank of L^2: V^1 -> V^5, n=3", |b| b.iter(|| black_box(&m).rank()));
}

fn hodge_and_metric(c: &mut Criterion) {
    let mode = HodgeMode::HEqQ;
    let u = dense_form(3, 3);
    c.bench_function("hodge of a dense 3-form, n=3", |b| b.iter(|| hodge(black_box(&u), &mode).unwrap()));
    c.bench_function("metric of a dense 3-form, n=3", |b| b.iter(|| metric(black_box(&u), &u, &mode).unwrap()));
}

fn posdef(c: &mut Criterion) {
    let block = gram(3, 1, 1, &HodgeMode::HEqQ).unwrap();
    let q0 = parse_sample_point("9/10").unwrap();
    c.bench_function("LDL certificate, n=3 (1,1)", |b| b.iter(|| certify_posdef(black_box(&block), &q0).unwrap()));
}

fn identities(c: &mut Criterion) {
    let mode = HodgeMode::HEqQ;
    verify_lefschetz_identities(3, &mode).unwrap();
    c.bench_function("Lefschetz identities, n=3 (cached operators)", |b| {
        b.iter(|| verify_lefschetz_identities(black_box(3), &mode).unwrap())
    });
}

fn laplacian(c: &mut Criterion) {
    c.bench_function("CP^1 Laplacian of z12", |b| b.iter(|| laplacian0_cp1(black_box(1), 2)));
}

criterion_group!(benches, wedge, lefschetz_rank, hodge_and_metric, posdef, identities, laplacian);
criterion_main!(benches);
