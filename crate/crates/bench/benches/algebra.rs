use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qcoinv::exactnum::EvalPoint;
use qcoinv::qhopf::{antipode, comultiply, quantum_det, GLElement};
use qcoinv_bench::{conjugation, dense_element, interior, matrix};

fn multiplication(c: &mut Criterion) {
    let mut g = c.benchmark_group("mul");
    for size in [2, 3] {
        let a = matrix(size, size);
        let f = dense_element(&a, 2);
        g.bench_with_input(BenchmarkId::new("deg2xdeg2", size), &f, |b, f| b.iter(|| f.mul(f).unwrap()));
    }
    g.finish();
}

fn hopf(c: &mut Criterion) {
    let a = matrix(3, 3);
    c.bench_function("quantum_det_3", |b| b.iter(|| quantum_det(&a).unwrap()));
    let det = quantum_det(&a).unwrap();
    c.bench_function("comultiply_det_3", |b| b.iter(|| comultiply(&det).unwrap()));
    let f = GLElement::from_poly(dense_element(&matrix(2, 2), 2));
    c.bench_function("antipode_deg2", |b| b.iter(|| antipode(&f).unwrap()));
}

fn coinvariants(c: &mut Criterion) {
    let mut g = c.benchmark_group("psi");
    g.sample_size(10);
    let conj = conjugation(2);
    g.bench_function("conjugation_2_d3", |b| b.iter(|| conj.psi_matrix(3).unwrap()));
    let int = interior(2, 2, 1);
    g.bench_function("interior_221_e4", |b| b.iter(|| int.psi_matrix(4).unwrap()));
    let psi = conj.psi_matrix(3).unwrap();
    g.bench_function("rank_generic", |b| b.iter(|| psi.rank(&EvalPoint::Generic).unwrap()));
    g.bench_function("rank_q1", |b| b.iter(|| psi.rank(&EvalPoint::q1()).unwrap()));
    g.finish();
}

criterion_group!(benches, multiplication, hopf, coinvariants);
criterion_main!(benches);
