use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use liejet::forms::{exterior_derivative, SForm};
use liejet::motions::Motion;
use liejet::{AlgebraElement, Jet};

fn cjet(len: usize) -> Jet<Complex64> {
    let coeffs: Vec<Complex64> = (0..len)
        .map(|k| Complex64::new(1.0 + 0.3 * (k as f64).sin(), 0.1 * k as f64))
        .collect();
    Jet::new(coeffs, 1).unwrap()
}

fn bench_jets(c: &mut Criterion) {
    let f = cjet(16);
    let g = cjet(16);
    c.bench_function("jet_mul_16", |b| {
        b.iter(|| black_box(&f).mul(black_box(&g)).unwrap())
    });
    c.bench_function("jet_inverse_16", |b| {
        b.iter(|| black_box(&f).inverse().unwrap())
    });
}

fn bench_motions(c: &mut Criterion) {
    let x = AlgebraElement::matrix_from_rows(3, &[0.1, 0.4, -0.2, 0.3, -0.5, 0.7, 0.2, 0.1, -0.3])
        .unwrap();
    let m = Motion::exponential(x, 1.0, 20).unwrap();
    c.bench_function("initial_direction_3x3", |b| {
        b.iter(|| m.initial_direction(black_box(12)).unwrap())
    });
}

fn bench_forms(c: &mut Criterion) {
    let theta = SForm::parse(1, 3, &["z2^2 + z1*z3", "z1*z2", "z3^3 - z1"], true).unwrap();
    c.bench_function("exterior_derivative_1form_r3", |b| {
        b.iter(|| exterior_derivative(black_box(&theta)).unwrap())
    });
}

criterion_group!(benches, bench_jets, bench_motions, bench_forms);
criterion_main!(benches);
