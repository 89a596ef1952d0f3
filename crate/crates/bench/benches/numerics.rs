use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use zygmund_core::explorer::{maximize_ratio, SearchConfig};
use zygmund_core::families::{sample_zeros_outside, FamilySpec, Side};
use zygmund_core::inequalities::{run_check, CheckInput, CheckName, InequalityParams, QuadConfig};
use zygmund_core::quad::{cp_constant, lp_norm, sup_norm, NormConvention, PExponent, QuadratureSpec};
use zygmund_core::Polynomial;

fn fixture(n: usize) -> Polynomial {
    let spec = FamilySpec::new(n, 0.5, 1, Side::ZerosOutsideOpenDisk).unwrap();
    sample_zeros_outside(&spec, 1, 42).unwrap().polynomials.remove(0)
}

fn norms(c: &mut Criterion) {
    let p = fixture(8);
    let spec = QuadratureSpec::default();
    c.bench_function("lp_norm p=3 n=8", |b| {
        b.iter(|| lp_norm(black_box(&p), PExponent::Finite(3.0), NormConvention::Mean, &spec).unwrap())
    });
    c.bench_function("sup_norm n=8", |b| b.iter(|| sup_norm(black_box(&p), &spec).unwrap()));
    c.bench_function("cp_constant p=3", |b| b.iter(|| cp_constant(black_box(PExponent::Finite(3.0))).unwrap()));
}

fn roots(c: &mut Criterion) {
    for n in [4, 12] {
        let p = fixture(n);
        c.bench_function(&format!("roots n={n}"), |b| b.iter(|| black_box(&p).roots().unwrap()));
    }
}

fn checks(c: &mut Criterion) {
    let p = fixture(6);
    let input = CheckInput {
        poly: p,
        majorant: None,
        params: InequalityParams {
            alpha: Some(Complex64::new(2.0, 0.5)),
            beta: Some(Complex64::new(0.3, 0.0)),
            p: Some(PExponent::Finite(2.0)),
            k: Some(0.5),
            mu: Some(1),
        },
    };
    let quad = QuadConfig::default();
    c.bench_function("theorem-c check n=6", |b| {
        b.iter(|| run_check(CheckName::TheoremC, black_box(&input), &quad).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let spec = FamilySpec::new(3, 1.0, 1, Side::Unrestricted).unwrap();
    let fixed = InequalityParams { p: Some(PExponent::Finite(2.0)), ..Default::default() };
    let config = SearchConfig { multistarts: 2, max_iter: 80, ..Default::default() };
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("zygmund n=3", |b| {
        b.iter(|| maximize_ratio(CheckName::Zygmund, &spec, &fixed, black_box(&config)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, norms, roots, checks, search);
criterion_main!(benches);
