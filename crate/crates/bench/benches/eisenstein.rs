use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use quadcusp::cusp_constants;
use quadcusp::eisenstein;
use quadcusp::hecke_phi;
use quadcusp::{EisTriple, Level, QuadraticCharacter};
use quadcusp_bench::triples_up_to;

fn qexp(c: &mut Criterion) {
    let t = EisTriple::new(Level::new(210, 15).unwrap(), 210, 15, 15).unwrap();
    c.bench_function("qexp_closed 210/15 N=200", |b| {
        b.iter(|| eisenstein::qexp_closed(black_box(&t), 200))
    });
    c.bench_function("qexp_operator 210/15 N=200", |b| {
        b.iter(|| eisenstein::qexp_operator(black_box(&t), 200).unwrap())
    });
}

fn constants(c: &mut Criterion) {
    let triples = triples_up_to(100);
    c.bench_function("rho_recursive_all DC<=100", |b| {
        b.iter(|| {
            for t in &triples {
                black_box(cusp_constants::rho_recursive_all(t).unwrap());
            }
        })
    });
}

fn echi(c: &mut Criterion) {
    let chi = QuadraticCharacter::new(15).unwrap();
    c.bench_function("verify_echi_definition f=15 N=8", |b| {
        b.iter(|| hecke_phi::verify_echi_definition(black_box(&chi), 8).unwrap())
    });
}

criterion_group!(benches, qexp, constants, echi);
criterion_main!(benches);
