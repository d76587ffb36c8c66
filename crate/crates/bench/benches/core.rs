use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigUint;
use ordertype::canonise::canonise_family;
use ordertype::cantorlex::{b_decode, Alpha};
use ordertype::classifier::{beta, classify};
use ordertype::colourings::{ColouringName, KappaSetColouring};
use ordertype::corpus;
use ordertype::ordertype::{normalize, parse_type};
use ordertype::ordinal::parse_ordinal;

fn classifier(c: &mut Criterion) {
    let exprs = ["w^2 + w~ + w*3", "(w^w + w)~ + w^3 + zeta", "w * w~", "eta + w"];
    let parsed: Vec<_> = exprs.iter().map(|e| parse_type(e).unwrap()).collect();
    c.bench_function("classify", |b| {
        b.iter(|| parsed.iter().map(|e| classify(black_box(e)).unwrap().class_index).sum::<u8>())
    });
    let form = normalize(&parse_type("w^3 + w~*2 + w + (w^2)~ + w^w").unwrap()).form.unwrap();
    c.bench_function("beta", |b| b.iter(|| beta(black_box(&form)).unwrap()));
}

fn bijection(c: &mut Criterion) {
    let alpha = Alpha::new(parse_ordinal("w^2+w").unwrap()).unwrap();
    c.bench_function("b_decode 1000", |b| {
        b.iter(|| {
            for n in 0u32..1000 {
                black_box(b_decode(&alpha, &BigUint::from(n)).unwrap());
            }
        })
    });
}

fn colourings(c: &mut Criterion) {
    let entries = corpus::bundled().unwrap();
    let oracle = KappaSetColouring::parity();
    c.bench_function("colour corpus", |b| {
        b.iter(|| {
            entries
                .iter()
                .flat_map(|e| ColouringName::ALL.map(|n| n.colour(&e.subject, &oracle).is_ok()))
                .filter(|ok| *ok)
                .count()
        })
    });
    let families: Vec<_> = entries.iter().filter_map(|e| e.subject.family().cloned()).collect();
    c.bench_function("canonise corpus", |b| b.iter(|| families.iter().filter(|a| canonise_family(a).is_ok()).count()));
}

criterion_group!(benches, classifier, bijection, colourings);
criterion_main!(benches);
