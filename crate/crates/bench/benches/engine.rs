use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use catca::alphabet::{power, Elem, Instance, Morphism, Object};
use catca::ca::{CellularAutomaton, Configuration, LocalRule};
use catca::check::{chl_extract, Sampler};
use catca::group::{FiniteSubset, Group, GroupElem};

fn rule110() -> CellularAutomaton {
    let z = Group::z_power(1);
    let a = Object::finset(2);
    let s = FiniteSubset::new(
        z,
        vec![
            GroupElem::Vector(vec![-1]),
            GroupElem::Vector(vec![0]),
            GroupElem::Vector(vec![1]),
        ],
    )
    .unwrap();
    let table: Vec<usize> = (0..8).map(|code| (110 >> code & 1) as usize).collect();
    let mu = Morphism::finset_table(power(&a, 3).carrier().clone(), a.clone(), table).unwrap();
    CellularAutomaton::new(LocalRule::new(a.clone(), a, s, mu).unwrap())
}

fn bench_apply(c: &mut Criterion) {
    let ca = rule110();
    c.bench_function("rule110_64_steps_window_64", |b| {
        b.iter(|| {
            let mut config = Configuration::sparse(
                ca.universe().clone(),
                ca.rule().source_alphabet().clone(),
                Elem::Index(0),
                vec![(GroupElem::Vector(vec![0]), Elem::Index(1))],
            )
            .unwrap();
            for _ in 0..64 {
                config = ca.apply(&config).unwrap();
            }
            for x in -64..=64i64 {
                black_box(config.get(&GroupElem::Vector(vec![x])).unwrap());
            }
        })
    });
}

fn bench_realize(c: &mut Criterion) {
    let mut sampler = Sampler::new(404);
    let group = Group::cyclic(6);
    let cases: Vec<CellularAutomaton> = (0..8)
        .map(|_| sampler.ca(&group, Instance::FinSet, 3, 2))
        .collect();
    c.bench_function("realize_finset_z6", |b| {
        b.iter(|| {
            for ca in &cases {
                black_box(ca.realize().unwrap());
            }
        })
    });
}

fn bench_compose(c: &mut Criterion) {
    let mut sampler = Sampler::new(808);
    let group = Group::symmetric(3);
    let inner = sampler.ca(&group, Instance::FinVect { p: 3 }, 2, 2);
    let mid = inner.rule().target_alphabet().clone();
    let out = sampler.object(Instance::FinVect { p: 3 }, 2);
    let outer = sampler.ca_between(&group, &mid, &out, 2);
    c.bench_function("compose_and_realize_finvect_s3", |b| {
        b.iter(|| {
            let composed = CellularAutomaton::compose(&outer, &inner).unwrap();
            black_box(composed.realize().unwrap());
        })
    });
}

fn bench_extract(c: &mut Criterion) {
    let mut sampler = Sampler::new(909);
    let group = Group::cyclic(6);
    let ca = sampler.ca(&group, Instance::FinSet, 3, 2);
    let f = ca.realize().unwrap();
    let a = ca.rule().source_alphabet().clone();
    let b = ca.rule().target_alphabet().clone();
    c.bench_function("chl_extract_finset_z6", |bch| {
        bch.iter(|| black_box(chl_extract(&group, &a, &b, &f).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_apply,
    bench_realize,
    bench_compose,
    bench_extract
);
criterion_main!(benches);
