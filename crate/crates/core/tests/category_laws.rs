//! Exhaustive small-size checks of the product machinery: defining
//! projection equations, uniqueness of mediating morphisms, functor laws,
//! and element-layer consistency.

use catca::alphabet::{
    index_pullback, pair, power, product, pushforward, restriction, tuple, Instance, Morphism,
    Object,
};
use catca::check::Sampler;

fn small_objects(instance: Instance) -> Vec<Object> {
    match instance {
        Instance::FinSet => (1..=3).map(Object::finset).collect(),
        Instance::FinVect { p } => (0..=2).map(|d| Object::finvect(p, d).unwrap()).collect(),
        Instance::FinPoset => vec![
            Object::chain(1),
            Object::chain(2),
            Object::chain(3),
            // The two-element antichain.
            Object::finposet(2, vec![vec![true, false], vec![false, true]]).unwrap(),
        ],
        Instance::Rel => (1..=3).map(Object::rel).collect(),
    }
}

fn all_instances() -> Vec<Instance> {
    vec![
        Instance::FinSet,
        Instance::FinVect { p: 2 },
        Instance::FinPoset,
        Instance::Rel,
    ]
}

/// All morphisms between two small objects, by direct enumeration.
fn all_morphisms(source: &Object, target: &Object) -> Vec<Morphism> {
    match source.instance() {
        Instance::FinSet | Instance::FinPoset => {
            let (ns, nt) = (rep(source), rep(target));
            let mut out = Vec::new();
            for code in 0..nt.pow(ns as u32) {
                let mut table = Vec::with_capacity(ns);
                let mut rest = code;
                for _ in 0..ns {
                    table.push(rest % nt);
                    rest /= nt;
                }
                let m = match source.instance() {
                    Instance::FinSet => {
                        Morphism::finset_table(source.clone(), target.clone(), table).ok()
                    }
                    _ => Morphism::finposet_table(source.clone(), target.clone(), table).ok(),
                };
                if let Some(m) = m {
                    out.push(m);
                }
            }
            out
        }
        Instance::FinVect { p } => {
            let entries = rep(source) * rep(target);
            (0..(p as usize).pow(entries as u32))
                .map(|code| {
                    let mut rest = code;
                    let rows = (0..rep(target))
                        .map(|_| {
                            (0..rep(source))
                                .map(|_| {
                                    let e = (rest % p as usize) as u64;
                                    rest /= p as usize;
                                    e
                                })
                                .collect()
                        })
                        .collect();
                    Morphism::finvect_matrix(source.clone(), target.clone(), rows).unwrap()
                })
                .collect()
        }
        Instance::Rel => {
            let entries = rep(source) * rep(target);
            let cols = rep(target);
            (0..(1usize << entries))
                .map(|mask| {
                    let pairs: Vec<(usize, usize)> = (0..entries)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| (i / cols, i % cols))
                        .collect();
                    Morphism::rel_pairs(source.clone(), target.clone(), &pairs).unwrap()
                })
                .collect()
        }
    }
}

fn rep(o: &Object) -> usize {
    match o {
        Object::FinSet { size } | Object::FinPoset { size, .. } | Object::Rel { size } => *size,
        Object::FinVect { dim, .. } => *dim,
    }
}

#[test]
fn binary_product_universal_property_with_uniqueness() {
    for instance in all_instances() {
        // Keep the candidate space small enough for full enumeration.
        let objects: Vec<Object> = small_objects(instance)
            .into_iter()
            .filter(|o| rep(o) <= 2 || !matches!(instance, Instance::Rel))
            .collect();
        for x in &objects {
            for a in &objects {
                for b in &objects {
                    let (carrier, pa, pb) = product(a, b).unwrap();
                    if rep(&carrier).pow(rep(x) as u32) > 1 << 14 {
                        continue;
                    }
                    for f in all_morphisms(x, a) {
                        for g in all_morphisms(x, b) {
                            let h = pair(&f, &g).unwrap();
                            assert!(pa.compose(&h).unwrap().equal(&f).unwrap());
                            assert!(pb.compose(&h).unwrap().equal(&g).unwrap());
                            let satisfying: Vec<Morphism> = all_morphisms(x, &carrier)
                                .into_iter()
                                .filter(|cand| {
                                    pa.compose(cand).unwrap().equal(&f).unwrap()
                                        && pb.compose(cand).unwrap().equal(&g).unwrap()
                                })
                                .collect();
                            assert_eq!(satisfying, vec![h]);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn restriction_pullback_pushforward_satisfy_projection_equations() {
    for instance in all_instances() {
        let mut s = Sampler::new(11);
        for _ in 0..30 {
            let a = s.object(instance, 3);
            let arity = 1 + s.index(3);
            let pow = power(&a, arity);
            // Restriction: keeping every other position.
            let keep: Vec<usize> = (0..arity).step_by(2).collect();
            let res = restriction(&a, arity, &keep).unwrap();
            let small = power(&a, keep.len());
            for (i, &k) in keep.iter().enumerate() {
                assert!(small
                    .projection(i)
                    .compose(&res)
                    .unwrap()
                    .equal(&pow.projection(k))
                    .unwrap());
            }
            // Pullback of an arbitrary index map.
            let map: Vec<usize> = (0..2).map(|_| s.index(arity)).collect();
            let pulled = index_pullback(&a, arity, &map).unwrap();
            let to = power(&a, map.len());
            for (i, &j) in map.iter().enumerate() {
                assert!(to
                    .projection(i)
                    .compose(&pulled)
                    .unwrap()
                    .equal(&pow.projection(j))
                    .unwrap());
            }
            // Pushforward commutes with projections.
            let b = s.object(instance, 3);
            let f = s.morphism(&a, &b);
            let pushed = pushforward(&f, arity);
            let pow_b = power(&b, arity);
            for i in 0..arity {
                assert!(pow_b
                    .projection(i)
                    .compose(&pushed)
                    .unwrap()
                    .equal(&f.compose(&pow.projection(i)).unwrap())
                    .unwrap());
            }
        }
    }
}

#[test]
fn tuple_satisfies_its_projection_equations_for_all_indices() {
    for instance in all_instances() {
        let mut s = Sampler::new(5);
        for _ in 0..30 {
            let a = s.object(instance, 3);
            let x = s.object(instance, 3);
            let n = s.index(4);
            let members: Vec<Morphism> = (0..n).map(|_| s.morphism(&x, &a)).collect();
            let t = tuple(&a, &x, &members).unwrap();
            let pow = power(&a, n);
            for (i, member) in members.iter().enumerate() {
                assert!(pow
                    .projection(i)
                    .compose(&t)
                    .unwrap()
                    .equal(member)
                    .unwrap());
            }
        }
    }
}

#[test]
fn poset_power_carrier_has_componentwise_order() {
    let a = Object::chain(2);
    let pow = power(&a, 3);
    let carrier = pow.carrier();
    for x in 0..8usize {
        for y in 0..8usize {
            let componentwise = (0..3).all(|i| {
                let dx = x >> (2 - i) & 1;
                let dy = y >> (2 - i) & 1;
                dx <= dy
            });
            assert_eq!(carrier.leq(x, y), componentwise, "at ({x},{y})");
        }
    }
}

#[test]
fn element_layer_is_consistent_with_composition() {
    for instance in [
        Instance::FinSet,
        Instance::FinVect { p: 3 },
        Instance::FinPoset,
    ] {
        let mut s = Sampler::new(23);
        for _ in 0..50 {
            let a = s.object(instance, 4);
            let b = s.object(instance, 4);
            let c = s.object(instance, 4);
            let f = s.morphism(&a, &b);
            let g = s.morphism(&b, &c);
            let gf = g.compose(&f).unwrap();
            for x in a.enumerate_elems().unwrap() {
                assert_eq!(
                    gf.apply(&x).unwrap(),
                    g.apply(&f.apply(&x).unwrap()).unwrap()
                );
            }
        }
    }
}

#[test]
fn rel_product_carrier_is_disjoint_union_size() {
    let (c, _, _) = product(&Object::rel(2), &Object::rel(3)).unwrap();
    assert_eq!(rep(&c), 5);
}

#[test]
fn identity_and_composition_functor_laws_for_pullback() {
    for instance in all_instances() {
        let mut s = Sampler::new(17);
        let a = s.object(instance, 3);
        for arity in 0..3usize {
            let idx: Vec<usize> = (0..arity).collect();
            assert!(index_pullback(&a, arity, &idx)
                .unwrap()
                .equal(&Morphism::identity(power(&a, arity).carrier()))
                .unwrap());
        }
    }
}
