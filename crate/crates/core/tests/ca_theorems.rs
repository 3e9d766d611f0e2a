//! Automaton-level behavior against independent oracles: the defining
//! projection equations, shift semantics, composition, products, and the
//! classical elementary rules 90 and 110 over the integers.

use catca::alphabet::{power, Elem, Instance, Morphism, Object};
use catca::ca::{
    restriction_from_group, shift_morphism, CellularAutomaton, Configuration, LocalRule,
};
use catca::check::Sampler;
use catca::group::{FiniteSubset, Group, GroupElem};

fn z_elem(x: i64) -> GroupElem {
    GroupElem::Vector(vec![x])
}

/// An elementary rule as an automaton over the integers: neighborhood
/// {-1, 0, 1}, table indexed by (left, center, right) as binary digits.
fn elementary(rule: u8) -> CellularAutomaton {
    let z = Group::z_power(1);
    let a = Object::finset(2);
    let s = FiniteSubset::new(z, vec![z_elem(-1), z_elem(0), z_elem(1)]).unwrap();
    let table: Vec<usize> = (0..8).map(|code| (rule >> code & 1) as usize).collect();
    let mu = Morphism::finset_table(power(&a, 3).carrier().clone(), a.clone(), table).unwrap();
    CellularAutomaton::new(LocalRule::new(a.clone(), a, s, mu).unwrap())
}

fn single_one() -> Configuration {
    Configuration::sparse(
        Group::z_power(1),
        Object::finset(2),
        Elem::Index(0),
        vec![(z_elem(0), Elem::Index(1))],
    )
    .unwrap()
}

fn read_window(c: &Configuration, lo: i64, hi: i64) -> Vec<usize> {
    (lo..=hi)
        .map(|x| match c.get(&z_elem(x)).unwrap() {
            Elem::Index(i) => i,
            _ => panic!("finset values"),
        })
        .collect()
}

/// Direct array simulator for elementary rules, zero-padded widely enough
/// that the boundary never reaches the compared window.
fn simulate_elementary(rule: u8, steps: usize, window: i64) -> Vec<Vec<usize>> {
    let margin = steps as i64 + window + 2;
    let width = (2 * margin + 1) as usize;
    let origin = margin;
    let mut cells = vec![0usize; width];
    cells[origin as usize] = 1;
    let mut frames = Vec::new();
    let snapshot = |cells: &[usize]| -> Vec<usize> {
        ((origin - window)..=(origin + window))
            .map(|i| cells[i as usize])
            .collect()
    };
    frames.push(snapshot(&cells));
    for _ in 0..steps {
        let mut next = vec![0usize; width];
        for i in 1..width - 1 {
            let code = cells[i - 1] << 2 | cells[i] << 1 | cells[i + 1];
            next[i] = (rule >> code & 1) as usize;
        }
        cells = next;
        frames.push(snapshot(&cells));
    }
    frames
}

#[test]
fn rule_110_matches_direct_simulation_for_sixteen_steps() {
    let ca = elementary(110);
    let frames = simulate_elementary(110, 16, 20);
    let mut config = single_one();
    for frame in frames {
        assert_eq!(read_window(&config, -20, 20), frame);
        config = ca.apply(&config).unwrap();
    }
}

#[test]
fn rule_90_is_parity_of_pascals_triangle() {
    // Independent oracle: binomial(t, k) is odd iff k's bits sit inside t's.
    let odd_binomial = |t: i64, k: i64| k & t == k;
    let ca = elementary(90);
    let mut config = single_one();
    for t in 0..32i64 {
        for x in -33..=33i64 {
            let expected = if (x + t) % 2 == 0 && x.abs() <= t && odd_binomial(t, (x + t) / 2) {
                1
            } else {
                0
            };
            assert_eq!(
                read_window(&config, x, x)[0],
                expected,
                "row {t}, column {x}"
            );
        }
        config = ca.apply(&config).unwrap();
    }
}

#[test]
fn linear_rule_90_agrees_with_its_finset_twin() {
    // The same rule expressed as a 1×2 matrix over F_2.
    let z = Group::z_power(1);
    let a = Object::finvect(2, 1).unwrap();
    let s = FiniteSubset::new(z.clone(), vec![z_elem(-1), z_elem(1)]).unwrap();
    let mu = Morphism::finvect_matrix(power(&a, 2).carrier().clone(), a.clone(), vec![vec![1, 1]])
        .unwrap();
    let linear = CellularAutomaton::new(LocalRule::new(a.clone(), a.clone(), s, mu).unwrap());
    let mut vect_config = Configuration::sparse(
        z,
        a,
        Elem::Vector(vec![0]),
        vec![(z_elem(0), Elem::Vector(vec![1]))],
    )
    .unwrap();
    let finset = elementary(90);
    let mut finset_config = single_one();
    for _ in 0..8 {
        vect_config = linear.apply(&vect_config).unwrap();
        finset_config = finset.apply(&finset_config).unwrap();
        for x in -10..=10 {
            let v = match vect_config.get(&z_elem(x)).unwrap() {
                Elem::Vector(v) => v[0] as usize,
                _ => panic!(),
            };
            assert_eq!(v, read_window(&finset_config, x, x)[0]);
        }
    }
}

#[test]
fn defining_equation_holds_for_every_cell() {
    // π_g ∘ realize(τ) = μ ∘ Res_S ∘ shift_g, exactly, for every g, in all
    // four instances.
    for instance in [
        Instance::FinSet,
        Instance::FinVect { p: 2 },
        Instance::FinPoset,
        Instance::Rel,
    ] {
        let mut sampler = Sampler::new(31);
        for group in [Group::cyclic(4), Group::symmetric(3)] {
            for _ in 0..10 {
                let tau = sampler.ca(&group, instance, 3, 2);
                let realized = tau.realize().unwrap();
                let a = tau.rule().source_alphabet();
                let b = tau.rule().target_alphabet();
                let order = group.order().unwrap();
                let pow_b = power(b, order);
                let res = restriction_from_group(&group, a, tau.rule().neighborhood()).unwrap();
                for (i, g) in group.elements().unwrap().iter().enumerate() {
                    let lhs = pow_b.projection(i).compose(&realized).unwrap();
                    let rhs = tau
                        .rule()
                        .morphism()
                        .compose(&res)
                        .unwrap()
                        .compose(&shift_morphism(&group, a, g).unwrap())
                        .unwrap();
                    assert!(lhs.equal(&rhs).unwrap(), "{instance:?} at cell {g}");
                }
            }
        }
    }
}

#[test]
fn shift_semantics_are_exhaustive_on_finite_groups() {
    let group = Group::cyclic(6);
    let a = Object::finset(3);
    let mut sampler = Sampler::new(13);
    for _ in 0..5 {
        let c = sampler.config(&group, &a);
        for g in group.elements().unwrap() {
            let shifted = CellularAutomaton::shift(&group, &a, g.clone())
                .unwrap()
                .apply(&c)
                .unwrap();
            for x in group.elements().unwrap() {
                // A cell reads the cell at gx; over an abelian group this is
                // the translate by g.
                let gx = group.op(&g, &x).unwrap();
                assert_eq!(shifted.get(&x).unwrap(), c.get(&gx).unwrap());
            }
        }
    }
}

#[test]
fn composition_agrees_with_sequential_application_on_random_configs() {
    let z = Group::z_power(1);
    let ball = z.ball(3);
    for instance in [
        Instance::FinSet,
        Instance::FinVect { p: 3 },
        Instance::FinPoset,
    ] {
        let mut sampler = Sampler::new(41);
        for _ in 0..25 {
            let inner = sampler.ca(&z, instance, 3, 2);
            let mid = inner.rule().target_alphabet().clone();
            let out = sampler.object(instance, 3);
            let outer = sampler.ca_between(&z, &mid, &out, 2);
            let composed = CellularAutomaton::compose(&outer, &inner).unwrap();
            let c = sampler.config(&z, inner.rule().source_alphabet());
            let direct = composed.apply(&c).unwrap();
            let sequential = outer.apply(&inner.apply(&c).unwrap()).unwrap();
            assert!(direct.agrees_on(&sequential, &ball).unwrap());
        }
    }
}

#[test]
fn composed_rule_90_gives_the_two_step_pattern() {
    let ca = elementary(90);
    let two_step = CellularAutomaton::compose(&ca, &ca).unwrap();
    // Constructed neighborhood is the full product set, unminimized.
    let expected: Vec<GroupElem> = [-2, -1, 0, 1, 2].into_iter().map(z_elem).collect();
    assert_eq!(two_step.rule().neighborhood().elements(), &expected[..]);
    let out = two_step.apply(&single_one()).unwrap();
    assert_eq!(read_window(&out, -2, 2), vec![1, 0, 0, 0, 1]);
    // Minimization is a separate, observable step: twice rule 90 is the
    // parity of the cells at ±2 alone (the middle binomial is even).
    let essential = catca::check::essential_positions(
        two_step.rule().morphism(),
        two_step.rule().source_alphabet(),
        5,
    )
    .unwrap();
    assert_eq!(essential, vec![0, 4]);
}

#[test]
fn majority_rule_on_a_chain_is_monotone_and_valid() {
    let group = Group::cyclic(5);
    let chain = Object::chain(2);
    let s = FiniteSubset::new(
        group.clone(),
        vec![GroupElem::Id(4), GroupElem::Id(0), GroupElem::Id(1)],
    )
    .unwrap();
    // Exhaustive majority table over the eight inputs; the monotonicity
    // validator accepts it.
    let table: Vec<usize> = (0..8)
        .map(|code: usize| usize::from(code.count_ones() >= 2))
        .collect();
    let mu =
        Morphism::finposet_table(power(&chain, 3).carrier().clone(), chain.clone(), table).unwrap();
    let ca = CellularAutomaton::new(LocalRule::new(chain.clone(), chain.clone(), s, mu).unwrap());
    // A lone zero flips under majority.
    let values = vec![
        Elem::Index(1),
        Elem::Index(0),
        Elem::Index(1),
        Elem::Index(1),
        Elem::Index(1),
    ];
    let config = Configuration::dense(group.clone(), chain, values).unwrap();
    let out = ca.apply(&config).unwrap();
    for g in group.elements().unwrap() {
        assert_eq!(out.get(&g).unwrap(), Elem::Index(1));
    }
}

#[test]
fn empty_neighborhood_gives_a_constant_automaton() {
    // A rule over the empty window reads nothing; every output cell is the
    // rule's value on the one-point carrier.
    let z = Group::z_power(1);
    let a = Object::finset(3);
    let empty = FiniteSubset::new(z.clone(), vec![]).unwrap();
    let mu = Morphism::finset_table(power(&a, 0).carrier().clone(), a.clone(), vec![2]).unwrap();
    let ca = CellularAutomaton::new(LocalRule::new(a.clone(), a.clone(), empty, mu).unwrap());
    let mut sampler = Sampler::new(14);
    let c = sampler.config(&z, &a);
    let out = ca.apply(&c).unwrap();
    for x in -3..=3i64 {
        assert_eq!(out.get(&z_elem(x)).unwrap(), Elem::Index(2));
    }
    // Realization over a finite group is the constant morphism; composing
    // with anything on the right leaves it constant.
    let z4 = Group::cyclic(4);
    let empty4 = FiniteSubset::new(z4.clone(), vec![]).unwrap();
    let mu4 = Morphism::finset_table(power(&a, 0).carrier().clone(), a.clone(), vec![2]).unwrap();
    let const4 = CellularAutomaton::new(LocalRule::new(a.clone(), a, empty4, mu4).unwrap());
    let realized = const4.realize().unwrap();
    let shifted =
        CellularAutomaton::shift(&z4, const4.rule().source_alphabet(), GroupElem::Id(1)).unwrap();
    let composed = CellularAutomaton::compose(&const4, &shifted).unwrap();
    assert!(composed.rule().neighborhood().is_empty());
    assert!(composed.realize().unwrap().equal(&realized).unwrap());
}

#[test]
fn pointwise_equivariance_on_the_ball_over_the_integers() {
    let report = catca::check::equivariance_on_ball(&elementary(110), 2, 10, 5).unwrap();
    assert!(report.passed());
    // The ball mode needs an element layer.
    let rel_ca = CellularAutomaton::identity(&Group::cyclic(2), &Object::rel(2));
    assert!(catca::check::equivariance_on_ball(&rel_ca, 2, 1, 5).is_err());
}

#[test]
fn product_projections_recover_the_legs_pointwise() {
    let group = Group::cyclic(3);
    let a = Object::finset(2);
    // Two shifts out of the same source.
    let alpha = CellularAutomaton::shift(&group, &a, GroupElem::Id(1)).unwrap();
    let beta = CellularAutomaton::shift(&group, &a, GroupElem::Id(2)).unwrap();
    let (tau, pa, pb) = CellularAutomaton::product(&alpha, &beta).unwrap();
    let mut sampler = Sampler::new(3);
    for _ in 0..20 {
        let c = sampler.config(&group, &a);
        let paired = tau.apply(&c).unwrap();
        let left = pa.apply(&paired).unwrap();
        let right = pb.apply(&paired).unwrap();
        let alpha_out = alpha.apply(&c).unwrap();
        let beta_out = beta.apply(&c).unwrap();
        for g in group.elements().unwrap() {
            assert_eq!(left.get(&g).unwrap(), alpha_out.get(&g).unwrap());
            assert_eq!(right.get(&g).unwrap(), beta_out.get(&g).unwrap());
        }
    }
    // The realized diagram commutes exactly.
    assert!(pa
        .realize()
        .unwrap()
        .compose(&tau.realize().unwrap())
        .unwrap()
        .equal(&alpha.realize().unwrap())
        .unwrap());
}

#[test]
fn diagonal_of_identities_projects_back_to_identity() {
    let group = Group::cyclic(4);
    let a = Object::finset(3);
    let id = CellularAutomaton::identity(&group, &a);
    let (diag, pa, _) = CellularAutomaton::product(&id, &id).unwrap();
    let composed = CellularAutomaton::compose(&pa, &diag).unwrap();
    assert!(composed
        .realize()
        .unwrap()
        .equal(&id.realize().unwrap())
        .unwrap());
}

#[test]
fn realized_morphism_agrees_with_pointwise_application() {
    // Two routes to the same value: encode a configuration as a point of
    // the configuration carrier and apply the realized morphism, or apply
    // the automaton lazily and read each cell.
    use catca::alphabet::encode_tuple;
    for instance in [
        Instance::FinSet,
        Instance::FinVect { p: 3 },
        Instance::FinPoset,
    ] {
        let mut sampler = Sampler::new(59);
        for group in [Group::cyclic(4), Group::symmetric(3)] {
            let order = group.order().unwrap();
            for _ in 0..10 {
                let tau = sampler.ca(&group, instance, 3, 2);
                let a = tau.rule().source_alphabet();
                let b = tau.rule().target_alphabet();
                let realized = tau.realize().unwrap();
                let c = sampler.config(&group, a);
                let packed = encode_tuple(
                    a,
                    &group
                        .elements()
                        .unwrap()
                        .iter()
                        .map(|g| c.get(g).unwrap())
                        .collect::<Vec<_>>(),
                )
                .unwrap();
                let image = realized.apply(&packed).unwrap();
                let out = tau.apply(&c).unwrap();
                let expected = encode_tuple(
                    b,
                    &group
                        .elements()
                        .unwrap()
                        .iter()
                        .map(|g| out.get(g).unwrap())
                        .collect::<Vec<_>>(),
                )
                .unwrap();
                assert_eq!(image, expected, "{instance:?} over order {order}");
            }
        }
    }
}

#[test]
fn rel_participates_at_morphism_level_over_finite_groups() {
    let group = Group::cyclic(3);
    let mut sampler = Sampler::new(77);
    for _ in 0..10 {
        let inner = sampler.ca(&group, Instance::Rel, 3, 2);
        let mid = inner.rule().target_alphabet().clone();
        let out = sampler.object(Instance::Rel, 3);
        let outer = sampler.ca_between(&group, &mid, &out, 2);
        let composed = CellularAutomaton::compose(&outer, &inner).unwrap();
        assert!(composed
            .realize()
            .unwrap()
            .equal(
                &outer
                    .realize()
                    .unwrap()
                    .compose(&inner.realize().unwrap())
                    .unwrap()
            )
            .unwrap());
    }
}
