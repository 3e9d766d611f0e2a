//! Curated demonstrations, each writing deterministic artifacts: the two
//! classical elementary rules, cross-universe subsampling, and the weak
//! product walkthrough over a free product of universes.

use serde_json::{json, Value};

use catca::alphabet::{power, Elem, Morphism, Object};
use catca::ca::{CellularAutomaton, Configuration, LocalRule};
use catca::error::{Error, Result};
use catca::gca::{weak_product, weak_product_mediator, GeneralizedCA};
use catca::group::{FiniteSubset, Group, GroupElem, GroupHom, HomRule};
use catca::json::{elem_to_json, group_elem_to_json};

use crate::run::{render_pgm, render_text, simulate, Frames, Machine};

pub const DEMOS: &[&str] = &["rule90", "rule110", "subsample", "weakprod"];

/// Runs a demo and returns its named artifacts.
pub fn cmd_demo(name: &str) -> Result<Vec<(String, Vec<u8>)>> {
    match name {
        "rule90" => rule90(),
        "rule110" => rule110(),
        "subsample" => subsample(),
        "weakprod" => weakprod(),
        _ => Err(Error::Parse(format!("unknown demo `{name}`"))),
    }
}

fn z_elem(x: i64) -> GroupElem {
    GroupElem::Vector(vec![x])
}

fn elementary(rule: u8) -> CellularAutomaton {
    let z = Group::z_power(1);
    let a = Object::finset(2);
    let s = FiniteSubset::new(z, vec![z_elem(-1), z_elem(0), z_elem(1)]).unwrap();
    let table: Vec<usize> = (0..8).map(|code| (rule >> code & 1) as usize).collect();
    let mu = Morphism::finset_table(power(&a, 3).carrier().clone(), a.clone(), table)
        .expect("elementary rule table");
    CellularAutomaton::new(LocalRule::new(a.clone(), a, s, mu).expect("elementary rule"))
}

fn single_one(ca: &CellularAutomaton) -> Configuration {
    Configuration::sparse(
        ca.universe().clone(),
        ca.rule().source_alphabet().clone(),
        Elem::Index(0),
        vec![(z_elem(0), Elem::Index(1))],
    )
    .expect("seed configuration")
}

fn run_elementary(rule: u8, steps: usize, radius: usize) -> Result<Frames> {
    let ca = elementary(rule);
    let config = single_one(&ca);
    let window = ca.universe().ball(radius);
    simulate(
        &Machine::Ca(ca),
        config,
        Some(Elem::Index(0)),
        steps,
        &window,
    )
}

/// 64 rows of rule 90 from a single seed: the parity-of-binomials triangle.
fn rule90() -> Result<Vec<(String, Vec<u8>)>> {
    let frames = run_elementary(90, 63, 63)?;
    Ok(vec![("rule90.pgm".into(), render_pgm(&frames)?)])
}

/// 16 steps of rule 110, emitted both as a bitmap and as text rows.
fn rule110() -> Result<Vec<(String, Vec<u8>)>> {
    let frames = run_elementary(110, 16, 16)?;
    Ok(vec![
        ("rule110.pgm".into(), render_pgm(&frames)?),
        ("rule110.txt".into(), render_text(&frames)?.into_bytes()),
    ])
}

/// A generalized automaton along the doubling homomorphism of the integers:
/// the output samples every second cell of a rule-110 evolution.
fn subsample() -> Result<Vec<(String, Vec<u8>)>> {
    let z = Group::z_power(1);
    let a = Object::finset(2);
    let doubling = GroupHom::new(z.clone(), z.clone(), HomRule::Matrix(vec![vec![2]]))?;
    let sampler = GeneralizedCA::pullback(doubling, &a);

    let ca = elementary(110);
    let mut evolved = single_one(&ca);
    for _ in 0..8 {
        evolved = ca.apply(&evolved)?;
    }
    let sampled = sampler.apply(&evolved)?;

    let window = |r: i64| -> Vec<GroupElem> { (-r..=r).map(z_elem).collect() };
    let cells = |c: &Configuration, r: i64| -> Result<Vec<Value>> {
        window(r)
            .iter()
            .map(|g| Ok(json!([group_elem_to_json(g), elem_to_json(&c.get(g)?)])))
            .collect()
    };
    let report = json!({
        "demo": "subsample",
        "hom": {"rule": "matrix", "matrix": [[2]]},
        "source": {"window_radius": 16, "cells": cells(&evolved, 16)?},
        "sampled": {"window_radius": 8, "cells": cells(&sampled, 8)?},
    });
    Ok(vec![("subsample.json".into(), pretty(&report))])
}

/// The weak-product walkthrough: two generalized automata out of a shared
/// universe, their mediator into the free product, and the values of every
/// morphism in the diagram on the radius-2 ball.
fn weakprod() -> Result<Vec<(String, Vec<u8>)>> {
    let g_group = Group::cyclic(2);
    let h_group = Group::cyclic(3);
    let k_group = Group::cyclic(6);
    let a = Object::finset(2);
    let b = Object::finset(2);
    let c_obj = Object::finset(4);

    let phi = GroupHom::new(
        g_group.clone(),
        k_group.clone(),
        HomRule::Table(vec![GroupElem::Id(0), GroupElem::Id(3)]),
    )?;
    let psi = GroupHom::new(
        h_group.clone(),
        k_group.clone(),
        HomRule::Table(vec![GroupElem::Id(0), GroupElem::Id(2), GroupElem::Id(4)]),
    )?;

    // The legs read one cell and project a component of the paired value.
    let leg_rule = |proj_component: usize| -> Result<LocalRule> {
        let pow = power(&c_obj, 1);
        // C = A×B as a four-element set; component projections by digits.
        let table: Vec<usize> = (0..4)
            .map(|code| {
                if proj_component == 0 {
                    code / 2
                } else {
                    code % 2
                }
            })
            .collect();
        let target = if proj_component == 0 { &a } else { &b };
        let mu = Morphism::finset_table(pow.carrier().clone(), target.clone(), table)?;
        LocalRule::new(
            c_obj.clone(),
            target.clone(),
            FiniteSubset::identity_singleton(k_group.clone()),
            mu,
        )
    };
    let alpha = GeneralizedCA::new(phi, leg_rule(0)?)?;
    let beta = GeneralizedCA::new(psi, leg_rule(1)?)?;
    let mediator = weak_product_mediator(&alpha, &beta)?;
    let (leg_a, leg_b) = weak_product(&a, &b, &g_group, &h_group)?;
    let free = leg_a.source_universe().clone();
    let ball = free.ball(2);

    // A fixed configuration of the shared universe.
    let values: Vec<Elem> = [0usize, 1, 2, 3, 2, 1]
        .iter()
        .map(|&i| Elem::Index(i))
        .collect();
    let config = Configuration::dense(k_group.clone(), c_obj.clone(), values)?;

    let mediated = mediator.apply(&config)?;
    let through_a = leg_a.apply(&mediated)?;
    let through_b = leg_b.apply(&mediated)?;
    let alpha_out = alpha.apply(&config)?;
    let beta_out = beta.apply(&config)?;

    let ball_trace = ball
        .elements()
        .iter()
        .map(|w| {
            Ok(json!({
                "cell": group_elem_to_json(w),
                "through_hom": group_elem_to_json(&mediator.hom().eval(w)?),
                "value": elem_to_json(&mediated.get(w)?),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let side = |out: &Configuration, leg: &Configuration, group: &Group| -> Result<Vec<Value>> {
        group
            .elements()?
            .iter()
            .map(|g| {
                Ok(json!({
                    "cell": group_elem_to_json(g),
                    "through_mediator": elem_to_json(&leg.get(g)?),
                    "direct": elem_to_json(&out.get(g)?),
                }))
            })
            .collect()
    };
    let report = json!({
        "demo": "weakprod",
        "universes": {"left": "Z2", "right": "Z3", "shared": "Z6"},
        "mediator_neighborhood": mediator
            .rule()
            .neighborhood()
            .elements()
            .iter()
            .map(group_elem_to_json)
            .collect::<Vec<_>>(),
        "mediated_on_ball": ball_trace,
        "left_projection_equation": side(&alpha_out, &through_a, &g_group)?,
        "right_projection_equation": side(&beta_out, &through_b, &h_group)?,
    });
    Ok(vec![("weakprod.json".into(), pretty(&report))])
}

fn pretty(v: &Value) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(v).expect("report serializes");
    bytes.push(b'\n');
    bytes
}
