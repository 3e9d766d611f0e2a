//! JSON wire formats for groups, homomorphisms, objects, morphisms,
//! automata, and configurations.
//!
//! Parsing is context-driven: element and morphism payloads do not repeat
//! the typing information their container already carries, so readers take
//! the expected group or objects as arguments and validate against them.

use serde_json::{json, Map, Value};

use crate::alphabet::{power, Elem, Morphism, MorphismData, Object};
use crate::ca::{CellularAutomaton, Configuration, LocalRule};
use crate::error::{Error, Result};
use crate::gca::GeneralizedCA;
use crate::group::{FiniteSubset, Group, GroupElem, GroupHom, GroupKind, HomRule, Letter, Side};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'v>(v: &'v Value, name: &str) -> Result<&'v Value> {
    v.get(name)
        .ok_or_else(|| parse_err(format!("missing field `{name}`")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("{what} must be an integer")))
}

// ---------------------------------------------------------------------------
// Groups and their elements

pub fn group_to_json(group: &Group) -> Value {
    match group.kind() {
        GroupKind::Finite(_) => {
            let n = group.order().unwrap();
            let table: Vec<Vec<usize>> = (0..n)
                .map(|a| {
                    (0..n)
                        .map(
                            |b| match group.op(&GroupElem::Id(a), &GroupElem::Id(b)).unwrap() {
                                GroupElem::Id(c) => c,
                                _ => unreachable!(),
                            },
                        )
                        .collect()
                })
                .collect();
            let GroupElem::Id(e) = group.identity() else {
                unreachable!()
            };
            json!({"kind": "finite-table", "table": table, "identity": e})
        }
        GroupKind::ZPower { dim } => json!({"kind": "z-power", "d": dim}),
        GroupKind::FreeProduct { left, right } => json!({
            "kind": "free-product",
            "left": group_to_json(left),
            "right": group_to_json(right),
        }),
    }
}

pub fn group_from_json(v: &Value) -> Result<Group> {
    match field(v, "kind")?.as_str() {
        Some("finite-table") => {
            let rows = field(v, "table")?
                .as_array()
                .ok_or_else(|| parse_err("table must be an array"))?;
            let table = rows
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| parse_err("table row must be an array"))?
                        .iter()
                        .map(|x| as_usize(x, "table entry"))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let identity = as_usize(field(v, "identity")?, "identity")?;
            Group::finite(table, identity)
        }
        Some("z-power") => Ok(Group::z_power(as_usize(field(v, "d")?, "d")?)),
        Some("free-product") => Group::free_product(
            group_from_json(field(v, "left")?)?,
            group_from_json(field(v, "right")?)?,
        ),
        _ => Err(parse_err("unknown group kind")),
    }
}

pub fn group_elem_to_json(elem: &GroupElem) -> Value {
    match elem {
        GroupElem::Id(i) => json!(i),
        GroupElem::Vector(v) => json!(v),
        GroupElem::Word(w) => Value::Array(
            w.iter()
                .map(|l| {
                    let side = match l.side {
                        Side::Left => "L",
                        Side::Right => "R",
                    };
                    json!({"side": side, "id": l.id})
                })
                .collect(),
        ),
    }
}

pub fn group_elem_from_json(group: &Group, v: &Value) -> Result<GroupElem> {
    let elem = match group.kind() {
        GroupKind::Finite(_) => GroupElem::Id(as_usize(v, "element id")?),
        GroupKind::ZPower { .. } => {
            let coords = v
                .as_array()
                .ok_or_else(|| parse_err("Z^d element must be an integer array"))?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .ok_or_else(|| parse_err("coordinate must be an integer"))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            GroupElem::Vector(coords)
        }
        GroupKind::FreeProduct { .. } => {
            let letters = v
                .as_array()
                .ok_or_else(|| parse_err("word must be an array of letters"))?
                .iter()
                .map(|l| {
                    let side = match field(l, "side")?.as_str() {
                        Some("L") => Side::Left,
                        Some("R") => Side::Right,
                        _ => return Err(parse_err("letter side must be \"L\" or \"R\"")),
                    };
                    Ok(Letter {
                        side,
                        id: as_usize(field(l, "id")?, "letter id")?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            GroupElem::Word(letters)
        }
    };
    if !group.contains(&elem) {
        return Err(Error::NotAMember(elem.to_string()));
    }
    Ok(elem)
}

// ---------------------------------------------------------------------------
// Homomorphisms

pub fn hom_to_json(hom: &GroupHom) -> Value {
    match hom.rule() {
        HomRule::Table(images) => json!({
            "rule": "table",
            "map": images.iter().map(group_elem_to_json).collect::<Vec<_>>(),
        }),
        HomRule::Pair(l, r) => json!({
            "rule": "pair",
            "left": hom_to_json(l),
            "right": hom_to_json(r),
        }),
        HomRule::Matrix(rows) => json!({"rule": "matrix", "matrix": rows}),
        HomRule::GeneratorImages(images) => json!({
            "rule": "generator-images",
            "images": images.iter().map(group_elem_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn hom_from_json(source: &Group, target: &Group, v: &Value) -> Result<GroupHom> {
    let rule = match field(v, "rule")?.as_str() {
        Some("table") => {
            let images = field(v, "map")?
                .as_array()
                .ok_or_else(|| parse_err("map must be an array"))?
                .iter()
                .map(|x| group_elem_from_json(target, x))
                .collect::<Result<Vec<_>>>()?;
            HomRule::Table(images)
        }
        Some("pair") => {
            let GroupKind::FreeProduct { left, right } = source.kind() else {
                return Err(parse_err("pair rule needs a free-product source"));
            };
            HomRule::Pair(
                Box::new(hom_from_json(left, target, field(v, "left")?)?),
                Box::new(hom_from_json(right, target, field(v, "right")?)?),
            )
        }
        Some("matrix") => {
            let rows = field(v, "matrix")?
                .as_array()
                .ok_or_else(|| parse_err("matrix must be an array"))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| parse_err("matrix row must be an array"))?
                        .iter()
                        .map(|x| {
                            x.as_i64()
                                .ok_or_else(|| parse_err("matrix entry must be an integer"))
                        })
                        .collect::<std::result::Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>>>()?;
            HomRule::Matrix(rows)
        }
        Some("generator-images") => {
            let images = field(v, "images")?
                .as_array()
                .ok_or_else(|| parse_err("images must be an array"))?
                .iter()
                .map(|x| group_elem_from_json(target, x))
                .collect::<Result<Vec<_>>>()?;
            HomRule::GeneratorImages(images)
        }
        _ => return Err(parse_err("unknown hom rule")),
    };
    GroupHom::new(source.clone(), target.clone(), rule)
}

// ---------------------------------------------------------------------------
// Objects, elements, morphisms

pub fn object_to_json(object: &Object) -> Value {
    match object {
        Object::FinSet { size } => json!({"instance": "finset", "size": size}),
        Object::FinVect { p, dim } => json!({"instance": "finvect", "p": p, "dim": dim}),
        Object::FinPoset { size, .. } => {
            let order: Vec<Vec<bool>> = (0..*size)
                .map(|x| (0..*size).map(|y| object.leq(x, y)).collect())
                .collect();
            json!({"instance": "finposet", "size": size, "order": order})
        }
        Object::Rel { size } => json!({"instance": "rel", "size": size}),
    }
}

pub fn object_from_json(v: &Value) -> Result<Object> {
    match field(v, "instance")?.as_str() {
        Some("finset") => Ok(Object::finset(as_usize(field(v, "size")?, "size")?)),
        Some("finvect") => Object::finvect(
            field(v, "p")?
                .as_u64()
                .ok_or_else(|| parse_err("p must be an integer"))?,
            as_usize(field(v, "dim")?, "dim")?,
        ),
        Some("finposet") => {
            let size = as_usize(field(v, "size")?, "size")?;
            let order = field(v, "order")?
                .as_array()
                .ok_or_else(|| parse_err("order must be an array"))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| parse_err("order row must be an array"))?
                        .iter()
                        .map(|b| {
                            b.as_bool()
                                .ok_or_else(|| parse_err("order entry must be bool"))
                        })
                        .collect::<std::result::Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Object::finposet(size, order)
        }
        Some("rel") => Ok(Object::rel(as_usize(field(v, "size")?, "size")?)),
        _ => Err(parse_err("unknown alphabet instance")),
    }
}

pub fn elem_to_json(elem: &Elem) -> Value {
    match elem {
        Elem::Index(i) => json!(i),
        Elem::Vector(v) => json!(v),
    }
}

pub fn elem_from_json(object: &Object, v: &Value) -> Result<Elem> {
    let elem = match object {
        Object::FinSet { .. } | Object::FinPoset { .. } => Elem::Index(as_usize(v, "element")?),
        Object::FinVect { .. } => Elem::Vector(
            v.as_array()
                .ok_or_else(|| parse_err("vector element must be an array"))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .ok_or_else(|| parse_err("vector entry must be an integer"))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?,
        ),
        Object::Rel { .. } => return Err(Error::NoElementLayer),
    };
    object.check_elem(&elem)?;
    Ok(elem)
}

pub fn morphism_to_json(m: &Morphism) -> Value {
    match m.data() {
        MorphismData::Table(t) => match m.source() {
            Object::FinPoset { .. } => {
                let order = match object_to_json(m.source()) {
                    Value::Object(fields) => fields["order"].clone(),
                    _ => unreachable!(),
                };
                json!({"instance": "finposet", "order": order, "table": t})
            }
            _ => json!({"instance": "finset", "table": t}),
        },
        MorphismData::Matrix(data) => {
            let Object::FinVect { p, .. } = m.source() else {
                unreachable!()
            };
            let cols = m.source().rep_size();
            let rows: Vec<&[u64]> = data.chunks(cols.max(1)).collect();
            json!({"instance": "finvect", "p": p, "matrix": rows})
        }
        MorphismData::Relation(data) => {
            let cols = m.target().rep_size();
            let pairs: Vec<[usize; 2]> = data
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| [i / cols, i % cols])
                .collect();
            json!({"instance": "rel", "pairs": pairs})
        }
    }
}

pub fn morphism_from_json(source: &Object, target: &Object, v: &Value) -> Result<Morphism> {
    match field(v, "instance")?.as_str() {
        Some("finset") => {
            let table = parse_table(field(v, "table")?)?;
            Morphism::finset_table(source.clone(), target.clone(), table)
        }
        Some("finposet") => {
            let table = parse_table(field(v, "table")?)?;
            Morphism::finposet_table(source.clone(), target.clone(), table)
        }
        Some("finvect") => {
            let rows = field(v, "matrix")?
                .as_array()
                .ok_or_else(|| parse_err("matrix must be an array"))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| parse_err("matrix row must be an array"))?
                        .iter()
                        .map(|x| {
                            x.as_u64()
                                .ok_or_else(|| parse_err("matrix entry must be an integer"))
                        })
                        .collect::<std::result::Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Morphism::finvect_matrix(source.clone(), target.clone(), rows)
        }
        Some("rel") => {
            let pairs = field(v, "pairs")?
                .as_array()
                .ok_or_else(|| parse_err("pairs must be an array"))?
                .iter()
                .map(|p| {
                    let pair = p
                        .as_array()
                        .ok_or_else(|| parse_err("pair must be an array"))?;
                    if pair.len() != 2 {
                        return Err(parse_err("pair must have two entries"));
                    }
                    Ok((
                        as_usize(&pair[0], "pair source")?,
                        as_usize(&pair[1], "pair target")?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Morphism::rel_pairs(source.clone(), target.clone(), &pairs)
        }
        _ => Err(parse_err("unknown morphism instance")),
    }
}

fn parse_table(v: &Value) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| parse_err("table must be an array"))?
        .iter()
        .map(|x| as_usize(x, "table entry"))
        .collect()
}

// ---------------------------------------------------------------------------
// Automata

pub fn ca_to_json(ca: &CellularAutomaton) -> Value {
    let rule = ca.rule();
    json!({
        "group": group_to_json(ca.universe()),
        "instance": instance_name(rule.source_alphabet()),
        "A": object_to_json(rule.source_alphabet()),
        "B": object_to_json(rule.target_alphabet()),
        "S": rule.neighborhood().elements().iter().map(group_elem_to_json).collect::<Vec<_>>(),
        "mu": morphism_to_json(rule.morphism()),
    })
}

pub fn ca_from_json(v: &Value) -> Result<CellularAutomaton> {
    let (group, rule) = rule_from_json(v)?;
    let _ = group;
    Ok(CellularAutomaton::new(rule))
}

fn rule_from_json(v: &Value) -> Result<(Group, LocalRule)> {
    let group = group_from_json(field(v, "group")?)?;
    let a = object_from_json(field(v, "A")?)?;
    let b = object_from_json(field(v, "B")?)?;
    let s_elems = field(v, "S")?
        .as_array()
        .ok_or_else(|| parse_err("S must be an array"))?
        .iter()
        .map(|x| group_elem_from_json(&group, x))
        .collect::<Result<Vec<_>>>()?;
    let neighborhood = FiniteSubset::new(group.clone(), s_elems)?;
    let carrier = power(&a, neighborhood.len()).carrier().clone();
    let mu = morphism_from_json(&carrier, &b, field(v, "mu")?)?;
    Ok((group, LocalRule::new(a, b, neighborhood, mu)?))
}

pub fn gca_to_json(gca: &GeneralizedCA) -> Value {
    let mut v = ca_to_json(&CellularAutomaton::new(gca.rule().clone()));
    let fields = v.as_object_mut().unwrap();
    fields.insert("target_group".into(), group_to_json(gca.target_universe()));
    fields.insert("hom".into(), hom_to_json(gca.hom()));
    v
}

pub fn gca_from_json(v: &Value) -> Result<GeneralizedCA> {
    let (group, rule) = rule_from_json(v)?;
    let target_group = group_from_json(field(v, "target_group")?)?;
    let hom = hom_from_json(&target_group, &group, field(v, "hom")?)?;
    GeneralizedCA::new(hom, rule)
}

/// A realized morphism `A^G → B^G` with its context, as read from and
/// written to check inputs.
pub struct RealizedMorphism {
    pub group: Group,
    pub source_alphabet: Object,
    pub target_alphabet: Object,
    pub morphism: Morphism,
}

pub fn realized_to_json(r: &RealizedMorphism) -> Value {
    json!({
        "group": group_to_json(&r.group),
        "instance": instance_name(&r.source_alphabet),
        "A": object_to_json(&r.source_alphabet),
        "B": object_to_json(&r.target_alphabet),
        "f": morphism_to_json(&r.morphism),
    })
}

pub fn realized_from_json(v: &Value) -> Result<RealizedMorphism> {
    let group = group_from_json(field(v, "group")?)?;
    let n = group
        .order()
        .ok_or_else(|| Error::NotFinite("realized morphisms need a finite group".into()))?;
    let source_alphabet = object_from_json(field(v, "A")?)?;
    let target_alphabet = object_from_json(field(v, "B")?)?;
    let morphism = morphism_from_json(
        power(&source_alphabet, n).carrier(),
        power(&target_alphabet, n).carrier(),
        field(v, "f")?,
    )?;
    Ok(RealizedMorphism {
        group,
        source_alphabet,
        target_alphabet,
        morphism,
    })
}

fn instance_name(object: &Object) -> &'static str {
    match object {
        Object::FinSet { .. } => "finset",
        Object::FinVect { .. } => "finvect",
        Object::FinPoset { .. } => "finposet",
        Object::Rel { .. } => "rel",
    }
}

// ---------------------------------------------------------------------------
// Configurations

/// Serializes a sparse or dense configuration. Derived configurations are
/// live computations and have no wire form; materialize them first.
pub fn config_to_json(config: &Configuration, window: Option<&FiniteSubset>) -> Result<Value> {
    if let Some(window) = window {
        let cells = window
            .elements()
            .iter()
            .map(|g| {
                Ok(json!([
                    group_elem_to_json(g),
                    elem_to_json(&config.get(g)?)
                ]))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(json!({"kind": "window", "cells": cells}));
    }
    if let Some(n) = config.group().order() {
        let values = (0..n)
            .map(|i| Ok(elem_to_json(&config.get(&GroupElem::Id(i))?)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(json!({"kind": "dense", "values": values}));
    }
    Err(Error::NotFinite(
        "serializing an infinite configuration needs a window".into(),
    ))
}

pub fn config_from_json(group: &Group, alphabet: &Object, v: &Value) -> Result<Configuration> {
    match field(v, "kind")?.as_str() {
        Some("dense") => {
            let values = field(v, "values")?
                .as_array()
                .ok_or_else(|| parse_err("values must be an array"))?
                .iter()
                .map(|x| elem_from_json(alphabet, x))
                .collect::<Result<Vec<_>>>()?;
            Configuration::dense(group.clone(), alphabet.clone(), values)
        }
        Some("sparse") => {
            let default = elem_from_json(alphabet, field(v, "default")?)?;
            let support = field(v, "support")?
                .as_array()
                .ok_or_else(|| parse_err("support must be an array of [cell, value] pairs"))?
                .iter()
                .map(|entry| {
                    let pair = entry
                        .as_array()
                        .ok_or_else(|| parse_err("support entry must be a pair"))?;
                    if pair.len() != 2 {
                        return Err(parse_err("support entry must be a pair"));
                    }
                    Ok((
                        group_elem_from_json(group, &pair[0])?,
                        elem_from_json(alphabet, &pair[1])?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            Configuration::sparse(group.clone(), alphabet.clone(), default, support)
        }
        _ => Err(parse_err("unknown configuration kind")),
    }
}

/// Serializes a check report; fixed field order keeps report streams
/// byte-reproducible.
pub fn report_value(
    check: &str,
    params: Value,
    seed: u64,
    cases: u64,
    counterexample: Option<Value>,
) -> Value {
    let mut fields = Map::new();
    fields.insert("check".into(), json!(check));
    fields.insert("params".into(), params);
    fields.insert("seed".into(), json!(seed));
    fields.insert("cases".into(), json!(cases));
    fields.insert(
        "verdict".into(),
        json!(if counterexample.is_none() {
            "pass"
        } else {
            "fail"
        }),
    );
    if let Some(ce) = counterexample {
        fields.insert("counterexample".into(), ce);
    }
    Value::Object(fields)
}
