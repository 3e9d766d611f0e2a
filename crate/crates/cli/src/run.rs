//! Simulation runs: load an automaton and an initial configuration, step,
//! and render the window as text, PGM, or JSON lines.

use serde_json::{json, Value};

use catca::alphabet::{encode_tuple, Elem, Object};
use catca::ca::{CellularAutomaton, Configuration};
use catca::error::{Error, Result};
use catca::gca::GeneralizedCA;
use catca::group::{FiniteSubset, Group, GroupElem};
use catca::json::{
    ca_from_json, config_from_json, elem_to_json, gca_from_json, group_elem_to_json,
};

#[allow(clippy::large_enum_variant)]
pub enum Machine {
    Ca(CellularAutomaton),
    Gca(GeneralizedCA),
}

impl Machine {
    pub fn parse(v: &Value) -> Result<Machine> {
        if v.get("hom").is_some() {
            Ok(Machine::Gca(gca_from_json(v)?))
        } else {
            Ok(Machine::Ca(ca_from_json(v)?))
        }
    }

    pub fn universe(&self) -> &Group {
        match self {
            Machine::Ca(ca) => ca.universe(),
            Machine::Gca(gca) => gca.source_universe(),
        }
    }

    pub fn source_alphabet(&self) -> &Object {
        match self {
            Machine::Ca(ca) => ca.rule().source_alphabet(),
            Machine::Gca(gca) => gca.rule().source_alphabet(),
        }
    }

    fn step(&self, config: &Configuration) -> Result<Configuration> {
        match self {
            Machine::Ca(ca) => ca.apply(config),
            Machine::Gca(gca) => gca.apply(config),
        }
    }

    /// One step of the default (background) value: the rule applied to the
    /// constant window.
    fn step_default(&self, default: &Elem) -> Result<Elem> {
        let rule = match self {
            Machine::Ca(ca) => ca.rule(),
            Machine::Gca(gca) => gca.rule(),
        };
        let tuple = vec![default.clone(); rule.neighborhood().len()];
        rule.morphism()
            .apply(&encode_tuple(rule.source_alphabet(), &tuple)?)
    }
}

/// A finished run: the output window in canonical order and one row of
/// values per step, including step zero. For sparse backgrounds the evolved
/// default accompanies each row so a run can be resumed from its output.
pub struct Frames {
    pub alphabet: Object,
    pub window: Vec<GroupElem>,
    pub rows: Vec<Vec<Elem>>,
    pub defaults: Option<Vec<Elem>>,
}

pub fn simulate(
    machine: &Machine,
    initial: Configuration,
    initial_default: Option<Elem>,
    steps: usize,
    window: &FiniteSubset,
) -> Result<Frames> {
    if let Machine::Gca(gca) = machine {
        if gca.source_universe() != gca.target_universe() {
            return Err(Error::GroupMismatch);
        }
    }
    let mut rows = Vec::with_capacity(steps + 1);
    let mut defaults = initial_default.map(|d| vec![d]);
    let mut config = initial;
    let snapshot = |c: &Configuration| -> Result<Vec<Elem>> {
        window.elements().iter().map(|g| c.get(g)).collect()
    };
    rows.push(snapshot(&config)?);
    for _ in 0..steps {
        config = machine.step(&config)?;
        rows.push(snapshot(&config)?);
        if let Some(ds) = defaults.as_mut() {
            let next = machine.step_default(ds.last().unwrap())?;
            ds.push(next);
        }
    }
    Ok(Frames {
        alphabet: machine.source_alphabet().clone(),
        window: window.elements().to_vec(),
        rows,
        defaults,
    })
}

/// Loads the initial configuration of a run; sparse kinds also report their
/// default value for background evolution.
pub fn parse_initial(
    group: &Group,
    alphabet: &Object,
    v: &Value,
) -> Result<(Configuration, Option<Elem>)> {
    let config = config_from_json(group, alphabet, v)?;
    let default = match v.get("kind").and_then(Value::as_str) {
        Some("sparse") => Some(catca::json::elem_from_json(
            alphabet,
            v.get("default").unwrap(),
        )?),
        _ => None,
    };
    Ok((config, default))
}

fn elem_scalar(alphabet: &Object, e: &Elem) -> Result<usize> {
    alphabet.elem_index(e)
}

pub fn render_text(frames: &Frames) -> Result<String> {
    let n = frames.alphabet.elem_count()?;
    let mut out = String::new();
    for row in &frames.rows {
        if n <= 36 {
            for e in row {
                let d = elem_scalar(&frames.alphabet, e)?;
                out.push(char::from_digit(d as u32, 36).expect("digit in base 36"));
            }
        } else {
            let cells: Vec<String> = row
                .iter()
                .map(|e| elem_scalar(&frames.alphabet, e).map(|d| d.to_string()))
                .collect::<Result<_>>()?;
            out.push_str(&cells.join(" "));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Binary 8-bit PGM, one row per step: state 0 is white, the top state
/// black, intermediate states evenly spaced.
pub fn render_pgm(frames: &Frames) -> Result<Vec<u8>> {
    let n = frames.alphabet.elem_count()?;
    let width = frames.window.len();
    let height = frames.rows.len();
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    for row in &frames.rows {
        for e in row {
            let d = elem_scalar(&frames.alphabet, e)?;
            let gray = if n <= 1 {
                255u8
            } else {
                (255 - d * 255 / (n - 1)) as u8
            };
            out.push(gray);
        }
    }
    Ok(out)
}

/// One JSON object per line per frame.
pub fn render_jsonl(frames: &Frames) -> Result<String> {
    let mut out = String::new();
    for (t, row) in frames.rows.iter().enumerate() {
        let cells: Vec<Value> = frames
            .window
            .iter()
            .zip(row)
            .map(|(g, e)| json!([group_elem_to_json(g), elem_to_json(e)]))
            .collect();
        let mut frame = json!({"step": t, "cells": cells});
        if let Some(ds) = &frames.defaults {
            frame
                .as_object_mut()
                .unwrap()
                .insert("default".into(), elem_to_json(&ds[t]));
        }
        out.push_str(&frame.to_string());
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn rule90_json() -> Value {
        json!({
            "group": {"kind": "z-power", "d": 1},
            "instance": "finvect",
            "A": {"instance": "finvect", "p": 2, "dim": 1},
            "B": {"instance": "finvect", "p": 2, "dim": 1},
            "S": [[-1], [1]],
            "mu": {"instance": "finvect", "p": 2, "matrix": [[1, 1]]},
        })
    }

    #[test]
    fn zero_steps_echoes_the_initial_window() {
        let machine = Machine::parse(&rule90_json()).unwrap();
        let config_json = json!({"kind": "sparse", "default": [0], "support": [[[0], [1]]]});
        let (config, default) =
            parse_initial(machine.universe(), machine.source_alphabet(), &config_json).unwrap();
        let window = machine.universe().ball(2);
        let frames = simulate(&machine, config, default, 0, &window).unwrap();
        assert_eq!(render_text(&frames).unwrap(), "00100\n");
    }

    #[test]
    fn two_steps_of_rule_90() {
        let machine = Machine::parse(&rule90_json()).unwrap();
        let config_json = json!({"kind": "sparse", "default": [0], "support": [[[0], [1]]]});
        let (config, default) =
            parse_initial(machine.universe(), machine.source_alphabet(), &config_json).unwrap();
        let window = machine.universe().ball(2);
        let frames = simulate(&machine, config, default, 2, &window).unwrap();
        assert_eq!(render_text(&frames).unwrap(), "00100\n01010\n10001\n");
        assert_eq!(frames.defaults.as_ref().unwrap().len(), 3);
    }

    #[test]
    fn pgm_layout_is_one_row_per_step() {
        let machine = Machine::parse(&rule90_json()).unwrap();
        let config_json = json!({"kind": "sparse", "default": [0], "support": [[[0], [1]]]});
        let (config, default) =
            parse_initial(machine.universe(), machine.source_alphabet(), &config_json).unwrap();
        let window = machine.universe().ball(1);
        let frames = simulate(&machine, config, default, 1, &window).unwrap();
        let pgm = render_pgm(&frames).unwrap();
        let expected_header = b"P5\n3 2\n255\n";
        assert_eq!(&pgm[..expected_header.len()], expected_header);
        assert_eq!(&pgm[expected_header.len()..], &[255, 0, 255, 0, 255, 0]);
    }
}
