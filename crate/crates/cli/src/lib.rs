//! Library surface of the command-line tool: simulation runs, law-check
//! streams, and curated demos, all returning bytes so callers (including the
//! binary and the test suites) get byte-identical artifacts.

pub mod demo;
pub mod run;

use serde_json::json;

use catca::check::{
    check_uniform, chl_extract, equivariance_counterexample, run_all, run_suite, suite_names,
    ChlOutcome, SuiteParams,
};
use catca::error::{Error, Result};
use catca::json::{ca_to_json, group_elem_to_json, group_to_json, RealizedMorphism};

/// Runs one suite or all of them; returns the newline-delimited JSON report
/// stream and whether every verdict passed.
pub fn cmd_check(suite: &str, params: &SuiteParams) -> Result<(String, bool)> {
    let reports = if suite == "all" {
        run_all(params)?
    } else {
        vec![run_suite(suite, params)?]
    };
    let mut stream = String::new();
    let mut all_pass = true;
    for report in &reports {
        stream.push_str(&serde_json::to_string(report).expect("reports serialize"));
        stream.push('\n');
        all_pass &= report.passed();
    }
    Ok((stream, all_pass))
}

/// Checks named properties of one user-supplied realized morphism instead
/// of sampling: equivariance, local-rule extraction, or the per-cell
/// uniformity report.
pub fn cmd_check_input(
    check: &str,
    realized: &RealizedMorphism,
    seed: u64,
) -> Result<(String, bool)> {
    let RealizedMorphism {
        group,
        source_alphabet: a,
        target_alphabet: b,
        morphism: f,
    } = realized;
    let params = json!({"group": group_to_json(group)});
    let (verdict, cases, counterexample, extra) = match check {
        "equivariance" => match equivariance_counterexample(group, a, b, f)? {
            None => ("pass", group.order().unwrap() as u64, None, None),
            Some(g) => (
                "fail",
                group.order().unwrap() as u64,
                Some(json!({"shift": group_elem_to_json(&g)})),
                None,
            ),
        },
        "extract" => match chl_extract(group, a, b, f)? {
            ChlOutcome::Automaton(ca) => {
                ("pass", 1, None, Some(json!({"automaton": ca_to_json(&ca)})))
            }
            ChlOutcome::NotEquivariant { witness } => (
                "fail",
                1,
                Some(json!({"shift": group_elem_to_json(&witness)})),
                None,
            ),
        },
        "uniform" => {
            let report = check_uniform(group, a, b, f)?;
            let cells: Vec<serde_json::Value> = report
                .per_cell
                .iter()
                .map(|(g, s)| {
                    json!({
                        "cell": group_elem_to_json(g),
                        "neighborhood":
                            s.elements().iter().map(group_elem_to_json).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let extra = json!({
                "per_cell": cells,
                "neighborhoods_are_translates": report.neighborhoods_are_translates,
            });
            ("pass", report.per_cell.len() as u64, None, Some(extra))
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let mut fields = serde_json::Map::new();
    fields.insert("check".into(), json!(check));
    fields.insert("params".into(), params);
    fields.insert("seed".into(), json!(seed));
    fields.insert("cases".into(), json!(cases));
    fields.insert("verdict".into(), json!(verdict));
    if let Some(ce) = counterexample {
        fields.insert("counterexample".into(), ce);
    }
    if let Some(extra) = extra {
        fields.insert("details".into(), extra);
    }
    let mut stream = serde_json::Value::Object(fields).to_string();
    stream.push('\n');
    Ok((stream, verdict == "pass"))
}

pub fn known_suites() -> Vec<&'static str> {
    suite_names()
}

/// Exit code classification: usage and malformed input are 2, typing
/// mismatches between well-formed pieces are 3.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse(_)
        | Error::InvalidTable(_)
        | Error::InvalidObject(_)
        | Error::NotAHomomorphism(_)
        | Error::UnknownSuite(_) => 2,
        Error::NotAMember(_)
        | Error::GroupMismatch
        | Error::InstanceMismatch
        | Error::ShapeMismatch(_)
        | Error::NoElementLayer
        | Error::NotFinite(_) => 3,
    }
}
