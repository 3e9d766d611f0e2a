//! Executable law checking: equivariance and locality deciders, minimal
//! neighborhoods, local-rule extraction from realized morphisms, and the
//! named suites that exercise every construction the engine provides.

pub mod sample;
mod suites;

pub use sample::Sampler;
pub use suites::{run_all, run_suite, suite_names, SuiteParams};

use serde::Serialize;
use serde_json::{json, Value};

use crate::alphabet::{power, Instance, Morphism, MorphismData, Object};
use crate::ca::{group_as_subset, shift_morphism, CellularAutomaton, LocalRule};
use crate::error::{Error, Result};
use crate::group::{FiniteSubset, Group, GroupElem};
use crate::json::{group_elem_to_json, morphism_to_json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one named check: parameters, seed, case count, and a
/// re-runnable counterexample on failure.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    pub seed: u64,
    pub cases: u64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Searches for a group element witnessing failure of equivariance of a
/// morphism `A^G → B^G` over a finite universe: `f ∘ shift_g ≠ shift_g ∘ f`.
pub fn equivariance_counterexample(
    group: &Group,
    a: &Object,
    b: &Object,
    f: &Morphism,
) -> Result<Option<GroupElem>> {
    check_realized_shape(group, a, b, f)?;
    for g in group.elements()? {
        let shift_a = shift_morphism(group, a, &g)?;
        let shift_b = shift_morphism(group, b, &g)?;
        if !f.compose(&shift_a)?.equal(&shift_b.compose(f)?)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Equivariance of an automaton at point level: compares applying after a
/// shift with shifting the result, on sampled configurations, for every
/// shift and cell in the ball of the given radius.
pub fn equivariance_on_ball(
    ca: &CellularAutomaton,
    radius: usize,
    configs: u64,
    seed: u64,
) -> Result<CheckReport> {
    if !ca.rule().source_alphabet().instance().has_element_layer() {
        return Err(Error::NoElementLayer);
    }
    let group = ca.universe().clone();
    let ball = group.ball(radius);
    let mut sampler = Sampler::new(seed);
    let mut cases = 0u64;
    for _ in 0..configs {
        let c = sampler.config(&group, ca.rule().source_alphabet());
        let out = ca.apply(&c)?;
        for g in ball.elements() {
            let shifted_then_applied = ca.apply(&c.right_translate(g.clone())?)?;
            let applied_then_shifted = out.right_translate(g.clone())?;
            for x in ball.elements() {
                cases += 1;
                if shifted_then_applied.get(x)? != applied_then_shifted.get(x)? {
                    return Ok(CheckReport {
                        check: "equivariance-ball".into(),
                        params: json!({"radius": radius}),
                        seed,
                        cases,
                        verdict: Verdict::Fail,
                        counterexample: Some(json!({
                            "shift": group_elem_to_json(g),
                            "cell": group_elem_to_json(x),
                        })),
                    });
                }
            }
        }
    }
    Ok(CheckReport {
        check: "equivariance-ball".into(),
        params: json!({"radius": radius}),
        seed,
        cases,
        verdict: Verdict::Pass,
        counterexample: None,
    })
}

/// Result of a locality test: the factored rule when the morphism only
/// depends on the kept coordinates, otherwise a serialized witness.
#[derive(Clone, Debug)]
pub enum Locality {
    Local(Morphism),
    NotLocal(Value),
}

impl Locality {
    pub fn is_local(&self) -> bool {
        matches!(self, Locality::Local(_))
    }

    pub fn witness(self) -> Option<Morphism> {
        match self {
            Locality::Local(m) => Some(m),
            Locality::NotLocal(_) => None,
        }
    }
}

/// Decides whether `h : base^arity → B` factors through the restriction onto
/// the positions in `keep`, and produces the factored morphism if so.
pub fn check_local(h: &Morphism, base: &Object, arity: usize, keep: &[usize]) -> Result<Locality> {
    let pow = power(base, arity);
    if h.source() != pow.carrier() {
        return Err(Error::ShapeMismatch(
            "morphism source is not the power carrier".into(),
        ));
    }
    if !keep.windows(2).all(|w| w[0] < w[1]) || keep.iter().any(|&i| i >= arity) {
        return Err(Error::ShapeMismatch(
            "kept positions must be an increasing sub-index".into(),
        ));
    }
    let small = power(base, keep.len());
    match h.data() {
        MorphismData::Table(table) => {
            let n = base.rep_size();
            let mut witness: Vec<Option<usize>> = vec![None; small.carrier().rep_size()];
            for (code, &out) in table.iter().enumerate() {
                let restricted = keep
                    .iter()
                    .fold(0usize, |acc, &i| acc * n + digit_of(n, arity, code, i));
                match witness[restricted] {
                    None => witness[restricted] = Some(out),
                    Some(prev) if prev == out => {}
                    Some(prev) => {
                        return Ok(Locality::NotLocal(json!({
                            "fiber": restricted,
                            "outputs": [prev, out],
                        })))
                    }
                }
            }
            let table: Vec<usize> = witness
                .into_iter()
                .map(|w| w.expect("every fiber of a total table is populated"))
                .collect();
            let rule = match base.instance() {
                Instance::FinSet => {
                    Morphism::finset_table(small.carrier().clone(), h.target().clone(), table)?
                }
                // The factored table of a monotone map is monotone; the
                // validating constructor double-checks and surfaces a
                // structured error if that ever fails.
                Instance::FinPoset => {
                    Morphism::finposet_table(small.carrier().clone(), h.target().clone(), table)?
                }
                _ => unreachable!("tables appear only in finset and finposet"),
            };
            Ok(Locality::Local(rule))
        }
        MorphismData::Matrix(data) => {
            let k = base.rep_size();
            let rows = h.target().rep_size();
            let cols = k * arity;
            for block in 0..arity {
                if keep.contains(&block) {
                    continue;
                }
                for r in 0..rows {
                    for c in 0..k {
                        if data[r * cols + block * k + c] != 0 {
                            return Ok(Locality::NotLocal(json!({
                                "block": block,
                                "entry": [r, block * k + c],
                            })));
                        }
                    }
                }
            }
            let kept_rows: Vec<Vec<u64>> = (0..rows)
                .map(|r| {
                    keep.iter()
                        .flat_map(|&block| (0..k).map(move |c| data[r * cols + block * k + c]))
                        .collect()
                })
                .collect();
            Ok(Locality::Local(Morphism::finvect_matrix(
                small.carrier().clone(),
                h.target().clone(),
                kept_rows,
            )?))
        }
        MorphismData::Relation(data) => {
            let n = base.rep_size();
            let cols = h.target().rep_size();
            for summand in 0..arity {
                if keep.contains(&summand) {
                    continue;
                }
                for a in 0..n {
                    for y in 0..cols {
                        if data[(summand * n + a) * cols + y] {
                            return Ok(Locality::NotLocal(json!({
                                "summand": summand,
                                "pair": [summand * n + a, y],
                            })));
                        }
                    }
                }
            }
            let pairs: Vec<(usize, usize)> = keep
                .iter()
                .enumerate()
                .flat_map(|(i, &summand)| {
                    let data = &data;
                    (0..n).flat_map(move |a| {
                        (0..cols)
                            .filter(move |&y| data[(summand * n + a) * cols + y])
                            .map(move |y| (i * n + a, y))
                    })
                })
                .collect();
            Ok(Locality::Local(Morphism::rel_pairs(
                small.carrier().clone(),
                h.target().clone(),
                &pairs,
            )?))
        }
    }
}

/// The essential coordinate positions of `h : base^arity → B`: the positions
/// the output actually depends on. The result is the unique minimal index
/// the morphism factors through in finset, finvect, and rel; for posets the
/// same scan applies and the factored rule is re-validated.
pub fn essential_positions(h: &Morphism, base: &Object, arity: usize) -> Result<Vec<usize>> {
    let pow = power(base, arity);
    if h.source() != pow.carrier() {
        return Err(Error::ShapeMismatch(
            "morphism source is not the power carrier".into(),
        ));
    }
    match h.data() {
        MorphismData::Table(table) => {
            let n = base.rep_size();
            let mut essential = Vec::new();
            'coord: for i in 0..arity {
                for (code, &out) in table.iter().enumerate() {
                    if digit_of(n, arity, code, i) != 0 {
                        continue;
                    }
                    let stride = n.pow((arity - 1 - i) as u32);
                    for d in 1..n {
                        if table[code + d * stride] != out {
                            essential.push(i);
                            continue 'coord;
                        }
                    }
                }
            }
            Ok(essential)
        }
        MorphismData::Matrix(data) => {
            let k = base.rep_size();
            let rows = h.target().rep_size();
            let cols = k * arity;
            Ok((0..arity)
                .filter(|&block| {
                    (0..rows).any(|r| (0..k).any(|c| data[r * cols + block * k + c] != 0))
                })
                .collect())
        }
        MorphismData::Relation(data) => {
            let n = base.rep_size();
            let cols = h.target().rep_size();
            Ok((0..arity)
                .filter(|&summand| {
                    (0..n).any(|a| (0..cols).any(|y| data[(summand * n + a) * cols + y]))
                })
                .collect())
        }
    }
}

/// The smallest neighborhood a cell rule `h : base^index → B` reads, with
/// the factored rule over it.
pub fn minimal_neighborhood(
    h: &Morphism,
    base: &Object,
    index: &FiniteSubset,
) -> Result<(FiniteSubset, Morphism)> {
    let positions = essential_positions(h, base, index.len())?;
    let elements: Vec<GroupElem> = positions
        .iter()
        .map(|&i| index.elements()[i].clone())
        .collect();
    let subset = FiniteSubset::new(index.group().clone(), elements)?;
    match check_local(h, base, index.len(), &positions)? {
        Locality::Local(rule) => Ok((subset, rule)),
        Locality::NotLocal(w) => Err(Error::ShapeMismatch(format!(
            "essential positions are not a locality witness: {w}"
        ))),
    }
}

/// Per-cell minimal neighborhoods of a realized morphism over a finite
/// universe. Every cell rule of a finite power is local; the value of the
/// report is the neighborhoods themselves and whether they are translates
/// of the identity cell's neighborhood, as equivariance predicts.
pub struct UniformityReport {
    pub per_cell: Vec<(GroupElem, FiniteSubset)>,
    pub neighborhoods_are_translates: bool,
}

pub fn check_uniform(
    group: &Group,
    a: &Object,
    b: &Object,
    f: &Morphism,
) -> Result<UniformityReport> {
    check_realized_shape(group, a, b, f)?;
    let full = group_as_subset(group)?;
    let pow_b = power(b, full.len());
    let mut per_cell = Vec::new();
    for (i, g) in full.elements().iter().enumerate() {
        let cell_rule = pow_b.projection(i).compose(f)?;
        let (neighborhood, _) = minimal_neighborhood(&cell_rule, a, &full)?;
        per_cell.push((g.clone(), neighborhood));
    }
    let identity_neighborhood = {
        let e = group.identity();
        &per_cell[full.position(&e).expect("identity is a member")].1
    };
    let neighborhoods_are_translates =
        per_cell
            .iter()
            .all(|(g, s)| match identity_neighborhood.translate(g) {
                Ok(translated) => &translated == s,
                Err(_) => false,
            });
    Ok(UniformityReport {
        per_cell,
        neighborhoods_are_translates,
    })
}

/// Outcome of local-rule extraction: either the automaton whose realization
/// is the given morphism, or an equivariance counterexample. Rejection is a
/// value, not an error.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum ChlOutcome {
    Automaton(CellularAutomaton),
    NotEquivariant { witness: GroupElem },
}

/// Extracts the defining data of an equivariant morphism `A^G → B^G` over a
/// finite universe: the minimal neighborhood of the identity cell's rule and
/// its factored morphism. The extracted automaton is verified to realize
/// back to the input exactly.
pub fn chl_extract(group: &Group, a: &Object, b: &Object, f: &Morphism) -> Result<ChlOutcome> {
    if let Some(witness) = equivariance_counterexample(group, a, b, f)? {
        return Ok(ChlOutcome::NotEquivariant { witness });
    }
    let full = group_as_subset(group)?;
    let e_position = full
        .position(&group.identity())
        .expect("identity is a member");
    let cell_rule = power(b, full.len()).projection(e_position).compose(f)?;
    let (neighborhood, rule) = minimal_neighborhood(&cell_rule, a, &full)?;
    let ca = CellularAutomaton::new(LocalRule::new(a.clone(), b.clone(), neighborhood, rule)?);
    let realized = ca.realize()?;
    if !realized.equal(f)? {
        return Err(Error::ShapeMismatch(format!(
            "extracted automaton realizes to a different morphism: {}",
            morphism_to_json(&realized)
        )));
    }
    Ok(ChlOutcome::Automaton(ca))
}

fn check_realized_shape(group: &Group, a: &Object, b: &Object, f: &Morphism) -> Result<()> {
    let n = group
        .order()
        .ok_or_else(|| Error::NotFinite("morphism-level checks need a finite group".into()))?;
    if f.source() != power(a, n).carrier() || f.target() != power(b, n).carrier() {
        return Err(Error::ShapeMismatch(
            "morphism endpoints are not the configuration carriers".into(),
        ));
    }
    Ok(())
}

fn digit_of(n: usize, arity: usize, code: usize, i: usize) -> usize {
    code / n.pow((arity - 1 - i) as u32) % n
}
