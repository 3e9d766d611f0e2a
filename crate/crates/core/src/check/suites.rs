//! Named check suites, one per algebraic law the engine's constructions
//! promise. Every suite is deterministic given its parameters and seed, and
//! a failing suite reports a re-runnable counterexample. These are the
//! regression surface of the crate: a failure means an implementation bug.

use serde_json::{json, Value};

use crate::alphabet::{self, power, pushforward, Instance, Morphism, Object};
use crate::ca::{
    group_as_subset, pushforward_morphism, restriction_between, restriction_from_group,
    shift_morphism, translation_iso, CellularAutomaton, LocalRule,
};
use crate::check::{
    chl_extract, equivariance_counterexample, CheckReport, ChlOutcome, Sampler, Verdict,
};
use crate::error::{Error, Result};
use crate::gca::{weak_product, weak_product_mediator, GeneralizedCA};
use crate::group::{FiniteSubset, Group, GroupElem, GroupHom};
use crate::json::{group_elem_to_json, morphism_to_json};

/// Shared knobs for a suite run. `cases` overrides each suite's default
/// sample count; `radius` bounds pointwise checks over infinite universes.
#[derive(Clone, Copy, Debug)]
pub struct SuiteParams {
    pub seed: u64,
    pub cases: Option<u64>,
    pub radius: usize,
}

impl Default for SuiteParams {
    fn default() -> SuiteParams {
        SuiteParams {
            seed: 2026,
            cases: None,
            radius: 3,
        }
    }
}

type SuiteRunner = fn(&SuiteParams) -> Result<CheckReport>;

const SUITES: &[(&str, SuiteRunner)] = &[
    ("category-laws", category_laws),
    ("product-up", product_up),
    ("res-transitivity", res_transitivity),
    ("translation-restriction", translation_restriction),
    ("pullback-functor", pullback_functor),
    ("shift-action", shift_action),
    ("equivariant-determined", equivariant_determined),
    ("compose", compose_suite),
    ("pushforward-functor", pushforward_functor),
    ("pushforward-ca", pushforward_ca),
    ("product", product_suite),
    ("chl-roundtrip", chl_roundtrip),
    ("gca-equivariance", gca_equivariance),
    ("gca-compose", gca_compose),
    ("gca-pullback", gca_pullback),
    ("gca-factorization", gca_factorization),
    ("pullback-pushforward-square", pullback_pushforward_square),
    ("weak-product", weak_product_suite),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(name, _)| *name).collect()
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<CheckReport> {
    let (_, runner) = SUITES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    runner(params)
}

pub fn run_all(params: &SuiteParams) -> Result<Vec<CheckReport>> {
    SUITES.iter().map(|(_, runner)| runner(params)).collect()
}

// ---------------------------------------------------------------------------
// Shared scaffolding

struct Run {
    check: &'static str,
    params: Value,
    seed: u64,
    cases: u64,
    failure: Option<Value>,
}

impl Run {
    fn new(check: &'static str, params: Value, seed: u64) -> Run {
        Run {
            check,
            params,
            seed,
            cases: 0,
            failure: None,
        }
    }

    fn case(&mut self, ok: bool, counterexample: impl FnOnce() -> Value) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(counterexample());
        }
    }

    fn finish(self) -> CheckReport {
        CheckReport {
            check: self.check.into(),
            params: self.params,
            seed: self.seed,
            cases: self.cases,
            verdict: if self.failure.is_none() {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            counterexample: self.failure,
        }
    }
}

fn desk_groups() -> Vec<(&'static str, Group)> {
    vec![
        ("Z2", Group::cyclic(2)),
        ("Z3", Group::cyclic(3)),
        ("Z4", Group::cyclic(4)),
        ("S3", Group::symmetric(3)),
    ]
}

fn desk_instances() -> Vec<(&'static str, Instance)> {
    vec![
        ("finset", Instance::FinSet),
        ("finvect2", Instance::FinVect { p: 2 }),
        ("finvect3", Instance::FinVect { p: 3 }),
        ("finposet", Instance::FinPoset),
        ("rel", Instance::Rel),
    ]
}

fn concrete_instances() -> Vec<(&'static str, Instance)> {
    desk_instances()
        .into_iter()
        .filter(|(_, i)| i.has_element_layer())
        .collect()
}

// ---------------------------------------------------------------------------
// Category and product laws

fn category_laws(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(200);
    let mut run = Run::new(
        "category-laws",
        json!({"max_size": 4, "per_instance": n}),
        p.seed,
    );
    for (iname, instance) in desk_instances() {
        let mut s = Sampler::new(p.seed ^ hash_name(iname));
        for _ in 0..n {
            let a = s.object(instance, 4);
            let b = s.object(instance, 4);
            let c = s.object(instance, 4);
            let d = s.object(instance, 4);
            let f = s.morphism(&a, &b);
            let g = s.morphism(&b, &c);
            let h = s.morphism(&c, &d);
            let assoc = h
                .compose(&g.compose(&f)?)?
                .equal(&h.compose(&g)?.compose(&f)?)?;
            let id_laws = f.compose(&Morphism::identity(&a))?.equal(&f)?
                && Morphism::identity(&b).compose(&f)?.equal(&f)?;
            run.case(assoc && id_laws, || {
                json!({
                    "instance": iname,
                    "f": morphism_to_json(&f),
                    "g": morphism_to_json(&g),
                    "h": morphism_to_json(&h),
                })
            });
        }
    }
    Ok(run.finish())
}

/// Enumerates every morphism between two small objects of one instance.
fn enumerate_morphisms(source: &Object, target: &Object) -> Vec<Morphism> {
    match source.instance() {
        Instance::FinSet | Instance::FinPoset => {
            let (ns, nt) = (source.rep_size(), target.rep_size());
            let mut out = Vec::new();
            let total = nt.pow(ns as u32);
            for code in 0..total {
                let mut table = Vec::with_capacity(ns);
                let mut rest = code;
                for _ in 0..ns {
                    table.push(rest % nt);
                    rest /= nt;
                }
                let candidate = match source.instance() {
                    Instance::FinSet => {
                        Morphism::finset_table(source.clone(), target.clone(), table).ok()
                    }
                    _ => Morphism::finposet_table(source.clone(), target.clone(), table).ok(),
                };
                if let Some(m) = candidate {
                    out.push(m);
                }
            }
            out
        }
        Instance::FinVect { p } => {
            let entries = source.rep_size() * target.rep_size();
            let total = (p as usize).pow(entries as u32);
            (0..total)
                .map(|code| {
                    let mut rest = code;
                    let rows = (0..target.rep_size())
                        .map(|_| {
                            (0..source.rep_size())
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
            let entries = source.rep_size() * target.rep_size();
            let cols = target.rep_size();
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

fn product_up(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(20);
    let mut run = Run::new("product-up", json!({"pairs_per_instance": n}), p.seed);
    for (iname, instance) in desk_instances() {
        // Sizes keep full candidate enumeration cheap; relations grow as
        // 2^(|X|·|A+B|).
        let max = if matches!(instance, Instance::Rel) {
            2
        } else {
            3
        };
        let mut s = Sampler::new(p.seed ^ hash_name(iname));
        for _ in 0..n {
            let x = s.object(instance, max);
            let a = s.object(instance, max);
            let b = s.object(instance, max);
            let f = s.morphism(&x, &a);
            let g = s.morphism(&x, &b);
            let (carrier, pa, pb) = alphabet::product(&a, &b)?;
            let h = alphabet::pair(&f, &g)?;
            let equations = pa.compose(&h)?.equal(&f)? && pb.compose(&h)?.equal(&g)?;
            let mut satisfying = 0usize;
            let mut the_unique = None;
            for candidate in enumerate_morphisms(&x, &carrier) {
                if pa.compose(&candidate)?.equal(&f)? && pb.compose(&candidate)?.equal(&g)? {
                    satisfying += 1;
                    the_unique = Some(candidate);
                }
            }
            let unique = satisfying == 1 && the_unique.as_ref() == Some(&h);
            run.case(equations && unique, || {
                json!({
                    "instance": iname,
                    "f": morphism_to_json(&f),
                    "g": morphism_to_json(&g),
                    "satisfying_candidates": satisfying,
                })
            });
        }
    }
    Ok(run.finish())
}

// ---------------------------------------------------------------------------
// Configuration-object laws

fn res_transitivity(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(10);
    let mut run = Run::new("res-transitivity", json!({"per_combo": n}), p.seed);
    for (iname, instance) in desk_instances() {
        for (gname, group) in desk_groups() {
            let mut s = Sampler::new(p.seed ^ hash_name(iname) ^ hash_name(gname));
            for _ in 0..n {
                let a = s.object(instance, 3);
                let t = s.subset(&group, group.order().unwrap());
                let sub_elems: Vec<GroupElem> =
                    t.elements().iter().filter(|_| s.bool()).cloned().collect();
                let small = FiniteSubset::new(group.clone(), sub_elems)?;
                let full = group_as_subset(&group)?;
                let direct = restriction_between(&a, &full, &small)?;
                let through = restriction_between(&a, &t, &small)?
                    .compose(&restriction_between(&a, &full, &t)?)?;
                run.case(
                    direct.equal(&through)?,
                    || json!({"instance": iname, "group": gname}),
                );
            }
        }
    }
    Ok(run.finish())
}

fn translation_restriction(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(10);
    let mut run = Run::new("translation-restriction", json!({"per_combo": n}), p.seed);
    for (iname, instance) in desk_instances() {
        for (gname, group) in desk_groups() {
            let mut s = Sampler::new(p.seed ^ hash_name(iname) ^ hash_name(gname));
            let elems = group.elements()?;
            for _ in 0..n {
                let a = s.object(instance, 3);
                let subset = s.subset(&group, 3);
                let g = elems[s.index(elems.len())].clone();
                let translated = subset.translate(&g)?;
                let lhs = translation_iso(&a, &subset, &g)?.compose(&restriction_from_group(
                    &group,
                    &a,
                    &translated,
                )?)?;
                let rhs = restriction_from_group(&group, &a, &subset)?
                    .compose(&shift_morphism(&group, &a, &g)?)?;
                run.case(lhs.equal(&rhs)?, || {
                    json!({
                        "instance": iname,
                        "group": gname,
                        "subset": subset.elements().iter().map(group_elem_to_json).collect::<Vec<_>>(),
                        "g": group_elem_to_json(&g),
                    })
                });
            }
        }
    }
    Ok(run.finish())
}

fn pullback_functor(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(30);
    let mut run = Run::new("pullback-functor", json!({"per_instance": n}), p.seed);
    for (iname, instance) in desk_instances() {
        let mut s = Sampler::new(p.seed ^ hash_name(iname));
        for _ in 0..n {
            let a = s.object(instance, 3);
            let (ni, nj, nk) = (1 + s.index(3), 1 + s.index(3), 1 + s.index(3));
            let f: Vec<usize> = (0..ni).map(|_| s.index(nj)).collect();
            let g: Vec<usize> = (0..nj).map(|_| s.index(nk)).collect();
            let gof: Vec<usize> = f.iter().map(|&i| g[i]).collect();
            let composite = alphabet::index_pullback(&a, nk, &gof)?;
            let staged = alphabet::index_pullback(&a, nj, &f)?
                .compose(&alphabet::index_pullback(&a, nk, &g)?)?;
            let identity_law = {
                let idx: Vec<usize> = (0..ni).collect();
                alphabet::index_pullback(&a, ni, &idx)?
                    .equal(&Morphism::identity(power(&a, ni).carrier()))?
            };
            run.case(
                composite.equal(&staged)? && identity_law,
                || json!({"instance": iname, "f": f, "g": g}),
            );
        }
    }
    Ok(run.finish())
}

fn shift_action(p: &SuiteParams) -> Result<CheckReport> {
    let mut run = Run::new("shift-action", json!({"exhaustive": true}), p.seed);
    for (iname, instance) in desk_instances() {
        for (gname, group) in desk_groups() {
            let mut s = Sampler::new(p.seed ^ hash_name(iname) ^ hash_name(gname));
            let a = s.object(instance, 3);
            let full = group_as_subset(&group)?;
            let pow = power(&a, full.len());
            for g in full.elements() {
                let shift_g = shift_morphism(&group, &a, g)?;
                for h in full.elements() {
                    let shift_h = shift_morphism(&group, &a, h)?;
                    let gh = group.op(g, h)?;
                    let action =
                        shift_morphism(&group, &a, &gh)?.equal(&shift_g.compose(&shift_h)?)?;
                    let hg = group.op(h, g)?;
                    let projections = pow.projection(full.position(&hg).unwrap()).equal(
                        &pow.projection(full.position(h).unwrap())
                            .compose(&shift_g)?,
                    )?;
                    run.case(action && projections, || {
                        json!({
                            "instance": iname,
                            "group": gname,
                            "g": group_elem_to_json(g),
                            "h": group_elem_to_json(h),
                        })
                    });
                }
            }
        }
    }
    Ok(run.finish())
}

fn equivariant_determined(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(15);
    let mut run = Run::new("equivariant-determined", json!({"per_combo": n}), p.seed);
    for (iname, instance) in desk_instances() {
        for (gname, group) in desk_groups() {
            let mut s = Sampler::new(p.seed ^ hash_name(iname) ^ hash_name(gname));
            let full = group_as_subset(&group)?;
            for _ in 0..n {
                let tau = s.ca(&group, instance, 3, 2);
                // A padded presentation of the same automaton: enlarge the
                // neighborhood and precompose with the restriction.
                let extra = s.subset(&group, 2);
                let padded_nbhd = tau.rule().neighborhood().union(&extra)?;
                let res = restriction_between(
                    tau.rule().source_alphabet(),
                    &padded_nbhd,
                    tau.rule().neighborhood(),
                )?;
                let sigma = CellularAutomaton::new(LocalRule::new(
                    tau.rule().source_alphabet().clone(),
                    tau.rule().target_alphabet().clone(),
                    padded_nbhd,
                    tau.rule().morphism().compose(&res)?,
                )?);
                let rt = tau.realize()?;
                let rs = sigma.realize()?;
                let same_identity_row = project_at_identity(&group, &full, &tau, &rt)?
                    .equal(&project_at_identity(&group, &full, &sigma, &rs)?)?;
                let positive = same_identity_row && rt.equal(&rs)?;

                // Conversely, distinct realizations must differ at the
                // identity cell already.
                let other = s.ca_between(
                    &group,
                    tau.rule().source_alphabet(),
                    tau.rule().target_alphabet(),
                    2,
                );
                let ro = other.realize()?;
                let contrapositive = rt.equal(&ro)?
                    || !project_at_identity(&group, &full, &tau, &rt)?
                        .equal(&project_at_identity(&group, &full, &other, &ro)?)?;
                run.case(
                    positive && contrapositive,
                    || json!({"instance": iname, "group": gname}),
                );
            }
        }
    }
    Ok(run.finish())
}

fn project_at_identity(
    group: &Group,
    full: &FiniteSubset,
    ca: &CellularAutomaton,
    realized: &Morphism,
) -> Result<Morphism> {
    let pow = power(ca.rule().target_alphabet(), full.len());
    pow.projection(full.position(&group.identity()).unwrap())
        .compose(realized)
}

// ---------------------------------------------------------------------------
// Automaton-level theorems

fn compose_suite(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(25);
    let mut run = Run::new(
        "compose",
        json!({"per_combo": n, "radius": p.radius}),
        p.seed,
    );
    for (iname, instance) in desk_instances() {
        for (gname, group) in desk_groups() {
            let mut s = Sampler::new(p.seed ^ hash_name(iname) ^ hash_name(gname));
            for _ in 0..n {
                let inner = s.ca(&group, instance, 3, 2);
                let c_obj = s.object(instance, 3);
                let outer = s.ca_between(&group, inner.rule().target_alphabet(), &c_obj, 2);
                let composed = CellularAutomaton::compose(&outer, &inner)?;
                let expected_nbhd = inner
                    .rule()
                    .neighborhood()
                    .product(outer.rule().neighborhood())?;
                let nbhd_ok = composed.rule().neighborhood() == &expected_nbhd;
                let realized_ok = composed
                    .realize()?
                    .equal(&outer.realize()?.compose(&inner.realize()?)?)?;
                run.case(nbhd_ok && realized_ok, || {
                    json!({
                        "instance": iname,
                        "group": gname,
                        "inner_neighborhood": subset_json(inner.rule().neighborhood()),
                        "outer_neighborhood": subset_json(outer.rule().neighborhood()),
                    })
                });
            }
        }
    }
    // Pointwise agreement with sequential application over the integers.
    let z = Group::z_power(1);
    let ball = z.ball(p.radius);
    for (iname, instance) in concrete_instances() {
        let mut s = Sampler::new(p.seed ^ hash_name(iname) ^ hash_name("Z"));
        for _ in 0..n {
            let inner = s.ca(&z, instance, 3, 2);
            let c_obj = s.object(instance, 3);
            let outer = s.ca_between(&z, inner.rule().target_alphabet(), &c_obj, 2);
            let composed = CellularAutomaton::compose(&outer, &inner)?;
            let c = s.config(&z, inner.rule().source_alphabet());
            let one_shot = composed.apply(&c)?;
            let sequential = outer.apply(&inner.apply(&c)?)?;
            run.case(
                one_shot.agrees_on(&sequential, &ball)?,
                || json!({"instance": iname, "group": "Z"}),
            );
        }
    }
    Ok(run.finish())
}

fn pushforward_functor(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(40);
    let mut run = Run::new("pushforward-functor", json!({"per_instance": n}), p.seed);
    for (iname, instance) in desk_instances() {
        let mut s = Sampler::new(p.seed ^ hash_name(iname));
        for _ in 0..n {
            let a = s.object(instance, 3);
            let b = s.object(instance, 3);
            let c = s.object(instance, 3);
            let f = s.morphism(&a, &b);
            let g = s.morphism(&b, &c);
            let arity = s.index(4);
            let composite = pushforward(&g.compose(&f)?, arity);
            let staged = pushforward(&g, arity).compose(&pushforward(&f, arity))?;
            let id_law = pushforward(&Morphism::identity(&a), arity)
                .equal(&Morphism::identity(power(&a, arity).carrier()))?;
            run.case(composite.equal(&staged)? && id_law, || {
                json!({
                    "instance": iname,
                    "f": morphism_to_json(&f),
                    "g": morphism_to_json(&g),
                    "arity": arity,
                })
            });
        }
    }
    Ok(run.finish())
}

fn pushforward_ca(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(15);
    let mut run = Run::new("pushforward-ca", json!({"per_combo": n}), p.seed);
    for (iname, instance) in desk_instances() {
        for (gname, group) in desk_groups() {
            let mut s = Sampler::new(p.seed ^ hash_name(iname) ^ hash_name(gname));
            let order = group.order().unwrap();
            for _ in 0..n {
                let a = s.object(instance, 3);
                let b = s.object(instance, 3);
                let c = s.object(instance, 3);
                let f = s.morphism(&a, &b);
                let g = s.morphism(&b, &c);
                let ca_f = CellularAutomaton::pushforward(&f, &group)?;
                let realize_matches = ca_f.realize()?.equal(&pushforward_morphism(&group, &f)?)?;
                // Cellwise commutation with every projection.
                let pow_a = power(&a, order);
                let pow_b = power(&b, order);
                let realized = ca_f.realize()?;
                let cellwise = (0..order).try_fold(true, |acc, i| -> Result<bool> {
                    Ok(acc
                        && pow_b
                            .projection(i)
                            .compose(&realized)?
                            .equal(&f.compose(&pow_a.projection(i))?)?)
                })?;
                let functorial = CellularAutomaton::pushforward(&g.compose(&f)?, &group)?
                    .realize()?
                    .equal(
                        &CellularAutomaton::pushforward(&g, &group)?
                            .realize()?
                            .compose(&CellularAutomaton::pushforward(&f, &group)?.realize()?)?,
                    )?;
                run.case(
                    realize_matches && cellwise && functorial,
                    || json!({"instance": iname, "group": gname, "f": morphism_to_json(&f)}),
                );
            }
        }
    }
    Ok(run.finish())
}

fn product_suite(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(10);
    let perturbations = 20;
    let mut run = Run::new(
        "product",
        json!({"per_combo": n, "perturbations": perturbations}),
        p.seed,
    );
    for (iname, instance) in desk_instances() {
        for (gname, group) in desk_groups() {
            let mut s = Sampler::new(p.seed ^ hash_name(iname) ^ hash_name(gname));
            for _ in 0..n {
                let c_obj = s.object(instance, 3);
                let a_obj = s.object(instance, 2);
                let b_obj = s.object(instance, 2);
                let alpha = s.ca_between(&group, &c_obj, &a_obj, 2);
                let beta = s.ca_between(&group, &c_obj, &b_obj, 2);
                let (tau, pa, pb) = CellularAutomaton::product(&alpha, &beta)?;
                let rt = tau.realize()?;
                let projections = pa.realize()?.compose(&rt)?.equal(&alpha.realize()?)?
                    && pb.realize()?.compose(&rt)?.equal(&beta.realize()?)?;
                // Uniqueness: any candidate that realizes differently must
                // break one of the projection equations.
                let mut unique = true;
                for _ in 0..perturbations {
                    let candidate = CellularAutomaton::new(LocalRule::new(
                        tau.rule().source_alphabet().clone(),
                        tau.rule().target_alphabet().clone(),
                        tau.rule().neighborhood().clone(),
                        s.perturb(tau.rule().morphism()),
                    )?);
                    let rc = candidate.realize()?;
                    if rc.equal(&rt)? {
                        continue;
                    }
                    let still_satisfies = pa.realize()?.compose(&rc)?.equal(&alpha.realize()?)?
                        && pb.realize()?.compose(&rc)?.equal(&beta.realize()?)?;
                    if still_satisfies {
                        unique = false;
                        break;
                    }
                }
                run.case(
                    projections && unique,
                    || json!({"instance": iname, "group": gname}),
                );
            }
        }
    }
    Ok(run.finish())
}

fn chl_roundtrip(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(15);
    let mut run = Run::new("chl-roundtrip", json!({"per_combo": n}), p.seed);
    for (iname, instance) in desk_instances() {
        for (gname, group) in desk_groups() {
            let mut s = Sampler::new(p.seed ^ hash_name(iname) ^ hash_name(gname));
            for _ in 0..n {
                let tau = s.ca(&group, instance, 3, 2);
                let f = tau.realize()?;
                let a = tau.rule().source_alphabet();
                let b = tau.rule().target_alphabet();
                let extracted = chl_extract(&group, a, b, &f)?;
                let ok = match &extracted {
                    // Extraction re-verifies the roundtrip internally; the
                    // minimal neighborhood must sit inside the sampled one.
                    ChlOutcome::Automaton(ca) => ca
                        .rule()
                        .neighborhood()
                        .is_subset_of(tau.rule().neighborhood()),
                    ChlOutcome::NotEquivariant { .. } => false,
                };
                run.case(ok, || json!({"instance": iname, "group": gname}));

                // A perturbed realization that breaks equivariance must be
                // rejected with a verifiable witness.
                if group.order().unwrap() < 2 {
                    continue;
                }
                let mut rejected = None;
                for _ in 0..20 {
                    let broken = s.perturb(&f);
                    if broken.equal(&f)? {
                        continue;
                    }
                    if equivariance_counterexample(&group, a, b, &broken)?.is_some() {
                        rejected = Some(matches!(
                            chl_extract(&group, a, b, &broken)?,
                            ChlOutcome::NotEquivariant { .. }
                        ));
                        break;
                    }
                }
                if let Some(ok) = rejected {
                    run.case(
                        ok,
                        || json!({"instance": iname, "group": gname, "phase": "rejection"}),
                    );
                }
            }
        }
    }
    Ok(run.finish())
}

// ---------------------------------------------------------------------------
// Generalized automata

fn hom_pairs(n_take: usize) -> Result<Vec<(&'static str, &'static str, GroupHom)>> {
    let mut out = Vec::new();
    for (sname, source) in desk_groups() {
        for (tname, target) in desk_groups() {
            let homs = GroupHom::enumerate(&source, &target)?;
            for hom in homs.into_iter().take(n_take) {
                out.push((sname, tname, hom));
            }
        }
    }
    Ok(out)
}

fn gca_equivariance(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(5);
    let mut run = Run::new("gca-equivariance", json!({"per_combo": n}), p.seed);
    for (iname, instance) in desk_instances() {
        // φ : H → G ranges over every homomorphism between desk groups.
        for (hname, gname, phi) in hom_pairs(usize::MAX)? {
            let mut s =
                Sampler::new(p.seed ^ hash_name(iname) ^ hash_name(hname) ^ hash_name(gname));
            let g_group = phi.target().clone();
            let h_group = phi.source().clone();
            for _ in 0..n {
                let ca = s.ca(&g_group, instance, 2, 2);
                let gca = GeneralizedCA::new(phi.clone(), ca.rule().clone())?;
                let realized = gca.realize()?;
                let a = gca.rule().source_alphabet();
                let b = gca.rule().target_alphabet();
                let mut ok = true;
                for h in h_group.elements()? {
                    let lhs = realized.compose(&shift_morphism(&g_group, a, &phi.eval(&h)?)?)?;
                    let rhs = shift_morphism(&h_group, b, &h)?.compose(&realized)?;
                    if !lhs.equal(&rhs)? {
                        ok = false;
                        break;
                    }
                }
                run.case(
                    ok,
                    || json!({"instance": iname, "source": gname, "target": hname}),
                );
            }
        }
    }
    Ok(run.finish())
}

fn gca_compose(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(4);
    let mut run = Run::new("gca-compose", json!({"per_combo": n}), p.seed);
    let groups = desk_groups();
    for (iname, instance) in desk_instances() {
        for (g_name, g_group) in &groups {
            for (h_name, h_group) in &groups {
                for (k_name, k_group) in &groups {
                    let mut s = Sampler::new(
                        p.seed
                            ^ hash_name(iname)
                            ^ hash_name(g_name)
                            ^ hash_name(h_name).rotate_left(1)
                            ^ hash_name(k_name).rotate_left(2),
                    );
                    let inner_homs = GroupHom::enumerate(h_group, g_group)?;
                    let outer_homs = GroupHom::enumerate(k_group, h_group)?;
                    for _ in 0..n {
                        let phi = inner_homs[s.index(inner_homs.len())].clone();
                        let inner_ca = s.ca(g_group, instance, 2, 2);
                        let inner = GeneralizedCA::new(phi, inner_ca.rule().clone())?;
                        let c_obj = s.object(instance, 2);
                        let outer_ca =
                            s.ca_between(h_group, inner.rule().target_alphabet(), &c_obj, 2);
                        let psi = outer_homs[s.index(outer_homs.len())].clone();
                        let outer = GeneralizedCA::new(psi.clone(), outer_ca.rule().clone())?;
                        let composed = GeneralizedCA::compose(&outer, &inner)?;
                        let expected_nbhd = inner
                            .rule()
                            .neighborhood()
                            .product(&outer.rule().neighborhood().image(inner.hom())?)?;
                        let nbhd_ok = composed.rule().neighborhood() == &expected_nbhd;
                        let hom_ok = composed.hom() == &GroupHom::compose(inner.hom(), &psi)?;
                        let realized_ok = composed
                            .realize()?
                            .equal(&outer.realize()?.compose(&inner.realize()?)?)?;
                        run.case(nbhd_ok && hom_ok && realized_ok, || {
                            json!({
                                "instance": iname,
                                "groups": [g_name, h_name, k_name],
                            })
                        });
                    }
                }
            }
        }
    }
    Ok(run.finish())
}

fn gca_pullback(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(3);
    let mut run = Run::new("gca-pullback", json!({"per_combo": n}), p.seed);
    for (iname, instance) in desk_instances() {
        for (hname, gname, phi) in hom_pairs(usize::MAX)? {
            let mut s =
                Sampler::new(p.seed ^ hash_name(iname) ^ hash_name(hname) ^ hash_name(gname));
            for _ in 0..n {
                let a = s.object(instance, 3);
                let pulled = GeneralizedCA::pullback(phi.clone(), &a);
                let realized = pulled.realize()?;
                // Direct construction: project each target cell at its image.
                let g_full = group_as_subset(phi.target())?;
                let map = phi
                    .source()
                    .elements()?
                    .iter()
                    .map(|h| Ok(g_full.position(&phi.eval(h)?).unwrap()))
                    .collect::<Result<Vec<_>>>()?;
                let direct = alphabet::index_pullback(&a, g_full.len(), &map)?;
                run.case(
                    realized.equal(&direct)?,
                    || json!({"instance": iname, "hom": [gname, hname]}),
                );
            }
        }
    }
    // Contravariance through a middle group.
    for (iname, instance) in concrete_instances() {
        let mut s = Sampler::new(p.seed ^ hash_name(iname) ^ 0x5eed);
        let z4 = Group::cyclic(4);
        let z2 = Group::cyclic(2);
        for phi in GroupHom::enumerate(&z2, &z4)? {
            for psi in GroupHom::enumerate(&z4, &z2)? {
                let a = s.object(instance, 3);
                let staged = GeneralizedCA::pullback(psi.clone(), &a)
                    .realize()?
                    .compose(&GeneralizedCA::pullback(phi.clone(), &a).realize()?)?;
                let composite =
                    GeneralizedCA::pullback(GroupHom::compose(&phi, &psi)?, &a).realize()?;
                run.case(
                    composite.equal(&staged)?,
                    || json!({"instance": iname, "via": "Z4->Z2->Z4"}),
                );
            }
        }
    }
    Ok(run.finish())
}

fn gca_factorization(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(5);
    let mut run = Run::new("gca-factorization", json!({"per_combo": n}), p.seed);
    for (iname, instance) in desk_instances() {
        for (hname, gname, phi) in hom_pairs(usize::MAX)? {
            let mut s =
                Sampler::new(p.seed ^ hash_name(iname) ^ hash_name(hname) ^ hash_name(gname));
            let g_group = phi.target().clone();
            for _ in 0..n {
                let ca = s.ca(&g_group, instance, 2, 2);
                let gca = GeneralizedCA::new(phi.clone(), ca.rule().clone())?;
                let (tau_g, hom) = gca.factorize();
                let b = gca.rule().target_alphabet();
                let pulled = GeneralizedCA::pullback(hom, b).realize()?;
                let identity_holds = gca.realize()?.equal(&pulled.compose(&tau_g.realize()?)?)?;
                // Uniqueness: a perturbed ordinary automaton either realizes
                // identically or fails the factorization identity.
                let mut unique = true;
                for _ in 0..10 {
                    let candidate = CellularAutomaton::new(LocalRule::new(
                        tau_g.rule().source_alphabet().clone(),
                        tau_g.rule().target_alphabet().clone(),
                        tau_g.rule().neighborhood().clone(),
                        s.perturb(tau_g.rule().morphism()),
                    )?);
                    let rc = candidate.realize()?;
                    if rc.equal(&tau_g.realize()?)? {
                        continue;
                    }
                    if gca.realize()?.equal(&pulled.compose(&rc)?)? {
                        unique = false;
                        break;
                    }
                }
                run.case(
                    identity_holds && unique,
                    || json!({"instance": iname, "hom": [gname, hname]}),
                );
            }
        }
    }

    // Constant rules factor through every homomorphism: a non-uniqueness
    // witness whenever two distinct ones exist.
    let z2 = Group::cyclic(2);
    let z4 = Group::cyclic(4);
    let a = Object::finset(2);
    let constant = Morphism::finset_table(power(&a, 1).carrier().clone(), a.clone(), vec![1, 1])?;
    let rule = LocalRule::new(
        a.clone(),
        a.clone(),
        FiniteSubset::identity_singleton(z4.clone()),
        constant,
    )?;
    let tau_g = CellularAutomaton::new(rule.clone()).realize()?;
    let homs = GroupHom::enumerate(&z2, &z4)?;
    let mut factoring = Vec::new();
    for hom in &homs {
        let gca = GeneralizedCA::new(hom.clone(), rule.clone())?;
        let pulled = GeneralizedCA::pullback(hom.clone(), &a).realize()?;
        if gca.realize()?.equal(&pulled.compose(&tau_g)?)? {
            factoring.push(hom.clone());
        }
    }
    // Every hom factors the constant automaton, and they all produce the
    // same realized morphism.
    let mut all_equal = true;
    let first = GeneralizedCA::new(factoring[0].clone(), rule.clone())?.realize()?;
    for hom in &factoring[1..] {
        if !GeneralizedCA::new(hom.clone(), rule.clone())?
            .realize()?
            .equal(&first)?
        {
            all_equal = false;
        }
    }
    run.case(
        factoring.len() == homs.len() && factoring.len() >= 2 && all_equal,
        || json!({"phase": "constant-witness", "factoring_homs": factoring.len()}),
    );
    Ok(run.finish())
}

fn pullback_pushforward_square(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(4);
    let mut run = Run::new(
        "pullback-pushforward-square",
        json!({"per_combo": n}),
        p.seed,
    );
    for (iname, instance) in desk_instances() {
        for (hname, gname, phi) in hom_pairs(usize::MAX)? {
            let mut s =
                Sampler::new(p.seed ^ hash_name(iname) ^ hash_name(hname) ^ hash_name(gname));
            let g_group = phi.target().clone();
            let h_group = phi.source().clone();
            for _ in 0..n {
                let a = s.object(instance, 2);
                let b = s.object(instance, 2);
                let f = s.morphism(&a, &b);
                let pull_a = GeneralizedCA::pullback(phi.clone(), &a).realize()?;
                let pull_b = GeneralizedCA::pullback(phi.clone(), &b).realize()?;
                let push_g = pushforward_morphism(&g_group, &f)?;
                let push_h = pushforward_morphism(&h_group, &f)?;
                let lhs = pull_b.compose(&push_g)?;
                let rhs = push_h.compose(&pull_a)?;
                run.case(lhs.equal(&rhs)?, || {
                    json!({
                        "instance": iname,
                        "hom": [gname, hname],
                        "f": morphism_to_json(&f),
                    })
                });
            }
        }
    }
    Ok(run.finish())
}

fn weak_product_suite(p: &SuiteParams) -> Result<CheckReport> {
    let n = p.cases.unwrap_or(16);
    let g_group = Group::cyclic(2);
    let h_group = Group::cyclic(3);
    let k_group = Group::cyclic(6);
    let free = Group::free_product(g_group.clone(), h_group.clone())?;
    let ball = free.ball(p.radius.min(2));
    let mut run = Run::new(
        "weak-product",
        json!({
            "universes": ["Z2", "Z3"],
            "through": "Z6",
            "configs": n,
            "ball": ball.len(),
            "recorded": {"mediator_unique_in_constant_case": false},
        }),
        p.seed,
    );
    let a = Object::finset(2);
    let b = Object::finset(2);
    let mut s = Sampler::new(p.seed);

    // Injective-image homomorphisms Z2 → Z6 and Z3 → Z6.
    let phi = GroupHom::enumerate(&g_group, &k_group)?
        .into_iter()
        .find(|h| h.eval(&GroupElem::Id(1)).unwrap() == GroupElem::Id(3))
        .expect("Z2 embeds in Z6");
    let psi = GroupHom::enumerate(&h_group, &k_group)?
        .into_iter()
        .find(|h| h.eval(&GroupElem::Id(1)).unwrap() == GroupElem::Id(2))
        .expect("Z3 embeds in Z6");

    let c_obj = Object::finset(2);
    let alpha = GeneralizedCA::new(
        phi.clone(),
        s.ca_between(&k_group, &c_obj, &a, 2).rule().clone(),
    )?;
    let beta = GeneralizedCA::new(
        psi.clone(),
        s.ca_between(&k_group, &c_obj, &b, 2).rule().clone(),
    )?;
    let mediator = weak_product_mediator(&alpha, &beta)?;
    let (leg_a, leg_b) = weak_product(&a, &b, &g_group, &h_group)?;

    // Independent route for the mediator's values: the product automaton
    // over the shared universe, sampled along the coproduct mediator.
    let (tau_k, _, _) = CellularAutomaton::product(
        &CellularAutomaton::new(alpha.rule().clone()),
        &CellularAutomaton::new(beta.rule().clone()),
    )?;
    let gamma = mediator.hom().clone();

    for _ in 0..n {
        let c = s.config(&k_group, &c_obj);
        let mediated = mediator.apply(&c)?;
        let through_a = leg_a.apply(&mediated)?;
        let through_b = leg_b.apply(&mediated)?;
        let alpha_out = alpha.apply(&c)?;
        let beta_out = beta.apply(&c)?;
        let mut ok = true;
        for g in g_group.elements()? {
            if through_a.get(&g)? != alpha_out.get(&g)? {
                ok = false;
            }
        }
        for h in h_group.elements()? {
            if through_b.get(&h)? != beta_out.get(&h)? {
                ok = false;
            }
        }
        let via_k = tau_k.apply(&c)?;
        for w in ball.elements() {
            if mediated.get(w)? != via_k.get(&gamma.eval(w)?)? {
                ok = false;
            }
        }
        run.case(ok, || json!({"phase": "projection-equations"}));
    }

    // In the constant case a second, different mediator satisfies the same
    // equations, so the mediator is not unique (hence only a weak product).
    let constant_rule = |target: &Object, value: usize| -> Result<LocalRule> {
        let table = vec![value; c_obj.rep_size()];
        let mu = Morphism::finset_table(power(&c_obj, 1).carrier().clone(), target.clone(), table)?;
        LocalRule::new(
            c_obj.clone(),
            target.clone(),
            FiniteSubset::identity_singleton(k_group.clone()),
            mu,
        )
    };
    let alpha_const = GeneralizedCA::new(phi, constant_rule(&a, 1)?)?;
    let beta_const = GeneralizedCA::new(psi, constant_rule(&b, 0)?)?;
    let tau1 = weak_product_mediator(&alpha_const, &beta_const)?;
    let tau2 = GeneralizedCA::new(GroupHom::trivial(&free, &k_group), tau1.rule().clone())?;
    let c = s.config(&k_group, &c_obj);
    let out1 = leg_a.apply(&tau1.apply(&c)?)?;
    let out2 = leg_a.apply(&tau2.apply(&c)?)?;
    let alpha_out = alpha_const.apply(&c)?;
    let mut both_mediate = tau1.hom() != tau2.hom();
    for g in g_group.elements()? {
        if out1.get(&g)? != alpha_out.get(&g)? || out2.get(&g)? != alpha_out.get(&g)? {
            both_mediate = false;
        }
    }
    run.case(
        both_mediate,
        || json!({"phase": "constant-second-mediator"}),
    );
    Ok(run.finish())
}

fn subset_json(s: &FiniteSubset) -> Value {
    Value::Array(s.elements().iter().map(group_elem_to_json).collect())
}

fn hash_name(name: &str) -> u64 {
    name.bytes().fold(0xcbf29ce484222325u64, |acc, b| {
        (acc ^ b as u64).wrapping_mul(0x100000001b3)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(
            run_suite("nonsense", &SuiteParams::default()),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn suite_names_are_stable() {
        let names = suite_names();
        assert_eq!(names.len(), 18);
        assert!(names.contains(&"compose"));
        assert!(names.contains(&"weak-product"));
    }
}
