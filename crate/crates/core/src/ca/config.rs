use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use crate::alphabet::{encode_tuple, Elem, Object};
use crate::ca::CellularAutomaton;
use crate::error::{Error, Result};
use crate::gca::GeneralizedCA;
use crate::group::{FiniteSubset, Group, GroupElem};

/// Cells read through a traced configuration, in canonical order.
pub type AccessLog = Arc<Mutex<BTreeSet<GroupElem>>>;

/// A total assignment of alphabet points to group elements.
///
/// Dense configurations store every value of a finite universe; sparse ones
/// store a finite support over a default; derived ones evaluate an automaton
/// against an inner configuration on demand, memoizing each cell. Cloning is
/// cheap and shares storage. Evaluation holds the derived cell cache's lock,
/// so each cell is computed at most once even under concurrent readers;
/// nested derivations lock outermost first and cannot deadlock.
#[derive(Clone, Debug)]
pub struct Configuration {
    repr: Arc<Repr>,
}

#[derive(Debug)]
#[allow(clippy::large_enum_variant)]
enum Repr {
    Dense {
        group: Group,
        alphabet: Object,
        values: Vec<Elem>,
    },
    Sparse {
        group: Group,
        alphabet: Object,
        default: Elem,
        support: BTreeMap<GroupElem, Elem>,
    },
    Derived {
        ca: CellularAutomaton,
        inner: Configuration,
        memo: Mutex<HashMap<GroupElem, Elem>>,
    },
    DerivedGca {
        gca: GeneralizedCA,
        inner: Configuration,
        memo: Mutex<HashMap<GroupElem, Elem>>,
    },
    Translated {
        inner: Configuration,
        by: GroupElem,
    },
    Traced {
        inner: Configuration,
        log: AccessLog,
    },
}

impl Configuration {
    /// A configuration over a finite universe from its full value vector in
    /// canonical element order.
    pub fn dense(group: Group, alphabet: Object, values: Vec<Elem>) -> Result<Configuration> {
        let n = group
            .order()
            .ok_or_else(|| Error::NotFinite("dense configurations need a finite group".into()))?;
        if values.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "{} values for a group of order {n}",
                values.len()
            )));
        }
        for v in &values {
            alphabet.check_elem(v)?;
        }
        Ok(Configuration {
            repr: Arc::new(Repr::Dense {
                group,
                alphabet,
                values,
            }),
        })
    }

    /// A finitely supported configuration over a default value.
    pub fn sparse(
        group: Group,
        alphabet: Object,
        default: Elem,
        support: Vec<(GroupElem, Elem)>,
    ) -> Result<Configuration> {
        alphabet.check_elem(&default)?;
        let mut map = BTreeMap::new();
        for (g, v) in support {
            if !group.contains(&g) {
                return Err(Error::NotAMember(g.to_string()));
            }
            alphabet.check_elem(&v)?;
            map.insert(g, v);
        }
        Ok(Configuration {
            repr: Arc::new(Repr::Sparse {
                group,
                alphabet,
                default,
                support: map,
            }),
        })
    }

    /// The constant configuration.
    pub fn constant(group: Group, alphabet: Object, value: Elem) -> Result<Configuration> {
        Configuration::sparse(group, alphabet, value, Vec::new())
    }

    /// Wraps a configuration so that every read is recorded; used to check
    /// that evaluation touches only the cells it is allowed to.
    pub fn traced(inner: Configuration) -> (Configuration, AccessLog) {
        let log: AccessLog = Arc::new(Mutex::new(BTreeSet::new()));
        let traced = Configuration {
            repr: Arc::new(Repr::Traced {
                inner,
                log: Arc::clone(&log),
            }),
        };
        (traced, log)
    }

    pub fn group(&self) -> &Group {
        match &*self.repr {
            Repr::Dense { group, .. } | Repr::Sparse { group, .. } => group,
            Repr::Derived { ca, .. } => ca.universe(),
            Repr::DerivedGca { gca, .. } => gca.target_universe(),
            Repr::Translated { inner, .. } => inner.group(),
            Repr::Traced { inner, .. } => inner.group(),
        }
    }

    pub fn alphabet(&self) -> &Object {
        match &*self.repr {
            Repr::Dense { alphabet, .. } | Repr::Sparse { alphabet, .. } => alphabet,
            Repr::Derived { ca, .. } => ca.rule().target_alphabet(),
            Repr::DerivedGca { gca, .. } => gca.rule().target_alphabet(),
            Repr::Translated { inner, .. } => inner.alphabet(),
            Repr::Traced { inner, .. } => inner.alphabet(),
        }
    }

    /// The shifted view `x ↦ self(xg)` (the point-level shift action).
    pub fn right_translate(&self, g: GroupElem) -> Result<Configuration> {
        if !self.group().contains(&g) {
            return Err(Error::NotAMember(g.to_string()));
        }
        Ok(Configuration {
            repr: Arc::new(Repr::Translated {
                inner: self.clone(),
                by: g,
            }),
        })
    }

    /// The value at a cell.
    pub fn get(&self, g: &GroupElem) -> Result<Elem> {
        match &*self.repr {
            Repr::Dense { group, values, .. } => {
                let i = group.element_index(g)?;
                Ok(values[i].clone())
            }
            Repr::Sparse {
                group,
                default,
                support,
                ..
            } => {
                if !group.contains(g) {
                    return Err(Error::NotAMember(g.to_string()));
                }
                Ok(support.get(g).cloned().unwrap_or_else(|| default.clone()))
            }
            Repr::Derived { ca, inner, memo } => {
                let mut cache = memo.lock().expect("cell cache poisoned");
                if let Some(v) = cache.get(g) {
                    return Ok(v.clone());
                }
                let value = evaluate_cell(ca.rule(), ca.universe(), inner, g)?;
                cache.insert(g.clone(), value.clone());
                Ok(value)
            }
            Repr::DerivedGca { gca, inner, memo } => {
                if !gca.target_universe().contains(g) {
                    return Err(Error::NotAMember(g.to_string()));
                }
                let mut cache = memo.lock().expect("cell cache poisoned");
                if let Some(v) = cache.get(g) {
                    return Ok(v.clone());
                }
                let translated = gca.hom().eval(g)?;
                let value = evaluate_cell(gca.rule(), gca.source_universe(), inner, &translated)?;
                cache.insert(g.clone(), value.clone());
                Ok(value)
            }
            Repr::Translated { inner, by } => inner.get(&inner.group().op(g, by)?),
            Repr::Traced { inner, log } => {
                log.lock().expect("access log poisoned").insert(g.clone());
                inner.get(g)
            }
        }
    }

    /// Whether two configurations agree on every cell of a window.
    pub fn agrees_on(&self, other: &Configuration, window: &FiniteSubset) -> Result<bool> {
        for g in window.elements() {
            if self.get(g)? != other.get(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Window equality on the ball of the given radius (the engine's notion
    /// of configuration equality over infinite universes).
    pub fn agrees_on_ball(&self, other: &Configuration, radius: usize) -> Result<bool> {
        self.agrees_on(other, &self.group().ball(radius))
    }
}

/// One cell of a derived configuration: read the translated neighborhood,
/// pack it into the power carrier, apply the local morphism.
fn evaluate_cell(
    rule: &crate::ca::LocalRule,
    group: &Group,
    inner: &Configuration,
    cell: &GroupElem,
) -> Result<Elem> {
    let neighbors = rule
        .neighborhood()
        .elements()
        .iter()
        .map(|s| inner.get(&group.op(s, cell)?))
        .collect::<Result<Vec<_>>>()?;
    let packed = encode_tuple(rule.source_alphabet(), &neighbors)?;
    rule.morphism().apply(&packed)
}

fn check_applicable(
    rule: &crate::ca::LocalRule,
    universe: &Group,
    config: &Configuration,
) -> Result<()> {
    if !rule.source_alphabet().instance().has_element_layer() {
        return Err(Error::NoElementLayer);
    }
    if config.alphabet() != rule.source_alphabet() {
        return Err(Error::ShapeMismatch(
            "configuration alphabet does not match".into(),
        ));
    }
    if config.group() != universe {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

pub(crate) fn apply(ca: &CellularAutomaton, config: &Configuration) -> Result<Configuration> {
    check_applicable(ca.rule(), ca.universe(), config)?;
    Ok(Configuration {
        repr: Arc::new(Repr::Derived {
            ca: ca.clone(),
            inner: config.clone(),
            memo: Mutex::new(HashMap::new()),
        }),
    })
}

pub(crate) fn apply_generalized(
    gca: &GeneralizedCA,
    config: &Configuration,
) -> Result<Configuration> {
    check_applicable(gca.rule(), gca.source_universe(), config)?;
    Ok(Configuration {
        repr: Arc::new(Repr::DerivedGca {
            gca: gca.clone(),
            inner: config.clone(),
            memo: Mutex::new(HashMap::new()),
        }),
    })
}
