//! Cellular automata over a single group universe.
//!
//! An automaton is a finite neighborhood `S ⊆ G` plus a local defining
//! morphism `μ : A^S → B`. Everything else — identities, shifts,
//! compositions, products, pushforwards — is built from that data. Over a
//! finite universe an automaton can be realized as one morphism
//! `A^G → B^G`; over any universe with a concrete alphabet it acts lazily on
//! configurations.

mod config;

pub(crate) use config::apply_generalized;
pub use config::{AccessLog, Configuration};

use crate::alphabet::{self, pair, power, pushforward, tuple, Morphism, Object};
use crate::error::{Error, Result};
use crate::group::{FiniteSubset, Group, GroupElem};

/// A finite neighborhood together with its local defining morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRule {
    source_alphabet: Object,
    target_alphabet: Object,
    neighborhood: FiniteSubset,
    morphism: Morphism,
}

impl LocalRule {
    /// Checks that the morphism really maps `A^S → B` with the power carrier
    /// laid out in the neighborhood's canonical order.
    pub fn new(
        source_alphabet: Object,
        target_alphabet: Object,
        neighborhood: FiniteSubset,
        morphism: Morphism,
    ) -> Result<LocalRule> {
        let expected = power(&source_alphabet, neighborhood.len());
        if morphism.source() != expected.carrier() {
            return Err(Error::ShapeMismatch(format!(
                "local morphism source {:?} is not the power carrier {:?}",
                morphism.source(),
                expected.carrier()
            )));
        }
        if morphism.target() != &target_alphabet {
            return Err(Error::ShapeMismatch(
                "local morphism target is not the target alphabet".into(),
            ));
        }
        Ok(LocalRule {
            source_alphabet,
            target_alphabet,
            neighborhood,
            morphism,
        })
    }

    pub fn source_alphabet(&self) -> &Object {
        &self.source_alphabet
    }

    pub fn target_alphabet(&self) -> &Object {
        &self.target_alphabet
    }

    pub fn neighborhood(&self) -> &FiniteSubset {
        &self.neighborhood
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }
}

/// A cellular automaton `A^G → B^G`, stored by its defining data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularAutomaton {
    rule: LocalRule,
}

impl CellularAutomaton {
    pub fn new(rule: LocalRule) -> CellularAutomaton {
        CellularAutomaton { rule }
    }

    pub fn rule(&self) -> &LocalRule {
        &self.rule
    }

    pub fn universe(&self) -> &Group {
        self.rule.neighborhood.group()
    }

    /// The identity automaton: neighborhood `{e}`, rule the one-coordinate
    /// projection.
    pub fn identity(group: &Group, alphabet: &Object) -> CellularAutomaton {
        let neighborhood = FiniteSubset::identity_singleton(group.clone());
        let morphism = power(alphabet, 1).projection(0);
        CellularAutomaton {
            rule: LocalRule {
                source_alphabet: alphabet.clone(),
                target_alphabet: alphabet.clone(),
                neighborhood,
                morphism,
            },
        }
    }

    /// The shift by `g`: neighborhood `{g}`, rule the one-coordinate
    /// projection, so a cell reads the cell at `gx`.
    pub fn shift(group: &Group, alphabet: &Object, g: GroupElem) -> Result<CellularAutomaton> {
        let neighborhood = FiniteSubset::singleton(group.clone(), g)?;
        let morphism = power(alphabet, 1).projection(0);
        Ok(CellularAutomaton {
            rule: LocalRule {
                source_alphabet: alphabet.clone(),
                target_alphabet: alphabet.clone(),
                neighborhood,
                morphism,
            },
        })
    }

    /// The cellwise automaton induced by an alphabet morphism `f : A → B`:
    /// neighborhood `{e}`, rule `f` after the projection.
    pub fn pushforward(f: &Morphism, group: &Group) -> Result<CellularAutomaton> {
        let neighborhood = FiniteSubset::identity_singleton(group.clone());
        let morphism = f.compose(&power(f.source(), 1).projection(0))?;
        Ok(CellularAutomaton {
            rule: LocalRule {
                source_alphabet: f.source().clone(),
                target_alphabet: f.target().clone(),
                neighborhood,
                morphism,
            },
        })
    }

    /// The composite automaton: if `inner` has neighborhood `T` and `outer`
    /// has neighborhood `S`, the result has neighborhood `TS` and its local
    /// morphism is the outer rule after the canonical `A^{TS} → B^S` tupling.
    /// The neighborhood is stored exactly as `TS`, without minimization.
    pub fn compose(
        outer: &CellularAutomaton,
        inner: &CellularAutomaton,
    ) -> Result<CellularAutomaton> {
        if inner.rule.target_alphabet != outer.rule.source_alphabet {
            return Err(Error::ShapeMismatch(
                "composed alphabets do not match".into(),
            ));
        }
        if inner.universe() != outer.universe() {
            return Err(Error::GroupMismatch);
        }
        let a = &inner.rule.source_alphabet;
        let t = &inner.rule.neighborhood;
        let s = &outer.rule.neighborhood;
        let ts = t.product(s)?;
        let members = s
            .elements()
            .iter()
            .map(|sg| {
                let t_translated = t.translate(sg)?;
                let res = restriction_between(a, &ts, &t_translated)?;
                let iso = translation_iso(a, t, sg)?;
                inner.rule.morphism.compose(&iso)?.compose(&res)
            })
            .collect::<Result<Vec<_>>>()?;
        let glue = tuple(
            &inner.rule.target_alphabet,
            power(a, ts.len()).carrier(),
            &members,
        )?;
        let morphism = outer.rule.morphism.compose(&glue)?;
        Ok(CellularAutomaton {
            rule: LocalRule {
                source_alphabet: a.clone(),
                target_alphabet: outer.rule.target_alphabet.clone(),
                neighborhood: ts,
                morphism,
            },
        })
    }

    /// The product automaton of `alpha : C^G → A^G` and `beta : C^G → B^G`:
    /// neighborhood `S ∪ T`, rule the pairing of the restricted rules.
    /// Also returns the two projection automata.
    pub fn product(
        alpha: &CellularAutomaton,
        beta: &CellularAutomaton,
    ) -> Result<(CellularAutomaton, CellularAutomaton, CellularAutomaton)> {
        if alpha.rule.source_alphabet != beta.rule.source_alphabet {
            return Err(Error::ShapeMismatch(
                "product legs need a common source".into(),
            ));
        }
        if alpha.universe() != beta.universe() {
            return Err(Error::GroupMismatch);
        }
        let c = &alpha.rule.source_alphabet;
        let s = &alpha.rule.neighborhood;
        let t = &beta.rule.neighborhood;
        let v = s.union(t)?;
        let res_s = restriction_between(c, &v, s)?;
        let res_t = restriction_between(c, &v, t)?;
        let nu = pair(
            &alpha.rule.morphism.compose(&res_s)?,
            &beta.rule.morphism.compose(&res_t)?,
        )?;
        let (product_obj, pa, pb) =
            alphabet::product(&alpha.rule.target_alphabet, &beta.rule.target_alphabet)?;
        let tau = CellularAutomaton {
            rule: LocalRule {
                source_alphabet: c.clone(),
                target_alphabet: product_obj,
                neighborhood: v,
                morphism: nu,
            },
        };
        let group = alpha.universe();
        let pa_ca = CellularAutomaton::pushforward(&pa, group)?;
        let pb_ca = CellularAutomaton::pushforward(&pb, group)?;
        Ok((tau, pa_ca, pb_ca))
    }

    /// Realizes the automaton as a single morphism `A^G → B^G` over a finite
    /// universe, as the tuple of the defining family.
    pub fn realize(&self) -> Result<Morphism> {
        let group = self.universe().clone();
        let full = group_as_subset(&group)?;
        let a = &self.rule.source_alphabet;
        let res = restriction_between(a, &full, &self.rule.neighborhood)?;
        let members = full
            .elements()
            .iter()
            .map(|g| {
                let shift = shift_morphism(&group, a, g)?;
                self.rule.morphism.compose(&res)?.compose(&shift)
            })
            .collect::<Result<Vec<_>>>()?;
        tuple(
            &self.rule.target_alphabet,
            power(a, full.len()).carrier(),
            &members,
        )
    }

    /// Applies the automaton to a configuration, producing a lazily
    /// evaluated, memoized configuration.
    pub fn apply(&self, config: &Configuration) -> Result<Configuration> {
        config::apply(self, config)
    }
}

/// The whole finite group as a subset of itself, in canonical order.
pub fn group_as_subset(group: &Group) -> Result<FiniteSubset> {
    let elements = group.elements()?;
    FiniteSubset::new(group.clone(), elements)
}

/// The shift morphism `A^G → A^G` for a finite universe: the index pullback
/// of the right translation by `g`, so that projecting at `h` after shifting
/// projects at `hg`.
pub fn shift_morphism(group: &Group, base: &Object, g: &GroupElem) -> Result<Morphism> {
    let full = group_as_subset(group)?;
    let map = full
        .elements()
        .iter()
        .map(|h| {
            let hg = group.op(h, g)?;
            Ok(full.position(&hg).expect("group is closed"))
        })
        .collect::<Result<Vec<_>>>()?;
    alphabet::index_pullback(base, full.len(), &map)
}

/// The restriction morphism `A^big → A^small` for `small ⊆ big`.
pub fn restriction_between(
    base: &Object,
    big: &FiniteSubset,
    small: &FiniteSubset,
) -> Result<Morphism> {
    let keep = small
        .elements()
        .iter()
        .map(|x| {
            big.position(x)
                .ok_or_else(|| Error::ShapeMismatch(format!("{x} is not inside the larger index")))
        })
        .collect::<Result<Vec<_>>>()?;
    alphabet::restriction(base, big.len(), &keep)
}

/// The restriction morphism `A^G → A^S` over a finite universe.
pub fn restriction_from_group(group: &Group, base: &Object, s: &FiniteSubset) -> Result<Morphism> {
    restriction_between(base, &group_as_subset(group)?, s)
}

/// The coordinate reindexing `A^{Sg} → A^S` that sends the coordinate at
/// `sg` to the coordinate at `s`.
pub fn translation_iso(base: &Object, s: &FiniteSubset, g: &GroupElem) -> Result<Morphism> {
    let translated = s.translate(g)?;
    let map = s
        .elements()
        .iter()
        .map(|x| {
            let xg = s.group().op(x, g)?;
            Ok(translated
                .position(&xg)
                .expect("translate contains all products"))
        })
        .collect::<Result<Vec<_>>>()?;
    alphabet::index_pullback(base, translated.len(), &map)
}

/// The cellwise pushforward morphism `A^G → B^G` over a finite universe.
pub fn pushforward_morphism(group: &Group, f: &Morphism) -> Result<Morphism> {
    let n = group
        .order()
        .ok_or_else(|| Error::NotFinite("pushforward morphism needs a finite group".into()))?;
    Ok(pushforward(f, n))
}
