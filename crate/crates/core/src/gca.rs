//! Generalized cellular automata between different group universes.
//!
//! A morphism `A^G → B^H` here is defined through a group homomorphism
//! `φ : H → G`: a cell `h` of the result reads the window `S·φ(h)` of the
//! input. Ordinary automata are the special case `φ = id`. Every generalized
//! automaton factors through an ordinary one over the source universe
//! followed by a pullback, and two universes admit a weak product over the
//! free product of the groups.

use crate::alphabet::{self, pair, power, Morphism, Object};
use crate::ca::{
    self, restriction_between, shift_morphism, translation_iso, CellularAutomaton, Configuration,
    LocalRule,
};
use crate::error::{Error, Result};
use crate::group::{FiniteSubset, Group, GroupHom, Side};

/// A generalized cellular automaton `A^G → B^H`, stored as its defining
/// data: a homomorphism `H → G` plus a local rule with neighborhood in `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedCA {
    hom: GroupHom,
    rule: LocalRule,
}

impl GeneralizedCA {
    pub fn new(hom: GroupHom, rule: LocalRule) -> Result<GeneralizedCA> {
        if hom.target() != rule.neighborhood().group() {
            return Err(Error::GroupMismatch);
        }
        Ok(GeneralizedCA { hom, rule })
    }

    /// Views an ordinary automaton as a generalized one along the identity.
    pub fn from_ca(ca: &CellularAutomaton) -> GeneralizedCA {
        GeneralizedCA {
            hom: GroupHom::identity(ca.universe()),
            rule: ca.rule().clone(),
        }
    }

    pub fn identity(group: &Group, alphabet: &Object) -> GeneralizedCA {
        GeneralizedCA::from_ca(&CellularAutomaton::identity(group, alphabet))
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn rule(&self) -> &LocalRule {
        &self.rule
    }

    /// The universe of the input configurations.
    pub fn source_universe(&self) -> &Group {
        self.rule.neighborhood().group()
    }

    /// The universe of the output configurations.
    pub fn target_universe(&self) -> &Group {
        self.hom.source()
    }

    /// The pullback automaton along `φ`: cell `h` of the result is cell
    /// `φ(h)` of the input.
    pub fn pullback(hom: GroupHom, alphabet: &Object) -> GeneralizedCA {
        let neighborhood = FiniteSubset::identity_singleton(hom.target().clone());
        let morphism = power(alphabet, 1).projection(0);
        let rule = LocalRule::new(alphabet.clone(), alphabet.clone(), neighborhood, morphism)
            .expect("projection rule is well typed");
        GeneralizedCA { hom, rule }
    }

    /// Splits off the ordinary automaton over the source universe: the same
    /// local data re-read over `G`, so that the original equals the pullback
    /// of the stored homomorphism after it.
    pub fn factorize(&self) -> (CellularAutomaton, GroupHom) {
        (CellularAutomaton::new(self.rule.clone()), self.hom.clone())
    }

    /// Composition of generalized automata. With `inner : A^G → B^H` of
    /// neighborhood `T` and `outer : B^H → C^K` of neighborhood `S`, the
    /// composite runs along the composed homomorphism and reads `T·φ(S)`.
    pub fn compose(outer: &GeneralizedCA, inner: &GeneralizedCA) -> Result<GeneralizedCA> {
        if inner.target_universe() != outer.source_universe() {
            return Err(Error::GroupMismatch);
        }
        if inner.rule.target_alphabet() != outer.rule.source_alphabet() {
            return Err(Error::ShapeMismatch(
                "composed alphabets do not match".into(),
            ));
        }
        let a = inner.rule.source_alphabet();
        let t = inner.rule.neighborhood();
        let s = outer.rule.neighborhood();
        let phi = &inner.hom;
        let composite_hom = GroupHom::compose(phi, &outer.hom)?;
        let phi_s = s.image(phi)?;
        let t_phi_s = t.product(&phi_s)?;
        let members = s
            .elements()
            .iter()
            .map(|sh| {
                let g = phi.eval(sh)?;
                let t_translated = t.translate(&g)?;
                let res = restriction_between(a, &t_phi_s, &t_translated)?;
                let iso = translation_iso(a, t, &g)?;
                inner.rule.morphism().compose(&iso)?.compose(&res)
            })
            .collect::<Result<Vec<_>>>()?;
        let glue = alphabet::tuple(
            inner.rule.target_alphabet(),
            power(a, t_phi_s.len()).carrier(),
            &members,
        )?;
        let morphism = outer.rule.morphism().compose(&glue)?;
        let rule = LocalRule::new(
            a.clone(),
            outer.rule.target_alphabet().clone(),
            t_phi_s,
            morphism,
        )?;
        GeneralizedCA::new(composite_hom, rule)
    }

    /// Realizes the automaton as one morphism `A^G → B^H` over finite
    /// universes.
    pub fn realize(&self) -> Result<Morphism> {
        let g = self.source_universe().clone();
        let h = self.target_universe().clone();
        let a = self.rule.source_alphabet();
        let full = ca::group_as_subset(&g)?;
        let res = restriction_between(a, &full, self.rule.neighborhood())?;
        let members = h
            .elements()?
            .iter()
            .map(|x| {
                let shift = shift_morphism(&g, a, &self.hom.eval(x)?)?;
                self.rule.morphism().compose(&res)?.compose(&shift)
            })
            .collect::<Result<Vec<_>>>()?;
        alphabet::tuple(
            self.rule.target_alphabet(),
            power(a, full.len()).carrier(),
            &members,
        )
    }

    /// Applies the automaton to a configuration over the source universe.
    pub fn apply(&self, config: &Configuration) -> Result<Configuration> {
        ca::apply_generalized(self, config)
    }
}

/// The pair of weak-product legs out of `(A×B)^{G∗H}`: each one projects the
/// cell value and samples along the embedded factor.
pub fn weak_product(
    a: &Object,
    b: &Object,
    g: &Group,
    h: &Group,
) -> Result<(GeneralizedCA, GeneralizedCA)> {
    // The free product is infinite for nontrivial factors, so everything
    // about the legs is verified pointwise; that needs an element layer.
    if !a.instance().has_element_layer() {
        return Err(Error::NoElementLayer);
    }
    let free = Group::free_product(g.clone(), h.clone())?;
    let (product_obj, pa, pb) = alphabet::product(a, b)?;
    let point = power(&product_obj, 1).projection(0);
    let leg = |side: Side, proj: &Morphism| -> Result<GeneralizedCA> {
        let embedding = GroupHom::embedding(&free, side)?;
        let neighborhood = FiniteSubset::identity_singleton(free.clone());
        let rule = LocalRule::new(
            product_obj.clone(),
            proj.target().clone(),
            neighborhood,
            proj.compose(&point)?,
        )?;
        GeneralizedCA::new(embedding, rule)
    };
    Ok((leg(Side::Left, &pa)?, leg(Side::Right, &pb)?))
}

/// The mediating automaton of the weak product: given `alpha : C^K → A^G`
/// and `beta : C^K → B^H`, builds `C^K → (A×B)^{G∗H}` along the coproduct
/// mediator of the two stored homomorphisms, with neighborhood `S ∪ T` and
/// rule the pairing of the restricted rules. It satisfies both projection
/// equations; nothing claims it is the only automaton that does.
pub fn weak_product_mediator(alpha: &GeneralizedCA, beta: &GeneralizedCA) -> Result<GeneralizedCA> {
    if alpha.source_universe() != beta.source_universe() {
        return Err(Error::GroupMismatch);
    }
    if alpha.rule.source_alphabet() != beta.rule.source_alphabet() {
        return Err(Error::ShapeMismatch(
            "mediator legs need a common source".into(),
        ));
    }
    let free = Group::free_product(
        alpha.target_universe().clone(),
        beta.target_universe().clone(),
    )?;
    let gamma = GroupHom::mediator(&free, alpha.hom.clone(), beta.hom.clone())?;
    let c = alpha.rule.source_alphabet();
    let s = alpha.rule.neighborhood();
    let t = beta.rule.neighborhood();
    let v = s.union(t)?;
    let res_s = restriction_between(c, &v, s)?;
    let res_t = restriction_between(c, &v, t)?;
    let nu = pair(
        &alpha.rule.morphism().compose(&res_s)?,
        &beta.rule.morphism().compose(&res_t)?,
    )?;
    let rule = LocalRule::new(c.clone(), nu.target().clone(), v, nu)?;
    GeneralizedCA::new(gamma, rule)
}
