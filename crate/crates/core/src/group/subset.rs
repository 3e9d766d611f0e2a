use crate::error::{Error, Result};
use crate::group::{Group, GroupElem, GroupHom};

/// A finite subset of a group, kept sorted and duplicate-free under the
/// group's canonical element order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSubset {
    group: Group,
    elements: Vec<GroupElem>,
}

impl FiniteSubset {
    pub fn new(group: Group, mut elements: Vec<GroupElem>) -> Result<FiniteSubset> {
        for x in &elements {
            if !group.contains(x) {
                return Err(Error::NotAMember(x.to_string()));
            }
        }
        elements.sort();
        elements.dedup();
        Ok(FiniteSubset { group, elements })
    }

    /// Internal constructor for element lists already in canonical order.
    pub(crate) fn from_sorted(group: Group, elements: Vec<GroupElem>) -> FiniteSubset {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        FiniteSubset { group, elements }
    }

    pub fn singleton(group: Group, x: GroupElem) -> Result<FiniteSubset> {
        FiniteSubset::new(group, vec![x])
    }

    pub fn identity_singleton(group: Group) -> FiniteSubset {
        let e = group.identity();
        FiniteSubset::from_sorted(group, vec![e])
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &GroupElem) -> bool {
        self.position(x).is_some()
    }

    /// Position of `x` in the canonical order, if present.
    pub fn position(&self, x: &GroupElem) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub fn is_subset_of(&self, other: &FiniteSubset) -> bool {
        self.group == other.group && self.elements.iter().all(|x| other.contains(x))
    }

    fn check_owner(&self, other: &FiniteSubset) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Elementwise product `{st : s ∈ self, t ∈ other}`, deduplicated.
    pub fn product(&self, other: &FiniteSubset) -> Result<FiniteSubset> {
        self.check_owner(other)?;
        let mut out = Vec::with_capacity(self.len() * other.len());
        for s in &self.elements {
            for t in &other.elements {
                out.push(self.group.op(s, t)?);
            }
        }
        FiniteSubset::new(self.group.clone(), out)
    }

    /// The translate `Sg`.
    pub fn translate(&self, g: &GroupElem) -> Result<FiniteSubset> {
        let out = self
            .elements
            .iter()
            .map(|s| self.group.op(s, g))
            .collect::<Result<Vec<_>>>()?;
        FiniteSubset::new(self.group.clone(), out)
    }

    /// The image `φ(S)` in the homomorphism's target group.
    pub fn image(&self, hom: &GroupHom) -> Result<FiniteSubset> {
        if hom.source() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let out = self
            .elements
            .iter()
            .map(|s| hom.eval(s))
            .collect::<Result<Vec<_>>>()?;
        FiniteSubset::new(hom.target().clone(), out)
    }

    pub fn union(&self, other: &FiniteSubset) -> Result<FiniteSubset> {
        self.check_owner(other)?;
        let mut out = self.elements.clone();
        out.extend(other.elements.iter().cloned());
        FiniteSubset::new(self.group.clone(), out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    fn z_set(xs: &[i64]) -> FiniteSubset {
        let z = Group::z_power(1);
        FiniteSubset::new(z, xs.iter().map(|&x| GroupElem::Vector(vec![x])).collect()).unwrap()
    }

    #[test]
    fn product_over_z_matches_enumeration() {
        let s = z_set(&[-1, 0, 1]);
        let t = z_set(&[-1, 0, 1]);
        // Oracle: enumerate all nine sums and deduplicate.
        let mut sums: Vec<i64> = Vec::new();
        for a in [-1i64, 0, 1] {
            for b in [-1i64, 0, 1] {
                sums.push(a + b);
            }
        }
        sums.sort();
        sums.dedup();
        assert_eq!(s.product(&t).unwrap(), z_set(&sums));
    }

    #[test]
    fn identity_singleton_is_neutral_for_product() {
        let z4 = Group::cyclic(4);
        let s = FiniteSubset::new(z4.clone(), vec![GroupElem::Id(1), GroupElem::Id(2)]).unwrap();
        let e = FiniteSubset::identity_singleton(z4);
        assert_eq!(e.product(&s).unwrap(), s);
        assert_eq!(s.product(&e).unwrap(), s);
    }

    #[test]
    fn product_in_z4_wraps() {
        let z4 = Group::cyclic(4);
        let s = FiniteSubset::new(z4.clone(), vec![GroupElem::Id(1), GroupElem::Id(2)]).unwrap();
        let t = FiniteSubset::new(z4.clone(), vec![GroupElem::Id(2)]).unwrap();
        let want = FiniteSubset::new(z4, vec![GroupElem::Id(3), GroupElem::Id(0)]).unwrap();
        assert_eq!(s.product(&t).unwrap(), want);
    }

    #[test]
    fn translate_preserves_size_and_reorders_canonically() {
        let s = z_set(&[-1, 0, 1]);
        assert_eq!(
            s.translate(&GroupElem::Vector(vec![2])).unwrap(),
            z_set(&[1, 2, 3])
        );

        let z4 = Group::cyclic(4);
        let s = FiniteSubset::new(z4.clone(), vec![GroupElem::Id(0), GroupElem::Id(2)]).unwrap();
        let translated = s.translate(&GroupElem::Id(2)).unwrap();
        assert_eq!(translated, s); // {2, 0} reordered back to {0, 2}
        assert_eq!(s.translate(&z4.identity()).unwrap(), s);
    }

    #[test]
    fn owner_mismatch_is_rejected() {
        let a = z_set(&[0]);
        let z4 = Group::cyclic(4);
        let b = FiniteSubset::new(z4, vec![GroupElem::Id(0)]).unwrap();
        assert!(a.product(&b).is_err());
    }
}
