use crate::error::{Error, Result};
use crate::group::{Group, GroupElem, GroupKind, Side};

/// How a homomorphism acts, by source-group shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomRule {
    /// Finite source: the image of each element id.
    Table(Vec<GroupElem>),
    /// Free-product source: components on the two factors (the coproduct
    /// mediator `[φ, ψ]`).
    Pair(Box<GroupHom>, Box<GroupHom>),
    /// `Z^d → Z^e`: an integer matrix, `e` rows by `d` columns.
    Matrix(Vec<Vec<i64>>),
    /// `Z^d` source: images of the unit vectors, which must commute pairwise.
    GeneratorImages(Vec<GroupElem>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Group,
    target: Group,
    rule: HomRule,
}

impl GroupHom {
    /// Builds a homomorphism and validates the law `φ(xy) = φ(x)φ(y)`:
    /// exhaustively for finite sources, on all pairs of `ball(2)` otherwise.
    pub fn new(source: Group, target: Group, rule: HomRule) -> Result<GroupHom> {
        match (&rule, source.kind()) {
            (HomRule::Table(images), GroupKind::Finite(_)) => {
                let n = source.order().unwrap();
                if images.len() != n {
                    return Err(Error::NotAHomomorphism(format!(
                        "table has {} entries for a group of order {n}",
                        images.len()
                    )));
                }
                for img in images {
                    if !target.contains(img) {
                        return Err(Error::NotAMember(img.to_string()));
                    }
                }
            }
            (HomRule::Pair(l, r), GroupKind::FreeProduct { left, right }) => {
                if l.source != **left || r.source != **right {
                    return Err(Error::NotAHomomorphism(
                        "pair components do not match the factors".into(),
                    ));
                }
                if l.target != target || r.target != target {
                    return Err(Error::NotAHomomorphism(
                        "pair components map into a different target".into(),
                    ));
                }
            }
            (HomRule::Matrix(rows), GroupKind::ZPower { dim }) => {
                let GroupKind::ZPower { dim: target_dim } = target.kind() else {
                    return Err(Error::NotAHomomorphism(
                        "matrix rule needs a Z^e target".into(),
                    ));
                };
                if rows.len() != *target_dim || rows.iter().any(|r| r.len() != *dim) {
                    return Err(Error::NotAHomomorphism("matrix shape mismatch".into()));
                }
            }
            (HomRule::GeneratorImages(images), GroupKind::ZPower { dim }) => {
                if images.len() != *dim {
                    return Err(Error::NotAHomomorphism(format!(
                        "{} generator images for Z^{dim}",
                        images.len()
                    )));
                }
                for img in images {
                    if !target.contains(img) {
                        return Err(Error::NotAMember(img.to_string()));
                    }
                }
                for a in images {
                    for b in images {
                        if target.op(a, b)? != target.op(b, a)? {
                            return Err(Error::NotAHomomorphism(
                                "generator images do not commute".into(),
                            ));
                        }
                    }
                }
            }
            _ => {
                return Err(Error::NotAHomomorphism(
                    "rule variant does not fit the source group".into(),
                ))
            }
        }
        let hom = GroupHom {
            source,
            target,
            rule,
        };
        hom.validate_law()?;
        Ok(hom)
    }

    fn validate_law(&self) -> Result<()> {
        let sample = if self.source.is_finite() {
            self.source.elements()?
        } else {
            self.source.ball(2).elements().to_vec()
        };
        for a in &sample {
            for b in &sample {
                let ab = self.source.op(a, b)?;
                let lhs = self.eval(&ab)?;
                let rhs = self.target.op(&self.eval(a)?, &self.eval(b)?)?;
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism(format!(
                        "law fails at ({a}, {b}): φ(ab) = {lhs} but φ(a)φ(b) = {rhs}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn rule(&self) -> &HomRule {
        &self.rule
    }

    pub fn eval(&self, x: &GroupElem) -> Result<GroupElem> {
        if !self.source.contains(x) {
            return Err(Error::NotAMember(x.to_string()));
        }
        match (&self.rule, x) {
            (HomRule::Table(images), GroupElem::Id(i)) => Ok(images[*i].clone()),
            (HomRule::Pair(l, r), GroupElem::Word(w)) => {
                let mut acc = self.target.identity();
                for letter in w {
                    let component = if letter.side == Side::Left { l } else { r };
                    let img = component.eval(&GroupElem::Id(letter.id))?;
                    acc = self.target.op(&acc, &img)?;
                }
                Ok(acc)
            }
            (HomRule::Matrix(rows), GroupElem::Vector(v)) => Ok(GroupElem::Vector(
                rows.iter()
                    .map(|r| r.iter().zip(v).map(|(m, x)| m * x).sum())
                    .collect(),
            )),
            (HomRule::GeneratorImages(images), GroupElem::Vector(v)) => {
                let mut acc = self.target.identity();
                for (img, &exp) in images.iter().zip(v) {
                    acc = self.target.op(&acc, &power(&self.target, img, exp)?)?;
                }
                Ok(acc)
            }
            _ => unreachable!("rule variant matches the source group"),
        }
    }

    /// The identity homomorphism.
    pub fn identity(group: &Group) -> GroupHom {
        let rule = match group.kind() {
            GroupKind::Finite(_) => HomRule::Table(group.elements().unwrap()),
            GroupKind::ZPower { dim } => {
                let rows = (0..*dim)
                    .map(|i| (0..*dim).map(|j| i64::from(i == j)).collect())
                    .collect();
                HomRule::Matrix(rows)
            }
            GroupKind::FreeProduct { .. } => HomRule::Pair(
                Box::new(GroupHom::embedding(group, Side::Left).unwrap()),
                Box::new(GroupHom::embedding(group, Side::Right).unwrap()),
            ),
        };
        GroupHom {
            source: group.clone(),
            target: group.clone(),
            rule,
        }
    }

    /// The constant-identity homomorphism.
    pub fn trivial(source: &Group, target: &Group) -> GroupHom {
        let e = target.identity();
        let rule = match source.kind() {
            GroupKind::Finite(_) => HomRule::Table(vec![e; source.order().unwrap()]),
            GroupKind::ZPower { dim } => HomRule::GeneratorImages(vec![e; *dim]),
            GroupKind::FreeProduct { left, right } => HomRule::Pair(
                Box::new(GroupHom::trivial(left, target)),
                Box::new(GroupHom::trivial(right, target)),
            ),
        };
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            rule,
        }
    }

    /// Canonical embedding of a factor into a free product.
    pub fn embedding(free: &Group, side: Side) -> Result<GroupHom> {
        let GroupKind::FreeProduct { left, right } = free.kind() else {
            return Err(Error::NotAHomomorphism(
                "target is not a free product".into(),
            ));
        };
        let factor = if side == Side::Left { left } else { right };
        let images = factor
            .elements()?
            .iter()
            .map(|x| free.embed(side, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupHom {
            source: (**factor).clone(),
            target: free.clone(),
            rule: HomRule::Table(images),
        })
    }

    /// The coproduct mediator `[φ, ψ] : G∗H → K` determined by homomorphisms
    /// out of the factors.
    pub fn mediator(free: &Group, phi: GroupHom, psi: GroupHom) -> Result<GroupHom> {
        let GroupKind::FreeProduct { left, right } = free.kind() else {
            return Err(Error::NotAHomomorphism(
                "source is not a free product".into(),
            ));
        };
        if phi.source != **left || psi.source != **right {
            return Err(Error::NotAHomomorphism(
                "mediator components do not match the factors".into(),
            ));
        }
        if phi.target != psi.target {
            return Err(Error::NotAHomomorphism(
                "mediator components disagree on target".into(),
            ));
        }
        let target = phi.target.clone();
        Ok(GroupHom {
            source: free.clone(),
            target,
            rule: HomRule::Pair(Box::new(phi), Box::new(psi)),
        })
    }

    /// Composes two homomorphisms into a single rule.
    pub fn compose(outer: &GroupHom, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target != outer.source {
            return Err(Error::GroupMismatch);
        }
        let rule = match inner.source.kind() {
            GroupKind::Finite(_) => {
                let images = inner
                    .source
                    .elements()?
                    .iter()
                    .map(|x| outer.eval(&inner.eval(x)?))
                    .collect::<Result<Vec<_>>>()?;
                HomRule::Table(images)
            }
            GroupKind::FreeProduct { .. } => {
                let HomRule::Pair(l, r) = &inner.rule else {
                    unreachable!()
                };
                HomRule::Pair(
                    Box::new(GroupHom::compose(outer, l)?),
                    Box::new(GroupHom::compose(outer, r)?),
                )
            }
            GroupKind::ZPower { dim } => {
                let unit = |i: usize| {
                    let mut v = vec![0i64; *dim];
                    v[i] = 1;
                    GroupElem::Vector(v)
                };
                let images = (0..*dim)
                    .map(|i| outer.eval(&inner.eval(&unit(i))?))
                    .collect::<Result<Vec<_>>>()?;
                if matches!(outer.target.kind(), GroupKind::ZPower { .. }) {
                    let GroupKind::ZPower { dim: e } = outer.target.kind() else {
                        unreachable!()
                    };
                    let rows = (0..*e)
                        .map(|r| {
                            images
                                .iter()
                                .map(|img| match img {
                                    GroupElem::Vector(v) => v[r],
                                    _ => unreachable!(),
                                })
                                .collect()
                        })
                        .collect();
                    HomRule::Matrix(rows)
                } else {
                    HomRule::GeneratorImages(images)
                }
            }
        };
        Ok(GroupHom {
            source: inner.source.clone(),
            target: outer.target.clone(),
            rule,
        })
    }

    /// All homomorphisms between two finite table groups, by brute force
    /// over image tables. Feasible at desk scale only.
    pub fn enumerate(source: &Group, target: &Group) -> Result<Vec<GroupHom>> {
        let (GroupKind::Finite(s), GroupKind::Finite(t)) = (source.kind(), target.kind()) else {
            return Err(Error::NotFinite(
                "hom enumeration needs finite groups".into(),
            ));
        };
        let (n, m) = (s.size, t.size);
        let mut out = Vec::new();
        let mut digits = vec![0usize; n];
        'next: loop {
            // The law on raw id tables, before any allocation.
            let lawful =
                (0..n).all(|a| (0..n).all(|b| digits[s.op(a, b)] == t.op(digits[a], digits[b])));
            if lawful {
                let images = digits.iter().map(|&i| GroupElem::Id(i)).collect();
                out.push(GroupHom {
                    source: source.clone(),
                    target: target.clone(),
                    rule: HomRule::Table(images),
                });
            }
            // Odometer over all m^n image tables.
            let mut pos = 0;
            loop {
                if pos == n {
                    break 'next;
                }
                digits[pos] += 1;
                if digits[pos] < m {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
        Ok(out)
    }
}

fn power(group: &Group, x: &GroupElem, exp: i64) -> Result<GroupElem> {
    let base = if exp < 0 {
        group.inverse(x)?
    } else {
        x.clone()
    };
    let mut acc = group.identity();
    for _ in 0..exp.unsigned_abs() {
        acc = group.op(&acc, &base)?;
    }
    Ok(acc)
}
