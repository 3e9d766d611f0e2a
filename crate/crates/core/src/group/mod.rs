//! Group universes: finite groups given by multiplication tables, the free
//! abelian groups `Z^d`, and free products of finite groups.
//!
//! Every element carries a canonical total order (by id for finite groups,
//! lexicographic for `Z^d`, by length then letters for free-product words),
//! which fixes the coordinate order of every power object built over a group.

mod hom;
mod subset;

pub use hom::{GroupHom, HomRule};
pub use subset::FiniteSubset;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Which factor of a free product a letter comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// One letter of a reduced free-product word: a non-identity element of the
/// tagged factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub side: Side,
    pub id: usize,
}

/// An element of a group universe.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElem {
    /// Element id in a finite table group.
    Id(usize),
    /// Integer vector in `Z^d`.
    Vector(Vec<i64>),
    /// Reduced alternating word in a free product.
    Word(Vec<Letter>),
}

impl GroupElem {
    fn rank(&self) -> u8 {
        match self {
            GroupElem::Id(_) => 0,
            GroupElem::Vector(_) => 1,
            GroupElem::Word(_) => 2,
        }
    }
}

impl Ord for GroupElem {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GroupElem::Id(a), GroupElem::Id(b)) => a.cmp(b),
            (GroupElem::Vector(a), GroupElem::Vector(b)) => a.cmp(b),
            // Words order by length first, then lexicographically by letters.
            (GroupElem::Word(a), GroupElem::Word(b)) => {
                a.len().cmp(&b.len()).then_with(|| a.cmp(b))
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for GroupElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElem::Id(i) => write!(f, "{i}"),
            GroupElem::Vector(v) => {
                write!(f, "(")?;
                for (k, x) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            GroupElem::Word(w) if w.is_empty() => write!(f, "ε"),
            GroupElem::Word(w) => {
                for l in w {
                    let tag = match l.side {
                        Side::Left => 'L',
                        Side::Right => 'R',
                    };
                    write!(f, "({tag}:{})", l.id)?;
                }
                Ok(())
            }
        }
    }
}

/// A finite group presented by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTable {
    size: usize,
    /// Row-major: `table[a * size + b]` is the id of `ab`.
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteTable {
    fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Finite(FiniteTable),
    ZPower { dim: usize },
    FreeProduct { left: Box<Group>, right: Box<Group> },
}

/// A group universe together with its declared generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    kind: GroupKind,
    generators: Vec<GroupElem>,
}

impl Group {
    /// Builds a finite group from a multiplication table, checking the group
    /// axioms exhaustively. `table[a][b]` is the id of `ab`.
    pub fn finite(table: Vec<Vec<usize>>, identity: usize) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(Error::InvalidTable("table is not square".into()));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidTable(format!("entry {x} out of range")));
                }
                flat.push(x);
            }
        }
        if identity >= n {
            return Err(Error::InvalidTable("identity id out of range".into()));
        }
        for a in 0..n {
            if flat[a * n + identity] != a || flat[identity * n + a] != a {
                return Err(Error::InvalidTable(format!(
                    "{identity} is not an identity"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if flat[flat[a * n + b] * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| flat[a * n + b] == identity && flat[b * n + a] == identity) {
                Some(b) => inverse[a] = b,
                None => return Err(Error::InvalidTable(format!("{a} has no inverse"))),
            }
        }
        let generators = (0..n)
            .filter(|&i| i != identity)
            .map(GroupElem::Id)
            .collect();
        Ok(Group {
            kind: GroupKind::Finite(FiniteTable {
                size: n,
                table: flat,
                identity,
                inverse,
            }),
            generators,
        })
    }

    /// The cyclic group `Z_n`, with element ids acting as residues.
    pub fn cyclic(n: usize) -> Group {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Group::finite(table, 0).expect("cyclic table is a group")
    }

    /// The symmetric group on `n` points; ids index permutations in
    /// lexicographic one-line order, and `σ·τ` acts as `σ` after `τ`.
    pub fn symmetric(n: usize) -> Group {
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let ab: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
                        index(&ab)
                    })
                    .collect()
            })
            .collect();
        Group::finite(table, 0).expect("symmetric table is a group")
    }

    /// The free abelian group `Z^d`, generated by the unit vectors and their
    /// negatives.
    pub fn z_power(dim: usize) -> Group {
        let mut generators = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            for sign in [1i64, -1] {
                let mut v = vec![0i64; dim];
                v[i] = sign;
                generators.push(GroupElem::Vector(v));
            }
        }
        Group {
            kind: GroupKind::ZPower { dim },
            generators,
        }
    }

    /// The free product of two finite table groups.
    pub fn free_product(left: Group, right: Group) -> Result<Group> {
        if !left.is_finite() || !right.is_finite() {
            return Err(Error::InvalidTable(
                "free product factors must be finite table groups".into(),
            ));
        }
        let mut generators = Vec::new();
        for side in [Side::Left, Side::Right] {
            let factor = if side == Side::Left { &left } else { &right };
            for g in &factor.generators {
                if let GroupElem::Id(i) = g {
                    generators.push(GroupElem::Word(vec![Letter { side, id: *i }]));
                }
            }
        }
        Ok(Group {
            kind: GroupKind::FreeProduct {
                left: Box::new(left),
                right: Box::new(right),
            },
            generators,
        })
    }

    /// Replaces the declared generating set (used by `ball`).
    pub fn with_generators(mut self, generators: Vec<GroupElem>) -> Result<Group> {
        for g in &generators {
            if !self.contains(g) {
                return Err(Error::NotAMember(g.to_string()));
            }
        }
        self.generators = generators;
        Ok(self)
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn generators(&self) -> &[GroupElem] {
        &self.generators
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, GroupKind::Finite(_))
    }

    /// Number of elements for finite table groups.
    pub fn order(&self) -> Option<usize> {
        match &self.kind {
            GroupKind::Finite(t) => Some(t.size),
            _ => None,
        }
    }

    pub fn identity(&self) -> GroupElem {
        match &self.kind {
            GroupKind::Finite(t) => GroupElem::Id(t.identity),
            GroupKind::ZPower { dim } => GroupElem::Vector(vec![0; *dim]),
            GroupKind::FreeProduct { .. } => GroupElem::Word(Vec::new()),
        }
    }

    pub fn contains(&self, x: &GroupElem) -> bool {
        match (&self.kind, x) {
            (GroupKind::Finite(t), GroupElem::Id(i)) => *i < t.size,
            (GroupKind::ZPower { dim }, GroupElem::Vector(v)) => v.len() == *dim,
            (GroupKind::FreeProduct { left, right }, GroupElem::Word(w)) => {
                let mut prev: Option<Side> = None;
                for l in w {
                    if prev == Some(l.side) {
                        return false; // not alternating
                    }
                    let factor = if l.side == Side::Left { left } else { right };
                    let table = match &factor.kind {
                        GroupKind::Finite(t) => t,
                        _ => return false,
                    };
                    if l.id >= table.size || l.id == table.identity {
                        return false;
                    }
                    prev = Some(l.side);
                }
                true
            }
            _ => false,
        }
    }

    fn check_member(&self, x: &GroupElem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotAMember(x.to_string()))
        }
    }

    /// The group law `ab`. Free-product results come out reduced.
    pub fn op(&self, a: &GroupElem, b: &GroupElem) -> Result<GroupElem> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(match (&self.kind, a, b) {
            (GroupKind::Finite(t), GroupElem::Id(i), GroupElem::Id(j)) => {
                GroupElem::Id(t.op(*i, *j))
            }
            (GroupKind::ZPower { .. }, GroupElem::Vector(u), GroupElem::Vector(v)) => {
                GroupElem::Vector(u.iter().zip(v).map(|(x, y)| x + y).collect())
            }
            (GroupKind::FreeProduct { left, right }, GroupElem::Word(u), GroupElem::Word(v)) => {
                let mut stack = u.clone();
                for &l in v {
                    push_reduced(left, right, &mut stack, l);
                }
                GroupElem::Word(stack)
            }
            _ => unreachable!("membership checked above"),
        })
    }

    pub fn inverse(&self, a: &GroupElem) -> Result<GroupElem> {
        self.check_member(a)?;
        Ok(match (&self.kind, a) {
            (GroupKind::Finite(t), GroupElem::Id(i)) => GroupElem::Id(t.inverse[*i]),
            (GroupKind::ZPower { .. }, GroupElem::Vector(v)) => {
                GroupElem::Vector(v.iter().map(|x| -x).collect())
            }
            (GroupKind::FreeProduct { left, right }, GroupElem::Word(w)) => {
                let inv = |l: &Letter| {
                    let factor = if l.side == Side::Left { left } else { right };
                    let GroupKind::Finite(t) = &factor.kind else {
                        unreachable!()
                    };
                    Letter {
                        side: l.side,
                        id: t.inverse[l.id],
                    }
                };
                GroupElem::Word(w.iter().rev().map(inv).collect())
            }
            _ => unreachable!("membership checked above"),
        })
    }

    /// Reduces an arbitrary letter sequence to normal form (identity letters
    /// dropped, adjacent same-side letters multiplied out). Used by tests to
    /// cross-check the boundary reduction in `op`.
    pub fn reduce_word(&self, letters: &[Letter]) -> Result<GroupElem> {
        let GroupKind::FreeProduct { left, right } = &self.kind else {
            return Err(Error::NotAMember("word in a non-free-product group".into()));
        };
        for l in letters {
            let factor = if l.side == Side::Left { left } else { right };
            let GroupKind::Finite(t) = &factor.kind else {
                unreachable!()
            };
            if l.id >= t.size {
                return Err(Error::NotAMember(format!(
                    "letter id {} out of range",
                    l.id
                )));
            }
        }
        let mut stack = Vec::new();
        for &l in letters {
            push_reduced(left, right, &mut stack, l);
        }
        Ok(GroupElem::Word(stack))
    }

    /// The right translation `x ↦ xg`.
    pub fn right_translation(&self, g: GroupElem) -> Result<RightTranslation> {
        self.check_member(&g)?;
        Ok(RightTranslation {
            group: self.clone(),
            g,
        })
    }

    /// All elements in canonical order (finite table groups).
    pub fn elements(&self) -> Result<Vec<GroupElem>> {
        match &self.kind {
            GroupKind::Finite(t) => Ok((0..t.size).map(GroupElem::Id).collect()),
            _ => Err(Error::NotFinite(
                "cannot enumerate an infinite group".into(),
            )),
        }
    }

    /// Id of an element in a finite table group (its canonical position).
    pub fn element_index(&self, x: &GroupElem) -> Result<usize> {
        self.check_member(x)?;
        match x {
            GroupElem::Id(i) => Ok(*i),
            _ => Err(Error::NotFinite(
                "element index needs a finite group".into(),
            )),
        }
    }

    /// All products of at most `radius` declared generators, canonically
    /// ordered. `ball(0)` is `{e}`.
    pub fn ball(&self, radius: usize) -> FiniteSubset {
        let mut seen: BTreeSet<GroupElem> = BTreeSet::new();
        seen.insert(self.identity());
        let mut frontier: Vec<GroupElem> = vec![self.identity()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for x in &frontier {
                for s in &self.generators {
                    let y = self.op(x, s).expect("generators are members");
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        FiniteSubset::from_sorted(self.clone(), seen.into_iter().collect())
    }

    /// Embeds an element of a free-product factor as a one-letter word.
    pub fn embed(&self, side: Side, x: &GroupElem) -> Result<GroupElem> {
        let GroupKind::FreeProduct { left, right } = &self.kind else {
            return Err(Error::NotAMember(
                "embedding into a non-free-product group".into(),
            ));
        };
        let factor = if side == Side::Left { left } else { right };
        factor.check_member(x)?;
        let GroupElem::Id(i) = x else {
            unreachable!("factors are finite")
        };
        let GroupKind::Finite(t) = &factor.kind else {
            unreachable!()
        };
        if *i == t.identity {
            Ok(GroupElem::Word(Vec::new()))
        } else {
            Ok(GroupElem::Word(vec![Letter { side, id: *i }]))
        }
    }
}

/// Appends one letter to a reduced word, keeping it reduced.
fn push_reduced(left: &Group, right: &Group, stack: &mut Vec<Letter>, l: Letter) {
    let factor = |side: Side| -> &FiniteTable {
        let g = if side == Side::Left { left } else { right };
        match &g.kind {
            GroupKind::Finite(t) => t,
            _ => unreachable!("free product factors are finite"),
        }
    };
    let t = factor(l.side);
    if l.id == t.identity {
        return;
    }
    match stack.last() {
        Some(top) if top.side == l.side => {
            let merged = t.op(top.id, l.id);
            stack.pop();
            if merged != t.identity {
                // The previous letter (if any) has the other side, so the
                // merged letter cannot cancel further.
                stack.push(Letter {
                    side: l.side,
                    id: merged,
                });
            }
        }
        _ => stack.push(l),
    }
}

/// The map `x ↦ xg` for a fixed `g`.
pub struct RightTranslation {
    group: Group,
    g: GroupElem,
}

impl RightTranslation {
    pub fn apply(&self, x: &GroupElem) -> Result<GroupElem> {
        self.group.op(x, &self.g)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}
