//! Alphabet categories: pluggable finite categories with products.
//!
//! Four instances are provided. Finite sets with functions, finite vector
//! spaces over a prime field with linear maps, and finite posets with
//! monotone maps are concrete (they have an element layer). Finite sets with
//! binary relations as morphisms are not: products there are disjoint unions
//! with converse-injection projections, and the instance participates in the
//! engine purely at morphism level.

mod morphism;
mod products;

pub use morphism::{Morphism, MorphismData};
pub use products::{
    encode_tuple, index_pullback, pair, power, product, pushforward, restriction, tuple,
    PowerObject,
};

use std::sync::Arc;

use crate::error::{Error, Result};

/// Default size cap for the validating poset constructor
/// (`Object::finposet`); `finposet_with_cap` raises it when a caller
/// genuinely wants a bigger exhaustively validated order. Internally built
/// product orders are posets by construction and bypass validation.
pub const POSET_VALIDATION_CAP: usize = 6;

/// Which alphabet category an object or morphism lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Instance {
    FinSet,
    FinVect { p: u64 },
    FinPoset,
    Rel,
}

impl Instance {
    /// Whether morphisms can be applied to elements.
    pub fn has_element_layer(self) -> bool {
        !matches!(self, Instance::Rel)
    }
}

/// An object of an alphabet category.
///
/// Poset order relations are shared behind an `Arc`: power carriers over a
/// group universe can hold six-figure relation matrices, and objects are
/// cloned into every morphism built over them.
#[derive(Clone, Debug, Eq)]
pub enum Object {
    FinSet { size: usize },
    FinVect { p: u64, dim: usize },
    FinPoset { size: usize, leq: Arc<Vec<bool>> },
    Rel { size: usize },
}

impl PartialEq for Object {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Object::FinSet { size: a }, Object::FinSet { size: b }) => a == b,
            (Object::FinVect { p, dim }, Object::FinVect { p: q, dim: e }) => p == q && dim == e,
            (Object::Rel { size: a }, Object::Rel { size: b }) => a == b,
            (Object::FinPoset { size: a, leq: la }, Object::FinPoset { size: b, leq: lb }) => {
                a == b && (Arc::ptr_eq(la, lb) || la == lb)
            }
            _ => false,
        }
    }
}

impl Object {
    pub fn finset(size: usize) -> Object {
        Object::FinSet { size }
    }

    pub fn finvect(p: u64, dim: usize) -> Result<Object> {
        if !is_prime(p) {
            return Err(Error::InvalidObject(format!("{p} is not prime")));
        }
        Ok(Object::FinVect { p, dim })
    }

    /// Builds a poset from its order relation, validating reflexivity,
    /// antisymmetry, and transitivity exhaustively, up to the default cap.
    pub fn finposet(size: usize, leq_rows: Vec<Vec<bool>>) -> Result<Object> {
        Object::finposet_with_cap(size, leq_rows, POSET_VALIDATION_CAP)
    }

    /// As `finposet`, with a caller-chosen size cap on the cubic validation.
    pub fn finposet_with_cap(size: usize, leq_rows: Vec<Vec<bool>>, cap: usize) -> Result<Object> {
        if size > cap {
            return Err(Error::InvalidObject(format!(
                "poset of size {size} exceeds the validation cap {cap}"
            )));
        }
        if leq_rows.len() != size || leq_rows.iter().any(|r| r.len() != size) {
            return Err(Error::InvalidObject("order relation is not square".into()));
        }
        let leq: Vec<bool> = leq_rows.into_iter().flatten().collect();
        let at = |x: usize, y: usize| leq[x * size + y];
        for x in 0..size {
            if !at(x, x) {
                return Err(Error::InvalidObject(format!("order not reflexive at {x}")));
            }
        }
        for x in 0..size {
            for y in 0..size {
                if x != y && at(x, y) && at(y, x) {
                    return Err(Error::InvalidObject(format!(
                        "order not antisymmetric at ({x},{y})"
                    )));
                }
                for z in 0..size {
                    if at(x, y) && at(y, z) && !at(x, z) {
                        return Err(Error::InvalidObject(format!(
                            "order not transitive at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(Object::FinPoset {
            size,
            leq: Arc::new(leq),
        })
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(size: usize) -> Object {
        let leq = (0..size)
            .flat_map(|x| (0..size).map(move |y| x <= y))
            .collect();
        Object::FinPoset {
            size,
            leq: Arc::new(leq),
        }
    }

    /// Internal constructor for orders that are posets by construction
    /// (products of validated posets).
    pub(crate) fn finposet_unchecked(size: usize, leq: Vec<bool>) -> Object {
        debug_assert_eq!(leq.len(), size * size);
        Object::FinPoset {
            size,
            leq: Arc::new(leq),
        }
    }

    pub fn rel(size: usize) -> Object {
        Object::Rel { size }
    }

    pub fn instance(&self) -> Instance {
        match self {
            Object::FinSet { .. } => Instance::FinSet,
            Object::FinVect { p, .. } => Instance::FinVect { p: *p },
            Object::FinPoset { .. } => Instance::FinPoset,
            Object::Rel { .. } => Instance::Rel,
        }
    }

    /// Number of points in the element layer.
    pub fn elem_count(&self) -> Result<usize> {
        match self {
            Object::FinSet { size } | Object::FinPoset { size, .. } => Ok(*size),
            Object::FinVect { p, dim } => (*p as usize)
                .checked_pow(*dim as u32)
                .ok_or_else(|| Error::InvalidObject("vector space too large to enumerate".into())),
            Object::Rel { .. } => Err(Error::NoElementLayer),
        }
    }

    /// Side length of the morphism representation: point count for tables,
    /// dimension for matrices, carrier size for relations.
    pub(crate) fn rep_size(&self) -> usize {
        match self {
            Object::FinSet { size } | Object::FinPoset { size, .. } | Object::Rel { size } => *size,
            Object::FinVect { dim, .. } => *dim,
        }
    }

    /// The order relation, for posets.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        match self {
            Object::FinPoset { size, leq } => leq[x * size + y],
            _ => x == y,
        }
    }

    /// All elements in canonical order. Errors for instances without an
    /// element layer.
    pub fn enumerate_elems(&self) -> Result<Vec<Elem>> {
        match self {
            Object::FinSet { size } | Object::FinPoset { size, .. } => {
                Ok((0..*size).map(Elem::Index).collect())
            }
            Object::FinVect { p, dim } => {
                let count = self.elem_count()?;
                Ok((0..count)
                    .map(|code| {
                        let mut digits = vec![0u64; *dim];
                        let mut rest = code;
                        for d in digits.iter_mut().rev() {
                            *d = (rest % *p as usize) as u64;
                            rest /= *p as usize;
                        }
                        Elem::Vector(digits)
                    })
                    .collect())
            }
            Object::Rel { .. } => Err(Error::NoElementLayer),
        }
    }

    /// Canonical position of an element, inverse to `enumerate_elems`.
    pub fn elem_index(&self, x: &Elem) -> Result<usize> {
        self.check_elem(x)?;
        match (self, x) {
            (Object::FinSet { .. } | Object::FinPoset { .. }, Elem::Index(i)) => Ok(*i),
            (Object::FinVect { p, .. }, Elem::Vector(v)) => Ok(v
                .iter()
                .fold(0usize, |acc, &d| acc * *p as usize + d as usize)),
            _ => Err(Error::NoElementLayer),
        }
    }

    pub fn check_elem(&self, x: &Elem) -> Result<()> {
        let ok = match (self, x) {
            (Object::FinSet { size } | Object::FinPoset { size, .. }, Elem::Index(i)) => i < size,
            (Object::FinVect { p, dim }, Elem::Vector(v)) => {
                v.len() == *dim && v.iter().all(|d| d < p)
            }
            (Object::Rel { .. }, _) => return Err(Error::NoElementLayer),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "element {x:?} is not a point of the object"
            )))
        }
    }
}

/// A point of a concrete object.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Index(usize),
    Vector(Vec<u64>),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
