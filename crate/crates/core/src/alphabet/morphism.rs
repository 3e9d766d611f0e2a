use crate::alphabet::{Elem, Instance, Object};
use crate::error::{Error, Result};

/// Instance-specific morphism payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismData {
    /// Total function table: `table[x]` is the target index of `x`.
    Table(Vec<usize>),
    /// Row-major matrix over `F_p`, `target.dim × source.dim`, entries
    /// reduced mod `p`.
    Matrix(Vec<u64>),
    /// Row-major boolean matrix, `source.size × target.size`.
    Relation(Vec<bool>),
}

/// A morphism of an alphabet category, with exact structural equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Object,
    target: Object,
    data: MorphismData,
}

impl Morphism {
    pub fn finset_table(source: Object, target: Object, table: Vec<usize>) -> Result<Morphism> {
        match (&source, &target) {
            (Object::FinSet { size }, Object::FinSet { size: t }) => {
                check_table(&table, *size, *t)?;
                Ok(Morphism {
                    source,
                    target,
                    data: MorphismData::Table(table),
                })
            }
            _ => Err(Error::ShapeMismatch(
                "finset table needs finset endpoints".into(),
            )),
        }
    }

    /// A monotone map of posets; monotonicity is validated.
    pub fn finposet_table(source: Object, target: Object, table: Vec<usize>) -> Result<Morphism> {
        if source.instance() != Instance::FinPoset || target.instance() != Instance::FinPoset {
            return Err(Error::ShapeMismatch(
                "finposet table needs poset endpoints".into(),
            ));
        }
        check_table(&table, source.rep_size(), target.rep_size())?;
        let n = source.rep_size();
        for x in 0..n {
            for y in 0..n {
                if source.leq(x, y) && !target.leq(table[x], table[y]) {
                    return Err(Error::ShapeMismatch(format!(
                        "table is not monotone: {x} ≤ {y} but {} ≰ {}",
                        table[x], table[y]
                    )));
                }
            }
        }
        Ok(Morphism {
            source,
            target,
            data: MorphismData::Table(table),
        })
    }

    /// Internal constructor for tables monotone by construction. The sanity
    /// re-check is quadratic, so it only runs on hand-sized sources.
    pub(crate) fn finposet_table_unchecked(
        source: Object,
        target: Object,
        table: Vec<usize>,
    ) -> Morphism {
        #[cfg(debug_assertions)]
        {
            let n = source.rep_size();
            if n <= 64 {
                for x in 0..n {
                    for y in 0..n {
                        debug_assert!(!source.leq(x, y) || target.leq(table[x], table[y]));
                    }
                }
            }
        }
        Morphism {
            source,
            target,
            data: MorphismData::Table(table),
        }
    }

    pub fn finvect_matrix(source: Object, target: Object, rows: Vec<Vec<u64>>) -> Result<Morphism> {
        match (&source, &target) {
            (Object::FinVect { p, dim: s }, Object::FinVect { p: tp, dim: t }) if p == tp => {
                if rows.len() != *t || rows.iter().any(|r| r.len() != *s) {
                    return Err(Error::ShapeMismatch(format!(
                        "matrix shape {}×{} does not map dim {s} to dim {t}",
                        rows.len(),
                        rows.first().map_or(0, Vec::len),
                    )));
                }
                let data = rows.into_iter().flatten().map(|x| x % p).collect();
                Ok(Morphism {
                    source,
                    target,
                    data: MorphismData::Matrix(data),
                })
            }
            _ => Err(Error::ShapeMismatch(
                "matrix needs finvect endpoints over one field".into(),
            )),
        }
    }

    pub fn rel_pairs(source: Object, target: Object, pairs: &[(usize, usize)]) -> Result<Morphism> {
        match (&source, &target) {
            (Object::Rel { size: s }, Object::Rel { size: t }) => {
                let mut data = vec![false; s * t];
                for &(x, y) in pairs {
                    if x >= *s || y >= *t {
                        return Err(Error::ShapeMismatch(format!("pair ({x},{y}) out of range")));
                    }
                    data[x * t + y] = true;
                }
                Ok(Morphism {
                    source,
                    target,
                    data: MorphismData::Relation(data),
                })
            }
            _ => Err(Error::ShapeMismatch("relation needs rel endpoints".into())),
        }
    }

    pub(crate) fn new_unchecked(source: Object, target: Object, data: MorphismData) -> Morphism {
        Morphism {
            source,
            target,
            data,
        }
    }

    pub fn source(&self) -> &Object {
        &self.source
    }

    pub fn target(&self) -> &Object {
        &self.target
    }

    pub fn data(&self) -> &MorphismData {
        &self.data
    }

    pub fn instance(&self) -> Instance {
        self.source.instance()
    }

    /// The identity morphism on an object.
    pub fn identity(object: &Object) -> Morphism {
        let data = match object {
            Object::FinSet { size } | Object::FinPoset { size, .. } => {
                MorphismData::Table((0..*size).collect())
            }
            Object::FinVect { p: _, dim } => {
                let mut m = vec![0u64; dim * dim];
                for i in 0..*dim {
                    m[i * dim + i] = 1;
                }
                MorphismData::Matrix(m)
            }
            Object::Rel { size } => {
                let mut m = vec![false; size * size];
                for i in 0..*size {
                    m[i * size + i] = true;
                }
                MorphismData::Relation(m)
            }
        };
        Morphism {
            source: object.clone(),
            target: object.clone(),
            data,
        }
    }

    /// Composition `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if inner.target != self.source {
            return Err(Error::ShapeMismatch(
                "composition endpoints do not match".into(),
            ));
        }
        let data = match (&self.data, &inner.data) {
            (MorphismData::Table(g), MorphismData::Table(f)) => {
                MorphismData::Table(f.iter().map(|&x| g[x]).collect())
            }
            (MorphismData::Matrix(g), MorphismData::Matrix(f)) => {
                let Instance::FinVect { p } = self.instance() else {
                    unreachable!()
                };
                let (m, k) = (self.target.rep_size(), self.source.rep_size());
                let n = inner.source.rep_size();
                let mut out = vec![0u64; m * n];
                for i in 0..m {
                    for j in 0..n {
                        let mut acc = 0u64;
                        for l in 0..k {
                            acc = (acc + g[i * k + l] * f[l * n + j]) % p;
                        }
                        out[i * n + j] = acc;
                    }
                }
                MorphismData::Matrix(out)
            }
            (MorphismData::Relation(g), MorphismData::Relation(f)) => {
                let mid = self.source.rep_size();
                let (rows, cols) = (inner.source.rep_size(), self.target.rep_size());
                let mut out = vec![false; rows * cols];
                for x in 0..rows {
                    for z in 0..cols {
                        out[x * cols + z] = (0..mid).any(|y| f[x * mid + y] && g[y * cols + z]);
                    }
                }
                MorphismData::Relation(out)
            }
            _ => unreachable!("object equality implies matching payloads"),
        };
        Ok(Morphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            data,
        })
    }

    /// Exact structural equality, rejecting mistyped comparisons.
    pub fn equal(&self, other: &Morphism) -> Result<bool> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::ShapeMismatch(
                "comparing morphisms of different types".into(),
            ));
        }
        Ok(self.data == other.data)
    }

    /// Applies a morphism to a point (concrete instances only).
    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        self.source.check_elem(x)?;
        match (&self.data, x) {
            (MorphismData::Table(t), Elem::Index(i)) => Ok(Elem::Index(t[*i])),
            (MorphismData::Matrix(m), Elem::Vector(v)) => {
                let Instance::FinVect { p } = self.instance() else {
                    unreachable!()
                };
                let (rows, cols) = (self.target.rep_size(), self.source.rep_size());
                Ok(Elem::Vector(
                    (0..rows)
                        .map(|i| (0..cols).fold(0u64, |acc, j| (acc + m[i * cols + j] * v[j]) % p))
                        .collect(),
                ))
            }
            (MorphismData::Relation(_), _) => Err(Error::NoElementLayer),
            _ => unreachable!("check_elem matches the payload"),
        }
    }

    /// Whether a relation contains the pair `(x, y)`.
    pub fn relates(&self, x: usize, y: usize) -> bool {
        match &self.data {
            MorphismData::Relation(m) => m[x * self.target.rep_size() + y],
            _ => false,
        }
    }
}

fn check_table(table: &[usize], source_size: usize, target_size: usize) -> Result<()> {
    if table.len() != source_size {
        return Err(Error::ShapeMismatch(format!(
            "table has {} entries for a source of size {source_size}",
            table.len()
        )));
    }
    if let Some(x) = table.iter().find(|&&x| x >= target_size) {
        return Err(Error::ShapeMismatch(format!(
            "table entry {x} out of range"
        )));
    }
    Ok(())
}
