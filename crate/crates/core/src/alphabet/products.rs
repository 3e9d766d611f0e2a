//! Products, power objects, and the index machinery.
//!
//! Power carriers are canonical: finset and finposet tuples are mixed-radix
//! codes with the first index as the most significant digit, finvect tuples
//! are block-stacked coordinates, and rel carriers are disjoint unions whose
//! points are (index position, base element) pairs in position-major order.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::alphabet::{Elem, Morphism, MorphismData, Object};
use crate::error::{Error, Result};

/// The product of `arity` copies of `base`, with its carrier object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerObject {
    base: Object,
    arity: usize,
    carrier: Object,
}

impl PowerObject {
    pub fn base(&self) -> &Object {
        &self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn carrier(&self) -> &Object {
        &self.carrier
    }

    /// The projection onto coordinate `i`.
    pub fn projection(&self, i: usize) -> Morphism {
        assert!(i < self.arity, "projection index out of range");
        let n = self.base.rep_size();
        match &self.base {
            Object::FinSet { size } | Object::FinPoset { size, .. } => {
                let count = size.pow(self.arity as u32);
                let table = (0..count)
                    .map(|code| digit(*size, self.arity, code, i))
                    .collect();
                match self.base {
                    Object::FinSet { .. } => {
                        Morphism::finset_table(self.carrier.clone(), self.base.clone(), table)
                            .expect("projection table is well formed")
                    }
                    _ => Morphism::finposet_table_unchecked(
                        self.carrier.clone(),
                        self.base.clone(),
                        table,
                    ),
                }
            }
            Object::FinVect { .. } => {
                let mut m = vec![0u64; n * (n * self.arity)];
                for r in 0..n {
                    m[r * (n * self.arity) + i * n + r] = 1;
                }
                Morphism::new_unchecked(
                    self.carrier.clone(),
                    self.base.clone(),
                    MorphismData::Matrix(m),
                )
            }
            Object::Rel { .. } => {
                let pairs: Vec<(usize, usize)> = (0..n).map(|a| (i * n + a, a)).collect();
                Morphism::rel_pairs(self.carrier.clone(), self.base.clone(), &pairs)
                    .expect("projection pairs are in range")
            }
        }
    }
}

/// Builds the power object `base^arity`.
pub fn power(base: &Object, arity: usize) -> PowerObject {
    let carrier = match base {
        Object::FinSet { size } => Object::finset(size.pow(arity as u32)),
        Object::FinVect { p, dim } => Object::FinVect {
            p: *p,
            dim: dim * arity,
        },
        Object::FinPoset { size, .. } => poset_power_carrier(base, *size, arity),
        Object::Rel { size } => Object::rel(size * arity),
    };
    PowerObject {
        base: base.clone(),
        arity,
        carrier,
    }
}

/// Product-order carriers are quadratic in the carrier size, and the engine
/// asks for the same powers over and over (every restriction, shift, and
/// tuple over one universe); small bases are cached by their packed order.
type PowerCache = Mutex<HashMap<(usize, u64, usize), Object>>;

fn poset_power_carrier(base: &Object, size: usize, arity: usize) -> Object {
    static CACHE: OnceLock<PowerCache> = OnceLock::new();
    let packed = (size <= 8).then(|| {
        let mut bits = 0u64;
        for x in 0..size {
            for y in 0..size {
                if base.leq(x, y) {
                    bits |= 1 << (x * size + y);
                }
            }
        }
        bits
    });
    if let Some(bits) = packed {
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(carrier) = cache.lock().unwrap().get(&(size, bits, arity)) {
            return carrier.clone();
        }
        let carrier = build_product_order(base, size, arity);
        cache
            .lock()
            .unwrap()
            .insert((size, bits, arity), carrier.clone());
        carrier
    } else {
        build_product_order(base, size, arity)
    }
}

/// Extends the product order one coordinate at a time:
/// `(x,a) ≤ (y,b)` iff `x ≤ y` componentwise and `a ≤ b` in the base.
fn build_product_order(base: &Object, size: usize, arity: usize) -> Object {
    let mut count = 1usize;
    let mut leq = vec![true];
    for _ in 0..arity {
        let next_count = count * size;
        let mut next = vec![false; next_count * next_count];
        for x in 0..count {
            for y in 0..count {
                if !leq[x * count + y] {
                    continue;
                }
                for a in 0..size {
                    for b in 0..size {
                        if base.leq(a, b) {
                            next[(x * size + a) * next_count + (y * size + b)] = true;
                        }
                    }
                }
            }
        }
        count = next_count;
        leq = next;
    }
    Object::finposet_unchecked(count, leq)
}

/// The unique morphism into a power determined by a family of morphisms
/// with a common source: `projection(i) ∘ tuple = members[i]`.
pub fn tuple(base: &Object, source: &Object, members: &[Morphism]) -> Result<Morphism> {
    for member in members {
        if member.source() != source || member.target() != base {
            return Err(Error::ShapeMismatch(
                "tuple member has wrong endpoints".into(),
            ));
        }
    }
    let pow = power(base, members.len());
    let data = match base {
        Object::FinSet { size } | Object::FinPoset { size, .. } => {
            let src_count = source.rep_size();
            let table = (0..src_count)
                .map(|x| {
                    members.iter().fold(0usize, |acc, m| {
                        let MorphismData::Table(t) = m.data() else {
                            unreachable!()
                        };
                        acc * size + t[x]
                    })
                })
                .collect();
            MorphismData::Table(table)
        }
        Object::FinVect { .. } => {
            let mut rows = Vec::new();
            for m in members {
                let MorphismData::Matrix(data) = m.data() else {
                    unreachable!()
                };
                rows.extend_from_slice(data);
            }
            MorphismData::Matrix(rows)
        }
        Object::Rel { size } => {
            let (rows, cols) = (source.rep_size(), pow.carrier().rep_size());
            let mut out = vec![false; rows * cols];
            for (i, m) in members.iter().enumerate() {
                for x in 0..rows {
                    for a in 0..*size {
                        if m.relates(x, a) {
                            out[x * cols + i * size + a] = true;
                        }
                    }
                }
            }
            MorphismData::Relation(out)
        }
    };
    let result = Morphism::new_unchecked(source.clone(), pow.carrier().clone(), data);
    #[cfg(debug_assertions)]
    for (i, member) in members.iter().enumerate() {
        debug_assert!(pow
            .projection(i)
            .compose(&result)
            .unwrap()
            .equal(member)
            .unwrap());
    }
    Ok(result)
}

/// The binary product of two objects with its projections.
pub fn product(a: &Object, b: &Object) -> Result<(Object, Morphism, Morphism)> {
    if a.instance() != b.instance() {
        return Err(Error::InstanceMismatch);
    }
    Ok(match (a, b) {
        (Object::FinSet { size: na }, Object::FinSet { size: nb }) => {
            let carrier = Object::finset(na * nb);
            let pa = Morphism::finset_table(
                carrier.clone(),
                a.clone(),
                (0..na * nb).map(|c| c / nb).collect(),
            )?;
            let pb = Morphism::finset_table(
                carrier.clone(),
                b.clone(),
                (0..na * nb).map(|c| c % nb).collect(),
            )?;
            (carrier, pa, pb)
        }
        (Object::FinVect { p, dim: da }, Object::FinVect { dim: db, .. }) => {
            let carrier = Object::FinVect {
                p: *p,
                dim: da + db,
            };
            let mut ma = vec![0u64; da * (da + db)];
            for r in 0..*da {
                ma[r * (da + db) + r] = 1;
            }
            let mut mb = vec![0u64; db * (da + db)];
            for r in 0..*db {
                mb[r * (da + db) + da + r] = 1;
            }
            let pa = Morphism::new_unchecked(carrier.clone(), a.clone(), MorphismData::Matrix(ma));
            let pb = Morphism::new_unchecked(carrier.clone(), b.clone(), MorphismData::Matrix(mb));
            (carrier, pa, pb)
        }
        (Object::FinPoset { size: na, .. }, Object::FinPoset { size: nb, .. }) => {
            let count = na * nb;
            let mut leq = vec![false; count * count];
            for x in 0..count {
                for y in 0..count {
                    leq[x * count + y] = a.leq(x / nb, y / nb) && b.leq(x % nb, y % nb);
                }
            }
            let carrier = Object::finposet_unchecked(count, leq);
            let pa = Morphism::finposet_table_unchecked(
                carrier.clone(),
                a.clone(),
                (0..count).map(|c| c / nb).collect(),
            );
            let pb = Morphism::finposet_table_unchecked(
                carrier.clone(),
                b.clone(),
                (0..count).map(|c| c % nb).collect(),
            );
            (carrier, pa, pb)
        }
        (Object::Rel { size: na }, Object::Rel { size: nb }) => {
            // Disjoint union with converse-injection projections.
            let carrier = Object::rel(na + nb);
            let pa_pairs: Vec<(usize, usize)> = (0..*na).map(|x| (x, x)).collect();
            let pb_pairs: Vec<(usize, usize)> = (0..*nb).map(|x| (na + x, x)).collect();
            let pa = Morphism::rel_pairs(carrier.clone(), a.clone(), &pa_pairs)?;
            let pb = Morphism::rel_pairs(carrier.clone(), b.clone(), &pb_pairs)?;
            (carrier, pa, pb)
        }
        _ => unreachable!("instance equality checked above"),
    })
}

/// The unique morphism into a binary product determined by `f` and `g`.
pub fn pair(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    if f.source() != g.source() {
        return Err(Error::ShapeMismatch(
            "paired morphisms need a common source".into(),
        ));
    }
    let (carrier, pa, pb) = product(f.target(), g.target())?;
    let data = match (f.data(), g.data()) {
        (MorphismData::Table(tf), MorphismData::Table(tg)) => {
            let nb = g.target().rep_size();
            MorphismData::Table(tf.iter().zip(tg).map(|(&x, &y)| x * nb + y).collect())
        }
        (MorphismData::Matrix(mf), MorphismData::Matrix(mg)) => {
            let mut rows = mf.clone();
            rows.extend_from_slice(mg);
            MorphismData::Matrix(rows)
        }
        (MorphismData::Relation(rf), MorphismData::Relation(rg)) => {
            let rows = f.source().rep_size();
            let (na, nb) = (f.target().rep_size(), g.target().rep_size());
            let cols = na + nb;
            let mut out = vec![false; rows * cols];
            for x in 0..rows {
                for a in 0..na {
                    if rf[x * na + a] {
                        out[x * cols + a] = true;
                    }
                }
                for b in 0..nb {
                    if rg[x * nb + b] {
                        out[x * cols + na + b] = true;
                    }
                }
            }
            MorphismData::Relation(out)
        }
        _ => return Err(Error::InstanceMismatch),
    };
    let result = Morphism::new_unchecked(f.source().clone(), carrier, data);
    debug_assert!(pa.compose(&result).unwrap().equal(f).unwrap());
    debug_assert!(pb.compose(&result).unwrap().equal(g).unwrap());
    Ok(result)
}

/// The pullback of an index map `m : I → J`: the unique morphism
/// `base^J → base^I` with `projection_I(i) ∘ pullback = projection_J(m(i))`.
/// `map[i]` gives `m(i)` as a position into the source index.
pub fn index_pullback(base: &Object, source_arity: usize, map: &[usize]) -> Result<Morphism> {
    if let Some(&j) = map.iter().find(|&&j| j >= source_arity) {
        return Err(Error::ShapeMismatch(format!(
            "index map hits {j} out of range"
        )));
    }
    let from = power(base, source_arity);
    let to = power(base, map.len());
    let n = base.rep_size();
    let data = match base {
        Object::FinSet { size } | Object::FinPoset { size, .. } => {
            let count = from.carrier().rep_size();
            let table = (0..count)
                .map(|code| {
                    map.iter().fold(0usize, |acc, &j| {
                        acc * size + digit(*size, source_arity, code, j)
                    })
                })
                .collect();
            MorphismData::Table(table)
        }
        Object::FinVect { .. } => {
            let (rows, cols) = (n * map.len(), n * source_arity);
            let mut m = vec![0u64; rows * cols];
            for (i, &j) in map.iter().enumerate() {
                for r in 0..n {
                    m[(i * n + r) * cols + j * n + r] = 1;
                }
            }
            MorphismData::Matrix(m)
        }
        Object::Rel { .. } => {
            let cols = to.carrier().rep_size();
            let mut out = vec![false; from.carrier().rep_size() * cols];
            for (i, &j) in map.iter().enumerate() {
                for a in 0..n {
                    out[(j * n + a) * cols + i * n + a] = true;
                }
            }
            MorphismData::Relation(out)
        }
    };
    Ok(Morphism::new_unchecked(
        from.carrier().clone(),
        to.carrier().clone(),
        data,
    ))
}

/// Restriction onto a sub-index: `keep` lists the retained positions of the
/// index, in increasing order.
pub fn restriction(base: &Object, index_arity: usize, keep: &[usize]) -> Result<Morphism> {
    if !keep.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::ShapeMismatch(
            "restriction positions must be increasing".into(),
        ));
    }
    index_pullback(base, index_arity, keep)
}

/// The coordinatewise extension `f^I : A^I → B^I` of `f : A → B`.
pub fn pushforward(f: &Morphism, arity: usize) -> Morphism {
    let from = power(f.source(), arity);
    let to = power(f.target(), arity);
    let data = match f.data() {
        MorphismData::Table(t) => {
            let nb = f.target().rep_size();
            let na = f.source().rep_size();
            let count = from.carrier().rep_size();
            let table = (0..count)
                .map(|code| {
                    (0..arity).fold(0usize, |acc, i| acc * nb + t[digit(na, arity, code, i)])
                })
                .collect();
            MorphismData::Table(table)
        }
        MorphismData::Matrix(m) => {
            let (kb, ka) = (f.target().rep_size(), f.source().rep_size());
            let (rows, cols) = (kb * arity, ka * arity);
            let mut out = vec![0u64; rows * cols];
            for i in 0..arity {
                for r in 0..kb {
                    for c in 0..ka {
                        out[(i * kb + r) * cols + i * ka + c] = m[r * ka + c];
                    }
                }
            }
            MorphismData::Matrix(out)
        }
        MorphismData::Relation(rel) => {
            let (na, nb) = (f.source().rep_size(), f.target().rep_size());
            let cols = nb * arity;
            let mut out = vec![false; na * arity * cols];
            for i in 0..arity {
                for a in 0..na {
                    for b in 0..nb {
                        if rel[a * nb + b] {
                            out[(i * na + a) * cols + i * nb + b] = true;
                        }
                    }
                }
            }
            MorphismData::Relation(out)
        }
    };
    Morphism::new_unchecked(from.carrier().clone(), to.carrier().clone(), data)
}

/// Packs a tuple of points into the corresponding power-carrier point.
pub fn encode_tuple(base: &Object, elems: &[Elem]) -> Result<Elem> {
    match base {
        Object::FinSet { size } | Object::FinPoset { size, .. } => {
            let mut code = 0usize;
            for e in elems {
                base.check_elem(e)?;
                let Elem::Index(i) = e else { unreachable!() };
                code = code * size + i;
            }
            Ok(Elem::Index(code))
        }
        Object::FinVect { .. } => {
            let mut out = Vec::new();
            for e in elems {
                base.check_elem(e)?;
                let Elem::Vector(v) = e else { unreachable!() };
                out.extend_from_slice(v);
            }
            Ok(Elem::Vector(out))
        }
        Object::Rel { .. } => Err(Error::NoElementLayer),
    }
}

/// Digit `i` of `code` in base `n` with `arity` digits, first digit most
/// significant.
pub(crate) fn digit(n: usize, arity: usize, code: usize, i: usize) -> usize {
    code / n.pow((arity - 1 - i) as u32) % n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finset_power_projection_decodes_digits() {
        let a = Object::finset(2);
        let pow = power(&a, 3);
        assert_eq!(pow.carrier().rep_size(), 8);
        // Code 6 = 110 in binary with the first index most significant.
        let p0 = pow.projection(0);
        assert_eq!(p0.apply(&Elem::Index(6)).unwrap(), Elem::Index(1));
        assert_eq!(
            pow.projection(2).apply(&Elem::Index(6)).unwrap(),
            Elem::Index(0)
        );
    }

    #[test]
    fn singleton_power_projection_is_identity_like() {
        let a = Object::finset(3);
        let pow = power(&a, 1);
        assert_eq!(pow.projection(0), Morphism::identity(&a));
    }

    #[test]
    fn rel_power_carrier_is_disjoint_union() {
        let a = Object::rel(2);
        assert_eq!(power(&a, 2).carrier().rep_size(), 4);
        assert_eq!(power(&a, 0).carrier().rep_size(), 0);
    }

    #[test]
    fn product_sizes_per_instance() {
        let (c, _, _) = product(&Object::finset(2), &Object::finset(3)).unwrap();
        assert_eq!(c.rep_size(), 6);
        let (c, _, _) = product(&Object::rel(2), &Object::rel(3)).unwrap();
        assert_eq!(c.rep_size(), 5);
        let (c, pa, pb) = product(
            &Object::finvect(2, 2).unwrap(),
            &Object::finvect(2, 3).unwrap(),
        )
        .unwrap();
        assert_eq!(c.rep_size(), 5);
        assert_eq!(pa.target().rep_size(), 2);
        assert_eq!(pb.target().rep_size(), 3);
    }

    #[test]
    fn pairing_projections_gives_identity() {
        for (a, b) in [
            (Object::finset(2), Object::finset(3)),
            (Object::rel(2), Object::rel(3)),
            (
                Object::finvect(3, 1).unwrap(),
                Object::finvect(3, 2).unwrap(),
            ),
            (Object::chain(2), Object::chain(3)),
        ] {
            let (carrier, pa, pb) = product(&a, &b).unwrap();
            let paired = pair(&pa, &pb).unwrap();
            assert_eq!(paired, Morphism::identity(&carrier));
        }
    }

    #[test]
    fn rel_pair_lands_in_the_right_summands() {
        let x = Object::rel(1);
        let a = Object::rel(2);
        let b = Object::rel(3);
        let f = Morphism::rel_pairs(x.clone(), a, &[(0, 0)]).unwrap();
        let g = Morphism::rel_pairs(x, b, &[(0, 2)]).unwrap();
        let h = pair(&f, &g).unwrap();
        // Verify the projection equations by boolean products.
        let (_, pa, pb) = product(f.target(), g.target()).unwrap();
        assert!(pa.compose(&h).unwrap().equal(&f).unwrap());
        assert!(pb.compose(&h).unwrap().equal(&g).unwrap());
        assert!(h.relates(0, 0));
        assert!(h.relates(0, 2 + 2));
    }

    #[test]
    fn restriction_extracts_retained_digits() {
        let a = Object::finset(2);
        // I = {a,b,c}, S = {b}: code 6 = (1,1,0) restricted to the middle digit.
        let res = restriction(&a, 3, &[1]).unwrap();
        assert_eq!(res.apply(&Elem::Index(6)).unwrap(), Elem::Index(1));
        // S = I is the identity.
        let full = restriction(&a, 3, &[0, 1, 2]).unwrap();
        assert_eq!(full, Morphism::identity(power(&a, 3).carrier()));
    }

    #[test]
    fn index_pullback_permutes_coordinates() {
        let a = Object::finset(2);
        let swap = index_pullback(&a, 2, &[1, 0]).unwrap();
        assert_eq!(swap.apply(&Elem::Index(0b01)).unwrap(), Elem::Index(0b10));
        let id = index_pullback(&a, 2, &[0, 1]).unwrap();
        assert_eq!(id, Morphism::identity(power(&a, 2).carrier()));
    }

    #[test]
    fn pushforward_is_blockwise() {
        let a = Object::finvect(2, 2).unwrap();
        let b = Object::finvect(2, 1).unwrap();
        let f = Morphism::finvect_matrix(a, b, vec![vec![1, 1]]).unwrap();
        let pushed = pushforward(&f, 2);
        assert_eq!(pushed.source().rep_size(), 4);
        assert_eq!(pushed.target().rep_size(), 2);
        // Block-diagonal: [1 1 0 0; 0 0 1 1].
        let MorphismData::Matrix(m) = pushed.data() else {
            panic!()
        };
        assert_eq!(m, &vec![1, 1, 0, 0, 0, 0, 1, 1]);
    }

    #[test]
    fn tuple_of_projections_is_identity() {
        for base in [
            Object::finset(3),
            Object::rel(2),
            Object::finvect(2, 2).unwrap(),
        ] {
            let pow = power(&base, 2);
            let members = vec![pow.projection(0), pow.projection(1)];
            let t = tuple(&base, pow.carrier(), &members).unwrap();
            assert_eq!(t, Morphism::identity(pow.carrier()));
        }
    }

    #[test]
    fn empty_power_carriers() {
        assert_eq!(power(&Object::finset(2), 0).carrier().rep_size(), 1);
        assert_eq!(
            power(&Object::finvect(2, 3).unwrap(), 0)
                .carrier()
                .rep_size(),
            0
        );
        assert_eq!(power(&Object::chain(2), 0).carrier().rep_size(), 1);
        assert_eq!(power(&Object::rel(2), 0).carrier().rep_size(), 0);
    }
}
