//! Seed-deterministic generators for random objects, morphisms, automata,
//! and configurations. Reports embed the seed, so every sampled
//! counterexample can be reproduced.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{power, Elem, Instance, Morphism, MorphismData, Object};
use crate::ca::{CellularAutomaton, Configuration, LocalRule};
use crate::error::Result;
use crate::gca::GeneralizedCA;
use crate::group::{FiniteSubset, Group, GroupElem, GroupHom};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }

    pub fn bool(&mut self) -> bool {
        self.rng.random()
    }

    /// A random object of the instance with representation size in
    /// `1..=max` (dimension capped at 2 for vector spaces).
    pub fn object(&mut self, instance: Instance, max: usize) -> Object {
        match instance {
            Instance::FinSet => Object::finset(1 + self.index(max)),
            Instance::FinVect { p } => {
                Object::finvect(p, self.index(3.min(max + 1))).expect("p is prime")
            }
            Instance::FinPoset => {
                let size = 1 + self.index(max);
                self.poset(size)
            }
            Instance::Rel => Object::rel(1 + self.index(max)),
        }
    }

    /// A random poset: the reflexive-transitive closure of random edges that
    /// respect the integer order, so antisymmetry holds by construction.
    pub fn poset(&mut self, size: usize) -> Object {
        let mut leq = vec![false; size * size];
        for x in 0..size {
            leq[x * size + x] = true;
            for y in (x + 1)..size {
                if self.index(3) == 0 {
                    leq[x * size + y] = true;
                }
            }
        }
        // Transitive closure.
        for m in 0..size {
            for x in 0..size {
                for y in 0..size {
                    if leq[x * size + m] && leq[m * size + y] {
                        leq[x * size + y] = true;
                    }
                }
            }
        }
        let rows = (0..size)
            .map(|x| leq[x * size..(x + 1) * size].to_vec())
            .collect();
        Object::finposet(size, rows).expect("closure of an acyclic relation is a poset")
    }

    /// A random morphism between two objects of the same instance.
    pub fn morphism(&mut self, source: &Object, target: &Object) -> Morphism {
        match source.instance() {
            Instance::FinSet => {
                let table = (0..source.rep_size())
                    .map(|_| self.index(target.rep_size()))
                    .collect();
                Morphism::finset_table(source.clone(), target.clone(), table)
                    .expect("entries are in range")
            }
            Instance::FinPoset => {
                let table = self.monotone_table(source, target);
                Morphism::finposet_table(source.clone(), target.clone(), table)
                    .expect("table was checked monotone")
            }
            Instance::FinVect { p } => {
                let rows = (0..target.rep_size())
                    .map(|_| {
                        (0..source.rep_size())
                            .map(|_| self.rng.random_range(0..p))
                            .collect()
                    })
                    .collect();
                Morphism::finvect_matrix(source.clone(), target.clone(), rows)
                    .expect("shape matches")
            }
            Instance::Rel => {
                let pairs: Vec<(usize, usize)> = (0..source.rep_size())
                    .flat_map(|x| (0..target.rep_size()).map(move |y| (x, y)))
                    .collect();
                let chosen: Vec<(usize, usize)> =
                    pairs.into_iter().filter(|_| self.bool()).collect();
                Morphism::rel_pairs(source.clone(), target.clone(), &chosen)
                    .expect("pairs are in range")
            }
        }
    }

    /// Random monotone table by rejection, falling back to a constant map.
    fn monotone_table(&mut self, source: &Object, target: &Object) -> Vec<usize> {
        let (ns, nt) = (source.rep_size(), target.rep_size());
        'attempt: for _ in 0..200 {
            let table: Vec<usize> = (0..ns).map(|_| self.index(nt)).collect();
            for x in 0..ns {
                for y in 0..ns {
                    if source.leq(x, y) && !target.leq(table[x], table[y]) {
                        continue 'attempt;
                    }
                }
            }
            return table;
        }
        vec![self.index(nt); ns]
    }

    /// Mutates a morphism at one entry; the result is well typed (and
    /// monotone for posets) but may occasionally equal the input.
    pub fn perturb(&mut self, m: &Morphism) -> Morphism {
        match (m.instance(), m.data()) {
            (Instance::FinSet, MorphismData::Table(t)) => {
                let mut t = t.clone();
                if t.is_empty() || m.target().rep_size() < 2 {
                    return m.clone();
                }
                let i = self.index(t.len());
                t[i] = (t[i] + 1 + self.index(m.target().rep_size() - 1)) % m.target().rep_size();
                Morphism::finset_table(m.source().clone(), m.target().clone(), t).unwrap()
            }
            (Instance::FinPoset, MorphismData::Table(_)) => {
                for _ in 0..50 {
                    let candidate = self.morphism(m.source(), m.target());
                    if &candidate != m {
                        return candidate;
                    }
                }
                m.clone()
            }
            (Instance::FinVect { p }, MorphismData::Matrix(data)) => {
                let mut data = data.clone();
                if data.is_empty() {
                    return m.clone();
                }
                let i = self.index(data.len());
                data[i] = (data[i] + 1 + self.rng.random_range(0..p - 1)) % p;
                let cols = m.source().rep_size();
                let rows = data.chunks(cols.max(1)).map(|r| r.to_vec()).collect();
                Morphism::finvect_matrix(m.source().clone(), m.target().clone(), rows).unwrap()
            }
            (Instance::Rel, MorphismData::Relation(data)) => {
                let mut pairs: Vec<(usize, usize)> = Vec::new();
                let cols = m.target().rep_size();
                for (i, &b) in data.iter().enumerate() {
                    if b {
                        pairs.push((i / cols, i % cols));
                    }
                }
                if data.is_empty() {
                    return m.clone();
                }
                let flip = self.index(data.len());
                let flipped = (flip / cols, flip % cols);
                if let Some(pos) = pairs.iter().position(|&p| p == flipped) {
                    pairs.remove(pos);
                } else {
                    pairs.push(flipped);
                }
                Morphism::rel_pairs(m.source().clone(), m.target().clone(), &pairs).unwrap()
            }
            _ => unreachable!("payload matches instance"),
        }
    }

    /// A random nonempty subset: of the whole group when finite, of the
    /// radius-2 ball otherwise.
    pub fn subset(&mut self, group: &Group, max_size: usize) -> FiniteSubset {
        let pool: Vec<GroupElem> = match group.elements() {
            Ok(all) => all,
            Err(_) => group.ball(2).elements().to_vec(),
        };
        let size = 1 + self.index(max_size.min(pool.len()));
        let mut chosen = Vec::new();
        while chosen.len() < size {
            let x = pool[self.index(pool.len())].clone();
            if !chosen.contains(&x) {
                chosen.push(x);
            }
        }
        FiniteSubset::new(group.clone(), chosen).expect("pool elements are members")
    }

    /// A random automaton over the group with alphabets from one instance.
    pub fn ca(
        &mut self,
        group: &Group,
        instance: Instance,
        max_alphabet: usize,
        max_neighborhood: usize,
    ) -> CellularAutomaton {
        let a = self.object(instance, max_alphabet);
        let b = self.object(instance, max_alphabet);
        self.ca_between(group, &a, &b, max_neighborhood)
    }

    /// A random automaton with the given alphabets.
    pub fn ca_between(
        &mut self,
        group: &Group,
        a: &Object,
        b: &Object,
        max_neighborhood: usize,
    ) -> CellularAutomaton {
        let s = self.subset(group, max_neighborhood);
        let mu = self.morphism(power(a, s.len()).carrier(), b);
        CellularAutomaton::new(
            LocalRule::new(a.clone(), b.clone(), s, mu).expect("sampled rule is well typed"),
        )
    }

    /// A random generalized automaton `A^G → B^H` along a random
    /// homomorphism `H → G` (both groups finite).
    pub fn gca(
        &mut self,
        source_group: &Group,
        target_group: &Group,
        instance: Instance,
        max_alphabet: usize,
        max_neighborhood: usize,
    ) -> Result<GeneralizedCA> {
        let homs = GroupHom::enumerate(target_group, source_group)?;
        let hom = homs[self.index(homs.len())].clone();
        let ca = self.ca(source_group, instance, max_alphabet, max_neighborhood);
        GeneralizedCA::new(hom, ca.rule().clone())
    }

    pub fn elem(&mut self, object: &Object) -> Elem {
        let n = object
            .elem_count()
            .expect("sampling needs an element layer");
        let all = object
            .enumerate_elems()
            .expect("sampling needs an element layer");
        all[self.index(n)].clone()
    }

    /// A random configuration: dense over finite groups, sparse with support
    /// inside the radius-2 ball otherwise.
    pub fn config(&mut self, group: &Group, alphabet: &Object) -> Configuration {
        match group.order() {
            Some(n) => {
                let values = (0..n).map(|_| self.elem(alphabet)).collect();
                Configuration::dense(group.clone(), alphabet.clone(), values)
                    .expect("sampled values are members")
            }
            None => {
                let default = self.elem(alphabet);
                let mut support = Vec::new();
                for g in group.ball(2).elements() {
                    if self.bool() {
                        let value = self.elem(alphabet);
                        support.push((g.clone(), value));
                    }
                }
                Configuration::sparse(group.clone(), alphabet.clone(), default, support)
                    .expect("sampled support is valid")
            }
        }
    }
}
