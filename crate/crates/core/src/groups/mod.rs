//! Permutation groups by full enumeration: conjugacy classes, power maps, class
//! multiplication coefficients, Dixon–Schneider character tables, Sylow subgroups,
//! p′-closure and the subgroup V = N·C_G(Q).

mod classes;
mod dixon;
mod io;
mod linalg;
pub mod named;
mod perm;
mod quotient;

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use thiserror::Error;

use crate::arith::p_part;
use crate::tables::{CharacterTable, FusionMap, TableError};

pub use classes::ConjugacyData;
pub use io::{GroupFile, NamedGenerators};
pub use perm::{Perm, PermError};
pub use quotient::CosetGroup;

/// Default enumeration cap; overridden by the `BLOCKWORK_CAP` environment variable.
pub const DEFAULT_CAP: usize = 20_000;

/// Groups up to this order keep a full multiplication table.
const TABLE_LIMIT: usize = 2048;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group order exceeds the enumeration cap {cap}")]
    CapExceeded { cap: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("generators have different degrees")]
    DegreeMismatch,
    #[error("N is not a normal subgroup of G")]
    NotNormal,
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("input error: {0}")]
    Input(String),
    #[error("internal split failure: {0}")]
    InternalSplitFailure(String),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// The cap in effect: `BLOCKWORK_CAP` when set to a positive integer, else [`DEFAULT_CAP`].
pub fn default_cap() -> usize {
    std::env::var("BLOCKWORK_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&c| c > 0)
        .unwrap_or(DEFAULT_CAP)
}

/// A fully enumerated permutation group. Elements are sorted lexicographically by image
/// sequence, so index 0 is the identity; subgroups are sorted vectors of element indices.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    cap: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    inverse: Vec<u32>,
    orders: Vec<u64>,
    table: Option<Vec<u32>>,
    classes: OnceLock<ConjugacyData>,
}

pub type Subgroup = Vec<usize>;

impl PermGroup {
    /// Breadth-first closure of the generators.
    pub fn enumerate(generators: Vec<Perm>, cap: usize) -> Result<Self, GroupError> {
        let degree = generators.first().map_or(1, Perm::degree);
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch);
        }
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, u32> = HashMap::new();
        seen.insert(id.clone(), 0);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.then(g);
                if !seen.contains_key(&y) {
                    if seen.len() >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    seen.insert(y.clone(), 0);
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_keys().collect();
        elements.sort();
        Ok(Self::from_sorted(degree, generators, cap, elements))
    }

    fn from_sorted(degree: usize, generators: Vec<Perm>, cap: usize, elements: Vec<Perm>) -> Self {
        let index: HashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let inverse = elements.iter().map(|p| index[&p.inverse()]).collect();
        let orders = elements.iter().map(Perm::order).collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.then(b)]);
                }
            }
            t
        });
        PermGroup {
            degree,
            generators,
            cap,
            elements,
            index,
            inverse,
            orders,
            table,
            classes: OnceLock::new(),
        }
    }

    /// Enumerates the subgroup generated by the given elements as a group in its own right.
    pub fn subgroup_group(&self, gens: &[usize]) -> Result<PermGroup, GroupError> {
        let perms = if gens.is_empty() {
            vec![Perm::identity(self.degree)]
        } else {
            gens.iter().map(|&g| self.elements[g].clone()).collect()
        };
        PermGroup::enumerate(perms, self.cap)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators
            .iter()
            .map(|g| self.index[g] as usize)
            .collect()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].then(&self.elements[b])] as usize,
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut result = 0;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    /// g⁻¹ x g.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Closure of a set of elements under multiplication.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut member = vec![false; self.elements.len()];
        member[0] = true;
        let mut out = vec![0];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Membership flags for a set of elements.
    pub fn mask(&self, set: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.elements.len()];
        for &x in set {
            m[x] = true;
        }
        m
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let m = self.mask(set);
        m[0] && set
            .iter()
            .all(|&a| m[self.inv(a)] && set.iter().all(|&b| m[self.mul(a, b)]))
    }

    /// True when `h` is closed under conjugation by the generators of G.
    pub fn is_normal(&self, h: &[usize]) -> bool {
        let m = self.mask(h);
        self.generator_indices()
            .iter()
            .all(|&g| h.iter().all(|&x| m[self.conjugate(x, g)]))
    }

    pub fn normalizer(&self, h: &[usize]) -> Subgroup {
        let m = self.mask(h);
        (0..self.elements.len())
            .filter(|&g| h.iter().all(|&x| m[self.conjugate(x, g)]))
            .collect()
    }

    pub fn centralizer(&self, h: &[usize]) -> Subgroup {
        (0..self.elements.len())
            .filter(|&g| h.iter().all(|&x| self.mul(x, g) == self.mul(g, x)))
            .collect()
    }

    pub fn is_p_element(&self, x: usize, p: u64) -> bool {
        p_part(self.orders[x], p) == self.orders[x]
    }

    /// A Sylow p-subgroup of the subgroup `h`, grown one p-element of the normalizer at a
    /// time; the first suitable element in index order is always taken.
    pub fn sylow(&self, h: &[usize], p: u64) -> Subgroup {
        let target = p_part(h.len() as u64, p) as usize;
        let mut current: Subgroup = vec![0];
        while current.len() < target {
            let m = self.mask(&current);
            let next = h
                .iter()
                .copied()
                .find(|&x| {
                    !m[x]
                        && self.is_p_element(x, p)
                        && current.iter().all(|&y| m[self.conjugate(y, x)])
                })
                .expect("a proper p-subgroup has a p-element in its normalizer outside it");
            let mut gens = current.clone();
            gens.push(next);
            current = self.generate(&gens);
        }
        current
    }

    /// True iff the p′-elements of G form a subgroup.
    pub fn has_normal_p_complement(&self, p: u64) -> bool {
        let pprime: Vec<usize> = (0..self.elements.len())
            .filter(|&x| !self.orders[x].is_multiple_of(p))
            .collect();
        p_prime_closed(&pprime, |a, b| self.mul(a, b), self.elements.len(), p)
    }

    /// V = N·C_G(Q) for Q ∈ Syl_p(N), and whether V/N has a normal p-complement.
    pub fn v_subgroup(&self, n: &[usize], p: u64) -> Result<(Subgroup, bool), GroupError> {
        if !self.is_subgroup(n) {
            return Err(GroupError::NotSubgroup);
        }
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let q = self.sylow(n, p);
        let c = self.centralizer(&q);
        let mut member = vec![false; self.elements.len()];
        for &x in n {
            for &y in &c {
                member[self.mul(x, y)] = true;
            }
        }
        let v: Subgroup = (0..self.elements.len()).filter(|&i| member[i]).collect();
        let quotient = CosetGroup::new(self, &v, n);
        Ok((v, quotient.has_normal_p_complement(p)))
    }

    pub fn conjugacy_data(&self) -> &ConjugacyData {
        self.classes.get_or_init(|| ConjugacyData::compute(self))
    }

    /// a_{ijk} = #{(x, y) ∈ K_i × K_j : xy = z} for the stored representative z of K_k.
    pub fn class_mult_coeff(&self, i: usize, j: usize, k: usize) -> u64 {
        let z = self.conjugacy_data().reps[k];
        self.class_mult_coeff_at(i, j, z)
    }

    /// a_{ijk} counted against an arbitrary element z (whose class is k).
    pub fn class_mult_coeff_at(&self, i: usize, j: usize, z: usize) -> u64 {
        let data = self.conjugacy_data();
        data.classes[i]
            .iter()
            .filter(|&&x| data.class_of[self.mul(self.inv(x), z)] == j)
            .count() as u64
    }

    /// Character table by Dixon–Schneider.
    pub fn character_table(&self, name: &str) -> Result<CharacterTable, GroupError> {
        dixon::dixon_table(self, name)
    }

    /// G-class of each class representative of a subgroup enumerated on its own.
    pub fn fusion_classes(&self, h: &PermGroup) -> Vec<usize> {
        h.conjugacy_data()
            .reps
            .iter()
            .map(|&r| self.conjugacy_data().class_of[self.index[h.element(r)] as usize])
            .collect()
    }

    /// The table of a subgroup (element indices of G) and its fusion into `table`, which
    /// must be the table computed from this group.
    pub fn subgroup_fusion(
        &self,
        sub: &[usize],
        sub_name: &str,
        table: &CharacterTable,
    ) -> Result<(CharacterTable, FusionMap), GroupError> {
        let h = self.subgroup_group(sub)?;
        let sub_table = h.character_table(sub_name)?;
        let fusion = FusionMap::new(&sub_table, table, self.fusion_classes(&h))?;
        Ok((sub_table, fusion))
    }
}

/// Whether the p′-elements `pprime` of a group of order `n` (identity at index 0) are
/// closed under multiplication.
pub(crate) fn p_prime_closed(
    pprime: &[usize],
    mul: impl Fn(usize, usize) -> usize,
    n: usize,
    p: u64,
) -> bool {
    let n64 = n as u64;
    if pprime.len() as u64 != n64 / p_part(n64, p) {
        return false;
    }
    let mut in_set = vec![false; n];
    for &x in pprime {
        in_set[x] = true;
    }
    // grow ⟨gens⟩ one generator at a time, bailing out once it leaves the set
    let mut member = vec![false; n];
    member[0] = true;
    let mut sub = vec![0];
    let mut gens: Vec<usize> = Vec::new();
    for &x in pprime {
        if member[x] {
            continue;
        }
        gens.push(x);
        let mut head = 0;
        while head < sub.len() {
            let a = sub[head];
            head += 1;
            for &g in &gens {
                let b = mul(a, g);
                if !member[b] {
                    if !in_set[b] {
                        return false;
                    }
                    member[b] = true;
                    sub.push(b);
                }
            }
        }
    }
    true
}
