//! Integer partitions: hook lengths and degrees of S_n characters, p-cores, conjugates,
//! p-adic valuations of binomials, and the choice of a p′-degree principal-block
//! character of S_n restricting irreducibly to A_n.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::is_prime;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    Invalid(Vec<u32>),
    #[error("no construction for n = {n}, p = {p}")]
    UnsupportedCase { n: u32, p: u64 },
    #[error("certificate check failed: {0}")]
    InvariantViolation(String),
}

/// A partition with weakly decreasing positive parts; the empty partition is allowed so
/// that cores can be represented.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::Invalid(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The hook (n − k, 1^k).
    pub fn hook(n: u32, k: u32) -> Self {
        assert!(k < n);
        let mut parts = vec![n - k];
        parts.extend(std::iter::repeat_n(1, k as usize));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&l| l > j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Hook length of cell (i, j), 0-based.
    pub fn hook_length(&self, i: usize, j: usize) -> u32 {
        let arm = self.parts[i] - j as u32 - 1;
        let leg = self.parts[i + 1..]
            .iter()
            .take_while(|&&l| l as usize > j)
            .count() as u32;
        arm + leg + 1
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &l)| (0..l as usize).map(move |j| (i, j)))
    }

    /// Cells whose hook has length exactly `len`.
    pub fn cells_with_hook(&self, len: u32) -> Vec<(usize, usize)> {
        self.cells().filter(|&(i, j)| self.hook_length(i, j) == len).collect()
    }

    /// Removes the rim hook attached to cell (i, j).
    pub fn remove_rim_hook(&self, i: usize, j: usize) -> Partition {
        let leg = self.parts[i + 1..]
            .iter()
            .take_while(|&&l| l as usize > j)
            .count();
        let mut parts = self.parts.clone();
        for k in i..i + leg {
            parts[k] = self.parts[k + 1] - 1;
        }
        parts[i + leg] = j as u32;
        parts.retain(|&l| l > 0);
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

/// χ^λ(1) = n! / ∏ hook lengths.
pub fn hook_degree(lambda: &Partition) -> BigUint {
    let mut num = BigUint::one();
    for k in 2..=lambda.n() {
        num *= k;
    }
    let mut den = BigUint::one();
    for (i, j) in lambda.cells() {
        den *= lambda.hook_length(i, j);
    }
    debug_assert!((&num % &den) == BigUint::from(0u32));
    num / den
}

/// Strips rim p-hooks until none is left, always taking the first cell in row order.
pub fn p_core(lambda: &Partition, p: u32) -> Partition {
    let mut cur = lambda.clone();
    while let Some(&(i, j)) = cur.cells_with_hook(p).first() {
        cur = cur.remove_rim_hook(i, j);
    }
    cur
}

pub fn self_associate(lambda: &Partition) -> bool {
    *lambda == lambda.conjugate()
}

/// v_p(C(n, k)): the number of carries when adding k and n − k in base p.
pub fn vp_binomial(n: u64, k: u64, p: u64) -> u32 {
    assert!(k <= n);
    let (mut a, mut b) = (k, n - k);
    let mut carry = 0;
    let mut count = 0;
    while a > 0 || b > 0 || carry > 0 {
        let s = a % p + b % p + carry;
        carry = u64::from(s >= p);
        count += carry as u32;
        a /= p;
        b /= p;
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prop37Case {
    PDividesN,
    NCongruentOne,
    Hook { s: u32 },
    NSix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub n: u32,
    pub p: u64,
    pub case: Prop37Case,
    pub lambda: Partition,
    #[serde(serialize_with = "as_string")]
    pub degree: BigUint,
    pub degree_above_one: bool,
    pub degree_prime_to_p: bool,
    pub core_matches_trivial: bool,
    pub not_self_associate: bool,
    /// membership of χ^λ in the principal block follows from the core condition; recorded,
    /// not recomputed
    pub principal_block: &'static str,
}

fn as_string<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl Certificate {
    pub fn passes(&self) -> bool {
        self.degree_above_one
            && self.degree_prime_to_p
            && self.core_matches_trivial
            && self.not_self_associate
    }
}

/// Chooses λ ⊢ n of p′-degree > 1, with the p-core of (n) and not self-associate, and
/// recomputes each of those properties.
pub fn prop37_construct(n: u32, p: u64) -> Result<Certificate, PartitionError> {
    if p == 2 || !is_prime(p) || n < 5 || p > n as u64 {
        return Err(PartitionError::UnsupportedCase { n, p });
    }
    let nn = n as u64;
    let (case, lambda) = if n == 6 {
        match p {
            3 => (Prop37Case::NSix, Partition::new(vec![5, 1]).unwrap()),
            5 => (Prop37Case::NSix, Partition::new(vec![4, 2]).unwrap()),
            _ => return Err(PartitionError::UnsupportedCase { n, p }),
        }
    } else if nn.is_multiple_of(p) {
        (Prop37Case::PDividesN, Partition::new(vec![n - 1, 1]).unwrap())
    } else if nn % p == 1 {
        (Prop37Case::NCongruentOne, Partition::new(vec![n - 2, 2]).unwrap())
    } else {
        // n = r + n_s p^s + …, with n_s the first nonzero digit above the units
        let mut rest = (nn - nn % p) / p;
        let mut s = 1;
        while rest.is_multiple_of(p) {
            rest /= p;
            s += 1;
        }
        let ps = p.pow(s) as u32;
        (Prop37Case::Hook { s }, Partition::hook(n, ps))
    };
    let degree = hook_degree(&lambda);
    let pb = BigUint::from(p);
    let cert = Certificate {
        n,
        p,
        case,
        degree_above_one: degree > BigUint::one(),
        degree_prime_to_p: (&degree % &pb) != BigUint::from(0u32),
        core_matches_trivial: p_core(&lambda, p as u32) == p_core(&Partition::new(vec![n]).unwrap(), p as u32),
        not_self_associate: !self_associate(&lambda),
        lambda,
        degree,
        principal_block: "follows from the p-core condition",
    };
    if !cert.passes() {
        return Err(PartitionError::InvariantViolation(format!(
            "n = {n}, p = {p}, λ = {}",
            cert.lambda
        )));
    }
    Ok(cert)
}

/// All partitions of n in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}
