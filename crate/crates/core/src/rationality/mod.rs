//! Fields of character values: conductors, the rationality flags relative to a prime p,
//! and the action of A = Gal(Q_{|G|}/Q_{pm}) on the rows of a table.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{lcm, p_part};
use crate::blocks::{block_sum_invariant, Block, BlockError};
use crate::tables::{CharacterTable, TableError};

#[derive(Debug, Error)]
pub enum RationalityError {
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalityProfile {
    pub row: usize,
    pub conductor: u64,
    pub rational: bool,
    pub qp_valued: bool,
    pub p_rational: bool,
    pub almost_p_rational: bool,
}

/// c(χ): the least n (never ≡ 2 mod 4) with every value of χ in Q(ζ_n).
pub fn character_conductor(table: &CharacterTable, row: usize) -> u64 {
    table
        .row(row)
        .iter()
        .fold(1, |c, v| lcm(c, v.conductor()))
}

pub fn classify(table: &CharacterTable, row: usize, p: u64) -> RationalityProfile {
    let c = character_conductor(table, row);
    RationalityProfile {
        row,
        conductor: c,
        rational: c == 1,
        qp_valued: c == 1 || c == p,
        p_rational: !c.is_multiple_of(p),
        almost_p_rational: !c.is_multiple_of(p * p),
    }
}

/// A as residues k mod |G| with k ≡ 1 (mod pm), m = |G|_{p′}, and its orbits on rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AOrbits {
    pub p: u64,
    pub elements: Vec<u64>,
    pub orbits: Vec<Vec<usize>>,
    pub orbit_of: Vec<usize>,
}

impl AOrbits {
    pub fn is_fixed(&self, row: usize) -> bool {
        self.orbits[self.orbit_of[row]].len() == 1
    }
}

pub fn a_group(order: u64, p: u64) -> Vec<u64> {
    let m = order / p_part(order, p);
    let step = p * m;
    let mut ks: Vec<u64> = (0..order).map(|j| (1 + j * step) % order).collect();
    ks.sort_unstable();
    ks.dedup();
    if order == 1 {
        ks = vec![1];
    }
    ks
}

pub fn a_group_orbits(table: &CharacterTable, p: u64) -> Result<AOrbits, RationalityError> {
    let elements = a_group(table.order(), p);
    let rows = table.irr().len();
    let mut parent: Vec<usize> = (0..rows).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for &k in &elements {
        if k == 1 {
            continue;
        }
        let perm = table.galois_permutation(k as i64)?;
        for (i, &j) in perm.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbit_of = vec![usize::MAX; rows];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for r in 0..rows {
        let root = find(&mut parent, r);
        if orbit_of[root] == usize::MAX {
            orbit_of[root] = orbits.len();
            orbits.push(Vec::new());
        }
        orbit_of[r] = orbit_of[root];
        orbits[orbit_of[r]].push(r);
    }
    for o in &orbits {
        if p_part(o.len() as u64, p) != o.len() as u64 {
            return Err(RationalityError::InvariantViolation(format!(
                "A-orbit of size {} is not a power of {p}",
                o.len()
            )));
        }
    }
    Ok(AOrbits {
        p,
        elements,
        orbits,
        orbit_of,
    })
}

/// Asserts that a row is A-fixed exactly when it is almost p-rational.
pub fn check_a_invariance(table: &CharacterTable, p: u64) -> Result<AOrbits, RationalityError> {
    let orbits = a_group_orbits(table, p)?;
    for row in 0..table.irr().len() {
        let profile = classify(table, row, p);
        if orbits.is_fixed(row) != profile.almost_p_rational {
            return Err(RationalityError::InvariantViolation(format!(
                "row {row}: A-fixed = {}, conductor {}",
                orbits.is_fixed(row),
                profile.conductor
            )));
        }
        if !table.exponent().is_multiple_of(profile.conductor) {
            return Err(RationalityError::InvariantViolation(format!(
                "row {row}: conductor {} does not divide the exponent",
                profile.conductor
            )));
        }
    }
    Ok(orbits)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub defect: u32,
    pub f: u64,
    /// A-fixed height-zero members of the block
    pub fixed_height_zero: Vec<usize>,
    pub lhs_mod_p: u64,
    pub rhs_mod_p: u64,
}

/// p^d f ≡ Σ m_χ² (mod p) over the A-fixed height-zero characters of the block.
pub fn invariant_height_zero_congruence(
    block: &Block,
    p: u64,
    a: u32,
    orbits: &AOrbits,
) -> Result<CongruenceReport, RationalityError> {
    let (d, f) = block_sum_invariant(block, p, a)?;
    let fixed: Vec<&crate::blocks::BlockMember> = block
        .height_zero()
        .filter(|m| orbits.is_fixed(m.row))
        .collect();
    let lhs = if d == 0 { f % p } else { 0 };
    let rhs = fixed.iter().fold(0, |acc, m| (acc + (m.m % p) * (m.m % p)) % p);
    if lhs != rhs {
        return Err(RationalityError::InvariantViolation(format!(
            "p^d f ≡ {lhs} but Σ m² ≡ {rhs} (mod {p})"
        )));
    }
    Ok(CongruenceReport {
        defect: d,
        f,
        fixed_height_zero: fixed.iter().map(|m| m.row).collect(),
        lhs_mod_p: lhs,
        rhs_mod_p: rhs,
    })
}
