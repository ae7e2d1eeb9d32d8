//! p-blocks of a character table: central characters, the block partition with defects
//! and heights, the principal block, O_{p′}(G) from kernels, defect classes and the
//! restriction check for subgroups.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{lcm, p_part, valuation};
use crate::cyclo::{CycloError, Cyclotomic, PrimeReduction};
use crate::tables::{CharacterTable, FusionMap, TableError};

#[derive(Debug, Error)]
pub enum BlockError {
    #[error("central character of row {row} is not integral at class {class}")]
    IntegralityFailure { row: usize, class: usize },
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("kernel intersection is not a subgroup: {0}")]
    KernelNotSubgroup(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockMember {
    pub row: usize,
    pub degree: u64,
    pub height: u32,
    /// p′-part of χ(1)
    pub m: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub members: Vec<BlockMember>,
    pub defect: u32,
}

impl Block {
    pub fn rows(&self) -> Vec<usize> {
        self.members.iter().map(|m| m.row).collect()
    }

    pub fn contains(&self, row: usize) -> bool {
        self.members.iter().any(|m| m.row == row)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, row: usize) -> Option<&BlockMember> {
        self.members.iter().find(|m| m.row == row)
    }

    pub fn height_zero(&self) -> impl Iterator<Item = &BlockMember> {
        self.members.iter().filter(|m| m.height == 0)
    }
}

/// Blocks ordered by their least row; `block_of[row]` indexes into `blocks`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockPartition {
    pub p: u64,
    /// v_p(|G|)
    pub a: u32,
    pub blocks: Vec<Block>,
    pub principal: usize,
    pub block_of: Vec<usize>,
}

impl BlockPartition {
    pub fn principal_block(&self) -> &Block {
        &self.blocks[self.principal]
    }

    pub fn block_of_row(&self, row: usize) -> &Block {
        &self.blocks[self.block_of[row]]
    }
}

/// ω_χ(K) = |K| χ(x_K) / χ(1) for every class K.
pub fn central_character(table: &CharacterTable, row: usize) -> Result<Vec<Cyclotomic>, BlockError> {
    let d = table.degree(row);
    table
        .row(row)
        .iter()
        .zip(table.classes())
        .enumerate()
        .map(|(k, (v, c))| {
            let w = v.scale(&BigRational::new(BigInt::from(c.size), BigInt::from(d)));
            if w.is_algebraic_integer() {
                Ok(w)
            } else {
                Err(BlockError::IntegralityFailure { row, class: k })
            }
        })
        .collect()
}

fn reduction_for(table: &CharacterTable, p: u64) -> PrimeReduction {
    let n = lcm(table.exponent(), table.value_modulus() as u64);
    PrimeReduction::new(n as u32, p)
}

pub fn block_partition(table: &CharacterTable, p: u64) -> Result<BlockPartition, BlockError> {
    partition_twisted(table, p, 1)
}

/// The partition obtained after applying σ_k to every central character before reduction,
/// which amounts to reducing along a different prime over p.
pub(crate) fn partition_twisted(
    table: &CharacterTable,
    p: u64,
    k: i64,
) -> Result<BlockPartition, BlockError> {
    let order = table.order();
    let a = valuation(order, p);
    let rows = table.irr().len();
    let mut block_of = vec![usize::MAX; rows];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    if a == 0 {
        for (r, slot) in block_of.iter_mut().enumerate() {
            *slot = r;
            groups.push(vec![r]);
        }
    } else {
        let red = reduction_for(table, p);
        let regular = table.p_regular_classes(p);
        let mut keys: Vec<Vec<Vec<u64>>> = Vec::new();
        for r in 0..rows {
            let omega = central_character(table, r)?;
            let key = regular
                .iter()
                .map(|&c| {
                    let w = if k == 1 { omega[c].clone() } else { omega[c].galois(k)? };
                    Ok(red.reduce(&w)?.coords().to_vec())
                })
                .collect::<Result<Vec<_>, BlockError>>()?;
            match keys.iter().position(|kk| *kk == key) {
                Some(b) => {
                    groups[b].push(r);
                    block_of[r] = b;
                }
                None => {
                    block_of[r] = groups.len();
                    groups.push(vec![r]);
                    keys.push(key);
                }
            }
        }
    }
    let blocks: Vec<Block> = groups
        .iter()
        .map(|rows| {
            let defect = rows
                .iter()
                .map(|&r| a - valuation(table.degree(r), p))
                .max()
                .expect("blocks are nonempty");
            let members = rows
                .iter()
                .map(|&r| {
                    let degree = table.degree(r);
                    let dchi = a - valuation(degree, p);
                    BlockMember {
                        row: r,
                        degree,
                        height: defect - dchi,
                        m: degree / p_part(degree, p),
                    }
                })
                .collect();
            Block { members, defect }
        })
        .collect();
    let principal = block_of[table.trivial_row()];
    Ok(BlockPartition {
        p,
        a,
        blocks,
        principal,
        block_of,
    })
}

/// e = Σ_{χ∈B} χ(1)² = p^{2a−d} f with p ∤ f; returns (d, f).
pub fn block_sum_invariant(block: &Block, p: u64, a: u32) -> Result<(u32, u64), BlockError> {
    let e: u128 = block
        .members
        .iter()
        .map(|m| (m.degree as u128) * (m.degree as u128))
        .sum();
    let expected = 2 * a - block.defect;
    let mut v = 0;
    let mut f = e;
    while f.is_multiple_of(p as u128) {
        f /= p as u128;
        v += 1;
    }
    if v != expected {
        return Err(BlockError::InvariantViolation(format!(
            "v_{p}(Σχ(1)²) = {v}, expected 2a − d = {expected}"
        )));
    }
    Ok((block.defect, f as u64))
}

pub fn principal_block(table: &CharacterTable, p: u64) -> Result<Block, BlockError> {
    let bp = block_partition(table, p)?;
    Ok(bp.blocks[bp.principal].clone())
}

/// Classes of O_{p′}(G), the intersection of the kernels of the principal block.
pub fn o_pprime_classes(table: &CharacterTable, p: u64) -> Result<Vec<usize>, BlockError> {
    let b0 = principal_block(table, p)?;
    let mut inside = vec![true; table.num_classes()];
    for r in b0.rows() {
        let ker = table.kernel(r);
        for (k, flag) in inside.iter_mut().enumerate() {
            if !ker.classes.contains(&k) {
                *flag = false;
            }
        }
    }
    let classes: Vec<usize> = (0..table.num_classes()).filter(|&k| inside[k]).collect();
    for &k in &classes {
        for (&q, &img) in &table.classes()[k].power_maps {
            if !inside[img] {
                return Err(BlockError::KernelNotSubgroup(format!(
                    "the {q}-power of class {k} leaves the intersection"
                )));
            }
        }
    }
    Ok(classes)
}

pub fn o_pprime_order(table: &CharacterTable, p: u64) -> Result<u64, BlockError> {
    let classes = o_pprime_classes(table, p)?;
    let order: u64 = classes.iter().map(|&k| table.classes()[k].size).sum();
    if !table.order().is_multiple_of(order) {
        return Err(BlockError::KernelNotSubgroup(format!(
            "order {order} does not divide {}",
            table.order()
        )));
    }
    if order.is_multiple_of(p) {
        return Err(BlockError::KernelNotSubgroup(format!(
            "order {order} is divisible by {p}"
        )));
    }
    Ok(order)
}

/// Table-side normal p-complement test: |O_{p′}(G)| = |G|_{p′}.
pub fn has_normal_p_complement(table: &CharacterTable, p: u64) -> Result<bool, BlockError> {
    let order = table.order();
    Ok(o_pprime_order(table, p)? == order / p_part(order, p))
}

/// p-regular classes K with ω_χ(K) ≢ 0 (mod p) whose centralizer has p-part p^{d(B)},
/// B the block of χ.
pub fn defect_classes(table: &CharacterTable, row: usize, p: u64) -> Result<Vec<usize>, BlockError> {
    let bp = block_partition(table, p)?;
    defect_classes_in(table, &bp, row)
}

pub(crate) fn defect_classes_in(
    table: &CharacterTable,
    bp: &BlockPartition,
    row: usize,
) -> Result<Vec<usize>, BlockError> {
    let p = bp.p;
    let d = bp.block_of_row(row).defect;
    let omega = central_character(table, row)?;
    let red = reduction_for(table, p);
    let mut out = Vec::new();
    for k in table.p_regular_classes(p) {
        if valuation(table.centralizer_order(k), p) != d {
            continue;
        }
        if !red.reduce(&omega[k])?.is_zero() {
            out.push(k);
        }
    }
    if out.is_empty() {
        return Err(BlockError::InvariantViolation(format!(
            "row {row} has no defect class"
        )));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RestrictionOutcome {
    /// χ_H is reducible; nothing is asserted.
    Reducible,
    /// χ_H is the irreducible `sub_row` of H; `in_principal` tells whether it lies in B_0(H).
    Irreducible { sub_row: usize, in_principal: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub row: usize,
    pub index: u64,
    pub coprime_index: bool,
    pub outcome: RestrictionOutcome,
}

/// Restriction of a principal-block character to a subgroup. When |G : H| is prime to p an
/// irreducible restriction outside B_0(H) is an invariant violation.
pub fn restriction_block_check(
    table_g: &CharacterTable,
    table_h: &CharacterTable,
    fusion: &FusionMap,
    p: u64,
    row: usize,
) -> Result<RestrictionReport, BlockError> {
    fusion.validate(table_h, table_g)?;
    let bg = block_partition(table_g, p)?;
    let bh = block_partition(table_h, p)?;
    restriction_in_blocks(table_g, &bg, table_h, &bh, fusion, row)
}

/// As [`restriction_block_check`], with both block partitions already computed and the
/// fusion map assumed valid.
pub fn restriction_in_blocks(
    table_g: &CharacterTable,
    bg: &BlockPartition,
    table_h: &CharacterTable,
    bh: &BlockPartition,
    fusion: &FusionMap,
    row: usize,
) -> Result<RestrictionReport, BlockError> {
    if !bg.principal_block().contains(row) {
        return Err(BlockError::InvariantViolation(format!(
            "row {row} is not in the principal block"
        )));
    }
    let index = table_g.order() / table_h.order();
    let coprime_index = !index.is_multiple_of(bg.p);
    let restricted = table_g.restrict(row, fusion);
    let outcome = match table_h.irr().iter().position(|psi| *psi == restricted) {
        None => RestrictionOutcome::Reducible,
        Some(sub_row) => {
            let in_principal = bh.principal_block().contains(sub_row);
            if coprime_index && !in_principal {
                return Err(BlockError::InvariantViolation(format!(
                    "row {row} restricts irreducibly to a p′-index subgroup outside its principal block"
                )));
            }
            RestrictionOutcome::Irreducible {
                sub_row,
                in_principal,
            }
        }
    };
    Ok(RestrictionReport {
        row,
        index,
        coprime_index,
        outcome,
    })
}

#[cfg(test)]
mod tests;
