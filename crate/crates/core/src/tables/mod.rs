//! Character tables: data model, interchange format, validation, inner products, kernels,
//! restriction along class fusions and the Galois action on rows.

mod fusion;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, lcm, valuation};
use crate::cyclo::{Cyclotomic, ProductSum};

pub use fusion::FusionMap;

/// A class function: one value per conjugacy class, in class order.
pub type ClassFunction = Vec<Cyclotomic>;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{kind} orthogonality fails for ({i}, {j}): got {value}")]
    Orthogonality {
        kind: &'static str,
        i: usize,
        j: usize,
        value: String,
    },
    #[error("power map error: {0}")]
    PowerMap(String),
    #[error("Galois closure error: {0}")]
    GaloisClosure(String),
    #[error("fusion error: {0}")]
    Fusion(String),
}

/// Per-class data: class size, order of representatives and r-th power maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub size: u64,
    #[serde(rename = "order")]
    pub rep_order: u64,
    /// prime r ↦ index of the class of x^r
    #[serde(rename = "powermaps", default)]
    pub power_maps: BTreeMap<u64, usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TableDocument {
    name: String,
    order: u64,
    classes: Vec<ClassInfo>,
    irr: Vec<Vec<Cyclotomic>>,
}

/// A validated character table. Rows are irreducible characters, columns conjugacy classes;
/// class 0 is the identity.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    name: String,
    order: u64,
    classes: Vec<ClassInfo>,
    irr: Vec<ClassFunction>,
}

/// A row of a table, viewed as a character.
#[derive(Clone, Copy, Debug)]
pub struct Character<'a> {
    table: &'a CharacterTable,
    row: usize,
}

impl<'a> Character<'a> {
    pub fn row(&self) -> usize {
        self.row
    }

    pub fn degree(&self) -> u64 {
        self.table.degree(self.row)
    }

    pub fn values(&self) -> &'a [Cyclotomic] {
        &self.table.irr[self.row]
    }

    pub fn is_linear(&self) -> bool {
        self.degree() == 1
    }
}

/// Classes on which a character takes its degree, and the order of the normal subgroup
/// they form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub classes: Vec<usize>,
    pub order: u64,
}

impl CharacterTable {
    /// Builds a table and runs the full validation.
    pub fn new(
        name: impl Into<String>,
        order: u64,
        classes: Vec<ClassInfo>,
        irr: Vec<ClassFunction>,
    ) -> Result<Self, TableError> {
        let table = CharacterTable {
            name: name.into(),
            order,
            classes,
            irr,
        };
        validate::validate(&table)?;
        Ok(table)
    }

    /// Parses and validates an interchange document.
    pub fn from_json(text: &str) -> Result<Self, TableError> {
        let doc: TableDocument =
            serde_json::from_str(text).map_err(|e| TableError::Schema(e.to_string()))?;
        Self::new(doc.name, doc.order, doc.classes, doc.irr)
    }

    pub fn to_json(&self) -> String {
        let doc = TableDocument {
            name: self.name.clone(),
            order: self.order,
            classes: self.classes.clone(),
            irr: self.irr.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("tables always serialize")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn irr(&self) -> &[ClassFunction] {
        &self.irr
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.irr[i]
    }

    pub fn character(&self, row: usize) -> Character<'_> {
        Character { table: self, row }
    }

    pub fn characters(&self) -> impl Iterator<Item = Character<'_>> {
        (0..self.irr.len()).map(move |row| Character { table: self, row })
    }

    pub fn degree(&self, row: usize) -> u64 {
        self.irr[row][0]
            .to_i64()
            .and_then(|d| u64::try_from(d).ok())
            .expect("validated degrees are positive integers")
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.irr.len()).map(|i| self.degree(i)).collect()
    }

    /// Index of the trivial character.
    pub fn trivial_row(&self) -> usize {
        self.irr
            .iter()
            .position(|row| row.iter().all(|v| v.to_i64() == Some(1)))
            .expect("validated tables contain the trivial character")
    }

    /// Exponent of the group: lcm of representative orders.
    pub fn exponent(&self) -> u64 {
        self.classes.iter().fold(1, |e, c| lcm(e, c.rep_order))
    }

    pub fn centralizer_order(&self, class: usize) -> u64 {
        self.order / self.classes[class].size
    }

    pub fn is_p_regular(&self, class: usize, p: u64) -> bool {
        !self.classes[class].rep_order.is_multiple_of(p)
    }

    pub fn p_regular_classes(&self, p: u64) -> Vec<usize> {
        (0..self.num_classes())
            .filter(|&k| self.is_p_regular(k, p))
            .collect()
    }

    /// a with |G|_p = p^a.
    pub fn p_exponent(&self, p: u64) -> u32 {
        valuation(self.order, p)
    }

    /// Least common multiple of the moduli of all stored values.
    pub(crate) fn value_modulus(&self) -> u32 {
        self.irr
            .iter()
            .flatten()
            .fold(1u64, |m, v| lcm(m, v.modulus() as u64)) as u32
    }

    /// ⟨α, β⟩ = (1/|G|) Σ_K |K| α(x_K) conj(β(x_K)).
    pub fn inner_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        assert_eq!(a.len(), self.num_classes());
        assert_eq!(b.len(), self.num_classes());
        let n = a
            .iter()
            .chain(b.iter())
            .fold(1u64, |m, v| lcm(m, v.modulus() as u64)) as u32;
        let mut acc = ProductSum::new(n);
        for (k, class) in self.classes.iter().enumerate() {
            acc.add_product(class.size as i64, &a[k], &b[k], true);
        }
        acc.finish()
            .scale(&BigRational::new(BigInt::from(1), BigInt::from(self.order)))
    }

    /// ⟨f, f⟩ as a rational number (always rational for class functions of characters).
    pub fn norm(&self, f: &[Cyclotomic]) -> Option<BigRational> {
        self.inner_product(f, f).to_rational()
    }

    /// Multiplicities ⟨f, χ⟩ of each irreducible in a class function.
    pub fn decompose(&self, f: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.irr.iter().map(|chi| self.inner_product(f, chi)).collect()
    }

    /// True when `f` is an irreducible character of this table.
    pub fn is_irreducible_character(&self, f: &[Cyclotomic]) -> bool {
        self.irr.iter().any(|chi| chi.as_slice() == f)
    }

    pub fn kernel(&self, row: usize) -> Kernel {
        let chi = &self.irr[row];
        let classes: Vec<usize> = (0..self.num_classes())
            .filter(|&k| chi[k] == chi[0])
            .collect();
        let order = classes.iter().map(|&k| self.classes[k].size).sum();
        Kernel { classes, order }
    }

    /// χ_H along a fusion H → G.
    pub fn restrict(&self, row: usize, fusion: &FusionMap) -> ClassFunction {
        fusion
            .map()
            .iter()
            .map(|&g_class| self.irr[row][g_class].clone())
            .collect()
    }

    /// Row permutation induced by σ_k entrywise: `perm[i] = j` when σ_k(χ_i) = χ_j.
    pub fn galois_permutation(&self, k: i64) -> Result<Vec<usize>, TableError> {
        if gcd(k.rem_euclid(self.order as i64) as u64, self.order) != 1 {
            return Err(TableError::GaloisClosure(format!(
                "{k} is not coprime to the group order {}",
                self.order
            )));
        }
        let n = self.value_modulus();
        let k_adj = coprime_representative(k, self.order, n as u64);
        let mut perm = Vec::with_capacity(self.irr.len());
        let mut hit = vec![false; self.irr.len()];
        for (i, chi) in self.irr.iter().enumerate() {
            let image: ClassFunction = chi
                .iter()
                .map(|v| v.galois(k_adj).expect("representative is coprime"))
                .collect();
            let j = self
                .irr
                .iter()
                .position(|psi| *psi == image)
                .ok_or_else(|| {
                    TableError::GaloisClosure(format!(
                        "σ_{k} applied to row {i} is not a row of {}",
                        self.name
                    ))
                })?;
            if hit[j] {
                return Err(TableError::GaloisClosure(format!(
                    "σ_{k} maps two rows onto row {j}"
                )));
            }
            hit[j] = true;
            perm.push(j);
        }
        Ok(perm)
    }
}

impl CharacterTable {
    /// True when the two tables agree up to a simultaneous permutation of rows and a
    /// permutation of columns preserving class sizes and element orders.
    pub fn is_equivalent(&self, other: &CharacterTable) -> bool {
        let r = self.num_classes();
        if self.order != other.order || r != other.num_classes() {
            return false;
        }
        let n = lcm(self.value_modulus() as u64, other.value_modulus() as u64) as u32;
        let keys = |t: &CharacterTable| -> Vec<Vec<Vec<BigRational>>> {
            t.irr
                .iter()
                .map(|row| row.iter().map(|v| v.lift(n).coeffs().to_vec()).collect())
                .collect()
        };
        let a = keys(self);
        let b = keys(other);
        let mut mapping = Vec::with_capacity(r);
        let mut used = vec![false; r];
        self.match_columns(other, &a, &b, &mut mapping, &mut used)
    }

    fn match_columns(
        &self,
        other: &CharacterTable,
        a: &[Vec<Vec<BigRational>>],
        b: &[Vec<Vec<BigRational>>],
        mapping: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let c = mapping.len();
        if c == self.num_classes() {
            return true;
        }
        let want = (self.classes[c].size, self.classes[c].rep_order);
        for d in 0..other.num_classes() {
            if used[d] || (other.classes[d].size, other.classes[d].rep_order) != want {
                continue;
            }
            mapping.push(d);
            used[d] = true;
            let ok = sorted_prefix(a, &(0..=c).collect::<Vec<_>>()) == sorted_prefix(b, mapping)
                && self.match_columns(other, a, b, mapping, used);
            if ok {
                return true;
            }
            mapping.pop();
            used[d] = false;
        }
        false
    }
}

/// Rows restricted to the given columns, sorted.
fn sorted_prefix<'a>(t: &'a [Vec<Vec<BigRational>>], cols: &[usize]) -> Vec<Vec<&'a [BigRational]>> {
    let mut rows: Vec<Vec<&[BigRational]>> = t
        .iter()
        .map(|row| cols.iter().map(|&k| row[k].as_slice()).collect())
        .collect();
    rows.sort();
    rows
}

/// A k' ≡ k (mod `order`) coprime to `modulus`; the Galois action of σ_k on values of a
/// group of that order depends only on k mod the exponent, which divides `order`.
pub(crate) fn coprime_representative(k: i64, order: u64, modulus: u64) -> i64 {
    let base = k.rem_euclid(order as i64);
    let mut candidate = base;
    let step = order as i64;
    while gcd(candidate as u64, modulus.max(1)) != 1 && modulus > 1 {
        candidate += step;
    }
    if candidate == 0 {
        1
    } else {
        candidate
    }
}

impl fmt::Display for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (order {})", self.name, self.order)?;
        let header: Vec<String> = self
            .classes
            .iter()
            .map(|c| format!("{}^{}", c.rep_order, c.size))
            .collect();
        writeln!(f, "classes (order^size): {}", header.join(" "))?;
        for (i, row) in self.irr.iter().enumerate() {
            let vals: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "X.{}: {}", i + 1, vals.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
