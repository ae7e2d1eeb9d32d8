use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{coprime_representative, CharacterTable, ClassFunction, TableError};
use crate::arith::{gcd, is_prime, prime_divisors, unit_group_generators};
use crate::cyclo::{Cyclotomic, ProductSum};

pub(super) fn validate(t: &CharacterTable) -> Result<(), TableError> {
    check_shape(t)?;
    check_degrees(t)?;
    check_power_maps(t)?;
    check_row_orthogonality(t)?;
    check_column_orthogonality(t)?;
    check_galois_closure(t)?;
    Ok(())
}

fn schema(msg: impl Into<String>) -> TableError {
    TableError::Schema(msg.into())
}

fn check_shape(t: &CharacterTable) -> Result<(), TableError> {
    if t.order == 0 {
        return Err(schema("group order must be positive"));
    }
    let r = t.classes.len();
    if r == 0 {
        return Err(schema("no classes"));
    }
    let id = &t.classes[0];
    if id.size != 1 || id.rep_order != 1 {
        return Err(schema("class 0 must be the identity (size 1, order 1)"));
    }
    for (k, c) in t.classes.iter().enumerate() {
        if c.size == 0 || c.rep_order == 0 {
            return Err(schema(format!("class {k} has zero size or order")));
        }
        if !t.order.is_multiple_of(c.size) {
            return Err(schema(format!(
                "class {k} size {} does not divide the group order {}",
                c.size, t.order
            )));
        }
        if !t.order.is_multiple_of(c.rep_order) {
            return Err(schema(format!(
                "class {k} representative order {} does not divide the group order {}",
                c.rep_order, t.order
            )));
        }
        if k > 0 && c.rep_order == 1 {
            return Err(schema(format!("class {k} is a second identity class")));
        }
    }
    let total: u64 = t.classes.iter().map(|c| c.size).sum();
    if total != t.order {
        return Err(schema(format!(
            "class sizes sum to {total}, group order is {}",
            t.order
        )));
    }
    if t.irr.len() != r {
        return Err(schema(format!(
            "{} characters for {r} classes; the table must be square",
            t.irr.len()
        )));
    }
    for (i, row) in t.irr.iter().enumerate() {
        if row.len() != r {
            return Err(schema(format!("row {i} has {} entries, expected {r}", row.len())));
        }
    }
    Ok(())
}

fn check_degrees(t: &CharacterTable) -> Result<(), TableError> {
    let mut sum_sq: u128 = 0;
    for (i, row) in t.irr.iter().enumerate() {
        let d = row[0]
            .to_i64()
            .filter(|&d| d > 0)
            .ok_or_else(|| schema(format!("row {i} degree {} is not a positive integer", row[0])))?
            as u64;
        if !t.order.is_multiple_of(d) {
            return Err(schema(format!("degree {d} of row {i} does not divide {}", t.order)));
        }
        sum_sq += (d as u128) * (d as u128);
    }
    if sum_sq != t.order as u128 {
        return Err(schema(format!(
            "sum of squared degrees is {sum_sq}, group order is {}",
            t.order
        )));
    }
    if !t
        .irr
        .iter()
        .any(|row| row.iter().all(|v| v.to_i64() == Some(1)))
    {
        return Err(schema("no trivial character"));
    }
    Ok(())
}

/// σ_r on the values of one column, using a representative of r that is coprime to every
/// stored modulus and agrees with r modulo the class's element order.
fn galois_column(t: &CharacterTable, col: usize, r: u64, modulus: u32) -> ClassFunction {
    let o = t.classes[col].rep_order;
    let k = coprime_representative(r as i64, o, modulus as u64);
    t.irr
        .iter()
        .map(|row| row[col].galois(k).expect("coprime representative"))
        .collect()
}

fn column(t: &CharacterTable, col: usize) -> ClassFunction {
    t.irr.iter().map(|row| row[col].clone()).collect()
}

fn check_power_maps(t: &CharacterTable) -> Result<(), TableError> {
    let r = t.classes.len();
    let exponent = t.exponent();
    let modulus = t.value_modulus();
    let err = |m: String| TableError::PowerMap(m);
    for q in prime_divisors(exponent) {
        for (k, c) in t.classes.iter().enumerate() {
            if !c.power_maps.contains_key(&q) {
                return Err(err(format!("class {k} lacks the {q}-power map")));
            }
        }
    }
    for (k, c) in t.classes.iter().enumerate() {
        for (&q, &img) in &c.power_maps {
            if !is_prime(q) {
                return Err(err(format!("class {k}: power map key {q} is not prime")));
            }
            if img >= r {
                return Err(err(format!("class {k}: {q}-power image {img} out of range")));
            }
            if k == 0 && img != 0 {
                return Err(err(format!("identity maps to class {img} under the {q}-power map")));
            }
            let expected = c.rep_order / gcd(c.rep_order, q);
            if t.classes[img].rep_order != expected {
                return Err(err(format!(
                    "class {k} (order {}) has {q}-power image of order {}, expected {expected}",
                    c.rep_order, t.classes[img].rep_order
                )));
            }
            if c.rep_order % q != 0 {
                // x ↦ x^q is a Galois twist of the class when q is prime to the order
                if t.classes[img].size != c.size {
                    return Err(err(format!(
                        "class {k}: {q}-power image has a different size"
                    )));
                }
                if galois_column(t, k, q, modulus) != column(t, img) {
                    return Err(err(format!(
                        "values on class {img} are not σ_{q} of the values on class {k}"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn check_row_orthogonality(t: &CharacterTable) -> Result<(), TableError> {
    let n = t.value_modulus();
    let inv_order = BigRational::new(BigInt::from(1), BigInt::from(t.order));
    for i in 0..t.irr.len() {
        for j in i..t.irr.len() {
            let mut acc = ProductSum::new(n);
            for (k, c) in t.classes.iter().enumerate() {
                acc.add_product(c.size as i64, &t.irr[i][k], &t.irr[j][k], true);
            }
            let ip = acc.finish().scale(&inv_order);
            let want = Cyclotomic::from_integer((i == j) as i64);
            if ip != want {
                return Err(TableError::Orthogonality {
                    kind: "row",
                    i,
                    j,
                    value: ip.to_string(),
                });
            }
        }
    }
    Ok(())
}

fn check_column_orthogonality(t: &CharacterTable) -> Result<(), TableError> {
    let n = t.value_modulus();
    let r = t.classes.len();
    for a in 0..r {
        for b in a..r {
            let mut acc = ProductSum::new(n);
            for row in &t.irr {
                acc.add_product(1, &row[a], &row[b], true);
            }
            let got = acc.finish();
            let want = if a == b {
                Cyclotomic::from_integer(t.centralizer_order(a) as i64)
            } else {
                Cyclotomic::zero()
            };
            if got != want {
                return Err(TableError::Orthogonality {
                    kind: "column",
                    i: a,
                    j: b,
                    value: got.to_string(),
                });
            }
        }
    }
    Ok(())
}

fn check_galois_closure(t: &CharacterTable) -> Result<(), TableError> {
    let n = t.value_modulus() as u64;
    if n == 1 {
        return Ok(());
    }
    // closure under a generating set of (Z/n)^* gives closure under the whole group
    let lifted: Vec<Vec<Cyclotomic>> = t
        .irr
        .iter()
        .map(|row| row.iter().map(|v| v.lift(n as u32)).collect())
        .collect();
    let mut index: HashMap<Vec<(BigInt, BigInt)>, usize> = HashMap::new();
    for (i, row) in lifted.iter().enumerate() {
        index.insert(key(row, n as u32), i);
    }
    for k in unit_group_generators(n) {
        for (i, row) in lifted.iter().enumerate() {
            let image: Vec<Cyclotomic> = row
                .iter()
                .map(|v| v.galois(k as i64).expect("generator is a unit").lift(n as u32))
                .collect();
            if !index.contains_key(&key(&image, n as u32)) {
                return Err(TableError::GaloisClosure(format!(
                    "σ_{k} applied to row {i} is not a row"
                )));
            }
        }
    }
    Ok(())
}

/// Coefficients as (numerator, denominator) pairs; hashing `Ratio` itself is slow.
fn key(row: &[Cyclotomic], n: u32) -> Vec<(BigInt, BigInt)> {
    row.iter()
        .flat_map(|v| {
            debug_assert!(v.modulus() == n || v.modulus() == 1);
            v.lift(n)
                .coeffs()
                .iter()
                .map(|c| (c.numer().clone(), c.denom().clone()))
                .collect::<Vec<_>>()
        })
        .collect()
}
