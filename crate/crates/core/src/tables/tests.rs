use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::cyclo::Cyclotomic;
use crate::testutil::golden;


fn cyclic_table(n: u64) -> CharacterTable {
    let classes = (0..n)
        .map(|k| ClassInfo {
            size: 1,
            rep_order: n / gcd(k, n),
            power_maps: crate::arith::prime_divisors(n)
                .into_iter()
                .map(|p| (p, ((k * p) % n) as usize))
                .collect(),
        })
        .collect();
    let irr = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| Cyclotomic::zeta_pow(n as u32, (j * k) as i64))
                .collect()
        })
        .collect();
    CharacterTable::new(format!("C{n}"), n, classes, irr).unwrap()
}

fn ints(v: &[i64]) -> ClassFunction {
    v.iter().map(|&i| Cyclotomic::from_integer(i)).collect()
}

fn one() -> Cyclotomic {
    Cyclotomic::one()
}

#[test]
fn golden_tables_load() {
    for (name, degrees) in [
        ("c2", vec![1, 1]),
        ("s3", vec![1, 1, 2]),
        ("a4", vec![1, 1, 1, 3]),
        ("q8", vec![1, 1, 1, 1, 2]),
        ("s4", vec![1, 1, 2, 3, 3]),
        ("a5", vec![1, 3, 3, 4, 5]),
        ("s5", vec![1, 1, 4, 4, 5, 5, 6]),
        ("sl2_3", vec![1, 1, 1, 3, 2, 2, 2]),
    ] {
        let t = golden(name);
        assert_eq!(t.degrees(), degrees, "{name}");
    }
}

#[test]
fn json_round_trip_revalidates() {
    let t = golden("a5");
    let back = CharacterTable::from_json(&t.to_json()).unwrap();
    assert_eq!(back.irr(), t.irr());
    assert_eq!(back.classes(), t.classes());
}

fn s3_classes() -> Vec<ClassInfo> {
    golden("s3").classes().to_vec()
}

#[test]
fn class_sizes_must_sum_to_order() {
    let mut classes = s3_classes();
    classes[1].size = 2;
    let err = CharacterTable::new("bad", 6, classes, golden("s3").irr().to_vec()).unwrap_err();
    assert!(matches!(err, TableError::Schema(_)), "{err}");
}

#[test]
fn altered_value_breaks_orthogonality() {
    let mut irr = golden("s3").irr().to_vec();
    irr[2][1] = one();
    let err = CharacterTable::new("bad", 6, s3_classes(), irr).unwrap_err();
    assert!(matches!(err, TableError::Orthogonality { .. }), "{err}");
}

#[test]
fn non_square_and_bad_degree_rejected() {
    let mut irr = golden("s3").irr().to_vec();
    irr.pop();
    assert!(matches!(
        CharacterTable::new("bad", 6, s3_classes(), irr),
        Err(TableError::Schema(_))
    ));
}

#[test]
fn power_map_errors() {
    let t = golden("a4");
    let mut classes = t.classes().to_vec();
    classes[2].power_maps.insert(2, 2); // (123)^2 is not in the class of (123)
    let err = CharacterTable::new("bad", 12, classes, t.irr().to_vec()).unwrap_err();
    assert!(matches!(err, TableError::PowerMap(_)), "{err}");

    let mut classes = t.classes().to_vec();
    classes[1].power_maps.remove(&3);
    let err = CharacterTable::new("bad", 12, classes, t.irr().to_vec()).unwrap_err();
    assert!(matches!(err, TableError::PowerMap(_)), "{err}");
}

#[test]
fn galois_closure_error() {
    // replace the conjugate pair of linear characters of C3 by two copies of one of them,
    // with a second trivial-looking fix to keep orthogonality failing last
    let c3 = cyclic_table(3);
    let mut irr = c3.irr().to_vec();
    irr[2] = irr[1].clone();
    let err = CharacterTable::new("bad", 3, c3.classes().to_vec(), irr).unwrap_err();
    assert!(
        matches!(err, TableError::Orthogonality { .. } | TableError::PowerMap(_)),
        "{err}"
    );
}

#[test]
fn inner_product_examples() {
    let s3 = golden("s3");
    let triv = s3.row(s3.trivial_row()).to_vec();
    assert_eq!(s3.inner_product(&triv, &triv), one());
    for i in 0..3 {
        for j in 0..3 {
            let want = Cyclotomic::from_integer((i == j) as i64);
            assert_eq!(s3.inner_product(s3.row(i), s3.row(j)), want);
        }
    }
    // regular character divided by |G| pairs with 1_G to 1/6 · 6
    let reg = ints(&[6, 0, 0]);
    assert_eq!(s3.inner_product(&reg, &triv), one());
    assert_eq!(
        s3.inner_product(&ints(&[1, 0, 0]), &triv),
        Cyclotomic::from_rational(BigRational::new(BigInt::from(1), BigInt::from(6)))
    );
}

#[test]
fn kernel_examples() {
    let s4 = golden("s4");
    let k = s4.kernel(s4.trivial_row());
    assert_eq!(k.order, 24);
    assert_eq!(k.classes.len(), 5);
    let two = s4.degrees().iter().position(|&d| d == 2).unwrap();
    let k = s4.kernel(two);
    assert_eq!(k.order, 4);
    assert_eq!(k.classes, vec![0, 2]);
    // faithful 3-dimensional character
    let three = s4.degrees().iter().position(|&d| d == 3).unwrap();
    assert_eq!(s4.kernel(three).order, 1);
}

#[test]
fn restriction_examples() {
    let s4 = golden("s4");
    let s3 = golden("s3");
    let f = FusionMap::new(&s3, &s4, vec![0, 1, 3]).unwrap();
    assert_eq!(s4.restrict(s4.trivial_row(), &f), s3.row(s3.trivial_row()));
    let two = s4.degrees().iter().position(|&d| d == 2).unwrap();
    let res = s4.restrict(two, &f);
    assert_eq!(s3.norm(&res).unwrap(), BigRational::from_integer(1.into()));
    assert!(s3.is_irreducible_character(&res));

    let c3 = cyclic_table(3);
    let f = FusionMap::new(&c3, &s3, vec![0, 2, 2]).unwrap();
    let res = s3.restrict(2, &f);
    assert_eq!(c3.norm(&res).unwrap(), BigRational::from_integer(2.into()));
    let mult = c3.decompose(&res);
    assert_eq!(mult, vec![Cyclotomic::zero(), one(), one()]);
}

#[test]
fn identity_fusion_restricts_to_itself() {
    let a5 = golden("a5");
    let f = FusionMap::new(&a5, &a5, (0..a5.num_classes()).collect()).unwrap();
    for i in 0..a5.num_classes() {
        assert_eq!(a5.restrict(i, &f), a5.row(i));
    }
}

#[test]
fn bad_fusions_rejected() {
    let s4 = golden("s4");
    let s3 = golden("s3");
    // transposition fused into the double transpositions: orders agree, characters break
    assert!(FusionMap::new(&s3, &s4, vec![0, 2, 3]).is_err());
    // order mismatch
    assert!(FusionMap::new(&s3, &s4, vec![0, 3, 1]).is_err());
    let f = FusionMap::from_json(r#"{"sub":"S3","super":"S4","map":[0,1,3]}"#).unwrap();
    assert!(f.validate(&s3, &s4).is_ok());
}

#[test]
fn galois_permutation_examples() {
    let a4 = golden("a4");
    assert_eq!(a4.galois_permutation(1).unwrap(), vec![0, 1, 2, 3]);
    assert_eq!(a4.galois_permutation(-1).unwrap(), vec![0, 2, 1, 3]);
    let s3 = golden("s3");
    for k in [1, 5, 7, 11] {
        assert_eq!(s3.galois_permutation(k).unwrap(), vec![0, 1, 2]);
    }
    assert!(s3.galois_permutation(3).is_err());
    let a5 = golden("a5");
    assert_eq!(a5.galois_permutation(7).unwrap(), vec![0, 2, 1, 3, 4]);
}

#[test]
fn degree_sums_and_divisibility() {
    for name in ["c4", "c5", "c6", "d8", "s5", "sl2_3"] {
        let t = golden(name);
        let s: u64 = t.degrees().iter().map(|d| d * d).sum();
        assert_eq!(s, t.order());
        assert!(t.degrees().iter().all(|d| t.order().is_multiple_of(*d)));
    }
}

#[test]
fn power_maps_deserialize_numerically() {
    let t = golden("s5");
    let pm: &BTreeMap<u64, usize> = &t.classes()[4].power_maps;
    assert_eq!(pm.keys().copied().collect::<Vec<_>>(), vec![2, 3, 5]);
}
