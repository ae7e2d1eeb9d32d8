use super::*;
use crate::groups::named;
use crate::testutil::{golden, group, sample_groups};

fn int(k: i64) -> Cyclotomic {
    Cyclotomic::from_integer(k)
}

#[test]
fn central_character_examples() {
    let s3 = golden("s3");
    let triv = central_character(&s3, 0).unwrap();
    assert_eq!(triv, vec![int(1), int(3), int(2)]);
    let w = central_character(&s3, 2).unwrap();
    assert_eq!(w[0], int(1));
    assert_eq!(w[2], int(-1));
    for name in ["a4", "a5", "sl2_3", "s5"] {
        let t = golden(name);
        for r in 0..t.irr().len() {
            assert_eq!(central_character(&t, r).unwrap()[0], int(1));
        }
    }
}

#[test]
fn partitions_of_small_tables() {
    let s3 = golden("s3");
    let b = block_partition(&s3, 3).unwrap();
    assert_eq!(b.blocks.len(), 1);
    assert_eq!(b.blocks[0].defect, 1);

    let b = block_partition(&s3, 2).unwrap();
    assert_eq!(b.blocks.len(), 2);
    assert_eq!(b.principal_block().rows(), vec![0, 1]);
    assert_eq!(b.principal_block().defect, 1);
    assert_eq!(b.block_of_row(2).rows(), vec![2]);
    assert_eq!(b.block_of_row(2).defect, 0);

    let a4 = golden("a4");
    let b = block_partition(&a4, 2).unwrap();
    assert_eq!(b.blocks.len(), 1);
    assert_eq!(b.blocks[0].defect, 2);
    assert_eq!(b.blocks[0].rows(), vec![0, 1, 2, 3]);

    let c5 = golden("c5");
    let b = block_partition(&c5, 2).unwrap();
    assert_eq!(b.blocks.len(), 5);
    assert!(b.blocks.iter().all(|bl| bl.defect == 0 && bl.len() == 1));
}

#[test]
fn heights_and_p_prime_parts() {
    // S4, p = 2: one block of defect 3; the degree-2 character has height 1
    let s4 = golden("s4");
    let b = block_partition(&s4, 2).unwrap();
    assert_eq!(b.blocks.len(), 1);
    let m = b.blocks[0].member(2).unwrap();
    assert_eq!((m.degree, m.height, m.m), (2, 1, 1));
    let m = b.blocks[0].member(3).unwrap();
    assert_eq!((m.degree, m.height, m.m), (3, 0, 3));
}

#[test]
fn block_sums() {
    let s3 = golden("s3");
    let b = block_partition(&s3, 2).unwrap();
    assert_eq!(block_sum_invariant(b.block_of_row(2), 2, b.a).unwrap(), (0, 1));
    let a4 = golden("a4");
    let b = block_partition(&a4, 2).unwrap();
    assert_eq!(block_sum_invariant(&b.blocks[0], 2, b.a).unwrap(), (2, 3));
    let c5 = golden("c5");
    let b = block_partition(&c5, 2).unwrap();
    for bl in &b.blocks {
        assert_eq!(block_sum_invariant(bl, 2, b.a).unwrap(), (0, 1));
    }
    let bad = Block {
        members: vec![BlockMember { row: 0, degree: 1, height: 0, m: 1 }],
        defect: 0,
    };
    assert!(matches!(
        block_sum_invariant(&bad, 2, 1),
        Err(BlockError::InvariantViolation(_))
    ));
}

#[test]
fn principal_blocks() {
    assert_eq!(principal_block(&golden("s3"), 2).unwrap().rows(), vec![0, 1]);
    let a5 = golden("a5");
    let b0 = principal_block(&a5, 2).unwrap();
    let mut degrees: Vec<u64> = b0.members.iter().map(|m| m.degree).collect();
    degrees.sort_unstable();
    assert_eq!(degrees, vec![1, 3, 3, 5]);
    assert_eq!(principal_block(&golden("c5"), 5).unwrap().len(), 5);
}

#[test]
fn o_pprime_and_complements() {
    assert_eq!(o_pprime_order(&golden("s3"), 2).unwrap(), 3);
    assert_eq!(o_pprime_order(&golden("a4"), 2).unwrap(), 1);
    assert_eq!(o_pprime_order(&golden("c6"), 3).unwrap(), 2);
    assert!(has_normal_p_complement(&golden("s3"), 2).unwrap());
    assert!(!has_normal_p_complement(&golden("a4"), 2).unwrap());
    assert!(has_normal_p_complement(&golden("c6"), 3).unwrap());
}

#[test]
fn defect_class_examples() {
    let s3 = golden("s3");
    assert_eq!(defect_classes(&s3, 0, 2).unwrap(), vec![0]);
    assert_eq!(defect_classes(&s3, 2, 2).unwrap(), vec![2]);
    assert_eq!(defect_classes(&golden("c5"), 0, 5).unwrap(), vec![0]);
}

#[test]
fn restriction_checks() {
    let g = group(named::symmetric(4));
    let t = g.character_table("S4").unwrap();
    let s3 = g.generate(&[
        g.index_of(&crate::groups::Perm::from_cycles(4, &[&[0, 1]]).unwrap()).unwrap(),
        g.index_of(&crate::groups::Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap()).unwrap(),
    ]);
    let (h, fusion) = g.subgroup_fusion(&s3, "S3", &t).unwrap();
    let row = t.degrees().iter().position(|&d| d == 2).unwrap();
    let rep = restriction_block_check(&t, &h, &fusion, 3, row).unwrap();
    assert!(rep.coprime_index);
    assert!(matches!(rep.outcome, RestrictionOutcome::Irreducible { in_principal: true, .. }));
    let rep = restriction_block_check(&t, &h, &fusion, 3, t.trivial_row()).unwrap();
    assert!(matches!(rep.outcome, RestrictionOutcome::Irreducible { in_principal: true, .. }));

    let g = group(named::symmetric(3));
    let t = g.character_table("S3").unwrap();
    let c3 = g.generate(&[g.index_of(&crate::groups::Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()).unwrap()]);
    let (h, fusion) = g.subgroup_fusion(&c3, "C3", &t).unwrap();
    let row = t.degrees().iter().position(|&d| d == 2).unwrap();
    let rep = restriction_block_check(&t, &h, &fusion, 3, row).unwrap();
    assert_eq!(rep.outcome, RestrictionOutcome::Reducible);
}

#[test]
fn invariants_on_sample_groups() {
    for (name, g, t) in sample_groups() {
        for p in [2u64, 3, 5, 7] {
            let bp = block_partition(&t, p).unwrap();
            let mut seen = vec![0; t.irr().len()];
            for bl in &bp.blocks {
                for m in &bl.members {
                    seen[m.row] += 1;
                }
                assert!(bl.height_zero().next().is_some(), "{name} p={p}");
                block_sum_invariant(bl, p, bp.a).unwrap();
            }
            assert!(seen.iter().all(|&c| c == 1));
            assert!(bp.principal_block().contains(t.trivial_row()));
            if t.order() % p != 0 {
                assert!(bp.blocks.iter().all(|b| b.len() == 1 && b.defect == 0));
            }
            for r in 0..t.irr().len() {
                assert!(!defect_classes_in(&t, &bp, r).unwrap().is_empty());
            }
            // a different prime over p gives the same partition
            let n = t.exponent() as i64;
            if let Some(k) = (2..n).find(|&k| crate::arith::gcd(k as u64, n as u64) == 1) {
                assert_eq!(partition_twisted(&t, p, k).unwrap().blocks, bp.blocks, "{name} p={p}");
            }
            assert_eq!(
                has_normal_p_complement(&t, p).unwrap(),
                g.has_normal_p_complement(p),
                "{name} p={p}"
            );
        }
    }
}
