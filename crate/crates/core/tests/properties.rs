use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;

use blockwork::arith::{gcd, is_prime, lcm, valuation};
use blockwork::cyclo::{format_rational, parse_rational, Cyclotomic, PrimeReduction};
use blockwork::groups::Perm;
use blockwork::partitions::{hook_degree, p_core, partitions_of, self_associate, vp_binomial, Partition};

const MODULI: [u32; 12] = [1, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24];

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=6).prop_map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
}

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(MODULI.to_vec()), prop::collection::vec((0u32..60, rational()), 0..6)).prop_map(
        |(n, terms)| {
            terms.into_iter().fold(Cyclotomic::zero(), |acc, (k, q)| {
                &acc + &Cyclotomic::zeta_pow(n, (k % n) as i64).scale(&q)
            })
        },
    )
}

fn unit(n: u64) -> impl Strategy<Value = i64> {
    (1i64..200).prop_filter_map("unit", move |k| (gcd(k as u64, n) == 1).then_some(k))
}

fn partition() -> impl Strategy<Value = Partition> {
    (1u32..=14).prop_flat_map(|n| {
        let all = partitions_of(n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn perm(d: usize) -> impl Strategy<Value = Perm> {
    Just((0..d as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::new(v).unwrap())
}

proptest! {
    #[test]
    fn galois_automorphisms_are_ring_homomorphisms(
        (a, b, k) in (cyclotomic(), cyclotomic()).prop_flat_map(|(a, b)| {
            let n = lcm(a.modulus() as u64, b.modulus() as u64) * 60;
            (Just(a), Just(b), unit(n))
        })
    ) {
        let s = |z: &Cyclotomic| z.galois(k).unwrap();
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&a).conductor(), a.conductor());
        prop_assert_eq!(a.conj().conj(), a.clone());
    }

    #[test]
    fn lifting_preserves_value_and_conductor(a in cyclotomic(), m in 1u32..6) {
        let b = a.lift(a.modulus() * m);
        prop_assert_eq!(&b, &a);
        prop_assert_eq!(b.conductor(), a.conductor());
        prop_assert_eq!(a.modulus() as u64 % a.conductor().max(1), 0);
    }

    #[test]
    fn field_operations(a in cyclotomic(), b in cyclotomic()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b).checked_div(&b).unwrap(), &a);
            prop_assert_eq!(&b * &b.inverse().unwrap(), Cyclotomic::one());
        }
    }

    #[test]
    fn json_round_trip(a in cyclotomic(), q in rational()) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Cyclotomic>(&text).unwrap(), a);
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn reduction_is_a_ring_homomorphism(a in cyclotomic(), b in cyclotomic(), i in 0usize..4) {
        let n = lcm(a.modulus() as u64, b.modulus() as u64);
        let p = [7u64, 11, 13, 17, 19, 23, 29].into_iter().filter(|&p| !n.is_multiple_of(p)).nth(i).unwrap();
        let red = PrimeReduction::new(n as u32, p);
        let r = |z: &Cyclotomic| red.reduce(z).unwrap();
        prop_assert!(r(&(&a + &b)) == r(&a).add(&r(&b)));
        prop_assert!(r(&(&a * &b)) == r(&a).mul(&r(&b)));
    }

    #[test]
    fn conjugate_partition_is_an_involution(l in partition()) {
        let c = l.conjugate();
        prop_assert_eq!(c.n(), l.n());
        prop_assert_eq!(c.conjugate(), l.clone());
        prop_assert_eq!(hook_degree(&c), hook_degree(&l));
        prop_assert_eq!(self_associate(&l), c == l);
    }

    #[test]
    fn p_core_is_a_core(l in partition(), p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let core = p_core(&l, p);
        prop_assert!(core.cells_with_hook(p).is_empty());
        prop_assert_eq!(p_core(&core, p), core.clone());
        prop_assert_eq!((l.n() - core.n()) % p, 0);
    }

    #[test]
    fn binomial_valuation_counts_carries(n in 0u64..200, k in 0u64..200, p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        prop_assume!(k <= n);
        let mut binom = BigUint::from(1u32);
        for i in 0..k {
            binom = binom * BigUint::from(n - i) / BigUint::from(i + 1);
        }
        let mut v = 0;
        while &binom % p == BigUint::from(0u32) {
            binom /= p;
            v += 1;
        }
        prop_assert_eq!(vp_binomial(n, k, p), v);
    }

    #[test]
    fn perms_form_a_group(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.then(&b).order(), b.then(&a).order());
        prop_assert_eq!(5040 % a.order(), 0);
    }

    #[test]
    fn valuation_and_primality(n in 1u64..100_000, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let v = valuation(n, p);
        prop_assert_eq!(n % p.pow(v), 0);
        prop_assert_ne!(n % p.pow(v + 1), 0);
        prop_assert_eq!(is_prime(n), n > 1 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0));
    }
}

#[test]
fn squared_hook_degrees_sum_to_factorial() {
    for n in 1..=12u32 {
        let total: BigUint = partitions_of(n).iter().map(|l| hook_degree(l).pow(2)).sum();
        let fact: BigUint = (1..=n).map(BigUint::from).product();
        assert_eq!(total, fact, "n = {n}");
    }
}
