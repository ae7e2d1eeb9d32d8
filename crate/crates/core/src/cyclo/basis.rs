//! Cyclotomic polynomials and the power-basis reduction tables for Q(ζ_n).

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::divisors;

/// Data shared by every element of Q(ζ_n): the polynomial Φ_n and the residues of x^k
/// modulo Φ_n for 0 ≤ k < n.
#[derive(Debug)]
pub(crate) struct CycloBasis {
    pub phi: usize,
    /// Coefficients of Φ_n, lowest degree first; monic of degree `phi`.
    pub poly: Vec<i64>,
    /// `powers[k]` is x^k mod Φ_n as sparse `(index, coefficient)` pairs.
    pub powers: Vec<Vec<(u32, i64)>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic; division is exact for cyclotomic factors of x^n - 1
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![0];
    }
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Φ_n computed by dividing x^n - 1 by Φ_d for every proper divisor d of n.
pub(crate) fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let mut memo: HashMap<u32, Vec<i64>> = HashMap::new();
    cyclotomic_polynomial_memo(n, &mut memo)
}

fn cyclotomic_polynomial_memo(n: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n as u64) {
        let d = d as u32;
        if d == n {
            continue;
        }
        let phid = cyclotomic_polynomial_memo(d, memo);
        poly = poly_div_exact(&poly, &phid);
    }
    memo.insert(n, poly.clone());
    poly
}

impl CycloBasis {
    fn build(n: u32) -> Self {
        let poly = cyclotomic_polynomial(n);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i as u32, c))
                    .collect(),
            );
            // multiply by x and reduce
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] = cur[i]
                        .checked_sub(top.checked_mul(poly[i]).expect("power table overflow"))
                        .expect("power table overflow");
                }
            }
        }
        CycloBasis {
            phi,
            poly,
            powers,
        }
    }
}

static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycloBasis>>>> = OnceLock::new();

pub(crate) fn basis(n: u32) -> Arc<CycloBasis> {
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(b) = cache.read().unwrap().get(&n) {
        return Arc::clone(b);
    }
    let built = Arc::new(CycloBasis::build(n));
    cache
        .write()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&built))
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len(), 49);
        // famous first coefficient of absolute value 2
        assert!(p105.contains(&-2));
    }

    #[test]
    fn power_table_wraps() {
        let b = basis(4);
        assert_eq!(b.phi, 2);
        assert_eq!(b.powers[2], vec![(0, -1)]);
        assert_eq!(b.powers[3], vec![(1, -1)]);
    }
}
