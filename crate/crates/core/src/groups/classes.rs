use std::collections::BTreeMap;

use super::PermGroup;
use crate::arith::prime_divisors;

/// Conjugacy classes sorted by (representative order, size, representative index); the
/// representative of each class is its lexicographically least element.
#[derive(Clone, Debug)]
pub struct ConjugacyData {
    pub classes: Vec<Vec<usize>>,
    pub reps: Vec<usize>,
    pub class_of: Vec<usize>,
    pub rep_orders: Vec<u64>,
    /// prime r ↦ class of x^r, for every prime dividing the exponent
    pub power_maps: Vec<BTreeMap<u64, usize>>,
    pub exponent: u64,
}

impl ConjugacyData {
    pub(super) fn compute(g: &PermGroup) -> Self {
        let n = g.elements.len();
        let gens = g.generator_indices();
        let mut assigned = vec![false; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if assigned[start] {
                continue;
            }
            assigned[start] = true;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for &s in &gens {
                    let y = g.conjugate(x, s);
                    if !assigned[y] {
                        assigned[y] = true;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            raw.push(orbit);
        }
        raw.sort_by_key(|c| (g.orders[c[0]], c.len(), c[0]));

        let mut class_of = vec![0; n];
        for (k, c) in raw.iter().enumerate() {
            for &x in c {
                class_of[x] = k;
            }
        }
        let reps: Vec<usize> = raw.iter().map(|c| c[0]).collect();
        let rep_orders: Vec<u64> = reps.iter().map(|&x| g.orders[x]).collect();
        let exponent = rep_orders
            .iter()
            .fold(1, |e, &o| crate::arith::lcm(e, o));
        let primes = prime_divisors(exponent);
        let power_maps = reps
            .iter()
            .map(|&x| {
                primes
                    .iter()
                    .map(|&r| (r, class_of[g.pow(x, r)]))
                    .collect()
            })
            .collect();
        ConjugacyData {
            classes: raw,
            reps,
            class_of,
            rep_orders,
            power_maps,
            exponent,
        }
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.len() as u64).collect()
    }

    /// Class of the inverse of each representative.
    pub fn inverse_classes(&self, g: &PermGroup) -> Vec<usize> {
        self.reps.iter().map(|&x| self.class_of[g.inv(x)]).collect()
    }

    /// All structure constants, `a[(i * r + j) * r + k]`, in one pass per target class.
    pub fn structure_constants(&self, g: &PermGroup) -> Vec<u64> {
        let r = self.classes.len();
        let mut a = vec![0u64; r * r * r];
        for (k, &z) in self.reps.iter().enumerate() {
            for x in 0..g.elements.len() {
                let y = g.mul(g.inv(x), z);
                a[(self.class_of[x] * r + self.class_of[y]) * r + k] += 1;
            }
        }
        a
    }
}
