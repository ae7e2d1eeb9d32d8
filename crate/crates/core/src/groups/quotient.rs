use super::{p_prime_closed, PermGroup};

/// The quotient V/N of a subgroup V by a normal subgroup N, on left cosets with an
/// explicit multiplication table. Coset 0 is N itself.
#[derive(Clone, Debug)]
pub struct CosetGroup {
    table: Vec<Vec<usize>>,
    orders: Vec<u64>,
}

impl CosetGroup {
    pub fn new(g: &PermGroup, v: &[usize], n: &[usize]) -> Self {
        let mut coset_of = vec![usize::MAX; g.elements.len()];
        let mut reps = Vec::new();
        // v is sorted, so the identity comes first and N gets coset 0
        for &x in v {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &y in n {
                coset_of[g.mul(x, y)] = id;
            }
        }
        let table: Vec<Vec<usize>> = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[g.mul(a, b)]).collect())
            .collect();
        let orders = (0..reps.len())
            .map(|c| {
                let mut k = 1;
                let mut y = c;
                while y != 0 {
                    y = table[y][c];
                    k += 1;
                }
                k
            })
            .collect();
        CosetGroup { table, orders }
    }

    pub fn order(&self) -> u64 {
        self.table.len() as u64
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    pub fn has_normal_p_complement(&self, p: u64) -> bool {
        let pprime: Vec<usize> = (0..self.table.len())
            .filter(|&x| !self.orders[x].is_multiple_of(p))
            .collect();
        p_prime_closed(&pprime, |a, b| self.table[a][b], self.table.len(), p)
    }
}
