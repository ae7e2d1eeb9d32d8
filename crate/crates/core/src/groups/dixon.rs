use num_bigint::BigInt;
use num_rational::BigRational;

use super::linalg::{self, Mat};
use super::{GroupError, PermGroup};
use crate::arith::is_prime;
use crate::cyclo::{smallest_primitive_root, Cyclotomic};
use crate::tables::{CharacterTable, ClassInfo};

/// Smallest prime q ≡ 1 (mod e) with q > 2⌈√order⌉.
pub(super) fn dixon_prime(order: u64, exponent: u64) -> u64 {
    let bound = 2 * ceil_sqrt(order);
    let mut q = exponent + 1;
    while q <= bound || !is_prime(q) {
        q += exponent;
    }
    q
}

fn ceil_sqrt(n: u64) -> u64 {
    let mut s = (n as f64).sqrt() as u64;
    while s * s < n {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= n {
        s -= 1;
    }
    s
}

fn split_failure(msg: impl Into<String>) -> GroupError {
    GroupError::InternalSplitFailure(msg.into())
}

pub(super) fn dixon_table(g: &PermGroup, name: &str) -> Result<CharacterTable, GroupError> {
    let data = g.conjugacy_data();
    let r = data.num_classes();
    let order = g.order();
    let e = data.exponent;
    let q = dixon_prime(order, e);
    let sizes = data.sizes();
    let a = data.structure_constants(g);

    // (M_j)_{ik} = a_{ijk}; the class-sum eigenvectors ω satisfy M_j ω = ω_j ω
    let class_matrix = |j: usize| -> Mat {
        (0..r)
            .map(|i| (0..r).map(|k| a[(i * r + j) * r + k] % q).collect())
            .collect()
    };

    let identity: Mat = (0..r)
        .map(|i| (0..r).map(|k| u64::from(i == k)).collect())
        .collect();
    let mut spaces: Vec<Mat> = vec![identity];
    for j in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(j);
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
            } else {
                next.extend(split(&space, &m, q)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(split_failure(format!(
            "{} common eigenspaces for {r} classes",
            spaces.len()
        )));
    }

    let inverse_class = data.inverse_classes(g);
    let size_inv: Vec<u64> = sizes.iter().map(|&s| linalg::inv(s % q, q)).collect();
    let order_q = order % q;
    let max_degree = (order as f64).sqrt() as u64 + 1;
    let z = linalg::pow(smallest_primitive_root(q), (q - 1) / e, q);

    // classes of x^l for each representative, l = 0..o
    let power_classes: Vec<Vec<usize>> = data
        .reps
        .iter()
        .zip(&data.rep_orders)
        .map(|(&x, &o)| {
            let mut out = Vec::with_capacity(o as usize);
            let mut y = 0;
            for _ in 0..o {
                out.push(data.class_of[y]);
                y = g.mul(y, x);
            }
            out
        })
        .collect();

    let mut rows: Vec<(u64, Vec<Cyclotomic>)> = Vec::with_capacity(r);
    for space in &spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(split_failure("eigenvector vanishes at the identity class"));
        }
        let s0 = linalg::inv(v[0], q);
        let omega: Vec<u64> = v.iter().map(|&x| x * s0 % q).collect();
        let mut s = 0u64;
        for i in 0..r {
            s = (s + omega[i] * omega[inverse_class[i]] % q * size_inv[i]) % q;
        }
        if s == 0 {
            return Err(split_failure("degenerate eigenvector norm"));
        }
        let d_sq = order_q * linalg::inv(s, q) % q;
        let degree = (1..=max_degree)
            .find(|&d| d * d % q == d_sq)
            .ok_or_else(|| split_failure("no degree matches the eigenvector norm"))?;
        let values_q: Vec<u64> = (0..r)
            .map(|i| omega[i] * (degree % q) % q * size_inv[i] % q)
            .collect();

        let mut row = Vec::with_capacity(r);
        for i in 0..r {
            let o = data.rep_orders[i];
            row.push(lift_value(&values_q, &power_classes[i], o, e, z, q, degree)?);
        }
        rows.push((degree, row));
    }

    // degree, trivial first, then the lifted coefficient vectors
    let trivial = |row: &[Cyclotomic]| row.iter().all(|v| v.to_i64() == Some(1));
    let mut keyed: Vec<_> = rows
        .into_iter()
        .map(|(d, row)| {
            let key: Vec<Vec<BigRational>> = row
                .iter()
                .map(|v| v.lift(e as u32).coeffs().to_vec())
                .collect();
            ((d, !trivial(&row), key), row)
        })
        .collect();
    keyed.sort_by(|x, y| x.0.cmp(&y.0));
    let irr: Vec<Vec<Cyclotomic>> = keyed.into_iter().map(|(_, row)| row).collect();

    let classes: Vec<ClassInfo> = (0..r)
        .map(|i| ClassInfo {
            size: sizes[i],
            rep_order: data.rep_orders[i],
            power_maps: data.power_maps[i].clone(),
        })
        .collect();
    Ok(CharacterTable::new(name, order, classes, irr)?)
}

/// Splits an invariant subspace (rows in reduced echelon form) into eigenspaces of `m`.
fn split(space: &Mat, m: &Mat, q: u64) -> Result<Vec<Mat>, GroupError> {
    let dim = space.len();
    let r = m.len();
    let pivots: Vec<usize> = space
        .iter()
        .map(|b| b.iter().position(|&x| x != 0).expect("echelon rows are nonzero"))
        .collect();
    let images: Vec<Vec<u64>> = space
        .iter()
        .map(|b| {
            (0..r)
                .map(|i| {
                    m[i].iter()
                        .zip(b)
                        .fold(0u64, |acc, (&x, &y)| (acc + x * y) % q)
                })
                .collect()
        })
        .collect();
    // column s holds the coordinates of m·b_s
    let restricted: Mat = (0..dim)
        .map(|t| (0..dim).map(|s| images[s][pivots[t]]).collect())
        .collect();
    let scalar = restricted[0][0];
    let is_scalar = (0..dim).all(|t| {
        (0..dim).all(|s| restricted[t][s] == if s == t { scalar } else { 0 })
    });
    if is_scalar {
        return Ok(vec![space.clone()]);
    }
    let poly = linalg::charpoly(&restricted, q);
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in 0..q {
        if linalg::eval(&poly, lambda, q) != 0 {
            continue;
        }
        let shifted: Mat = (0..dim)
            .map(|t| {
                (0..dim)
                    .map(|s| {
                        if s == t {
                            (restricted[t][s] + q - lambda) % q
                        } else {
                            restricted[t][s]
                        }
                    })
                    .collect()
            })
            .collect();
        let coords = linalg::nullspace(&shifted, q);
        let mut eig: Mat = coords
            .iter()
            .map(|u| {
                (0..r)
                    .map(|k| {
                        u.iter()
                            .zip(space)
                            .fold(0u64, |acc, (&c, b)| (acc + c * b[k]) % q)
                    })
                    .collect()
            })
            .collect();
        linalg::rref(&mut eig, q);
        total += eig.len();
        out.push(eig);
    }
    if total != dim {
        return Err(split_failure(format!(
            "eigenspaces of dimension {total} in a space of dimension {dim}"
        )));
    }
    Ok(out)
}

/// χ(x) from the residues χ(x^l): the multiplicity of ζ_o^m as an eigenvalue is
/// (1/o) Σ_l χ(x^l) ζ_o^{−ml}, read off in F_q with ζ_e ↦ z.
fn lift_value(
    values_q: &[u64],
    power_classes: &[usize],
    o: u64,
    e: u64,
    z: u64,
    q: u64,
    degree: u64,
) -> Result<Cyclotomic, GroupError> {
    let zo = linalg::pow(z, e / o, q);
    let zo_inv = linalg::inv(zo, q);
    let o_inv = linalg::inv(o % q, q);
    let mut terms = Vec::new();
    let mut total = 0;
    let mut step = 1u64; // ζ_o^{−m}
    for m in 0..o {
        let mut acc = 0u64;
        let mut w = 1u64;
        for &c in power_classes {
            acc = (acc + values_q[c] * w) % q;
            w = w * step % q;
        }
        let mult = acc * o_inv % q;
        if mult > degree {
            return Err(split_failure(format!(
                "eigenvalue multiplicity residue {mult} exceeds the degree {degree}"
            )));
        }
        if mult > 0 {
            total += mult;
            terms.push((m as i64, BigRational::from_integer(BigInt::from(mult))));
        }
        step = step * zo_inv % q;
    }
    if total != degree {
        return Err(split_failure("eigenvalue multiplicities do not sum to the degree"));
    }
    Ok(Cyclotomic::normalize(o as u32, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_choice() {
        // |S3| = 6, e = 6: bound 2·3 = 6, so q = 7
        assert_eq!(dixon_prime(6, 6), 7);
        // |A5| = 60, e = 30: bound 16, q = 31
        assert_eq!(dixon_prime(60, 30), 31);
        // |C5| = 5, e = 5: bound 6, q = 11
        assert_eq!(dixon_prime(5, 5), 11);
        assert_eq!(ceil_sqrt(16), 4);
        assert_eq!(ceil_sqrt(17), 5);
    }
}
