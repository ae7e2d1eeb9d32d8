//! Dense linear algebra over a prime field F_q with q < 2^31.

pub(super) type Mat = Vec<Vec<u64>>;

pub(super) fn inv(a: u64, q: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(q));
    pow(a, q - 2, q)
}

pub(super) fn pow(mut a: u64, mut k: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    a %= q;
    while k > 0 {
        if k & 1 == 1 {
            r = r * a % q;
        }
        a = a * a % q;
        k >>= 1;
    }
    r
}

/// Reduces `m` in place to reduced row echelon form; returns the pivot columns. Zero rows
/// are dropped.
pub(super) fn rref(m: &mut Mat, q: u64) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, p);
        let s = inv(m[row][col], q);
        for v in m[row].iter_mut() {
            *v = *v * s % q;
        }
        for i in 0..m.len() {
            if i != row && m[i][col] != 0 {
                let f = m[i][col];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + (q - f) * m[row][j]) % q;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    pivots
}

/// Basis of {v : m v = 0}.
pub(super) fn nullspace(m: &Mat, q: u64) -> Vec<Vec<u64>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = m.clone();
    let pivots = rref(&mut r, q);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (q - r[i][free]) % q;
        }
        basis.push(v);
    }
    basis
}

/// Characteristic polynomial det(xI − m), coefficients from the constant term up, via
/// reduction to upper Hessenberg form.
pub(super) fn charpoly(m: &Mat, q: u64) -> Vec<u64> {
    let n = m.len();
    let mut h = m.clone();
    for k in 1..n.saturating_sub(1) {
        let Some(i) = (k..n).find(|&i| h[i][k - 1] != 0) else {
            continue;
        };
        if i != k {
            h.swap(i, k);
            for row in h.iter_mut() {
                row.swap(i, k);
            }
        }
        let t = inv(h[k][k - 1], q);
        for i in k + 1..n {
            let u = h[i][k - 1] * t % q;
            if u == 0 {
                continue;
            }
            for j in 0..n {
                h[i][j] = (h[i][j] + (q - u) * h[k][j]) % q;
            }
            for row in h.iter_mut() {
                row[k] = (row[k] + u * row[i]) % q;
            }
        }
    }
    // p_m = (x − h_mm) p_{m−1} − Σ_{i<m} h_im (∏_{j=i+1}^{m} h_{j,j−1}) p_{i−1}, 1-based
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for mm in 1..=n {
        let prev = &polys[mm - 1];
        let mut p = vec![0u64; mm + 1];
        for (d, &c) in prev.iter().enumerate() {
            p[d + 1] = (p[d + 1] + c) % q;
            p[d] = (p[d] + (q - h[mm - 1][mm - 1]) * c) % q;
        }
        let mut t = 1u64;
        for i in (1..mm).rev() {
            t = t * h[i][i - 1] % q;
            let coef = h[i - 1][mm - 1] * t % q;
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i - 1].iter().enumerate() {
                p[d] = (p[d] + (q - coef) * c % q) % q;
            }
        }
        polys.push(p);
    }
    polys.pop().unwrap()
}

pub(super) fn eval(poly: &[u64], x: u64, q: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (acc * x + c) % q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_matches_determinant_expansion() {
        let q = 101;
        // [[2,1],[3,4]]: x² − 6x + 5
        let m = vec![vec![2, 1], vec![3, 4]];
        assert_eq!(charpoly(&m, q), vec![5, q - 6, 1]);
        // companion of x³ − 2x + 7 (columns shifted)
        let c = vec![vec![0, 0, q - 7], vec![1, 0, 2], vec![0, 1, 0]];
        assert_eq!(charpoly(&c, q), vec![7, q - 2, 0, 1]);
        // a dense 3×3 where pivoting is needed: [[1,2,3],[0,0,1],[4,5,6]]
        let d = vec![vec![1, 2, 3], vec![0, 0, 1], vec![4, 5, 6]];
        let p = charpoly(&d, q);
        // trace 7, det 3, principal 2-minors 0 − 6 − 5
        assert_eq!(p, vec![q - 3, q - 11, q - 7, 1]);
    }

    #[test]
    fn nullspace_dimension() {
        let q = 7;
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 0]];
        let ns = nullspace(&m, q);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &m {
                let s: u64 = row.iter().zip(&v).map(|(a, b)| a * b).sum::<u64>() % q;
                assert_eq!(s, 0);
            }
        }
    }
}
