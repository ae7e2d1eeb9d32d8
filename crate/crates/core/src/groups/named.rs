//! Generating sets for a few standard families.

use super::Perm;

fn cycle(degree: usize, points: &[u32]) -> Perm {
    Perm::from_cycles(degree, &[points]).expect("points are in range")
}

/// C_n acting regularly on n points.
pub fn cyclic(n: usize) -> Vec<Perm> {
    let pts: Vec<u32> = (0..n as u32).collect();
    vec![cycle(n.max(1), &pts)]
}

/// S_n on n points.
pub fn symmetric(n: usize) -> Vec<Perm> {
    if n < 2 {
        return vec![Perm::identity(n.max(1))];
    }
    let pts: Vec<u32> = (0..n as u32).collect();
    vec![cycle(n, &[0, 1]), cycle(n, &pts)]
}

/// A_n on n points, generated by the 3-cycles (0 1 k).
pub fn alternating(n: usize) -> Vec<Perm> {
    if n < 3 {
        return vec![Perm::identity(n.max(1))];
    }
    (2..n as u32).map(|k| cycle(n, &[0, 1, k])).collect()
}

/// The dihedral group of order 2n acting on the n-gon (n ≥ 3).
pub fn dihedral(n: usize) -> Vec<Perm> {
    let pts: Vec<u32> = (0..n as u32).collect();
    let reflection: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    vec![
        cycle(n, &pts),
        Perm::new(reflection).expect("reflection is a bijection"),
    ]
}

/// Right regular representation of a group given by its multiplication table.
pub fn regular(table: &[Vec<usize>]) -> Vec<Perm> {
    table
        .iter()
        .enumerate()
        .map(|(g, _)| {
            Perm::new(table.iter().map(|row| row[g] as u32).collect())
                .expect("rows of a group table are permutations")
        })
        .collect()
}

/// The dicyclic group of order 4n (the quaternion group Q8 for n = 2), regularly.
pub fn dicyclic(n: usize) -> Vec<Perm> {
    // elements a^i x^j, i < 2n, j < 2, with x² = a^n and x a x⁻¹ = a⁻¹
    let m = 2 * n;
    let idx = |i: usize, j: usize| j * m + i;
    let mul = |(i1, j1): (usize, usize), (i2, j2): (usize, usize)| -> usize {
        match (j1, j2) {
            (0, _) => idx((i1 + i2) % m, j2),
            (1, 0) => idx((i1 + m - i2) % m, 1),
            // a^i1 x a^i2 x = a^(i1 − i2) x² = a^(i1 − i2 + n)
            _ => idx((i1 + m - i2 + n) % m, 0),
        }
    };
    let elems: Vec<(usize, usize)> = (0..2).flat_map(|j| (0..m).map(move |i| (i, j))).collect();
    let table: Vec<Vec<usize>> = elems
        .iter()
        .map(|&a| elems.iter().map(|&b| mul(a, b)).collect())
        .collect();
    let full = regular(&table);
    vec![full[idx(1, 0)].clone(), full[idx(0, 1)].clone()]
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &[Perm], b: &[Perm]) -> Vec<Perm> {
    let da = a.first().map_or(1, Perm::degree);
    let db = b.first().map_or(1, Perm::degree);
    let left = a.iter().map(|p| {
        let mut img = p.images();
        img.extend(da as u32..(da + db) as u32);
        Perm::new(img).expect("disjoint union")
    });
    let right = b.iter().map(|p| {
        let mut img: Vec<u32> = (0..da as u32).collect();
        img.extend(p.images().into_iter().map(|i| i + da as u32));
        Perm::new(img).expect("disjoint union")
    });
    left.chain(right).collect()
}

/// SL(2, 3) acting on the eight nonzero vectors of F_3².
pub fn sl2_3() -> Vec<Perm> {
    let vecs: Vec<(u32, u32)> = (0..9)
        .map(|k| (k / 3, k % 3))
        .filter(|&v| v != (0, 0))
        .collect();
    let act = |m: [[u32; 2]; 2]| {
        let images = vecs
            .iter()
            .map(|&(x, y)| {
                let w = ((m[0][0] * x + m[0][1] * y) % 3, (m[1][0] * x + m[1][1] * y) % 3);
                vecs.iter().position(|&v| v == w).unwrap() as u32
            })
            .collect();
        Perm::new(images).expect("invertible matrix")
    };
    vec![act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])]
}
