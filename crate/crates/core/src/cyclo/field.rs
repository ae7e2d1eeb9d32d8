//! Finite fields F_{p^t} and the reduction Z_(p)[ζ_n] → F_{p^t}.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use super::{rational_mod_p, CycloError, Cyclotomic};
use crate::arith::{factorize, inv_mod, mul_mod, multiplicative_order, p_part, pow_mod};

/// F_{p^t} = F_p[x]/(f) for a fixed monic irreducible f whose root x generates the
/// multiplicative group.
///
/// For t = 1, f = x - g with g the smallest primitive root mod p. For t > 1, f is the
/// least primitive polynomial when the coefficient vector (c_0, …, c_{t-1}) is read as a
/// base-p integer with c_0 least significant.
#[derive(Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    t: u32,
    /// monic, lowest degree first, length t + 1
    modulus: Vec<u64>,
}

type Poly = Vec<u64>;

fn poly_trim(mut a: Poly) -> Poly {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    out
}

/// Remainder modulo an arbitrary nonzero polynomial.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let m = poly_trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm] as i128, p as i128).expect("leading coefficient is a unit") as u64;
    let mut r = poly_trim(a.to_vec());
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let shift = r.len() - 1 - dm;
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        for (j, &y) in m.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - mul_mod(c, y, p)) % p;
        }
        r = poly_trim(r);
        if dm == 0 {
            return vec![0];
        }
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let (mut a, mut b) = (poly_trim(a.to_vec()), poly_trim(b.to_vec()));
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let t = f.len() - 1;
    let x: Poly = vec![0, 1];
    let q = |k: usize| (p as u128).pow(k as u32);
    if poly_powmod(&x, q(t), f, p) != poly_rem(&x, f, p) {
        return false;
    }
    for (r, _) in factorize(t as u64) {
        let mut h = poly_powmod(&x, q(t / r as usize), f, p);
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        let g = poly_gcd(&h, f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn x_is_primitive(f: &[u64], p: u64) -> bool {
    let t = f.len() - 1;
    let order = (p as u128).pow(t as u32) - 1;
    let x: Poly = vec![0, 1];
    factorize_u128(order)
        .into_iter()
        .all(|r| poly_powmod(&x, order / r, f, p) != vec![1])
}

fn factorize_u128(n: u128) -> Vec<u128> {
    if let Ok(small) = u64::try_from(n) {
        return factorize(small).into_iter().map(|(p, _)| p as u128).collect();
    }
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = factorize(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&(r, _)| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("every prime has a primitive root")
}

type FieldCache = RwLock<HashMap<(u64, u32), Arc<FiniteField>>>;

static FIELDS: OnceLock<FieldCache> = OnceLock::new();

impl FiniteField {
    /// The deterministic model of F_{p^t}; results are cached per (p, t).
    pub fn get(p: u64, t: u32) -> Arc<FiniteField> {
        let cache = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(f) = cache.read().unwrap().get(&(p, t)) {
            return Arc::clone(f);
        }
        let built = Arc::new(Self::build(p, t));
        cache
            .write()
            .unwrap()
            .entry((p, t))
            .or_insert(built)
            .clone()
    }

    fn build(p: u64, t: u32) -> Self {
        assert!(t >= 1);
        if t == 1 {
            let g = smallest_primitive_root(p);
            return FiniteField {
                p,
                t,
                modulus: vec![(p - g) % p, 1],
            };
        }
        let t = t as usize;
        let mut coeffs = vec![0u64; t];
        loop {
            // odometer over (c_0, …, c_{t-1}), c_0 least significant
            let mut i = 0;
            loop {
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
                assert!(i < t, "no primitive polynomial found");
            }
            if coeffs[0] == 0 {
                continue;
            }
            let mut f = coeffs.clone();
            f.push(1);
            if is_irreducible(&f, p) && x_is_primitive(&f, p) {
                return FiniteField {
                    p,
                    t: t as u32,
                    modulus: f,
                };
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.t
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.t)
    }

    /// The defining polynomial, lowest degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn reduce_poly(&self, a: Poly) -> Vec<u64> {
        let mut r = poly_rem(&a, &self.modulus, self.p);
        r.resize(self.t as usize, 0);
        r
    }
}

/// An element of F_{p^t}, as coordinates in the basis 1, x, …, x^{t-1}.
#[derive(Clone, Debug)]
pub struct FpElement {
    field: Arc<FiniteField>,
    coords: Vec<u64>,
}

impl FpElement {
    pub fn zero(field: &Arc<FiniteField>) -> Self {
        FpElement {
            field: Arc::clone(field),
            coords: vec![0; field.t as usize],
        }
    }

    pub fn from_int(field: &Arc<FiniteField>, c: u64) -> Self {
        let mut e = Self::zero(field);
        e.coords[0] = c % field.p;
        e
    }

    pub fn one(field: &Arc<FiniteField>) -> Self {
        Self::from_int(field, 1)
    }

    /// The fixed multiplicative generator (the class of x).
    pub fn generator(field: &Arc<FiniteField>) -> Self {
        let coords = field.reduce_poly(vec![0, 1]);
        FpElement {
            field: Arc::clone(field),
            coords,
        }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.field.p;
        FpElement {
            field: Arc::clone(&self.field),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p;
        FpElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|&a| (p - a) % p).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prod = poly_mul(&self.coords, &other.coords, self.field.p);
        FpElement {
            field: Arc::clone(&self.field),
            coords: self.field.reduce_poly(prod),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.field.p;
        FpElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|&a| mul_mod(a, c % p, p)).collect(),
        }
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut acc = Self::one(&self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(self.pow(self.field.order() - 2))
    }
}

impl PartialEq for FpElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
            && self.coords == other.coords
    }
}

impl Eq for FpElement {}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.t == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The reduction map Z_(p)[ζ_n] → F_{p^t}: writing n = p^a·m with p ∤ m, ζ_{p^a} ↦ 1 and
/// ζ_m ↦ g^((q-1)/m) for the fixed generator g of F_q, q = p^t, t = ord_m(p).
///
/// Any value whose modulus divides `n` can be reduced, and reductions of such values are
/// mutually consistent (the map is one ring homomorphism on Z_(p)[ζ_n]).
#[derive(Clone, Debug)]
pub struct PrimeReduction {
    p: u64,
    n: u32,
    field: Arc<FiniteField>,
    /// image of ζ_n^j for 0 ≤ j < n
    zeta_images: Vec<FpElement>,
}

impl PrimeReduction {
    pub fn new(n: u32, p: u64) -> Self {
        let n = super::fold_even_modulus(n, 0).0;
        let pa = p_part(n as u64, p);
        let m = n as u64 / pa;
        let t = multiplicative_order(p % m.max(2), m) as u32;
        let t = t.max(1);
        let field = FiniteField::get(p, t);
        let g = FpElement::generator(&field);
        let h = g.pow((field.order() - 1) / m as u128);
        // ζ_n = ζ_{p^a}^u · ζ_m^v with v ≡ (p^a)^{-1} (mod m)
        let v = if m == 1 {
            0
        } else {
            inv_mod(pa as i128, m as i128).unwrap() as u128
        };
        let z = h.pow(v);
        let mut zeta_images = Vec::with_capacity(n as usize);
        let mut cur = FpElement::one(&field);
        for _ in 0..n {
            zeta_images.push(cur.clone());
            cur = cur.mul(&z);
        }
        PrimeReduction {
            p,
            n,
            field,
            zeta_images,
        }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn reduce(&self, z: &Cyclotomic) -> Result<FpElement, CycloError> {
        if !self.n.is_multiple_of(z.modulus()) {
            return Err(CycloError::ModulusMismatch {
                value: z.modulus(),
                target: self.n,
            });
        }
        let step = (self.n / z.modulus()) as usize;
        let mut acc = FpElement::zero(&self.field);
        for (i, c) in z.terms() {
            let c = rational_mod_p(c, self.p).ok_or(CycloError::NotPIntegral { p: self.p })?;
            acc = acc.add(&self.zeta_images[i as usize * step].scale(c));
        }
        Ok(acc)
    }
}

/// Reduction of a single value through the field attached to its own modulus.
pub fn reduce_mod_p(z: &Cyclotomic, p: u64) -> Result<FpElement, CycloError> {
    PrimeReduction::new(z.modulus(), p).reduce(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields_use_smallest_primitive_root() {
        let f = FiniteField::get(7, 1);
        assert_eq!(FpElement::generator(&f).coords(), &[3]);
        let f = FiniteField::get(2, 1);
        assert_eq!(FpElement::generator(&f).coords(), &[1]);
    }

    #[test]
    fn f4_modulus_and_generator_order() {
        let f = FiniteField::get(2, 2);
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let g = FpElement::generator(&f);
        assert_ne!(g.pow(1), FpElement::one(&f));
        assert_eq!(g.pow(3), FpElement::one(&f));
    }

    #[test]
    fn generator_has_full_order() {
        for (p, t) in [(2u64, 3u32), (2, 4), (3, 2), (3, 3), (5, 2), (2, 10), (2, 23)] {
            let f = FiniteField::get(p, t);
            let g = FpElement::generator(&f);
            let q1 = f.order() - 1;
            assert_eq!(g.pow(q1), FpElement::one(&f));
            for r in factorize_u128(q1) {
                assert_ne!(g.pow(q1 / r), FpElement::one(&f), "p={p} t={t}");
            }
        }
    }

    #[test]
    fn inverses() {
        let f = FiniteField::get(3, 3);
        let g = FpElement::generator(&f);
        for k in 0..26u128 {
            let a = g.pow(k);
            assert_eq!(a.mul(&a.inverse().unwrap()), FpElement::one(&f));
        }
        assert!(FpElement::zero(&f).inverse().is_none());
    }
}
