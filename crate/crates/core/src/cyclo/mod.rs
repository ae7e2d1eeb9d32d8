//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! Elements are stored in the power basis {ζ_n^j : 0 ≤ j < φ(n)} with rational coefficients.
//! Moduli are kept off the residue class 2 mod 4 (Q(ζ_2m) = Q(ζ_m) for odd m) and rational
//! values always carry modulus 1, so two equal values with the same modulus have identical
//! coefficient vectors.

mod basis;
mod field;
mod json;
pub use json::{format_rational, parse_rational};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{gcd, lcm};

pub use field::{reduce_mod_p, FiniteField, FpElement, PrimeReduction};
pub(crate) use field::smallest_primitive_root;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{k} is not coprime to the modulus {n}")]
    NotCoprime { k: i64, n: u32 },
    #[error("value is not {p}-integral: a coefficient denominator is divisible by {p}")]
    NotPIntegral { p: u64 },
    #[error("modulus {value} does not divide the reduction modulus {target}")]
    ModulusMismatch { value: u32, target: u32 },
    #[error("malformed cyclotomic: {0}")]
    Malformed(String),
}

/// An element of Q(ζ_n) in canonical power-basis form.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u32,
    coeffs: Vec<BigRational>,
}

fn rat(i: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

/// Rewrites `n ≡ 2 (mod 4)` exponents onto modulus `n / 2`, using ζ_2m = -ζ_m^((m+1)/2).
fn fold_even_modulus(n: u32, exp: i64) -> (u32, i64, bool) {
    if n % 4 == 2 {
        let m = (n / 2) as i64;
        let e = exp.rem_euclid(n as i64);
        let odd = e % 2 == 1;
        (m as u32, (e * ((m + 1) / 2)).rem_euclid(m.max(1)), odd)
    } else {
        (n, exp.rem_euclid(n as i64), false)
    }
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            n: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(i: i64) -> Self {
        Cyclotomic {
            n: 1,
            coeffs: vec![rat(i as i128)],
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic {
            n: 1,
            coeffs: vec![q],
        }
    }

    /// ζ_n^k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        Self::normalize(n, [(k, BigRational::one())])
    }

    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// Builds the canonical form of Σ c·ζ_n^e from arbitrary integer exponents.
    pub fn normalize<I>(n: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        assert!(n >= 1, "cyclotomic modulus must be positive");
        let folded_n = fold_even_modulus(n, 0).0;
        let mut acc = vec![BigRational::zero(); folded_n as usize];
        for (e, c) in terms {
            let (_, e, negate) = fold_even_modulus(n, e);
            let slot = &mut acc[e as usize];
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::reduce_big(folded_n, &acc)
    }

    /// Reduces an exponent vector indexed by 0..n modulo Φ_n.
    fn reduce_big(n: u32, acc: &[BigRational]) -> Self {
        debug_assert_eq!(acc.len(), n as usize);
        let b = basis::basis(n);
        let mut out = vec![BigRational::zero(); b.phi];
        for (k, c) in acc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(idx, m) in &b.powers[k] {
                out[idx as usize] += c * rat(m as i128);
            }
        }
        Self::from_reduced(n, out)
    }

    fn reduce_small(n: u32, acc: &[i128]) -> Option<Self> {
        let b = basis::basis(n);
        let mut out = vec![0i128; b.phi];
        for (k, &c) in acc.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(idx, m) in &b.powers[k] {
                let slot = &mut out[idx as usize];
                *slot = slot.checked_add(c.checked_mul(m as i128)?)?;
            }
        }
        Some(Self::from_reduced(n, out.into_iter().map(rat).collect()))
    }

    fn from_reduced(n: u32, coeffs: Vec<BigRational>) -> Self {
        if n > 1 && coeffs.iter().skip(1).all(Zero::is_zero) {
            let c0 = coeffs.into_iter().next().unwrap();
            return Cyclotomic {
                n: 1,
                coeffs: vec![c0],
            };
        }
        Cyclotomic { n, coeffs }
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    /// Power-basis coefficients, length φ(modulus).
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Nonzero `(exponent, coefficient)` pairs of the power-basis representation.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c))
    }

    fn small_terms(&self) -> Option<Vec<(u32, i128)>> {
        let mut out = Vec::new();
        for (i, c) in self.terms() {
            if !c.is_integer() {
                return None;
            }
            let v = c.numer().to_i64()?;
            out.push((i, v as i128));
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|i| i.to_i64())
    }

    /// Integer coefficients in the power basis, i.e. membership in Z[ζ_n].
    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Representation of the same value over a multiple `m` of the current modulus.
    pub fn lift(&self, m: u32) -> Self {
        assert!(
            m.is_multiple_of(self.n),
            "cannot lift modulus {} to {}",
            self.n,
            m
        );
        let m = fold_even_modulus(m, 0).0;
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let mut acc = vec![BigRational::zero(); m as usize];
        for (i, c) in self.terms() {
            acc[i as usize * step] = c.clone();
        }
        // keep the lifted form even when it happens to be rational
        let b = basis::basis(m);
        let mut out = vec![BigRational::zero(); b.phi];
        for (k, c) in acc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(idx, mm) in &b.powers[k] {
                out[idx as usize] += c * rat(mm as i128);
            }
        }
        Cyclotomic { n: m, coeffs: out }
    }

    fn combine(&self, other: &Self, sign: i128) -> Self {
        let n = lcm(self.n as u64, other.n as u64) as u32;
        let mut acc = vec![BigRational::zero(); n as usize];
        let (sa, sb) = ((n / self.n) as usize, (n / other.n) as usize);
        for (i, c) in self.terms() {
            acc[i as usize * sa] += c;
        }
        for (i, c) in other.terms() {
            if sign > 0 {
                acc[i as usize * sb] += c;
            } else {
                acc[i as usize * sb] -= c;
            }
        }
        if n == self.n && n == other.n {
            // already reduced
            return Self::from_reduced(n, acc.into_iter().take(basis::basis(n).phi).collect());
        }
        Self::reduce_big(n, &acc)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&rat(k as i128))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycloError> {
        if other.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(q) = other.to_rational() {
            return Ok(self.scale(&q.recip()));
        }
        Ok(self * &other.inverse_nonrational())
    }

    pub fn inverse(&self) -> Result<Self, CycloError> {
        Self::one().checked_div(self)
    }

    /// Inverse through the extended Euclidean algorithm against Φ_n over Q[x].
    fn inverse_nonrational(&self) -> Self {
        let phi_n: Vec<BigRational> = basis::basis(self.n)
            .poly
            .iter()
            .map(|&c| rat(c as i128))
            .collect();
        let a = trim(self.coeffs.clone());
        let (g, s) = poly_ext_gcd(a, trim(phi_n));
        // g is a nonzero constant because Φ_n is irreducible and a ≢ 0 mod Φ_n
        debug_assert_eq!(g.len(), 1);
        let inv_g = g[0].recip();
        let mut acc = vec![BigRational::zero(); self.n as usize];
        for (i, c) in s.into_iter().enumerate() {
            acc[i % self.n as usize] += c * &inv_g;
        }
        Self::reduce_big(self.n, &acc)
    }

    /// σ_k : ζ_n ↦ ζ_n^k.
    pub fn galois(&self, k: i64) -> Result<Self, CycloError> {
        let n = self.n as i64;
        if gcd(k.rem_euclid(n) as u64, n as u64) != 1 {
            return Err(CycloError::NotCoprime { k, n: self.n });
        }
        Ok(self.galois_unchecked(k))
    }

    fn galois_unchecked(&self, k: i64) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        let n = self.n as i64;
        let k = k.rem_euclid(n);
        if let Some(small) = self.small_terms() {
            let mut acc = vec![0i128; n as usize];
            for (i, c) in small {
                acc[((i as i64 * k) % n) as usize] += c;
            }
            if let Some(z) = Self::reduce_small(self.n, &acc) {
                return z;
            }
        }
        let mut acc = vec![BigRational::zero(); n as usize];
        for (i, c) in self.terms() {
            acc[((i as i64 * k) % n) as usize] += c;
        }
        Self::reduce_big(self.n, &acc)
    }

    /// Complex conjugate, σ_{-1}.
    pub fn conj(&self) -> Self {
        self.galois_unchecked(-1)
    }

    /// Smallest d with this value in Q(ζ_d), never ≡ 2 (mod 4).
    pub fn conductor(&self) -> u64 {
        if self.n == 1 {
            return 1;
        }
        let n = self.n as u64;
        let units = crate::arith::units(n);
        for d in crate::arith::divisors(n) {
            let fixed = units
                .iter()
                .filter(|&&k| k % d == 1 % d)
                .all(|&k| &self.galois_unchecked(k as i64) == self);
            if fixed {
                return if d % 4 == 2 { d / 2 } else { d };
            }
        }
        unreachable!("the full modulus always fixes the value")
    }

    /// Floating-point approximation for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let (mut re, mut im) = (0.0, 0.0);
        for (i, c) in self.terms() {
            let angle = 2.0 * std::f64::consts::PI * i as f64 / self.n as f64;
            let v = c.to_f64().unwrap_or(f64::NAN);
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    // a - q*b
    let len = a.len().max(q.len() + b.len() - 1);
    let mut out = vec![BigRational::zero(); len];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, x) in q.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (vec![BigRational::zero()], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] / &lead;
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                rem[i + j] -= &c * y;
            }
        }
        quot[i] = c;
    }
    rem.truncate(db.max(1));
    (trim(quot), trim(rem))
}

/// Returns (g, s) with s·a ≡ g (mod b), g = gcd(a, b).
fn poly_ext_gcd(a: Vec<BigRational>, b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (vec![BigRational::one()], vec![BigRational::zero()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub_mul(&s0, &q, &s1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    (r0, s0)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        let m = lcm(self.n as u64, other.n as u64) as u32;
        self.lift(m).coeffs == other.lift(m).coeffs
    }
}

impl Eq for Cyclotomic {}

impl From<i64> for Cyclotomic {
    fn from(i: i64) -> Self {
        Self::from_integer(i)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.combine(rhs, 1)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.combine(rhs, -1)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let mut acc = ProductSum::new(lcm(self.n as u64, rhs.n as u64) as u32);
        acc.add_product(1, self, rhs, false);
        acc.finish()
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

/// Accumulates Σ w·a·b (optionally with b conjugated) in unreduced exponent form and
/// reduces once at the end. Integral inputs stay in machine integers.
pub(crate) struct ProductSum {
    n: u32,
    small: Vec<i128>,
    big: Option<Vec<BigRational>>,
}

impl ProductSum {
    pub(crate) fn new(n: u32) -> Self {
        let n = fold_even_modulus(n, 0).0;
        ProductSum {
            n,
            small: vec![0; n as usize],
            big: None,
        }
    }

    fn go_big(&mut self) -> &mut Vec<BigRational> {
        if self.big.is_none() {
            let big = self.small.iter().map(|&c| rat(c)).collect();
            self.small.iter_mut().for_each(|c| *c = 0);
            self.big = Some(big);
        }
        self.big.as_mut().unwrap()
    }

    fn exponent(&self, value_n: u32, i: u32) -> usize {
        assert!(
            self.n.is_multiple_of(value_n),
            "modulus {} does not divide accumulator modulus {}",
            value_n,
            self.n
        );
        (i * (self.n / value_n)) as usize
    }

    pub(crate) fn add_product(&mut self, weight: i64, a: &Cyclotomic, b: &Cyclotomic, conj_b: bool) {
        if self.big.is_none() {
            if let (Some(sa), Some(sb)) = (a.small_terms(), b.small_terms()) {
                if self.try_add_small(weight, (a.n, &sa), (b.n, &sb), conj_b) {
                    return;
                }
            }
        }
        let n = self.n as usize;
        let w = rat(weight as i128);
        let pa: Vec<(usize, BigRational)> = a
            .terms()
            .map(|(i, c)| (self.exponent(a.n, i), c * &w))
            .collect();
        let pb: Vec<(usize, BigRational)> = b
            .terms()
            .map(|(j, c)| (self.exponent(b.n, j), c.clone()))
            .collect();
        let big = self.go_big();
        for (ei, x) in &pa {
            for (ej, y) in &pb {
                let e = if conj_b { (ei + n - ej) % n } else { (ei + ej) % n };
                big[e] += x * y;
            }
        }
    }

    /// Adds the product in machine integers; leaves the accumulator untouched and returns
    /// false on overflow.
    fn try_add_small(
        &mut self,
        weight: i64,
        (an, sa): (u32, &[(u32, i128)]),
        (bn, sb): (u32, &[(u32, i128)]),
        conj_b: bool,
    ) -> bool {
        let n = self.n as usize;
        let mut terms = Vec::with_capacity(sa.len() * sb.len());
        for &(i, x) in sa {
            let ei = self.exponent(an, i);
            for &(j, y) in sb {
                let ej = self.exponent(bn, j);
                let e = if conj_b { (ei + n - ej) % n } else { (ei + ej) % n };
                match x.checked_mul(y).and_then(|t| t.checked_mul(weight as i128)) {
                    Some(t) => terms.push((e, t)),
                    None => return false,
                }
            }
        }
        for (done, &(e, t)) in terms.iter().enumerate() {
            match self.small[e].checked_add(t) {
                Some(v) => self.small[e] = v,
                None => {
                    for &(e2, t2) in &terms[..done] {
                        self.small[e2] -= t2;
                    }
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn finish(self) -> Cyclotomic {
        match self.big {
            Some(mut big) => {
                for (slot, &c) in big.iter_mut().zip(&self.small) {
                    if c != 0 {
                        *slot += rat(c);
                    }
                }
                Cyclotomic::reduce_big(self.n, &big)
            }
            None => Cyclotomic::reduce_small(self.n, &self.small).unwrap_or_else(|| {
                let big: Vec<BigRational> = self.small.iter().map(|&c| rat(c)).collect();
                Cyclotomic::reduce_big(self.n, &big)
            }),
        }
    }
}

impl fmt::Display for Cyclotomic {
    /// GAP-style notation: `E(n)^k` denotes ζ_n^k.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (i, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = if i == 0 {
                String::new()
            } else if i == 1 {
                format!("E({})", self.n)
            } else {
                format!("E({})^{}", self.n, i)
            };
            if i == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{unit}")?;
            } else {
                write!(f, "{abs}*{unit}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Exact value of a rational coefficient modulo a prime, if its denominator is a unit.
pub(crate) fn rational_mod_p(q: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb).to_u64().unwrap();
    if den == 0 {
        return None;
    }
    let num = q.numer().mod_floor(&pb).to_u64().unwrap();
    let inv = crate::arith::inv_mod(den as i128, p as i128)? as u64;
    Some(crate::arith::mul_mod(num, inv, p))
}
