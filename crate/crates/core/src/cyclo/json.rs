//! Interchange form `{"n": modulus, "terms": [[exponent, "num/den"], ...]}`.

use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CycloError, Cyclotomic};

#[derive(Serialize, Deserialize)]
struct Wire {
    n: u32,
    terms: Vec<(i64, String)>,
}

/// Parses `"a/b"` or `"a"`.
pub fn parse_rational(s: &str) -> Result<BigRational, CycloError> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num = num_bigint::BigInt::from_str(num.trim())
            .map_err(|_| CycloError::Malformed(format!("bad numerator in {s:?}")))?;
        let den = num_bigint::BigInt::from_str(den.trim())
            .map_err(|_| CycloError::Malformed(format!("bad denominator in {s:?}")))?;
        if den == num_bigint::BigInt::from(0) {
            return Err(CycloError::Malformed(format!("zero denominator in {s:?}")));
        }
        Ok(BigRational::new(num, den))
    } else {
        num_bigint::BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|_| CycloError::Malformed(format!("bad rational {s:?}")))
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Wire {
            n: self.n,
            terms: self
                .terms()
                .map(|(i, c)| (i as i64, format_rational(c)))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = Wire::deserialize(deserializer)?;
        if wire.n == 0 {
            return Err(D::Error::custom("cyclotomic modulus must be positive"));
        }
        let mut terms = Vec::with_capacity(wire.terms.len());
        for (e, c) in wire.terms {
            terms.push((e, parse_rational(&c).map_err(D::Error::custom)?));
        }
        Ok(Cyclotomic::normalize(wire.n, terms))
    }
}
