//! Exact numbers in JSON: integers that fit in 64 bits are emitted as
//! numbers, larger ones as decimal strings; rationals as `{num, den}`.

use std::fmt;
use std::str::FromStr;

use goss_core::{BigRational, BigUint};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Int(pub BigInt);

impl From<&BigUint> for Int {
    fn from(n: &BigUint) -> Self {
        Int(BigInt::from(n.clone()))
    }
}

impl From<BigUint> for Int {
    fn from(n: BigUint) -> Self {
        Int(n.into())
    }
}

impl From<u64> for Int {
    fn from(n: u64) -> Self {
        Int(n.into())
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if let Some(v) = self.0.to_u64() {
            s.serialize_u64(v)
        } else if let Some(v) = self.0.to_i64() {
            s.serialize_i64(v)
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        BigInt::from_str(v).map(Int).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rat {
    pub num: Int,
    pub den: Int,
}

impl From<&BigRational> for Rat {
    fn from(r: &BigRational) -> Self {
        Rat { num: Int(r.numer().clone()), den: Int(r.denom().clone()) }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.0 == BigInt::from(1) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

pub fn ints<'a>(v: impl IntoIterator<Item = &'a BigUint>) -> Vec<Int> {
    v.into_iter().map(Int::from).collect()
}
