//! Decimal-string serde for arbitrary-precision integers.
//!
//! Output is always a decimal string so no consumer truncates to 64 bits.
//! Input accepts either a JSON integer or a decimal string.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// `BigInt` wrapper with decimal-string serde.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decimal(pub BigInt);

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            I(i64),
            U(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::I(x) => Ok(Decimal(BigInt::from(x))),
            Raw::U(x) => Ok(Decimal(BigInt::from(x))),
            Raw::S(s) => BigInt::from_str(s.trim())
                .map(Decimal)
                .map_err(|e| de::Error::custom(format!("invalid integer {s:?}: {e}"))),
        }
    }
}

impl From<BigInt> for Decimal {
    fn from(x: BigInt) -> Self {
        Decimal(x)
    }
}

/// For `#[serde(with = "decimal::single")]` on a `BigInt` field.
pub mod single {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Decimal::deserialize(d).map(|x| x.0)
    }
}

/// For `#[serde(with = "decimal::vec")]` on a `Vec<BigInt>` field.
pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<Decimal>::deserialize(d)?.into_iter().map(|x| x.0).collect())
    }
}
