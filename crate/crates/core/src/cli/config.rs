use std::fmt;
use std::path::Path;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cohomology::CohomologyAction;
use crate::dynamics::Convention;
use crate::error::{Error, Result};
use crate::exactlinalg::{IntMatrix, MAX_PRECISION};

/// Suspension scale: a real number or the token `"e"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scale {
    E,
    Value(f64),
}

impl Scale {
    pub fn value(self) -> f64 {
        match self {
            Scale::E => std::f64::consts::E,
            Scale::Value(r) => r,
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scale::E => write!(f, "e"),
            Scale::Value(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for Scale {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scale::E => s.serialize_str("e"),
            Scale::Value(r) => s.serialize_f64(*r),
        }
    }
}

impl<'de> Deserialize<'de> for Scale {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Scale;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a number or the string \"e\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Scale, E> {
                Ok(Scale::Value(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Scale, E> {
                Ok(Scale::Value(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Scale, E> {
                Ok(Scale::Value(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Scale, E> {
                match v.trim() {
                    "e" => Ok(Scale::E),
                    t => t.parse().map(Scale::Value).map_err(|_| E::custom(format!("bad scale {v:?}"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FiberConfig {
    Toral { matrix: IntMatrix },
    Explicit { d: usize, betti: Vec<usize>, matrices: Vec<IntMatrix> },
}

fn default_precision() -> u32 {
    12
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub fiber: FiberConfig,
    pub r: Scale,
    #[serde(default)]
    pub convention: Convention,
    #[serde(default = "default_precision")]
    pub precision: u32,
}

impl SystemConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("config: {e}")))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn check(&self) -> Result<()> {
        let r = self.r.value();
        if !(r > 1.0 && r.is_finite()) {
            return Err(Error::InvalidParameter(format!("config: r = {r} must be > 1")));
        }
        if self.precision == 0 || self.precision > MAX_PRECISION {
            return Err(Error::PrecisionUnsupported(self.precision));
        }
        Ok(())
    }

    pub fn r(&self) -> f64 {
        self.r.value()
    }

    pub fn toral_matrix(&self) -> Option<&IntMatrix> {
        match &self.fiber {
            FiberConfig::Toral { matrix } => Some(matrix),
            FiberConfig::Explicit { .. } => None,
        }
    }

    pub fn action(&self) -> Result<CohomologyAction> {
        match &self.fiber {
            FiberConfig::Toral { matrix } => CohomologyAction::from_toral(matrix),
            FiberConfig::Explicit { d, betti, matrices } => {
                CohomologyAction::from_explicit(*d, betti.clone(), matrices.clone())
            }
        }
    }
}
