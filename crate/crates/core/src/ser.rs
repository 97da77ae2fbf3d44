//! Serde adapters writing rationals as `"p/q"` strings.

pub mod rat {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rat;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        super::value_to_rat(&v).map_err(serde::de::Error::custom)
    }
}

pub mod rat_vec {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rat;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let v = Vec::<serde_json::Value>::deserialize(d)?;
        v.iter()
            .map(super::value_to_rat)
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}

/// Accepts integers, `"p/q"` strings and (exactly representable) decimals.
pub fn value_to_rat(v: &serde_json::Value) -> Result<crate::Rat, String> {
    match v {
        serde_json::Value::String(s) => {
            crate::algebra::parse_rat(s).map_err(|e| format!("bad rational '{}': {}", s, e))
        }
        serde_json::Value::Number(n) => crate::algebra::parse_rat(&n.to_string())
            .map_err(|e| format!("bad rational {}: {}", n, e)),
        other => Err(format!("expected a rational, got {}", other)),
    }
}
