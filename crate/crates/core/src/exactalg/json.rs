use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::vlaurent::{format_rational, parse_rational};
use super::{SymLaurent, VLaurent};
use crate::error::{Error, Result};

/// JSON form of a [`VLaurent`]: `{"<v exponent>": "num/den"}`.
pub type VLaurentJson = BTreeMap<String, String>;

/// One term of the canonical JSON form of a [`SymLaurent`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymTermJson {
    pub exponents: Vec<i32>,
    pub coeff: VLaurentJson,
}

impl VLaurent {
    pub fn to_json(&self) -> VLaurentJson {
        self.terms()
            .map(|(e, c)| (e.to_string(), format_rational(c)))
            .collect()
    }

    pub fn from_json(map: &VLaurentJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(map.len());
        for (e, c) in map {
            let e: i32 = e
                .parse()
                .map_err(|err| Error::Parse(format!("bad v exponent {e:?}: {err}")))?;
            terms.push((e, parse_rational(c)?));
        }
        Ok(Self::from_terms(terms))
    }
}

impl Serialize for VLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = VLaurentJson::deserialize(d)?;
        Self::from_json(&map).map_err(serde::de::Error::custom)
    }
}

impl SymLaurent {
    /// Terms in lexicographic exponent order.
    pub fn to_json(&self) -> Vec<SymTermJson> {
        self.terms()
            .map(|(e, c)| SymTermJson {
                exponents: e.to_vec(),
                coeff: c.to_json(),
            })
            .collect()
    }

    pub fn from_json(nvars: usize, terms: &[SymTermJson]) -> Result<Self> {
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            parsed.push((t.exponents.clone(), VLaurent::from_json(&t.coeff)?));
        }
        Self::from_terms(nvars, parsed)
    }
}

impl Serialize for SymLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Serde adapter writing a list of rationals as `"num/den"` strings.
pub mod rational_vec {
    use super::super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn vlaurent_round_trip() {
        let a = VLaurent::from_terms([(-3, rat(2, 7)), (0, rat(-1, 1)), (4, rat(5, 1))]);
        let text = serde_json::to_string(&a).unwrap();
        let b: VLaurent = serde_json::from_str(&text).unwrap();
        assert_eq!(a, b);
        assert!(serde_json::from_str::<VLaurent>(r#"{"x": "1/1"}"#).is_err());
    }

    #[test]
    fn sym_canonical_order() {
        let a = SymLaurent::var(2, 1) + SymLaurent::var(2, 0) + SymLaurent::one(2);
        let json = a.to_json();
        let exps: Vec<_> = json.iter().map(|t| t.exponents.clone()).collect();
        assert_eq!(exps, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(SymLaurent::from_json(2, &json).unwrap(), a);
        assert_eq!(
            serde_json::to_string(&SymLaurent::one(1)).unwrap(),
            r#"[{"exponents":[0],"coeff":{"0":"1/1"}}]"#
        );
        assert!(SymLaurent::from_json(3, &json).is_err());
    }
}
