//! `{"nvars": n, "laurent": bool, "terms": [{"coef": "p/q", "exps": [...]}]}`

use super::{MonomialOrder, Poly};
use crate::rational::{format_rational, parse_rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(deserialize_with = "de_rational_string")]
    pub coef: String,
    pub exps: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    #[serde(default)]
    pub laurent: bool,
    pub terms: Vec<TermJson>,
}

/// Accepts `"p/q"` strings as well as bare JSON integers.
fn de_rational_string<'de, D: Deserializer<'de>>(d: D) -> Result<String, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        S(String),
        I(i64),
    }
    Ok(match Raw::deserialize(d)? {
        Raw::S(s) => s,
        Raw::I(i) => i.to_string(),
    })
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        // descending grevlex keeps the output stable and readable
        let terms = p
            .sorted_terms(&MonomialOrder::GrevLex)
            .into_iter()
            .map(|(m, c)| TermJson { coef: format_rational(c), exps: m.exps().to_vec() })
            .collect();
        PolyJson { nvars: p.nvars(), laurent: p.laurent(), terms }
    }
}

impl TryFrom<PolyJson> for Poly {
    type Error = String;

    fn try_from(j: PolyJson) -> Result<Self, String> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            let c = parse_rational(&t.coef).ok_or_else(|| format!("bad rational {:?}", t.coef))?;
            terms.push((c, t.exps));
        }
        let p = Poly::from_terms(j.nvars, terms).map_err(|e| e.to_string())?;
        if p.has_negative_exponents() && !j.laurent {
            return Err("negative exponent in a polynomial not flagged as Laurent".into());
        }
        Ok(if j.laurent { p.into_laurent() } else { p })
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        Poly::try_from(j).map_err(serde::de::Error::custom)
    }
}
