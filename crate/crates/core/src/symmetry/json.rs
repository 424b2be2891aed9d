//! `{"nvars": n, "generators": [[["p/q", ...], ...], ...]}`

use super::{make_group, GroupAction, SymmetryError};
use crate::linalg::QMatrix;
use crate::rational::{format_rational, parse_rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub nvars: usize,
    pub generators: Vec<Vec<Vec<serde_json::Value>>>,
}

impl GroupJson {
    pub fn from_group(g: &GroupAction) -> Self {
        let generators = g
            .generators()
            .iter()
            .map(|m| m.to_rows().iter().map(|r| r.iter().map(|x| format_rational(x).into()).collect()).collect())
            .collect();
        GroupJson { nvars: g.nvars(), generators }
    }

    pub fn matrices(&self) -> Result<Vec<QMatrix>, String> {
        self.generators
            .iter()
            .map(|m| {
                if m.len() != self.nvars || m.iter().any(|r| r.len() != self.nvars) {
                    return Err(format!("generator is not {0}x{0}", self.nvars));
                }
                let rows = m
                    .iter()
                    .map(|r| r.iter().map(value_to_rational).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(QMatrix::from_rows(rows))
            })
            .collect()
    }

    pub fn build(&self) -> Result<GroupAction, SymmetryError> {
        if self.generators.is_empty() {
            return Ok(GroupAction::trivial(self.nvars));
        }
        let gens = self.matrices().map_err(SymmetryError::Verification)?;
        make_group(&gens)
    }
}

fn value_to_rational(v: &serde_json::Value) -> Result<crate::rational::Rational, String> {
    match v {
        serde_json::Value::String(s) => parse_rational(s).ok_or_else(|| format!("bad rational {s:?}")),
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(crate::rational::q)
            .ok_or_else(|| format!("matrix entries must be integers or \"p/q\" strings, got {n}")),
        other => Err(format!("bad matrix entry {other}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let j: GroupJson = serde_json::from_str(r#"{"nvars":2,"generators":[[["0","-1"],["1","0"]],[[0,1],[1,0]]]}"#).unwrap();
        let g = j.build().unwrap();
        assert_eq!(g.order(), 8);
        let back = GroupJson::from_group(&g);
        assert_eq!(back.build().unwrap().order(), 8);
        assert!(serde_json::from_str::<GroupJson>(r#"{"nvars":1,"generators":[[["1/0"]]]}"#).unwrap().build().is_err());
    }
}
