//! The on-disk polytope document: dimension plus vertex and/or inequality
//! lists, with every rational written as a string "p" or "p/q".

use polyadj_core::polytope::{LinearForm, Polytope};
use polyadj_core::{Error, Rat, Result};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Debug, Serialize, Deserialize)]
pub struct PolytopeDocument {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<Vec<String>>>,
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim()).map_err(|e| Error::InvalidInput(format!("bad rational {s:?}: {e}")))
}

fn parse_rows(rows: &[Vec<String>]) -> Result<Vec<Vec<Rat>>> {
    rows.iter()
        .map(|row| row.iter().map(|s| parse_rat(s)).collect())
        .collect()
}

impl PolytopeDocument {
    pub fn from_json(text: &str) -> Result<PolytopeDocument> {
        let doc: PolytopeDocument = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("bad document: {e}")))?;
        if doc.vertices.is_none() && doc.inequalities.is_none() {
            return Err(Error::InvalidInput(
                "document needs vertices or inequalities".into(),
            ));
        }
        Ok(doc)
    }

    pub fn to_polytope(&self) -> Result<Polytope> {
        let vertices = match &self.vertices {
            Some(rows) => Some(parse_rows(rows)?),
            None => None,
        };
        let facets = match &self.inequalities {
            Some(rows) => {
                let parsed = parse_rows(rows)?;
                Some(
                    parsed
                        .into_iter()
                        .map(LinearForm::new)
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            None => None,
        };
        match (vertices, facets) {
            (Some(v), Some(f)) => Polytope::from_both(self.dim, v, f),
            (Some(v), None) => Polytope::from_vertices(self.dim, v),
            (None, Some(f)) => Polytope::from_inequalities(self.dim, f),
            (None, None) => unreachable!("validated in from_json"),
        }
    }

    pub fn from_polytope(p: &Polytope) -> PolytopeDocument {
        PolytopeDocument {
            dim: p.dim(),
            vertices: Some(
                p.vertices()
                    .iter()
                    .map(|v| v.iter().map(|x| x.to_string()).collect())
                    .collect(),
            ),
            inequalities: Some(
                p.facets()
                    .iter()
                    .map(|f| f.coeffs().iter().map(|x| x.to_string()).collect())
                    .collect(),
            ),
        }
    }
}
