use serde::{Deserialize, Serialize};

use super::{MvfError, PolyMVF};
use crate::polyalg::Poly;

/// Wire form of a [`PolyMVF`]. Indices are 1-based; `weights` defaults to
/// all ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MvfJson {
    pub nvars: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u8>>,
    pub grade: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub indices: Vec<usize>,
    pub poly: String,
}

impl PolyMVF {
    pub fn to_json(&self) -> MvfJson {
        MvfJson {
            nvars: self.nvars,
            weights: Some(self.weights.clone()),
            grade: self.grade,
            terms: self
                .terms
                .iter()
                .map(|(idx, p)| TermJson {
                    indices: idx.iter().map(|i| i + 1).collect(),
                    poly: p.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &MvfJson) -> Result<PolyMVF, MvfError> {
        let weights = j.weights.clone().unwrap_or_else(|| vec![1; j.nvars]);
        if weights.len() != j.nvars || weights.iter().any(|&w| w > 1) {
            return Err(MvfError::InvalidWeights(weights));
        }
        let mut out = PolyMVF::zero(j.nvars, weights, j.grade);
        let mut seen = std::collections::BTreeSet::new();
        for (t, term) in j.terms.iter().enumerate() {
            if term.indices.len() != j.grade {
                return Err(MvfError::WrongLength { term: t, expected: j.grade, got: term.indices.len() });
            }
            if let Some(&bad) = term.indices.iter().find(|&&i| i == 0 || i > j.nvars) {
                return Err(MvfError::IndexOutOfRange { term: t, index: bad, nvars: j.nvars });
            }
            if term.indices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(MvfError::NotIncreasing { term: t, indices: term.indices.clone() });
            }
            if !seen.insert(term.indices.clone()) {
                return Err(MvfError::RepeatedTuple { term: t, indices: term.indices.clone() });
            }
            let p = Poly::parse(&term.poly, j.nvars).map_err(|source| MvfError::Poly { term: t, source })?;
            out.add_term(term.indices.iter().map(|i| i - 1).collect(), p);
        }
        Ok(out)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<PolyMVF, MvfError> {
        let j: MvfJson = serde_json::from_str(s).map_err(|e| MvfError::Json(e.to_string()))?;
        Self::from_json(&j)
    }
}
