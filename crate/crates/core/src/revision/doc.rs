//! JSON description of a frame and fragment, and serde helpers for reports.

use super::frame::{AgencyFrame, FrameError, Property};
use super::sat::Domain;
use crate::syntax::{parse_formula, parse_term, Formula, ParseError};
use serde::{Deserialize, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt::Display;
use thiserror::Error;

pub fn display<T: Display, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

#[derive(Debug, Error)]
pub enum DocError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("`{text}`: {source}")]
    Parse { text: String, source: ParseError },
    #[error("relation key `{0}` is not an agent")]
    Agent(String),
    #[error("{0} seed systems for {1} worlds")]
    Seeds(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameDoc {
    pub agents: Vec<u64>,
    pub worlds: usize,
    /// Edge lists keyed by agent.
    #[serde(default)]
    pub relations: BTreeMap<String, Vec<(usize, usize)>>,
    /// Relation properties to close under after reading the edges.
    #[serde(default)]
    pub close_under: Vec<Property>,
    #[serde(default, rename = "U")]
    pub u_set: Vec<Vec<u64>>,
    #[serde(default, rename = "u")]
    pub u_fn: Vec<BTreeMap<String, u64>>,
    #[serde(default)]
    pub sentences: Vec<String>,
    #[serde(default = "default_cutoff")]
    pub cutoff: u64,
    #[serde(default)]
    pub pool: Vec<String>,
    /// One registered system per world for intensional seeds.
    #[serde(default)]
    pub seed_systems: Vec<String>,
}

fn default_cutoff() -> u64 {
    3
}

impl FrameDoc {
    pub fn from_json(text: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn frame(&self) -> Result<AgencyFrame, DocError> {
        let mut f = AgencyFrame::new(self.agents.clone(), self.worlds)?;
        for (k, edges) in &self.relations {
            let a = k.parse::<u64>().ok().and_then(|a| f.agent_index(a)).ok_or_else(|| DocError::Agent(k.clone()))?;
            for (x, y) in edges {
                f.add_edge(a, *x, *y)?;
            }
        }
        f.close_under(&self.close_under);
        for (w, s) in self.u_set.iter().enumerate().take(self.worlds) {
            f.u_set[w] = s.iter().copied().collect();
        }
        for (w, m) in self.u_fn.iter().enumerate().take(self.worlds) {
            for (k, v) in m {
                if let Ok(n) = k.parse::<u64>() {
                    f.u_fn[w].insert(n, *v);
                }
            }
        }
        Ok(f)
    }

    pub fn sentences(&self) -> Result<Vec<Formula>, DocError> {
        self.sentences
            .iter()
            .map(|s| parse_formula(s).map_err(|source| DocError::Parse { text: s.clone(), source }))
            .collect()
    }

    pub fn domain(&self) -> Result<Domain, DocError> {
        let pool = self
            .pool
            .iter()
            .map(|s| parse_term(s).map_err(|source| DocError::Parse { text: s.clone(), source }))
            .collect::<Result<_, _>>()?;
        Ok(Domain { cutoff: self.cutoff, pool })
    }

    pub fn seeds(&self) -> Result<Vec<String>, DocError> {
        if !self.seed_systems.is_empty() && self.seed_systems.len() != self.worlds {
            return Err(DocError::Seeds(self.seed_systems.len(), self.worlds));
        }
        Ok(self.seed_systems.clone())
    }
}

/// Fragment settings kept apart from the frame; present fields override the
/// frame document's.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FragmentDoc {
    #[serde(default)]
    pub sentences: Vec<String>,
    pub cutoff: Option<u64>,
    pub pool: Option<Vec<String>>,
}

impl FragmentDoc {
    pub fn from_json(text: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn apply(self, doc: &mut FrameDoc) {
        doc.sentences.extend(self.sentences);
        if let Some(c) = self.cutoff {
            doc.cutoff = c;
        }
        if let Some(p) = self.pool {
            doc.pool = p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_a_frame() {
        let text = r#"{"agents": [0, 1], "worlds": 2,
            "relations": {"0": [[0, 1]], "1": []}, "close_under": ["reflexive"],
            "U": [[0], []], "u": [{"0": 2}], "sentences": ["0 = 0"], "pool": ["S(0)"],
            "seed_systems": ["DCB", "KT"]}"#;
        let doc = FrameDoc::from_json(text).unwrap();
        let f = doc.frame().unwrap();
        assert!(f.related(0, 0, 1) && f.related(1, 1, 1));
        assert_eq!(f.u_at(0, 0), 2);
        assert!(f.u_set[0].contains(&0));
        assert_eq!(doc.sentences().unwrap().len(), 1);
        assert_eq!(doc.domain().unwrap().pool.len(), 1);
        let mut doc = doc;
        FragmentDoc::from_json(r#"{"sentences": ["U(0)"], "cutoff": 5}"#).unwrap().apply(&mut doc);
        assert_eq!((doc.sentences.len(), doc.cutoff, doc.pool.len()), (2, 5, 1));
        let bad = r#"{"agents": [0], "worlds": 1, "relations": {"7": [[0, 0]]}}"#;
        assert!(matches!(FrameDoc::from_json(bad).unwrap().frame(), Err(DocError::Agent(_))));
    }
}
