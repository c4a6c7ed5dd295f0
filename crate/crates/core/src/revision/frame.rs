//! Agency frames: worlds over the standard model, one accessibility relation
//! per agent, and per-world tables for `U` and `u`.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameError {
    #[error("an agency frame needs at least one agent")]
    NoAgents,
    #[error("an agency frame needs at least one world")]
    NoWorlds,
    #[error("world {0} is out of range")]
    World(usize),
    #[error("agent {0} is listed twice")]
    DuplicateAgent(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Reflexive,
    Transitive,
    Euclidean,
    LeftTotal,
}

impl Property {
    pub const ALL: [Property; 4] =
        [Property::Reflexive, Property::Transitive, Property::Euclidean, Property::LeftTotal];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgencyFrame {
    pub agents: Vec<u64>,
    pub worlds: usize,
    /// Successor sets, indexed like `agents`.
    pub succ: Vec<Vec<BTreeSet<usize>>>,
    /// Extension of `U` in each world.
    pub u_set: Vec<BTreeSet<u64>>,
    /// Non-default values of `u` in each world; elsewhere `u` is 0.
    pub u_fn: Vec<BTreeMap<u64, u64>>,
}

impl AgencyFrame {
    /// A frame with empty relations and empty tables.
    pub fn new(agents: Vec<u64>, worlds: usize) -> Result<Self, FrameError> {
        if agents.is_empty() {
            return Err(FrameError::NoAgents);
        }
        if worlds == 0 {
            return Err(FrameError::NoWorlds);
        }
        let mut seen = BTreeSet::new();
        if let Some(a) = agents.iter().find(|a| !seen.insert(**a)) {
            return Err(FrameError::DuplicateAgent(*a));
        }
        let n = agents.len();
        Ok(AgencyFrame {
            agents,
            worlds,
            succ: vec![vec![BTreeSet::new(); worlds]; n],
            u_set: vec![BTreeSet::new(); worlds],
            u_fn: vec![BTreeMap::new(); worlds],
        })
    }

    pub fn add_edge(&mut self, agent: usize, from: usize, to: usize) -> Result<(), FrameError> {
        for w in [from, to] {
            if w >= self.worlds {
                return Err(FrameError::World(w));
            }
        }
        self.succ[agent][from].insert(to);
        Ok(())
    }

    pub fn related(&self, agent: usize, a: usize, b: usize) -> bool {
        self.succ[agent][a].contains(&b)
    }

    pub fn agent_index(&self, alpha: u64) -> Option<usize> {
        self.agents.iter().position(|a| *a == alpha)
    }

    pub fn u_at(&self, w: usize, n: u64) -> u64 {
        self.u_fn[w].get(&n).copied().unwrap_or(0)
    }

    pub fn is_reflexive(&self, agent: usize) -> bool {
        (0..self.worlds).all(|w| self.related(agent, w, w))
    }

    pub fn is_transitive(&self, agent: usize) -> bool {
        (0..self.worlds).all(|a| {
            self.succ[agent][a].iter().all(|b| self.succ[agent][*b].iter().all(|c| self.related(agent, a, *c)))
        })
    }

    pub fn is_euclidean(&self, agent: usize) -> bool {
        (0..self.worlds).all(|a| {
            let s = &self.succ[agent][a];
            s.iter().all(|b| s.iter().all(|c| self.related(agent, *b, *c)))
        })
    }

    pub fn is_left_total(&self, agent: usize) -> bool {
        self.succ[agent].iter().all(|s| !s.is_empty())
    }

    pub fn has(&self, p: Property, agent: usize) -> bool {
        match p {
            Property::Reflexive => self.is_reflexive(agent),
            Property::Transitive => self.is_transitive(agent),
            Property::Euclidean => self.is_euclidean(agent),
            Property::LeftTotal => self.is_left_total(agent),
        }
    }

    /// The property holds for every agent.
    pub fn all(&self, p: Property) -> bool {
        (0..self.agents.len()).all(|a| self.has(p, a))
    }

    pub fn properties(&self) -> Vec<Property> {
        Property::ALL.into_iter().filter(|p| self.all(*p)).collect()
    }

    /// Close every relation under the given properties.
    pub fn close_under(&mut self, props: &[Property]) {
        for a in 0..self.agents.len() {
            loop {
                let before = self.succ[a].clone();
                for p in props {
                    self.close_once(*p, a);
                }
                if self.succ[a] == before {
                    break;
                }
            }
        }
    }

    fn close_once(&mut self, p: Property, a: usize) {
        let n = self.worlds;
        match p {
            Property::Reflexive => (0..n).for_each(|w| {
                self.succ[a][w].insert(w);
            }),
            Property::Transitive => {
                for w in 0..n {
                    let two: Vec<usize> =
                        self.succ[a][w].iter().flat_map(|v| self.succ[a][*v].iter().copied()).collect();
                    self.succ[a][w].extend(two);
                }
            }
            Property::Euclidean => {
                for w in 0..n {
                    let s: Vec<usize> = self.succ[a][w].iter().copied().collect();
                    for b in &s {
                        self.succ[a][*b].extend(s.iter().copied());
                    }
                }
            }
            Property::LeftTotal => {
                for w in 0..n {
                    if self.succ[a][w].is_empty() {
                        self.succ[a][w].insert(w);
                    }
                }
            }
        }
    }

    /// Random edges with density `p`, closed under `props`, and random
    /// small `U`/`u` tables.
    pub fn random(rng: &mut impl Rng, agents: Vec<u64>, worlds: usize, p: f64, props: &[Property]) -> Self {
        let mut f = AgencyFrame::new(agents, worlds).expect("non-empty frame");
        for a in 0..f.agents.len() {
            for x in 0..worlds {
                for y in 0..worlds {
                    if rng.gen_bool(p) {
                        f.succ[a][x].insert(y);
                    }
                }
            }
        }
        f.close_under(props);
        for w in 0..worlds {
            for n in 0..4u64 {
                if rng.gen_bool(0.5) {
                    f.u_set[w].insert(n);
                }
                if rng.gen_bool(0.3) {
                    f.u_fn[w].insert(n, rng.gen_range(0..4));
                }
            }
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn pairs(f: &AgencyFrame, a: usize) -> Vec<(usize, usize)> {
        let n = f.worlds;
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|(x, y)| f.related(a, *x, *y)).collect()
    }

    /// Brute force over pairs and triples.
    fn oracle(f: &AgencyFrame, a: usize, p: Property) -> bool {
        let r = pairs(f, a);
        let n = f.worlds;
        let rel = |x: usize, y: usize| r.contains(&(x, y));
        let triples = || (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))));
        match p {
            Property::Reflexive => (0..n).all(|x| rel(x, x)),
            Property::Transitive => triples().all(|(x, y, z)| !(rel(x, y) && rel(y, z)) || rel(x, z)),
            Property::Euclidean => triples().all(|(x, y, z)| !(rel(x, y) && rel(x, z)) || rel(y, z)),
            Property::LeftTotal => (0..n).all(|x| (0..n).any(|y| rel(x, y))),
        }
    }

    proptest! {
        #[test]
        fn detectors_agree_with_enumeration(seed in any::<u64>(), n in 1usize..5, p in 0.0f64..1.0) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let f = AgencyFrame::random(&mut rng, vec![0, 1], n, p, &[]);
            for a in 0..2 {
                for prop in Property::ALL {
                    prop_assert_eq!(f.has(prop, a), oracle(&f, a, prop));
                }
            }
        }

        #[test]
        fn closure_establishes_properties(seed in any::<u64>(), n in 1usize..5) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let props = [Property::Reflexive, Property::Transitive, Property::Euclidean];
            let f = AgencyFrame::random(&mut rng, vec![0], n, 0.3, &props);
            for p in props {
                prop_assert!(f.all(p));
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(AgencyFrame::new(vec![], 1), Err(FrameError::NoAgents));
        assert_eq!(AgencyFrame::new(vec![0], 0), Err(FrameError::NoWorlds));
        assert_eq!(AgencyFrame::new(vec![3, 3], 1), Err(FrameError::DuplicateAgent(3)));
        let mut f = AgencyFrame::new(vec![0], 2).unwrap();
        assert_eq!(f.add_edge(0, 0, 2), Err(FrameError::World(2)));
        f.add_edge(0, 0, 1).unwrap();
        assert!(!f.is_left_total(0));
        assert!(f.is_transitive(0));
    }
}
