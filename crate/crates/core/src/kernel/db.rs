//! Store of kernel-accepted theorems, keyed by system and code.

use super::Proof;
use crate::coding::gc_formula;
use crate::syntax::Formula;
use crate::systems::Registry;
use num_bigint::BigUint;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

#[derive(Debug, Clone)]
pub struct Entry {
    pub formula: Formula,
    /// NEC_T plus CONEC_T applications behind the theorem.
    pub nec: usize,
    pub proof: Option<Arc<Proof>>,
}

#[derive(Debug, Default)]
pub struct TheoremDb {
    map: RwLock<HashMap<String, HashMap<BigUint, Entry>>>,
}

impl TheoremDb {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record a theorem. Only the kernel calls this, after acceptance.
    pub(crate) fn insert(&self, sys: &str, formula: Formula, nec: usize, proof: Option<Arc<Proof>>) {
        let code = gc_formula(&formula).0;
        let mut map = self.map.write().expect("theorem store poisoned");
        let slot = map.entry(sys.to_string()).or_default();
        let better = slot.get(&code).is_none_or(|e| e.nec > nec);
        if better {
            slot.insert(code, Entry { formula, nec, proof });
        }
    }

    pub fn get(&self, sys: &str, code: &BigUint) -> Option<Entry> {
        let map = self.map.read().expect("theorem store poisoned");
        map.get(sys).and_then(|m| m.get(code)).cloned()
    }

    pub fn contains(&self, sys: &str, f: &Formula) -> bool {
        self.get(sys, &gc_formula(f).0).is_some()
    }

    /// A theorem with code `code` of `sys` or of any system `sys` extends,
    /// with the fewest NEC_T/CONEC_T uses.
    pub fn find_within(&self, reg: &Registry, sys: &str, code: &BigUint) -> Option<Entry> {
        let map = self.map.read().expect("theorem store poisoned");
        map.iter()
            .filter(|(name, _)| reg.extends(sys, name))
            .filter_map(|(_, m)| m.get(code))
            .min_by_key(|e| e.nec)
            .cloned()
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("theorem store poisoned").values().map(HashMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
