//! Strong-Kleene satisfaction in the expansions a valuation induces, and the
//! revision operator on a fragment.

use super::frame::AgencyFrame;
use crate::coding::{decode_formula, eval_dot_rel, eval_total, gc_formula, gc_term};
use crate::kernel::TheoremDb;
use crate::syntax::{numeral, Formula, Pred, Term, Var};
use crate::systems::Registry;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Mutex;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tv {
    False,
    Unknown,
    True,
}

impl Tv {
    pub fn from_bool(b: bool) -> Tv {
        if b {
            Tv::True
        } else {
            Tv::False
        }
    }

    pub fn not(self) -> Tv {
        match self {
            Tv::True => Tv::False,
            Tv::False => Tv::True,
            Tv::Unknown => Tv::Unknown,
        }
    }

    pub fn and(self, o: Tv) -> Tv {
        self.min(o)
    }

    pub fn or(self, o: Tv) -> Tv {
        self.max(o)
    }

    pub fn imp(self, o: Tv) -> Tv {
        self.not().or(o)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemError {
    #[error("`{0}` is not a sentence")]
    Open(String),
    #[error("valuation covers {got} worlds, the frame has {want}")]
    Worlds { got: usize, want: usize },
    #[error("fragment grew past {0} sentences")]
    TooLarge(usize),
}

/// The truth set of one world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WorldVal {
    /// `yes` holds, `maybe` is undetermined, other fragment codes fail and
    /// codes outside the fragment take `rest`.
    Explicit { yes: HashSet<BigUint>, maybe: HashSet<BigUint>, rest: Tv },
    /// The theorems of a registered system, as far as the store knows them.
    Theorems(String),
}

impl WorldVal {
    pub fn explicit(yes: impl IntoIterator<Item = BigUint>) -> Self {
        WorldVal::Explicit { yes: yes.into_iter().collect(), maybe: HashSet::new(), rest: Tv::False }
    }

    pub fn empty() -> Self {
        Self::explicit([])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation(pub Vec<WorldVal>);

impl Valuation {
    pub fn uniform(n: usize, v: WorldVal) -> Self {
        Valuation(vec![v; n])
    }

    pub fn contains(&self, w: usize, code: &BigUint) -> bool {
        matches!(&self.0[w], WorldVal::Explicit { yes, .. } if yes.contains(code))
    }
}

/// Quantifier range: numerals up to the cutoff, the agents, and the values
/// and codes of the pool terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    pub cutoff: u64,
    pub pool: Vec<Term>,
}

impl Default for Domain {
    fn default() -> Self {
        Domain { cutoff: 3, pool: Vec::new() }
    }
}

/// A finite set of sentences, kept with their codes.
#[derive(Debug, Clone, Default)]
pub struct Fragment {
    pub sentences: Vec<Formula>,
    pub codes: Vec<BigUint>,
    index: HashMap<BigUint, usize>,
}

impl Fragment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    /// Add a sentence; false when already present.
    pub fn insert(&mut self, f: Formula) -> Result<bool, SemError> {
        if !f.is_sentence() {
            return Err(SemError::Open(f.to_string()));
        }
        let c = gc_formula(&f).0;
        if self.index.contains_key(&c) {
            return Ok(false);
        }
        self.index.insert(c.clone(), self.sentences.len());
        self.sentences.push(f);
        self.codes.push(c);
        Ok(true)
    }

    pub fn contains_code(&self, c: &BigUint) -> bool {
        self.index.contains_key(c)
    }

    pub fn position(&self, c: &BigUint) -> Option<usize> {
        self.index.get(c).copied()
    }
}

/// What an agent knows at a world without successors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmptyMeet {
    /// The meet of no truth sets is every sentence.
    #[default]
    Everything,
    Nothing,
}

/// Everything satisfaction consults besides the valuation.
pub struct Semantics<'a> {
    pub frame: &'a AgencyFrame,
    pub empty_meet: EmptyMeet,
    pub reg: &'a Registry,
    pub db: &'a TheoremDb,
    pub frag: Fragment,
    pub domain: Domain,
    ranges: Vec<Vec<BigUint>>,
    sentence_codes: Mutex<HashMap<BigUint, bool>>,
}

fn value(n: &BigUint) -> Option<u64> {
    n.to_u64()
}

impl<'a> Semantics<'a> {
    pub fn new(frame: &'a AgencyFrame, reg: &'a Registry, db: &'a TheoremDb, domain: Domain) -> Self {
        let ranges = (0..frame.worlds)
            .map(|w| {
                let mut r: BTreeSet<BigUint> = (0..=domain.cutoff).map(BigUint::from).collect();
                r.extend(frame.agents.iter().map(|a| BigUint::from(*a)));
                for t in &domain.pool {
                    if let Some(v) = eval_total(t, &|n| BigUint::from(value(n).map_or(0, |k| frame.u_at(w, k)))) {
                        r.insert(v);
                    }
                    r.insert(gc_term(t).0);
                }
                r.into_iter().collect()
            })
            .collect();
        Semantics {
            frame,
            empty_meet: EmptyMeet::default(),
            reg,
            db,
            frag: Fragment::new(),
            domain,
            ranges,
            sentence_codes: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_fragment(mut self, frag: Fragment) -> Self {
        self.frag = frag;
        self
    }

    pub fn range(&self, w: usize) -> &[BigUint] {
        &self.ranges[w]
    }

    pub fn eval(&self, w: usize, t: &Term) -> Option<BigUint> {
        let f = self.frame;
        eval_total(t, &|n| BigUint::from(value(n).map_or(0, |k| f.u_at(w, k))))
    }

    fn is_sentence_code(&self, c: &BigUint) -> bool {
        if self.frag.contains_code(c) {
            return true;
        }
        let mut cache = self.sentence_codes.lock().expect("cache poisoned");
        *cache.entry(c.clone()).or_insert_with(|| decode_formula(c).is_some_and(|f| f.is_sentence()))
    }

    fn is_agent(&self, a: &BigUint) -> Option<usize> {
        value(a).and_then(|a| self.frame.agent_index(a))
    }

    /// `T` at world `w` for the code `c`.
    pub fn truth(&self, f: &Valuation, w: usize, c: &BigUint) -> Tv {
        if !self.is_sentence_code(c) {
            return Tv::False;
        }
        match &f.0[w] {
            WorldVal::Explicit { yes, maybe, rest } => {
                if yes.contains(c) {
                    Tv::True
                } else if maybe.contains(c) {
                    Tv::Unknown
                } else if self.frag.contains_code(c) {
                    Tv::False
                } else {
                    *rest
                }
            }
            WorldVal::Theorems(s) => Tv::from_bool(self.db.find_within(self.reg, s, c).is_some()).or(Tv::Unknown),
        }
    }

    /// `⟨α, c⟩ ∈ f^K(w)`: `c` holds at every `α`-successor.
    pub fn knows(&self, f: &Valuation, w: usize, agent: usize, c: &BigUint) -> Tv {
        let succ = &self.frame.succ[agent][w];
        if succ.is_empty() && self.empty_meet == EmptyMeet::Nothing {
            return Tv::False;
        }
        succ.iter().fold(Tv::True, |acc, v| acc.and(self.truth(f, *v, c)))
    }

    fn provable(&self, sys: &str, c: &BigUint) -> Tv {
        if !self.is_sentence_code(c) {
            return Tv::False;
        }
        if self.reg.get(sys).is_ok() && self.db.find_within(self.reg, sys, c).is_some() {
            Tv::True
        } else {
            Tv::Unknown
        }
    }

    /// Satisfaction of a sentence at `w` in the expansion induced by `f`.
    pub fn sat3(&self, f: &Valuation, w: usize, phi: &Formula) -> Result<Tv, SemError> {
        if f.0.len() != self.frame.worlds {
            return Err(SemError::Worlds { got: f.0.len(), want: self.frame.worlds });
        }
        if !phi.is_sentence() {
            return Err(SemError::Open(phi.to_string()));
        }
        Ok(self.sat(f, w, phi))
    }

    fn sat(&self, f: &Valuation, w: usize, phi: &Formula) -> Tv {
        match phi {
            Formula::Atom(p, args) => self.atom(f, w, p, args),
            Formula::Not(a) => self.sat(f, w, a).not(),
            Formula::Imp(a, b) => {
                let l = self.sat(f, w, a);
                if l == Tv::False {
                    return Tv::True;
                }
                l.imp(self.sat(f, w, b))
            }
            Formula::And(a, b) => {
                let l = self.sat(f, w, a);
                if l == Tv::False {
                    return Tv::False;
                }
                l.and(self.sat(f, w, b))
            }
            Formula::Or(a, b) => {
                let l = self.sat(f, w, a);
                if l == Tv::True {
                    return Tv::True;
                }
                l.or(self.sat(f, w, b))
            }
            Formula::Forall(v, body) => self.quant(f, w, *v, body, true),
            Formula::Exists(v, body) => self.quant(f, w, *v, body, false),
        }
    }

    fn atom(&self, f: &Valuation, w: usize, p: &Pred, args: &[Term]) -> Tv {
        let Some(vals) = args.iter().map(|t| self.eval(w, t)).collect::<Option<Vec<_>>>() else {
            return Tv::Unknown;
        };
        match p {
            Pred::Eq => Tv::from_bool(vals[0] == vals[1]),
            Pred::U => Tv::from_bool(value(&vals[0]).is_some_and(|n| self.frame.u_set[w].contains(&n))),
            Pred::Ag => Tv::from_bool(self.is_agent(&vals[0]).is_some()),
            Pred::Dot(r) => Tv::from_bool(eval_dot_rel(*r, &vals)),
            Pred::T => self.truth(f, w, &vals[0]),
            Pred::K2 => match self.is_agent(&vals[0]) {
                Some(a) => self.knows(f, w, a, &vals[1]),
                None => Tv::False,
            },
            Pred::K1 => (0..self.frame.agents.len()).fold(Tv::True, |acc, a| acc.and(self.knows(f, w, a, &vals[0]))),
            Pred::Pr(s) => self.provable(s, &vals[0]),
        }
    }

    /// Guarded by `Ag` the range is the finite agent set and the verdict is
    /// exact; otherwise only counterexamples (for `∀`) or witnesses (for
    /// `∃`) in the bounded range decide.
    fn quant(&self, f: &Valuation, w: usize, v: Var, body: &Formula, all: bool) -> Tv {
        let agent_guard = |g: &Formula| matches!(g, Formula::Atom(Pred::Ag, a) if a[0] == Term::Var(v));
        let guarded = match (all, body) {
            (true, Formula::Imp(g, b)) | (false, Formula::And(g, b)) if agent_guard(g) => Some(b.as_ref()),
            _ => None,
        };
        if let (false, true) = (all, agent_guard(body)) {
            return Tv::True;
        }
        let inst = |n: &BigUint, b: &Formula| b.instantiate(v, &numeral(n.clone())).expect("numerals are closed");
        if let Some(b) = guarded {
            let mut acc = Tv::from_bool(all);
            for a in &self.frame.agents {
                let t = self.sat(f, w, &inst(&BigUint::from(*a), b));
                acc = if all { acc.and(t) } else { acc.or(t) };
            }
            return acc;
        }
        let decisive = if all { Tv::False } else { Tv::True };
        for n in &self.ranges[w] {
            if self.sat(f, w, &inst(n, body)) == decisive {
                return decisive;
            }
        }
        Tv::Unknown
    }

    /// One revision step restricted to the fragment.
    pub fn gamma(&self, f: &Valuation) -> Result<Valuation, SemError> {
        if f.0.len() != self.frame.worlds {
            return Err(SemError::Worlds { got: f.0.len(), want: self.frame.worlds });
        }
        let out = std::thread::scope(|s| {
            let hs: Vec<_> = (0..self.frame.worlds).map(|w| s.spawn(move || self.gamma_at(f, w))).collect();
            hs.into_iter().map(|h| h.join().expect("world evaluation panicked")).collect()
        });
        Ok(Valuation(out))
    }

    fn gamma_at(&self, f: &Valuation, w: usize) -> WorldVal {
        let (mut yes, mut maybe) = (HashSet::new(), HashSet::new());
        for (phi, c) in self.frag.sentences.iter().zip(&self.frag.codes) {
            match self.sat(f, w, phi) {
                Tv::True => {
                    yes.insert(c.clone());
                }
                Tv::Unknown => {
                    maybe.insert(c.clone());
                }
                Tv::False => {}
            }
        }
        WorldVal::Explicit { yes, maybe, rest: Tv::Unknown }
    }

    /// `Γⁿ(f)` for `n = 0..=steps`.
    pub fn iterate(&self, f: Valuation, steps: usize) -> Result<Vec<Valuation>, SemError> {
        let mut out = vec![f];
        for _ in 0..steps {
            let next = self.gamma(out.last().expect("non-empty"))?;
            out.push(next);
        }
        Ok(out)
    }

    /// Codes of sentences an atom of `phi` refers to, with bound variables
    /// running over the range, to nesting depth 2.
    fn refs(&self, w: usize, phi: &Formula, depth: usize, out: &mut BTreeSet<BigUint>) {
        match phi {
            Formula::Atom(p, args) => {
                let coded: &[Term] = match p {
                    Pred::T | Pred::K1 | Pred::Pr(_) => &args[..1],
                    Pred::K2 => &args[1..],
                    _ => &[],
                };
                for t in coded {
                    if let Some(c) = self.eval(w, t) {
                        out.insert(c);
                    }
                }
            }
            Formula::Not(a) => self.refs(w, a, depth, out),
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                self.refs(w, a, depth, out);
                self.refs(w, b, depth, out);
            }
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                if depth >= 2 {
                    return;
                }
                for n in &self.ranges[w] {
                    let i = b.instantiate(*v, &numeral(n.clone())).expect("numerals are closed");
                    self.refs(w, &i, depth + 1, out);
                }
            }
        }
    }

    /// Close `seeds` under sentential subformulas and `rounds` rounds of
    /// referenced sentences, up to `cap` sentences.
    pub fn close(
        &mut self,
        seeds: impl IntoIterator<Item = Formula>,
        rounds: usize,
        cap: usize,
    ) -> Result<(), SemError> {
        let mut frontier: Vec<Formula> = Vec::new();
        for s in seeds {
            self.add_closed(s, &mut frontier, cap)?;
        }
        for _ in 0..rounds {
            let mut codes = BTreeSet::new();
            for phi in &frontier {
                for w in 0..self.frame.worlds {
                    self.refs(w, phi, 0, &mut codes);
                }
            }
            frontier.clear();
            for c in codes {
                if self.frag.contains_code(&c) {
                    continue;
                }
                if let Some(phi) = decode_formula(&c).filter(|f| f.is_sentence()) {
                    self.add_closed(phi, &mut frontier, cap)?;
                }
            }
            if frontier.is_empty() {
                break;
            }
        }
        Ok(())
    }

    fn add_closed(&mut self, phi: Formula, new: &mut Vec<Formula>, cap: usize) -> Result<(), SemError> {
        let mut stack = vec![phi];
        while let Some(f) = stack.pop() {
            if !self.frag.insert(f.clone())? {
                continue;
            }
            if self.frag.len() > cap {
                return Err(SemError::TooLarge(cap));
            }
            match &f {
                Formula::Not(a) => stack.push(a.as_ref().clone()),
                Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                    stack.push(a.as_ref().clone());
                    stack.push(b.as_ref().clone());
                }
                _ => {}
            }
            new.push(f);
        }
        Ok(())
    }
}
