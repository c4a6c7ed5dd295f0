//! Proof objects and the checker.

pub mod db;
pub mod logic;
pub mod pr;
pub mod taut;
pub mod text;

pub use db::{Entry, TheoremDb};

use crate::coding::symbolic::check_comp;
use crate::coding::{eval_pure, gc_formula, quote};
use crate::syntax::{Formula, Pred, Syntax, Term, Var};
use crate::systems::{Registry, Rule, SchemaId, SystemDef, BASE};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use thiserror::Error;

/// Step references are zero-based positions in the proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Just {
    Hyp,
    Taut,
    /// Tautological consequence of earlier steps.
    Tc(Vec<usize>),
    UI,
    ExDef,
    Q2,
    EqRefl,
    EqSubst,
    Comp,
    /// Premise, then implication.
    MP(usize, usize),
    UG(usize),
    /// Hypothesis step, conclusion step.
    Discharge(usize, usize),
    Ax(String),
    Schema(SchemaId, Vec<Syntax>),
    Cite(String),
    NecT(usize),
    ConecT(usize),
    NecK(usize),
    NecK1(usize),
    TOverK(usize),
    /// Provability of an earlier theorem (`Some`) or of a stored one (`None`).
    D1(String, Option<usize>),
    D2,
    InternalUI,
    PrSigma,
    PrTaut,
    Loeb(usize),
}

impl Just {
    pub fn label(&self) -> &'static str {
        match self {
            Just::Hyp => "hyp",
            Just::Taut => "taut",
            Just::Tc(_) => "tc",
            Just::UI => "ui",
            Just::ExDef => "exdef",
            Just::Q2 => "q2",
            Just::EqRefl => "refl",
            Just::EqSubst => "subst",
            Just::Comp => "comp",
            Just::MP(..) => "mp",
            Just::UG(_) => "ug",
            Just::Discharge(..) => "discharge",
            Just::Ax(_) => "ax",
            Just::Schema(..) => "schema",
            Just::Cite(_) => "cite",
            Just::NecT(_) => "nec_t",
            Just::ConecT(_) => "conec_t",
            Just::NecK(_) => "nec_k",
            Just::NecK1(_) => "nec_k1",
            Just::TOverK(_) => "t_over_k",
            Just::D1(..) => "d1",
            Just::D2 => "d2",
            Just::InternalUI => "internal_ui",
            Just::PrSigma => "pr_sigma",
            Just::PrTaut => "pr_taut",
            Just::Loeb(_) => "loeb",
        }
    }

    fn premises(&self) -> Vec<usize> {
        match self {
            Just::Tc(ps) => ps.clone(),
            Just::MP(a, b) | Just::Discharge(a, b) => vec![*a, *b],
            Just::UG(i)
            | Just::NecT(i)
            | Just::ConecT(i)
            | Just::NecK(i)
            | Just::NecK1(i)
            | Just::TOverK(i)
            | Just::Loeb(i)
            | Just::D1(_, Some(i)) => vec![*i],
            _ => vec![],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub just: Just,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub system: String,
    pub steps: Vec<Step>,
}

impl Proof {
    pub fn new(system: &str) -> Self {
        Proof { system: system.into(), steps: Vec::new() }
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    /// Number of steps with the given justification label.
    pub fn count(&self, label: &str) -> usize {
        self.steps.iter().filter(|s| s.just.label() == label).count()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Reason {
    #[error("premise {0} does not precede this step")]
    Forward(usize),
    #[error("rule {0} is not available in this system")]
    RuleUnavailable(&'static str),
    #[error("premise {0} depends on undischarged hypotheses")]
    NotTheorem(usize),
    #[error("NEC_T/CONEC_T budget of {0} exceeded")]
    Budget(usize),
    #[error("no axiom named `{0}` in this system")]
    UnknownAxiom(String),
    #[error("the system has no schema {0}")]
    SchemaUnavailable(SchemaId),
    #[error(transparent)]
    Schema(#[from] crate::systems::SchemaError),
    #[error("system `{0}` is not registered")]
    UnknownSystem(String),
    #[error("`{0}` is not a stored theorem of a system this one extends")]
    NotStored(String),
    #[error("formula does not match the {0} pattern")]
    Shape(&'static str),
    #[error("computation rule: {0}")]
    Comp(#[from] crate::coding::symbolic::CompError),
    #[error("step {0} is not a hypothesis")]
    NotHyp(usize),
    #[error("variable {0} is free in an active hypothesis")]
    HypVar(Var),
    #[error("{0} is not a sentence")]
    Open(String),
    #[error("conclusion depends on undischarged hypotheses")]
    OpenConclusion,
    #[error("system `{0}` does not extend this proof's system")]
    NotExtension(String),
    #[error("the Löb rule needs a budget-free system extending Base")]
    LoebSystem,
    #[error("empty proof")]
    Empty,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("system `{0}` is not registered")]
    UnknownSystem(String),
    #[error("step {step} ({label}) rejected: {reason}")]
    Rejected { step: usize, label: &'static str, reason: Reason },
}

impl KernelError {
    pub fn reason(&self) -> Option<&Reason> {
        match self {
            KernelError::Rejected { reason, .. } => Some(reason),
            KernelError::UnknownSystem(_) => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub conclusion: Formula,
    /// NEC_T plus CONEC_T uses, including those behind cited theorems.
    pub nec_uses: usize,
    pub stats: BTreeMap<&'static str, usize>,
}

struct Checked {
    deps: BTreeSet<usize>,
    is_hyp: bool,
}

/// Incremental checker: every pushed step is verified immediately.
pub struct Checker<'a> {
    reg: &'a Registry,
    db: &'a TheoremDb,
    sys: Arc<SystemDef>,
    proof: Proof,
    info: Vec<Checked>,
    nec: usize,
    stats: BTreeMap<&'static str, usize>,
}

fn closed_code(t: &Term) -> Option<num_bigint::BigUint> {
    t.as_numeral().cloned()
}

impl<'a> Checker<'a> {
    pub fn new(reg: &'a Registry, db: &'a TheoremDb, system: &str) -> Result<Self, KernelError> {
        let sys = reg.get(system).map_err(|_| KernelError::UnknownSystem(system.into()))?.clone();
        Ok(Checker { reg, db, sys, proof: Proof::new(system), info: Vec::new(), nec: 0, stats: BTreeMap::new() })
    }

    pub fn system(&self) -> &SystemDef {
        &self.sys
    }

    pub fn len(&self) -> usize {
        self.proof.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.proof.steps.is_empty()
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.proof.steps[i].formula
    }

    pub fn deps(&self, i: usize) -> &BTreeSet<usize> {
        &self.info[i].deps
    }

    pub fn proof(&self) -> &Proof {
        &self.proof
    }

    pub fn nec_uses(&self) -> usize {
        self.nec
    }

    /// Check one step and append it; returns its index.
    pub fn push(&mut self, formula: Formula, just: Just) -> Result<usize, KernelError> {
        let label = just.label();
        let step = self.len();
        let (deps, nec) = self.check_step(&formula, &just).map_err(|reason| KernelError::Rejected {
            step: step + 1,
            label,
            reason,
        })?;
        self.nec += nec;
        *self.stats.entry(label).or_default() += 1;
        self.info.push(Checked { deps, is_hyp: just == Just::Hyp });
        self.proof.steps.push(Step { formula, just });
        Ok(step)
    }

    fn need_rule(&self, r: Rule) -> Result<(), Reason> {
        if self.sys.rules.contains(&r) {
            Ok(())
        } else {
            Err(Reason::RuleUnavailable(r.name()))
        }
    }

    fn theorem(&self, i: usize) -> Result<&Formula, Reason> {
        if !self.info[i].deps.is_empty() {
            return Err(Reason::NotTheorem(i + 1));
        }
        Ok(self.formula(i))
    }

    fn sentence(f: &Formula) -> Result<(), Reason> {
        if f.is_sentence() {
            Ok(())
        } else {
            Err(Reason::Open(f.to_string()))
        }
    }

    fn spend(&self, extra: usize) -> Result<usize, Reason> {
        if let Some(b) = self.sys.effective_budget() {
            if self.nec + extra > b {
                return Err(Reason::Budget(b));
            }
        }
        Ok(extra)
    }

    fn known_system(&self, s: &str) -> Result<(), Reason> {
        if self.reg.contains(s) {
            Ok(())
        } else {
            Err(Reason::UnknownSystem(s.into()))
        }
    }

    fn union(&self, ps: &[usize]) -> BTreeSet<usize> {
        ps.iter().flat_map(|p| self.info[*p].deps.iter().copied()).collect()
    }

    /// `∀α (Ag(α) → K2(α, c))`; returns `c`.
    fn all_agents_know(f: &Formula) -> Option<&Term> {
        let Formula::Forall(a, body) = f else { return None };
        let Formula::Imp(g, k) = body.as_ref() else { return None };
        let av = Term::Var(*a);
        match (g.as_ref(), k.as_ref()) {
            (Formula::Atom(Pred::Ag, x), Formula::Atom(Pred::K2, y)) if x[0] == av && y[0] == av => Some(&y[1]),
            _ => None,
        }
    }

    fn check_step(&self, f: &Formula, just: &Just) -> Result<(BTreeSet<usize>, usize), Reason> {
        let n = self.len();
        if let Some(p) = just.premises().into_iter().find(|p| *p >= n) {
            return Err(Reason::Forward(p + 1));
        }
        let none = BTreeSet::new;
        let shape = |ok: bool, what: &'static str| if ok { Ok((none(), 0)) } else { Err(Reason::Shape(what)) };
        match just {
            Just::Hyp => Ok(([n].into_iter().collect(), 0)),
            Just::Taut => shape(taut::is_tautology(f), "tautology"),
            Just::Tc(ps) => {
                let whole = Formula::imps(ps.iter().map(|p| self.formula(*p).clone()), f.clone());
                if taut::is_tautology(&whole) {
                    Ok((self.union(ps), 0))
                } else {
                    Err(Reason::Shape("tautological consequence"))
                }
            }
            Just::UI => shape(logic::is_ui(f), "universal instantiation"),
            Just::ExDef => shape(logic::is_ex_def(f), "existential definition"),
            Just::Q2 => shape(logic::is_q2(f), "quantifier distribution"),
            Just::EqRefl => shape(matches!(f, Formula::Atom(Pred::Eq, a) if a[0] == a[1]), "reflexivity"),
            Just::EqSubst => {
                let ok = match f {
                    Formula::Imp(e, r) => match (e.as_ref(), r.as_ref()) {
                        (Formula::Atom(Pred::Eq, st), Formula::Imp(a, b)) => logic::is_eq_subst(a, b, &st[0], &st[1]),
                        _ => false,
                    },
                    _ => false,
                };
                shape(ok, "equality substitution")
            }
            Just::Comp => {
                check_comp(f)?;
                Ok((none(), 0))
            }
            Just::MP(i, j) => {
                let (a, b) = (self.formula(*i), self.formula(*j));
                let ok = matches!(b, Formula::Imp(x, y) if x.as_ref() == a && y.as_ref() == f)
                    || matches!(a, Formula::Imp(x, y) if x.as_ref() == b && y.as_ref() == f);
                if ok {
                    self.need_rule(Rule::MP)?;
                    Ok((self.union(&[*i, *j]), 0))
                } else {
                    Err(Reason::Shape("modus ponens"))
                }
            }
            Just::UG(i) => {
                self.need_rule(Rule::UG)?;
                let Formula::Forall(v, body) = f else { return Err(Reason::Shape("generalization")) };
                if body.as_ref() != self.formula(*i) {
                    return Err(Reason::Shape("generalization"));
                }
                let deps = self.info[*i].deps.clone();
                if deps.iter().any(|h| self.formula(*h).is_free(*v)) {
                    return Err(Reason::HypVar(*v));
                }
                Ok((deps, 0))
            }
            Just::Discharge(h, i) => {
                if !self.info[*h].is_hyp {
                    return Err(Reason::NotHyp(h + 1));
                }
                let want = Formula::imp(self.formula(*h).clone(), self.formula(*i).clone());
                if &want != f {
                    return Err(Reason::Shape("discharge"));
                }
                let mut deps = self.info[*i].deps.clone();
                deps.remove(h);
                Ok((deps, 0))
            }
            Just::Ax(name) => match self.sys.get_axiom(name) {
                Some(a) if a == f => Ok((none(), 0)),
                Some(_) => Err(Reason::Shape("axiom")),
                None => Err(Reason::UnknownAxiom(name.clone())),
            },
            Just::Schema(id, params) => {
                if !self.sys.schemata.contains(id) {
                    return Err(Reason::SchemaUnavailable(*id));
                }
                shape(&id.instantiate(params)? == f, "schema instance")
            }
            Just::Cite(s) => {
                self.known_system(s)?;
                if !self.reg.extends(&self.sys.name, s) {
                    return Err(Reason::NotExtension(s.clone()));
                }
                let e = self
                    .db
                    .find_within(self.reg, s, &gc_formula(f).0)
                    .ok_or_else(|| Reason::NotStored(f.to_string()))?;
                Ok((none(), self.spend(e.nec)?))
            }
            Just::NecT(i) => {
                self.need_rule(Rule::NecT)?;
                let phi = self.theorem(*i)?;
                Self::sentence(phi)?;
                if f != &Formula::t(quote(phi)) {
                    return Err(Reason::Shape("NEC_T"));
                }
                Ok((none(), self.spend(1)?))
            }
            Just::ConecT(i) => {
                self.need_rule(Rule::ConecT)?;
                let prem = self.theorem(*i)?;
                Self::sentence(f)?;
                if prem != &Formula::t(quote(f)) {
                    return Err(Reason::Shape("CONEC_T"));
                }
                Ok((none(), self.spend(1)?))
            }
            Just::NecK(i) => {
                self.need_rule(Rule::NecK)?;
                let phi = self.theorem(*i)?;
                Self::sentence(phi)?;
                shape(Self::all_agents_know(f) == Some(&quote(phi)), "NEC_K")
            }
            Just::NecK1(i) => {
                self.need_rule(Rule::NecK1)?;
                let phi = self.theorem(*i)?;
                Self::sentence(phi)?;
                shape(f == &Formula::k1(quote(phi)), "NEC_K1")
            }
            Just::TOverK(i) => {
                self.need_rule(Rule::TOverK)?;
                let prem = self.theorem(*i)?;
                let ok = match (prem, Self::all_agents_know(f)) {
                    (Formula::Atom(Pred::T, a), Some(c)) => a[0] == *c && closed_code(c).is_some(),
                    _ => false,
                };
                shape(ok, "T_over_K")
            }
            Just::D1(s, src) => {
                self.known_system(s)?;
                let Some((s2, t)) = pr::as_pr(f) else { return Err(Reason::Shape("D1")) };
                let code = closed_code(t).ok_or(Reason::Shape("D1"))?;
                if &**s2 != s {
                    return Err(Reason::Shape("D1"));
                }
                match src {
                    Some(i) => {
                        let phi = self.theorem(*i)?;
                        if gc_formula(phi).0 != code {
                            return Err(Reason::Shape("D1"));
                        }
                        if !self.reg.extends(s, &self.sys.name) {
                            return Err(Reason::NotExtension(s.clone()));
                        }
                    }
                    None => {
                        if self.db.find_within(self.reg, s, &code).is_none() {
                            return Err(Reason::NotStored(t.to_string()));
                        }
                    }
                }
                Ok((none(), 0))
            }
            Just::D2 => self.pr_rule(pr::check_d2(f), "D2"),
            Just::InternalUI => self.pr_rule(pr::check_internal_ui(f), "internal instantiation"),
            Just::PrSigma => {
                let known = |s: &str| self.reg.contains(s);
                self.pr_rule(pr::check_pr_sigma(f, &known), "provable Σ-completeness")
            }
            Just::PrTaut => self.pr_rule(pr::check_pr_taut(f), "provable tautology"),
            Just::Loeb(i) => {
                let prem = self.theorem(*i)?;
                if self.sys.budget.is_some() || !self.reg.extends(&self.sys.name, BASE) {
                    return Err(Reason::LoebSystem);
                }
                let ok = match prem {
                    Formula::Imp(l, r) => match pr::as_pr(l) {
                        Some((s, x)) => {
                            **s == *self.sys.name
                                && r.as_ref() == f
                                && eval_pure(x).is_some_and(|c| c == gc_formula(f).0)
                        }
                        None => false,
                    },
                    _ => false,
                };
                shape(ok, "Löb")
            }
        }
    }

    fn pr_rule(&self, sys: Option<Arc<str>>, what: &'static str) -> Result<(BTreeSet<usize>, usize), Reason> {
        let s = sys.ok_or(Reason::Shape(what))?;
        self.known_system(&s)?;
        Ok((BTreeSet::new(), 0))
    }

    /// Finish: the last step must be a theorem. Records it in the store.
    pub fn finish(self) -> Result<(Verdict, Proof), KernelError> {
        let n = self.len();
        let last = n.checked_sub(1).ok_or(KernelError::Rejected { step: 0, label: "end", reason: Reason::Empty })?;
        if !self.info[last].deps.is_empty() {
            return Err(KernelError::Rejected { step: n, label: "end", reason: Reason::OpenConclusion });
        }
        let conclusion = self.formula(last).clone();
        let proof = Arc::new(self.proof);
        self.db.insert(&proof.system, conclusion.clone(), self.nec, Some(proof.clone()));
        let verdict = Verdict { conclusion, nec_uses: self.nec, stats: self.stats };
        Ok((verdict, Arc::unwrap_or_clone(proof)))
    }
}

/// Check a whole proof; on acceptance its conclusion enters `db`.
pub fn check_proof(reg: &Registry, db: &TheoremDb, p: &Proof) -> Result<Verdict, KernelError> {
    let mut c = Checker::new(reg, db, &p.system)?;
    for s in &p.steps {
        c.push(s.formula.clone(), s.just.clone())?;
    }
    c.finish().map(|(v, _)| v)
}
