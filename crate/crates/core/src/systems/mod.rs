//! Axiom systems, their rules and budgets, and the registry of named systems.

pub mod axioms;
pub mod schema;

pub use schema::{induction_instance, SchemaError, SchemaId};

use crate::syntax::{Formula, Pred};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::sync::Arc;
use thiserror::Error;

pub const BASE: &str = "Base";
pub const UCT: &str = "UCT";
pub const FS: &str = "FS";
pub const DCB: &str = "DCB";
pub const KT: &str = "KT";
pub const BEFS: &str = "BEFS";
pub const KM: &str = "KM";
pub const MONTAGUE: &str = "Montague";
pub const KT_IA: &str = "KT+IA";
pub const KT_IA_AG0: &str = "KT+IA+Ag0";
pub const KT_AG0: &str = "KT+Ag0";
pub const KT_UBF_IA: &str = "KT+UBF+IA";
pub const KT_UBF_IA_INP: &str = "KT+UBF+IA+In+";
pub const KT_UBF_IA_INPM: &str = "KT+UBF+IA+In+-";
pub const KT_U4: &str = "KT+U4";
pub const BEFS_V_R: &str = "BEFS+V+R_DCB";

/// Placeholder system name inside a template's own reflection axiom.
pub const SELF_HOLE: &str = "$self";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    MP,
    UG,
    NecT,
    ConecT,
    /// `⊢ φ ⟹ ⊢ ∀α∈Ag K(α, ⌜φ⌝)`.
    NecK,
    /// `⊢ φ ⟹ ⊢ K1(⌜φ⌝)`.
    NecK1,
    /// `⊢ T(⌜φ⌝) ⟹ ⊢ ∀α∈Ag K(α, ⌜φ⌝)`.
    TOverK,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::MP => "MP",
            Rule::UG => "UG",
            Rule::NecT => "NEC_T",
            Rule::ConecT => "CONEC_T",
            Rule::NecK => "NEC_K",
            Rule::NecK1 => "NEC_K1",
            Rule::TOverK => "T_over_K",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemError {
    #[error("system `{0}` is already registered")]
    Duplicate(String),
    #[error("system `{0}` is not registered")]
    Unknown(String),
    #[error("template has {0} self-reference holes, expected exactly one")]
    Holes(usize),
    #[error("invalid system name `{0}`")]
    BadName(String),
    #[error("axiom `{name}` of `{system}` is not a sentence")]
    OpenAxiom { system: String, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemDef {
    pub name: String,
    pub title: String,
    pub axioms: Vec<(String, Formula)>,
    pub schemata: BTreeSet<SchemaId>,
    pub rules: BTreeSet<Rule>,
    /// Bound on NEC_T plus CONEC_T applications per proof.
    pub budget: Option<usize>,
}

impl SystemDef {
    pub fn new(name: &str, title: &str) -> Self {
        SystemDef {
            name: name.into(),
            title: title.into(),
            axioms: Vec::new(),
            schemata: BTreeSet::new(),
            rules: [Rule::MP, Rule::UG].into_iter().collect(),
            budget: None,
        }
    }

    /// Copy of `self` under a new name.
    pub fn derive(&self, name: &str, title: &str) -> Self {
        SystemDef { name: name.into(), title: title.into(), ..self.clone() }
    }

    pub fn axiom(mut self, name: &str, f: Formula) -> Self {
        if !self.axioms.iter().any(|(n, _)| n == name) {
            self.axioms.push((name.into(), f));
        }
        self
    }

    pub fn schema(mut self, s: SchemaId) -> Self {
        self.schemata.insert(s);
        self
    }

    pub fn rule(mut self, r: Rule) -> Self {
        self.rules.insert(r);
        self
    }

    pub fn budget(mut self, b: usize) -> Self {
        self.budget = Some(b);
        self
    }

    /// Union of axioms, schemata and rules.
    pub fn union(mut self, other: &SystemDef) -> Self {
        for (n, f) in &other.axioms {
            if !self.axioms.iter().any(|(m, g)| m == n && g == f) {
                self.axioms.push((n.clone(), f.clone()));
            }
        }
        self.schemata.extend(other.schemata.iter().copied());
        self.rules.extend(other.rules.iter().copied());
        self
    }

    pub fn get_axiom(&self, name: &str) -> Option<&Formula> {
        self.axioms.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn has_axiom(&self, f: &Formula) -> bool {
        self.axioms.iter().any(|(_, g)| g == f)
    }

    /// NEC_T/CONEC_T budget in force: systems without those rules use none.
    pub fn effective_budget(&self) -> Option<usize> {
        if self.rules.contains(&Rule::NecT) || self.rules.contains(&Rule::ConecT) {
            self.budget
        } else {
            Some(0)
        }
    }

    /// Every axiom, schema and rule of `sub` belongs to `self`, and the budget
    /// of `self` is at least that of `sub`.
    pub fn extends(&self, sub: &SystemDef) -> bool {
        let budget_ok = match (self.effective_budget(), sub.effective_budget()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a >= b,
        };
        budget_ok
            && sub.axioms.iter().all(|(_, f)| self.has_axiom(f))
            && sub.schemata.is_subset(&self.schemata)
            && sub.rules.is_subset(&self.rules)
    }

    /// Human-readable listing of axioms, schemata, rules and budget.
    pub fn manifest(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "system {} ({})", self.name, self.title);
        let _ = writeln!(out, "logic: {LOGIC_LAYER}");
        for (n, f) in &self.axioms {
            let _ = writeln!(out, "axiom {n}: {f}");
        }
        for s in &self.schemata {
            let _ = writeln!(out, "schema {}: {}", s.name(), s.describe());
        }
        let rules: Vec<&str> = self.rules.iter().map(|r| r.name()).collect();
        let _ = writeln!(out, "rules: {}", rules.join(", "));
        match self.budget {
            Some(b) => {
                let _ = writeln!(out, "budget: at most {b} NEC_T/CONEC_T applications");
            }
            None => {
                let _ = writeln!(out, "budget: none");
            }
        }
        out
    }
}

impl fmt::Display for SystemDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

pub const LOGIC_LAYER: &str = "tautologies (truth tables); forall v A -> A[v:=t]; \
forall v (A -> B) -> (A -> forall v B) with v not free in A; exists v A <-> ~forall v ~A; \
t = t; s = t -> (A -> A[s/t]); computation rule for closed and guarded dotted equations; \
rules MP, UG and discharge of hypotheses";

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.contains([']', '[', '|']) && !name.chars().any(char::is_whitespace)
}

#[derive(Debug, Clone, Default)]
pub struct Registry {
    systems: BTreeMap<String, Arc<SystemDef>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry::default()
    }

    pub fn register(&mut self, def: SystemDef) -> Result<Arc<SystemDef>, SystemError> {
        if !valid_name(&def.name) {
            return Err(SystemError::BadName(def.name));
        }
        if self.systems.contains_key(&def.name) {
            return Err(SystemError::Duplicate(def.name));
        }
        if let Some((n, _)) = def.axioms.iter().find(|(_, f)| !f.is_sentence()) {
            return Err(SystemError::OpenAxiom { system: def.name.clone(), name: n.clone() });
        }
        let def = Arc::new(def);
        self.systems.insert(def.name.clone(), def.clone());
        Ok(def)
    }

    pub fn get(&self, name: &str) -> Result<&Arc<SystemDef>, SystemError> {
        self.systems.get(name).ok_or_else(|| SystemError::Unknown(name.into()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.systems.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.systems.keys().map(String::as_str)
    }

    /// Whether `sup` extends `sub`; false if either is unknown.
    pub fn extends(&self, sup: &str, sub: &str) -> bool {
        match (self.systems.get(sup), self.systems.get(sub)) {
            (Some(a), Some(b)) => a.extends(b),
            _ => false,
        }
    }

    /// Fill the self-reference hole of `template` with its own name and
    /// register the result.
    pub fn make_self_ref_system(&mut self, template: SystemDef) -> Result<Arc<SystemDef>, SystemError> {
        let name = template.name.clone();
        let holes: usize = template.axioms.iter().map(|(_, f)| count_holes(f)).sum();
        if holes != 1 {
            return Err(SystemError::Holes(holes));
        }
        let axioms = template.axioms.iter().map(|(n, f)| (n.replace(SELF_HOLE, &name), fill_hole(f, &name))).collect();
        self.register(SystemDef { axioms, ..template })
    }

    /// Register `BEFS_n` if absent and return its name.
    pub fn ensure_befs(&mut self, n: usize) -> String {
        let name = format!("BEFS_{n}");
        if !self.contains(&name) {
            let def = befs_n(self, n);
            self.register(def).expect("fresh BEFS_n");
        }
        name
    }
}

fn count_holes(f: &Formula) -> usize {
    let mut n = 0;
    f.walk(&mut |g| {
        if let Formula::Atom(Pred::Pr(s), _) = g {
            if &**s == SELF_HOLE {
                n += 1;
            }
        }
    });
    n
}

fn fill_hole(f: &Formula, name: &str) -> Formula {
    match f {
        Formula::Atom(Pred::Pr(s), args) if &**s == SELF_HOLE => Formula::Atom(Pred::pr(name), args.clone()),
        Formula::Atom(..) => f.clone(),
        Formula::Not(a) => Formula::not(fill_hole(a, name)),
        Formula::Imp(a, b) => Formula::imp(fill_hole(a, name), fill_hole(b, name)),
        Formula::And(a, b) => Formula::and(fill_hole(a, name), fill_hole(b, name)),
        Formula::Or(a, b) => Formula::or(fill_hole(a, name), fill_hole(b, name)),
        Formula::Forall(v, a) => Formula::forall(*v, fill_hole(a, name)),
        Formula::Exists(v, a) => Formula::exists(*v, fill_hole(a, name)),
    }
}

fn base() -> SystemDef {
    let mut s = SystemDef::new(BASE, "PA(L)");
    for (n, f) in axioms::pa() {
        s = s.axiom(n, f);
    }
    s.axiom("MpcCases", axioms::mpc_cases()).schema(SchemaId::Induction)
}

fn uct(base: &SystemDef) -> SystemDef {
    base.derive(UCT, "UCT")
        .axiom("UCT_Neg", axioms::uct_neg())
        .axiom("UCT_Imp", axioms::uct_imp())
        .axiom("UCT_And", axioms::uct_and())
        .axiom("UCT_Or", axioms::uct_or())
        .axiom("UCT_All", axioms::uct_all())
        .axiom("UCT_Ex", axioms::uct_ex())
        .schema(SchemaId::UctAtom)
}

/// DCB with its reflection axiom left as a self-reference hole.
pub fn dcb_template(base: &SystemDef) -> SystemDef {
    base.derive(DCB, "DCB")
        .axiom("NonTriv", axioms::non_triviality())
        .axiom("K1K2", axioms::k1_k2())
        .axiom("UK", axioms::uk())
        .axiom("R_$self", axioms::reflection(SELF_HOLE))
}

fn befs_axioms(fs: &SystemDef, name: &str) -> SystemDef {
    fs.derive(name, name)
        .axiom("NonTriv", axioms::non_triviality())
        .axiom("K1K2", axioms::k1_k2())
        .axiom("UK", axioms::uk())
        .axiom("UNS", axioms::uns())
        .axiom("UND", axioms::und())
        .axiom("UBF", axioms::ubf())
        .axiom("IA", axioms::ia())
}

fn befs_n(reg: &Registry, n: usize) -> SystemDef {
    let name = format!("BEFS_{n}");
    match n {
        0 => reg.get(BASE).expect("Base").derive(&name, "PA(L)").budget(0),
        1 => {
            let fs = reg.get(FS).expect("FS");
            let mut s = befs_axioms(fs, &name).axiom("RT_PA", axioms::truth_reflection(BASE));
            s.rules = [Rule::MP, Rule::UG, Rule::TOverK].into_iter().collect();
            s.budget(0)
        }
        _ => reg.get(BEFS).expect("BEFS").derive(&name, &name).budget(n - 1),
    }
}

/// The registry of every builtin system, with `BEFS_0` through `BEFS_4`.
pub fn builtin_systems() -> Registry {
    let mut reg = Registry::empty();
    let base = base();
    let uct = uct(&base);
    let fs = uct.derive(FS, "FS").rule(Rule::NecT).rule(Rule::ConecT);
    reg.register(base.clone()).unwrap();
    reg.register(uct).unwrap();
    reg.register(fs.clone()).unwrap();
    let dcb = reg.make_self_ref_system(dcb_template(&base)).unwrap();
    let kt = dcb.derive(KT, "KT").union(&fs).axiom("V", axioms::veracity()).rule(Rule::NecK);
    let befs = befs_axioms(&fs, BEFS).rule(Rule::TOverK);
    let extra = [
        kt.derive(KT_IA, "KT + IA").axiom("IA", axioms::ia()),
        kt.derive(KT_AG0, "KT + Ag(0)").axiom("Ag0", axioms::ag_zero()),
        kt.derive(KT_IA_AG0, "KT + IA + Ag(0)").axiom("IA", axioms::ia()).axiom("Ag0", axioms::ag_zero()),
        kt.derive(KT_UBF_IA, "KT + UBF + IA").axiom("UBF", axioms::ubf()).axiom("IA", axioms::ia()),
        kt.derive(KT_UBF_IA_INP, "KT + UBF + IA + In+")
            .axiom("UBF", axioms::ubf())
            .axiom("IA", axioms::ia())
            .axiom("InPlus", axioms::in_plus()),
        kt.derive(KT_UBF_IA_INPM, "KT + UBF + IA + In+ + In-")
            .axiom("UBF", axioms::ubf())
            .axiom("IA", axioms::ia())
            .axiom("InPlus", axioms::in_plus())
            .axiom("InMinus", axioms::in_minus()),
        kt.derive(KT_U4, "KT + U4").axiom("U4", axioms::u4()),
        befs.derive(BEFS_V_R, "BEFS + V + R_DCB")
            .axiom("V", axioms::veracity())
            .axiom("R_DCB", axioms::reflection(DCB)),
        base.derive(KM, "PA+UT^K+K[UT^K]+I^K").schema(SchemaId::UtK).schema(SchemaId::KUtK).schema(SchemaId::IK),
        base.derive(MONTAGUE, "PA+UT^K+NEC^K").schema(SchemaId::UtK).rule(Rule::NecK1),
    ];
    reg.register(kt).unwrap();
    reg.register(befs).unwrap();
    for s in extra {
        reg.register(s).unwrap();
    }
    for n in 0..=4 {
        reg.ensure_befs(n);
    }
    reg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn extension_order() {
        let reg = builtin_systems();
        for (sup, sub) in [(KT, DCB), (KT, FS), (BEFS, FS), (FS, UCT), (UCT, BASE), (KT_UBF_IA_INPM, KT_UBF_IA)] {
            assert!(reg.extends(sup, sub), "{sup} should extend {sub}");
        }
        assert!(!reg.extends(DCB, KT));
        assert!(!reg.extends(UCT, FS));
        assert!(reg.extends("BEFS_3", "BEFS_2"));
        assert!(!reg.extends("BEFS_2", "BEFS_3"));
        assert!(reg.get(KT).unwrap().rules.contains(&Rule::NecK));
        assert!(reg.get(KT).unwrap().get_axiom("V").is_some());
    }

    #[test]
    fn dcb_axioms() {
        let reg = builtin_systems();
        let dcb = reg.get(DCB).unwrap();
        let names: Vec<&str> = dcb.axioms.iter().map(|(n, _)| n.as_str()).skip(7).collect();
        assert_eq!(names, ["NonTriv", "K1K2", "UK", "R_DCB"]);
        let want = parse_formula("forall v0 (Ag(v0) -> forall v1 (@L0(v1) -> (Pr[DCB](v1) -> K2(v0, v1))))").unwrap();
        assert_eq!(dcb.get_axiom("R_DCB"), Some(&want));
        let befs0 = reg.get("BEFS_0").unwrap();
        assert_eq!(befs0.axioms, reg.get(BASE).unwrap().axioms);
    }

    #[test]
    fn self_reference_holes() {
        let mut reg = builtin_systems();
        let base = reg.get(BASE).unwrap().as_ref().clone();
        assert_eq!(reg.make_self_ref_system(dcb_template(&base)), Err(SystemError::Duplicate(DCB.into())));
        let two = dcb_template(&base).derive("DCB2", "x").axiom("R2", axioms::reflection(SELF_HOLE));
        assert_eq!(reg.make_self_ref_system(two), Err(SystemError::Holes(2)));
    }

    #[test]
    fn axioms_are_sentences_and_round_trip() {
        let reg = builtin_systems();
        for name in reg.names() {
            for (_, f) in &reg.get(name).unwrap().axioms {
                assert!(f.is_sentence());
                assert_eq!(&parse_formula(&f.to_string()).unwrap(), f);
            }
        }
    }
}
