//! Closed instances of axioms, with parameters drawn from a finite pool.

use crate::coding::{quote, quote_term, quote_var};
use crate::scripts::kit::everyone_knows;
use crate::syntax::{numeral, parse_formula, DotRel, Formula, Pred, Syntax, Term, Var};
use crate::systems::{Registry, SchemaId, BEFS, KT_UBF_IA_INPM};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Instance {
    pub axiom: String,
    /// Least `n` for which the instance is a theorem of the `n`-th stage
    /// system.
    pub level: usize,
    #[serde(serialize_with = "crate::revision::doc::display")]
    pub formula: Formula,
}

/// Parameters the universal quantifiers of an axiom are instantiated with.
#[derive(Debug, Clone)]
pub struct Params {
    /// Numerals, agents and at least one non-agent.
    pub agents: Vec<Term>,
    pub sentences: Vec<Formula>,
    /// Formulas with exactly the given variable free.
    pub unary: Vec<(Var, Formula)>,
    /// Closed arithmetic terms.
    pub terms: Vec<Term>,
}

fn p(s: &str) -> Formula {
    parse_formula(s).expect("parameter parses")
}

impl Params {
    /// A small default pool for the agents `agents`.
    pub fn standard(agents: &[u64], extra: &[Formula]) -> Self {
        let mut ags: Vec<Term> = agents.iter().map(|a| numeral(*a)).collect();
        ags.push(numeral(agents.iter().max().map_or(0, |m| m + 1)));
        let mut sentences: Vec<Formula> = [
            "0 = 0",
            "0 = S(0)",
            "U(0)",
            "U(S(0))",
            "u(0) = S(0)",
            "Ag(0)",
            "~U(0)",
            "U(0) /\\ 0 = 0",
            "U(0) -> U(S(0))",
            "U(S(0)) \\/ 0 = S(0)",
            "T(<<0 = 0>>)",
            "T(<<U(0)>>)",
            "K2(0, <<0 = 0>>)",
            "K1(<<0 = S(0)>>)",
            "forall v0 (v0 + 0 = v0)",
            "exists v0 U(v0)",
        ]
        .iter()
        .map(|s| p(s))
        .collect();
        sentences.extend(extra.iter().cloned());
        let unary = [(0, "U(v0)"), (0, "v0 = S(0)"), (1, "~(v1 = 0)"), (2, "T(<<0 = 0>>) /\\ U(v2)")]
            .iter()
            .map(|(v, s)| (Var(*v), p(s)))
            .collect();
        let terms = ["0", "S(0)", "S(0) + 0", "S(S(0))", "S(0) * S(S(0))", "0 * S(0)"]
            .iter()
            .map(|s| crate::syntax::parse_term(s).expect("term parses"))
            .collect();
        Params { agents: ags, sentences, unary, terms }
    }
}

/// Instantiate the leading guarded quantifiers of `ax` with random
/// parameters of the kind each guard asks for.
pub fn instantiate(ax: &Formula, params: &Params, rng: &mut impl Rng) -> Formula {
    let mut cur = ax.clone();
    let mut guards = Vec::new();
    let mut pending: Option<Formula> = None;
    loop {
        let Formula::Forall(v, body) = &cur else { break };
        let guard = match body.as_ref() {
            Formula::Imp(g, _) => g.as_ref().clone(),
            other => other.clone(),
        };
        let t = match &guard {
            Formula::Atom(Pred::Ag, _) => params.agents.choose(rng).expect("agents").clone(),
            Formula::Atom(Pred::Dot(DotRel::L0), _) => quote(params.sentences.choose(rng).expect("sentences")),
            Formula::Atom(Pred::Dot(DotRel::Var), _) => {
                let (x, phi) = params.unary.choose(rng).expect("unary formulas");
                pending = Some(phi.clone());
                quote_var(*x)
            }
            Formula::Atom(Pred::Dot(DotRel::L1), _) => match pending.take() {
                Some(phi) => quote(&phi),
                None => break,
            },
            Formula::Atom(Pred::Dot(DotRel::TermPa0 | DotRel::Term0), _) => {
                quote_term(params.terms.choose(rng).expect("terms"))
            }
            _ => break,
        };
        cur = body.instantiate(*v, &t).expect("parameters are closed");
        if let Formula::Imp(g, rest) = &cur {
            guards.push(g.as_ref().clone());
            cur = rest.as_ref().clone();
        }
    }
    Formula::imps(guards, cur)
}

/// Named axioms of the stage systems, in the order they are sampled.
pub fn axioms(reg: &Registry, names: &[&str]) -> Vec<(String, Formula)> {
    let sources = [BEFS, KT_UBF_IA_INPM, "BEFS_1", crate::systems::DCB];
    names
        .iter()
        .filter_map(|n| {
            let f = sources.iter().find_map(|s| reg.get(s).ok().and_then(|d| d.get_axiom(n).cloned()))?;
            Some((n.to_string(), f))
        })
        .collect()
}

/// UCT^Atom read as a universal over term codes, for `=`, `U` and `Ag`.
pub fn atom_schemas() -> Vec<(String, Formula)> {
    ["v0 = v1", "U(v0)", "Ag(v0)"]
        .iter()
        .map(|s| {
            let f = SchemaId::UctAtom.instantiate(&[Syntax::Formula(p(s))]).expect("atomic");
            ("UCT_Atom".to_string(), f)
        })
        .collect()
}

pub const FS_AXIOMS: [&str; 6] = ["UCT_Neg", "UCT_Imp", "UCT_And", "UCT_Or", "UCT_All", "UCT_Ex"];
pub const BEFS_AXIOMS: [&str; 7] = ["NonTriv", "K1K2", "UK", "UNS", "UND", "UBF", "IA"];
pub const DCB_AXIOMS: [&str; 4] = ["NonTriv", "K1K2", "UK", "R_DCB"];

/// Up to `per` distinct instances of each axiom, at level `level`.
pub fn sample(
    axioms: &[(String, Formula)],
    params: &Params,
    per: usize,
    level: usize,
    rng: &mut impl Rng,
) -> Vec<Instance> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (name, ax) in axioms {
        let mut got = 0;
        for _ in 0..per * 4 {
            if got == per {
                break;
            }
            let f = instantiate(ax, params, rng);
            if f.is_sentence() && seen.insert(f.clone()) {
                out.push(Instance { axiom: name.clone(), level, formula: f });
                got += 1;
            }
        }
    }
    out
}

/// `T(⌜A⌝)` and `∀α∈Ag K(α, ⌜A⌝)` for up to `cap` of the given instances,
/// one level up.
pub fn nec_images(from: &[Instance], cap: usize, rng: &mut impl Rng) -> Vec<Instance> {
    let mut pick: Vec<&Instance> = from.iter().collect();
    pick.shuffle(rng);
    pick.into_iter()
        .take(cap)
        .flat_map(|i| {
            let c = quote(&i.formula);
            [
                Instance { axiom: format!("NEC_T[{}]", i.axiom), level: i.level + 1, formula: Formula::t(c.clone()) },
                Instance { axiom: format!("T/K[{}]", i.axiom), level: i.level + 1, formula: everyone_knows(c) },
            ]
        })
        .collect()
}

/// `T(⌜φ⌝)` and `∀α∈Ag K(α, ⌜φ⌝)` for theorems of the base system; these
/// belong to the first stage by truth reflection and T/K.
pub fn base_images(theorems: &[Formula]) -> Vec<Instance> {
    theorems
        .iter()
        .flat_map(|f| {
            [
                Instance { axiom: "RT_PA".into(), level: 1, formula: Formula::t(quote(f)) },
                Instance { axiom: "T/K[PA]".into(), level: 1, formula: everyone_knows(quote(f)) },
            ]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::builtin_systems;
    use rand::SeedableRng;

    #[test]
    fn instances_are_closed_and_guarded_correctly() {
        let reg = builtin_systems();
        let params = Params::standard(&[0, 1], &[]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut axs = axioms(&reg, &FS_AXIOMS);
        axs.extend(axioms(&reg, &BEFS_AXIOMS));
        axs.extend(axioms(&reg, &["V", "InPlus", "InMinus", "R_DCB", "RT_PA"]));
        axs.extend(atom_schemas());
        assert_eq!(axs.len(), 6 + 7 + 5 + 3);
        let inst = sample(&axs, &params, 5, 1, &mut rng);
        assert!(inst.len() > 60);
        for i in &inst {
            assert!(i.formula.is_sentence(), "{}", i.formula);
        }
        let up = nec_images(&inst, 10, &mut rng);
        assert_eq!(up.len(), 20);
        assert!(up.iter().all(|i| i.level == 2));
    }
}
