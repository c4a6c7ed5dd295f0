//! KT proofs of sampled instances of UNS^K and UND^K, checked against the
//! instances BEFS reads off its axioms, and the two rule replays.

use super::kit::{everyone_knows, Kit, PrKit};
use super::{Ctx, ScriptRun, Session};
use crate::builder::{BuildError, Builder, Res};
use crate::coding::{eval_closed, quote, quote_term, quote_var};
use crate::syntax::{numeral, parse_formula, DotFn, Formula, Term, Var};
use crate::systems::{BEFS, BEFS_V_R, DCB, KT, KT_UBF_IA};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const ALPHA: Var = Var(0);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    /// `φ` has at most `v` free; `s`, `t` are closed arithmetic terms.
    Uns {
        phi: Formula,
        v: Var,
        s: Term,
        t: Term,
    },
    Und {
        s: Term,
        t: Term,
    },
}

fn alpha() -> Term {
    Term::Var(ALPHA)
}

fn ev_eq(s: &Term, t: &Term) -> Formula {
    Formula::eq(Term::dot1(DotFn::Ev, quote_term(s)), Term::dot1(DotFn::Ev, quote_term(t)))
}

fn same(s: &Term, t: &Term) -> Res<bool> {
    match (eval_closed(s), eval_closed(t)) {
        (Ok(a), Ok(b)) => Ok(a == b),
        _ => Err(BuildError::Plan(format!("`{s}` or `{t}` is not a closed arithmetic term"))),
    }
}

impl Instance {
    fn knows_sbt(phi: &Formula, v: Var, s: &Term) -> Formula {
        Formula::k2(alpha(), Term::dot(DotFn::Sbt, vec![quote(phi), quote_term(s), quote_var(v)]))
    }

    /// The consequent, for the agent variable `v0`.
    fn consequent(&self) -> Formula {
        match self {
            Instance::Uns { phi, v, s, t } => Formula::iff(Self::knows_sbt(phi, *v, s), Self::knows_sbt(phi, *v, t)),
            Instance::Und { s, t } => {
                Formula::k2(alpha(), Term::dot1(DotFn::Neg, Term::dot2(DotFn::Eq, quote_term(s), quote_term(t))))
            }
        }
    }

    fn antecedent(&self) -> Formula {
        match self {
            Instance::Uns { s, t, .. } => ev_eq(s, t),
            Instance::Und { s, t } => Formula::not(ev_eq(s, t)),
        }
    }

    /// The axiom instance with the agent still quantified.
    pub fn statement(&self) -> Formula {
        let body = Formula::imp(self.antecedent(), self.consequent());
        Formula::forall_in(ALPHA, Formula::ag(alpha()), body)
    }

    /// Whether the antecedent holds.
    pub fn relevant(&self) -> Res<bool> {
        match self {
            Instance::Uns { s, t, .. } => same(s, t),
            Instance::Und { s, t } => same(s, t).map(|b| !b),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Instance::Uns { phi, v, s, t } => format!("UNS^K [{phi}; {v}; {s}; {t}]"),
            Instance::Und { s, t } => format!("UND^K [{s}; {t}]"),
        }
    }

    /// Read the instance off the axiom.
    pub fn from_axiom(&self, b: &mut Builder<'_>) -> Res {
        let ag = b.hyp(Formula::ag(alpha()))?;
        let body = match self {
            Instance::Uns { phi, v, s, t } => {
                b.use_ax("UNS", &[alpha(), quote_var(*v), quote(phi), quote_term(s), quote_term(t)], &[ag])?
            }
            Instance::Und { s, t } => b.use_ax("UND", &[alpha(), quote_term(s), quote_term(t)], &[ag])?,
        };
        let d = b.discharge(ag, body)?;
        b.ug(d, ALPHA)
    }

    /// The KT derivation: NEC^K and UK^K for substitution, R_DCB for
    /// distinctness.
    pub fn kt_steps(&self, b: &mut Builder<'_>) -> Res {
        let ag = b.hyp(Formula::ag(alpha()))?;
        let want = self.consequent();
        let body = if self.relevant()? {
            let c = match self {
                Instance::Uns { phi, v, s, t } => {
                    let a = phi.instantiate(*v, s).map_err(|e| BuildError::Plan(e.to_string()))?;
                    let c = phi.instantiate(*v, t).map_err(|e| BuildError::Plan(e.to_string()))?;
                    let fwd = known_implication(b, ag, &a, &c)?;
                    let bwd = known_implication(b, ag, &c, &a)?;
                    let ka = Formula::k2(alpha(), quote(&a));
                    let kc = Formula::k2(alpha(), quote(&c));
                    let iff = b.tc(&[fwd, bwd], Formula::iff(ka, kc))?;
                    b.conv(iff, &want, &[])?
                }
                Instance::Und { s, t } => {
                    let lit = Formula::not(Formula::eq(s.clone(), t.clone()));
                    let n = b.comp(lit.clone())?;
                    let sig = b.pr_sigma(DCB, &lit)?;
                    let pr = b.mp(n, sig)?;
                    let k = b.reflect(ag, pr, &[])?;
                    b.conv(k, &want, &[])?
                }
            };
            b.tc(&[c], Formula::imp(self.antecedent(), want))?
        } else {
            let fact = match self {
                Instance::Uns { s, t, .. } => Formula::not(ev_eq(s, t)),
                Instance::Und { s, t } => ev_eq(s, t),
            };
            let n = b.comp(fact)?;
            b.tc(&[n], Formula::imp(self.antecedent(), want))?
        };
        let d = b.discharge(ag, body)?;
        b.ug(d, ALPHA)
    }
}

/// `K2(α, ⌜a⌝) → K2(α, ⌜c⌝)` where `a → c` follows by computation.
fn known_implication(b: &mut Builder<'_>, ag: usize, a: &Formula, c: &Formula) -> Res {
    let h = b.hyp(a.clone())?;
    let j = b.conv(h, c, &[])?;
    let imp = b.discharge(h, j)?;
    let k = b.knows_thm(ag, imp, &[])?;
    let hk = b.hyp(Formula::k2(alpha(), quote(a)))?;
    let m = b.know_mp(ag, hk, k, &[])?;
    b.discharge(hk, m)
}

/// The instances named in the examples.
pub fn examples() -> Vec<Instance> {
    let two = Term::plus(Term::succ(Term::zero()), Term::succ(Term::zero()));
    vec![
        Instance::Und { s: Term::succ(Term::zero()), t: Term::zero() },
        Instance::Uns { phi: template(0, Var(0)), v: Var(0), s: two, t: numeral(2u32) },
    ]
}

fn template(i: usize, v: Var) -> Formula {
    let x = format!("v{}", v.0);
    let text = match i % 8 {
        0 => format!("{x} = S(0)"),
        1 => format!("~({x} + S(0) = 0)"),
        2 => format!("T(@num({x}))"),
        3 => format!("K1(@num({x}))"),
        4 => format!("K2({x}, <<0 = 0>>)"),
        5 => format!("forall v9 (v9 + {x} = {x} + v9)"),
        6 => format!("{x} = {x} * S(0) /\\ Ag({x})"),
        _ => format!("exists v9 ({x} = v9 + v9)"),
    };
    parse_formula(&text).expect("template parses")
}

fn random_term(rng: &mut ChaCha8Rng, depth: u32) -> Term {
    let pick = if depth == 0 { rng.gen_range(0..2) } else { rng.gen_range(0..4) };
    match pick {
        0 => Term::zero(),
        1 => Term::succ(if depth == 0 { Term::zero() } else { random_term(rng, depth - 1) }),
        2 => Term::plus(random_term(rng, depth - 1), random_term(rng, depth - 1)),
        _ => Term::times(random_term(rng, depth - 1), random_term(rng, depth - 1)),
    }
}

/// A term other than `s` with the same value, found by search or else the
/// numeral.
fn equal_partner(rng: &mut ChaCha8Rng, s: &Term) -> Term {
    let want = eval_closed(s).expect("closed term");
    for _ in 0..200 {
        let t = random_term(rng, 2);
        if &t != s && eval_closed(&t).ok().as_ref() == Some(&want) {
            return t;
        }
    }
    numeral(want)
}

/// `n` instances, alternating the two axioms. Most have a true antecedent.
pub fn sample(seed: u64, n: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let s = random_term(&mut rng, 2);
            let hit = rng.gen_bool(if i % 2 == 0 { 0.85 } else { 0.15 });
            let t = if hit { equal_partner(&mut rng, &s) } else { random_term(&mut rng, 2) };
            if i % 2 == 0 {
                let v = [Var(0), Var(3), Var(7)][rng.gen_range(0..3)];
                Instance::Uns { phi: template(rng.gen_range(0..8), v), v, s, t }
            } else {
                Instance::Und { s, t }
            }
        })
        .collect()
}

/// Prove `inst` in KT and confirm it is the instance BEFS reads off its
/// axiom.
pub fn prove_instance(s: &mut Session<'_>, inst: &Instance) -> Res<Formula> {
    let from_ax = s.prove(BEFS, |b| inst.from_axiom(b))?;
    let kt = s.prove(KT, |b| inst.kt_steps(b))?;
    if kt != from_ax || kt != inst.statement() {
        return Err(BuildError::Plan(format!("{}: proved a different statement", inst.label())));
    }
    Ok(kt)
}

/// A proof of `T(⌜φ⌝)` for a computable sentence `φ`.
fn truth_of(b: &mut Builder<'_>, phi: &Formula) -> Res {
    let c = b.comp(phi.clone())?;
    match b.schema(crate::systems::SchemaId::UctAtom, vec![crate::syntax::Syntax::Formula(phi.clone())]) {
        Ok(u) => b.tc(&[u, c], Formula::t(quote(phi))),
        Err(_) => b.push(Formula::t(quote(phi)), crate::kernel::Just::NecT(c)),
    }
}

/// T/K in KT+UBF+IA: from `T(⌜φ⌝)` by CONEC_T, then NEC^K.
pub fn t_over_k_in_kt(s: &mut Session<'_>, phi: &Formula) -> Res<Formula> {
    s.prove(KT_UBF_IA, |b| {
        let t = truth_of(b, phi)?;
        let c = b.push(phi.clone(), crate::kernel::Just::ConecT(t))?;
        b.nec_k(c)
    })
}

/// NEC^K in BEFS+V+R_DCB: from `φ` by NEC_T, then T/K.
pub fn nec_k_in_befs(s: &mut Session<'_>, phi: &Formula) -> Res<Formula> {
    s.prove(BEFS_V_R, |b| {
        let c = b.comp(phi.clone())?;
        let t = b.push(Formula::t(quote(phi)), crate::kernel::Just::NecT(c))?;
        b.push(everyone_knows(quote(phi)), crate::kernel::Just::TOverK(t))
    })
}

/// The same conclusions from the primitive rules of the other system.
fn direct(s: &mut Session<'_>, phi: &Formula) -> Res<(Formula, Formula)> {
    let tk = s.prove(BEFS_V_R, |b| {
        let t = truth_of(b, phi)?;
        b.push(everyone_knows(quote(phi)), crate::kernel::Just::TOverK(t))
    })?;
    let nk = s.prove(KT_UBF_IA, |b| {
        let c = b.comp(phi.clone())?;
        b.nec_k(c)
    })?;
    Ok((tk, nk))
}

pub fn replay_sentences() -> Vec<Formula> {
    ["0 = 0", "S(0) + S(0) = S(S(0))", "~(S(0) = 0)", "S(0) * S(S(0)) = S(S(0))"]
        .iter()
        .map(|t| parse_formula(t).expect("sentence parses"))
        .collect()
}

/// Sampled instances proved by the `befs-instances` script.
pub const SAMPLE: usize = 28;

/// Every sampled instance and the examples.
pub fn instances(ctx: &Ctx) -> Res<ScriptRun> {
    let start = Instant::now();
    let mut s = Session::new(ctx);
    for inst in examples().iter().chain(&sample(crate::DEFAULT_SEED, SAMPLE)) {
        prove_instance(&mut s, inst)?;
    }
    Ok(s.done("befs-instances", start))
}

/// Both directions of the rule replays, each compared with the primitive
/// rule of the other system.
pub fn rules(ctx: &Ctx) -> Res<ScriptRun> {
    let start = Instant::now();
    let mut s = Session::new(ctx);
    for phi in replay_sentences() {
        let (tk, nk) = direct(&mut s, &phi)?;
        let a = t_over_k_in_kt(&mut s, &phi)?;
        let b = nec_k_in_befs(&mut s, &phi)?;
        if a != tk || b != nk {
            return Err(BuildError::Plan(format!("replay of `{phi}` reached a different conclusion")));
        }
    }
    Ok(s.done("befs-rules", start))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_examples() {
        let ctx = Ctx::new();
        let mut s = Session::new(&ctx);
        for inst in examples() {
            assert!(inst.relevant().unwrap());
            let f = prove_instance(&mut s, &inst).unwrap();
            assert_eq!(f, inst.statement());
        }
    }

    #[test]
    fn sampled_instances() {
        let run = instances(&Ctx::new()).unwrap();
        assert_eq!(run.proofs.len(), 2 * (SAMPLE + 2));
        let live = sample(crate::DEFAULT_SEED, SAMPLE).iter().filter(|i| i.relevant().unwrap()).count();
        assert!(live + 2 >= 20, "only {live} sampled instances have a true antecedent");
        assert!(run.count("nec_k") >= 1);
        assert!(run.count("pr_sigma") >= 1);
        assert!(super::super::replay(&run).is_ok());
    }

    #[test]
    fn rule_replays() {
        let run = rules(&Ctx::new()).unwrap();
        assert_eq!(run.count("conec_t"), 4);
        assert_eq!(run.count("t_over_k"), 8);
    }

    #[test]
    fn kt_proof_is_rejected_in_befs() {
        let ctx = Ctx::new();
        let mut s = Session::new(&ctx);
        let inst = &examples()[1];
        assert!(s.prove(BEFS, |b| inst.kt_steps(b)).is_err());
    }
}
