//! Named axioms of the builtin systems.

use crate::syntax::{DotFn, DotRel, Formula, Pred, Term, Var};

pub const ALPHA: Var = Var(0);
pub const PHI: Var = Var(1);
pub const PSI: Var = Var(2);
pub const V: Var = Var(3);
pub const S: Var = Var(4);
pub const T: Var = Var(5);

fn x(v: Var) -> Term {
    Term::Var(v)
}

fn rel(r: DotRel, args: Vec<Term>) -> Formula {
    Formula::Atom(Pred::Dot(r), args)
}

fn d1(d: DotFn, a: Term) -> Term {
    Term::dot1(d, a)
}

fn d2(d: DotFn, a: Term, b: Term) -> Term {
    Term::dot2(d, a, b)
}

fn sbt(a: Term, b: Term, c: Term) -> Term {
    Term::dot(DotFn::Sbt, vec![a, b, c])
}

fn all_ag(body: Formula) -> Formula {
    Formula::forall_in(ALPHA, Formula::ag(x(ALPHA)), body)
}

fn all_l0(v: Var, body: Formula) -> Formula {
    Formula::forall_in(v, Formula::l0(x(v)), body)
}

fn all_rel(v: Var, r: DotRel, body: Formula) -> Formula {
    Formula::forall_in(v, rel(r, vec![x(v)]), body)
}

fn k(a: Term, b: Term) -> Formula {
    Formula::k2(a, b)
}

/// `∀v∈Var ∀φ (L1(v, φ) → body)`.
fn all_l1(body: Formula) -> Formula {
    all_rel(V, DotRel::Var, Formula::forall_in(PHI, rel(DotRel::L1, vec![x(V), x(PHI)]), body))
}

pub fn pa() -> Vec<(&'static str, Formula)> {
    let (a, b) = (Var(0), Var(1));
    let (xa, xb) = (x(a), x(b));
    vec![
        ("PA1", Formula::forall(a, Formula::not(Formula::eq(Term::succ(xa.clone()), Term::zero())))),
        (
            "PA2",
            Formula::forall(
                a,
                Formula::forall(
                    b,
                    Formula::imp(
                        Formula::eq(Term::succ(xa.clone()), Term::succ(xb.clone())),
                        Formula::eq(xa.clone(), xb.clone()),
                    ),
                ),
            ),
        ),
        ("PA3", Formula::forall(a, Formula::eq(Term::plus(xa.clone(), Term::zero()), xa.clone()))),
        (
            "PA4",
            Formula::forall(
                a,
                Formula::forall(
                    b,
                    Formula::eq(
                        Term::plus(xa.clone(), Term::succ(xb.clone())),
                        Term::succ(Term::plus(xa.clone(), xb.clone())),
                    ),
                ),
            ),
        ),
        ("PA5", Formula::forall(a, Formula::eq(Term::times(xa.clone(), Term::zero()), Term::zero()))),
        (
            "PA6",
            Formula::forall(
                a,
                Formula::forall(
                    b,
                    Formula::eq(
                        Term::times(xa.clone(), Term::succ(xb.clone())),
                        Term::plus(Term::times(xa.clone(), xb.clone()), xa.clone()),
                    ),
                ),
            ),
        ),
    ]
}

/// `∀u (mpc(u) = u ∨ ∃a ∃b (L0 a ∧ L0 b ∧ u = and(a, imp(a, b))))`.
pub fn mpc_cases() -> Formula {
    let (u, a, b) = (Var(0), Var(1), Var(2));
    Formula::forall(
        u,
        Formula::or(
            Formula::eq(d1(DotFn::Mpc, x(u)), x(u)),
            Formula::exists(
                a,
                Formula::exists(
                    b,
                    Formula::and(
                        Formula::and(Formula::l0(x(a)), Formula::l0(x(b))),
                        Formula::eq(x(u), d2(DotFn::And, x(a), d2(DotFn::Imp, x(a), x(b)))),
                    ),
                ),
            ),
        ),
    )
}

pub fn non_triviality() -> Formula {
    Formula::exists(ALPHA, Formula::ag(x(ALPHA)))
}

pub fn k1_k2() -> Formula {
    all_l0(PHI, Formula::iff(Formula::k1(x(PHI)), all_ag(k(x(ALPHA), x(PHI)))))
}

pub fn uk() -> Formula {
    all_ag(all_l0(
        PHI,
        all_l0(
            PSI,
            Formula::imp(
                Formula::and(k(x(ALPHA), x(PHI)), k(x(ALPHA), d2(DotFn::Imp, x(PHI), x(PSI)))),
                k(x(ALPHA), x(PSI)),
            ),
        ),
    ))
}

/// `∀α∈Ag ∀φ∈L0 (Pr_S(φ) → K(α, φ))`.
pub fn reflection(sys: &str) -> Formula {
    all_ag(all_l0(PHI, Formula::imp(Formula::pr(sys, x(PHI)), k(x(ALPHA), x(PHI)))))
}

pub fn uct_neg() -> Formula {
    all_l0(PHI, Formula::iff(Formula::t(d1(DotFn::Neg, x(PHI))), Formula::not(Formula::t(x(PHI)))))
}

fn uct_binary(d: DotFn, f: fn(Formula, Formula) -> Formula) -> Formula {
    all_l0(PHI, all_l0(PSI, Formula::iff(Formula::t(d2(d, x(PHI), x(PSI))), f(Formula::t(x(PHI)), Formula::t(x(PSI))))))
}

pub fn uct_imp() -> Formula {
    uct_binary(DotFn::Imp, Formula::imp)
}

pub fn uct_and() -> Formula {
    uct_binary(DotFn::And, Formula::and)
}

pub fn uct_or() -> Formula {
    uct_binary(DotFn::Or, Formula::or)
}

fn uct_quant(d: DotFn, q: fn(Var, Formula) -> Formula, inner: fn(Formula, Formula) -> Formula) -> Formula {
    let instance = Formula::t(sbt(x(PHI), x(T), x(V)));
    all_l1(Formula::iff(Formula::t(d2(d, x(V), x(PHI))), q(T, inner(rel(DotRel::Term0, vec![x(T)]), instance))))
}

pub fn uct_all() -> Formula {
    uct_quant(DotFn::Forall, Formula::forall, Formula::imp)
}

pub fn uct_ex() -> Formula {
    uct_quant(DotFn::Exists, Formula::exists, Formula::and)
}

pub fn veracity() -> Formula {
    all_ag(all_l0(PHI, Formula::imp(k(x(ALPHA), x(PHI)), Formula::t(x(PHI)))))
}

pub fn ubf() -> Formula {
    let inst = k(x(ALPHA), sbt(x(PHI), x(T), x(V)));
    all_ag(all_l1(Formula::imp(all_rel(T, DotRel::TermPa0, inst), k(x(ALPHA), d2(DotFn::Forall, x(V), x(PHI))))))
}

/// `K̇(num(α), gq(φ))`.
fn k_self(a: Term, phi: Term) -> Term {
    d2(DotFn::K2, d1(DotFn::Num, a), d1(DotFn::Gq, phi))
}

/// `Ṫ(gq(φ))`.
fn t_quoted(phi: Term) -> Term {
    d1(DotFn::T, d1(DotFn::Gq, phi))
}

pub fn ia() -> Formula {
    all_ag(all_l0(PHI, Formula::iff(k(x(ALPHA), t_quoted(x(PHI))), Formula::t(k_self(x(ALPHA), x(PHI))))))
}

pub fn in_plus() -> Formula {
    all_ag(all_l0(PHI, Formula::imp(k(x(ALPHA), t_quoted(x(PHI))), k(x(ALPHA), k_self(x(ALPHA), x(PHI))))))
}

pub fn in_minus() -> Formula {
    all_ag(all_l0(
        PHI,
        Formula::imp(
            Formula::not(k(x(ALPHA), t_quoted(x(PHI)))),
            k(x(ALPHA), d1(DotFn::Neg, k_self(x(ALPHA), x(PHI)))),
        ),
    ))
}

/// Positive introspection read with the unary knowledge predicate:
/// `∀φ∈L0 (K1(φ) → K1(K̇1(gq φ)))`.
pub fn u4() -> Formula {
    all_l0(PHI, Formula::imp(Formula::k1(x(PHI)), Formula::k1(d1(DotFn::K1, d1(DotFn::Gq, x(PHI))))))
}

pub fn uns() -> Formula {
    let eq_ev = Formula::eq(d1(DotFn::Ev, x(S)), d1(DotFn::Ev, x(T)));
    all_ag(all_l1(all_rel(
        S,
        DotRel::TermPa0,
        all_rel(
            T,
            DotRel::TermPa0,
            Formula::imp(
                eq_ev,
                Formula::iff(k(x(ALPHA), sbt(x(PHI), x(S), x(V))), k(x(ALPHA), sbt(x(PHI), x(T), x(V)))),
            ),
        ),
    )))
}

pub fn und() -> Formula {
    let neq_ev = Formula::not(Formula::eq(d1(DotFn::Ev, x(S)), d1(DotFn::Ev, x(T))));
    all_ag(all_rel(
        S,
        DotRel::TermPa0,
        all_rel(T, DotRel::TermPa0, Formula::imp(neq_ev, k(x(ALPHA), d1(DotFn::Neg, d2(DotFn::Eq, x(S), x(T)))))),
    ))
}

/// `∀φ∈L0 (Pr_S(φ) → T(φ))`.
pub fn truth_reflection(sys: &str) -> Formula {
    all_l0(PHI, Formula::imp(Formula::pr(sys, x(PHI)), Formula::t(x(PHI))))
}

pub fn ag_zero() -> Formula {
    Formula::ag(Term::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn all_sentences_round_trip() {
        let mut all: Vec<Formula> = pa().into_iter().map(|(_, f)| f).collect();
        all.extend([
            mpc_cases(),
            non_triviality(),
            k1_k2(),
            uk(),
            reflection("DCB"),
            uct_neg(),
            uct_imp(),
            uct_and(),
            uct_or(),
            uct_all(),
            uct_ex(),
            veracity(),
            ubf(),
            ia(),
            in_plus(),
            in_minus(),
            u4(),
            uns(),
            und(),
            truth_reflection("Base"),
            ag_zero(),
        ]);
        for f in all {
            assert!(f.is_sentence(), "{f}");
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }
}
