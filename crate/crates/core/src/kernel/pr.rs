//! Shape checks for the rules governing the provability predicates.

use super::taut::{prop_valid, Prop};
use crate::coding::symbolic::same_value;
use crate::coding::{decode_formula, eval_pure, has_small_u, quote, quote_var};
use crate::syntax::{DotFn, DotRel, Formula, Func, Pred, Term};
use std::sync::Arc;

/// `Pr_S(t)` as `(S, t)`.
pub fn as_pr(f: &Formula) -> Option<(&Arc<str>, &Term)> {
    match f {
        Formula::Atom(Pred::Pr(s), a) => Some((s, &a[0])),
        _ => None,
    }
}

fn dot_args(t: &Term, d: DotFn) -> Option<&[Term]> {
    match t {
        Term::App(Func::Dot(e), a) if *e == d => Some(a),
        _ => None,
    }
}

/// `Pr_S(imp(a, b)) → (Pr_S(a) → Pr_S(b))`, the first argument taken up to
/// computation. Returns the system.
pub fn check_d2(f: &Formula) -> Option<Arc<str>> {
    let Formula::Imp(l, r) = f else { return None };
    let Formula::Imp(m, c) = r.as_ref() else { return None };
    let (s1, x) = as_pr(l)?;
    let (s2, a) = as_pr(m)?;
    let (s3, b) = as_pr(c)?;
    if s1 != s2 || s2 != s3 {
        return None;
    }
    same_value(x, &Term::dot2(DotFn::Imp, a.clone(), b.clone())).then(|| s1.clone())
}

/// `Pr_S(F) → Pr_S(sbt(B, gq(t), V))` with `F` equal to `all(V, B)`.
pub fn check_internal_ui(f: &Formula) -> Option<Arc<str>> {
    let Formula::Imp(l, r) = f else { return None };
    let (s1, x) = as_pr(l)?;
    let (s2, y) = as_pr(r)?;
    if s1 != s2 {
        return None;
    }
    let [b, g, v] = dot_args(y, DotFn::Sbt)? else { return None };
    dot_args(g, DotFn::Gq)?;
    same_value(x, &Term::dot2(DotFn::Forall, v.clone(), b.clone())).then(|| s1.clone())
}

fn sigma_shape(f: &Formula, known: &dyn Fn(&str) -> bool) -> bool {
    let pure = |args: &[Term]| args.iter().all(|t| !has_small_u(t));
    match f {
        Formula::And(a, b) | Formula::Or(a, b) => sigma_shape(a, known) && sigma_shape(b, known),
        Formula::Atom(Pred::Eq | Pred::Dot(_), a) => pure(a),
        Formula::Not(a) => matches!(a.as_ref(), Formula::Atom(Pred::Eq | Pred::Dot(_), x) if pure(x)),
        Formula::Atom(Pred::Pr(s), a) => known(s) && pure(a),
        _ => false,
    }
}

/// `χ → Pr_S(X)` where `χ` is built by `∧`, `∨` from computable literals and
/// provability atoms, and `X` computes the code of `χ` with each free
/// variable `y` replaced by the numeral of its value.
pub fn check_pr_sigma(f: &Formula, known: &dyn Fn(&str) -> bool) -> Option<Arc<str>> {
    let Formula::Imp(chi, r) = f else { return None };
    let (s, x) = as_pr(r)?;
    if !sigma_shape(chi, known) {
        return None;
    }
    let chain = chi
        .free_vars()
        .into_iter()
        .fold(quote(chi), |acc, y| Term::dot(DotFn::Sbt, vec![acc, Term::dot1(DotFn::Gq, Term::Var(y)), quote_var(y)]));
    same_value(x, &chain).then(|| s.clone())
}

fn prop_of(t: &Term, guards: &[&Term], leaves: &mut Vec<Term>) -> Option<Prop> {
    let un = |d| dot_args(t, d);
    if let Some([a]) = un(DotFn::Neg) {
        return Some(Prop::Not(Box::new(prop_of(a, guards, leaves)?)));
    }
    for (d, mk) in
        [(DotFn::Imp, Prop::Imp as fn(Box<Prop>, Box<Prop>) -> Prop), (DotFn::And, Prop::And), (DotFn::Or, Prop::Or)]
    {
        if let Some([a, b]) = un(d) {
            let pa = prop_of(a, guards, leaves)?;
            let pb = prop_of(b, guards, leaves)?;
            return Some(mk(Box::new(pa), Box::new(pb)));
        }
    }
    let is_sentence_code = || eval_pure(t).and_then(|c| decode_formula(&c)).is_some_and(|phi| phi.is_sentence());
    if !guards.contains(&t) && !is_sentence_code() {
        return None;
    }
    let i = match leaves.iter().position(|l| l == t) {
        Some(i) => i,
        None => {
            leaves.push(t.clone());
            leaves.len() - 1
        }
    };
    Some(Prop::Letter(i))
}

/// `L0(t1) → … → L0(tk) → Pr_S(τ)` with `τ` a propositional tautology built by
/// the dotted connectives over the guarded terms and closed sentence codes.
pub fn check_pr_taut(f: &Formula) -> Option<Arc<str>> {
    let mut guards = Vec::new();
    let mut cur = f;
    loop {
        match cur {
            Formula::Imp(g, rest) => match g.as_ref() {
                Formula::Atom(Pred::Dot(DotRel::L0), a) => {
                    guards.push(&a[0]);
                    cur = rest;
                }
                _ => return None,
            },
            _ => break,
        }
    }
    let (s, tau) = as_pr(cur)?;
    let mut leaves = Vec::new();
    let p = prop_of(tau, &guards, &mut leaves)?;
    prop_valid(&p, leaves.len()).then(|| s.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn distribution() {
        assert!(check_d2(&f("Pr[DCB](@imp(v1, v2)) -> (Pr[DCB](v1) -> Pr[DCB](v2))")).is_some());
        assert!(check_d2(&f("Pr[DCB](<<0 = 0 -> 0 = 0>>) -> (Pr[DCB](<<0 = 0>>) -> Pr[DCB](<<0 = 0>>))")).is_some());
        assert!(check_d2(&f("Pr[DCB](@imp(v1, v2)) -> (Pr[DCB](v2) -> Pr[DCB](v1))")).is_none());
        assert!(check_d2(&f("Pr[DCB](@imp(v1, v2)) -> (Pr[KT](v1) -> Pr[KT](v2))")).is_none());
    }

    #[test]
    fn internal_instantiation() {
        let ok = f("Pr[DCB](<<forall v0 T(v0)>>) -> Pr[DCB](@sbt(<<T(v0)>>, @gq(v7), <<v0>>))");
        assert!(check_internal_ui(&ok).is_some());
        let bad = f("Pr[DCB](<<T(v0)>>) -> Pr[DCB](@sbt(<<T(v0)>>, @gq(v7), <<v0>>))");
        assert!(check_internal_ui(&bad).is_none());
    }

    #[test]
    fn sigma_completeness() {
        let known = |s: &str| s == "DCB";
        let ok = f("Pr[DCB](v0) -> Pr[DCB](@sbt(<<Pr[DCB](v0)>>, @gq(v0), <<v0>>))");
        assert!(check_pr_sigma(&ok, &known).is_some());
        let no = f("T(v0) -> Pr[DCB](@sbt(<<T(v0)>>, @gq(v0), <<v0>>))");
        assert!(check_pr_sigma(&no, &known).is_none());
        let closed = f("0 = 0 -> Pr[DCB](<<0 = 0>>)");
        assert!(check_pr_sigma(&closed, &known).is_some());
    }

    #[test]
    fn provable_tautologies() {
        let ok = f("@L0(v1) -> @L0(v2) -> Pr[DCB](@imp(@and(v1, @imp(v1, v2)), v2))");
        assert!(check_pr_taut(&ok).is_some());
        assert!(check_pr_taut(&f("@L0(v1) -> Pr[DCB](@imp(v1, v2))")).is_none());
        assert!(check_pr_taut(&f("Pr[DCB](@imp(<<0 = 0>>, <<0 = 0>>))")).is_some());
    }
}
