//! Shape checks for the first-order logic axioms.

use crate::syntax::{Formula, Func, Term, Var};
use num_traits::Zero;

/// Find `t` with `a[v := t] = b`, if the shapes agree. `Ok(None)` means `v`
/// has no free occurrence in `a` and `a = b`.
pub fn find_instance(a: &Formula, b: &Formula, v: Var) -> Result<Option<Term>, ()> {
    let mut slot = None;
    if match_formula(a, b, v, &mut Vec::new(), &mut slot) {
        Ok(slot)
    } else {
        Err(())
    }
}

fn match_formula(a: &Formula, b: &Formula, v: Var, bound: &mut Vec<Var>, slot: &mut Option<Term>) -> bool {
    match (a, b) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, v, bound, slot))
        }
        (Formula::Not(x), Formula::Not(y)) => match_formula(x, y, v, bound, slot),
        (Formula::Imp(x1, x2), Formula::Imp(y1, y2))
        | (Formula::And(x1, x2), Formula::And(y1, y2))
        | (Formula::Or(x1, x2), Formula::Or(y1, y2)) => {
            match_formula(x1, y1, v, bound, slot) && match_formula(x2, y2, v, bound, slot)
        }
        (Formula::Forall(w, x), Formula::Forall(w2, y)) | (Formula::Exists(w, x), Formula::Exists(w2, y)) => {
            if w != w2 {
                return false;
            }
            bound.push(*w);
            let ok = match_formula(x, y, v, bound, slot);
            bound.pop();
            ok
        }
        _ => false,
    }
}

fn match_term(a: &Term, b: &Term, v: Var, bound: &[Var], slot: &mut Option<Term>) -> bool {
    match a {
        Term::Var(w) if *w == v && !bound.contains(&v) => match slot {
            Some(t) => t == b,
            None => {
                *slot = Some(b.clone());
                true
            }
        },
        Term::Var(_) | Term::Num(_) => a == b,
        Term::App(f, xs) => match b {
            Term::App(g, ys) if f == g => xs.iter().zip(ys).all(|(x, y)| match_term(x, y, v, bound, slot)),
            Term::Num(n) if *f == Func::Succ && !n.is_zero() => {
                match_term(&xs[0], &Term::Num(n - 1u32), v, bound, slot)
            }
            _ => false,
        },
    }
}

/// Whether `b` arises from `a` by replacing some occurrences of `s` with `t`
/// at positions where no variable of `s` or `t` is bound.
pub fn is_eq_subst(a: &Formula, b: &Formula, s: &Term, t: &Term) -> bool {
    let mut vars = s.free_vars();
    vars.extend(t.free_vars());
    subst_formula(a, b, s, t, &vars, &mut Vec::new())
}

fn subst_formula(
    a: &Formula,
    b: &Formula,
    s: &Term,
    t: &Term,
    vars: &std::collections::BTreeSet<Var>,
    bound: &mut Vec<Var>,
) -> bool {
    match (a, b) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            let free_here = !bound.iter().any(|w| vars.contains(w));
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| subst_term(x, y, s, t, free_here))
        }
        (Formula::Not(x), Formula::Not(y)) => subst_formula(x, y, s, t, vars, bound),
        (Formula::Imp(x1, x2), Formula::Imp(y1, y2))
        | (Formula::And(x1, x2), Formula::And(y1, y2))
        | (Formula::Or(x1, x2), Formula::Or(y1, y2)) => {
            subst_formula(x1, y1, s, t, vars, bound) && subst_formula(x2, y2, s, t, vars, bound)
        }
        (Formula::Forall(w, x), Formula::Forall(w2, y)) | (Formula::Exists(w, x), Formula::Exists(w2, y)) => {
            if w != w2 {
                return false;
            }
            bound.push(*w);
            let ok = subst_formula(x, y, s, t, vars, bound);
            bound.pop();
            ok
        }
        _ => false,
    }
}

fn subst_term(x: &Term, y: &Term, s: &Term, t: &Term, free_here: bool) -> bool {
    if x == y {
        return true;
    }
    if free_here && x == s && y == t {
        return true;
    }
    match (x, y) {
        (Term::App(f, xs), Term::App(g, ys)) if f == g => {
            xs.iter().zip(ys).all(|(a, b)| subst_term(a, b, s, t, free_here))
        }
        _ => false,
    }
}

/// `∀v A → A[v := t]` with `t` free for `v`.
pub fn is_ui(f: &Formula) -> bool {
    let Formula::Imp(l, r) = f else { return false };
    let Formula::Forall(v, a) = l.as_ref() else { return false };
    match find_instance(a, r, *v) {
        Ok(None) => true,
        Ok(Some(t)) => a.instantiate(*v, &t).is_ok_and(|g| &g == r.as_ref()),
        Err(()) => false,
    }
}

/// `∀v (A → B) → (A → ∀v B)` with `v` not free in `A`.
pub fn is_q2(f: &Formula) -> bool {
    let Formula::Imp(l, r) = f else { return false };
    let Formula::Forall(v, body) = l.as_ref() else { return false };
    let Formula::Imp(a, b) = body.as_ref() else { return false };
    let Formula::Imp(a2, rest) = r.as_ref() else { return false };
    let Formula::Forall(v2, b2) = rest.as_ref() else { return false };
    v == v2 && a == a2 && b == b2 && !a.is_free(*v)
}

/// `∃v A ↔ ¬∀v ¬A`.
pub fn is_ex_def(f: &Formula) -> bool {
    let Some((l, r)) = f.as_iff() else { return false };
    let Formula::Exists(v, a) = l else { return false };
    let Formula::Not(n) = r else { return false };
    let Formula::Forall(v2, na) = n.as_ref() else { return false };
    matches!(na.as_ref(), Formula::Not(a2) if a2 == a) && v == v2
}

/// Replace every occurrence of `s` by `t` at positions where no variable of
/// `s` or `t` is bound. The result passes [`is_eq_subst`].
pub fn replace_term(f: &Formula, s: &Term, t: &Term) -> Formula {
    let mut vars = s.free_vars();
    vars.extend(t.free_vars());
    replace_in(f, s, t, &vars, &mut Vec::new())
}

fn replace_in(
    f: &Formula,
    s: &Term,
    t: &Term,
    vars: &std::collections::BTreeSet<Var>,
    bound: &mut Vec<Var>,
) -> Formula {
    match f {
        Formula::Atom(p, args) => {
            if bound.iter().any(|w| vars.contains(w)) {
                return f.clone();
            }
            Formula::Atom(p.clone(), args.iter().map(|a| replace_t(a, s, t)).collect())
        }
        Formula::Not(a) => Formula::not(replace_in(a, s, t, vars, bound)),
        Formula::Imp(a, b) => Formula::imp(replace_in(a, s, t, vars, bound), replace_in(b, s, t, vars, bound)),
        Formula::And(a, b) => Formula::and(replace_in(a, s, t, vars, bound), replace_in(b, s, t, vars, bound)),
        Formula::Or(a, b) => Formula::or(replace_in(a, s, t, vars, bound), replace_in(b, s, t, vars, bound)),
        Formula::Forall(w, a) | Formula::Exists(w, a) => {
            bound.push(*w);
            let inner = replace_in(a, s, t, vars, bound);
            bound.pop();
            if matches!(f, Formula::Forall(..)) {
                Formula::forall(*w, inner)
            } else {
                Formula::exists(*w, inner)
            }
        }
    }
}

fn replace_t(x: &Term, s: &Term, t: &Term) -> Term {
    if x == s {
        return t.clone();
    }
    match x {
        Term::App(f, xs) => Term::App(*f, xs.iter().map(|a| replace_t(a, s, t)).collect()),
        _ => x.clone(),
    }
}

/// `cur` with `s` replaced by `t` exactly where `target` has `t` and `cur`
/// has `s`; `None` if the connective structures differ.
pub fn replace_toward(cur: &Formula, target: &Formula, s: &Term, t: &Term) -> Option<Formula> {
    Some(match (cur, target) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) if p == q && xs.len() == ys.len() => {
            Formula::Atom(p.clone(), xs.iter().zip(ys).map(|(x, y)| toward_t(x, y, s, t)).collect())
        }
        (Formula::Not(x), Formula::Not(y)) => Formula::not(replace_toward(x, y, s, t)?),
        (Formula::Imp(x1, x2), Formula::Imp(y1, y2)) => {
            Formula::imp(replace_toward(x1, y1, s, t)?, replace_toward(x2, y2, s, t)?)
        }
        (Formula::And(x1, x2), Formula::And(y1, y2)) => {
            Formula::and(replace_toward(x1, y1, s, t)?, replace_toward(x2, y2, s, t)?)
        }
        (Formula::Or(x1, x2), Formula::Or(y1, y2)) => {
            Formula::or(replace_toward(x1, y1, s, t)?, replace_toward(x2, y2, s, t)?)
        }
        (Formula::Forall(v, x), Formula::Forall(w, y)) if v == w => Formula::forall(*v, replace_toward(x, y, s, t)?),
        (Formula::Exists(v, x), Formula::Exists(w, y)) if v == w => Formula::exists(*v, replace_toward(x, y, s, t)?),
        _ => return None,
    })
}

fn toward_t(x: &Term, y: &Term, s: &Term, t: &Term) -> Term {
    if x == s && y == t {
        return t.clone();
    }
    match (x, y) {
        (Term::App(f, xs), Term::App(g, ys)) if f == g => {
            Term::App(*f, xs.iter().zip(ys).map(|(a, b)| toward_t(a, b, s, t)).collect())
        }
        _ => x.clone(),
    }
}

/// Pairs of maximal differing subterms of two formulas with the same
/// connective structure, or `None` if the structures differ.
pub fn term_diffs(a: &Formula, b: &Formula) -> Option<Vec<(Term, Term)>> {
    let mut out = Vec::new();
    diff_f(a, b, &mut out).then_some(out)
}

fn diff_f(a: &Formula, b: &Formula, out: &mut Vec<(Term, Term)>) -> bool {
    match (a, b) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) if p == q && xs.len() == ys.len() => {
            for (x, y) in xs.iter().zip(ys) {
                diff_t(x, y, out);
            }
            true
        }
        (Formula::Not(x), Formula::Not(y)) => diff_f(x, y, out),
        (Formula::Imp(x1, x2), Formula::Imp(y1, y2))
        | (Formula::And(x1, x2), Formula::And(y1, y2))
        | (Formula::Or(x1, x2), Formula::Or(y1, y2)) => diff_f(x1, y1, out) && diff_f(x2, y2, out),
        (Formula::Forall(v, x), Formula::Forall(w, y)) | (Formula::Exists(v, x), Formula::Exists(w, y)) => {
            v == w && diff_f(x, y, out)
        }
        _ => false,
    }
}

fn diff_t(x: &Term, y: &Term, out: &mut Vec<(Term, Term)>) {
    if x == y {
        return;
    }
    match (x, y) {
        (Term::App(f, xs), Term::App(g, ys))
            if f == g && (!matches!(f, Func::Dot(_)) || !x.free_vars().is_empty() || !y.free_vars().is_empty()) =>
        {
            for (a, b) in xs.iter().zip(ys) {
                diff_t(a, b, out);
            }
        }
        _ => {
            if !out.contains(&(x.clone(), y.clone())) {
                out.push((x.clone(), y.clone()));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn instantiation() {
        assert!(is_ui(&f("forall v0 v0 = S(v0) -> 0 = S(0)")));
        assert!(is_ui(&f("forall v0 T(v0) -> T(v5 + S(0))")));
        assert!(!is_ui(&f("forall v0 (v0 = v0) -> 0 = S(0)")));
        assert!(!is_ui(&f("forall v0 exists v1 v0 = v1 -> exists v1 v1 = v1")));
        assert!(is_ui(&f("forall v0 0 = 0 -> 0 = 0")));
    }

    #[test]
    fn equality_substitution() {
        let s = crate::syntax::parse_term("v1").unwrap();
        let t = crate::syntax::parse_term("S(0)").unwrap();
        assert!(is_eq_subst(&f("T(v1) /\\ K1(v1)"), &f("T(S(0)) /\\ K1(v1)"), &s, &t));
        assert!(!is_eq_subst(&f("forall v1 T(v1)"), &f("forall v1 T(S(0))"), &s, &t));
    }

    #[test]
    fn quantifier_axioms() {
        assert!(is_q2(&f("forall v0 (0 = 0 -> T(v0)) -> (0 = 0 -> forall v0 T(v0))")));
        assert!(!is_q2(&f("forall v0 (T(v0) -> T(v0)) -> (T(v0) -> forall v0 T(v0))")));
        assert!(is_ex_def(&f("exists v0 T(v0) <-> ~forall v0 ~T(v0)")));
    }
}
