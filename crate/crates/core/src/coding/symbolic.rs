//! Symbolic normalization of dotted terms.
//!
//! Closed terms evaluate to naturals. Open terms evaluate to values that may
//! mention opaque subterms: a syntax template whose holes stand for the
//! numeral of an unknown value, or for the sentence / closed term coded by a
//! guarded unknown. Two terms with structurally equal values are equal under
//! every assignment satisfying the guards.

use super::{decode, eval_dot_fn_total, eval_dot_rel, gc};
use crate::syntax::{DotFn, DotRel, Formula, Func, Pred, Syntax, Term, Var};
use num_bigint::BigUint;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

/// Variables at or above this index are template holes.
pub const HOLE_BASE: u32 = 1 << 30;
const META: &str = "\u{1}meta";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompError {
    #[error("variable index {0} is reserved")]
    Reserved(u32),
    #[error("`{0}` is not a computable atom")]
    NotComputable(String),
    #[error("sides do not normalize to the same value: `{0}` vs `{1}`")]
    Mismatch(String, String),
    #[error("relation atom `{0}` does not evaluate to the required truth value")]
    Undecided(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Opq {
    Var(Var),
    App(Func, Vec<SymVal>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SymVal {
    Nat(BigUint),
    Syn(Syntax),
    Opq(Opq),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Hole {
    NumOf(SymVal),
    FMeta(Opq),
    TMeta(Opq, bool),
}

#[derive(Debug, Clone, Copy, Default)]
struct Guard {
    l0: bool,
    term0: bool,
    pa: bool,
    var: bool,
}

enum Slot<T> {
    Known(T),
    Ill,
    Unknown,
}

use Slot::{Ill, Known, Unknown};

#[derive(Default)]
pub struct Evaluator {
    holes: Vec<Hole>,
    index: HashMap<Hole, u32>,
    guards: HashMap<Opq, Guard>,
}

fn is_hole(v: Var) -> bool {
    v.0 >= HOLE_BASE
}

fn real_free(s: &Syntax) -> bool {
    s.free_vars().into_iter().any(|v| !is_hole(v))
}

fn foreign(s: &Syntax) -> bool {
    let bad_term = |t: &Term| t.free_vars().into_iter().any(is_hole);
    match s {
        Syntax::Term(t) => bad_term(t),
        Syntax::Formula(f) => {
            let mut bad = false;
            f.walk(&mut |g| match g {
                Formula::Atom(p, args) => {
                    bad |= matches!(p, Pred::Pr(n) if &**n == META) || args.iter().any(bad_term);
                }
                Formula::Forall(v, _) | Formula::Exists(v, _) => bad |= is_hole(*v),
                _ => {}
            });
            bad
        }
    }
}

fn has_holes(s: &Syntax) -> bool {
    s.free_vars().into_iter().any(is_hole)
}

fn arith(f: Func, vals: Vec<SymVal>) -> SymVal {
    if let [SymVal::Nat(a), rest @ ..] = vals.as_slice() {
        match (f, rest) {
            (Func::Succ, []) => return SymVal::Nat(a + 1u32),
            (Func::Plus, [SymVal::Nat(b)]) => return SymVal::Nat(a + b),
            (Func::Times, [SymVal::Nat(b)]) => return SymVal::Nat(a * b),
            _ => {}
        }
    }
    SymVal::Opq(Opq::App(f, vals))
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    fn hole(&mut self, h: Hole) -> u32 {
        if let Some(i) = self.index.get(&h) {
            return *i;
        }
        let i = HOLE_BASE + self.holes.len() as u32;
        self.holes.push(h.clone());
        self.index.insert(h, i);
        i
    }

    fn kind(&self, v: Var) -> &Hole {
        &self.holes[(v.0 - HOLE_BASE) as usize]
    }

    fn guard(&self, o: &Opq) -> Guard {
        self.guards.get(o).copied().unwrap_or_default()
    }

    fn fmeta(&mut self, o: &Opq) -> Formula {
        let i = self.hole(Hole::FMeta(o.clone()));
        Formula::Atom(Pred::Pr(Arc::from(META)), vec![Term::Var(Var(i))])
    }

    fn meta_of(&self, f: &Formula) -> Option<Opq> {
        match f {
            Formula::Atom(Pred::Pr(n), a) if &**n == META => match &a[0] {
                Term::Var(v) => match self.kind(*v) {
                    Hole::FMeta(o) => Some(o.clone()),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    /// Canonical value of a template.
    fn finish(&self, s: Syntax) -> SymVal {
        if !has_holes(&s) {
            return SymVal::Nat(gc(&s).0);
        }
        match &s {
            Syntax::Formula(f) => {
                if let Some(o) = self.meta_of(f) {
                    return SymVal::Opq(o);
                }
            }
            Syntax::Term(Term::Var(v)) => {
                if let Hole::TMeta(o, _) = self.kind(*v) {
                    return SymVal::Opq(o.clone());
                }
            }
            _ => {}
        }
        SymVal::Syn(s)
    }

    fn syntax(&mut self, x: &SymVal) -> Slot<Syntax> {
        match x {
            SymVal::Nat(c) => match decode(&super::GodelCode(c.clone())) {
                Ok(s) if foreign(&s) => Unknown,
                Ok(s) => Known(s),
                Err(_) => Ill,
            },
            SymVal::Syn(s) => Known(s.clone()),
            SymVal::Opq(o) => {
                let g = self.guard(o);
                if g.l0 {
                    Known(Syntax::Formula(self.fmeta(o)))
                } else if g.term0 || g.pa {
                    let i = self.hole(Hole::TMeta(o.clone(), g.pa));
                    Known(Syntax::Term(Term::Var(Var(i))))
                } else {
                    Unknown
                }
            }
        }
    }

    fn formula(&mut self, x: &SymVal) -> Slot<Formula> {
        match self.syntax(x) {
            Known(Syntax::Formula(f)) => Known(f),
            Known(Syntax::Term(_)) | Ill => Ill,
            Unknown => Unknown,
        }
    }

    fn term(&mut self, x: &SymVal) -> Slot<Term> {
        if let SymVal::Opq(o) = x {
            if self.guard(o).l0 {
                return Ill;
            }
        }
        match self.syntax(x) {
            Known(Syntax::Term(t)) => Known(t),
            Known(Syntax::Formula(_)) | Ill => Ill,
            Unknown => Unknown,
        }
    }

    fn var(&mut self, x: &SymVal) -> Slot<Var> {
        match x {
            SymVal::Opq(_) => Unknown,
            _ => match self.term(x) {
                Known(Term::Var(v)) if !is_hole(v) => Known(v),
                Known(_) | Ill => Ill,
                Unknown => Unknown,
            },
        }
    }

    /// Normalize a term.
    pub fn eval(&mut self, t: &Term) -> Result<SymVal, CompError> {
        Ok(match t {
            Term::Var(v) if is_hole(*v) => return Err(CompError::Reserved(v.0)),
            Term::Var(v) => SymVal::Opq(Opq::Var(*v)),
            Term::Num(n) => SymVal::Nat(n.clone()),
            Term::App(f, args) => {
                let vals = args.iter().map(|a| self.eval(a)).collect::<Result<Vec<_>, _>>()?;
                match f {
                    Func::Succ | Func::Plus | Func::Times => arith(*f, vals),
                    Func::SmallU => SymVal::Opq(Opq::App(*f, vals)),
                    Func::Dot(d) => self.dot(*d, vals),
                }
            }
        })
    }

    fn dot(&mut self, d: DotFn, vals: Vec<SymVal>) -> SymVal {
        if let Some(ns) = vals
            .iter()
            .map(|v| match v {
                SymVal::Nat(n) => Some(n.clone()),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
        {
            return SymVal::Nat(eval_dot_fn_total(d, &ns));
        }
        match self.dot_symbolic(d, &vals) {
            Known(v) => v,
            Ill => SymVal::Nat(BigUint::zero()),
            Unknown => SymVal::Opq(Opq::App(Func::Dot(d), vals)),
        }
    }

    fn terms(&mut self, vals: &[SymVal]) -> Slot<Vec<Term>> {
        let mut out = Vec::new();
        let mut unknown = false;
        for v in vals {
            match self.term(v) {
                Known(t) => out.push(t),
                Ill => return Ill,
                Unknown => unknown = true,
            }
        }
        if unknown {
            Unknown
        } else {
            Known(out)
        }
    }

    fn formulas(&mut self, vals: &[SymVal]) -> Slot<Vec<Formula>> {
        let mut out = Vec::new();
        let mut unknown = false;
        for v in vals {
            match self.formula(v) {
                Known(f) => out.push(f),
                Ill => return Ill,
                Unknown => unknown = true,
            }
        }
        if unknown {
            Unknown
        } else {
            Known(out)
        }
    }

    fn dot_symbolic(&mut self, d: DotFn, a: &[SymVal]) -> Slot<SymVal> {
        let fin = |s: &Self, x: Syntax| Known(s.finish(x));
        match d {
            DotFn::Gq | DotFn::Num => {
                let i = self.hole(Hole::NumOf(a[0].clone()));
                Known(SymVal::Syn(Syntax::Term(Term::Var(Var(i)))))
            }
            DotFn::Neg | DotFn::Imp | DotFn::And | DotFn::Or => match self.formulas(a) {
                Known(mut fs) => {
                    let f = match d {
                        DotFn::Neg => Formula::not(fs.remove(0)),
                        DotFn::Imp => Formula::imp(fs.remove(0), fs.remove(0)),
                        DotFn::And => Formula::and(fs.remove(0), fs.remove(0)),
                        _ => Formula::or(fs.remove(0), fs.remove(0)),
                    };
                    fin(self, Syntax::Formula(f))
                }
                Ill => Ill,
                Unknown => Unknown,
            },
            DotFn::Forall | DotFn::Exists => {
                let v = self.var(&a[0]);
                let b = self.formula(&a[1]);
                match (v, b) {
                    (Ill, _) | (_, Ill) => Ill,
                    (Known(v), Known(b)) => {
                        let f = if d == DotFn::Forall { Formula::forall(v, b) } else { Formula::exists(v, b) };
                        fin(self, Syntax::Formula(f))
                    }
                    _ => Unknown,
                }
            }
            DotFn::Sbt => self.sbt(a),
            DotFn::Ev => match self.term(&a[0]) {
                Known(t) => self.ev(&t),
                Ill => Ill,
                Unknown => Unknown,
            },
            DotFn::Eq | DotFn::T | DotFn::K1 | DotFn::K2 | DotFn::Ag | DotFn::U => match self.terms(a) {
                Known(ts) => {
                    let p = match d {
                        DotFn::Eq => Pred::Eq,
                        DotFn::T => Pred::T,
                        DotFn::K1 => Pred::K1,
                        DotFn::K2 => Pred::K2,
                        DotFn::Ag => Pred::Ag,
                        _ => Pred::U,
                    };
                    fin(self, Syntax::Formula(Formula::Atom(p, ts)))
                }
                Ill => Ill,
                Unknown => Unknown,
            },
            DotFn::Succ | DotFn::Plus | DotFn::Times | DotFn::SmallU => match self.terms(a) {
                Known(ts) => {
                    let f = match d {
                        DotFn::Succ => Func::Succ,
                        DotFn::Plus => Func::Plus,
                        DotFn::Times => Func::Times,
                        _ => Func::SmallU,
                    };
                    fin(self, Syntax::Term(Term::app_unchecked(f, ts)))
                }
                Ill => Ill,
                Unknown => Unknown,
            },
            DotFn::Mpc => self.mpc(&a[0]),
        }
    }

    fn sbt(&mut self, a: &[SymVal]) -> Slot<SymVal> {
        let v = self.var(&a[2]);
        let t = self.term(&a[1]);
        if let Known(t) = &t {
            if real_free(&Syntax::Term(t.clone())) {
                return Ill;
            }
        }
        if let SymVal::Opq(o) = &a[0] {
            let g = self.guard(o);
            if g.l0 || g.term0 || g.pa {
                return match (v, t) {
                    (Ill, _) | (_, Ill) => Ill,
                    (Known(_), Known(_)) => Known(a[0].clone()),
                    _ => Unknown,
                };
            }
        }
        let body = self.syntax(&a[0]);
        match (body, t, v) {
            (Ill, ..) | (_, Ill, _) | (.., Ill) => Ill,
            (Known(b), Known(t), Known(v)) => {
                let s = match b {
                    Syntax::Formula(f) => Syntax::Formula(f.replace_free(v, &t)),
                    Syntax::Term(s) => Syntax::Term(s.replace(v, &t)),
                };
                Known(self.finish(s))
            }
            _ => Unknown,
        }
    }

    fn ev(&mut self, t: &Term) -> Slot<SymVal> {
        match t {
            Term::Num(n) => Known(SymVal::Nat(n.clone())),
            Term::Var(v) if is_hole(*v) => match self.kind(*v).clone() {
                Hole::NumOf(x) => Known(x),
                Hole::TMeta(o, true) => Known(SymVal::Opq(Opq::App(Func::Dot(DotFn::Ev), vec![SymVal::Opq(o)]))),
                Hole::TMeta(_, false) => Unknown,
                Hole::FMeta(_) => Ill,
            },
            Term::Var(_) => Ill,
            Term::App(f, args) if f.is_arithmetic() => {
                let mut vals = Vec::new();
                let mut unknown = false;
                for a in args {
                    match self.ev(a) {
                        Known(v) => vals.push(v),
                        Ill => return Ill,
                        Unknown => unknown = true,
                    }
                }
                if unknown {
                    Unknown
                } else {
                    Known(arith(*f, vals))
                }
            }
            Term::App(..) => Ill,
        }
    }

    fn mpc(&mut self, x: &SymVal) -> Slot<SymVal> {
        match self.formula(x) {
            Ill => Known(x.clone()),
            Unknown => Unknown,
            Known(f) => {
                let Formula::And(l, r) = &f else {
                    return if self.meta_of(&f).is_some() { Unknown } else { Known(x.clone()) };
                };
                let Formula::Imp(l2, b) = &**r else {
                    return if self.meta_of(r).is_some() { Unknown } else { Known(x.clone()) };
                };
                let sentence = |g: &Formula| !real_free(&Syntax::Formula(g.clone()));
                if l == l2 {
                    if sentence(l) && sentence(b) {
                        Known(self.finish(Syntax::Formula((**b).clone())))
                    } else {
                        Known(x.clone())
                    }
                } else {
                    Unknown
                }
            }
        }
    }

    /// Decide a dotted relation on normalized arguments.
    pub fn decide(&mut self, r: DotRel, vals: &[SymVal]) -> Option<bool> {
        if let Some(ns) = vals
            .iter()
            .map(|v| match v {
                SymVal::Nat(n) => Some(n.clone()),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
        {
            return Some(eval_dot_rel(r, &ns));
        }
        let g = match &vals[0] {
            SymVal::Opq(o) => self.guard(o),
            _ => Guard::default(),
        };
        match r {
            DotRel::L0 => match self.formula(&vals[0]) {
                Known(f) => Some(!real_free(&Syntax::Formula(f))),
                Ill => Some(false),
                Unknown => None,
            },
            DotRel::Term0 => match self.term(&vals[0]) {
                Known(t) => Some(!real_free(&Syntax::Term(t))),
                Ill => Some(false),
                Unknown => None,
            },
            DotRel::TermPa0 => match self.term(&vals[0]) {
                Known(t) => self.pa_closed(&t),
                Ill => Some(false),
                Unknown => None,
            },
            DotRel::Var => match self.var(&vals[0]) {
                Known(_) => Some(true),
                Ill => Some(false),
                Unknown if g.var => Some(true),
                Unknown => None,
            },
            DotRel::L1 => match (self.var(&vals[0]), self.formula(&vals[1])) {
                (Ill, _) | (_, Ill) => Some(false),
                (Known(v), Known(f)) => {
                    let fv: Vec<Var> = f.free_vars().into_iter().filter(|w| !is_hole(*w)).collect();
                    Some(fv == [v])
                }
                _ => None,
            },
        }
    }

    fn pa_closed(&self, t: &Term) -> Option<bool> {
        match t {
            Term::Num(_) => Some(true),
            Term::Var(v) if is_hole(*v) => match self.kind(*v) {
                Hole::NumOf(_) | Hole::TMeta(_, true) => Some(true),
                _ => None,
            },
            Term::Var(_) => Some(false),
            Term::App(f, args) if f.is_arithmetic() => {
                let mut all = Some(true);
                for a in args {
                    match self.pa_closed(a) {
                        Some(false) => return Some(false),
                        None => all = None,
                        Some(true) => {}
                    }
                }
                all
            }
            Term::App(..) => Some(false),
        }
    }

    /// Record a guard atom. Returns `Some(false)` when the guard is refuted.
    fn assume(&mut self, r: DotRel, arg: &Term) -> Result<Option<bool>, CompError> {
        let v = self.eval(arg)?;
        if let SymVal::Opq(o) = &v {
            let mut g = self.guard(o);
            match r {
                DotRel::L0 => g.l0 = true,
                DotRel::Term0 => g.term0 = true,
                DotRel::TermPa0 => g.pa = true,
                DotRel::Var => g.var = true,
                DotRel::L1 => {}
            }
            self.guards.insert(o.clone(), g);
            return Ok(None);
        }
        Ok(self.decide(r, &[v]))
    }
}

fn guard_atom(f: &Formula) -> Option<(DotRel, &Term)> {
    match f {
        Formula::Atom(Pred::Dot(r), a) if a.len() == 1 => Some((*r, &a[0])),
        _ => None,
    }
}

/// Check an instance of the computation rule:
/// `G1 → … → Gk → C` where each `Gi` is a unary dotted-relation atom and `C`
/// is an equation, a dotted-relation atom, or the negation of either.
pub fn check_comp(phi: &Formula) -> Result<(), CompError> {
    let mut ev = Evaluator::new();
    let mut cur = phi;
    while let Formula::Imp(g, rest) = cur {
        let Some((r, arg)) = guard_atom(g) else { break };
        if ev.assume(r, arg)? == Some(false) {
            return Ok(());
        }
        cur = rest;
    }
    let (atom, want) = match cur {
        Formula::Not(a) => (&**a, false),
        a => (a, true),
    };
    match atom {
        Formula::Atom(Pred::Eq, a) => {
            let l = ev.eval(&a[0])?;
            let r = ev.eval(&a[1])?;
            let same = l == r;
            let differ = matches!((&l, &r), (SymVal::Nat(x), SymVal::Nat(y)) if x != y);
            if (want && same) || (!want && differ) {
                Ok(())
            } else {
                Err(CompError::Mismatch(a[0].to_string(), a[1].to_string()))
            }
        }
        Formula::Atom(Pred::Dot(r), a) => {
            let vals = a.iter().map(|t| ev.eval(t)).collect::<Result<Vec<_>, _>>()?;
            if ev.decide(*r, &vals) == Some(want) {
                Ok(())
            } else {
                Err(CompError::Undecided(atom.to_string()))
            }
        }
        _ => Err(CompError::NotComputable(cur.to_string())),
    }
}

/// Normal form of a closed or open term, for callers comparing terms.
pub fn normalize(t: &Term) -> Result<SymVal, CompError> {
    Evaluator::new().eval(t)
}

/// Whether two terms denote the same value under every assignment, judged by
/// syntactic identity or equal normal forms.
pub fn same_value(a: &Term, b: &Term) -> bool {
    if a == b {
        return true;
    }
    let mut ev = Evaluator::new();
    matches!((ev.eval(a), ev.eval(b)), (Ok(x), Ok(y)) if x == y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{quote, quote_var};
    use crate::syntax::{numeral, parse_formula};

    fn v(i: u32) -> Term {
        Term::var(i)
    }

    #[test]
    fn closed_equation() {
        let phi = parse_formula("T(v0)").unwrap();
        let lhs = Term::dot(DotFn::Sbt, vec![quote(&phi), Term::dot1(DotFn::Gq, numeral(3u32)), quote_var(Var(0))]);
        let t3 = Formula::t(numeral(3u32));
        let wrong = quote(&Formula::t(crate::coding::gq(&Syntax::Term(numeral(3u32)))));
        assert!(check_comp(&Formula::eq(lhs.clone(), quote(&t3))).is_ok());
        assert!(check_comp(&Formula::eq(lhs, wrong)).is_err());
    }

    #[test]
    fn substitution_distributes_uniformly() {
        let a = parse_formula("T(v0)").unwrap();
        let b = parse_formula("K1(v0)").unwrap();
        let gqu = Term::dot1(DotFn::Gq, v(5));
        let s = |f: &Formula| Term::dot(DotFn::Sbt, vec![quote(f), gqu.clone(), quote_var(Var(0))]);
        let lhs = s(&Formula::imp(a.clone(), b.clone()));
        let rhs = Term::dot2(DotFn::Imp, s(&a), s(&b));
        assert!(check_comp(&Formula::eq(lhs, rhs)).is_ok());
    }

    #[test]
    fn guarded_metas() {
        let and = Term::dot2(DotFn::And, v(1), Term::dot2(DotFn::Imp, v(1), v(2)));
        let eq = Formula::eq(Term::dot1(DotFn::Mpc, and), v(2));
        assert!(check_comp(&eq).is_err());
        let guarded = Formula::imps([Formula::l0(v(1)), Formula::l0(v(2))], eq);
        assert!(check_comp(&guarded).is_ok());
        let sb = Term::dot(DotFn::Sbt, vec![v(1), Term::dot1(DotFn::Gq, v(3)), quote_var(Var(0))]);
        assert!(check_comp(&Formula::imp(Formula::l0(v(1)), Formula::eq(sb.clone(), v(1)))).is_ok());
        assert!(check_comp(&Formula::eq(sb, v(1))).is_err());
    }

    #[test]
    fn relations_on_templates() {
        let a = parse_formula("T(v0)").unwrap();
        let s = Term::dot(DotFn::Sbt, vec![quote(&a), Term::dot1(DotFn::Gq, v(4)), quote_var(Var(0))]);
        assert!(check_comp(&Formula::l0(s.clone())).is_ok());
        let open = Term::dot(DotFn::Sbt, vec![quote(&a), Term::dot1(DotFn::Gq, v(4)), quote_var(Var(1))]);
        assert!(check_comp(&Formula::not(Formula::l0(open))).is_ok());
        let ev = Term::dot1(DotFn::Ev, Term::dot1(DotFn::Num, v(4)));
        assert!(check_comp(&Formula::eq(ev, v(4))).is_ok());
    }

    #[test]
    fn reserved_variables_rejected() {
        let f = Formula::eq(Term::Var(Var(HOLE_BASE)), Term::Var(Var(HOLE_BASE)));
        assert_eq!(check_comp(&f), Err(CompError::Reserved(HOLE_BASE)));
    }
}
