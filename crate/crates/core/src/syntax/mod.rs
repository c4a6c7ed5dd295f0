//! Abstract syntax of the language: arithmetic, the universal symbols `U`/`u`,
//! knowledge (`K1`, `K2`), truth (`T`), agency (`Ag`), provability predicates
//! indexed by system name, and the dotted symbols representing syntactic
//! operations on codes.

pub mod gen;
mod parse;
mod print;

pub use parse::{parse_formula, parse_syntax, parse_term, ParseError};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("symbol `{symbol}` expects {expected} argument(s), got {got}")]
    Arity { symbol: String, expected: usize, got: usize },
    #[error("substituted term `{0}` is not closed")]
    OpenTerm(String),
    #[error("renaming `{from}` to `{to}` would be captured")]
    Capture { from: Var, to: Var },
    #[error("term `{0}` is not a closed arithmetic term")]
    NotArithmetic(String),
}

/// A variable `v<n>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Dotted function symbols. Each represents a computable function on codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DotFn {
    Neg,
    Imp,
    And,
    Or,
    Forall,
    Exists,
    Sbt,
    Gq,
    Num,
    Ev,
    Eq,
    T,
    K1,
    K2,
    Ag,
    U,
    Succ,
    Plus,
    Times,
    SmallU,
    /// Modus-ponens consequent: `a ∧ (a → b)` ↦ `b`, identity elsewhere.
    Mpc,
}

impl DotFn {
    pub const ALL: [DotFn; 21] = [
        DotFn::Neg,
        DotFn::Imp,
        DotFn::And,
        DotFn::Or,
        DotFn::Forall,
        DotFn::Exists,
        DotFn::Sbt,
        DotFn::Gq,
        DotFn::Num,
        DotFn::Ev,
        DotFn::Eq,
        DotFn::T,
        DotFn::K1,
        DotFn::K2,
        DotFn::Ag,
        DotFn::U,
        DotFn::Succ,
        DotFn::Plus,
        DotFn::Times,
        DotFn::SmallU,
        DotFn::Mpc,
    ];

    pub fn arity(self) -> usize {
        match self {
            DotFn::Neg | DotFn::Gq | DotFn::Num | DotFn::Ev | DotFn::T | DotFn::K1 => 1,
            DotFn::Ag | DotFn::U | DotFn::Succ | DotFn::SmallU | DotFn::Mpc => 1,
            DotFn::Sbt => 3,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DotFn::Neg => "neg",
            DotFn::Imp => "imp",
            DotFn::And => "and",
            DotFn::Or => "or",
            DotFn::Forall => "all",
            DotFn::Exists => "ex",
            DotFn::Sbt => "sbt",
            DotFn::Gq => "gq",
            DotFn::Num => "num",
            DotFn::Ev => "ev",
            DotFn::Eq => "eq",
            DotFn::T => "T",
            DotFn::K1 => "K1",
            DotFn::K2 => "K2",
            DotFn::Ag => "Ag",
            DotFn::U => "U",
            DotFn::Succ => "S",
            DotFn::Plus => "plus",
            DotFn::Times => "times",
            DotFn::SmallU => "u",
            DotFn::Mpc => "mpc",
        }
    }

    pub fn from_name(s: &str) -> Option<DotFn> {
        DotFn::ALL.into_iter().find(|d| d.name() == s)
    }
}

/// Dotted relation symbols: decidable syntactic classes of codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DotRel {
    /// Sentences.
    L0,
    /// `L1(v, φ)`: φ has exactly the variable coded by `v` free.
    L1,
    /// Closed terms of the full language.
    Term0,
    /// Closed arithmetic terms.
    TermPa0,
    Var,
}

impl DotRel {
    pub const ALL: [DotRel; 5] = [DotRel::L0, DotRel::L1, DotRel::Term0, DotRel::TermPa0, DotRel::Var];

    pub fn arity(self) -> usize {
        match self {
            DotRel::L1 => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DotRel::L0 => "L0",
            DotRel::L1 => "L1",
            DotRel::Term0 => "Term0",
            DotRel::TermPa0 => "TermPA0",
            DotRel::Var => "Var",
        }
    }

    pub fn from_name(s: &str) -> Option<DotRel> {
        DotRel::ALL.into_iter().find(|d| d.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Succ,
    Plus,
    Times,
    /// The universal unary function symbol `u`.
    SmallU,
    Dot(DotFn),
}

impl Func {
    pub fn arity(self) -> usize {
        match self {
            Func::Succ | Func::SmallU => 1,
            Func::Plus | Func::Times => 2,
            Func::Dot(d) => d.arity(),
        }
    }

    pub fn is_arithmetic(self) -> bool {
        matches!(self, Func::Succ | Func::Plus | Func::Times)
    }
}

/// Name of a registered system, used to index the provability predicates.
pub type SysName = Arc<str>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pred {
    Eq,
    U,
    K1,
    K2,
    T,
    Ag,
    Dot(DotRel),
    Pr(SysName),
}

impl Pred {
    pub fn arity(&self) -> usize {
        match self {
            Pred::Eq | Pred::K2 => 2,
            Pred::Dot(d) => d.arity(),
            _ => 1,
        }
    }

    pub fn pr(name: &str) -> Pred {
        Pred::Pr(Arc::from(name))
    }

    fn label(&self) -> String {
        match self {
            Pred::Eq => "=".into(),
            Pred::U => "U".into(),
            Pred::K1 => "K1".into(),
            Pred::K2 => "K2".into(),
            Pred::T => "T".into(),
            Pred::Ag => "Ag".into(),
            Pred::Dot(d) => format!("@{}", d.name()),
            Pred::Pr(s) => format!("Pr[{s}]"),
        }
    }
}

/// Terms. Numerals `S(…S(0)…)` are held canonically as [`Term::Num`]; the
/// smart constructors keep that invariant, so structural equality is equality
/// of the underlying syntax.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    Num(BigUint),
    App(Func, Vec<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Pred, Vec<Term>),
    Not(Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
}

/// Either kind of syntax object.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Syntax {
    Term(Term),
    Formula(Formula),
}

/// `Sⁿ(0)`.
pub fn numeral(n: impl Into<BigUint>) -> Term {
    Term::Num(n.into())
}

impl Term {
    pub fn var(i: u32) -> Term {
        Term::Var(Var(i))
    }

    pub fn zero() -> Term {
        Term::Num(BigUint::zero())
    }

    /// Checked application. `S` applied to a numeral folds into the numeral.
    pub fn app(f: Func, args: Vec<Term>) -> Result<Term, SyntaxError> {
        if args.len() != f.arity() {
            return Err(SyntaxError::Arity { symbol: func_label(f), expected: f.arity(), got: args.len() });
        }
        Ok(Term::app_unchecked(f, args))
    }

    pub(crate) fn app_unchecked(f: Func, mut args: Vec<Term>) -> Term {
        if f == Func::Succ {
            if let Term::Num(n) = &args[0] {
                return Term::Num(n + 1u32);
            }
            return Term::App(f, vec![args.pop().unwrap()]);
        }
        Term::App(f, args)
    }

    pub fn succ(t: Term) -> Term {
        Term::app_unchecked(Func::Succ, vec![t])
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::App(Func::Plus, vec![a, b])
    }

    pub fn times(a: Term, b: Term) -> Term {
        Term::App(Func::Times, vec![a, b])
    }

    pub fn dot(d: DotFn, args: Vec<Term>) -> Term {
        assert_eq!(args.len(), d.arity(), "arity of @{}", d.name());
        Term::App(Func::Dot(d), args)
    }

    pub fn dot1(d: DotFn, a: Term) -> Term {
        Term::dot(d, vec![a])
    }

    pub fn dot2(d: DotFn, a: Term, b: Term) -> Term {
        Term::dot(d, vec![a, b])
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::Num(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn has_var(&self, v: Var) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::Num(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.has_var(v)),
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Num(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_closed),
        }
    }

    /// Only `0`, `S`, `+`, `·` (and variables).
    pub fn is_arithmetic(&self) -> bool {
        match self {
            Term::Var(_) | Term::Num(_) => true,
            Term::App(f, args) => f.is_arithmetic() && args.iter().all(Term::is_arithmetic),
        }
    }

    /// Free of dotted symbols (terms of the language without representations).
    pub fn is_undotted(&self) -> bool {
        match self {
            Term::Var(_) | Term::Num(_) => true,
            Term::App(Func::Dot(_), _) => false,
            Term::App(_, args) => args.iter().all(Term::is_undotted),
        }
    }

    /// Replace the variable `v` by `t` (no binders inside terms).
    pub fn replace(&self, v: Var, t: &Term) -> Term {
        match self {
            Term::Var(w) if *w == v => t.clone(),
            Term::Var(_) | Term::Num(_) => self.clone(),
            Term::App(f, args) => Term::app_unchecked(*f, args.iter().map(|a| a.replace(v, t)).collect()),
        }
    }

    pub fn as_numeral(&self) -> Option<&BigUint> {
        match self {
            Term::Num(n) => Some(n),
            _ => None,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Num(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }
}

fn func_label(f: Func) -> String {
    match f {
        Func::Succ => "S".into(),
        Func::Plus => "+".into(),
        Func::Times => "*".into(),
        Func::SmallU => "u".into(),
        Func::Dot(d) => format!("@{}", d.name()),
    }
}

/// Standard-model value of a closed arithmetic term.
pub fn eval_closed_term(t: &Term) -> Result<BigUint, SyntaxError> {
    match t {
        Term::Num(n) => Ok(n.clone()),
        Term::Var(_) => Err(SyntaxError::NotArithmetic(t.to_string())),
        Term::App(Func::Succ, a) => Ok(eval_closed_term(&a[0])? + 1u32),
        Term::App(Func::Plus, a) => Ok(eval_closed_term(&a[0])? + eval_closed_term(&a[1])?),
        Term::App(Func::Times, a) => Ok(eval_closed_term(&a[0])? * eval_closed_term(&a[1])?),
        Term::App(_, _) => Err(SyntaxError::NotArithmetic(t.to_string())),
    }
}

impl Formula {
    pub fn atom(p: Pred, args: Vec<Term>) -> Result<Formula, SyntaxError> {
        if args.len() != p.arity() {
            return Err(SyntaxError::Arity { symbol: p.label(), expected: p.arity(), got: args.len() });
        }
        Ok(Formula::Atom(p, args))
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Atom(Pred::Eq, vec![a, b])
    }

    pub fn pred1(p: Pred, a: Term) -> Formula {
        debug_assert_eq!(p.arity(), 1);
        Formula::Atom(p, vec![a])
    }

    pub fn k2(a: Term, b: Term) -> Formula {
        Formula::Atom(Pred::K2, vec![a, b])
    }

    pub fn t(a: Term) -> Formula {
        Formula::pred1(Pred::T, a)
    }

    pub fn k1(a: Term) -> Formula {
        Formula::pred1(Pred::K1, a)
    }

    pub fn ag(a: Term) -> Formula {
        Formula::pred1(Pred::Ag, a)
    }

    pub fn l0(a: Term) -> Formula {
        Formula::pred1(Pred::Dot(DotRel::L0), a)
    }

    pub fn pr(sys: &str, a: Term) -> Formula {
        Formula::Atom(Pred::pr(sys), vec![a])
    }

    /// `0 = S(0)`: the canonical false sentence, atomic so that the atomic
    /// truth axioms apply to it.
    pub fn bot() -> Formula {
        Formula::eq(Term::zero(), numeral(1u32))
    }

    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// `(a → b) ∧ (b → a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    pub fn forall(v: Var, a: Formula) -> Formula {
        Formula::Forall(v, Box::new(a))
    }

    pub fn exists(v: Var, a: Formula) -> Formula {
        Formula::Exists(v, Box::new(a))
    }

    /// `∀v (guard(v) → body)`.
    pub fn forall_in(v: Var, guard: Formula, body: Formula) -> Formula {
        Formula::forall(v, Formula::imp(guard, body))
    }

    /// Right-nested implication `p1 → (p2 → … → c)`.
    pub fn imps(premises: impl IntoIterator<Item = Formula>, concl: Formula) -> Formula {
        let ps: Vec<Formula> = premises.into_iter().collect();
        ps.into_iter().rev().fold(concl, |acc, p| Formula::imp(p, acc))
    }

    /// If this is `(a → b) ∧ (b → a)`, return `(a, b)`.
    pub fn as_iff(&self) -> Option<(&Formula, &Formula)> {
        if let Formula::And(l, r) = self {
            if let (Formula::Imp(a, b), Formula::Imp(b2, a2)) = (l.as_ref(), r.as_ref()) {
                if a == a2 && b == b2 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Atom(_, args) => {
                for a in args {
                    for v in a.free_vars() {
                        if !bound.contains(&v) {
                            out.insert(v);
                        }
                    }
                }
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                bound.push(*v);
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_free(&self, v: Var) -> bool {
        match self {
            Formula::Atom(_, args) => args.iter().any(|a| a.has_var(v)),
            Formula::Not(a) => a.is_free(v),
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => a.is_free(v) || b.is_free(v),
            Formula::Forall(w, a) | Formula::Exists(w, a) => *w != v && a.is_free(v),
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Membership in `Lⁿ`.
    pub fn has_free_count(&self, n: usize) -> bool {
        self.free_vars().len() == n
    }

    /// Membership in `Lⁿ[v₁..vₙ]`.
    pub fn has_exactly_free(&self, vars: &[Var]) -> bool {
        let want: BTreeSet<Var> = vars.iter().copied().collect();
        self.free_vars() == want
    }

    /// Replace free occurrences of `v` by `t` without any capture check.
    /// Callers guarantee that no variable of `t` gets captured.
    pub(crate) fn replace_free(&self, v: Var, t: &Term) -> Formula {
        match self {
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| a.replace(v, t)).collect()),
            Formula::Not(a) => Formula::not(a.replace_free(v, t)),
            Formula::Imp(a, b) => Formula::imp(a.replace_free(v, t), b.replace_free(v, t)),
            Formula::And(a, b) => Formula::and(a.replace_free(v, t), b.replace_free(v, t)),
            Formula::Or(a, b) => Formula::or(a.replace_free(v, t), b.replace_free(v, t)),
            Formula::Forall(w, a) if *w != v => Formula::forall(*w, a.replace_free(v, t)),
            Formula::Exists(w, a) if *w != v => Formula::exists(*w, a.replace_free(v, t)),
            Formula::Forall(..) | Formula::Exists(..) => self.clone(),
        }
    }

    /// Whether `t` is free for `v`: no free occurrence of `v` lies under a
    /// binder for a variable of `t`.
    pub fn free_for(&self, v: Var, t: &Term) -> bool {
        let tv = t.free_vars();
        self.free_for_inner(v, &tv, &mut Vec::new())
    }

    fn free_for_inner(&self, v: Var, tv: &BTreeSet<Var>, bound: &mut Vec<Var>) -> bool {
        match self {
            Formula::Atom(_, args) => !args.iter().any(|a| a.has_var(v)) || !bound.iter().any(|b| tv.contains(b)),
            Formula::Not(a) => a.free_for_inner(v, tv, bound),
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.free_for_inner(v, tv, bound) && b.free_for_inner(v, tv, bound)
            }
            Formula::Forall(w, a) | Formula::Exists(w, a) => {
                if *w == v {
                    return true;
                }
                bound.push(*w);
                let ok = a.free_for_inner(v, tv, bound);
                bound.pop();
                ok
            }
        }
    }

    /// Substitute a term that is free for `v` (closed terms always are).
    pub fn instantiate(&self, v: Var, t: &Term) -> Result<Formula, SyntaxError> {
        if !self.free_for(v, t) {
            return Err(SyntaxError::OpenTerm(t.to_string()));
        }
        Ok(self.replace_free(v, t))
    }

    /// Rename the free variable `from` to `to`, rejecting captures.
    pub fn rename_free(&self, from: Var, to: Var) -> Result<Formula, SyntaxError> {
        if from == to {
            return Ok(self.clone());
        }
        let t = Term::Var(to);
        if !self.free_for(from, &t) {
            return Err(SyntaxError::Capture { from, to });
        }
        Ok(self.replace_free(from, &t))
    }

    /// All variables occurring anywhere (free or bound).
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| match f {
            Formula::Atom(_, args) => args.iter().for_each(|a| out.extend(a.free_vars())),
            Formula::Forall(v, _) | Formula::Exists(v, _) => {
                out.insert(*v);
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn walk(&self, visit: &mut impl FnMut(&Formula)) {
        visit(self);
        match self {
            Formula::Atom(..) => {}
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.walk(visit),
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
        }
    }

    fn preds(&self) -> Vec<Pred> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            if let Formula::Atom(p, _) = f {
                out.push(p.clone());
            }
        });
        out
    }

    fn terms_all(&self, ok: &impl Fn(&Term) -> bool) -> bool {
        let mut good = true;
        self.walk(&mut |f| {
            if let Formula::Atom(_, args) = f {
                good &= args.iter().all(ok);
            }
        });
        good
    }

    /// Formula of the arithmetic sublanguage.
    pub fn in_lpa(&self) -> bool {
        self.preds().iter().all(|p| *p == Pred::Eq) && self.terms_all(&Term::is_arithmetic)
    }

    /// Formula of the sublanguage with arithmetic, `U`, `u` and `Ag`.
    pub fn in_lminus(&self) -> bool {
        fn term_ok(t: &Term) -> bool {
            match t {
                Term::Var(_) | Term::Num(_) => true,
                Term::App(Func::Dot(_), _) => false,
                Term::App(_, args) => args.iter().all(term_ok),
            }
        }
        self.preds().iter().all(|p| matches!(p, Pred::Eq | Pred::U | Pred::Ag)) && self.terms_all(&term_ok)
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.size(),
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Atom(..) => vec![],
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => vec![a],
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => vec![a, b],
        }
    }
}

/// Substitute a closed term for every free occurrence of `v`.
pub fn sbt(phi: &Formula, t: &Term, v: Var) -> Result<Formula, SyntaxError> {
    if !t.is_closed() {
        return Err(SyntaxError::OpenTerm(t.to_string()));
    }
    Ok(phi.replace_free(v, t))
}

/// `sbt` on terms.
pub fn sbt_term(s: &Term, t: &Term, v: Var) -> Result<Term, SyntaxError> {
    if !t.is_closed() {
        return Err(SyntaxError::OpenTerm(t.to_string()));
    }
    Ok(s.replace(v, t))
}

impl Syntax {
    pub fn free_vars(&self) -> BTreeSet<Var> {
        match self {
            Syntax::Term(t) => t.free_vars(),
            Syntax::Formula(f) => f.free_vars(),
        }
    }
}

impl From<Term> for Syntax {
    fn from(t: Term) -> Self {
        Syntax::Term(t)
    }
}

impl From<Formula> for Syntax {
    fn from(f: Formula) -> Self {
        Syntax::Formula(f)
    }
}

/// Small numerals as `u64`, used by printers and samplers.
pub fn small(n: &BigUint) -> Option<u64> {
    n.to_u64()
}
