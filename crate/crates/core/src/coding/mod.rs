//! Arithmetization of syntax.
//!
//! A code is a natural number whose big-endian bytes are `0x01` followed by a
//! prefix-free serialization of the syntax tree: one tag per node, symbol ids
//! as LEB128 varints, numerals as length-prefixed byte strings. Concatenation
//! of prefix-free words is the pairing function here, so code size grows
//! linearly with the syntax (nested quotes would explode under Cantor
//! pairing).

mod aux;
pub mod symbolic;

pub use aux::{encode_aux_relation, tuple_code, AuxError};

use crate::syntax::{numeral, DotFn, DotRel, Formula, Func, Pred, Syntax, Term, Var};
use num_bigint::BigUint;
use num_traits::Zero;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Arbitrary-precision Gödel code.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GodelCode(pub BigUint);

impl fmt::Display for GodelCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::str::FromStr for GodelCode {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim().parse().map(GodelCode)
    }
}

impl From<u64> for GodelCode {
    fn from(n: u64) -> Self {
        GodelCode(BigUint::from(n))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodingError {
    #[error("{0} is not the code of any term or formula: {1}")]
    NotACode(BigUint, &'static str),
    #[error("@{sym} expects {expected}, got {got}")]
    IllTyped { sym: &'static str, expected: &'static str, got: String },
    #[error("@{sym} expects {expected} argument(s), got {got}")]
    Arity { sym: &'static str, expected: usize, got: usize },
}

const T_VAR: u8 = 0;
const T_NUM: u8 = 1;
const T_APP: u8 = 2;
const F_ATOM: u8 = 10;
const F_NOT: u8 = 11;
const F_IMP: u8 = 12;
const F_AND: u8 = 13;
const F_OR: u8 = 14;
const F_ALL: u8 = 15;
const F_EX: u8 = 16;

const PRED_PR: u64 = 100;

fn func_id(f: Func) -> u64 {
    match f {
        Func::Succ => 1,
        Func::Plus => 2,
        Func::Times => 3,
        Func::SmallU => 4,
        Func::Dot(d) => 16 + DotFn::ALL.iter().position(|x| *x == d).unwrap() as u64,
    }
}

fn func_of(id: u64) -> Option<Func> {
    Some(match id {
        1 => Func::Succ,
        2 => Func::Plus,
        3 => Func::Times,
        4 => Func::SmallU,
        n if n >= 16 => Func::Dot(*DotFn::ALL.get((n - 16) as usize)?),
        _ => return None,
    })
}

fn pred_id(p: &Pred) -> u64 {
    match p {
        Pred::Eq => 1,
        Pred::U => 2,
        Pred::K1 => 3,
        Pred::K2 => 4,
        Pred::T => 5,
        Pred::Ag => 6,
        Pred::Dot(d) => 16 + DotRel::ALL.iter().position(|x| x == d).unwrap() as u64,
        Pred::Pr(_) => PRED_PR,
    }
}

fn pred_of(id: u64) -> Option<Pred> {
    Some(match id {
        1 => Pred::Eq,
        2 => Pred::U,
        3 => Pred::K1,
        4 => Pred::K2,
        5 => Pred::T,
        6 => Pred::Ag,
        n if (16..16 + DotRel::ALL.len() as u64).contains(&n) => Pred::Dot(DotRel::ALL[(n - 16) as usize]),
        _ => return None,
    })
}

struct Writer(Vec<u8>);

impl Writer {
    fn varint(&mut self, mut n: u64) {
        loop {
            let b = (n & 0x7f) as u8;
            n >>= 7;
            if n == 0 {
                self.0.push(b);
                return;
            }
            self.0.push(b | 0x80);
        }
    }

    fn bytes(&mut self, b: &[u8]) {
        self.varint(b.len() as u64);
        self.0.extend_from_slice(b);
    }

    fn big(&mut self, n: &BigUint) {
        if n.is_zero() {
            self.varint(0);
        } else {
            self.bytes(&n.to_bytes_be());
        }
    }

    fn term(&mut self, t: &Term) {
        match t {
            Term::Var(v) => {
                self.0.push(T_VAR);
                self.varint(v.0 as u64);
            }
            Term::Num(n) => {
                self.0.push(T_NUM);
                self.big(n);
            }
            Term::App(f, args) => {
                self.0.push(T_APP);
                self.varint(func_id(*f));
                args.iter().for_each(|a| self.term(a));
            }
        }
    }

    fn formula(&mut self, phi: &Formula) {
        match phi {
            Formula::Atom(p, args) => {
                self.0.push(F_ATOM);
                self.varint(pred_id(p));
                if let Pred::Pr(name) = p {
                    self.bytes(name.as_bytes());
                }
                args.iter().for_each(|a| self.term(a));
            }
            Formula::Not(a) => {
                self.0.push(F_NOT);
                self.formula(a);
            }
            Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => {
                self.0.push(match phi {
                    Formula::Imp(..) => F_IMP,
                    Formula::And(..) => F_AND,
                    _ => F_OR,
                });
                self.formula(a);
                self.formula(b);
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                self.0.push(if matches!(phi, Formula::Forall(..)) { F_ALL } else { F_EX });
                self.varint(v.0 as u64);
                self.formula(a);
            }
        }
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

type RResult<T> = Result<T, &'static str>;

impl Reader<'_> {
    fn byte(&mut self) -> RResult<u8> {
        let b = *self.buf.get(self.pos).ok_or("truncated")?;
        self.pos += 1;
        Ok(b)
    }

    fn varint(&mut self) -> RResult<u64> {
        let mut n: u64 = 0;
        let mut shift = 0;
        loop {
            let b = self.byte()?;
            if shift >= 63 && b > 1 {
                return Err("varint overflow");
            }
            n |= ((b & 0x7f) as u64) << shift;
            if b & 0x80 == 0 {
                if b == 0 && shift > 0 {
                    return Err("non-canonical varint");
                }
                return Ok(n);
            }
            shift += 7;
        }
    }

    fn bytes(&mut self) -> RResult<&[u8]> {
        let len = self.varint()? as usize;
        let end = self.pos.checked_add(len).ok_or("length overflow")?;
        let s = self.buf.get(self.pos..end).ok_or("truncated")?;
        self.pos = end;
        Ok(s)
    }

    fn big(&mut self) -> RResult<BigUint> {
        let b = self.bytes()?;
        if b.first() == Some(&0) {
            return Err("non-canonical numeral");
        }
        Ok(BigUint::from_bytes_be(b))
    }

    fn var(&mut self) -> RResult<Var> {
        let n = self.varint()?;
        u32::try_from(n).map(Var).map_err(|_| "variable index too large")
    }

    fn term(&mut self) -> RResult<Term> {
        match self.byte()? {
            T_VAR => Ok(Term::Var(self.var()?)),
            T_NUM => Ok(Term::Num(self.big()?)),
            T_APP => {
                let f = func_of(self.varint()?).ok_or("unknown function symbol")?;
                let args = (0..f.arity()).map(|_| self.term()).collect::<RResult<Vec<_>>>()?;
                if f == Func::Succ && matches!(args[0], Term::Num(_)) {
                    return Err("successor of a numeral is not canonical");
                }
                Ok(Term::App(f, args))
            }
            _ => Err("bad term tag"),
        }
    }

    fn formula_with(&mut self, tag: u8) -> RResult<Formula> {
        Ok(match tag {
            F_ATOM => {
                let id = self.varint()?;
                let p = if id == PRED_PR {
                    let name = std::str::from_utf8(self.bytes()?).map_err(|_| "system name is not UTF-8")?;
                    if name.is_empty() || name.contains(']') {
                        return Err("bad system name");
                    }
                    Pred::Pr(Arc::from(name))
                } else {
                    pred_of(id).ok_or("unknown predicate symbol")?
                };
                let args = (0..p.arity()).map(|_| self.term()).collect::<RResult<Vec<_>>>()?;
                Formula::Atom(p, args)
            }
            F_NOT => Formula::not(self.formula()?),
            F_IMP => Formula::imp(self.formula()?, self.formula()?),
            F_AND => Formula::and(self.formula()?, self.formula()?),
            F_OR => Formula::or(self.formula()?, self.formula()?),
            F_ALL => {
                let v = self.var()?;
                Formula::forall(v, self.formula()?)
            }
            F_EX => {
                let v = self.var()?;
                Formula::exists(v, self.formula()?)
            }
            _ => return Err("bad formula tag"),
        })
    }

    fn formula(&mut self) -> RResult<Formula> {
        let tag = self.byte()?;
        self.formula_with(tag)
    }
}

fn finish(w: Writer) -> GodelCode {
    GodelCode(BigUint::from_bytes_be(&w.0))
}

pub fn gc_term(t: &Term) -> GodelCode {
    let mut w = Writer(vec![1]);
    w.term(t);
    finish(w)
}

pub fn gc_formula(phi: &Formula) -> GodelCode {
    let mut w = Writer(vec![1]);
    w.formula(phi);
    finish(w)
}

/// Gödel code of a term or formula.
pub fn gc(x: &Syntax) -> GodelCode {
    match x {
        Syntax::Term(t) => gc_term(t),
        Syntax::Formula(f) => gc_formula(f),
    }
}

/// Inverse of [`gc`]; rejects every natural outside its image.
pub fn decode(code: &GodelCode) -> Result<Syntax, CodingError> {
    let bytes = code.0.to_bytes_be();
    let bad = |why| CodingError::NotACode(code.0.clone(), why);
    if bytes.first() != Some(&1) || bytes.len() < 2 {
        return Err(bad("missing code marker"));
    }
    let mut r = Reader { buf: &bytes, pos: 1 };
    let tag = r.byte().map_err(bad)?;
    let out = if tag < F_ATOM {
        r.pos -= 1;
        Syntax::Term(r.term().map_err(bad)?)
    } else {
        Syntax::Formula(r.formula_with(tag).map_err(bad)?)
    };
    if r.pos != bytes.len() {
        return Err(bad("trailing bytes"));
    }
    Ok(out)
}

pub fn decode_formula(code: &BigUint) -> Option<Formula> {
    match decode(&GodelCode(code.clone())) {
        Ok(Syntax::Formula(f)) => Some(f),
        _ => None,
    }
}

pub fn decode_term(code: &BigUint) -> Option<Term> {
    match decode(&GodelCode(code.clone())) {
        Ok(Syntax::Term(t)) => Some(t),
        _ => None,
    }
}

/// Gödel quote: the numeral of the code.
pub fn gq(x: &Syntax) -> Term {
    numeral(gc(x).0)
}

pub fn quote(phi: &Formula) -> Term {
    numeral(gc_formula(phi).0)
}

pub fn quote_term(t: &Term) -> Term {
    numeral(gc_term(t).0)
}

pub fn var_code(v: Var) -> BigUint {
    gc_term(&Term::Var(v)).0
}

/// `⌜v⌝` as a numeral.
pub fn quote_var(v: Var) -> Term {
    numeral(var_code(v))
}

/// Value of a dotted symbol: a code/number, or a truth value for relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DotValue {
    Code(BigUint),
    Bool(bool),
}

/// Any dotted symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DottedSymbol {
    Fn(DotFn),
    Rel(DotRel),
}

impl DottedSymbol {
    pub fn name(self) -> &'static str {
        match self {
            DottedSymbol::Fn(d) => d.name(),
            DottedSymbol::Rel(r) => r.name(),
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        DotFn::from_name(s).map(DottedSymbol::Fn).or_else(|| DotRel::from_name(s).map(DottedSymbol::Rel))
    }
}

pub fn eval_dotted(sym: DottedSymbol, args: &[GodelCode]) -> Result<DotValue, CodingError> {
    let raw: Vec<BigUint> = args.iter().map(|c| c.0.clone()).collect();
    match sym {
        DottedSymbol::Fn(d) => eval_dot_fn(d, &raw).map(DotValue::Code),
        DottedSymbol::Rel(r) => {
            if raw.len() != r.arity() {
                return Err(CodingError::Arity { sym: r.name(), expected: r.arity(), got: raw.len() });
            }
            Ok(DotValue::Bool(eval_dot_rel(r, &raw)))
        }
    }
}

fn ill(sym: DotFn, expected: &'static str, got: &BigUint) -> CodingError {
    CodingError::IllTyped { sym: sym.name(), expected, got: got.to_string() }
}

fn want_formula(sym: DotFn, c: &BigUint) -> Result<Formula, CodingError> {
    decode_formula(c).ok_or_else(|| ill(sym, "a formula code", c))
}

fn want_term(sym: DotFn, c: &BigUint) -> Result<Term, CodingError> {
    decode_term(c).ok_or_else(|| ill(sym, "a term code", c))
}

fn want_var(sym: DotFn, c: &BigUint) -> Result<Var, CodingError> {
    match decode_term(c) {
        Some(Term::Var(v)) => Ok(v),
        _ => Err(ill(sym, "a variable code", c)),
    }
}

/// Meta-level computation of a dotted function on codes.
pub fn eval_dot_fn(d: DotFn, a: &[BigUint]) -> Result<BigUint, CodingError> {
    if a.len() != d.arity() {
        return Err(CodingError::Arity { sym: d.name(), expected: d.arity(), got: a.len() });
    }
    let f = |phi: Formula| Ok(gc_formula(&phi).0);
    let t = |tm: Term| Ok(gc_term(&tm).0);
    match d {
        DotFn::Neg => f(Formula::not(want_formula(d, &a[0])?)),
        DotFn::Imp => f(Formula::imp(want_formula(d, &a[0])?, want_formula(d, &a[1])?)),
        DotFn::And => f(Formula::and(want_formula(d, &a[0])?, want_formula(d, &a[1])?)),
        DotFn::Or => f(Formula::or(want_formula(d, &a[0])?, want_formula(d, &a[1])?)),
        DotFn::Forall => f(Formula::forall(want_var(d, &a[0])?, want_formula(d, &a[1])?)),
        DotFn::Exists => f(Formula::exists(want_var(d, &a[0])?, want_formula(d, &a[1])?)),
        DotFn::Sbt => {
            let tm = want_term(d, &a[1])?;
            if !tm.is_closed() {
                return Err(ill(d, "a closed term code", &a[1]));
            }
            let v = want_var(d, &a[2])?;
            match decode(&GodelCode(a[0].clone())) {
                Ok(Syntax::Formula(phi)) => f(phi.replace_free(v, &tm)),
                Ok(Syntax::Term(s)) => t(s.replace(v, &tm)),
                Err(_) => Err(ill(d, "a formula or term code", &a[0])),
            }
        }
        DotFn::Gq | DotFn::Num => t(numeral(a[0].clone())),
        DotFn::Ev => {
            let tm = want_term(d, &a[0])?;
            if !(tm.is_closed() && tm.is_arithmetic()) {
                return Err(ill(d, "a closed arithmetic term code", &a[0]));
            }
            Ok(crate::syntax::eval_closed_term(&tm).expect("closed arithmetic"))
        }
        DotFn::Eq => f(Formula::eq(want_term(d, &a[0])?, want_term(d, &a[1])?)),
        DotFn::T => f(Formula::t(want_term(d, &a[0])?)),
        DotFn::K1 => f(Formula::k1(want_term(d, &a[0])?)),
        DotFn::K2 => f(Formula::k2(want_term(d, &a[0])?, want_term(d, &a[1])?)),
        DotFn::Ag => f(Formula::ag(want_term(d, &a[0])?)),
        DotFn::U => f(Formula::pred1(Pred::U, want_term(d, &a[0])?)),
        DotFn::Succ => t(Term::succ(want_term(d, &a[0])?)),
        DotFn::Plus => t(Term::plus(want_term(d, &a[0])?, want_term(d, &a[1])?)),
        DotFn::Times => t(Term::times(want_term(d, &a[0])?, want_term(d, &a[1])?)),
        DotFn::SmallU => t(Term::app_unchecked(Func::SmallU, vec![want_term(d, &a[0])?])),
        DotFn::Mpc => Ok(mp_consequent(&a[0])),
    }
}

/// `a ∧ (a → b)` ↦ `b` for sentences `a`, `b`; every other natural is fixed.
pub fn mp_consequent(c: &BigUint) -> BigUint {
    if let Some(Formula::And(l, r)) = decode_formula(c) {
        if let Formula::Imp(a, b) = *r {
            if *a == *l && a.is_sentence() && b.is_sentence() {
                return gc_formula(&b).0;
            }
        }
    }
    c.clone()
}

/// Dotted function with ill-typed applications sent to 0, which is never a
/// code. This is the interpretation shared by the kernel and the semantics.
pub fn eval_dot_fn_total(d: DotFn, a: &[BigUint]) -> BigUint {
    eval_dot_fn(d, a).unwrap_or_else(|_| BigUint::zero())
}

pub fn eval_dot_rel(r: DotRel, a: &[BigUint]) -> bool {
    match r {
        DotRel::L0 => decode_formula(&a[0]).is_some_and(|f| f.is_sentence()),
        DotRel::L1 => match (decode_term(&a[0]), decode_formula(&a[1])) {
            (Some(Term::Var(v)), Some(f)) => f.has_exactly_free(&[v]),
            _ => false,
        },
        DotRel::Term0 => decode_term(&a[0]).is_some_and(|t| t.is_closed()),
        DotRel::TermPa0 => decode_term(&a[0]).is_some_and(|t| t.is_closed() && t.is_arithmetic()),
        DotRel::Var => matches!(decode_term(&a[0]), Some(Term::Var(_))),
    }
}

/// Strict meta-evaluation of a closed term built from arithmetic and dotted
/// symbols: `u` and ill-typed dotted applications are errors.
pub fn eval_closed(t: &Term) -> Result<BigUint, CodingError> {
    match t {
        Term::Num(n) => Ok(n.clone()),
        Term::Var(v) => Err(CodingError::IllTyped { sym: "eval", expected: "a closed term", got: v.to_string() }),
        Term::App(Func::Succ, a) => Ok(eval_closed(&a[0])? + 1u32),
        Term::App(Func::Plus, a) => Ok(eval_closed(&a[0])? + eval_closed(&a[1])?),
        Term::App(Func::Times, a) => Ok(eval_closed(&a[0])? * eval_closed(&a[1])?),
        Term::App(Func::SmallU, _) => {
            Err(CodingError::IllTyped { sym: "eval", expected: "a term without `u`", got: t.to_string() })
        }
        Term::App(Func::Dot(d), args) => {
            let vals = args.iter().map(eval_closed).collect::<Result<Vec<_>, _>>()?;
            eval_dot_fn(*d, &vals)
        }
    }
}

/// Total evaluation: ill-typed dotted applications denote 0, `u` is looked
/// up in `small_u`. `None` on open terms.
pub fn eval_total(t: &Term, small_u: &dyn Fn(&BigUint) -> BigUint) -> Option<BigUint> {
    Some(match t {
        Term::Num(n) => n.clone(),
        Term::Var(_) => return None,
        Term::App(Func::Succ, a) => eval_total(&a[0], small_u)? + 1u32,
        Term::App(Func::Plus, a) => eval_total(&a[0], small_u)? + eval_total(&a[1], small_u)?,
        Term::App(Func::Times, a) => eval_total(&a[0], small_u)? * eval_total(&a[1], small_u)?,
        Term::App(Func::SmallU, a) => small_u(&eval_total(&a[0], small_u)?),
        Term::App(Func::Dot(d), args) => {
            let vals = args.iter().map(|a| eval_total(a, small_u)).collect::<Option<Vec<_>>>()?;
            eval_dot_fn_total(*d, &vals)
        }
    })
}

/// Total evaluation of a closed `u`-free term.
pub fn eval_pure(t: &Term) -> Option<BigUint> {
    if has_small_u(t) {
        return None;
    }
    eval_total(t, &|_| BigUint::zero())
}

pub fn has_small_u(t: &Term) -> bool {
    match t {
        Term::App(Func::SmallU, _) => true,
        Term::App(_, a) => a.iter().any(has_small_u),
        _ => false,
    }
}

/// Decide a closed `u`-free atom whose predicate is `=` or a dotted relation.
pub fn decide_computable_atom(p: &Pred, args: &[Term]) -> Option<bool> {
    let vals = args.iter().map(eval_pure).collect::<Option<Vec<_>>>()?;
    match p {
        Pred::Eq => Some(vals[0] == vals[1]),
        Pred::Dot(r) => Some(eval_dot_rel(*r, &vals)),
        _ => None,
    }
}

/// Byte length of a code, for reports.
pub fn code_bits(c: &GodelCode) -> u64 {
    c.0.bits()
}
