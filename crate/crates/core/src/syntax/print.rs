use super::{Formula, Func, Pred, Syntax, Term};
use crate::coding;
use std::fmt;

/// Numerals up to this value print as `S(…(0))`; larger ones print as a
/// quote when they decode, and as `#n` otherwise.
const SMALL_NUMERAL: u32 = 16;

fn write_num(f: &mut fmt::Formatter<'_>, n: &num_bigint::BigUint) -> fmt::Result {
    if *n <= SMALL_NUMERAL.into() {
        let k = super::small(n).unwrap_or(0);
        for _ in 0..k {
            f.write_str("S(")?;
        }
        f.write_str("0")?;
        for _ in 0..k {
            f.write_str(")")?;
        }
        return Ok(());
    }
    match coding::decode(&coding::GodelCode(n.clone())) {
        Ok(Syntax::Formula(phi)) => write!(f, "<<{phi}>>"),
        Ok(Syntax::Term(t)) => write!(f, "<<{t}>>"),
        Err(_) => write!(f, "#{n}"),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Num(n) => write_num(f, n),
            Term::App(Func::Plus, a) => write!(f, "({} + {})", a[0], a[1]),
            Term::App(Func::Times, a) => write!(f, "({} * {})", a[0], a[1]),
            Term::App(func, args) => {
                match func {
                    Func::Succ => f.write_str("S")?,
                    Func::SmallU => f.write_str("u")?,
                    Func::Dot(d) => write!(f, "@{}", d.name())?,
                    Func::Plus | Func::Times => unreachable!(),
                }
                write_args(f, args)
            }
        }
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn level(phi: &Formula) -> u8 {
    match phi {
        Formula::Imp(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, phi: &Formula, min: u8) -> fmt::Result {
    if level(phi) < min {
        f.write_str("(")?;
        write_formula(f, phi)?;
        f.write_str(")")
    } else {
        write_formula(f, phi)
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, phi: &Formula) -> fmt::Result {
    match phi {
        Formula::Atom(Pred::Eq, a) => write!(f, "{} = {}", a[0], a[1]),
        Formula::Atom(p, args) => {
            match p {
                Pred::U => f.write_str("U")?,
                Pred::K1 => f.write_str("K1")?,
                Pred::K2 => f.write_str("K2")?,
                Pred::T => f.write_str("T")?,
                Pred::Ag => f.write_str("Ag")?,
                Pred::Dot(d) => write!(f, "@{}", d.name())?,
                Pred::Pr(s) => write!(f, "Pr[{s}]")?,
                Pred::Eq => unreachable!(),
            }
            write_args(f, args)
        }
        Formula::Not(a) => {
            f.write_str("~")?;
            write_at(f, a, UNARY)
        }
        Formula::And(a, b) => {
            write_at(f, a, AND)?;
            f.write_str(" /\\ ")?;
            write_at(f, b, UNARY)
        }
        Formula::Or(a, b) => {
            write_at(f, a, OR)?;
            f.write_str(" \\/ ")?;
            write_at(f, b, AND)
        }
        Formula::Imp(a, b) => {
            write_at(f, a, OR)?;
            f.write_str(" -> ")?;
            write_at(f, b, IMP)
        }
        Formula::Forall(v, a) => {
            write!(f, "forall {v} ")?;
            write_at(f, a, UNARY)
        }
        Formula::Exists(v, a) => {
            write!(f, "exists {v} ")?;
            write_at(f, a, UNARY)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self)
    }
}

impl fmt::Display for Syntax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Syntax::Term(t) => t.fmt(f),
            Syntax::Formula(phi) => phi.fmt(f),
        }
    }
}
