//! Axiom schemata as generators: a schema id plus parameters yields the
//! closed instance.

use crate::coding::quote;
use crate::syntax::{DotFn, DotRel, Formula, Pred, Syntax, Term, Var};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SchemaId {
    /// Induction over any formula of the full language.
    Induction,
    UctAtom,
    UtK,
    KUtK,
    IK,
    Tb,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemaError {
    #[error("schema {schema} expects {expected}")]
    Params { schema: SchemaId, expected: &'static str },
    #[error("parameter outside the domain of {schema}: {reason}")]
    Domain { schema: SchemaId, reason: String },
    #[error("unknown schema `{0}`")]
    Unknown(String),
}

impl SchemaId {
    pub const ALL: [SchemaId; 6] =
        [SchemaId::Induction, SchemaId::UctAtom, SchemaId::UtK, SchemaId::KUtK, SchemaId::IK, SchemaId::Tb];

    pub fn name(self) -> &'static str {
        match self {
            SchemaId::Induction => "Ind",
            SchemaId::UctAtom => "UCT_Atom",
            SchemaId::UtK => "UT_K",
            SchemaId::KUtK => "K_UT_K",
            SchemaId::IK => "I_K",
            SchemaId::Tb => "TB",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            SchemaId::Induction => "phi(0) /\\ forall v (phi -> phi(S v)) -> forall v phi, universally closed",
            SchemaId::UctAtom => "T(R(t1..tn)) <-> R(ev t1..ev tn) for atomic R over arithmetic, U and u",
            SchemaId::UtK => "K1(<<phi>>) -> phi",
            SchemaId::KUtK => "K1(<<K1(<<phi>>) -> phi>>)",
            SchemaId::IK => "Pr[Base](<<phi -> psi>>) /\\ K1(<<phi>>) -> K1(<<psi>>)",
            SchemaId::Tb => "T(<<phi>>) <-> phi",
        }
    }

    fn params_hint(self) -> &'static str {
        match self {
            SchemaId::Induction => "a formula and a variable",
            SchemaId::UctAtom => "one atomic formula",
            SchemaId::IK => "two sentences",
            _ => "one sentence",
        }
    }

    fn formulas(self, params: &[Syntax], n: usize) -> Result<Vec<Formula>, SchemaError> {
        let out: Vec<Formula> = params
            .iter()
            .filter_map(|p| match p {
                Syntax::Formula(f) => Some(f.clone()),
                Syntax::Term(_) => None,
            })
            .collect();
        if out.len() != n || params.len() != n {
            return Err(SchemaError::Params { schema: self, expected: self.params_hint() });
        }
        Ok(out)
    }

    fn sentences(self, params: &[Syntax], n: usize) -> Result<Vec<Formula>, SchemaError> {
        let fs = self.formulas(params, n)?;
        if let Some(f) = fs.iter().find(|f| !f.is_sentence()) {
            return Err(SchemaError::Domain { schema: self, reason: format!("`{f}` is not a sentence") });
        }
        Ok(fs)
    }

    pub fn instantiate(self, params: &[Syntax]) -> Result<Formula, SchemaError> {
        match self {
            SchemaId::Induction => {
                let (phi, v) = match params {
                    [Syntax::Formula(phi), Syntax::Term(Term::Var(v))] => (phi, *v),
                    _ => return Err(SchemaError::Params { schema: self, expected: self.params_hint() }),
                };
                Ok(induction_instance(phi, v))
            }
            SchemaId::UctAtom => {
                let r = self.formulas(params, 1)?.pop().unwrap();
                uct_atom(&r)
            }
            SchemaId::UtK => {
                let phi = self.sentences(params, 1)?.pop().unwrap();
                Ok(Formula::imp(Formula::k1(quote(&phi)), phi))
            }
            SchemaId::KUtK => {
                let phi = self.sentences(params, 1)?.pop().unwrap();
                let utk = Formula::imp(Formula::k1(quote(&phi)), phi);
                Ok(Formula::k1(quote(&utk)))
            }
            SchemaId::IK => {
                let fs = self.sentences(params, 2)?;
                let (phi, psi) = (&fs[0], &fs[1]);
                Ok(Formula::imp(
                    Formula::and(
                        Formula::pr(super::BASE, quote(&Formula::imp(phi.clone(), psi.clone()))),
                        Formula::k1(quote(phi)),
                    ),
                    Formula::k1(quote(psi)),
                ))
            }
            SchemaId::Tb => {
                let phi = self.sentences(params, 1)?.pop().unwrap();
                Ok(Formula::iff(Formula::t(quote(&phi)), phi))
            }
        }
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemaId {
    type Err = SchemaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SchemaId::ALL.into_iter().find(|id| id.name() == s).ok_or_else(|| SchemaError::Unknown(s.into()))
    }
}

fn closure(mut f: Formula) -> Formula {
    let vars: Vec<Var> = f.free_vars().into_iter().collect();
    for v in vars.into_iter().rev() {
        f = Formula::forall(v, f);
    }
    f
}

/// The induction axiom for `phi` on `v`, closed over the remaining free
/// variables in increasing order.
pub fn induction_instance(phi: &Formula, v: Var) -> Formula {
    let xv = Term::Var(v);
    let base = phi.replace_free(v, &Term::zero());
    let step = Formula::forall(v, Formula::imp(phi.clone(), phi.replace_free(v, &Term::succ(xv))));
    closure(Formula::imp(Formula::and(base, step), Formula::forall(v, phi.clone())))
}

fn uct_atom(r: &Formula) -> Result<Formula, SchemaError> {
    let schema = SchemaId::UctAtom;
    let (p, args) = match r {
        Formula::Atom(p, args) if r.in_lminus() => (p, args),
        _ => return Err(SchemaError::Domain { schema, reason: format!("`{r}` is not an atomic formula of L-") }),
    };
    let xs: Vec<Var> = r.free_vars().into_iter().collect();
    let first = r.all_vars().into_iter().map(|v| v.0 + 1).max().unwrap_or(0);
    let ts: Vec<Var> = (0..xs.len() as u32).map(|i| Var(first + i)).collect();
    let t_of = |v: &Var| Term::Var(ts[xs.iter().position(|x| x == v).unwrap()]);

    let plain_vars = args.iter().all(|a| matches!(a, Term::Var(_)))
        && args.iter().collect::<std::collections::BTreeSet<_>>().len() == args.len();
    let dotted = match p {
        Pred::Eq => Some(DotFn::Eq),
        Pred::U => Some(DotFn::U),
        Pred::Ag => Some(DotFn::Ag),
        _ => None,
    };
    let code = match dotted {
        Some(d) if plain_vars && !args.is_empty() => Term::dot(
            d,
            args.iter()
                .map(|a| match a {
                    Term::Var(v) => t_of(v),
                    _ => unreachable!(),
                })
                .collect(),
        ),
        _ => xs.iter().fold(quote(r), |acc, v| Term::dot(DotFn::Sbt, vec![acc, t_of(v), crate::coding::quote_var(*v)])),
    };
    let mut rhs = r.clone();
    for v in &xs {
        rhs = rhs.replace_free(*v, &Term::dot1(DotFn::Ev, t_of(v)));
    }
    let mut out = Formula::iff(Formula::t(code), rhs);
    for t in ts.iter().rev() {
        out = Formula::forall_in(*t, Formula::Atom(Pred::Dot(DotRel::TermPa0), vec![Term::Var(*t)]), out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn uct_atom_for_equality() {
        let inst = SchemaId::UctAtom.instantiate(&[Syntax::Formula(f("v0 = v1"))]).unwrap();
        let want = f("forall v2 (@TermPA0(v2) -> forall v3 (@TermPA0(v3) -> \
                      (T(@eq(v2, v3)) <-> @ev(v2) = @ev(v3))))");
        assert_eq!(inst, want);
    }

    #[test]
    fn uct_atom_closed_and_compound() {
        let inst = SchemaId::UctAtom.instantiate(&[Syntax::Formula(f("0 = S(0)"))]).unwrap();
        assert_eq!(inst, f("T(<<0 = S(0)>>) <-> 0 = S(0)"));
        let inst = SchemaId::UctAtom.instantiate(&[Syntax::Formula(f("U(v0 + v0)"))]).unwrap();
        assert!(inst.is_sentence());
        assert!(SchemaId::UctAtom.instantiate(&[Syntax::Formula(f("K1(v0)"))]).is_err());
        assert!(SchemaId::UctAtom.instantiate(&[Syntax::Formula(f("~0 = 0"))]).is_err());
    }

    #[test]
    fn utk_instance() {
        let inst = SchemaId::UtK.instantiate(&[Syntax::Formula(f("0 = 0"))]).unwrap();
        assert_eq!(inst, f("K1(<<0 = 0>>) -> 0 = 0"));
        assert!(SchemaId::UtK.instantiate(&[Syntax::Formula(f("v0 = 0"))]).is_err());
    }

    #[test]
    fn induction_instances() {
        let inst = induction_instance(&f("T(@num(v0))"), Var(0));
        assert_eq!(inst, f("T(@num(0)) /\\ forall v0 (T(@num(v0)) -> T(@num(S(v0)))) -> forall v0 T(@num(v0))"));
        let inst = induction_instance(&f("K2(v1, v0)"), Var(0));
        assert!(inst.is_sentence());
        assert!(matches!(inst, Formula::Forall(Var(1), _)));
    }
}
