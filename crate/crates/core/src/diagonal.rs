//! Fixed points by diagonalization, with kernel-checkable witness proofs.

use crate::builder::{BuildError, Builder};
use crate::coding::{quote, quote_var};
use crate::kernel::{Proof, TheoremDb};
use crate::syntax::{DotFn, Formula, Term, Var};
use crate::systems::{builtin_systems, Registry, BASE};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagError {
    #[error("variable {0} is not free in the formula")]
    NotFree(Var),
    #[error("expected exactly one free variable, found {0}")]
    NotUnary(usize),
    #[error(transparent)]
    Build(#[from] BuildError),
}

#[derive(Debug, Clone)]
pub struct FixedPointResult {
    pub phi: Formula,
    pub slot: Var,
    pub theta: Formula,
    /// Free variables of `theta`, in increasing order.
    pub vars: Vec<Var>,
    /// `∀x⃗ (θ ↔ φ[slot := ⌜θ⌝])`.
    pub statement: Formula,
    pub witness: Proof,
}

impl FixedPointResult {
    /// The diagonal formula `D(x⃗, z)` and its variable `z`.
    pub fn diagonal(&self) -> (Formula, Var) {
        diagonal_of(&self.phi, self.slot)
    }
}

fn fresh_after(f: &Formula) -> Var {
    Var(f.all_vars().into_iter().map(|v| v.0 + 1).max().unwrap_or(0))
}

fn self_application(z: Var) -> Term {
    let zt = Term::Var(z);
    Term::dot(DotFn::Sbt, vec![zt.clone(), Term::dot1(DotFn::Gq, zt), quote_var(z)])
}

fn diagonal_of(phi: &Formula, y: Var) -> (Formula, Var) {
    let z = fresh_after(phi);
    (phi.instantiate(y, &self_application(z)).expect("fresh variable"), z)
}

/// `θ` with `⊢ ∀x⃗ (θ ↔ φ(x⃗, ⌜θ⌝))`, where the slot `y` receives the code.
pub fn fixed_point(phi: &Formula, y: Var) -> Result<FixedPointResult, DiagError> {
    let reg = builtin_systems();
    fixed_point_in(&reg, &TheoremDb::new(), phi, y)
}

pub fn fixed_point_in(reg: &Registry, db: &TheoremDb, phi: &Formula, y: Var) -> Result<FixedPointResult, DiagError> {
    if !phi.is_free(y) {
        return Err(DiagError::NotFree(y));
    }
    let (d, z) = diagonal_of(phi, y);
    let qd = quote(&d);
    let s = Term::dot(DotFn::Sbt, vec![qd.clone(), Term::dot1(DotFn::Gq, qd), quote_var(z)]);
    let theta = phi.instantiate(y, &s).expect("closed term");
    let unfolded = phi.instantiate(y, &quote(&theta)).expect("closed term");

    let mut b = Builder::new(reg, db, BASE)?;
    let h1 = b.hyp(theta.clone())?;
    let c1 = b.conv(h1, &unfolded, &[])?;
    let l = b.discharge(h1, c1)?;
    let h2 = b.hyp(unfolded.clone())?;
    let c2 = b.conv(h2, &theta, &[])?;
    let r = b.discharge(h2, c2)?;
    let iff = b.tc(&[l, r], Formula::iff(theta.clone(), unfolded))?;
    let vars: Vec<Var> = theta.free_vars().into_iter().collect();
    let end = b.ugs(iff, &vars)?;
    let statement = b.f(end).clone();
    let (_, witness) = b.finish()?;
    Ok(FixedPointResult { phi: phi.clone(), slot: y, theta, vars, statement, witness })
}

/// The variable common-knowledge formulas take as argument.
pub const CK_ARG: Var = Var(0);
const CK_AGENT: u32 = 20;

/// A defined common-knowledge predicate `CK_A(y)` with its fixed point.
#[derive(Debug, Clone)]
pub struct CkDef {
    /// The agent filter, with free variable `x`.
    pub a: Formula,
    pub x: Var,
    pub ck: Formula,
    pub fp: FixedPointResult,
}

impl CkDef {
    /// `Ψ_A(u, v) = ∀x (Ag(x) → (A(x) → K(x, u) ∧ K(x, sbt(v, gq(u), ⌜y⌝))))`.
    pub fn psi(&self, u: &Term, v: &Term) -> Formula {
        psi(&self.a, self.x, u, v)
    }

    /// `CK_A(t)`.
    pub fn at(&self, t: &Term) -> Formula {
        self.ck.instantiate(CK_ARG, t).expect("argument free for the defining variable")
    }

    pub fn code(&self) -> Term {
        quote(&self.ck)
    }

    /// `K(x, sbt(v, gq(u), ⌜y⌝))`: the second conjunct of `Ψ_A(u, v)`.
    pub fn knows_instance(&self, agent: &Term, u: &Term, v: &Term) -> Formula {
        Formula::k2(agent.clone(), instance_code(u, v))
    }
}

/// `sbt(v, gq(u), ⌜y⌝)`.
pub fn instance_code(u: &Term, v: &Term) -> Term {
    Term::dot(DotFn::Sbt, vec![v.clone(), Term::dot1(DotFn::Gq, u.clone()), quote_var(CK_ARG)])
}

/// `Ψ(u, v)` for the agent filter `a` in variable `x`.
pub fn psi(a: &Formula, x: Var, u: &Term, v: &Term) -> Formula {
    let xt = Term::Var(x);
    Formula::forall(
        x,
        Formula::imp(
            Formula::ag(xt.clone()),
            Formula::imp(
                a.clone(),
                Formula::and(Formula::k2(xt.clone(), u.clone()), Formula::k2(xt, instance_code(u, v))),
            ),
        ),
    )
}

/// `CK_A` for a unary agent filter `A`, with the agent variable chosen at
/// or above `min_agent_var`.
pub fn make_ck_with(a: &Formula, min_agent_var: u32) -> Result<CkDef, DiagError> {
    let free: Vec<Var> = a.free_vars().into_iter().collect();
    let [v] = free.as_slice() else { return Err(DiagError::NotUnary(free.len())) };
    let bound = a.all_vars();
    let x = (min_agent_var..)
        .map(Var)
        .find(|x| (*x == *v || !bound.contains(x)) && a.free_for(*v, &Term::Var(*x)))
        .expect("unbounded supply of variables");
    let a = a.rename_free(*v, x).expect("chosen free for the filter variable");
    let w = Var(x.0.max(fresh_after(&a).0) + 1);
    let template = psi(&a, x, &Term::Var(CK_ARG), &Term::Var(w));
    let fp = fixed_point(&template, w)?;
    Ok(CkDef { a, x, ck: fp.theta.clone(), fp })
}

pub fn make_ck(a: &Formula) -> Result<CkDef, DiagError> {
    make_ck_with(a, CK_AGENT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{decode_formula, gc_formula};
    use crate::kernel::check_proof;
    use crate::syntax::parse_formula;

    #[test]
    fn slot_under_a_binder_inside_dotted_term() {
        let reg = builtin_systems();
        let phi = parse_formula("forall v2 @imp(v2, v0) = 0").unwrap();
        let fp = fixed_point(&phi, Var(0)).unwrap();
        assert!(check_proof(&reg, &TheoremDb::new(), &fp.witness).is_ok());
    }

    #[test]
    fn liar_like_fixed_points() {
        let reg = builtin_systems();
        let db = TheoremDb::new();
        let phi = parse_formula("~K1(v0)").unwrap();
        let fp = fixed_point(&phi, Var(0)).unwrap();
        assert!(fp.theta.is_sentence());
        let v = check_proof(&reg, &db, &fp.witness).unwrap();
        let want = Formula::iff(fp.theta.clone(), Formula::not(Formula::k1(quote(&fp.theta))));
        assert_eq!(v.conclusion, want);
        assert_eq!(v.nec_uses, 0);
        let (d, z) = fp.diagonal();
        let forced = d.instantiate(z, &quote(&d)).unwrap();
        assert_eq!(decode_formula(&gc_formula(&fp.theta).0), Some(forced));
    }

    #[test]
    fn parameters_and_errors() {
        let phi = parse_formula("K2(v1, v0) /\\ T(v2)").unwrap();
        let fp = fixed_point(&phi, Var(0)).unwrap();
        assert_eq!(fp.vars, vec![Var(1), Var(2)]);
        assert!(matches!(fp.statement, Formula::Forall(Var(1), _)));
        assert_eq!(fixed_point(&phi, Var(5)).unwrap_err(), DiagError::NotFree(Var(5)));
    }

    #[test]
    fn common_knowledge_definition() {
        let ck = make_ck(&parse_formula("Ag(v3)").unwrap()).unwrap();
        assert_eq!(ck.ck.free_vars().into_iter().collect::<Vec<_>>(), vec![CK_ARG]);
        let stmt = Formula::forall(CK_ARG, Formula::iff(ck.ck.clone(), ck.psi(&Term::Var(CK_ARG), &ck.code())));
        assert_eq!(ck.fp.statement, stmt);
        assert!(make_ck(&parse_formula("v1 = v2").unwrap()).is_err());
    }
}
