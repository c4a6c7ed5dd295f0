//! Carrying a TB instance for `φ` over to `K(α, ⌜φ⌝)` in extensions of
//! KT + IA.

use super::kit::Kit;
use super::{Ctx, ScriptRun, Session};
use crate::builder::{BuildError, Builder, Res};
use crate::coding::quote;
use crate::kernel::{check_proof, KernelError, Proof};
use crate::syntax::{DotFn, Formula, Syntax, Term, Var};
use crate::systems::{SchemaId, KT_IA, KT_IA_AG0};
use std::time::Instant;

const ALPHA: Var = Var(0);

/// `T(⌜φ⌝) ↔ φ`.
pub fn tb_statement(phi: &Formula) -> Formula {
    Formula::iff(Formula::t(quote(phi)), phi.clone())
}

/// The code of `K(num(α), ⌜φ⌝)` as IA writes it.
fn k_self(alpha: Term, phi: &Formula) -> Term {
    Term::dot2(DotFn::K2, Term::dot1(DotFn::Num, alpha), Term::dot1(DotFn::Gq, quote(phi)))
}

/// `∀α∈Ag (T(⌜K(num(α), ⌜φ⌝)⌝) ↔ K(α, ⌜φ⌝))`.
pub fn transfer_statement(phi: &Formula) -> Formula {
    let a = Term::Var(ALPHA);
    let body = Formula::iff(Formula::t(k_self(a.clone(), phi)), Formula::k2(a.clone(), quote(phi)));
    Formula::forall_in(ALPHA, Formula::ag(a), body)
}

/// TB for an atomic arithmetic sentence, from UCT^Atom.
pub fn atomic_tb(s: &mut Session<'_>, sys: &str, phi: &Formula) -> Res<Formula> {
    s.prove(sys, |b| b.schema(SchemaId::UctAtom, vec![Syntax::Formula(phi.clone())]))
}

/// `K(α, ⌜a⌝) → K(α, ⌜c⌝)` from knowledge `kiff` of a biconditional.
fn known_half(b: &mut Builder<'_>, ag: usize, kiff: usize, a: &Formula, c: &Formula) -> Res {
    let k = b.know_taut(ag, &[kiff], &Formula::imp(a.clone(), c.clone()), &[])?;
    let h = b.hyp(Formula::k2(Term::Var(ALPHA), quote(a)))?;
    let m = b.know_mp(ag, h, k, &[])?;
    b.discharge(h, m)
}

/// NEC^K on the cited TB instance, UK^K on each half, then IA.
pub fn transfer_steps(b: &mut Builder<'_>, sys: &str, phi: &Formula) -> Res {
    let a = Term::Var(ALPHA);
    let tb = b.cite(sys, tb_statement(phi))?;
    let ag = b.hyp(Formula::ag(a.clone()))?;
    let n = b.nec_k(tb)?;
    let kiff = b.inst_mp(n, &a, ag)?;
    let tphi = Formula::t(quote(phi));
    let fwd = known_half(b, ag, kiff, &tphi, phi)?;
    let bwd = known_half(b, ag, kiff, phi, &tphi)?;
    let kk = Formula::iff(Formula::k2(a.clone(), quote(&tphi)), Formula::k2(a.clone(), quote(phi)));
    let kk = b.tc(&[fwd, bwd], kk)?;
    let t_code = Term::dot1(DotFn::T, Term::dot1(DotFn::Gq, quote(phi)));
    let kk = b.conv(kk, &Formula::iff(Formula::k2(a.clone(), t_code), Formula::k2(a.clone(), quote(phi))), &[])?;
    let ia = b.use_ax("IA", &[a.clone(), quote(phi)], &[ag])?;
    let want = Formula::iff(Formula::t(k_self(a.clone(), phi)), Formula::k2(a, quote(phi)));
    let body = b.tc(&[kk, ia], want)?;
    let d = b.discharge(ag, body)?;
    b.ug(d, ALPHA)
}

/// The transfer in `sys`, given TB for `φ` stored for `sys`.
pub fn transfer(s: &mut Session<'_>, sys: &str, phi: &Formula) -> Res<Formula> {
    s.prove(sys, |b| transfer_steps(b, sys, phi))
}

/// From the transfer for `φ` and a proof of `Ag(t)` at axiom `ag_axiom`,
/// TB for `K(t, ⌜φ⌝)`.
pub fn nest(s: &mut Session<'_>, sys: &str, phi: &Formula, ag_axiom: &str) -> Res<Formula> {
    s.prove(sys, |b| {
        let all = b.cite(sys, transfer_statement(phi))?;
        let ag = b.ax(ag_axiom)?;
        let crate::syntax::Formula::Atom(_, args) = b.f(ag).clone() else {
            return Err(BuildError::Plan("agent axiom is not atomic".into()));
        };
        let inst = b.inst_mp(all, &args[0], ag)?;
        b.conv(inst, &tb_statement(&Formula::k2(args[0].clone(), quote(phi))), &[])
    })
}

/// `0 = 0`.
pub fn default_sentence() -> Formula {
    Formula::eq(Term::zero(), Term::zero())
}

/// TB for `0 = 0`, its transfer in KT + IA, and one nested round with
/// `Ag(0)`.
pub fn script(ctx: &Ctx) -> Res<ScriptRun> {
    let start = Instant::now();
    let mut s = Session::new(ctx);
    let phi = default_sentence();
    atomic_tb(&mut s, KT_IA, &phi)?;
    transfer(&mut s, KT_IA, &phi)?;
    let inner = nest(&mut s, KT_IA_AG0, &phi, "Ag0")?;
    let Some((_, phi2)) = inner.as_iff() else { return Err(BuildError::Plan("nesting lost TB".into())) };
    let phi2 = phi2.clone();
    transfer(&mut s, KT_IA_AG0, &phi2)?;
    Ok(s.done("tb-transfer", start))
}

/// Recheck an accepted transfer proof in `sys`, which lacks IA.
pub fn recheck_in(ctx: &Ctx, proof: &Proof, sys: &str) -> Result<(), KernelError> {
    let mut p = proof.clone();
    for step in &mut p.steps {
        if let crate::kernel::Just::Cite(c) = &mut step.just {
            *c = sys.into();
        }
    }
    p.system = sys.into();
    check_proof(&ctx.reg, &ctx.db, &p).map(|_| ())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Just, Reason};
    use crate::systems::{KT, KT_AG0};

    #[test]
    fn transfer_and_nesting() {
        let run = script(&Ctx::new()).unwrap();
        let phi = default_sentence();
        assert_eq!(run.verdicts[1].conclusion, transfer_statement(&phi));
        let nested = Formula::k2(Term::zero(), quote(&phi));
        assert_eq!(run.verdict().conclusion, transfer_statement(&nested));
        assert!(super::super::replay(&run).is_ok());
    }

    #[test]
    fn fails_without_ia() {
        let ctx = Ctx::new();
        let mut s = Session::new(&ctx);
        let phi = default_sentence();
        atomic_tb(&mut s, KT, &phi).unwrap();
        let err = transfer(&mut s, KT, &phi).unwrap_err();
        assert!(
            matches!(err, BuildError::Kernel(KernelError::Rejected { reason: Reason::UnknownAxiom(ref a), .. }) if a == "IA")
        );

        let run = script(&ctx).unwrap();
        let proof = &run.proofs[1];
        let err = recheck_in(&ctx, proof, KT).unwrap_err();
        let KernelError::Rejected { step, reason, .. } = err else { panic!("{err}") };
        assert_eq!(reason, Reason::UnknownAxiom("IA".into()));
        assert_eq!(proof.steps[step - 1].just, Just::Ax("IA".into()));
        assert!(recheck_in(&ctx, &run.proofs[3], KT_AG0).is_err());
    }
}
