//! Defined common knowledge: the fixed-point equivalence and the closure
//! properties proved by Löb's rule in DCB.

use super::kit::{sigma_chain, Kit, PrKit};
use super::{Ctx, ScriptRun, Session};
use crate::builder::{BuildError, Builder, Res};
use crate::coding::quote;
use crate::diagonal::{instance_code, make_ck, make_ck_with, psi, CkDef, CK_ARG};
use crate::syntax::{parse_formula, DotFn, Formula, Term, Var};
use crate::systems::{BASE, DCB};
use std::time::Instant;

const Y: Var = CK_ARG;

fn yt() -> Term {
    Term::Var(Y)
}

fn plan<T>(msg: impl Into<String>) -> Res<T> {
    Err(BuildError::Plan(msg.into()))
}

/// An agent filter `A(x)`.
#[derive(Debug, Clone)]
pub struct Filter {
    pub a: Formula,
    pub x: Var,
}

impl Filter {
    pub fn of(ck: &CkDef) -> Self {
        Filter { a: ck.a.clone(), x: ck.x }
    }

    pub fn psi(&self, u: &Term, v: &Term) -> Formula {
        psi(&self.a, self.x, u, v)
    }

    fn xt(&self) -> Term {
        Term::Var(self.x)
    }
}

fn guarded(body: Formula) -> Formula {
    Formula::forall_in(Y, Formula::l0(yt()), body)
}

fn at(theta: &Formula, t: &Term) -> Formula {
    theta.instantiate(Y, t).expect("term free for the argument variable")
}

/// `∀y∈L0 (CK(y) ↔ Ψ(y, ⌜CK⌝))`.
pub fn cke_statement(ck: &CkDef) -> Formula {
    guarded(Formula::iff(ck.ck.clone(), ck.psi(&yt(), &ck.code())))
}

/// `∀y∈L0 (θ(y) → Ψ_A(y, ⌜θ⌝))`.
pub fn h1_statement(f: &Filter, theta: &Formula) -> Formula {
    guarded(Formula::imp(theta.clone(), f.psi(&yt(), &quote(theta))))
}

/// `∀y∈L0 (Ψ_B(y, ⌜θ'⌝) → θ'(y))`.
pub fn h2_statement(f: &Filter, theta: &Formula) -> Formula {
    guarded(Formula::imp(f.psi(&yt(), &quote(theta)), theta.clone()))
}

/// Prove `∀y B'` in DCB from a stored `∀y B` when `B → B'` is tautological.
fn weaken(s: &mut Session, from: &Formula, to: &Formula) -> Res<Formula> {
    weaken_from(s, DCB, from, to)
}

fn weaken_from(s: &mut Session, sys: &str, from: &Formula, to: &Formula) -> Res<Formula> {
    let (from, to) = (from.clone(), to.clone());
    s.prove(DCB, |b| {
        let c = b.cite(sys, from.clone())?;
        let i = b.inst(c, &yt())?;
        let Formula::Forall(_, body) = &to else { return plan("weaken needs ∀") };
        let t = b.tc(&[i], body.as_ref().clone())?;
        b.ug(t, Y)
    })
}

/// The fixed point for `ck` together with its equivalence in DCB, and the
/// two halves of that equivalence.
pub fn cke(s: &mut Session, ck: &CkDef) -> Res<Formula> {
    s.replay(&ck.fp.witness)?;
    let stmt = cke_statement(ck);
    let base = ck.fp.statement.clone();
    weaken_from(s, BASE, &base, &stmt)?;
    weaken(s, &stmt, &h1_statement(&Filter::of(ck), &ck.ck))?;
    weaken(s, &stmt, &h2_statement(&Filter::of(ck), &ck.ck))?;
    Ok(stmt)
}

/// A function on codes used by the generalized argument, with the name of
/// its dotted definition.
#[derive(Clone, Copy)]
pub struct CodeFn {
    pub apply: fn(&Term) -> Term,
}

pub fn mpc_fn() -> CodeFn {
    CodeFn { apply: |t| Term::dot1(DotFn::Mpc, t.clone()) }
}

/// Inputs to the Löb argument. With `f` absent this is the plain version
/// (`θ → θ'`); `a` and `b` then coincide.
pub struct LoebSpec {
    pub a: Filter,
    pub b: Filter,
    pub theta: Formula,
    pub theta2: Formula,
    pub f: Option<CodeFn>,
    /// Conclude `∀y∈L0 (…)`; otherwise `∀y (…)`, which needs `θ` of the form
    /// `L0(y) ∧ …`.
    pub guarded: bool,
    pub h1: Formula,
    pub h2: Formula,
    /// `∀x (B(x) → A(x))`.
    pub h3: Option<Formula>,
    /// `∀y∈L0 ∀x (Ag(x) → (B(x) → (K(x, y) → K(x, f(y)))))`.
    pub h4: Option<Formula>,
    /// `∀y∈L0 L0(f(y))`.
    pub h5: Option<Formula>,
}

impl LoebSpec {
    pub fn plain(a: &Filter, theta: &Formula, theta2: &Formula) -> Self {
        LoebSpec {
            a: a.clone(),
            b: a.clone(),
            theta: theta.clone(),
            theta2: theta2.clone(),
            f: None,
            guarded: true,
            h1: h1_statement(a, theta),
            h2: h2_statement(a, theta2),
            h3: None,
            h4: None,
            h5: None,
        }
    }

    fn fy(&self) -> Term {
        match self.f {
            Some(f) => (f.apply)(&yt()),
            None => yt(),
        }
    }

    pub fn goal(&self) -> Formula {
        let body = Formula::imp(self.theta.clone(), at(&self.theta2, &self.fy()));
        if self.guarded {
            guarded(body)
        } else {
            Formula::forall(Y, body)
        }
    }
}

/// Fresh variable above everything in `fs`.
fn fresh(fs: &[&Formula]) -> Var {
    Var(fs.iter().flat_map(|f| f.all_vars()).map(|v| v.0 + 1).max().unwrap_or(0).max(1))
}

/// `∀y ∀n (f(y) = n → (θ'(f(y)) → θ'(n)))`, proved in Base.
fn transport(s: &mut Session, spec: &LoebSpec, f: CodeFn) -> Res<(Formula, Var)> {
    let n = fresh(&[&spec.theta2, &spec.theta]).max(Var(10));
    let fy = (f.apply)(&yt());
    let nt = Term::Var(n);
    let eq = Formula::eq(fy.clone(), nt.clone());
    let (from, to) = (at(&spec.theta2, &fy), at(&spec.theta2, &nt));
    let stmt = s.prove(BASE, |b| {
        let ax =
            b.push(Formula::imp(eq.clone(), Formula::imp(from.clone(), to.clone())), crate::kernel::Just::EqSubst)?;
        b.ugs(ax, &[Y, n])
    })?;
    Ok((stmt, n))
}

/// The Löb argument: from the hypotheses in `spec`, prove its goal in DCB.
pub fn loeb_ck(s: &mut Session, spec: &LoebSpec) -> Res<Formula> {
    let tr = match spec.f {
        Some(f) => Some(transport(s, spec, f)?),
        None => None,
    };
    let goal = spec.goal();
    let Formula::Forall(_, g_body) = &goal else { unreachable!() };
    let g_body = g_body.as_ref().clone();
    let fy = spec.fy();
    let y = yt();
    let x = spec.a.xt();
    let s_theta = instance_code(&y, &quote(&spec.theta));
    let t_fy = instance_code(&y, &quote(&at(&spec.theta2, &fy)));
    let s2 = instance_code(&fy, &quote(&spec.theta2));

    s.prove(DCB, |b| {
        let hp = b.hyp(Formula::pr(DCB, quote(&goal)))?;
        let i1 = b.internal_ui(hp, &goal, std::slice::from_ref(&y))?;
        let hl = b.hyp(Formula::l0(y.clone()))?;
        let mut cur = if spec.guarded {
            let ly = sigma_chain(&Formula::l0(y.clone()));
            let target =
                Formula::pr(DCB, Term::dot2(DotFn::Imp, ly, Term::dot2(DotFn::Imp, s_theta.clone(), t_fy.clone())));
            let c = b.conv(i1, &target, &[])?;
            let d = b.d2(c)?;
            let ps = b.pr_sigma(DCB, &Formula::l0(y.clone()))?;
            let p = b.mp(hl, ps)?;
            b.mp(p, d)?
        } else {
            b.conv(i1, &Formula::pr(DCB, Term::dot2(DotFn::Imp, s_theta.clone(), t_fy.clone())), &[])?
        };
        if let Some((tr, n)) = &tr {
            let c = b.cite(BASE, tr.clone())?;
            let pr = b.d1(DCB, c)?;
            let iu = b.internal_ui(pr, tr, &[y.clone(), fy.clone()])?;
            let eq = Formula::eq(fy.clone(), Term::Var(*n));
            let eqc = sigma_chain(&eq).replace(*n, &fy);
            let target =
                Formula::pr(DCB, Term::dot2(DotFn::Imp, eqc, Term::dot2(DotFn::Imp, t_fy.clone(), s2.clone())));
            let iu = b.conv(iu, &target, &[])?;
            let d = b.d2(iu)?;
            let ps = b.pr_sigma(DCB, &eq)?;
            let ps = b.ug(ps, *n)?;
            let ps = b.inst(ps, &fy)?;
            let r = b.refl(fy.clone())?;
            let pe = b.mp(r, ps)?;
            let link = b.mp(pe, d)?;
            let gs: Vec<usize> = [&s_theta, &t_fy, &s2]
                .into_iter()
                .map(|t| b.comp_fact(Formula::l0(t.clone()), &[]))
                .collect::<Res<_>>()?;
            let imp = |p: &Term, q: &Term| Term::dot2(DotFn::Imp, p.clone(), q.clone());
            let tau = imp(&imp(&s_theta, &t_fy), &imp(&imp(&t_fy, &s2), &imp(&s_theta, &s2)));
            let pt = b.pr_taut(DCB, &gs, tau)?;
            let d = b.d2(pt)?;
            let m = b.mp(cur, d)?;
            let d = b.d2(m)?;
            cur = b.mp(link, d)?;
        }
        let hag = b.hyp(Formula::ag(x.clone()))?;
        let k = b.reflect(hag, cur, &[hl])?;
        let hk = b.hyp(Formula::k2(x.clone(), s_theta.clone()))?;
        let k2 = b.know_mp(hag, hk, k, &[hl])?;
        let kk = b.discharge(hk, k2)?;

        let hpsi = b.hyp(spec.a.psi(&y, &quote(&spec.theta)))?;
        let hb = b.hyp(at_var(&spec.b.a, spec.b.x, spec.a.x))?;
        let ax = match &spec.h3 {
            Some(h3) => {
                let c = b.cite(DCB, h3.clone())?;
                b.use_step(c, std::slice::from_ref(&x), &[hb])?
            }
            None => hb,
        };
        let inst = b.inst(hpsi, &x)?;
        let conj = b.mps(inst, &[hag, ax])?;
        let mut prems = vec![conj, kk];
        if let Some(h4) = &spec.h4 {
            let c = b.cite(DCB, h4.clone())?;
            prems.push(b.use_step(c, &[y.clone(), x.clone()], &[hl, hag, hb])?);
        }
        let want = Formula::and(Formula::k2(x.clone(), fy.clone()), Formula::k2(x.clone(), s2.clone()));
        let k = b.tc(&prems, want)?;
        let d = b.discharge(hb, k)?;
        let d = b.discharge(hag, d)?;
        let g = b.ug(d, spec.a.x)?;
        let dpsi = b.discharge(hpsi, g)?;

        let c1 = b.cite(DCB, spec.h1.clone())?;
        let h1 = b.use_step(c1, std::slice::from_ref(&y), &[hl])?;
        let l0fy = match &spec.h5 {
            Some(h5) => {
                let c = b.cite(DCB, h5.clone())?;
                b.use_step(c, std::slice::from_ref(&y), &[hl])?
            }
            None => hl,
        };
        let c2 = b.cite(DCB, spec.h2.clone())?;
        let h2 = b.use_step(c2, std::slice::from_ref(&fy), &[l0fy])?;
        let Formula::Imp(_, inner) = &g_body else { unreachable!() };
        let imp = if spec.guarded { inner.as_ref().clone() } else { g_body.clone() };
        let body = b.tc(&[h1, dpsi, h2], imp)?;
        let d = b.discharge(hl, body)?;
        let d = if spec.guarded { d } else { b.tc(&[d], g_body.clone())? };
        let all = b.ug(d, Y)?;
        let lo = b.discharge(hp, all)?;
        b.loeb(lo)
    })
}

fn at_var(a: &Formula, from: Var, to: Var) -> Formula {
    if from == to {
        a.clone()
    } else {
        a.rename_free(from, to).expect("filter variable free")
    }
}

/// `∀x' B → ∀x B[x':=x]` and back, for α-variant universal formulas.
fn alpha_equiv(b: &mut Builder, f1: &Formula, f2: &Formula) -> Res<(usize, usize)> {
    let one_way = |b: &mut Builder, from: &Formula, to: &Formula| -> Res {
        let Formula::Forall(v, _) = to else { return plan("alpha_equiv needs ∀") };
        let h = b.hyp(from.clone())?;
        let i = b.inst(h, &Term::Var(*v))?;
        let g = b.ug(i, *v)?;
        if b.f(g) != to {
            return plan("not α-variants");
        }
        b.discharge(h, g)
    };
    Ok((one_way(b, f1, f2)?, one_way(b, f2, f1)?))
}

/// `CK'` defined with another agent variable: its equivalence restated with
/// the filter of `ck`.
fn variant_cke(s: &mut Session, ck: &CkDef, variant: &CkDef) -> Res<Formula> {
    let own = cke(s, variant)?;
    let f = Filter::of(ck);
    let stmt = guarded(Formula::iff(variant.ck.clone(), f.psi(&yt(), &variant.code())));
    let theirs = variant.psi(&yt(), &variant.code());
    let ours = f.psi(&yt(), &variant.code());
    s.prove(DCB, |b| {
        let c = b.cite(DCB, own.clone())?;
        let i = b.inst(c, &yt())?;
        let (l, r) = alpha_equiv(b, &theirs, &ours)?;
        let Formula::Forall(_, body) = &stmt else { unreachable!() };
        let t = b.tc(&[i, l, r], body.as_ref().clone())?;
        b.ug(t, Y)
    })?;
    weaken(s, &stmt, &h1_statement(&f, &variant.ck))?;
    weaken(s, &stmt, &h2_statement(&f, &variant.ck))?;
    Ok(stmt)
}

pub fn ck_ag() -> CkDef {
    make_ck(&parse_formula("Ag(v1)").expect("filter")).expect("unary filter")
}

fn ck_ag_variant() -> CkDef {
    make_ck_with(&parse_formula("Ag(v1)").expect("filter"), 25).expect("unary filter")
}

fn start(ctx: &Ctx) -> (Session<'_>, Instant) {
    (Session::new(ctx), Instant::now())
}

pub fn cke_script(ctx: &Ctx) -> Res<ScriptRun> {
    let (mut s, t) = start(ctx);
    let ck = ck_ag();
    let stmt = cke(&mut s, &ck)?;
    s.prove(DCB, |b| b.cite(DCB, stmt.clone()))?;
    Ok(s.done("cke", t))
}

pub fn implied(ctx: &Ctx) -> Res<ScriptRun> {
    let (mut s, t) = start(ctx);
    let (ck, ck2) = (ck_ag(), ck_ag_variant());
    cke(&mut s, &ck)?;
    variant_cke(&mut s, &ck, &ck2)?;
    loeb_ck(&mut s, &LoebSpec::plain(&Filter::of(&ck), &ck.ck, &ck2.ck))?;
    Ok(s.done("implied", t))
}

pub fn unique(ctx: &Ctx) -> Res<ScriptRun> {
    let (mut s, t) = start(ctx);
    let (ck, ck2) = (ck_ag(), ck_ag_variant());
    cke(&mut s, &ck)?;
    variant_cke(&mut s, &ck, &ck2)?;
    let f = Filter::of(&ck);
    let one = loeb_ck(&mut s, &LoebSpec::plain(&f, &ck.ck, &ck2.ck))?;
    let two = loeb_ck(&mut s, &LoebSpec::plain(&f, &ck2.ck, &ck.ck))?;
    let stmt = guarded(Formula::iff(ck.ck.clone(), ck2.ck.clone()));
    s.prove(DCB, |b| {
        let a = b.cite(DCB, one.clone())?;
        let a = b.inst(a, &yt())?;
        let c = b.cite(DCB, two.clone())?;
        let c = b.inst(c, &yt())?;
        let Formula::Forall(_, body) = &stmt else { unreachable!() };
        let t = b.tc(&[a, c], body.as_ref().clone())?;
        b.ug(t, Y)
    })?;
    Ok(s.done("unique", t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scripts::replay;

    #[test]
    fn equivalence_and_uniqueness() {
        let ctx = Ctx::new();
        let run = cke_script(&ctx).unwrap();
        assert_eq!(run.verdict().conclusion, cke_statement(&ck_ag()));
        assert_eq!(run.verdicts.iter().map(|v| v.nec_uses).sum::<usize>(), 0);
        let run = unique(&ctx).unwrap();
        assert_eq!(run.count("loeb"), 2);
        replay(&run).unwrap();
    }
}

fn conj_all(fs: &[Formula]) -> Formula {
    let (last, init) = fs.split_last().expect("non-empty conjunction");
    init.iter().rev().fold(last.clone(), |acc, f| Formula::and(f.clone(), acc))
}

/// From `CK(⌜χ⌝)` (step `fact`), the facts `K2(x, ⌜χ⌝)` and
/// `K2(x, ⌜CK(⌜χ⌝)⌝)` under `Ag(x)` and `A(x)`.
fn unfold_ck(
    b: &mut Builder,
    ck: &CkDef,
    cke_step: usize,
    fact: usize,
    arg: &Term,
    known: &[usize],
    hag: usize,
    ha: usize,
) -> Res<(usize, usize)> {
    let x = Term::Var(ck.x);
    let e = b.use_step(cke_step, std::slice::from_ref(arg), known)?;
    let p = b.tc(&[fact, e], ck.psi(arg, &ck.code()))?;
    let i = b.inst(p, &x)?;
    let conj = b.mps(i, &[hag, ha])?;
    let k1 = b.tc(&[conj], Formula::k2(x.clone(), arg.clone()))?;
    let k2 = b.tc(&[conj], ck.knows_instance(&x, arg, &ck.code()))?;
    Ok((k1, k2))
}

/// `∀y∈L0 (θ(y) → Ψ(y, ⌜θ⌝))` for `θ(y) := y = c ∧ CK(⌜χ1⌝) ∧ …`, where the
/// sentence coded by `c` follows tautologically from the `χi`.
fn pointwise_h1(
    s: &mut Session,
    ck: &CkDef,
    cke_stmt: &Formula,
    c: &Formula,
    chis: &[Formula],
) -> Res<(Formula, Formula)> {
    let qc = quote(c);
    let facts: Vec<Formula> = chis.iter().map(|chi| ck.at(&quote(chi))).collect();
    let mut parts = vec![Formula::eq(yt(), qc.clone())];
    parts.push(conj_all(&facts));
    let theta = conj_all(&parts);
    let f = Filter::of(ck);
    let stmt = h1_statement(&f, &theta);
    let x = Term::Var(ck.x);
    s.prove(DCB, |b| {
        let hl = b.hyp(Formula::l0(yt()))?;
        let ht = b.hyp(theta.clone())?;
        let eq = b.tc(&[ht], Formula::eq(yt(), qc.clone()))?;
        let cke_step = b.cite(DCB, cke_stmt.clone())?;
        let hag = b.hyp(Formula::ag(x.clone()))?;
        let ha = b.hyp(ck.a.clone())?;
        let mut ks = Vec::new();
        let mut kcs = Vec::new();
        for (chi, fact) in chis.iter().zip(&facts) {
            let fs = b.tc(&[ht], fact.clone())?;
            let (k1, k2) = unfold_ck(b, ck, cke_step, fs, &quote(chi), &[], hag, ha)?;
            ks.push(k1);
            kcs.push(b.conv(k2, &Formula::k2(x.clone(), quote(fact)), &[])?);
        }
        let kc = b.know_taut(hag, &ks, c, &[])?;
        let r = b.refl(qc.clone())?;
        let kr = b.knows_thm(hag, r, &[])?;
        let mut prems = vec![kr];
        prems.extend(&kcs);
        let th_c = at(&theta, &qc);
        let kt = b.know_taut(hag, &prems, &th_c, &[])?;
        let kt = b.conv(kt, &Formula::k2(x.clone(), instance_code(&qc, &quote(&theta))), &[])?;
        let conj = b.tc(&[kc, kt], Formula::and(b.f(kc).clone(), b.f(kt).clone()))?;
        let d = b.discharge(ha, conj)?;
        let d = b.discharge(hag, d)?;
        let g = b.ug(d, ck.x)?;
        let back = b.sym(eq)?;
        let p = b.rewrite(g, back)?;
        let d = b.discharge(ht, p)?;
        let d = b.discharge(hl, d)?;
        b.ug(d, Y)
    })?;
    Ok((theta, stmt))
}

/// `CK(⌜χ1⌝) ∧ … → CK(⌜c⌝)` via the pointwise `θ`.
fn pointwise_implied(s: &mut Session, ck: &CkDef, cke_stmt: &Formula, c: &Formula, chis: &[Formula]) -> Res<Formula> {
    let (theta, h1) = pointwise_h1(s, ck, cke_stmt, c, chis)?;
    let mut spec = LoebSpec::plain(&Filter::of(ck), &theta, &ck.ck);
    spec.h1 = h1;
    let g = loeb_ck(s, &spec)?;
    let qc = quote(c);
    let facts: Vec<Formula> = chis.iter().map(|chi| ck.at(&quote(chi))).collect();
    let want = Formula::imp(conj_all(&facts), ck.at(&qc));
    s.prove(DCB, |b| {
        let gi = b.cite(DCB, g.clone())?;
        let gi = b.use_step(gi, std::slice::from_ref(&qc), &[])?;
        let r = b.refl(qc.clone())?;
        b.tc(&[gi, r], want.clone())
    })
}

/// `CK(⌜φ⌝) ∧ CK(⌜ψ⌝) ↔ CK(⌜φ ∧ ψ⌝)`.
pub fn conj_ck(s: &mut Session, ck: &CkDef, phi: &Formula, psi_: &Formula) -> Res<Formula> {
    let stmt = cke(s, ck)?;
    let both = Formula::and(phi.clone(), psi_.clone());
    let fwd = pointwise_implied(s, ck, &stmt, &both, &[phi.clone(), psi_.clone()])?;
    let left = pointwise_implied(s, ck, &stmt, phi, std::slice::from_ref(&both))?;
    let right = pointwise_implied(s, ck, &stmt, psi_, std::slice::from_ref(&both))?;
    let want = Formula::iff(Formula::and(ck.at(&quote(phi)), ck.at(&quote(psi_))), ck.at(&quote(&both)));
    s.prove(DCB, |b| {
        let ps: Vec<usize> = [&fwd, &left, &right].into_iter().map(|f| b.cite(DCB, f.clone())).collect::<Res<_>>()?;
        b.tc(&ps, want.clone())
    })
}

/// The named sentence pairs for the conjunction lemma.
pub fn conj_pairs() -> Vec<(Formula, Formula)> {
    let p = |s: &str| parse_formula(s).expect("sentence");
    vec![(p("0 = 0"), p("S(0) = S(0)")), (p("~(0 = S(0))"), p("forall v1 (v1 + 0 = v1)"))]
}

pub fn conj_1(ctx: &Ctx) -> Res<ScriptRun> {
    let (mut s, t) = start(ctx);
    let (a, b) = &conj_pairs()[0];
    conj_ck(&mut s, &ck_ag(), a, b)?;
    Ok(s.done("conj-1", t))
}

pub fn conj_2(ctx: &Ctx) -> Res<ScriptRun> {
    let (mut s, t) = start(ctx);
    let (a, b) = &conj_pairs()[1];
    conj_ck(&mut s, &ck_ag(), a, b)?;
    Ok(s.done("conj-2", t))
}
#[cfg(test)]
mod conj_tests {
    use super::*;

    #[test]
    fn conjunction_pairs() {
        let ctx = Ctx::new();
        let run = conj_1(&ctx).unwrap();
        let (a, b) = &conj_pairs()[0];
        let ck = ck_ag();
        let want = Formula::iff(
            Formula::and(ck.at(&quote(a)), ck.at(&quote(b))),
            ck.at(&quote(&Formula::and(a.clone(), b.clone()))),
        );
        assert_eq!(run.verdict().conclusion, want);
        conj_2(&ctx).unwrap();
    }
}

const P: Var = Var(5);
const B: Var = Var(6);
const N: Var = Var(7);

fn imp_t(a: &Term, b: &Term) -> Term {
    Term::dot2(DotFn::Imp, a.clone(), b.clone())
}

fn and_t(a: &Term, b: &Term) -> Term {
    Term::dot2(DotFn::And, a.clone(), b.clone())
}

fn v(x: Var) -> Term {
    Term::Var(x)
}

/// `(L0 p ∧ L0 b) ∧ (n = imp(p, b) ∧ y = and(p, n))`.
fn sigma_part() -> Formula {
    Formula::and(
        Formula::and(Formula::l0(v(P)), Formula::l0(v(B))),
        Formula::and(Formula::eq(v(N), imp_t(&v(P), &v(B))), Formula::eq(yt(), and_t(&v(P), &v(N)))),
    )
}

fn uniform_body(ck: &CkDef) -> Formula {
    Formula::and(sigma_part(), Formula::and(ck.at(&v(P)), ck.at(&v(N))))
}

/// `θ(y) := ∃p ∃b ∃n (…)`: `y` is a conjunction `p ∧ (p → b)` of commonly
/// known sentences.
fn uniform_theta(ck: &CkDef) -> Formula {
    Formula::exists(P, Formula::exists(B, Formula::exists(N, uniform_body(ck))))
}

/// `∀p ∀b ∀n ∀y (Σ → (CK(p) → (CK(n) → θ(y))))`, proved in Base.
fn uniform_intro(s: &mut Session, ck: &CkDef) -> Res<Formula> {
    let theta = uniform_theta(ck);
    let body = uniform_body(ck);
    s.prove(BASE, |b| {
        let hs = b.hyp(sigma_part())?;
        let hp = b.hyp(ck.at(&v(P)))?;
        let hn = b.hyp(ck.at(&v(N)))?;
        let all = b.tc(&[hs, hp, hn], body.clone())?;
        let e = b.exists_intro(all, N, &body, &v(N))?;
        let e = b.exists_intro(e, B, &Formula::exists(N, body.clone()), &v(B))?;
        let e = b.exists_intro(e, P, &Formula::exists(B, Formula::exists(N, body.clone())), &v(P))?;
        debug_assert_eq!(b.f(e), &theta);
        let d = b.discharge(hn, e)?;
        let d = b.discharge(hp, d)?;
        let d = b.discharge(hs, d)?;
        b.ugs(d, &[P, B, N, Y])
    })
}

fn uniform_h1(s: &mut Session, ck: &CkDef, cke_stmt: &Formula) -> Res<(Formula, Formula)> {
    let t0 = uniform_intro(s, ck)?;
    let theta = uniform_theta(ck);
    let body = uniform_body(ck);
    let f = Filter::of(ck);
    let stmt = h1_statement(&f, &theta);
    let x = Term::Var(ck.x);
    let (p, bb, n, y) = (v(P), v(B), v(N), yt());
    s.prove(DCB, |b| {
        let hl = b.hyp(Formula::l0(y.clone()))?;
        let ht = b.hyp(theta.clone())?;
        let he1 = b.hyp(Formula::exists(B, Formula::exists(N, body.clone())))?;
        let he2 = b.hyp(Formula::exists(N, body.clone()))?;
        let hb = b.hyp(body.clone())?;
        let lp = b.tc(&[hb], Formula::l0(p.clone()))?;
        let lb = b.tc(&[hb], Formula::l0(bb.clone()))?;
        let en = b.tc(&[hb], Formula::eq(n.clone(), imp_t(&p, &bb)))?;
        let ey = b.tc(&[hb], Formula::eq(y.clone(), and_t(&p, &n)))?;
        let cp = b.tc(&[hb], ck.at(&p))?;
        let cn = b.tc(&[hb], ck.at(&n))?;
        let li = b.comp_fact(Formula::l0(imp_t(&p, &bb)), &[lp, lb])?;
        let ne = b.sym(en)?;
        let ln = b.rewrite(li, ne)?;

        let cke_step = b.cite(DCB, cke_stmt.clone())?;
        let hag = b.hyp(Formula::ag(x.clone()))?;
        let ha = b.hyp(ck.a.clone())?;
        let (kp, kcp) = unfold_ck(b, ck, cke_step, cp, &p, &[lp], hag, ha)?;
        let (kn, kcn) = unfold_ck(b, ck, cke_step, cn, &n, &[ln], hag, ha)?;

        let tau = imp_t(&p, &imp_t(&n, &and_t(&p, &n)));
        let pt = b.pr_taut(DCB, &[lp, ln], tau)?;
        let kt = b.reflect(hag, pt, &[lp, ln])?;
        let k1 = b.know_mp(hag, kp, kt, &[lp, ln])?;
        let k2 = b.know_mp(hag, kn, k1, &[lp, ln])?;
        let ye = b.sym(ey)?;
        let ky = b.rewrite(k2, ye)?;

        let t0s = b.cite(BASE, t0.clone())?;
        let pr = b.d1(DCB, t0s)?;
        let iu = b.internal_ui(pr, &t0, &[p.clone(), bb.clone(), n.clone(), y.clone()])?;
        let s_sigma = sigma_chain(&sigma_part());
        let s_cp = instance_code(&p, &ck.code());
        let s_cn = instance_code(&n, &ck.code());
        let s_th = instance_code(&y, &quote(&theta));
        let target = Formula::pr(DCB, imp_t(&s_sigma, &imp_t(&s_cp, &imp_t(&s_cn, &s_th))));
        let iu = b.conv(iu, &target, &[])?;
        let k_t0 = b.reflect(hag, iu, &[])?;
        let ps = b.pr_sigma(DCB, &sigma_part())?;
        let sig = b.tc(&[lp, lb, en, ey], sigma_part())?;
        let psig = b.mp(sig, ps)?;
        let ksig = b.reflect(hag, psig, &[])?;
        let k = b.know_mp(hag, ksig, k_t0, &[])?;
        let k = b.know_mp(hag, kcp, k, &[])?;
        let k = b.know_mp(hag, kcn, k, &[])?;

        let conj = b.tc(&[ky, k], Formula::and(b.f(ky).clone(), b.f(k).clone()))?;
        let d = b.discharge(ha, conj)?;
        let d = b.discharge(hag, d)?;
        let g = b.ug(d, ck.x)?;
        let e = b.exists_elim(he2, hb, g)?;
        let e = b.exists_elim(he1, he2, e)?;
        let e = b.exists_elim(ht, he1, e)?;
        let d = b.discharge(ht, e)?;
        let d = b.discharge(hl, d)?;
        b.ug(d, Y)
    })?;
    Ok((theta, stmt))
}

/// `∀p ∀b (L0 p → (L0 b → (CK(p) → (CK(imp(p, b)) → CK(and(p, imp(p, b)))))))`.
pub fn uniform_conj(s: &mut Session, ck: &CkDef, cke_stmt: &Formula) -> Res<Formula> {
    let (theta, h1) = uniform_h1(s, ck, cke_stmt)?;
    let mut spec = LoebSpec::plain(&Filter::of(ck), &theta, &ck.ck);
    spec.h1 = h1;
    let g = loeb_ck(s, &spec)?;
    let (p, bb) = (v(Var(1)), v(Var(2)));
    let q = imp_t(&p, &bb);
    let u = and_t(&p, &q);
    s.prove(DCB, |b| {
        let lp = b.hyp(Formula::l0(p.clone()))?;
        let lb = b.hyp(Formula::l0(bb.clone()))?;
        let cp = b.hyp(ck.at(&p))?;
        let cq = b.hyp(ck.at(&q))?;
        let r1 = b.refl(q.clone())?;
        let r2 = b.refl(u.clone())?;
        let body = uniform_body(ck);
        let inst = body.instantiate(Y, &u).and_then(|f| f.instantiate(P, &p)).and_then(|f| f.instantiate(B, &bb));
        let Ok(inst) = inst else { return plan("uniform instance") };
        let i =
            b.tc(&[lp, lb, r1, r2, cp, cq], inst.instantiate(N, &q).map_err(|e| BuildError::Plan(e.to_string()))?)?;
        let e = b.exists_intro(i, N, &inst, &q)?;
        let sub = |f: Formula, vars: &[(Var, &Term)]| -> Formula {
            vars.iter().fold(f, |acc, (x, t)| acc.instantiate(*x, t).expect("free for"))
        };
        let a2 = sub(Formula::exists(N, body.clone()), &[(Y, &u), (P, &p)]);
        let e = b.exists_intro(e, B, &a2, &bb)?;
        let a1 = sub(Formula::exists(B, Formula::exists(N, body.clone())), &[(Y, &u)]);
        let e = b.exists_intro(e, P, &a1, &p)?;
        let gi = b.cite(DCB, g.clone())?;
        let gi = b.use_step(gi, std::slice::from_ref(&u), &[lp, lb])?;
        let c = b.mp(e, gi)?;
        let d = b.discharge(cq, c)?;
        let d = b.discharge(cp, d)?;
        let d = b.discharge(lb, d)?;
        let d = b.discharge(lp, d)?;
        b.ugs(d, &[Var(1), Var(2)])
    })
}

fn mpc(t: &Term) -> Term {
    Term::dot1(DotFn::Mpc, t.clone())
}

/// Case split on `MpcCases` at `y`: `case` receives either `mpc(y) = y`
/// (`None`) or the witnesses' guards and `y = and(a, imp(a, b))`, and
/// must reach the same conclusion.
fn mpc_split(
    b: &mut Builder,
    concl: &Formula,
    mut case: impl FnMut(&mut Builder, Option<(usize, usize, usize, Term, Term)>) -> Res,
) -> Res {
    let (a0, b0) = (Var(1), Var(2));
    let (a, bv) = (Var(8), Var(9));
    let mc = b.ax("MpcCases")?;
    let mc = b.inst(mc, &yt())?;
    let h1 = b.hyp(Formula::eq(mpc(&yt()), yt()))?;
    let c1 = case(b, None)?;
    let d1 = b.discharge(h1, c1)?;
    let shape = |a: Var, bv: Var| {
        Formula::and(
            Formula::and(Formula::l0(v(a)), Formula::l0(v(bv))),
            Formula::eq(yt(), and_t(&v(a), &imp_t(&v(a), &v(bv)))),
        )
    };
    let ex1 = b.hyp(Formula::exists(a0, Formula::exists(b0, shape(a0, b0))))?;
    let ex2 = b.hyp(Formula::exists(b0, shape(a, b0)))?;
    let hb = b.hyp(shape(a, bv))?;
    let la = b.tc(&[hb], Formula::l0(v(a)))?;
    let lb = b.tc(&[hb], Formula::l0(v(bv)))?;
    let eq = b.tc(&[hb], Formula::eq(yt(), and_t(&v(a), &imp_t(&v(a), &v(bv)))))?;
    let c2 = case(b, Some((la, lb, eq, v(a), v(bv))))?;
    let e = b.exists_elim(ex2, hb, c2)?;
    let e = b.exists_elim(ex1, ex2, e)?;
    let d2 = b.discharge(ex1, e)?;
    b.tc(&[mc, d1, d2], concl.clone())
}

/// `∀y∈L0 L0(mpc(y))`.
pub fn mpc_l0(s: &mut Session) -> Res<Formula> {
    let concl = Formula::l0(mpc(&yt()));
    s.prove(DCB, |b| {
        let hl = b.hyp(Formula::l0(yt()))?;
        let c = mpc_split(b, &concl, |b, case| match case {
            None => {
                let e = b.last();
                let back = b.sym(e)?;
                let l = b.rewrite(hl, back)?;
                b.conv(l, &concl, &[])
            }
            Some((la, lb, eq, a, bv)) => {
                let l = b.comp_fact(Formula::l0(mpc(&and_t(&a, &imp_t(&a, &bv)))), &[la, lb])?;
                let back = b.sym(eq)?;
                b.rewrite(l, back)
            }
        })?;
        let d = b.discharge(hl, c)?;
        b.ug(d, Y)
    })
}

/// `∀y∈L0 ∀x (Ag(x) → (B(x) → (K(x, y) → K(x, mpc(y)))))`.
pub fn mpc_knowledge(s: &mut Session, bf: &Filter) -> Res<Formula> {
    let x = bf.xt();
    let concl = Formula::k2(x.clone(), mpc(&yt()));
    let stmt = guarded(Formula::forall(
        bf.x,
        Formula::imp(
            Formula::ag(x.clone()),
            Formula::imp(bf.a.clone(), Formula::imp(Formula::k2(x.clone(), yt()), concl.clone())),
        ),
    ));
    s.prove(DCB, |b| {
        let hl = b.hyp(Formula::l0(yt()))?;
        let hag = b.hyp(Formula::ag(x.clone()))?;
        let hb = b.hyp(bf.a.clone())?;
        let hk = b.hyp(Formula::k2(x.clone(), yt()))?;
        let c = mpc_split(b, &concl, |b, case| match case {
            None => {
                let e = b.last();
                let back = b.sym(e)?;
                b.rewrite(hk, back)
            }
            Some((la, lb, eq, a, bv)) => {
                let k = b.rewrite(hk, eq)?;
                let conj = and_t(&a, &imp_t(&a, &bv));
                let pt = b.pr_taut(DCB, &[la, lb], imp_t(&conj, &bv))?;
                let kt = b.reflect(hag, pt, &[la, lb])?;
                let kb = b.know_mp(hag, k, kt, &[la, lb])?;
                let m = b.comp_eq(mpc(&conj), bv.clone(), &[la, lb])?;
                let m = b.sym(m)?;
                let k = b.rewrite(kb, m)?;
                let back = b.sym(eq)?;
                b.rewrite(k, back)
            }
        })?;
        let d = b.discharge(hk, c)?;
        let d = b.discharge(hb, d)?;
        let d = b.discharge(hag, d)?;
        let g = b.ug(d, bf.x)?;
        let d = b.discharge(hl, g)?;
        b.ug(d, Y)
    })?;
    Ok(stmt)
}

/// `∀x (B(x) → A(x))` for filters where this is a logical truth or follows
/// from reflexivity.
fn filter_inclusion(s: &mut Session, a: &Filter, bf: &Filter) -> Res<Formula> {
    let want = Formula::forall(a.x, Formula::imp(bf.a.clone(), a.a.clone()));
    s.prove(DCB, |b| {
        let r = b.refl(a.xt())?;
        let Formula::Forall(_, body) = &want else { unreachable!() };
        let t = b.tc(&[r], body.as_ref().clone())?;
        b.ug(t, a.x)
    })
}

/// `∀y∈L0 (CK_A(y) → CK_B(mpc(y)))`.
pub fn monotone_mpc(s: &mut Session, cka: &CkDef, ckb: &CkDef) -> Res<Formula> {
    cke(s, cka)?;
    if ckb.ck != cka.ck {
        cke(s, ckb)?;
    }
    let (fa, fb) = (Filter::of(cka), Filter::of(ckb));
    let h3 = filter_inclusion(s, &fa, &fb)?;
    let h4 = mpc_knowledge(s, &fb)?;
    let h5 = mpc_l0(s)?;
    let spec = LoebSpec {
        a: fa.clone(),
        b: fb.clone(),
        theta: cka.ck.clone(),
        theta2: ckb.ck.clone(),
        f: Some(mpc_fn()),
        guarded: true,
        h1: h1_statement(&fa, &cka.ck),
        h2: h2_statement(&fb, &ckb.ck),
        h3: Some(h3),
        h4: Some(h4),
        h5: Some(h5),
    };
    loeb_ck(s, &spec)
}

pub fn general(ctx: &Ctx) -> Res<ScriptRun> {
    let (mut s, t) = start(ctx);
    let ck = ck_ag();
    monotone_mpc(&mut s, &ck, &ck)?;
    Ok(s.done("general", t))
}

pub fn ck_everyone() -> CkDef {
    make_ck(&parse_formula("v1 = v1").expect("filter")).expect("unary filter")
}

pub fn monotone(ctx: &Ctx) -> Res<ScriptRun> {
    let (mut s, t) = start(ctx);
    monotone_mpc(&mut s, &ck_everyone(), &ck_ag())?;
    Ok(s.done("monotone", t))
}

/// `∀p ∀b (L0 p → (L0 b → (CK(p) ∧ CK(imp(p, b)) → CK(b))))`.
pub fn ck_main_a(ctx: &Ctx) -> Res<ScriptRun> {
    let (mut s, t) = start(ctx);
    let ck = ck_ag();
    let gm = monotone_mpc(&mut s, &ck, &ck)?;
    let stmt = cke_statement(&ck);
    let uc = uniform_conj(&mut s, &ck, &stmt)?;
    let (p, bb) = (v(Var(1)), v(Var(2)));
    let q = imp_t(&p, &bb);
    let u = and_t(&p, &q);
    let prem = Formula::and(ck.at(&p), ck.at(&q));
    s.prove(DCB, |b| {
        let lp = b.hyp(Formula::l0(p.clone()))?;
        let lb = b.hyp(Formula::l0(bb.clone()))?;
        let h = b.hyp(prem.clone())?;
        let c = b.cite(DCB, uc.clone())?;
        let c = b.use_step(c, &[p.clone(), bb.clone()], &[lp, lb])?;
        let cu = b.tc(&[h, c], ck.at(&u))?;
        let g = b.cite(DCB, gm.clone())?;
        let g = b.use_step(g, std::slice::from_ref(&u), &[lp, lb, cu])?;
        let e = b.comp_eq(mpc(&u), bb.clone(), &[lp, lb])?;
        let r = b.rewrite(g, e)?;
        let d = b.discharge(h, r)?;
        let d = b.discharge(lb, d)?;
        let d = b.discharge(lp, d)?;
        b.ugs(d, &[Var(1), Var(2)])
    })?;
    Ok(s.done("ck-main-a", t))
}

/// `∀y (L0(y) ∧ Pr_DCB(y) → CK(y))` by the Löb argument with the unguarded
/// goal, then `∀y∈L0 (Pr_DCB(y) → CK(y))`.
fn ck_main_b_in(s: &mut Session, ck: &CkDef) -> Res<Formula> {
    cke(s, ck)?;
    let theta = Formula::and(Formula::l0(yt()), Formula::pr(DCB, yt()));
    let f = Filter::of(ck);
    let h1 = h1_statement(&f, &theta);
    let x = f.xt();
    s.prove(DCB, |b| {
        let hl = b.hyp(Formula::l0(yt()))?;
        let ht = b.hyp(theta.clone())?;
        let hag = b.hyp(Formula::ag(x.clone()))?;
        let ha = b.hyp(ck.a.clone())?;
        let pr = b.tc(&[ht], Formula::pr(DCB, yt()))?;
        let k1 = b.reflect(hag, pr, &[hl])?;
        let ps = b.pr_sigma(DCB, &theta)?;
        let p2 = b.mp(ht, ps)?;
        let k2 = b.reflect(hag, p2, &[])?;
        let conj = b.tc(&[k1, k2], Formula::and(b.f(k1).clone(), b.f(k2).clone()))?;
        let d = b.discharge(ha, conj)?;
        let d = b.discharge(hag, d)?;
        let g = b.ug(d, ck.x)?;
        let d = b.discharge(ht, g)?;
        let d = b.discharge(hl, d)?;
        b.ug(d, Y)
    })?;
    let mut spec = LoebSpec::plain(&f, &theta, &ck.ck);
    spec.guarded = false;
    spec.h1 = h1;
    let g = loeb_ck(s, &spec)?;
    let want = guarded(Formula::imp(Formula::pr(DCB, yt()), ck.ck.clone()));
    s.prove(DCB, |b| {
        let c = b.cite(DCB, g.clone())?;
        let i = b.inst(c, &yt())?;
        let Formula::Forall(_, body) = &want else { unreachable!() };
        let t = b.tc(&[i], body.as_ref().clone())?;
        b.ug(t, Y)
    })
}

pub fn ck_main_b(ctx: &Ctx) -> Res<ScriptRun> {
    let (mut s, t) = start(ctx);
    ck_main_b_in(&mut s, &ck_ag())?;
    Ok(s.done("ck-main-b", t))
}

/// From a DCB proof of `0 = 0`, `CK(⌜0 = 0⌝)`.
pub fn ck_main_c(ctx: &Ctx) -> Res<ScriptRun> {
    let (mut s, t) = start(ctx);
    let ck = ck_ag();
    let b_stmt = ck_main_b_in(&mut s, &ck)?;
    let phi = parse_formula("0 = 0").expect("sentence");
    let q = quote(&phi);
    s.prove(DCB, |b| {
        let r = b.refl(Term::zero())?;
        let pr = b.d1(DCB, r)?;
        let c = b.cite(DCB, b_stmt.clone())?;
        b.use_step(c, std::slice::from_ref(&q), &[pr])
    })?;
    Ok(s.done("ck-main-c", t))
}

#[cfg(test)]
mod closure_tests {
    use super::*;
    use crate::scripts::replay;

    #[test]
    fn deductive_closure() {
        let ctx = Ctx::new();
        let ck = ck_ag();
        let b = ck_main_b(&ctx).unwrap();
        assert_eq!(b.count("loeb"), 1);
        assert_eq!(b.count("pr_sigma"), 1);
        let c = ck_main_c(&ctx).unwrap();
        assert_eq!(c.verdict().conclusion, ck.at(&quote(&parse_formula("0 = 0").unwrap())));
        let a = ck_main_a(&ctx).unwrap();
        replay(&a).unwrap();
        monotone(&ctx).unwrap();
    }
}
