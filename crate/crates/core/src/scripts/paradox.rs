//! Knower-style paradoxes: each script derives `⊥`.

use super::kit::Kit;
use super::{Ctx, ScriptRun, Session};
use crate::builder::Res;
use crate::coding::quote;
use crate::syntax::{DotFn, Formula, Syntax, Term, Var};
use crate::systems::{SchemaId, BASE, KM, KT_U4, MONTAGUE};
use std::time::Instant;

const Y: Var = Var(0);

fn sent(f: &Formula) -> Syntax {
    Syntax::Formula(f.clone())
}

pub fn km(ctx: &Ctx) -> Res<ScriptRun> {
    let start = Instant::now();
    let mut s = Session::new(ctx);
    let fp = s.fixed_point(&Formula::k1(Term::dot1(DotFn::Neg, Term::Var(Y))), Y)?;
    let kappa = fp.theta.clone();
    let nk = Formula::not(kappa.clone());
    let k_nk = Formula::k1(quote(&nk));
    let e = Formula::iff(kappa.clone(), k_nk.clone());
    s.prove(BASE, |b| {
        let c = b.cite(BASE, fp.statement.clone())?;
        b.conv(c, &e, &[])
    })?;
    let utk = Formula::imp(k_nk.clone(), nk.clone());
    let lemma = Formula::imp(utk.clone(), nk.clone());
    s.prove(BASE, |b| {
        let c = b.cite(BASE, e.clone())?;
        b.tc(&[c], lemma.clone())
    })?;
    s.prove(KM, |b| {
        let e = b.cite(BASE, e.clone())?;
        let u = b.schema(SchemaId::UtK, vec![sent(&nk)])?;
        let not_k = b.tc(&[e, u], nk.clone())?;
        let ku = b.schema(SchemaId::KUtK, vec![sent(&nk)])?;
        let pr = b.push(Formula::pr(BASE, quote(&lemma)), crate::kernel::Just::D1(BASE.into(), None))?;
        let ik = b.schema(SchemaId::IK, vec![sent(&utk), sent(&nk)])?;
        let k = b.tc(&[pr, ku, ik], k_nk.clone())?;
        let is_k = b.tc(&[e, k], kappa.clone())?;
        b.tc(&[is_k, not_k], Formula::bot())
    })?;
    Ok(s.done("km", start))
}

pub fn montague(ctx: &Ctx) -> Res<ScriptRun> {
    let start = Instant::now();
    let mut s = Session::new(ctx);
    let fp = s.fixed_point(&Formula::not(Formula::k1(Term::Var(Y))), Y)?;
    let delta = fp.theta.clone();
    s.prove(MONTAGUE, |b| {
        let e = b.cite(BASE, fp.statement.clone())?;
        let u = b.schema(SchemaId::UtK, vec![sent(&delta)])?;
        let d = b.tc(&[e, u], delta.clone())?;
        let k = b.push(Formula::k1(quote(&delta)), crate::kernel::Just::NecK1(d))?;
        b.tc(&[e, d, k], Formula::bot())
    })?;
    Ok(s.done("montague", start))
}

pub fn u4(ctx: &Ctx) -> Res<ScriptRun> {
    let start = Instant::now();
    let mut s = Session::new(ctx);
    let fp = s.fixed_point(&Formula::not(Formula::k1(Term::Var(Y))), Y)?;
    let delta = fp.theta.clone();
    let qd = quote(&delta);
    let kd = Formula::k1(qd.clone());
    let qkd = quote(&kd);
    let alpha = Term::Var(Var(0));
    let bot = Formula::bot();
    s.prove(KT_U4, |b| {
        let e = b.cite(BASE, fp.statement.clone())?;
        let a = b.tc(&[e], Formula::imp(kd.clone(), Formula::not(delta.clone())))?;
        let na = b.nec_k(a)?;
        let t = b.taut(Formula::imp(delta.clone(), Formula::imp(Formula::not(delta.clone()), bot.clone())))?;
        let nt = b.nec_k(t)?;

        let h = b.hyp(kd.clone())?;
        let u = b.use_ax("U4", std::slice::from_ref(&qd), &[h])?;
        let kk = b.conv(u, &Formula::k1(qkd.clone()), &[])?;
        let b1 = b.use_ax("K1K2", std::slice::from_ref(&qkd), &[])?;
        let all1 = b.tc(&[kk, b1], super::kit::everyone_knows(qkd.clone()))?;
        let b2 = b.use_ax("K1K2", std::slice::from_ref(&qd), &[])?;
        let all2 = b.tc(&[h, b2], super::kit::everyone_knows(qd.clone()))?;

        let ha = b.hyp(Formula::ag(alpha.clone()))?;
        let k1 = b.inst_mp(all1, &alpha, ha)?;
        let k2 = b.inst_mp(all2, &alpha, ha)?;
        let ka = b.inst_mp(na, &alpha, ha)?;
        let knd = b.know_mp(ha, k1, ka, &[])?;
        let kt = b.inst_mp(nt, &alpha, ha)?;
        let x1 = b.know_mp(ha, k2, kt, &[])?;
        let x2 = b.know_mp(ha, knd, x1, &[])?;
        let tb = b.use_ax("V", &[alpha.clone(), quote(&bot)], &[ha, x2])?;
        let ua = b.schema(SchemaId::UctAtom, vec![sent(&bot)])?;
        let f = b.tc(&[tb, ua], bot.clone())?;
        let nt = b.ax("NonTriv")?;
        let f = b.exists_elim(nt, ha, f)?;
        let no_kd = b.discharge(h, f)?;

        let nb = b.comp(Formula::not(bot.clone()))?;
        let d = b.tc(&[no_kd, nb, e], delta.clone())?;
        let nd = b.nec_k(d)?;
        let b3 = b.use_ax("K1K2", std::slice::from_ref(&qd), &[])?;
        let k = b.tc(&[nd, b3], kd.clone())?;
        b.mp(k, no_kd)
    })?;
    Ok(s.done("u4", start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scripts::replay;

    #[test]
    fn paradoxes_derive_falsum() {
        let ctx = Ctx::new();
        for (f, sys) in [(km as fn(&Ctx) -> Res<ScriptRun>, KM), (montague, MONTAGUE), (u4, KT_U4)] {
            let run = f(&ctx).unwrap();
            assert_eq!(run.main().system, sys);
            assert_eq!(run.verdict().conclusion, Formula::bot());
            let replayed = replay(&run).unwrap();
            assert_eq!(replayed.last().unwrap().conclusion, Formula::bot());
            assert_eq!(run.count("nec_t") + run.count("conec_t"), 0);
        }
        let m = montague(&ctx).unwrap();
        assert_eq!(m.count("nec_k1"), 1);
        assert_eq!(m.count("nec_k"), 0);
    }
}
