//! Convenience layer over the incremental checker for writing proofs.
//! Every helper expands into primitive kernel steps.

use crate::kernel::logic::{replace_term, replace_toward, term_diffs};
use crate::kernel::{Checker, Just, KernelError, Proof, TheoremDb, Verdict};
use crate::syntax::{Formula, Syntax, Term, Var};
use crate::systems::{Registry, SchemaId, SystemDef};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("proof construction failed: {0}")]
    Plan(String),
}

pub type Res<T = usize> = Result<T, BuildError>;

fn plan<T>(msg: impl Into<String>) -> Res<T> {
    Err(BuildError::Plan(msg.into()))
}

pub struct Builder<'a> {
    c: Checker<'a>,
}

impl<'a> Builder<'a> {
    pub fn new(reg: &'a Registry, db: &'a TheoremDb, system: &str) -> Res<Self> {
        Ok(Builder { c: Checker::new(reg, db, system)? })
    }

    pub fn system(&self) -> &SystemDef {
        self.c.system()
    }

    pub fn f(&self, i: usize) -> &Formula {
        self.c.formula(i)
    }

    pub fn deps_of(&self, i: usize) -> Vec<usize> {
        self.c.deps(i).iter().copied().collect()
    }

    pub fn last(&self) -> usize {
        self.c.len() - 1
    }

    pub fn proof(&self) -> &Proof {
        self.c.proof()
    }

    pub fn push(&mut self, f: Formula, j: Just) -> Res {
        Ok(self.c.push(f, j)?)
    }

    pub fn finish(self) -> Res<(Verdict, Proof)> {
        Ok(self.c.finish()?)
    }

    pub fn hyp(&mut self, f: Formula) -> Res {
        self.push(f, Just::Hyp)
    }

    pub fn taut(&mut self, f: Formula) -> Res {
        self.push(f, Just::Taut)
    }

    pub fn tc(&mut self, ps: &[usize], f: Formula) -> Res {
        self.push(f, Just::Tc(ps.to_vec()))
    }

    pub fn comp(&mut self, f: Formula) -> Res {
        self.push(f, Just::Comp)
    }

    pub fn refl(&mut self, t: Term) -> Res {
        self.push(Formula::eq(t.clone(), t), Just::EqRefl)
    }

    pub fn ax(&mut self, name: &str) -> Res {
        let f = match self.c.system().get_axiom(name) {
            Some(f) => f.clone(),
            None => Formula::bot(),
        };
        self.push(f, Just::Ax(name.into()))
    }

    pub fn schema(&mut self, id: SchemaId, params: Vec<Syntax>) -> Res {
        let f = id.instantiate(&params).unwrap_or_else(|_| Formula::bot());
        self.push(f, Just::Schema(id, params))
    }

    pub fn cite(&mut self, sys: &str, f: Formula) -> Res {
        self.push(f, Just::Cite(sys.into()))
    }

    /// From `a` and `a → b`, in either order.
    pub fn mp(&mut self, a: usize, imp: usize) -> Res {
        let (x, y) = match self.f(imp) {
            Formula::Imp(l, r) if l.as_ref() == self.f(a) => (a, imp),
            _ => match self.f(a) {
                Formula::Imp(l, _) if l.as_ref() == self.f(imp) => (imp, a),
                _ => return plan(format!("modus ponens: `{}` does not match `{}`", self.f(a), self.f(imp))),
            },
        };
        let Formula::Imp(_, r) = self.f(y) else { unreachable!() };
        let r = r.as_ref().clone();
        self.push(r, Just::MP(x, y))
    }

    /// Modus ponens with each premise in turn.
    pub fn mps(&mut self, imp: usize, prems: &[usize]) -> Res {
        prems.iter().try_fold(imp, |acc, p| self.mp(*p, acc))
    }

    pub fn ug(&mut self, i: usize, v: Var) -> Res {
        let f = Formula::forall(v, self.f(i).clone());
        self.push(f, Just::UG(i))
    }

    /// Generalize over `vars`, the first becoming the outermost quantifier.
    pub fn ugs(&mut self, i: usize, vars: &[Var]) -> Res {
        vars.iter().rev().try_fold(i, |acc, v| self.ug(acc, *v))
    }

    pub fn discharge(&mut self, h: usize, i: usize) -> Res {
        let f = Formula::imp(self.f(h).clone(), self.f(i).clone());
        self.push(f, Just::Discharge(h, i))
    }

    /// The instantiation axiom `∀v A → A[v:=t]`.
    pub fn ui_axiom(&mut self, all: &Formula, t: &Term) -> Res {
        let Formula::Forall(v, a) = all else { return plan(format!("not universal: `{all}`")) };
        let inst = match a.instantiate(*v, t) {
            Ok(f) => f,
            Err(e) => return plan(e.to_string()),
        };
        self.push(Formula::imp(all.clone(), inst), Just::UI)
    }

    /// `∀v A ⊢ A[v:=t]`.
    pub fn inst(&mut self, i: usize, t: &Term) -> Res {
        let all = self.f(i).clone();
        let ax = self.ui_axiom(&all, t)?;
        self.mp(i, ax)
    }

    pub fn insts(&mut self, i: usize, ts: &[Term]) -> Res {
        ts.iter().try_fold(i, |acc, t| self.inst(acc, t))
    }

    /// Instantiate a guarded universal `∀v (G(v) → B(v))` and discharge the
    /// guard with step `g`.
    pub fn inst_mp(&mut self, i: usize, t: &Term, g: usize) -> Res {
        let j = self.inst(i, t)?;
        self.mp(g, j)
    }

    /// From step `i` and `eq: s = t`, replace `s` by `t` wherever allowed.
    pub fn rewrite(&mut self, i: usize, eq: usize) -> Res {
        let Formula::Atom(crate::syntax::Pred::Eq, st) = self.f(eq) else {
            return plan("rewrite needs an equation");
        };
        let (s, t) = (st[0].clone(), st[1].clone());
        let b = replace_term(self.f(i), &s, &t);
        self.rewrite_to(i, eq, b)
    }

    fn rewrite_to(&mut self, i: usize, eq: usize, b: Formula) -> Res {
        let a = self.f(i).clone();
        let inst = Formula::imp(self.f(eq).clone(), Formula::imp(a, b));
        let ax = self.push(inst, Just::EqSubst)?;
        let m = self.mp(eq, ax)?;
        self.mp(i, m)
    }

    /// A computation-rule equation `s = t` under the guard steps given.
    pub fn comp_eq(&mut self, s: Term, t: Term, guards: &[usize]) -> Res {
        let gs: Vec<Formula> = guards.iter().map(|g| self.f(*g).clone()).collect();
        let c = self.comp(Formula::imps(gs, Formula::eq(s, t)))?;
        self.mps(c, guards)
    }

    /// A computation-rule fact (equation, relation atom or negation) under
    /// guards.
    pub fn comp_fact(&mut self, fact: Formula, guards: &[usize]) -> Res {
        let gs: Vec<Formula> = guards.iter().map(|g| self.f(*g).clone()).collect();
        let c = self.comp(Formula::imps(gs, fact))?;
        self.mps(c, guards)
    }

    /// Turn step `i` into `target`, which differs from it only in terms that
    /// the computation rule identifies (under the given guards).
    pub fn conv(&mut self, i: usize, target: &Formula, guards: &[usize]) -> Res {
        if self.f(i) == target {
            return Ok(i);
        }
        let Some(diffs) = term_diffs(self.f(i), target) else {
            return plan(format!("conv: shapes differ:\n  {}\n  {}", self.f(i), target));
        };
        let mut cur = i;
        for (s, t) in diffs {
            let eq = self.comp_eq(s.clone(), t.clone(), guards)?;
            let Some(b) = replace_toward(self.f(cur), target, &s, &t) else {
                return plan("conv: shapes differ");
            };
            cur = self.rewrite_to(cur, eq, b)?;
        }
        if self.f(cur) != target {
            return plan(format!("conv did not reach target:\n  {}\n  {}", self.f(cur), target));
        }
        Ok(cur)
    }

    /// `(a ↔ b)` split into `a → b` and `b → a`.
    pub fn split_iff(&mut self, i: usize) -> Res<(usize, usize)> {
        let Some((a, b)) = self.f(i).as_iff() else { return plan("not a biconditional") };
        let (a, b) = (a.clone(), b.clone());
        let l = self.tc(&[i], Formula::imp(a.clone(), b.clone()))?;
        let r = self.tc(&[i], Formula::imp(b, a))?;
        Ok((l, r))
    }

    /// From `∃v A` derive `∃w A[v:=w]`.
    pub fn exists_rename(&mut self, ex: usize, w: Var) -> Res {
        let Formula::Exists(v, a) = self.f(ex).clone() else { return plan("not existential") };
        let aw = match a.rename_free(v, w) {
            Ok(f) => f,
            Err(e) => return plan(e.to_string()),
        };
        let all_w = Formula::forall(w, Formula::not(aw.clone()));
        let all_v = Formula::forall(v, Formula::not((*a).clone()));
        let h = self.hyp(all_w.clone())?;
        let i = self.inst(h, &Term::Var(v))?;
        let g = self.ug(i, v)?;
        let d = self.discharge(h, g)?;
        let def_v = self.push(Formula::iff(Formula::Exists(v, a), Formula::not(all_v)), Just::ExDef)?;
        let ex_w = Formula::exists(w, aw);
        let def_w = self.push(Formula::iff(ex_w.clone(), Formula::not(all_w)), Just::ExDef)?;
        self.tc(&[ex, d, def_v, def_w], ex_w)
    }

    /// From `A[v:=t]` (step `i`) derive `∃v A`.
    pub fn exists_intro(&mut self, i: usize, v: Var, a: &Formula, t: &Term) -> Res {
        let ex = Formula::exists(v, a.clone());
        let na = Formula::forall(v, Formula::not(a.clone()));
        let def = self.push(Formula::iff(ex.clone(), Formula::not(na.clone())), Just::ExDef)?;
        let ui = self.ui_axiom(&na, t)?;
        self.tc(&[i, ui, def], ex)
    }

    /// Existential elimination: `ex` proves `∃v A`, `h` is the hypothesis `A`
    /// and `concl` a consequence not mentioning `v` freely.
    /// The hypothesis may use a fresh variable in place of the bound one.
    pub fn exists_elim(&mut self, ex: usize, h: usize, concl: usize) -> Res {
        let Formula::Exists(v, a) = self.f(ex).clone() else { return plan("not existential") };
        if self.f(h) != a.as_ref() {
            let hf = self.f(h).clone();
            let fresh: Vec<Var> = hf.free_vars().difference(&a.free_vars()).copied().collect();
            let [w] = fresh.as_slice() else { return plan("existential witness does not match") };
            if a.rename_free(v, *w).ok().as_ref() != Some(&hf) {
                return plan("existential witness does not match");
            }
            let ex = self.exists_rename(ex, *w)?;
            return self.exists_elim(ex, h, concl);
        }
        let c = self.f(concl).clone();
        let d = self.discharge(h, concl)?;
        let contra = self.tc(&[d], Formula::imp(Formula::not(c.clone()), Formula::not((*a).clone())))?;
        let g = self.ug(contra, v)?;
        let all_not = Formula::forall(v, Formula::not((*a).clone()));
        let q2 = Formula::imp(self.f(g).clone(), Formula::imp(Formula::not(c.clone()), all_not.clone()));
        let q2 = self.push(q2, Just::Q2)?;
        let m = self.mp(g, q2)?;
        let def = self.push(Formula::iff(Formula::Exists(v, a), Formula::not(all_not)), Just::ExDef)?;
        self.tc(&[ex, m, def], c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;
    use crate::systems::{builtin_systems, BASE};

    #[test]
    fn elementary_steps() {
        let reg = builtin_systems();
        let db = TheoremDb::new();
        let mut b = Builder::new(&reg, &db, BASE).unwrap();
        let pa3 = b.ax("PA3").unwrap();
        let i = b.inst(pa3, &Term::zero()).unwrap();
        assert_eq!(b.f(i), &parse_formula("0 + 0 = 0").unwrap());
        let h = b.hyp(parse_formula("exists v1 v1 = S(0)").unwrap()).unwrap();
        let a = b.hyp(parse_formula("v1 = S(0)").unwrap()).unwrap();
        let e = b.exists_intro(a, Var(2), &parse_formula("v2 = S(0)").unwrap(), &Term::var(1)).unwrap();
        let out = b.exists_elim(h, a, e).unwrap();
        assert_eq!(b.deps_of(out), vec![h]);
        let c = b.conv(i, &parse_formula("0 + 0 = @ev(<<0>>)").unwrap(), &[]).unwrap();
        assert_eq!(b.f(c), &parse_formula("0 + 0 = @ev(<<0>>)").unwrap());
    }
}
