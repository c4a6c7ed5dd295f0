//! Derived proof steps shared by the scripted derivations.

use crate::builder::{BuildError, Builder, Res};
use crate::coding::{decode_formula, eval_pure, quote};
use crate::kernel::Just;
use crate::syntax::{DotFn, Formula, Func, Pred, Term, Var};

fn plan<T>(msg: impl Into<String>) -> Res<T> {
    Err(BuildError::Plan(msg.into()))
}

/// `∀v0 (Ag(v0) → K2(v0, c))`.
pub fn everyone_knows(c: Term) -> Formula {
    let a = Var(0);
    Formula::forall_in(a, Formula::ag(Term::Var(a)), Formula::k2(Term::Var(a), c))
}

fn is_guard(f: &Formula) -> bool {
    matches!(f, Formula::Atom(Pred::Dot(_), a) if a.len() == 1)
}

/// `a → c` split into the codes of its parts, syntactically or by evaluation.
pub fn split_imp_code(t: &Term) -> Option<(Term, Term)> {
    if let Term::App(Func::Dot(DotFn::Imp), a) = t {
        return Some((a[0].clone(), a[1].clone()));
    }
    match decode_formula(&eval_pure(t)?)? {
        Formula::Imp(a, c) => Some((quote(&a), quote(&c))),
        _ => None,
    }
}

pub trait Kit {
    fn guards_in(&self, known: &[usize]) -> Vec<usize>;
    fn elim(&mut self, i: usize, known: &[usize]) -> Res;
    fn use_ax(&mut self, name: &str, ts: &[Term], known: &[usize]) -> Res;
    fn use_step(&mut self, i: usize, ts: &[Term], known: &[usize]) -> Res;
    fn nec_k(&mut self, i: usize) -> Res;
    fn know_mp(&mut self, ag: usize, ka: usize, kimp: usize, known: &[usize]) -> Res;
    fn know_taut(&mut self, ag: usize, prems: &[usize], concl: &Formula, known: &[usize]) -> Res;
}

impl Kit for Builder<'_> {
    fn guards_in(&self, known: &[usize]) -> Vec<usize> {
        known.iter().copied().filter(|k| is_guard(self.f(*k))).collect()
    }

    /// Discharge leading antecedents of step `i` that are among `known` or
    /// follow by computation from the guards in `known`.
    fn elim(&mut self, mut i: usize, known: &[usize]) -> Res {
        let guards = self.guards_in(known);
        loop {
            let Formula::Imp(g, _) = self.f(i) else { return Ok(i) };
            let g = g.as_ref().clone();
            if let Some(k) = known.iter().find(|k| self.f(**k) == &g) {
                i = self.mp(*k, i)?;
            } else if matches!(g, Formula::Atom(Pred::Dot(_), _)) {
                match self.comp_fact(g, &guards) {
                    Ok(k) => i = self.mp(k, i)?,
                    Err(_) => return Ok(i),
                }
            } else {
                return Ok(i);
            }
        }
    }

    fn use_ax(&mut self, name: &str, ts: &[Term], known: &[usize]) -> Res {
        let a = self.ax(name)?;
        self.use_step(a, ts, known)
    }

    /// Instantiate step `i` with `ts` in turn, discharging guards as they
    /// surface.
    fn use_step(&mut self, i: usize, ts: &[Term], known: &[usize]) -> Res {
        let mut cur = self.elim(i, known)?;
        for t in ts {
            cur = self.inst(cur, t)?;
            cur = self.elim(cur, known)?;
        }
        Ok(cur)
    }

    fn nec_k(&mut self, i: usize) -> Res {
        let f = everyone_knows(quote(self.f(i)));
        self.push(f, Just::NecK(i))
    }

    /// From `K2(α, a)` and `K2(α, b)` with `b` computing `imp(a, c)`, derive
    /// `K2(α, c)`; `ag` proves `Ag(α)`.
    fn know_mp(&mut self, ag: usize, ka: usize, kimp: usize, known: &[usize]) -> Res {
        let (Formula::Atom(Pred::K2, x), Formula::Atom(Pred::K2, y)) = (self.f(ka).clone(), self.f(kimp).clone())
        else {
            return plan("know_mp needs knowledge atoms");
        };
        let Some((_, c)) = split_imp_code(&y[1]) else { return plan(format!("not an implication code: {}", y[1])) };
        let (alpha, a) = (x[0].clone(), x[1].clone());
        let mut ks = known.to_vec();
        ks.push(ag);
        let u = self.use_ax("UK", &[alpha.clone(), a.clone(), c.clone()], &ks)?;
        let want = Formula::k2(alpha.clone(), Term::dot2(DotFn::Imp, a, c.clone()));
        let guards = self.guards_in(&ks);
        let ki = self.conv(kimp, &want, &guards)?;
        self.tc(&[ka, ki, u], Formula::k2(alpha, c))
    }

    /// Agent `α` knows `concl` when it knows each premise and
    /// `p1 → … → pn → concl` is a closed tautology.
    fn know_taut(&mut self, ag: usize, prems: &[usize], concl: &Formula, known: &[usize]) -> Res {
        let mut ps = Vec::new();
        let mut alpha = None;
        for p in prems {
            let Formula::Atom(Pred::K2, x) = self.f(*p) else { return plan("know_taut needs knowledge atoms") };
            let Some(phi) = eval_pure(&x[1]).and_then(|c| decode_formula(&c)) else {
                return plan("know_taut needs closed codes");
            };
            alpha = Some(x[0].clone());
            ps.push(phi);
        }
        if alpha.is_none() {
            return plan("know_taut needs premises");
        }
        let t = self.taut(Formula::imps(ps, concl.clone()))?;
        let mut cur = self.knows_thm(ag, t, known)?;
        for p in prems {
            cur = self.know_mp(ag, *p, cur, known)?;
        }
        Ok(cur)
    }
}

/// The code `χ` takes when each free variable is replaced by the numeral of
/// its value.
pub fn sigma_chain(chi: &Formula) -> Term {
    chi.free_vars().into_iter().fold(quote(chi), |acc, y| {
        Term::dot(DotFn::Sbt, vec![acc, Term::dot1(DotFn::Gq, Term::Var(y)), crate::coding::quote_var(y)])
    })
}

fn pr_parts(f: &Formula) -> Option<(String, Term)> {
    match f {
        Formula::Atom(Pred::Pr(s), a) => Some((s.to_string(), a[0].clone())),
        _ => None,
    }
}

pub trait PrKit {
    fn d1(&mut self, sys: &str, i: usize) -> Res;
    fn d2(&mut self, i: usize) -> Res;
    fn internal_ui(&mut self, i: usize, all: &Formula, ts: &[Term]) -> Res;
    fn pr_sigma(&mut self, sys: &str, chi: &Formula) -> Res;
    fn pr_taut(&mut self, sys: &str, guards: &[usize], tau: Term) -> Res;
    fn reflect(&mut self, ag: usize, pr: usize, known: &[usize]) -> Res;
    fn knows_thm(&mut self, ag: usize, thm: usize, known: &[usize]) -> Res;
    fn sym(&mut self, eq: usize) -> Res;
    fn loeb(&mut self, i: usize) -> Res;
}

impl PrKit for Builder<'_> {
    fn d1(&mut self, sys: &str, i: usize) -> Res {
        let f = Formula::pr(sys, quote(self.f(i)));
        self.push(f, Just::D1(sys.into(), Some(i)))
    }

    /// From `Pr_S(imp(a, b))` derive `Pr_S(a) → Pr_S(b)`.
    fn d2(&mut self, i: usize) -> Res {
        let Some((s, x)) = pr_parts(self.f(i)) else { return plan("d2 needs a provability atom") };
        let Some((a, b)) = split_imp_code(&x) else { return plan("d2 needs an implication code") };
        let ax = Formula::imp(self.f(i).clone(), Formula::imp(Formula::pr(&s, a), Formula::pr(&s, b)));
        let ax = self.push(ax, Just::D2)?;
        self.mp(i, ax)
    }

    /// Instantiate the outer quantifiers of the formula `all`, whose code
    /// step `i` proves provable, at `ts` in turn.
    fn internal_ui(&mut self, mut i: usize, all: &Formula, ts: &[Term]) -> Res {
        let Some((s, _)) = pr_parts(self.f(i)) else { return plan("internal instantiation needs Pr") };
        let mut cur = all.clone();
        let mut subs: Vec<(Term, Var)> = Vec::new();
        for t in ts {
            let Formula::Forall(v, body) = cur else { return plan("internal instantiation needs ∀") };
            subs.push((t.clone(), v));
            let code = subs.iter().fold(quote(&body), |acc, (t, v)| {
                Term::dot(DotFn::Sbt, vec![acc, Term::dot1(DotFn::Gq, t.clone()), crate::coding::quote_var(*v)])
            });
            let ax = Formula::imp(self.f(i).clone(), Formula::pr(&s, code));
            let ax = self.push(ax, Just::InternalUI)?;
            i = self.mp(i, ax)?;
            cur = *body;
        }
        Ok(i)
    }

    fn pr_sigma(&mut self, sys: &str, chi: &Formula) -> Res {
        self.push(Formula::imp(chi.clone(), Formula::pr(sys, sigma_chain(chi))), Just::PrSigma)
    }

    /// `Pr_S(τ)` for a tautology `τ` over the codes guarded by `guards`.
    fn pr_taut(&mut self, sys: &str, guards: &[usize], tau: Term) -> Res {
        let gs: Vec<Formula> = guards.iter().map(|g| self.f(*g).clone()).collect();
        let t = self.push(Formula::imps(gs, Formula::pr(sys, tau)), Just::PrTaut)?;
        self.mps(t, guards)
    }

    /// From `Pr_S(c)` derive `K2(α, c)` by the reflection axiom `R_S`.
    fn reflect(&mut self, ag: usize, pr: usize, known: &[usize]) -> Res {
        let Some((s, c)) = pr_parts(self.f(pr)) else { return plan("reflect needs Pr") };
        let Formula::Atom(Pred::Ag, a) = self.f(ag) else { return plan("reflect needs Ag") };
        let alpha = a[0].clone();
        let mut ks = known.to_vec();
        ks.extend([ag, pr]);
        let r = self.use_ax(&format!("R_{s}"), &[alpha.clone(), c.clone()], &ks)?;
        if self.f(r) != &Formula::k2(alpha, c) {
            return plan(format!("reflection did not close: {}", self.f(r)));
        }
        Ok(r)
    }

    /// `K2(α, ⌜φ⌝)` for a sentence `φ` proved at step `thm`.
    fn knows_thm(&mut self, ag: usize, thm: usize, known: &[usize]) -> Res {
        let Formula::Atom(Pred::Ag, a) = self.f(ag) else { return plan("knows_thm needs Ag") };
        let alpha = a[0].clone();
        if self.system().rules.contains(&crate::systems::Rule::NecK) {
            let n = self.nec_k(thm)?;
            self.inst_mp(n, &alpha, ag)
        } else {
            let sys = self.system().name.clone();
            let pr = self.d1(&sys, thm)?;
            self.reflect(ag, pr, known)
        }
    }

    fn sym(&mut self, eq: usize) -> Res {
        let Formula::Atom(Pred::Eq, st) = self.f(eq).clone() else { return plan("sym needs an equation") };
        let (s, t) = (st[0].clone(), st[1].clone());
        let r = self.refl(s.clone())?;
        let ax = Formula::imp(Formula::eq(s.clone(), t.clone()), Formula::imp(self.f(r).clone(), Formula::eq(t, s)));
        let ax = self.push(ax, Just::EqSubst)?;
        let m = self.mp(eq, ax)?;
        self.mp(r, m)
    }

    fn loeb(&mut self, i: usize) -> Res {
        let Formula::Imp(_, a) = self.f(i) else { return plan("Löb needs an implication") };
        let a = a.as_ref().clone();
        self.push(a, Just::Loeb(i))
    }
}
