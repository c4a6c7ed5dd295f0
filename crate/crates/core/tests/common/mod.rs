use knowtruth::coding::{
    decode, eval_closed, eval_dot_rel, gc, gc_formula, gc_term, quote, quote_term, quote_var, var_code,
};
use knowtruth::syntax::gen::{random_formula, random_term};
use knowtruth::syntax::{eval_closed_term, numeral, DotFn, DotRel, Formula, Func, Pred, Syntax, Term, Var};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Random terms and formulas with up to two free variables.
pub fn pool(n: usize, seed: u64) -> Vec<Syntax> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let k = rng.gen_range(0..3);
            let free: Vec<Var> = (0..k).map(|j| Var(j * 2)).collect();
            if i % 3 == 0 {
                Syntax::Term(random_term(&mut rng, 3, &free))
            } else {
                Syntax::Formula(random_formula(&mut rng, 4, &free))
            }
        })
        .collect()
}

struct Report(Vec<String>);

impl Report {
    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.0.push(format!("{what}: {got:?} != {want:?}"));
        }
    }
}

fn dot_value(d: DotFn, args: Vec<Term>) -> Option<BigUint> {
    eval_closed(&Term::dot(d, args)).ok()
}

/// Failures of `decode(gc(x)) = x`, code injectivity and the commutation of
/// every dotted symbol with its syntactic operation.
pub fn coding_failures(items: &[Syntax]) -> Vec<String> {
    let mut r = Report(Vec::new());
    let mut seen: HashMap<BigUint, &Syntax> = HashMap::new();
    for x in items {
        let c = gc(x);
        r.eq("decode after gc", decode(&c).ok().as_ref(), Some(x));
        if let Some(prev) = seen.insert(c.0.clone(), x) {
            r.eq("shared code", prev, x);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let formulas: Vec<&Formula> =
        items.iter().filter_map(|x| if let Syntax::Formula(f) = x { Some(f) } else { None }).collect();
    let terms: Vec<&Term> = items.iter().filter_map(|x| if let Syntax::Term(t) = x { Some(t) } else { None }).collect();
    let closed: Vec<Term> = (0..50).map(|_| random_term(&mut rng, 3, &[])).collect();
    let gf = |f: &Formula| Some(gc_formula(f).0);
    let gt = |t: &Term| Some(gc_term(t).0);
    for (i, a) in formulas.iter().enumerate() {
        let b = formulas[(i * 7 + 3) % formulas.len()];
        let (qa, qb) = (quote(a), quote(b));
        r.eq("neg", dot_value(DotFn::Neg, vec![qa.clone()]), gf(&Formula::not((*a).clone())));
        r.eq("imp", dot_value(DotFn::Imp, vec![qa.clone(), qb.clone()]), gf(&Formula::imp((*a).clone(), b.clone())));
        r.eq("and", dot_value(DotFn::And, vec![qa.clone(), qb.clone()]), gf(&Formula::and((*a).clone(), b.clone())));
        r.eq("or", dot_value(DotFn::Or, vec![qa.clone(), qb.clone()]), gf(&Formula::or((*a).clone(), b.clone())));
        let v = Var(i as u32 % 4);
        r.eq("all", dot_value(DotFn::Forall, vec![quote_var(v), qa.clone()]), gf(&Formula::forall(v, (*a).clone())));
        r.eq("ex", dot_value(DotFn::Exists, vec![quote_var(v), qa.clone()]), gf(&Formula::exists(v, (*a).clone())));
        let t = &closed[i % closed.len()];
        r.eq(
            "sbt",
            dot_value(DotFn::Sbt, vec![qa.clone(), quote_term(t), quote_var(v)]),
            a.instantiate(v, t).ok().and_then(|f| gf(&f)),
        );
        let chained = Formula::and((*a).clone(), Formula::imp((*a).clone(), b.clone()));
        let want = if a.is_sentence() && b.is_sentence() { gf(b) } else { gf(&chained) };
        r.eq("mpc", dot_value(DotFn::Mpc, vec![quote(&chained)]), want);
        r.eq("L0", eval_dot_rel(DotRel::L0, &[gc_formula(a).0]), a.is_sentence());
        let single = a.free_vars().len() == 1 && a.is_free(v);
        r.eq("L1", eval_dot_rel(DotRel::L1, &[var_code(v), gc_formula(a).0]), single);
        r.eq("Term0 on a formula", eval_dot_rel(DotRel::Term0, &[gc_formula(a).0]), false);
    }
    for (i, s) in terms.iter().enumerate() {
        let t = terms[(i * 5 + 1) % terms.len()];
        let (qs, qt) = (quote_term(s), quote_term(t));
        r.eq("eq", dot_value(DotFn::Eq, vec![qs.clone(), qt.clone()]), gf(&Formula::eq((*s).clone(), t.clone())));
        r.eq("T", dot_value(DotFn::T, vec![qs.clone()]), gf(&Formula::t((*s).clone())));
        r.eq("K1", dot_value(DotFn::K1, vec![qs.clone()]), gf(&Formula::k1((*s).clone())));
        r.eq("K2", dot_value(DotFn::K2, vec![qs.clone(), qt.clone()]), gf(&Formula::k2((*s).clone(), t.clone())));
        r.eq("Ag", dot_value(DotFn::Ag, vec![qs.clone()]), gf(&Formula::ag((*s).clone())));
        r.eq("U", dot_value(DotFn::U, vec![qs.clone()]), gf(&Formula::pred1(Pred::U, (*s).clone())));
        r.eq("S", dot_value(DotFn::Succ, vec![qs.clone()]), gt(&Term::succ((*s).clone())));
        r.eq("plus", dot_value(DotFn::Plus, vec![qs.clone(), qt.clone()]), gt(&Term::plus((*s).clone(), t.clone())));
        r.eq("times", dot_value(DotFn::Times, vec![qs.clone(), qt.clone()]), gt(&Term::times((*s).clone(), t.clone())));
        let u = Term::app(Func::SmallU, vec![(*s).clone()]).expect("unary");
        r.eq("u", dot_value(DotFn::SmallU, vec![qs.clone()]), gt(&u));
        r.eq("Term0", eval_dot_rel(DotRel::Term0, &[gc_term(s).0]), s.is_closed());
        r.eq("TermPA0", eval_dot_rel(DotRel::TermPa0, &[gc_term(s).0]), s.is_closed() && s.is_arithmetic());
        r.eq("Var", eval_dot_rel(DotRel::Var, &[gc_term(s).0]), matches!(s, Term::Var(_)));
        r.eq("L0 on a term", eval_dot_rel(DotRel::L0, &[gc_term(s).0]), false);
        let n = BigUint::from(i);
        r.eq("gq", dot_value(DotFn::Gq, vec![numeral(n.clone())]), gt(&numeral(n.clone())));
        r.eq("num", dot_value(DotFn::Num, vec![numeral(n.clone())]), gt(&numeral(n)));
    }
    for t in closed.iter().filter(|t| t.is_arithmetic()) {
        r.eq("ev", dot_value(DotFn::Ev, vec![quote_term(t)]), eval_closed_term(t).ok());
    }
    r.0
}
