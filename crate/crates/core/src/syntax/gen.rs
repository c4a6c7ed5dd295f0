//! Random formulas for sampling and property tests.

use super::{numeral, DotFn, Formula, Func, Pred, Term, Var};
use rand::Rng;

/// A term over `vars` of nesting depth at most `depth`.
pub fn random_term(rng: &mut impl Rng, depth: usize, vars: &[Var]) -> Term {
    if depth == 0 || rng.gen_bool(0.4) {
        return match rng.gen_range(0..3) {
            0 if !vars.is_empty() => Term::Var(vars[rng.gen_range(0..vars.len())]),
            1 => numeral(rng.gen_range(0u32..3)),
            _ => Term::zero(),
        };
    }
    match rng.gen_range(0..6) {
        0 => Term::succ(random_term(rng, depth - 1, vars)),
        4 => Term::app(Func::SmallU, vec![random_term(rng, depth - 1, vars)]).expect("unary"),
        5 => Term::dot2(DotFn::Imp, random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars)),
        1 => Term::plus(random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars)),
        2 => Term::times(random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars)),
        _ => Term::dot1(DotFn::Neg, random_term(rng, depth - 1, vars)),
    }
}

fn atom(rng: &mut impl Rng, vars: &[Var]) -> Formula {
    let t = |rng: &mut _| random_term(rng, 2, vars);
    match rng.gen_range(0..8) {
        0 => Formula::eq(t(rng), t(rng)),
        1 => Formula::pred1(Pred::U, t(rng)),
        2 => Formula::t(t(rng)),
        3 => Formula::k2(t(rng), t(rng)),
        4 => Formula::k1(t(rng)),
        5 => Formula::ag(t(rng)),
        6 => Formula::pr(super::super::systems::BASE, t(rng)),
        _ => Formula::t(Term::dot1(DotFn::Neg, t(rng))),
    }
}

fn formula(rng: &mut impl Rng, depth: usize, vars: &mut Vec<Var>, next: &mut u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return atom(rng, vars);
    }
    let d = depth - 1;
    match rng.gen_range(0..6) {
        0 => Formula::not(formula(rng, d, vars, next)),
        1 => Formula::imp(formula(rng, d, vars, next), formula(rng, d, vars, next)),
        2 => Formula::and(formula(rng, d, vars, next), formula(rng, d, vars, next)),
        3 => Formula::or(formula(rng, d, vars, next), formula(rng, d, vars, next)),
        k => {
            let v = Var(*next);
            *next += 1;
            vars.push(v);
            let body = formula(rng, d, vars, next);
            vars.pop();
            if k == 4 {
                Formula::forall(v, body)
            } else {
                Formula::exists(v, body)
            }
        }
    }
}

/// A formula of depth at most `depth` with free variables among `free`.
pub fn random_formula(rng: &mut impl Rng, depth: usize, free: &[Var]) -> Formula {
    let mut vars = free.to_vec();
    let mut next = free.iter().map(|v| v.0 + 1).max().unwrap_or(0);
    formula(rng, depth, &mut vars, &mut next)
}

/// A formula of depth at most `depth` whose only free variable is `y`.
pub fn random_unary(rng: &mut impl Rng, depth: usize, y: Var) -> Formula {
    let mut vars = vec![y];
    for _ in 0..32 {
        let f = formula(rng, depth, &mut vars, &mut (y.0 + 1));
        if f.is_free(y) {
            return f;
        }
    }
    Formula::t(Term::Var(y))
}

/// Connective and quantifier nesting depth.
pub fn depth(f: &Formula) -> usize {
    match f {
        Formula::Atom(..) => 0,
        Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + depth(a),
        Formula::Imp(a, b) | Formula::And(a, b) | Formula::Or(a, b) => 1 + depth(a).max(depth(b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn unary_and_shallow() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let f = random_unary(&mut rng, 4, Var(0));
            assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), [Var(0)]);
            assert!(depth(&f) <= 4, "{f}");
        }
    }
}
