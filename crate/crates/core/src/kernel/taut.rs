//! Propositional tautology checking over the atoms of a formula.

use crate::syntax::Formula;
use std::collections::HashMap;

/// Propositional skeleton: atoms and quantified subformulas become letters.
#[derive(Debug, Clone)]
pub enum Prop {
    Letter(usize),
    Not(Box<Prop>),
    Imp(Box<Prop>, Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
}

/// Letters keyed by structural equality of the abstracted subformula.
#[derive(Default)]
pub struct Abstraction<'a> {
    letters: HashMap<&'a Formula, usize>,
}

impl<'a> Abstraction<'a> {
    pub fn skeleton(&mut self, f: &'a Formula) -> Prop {
        match f {
            Formula::Not(a) => Prop::Not(Box::new(self.skeleton(a))),
            Formula::Imp(a, b) => Prop::Imp(Box::new(self.skeleton(a)), Box::new(self.skeleton(b))),
            Formula::And(a, b) => Prop::And(Box::new(self.skeleton(a)), Box::new(self.skeleton(b))),
            Formula::Or(a, b) => Prop::Or(Box::new(self.skeleton(a)), Box::new(self.skeleton(b))),
            _ => {
                let n = self.letters.len();
                Prop::Letter(*self.letters.entry(f).or_insert(n))
            }
        }
    }

    pub fn count(&self) -> usize {
        self.letters.len()
    }
}

fn eval(p: &Prop, val: &[Option<bool>]) -> Option<bool> {
    match p {
        Prop::Letter(i) => val[*i],
        Prop::Not(a) => eval(a, val).map(|x| !x),
        Prop::Imp(a, b) => match (eval(a, val), eval(b, val)) {
            (Some(false), _) | (_, Some(true)) => Some(true),
            (Some(true), Some(false)) => Some(false),
            _ => None,
        },
        Prop::And(a, b) => match (eval(a, val), eval(b, val)) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        },
        Prop::Or(a, b) => match (eval(a, val), eval(b, val)) {
            (Some(true), _) | (_, Some(true)) => Some(true),
            (Some(false), Some(false)) => Some(false),
            _ => None,
        },
    }
}

fn first_unset(p: &Prop, val: &[Option<bool>]) -> Option<usize> {
    match p {
        Prop::Letter(i) => val[*i].is_none().then_some(*i),
        Prop::Not(a) => first_unset(a, val),
        Prop::Imp(a, b) | Prop::And(a, b) | Prop::Or(a, b) => first_unset(a, val).or_else(|| first_unset(b, val)),
    }
}

fn valid(p: &Prop, val: &mut Vec<Option<bool>>) -> bool {
    match eval(p, val) {
        Some(b) => b,
        None => {
            let i = first_unset(p, val).expect("undetermined value has an unset letter");
            for b in [false, true] {
                val[i] = Some(b);
                if !valid(p, val) {
                    val[i] = None;
                    return false;
                }
            }
            val[i] = None;
            true
        }
    }
}

/// Whether the skeleton over `letters` letters is true under every valuation.
pub fn prop_valid(p: &Prop, letters: usize) -> bool {
    valid(p, &mut vec![None; letters])
}

pub fn is_tautology(f: &Formula) -> bool {
    let mut abs = Abstraction::default();
    let p = abs.skeleton(f);
    prop_valid(&p, abs.count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn taut(s: &str) -> bool {
        is_tautology(&parse_formula(s).unwrap())
    }

    #[test]
    fn classics() {
        assert!(taut("T(0) -> T(0)"));
        assert!(taut("(T(0) -> K1(0)) -> (~K1(0) -> ~T(0))"));
        assert!(taut("forall v0 T(v0) \\/ ~forall v0 T(v0)"));
        assert!(!taut("T(0) -> T(S(0))"));
        assert!(!taut("forall v0 T(v0) -> T(0)"));
        assert!(taut("(T(0) <-> K1(0)) /\\ T(0) -> K1(0)"));
    }
}
