//! Auxiliary relation symbols interpreted through `U` and tuple codes.

use crate::syntax::{numeral, Formula, Pred, Term, Var};
use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuxError {
    #[error("auxiliary relation of arity {expected} applied to {got} argument(s)")]
    Arity { expected: usize, got: usize },
}

/// Cantor pairing `((a+b)(a+b+1))/2 + b`.
pub fn pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

/// Right-nested tuple code `⟨x1, ⟨x2, …⟩⟩`; a singleton codes as itself.
pub fn tuple_code(xs: &[BigUint]) -> BigUint {
    let (last, init) = xs.split_last().expect("non-empty tuple");
    init.iter().rev().fold(last.clone(), |acc, x| pair(x, &acc))
}

/// `2·y = (a+z)·S(a+z) + 2·z`, i.e. `y = pair(a, z)`.
fn pair_eq(y: Term, a: Term, z: Term) -> Formula {
    let two = numeral(2u32);
    let s = Term::plus(a, z.clone());
    Formula::eq(Term::times(two.clone(), y), Term::plus(Term::times(s.clone(), Term::succ(s)), Term::times(two, z)))
}

/// Formula stating that `y` codes the tuple `xs`, using fresh variables from
/// `next` upward for the intermediate pairs.
fn tuple_formula(y: Term, xs: &[Term], next: u32) -> Formula {
    match xs {
        [] => unreachable!(),
        [x] => Formula::eq(y, x.clone()),
        [x, rest @ ..] => {
            let z = Var(next);
            Formula::exists(
                z,
                Formula::and(pair_eq(y, x.clone(), Term::Var(z)), tuple_formula(Term::Var(z), rest, next + 1)),
            )
        }
    }
}

/// The `k`-th `n`-ary auxiliary relation applied to `args`:
/// `∃y (U(y) ∧ y codes ⟨n, k, args…⟩)`.
pub fn encode_aux_relation(n: usize, k: u64, args: &[BigUint]) -> Result<Formula, AuxError> {
    if args.len() != n {
        return Err(AuxError::Arity { expected: n, got: args.len() });
    }
    let mut xs = vec![numeral(n as u64), numeral(k)];
    xs.extend(args.iter().cloned().map(numeral));
    let y = Var(0);
    Ok(Formula::exists(y, Formula::and(Formula::pred1(Pred::U, Term::Var(y)), tuple_formula(Term::Var(y), &xs, 1))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_is_cantor() {
        let b = |n: u32| BigUint::from(n);
        assert_eq!(pair(&b(0), &b(0)), b(0));
        assert_eq!(pair(&b(1), &b(0)), b(1));
        assert_eq!(pair(&b(0), &b(1)), b(2));
        assert_eq!(pair(&b(0), &b(3)), b(9));
        assert_eq!(tuple_code(&[b(1), b(0), b(3)]), b(64));
    }

    #[test]
    fn arity_checked() {
        assert!(encode_aux_relation(2, 1, &[BigUint::from(3u32)]).is_err());
        let f = encode_aux_relation(1, 0, &[BigUint::from(3u32)]).unwrap();
        assert!(f.is_sentence());
    }
}
