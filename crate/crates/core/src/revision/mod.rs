//! Revision semantics for multi-agent knowledge on finite fragments.

pub mod doc;
pub mod experiment;
pub mod frame;
pub mod instances;
pub mod sat;

pub use frame::{AgencyFrame, FrameError, Property};
pub use sat::{Domain, EmptyMeet, Fragment, SemError, Semantics, Tv, Valuation, WorldVal};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{gc_formula, quote};
    use crate::diagonal::fixed_point;
    use crate::kernel::TheoremDb;
    use crate::syntax::{parse_formula, Formula, Term, Var};
    use crate::systems::builtin_systems;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn one_world() -> AgencyFrame {
        let mut fr = AgencyFrame::new(vec![0], 1).unwrap();
        fr.add_edge(0, 0, 0).unwrap();
        fr
    }

    #[test]
    fn atoms_and_knowledge() {
        let (reg, db, fr) = (builtin_systems(), TheoremDb::new(), one_world());
        let sem = Semantics::new(&fr, &reg, &db, Domain::default());
        let empty = Valuation::uniform(1, WorldVal::empty());
        assert_eq!(sem.sat3(&empty, 0, &f("0 = 0")).unwrap(), Tv::True);
        assert_eq!(sem.sat3(&empty, 0, &f("T(<<0 = 0>>)")).unwrap(), Tv::False);
        let one = Valuation::uniform(1, WorldVal::explicit([gc_formula(&f("0 = 0")).0]));
        assert_eq!(sem.sat3(&one, 0, &f("K2(0, <<0 = 0>>)")).unwrap(), Tv::True);
        assert_eq!(sem.sat3(&one, 0, &f("K2(1, <<0 = 0>>)")).unwrap(), Tv::False);
        assert_eq!(sem.sat3(&one, 0, &f("K1(<<0 = 0>>)")).unwrap(), Tv::True);
        assert_eq!(sem.sat3(&one, 0, &f("forall v0 (Ag(v0) -> K2(v0, <<0 = 0>>))")).unwrap(), Tv::True);
        assert_eq!(sem.sat3(&one, 0, &f("forall v0 (v0 + 0 = v0)")).unwrap(), Tv::Unknown);
        assert_eq!(sem.sat3(&one, 0, &f("forall v0 (v0 = 0)")).unwrap(), Tv::False);
        assert_eq!(sem.sat3(&one, 0, &f("exists v0 Ag(v0)")).unwrap(), Tv::True);
        assert!(matches!(sem.sat3(&one, 0, &f("v0 = 0")), Err(SemError::Open(_))));
    }

    #[test]
    fn two_revision_steps() {
        let (reg, db, fr) = (builtin_systems(), TheoremDb::new(), one_world());
        let mut sem = Semantics::new(&fr, &reg, &db, Domain::default());
        sem.close([f("0 = 0"), f("T(<<0 = 0>>)")], 2, 100).unwrap();
        let run = sem.iterate(Valuation::uniform(1, WorldVal::empty()), 2).unwrap();
        let (a, b) = (gc_formula(&f("0 = 0")).0, gc_formula(&f("T(<<0 = 0>>)")).0);
        assert!(run[1].contains(0, &a) && !run[1].contains(0, &b));
        assert!(run[2].contains(0, &a) && run[2].contains(0, &b));
    }

    #[test]
    fn liar_and_truth_teller() {
        let (reg, db, fr) = (builtin_systems(), TheoremDb::new(), one_world());
        let y = Var(0);
        let liar = fixed_point(&Formula::not(Formula::t(Term::Var(y))), y).unwrap().theta;
        let teller = fixed_point(&Formula::t(Term::Var(y)), y).unwrap().theta;
        let mut sem = Semantics::new(&fr, &reg, &db, Domain::default());
        sem.close([liar.clone(), teller.clone()], 3, 100).unwrap();
        let (l, t) = (gc_formula(&liar).0, gc_formula(&teller).0);
        let run = sem.iterate(Valuation::uniform(1, WorldVal::empty()), 6).unwrap();
        let member: Vec<bool> = run.iter().map(|v| v.contains(0, &l)).collect();
        assert_eq!(member, [false, true, false, true, false, true, false]);
        assert!(run.iter().all(|v| !v.contains(0, &t)));
        let seeded = sem.iterate(Valuation::uniform(1, WorldVal::explicit([t.clone()])), 6).unwrap();
        assert!(seeded.iter().all(|v| v.contains(0, &t)));
        let _ = quote(&liar);
    }
}
