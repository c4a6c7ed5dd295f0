use knowtruth::coding::quote;
use knowtruth::kernel::TheoremDb;
use knowtruth::revision::experiment::random_valuation;
use knowtruth::revision::instances::Params;
use knowtruth::revision::{AgencyFrame, Domain, Property, Semantics, Tv};
use knowtruth::syntax::{parse_term, Formula};
use knowtruth::systems::builtin_systems;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn frame(seed: u64) -> AgencyFrame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    AgencyFrame::random(&mut rng, vec![0, 1], 3, 0.4, &[])
}

fn sentences() -> Vec<Formula> {
    let mut out = Params::standard(&[0, 1], &[]).sentences;
    let more: Vec<Formula> = out.iter().map(|f| Formula::k1(quote(f))).collect();
    out.extend(more);
    out.push(knowtruth::syntax::parse_formula("forall v0 (U(v0) -> T(<<U(0)>>))").unwrap());
    out.push(knowtruth::syntax::parse_formula("exists v0 (u(v0) = S(0))").unwrap());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn larger_ranges_only_resolve_unknowns(seed in any::<u64>()) {
        let (reg, db, fr) = (builtin_systems(), TheoremDb::new(), frame(seed));
        let small = Domain { cutoff: 1, pool: vec![] };
        let big = Domain { cutoff: 4, pool: vec![parse_term("S(0) + S(0)").unwrap(), parse_term("0").unwrap()] };
        let mut a = Semantics::new(&fr, &reg, &db, small);
        a.close(sentences(), 1, 5000).unwrap();
        let b = Semantics::new(&fr, &reg, &db, big).with_fragment(a.frag.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let f = random_valuation(&a.frag, fr.worlds, &mut rng);
        for w in 0..fr.worlds {
            for phi in &a.frag.sentences {
                let x = a.sat3(&f, w, phi).unwrap();
                if x != Tv::Unknown {
                    prop_assert_eq!(x, b.sat3(&f, w, phi).unwrap(), "{}", phi);
                }
            }
        }
    }

    #[test]
    fn common_and_individual_knowledge_agree(seed in any::<u64>()) {
        let (reg, db, fr) = (builtin_systems(), TheoremDb::new(), frame(seed));
        let mut sem = Semantics::new(&fr, &reg, &db, Domain::default());
        sem.close(sentences(), 1, 5000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_valuation(&sem.frag, fr.worlds, &mut rng);
        for w in 0..fr.worlds {
            for phi in sentences() {
                let c = quote(&phi);
                let k1 = sem.sat3(&f, w, &Formula::k1(c.clone())).unwrap();
                let each = fr.agents.iter().fold(Tv::True, |acc, a| {
                    acc.and(sem.sat3(&f, w, &Formula::k2(knowtruth::syntax::numeral(*a), c.clone())).unwrap())
                });
                prop_assert_eq!(k1, each);
            }
        }
    }

    #[test]
    fn gamma_output_lies_in_the_fragment(seed in any::<u64>()) {
        let (reg, db) = (builtin_systems(), TheoremDb::new());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fr = AgencyFrame::random(&mut rng, vec![0], 2, 0.5, &[Property::Reflexive]);
        let mut sem = Semantics::new(&fr, &reg, &db, Domain::default());
        sem.close(sentences(), 1, 5000).unwrap();
        let f = random_valuation(&sem.frag, fr.worlds, &mut rng);
        let g = sem.gamma(&f).unwrap();
        for w in 0..fr.worlds {
            match &g.0[w] {
                knowtruth::revision::WorldVal::Explicit { yes, maybe, rest } => {
                    prop_assert!(yes.iter().chain(maybe).all(|c| sem.frag.contains_code(c)));
                    prop_assert_eq!(*rest, Tv::Unknown);
                }
                _ => prop_assert!(false, "gamma returned an intensional set"),
            }
        }
    }
}
