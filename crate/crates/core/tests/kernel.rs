use knowtruth::coding::quote;
use knowtruth::kernel::{check_proof, Just, KernelError, Proof, Reason, Step, TheoremDb};
use knowtruth::scripts::kit::everyone_knows;
use knowtruth::syntax::{parse_formula, Formula};
use knowtruth::systems::{builtin_systems, FS, KT, MONTAGUE};

fn step(formula: Formula, just: Just) -> Step {
    Step { formula, just }
}

/// `0 = 0` followed by `n` truth steps: NEC_T, NEC_T, CONEC_T, NEC_T, ...
fn crafted(system: &str, n: usize) -> Proof {
    let mut cur = parse_formula("0 = 0").unwrap();
    let mut steps = vec![step(cur.clone(), Just::Comp)];
    for k in 0..n {
        let prev = steps.len() - 1;
        if k % 3 == 2 {
            let Formula::Atom(_, args) = &cur else { unreachable!() };
            let inner = knowtruth::coding::decode_formula(args[0].as_numeral().unwrap()).unwrap();
            cur = inner;
            steps.push(step(cur.clone(), Just::ConecT(prev)));
        } else {
            cur = Formula::t(quote(&cur));
            steps.push(step(cur.clone(), Just::NecT(prev)));
        }
    }
    Proof { system: system.into(), steps }
}

#[test]
fn stage_budgets_count_truth_steps() {
    let reg = builtin_systems();
    for n in 1..=3 {
        let db = TheoremDb::new();
        let ok = check_proof(&reg, &db, &crafted(&format!("BEFS_{}", n + 1), n)).unwrap();
        assert_eq!(ok.nec_uses, n);
        let err = check_proof(&reg, &db, &crafted(&format!("BEFS_{n}"), n)).unwrap_err();
        assert!(matches!(err.reason(), Some(Reason::Budget(_) | Reason::RuleUnavailable(_))), "BEFS_{n}: {err}");
    }
    let p = crafted("BEFS_3", 3);
    assert_eq!(p.count("conec_t"), 1);
    assert!(matches!(
        check_proof(&reg, &TheoremDb::new(), &crafted("BEFS_3", 3)).unwrap_err().reason(),
        Some(Reason::Budget(2))
    ));
    assert!(check_proof(&reg, &TheoremDb::new(), &crafted(FS, 7)).is_ok());
}

fn rejected_at(err: KernelError) -> (usize, Reason) {
    match err {
        KernelError::Rejected { step, reason, .. } => (step, reason),
        other => panic!("{other}"),
    }
}

#[test]
fn necessitation_needs_a_theorem() {
    let reg = builtin_systems();
    let db = TheoremDb::new();
    let phi = parse_formula("U(0)").unwrap();
    let hyp = step(phi.clone(), Just::Hyp);
    let nec_k = Proof { system: KT.into(), steps: vec![hyp.clone(), step(everyone_knows(quote(&phi)), Just::NecK(0))] };
    let (at, why) = rejected_at(check_proof(&reg, &db, &nec_k).unwrap_err());
    assert_eq!((at, why), (2, Reason::NotTheorem(1)));
    let nec_t = Proof { system: FS.into(), steps: vec![hyp.clone(), step(Formula::t(quote(&phi)), Just::NecT(0))] };
    assert_eq!(rejected_at(check_proof(&reg, &db, &nec_t).unwrap_err()).1, Reason::NotTheorem(1));
    let nec_k1 = Proof { system: MONTAGUE.into(), steps: vec![hyp, step(Formula::k1(quote(&phi)), Just::NecK1(0))] };
    assert_eq!(rejected_at(check_proof(&reg, &db, &nec_k1).unwrap_err()).1, Reason::NotTheorem(1));

    let zero = parse_formula("0 = 0").unwrap();
    let fine = Proof {
        system: KT.into(),
        steps: vec![step(zero.clone(), Just::Comp), step(everyone_knows(quote(&zero)), Just::NecK(0))],
    };
    assert!(check_proof(&reg, &db, &fine).is_ok());
}
