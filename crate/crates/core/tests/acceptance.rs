//! The acceptance suite: one line per criterion, then a single verdict.

mod common;

use knowtruth::coding::quote;
use knowtruth::diagonal::fixed_point;
use knowtruth::kernel::{check_proof, Just, Proof, Reason, Step, TheoremDb};
use knowtruth::revision::experiment::{local_validation, revision_befs, Options, Target};
use knowtruth::revision::{AgencyFrame, Property};
use knowtruth::scripts::kit::everyone_knows;
use knowtruth::scripts::{self, befs, tb, Ctx, Session};
use knowtruth::syntax::gen::{depth, random_unary};
use knowtruth::syntax::{parse_formula, Formula, Var};
use knowtruth::systems::{builtin_systems, BASE, DCB, KT};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run_checked(ctx: &Ctx, id: &str) -> Result<scripts::ScriptRun, String> {
    let run = scripts::run(ctx, id).map_err(|e| e.to_string())?;
    scripts::replay(&run).map_err(|e| format!("{id} replay: {e}"))?;
    Ok(run)
}

fn paradoxes() -> Outcome {
    let mut out = Vec::new();
    for id in ["km", "montague", "u4"] {
        let t = Instant::now();
        let run = run_checked(&Ctx::new(), id)?;
        let took = t.elapsed();
        ensure(run.verdict().conclusion == Formula::bot(), format!("{id} does not end in falsum"))?;
        ensure(took < Duration::from_secs(5), format!("{id} took {took:?}"))?;
        out.push(format!("{id} {}ms", took.as_millis()));
    }
    Ok(out.join(", "))
}

fn diagonal() -> Outcome {
    let t = Instant::now();
    let reg = builtin_systems();
    let mut rng = ChaCha8Rng::seed_from_u64(knowtruth::DEFAULT_SEED);
    let y = Var(0);
    let n = 50;
    for _ in 0..n {
        let phi = random_unary(&mut rng, 4, y);
        ensure(depth(&phi) <= 4, format!("sampled `{phi}` is too deep"))?;
        let fp = fixed_point(&phi, y).map_err(|e| format!("{phi}: {e}"))?;
        ensure(fp.witness.system == BASE, "witness is not a Base proof")?;
        let v = check_proof(&reg, &TheoremDb::new(), &fp.witness).map_err(|e| format!("{phi}: {e}"))?;
        let want = Formula::iff(fp.theta.clone(), phi.instantiate(y, &quote(&fp.theta)).map_err(|e| e.to_string())?);
        ensure(v.conclusion == want, format!("{phi}: wrong fixed-point statement"))?;
    }
    let took = t.elapsed();
    ensure(took < Duration::from_secs(60), format!("took {took:?}"))?;
    Ok(format!("{n} formulas in {}ms", took.as_millis()))
}

fn common_knowledge() -> Outcome {
    let ctx = Ctx::new();
    let ids =
        ["cke", "implied", "unique", "conj-1", "conj-2", "general", "monotone", "ck-main-a", "ck-main-b", "ck-main-c"];
    for id in ids {
        run_checked(&ctx, id)?;
    }
    let loeb = run_checked(&Ctx::new(), "ck-main-b")?.count("loeb");
    ensure(loeb == 1, format!("ck-main-b uses the Loeb rule {loeb} times"))?;
    Ok(format!("{} scripts, Loeb used once in ck-main-b", ids.len()))
}

fn truth_steps(system: &str, n: usize) -> Proof {
    let mut cur = parse_formula("0 = 0").unwrap();
    let mut steps = vec![Step { formula: cur.clone(), just: Just::Comp }];
    for k in 0..n {
        let prev = steps.len() - 1;
        let just = if k % 3 == 2 {
            cur = match steps[prev - 1].formula.clone() {
                f if Formula::t(quote(&f)) == cur => f,
                _ => unreachable!("a NEC_T step precedes"),
            };
            Just::ConecT(prev)
        } else {
            cur = Formula::t(quote(&cur));
            Just::NecT(prev)
        };
        steps.push(Step { formula: cur.clone(), just });
    }
    Proof { system: system.into(), steps }
}

fn budgets() -> Outcome {
    let reg = builtin_systems();
    for n in 1..=3 {
        let accept = check_proof(&reg, &TheoremDb::new(), &truth_steps(&format!("BEFS_{}", n + 1), n))
            .map_err(|e| format!("BEFS_{} rejected {n} uses: {e}", n + 1))?;
        ensure(accept.nec_uses == n, format!("counted {} uses, crafted {n}", accept.nec_uses))?;
        let reject = check_proof(&reg, &TheoremDb::new(), &truth_steps(&format!("BEFS_{n}"), n));
        ensure(
            matches!(
                reject.as_ref().map_err(|e| e.reason()),
                Err(Some(Reason::Budget(_) | Reason::RuleUnavailable(_)))
            ),
            format!("BEFS_{n} did not reject {n} uses"),
        )?;
    }
    Ok("n = 1, 2, 3".into())
}

fn discharge() -> Outcome {
    let reg = builtin_systems();
    let phi = parse_formula("U(0)").unwrap();
    let p = Proof {
        system: KT.into(),
        steps: vec![
            Step { formula: phi.clone(), just: Just::Hyp },
            Step { formula: everyone_knows(quote(&phi)), just: Just::NecK(0) },
        ],
    };
    match check_proof(&reg, &TheoremDb::new(), &p) {
        Err(e) if matches!(e.reason(), Some(Reason::NotTheorem(_))) => Ok(format!("rejected: {e}")),
        Err(e) => Err(format!("rejected for another reason: {e}")),
        Ok(_) => Err("NEC^K on a hypothesis was accepted".into()),
    }
}

fn coding() -> Outcome {
    let pool = common::pool(1000, knowtruth::DEFAULT_SEED);
    let fails = common::coding_failures(&pool);
    ensure(
        fails.is_empty(),
        format!("{} failures, first: {}", fails.len(), fails.first().cloned().unwrap_or_default()),
    )?;
    Ok(format!("{} expressions, zero failures", pool.len()))
}

fn frame(props: &[Property], worlds: usize, seed: u64) -> AgencyFrame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    AgencyFrame::random(&mut rng, vec![0, 1], worlds, 0.3, props)
}

fn revision() -> Outcome {
    let cases: [(&str, &[Property], usize); 3] = [
        ("reflexive", &[Property::Reflexive], 3),
        ("transitive", &[Property::Transitive], 4),
        ("euclidean", &[Property::Euclidean], 4),
    ];
    let mut out = Vec::new();
    for (i, (name, props, worlds)) in cases.iter().enumerate() {
        let fr = frame(props, *worlds, 100 + i as u64);
        ensure(props.iter().all(|p| fr.all(*p)), format!("{name} frame lacks its property"))?;
        let ctx = Ctx::new();
        let t = Instant::now();
        let r = revision_befs(&ctx, &fr, &[1, 2, 3], 3, &Options::default()).map_err(|e| e.to_string())?;
        let took = t.elapsed();
        ensure(r.instances() >= 500, format!("{name}: only {} instances", r.instances()))?;
        ensure(
            r.falsified.is_empty(),
            format!("{name}: {} false verdicts, e.g. {:?}", r.falsified.len(), r.falsified.first()),
        )?;
        ensure(r.liar_period == Some(2), format!("{name}: liar period {:?}", r.liar_period))?;
        ensure(r.truth_teller_bistable, format!("{name}: truth-teller not bistable"))?;
        ensure(took < Duration::from_secs(120), format!("{name}: took {took:?}"))?;
        out.push(format!("{name} [{}] {} instances {}ms", r.frame_axioms.join("+"), r.instances(), took.as_millis()));
    }
    Ok(out.join(", "))
}

fn local() -> Outcome {
    let mut out = Vec::new();
    let opts = Options { per_axiom: 4, nec_cap: 12, ..Options::default() };
    for (i, target) in [Target::A, Target::B, Target::C].into_iter().enumerate() {
        let fr = frame(target.properties(), 3, 200 + i as u64);
        let systems = [DCB.to_string(), DCB.to_string(), KT.to_string()];
        let r = local_validation(&Ctx::new(), &fr, &systems, target, 12, 3, &opts).map_err(|e| e.to_string())?;
        ensure(r.frame_matches, format!("{target}: frame lacks properties"))?;
        let m = r.m.ok_or_else(|| format!("{target}: no stabilization index"))?;
        ensure(m <= 8, format!("{target}: m = {m}"))?;
        ensure(r.falsified.is_empty(), format!("{target}: false verdicts {:?}", r.falsified.first()))?;
        ensure(r.dcb_false == 0, format!("{target}: {} false DCB verdicts", r.dcb_false))?;
        out.push(format!("{target} m={m} ({} instances)", r.instances));
    }
    Ok(out.join(", "))
}

fn kt_proves_befs() -> Outcome {
    let ctx = Ctx::new();
    let run = run_checked(&ctx, "befs-instances")?;
    let kt = run.proofs.iter().filter(|p| p.system == KT).count();
    ensure(kt >= 20, format!("only {kt} KT proofs"))?;
    let sampled = befs::sample(knowtruth::DEFAULT_SEED, befs::SAMPLE);
    let uns = sampled.iter().filter(|i| matches!(i, befs::Instance::Uns { .. })).count();
    ensure(uns > 0 && uns < sampled.len(), "sample lacks one of the two schemas")?;
    run_checked(&ctx, "befs-rules")?;
    Ok(format!("{kt} KT proofs, both rule replays check"))
}

fn tb_transfer() -> Outcome {
    let ctx = Ctx::new();
    let run = run_checked(&ctx, "tb-transfer")?;
    let nested = Formula::k2(knowtruth::syntax::Term::zero(), quote(&tb::default_sentence()));
    ensure(run.verdict().conclusion == tb::transfer_statement(&nested), "nested transfer has the wrong statement")?;
    let mut s = Session::new(&ctx);
    let phi = tb::default_sentence();
    tb::atomic_tb(&mut s, KT, &phi).map_err(|e| e.to_string())?;
    ensure(tb::transfer(&mut s, KT, &phi).is_err(), "transfer went through without IA")?;
    ensure(tb::recheck_in(&ctx, &run.proofs[1], KT).is_err(), "KT accepted the IA proof")?;
    Ok("checks in KT+IA, rejected in KT".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("paradox replays", paradoxes),
        ("diagonal lemma", diagonal),
        ("common knowledge suite", common_knowledge),
        ("rule budgets", budgets),
        ("NEC discharge discipline", discharge),
        ("coding oracle", coding),
        ("revision of BEFS_n", revision),
        ("local validation", local),
        ("KT proves BEFS instances", kt_proves_befs),
        ("TB transfer", tb_transfer),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
