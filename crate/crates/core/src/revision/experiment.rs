//! Revision experiments: sampled axiom instances checked against the stages
//! of the revision sequence.

use super::frame::{AgencyFrame, Property};
use super::instances::{
    atom_schemas, axioms, base_images, nec_images, sample, Instance, Params, BEFS_AXIOMS, DCB_AXIOMS, FS_AXIOMS,
};
use super::sat::{Domain, EmptyMeet, Fragment, SemError, Semantics, Tv, Valuation, WorldVal};
use crate::builder::{BuildError, Res};
use crate::coding::{gc_formula, quote};
use crate::diagonal::fixed_point;
use crate::scripts::kit::{Kit, PrKit};
use crate::scripts::{Ctx, Session};
use crate::syntax::{parse_formula, Formula, Term, Var};
use crate::systems::{BASE, DCB, KT};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;
use std::fmt;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Sem(#[from] SemError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("unknown system `{0}`")]
    System(String),
    #[error("{0} seed systems for {1} worlds")]
    Seeds(usize, usize),
}

/// Header line every report carries.
pub const RANGE_NOTE: &str =
    "quantifiers outside Ag range over numerals up to the cutoff, agents and the term pool; undecided verdicts are unknown";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub r#true: usize,
    pub unknown: usize,
    pub r#false: usize,
}

impl Counts {
    fn add(&mut self, t: Tv) {
        match t {
            Tv::True => self.r#true += 1,
            Tv::Unknown => self.unknown += 1,
            Tv::False => self.r#false += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.r#true + self.unknown + self.r#false
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Falsified {
    pub axiom: String,
    #[serde(serialize_with = "super::doc::display")]
    pub formula: Formula,
    pub world: usize,
    pub stage: usize,
    pub run: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageRow {
    pub run: String,
    pub stage: usize,
    pub counts: Counts,
}

/// Verdicts of `instances` at every world of `f`.
pub fn check_instances(sem: &Semantics<'_>, f: &Valuation, instances: &[Instance]) -> Result<Vec<Vec<Tv>>, SemError> {
    (0..sem.frame.worlds).map(|w| instances.iter().map(|i| sem.sat3(f, w, &i.formula)).collect()).collect()
}

fn tally(
    verdicts: &[Vec<Tv>],
    instances: &[Instance],
    keep: impl Fn(&Instance) -> bool,
    run: &str,
    stage: usize,
    bad: &mut Vec<Falsified>,
) -> Counts {
    let mut c = Counts::default();
    for (w, row) in verdicts.iter().enumerate() {
        for (i, t) in instances.iter().zip(row) {
            if !keep(i) {
                continue;
            }
            c.add(*t);
            if *t == Tv::False {
                bad.push(Falsified {
                    axiom: i.axiom.clone(),
                    formula: i.formula.clone(),
                    world: w,
                    stage,
                    run: run.into(),
                });
            }
        }
    }
    c
}

/// Theorems proved into the store so that intensional seeds have content.
#[derive(Debug, Clone, Default)]
pub struct SeedTheorems {
    pub base: Vec<Formula>,
    pub dcb: Vec<Formula>,
    pub kt: Vec<Formula>,
}

impl SeedTheorems {
    pub fn all(&self) -> Vec<Formula> {
        self.base.iter().chain(&self.dcb).chain(&self.kt).cloned().collect()
    }
}

fn p(s: &str) -> Formula {
    parse_formula(s).expect("seed sentence parses")
}

pub const BASE_FACTS: [&str; 5] = ["0 = 0", "S(0) + 0 = S(0)", "~0 = S(0)", "S(0) * S(S(0)) = S(S(0))", "~S(0) = 0"];

/// Prove the seed theorems into `ctx`.
pub fn seed_theorems(ctx: &Ctx) -> Res<SeedTheorems> {
    let mut s = Session::new(ctx);
    let mut out = SeedTheorems::default();
    for f in BASE_FACTS {
        out.base.push(s.prove(BASE, |b| b.comp(p(f)))?);
    }
    out.dcb.push(s.prove(DCB, |b| b.ax("NonTriv"))?);
    for f in ["0 = 0", "~0 = S(0)"] {
        let phi = p(f);
        out.dcb.push(s.prove(DCB, |b| {
            let ag = b.hyp(Formula::ag(Term::Var(Var(0))))?;
            let n = b.comp(phi.clone())?;
            let sig = b.pr_sigma(DCB, &phi)?;
            let pr = b.mp(n, sig)?;
            let k = b.reflect(ag, pr, &[])?;
            let d = b.discharge(ag, k)?;
            b.ug(d, Var(0))
        })?);
    }
    let phi = p("S(0) + 0 = S(0)");
    out.kt.push(s.prove(KT, |b| {
        let n = b.comp(phi.clone())?;
        b.nec_k(n)
    })?);
    out.kt.push(s.prove(KT, |b| {
        let n = b.comp(phi.clone())?;
        b.push(Formula::t(quote(&phi)), crate::kernel::Just::NecT(n))
    })?);
    Ok(out)
}

/// Every fragment code in `yes` with probability one half, independently
/// per world.
pub fn random_valuation(frag: &Fragment, worlds: usize, rng: &mut impl Rng) -> Valuation {
    Valuation(
        (0..worlds).map(|_| WorldVal::explicit(frag.codes.iter().filter(|_| rng.gen_bool(0.5)).cloned())).collect(),
    )
}

fn intensional(ctx: &Ctx, frame: &AgencyFrame, systems: &[String]) -> Result<Valuation, ExperimentError> {
    if systems.len() != frame.worlds {
        return Err(ExperimentError::Seeds(systems.len(), frame.worlds));
    }
    if let Some(s) = systems.iter().find(|s| ctx.reg.get(s).is_err()) {
        return Err(ExperimentError::System(s.clone()));
    }
    Ok(Valuation(systems.iter().map(|s| WorldVal::Theorems(s.clone())).collect()))
}

/// Axioms a frame property validates one step in.
pub fn frame_axioms(frame: &AgencyFrame) -> Vec<&'static str> {
    let mut out = Vec::new();
    if frame.all(Property::Reflexive) {
        out.push("V");
    }
    if frame.all(Property::Transitive) {
        out.push("InPlus");
    }
    if frame.all(Property::Euclidean) {
        out.push("InMinus");
    }
    out
}

fn fragment_for(sem: &mut Semantics<'_>, params: &Params, instances: &[Instance], cap: usize) -> Result<(), SemError> {
    let seeds = params.sentences.iter().cloned().chain(instances.iter().map(|i| i.formula.clone()));
    sem.close(seeds, 2, cap)
}

/// Settings shared by the experiments.
#[derive(Debug, Clone)]
pub struct Options {
    /// Instances drawn per axiom.
    pub per_axiom: usize,
    /// Instances lifted by NEC_T and T/K at each level.
    pub nec_cap: usize,
    pub fragment_cap: usize,
    pub seed: u64,
    pub domain: Domain,
    pub empty_meet: EmptyMeet,
    /// Sentences added to the parameter pool.
    pub sentences: Vec<Formula>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            per_axiom: 30,
            nec_cap: 60,
            fragment_cap: 20_000,
            seed: crate::DEFAULT_SEED,
            domain: Domain {
                cutoff: 3,
                pool: ["0", "S(0)", "S(S(0))", "S(0) + 0"]
                    .iter()
                    .map(|t| crate::syntax::parse_term(t).expect("pool term parses"))
                    .collect(),
            },
            empty_meet: EmptyMeet::default(),
            sentences: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BefsReport {
    pub header: Vec<String>,
    pub properties: Vec<Property>,
    pub frame_axioms: Vec<String>,
    pub fragment: usize,
    /// Distinct instances at levels `1..=max_n`.
    pub per_level: Vec<usize>,
    pub rows: Vec<StageRow>,
    pub falsified: Vec<Falsified>,
    /// Liar membership at world 0 along the first run.
    pub liar: Vec<bool>,
    pub liar_period: Option<usize>,
    pub truth_teller_bistable: bool,
    pub elapsed_ms: u128,
}

impl BefsReport {
    pub fn instances(&self) -> usize {
        self.per_level.iter().sum()
    }

    pub fn passed(&self) -> bool {
        self.falsified.is_empty() && self.liar_period == Some(2) && self.truth_teller_bistable
    }
}

/// Least period of `xs`, ignoring the first element.
pub fn period(xs: &[bool]) -> Option<usize> {
    let tail = xs.get(1..)?;
    (1..tail.len()).find(|p| tail.len() > *p && (0..tail.len() - p).all(|i| tail[i] == tail[i + p]))
}

/// Sample BEFS_n instances plus the axioms the frame's properties validate,
/// then check every instance of level `≤ n` at stage `n` of revision runs
/// from random seeds, for `n` in `1..=max_n`.
pub fn revision_befs(
    ctx: &Ctx,
    frame: &AgencyFrame,
    seeds: &[u64],
    max_n: usize,
    opts: &Options,
) -> Result<BefsReport, ExperimentError> {
    let start = Instant::now();
    let theorems = seed_theorems(ctx)?;
    let y = Var(0);
    let liar =
        fixed_point(&Formula::not(Formula::t(Term::Var(y))), y).map_err(|e| BuildError::Plan(e.to_string()))?.theta;
    let teller = fixed_point(&Formula::t(Term::Var(y)), y).map_err(|e| BuildError::Plan(e.to_string()))?.theta;
    let mut extra = vec![liar.clone(), teller.clone()];
    extra.extend(opts.sentences.iter().cloned());
    let params = Params::standard(&frame.agents, &extra);
    let extras = frame_axioms(frame);
    let mut names: Vec<&str> = FS_AXIOMS.iter().chain(&BEFS_AXIOMS).copied().collect();
    names.extend(&extras);
    names.push("RT_PA");
    let mut axs = axioms(&ctx.reg, &names);
    axs.extend(atom_schemas());
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut levels = vec![sample(&axs, &params, opts.per_axiom, 1, &mut rng)];
    levels[0].extend(base_images(&theorems.base));
    for _ in 1..max_n {
        let next = nec_images(levels.last().expect("non-empty"), opts.nec_cap, &mut rng);
        levels.push(next);
    }
    let all: Vec<Instance> = levels.concat();
    let mut sem = Semantics::new(frame, &ctx.reg, &ctx.db, opts.domain.clone());
    sem.empty_meet = opts.empty_meet;
    fragment_for(&mut sem, &params, &all, opts.fragment_cap)?;
    let (mut rows, mut falsified, mut liar_trace) = (Vec::new(), Vec::new(), Vec::new());
    let liar_code = gc_formula(&liar).0;
    for (k, s) in seeds.iter().enumerate() {
        let mut r = ChaCha8Rng::seed_from_u64(*s);
        let run = sem.iterate(random_valuation(&sem.frag, frame.worlds, &mut r), max_n)?;
        if k == 0 {
            liar_trace = run.iter().map(|v| v.contains(0, &liar_code)).collect();
        }
        let name = format!("seed {s}");
        for (n, f) in run.iter().enumerate().skip(1) {
            let verdicts = check_instances(&sem, f, &all)?;
            let counts = tally(&verdicts, &all, |i| i.level <= n, &name, n, &mut falsified);
            rows.push(StageRow { run: name.clone(), stage: n, counts });
        }
    }
    let bistable = truth_teller_bistable(&sem, &teller, max_n.max(4))?;
    let mut header = vec![RANGE_NOTE.to_string()];
    header.push(format!("empty meet: {:?}", opts.empty_meet).to_lowercase());
    Ok(BefsReport {
        header,
        properties: frame.properties(),
        frame_axioms: extras.iter().map(|s| s.to_string()).collect(),
        fragment: sem.frag.len(),
        per_level: levels.iter().map(Vec::len).collect(),
        rows,
        falsified,
        liar_period: period(&liar_trace),
        liar: liar_trace,
        truth_teller_bistable: bistable,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// The truth-teller keeps whatever membership it is seeded with.
fn truth_teller_bistable(sem: &Semantics<'_>, teller: &Formula, steps: usize) -> Result<bool, SemError> {
    let c = gc_formula(teller).0;
    let n = sem.frame.worlds;
    let mut ok = true;
    for seeded in [false, true] {
        let yes: Vec<BigUint> = if seeded { vec![c.clone()] } else { Vec::new() };
        let run = sem.iterate(Valuation::uniform(n, WorldVal::explicit(yes)), steps)?;
        ok &= run.iter().all(|v| (0..n).all(|w| v.contains(w, &c) == seeded));
    }
    Ok(ok)
}

#[derive(Debug, Clone, Serialize)]
pub struct DcbReport {
    pub header: Vec<String>,
    pub left_total: bool,
    pub systems: Vec<String>,
    pub instances: usize,
    pub fragment: usize,
    pub rows: Vec<StageRow>,
    pub falsified: Vec<Falsified>,
    pub elapsed_ms: u128,
}

fn dcb_params(frame: &AgencyFrame, theorems: &SeedTheorems, opts: &Options) -> Params {
    let mut extra = theorems.all();
    extra.extend(opts.sentences.iter().cloned());
    Params::standard(&frame.agents, &extra)
}

/// DCB instances at an intensional seed built from the given systems, and
/// at the next `stages` revision stages.
pub fn dcb_seed(
    ctx: &Ctx,
    frame: &AgencyFrame,
    systems: &[String],
    stages: usize,
    opts: &Options,
) -> Result<DcbReport, ExperimentError> {
    let start = Instant::now();
    let seed = intensional(ctx, frame, systems)?;
    let theorems = seed_theorems(ctx)?;
    let params = dcb_params(frame, &theorems, opts);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let instances = sample(&axioms(&ctx.reg, &DCB_AXIOMS), &params, opts.per_axiom, 1, &mut rng);
    let mut sem = Semantics::new(frame, &ctx.reg, &ctx.db, opts.domain.clone());
    sem.empty_meet = opts.empty_meet;
    fragment_for(&mut sem, &params, &instances, opts.fragment_cap)?;
    let (mut rows, mut falsified) = (Vec::new(), Vec::new());
    for (n, f) in sem.iterate(seed, stages)?.iter().enumerate() {
        let verdicts = check_instances(&sem, f, &instances)?;
        let counts = tally(&verdicts, &instances, |_| true, "intensional", n, &mut falsified);
        rows.push(StageRow { run: "intensional".into(), stage: n, counts });
    }
    Ok(DcbReport {
        header: vec![RANGE_NOTE.into(), format!("empty meet: {:?}", opts.empty_meet).to_lowercase()],
        left_total: frame.all(Property::LeftTotal),
        systems: systems.to_vec(),
        instances: instances.len(),
        fragment: sem.frag.len(),
        rows,
        falsified,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// The three target systems of local validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    /// KT + UBF + IA on reflexive frames.
    A,
    /// Adds In⁺ on reflexive transitive frames.
    B,
    /// Adds In⁺ and In⁻ on equivalence frames.
    C,
}

impl Target {
    pub fn system(self) -> &'static str {
        match self {
            Target::A => crate::systems::KT_UBF_IA,
            Target::B => crate::systems::KT_UBF_IA_INP,
            Target::C => crate::systems::KT_UBF_IA_INPM,
        }
    }

    pub fn properties(self) -> &'static [Property] {
        match self {
            Target::A => &[Property::Reflexive],
            Target::B => &[Property::Reflexive, Property::Transitive],
            Target::C => &[Property::Reflexive, Property::Transitive, Property::Euclidean],
        }
    }

    fn extra_axioms(self) -> &'static [&'static str] {
        match self {
            Target::A => &["V", "UBF", "IA"],
            Target::B => &["V", "UBF", "IA", "InPlus"],
            Target::C => &["V", "UBF", "IA", "InPlus", "InMinus"],
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.system())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalReport {
    pub header: Vec<String>,
    pub target: String,
    pub frame_matches: bool,
    pub systems: Vec<String>,
    pub instances: usize,
    pub fragment: usize,
    pub stages: usize,
    pub window: usize,
    /// Least stage from which `window + 1` consecutive stages show no false
    /// verdict.
    pub m: Option<usize>,
    /// Least stage after which no verdict changes.
    pub stable_from: Option<usize>,
    pub rows: Vec<StageRow>,
    /// False verdicts at stages `m..=m + window`.
    pub falsified: Vec<Falsified>,
    /// False verdicts of DCB instances at any stage.
    pub dcb_false: usize,
    pub elapsed_ms: u128,
}

impl LocalReport {
    pub fn passed(&self) -> bool {
        self.frame_matches && self.m.is_some() && self.falsified.is_empty() && self.dcb_false == 0
    }
}

/// Local validation of a target system: sample its axioms and first NEC
/// images over a fragment, revise from an intensional seed and look for the
/// stage after which the fragment is stably validated.
pub fn local_validation(
    ctx: &Ctx,
    frame: &AgencyFrame,
    systems: &[String],
    target: Target,
    stages: usize,
    window: usize,
    opts: &Options,
) -> Result<LocalReport, ExperimentError> {
    let start = Instant::now();
    let seed = intensional(ctx, frame, systems)?;
    let theorems = seed_theorems(ctx)?;
    let params = dcb_params(frame, &theorems, opts);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut names: Vec<&str> = FS_AXIOMS.iter().chain(&DCB_AXIOMS).copied().collect();
    names.extend(target.extra_axioms());
    let mut axs = axioms(&ctx.reg, &names);
    axs.extend(atom_schemas());
    let mut instances = sample(&axs, &params, opts.per_axiom, 1, &mut rng);
    instances.extend(base_images(&theorems.base));
    let lifted = nec_images(&instances, opts.nec_cap, &mut rng);
    instances.extend(lifted);
    let mut sem = Semantics::new(frame, &ctx.reg, &ctx.db, opts.domain.clone());
    sem.empty_meet = opts.empty_meet;
    fragment_for(&mut sem, &params, &instances, opts.fragment_cap)?;
    let run = sem.iterate(seed, stages)?;
    let dcb: HashSet<&str> = DCB_AXIOMS.into_iter().collect();
    let (mut rows, mut per_stage, mut dcb_false) = (Vec::new(), Vec::new(), 0);
    for (n, f) in run.iter().enumerate() {
        let verdicts = check_instances(&sem, f, &instances)?;
        let mut bad = Vec::new();
        let counts = tally(&verdicts, &instances, |_| true, "intensional", n, &mut bad);
        dcb_false += bad.iter().filter(|b| dcb.contains(b.axiom.as_str())).count();
        rows.push(StageRow { run: "intensional".into(), stage: n, counts });
        per_stage.push((verdicts, bad));
    }
    let m = (0..per_stage.len().saturating_sub(window)).find(|&m| (m..=m + window).all(|n| per_stage[n].1.is_empty()));
    let last = per_stage.len() - 1;
    let stable_from = (0..last).find(|&k| per_stage[k..].iter().all(|(v, _)| *v == per_stage[k].0));
    let falsified = match m {
        Some(m) => per_stage[m..=m + window].iter().flat_map(|(_, b)| b.clone()).collect(),
        None => per_stage.iter().flat_map(|(_, b)| b.clone()).take(20).collect(),
    };
    Ok(LocalReport {
        header: vec![RANGE_NOTE.into(), format!("empty meet: {:?}", opts.empty_meet).to_lowercase()],
        target: target.to_string(),
        frame_matches: target.properties().iter().all(|p| frame.all(*p)),
        systems: systems.to_vec(),
        instances: instances.len(),
        fragment: sem.frag.len(),
        stages,
        window,
        m,
        stable_from,
        rows,
        falsified,
        dcb_false,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(props: &[Property], seed: u64) -> AgencyFrame {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        AgencyFrame::random(&mut rng, vec![0, 1], 3, 0.3, props)
    }

    #[test]
    fn befs_on_a_reflexive_frame() {
        let ctx = Ctx::new();
        let fr = frame(&[Property::Reflexive], 1);
        let t = Instant::now();
        let r = revision_befs(&ctx, &fr, &[1, 2, 3], 3, &Options::default()).unwrap();
        eprintln!("{} instances {:?} fragment {} in {:?}", r.instances(), r.per_level, r.fragment, t.elapsed());
        for row in &r.rows {
            eprintln!("{} {} {:?}", row.run, row.stage, row.counts);
        }
        for b in r.falsified.iter().take(5) {
            eprintln!("{} w{} n{} {}", b.axiom, b.world, b.stage, b.formula);
        }
        assert!(r.falsified.is_empty());
        assert_eq!(r.liar_period, Some(2));
        assert!(r.truth_teller_bistable);
    }

    fn show(rows: &[StageRow], bad: &[Falsified]) {
        for row in rows {
            eprintln!("{} {} {:?}", row.run, row.stage, row.counts);
        }
        for b in bad.iter().take(8) {
            eprintln!("{} w{} n{} {}", b.axiom, b.world, b.stage, b.formula);
        }
    }

    #[test]
    fn dcb_seed_on_a_reflexive_singleton() {
        let ctx = Ctx::new();
        let mut fr = AgencyFrame::new(vec![0], 1).unwrap();
        fr.add_edge(0, 0, 0).unwrap();
        let r = dcb_seed(&ctx, &fr, &[DCB.to_string()], 3, &Options::default()).unwrap();
        show(&r.rows, &r.falsified);
        assert!(r.left_total);
        assert!(r.falsified.is_empty());
    }

    #[test]
    fn dead_end_falsifies_reflection_without_left_totality() {
        let ctx = Ctx::new();
        let mut fr = AgencyFrame::new(vec![0], 2).unwrap();
        fr.add_edge(0, 0, 1).unwrap();
        let systems = [DCB.to_string(), DCB.to_string()];
        let opts = Options { empty_meet: EmptyMeet::Nothing, ..Options::default() };
        let r = dcb_seed(&ctx, &fr, &systems, 0, &opts).unwrap();
        assert!(!r.left_total);
        assert!(r.falsified.iter().any(|b| b.axiom == "R_DCB" && b.world == 1));
        let r = dcb_seed(&ctx, &fr, &systems, 2, &Options::default()).unwrap();
        assert!(r.falsified.is_empty());
    }

    #[test]
    fn veracity_fails_off_reflexive_frames() {
        let ctx = Ctx::new();
        let mut fr = AgencyFrame::new(vec![0], 2).unwrap();
        fr.add_edge(0, 0, 1).unwrap();
        fr.add_edge(0, 1, 1).unwrap();
        fr.u_set[1].insert(0);
        let params = Params::standard(&fr.agents, &[]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let inst = sample(&axioms(&ctx.reg, &["V"]), &params, 40, 1, &mut rng);
        let mut sem = Semantics::new(&fr, &ctx.reg, &ctx.db, Domain::default());
        fragment_for(&mut sem, &params, &inst, 5000).unwrap();
        let run = sem.iterate(random_valuation(&sem.frag, 2, &mut rng), 1).unwrap();
        let v = check_instances(&sem, &run[1], &inst).unwrap();
        assert!(v[0].contains(&Tv::False));
        assert!(!v[1].contains(&Tv::False));
    }

    #[test]
    fn local_validation_case_a() {
        let ctx = Ctx::new();
        let fr = frame(Target::A.properties(), 5);
        let systems = [DCB.to_string(), KT.to_string(), DCB.to_string()];
        let t = Instant::now();
        let r = local_validation(&ctx, &fr, &systems, Target::A, 12, 3, &Options::default()).unwrap();
        eprintln!("{} instances, fragment {}, m {:?}, {:?}", r.instances, r.fragment, r.m, t.elapsed());
        show(&r.rows, &r.falsified);
        assert!(r.passed());
    }
}
