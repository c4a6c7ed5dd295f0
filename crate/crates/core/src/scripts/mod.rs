//! Scripted derivations replayed through the kernel.

pub mod befs;
pub mod ck;
pub mod kit;
pub mod paradox;
pub mod tb;

use crate::builder::{BuildError, Builder, Res};
use crate::diagonal::{fixed_point_in, DiagError, FixedPointResult};
use crate::kernel::{Proof, TheoremDb, Verdict};
use crate::syntax::{Formula, Var};
use crate::systems::{builtin_systems, Registry};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScriptError {
    #[error("unknown script `{0}`")]
    Unknown(String),
    #[error("{script}: {source}")]
    Build { script: String, source: BuildError },
}

/// Shared registry and theorem store for a batch of scripts.
pub struct Ctx {
    pub reg: Registry,
    pub db: TheoremDb,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { reg: builtin_systems(), db: TheoremDb::new() }
    }
}

impl Ctx {
    pub fn new() -> Self {
        Self::default()
    }
}

/// All proofs produced by a script, in dependency order. The last one is
/// the main result.
#[derive(Debug, Clone)]
pub struct ScriptRun {
    pub id: String,
    pub proofs: Vec<Proof>,
    pub verdicts: Vec<Verdict>,
    pub elapsed: Duration,
}

impl ScriptRun {
    pub fn main(&self) -> &Proof {
        self.proofs.last().expect("scripts produce a proof")
    }

    pub fn verdict(&self) -> &Verdict {
        self.verdicts.last().expect("scripts produce a proof")
    }

    pub fn count(&self, label: &str) -> usize {
        self.proofs.iter().map(|p| p.count(label)).sum()
    }

    /// Proofs with the given conclusion.
    pub fn proof_of(&self, f: &Formula) -> Option<&Proof> {
        self.proofs.iter().zip(&self.verdicts).find(|(_, v)| &v.conclusion == f).map(|(p, _)| p)
    }
}

/// Collects the proofs a script finishes.
pub struct Session<'c> {
    pub ctx: &'c Ctx,
    proofs: Vec<Proof>,
    verdicts: Vec<Verdict>,
}

impl<'c> Session<'c> {
    pub fn new(ctx: &'c Ctx) -> Self {
        Session { ctx, proofs: Vec::new(), verdicts: Vec::new() }
    }

    pub fn builder(&self, system: &str) -> Res<Builder<'c>> {
        Builder::new(&self.ctx.reg, &self.ctx.db, system)
    }

    pub fn finish(&mut self, b: Builder<'_>) -> Res<Formula> {
        let (v, p) = b.finish()?;
        let f = v.conclusion.clone();
        self.proofs.push(p);
        self.verdicts.push(v);
        Ok(f)
    }

    /// Prove in `system` with `body` building the steps.
    pub fn prove(&mut self, system: &str, body: impl FnOnce(&mut Builder<'c>) -> Res) -> Res<Formula> {
        let mut b = self.builder(system)?;
        body(&mut b)?;
        self.finish(b)
    }

    pub fn fixed_point(&mut self, phi: &Formula, y: Var) -> Res<FixedPointResult> {
        let fp = fixed_point_in(&self.ctx.reg, &self.ctx.db, phi, y).map_err(|e| match e {
            DiagError::Build(b) => b,
            other => BuildError::Plan(other.to_string()),
        })?;
        self.proofs.push(fp.witness.clone());
        self.verdicts.push(Verdict { conclusion: fp.statement.clone(), nec_uses: 0, stats: Default::default() });
        Ok(fp)
    }

    /// Check a proof built elsewhere and record it.
    pub fn replay(&mut self, p: &Proof) -> Res<Formula> {
        let v = crate::kernel::check_proof(&self.ctx.reg, &self.ctx.db, p)?;
        let f = v.conclusion.clone();
        self.proofs.push(p.clone());
        self.verdicts.push(v);
        Ok(f)
    }

    pub fn done(self, id: &str, start: Instant) -> ScriptRun {
        ScriptRun { id: id.into(), proofs: self.proofs, verdicts: self.verdicts, elapsed: start.elapsed() }
    }
}

pub type ScriptFn = fn(&Ctx) -> Res<ScriptRun>;

/// Every script, by identifier.
pub fn catalog() -> Vec<(&'static str, &'static str, ScriptFn)> {
    vec![
        ("km", "Kaplan-Montague knower paradox", paradox::km),
        ("montague", "Montague paradox with necessitation", paradox::montague),
        ("u4", "KT + U4 is inconsistent", paradox::u4),
        ("cke", "CK_Ag satisfies its fixed-point equivalence", ck::cke_script),
        ("implied", "H1 and H2 imply common knowledge", ck::implied),
        ("unique", "an alpha-variant of CK_Ag defines the same notion", ck::unique),
        ("conj-1", "CK of 0=0 and of S(0)=S(0) iff CK of the conjunction", ck::conj_1),
        ("conj-2", "conjunction closure for a second pair", ck::conj_2),
        ("general", "CK_Ag is closed under the mpc function", ck::general),
        ("monotone", "CK over all objects gives CK among agents", ck::monotone),
        ("ck-main-a", "common knowledge is closed under modus ponens", ck::ck_main_a),
        ("ck-main-b", "provable in DCB implies commonly known, by Loeb", ck::ck_main_b),
        ("ck-main-c", "CK_Ag(0=0) from a DCB proof", ck::ck_main_c),
        ("befs-instances", "KT proves sampled UNS^K and UND^K instances", befs::instances),
        ("befs-rules", "T/K and NEC^K are admissible across the two systems", befs::rules),
        ("tb-transfer", "TB transfers through K in KT + IA, nested once", tb::script),
    ]
}

pub fn run(ctx: &Ctx, id: &str) -> Result<ScriptRun, ScriptError> {
    let (_, _, f) = catalog().into_iter().find(|(i, _, _)| *i == id).ok_or_else(|| ScriptError::Unknown(id.into()))?;
    f(ctx).map_err(|source| ScriptError::Build { script: id.into(), source })
}

/// Replay every proof of a run against a fresh store.
pub fn replay(run: &ScriptRun) -> Result<Vec<Verdict>, crate::kernel::KernelError> {
    let reg = builtin_systems();
    let db = TheoremDb::new();
    run.proofs.iter().map(|p| crate::kernel::check_proof(&reg, &db, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_script_runs_and_replays() {
        let ctx = Ctx::new();
        for (id, _, _) in catalog() {
            let r = run(&ctx, id).unwrap_or_else(|e| panic!("{e}"));
            assert_eq!(r.id, id);
            replay(&r).unwrap_or_else(|e| panic!("{id}: {e}"));
        }
        assert!(matches!(run(&ctx, "nope"), Err(ScriptError::Unknown(_))));
    }
}
