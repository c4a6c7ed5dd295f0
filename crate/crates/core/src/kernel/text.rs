//! Plain-text proof scripts: a `system: NAME` header, then one step per line
//! as `<index> | <formula> | <justification>`. Blank lines and lines starting
//! with `#` are ignored. Step references are one-based.

use super::{Just, Proof, Step};
use crate::syntax::{parse_formula, parse_syntax, Syntax};
use crate::systems::SchemaId;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct TextError {
    pub line: usize,
    pub msg: String,
}

fn fmt_just(j: &Just) -> String {
    let r = |i: &usize| (i + 1).to_string();
    match j {
        Just::Tc(ps) => {
            let mut s = "tc".to_string();
            for p in ps {
                let _ = write!(s, " {}", r(p));
            }
            s
        }
        Just::MP(a, b) | Just::Discharge(a, b) => format!("{} {} {}", j.label(), r(a), r(b)),
        Just::UG(i)
        | Just::NecT(i)
        | Just::ConecT(i)
        | Just::NecK(i)
        | Just::NecK1(i)
        | Just::TOverK(i)
        | Just::Loeb(i) => format!("{} {}", j.label(), r(i)),
        Just::Ax(n) | Just::Cite(n) => format!("{} {n}", j.label()),
        Just::Schema(id, ps) => {
            let ps: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
            format!("schema {id} {}", ps.join(" ; "))
        }
        Just::D1(s, Some(i)) => format!("d1 {s} {}", r(i)),
        Just::D1(s, None) => format!("d1 {s} db"),
        _ => j.label().to_string(),
    }
}

pub fn print_proof(p: &Proof) -> String {
    let mut out = format!("system: {}\n", p.system);
    for (i, s) in p.steps.iter().enumerate() {
        let _ = writeln!(out, "{} | {} | {}", i + 1, s.formula, fmt_just(&s.just));
    }
    out
}

fn parse_just(text: &str, here: usize) -> Result<Just, String> {
    let mut words = text.split_whitespace();
    let head = words.next().ok_or("missing justification")?;
    let rest: Vec<&str> = words.collect();
    let idx = |w: &str| -> Result<usize, String> {
        let k: usize = w.parse().map_err(|_| format!("bad step reference `{w}`"))?;
        if k == 0 || k >= here {
            return Err(format!("step reference {k} does not precede step {here}"));
        }
        Ok(k - 1)
    };
    let one = |rest: &[&str]| -> Result<usize, String> {
        match rest {
            [w] => idx(w),
            _ => Err(format!("`{head}` takes one step reference")),
        }
    };
    let name = |rest: &[&str]| -> Result<String, String> {
        match rest {
            [w] => Ok(w.to_string()),
            _ => Err(format!("`{head}` takes one name")),
        }
    };
    let nullary = |j: Just| if rest.is_empty() { Ok(j) } else { Err(format!("`{head}` takes no arguments")) };
    match head {
        "hyp" => nullary(Just::Hyp),
        "taut" => nullary(Just::Taut),
        "ui" => nullary(Just::UI),
        "exdef" => nullary(Just::ExDef),
        "q2" => nullary(Just::Q2),
        "refl" => nullary(Just::EqRefl),
        "subst" => nullary(Just::EqSubst),
        "comp" => nullary(Just::Comp),
        "d2" => nullary(Just::D2),
        "internal_ui" => nullary(Just::InternalUI),
        "pr_sigma" => nullary(Just::PrSigma),
        "pr_taut" => nullary(Just::PrTaut),
        "tc" => Ok(Just::Tc(rest.iter().map(|w| idx(w)).collect::<Result<_, _>>()?)),
        "mp" | "discharge" => match rest.as_slice() {
            [a, b] => {
                let (a, b) = (idx(a)?, idx(b)?);
                Ok(if head == "mp" { Just::MP(a, b) } else { Just::Discharge(a, b) })
            }
            _ => Err(format!("`{head}` takes two step references")),
        },
        "ug" => Ok(Just::UG(one(&rest)?)),
        "nec_t" => Ok(Just::NecT(one(&rest)?)),
        "conec_t" => Ok(Just::ConecT(one(&rest)?)),
        "nec_k" => Ok(Just::NecK(one(&rest)?)),
        "nec_k1" => Ok(Just::NecK1(one(&rest)?)),
        "t_over_k" => Ok(Just::TOverK(one(&rest)?)),
        "loeb" => Ok(Just::Loeb(one(&rest)?)),
        "ax" => Ok(Just::Ax(name(&rest)?)),
        "cite" => Ok(Just::Cite(name(&rest)?)),
        "d1" => match rest.as_slice() {
            [s, "db"] => Ok(Just::D1(s.to_string(), None)),
            [s, i] => Ok(Just::D1(s.to_string(), Some(idx(i)?))),
            _ => Err("`d1` takes a system and a step reference or `db`".into()),
        },
        "schema" => {
            let after = text.trim_start()["schema".len()..].trim_start();
            let (id, params) = after.split_once(char::is_whitespace).unwrap_or((after, ""));
            let id: SchemaId = id.parse().map_err(|e: crate::systems::SchemaError| e.to_string())?;
            let params: Vec<Syntax> = params
                .split(';')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(|p| parse_syntax(p).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            Ok(Just::Schema(id, params))
        }
        _ => Err(format!("unknown justification `{head}`")),
    }
}

pub fn parse_proof(text: &str) -> Result<Proof, TextError> {
    let mut system = None;
    let mut steps = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: String| TextError { line: ln + 1, msg };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix("system:") {
            if system.is_some() {
                return Err(err("duplicate system header".into()));
            }
            system = Some(name.trim().to_string());
            continue;
        }
        if system.is_none() {
            return Err(err("missing `system:` header".into()));
        }
        let (idx, rest) =
            line.split_once('|').ok_or_else(|| err("expected `index | formula | justification`".into()))?;
        let (formula, just) =
            rest.rsplit_once('|').ok_or_else(|| err("expected `index | formula | justification`".into()))?;
        let here = steps.len() + 1;
        let k: usize = idx.trim().parse().map_err(|_| err(format!("bad index `{}`", idx.trim())))?;
        if k != here {
            return Err(err(format!("expected index {here}, found {k}")));
        }
        let formula = parse_formula(formula.trim()).map_err(|e| err(e.to_string()))?;
        let just = parse_just(just.trim(), here).map_err(err)?;
        steps.push(Step { formula, just });
    }
    let system = system.ok_or(TextError { line: 0, msg: "missing `system:` header".into() })?;
    Ok(Proof { system, steps })
}

/// Several proofs, each starting at its own `system:` header. Line numbers
/// in errors refer to the whole text.
pub fn parse_proofs(text: &str) -> Result<Vec<Proof>, TextError> {
    let mut chunks: Vec<(usize, String)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        if raw.trim().starts_with("system:") || chunks.is_empty() {
            chunks.push((ln, String::new()));
        }
        let chunk = &mut chunks.last_mut().expect("non-empty").1;
        chunk.push_str(raw);
        chunk.push('\n');
    }
    chunks
        .into_iter()
        .filter(|(_, c)| c.lines().any(|l| !l.trim().is_empty() && !l.trim().starts_with('#')))
        .map(|(start, c)| parse_proof(&c).map_err(|e| TextError { line: e.line + start, msg: e.msg }))
        .collect()
}

pub fn print_proofs(ps: &[Proof]) -> String {
    ps.iter().map(print_proof).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "system: FS\n\
                    1 | 0 = 0 -> 0 = 0 | taut\n\
                    2 | T(<<0 = 0 -> 0 = 0>>) | nec_t 1\n\
                    3 | T(<<0 = 0>>) <-> 0 = 0 | schema UCT_Atom 0 = 0\n\
                    4 | Pr[FS](<<0 = 0 -> 0 = 0>>) | d1 FS 1\n";
        let p = parse_proof(text).unwrap();
        assert_eq!(p.steps.len(), 4);
        assert_eq!(p.steps[1].just, Just::NecT(0));
        assert_eq!(parse_proof(&print_proof(&p)).unwrap(), p);
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_proof("system: FS\n1 | 0 = 0 | mp 1 2\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_proof("1 | 0 = 0 | taut\n").is_err());
        assert!(parse_proof("system: FS\n2 | 0 = 0 | taut\n").is_err());
    }

    #[test]
    fn bundles() {
        let text = "# two proofs\nsystem: FS\n1 | 0 = 0 | comp\n\nsystem: Base\n1 | 0 = 0 | comp\n2 | 0 = 0 | mp 1 1\n";
        let ps = parse_proofs(text).unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(parse_proofs(&print_proofs(&ps)).unwrap(), ps);
        let e = parse_proofs("system: FS\n1 | 0 = 0 | comp\nsystem: FS\n1 | 0 = | comp\n").unwrap_err();
        assert_eq!(e.line, 4);
    }
}
