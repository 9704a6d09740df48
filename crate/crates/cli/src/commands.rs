use std::fmt::Write;

use loft_core::constraint::{saturate_one, ConstraintSet, Status};
use loft_core::dlp::{self, DlpInterp, PositiveClause, RefuteOutcome};
use loft_core::ground::lfp_bounded;
use loft_core::petri::{self, Backward, EncodeOptions, PetriNet, Verdict};
use loft_core::prover::{self, ProveOutcome};
use loft_core::symbolic::{saturate, Antichain};
use loft_core::{parse_goal, parse_program, Fact, ParseError, PetriError, Program, Signature};
use serde_json::{json, Value};

use crate::report::{Certainty, Outcome};

/// A failed command. `origin` names what was being read: the input file
/// unless the problem sits in a flag value.
pub struct Failure {
    pub origin: Option<&'static str>,
    pub position: Option<String>,
    pub message: String,
}

impl Failure {
    fn msg(message: impl ToString) -> Self {
        Failure { origin: None, position: None, message: message.to_string() }
    }

    fn parse(e: ParseError) -> Self {
        Failure { origin: None, position: Some(format!("{}:{}", e.line, e.column)), message: e.kind.to_string() }
    }

    fn petri(e: PetriError) -> Self {
        match e {
            PetriError::Syntax { line, message } => Failure { origin: None, position: Some(line.to_string()), message },
            other => Failure::msg(other),
        }
    }

    fn in_flag(mut self, flag: &'static str) -> Self {
        self.origin = Some(flag);
        self
    }
}

pub type CmdResult = Result<Outcome, Failure>;

fn definite(status: &'static str, iterations: Option<usize>, result: Value, text: String) -> Outcome {
    Outcome { status, certainty: Certainty::Definite, iterations, result, text }
}

fn program(src: &str) -> Result<Program, Failure> {
    parse_program(src).map_err(Failure::parse)
}

fn fact_strings<'a>(facts: impl IntoIterator<Item = &'a Fact>, sig: &Signature) -> Vec<String> {
    facts.into_iter().map(|f| f.display(sig).to_string()).collect()
}

fn antichain_strings(a: &Antichain, sig: &Signature) -> Vec<String> {
    fact_strings(a.elems(), sig)
}

fn constraints_json(set: &ConstraintSet, sig: &Signature) -> Value {
    json!(set.elems().iter().map(|c| c.to_entries(sig)).collect::<Vec<_>>())
}

fn constraints_text(set: &ConstraintSet, sig: &Signature, out: &mut String) {
    for c in set.elems() {
        let _ = writeln!(out, "{}", c.display(sig));
    }
}

fn clause_names(c: &PositiveClause, sig: &Signature) -> Vec<String> {
    c.atoms().map(|a| sig.name(a).to_string()).collect()
}

fn interp_json(i: &DlpInterp, sig: &Signature) -> Value {
    json!(i.clauses().iter().map(|c| clause_names(c, sig)).collect::<Vec<_>>())
}

fn interp_text(i: &DlpInterp, sig: &Signature, out: &mut String) {
    for c in i.clauses() {
        let _ = writeln!(out, "{}", c.display(sig));
    }
}

pub fn check(src: &str) -> CmdResult {
    let p = program(src)?;
    let flat = p.is_flat();
    let text = format!(
        "dialect: {}\natoms: {}\nclauses: {}\nflat: {}\n",
        p.dialect,
        p.signature.names().join(" "),
        p.clauses.len(),
        flat
    );
    let result = json!({
        "dialect": p.dialect,
        "atoms": p.signature.names(),
        "clauses": p.clauses.len(),
        "flat": flat,
    });
    Ok(definite("ok", None, result, text))
}

pub fn saturate_lo(src: &str) -> CmdResult {
    let p = program(src)?;
    let sat = saturate(&p).map_err(Failure::msg)?;
    let sig = &p.signature;
    let mut text = format!("status: fixpoint\niterations: {}\n", sat.iterations);
    for f in sat.fixpoint.elems() {
        let _ = writeln!(text, "{}", f.display(sig));
    }
    let result = json!({
        "fixpoint": antichain_strings(&sat.fixpoint, sig),
        "iterations": sat.iterations,
        "trace": sat.trace.iter().map(|a| antichain_strings(a, sig)).collect::<Vec<_>>(),
    });
    Ok(definite("fixpoint", Some(sat.iterations), result, text))
}

pub fn saturate_lo1(src: &str, max_iters: usize) -> CmdResult {
    let p = program(src)?;
    let sat = saturate_one(&p, max_iters);
    let sig = &p.signature;
    let (status, certainty) = match sat.status {
        Status::Fixpoint => ("fixpoint", Certainty::Definite),
        Status::IterationBound | Status::Stopped => ("iteration_bound", Certainty::Inconclusive),
    };
    let mut text = format!("status: {status}\niterations: {}\nconstraints: {}\n", sat.iterations, sat.result.len());
    constraints_text(&sat.result, sig, &mut text);
    let result = json!({
        "constraints": constraints_json(&sat.result, sig),
        "iterations": sat.iterations,
    });
    Ok(Outcome { status, certainty, iterations: Some(sat.iterations), result, text })
}

pub fn oracle(src: &str, cap: u32) -> CmdResult {
    let p = program(src)?;
    let lfp = lfp_bounded(&p, cap);
    let sig = &p.signature;
    let facts = fact_strings(&lfp.facts, sig);
    let mut text = format!("cap: {cap}\nfacts: {}\n", facts.len());
    for f in &facts {
        let _ = writeln!(text, "{f}");
    }
    Ok(definite("ok", None, json!({ "cap": cap, "facts": facts }), text))
}

pub fn prove(src: &str, goal: &str, depth: usize) -> CmdResult {
    let p = program(src)?;
    let g = parse_goal(goal, &p.signature).map_err(|e| Failure::parse(e).in_flag("--goal"))?;
    if depth == 0 {
        return Err(Failure::msg("--depth must be at least 1"));
    }
    Ok(match prover::prove(&p, &g, depth) {
        ProveOutcome::Proved(t) => {
            prover::check(&p, &t).map_err(Failure::msg)?;
            let text = format!("status: proved\ndepth: {}\n{}", t.depth(), t.render(&p.signature));
            let result = json!({ "depth": t.depth(), "proof": t.view(&p.signature) });
            definite("proved", None, result, text)
        }
        ProveOutcome::Exhausted => definite("exhausted", None, Value::Null, "status: exhausted\n".into()),
        ProveOutcome::DepthLimit => Outcome {
            status: "depth_limit",
            certainty: Certainty::Inconclusive,
            iterations: None,
            result: Value::Null,
            text: "status: depth_limit\n".into(),
        },
    })
}

pub fn dlp_lfp(src: &str) -> CmdResult {
    let d = dlp::parse_dlp(src).map_err(Failure::parse)?;
    let lfp = dlp::dlp_lfp(&d);
    let mut text = String::from("status: fixpoint\n");
    interp_text(&lfp, &d.signature, &mut text);
    Ok(definite("fixpoint", None, json!({ "clauses": interp_json(&lfp, &d.signature) }), text))
}

pub fn dlp_refute(src: &str, goal: &str, depth: usize) -> CmdResult {
    let d = dlp::parse_dlp(src).map_err(Failure::parse)?;
    let sig = &d.signature;
    let g = dlp::parse_dlp_goal(goal, sig).map_err(|e| Failure::parse(e).in_flag("--goal"))?;
    Ok(match dlp::slo_refute(&d, &g, depth) {
        RefuteOutcome::Refuted(steps) => {
            let mut text = format!("status: refuted\nsteps: {}\n", steps.len() - 1);
            for goal in &steps {
                let cs: Vec<String> = goal.iter().map(|c| c.display(sig).to_string()).collect();
                let _ = writeln!(text, "<- {}", if cs.is_empty() { "[]".to_string() } else { cs.join(" , ") });
            }
            let derivation: Vec<Vec<Vec<String>>> =
                steps.iter().map(|g| g.iter().map(|c| clause_names(c, sig)).collect()).collect();
            let result = json!({ "steps": steps.len() - 1, "derivation": derivation });
            definite("refuted", None, result, text)
        }
        RefuteOutcome::Exhausted => definite("exhausted", None, Value::Null, "status: exhausted\n".into()),
        RefuteOutcome::DepthLimit => Outcome {
            status: "depth_limit",
            certainty: Certainty::Inconclusive,
            iterations: None,
            result: Value::Null,
            text: "status: depth_limit\n".into(),
        },
    })
}

pub fn dlp_compare(src: &str) -> CmdResult {
    let p = program(src)?;
    let r = dlp::compare(&p).map_err(Failure::msg)?;
    let sig = &p.signature;
    let complete = match r.complete {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    };
    let mut text = format!("sound: {}\ncomplete: {complete}\n", if r.sound { "yes" } else { "no" });
    if let Some(w) = &r.witness {
        let _ = writeln!(text, "witness: {}", w.display(sig));
    }
    text.push_str("abstracted:\n");
    interp_text(&r.abstracted, sig, &mut text);
    text.push_str("dlp:\n");
    interp_text(&r.dlp, sig, &mut text);
    let result = json!({
        "sound": r.sound,
        "complete": r.complete,
        "witness": r.witness.as_ref().map(|w| clause_names(w, sig)),
        "abstracted": interp_json(&r.abstracted, sig),
        "dlp": interp_json(&r.dlp, sig),
    });
    Ok(definite("ok", None, result, text))
}

fn net(src: &str) -> Result<PetriNet, Failure> {
    PetriNet::parse(src).map_err(Failure::petri)
}

pub fn petri_encode(src: &str, strict: bool) -> CmdResult {
    let n = net(src)?;
    let enc = petri::encode(&n, EncodeOptions { strict }).map_err(Failure::msg)?;
    let source = enc.program.to_source();
    let initial = enc.initial.display(&enc.program.signature).to_string();
    let text = format!("% initial marking: {initial}\n{source}");
    Ok(definite("ok", None, json!({ "program": source, "initial": initial }), text))
}

pub fn petri_cover(src: &str, strict: bool, max_iters: usize) -> CmdResult {
    let n = net(src)?;
    let r = petri::cover(&n, EncodeOptions { strict }, max_iters).map_err(Failure::msg)?;
    let sig = &r.encoding.program.signature;
    let (status, certainty) = match r.verdict {
        Verdict::Covered => ("covered", Certainty::Definite),
        Verdict::NotCovered => ("not_covered", Certainty::Definite),
        Verdict::Unknown => ("unknown", Certainty::Inconclusive),
    };
    let iterations = r.iterations();
    let mut text = format!("status: {status}\niterations: {iterations}\n");
    let result = match &r.backward {
        Backward::Lo(sat) => {
            text.push_str("basis:\n");
            for f in sat.fixpoint.elems() {
                let _ = writeln!(text, "{}", f.display(sig));
            }
            json!({ "dialect": "lo", "basis": antichain_strings(&sat.fixpoint, sig) })
        }
        Backward::Lo1(sat) => {
            let _ = writeln!(text, "constraints: {}", sat.result.len());
            json!({ "dialect": "lo1", "constraints": sat.result.len() })
        }
    };
    Ok(Outcome { status, certainty, iterations: Some(iterations), result, text })
}

pub fn petri_explore(src: &str, steps: usize, max_size: u64) -> CmdResult {
    let n = net(src)?;
    let reach = petri::forward_explore(&n, steps, max_size);
    let covers = reach.iter().any(|m| n.targets.iter().any(|t| t.leq(m)));
    let markings = fact_strings(&reach, &n.places);
    let mut text = format!("markings: {}\ncovers_target: {covers}\n", markings.len());
    for m in &markings {
        let _ = writeln!(text, "{m}");
    }
    Ok(definite("ok", None, json!({ "markings": markings, "covers_target": covers }), text))
}
