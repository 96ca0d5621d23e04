use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use canonseq_core::coherence::{is_coherent, strong_consistency_witness, InconsistencyWitness, StrongConsistency};
use canonseq_core::decision::{decide_with, DecideOptions, DecisionError, SaturationConfig};
use canonseq_core::derivation::{
    check_derivation, derivation_from_json, derivation_to_json, is_s_proof, is_strict_proof, occurring_formulas,
};
use canonseq_core::kripke::{
    check_semiframe, countermodel_search, default_max_worlds, frame_from_json, frame_to_json, is_legal, locally_true,
    MAX_WORLDS,
};
use canonseq_core::rules::{is_definite_system, validate_system};
use canonseq_core::syntax::{parse_sequent_list, Domain};
use canonseq_core::{parse_sequent, parse_system, CanonicalSystem, Sequent};

use crate::args::Command;
use crate::batch::run_batch;
use crate::report::{exit, Report};

type Step<T> = Result<T, Report>;

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

struct Ctx<'a> {
    command: &'static str,
    base: &'a Path,
}

impl Ctx<'_> {
    fn fail(&self, message: impl Into<String>) -> Report {
        Report::error(self.command, exit::INVALID_INPUT, message)
    }

    fn read(&self, p: &Path) -> Step<String> {
        std::fs::read_to_string(resolve(self.base, p)).map_err(|e| self.fail(format!("{}: {e}", p.display())))
    }

    fn read_json(&self, p: &Path) -> Step<Value> {
        serde_json::from_str(&self.read(p)?).map_err(|e| self.fail(format!("{}: {e}", p.display())))
    }

    fn write_json(&self, p: &Path, v: &Value) -> Step<()> {
        let text = serde_json::to_string_pretty(v).expect("values serialize") + "\n";
        std::fs::write(resolve(self.base, p), text).map_err(|e| self.fail(format!("{}: {e}", p.display())))
    }

    /// Parses without validating.
    fn parse_system(&self, p: &Path) -> Step<CanonicalSystem> {
        parse_system(&self.read(p)?).map_err(|e| self.fail(format!("{}: {e}", p.display())))
    }

    fn system(&self, p: &Path) -> Step<CanonicalSystem> {
        let g = self.parse_system(p)?;
        let diags = validate_system(&g);
        if diags.is_empty() {
            Ok(g)
        } else {
            let list: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
            Err(self.fail(format!("invalid system {}: {}", g.name, list.join("; "))))
        }
    }

    fn sequents(&self, p: Option<&PathBuf>, g: &CanonicalSystem) -> Step<Vec<Sequent>> {
        let Some(p) = p else { return Ok(Vec::new()) };
        parse_sequent_list(&self.read(p)?, &g.signature)
            .map_err(|(line, e)| self.fail(format!("{}:{line}: {e}", p.display())))
    }

    fn goal(&self, text: &str, g: &CanonicalSystem) -> Step<Sequent> {
        parse_sequent(text, &g.signature).map_err(|e| self.fail(format!("goal `{text}`: {e}")))
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

pub fn execute(command: &Command, base: &Path) -> Report {
    let ctx = Ctx {
        command: command.name(),
        base,
    };
    let result = match command {
        Command::Check { system } => check(&ctx, system),
        Command::Coherence { system, witness } => coherence(&ctx, system, *witness),
        Command::Decide {
            system,
            goal,
            assume,
            proof,
            countermodel,
            max_closure_size,
        } => decide(&ctx, system, goal, assume.as_ref(), proof.as_ref(), countermodel.as_ref(), *max_closure_size),
        Command::Countermodel {
            system,
            goal,
            assume,
            max_worlds,
            out,
        } => countermodel(&ctx, system, goal, assume.as_ref(), *max_worlds, out.as_ref()),
        Command::CheckProof {
            system,
            proof,
            assume,
            s_proof,
            strict,
        } => check_proof(&ctx, system, proof, assume.as_ref(), *s_proof, *strict),
        Command::CheckFrame {
            system,
            frame,
            model_of,
        } => check_frame(&ctx, system, frame, model_of.as_ref()),
        Command::Batch { manifest, jobs } => Ok(run_batch(&resolve(base, manifest), *jobs)),
    };
    result.unwrap_or_else(|r| r)
}

fn check(ctx: &Ctx, path: &Path) -> Step<Report> {
    let g = ctx.parse_system(path)?;
    let diags = validate_system(&g);
    let connectives: Vec<Value> = g
        .signature
        .iter()
        .map(|c| json!({"name": c.name, "arity": c.arity}))
        .collect();
    let rules = strings(g.all_rules().map(|r| g.rule_label(r)));
    let mut text = format!(
        "system {}: {} connectives, {} rules{}\n",
        g.name,
        connectives.len(),
        rules.len(),
        if is_definite_system(&g) { ", definite" } else { "" }
    );
    for d in &diags {
        text += &format!("  {d}\n");
    }
    let (code, verdict) = if diags.is_empty() {
        (exit::OK, "valid")
    } else {
        (exit::INVALID_INPUT, "invalid")
    };
    text += verdict;
    text += "\n";
    Ok(Report::new(
        ctx.command,
        code,
        verdict,
        text,
        json!({
            "system": g.name,
            "connectives": connectives,
            "rules": rules,
            "definite": is_definite_system(&g),
            "diagnostics": strings(&diags),
        }),
    ))
}

fn coherence(ctx: &Ctx, path: &Path, want_witness: bool) -> Step<Report> {
    let g = ctx.system(path)?;
    let report = is_coherent(&g);
    let mut text = String::new();
    let mut pairs = Vec::new();
    for p in &report.pairs {
        let clauses = strings(&p.clauses);
        let (line, detail) = match &p.witness {
            InconsistencyWitness::CutDerivation(d) => (
                format!("unsatisfiable, empty clause in {} cuts", d.cut_count()),
                json!({"cuts": d.cut_count()}),
            ),
            InconsistencyWitness::SatisfyingAssignment(a) => {
                (format!("satisfied by {a}"), json!({"assignment": a.to_string()}))
            }
        };
        text += &format!("{} / {}: {{{}}} {line}\n", p.left_label, p.right_label, clauses.join(", "));
        pairs.push(json!({
            "connective": p.connective,
            "left": p.left_label,
            "right": p.right_label,
            "clauses": clauses,
            "coherent": p.is_coherent(),
            "witness": detail,
        }));
    }
    let coherent = report.is_coherent();
    let verdict = if coherent { "coherent" } else { "incoherent" };
    text += verdict;
    text += "\n";
    let mut witness = Value::Null;
    if want_witness {
        if let StrongConsistency::Refuted(d) = strong_consistency_witness(&g) {
            witness = derivation_to_json(&g, &d);
            text += &serde_json::to_string_pretty(&witness).expect("values serialize");
            text += "\n";
        }
    }
    Ok(Report::new(
        ctx.command,
        if coherent { exit::OK } else { exit::NEGATIVE },
        verdict,
        text,
        json!({"system": g.name, "pairs": pairs, "witness": witness}),
    ))
}

fn decide(
    ctx: &Ctx,
    path: &Path,
    goal: &str,
    assume: Option<&PathBuf>,
    proof_out: Option<&PathBuf>,
    model_out: Option<&PathBuf>,
    max_closure_size: usize,
) -> Step<Report> {
    let g = ctx.system(path)?;
    let goal = ctx.goal(goal, &g)?;
    let s = ctx.sequents(assume, &g)?;
    let options = DecideOptions {
        saturation: SaturationConfig {
            max_closure_size,
            ..Default::default()
        },
        countermodel: model_out.is_some(),
    };
    let outcome = decide_with(&g, &s, &goal, &options).map_err(|e| match e {
        DecisionError::IncoherentSystem(_) => Report::error(ctx.command, exit::INVALID_INPUT, e.to_string()),
        _ => ctx.fail(e.to_string()),
    })?;

    let proof = outcome.proof().map(|d| derivation_to_json(&g, d));
    let frame = outcome.countermodel().map(frame_to_json);
    if let (Some(p), Some(v)) = (proof_out, &proof) {
        ctx.write_json(p, v)?;
    }
    if let (Some(p), Some(v)) = (model_out, &frame) {
        ctx.write_json(p, v)?;
    }
    let verdict = outcome.to_string();
    let mut text = format!("{verdict}: {goal}\n");
    if let Some(d) = outcome.proof() {
        text += &d.to_string();
    }
    if let Some(f) = outcome.countermodel() {
        text += "countermodel:\n";
        text += &f.to_string();
    }
    Ok(Report::new(
        ctx.command,
        if outcome.is_provable() { exit::OK } else { exit::NEGATIVE },
        &verdict,
        text,
        json!({
            "goal": goal.to_string(),
            "assumptions": strings(&s),
            "cuts": outcome.proof().map(|d| d.cut_count()),
            "proof": proof,
            "countermodel": frame,
        }),
    ))
}

fn countermodel(
    ctx: &Ctx,
    path: &Path,
    goal: &str,
    assume: Option<&PathBuf>,
    max_worlds: Option<usize>,
    out: Option<&PathBuf>,
) -> Step<Report> {
    let g = ctx.system(path)?;
    let goal = ctx.goal(goal, &g)?;
    let s = ctx.sequents(assume, &g)?;
    let u = Domain::from_sequents(s.iter().chain([&goal]))
        .ok_or_else(|| ctx.fail("subformula closure is too large"))?
        .len();
    let (default, capped) = default_max_worlds(u);
    let bound = max_worlds.unwrap_or(default);
    if bound == 0 || bound > MAX_WORLDS {
        return Err(ctx.fail(format!("--max-worlds must be between 1 and {MAX_WORLDS}")));
    }
    let complete = u <= 4 && bound >= 1 << u && !(max_worlds.is_none() && capped);
    let found = countermodel_search(&g, &s, &goal, bound).map_err(|e| ctx.fail(e.to_string()))?;
    let frame = found.as_ref().map(frame_to_json);
    if let (Some(p), Some(v)) = (out, &frame) {
        ctx.write_json(p, v)?;
    }
    let mut text = String::new();
    if !complete {
        text += &format!("warning: a bound of {bound} worlds does not make the search complete for |U| = {u}\n");
    }
    let verdict = match &found {
        Some(f) => {
            text += &format!("found: {} worlds refute {goal}\n{f}", f.len());
            "found"
        }
        None => {
            text += &format!("not-found: no legal frame with at most {bound} worlds refutes {goal}\n");
            "not-found"
        }
    };
    Ok(Report::new(
        ctx.command,
        if found.is_some() { exit::OK } else { exit::NEGATIVE },
        verdict,
        text,
        json!({
            "goal": goal.to_string(),
            "assumptions": strings(&s),
            "max_worlds": bound,
            "complete": complete,
            "frame": frame,
        }),
    ))
}

fn check_proof(
    ctx: &Ctx,
    path: &Path,
    proof: &Path,
    assume: Option<&PathBuf>,
    s_proof: bool,
    strict: bool,
) -> Step<Report> {
    let g = ctx.system(path)?;
    let s = ctx.sequents(assume, &g)?;
    let d = derivation_from_json(&g, &ctx.read_json(proof)?).map_err(|e| ctx.fail(format!("{}: {e}", proof.display())))?;
    let mut error = Value::Null;
    let mut problem = None;
    if let Err(e) = check_derivation(&g, &s, &d) {
        error = json!({
            "path": e.path.to_string(),
            "rule": e.rule,
            "message": e.message,
            "expected": e.expected.as_ref().map(|x| x.to_string()),
        });
        problem = Some(e.to_string());
    } else if s_proof && !is_s_proof(&d, &s) {
        let occurring = occurring_formulas(&s);
        let bad = d.cut_formulas().into_iter().find(|f| !occurring.contains(f)).expect("some cut formula is foreign");
        let message = format!("cut formula `{bad}` does not occur in the assumptions");
        error = json!({"message": message});
        problem = Some(message);
    } else if strict && !is_strict_proof(&d) {
        let bad = d.nodes().into_iter().find(|n| !n.conclusion.is_definite()).expect("some sequent is negative");
        let message = format!("negative sequent `{}` in a strict proof", bad.conclusion);
        error = json!({"message": message});
        problem = Some(message);
    }
    let (code, verdict) = if problem.is_none() {
        (exit::OK, "valid")
    } else {
        (exit::NEGATIVE, "invalid")
    };
    let text = match &problem {
        None => format!("valid: {} ({} nodes, {} cuts)\n", d.conclusion, d.size(), d.cut_count()),
        Some(p) => format!("invalid: {p}\n"),
    };
    Ok(Report::new(
        ctx.command,
        code,
        verdict,
        text,
        json!({
            "conclusion": d.conclusion.to_string(),
            "cuts": d.cut_count(),
            "size": d.size(),
            "error": error,
        }),
    ))
}

fn check_frame(ctx: &Ctx, path: &Path, frame: &Path, model_of: Option<&PathBuf>) -> Step<Report> {
    let g = ctx.system(path)?;
    let s = ctx.sequents(model_of, &g)?;
    let f = frame_from_json(&g.signature, &ctx.read_json(frame)?).map_err(|e| ctx.fail(format!("{}: {e}", frame.display())))?;
    let (verdict, problems) = if let Err(diags) = check_semiframe(&f) {
        ("not-semiframe", strings(&diags))
    } else if let Some(v) = Some(is_legal(&f, &g)).filter(|r| !r.is_legal()) {
        ("illegal", vec![v.to_string()])
    } else {
        let mut failures = Vec::new();
        for q in &s {
            for a in f.worlds() {
                match locally_true(&f, a, q) {
                    Ok(true) => {}
                    Ok(false) => {
                        failures.push(format!("`{q}` is false at {}", f.labels[a]));
                        break;
                    }
                    Err(e) => return Err(ctx.fail(e.to_string())),
                }
            }
        }
        if failures.is_empty() {
            ("legal", failures)
        } else {
            ("not-model", failures)
        }
    };
    let mut text = String::new();
    for p in &problems {
        text += &format!("  {p}\n");
    }
    text += &format!("{verdict}: {} worlds\n", f.len());
    Ok(Report::new(
        ctx.command,
        if verdict == "legal" { exit::OK } else { exit::NEGATIVE },
        verdict,
        text,
        json!({"worlds": f.labels, "problems": problems}),
    ))
}
