//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Run a subset with
//! `cargo test --test acceptance -- 4 7`.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use canonseq_core::coherence::{
    classically_inconsistent, is_coherent, strong_consistency_assumptions, strong_consistency_witness,
    InconsistencyWitness, StrongConsistency,
};
use canonseq_core::decision::{decide, decide_with, saturate_with, DecideOptions, DecisionOutcome, SaturationConfig};
use canonseq_core::derivation::{
    check_derivation, derivation_from_json, is_s_proof, is_strict_proof, strictify, Derivation,
};
use canonseq_core::kripke::{
    check_semiframe, countermodel_search, enumerate_legal_extensions, extend_semiframe, frame_from_json, is_legal,
    is_model, legal_frames, Semiframe,
};
use canonseq_core::rules::{builtin_systems, builtin_union, Clause};
use canonseq_core::syntax::Domain;
use canonseq_core::{builtin, parse_formula, parse_sequent, parse_system, CanonicalSystem, Formula, Sequent};

use common::{canonical_domains, sequents_over, subsets_upto};

type Outcome = Result<String, String>;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn seq(g: &CanonicalSystem, text: &str) -> Sequent {
    parse_sequent(text, &g.signature).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn valid_countermodel(f: &Semiframe, g: &CanonicalSystem, s: &[Sequent], goal: &Sequent) -> Result<(), String> {
    check_semiframe(f).map_err(|d| format!("not a semiframe: {d:?}\n{f}"))?;
    let legal = is_legal(f, g);
    ensure(legal.is_legal(), || format!("{legal}\n{f}"))?;
    ensure(is_model(f, s).map_err(|e| e.to_string())?, || format!("falsifies an assumption\n{f}"))?;
    ensure(!is_model(f, [goal]).map_err(|e| e.to_string())?, || format!("satisfies the goal\n{f}"))
}

fn valid_proof(g: &CanonicalSystem, s: &[Sequent], goal: &Sequent, d: &Derivation) -> Result<(), String> {
    check_derivation(g, s, d).map_err(|e| format!("{goal}: {e}"))?;
    ensure(&d.conclusion == goal, || format!("proof concludes {} not {goal}", d.conclusion))?;
    ensure(is_s_proof(d, s), || format!("{goal}: not an S-proof"))
}

fn no_coherence_check() -> DecideOptions {
    DecideOptions {
        saturation: SaturationConfig {
            check_coherence: false,
            ..Default::default()
        },
        countermodel: false,
    }
}

fn coherence_goldens() -> Outcome {
    let expected = [
        ("imp", true),
        ("bot", true),
        ("neg", true),
        ("simp", true),
        ("aff", true),
        ("waff", true),
        ("cni", true),
        ("nand", true),
        ("circ", false),
    ];
    for (name, coherent) in expected {
        let g = builtin(name).unwrap();
        let report = is_coherent(&g);
        ensure(report.is_coherent() == coherent, || format!("{name}: got {}", report.verdict))?;
    }
    let report = is_coherent(&builtin("circ").unwrap());
    let pair = report.offending_pairs().next().unwrap();
    ensure(
        pair.left_label == "(circ=>)" && pair.right_label == "(=>circ)",
        || format!("circ offending pair {}/{}", pair.left_label, pair.right_label),
    )?;
    Ok(format!("{} verdicts", expected.len()))
}

fn cut_counts() -> Outcome {
    let cases = [
        (vec![Clause::new([], Some(1)), Clause::new([2], None), Clause::new([1], Some(2))], 2),
        (vec![Clause::new([], Some(1)), Clause::new([2], None), Clause::new([], Some(2))], 1),
    ];
    let mut found = Vec::new();
    for (clauses, cuts) in cases {
        let InconsistencyWitness::CutDerivation(d) = classically_inconsistent(&clauses, 2) else {
            return Err("reported satisfiable".into());
        };
        d.verify()?;
        ensure(d.cut_count() == cuts, || format!("expected {cuts} cuts, got {}\n{d}", d.cut_count()))?;
        found.push(d.cut_count().to_string());
    }
    Ok(format!("cuts {}", found.join(", ")))
}

fn circle_strong_consistency() -> Outcome {
    let g = builtin("circ").unwrap();
    let s = strong_consistency_assumptions();
    let StrongConsistency::Refuted(d) = strong_consistency_witness(&g) else {
        return Err("no witness for circ".into());
    };
    check_derivation(&g, &s, &d).map_err(|e| e.to_string())?;
    ensure(d.conclusion == Sequent::empty(), || format!("witness concludes {}", d.conclusion))?;

    let text = std::fs::read_to_string(fixture("circle-cut-proof.json")).map_err(|e| e.to_string())?;
    let v = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let tree = derivation_from_json(&g, &v).map_err(|e| e.to_string())?;
    let s = [seq(&g, "p1 =>")];
    check_derivation(&g, &s, &tree).map_err(|e| format!("displayed tree rejected: {e}"))?;
    ensure(!is_s_proof(&tree, &s), || "displayed tree accepted as an S-proof".into())?;
    Ok(format!("witness with {} cuts, displayed tree checked", d.cut_count()))
}

fn circle_characterization() -> Outcome {
    let g = builtin("circ").unwrap();
    let spanning = seq(&g, "circ(circ(p1)), p2 =>");
    let state = saturate_with(
        &g,
        &[],
        &spanning,
        &SaturationConfig {
            check_coherence: false,
            ..Default::default()
        },
    )
    .map_err(|e| e.to_string())?;
    let u = state.domain().clone();
    ensure(u.len() == 4, || format!("domain has {} formulas", u.len()))?;
    let candidates = sequents_over(&u);
    let expected_count = (1 << u.len()) * (u.len() + 1);
    ensure(candidates.len() == expected_count, || "candidate count".into())?;

    let iterate = |psi: &Formula, n: usize| (0..n).fold(psi.clone(), |f, _| Formula::compound("circ", vec![f]));
    let mut provable = 0;
    for s in &candidates {
        let oracle = match &s.succedent {
            None => false,
            Some(psi) => (0..=u.len()).any(|n| s.antecedent.contains(&iterate(psi, n))),
        };
        let got = state.covers(s);
        ensure(got == oracle, || format!("{s}: saturation {got}, characterization {oracle}"))?;
        if got {
            provable += 1;
            let d = state.proof_of(s).unwrap();
            check_derivation(&g, &[], &d).map_err(|e| e.to_string())?;
            ensure(d.cut_count() == 0, || format!("{s}: proof uses cuts"))?;
        }
    }
    Ok(format!("{provable} of {} candidates provable, exact match", candidates.len()))
}

fn decision_goldens() -> Outcome {
    let with_model = DecideOptions {
        countermodel: true,
        ..Default::default()
    };
    let run = |name: &str, goal: &str| -> Result<(CanonicalSystem, Sequent, DecisionOutcome), String> {
        let g = builtin(name).unwrap();
        let goal = seq(&g, goal);
        let out = decide_with(&g, &[], &goal, &with_model).map_err(|e| e.to_string())?;
        if let Some(d) = out.proof() {
            valid_proof(&g, &[], &goal, d)?;
            ensure(d.cut_count() == 0, || format!("{goal}: proof from no assumptions uses cuts"))?;
        }
        if let Some(f) = out.countermodel() {
            valid_countermodel(f, &g, &[], &goal)?;
        }
        Ok((g, goal, out))
    };

    let provable = [("imp", "=> imp(p1, p1)"), ("aff", "aff(p1) => p1"), ("neg", "p1, neg(p1) =>")];
    for (name, goal) in provable {
        let (_, _, out) = run(name, goal)?;
        ensure(out.is_provable(), || format!("{name}: {goal} unprovable"))?;
    }

    let (g, goal, out) = run("waff", "waff(p1) => p1")?;
    let canonical = out.countermodel().ok_or("waff(p1) => p1: no canonical countermodel")?;
    ensure(canonical.len() <= 2, || format!("canonical countermodel has {} worlds", canonical.len()))?;
    let searched = countermodel_search(&g, &[], &goal, 2)
        .map_err(|e| e.to_string())?
        .ok_or("search found no countermodel for waff(p1) => p1")?;
    valid_countermodel(&searched, &g, &[], &goal)?;
    ensure(searched.len() <= 2, || "searched countermodel too large".into())?;

    let (_, _, out) = run("imp", "=> imp(imp(imp(p1, p2), p1), p1)")?;
    ensure(out.countermodel().is_some(), || "Peirce: no countermodel".into())?;

    let mut systems = 0;
    for entry in builtin_systems() {
        if !is_coherent(&entry.system).is_coherent() {
            continue;
        }
        systems += 1;
        let g = &entry.system;
        let goal = seq(g, "p1 => p2");
        let out = decide_with(g, &[], &goal, &with_model).map_err(|e| e.to_string())?;
        let f = out.countermodel().ok_or_else(|| format!("{}: p1 => p2 provable", g.name))?;
        valid_countermodel(f, g, &[], &goal)?;
    }
    Ok(format!(
        "3 provable, waff countermodels with {} and {} worlds, Peirce refuted, p1 => p2 refuted in {systems} systems",
        canonical.len(),
        searched.len()
    ))
}

fn random_clause(rng: &mut ChaCha8Rng, arity: u32, negative: bool) -> String {
    let ante: Vec<String> = (1..=arity).filter(|_| rng.gen_bool(0.4)).map(|i| format!("p{i}")).collect();
    let succ = if arity > 0 && !negative && rng.gen_bool(0.6) {
        format!(" p{}", rng.gen_range(1..=arity))
    } else {
        String::new()
    };
    let ante = ante.join(", ");
    match (ante.is_empty(), succ.is_empty()) {
        (true, _) => format!("(=>{succ})"),
        (false, _) => format!("({ante} =>{succ})"),
    }
}

fn random_system(rng: &mut ChaCha8Rng, id: usize) -> String {
    let mut text = format!("system random{id}\n");
    let names = ["ka", "kb"];
    let count = rng.gen_range(1..=2);
    let mut rules = String::new();
    for name in &names[..count] {
        let arity = rng.gen_range(0..=2u32);
        text += &format!("connective {name}/{arity}\n");
        for _ in 0..rng.gen_range(1..=3) {
            let count = rng.gen_range(0..=2);
            if rng.gen_bool(0.5) {
                let premises: Vec<String> = (0..count).map(|_| random_clause(rng, arity, false)).collect();
                rules += &format!("rule right {name} : {} |- (=> {name})\n", premises.join(" "));
            } else {
                let tagged: Vec<String> = (0..count)
                    .map(|_| {
                        if rng.gen_bool(0.5) {
                            format!("hard{}", random_clause(rng, arity, false))
                        } else {
                            format!("soft{}", random_clause(rng, arity, true))
                        }
                    })
                    .collect();
                rules += &format!("rule left {name} : {} |- ({name} =>)\n", tagged.join(" "));
            }
        }
    }
    text + &rules
}

fn strong_cut_elimination() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut systems = 0;
    let mut generated = 0;
    let mut provable = 0;
    let mut instances = 0;
    while systems < 200 {
        generated += 1;
        let text = random_system(&mut rng, generated);
        let g = parse_system(&text).map_err(|e| format!("{e}\n{text}"))?;
        if !is_coherent(&g).is_coherent() {
            continue;
        }
        systems += 1;
        let domains = canonical_domains(&g, 3);
        for _ in 0..25 {
            let u = domains.choose(&mut rng).unwrap();
            let seqs = sequents_over(u);
            let k = rng.gen_range(0..=2);
            let s: Vec<Sequent> = (0..k).map(|_| seqs.choose(&mut rng).unwrap().clone()).collect();
            let goal = seqs.choose(&mut rng).unwrap();
            instances += 1;
            if let DecisionOutcome::Provable(d) = decide(&g, &s, goal).map_err(|e| e.to_string())? {
                provable += 1;
                valid_proof(&g, &s, goal, &d).map_err(|e| format!("{e}\n{text}"))?;
            }
        }
    }
    Ok(format!(
        "{systems} coherent systems of {generated} generated, {instances} instances, {provable} S-proofs checked"
    ))
}

fn oracle_agreement() -> Outcome {
    let opts = no_coherence_check();
    let mut instances = 0;
    let mut frames = 0;
    let mut systems = 0;
    for entry in builtin_systems() {
        let g = &entry.system;
        if !is_coherent(g).is_coherent() {
            continue;
        }
        systems += 1;
        let mut seen = HashSet::new();
        for u in canonical_domains(g, 3) {
            let seqs = sequents_over(&u);
            for s in subsets_upto(&seqs, 2) {
                for goal in &seqs {
                    if !seen.insert((s.clone(), goal.clone())) {
                        continue;
                    }
                    instances += 1;
                    let out = decide_with(g, &s, goal, &opts).map_err(|e| e.to_string())?;
                    let n = Domain::from_sequents(s.iter().chain([goal])).unwrap().len();
                    let found = countermodel_search(g, &s, goal, 1 << n).map_err(|e| e.to_string())?;
                    if let Some(f) = &found {
                        frames += 1;
                        valid_countermodel(f, g, &s, goal).map_err(|e| format!("{}: {s:?} / {goal}: {e}", g.name))?;
                    }
                    ensure(out.is_provable() != found.is_some(), || {
                        format!("{}: {s:?} / {goal}: decide {out}, search found {}", g.name, found.is_some())
                    })?;
                }
            }
        }
    }
    Ok(format!("{systems} systems, {instances} instances agree, {frames} countermodels validated"))
}

fn atomic_frames(leq: &[Vec<bool>], atoms: &Domain) -> Vec<Semiframe> {
    let n = leq.len();
    let cells = n * atoms.len();
    (0u32..1 << cells)
        .map(|bits| {
            let mut f = Semiframe::new(atoms.clone(), leq.to_vec());
            for a in 0..n {
                for i in 0..atoms.len() {
                    f.valuation[a][i] = bits & (1 << (a * atoms.len() + i)) != 0;
                }
            }
            f
        })
        .filter(|f| check_semiframe(f).is_ok())
        .collect()
}

/// Counts legal valuations of the compound over `leq` with the atoms fixed,
/// by trying every value of the compound at every world.
fn brute_force_extensions(g: &CanonicalSystem, atomic: &Semiframe, u2: &Domain) -> usize {
    let n = atomic.len();
    let c = u2.len() - 1;
    (0u32..1 << n)
        .filter(|bits| {
            let mut f = Semiframe::new(u2.clone(), atomic.leq.clone());
            for a in 0..n {
                for (i, phi) in atomic.domain.formulas().iter().enumerate() {
                    f.set_value(a, phi, atomic.valuation[a][i]).unwrap();
                }
                f.valuation[a][c] = bits & (1 << a) != 0;
            }
            check_semiframe(&f).is_ok() && is_legal(&f, g).is_legal()
        })
        .count()
}

/// Fewest and most legal valuations of the compound over the atomic
/// valuations on the given skeleton.
fn extension_counts(g: &CanonicalSystem, compound: &str, leq: &[Vec<bool>]) -> Result<(usize, usize), String> {
    let phi = parse_formula(compound, &g.signature).unwrap();
    let u2 = Domain::closure_of([&phi]).unwrap();
    assert_eq!(u2.formulas().last(), Some(&phi));
    let atoms = Domain::closure_of(&phi.atoms().into_iter().map(|a| Formula::atom(a.index())).collect::<Vec<_>>())
        .unwrap();
    let mut lo = usize::MAX;
    let mut hi = 0;
    for f in atomic_frames(leq, &atoms) {
        let all = enumerate_legal_extensions(g, &f, &u2).map_err(|e| e.to_string())?;
        for e in &all {
            ensure(is_legal(e, g).is_legal(), || format!("{compound}: illegal extension\n{e}"))?;
        }
        let oracle = brute_force_extensions(g, &f, &u2);
        ensure(all.len() == oracle, || {
            format!("{compound}: search found {} extensions, brute force {oracle}\n{f}", all.len())
        })?;
        lo = lo.min(all.len());
        hi = hi.max(all.len());
    }
    Ok((lo, hi))
}

fn kripke_goldens() -> Outcome {
    let cni = builtin("cni").unwrap();
    for name in ["cni-figure-a.json", "cni-figure-b.json"] {
        let text = std::fs::read_to_string(fixture(name)).map_err(|e| e.to_string())?;
        let v = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let f = frame_from_json(&cni.signature, &v).map_err(|e| e.to_string())?;
        check_semiframe(&f).map_err(|d| format!("{name}: {d:?}"))?;
        let legal = is_legal(&f, &cni);
        ensure(legal.is_legal(), || format!("{name}: {legal}"))?;
        ensure(is_model(&f, &[seq(&cni, "p1 =>")]).unwrap(), || format!("{name}: p1 is not f everywhere"))?;
    }

    let chain = vec![vec![true, true], vec![false, true]];
    let cases = [
        ("simp", "simp(p1, p2)", false),
        ("cni", "cni(p1, p2)", false),
        ("nand", "nand(p1, p2)", false),
        ("waff", "waff(p1)", false),
        ("aff", "aff(p1)", true),
    ];
    let mut failures = Vec::new();
    let mut report = Vec::new();
    for (name, compound, deterministic) in cases {
        let g = builtin(name).unwrap();
        let (lo, hi) = extension_counts(&g, compound, &chain)?;
        report.push(format!("{name} {lo}..{hi}"));
        let ok = if deterministic { lo == 1 && hi == 1 } else { hi >= 2 };
        if !ok {
            failures.push(format!(
                "{name}: {} legal valuations on the 2-world chain, wanted {}",
                if lo == hi { lo.to_string() } else { format!("{lo}..{hi}") },
                if deterministic { "exactly 1" } else { "at least 2" }
            ));
        }
    }
    let fork = vec![vec![true, true, true], vec![false, true, false], vec![false, false, true]];
    let (_, fork_hi) = extension_counts(&builtin("nand").unwrap(), "nand(p1, p2)", &fork)?;
    report.push(format!("nand on a 3-world fork up to {fork_hi}"));

    let neg = builtin("neg").unwrap();
    let np = parse_formula("neg(p1)", &neg.signature).unwrap();
    let mut f = Semiframe::new(Domain::closure_of([&np]).unwrap(), vec![vec![true]]);
    f.set_value(0, &Formula::atom(1), true).unwrap();
    f.set_value(0, &np, true).unwrap();
    ensure(!is_legal(&f, &neg).is_legal(), || "contradictory negation frame reported legal".into())?;

    if failures.is_empty() {
        Ok(format!("figure frames legal; {}", report.join(", ")))
    } else {
        Err(format!("{} ({})", failures.join("; "), report.join(", ")))
    }
}

fn definite_restriction() -> Outcome {
    let g = builtin_union(&["imp", "bot", "simp", "aff"], "definite").unwrap();
    let unrestricted = no_coherence_check();
    let definite = DecideOptions {
        saturation: SaturationConfig {
            definite_only: true,
            check_coherence: false,
            ..Default::default()
        },
        countermodel: false,
    };
    ensure(is_coherent(&g).is_coherent(), || "definite system incoherent".into())?;
    let mut instances = 0;
    let mut strictified = 0;
    let mut seen = HashSet::new();
    for u in canonical_domains(&g, 3) {
        let seqs: Vec<Sequent> = sequents_over(&u).into_iter().filter(Sequent::is_definite).collect();
        for s in subsets_upto(&seqs, 1) {
            for goal in &seqs {
                if !seen.insert((s.clone(), goal.clone())) {
                    continue;
                }
                instances += 1;
                let full = decide_with(&g, &s, goal, &unrestricted).map_err(|e| e.to_string())?;
                let strict = decide_with(&g, &s, goal, &definite).map_err(|e| e.to_string())?;
                ensure(full.is_provable() == strict.is_provable(), || {
                    format!("{s:?} / {goal}: unrestricted {full}, definite-only {strict}")
                })?;
                if let Some(d) = strict.proof() {
                    valid_proof(&g, &s, goal, d)?;
                    ensure(is_strict_proof(d), || format!("{goal}: definite-only proof not strict"))?;
                }
                if let Some(d) = full.proof() {
                    let e = strictify(&g, d).map_err(|e| format!("{goal}: {e}"))?;
                    check_derivation(&g, &s, &e).map_err(|e| format!("{goal}: strictified: {e}"))?;
                    ensure(e.conclusion == *goal, || format!("{goal}: strictified conclusion changed"))?;
                    ensure(is_strict_proof(&e), || format!("{goal}: strictified proof not strict"))?;
                    let before: BTreeSet<Formula> = d.cut_formulas();
                    ensure(e.cut_formulas().is_subset(&before), || format!("{goal}: strictify added cut formulas"))?;
                    strictified += 1;
                }
            }
        }
    }
    Ok(format!("{instances} definite instances agree, {strictified} proofs strictified"))
}

fn conservativity_and_analycity() -> Outcome {
    let small = builtin("imp").unwrap();
    let large = builtin_union(&["imp", "neg", "bot", "simp"], "ext").unwrap();
    let opts = no_coherence_check();
    let mut instances = 0;
    let mut seen = HashSet::new();
    for u in canonical_domains(&small, 3) {
        let seqs = sequents_over(&u);
        for s in subsets_upto(&seqs, 1) {
            for goal in &seqs {
                if !seen.insert((s.clone(), goal.clone())) {
                    continue;
                }
                instances += 1;
                let a = decide_with(&small, &s, goal, &opts).map_err(|e| e.to_string())?;
                let b = decide_with(&large, &s, goal, &opts).map_err(|e| e.to_string())?;
                ensure(a.is_provable() == b.is_provable(), || {
                    format!("{s:?} / {goal}: imp {a}, extended {b}")
                })?;
            }
        }
    }

    let u1 = Domain::closure_of(&[Formula::atom(1), Formula::atom(2)]).unwrap();
    let targets = ["simp(p1, p2)", "neg(p1)"].map(|t| parse_formula(t, &large.signature).unwrap());
    let u2 = Domain::closure_of(&targets).unwrap();
    ensure(u2.len() == 4, || format!("target domain has {} formulas", u2.len()))?;
    let family = legal_frames(&large, &u1, 4).map_err(|e| e.to_string())?;
    let mut failures = 0;
    for f in &family {
        match extend_semiframe(&large, f, &u2) {
            Ok(e) => {
                check_semiframe(&e).map_err(|d| format!("{d:?}\n{e}"))?;
                let legal = is_legal(&e, &large);
                ensure(legal.is_legal(), || format!("{legal}\n{e}"))?;
                ensure(e.restrict(&u1).unwrap().valuation == f.valuation, || "extension changed U1".into())?;
            }
            Err(_) => failures += 1,
        }
    }
    ensure(failures == 0, || format!("{failures} of {} semiframes have no extension", family.len()))?;
    Ok(format!(
        "{instances} imp instances agree; {} semiframes over {{p1, p2}} all extend",
        family.len()
    ))
}

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, title: "coherence goldens", budget: Duration::from_secs(1), run: coherence_goldens },
        Criterion { id: 2, title: "classical inconsistency cut counts", budget: Duration::from_secs(1), run: cut_counts },
        Criterion { id: 3, title: "strong consistency fails for circ", budget: Duration::from_secs(1), run: circle_strong_consistency },
        Criterion { id: 4, title: "circ provable sequents", budget: Duration::from_secs(10), run: circle_characterization },
        Criterion { id: 5, title: "decision goldens", budget: Duration::from_secs(10), run: decision_goldens },
        Criterion { id: 6, title: "strong cut-elimination on random systems", budget: Duration::from_secs(60), run: strong_cut_elimination },
        Criterion { id: 7, title: "decision agrees with countermodel search", budget: Duration::from_secs(180), run: oracle_agreement },
        Criterion { id: 8, title: "Kripke semantics goldens", budget: Duration::from_secs(5), run: kripke_goldens },
        Criterion { id: 9, title: "definite-only saturation", budget: Duration::from_secs(30), run: definite_restriction },
        Criterion { id: 10, title: "conservativity and analycity", budget: Duration::from_secs(30), run: conservativity_and_analycity },
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over the {:?} budget", c.budget)),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} [{:>2}] {}: {detail} ({:.2?} of {:?})",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            elapsed,
            c.budget
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
