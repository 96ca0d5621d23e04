use std::path::Path;

use canonseq_core::coherence::{is_coherent, strong_consistency_assumptions};
use canonseq_core::decision::{bounded_search_unrestricted, decide, decide_with, BoundedOutcome, DecideOptions};
use canonseq_core::kripke::{
    countermodel_search, enumerate_legal_extensions, extend_semiframe, frame_from_json, is_legal, ExtendError,
    Semiframe,
};
use canonseq_core::rules::builtin_systems;
use canonseq_core::syntax::Domain;
use canonseq_core::{builtin, parse_formula, parse_sequent, Formula, Sequent, Theory};

fn figure(name: &str) -> Semiframe {
    let g = builtin("cni").unwrap();
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    let v = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    frame_from_json(&g.signature, &v).unwrap()
}

#[test]
fn coherence_matches_strong_consistency() {
    let s = strong_consistency_assumptions();
    let empty = Sequent::empty();
    for entry in builtin_systems() {
        let g = &entry.system;
        if is_coherent(g).is_coherent() {
            assert!(!decide(g, &s, &empty).unwrap().is_provable(), "{}", g.name);
        } else {
            let pool: Theory = [Formula::atom(1), Formula::atom(2)].into();
            let found = bounded_search_unrestricted(g, &s, &empty, &pool, 4).unwrap();
            let pool = if found.is_found() {
                pool
            } else {
                let mut p = pool;
                for f in g.signature.iter() {
                    if f.arity == 1 {
                        p.insert(Formula::compound(&f.name, vec![Formula::atom(2)]));
                    }
                }
                p
            };
            assert!(bounded_search_unrestricted(g, &s, &empty, &pool, 4).unwrap().is_found(), "{}", g.name);
        }
    }
}

#[test]
fn circle_needs_an_outside_cut() {
    let g = builtin("circ").unwrap();
    let s = [parse_sequent("p1 =>", &g.signature).unwrap()];
    let empty = Sequent::empty();
    let only_p1: Theory = [Formula::atom(1)].into();
    assert!(matches!(
        bounded_search_unrestricted(&g, &s, &empty, &only_p1, 8).unwrap(),
        BoundedOutcome::NotFound
    ));
}

#[test]
fn search_examples() {
    let seq = |name: &str, t: &str| {
        let g = builtin(name).unwrap();
        let s = parse_sequent(t, &g.signature).unwrap();
        (g, s)
    };
    let (g, s) = seq("waff", "waff(p1) => p1");
    assert!(countermodel_search(&g, &[], &s, 2).unwrap().is_some());
    assert!(countermodel_search(&g, &[], &s, 1).unwrap().is_none());
    let (g, s) = seq("imp", "=> imp(p1, p1)");
    assert!(countermodel_search(&g, &[], &s, 8).unwrap().is_none());
    let (g, s) = seq("aff", "aff(p1) => p1");
    assert!(countermodel_search(&g, &[], &s, 4).unwrap().is_none());
}

#[test]
fn canonical_countermodel_for_weak_affirmation() {
    let g = builtin("waff").unwrap();
    let goal = parse_sequent("waff(p1) => p1", &g.signature).unwrap();
    let opts = DecideOptions {
        countermodel: true,
        ..Default::default()
    };
    let out = decide_with(&g, &[], &goal, &opts).unwrap();
    let f = out.countermodel().unwrap();
    let p = Formula::atom(1);
    let wp = parse_formula("waff(p1)", &g.signature).unwrap();
    let low = f
        .worlds()
        .find(|&a| f.value(a, &wp).unwrap() && !f.value(a, &p).unwrap())
        .expect("a world with waff(p1) true and p1 false");
    assert!(f.above(low).any(|b| b != low && f.value(b, &p).unwrap()));
}

#[test]
fn canonical_countermodel_refutes_at_root() {
    for entry in builtin_systems() {
        let g = &entry.system;
        if !is_coherent(g).is_coherent() {
            continue;
        }
        let goal = parse_sequent("p1 => p2", &g.signature).unwrap();
        let opts = DecideOptions {
            countermodel: true,
            ..Default::default()
        };
        let f = decide_with(g, &[], &goal, &opts).unwrap().countermodel().unwrap().clone();
        assert!(f.value(0, &Formula::atom(1)).unwrap());
        assert!(!f.value(0, &Formula::atom(2)).unwrap());
    }
}

#[test]
fn semi_implication_extension_is_forced_by_the_consequent() {
    let g = builtin("simp").unwrap();
    let u1 = Domain::closure_of(&[Formula::atom(1), Formula::atom(2)]).unwrap();
    let phi = parse_formula("simp(p1, p2)", &g.signature).unwrap();
    let u2 = Domain::closure_of([&phi]).unwrap();
    let mut f = Semiframe::new(u1, vec![vec![true, true], vec![false, true]]);
    f.set_value(1, &Formula::atom(2), true).unwrap();
    for e in enumerate_legal_extensions(&g, &f, &u2).unwrap() {
        assert!(e.value(1, &phi).unwrap());
    }
    let e = extend_semiframe(&g, &f, &u2).unwrap();
    assert!(is_legal(&e, &g).is_legal());
}

#[test]
fn extending_to_the_same_domain_is_the_identity() {
    let g = builtin("cni").unwrap();
    let f = figure("cni-figure-a.json");
    let e = extend_semiframe(&g, &f, &f.domain.clone()).unwrap();
    assert_eq!(e, f);
}

#[test]
fn figure_frames_are_both_extensions_of_their_atoms() {
    let g = builtin("cni").unwrap();
    let a = figure("cni-figure-a.json");
    let b = figure("cni-figure-b.json");
    let atoms = Domain::closure_of(&[Formula::atom(1), Formula::atom(2)]).unwrap();
    let base = a.restrict(&atoms).unwrap();
    assert_eq!(base, b.restrict(&atoms).unwrap());
    let all = enumerate_legal_extensions(&g, &base, &a.domain).unwrap();
    assert!(all.contains(&a));
    assert!(all.contains(&b));
    assert_eq!(all.len(), 2);
}

#[test]
fn extension_failures() {
    let g = builtin("cni").unwrap();
    let f = figure("cni-figure-a.json");
    let smaller = Domain::closure_of(&[Formula::atom(1)]).unwrap();
    assert!(matches!(extend_semiframe(&g, &f, &smaller), Err(ExtendError::NotSuperset(_))));

    // circ frames with p1 false have no legal value for circ(p1)
    let circ = builtin("circ").unwrap();
    let u1 = Domain::closure_of(&[Formula::atom(1)]).unwrap();
    let u2 = Domain::closure_of([&parse_formula("circ(p1)", &circ.signature).unwrap()]).unwrap();
    let f = Semiframe::new(u1, vec![vec![true]]);
    assert_eq!(extend_semiframe(&circ, &f, &u2), Err(ExtendError::NoExtension));
}
