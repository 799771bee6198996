//! Cross-checks between the engine and the independent oracles over the
//! seeded corpus of random ontologies.

use alc_pinpoint::concept::Concept;
use alc_pinpoint::oracle::{
    corpus, enumerate_models, eval_concept, name_goals, subsumes_by_types, ModelSearch,
    TypeElimination,
};
use alc_pinpoint::saturate::{saturate_names, saturate_with, Config, Order};
use alc_pinpoint::{normalize, subsumes, Explainer, Item, NormalizedOntology};

#[test]
fn classical_subsumption_matches_type_elimination() {
    let mut checked = 0;
    for (seed, o) in corpus(80) {
        let Ok(types) = TypeElimination::new(&o, []) else {
            continue;
        };
        for (c, d) in name_goals(&o) {
            assert_eq!(
                subsumes(&o, c, d),
                types.subsumes(c, d).unwrap(),
                "seed {seed}, {c} ⊑ {d}\n{o:?}"
            );
            checked += 1;
        }
    }
    assert!(checked > 800, "only {checked} goals");
}

#[test]
fn sub_ontologies_match_type_elimination() {
    for (seed, o) in corpus(25) {
        for v in o.label_set().subsets() {
            let p = o.project(&v);
            for (c, d) in name_goals(&o) {
                let Ok(expected) = subsumes_by_types(&p, c, d) else {
                    continue;
                };
                assert_eq!(
                    subsumes(&p, c, d),
                    expected,
                    "seed {seed}, {v}, {c} ⊑ {d}\n{p:?}"
                );
            }
        }
    }
}

#[test]
fn normalization_commutes_with_projection() {
    for (seed, o) in corpus(25) {
        let n = normalize(&o);
        let goals = name_goals(&o);
        for v in o.label_set().subsets() {
            let after =
                saturate_names(&n.project(&v), goals.iter().map(|g| g.0), Config::default());
            let p = o.project(&v);
            for &(c, d) in &goals {
                assert_eq!(
                    after.state.entails(c, d),
                    subsumes(&p, c, d),
                    "seed {seed}, {v}, {c} ⊑ {d}"
                );
            }
        }
    }
}

#[test]
fn countermodels_refute_only_non_subsumptions() {
    let mut refuted = 0;
    for (seed, o) in corpus(50) {
        let mut search = ModelSearch::new(&o).countermodels();
        for (c, d) in name_goals(&o) {
            let found = search.find(&Concept::name(c), &Concept::name(d));
            if found.is_some() {
                assert!(!subsumes(&o, c, d), "seed {seed}, {c} ⊑ {d}");
                refuted += 1;
            }
        }
    }
    assert!(refuted > 250, "{refuted}");
}

/// Replaces fresh names by their definitions so the concept can be read in
/// models of the input.
fn expand(c: &Concept, n: &NormalizedOntology) -> Concept {
    match c {
        Concept::Name(x) => n
            .fresh_definition(*x)
            .map(|d| expand(d, n))
            .unwrap_or_else(|| c.clone()),
        Concept::Not(x) => Concept::not(expand(x, n)),
        Concept::And(x, y) => Concept::and(expand(x, n), expand(y, n)),
        Concept::Exists(r, x) => Concept::exists(*r, expand(x, n)),
    }
}

#[test]
fn enumerated_models_satisfy_saturated_clauses() {
    let mut models = 0;
    for (seed, o) in corpus(30) {
        let n = normalize(&o);
        let state = saturate_with(&n, None, Config::default()).state;
        let clauses: Vec<(Concept, Concept)> = state
            .iter()
            .filter(|i| matches!(i, Item::Clause { .. }))
            .map(|i| {
                let (l, r) = i.to_gci();
                (expand(&l, &n), expand(&r, &n))
            })
            .collect();
        for m in enumerate_models(&o, 2).unwrap().take(500) {
            for (l, r) in &clauses {
                let (l, r) = (eval_concept(&m, l).unwrap(), eval_concept(&m, r).unwrap());
                assert!(l.is_subset(r), "seed {seed}: {m}");
            }
            models += 1;
        }
    }
    assert!(models > 1000, "{models}");
}

#[test]
fn classical_saturation_is_confluent() {
    for (seed, o) in corpus(40) {
        let n = normalize(&o);
        let fifo = saturate_with(&n, None, Config::default());
        for k in 0..10 {
            let other = saturate_with(
                &n,
                None,
                Config {
                    order: Order::Random(k),
                    ..Config::default()
                },
            );
            assert!(other.state == fifo.state, "seed {seed}, order {k}");
            assert_eq!(other.stats.additions, fifo.stats.additions);
        }
    }
}

#[test]
fn formulas_mention_only_input_labels() {
    for (seed, o) in corpus(100) {
        let e = Explainer::new(&o);
        let labels = o.label_set();
        for (c, d) in name_goals(&o) {
            assert!(
                e.formula(c, d).variables().is_subset(&labels),
                "seed {seed}"
            );
        }
    }
}
