use std::collections::BTreeSet;
use std::sync::OnceLock;

use alc_pinpoint::monotone::minimal_hitting_sets;
use alc_pinpoint::oracle::{corpus, name_goals};
use alc_pinpoint::pinpoint::{pin_applicable, pin_saturate_with, PinpointingState};
use alc_pinpoint::saturate::{applicable, rule_instances, Config};
use alc_pinpoint::{
    normalize, subsumes, Antichain, AxiomId, Concept, ConceptName, Conjunction, Disjunction, Item,
    LabelledAxiom, Literal, MonotoneFormula, Ontology, RoleName, Valuation,
};
use proptest::prelude::*;
use proptest::sample::subsequence;

const NAMES: [&str; 4] = ["A", "B", "C", "D"];
const VARS: usize = 6;

const CORPUS: usize = 200;

fn corpus_ontologies() -> &'static [Ontology] {
    static CELL: OnceLock<Vec<Ontology>> = OnceLock::new();
    CELL.get_or_init(|| corpus(CORPUS).into_iter().map(|(_, o)| o).collect())
}

fn name() -> impl Strategy<Value = ConceptName> {
    (0..NAMES.len()).prop_map(|i| ConceptName::new(NAMES[i]))
}

fn role() -> impl Strategy<Value = RoleName> {
    prop_oneof![Just(RoleName::new("r")), Just(RoleName::new("s"))]
}

fn literal() -> impl Strategy<Value = Literal> {
    (name(), any::<bool>()).prop_map(|(n, neg)| {
        if neg {
            Literal::neg(n)
        } else {
            Literal::pos(n)
        }
    })
}

fn var(i: usize) -> AxiomId {
    AxiomId::new(&format!("v{i}"))
}

fn formula() -> impl Strategy<Value = MonotoneFormula> {
    let leaf = prop_oneof![
        1 => Just(MonotoneFormula::True),
        1 => Just(MonotoneFormula::False),
        8 => (0..VARS).prop_map(|i| MonotoneFormula::Var(var(i))),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(MonotoneFormula::conj),
            prop::collection::vec(inner, 2..4).prop_map(MonotoneFormula::disj),
        ]
    })
}

fn valuation() -> impl Strategy<Value = Valuation> {
    subsequence((0..VARS).collect::<Vec<_>>(), 0..=VARS)
        .prop_map(|ids| ids.into_iter().map(var).collect())
}

fn all_valuations() -> Vec<Valuation> {
    (0..VARS).map(var).collect::<Valuation>().subsets()
}

fn antichain() -> impl Strategy<Value = Antichain> {
    prop::collection::vec(valuation(), 1..5).prop_map(Antichain::from_sets)
}

/// Normal-form axioms as produced for input TBoxes: positive names only.
fn normal_item() -> impl Strategy<Value = Item> {
    let names = || prop::collection::btree_set(name(), 0..3);
    prop_oneof![
        (names(), names())
            .prop_filter("not a tautology", |(h, m)| h.is_disjoint(m))
            .prop_map(|(h, m)| Item::clause(Conjunction::of_names(h), Disjunction::new(m))),
        (name(), role(), name()).prop_map(|(a, r, b)| Item::exists(a, r, b)),
        (name(), role(), name()).prop_map(|(a, r, b)| Item::Forall {
            lhs: a,
            role: r,
            filler: b
        }),
        (role(), name(), name()).prop_map(|(r, a, b)| Item::ExLeft {
            role: r,
            filler: a,
            rhs: b
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn items_ignore_literal_order(lits in prop::collection::vec(literal(), 0..5), names in prop::collection::vec(name(), 0..5), r in role()) {
        let mut rev_lits = lits.clone();
        rev_lits.reverse();
        let mut rev_names = names.clone();
        rev_names.reverse();
        let a = Item::ex_clause(Conjunction::new(lits.clone()), Disjunction::new(names.clone()), r, Conjunction::new(rev_lits.clone()));
        let b = Item::ex_clause(Conjunction::new(rev_lits), Disjunction::new(rev_names), r, Conjunction::new(lits));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn labels_stay_unique(lhs in name(), rhs in name(), other in name()) {
        let mut o = Ontology::new();
        o.insert(LabelledAxiom::new("p", Concept::name(lhs), Concept::name(rhs))).unwrap();
        let again = o.insert(LabelledAxiom::new("p", Concept::name(lhs), Concept::name(rhs)));
        prop_assert!(again.is_ok());
        let clash = o.insert(LabelledAxiom::new("p", Concept::name(other), Concept::exists("r", Concept::name(rhs))));
        prop_assert!(clash.is_err());
        prop_assert_eq!(o.len(), 1);
    }

    #[test]
    fn normal_input_normalizes_to_itself(items in prop::collection::vec(normal_item(), 1..6)) {
        let axioms = items.iter().enumerate().map(|(i, item)| {
            let (l, r) = item.to_gci();
            LabelledAxiom::new(format!("x{i}").as_str(), l, r)
        });
        let o = Ontology::from_axioms(axioms).unwrap();
        let n = normalize(&o);
        let expected: BTreeSet<&Item> = items.iter().collect();
        let got: BTreeSet<&Item> = n.items().collect();
        prop_assert_eq!(got, expected);
        prop_assert_eq!(n.fresh_names().count(), 0);
        for (i, item) in items.iter().enumerate() {
            let label = AxiomId::new(&format!("x{}", i));
            prop_assert!(n.seed(item).unwrap().variables().contains(label));
        }
    }

    #[test]
    fn evaluation_is_monotone(f in formula(), v in valuation(), w in valuation()) {
        let bigger = v.union(&w);
        prop_assert!(!f.evaluate(&v) || f.evaluate(&bigger));
    }

    #[test]
    fn minimal_models_are_minimal(f in formula()) {
        let mins = f.minimal_models();
        let members: Vec<&Valuation> = mins.iter().collect();
        for m in &members {
            prop_assert!(f.evaluate(m));
            prop_assert!(!members.iter().any(|o| o != m && o.is_subset(m)));
            for x in m.iter() {
                let mut smaller = (*m).clone();
                smaller.remove(x);
                prop_assert!(!f.evaluate(&smaller));
            }
        }
        for v in all_valuations() {
            prop_assert_eq!(f.evaluate(&v), members.iter().any(|m| m.is_subset(&v)));
        }
    }

    #[test]
    fn entailment_via_minimal_models(f in formula(), g in formula()) {
        let by_models = f.minimal_models().iter().all(|m| g.evaluate(m));
        let by_table = all_valuations().iter().all(|v| !f.evaluate(v) || g.evaluate(v));
        prop_assert_eq!(f.entails(&g), by_models);
        prop_assert_eq!(f.entails(&g), by_table);
        prop_assert_eq!(f.equivalent(&g), f.entails(&g) && g.entails(&f));
    }

    #[test]
    fn hitting_sets_are_dual(x in antichain()) {
        prop_assume!(!x.is_bottom() && !x.is_top());
        prop_assert_eq!(minimal_hitting_sets(&minimal_hitting_sets(&x)), x);
    }

    #[test]
    fn more_axioms_entail_more(pick in any::<prop::sample::Index>(), cut in 0usize..6) {
        let o = &corpus_ontologies()[pick.index(CORPUS)];
        let smaller: Valuation = o.labels().take(cut).collect();
        let sub = o.project(&smaller);
        for (c, d) in name_goals(o) {
            prop_assert!(!subsumes(&sub, c, d) || subsumes(o, c, d));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// On any state pair (labelled state, its projection), a classically
    /// applicable instance is pinpointing applicable.
    #[test]
    fn classical_applicability_lifts(which in any::<prop::sample::Index>(), keep in prop::collection::vec(any::<bool>(), 64), pick in any::<prop::sample::Index>()) {
        let o = &corpus_ontologies()[which.index(CORPUS)];
        let n = normalize(o);
        let (full, _) = pin_saturate_with(&n, None, Config::default());
        let mut p = PinpointingState::new();
        for (k, (item, label)) in full.iter().enumerate() {
            if keep[k % keep.len()] {
                p.set(item.clone(), label.clone());
            }
        }
        let subsets = o.label_set().subsets();
        let v = &subsets[pick.index(subsets.len())];
        let projected = p.project(v);
        for inst in rule_instances(&projected) {
            prop_assert!(applicable(&inst, &projected));
            prop_assert!(pin_applicable(&inst, &p), "{inst} at {v}");
        }
    }
}
