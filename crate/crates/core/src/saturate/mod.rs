//! Classical saturation: the seven rules applied until nothing changes.

mod engine;
mod rules;

pub use engine::{Config, Label, Order, Stats};
pub use rules::{applicable, apply, rule_instances, RuleId, RuleInstance};

pub(crate) use engine::Engine;

use crate::item::{derivable, Item, State};
use crate::normalize::{normalize, NormalizedOntology};
use crate::ontology::Ontology;
use crate::symbol::ConceptName;

/// A saturated state with the run's counters.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub state: State,
    pub stats: Stats,
}

/// Saturates `normalized` under FIFO order. The goal's left-hand side is
/// added as a context; every name of the normalized signature already is.
pub fn saturate(normalized: &NormalizedOntology, goal: &Item) -> State {
    saturate_with(normalized, Some(goal), Config::default()).state
}

pub fn saturate_with(
    normalized: &NormalizedOntology,
    goal: Option<&Item>,
    config: Config,
) -> Saturation {
    let names: Vec<ConceptName> = normalized.names().iter().copied().collect();
    let mut engine = Engine::<()>::new(
        normalized.items().map(|i| (i.clone(), ())),
        &names,
        goal,
        config,
    );
    engine.run();
    let (items, _, stats, _) = engine.into_parts();
    Saturation {
        state: items.into_iter().collect(),
        stats,
    }
}

/// Full saturation with `X ⊑ X` also added for each of `extra`, so that
/// names outside the signature get a context too.
pub fn saturate_names(
    normalized: &NormalizedOntology,
    extra: impl IntoIterator<Item = ConceptName>,
    config: Config,
) -> Saturation {
    let mut names: Vec<ConceptName> = normalized.names().iter().copied().chain(extra).collect();
    names.sort();
    names.dedup();
    let mut engine = Engine::<()>::new(
        normalized.items().map(|i| (i.clone(), ())),
        &names,
        None,
        config,
    );
    engine.run();
    let (items, _, stats, _) = engine.into_parts();
    Saturation {
        state: items.into_iter().collect(),
        stats,
    }
}

/// Whether `ontology ⊨ c ⊑ d`; `d` may be [`ConceptName::BOTTOM`].
pub fn subsumes(ontology: &Ontology, c: ConceptName, d: ConceptName) -> bool {
    subsumes_normalized(&normalize(ontology), c, d)
}

pub fn subsumes_normalized(
    normalized: &NormalizedOntology,
    c: ConceptName,
    d: ConceptName,
) -> bool {
    let goal = derivable(c, d);
    let config = Config {
        early_exit: true,
        ..Config::default()
    };
    saturate_with(normalized, Some(&goal), config)
        .state
        .entails(c, d)
}
