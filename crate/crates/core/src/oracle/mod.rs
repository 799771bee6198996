//! Checkers that do not share code with the glass-box engine: a finite
//! model checker, bounded model search, black-box MinA enumeration, type
//! elimination, and a random ontology generator for cross-checks.

mod blackbox;
mod interp;
mod models;
mod random;
mod sat;
mod types;

pub use blackbox::{
    entailing_subsets, minas_blackbox, minas_blackbox_bounded, minas_blackbox_goals,
    DEFAULT_MINA_BOUND,
};
pub use interp::{eval_concept, is_model, satisfies_gci, Elements, Interpretation, MAX_ELEMENTS};
pub use models::{
    enumerate_models, Countermodels, ModelSearch, Models, DEFAULT_MAX_DOMAIN, MAX_DOMAIN_BOUND,
};
pub use random::{corpus, random_ontology, Generator, GeneratorConfig, MAX_CORPUS_NAMES};
pub use types::{subsumes_by_types, TypeElimination, MAX_ATOMS};

use crate::ontology::Ontology;
use crate::symbol::ConceptName;

/// Every goal `C ⊑ D` and `C ⊑ ⊥` over the names of `ontology`, `C ≠ D`.
pub fn name_goals(ontology: &Ontology) -> Vec<(ConceptName, ConceptName)> {
    let names: Vec<ConceptName> = ontology
        .signature()
        .0
        .into_iter()
        .filter(|n| !n.is_bottom())
        .collect();
    let mut out = Vec::new();
    for &c in &names {
        out.push((c, ConceptName::BOTTOM));
        out.extend(names.iter().filter(|&&d| d != c).map(|&d| (c, d)));
    }
    out
}
