use crate::error::{Error, Result};
use crate::monotone::{Antichain, Valuation};
use crate::normalize::normalize;
use crate::ontology::Ontology;
use crate::saturate::{saturate_names, subsumes, Config};
use crate::symbol::ConceptName;

pub const DEFAULT_MINA_BOUND: usize = 12;

/// MinAs by calling the classical decision procedure on sub-ontologies,
/// smallest first. Supersets of MinAs already found are skipped, so every
/// entailing subset reached is minimal.
pub fn minas_blackbox(ontology: &Ontology, c: ConceptName, d: ConceptName) -> Result<Antichain> {
    minas_blackbox_bounded(ontology, c, d, DEFAULT_MINA_BOUND)
}

pub fn minas_blackbox_bounded(
    ontology: &Ontology,
    c: ConceptName,
    d: ConceptName,
    bound: usize,
) -> Result<Antichain> {
    if ontology.len() > bound {
        return Err(Error::BoundExceeded {
            what: "ontology size",
            got: ontology.len(),
            bound,
        });
    }
    let all = ontology.label_set();
    if !subsumes(ontology, c, d) {
        return Ok(Antichain::bottom());
    }
    let mut found: Vec<Valuation> = Vec::new();
    for v in all.subsets() {
        if found.iter().any(|m| m.is_subset(&v)) {
            continue;
        }
        if subsumes(&ontology.project(&v), c, d) {
            found.push(v);
        }
    }
    Ok(Antichain::from_sets(found))
}

/// MinAs for several goals at once: each sub-ontology is saturated once and
/// every goal is read off its state.
pub fn minas_blackbox_goals(
    ontology: &Ontology,
    goals: &[(ConceptName, ConceptName)],
) -> Result<Vec<Antichain>> {
    if ontology.len() > DEFAULT_MINA_BOUND {
        return Err(Error::BoundExceeded {
            what: "ontology size",
            got: ontology.len(),
            bound: DEFAULT_MINA_BOUND,
        });
    }
    let mut found: Vec<Vec<Valuation>> = vec![Vec::new(); goals.len()];
    for v in ontology.label_set().subsets() {
        let state = saturate_names(
            &normalize(&ontology.project(&v)),
            goals.iter().map(|g| g.0),
            Config::default(),
        )
        .state;
        for (&(c, d), minas) in goals.iter().zip(&mut found) {
            if !minas.iter().any(|m| m.is_subset(&v)) && state.entails(c, d) {
                minas.push(v.clone());
            }
        }
    }
    Ok(found.into_iter().map(Antichain::from_sets).collect())
}

/// The sub-ontologies entailing `c ⊑ d`, tested one by one.
pub fn entailing_subsets(ontology: &Ontology, c: ConceptName, d: ConceptName) -> Vec<Valuation> {
    ontology
        .label_set()
        .subsets()
        .into_iter()
        .filter(|v| subsumes(&ontology.project(v), c, d))
        .collect()
}
