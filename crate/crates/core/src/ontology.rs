use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexMap;

use crate::concept::Concept;
use crate::error::{Error, Result};
use crate::monotone::Valuation;
use crate::symbol::{AxiomId, ConceptName, RoleName};

/// A GCI `lhs ⊑ rhs` carrying the identifier of the axiom.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabelledAxiom {
    pub lhs: Concept,
    pub rhs: Concept,
    pub label: AxiomId,
}

impl LabelledAxiom {
    pub fn new(label: impl Into<AxiomId>, lhs: Concept, rhs: Concept) -> Self {
        Self {
            lhs,
            rhs,
            label: label.into(),
        }
    }
}

impl fmt::Display for LabelledAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} [= {}", self.label, self.lhs, self.rhs)
    }
}

impl fmt::Debug for LabelledAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite set of labelled GCIs, kept in insertion order.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Ontology {
    axioms: IndexMap<AxiomId, LabelledAxiom>,
}

impl Ontology {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts an axiom. Re-inserting an identical axiom is a no-op; reusing
    /// a label for a different GCI is an error.
    pub fn insert(&mut self, axiom: LabelledAxiom) -> Result<()> {
        match self.axioms.get(&axiom.label) {
            Some(existing) if *existing == axiom => Ok(()),
            Some(_) => Err(Error::DuplicateLabel(axiom.label)),
            None => {
                self.axioms.insert(axiom.label, axiom);
                Ok(())
            }
        }
    }

    pub fn from_axioms(axioms: impl IntoIterator<Item = LabelledAxiom>) -> Result<Self> {
        let mut ontology = Self::new();
        for axiom in axioms {
            ontology.insert(axiom)?;
        }
        Ok(ontology)
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LabelledAxiom> {
        self.axioms.values()
    }

    pub fn get(&self, label: AxiomId) -> Option<&LabelledAxiom> {
        self.axioms.get(&label)
    }

    pub fn contains(&self, label: AxiomId) -> bool {
        self.axioms.contains_key(&label)
    }

    pub fn labels(&self) -> impl Iterator<Item = AxiomId> + '_ {
        self.axioms.keys().copied()
    }

    /// All labels as a valuation (every axiom switched on).
    pub fn label_set(&self) -> Valuation {
        self.labels().collect()
    }

    /// Concept and role names occurring in the axioms.
    pub fn signature(&self) -> (BTreeSet<ConceptName>, BTreeSet<RoleName>) {
        let mut names = BTreeSet::new();
        let mut roles = BTreeSet::new();
        for axiom in self.iter() {
            for c in [&axiom.lhs, &axiom.rhs] {
                names.extend(c.concept_names());
                roles.extend(c.role_names());
            }
        }
        (names, roles)
    }

    /// The sub-ontology of axioms whose labels are true in `valuation`.
    pub fn project(&self, valuation: &Valuation) -> Ontology {
        Ontology {
            axioms: self
                .axioms
                .iter()
                .filter(|(label, _)| valuation.contains(**label))
                .map(|(label, axiom)| (*label, axiom.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for Ontology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for axiom in self.iter() {
            writeln!(f, "{axiom}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Ontology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

/// The running example: `a1: A ⊑ ∃r.A`, `a2: ∃r.A ⊑ B`, `a3: A ⊑ ∀r.B`,
/// `a4: A ⊓ B ⊑ ⊥`.
pub fn texa() -> Ontology {
    let a = || Concept::name("A");
    let b = || Concept::name("B");
    Ontology::from_axioms([
        LabelledAxiom::new("a1", a(), Concept::exists("r", a())),
        LabelledAxiom::new("a2", Concept::exists("r", a()), b()),
        LabelledAxiom::new("a3", a(), Concept::forall("r", b())),
        LabelledAxiom::new("a4", Concept::and(a(), b()), Concept::bot()),
    ])
    .expect("labels are distinct")
}

/// The variant whose first axiom `A ⊑ ∃r.A ⊓ ∀r.B` needs normalizing.
pub fn texa_prime() -> Ontology {
    let a = || Concept::name("A");
    let b = || Concept::name("B");
    Ontology::from_axioms([
        LabelledAxiom::new(
            "a1",
            a(),
            Concept::and(Concept::exists("r", a()), Concept::forall("r", b())),
        ),
        LabelledAxiom::new("a2", Concept::exists("r", a()), b()),
        LabelledAxiom::new("a4", Concept::and(a(), b()), Concept::bot()),
    ])
    .expect("labels are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_of_texa() {
        let (names, roles) = texa().signature();
        assert_eq!(
            names,
            BTreeSet::from([ConceptName::new("A"), ConceptName::new("B")])
        );
        assert_eq!(roles, BTreeSet::from([RoleName::new("r")]));
    }

    #[test]
    fn signature_of_empty() {
        let (names, roles) = Ontology::new().signature();
        assert!(names.is_empty() && roles.is_empty());
    }

    #[test]
    fn signature_of_compound_axiom() {
        let a = Concept::name("A");
        let o = Ontology::from_axioms([LabelledAxiom::new(
            "p",
            a.clone(),
            Concept::and(
                Concept::exists("r", a),
                Concept::forall("r", Concept::name("B")),
            ),
        )])
        .unwrap();
        let (names, roles) = o.signature();
        assert_eq!(names.len(), 2);
        assert_eq!(roles.len(), 1);
    }

    #[test]
    fn labels_stay_unique() {
        let mut o = texa();
        let dup = LabelledAxiom::new("a1", Concept::name("B"), Concept::name("A"));
        assert!(matches!(o.insert(dup), Err(Error::DuplicateLabel(_))));
        let same = o.get(AxiomId::new("a1")).unwrap().clone();
        o.insert(same).unwrap();
        assert_eq!(o.len(), 4);
    }

    #[test]
    fn projection_keeps_selected_axioms() {
        let o = texa();
        let v: Valuation = ["a1", "a4"].into_iter().map(AxiomId::new).collect();
        let p = o.project(&v);
        assert_eq!(
            p.labels().collect::<Vec<_>>(),
            vec![AxiomId::new("a1"), AxiomId::new("a4")]
        );
    }
}
