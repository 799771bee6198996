//! Consequence-based subsumption for ALC with glass-box axiom pinpointing.
//!
//! [`normalize`] rewrites a labelled TBox into normal form, [`saturate`]
//! runs the rule engine, and [`pinpoint`] runs the same engine over
//! formula-labelled states to obtain pinpointing formulas, justifications
//! and repairs. [`oracle`] holds independent checkers used in tests.

pub mod concept;
pub mod error;
pub mod item;
pub mod monotone;
pub mod normalize;
pub mod ontology;
pub mod oracle;
pub mod pinpoint;
pub mod saturate;
pub mod symbol;

pub use concept::Concept;
pub use error::{Error, Result};
pub use item::{derivable, Conjunction, Disjunction, Item, Literal, State};
pub use monotone::{Antichain, MonotoneFormula, Valuation};
pub use normalize::{normalize, NormalizedOntology};
pub use ontology::{LabelledAxiom, Ontology};
pub use pinpoint::{justifications, pinpointing_formula, repairs, Explainer, PinpointingState};
pub use saturate::{saturate, subsumes};
pub use symbol::{AxiomId, ConceptName, RoleName};
