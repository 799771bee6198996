//! Monotone Boolean formulas over axiom identifiers.

mod antichain;
mod formula;
mod valuation;

pub use antichain::Antichain;
pub use formula::MonotoneFormula;
pub use valuation::Valuation;

/// All ⊆-minimal sets meeting every member of `family`.
pub fn minimal_hitting_sets(family: &Antichain) -> Antichain {
    family.minimal_hitting_sets()
}
