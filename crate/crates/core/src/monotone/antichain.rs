use std::cmp::Ordering;
use std::fmt;

use super::{MonotoneFormula, Valuation};
use crate::symbol::{by_spelling, AxiomId};

/// A family of valuations none of which contains another.
///
/// An antichain is the canonical form of a monotone formula: the formula's
/// ⊆-minimal models. Members are kept sorted, so two antichains are equal
/// exactly when the formulas they stand for are equivalent. The empty
/// antichain is ⊥ and `{∅}` is ⊤.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Antichain {
    sets: Vec<Valuation>,
}

impl Antichain {
    pub fn bottom() -> Self {
        Self { sets: Vec::new() }
    }

    pub fn top() -> Self {
        Self {
            sets: vec![Valuation::new()],
        }
    }

    pub fn var(id: AxiomId) -> Self {
        Self {
            sets: vec![Valuation::singleton(id)],
        }
    }

    /// Minimal members of an arbitrary family.
    pub fn from_sets(sets: impl IntoIterator<Item = Valuation>) -> Self {
        let mut all: Vec<Valuation> = sets.into_iter().collect();
        all.sort_by(Valuation::canonical_cmp);
        all.dedup();
        let mut kept: Vec<Valuation> = Vec::with_capacity(all.len());
        for s in all {
            if !kept.iter().any(|k| k.is_subset(&s)) {
                kept.push(s);
            }
        }
        Self { sets: kept }
    }

    pub fn is_bottom(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.sets.len() == 1 && self.sets[0].is_empty()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Valuation> {
        self.sets.iter()
    }

    pub fn contains_set(&self, set: &Valuation) -> bool {
        self.sets.contains(set)
    }

    /// Whether `valuation` satisfies the formula this antichain denotes.
    pub fn satisfied_by(&self, valuation: &Valuation) -> bool {
        self.sets.iter().any(|m| m.is_subset(valuation))
    }

    /// `self ⊨ other`: every minimal model of `self` satisfies `other`.
    pub fn entails(&self, other: &Antichain) -> bool {
        self.sets.iter().all(|m| other.satisfied_by(m))
    }

    pub fn or(&self, other: &Antichain) -> Antichain {
        Antichain::from_sets(self.sets.iter().chain(other.sets.iter()).cloned())
    }

    pub fn and(&self, other: &Antichain) -> Antichain {
        if self.is_top() {
            return other.clone();
        }
        if other.is_top() {
            return self.clone();
        }
        Antichain::from_sets(
            self.sets
                .iter()
                .flat_map(|a| other.sets.iter().map(move |b| a.union(b))),
        )
    }

    pub fn and_all<'a>(parts: impl IntoIterator<Item = &'a Antichain>) -> Antichain {
        parts
            .into_iter()
            .fold(Antichain::top(), |acc, p| acc.and(p))
    }

    /// Replaces `self` by `self ∨ other`; returns whether the formula became
    /// strictly weaker.
    pub fn absorb(&mut self, other: &Antichain) -> bool {
        let fresh: Vec<&Valuation> = other
            .sets
            .iter()
            .filter(|m| !self.satisfied_by(m))
            .collect();
        if fresh.is_empty() {
            return false;
        }
        let mut sets: Vec<Valuation> = fresh.into_iter().cloned().collect();
        sets.extend(
            self.sets
                .iter()
                .filter(|s| !sets_contain_subset(&other.sets, s))
                .cloned(),
        );
        *self = Antichain::from_sets(sets);
        true
    }

    /// All ⊆-minimal sets meeting every member. The empty family yields
    /// `{∅}`; a family containing ∅ yields nothing.
    pub fn minimal_hitting_sets(&self) -> Antichain {
        // Hitting sets of a family are the models of the CNF whose clauses
        // are its members.
        self.sets.iter().fold(Antichain::top(), |acc, s| {
            let clause = Antichain {
                sets: s.iter().map(Valuation::singleton).collect(),
            };
            acc.and(&clause)
        })
    }

    /// `universe ∖ m` for every member, e.g. repairs from diagnoses.
    pub fn complements(&self, universe: &Valuation) -> Vec<Valuation> {
        self.sets.iter().map(|s| universe.difference(s)).collect()
    }

    /// Members in display order: each member sorted by spelling, members
    /// compared lexicographically on those spellings.
    pub fn sorted(&self) -> Vec<Vec<AxiomId>> {
        let mut v: Vec<Vec<AxiomId>> = self.sets.iter().map(Valuation::sorted).collect();
        v.sort_by(|a, b| cmp_spelled(a, b));
        v
    }

    /// Minimal-model disjunctive normal form.
    pub fn to_formula(&self) -> MonotoneFormula {
        MonotoneFormula::disj(
            self.sorted()
                .into_iter()
                .map(|m| MonotoneFormula::conj(m.into_iter().map(MonotoneFormula::Var))),
        )
    }
}

fn sets_contain_subset(sets: &[Valuation], s: &Valuation) -> bool {
    sets.iter().any(|m| m.is_subset(s) && m != s)
}

fn cmp_spelled(a: &[AxiomId], b: &[AxiomId]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match by_spelling(x, y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    a.len().cmp(&b.len())
}

impl FromIterator<Valuation> for Antichain {
    fn from_iter<I: IntoIterator<Item = Valuation>>(iter: I) -> Self {
        Antichain::from_sets(iter)
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

impl fmt::Debug for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.sorted().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let v: Valuation = m.iter().copied().collect();
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(names: &[&str]) -> Valuation {
        names.iter().map(|n| AxiomId::new(n)).collect()
    }

    fn fam(sets: &[&[&str]]) -> Antichain {
        sets.iter().map(|s| v(s)).collect()
    }

    #[test]
    fn minimization() {
        let a = fam(&[&["x1", "x2"], &["x1"], &["x3"]]);
        assert_eq!(a, fam(&[&["x1"], &["x3"]]));
    }

    #[test]
    fn absorb_reports_strict_weakening() {
        let mut a = fam(&[&["x1", "x2"]]);
        assert!(!a.absorb(&fam(&[&["x1", "x2", "x3"]])));
        assert!(a.absorb(&fam(&[&["x3"]])));
        assert_eq!(a, fam(&[&["x1", "x2"], &["x3"]]));
        assert!(a.absorb(&fam(&[&["x1"]])));
        assert_eq!(a, fam(&[&["x1"], &["x3"]]));
    }

    #[test]
    fn hitting_sets_of_texa_justifications() {
        let js = fam(&[&["a1", "a2", "a4"], &["a1", "a3", "a4"]]);
        assert_eq!(
            js.minimal_hitting_sets(),
            fam(&[&["a1"], &["a4"], &["a2", "a3"]])
        );
        assert_eq!(fam(&[&["a1"]]).minimal_hitting_sets(), fam(&[&["a1"]]));
        assert_eq!(Antichain::bottom().minimal_hitting_sets(), Antichain::top());
        assert_eq!(Antichain::top().minimal_hitting_sets(), Antichain::bottom());
    }

    #[test]
    fn formula_rendering() {
        let js = fam(&[&["a1", "a3", "a4"], &["a1", "a2", "a4"]]);
        assert_eq!(js.to_string(), "(a1 & a2 & a4) | (a1 & a3 & a4)");
        assert_eq!(Antichain::top().to_string(), "true");
        assert_eq!(Antichain::bottom().to_string(), "false");
        assert_eq!(fam(&[&["a4", "a1"]]).to_string(), "a1 & a4");
    }
}
