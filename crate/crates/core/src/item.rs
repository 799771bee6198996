//! Normal-form axioms and derived consequences.
//!
//! Left-hand contexts are conjunctions of literals (the empty conjunction is
//! ⊤) and right-hand sides are disjunctions of concept names (the empty
//! disjunction is ⊥). Both are kept as sorted, duplicate-free vectors, so
//! structural equality is set equality.

use std::collections::HashSet;
use std::fmt;

use crate::concept::Concept;
use crate::symbol::{by_spelling, ConceptName, RoleName};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub name: ConceptName,
    pub negated: bool,
}

impl Literal {
    pub fn pos(name: impl Into<ConceptName>) -> Self {
        Self {
            name: name.into(),
            negated: false,
        }
    }

    pub fn neg(name: impl Into<ConceptName>) -> Self {
        Self {
            name: name.into(),
            negated: true,
        }
    }

    pub fn complement(self) -> Self {
        Self {
            negated: !self.negated,
            ..self
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬{}", self.name)
        } else {
            write!(f, "{}", self.name)
        }
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A conjunction of literals `H`/`K`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Conjunction(Vec<Literal>);

impl Conjunction {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Self {
        let mut v: Vec<Literal> = literals.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn top() -> Self {
        Self(Vec::new())
    }

    pub fn of_names(names: impl IntoIterator<Item = ConceptName>) -> Self {
        Self::new(names.into_iter().map(|name| Literal {
            name,
            negated: false,
        }))
    }

    pub fn single(name: ConceptName) -> Self {
        Self(vec![Literal::pos(name)])
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, literal: Literal) -> bool {
        self.0.binary_search(&literal).is_ok()
    }

    pub fn positives(&self) -> impl Iterator<Item = ConceptName> + '_ {
        self.0.iter().filter(|l| !l.negated).map(|l| l.name)
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| !l.negated)
    }

    /// Contains some `A` together with `¬A`.
    pub fn is_complementary(&self) -> bool {
        self.0.windows(2).any(|w| w[0].name == w[1].name)
    }

    /// `⊓` of the literals; `⊤` when empty.
    pub fn to_concept(&self) -> Concept {
        Concept::and_all(self.0.iter().map(|l| {
            let c = Concept::name(l.name);
            if l.negated {
                Concept::not(c)
            } else {
                c
            }
        }))
    }

    pub fn with(&self, literal: Literal) -> Self {
        let mut v = self.0.clone();
        if let Err(at) = v.binary_search(&literal) {
            v.insert(at, literal);
        }
        Self(v)
    }
}

impl FromIterator<Literal> for Conjunction {
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Self {
        Self::new(iter)
    }
}

impl fmt::Display for Conjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("⊤");
        }
        let mut lits = self.0.clone();
        lits.sort_by(|a, b| by_spelling(&a.name, &b.name).then(a.negated.cmp(&b.negated)));
        for (i, l) in lits.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊓ ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Conjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A disjunction of concept names `M`/`N`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Disjunction(Vec<ConceptName>);

impl Disjunction {
    pub fn new(names: impl IntoIterator<Item = ConceptName>) -> Self {
        let mut v: Vec<ConceptName> = names.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn bottom() -> Self {
        Self(Vec::new())
    }

    pub fn single(name: ConceptName) -> Self {
        Self(vec![name])
    }

    pub fn names(&self) -> &[ConceptName] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, name: ConceptName) -> bool {
        self.0.binary_search(&name).is_ok()
    }

    pub fn without(&self, name: ConceptName) -> Self {
        Self(self.0.iter().copied().filter(|&n| n != name).collect())
    }

    /// `⊔` of the names; `⊥` when empty.
    pub fn to_concept(&self) -> Concept {
        Concept::or_all(self.0.iter().map(|&n| Concept::name(n)))
    }

    pub fn union(&self, other: &Disjunction) -> Self {
        Self::new(self.0.iter().chain(other.0.iter()).copied())
    }
}

impl FromIterator<ConceptName> for Disjunction {
    fn from_iter<I: IntoIterator<Item = ConceptName>>(iter: I) -> Self {
        Self::new(iter)
    }
}

impl fmt::Display for Disjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("⊥");
        }
        let mut names = self.0.clone();
        names.sort_by(by_spelling);
        for (i, n) in names.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊔ ")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Disjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A normalized axiom or a derived consequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    /// `H ⊑ M`
    Clause { lhs: Conjunction, rhs: Disjunction },
    /// `H ⊑ N ⊔ ∃r.K`
    ExClause {
        lhs: Conjunction,
        rhs: Disjunction,
        role: RoleName,
        filler: Conjunction,
    },
    /// `A ⊑ ∀r.B`
    Forall {
        lhs: ConceptName,
        role: RoleName,
        filler: ConceptName,
    },
    /// `∃r.A ⊑ B`
    ExLeft {
        role: RoleName,
        filler: ConceptName,
        rhs: ConceptName,
    },
}

impl Item {
    pub fn clause(lhs: Conjunction, rhs: Disjunction) -> Self {
        Item::Clause { lhs, rhs }
    }

    pub fn ex_clause(
        lhs: Conjunction,
        rhs: Disjunction,
        role: RoleName,
        filler: Conjunction,
    ) -> Self {
        Item::ExClause {
            lhs,
            rhs,
            role,
            filler,
        }
    }

    /// `A ⊑ ∃r.B`
    pub fn exists(lhs: ConceptName, role: RoleName, filler: ConceptName) -> Self {
        Self::ex_clause(
            Conjunction::single(lhs),
            Disjunction::bottom(),
            role,
            Conjunction::single(filler),
        )
    }

    /// `A ⊑ B`; `B = ⊥` gives `A ⊑ ⊥`.
    pub fn subsumption(lhs: ConceptName, rhs: ConceptName) -> Self {
        derivable(lhs, rhs)
    }

    /// `H ⊑ A` for some `A ∈ H`.
    pub fn is_tautology(&self) -> bool {
        match self {
            Item::Clause { lhs, rhs } => lhs.positives().any(|a| rhs.contains(a)),
            _ => false,
        }
    }

    /// The item read back as a GCI `C ⊑ D`.
    pub fn to_gci(&self) -> (Concept, Concept) {
        match self {
            Item::Clause { lhs, rhs } => (lhs.to_concept(), rhs.to_concept()),
            Item::ExClause {
                lhs,
                rhs,
                role,
                filler,
            } => {
                let ex = Concept::exists(*role, filler.to_concept());
                let rhs = if rhs.is_empty() {
                    ex
                } else {
                    Concept::or(rhs.to_concept(), ex)
                };
                (lhs.to_concept(), rhs)
            }
            Item::Forall { lhs, role, filler } => (
                Concept::name(*lhs),
                Concept::forall(*role, Concept::name(*filler)),
            ),
            Item::ExLeft { role, filler, rhs } => (
                Concept::exists(*role, Concept::name(*filler)),
                Concept::name(*rhs),
            ),
        }
    }

    /// The left context of clause-shaped items.
    pub fn context(&self) -> Option<&Conjunction> {
        match self {
            Item::Clause { lhs, .. } | Item::ExClause { lhs, .. } => Some(lhs),
            _ => None,
        }
    }

    pub fn concept_names(&self) -> Vec<ConceptName> {
        let mut out = Vec::new();
        match self {
            Item::Clause { lhs, rhs } => {
                out.extend(lhs.literals().iter().map(|l| l.name));
                out.extend(rhs.names());
            }
            Item::ExClause {
                lhs, rhs, filler, ..
            } => {
                out.extend(lhs.literals().iter().map(|l| l.name));
                out.extend(rhs.names());
                out.extend(filler.literals().iter().map(|l| l.name));
            }
            Item::Forall { lhs, filler, .. } => out.extend([*lhs, *filler]),
            Item::ExLeft { filler, rhs, .. } => out.extend([*filler, *rhs]),
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn role(&self) -> Option<RoleName> {
        match self {
            Item::Clause { .. } => None,
            Item::ExClause { role, .. } | Item::Forall { role, .. } | Item::ExLeft { role, .. } => {
                Some(*role)
            }
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Clause { lhs, rhs } => write!(f, "{lhs} ⊑ {rhs}"),
            Item::ExClause {
                lhs,
                rhs,
                role,
                filler,
            } => {
                write!(f, "{lhs} ⊑ ")?;
                if !rhs.is_empty() {
                    write!(f, "{rhs} ⊔ ")?;
                }
                if filler.len() > 1 {
                    write!(f, "∃{role}.({filler})")
                } else {
                    write!(f, "∃{role}.{filler}")
                }
            }
            Item::Forall { lhs, role, filler } => write!(f, "{lhs} ⊑ ∀{role}.{filler}"),
            Item::ExLeft { role, filler, rhs } => write!(f, "∃{role}.{filler} ⊑ {rhs}"),
        }
    }
}

impl fmt::Debug for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The item whose presence in a saturated state certifies `lhs ⊑ rhs`;
/// [`ConceptName::BOTTOM`] on the right gives `lhs ⊑ ⊥`.
pub fn derivable(lhs: ConceptName, rhs: ConceptName) -> Item {
    let rhs = if rhs.is_bottom() {
        Disjunction::bottom()
    } else {
        Disjunction::single(rhs)
    };
    Item::clause(Conjunction::single(lhs), rhs)
}

/// A set of items.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct State {
    items: HashSet<Item>,
}

impl State {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, item: Item) -> bool {
        self.items.insert(item)
    }

    pub fn contains(&self, item: &Item) -> bool {
        self.items.contains(item)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Item> {
        self.items.iter()
    }

    /// Items in a reproducible order.
    pub fn sorted(&self) -> Vec<&Item> {
        let mut v: Vec<&Item> = self.items.iter().collect();
        v.sort_by_cached_key(|i| i.to_string());
        v
    }

    /// Whether `lhs ⊑ rhs` is certified, either by the goal item itself or by
    /// `lhs ⊑ ⊥`.
    pub fn entails(&self, lhs: ConceptName, rhs: ConceptName) -> bool {
        lhs == rhs
            || lhs.is_bottom()
            || self.contains(&derivable(lhs, rhs))
            || self.contains(&derivable(lhs, ConceptName::BOTTOM))
    }
}

impl FromIterator<Item> for State {
    fn from_iter<I: IntoIterator<Item = Item>>(iter: I) -> Self {
        Self {
            items: iter.into_iter().collect(),
        }
    }
}

impl Extend<Item> for State {
    fn extend<I: IntoIterator<Item = Item>>(&mut self, iter: I) {
        self.items.extend(iter)
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.sorted()).finish()
    }
}
