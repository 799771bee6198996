//! ALC concept expressions.
//!
//! Only names, negation, conjunction and existential restriction are
//! primitive. Disjunction, universal restriction, top and bottom are
//! abbreviations that the constructors below expand:
//!
//! * `C ⊔ D  := ¬(¬C ⊓ ¬D)`
//! * `∀r.C  := ¬∃r.¬C`
//! * `⊥     := X ⊓ ¬X` with `X` the reserved [`ConceptName::BOTTOM`]
//! * `⊤     := ¬⊥`
//!
//! `Display` renders the keyword syntax (`not`, `and`, `or`, `some r.`,
//! `only r.`, `top`, `bot`) and folds the expanded patterns back into the
//! abbreviations, so printing and re-parsing is the identity on the
//! expanded tree.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::symbol::{ConceptName, RoleName};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Concept {
    Name(ConceptName),
    Not(Arc<Concept>),
    And(Arc<Concept>, Arc<Concept>),
    Exists(RoleName, Arc<Concept>),
}

impl Concept {
    pub fn name(name: impl Into<ConceptName>) -> Self {
        let name = name.into();
        if name.is_bottom() {
            return Self::bot();
        }
        Concept::Name(name)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(c: Concept) -> Self {
        Concept::Not(Arc::new(c))
    }

    pub fn and(c: Concept, d: Concept) -> Self {
        Concept::And(Arc::new(c), Arc::new(d))
    }

    pub fn exists(role: impl Into<RoleName>, c: Concept) -> Self {
        Concept::Exists(role.into(), Arc::new(c))
    }

    pub fn or(c: Concept, d: Concept) -> Self {
        Self::not(Self::and(Self::not(c), Self::not(d)))
    }

    pub fn forall(role: impl Into<RoleName>, c: Concept) -> Self {
        Self::not(Self::exists(role, Self::not(c)))
    }

    pub fn bot() -> Self {
        let x = Concept::Name(ConceptName::BOTTOM);
        Self::and(x.clone(), Self::not(x))
    }

    pub fn top() -> Self {
        Self::not(Self::bot())
    }

    /// Left-nested conjunction of `parts`; `top` when empty.
    pub fn and_all(parts: impl IntoIterator<Item = Concept>) -> Self {
        parts
            .into_iter()
            .reduce(Self::and)
            .unwrap_or_else(Self::top)
    }

    /// Left-nested disjunction of `parts`; `bot` when empty.
    pub fn or_all(parts: impl IntoIterator<Item = Concept>) -> Self {
        parts.into_iter().reduce(Self::or).unwrap_or_else(Self::bot)
    }

    pub fn is_bot(&self) -> bool {
        matches!(self.view(), View::Bot)
    }

    pub fn is_top(&self) -> bool {
        matches!(self.view(), View::Top)
    }

    /// Concept names occurring in the expression, the reserved bottom name
    /// excluded.
    pub fn concept_names(&self) -> BTreeSet<ConceptName> {
        let mut out = BTreeSet::new();
        self.collect(&mut out, &mut BTreeSet::new());
        out
    }

    pub fn role_names(&self) -> BTreeSet<RoleName> {
        let mut out = BTreeSet::new();
        self.collect(&mut BTreeSet::new(), &mut out);
        out
    }

    fn collect(&self, names: &mut BTreeSet<ConceptName>, roles: &mut BTreeSet<RoleName>) {
        match self {
            Concept::Name(n) => {
                if !n.is_bottom() {
                    names.insert(*n);
                }
            }
            Concept::Not(c) => c.collect(names, roles),
            Concept::And(c, d) => {
                c.collect(names, roles);
                d.collect(names, roles);
            }
            Concept::Exists(r, c) => {
                roles.insert(*r);
                c.collect(names, roles);
            }
        }
    }

    /// Nesting depth of role restrictions.
    pub fn role_depth(&self) -> usize {
        match self {
            Concept::Name(_) => 0,
            Concept::Not(c) => c.role_depth(),
            Concept::And(c, d) => c.role_depth().max(d.role_depth()),
            Concept::Exists(_, c) => 1 + c.role_depth(),
        }
    }

    /// Recognizes the abbreviation a node was built from.
    pub fn view(&self) -> View<'_> {
        match self {
            Concept::Name(n) if n.is_bottom() => View::Bot,
            Concept::Name(n) => View::Name(*n),
            Concept::And(c, d) => match (&**c, &**d) {
                (Concept::Name(x), Concept::Not(nx))
                    if x.is_bottom() && matches!(&**nx, Concept::Name(y) if y.is_bottom()) =>
                {
                    View::Bot
                }
                _ => View::And(c, d),
            },
            Concept::Exists(r, c) => View::Exists(*r, c),
            Concept::Not(inner) => match &**inner {
                Concept::Not(_) => View::Not(inner),
                Concept::Exists(r, body) => match &**body {
                    Concept::Not(c) => View::Forall(*r, c),
                    _ => View::Not(inner),
                },
                Concept::And(c, d) => {
                    if inner.is_bot() {
                        View::Top
                    } else {
                        match (&**c, &**d) {
                            (Concept::Not(x), Concept::Not(y)) => View::Or(x, y),
                            _ => View::Not(inner),
                        }
                    }
                }
                Concept::Name(n) if n.is_bottom() => View::Top,
                Concept::Name(_) => View::Not(inner),
            },
        }
    }
}

/// A concept seen through its abbreviations.
#[derive(Debug, Clone, Copy)]
pub enum View<'a> {
    Top,
    Bot,
    Name(ConceptName),
    Not(&'a Concept),
    And(&'a Concept, &'a Concept),
    Or(&'a Concept, &'a Concept),
    Exists(RoleName, &'a Concept),
    Forall(RoleName, &'a Concept),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Or,
    And,
    Unary,
}

impl Concept {
    fn level(&self) -> Level {
        match self.view() {
            View::Or(..) => Level::Or,
            View::And(..) => Level::And,
            _ => Level::Unary,
        }
    }

    /// Quantifiers swallow everything to their right, and so does a `not`
    /// wrapped around one.
    fn open_ended(&self) -> bool {
        match self.view() {
            View::Exists(..) | View::Forall(..) => true,
            View::Not(c) => c.open_ended(),
            _ => false,
        }
    }

    fn fmt_operand(
        &self,
        f: &mut fmt::Formatter<'_>,
        min: Level,
        right_nested_same: bool,
    ) -> fmt::Result {
        let level = self.level();
        if level < min || self.open_ended() || right_nested_same {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.view() {
            View::Top => f.write_str("top"),
            View::Bot => f.write_str("bot"),
            View::Name(n) => write!(f, "{n}"),
            View::Not(c) => {
                f.write_str("not ")?;
                if c.level() < Level::Unary {
                    write!(f, "({c})")
                } else {
                    write!(f, "{c}")
                }
            }
            View::And(c, d) => {
                c.fmt_operand(f, Level::And, false)?;
                f.write_str(" and ")?;
                d.fmt_operand(f, Level::Unary, d.level() == Level::And)
            }
            View::Or(c, d) => {
                c.fmt_operand(f, Level::Or, false)?;
                f.write_str(" or ")?;
                d.fmt_operand(f, Level::And, d.level() == Level::Or)
            }
            View::Exists(r, c) => write!(f, "some {r}. {c}"),
            View::Forall(r, c) => write!(f, "only {r}. {c}"),
        }
    }
}

impl fmt::Debug for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
