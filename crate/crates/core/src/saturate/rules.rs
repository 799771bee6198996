use std::collections::HashSet;
use std::fmt;

use super::engine::{Config, Engine};
use crate::error::{Error, Result};
use crate::item::{Item, State};
use crate::symbol::ConceptName;

/// One of the seven rules, numbered as in the usual presentation of the
/// calculus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RuleId(u8);

impl RuleId {
    /// `∅ → H ⊓ A ⊑ A`
    pub const R1: RuleId = RuleId(1);
    /// `H ⊓ ¬A ⊑ N ⊔ A → H ⊓ ¬A ⊑ N`
    pub const R2: RuleId = RuleId(2);
    /// `H ⊑ Nᵢ ⊔ Aᵢ (each i), ⊓Aᵢ ⊑ N → H ⊑ ⊔Nᵢ ⊔ N`
    pub const R3: RuleId = RuleId(3);
    /// `H ⊑ N ⊔ A, A ⊑ ∃r.B → H ⊑ N ⊔ ∃r.B`
    pub const R4: RuleId = RuleId(4);
    /// `H ⊑ M ⊔ ∃r.K, K ⊑ N ⊔ A, ∃r.A ⊑ B → H ⊑ M ⊔ B ⊔ ∃r.(K ⊓ ¬A)`
    pub const R5: RuleId = RuleId(5);
    /// `H ⊑ M ⊔ ∃r.K, K ⊑ ⊥ → H ⊑ M`
    pub const R6: RuleId = RuleId(6);
    /// `H ⊑ M ⊔ ∃r.K, H ⊑ N ⊔ A, A ⊑ ∀r.B → H ⊑ M ⊔ N ⊔ ∃r.(K ⊓ B)`
    pub const R7: RuleId = RuleId(7);

    pub const ALL: [RuleId; 7] = [
        Self::R1,
        Self::R2,
        Self::R3,
        Self::R4,
        Self::R5,
        Self::R6,
        Self::R7,
    ];

    pub fn new(n: u8) -> Option<RuleId> {
        (1..=7).contains(&n).then_some(RuleId(n))
    }

    pub fn number(self) -> u8 {
        self.0
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A ground rule instance `B0 → B1`.
///
/// When the filler built by rule 5 or 7 would contain both `A` and `¬A`,
/// the existential disjunct denotes ⊥ and the conclusion is the plain
/// clause without it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RuleInstance {
    pub rule: RuleId,
    pub premises: Vec<Item>,
    pub conclusions: Vec<Item>,
}

impl RuleInstance {
    /// Builds an instance after checking it against the rule's schema.
    pub fn new(rule: RuleId, premises: Vec<Item>, conclusions: Vec<Item>) -> Result<Self> {
        let inst = RuleInstance {
            rule,
            premises,
            conclusions,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = Error::MalformedInstance {
            rule: self.rule.number(),
        };
        if self.conclusions.is_empty() {
            return Err(bad);
        }
        if self.rule == RuleId::R1 && self.premises.is_empty() {
            // The unbounded schema: any H ⊓ A ⊑ A.
            let ok = self.conclusions.iter().all(|c| {
                matches!(c, Item::Clause { lhs, rhs } if rhs.len() == 1 && lhs.contains(crate::item::Literal::pos(rhs.names()[0])))
            });
            return if ok { Ok(()) } else { Err(bad) };
        }
        let premises: HashSet<&Item> = self.premises.iter().collect();
        let engine = Engine::<()>::from_items(
            self.premises.iter().map(|p| (p.clone(), ())),
            &[],
            Config::default(),
        );
        let derivable: HashSet<Item> = engine
            .all_instances()
            .into_iter()
            .filter(|i| {
                i.rule == self.rule && i.premises.iter().collect::<HashSet<_>>() == premises
            })
            .flat_map(|i| i.conclusions)
            .collect();
        if self.conclusions.iter().all(|c| derivable.contains(c)) {
            Ok(())
        } else {
            Err(bad)
        }
    }
}

impl fmt::Display for RuleInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}: {{", self.rule)?;
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("} → {")?;
        for (i, c) in self.conclusions.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// All premises present and some conclusion missing.
pub fn applicable(instance: &RuleInstance, state: &State) -> bool {
    instance.premises.iter().all(|p| state.contains(p))
        && instance.conclusions.iter().any(|c| !state.contains(c))
}

pub fn apply(instance: &RuleInstance, state: &State) -> Result<State> {
    if !applicable(instance, state) {
        return Err(Error::NotApplicable {
            rule: instance.rule.number(),
        });
    }
    let mut out = state.clone();
    out.extend(instance.conclusions.iter().cloned());
    Ok(out)
}

/// Every instance applicable to `state`. Rule 1 without premises is
/// instantiated as `X ⊑ X` for the names occurring in the state.
pub fn rule_instances(state: &State) -> Vec<RuleInstance> {
    let mut names: Vec<ConceptName> = state.iter().flat_map(Item::concept_names).collect();
    names.sort_unstable();
    names.dedup();
    let engine = Engine::<()>::from_items(
        state.iter().map(|i| (i.clone(), ())),
        &names,
        Config::default(),
    );
    let mut seen = HashSet::new();
    engine
        .all_instances()
        .into_iter()
        .filter(|i| applicable(i, state))
        .filter(|i| seen.insert(i.clone()))
        .collect()
}
