//! Glass-box pinpointing: saturation over formula-labelled states.
//!
//! Every item carries one monotone label, kept as the antichain of its
//! minimal models. Ontology items start with their normalization seeds;
//! a rule is pinpointing applicable when the conjunction of its premise
//! labels does not entail the conjunction of its conclusion labels, and
//! applying it disjoins the former into every conclusion.

use std::fmt;

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::item::{derivable, Item, State};
use crate::monotone::{Antichain, MonotoneFormula, Valuation};
use crate::normalize::{normalize, NormalizedOntology};
use crate::ontology::Ontology;
use crate::saturate::{Config, Engine, RuleId, RuleInstance, Stats};
use crate::symbol::ConceptName;

/// Items with exactly one label each. Absent items count as labelled ⊥.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct PinpointingState {
    labels: IndexMap<Item, Antichain>,
}

impl PinpointingState {
    pub fn new() -> Self {
        Self::default()
    }

    /// The initial state for `normalized`: each item labelled by its seed.
    pub fn initial(normalized: &NormalizedOntology) -> Self {
        let labels = normalized
            .items()
            .map(|i| (i.clone(), normalized.seed_antichain(i).unwrap_or_default()))
            .collect();
        Self { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains(&self, item: &Item) -> bool {
        self.labels.contains_key(item)
    }

    pub fn label(&self, item: &Item) -> Option<&Antichain> {
        self.labels.get(item)
    }

    /// The label as a formula; ⊥ for absent items.
    pub fn formula(&self, item: &Item) -> MonotoneFormula {
        self.labels
            .get(item)
            .map(Antichain::to_formula)
            .unwrap_or(MonotoneFormula::False)
    }

    /// Replaces the label of `item`.
    pub fn set(&mut self, item: Item, label: Antichain) {
        self.labels.insert(item, label);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Item, &Antichain)> {
        self.labels.iter()
    }

    /// `fm(X)`: the conjunction of the labels of `items`.
    pub fn fm<'a>(&self, items: impl IntoIterator<Item = &'a Item>) -> Antichain {
        items
            .into_iter()
            .fold(Antichain::top(), |acc, i| match self.labels.get(i) {
                Some(l) => acc.and(l),
                None => Antichain::bottom(),
            })
    }

    /// Items whose label `valuation` satisfies.
    pub fn project(&self, valuation: &Valuation) -> State {
        self.labels
            .iter()
            .filter(|(_, l)| l.satisfied_by(valuation))
            .map(|(i, _)| i.clone())
            .collect()
    }

    /// The items, forgetting labels.
    pub fn state(&self) -> State {
        self.labels.keys().cloned().collect()
    }

    /// Label of the goal `c ⊑ d`: derived directly or through `c ⊑ ⊥`.
    pub fn goal_label(&self, c: ConceptName, d: ConceptName) -> Antichain {
        if c == d || c.is_bottom() {
            return Antichain::top();
        }
        let direct = self
            .labels
            .get(&derivable(c, d))
            .cloned()
            .unwrap_or_default();
        match self.labels.get(&derivable(c, ConceptName::BOTTOM)) {
            Some(bot) => direct.or(bot),
            None => direct,
        }
    }
}

impl fmt::Debug for PinpointingState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut entries: Vec<String> = self
            .labels
            .iter()
            .map(|(i, l)| format!("{i} : {l}"))
            .collect();
        entries.sort();
        f.debug_list().entries(entries).finish()
    }
}

pub fn pin_applicable(instance: &RuleInstance, pstate: &PinpointingState) -> bool {
    !pstate
        .fm(&instance.premises)
        .entails(&pstate.fm(&instance.conclusions))
}

pub fn pin_apply(instance: &RuleInstance, pstate: &PinpointingState) -> Result<PinpointingState> {
    if !pin_applicable(instance, pstate) {
        return Err(Error::NotApplicable {
            rule: instance.rule.number(),
        });
    }
    let fm = pstate.fm(&instance.premises);
    let mut out = pstate.clone();
    for c in &instance.conclusions {
        let mut label = out.labels.get(c).cloned().unwrap_or_default();
        label.absorb(&fm);
        out.labels.insert(c.clone(), label);
    }
    Ok(out)
}

/// One state-changing pinpointing application.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub rule: RuleId,
    pub premises: Vec<Item>,
    pub premise_label: Antichain,
    pub item: Item,
    /// `None` when the application added the item.
    pub old: Option<Antichain>,
    pub new: Antichain,
}

impl TraceStep {
    /// The application added an item or made a label strictly weaker.
    pub fn made_progress(&self) -> bool {
        match &self.old {
            None => true,
            Some(old) => old.entails(&self.new) && !self.new.entails(old),
        }
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let premises: Vec<String> = self.premises.iter().map(Item::to_string).collect();
        let old = self
            .old
            .as_ref()
            .map(Antichain::to_string)
            .unwrap_or_else(|| "false".into());
        write!(
            f,
            "STEP\t{}\t{}\t{}\t{}\t{}\t{}",
            self.rule,
            premises.join("; "),
            self.premise_label,
            self.item,
            old,
            self.new
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct PinpointingTrace {
    pub steps: Vec<TraceStep>,
    pub applications: usize,
    pub additions: usize,
    pub label_weakenings: usize,
}

impl PinpointingTrace {
    /// Tab-separated records, one per line:
    /// `STEP rule premises fm(B0) item old-label new-label`, premises
    /// separated by `; `.
    pub fn to_tsv(&self) -> String {
        self.steps.iter().map(|s| format!("{s}\n")).collect()
    }
}

/// Runs to a pinpointing-saturated state under FIFO order, keeping a trace.
pub fn pin_saturate(
    normalized: &NormalizedOntology,
    goal: &Item,
) -> (PinpointingState, PinpointingTrace) {
    pin_saturate_with(
        normalized,
        Some(goal),
        Config {
            trace: true,
            ..Config::default()
        },
    )
}

/// As [`pin_saturate`] with explicit options. `early_exit` is ignored:
/// labels are only final once nothing is pinpointing applicable.
pub fn pin_saturate_with(
    normalized: &NormalizedOntology,
    goal: Option<&Item>,
    config: Config,
) -> (PinpointingState, PinpointingTrace) {
    let config = Config {
        early_exit: false,
        ..config
    };
    let names: Vec<ConceptName> = normalized.names().iter().copied().collect();
    let axioms = normalized
        .items()
        .map(|i| (i.clone(), normalized.seed_antichain(i).unwrap_or_default()));
    let mut engine = Engine::<Antichain>::new(axioms, &names, goal, config);
    engine.run();
    let (items, labels, stats, steps) = engine.into_parts();
    let Stats {
        applications,
        additions,
        label_weakenings,
        ..
    } = stats;
    let steps = steps
        .into_iter()
        .map(|s| TraceStep {
            rule: s.rule,
            premises: s.premises.iter().map(|&p| items[p].clone()).collect(),
            premise_label: s.premise_label,
            item: items[s.item].clone(),
            old: s.old,
            new: s.new,
        })
        .collect();
    let pstate = PinpointingState {
        labels: items.into_iter().zip(labels).collect(),
    };
    (
        pstate,
        PinpointingTrace {
            steps,
            applications,
            additions,
            label_weakenings,
        },
    )
}

/// A formula whose models are exactly the sub-ontologies entailing
/// `c ⊑ d`, over the ontology's own labels.
pub fn pinpointing_formula(ontology: &Ontology, c: ConceptName, d: ConceptName) -> MonotoneFormula {
    Explainer::new(ontology).formula(c, d)
}

/// The ⊆-minimal sub-ontologies entailing `c ⊑ d`.
pub fn justifications(ontology: &Ontology, c: ConceptName, d: ConceptName) -> Antichain {
    Explainer::new(ontology).justifications(c, d)
}

pub fn repairs(ontology: &Ontology, c: ConceptName, d: ConceptName) -> Result<Repairs> {
    Explainer::new(ontology).repairs(c, d)
}

/// Minimal ways to break an entailment and what remains afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Repairs {
    /// Minimal axiom sets whose removal breaks the entailment.
    pub diagnoses: Antichain,
    /// Maximal sub-ontologies not entailing the goal.
    pub repairs: Antichain,
}

/// Pinpoints once, then answers queries about any pair of names.
pub struct Explainer {
    normalized: NormalizedOntology,
    pstate: PinpointingState,
    trace: PinpointingTrace,
    config: Config,
}

impl Explainer {
    pub fn new(ontology: &Ontology) -> Self {
        Self::with_config(ontology, Config::default())
    }

    pub fn with_config(ontology: &Ontology, config: Config) -> Self {
        let normalized = normalize(ontology);
        let (pstate, trace) = pin_saturate_with(&normalized, None, config);
        Explainer {
            normalized,
            pstate,
            trace,
            config,
        }
    }

    pub fn normalized(&self) -> &NormalizedOntology {
        &self.normalized
    }

    pub fn state(&self) -> &PinpointingState {
        &self.pstate
    }

    pub fn trace(&self) -> &PinpointingTrace {
        &self.trace
    }

    pub fn labels(&self) -> &Valuation {
        self.normalized.labels()
    }

    /// Goal label as an antichain over input labels.
    pub fn label(&self, c: ConceptName, d: ConceptName) -> Antichain {
        if c.is_bottom() || self.normalized.names().contains(&c) {
            return self.pstate.goal_label(c, d);
        }
        // A left-hand side outside the signature only gets a context when
        // it is the goal.
        let (pstate, _) = pin_saturate_with(&self.normalized, Some(&derivable(c, d)), self.config);
        pstate.goal_label(c, d)
    }

    pub fn formula(&self, c: ConceptName, d: ConceptName) -> MonotoneFormula {
        self.label(c, d).to_formula()
    }

    pub fn subsumes(&self, c: ConceptName, d: ConceptName) -> bool {
        self.label(c, d).satisfied_by(self.labels())
    }

    pub fn justifications(&self, c: ConceptName, d: ConceptName) -> Antichain {
        self.label(c, d)
    }

    pub fn repairs(&self, c: ConceptName, d: ConceptName) -> Result<Repairs> {
        let just = self.label(c, d);
        if !just.satisfied_by(self.labels()) {
            let rhs = if d.is_bottom() {
                "⊥".to_string()
            } else {
                d.to_string()
            };
            return Err(Error::GoalNotEntailed(format!("{c} ⊑ {rhs}")));
        }
        let diagnoses = just.minimal_hitting_sets();
        let repairs = diagnoses.complements(self.labels()).into_iter().collect();
        Ok(Repairs { diagnoses, repairs })
    }

    /// Every entailed `A ⊑ B` and `A ⊑ ⊥` over the input signature, with
    /// `⊥` spelled [`ConceptName::BOTTOM`]. Reflexive pairs are left out.
    pub fn classify(&self, names: &[ConceptName]) -> Vec<(ConceptName, ConceptName)> {
        let all = self.labels();
        let mut out = Vec::new();
        for &a in names {
            if self
                .pstate
                .goal_label(a, ConceptName::BOTTOM)
                .satisfied_by(all)
            {
                out.push((a, ConceptName::BOTTOM));
            }
            for &b in names {
                if a != b && self.label(a, b).satisfied_by(all) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}
