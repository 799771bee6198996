//! Structural transformation of labelled TBoxes into normal-form items.
//!
//! Every GCI `C ⊑ D` is read as a sequent `⊓L ⊑ ⊔R` over negation normal
//! forms and decomposed until only the four target shapes remain:
//! `⊓Aᵢ ⊑ ⊔Bⱼ`, `A ⊑ ∃r.B`, `A ⊑ ∀r.B` and `∃r.A ⊑ B`. Quantified
//! subconcepts that cannot stay in place are replaced by fresh names
//! `_F1, _F2, …`, one per (side, subconcept), defined in one direction only.
//! Each produced item remembers the set of input axioms it came from; the
//! item's seed label is the disjunction of that set.

use std::collections::{BTreeSet, VecDeque};

use indexmap::IndexMap;

use crate::concept::{Concept, View};
use crate::error::{Error, Result};
use crate::item::{Conjunction, Disjunction, Item, Literal};
use crate::monotone::{Antichain, MonotoneFormula, Valuation};
use crate::ontology::Ontology;
use crate::symbol::{AxiomId, ConceptName, RoleName};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
enum Nnf {
    Top,
    Bot,
    Lit(Literal),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
    Some(RoleName, Box<Nnf>),
    All(RoleName, Box<Nnf>),
}

impl Nnf {
    fn of(c: &Concept, negated: bool) -> Nnf {
        match c.view() {
            View::Top => {
                if negated {
                    Nnf::Bot
                } else {
                    Nnf::Top
                }
            }
            View::Bot => {
                if negated {
                    Nnf::Top
                } else {
                    Nnf::Bot
                }
            }
            View::Name(n) => Nnf::Lit(Literal { name: n, negated }),
            View::Not(inner) => Nnf::of(inner, !negated),
            View::And(x, y) => {
                let parts = [Nnf::of(x, negated), Nnf::of(y, negated)];
                if negated {
                    Nnf::or(parts)
                } else {
                    Nnf::and(parts)
                }
            }
            View::Or(x, y) => {
                let parts = [Nnf::of(x, negated), Nnf::of(y, negated)];
                if negated {
                    Nnf::and(parts)
                } else {
                    Nnf::or(parts)
                }
            }
            View::Exists(r, x) => {
                if negated {
                    Nnf::all(r, Nnf::of(x, true))
                } else {
                    Nnf::some(r, Nnf::of(x, false))
                }
            }
            View::Forall(r, x) => {
                if negated {
                    Nnf::some(r, Nnf::of(x, true))
                } else {
                    Nnf::all(r, Nnf::of(x, false))
                }
            }
        }
    }

    fn negate(&self) -> Nnf {
        match self {
            Nnf::Top => Nnf::Bot,
            Nnf::Bot => Nnf::Top,
            Nnf::Lit(l) => Nnf::Lit(l.complement()),
            Nnf::And(xs) => Nnf::or(xs.iter().map(Nnf::negate)),
            Nnf::Or(xs) => Nnf::and(xs.iter().map(Nnf::negate)),
            Nnf::Some(r, x) => Nnf::all(*r, x.negate()),
            Nnf::All(r, x) => Nnf::some(*r, x.negate()),
        }
    }

    fn and(parts: impl IntoIterator<Item = Nnf>) -> Nnf {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Nnf::Top => {}
                Nnf::Bot => return Nnf::Bot,
                Nnf::And(xs) => out.extend(xs),
                x => out.push(x),
            }
        }
        Nnf::gather(out, Nnf::Top, Nnf::Bot, Nnf::And)
    }

    fn or(parts: impl IntoIterator<Item = Nnf>) -> Nnf {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Nnf::Bot => {}
                Nnf::Top => return Nnf::Top,
                Nnf::Or(xs) => out.extend(xs),
                x => out.push(x),
            }
        }
        Nnf::gather(out, Nnf::Bot, Nnf::Top, Nnf::Or)
    }

    /// Sorts, deduplicates, and collapses `A` next to `¬A` into `clash`.
    fn gather(mut xs: Vec<Nnf>, unit: Nnf, clash: Nnf, wrap: fn(Vec<Nnf>) -> Nnf) -> Nnf {
        xs.sort();
        xs.dedup();
        let lits: Vec<Literal> = xs
            .iter()
            .filter_map(|x| if let Nnf::Lit(l) = x { Some(*l) } else { None })
            .collect();
        if lits.iter().any(|l| lits.contains(&l.complement())) {
            return clash;
        }
        match xs.len() {
            0 => unit,
            1 => xs.pop().unwrap(),
            _ => wrap(xs),
        }
    }

    fn some(r: RoleName, x: Nnf) -> Nnf {
        if x == Nnf::Bot {
            Nnf::Bot
        } else {
            Nnf::Some(r, Box::new(x))
        }
    }

    fn all(r: RoleName, x: Nnf) -> Nnf {
        if x == Nnf::Top {
            Nnf::Top
        } else {
            Nnf::All(r, Box::new(x))
        }
    }

    fn positive_name(&self) -> Option<ConceptName> {
        match self {
            Nnf::Lit(Literal {
                name,
                negated: false,
            }) => Some(*name),
            _ => None,
        }
    }

    fn to_concept(&self) -> Concept {
        match self {
            Nnf::Top => Concept::top(),
            Nnf::Bot => Concept::bot(),
            Nnf::Lit(l) if l.negated => Concept::not(Concept::name(l.name)),
            Nnf::Lit(l) => Concept::name(l.name),
            Nnf::And(xs) => Concept::and_all(xs.iter().map(Nnf::to_concept)),
            Nnf::Or(xs) => Concept::or_all(xs.iter().map(Nnf::to_concept)),
            Nnf::Some(r, x) => Concept::exists(*r, x.to_concept()),
            Nnf::All(r, x) => Concept::forall(*r, x.to_concept()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
enum Side {
    Left,
    Right,
}

/// A normalized TBox: items with their seed sets, plus the fresh names the
/// transformation introduced.
#[derive(Clone, Debug, Default)]
pub struct NormalizedOntology {
    items: IndexMap<Item, BTreeSet<AxiomId>>,
    fresh: IndexMap<ConceptName, Concept>,
    names: BTreeSet<ConceptName>,
    roles: BTreeSet<RoleName>,
    labels: Valuation,
}

impl NormalizedOntology {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> impl Iterator<Item = &Item> {
        self.items.keys()
    }

    pub fn contains(&self, item: &Item) -> bool {
        self.items.contains_key(item)
    }

    /// Input axioms that produced `item`.
    pub fn sources(&self, item: &Item) -> Option<&BTreeSet<AxiomId>> {
        self.items.get(item)
    }

    /// The seed label: the disjunction of the item's sources.
    pub fn seed(&self, item: &Item) -> Option<MonotoneFormula> {
        self.items
            .get(item)
            .map(|s| MonotoneFormula::disj(s.iter().copied().map(MonotoneFormula::Var)))
    }

    pub fn seed_antichain(&self, item: &Item) -> Option<Antichain> {
        self.items
            .get(item)
            .map(|s| s.iter().copied().map(Valuation::singleton).collect())
    }

    pub fn fresh_names(&self) -> impl Iterator<Item = ConceptName> + '_ {
        self.fresh.keys().copied()
    }

    pub fn is_fresh(&self, name: ConceptName) -> bool {
        self.fresh.contains_key(&name)
    }

    /// The input-signature concept a fresh name stands for. Setting the
    /// name's extension to the concept's extension turns any model of the
    /// input into a model of the normalized items.
    pub fn fresh_definition(&self, name: ConceptName) -> Option<&Concept> {
        self.fresh.get(&name)
    }

    /// Input names together with fresh names.
    pub fn names(&self) -> &BTreeSet<ConceptName> {
        &self.names
    }

    pub fn roles(&self) -> &BTreeSet<RoleName> {
        &self.roles
    }

    /// Labels of the input axioms.
    pub fn labels(&self) -> &Valuation {
        &self.labels
    }

    /// Items whose sources meet `valuation`, with sources cut down to it.
    /// Names, roles and fresh definitions are kept whole.
    pub fn project(&self, valuation: &Valuation) -> NormalizedOntology {
        let items = self
            .items
            .iter()
            .filter_map(|(item, src)| {
                let kept: BTreeSet<AxiomId> = src
                    .iter()
                    .copied()
                    .filter(|a| valuation.contains(*a))
                    .collect();
                (!kept.is_empty()).then(|| (item.clone(), kept))
            })
            .collect();
        NormalizedOntology {
            items,
            fresh: self.fresh.clone(),
            names: self.names.clone(),
            roles: self.roles.clone(),
            labels: self
                .labels
                .iter()
                .filter(|a| valuation.contains(*a))
                .collect(),
        }
    }

    /// Propositional variable standing for the `k`-th item (1-based, in
    /// production order).
    pub fn item_variable(k: usize) -> AxiomId {
        AxiomId::new(&format!("#{k}"))
    }

    /// Each item paired with its own variable.
    pub fn item_variables(&self) -> impl Iterator<Item = (AxiomId, &Item)> {
        self.items
            .keys()
            .enumerate()
            .map(|(i, item)| (Self::item_variable(i + 1), item))
    }

    /// Rewrites a formula over item variables and input labels into one
    /// over input labels only, replacing each item variable by its seed.
    pub fn original_projection(&self, phi: &MonotoneFormula) -> Result<MonotoneFormula> {
        phi.substitute(&mut |v| {
            if self.labels.contains(v) {
                return Some(MonotoneFormula::Var(v));
            }
            let k: usize = v.as_str().strip_prefix('#')?.parse().ok()?;
            let (item, _) = self.items.get_index(k.checked_sub(1)?)?;
            self.seed(item)
        })
        .map_err(Error::UnknownVariable)
    }
}

struct Normalizer {
    items: IndexMap<Item, BTreeSet<AxiomId>>,
    cache: IndexMap<(Side, Nnf), ConceptName>,
    fresh: IndexMap<ConceptName, Concept>,
}

pub fn normalize(ontology: &Ontology) -> NormalizedOntology {
    let mut n = Normalizer {
        items: IndexMap::new(),
        cache: IndexMap::new(),
        fresh: IndexMap::new(),
    };
    for axiom in ontology.iter() {
        n.run(
            Nnf::of(&axiom.lhs, false),
            Nnf::of(&axiom.rhs, false),
            axiom.label,
        );
    }
    let (mut names, mut roles) = ontology.signature();
    for item in n.items.keys() {
        names.extend(item.concept_names());
        roles.extend(item.role());
    }
    names.extend(n.fresh.keys().copied());
    NormalizedOntology {
        items: n.items,
        fresh: n.fresh,
        names,
        roles,
        labels: ontology.label_set(),
    }
}

impl Normalizer {
    fn run(&mut self, lhs: Nnf, rhs: Nnf, seed: AxiomId) {
        let mut queue = VecDeque::from([(vec![lhs], vec![rhs])]);
        while let Some((l, r)) = queue.pop_front() {
            self.sequent(l, r, seed, &mut queue);
        }
    }

    fn sequent(
        &mut self,
        l: Vec<Nnf>,
        r: Vec<Nnf>,
        seed: AxiomId,
        queue: &mut VecDeque<(Vec<Nnf>, Vec<Nnf>)>,
    ) {
        let (mut left, mut right) = (Vec::new(), Vec::new());
        let (mut ls, mut rs) = (l, r);
        ls.reverse();
        rs.reverse();
        while !ls.is_empty() || !rs.is_empty() {
            while let Some(x) = ls.pop() {
                match x {
                    Nnf::Top => {}
                    Nnf::Bot => return,
                    Nnf::Lit(l) if l.negated => rs.push(Nnf::Lit(l.complement())),
                    Nnf::And(xs) => ls.extend(xs.into_iter().rev()),
                    Nnf::All(r, x) => rs.push(Nnf::some(r, x.negate())),
                    x => left.push(x),
                }
            }
            while let Some(x) = rs.pop() {
                match x {
                    Nnf::Bot => {}
                    Nnf::Top => return,
                    Nnf::Lit(l) if l.negated => ls.push(Nnf::Lit(l.complement())),
                    Nnf::Or(xs) => rs.extend(xs.into_iter().rev()),
                    x => right.push(x),
                }
            }
        }
        if let Some(i) = left.iter().position(|x| matches!(x, Nnf::Or(_))) {
            let Nnf::Or(xs) = left.remove(i) else {
                unreachable!()
            };
            for x in xs {
                let mut l = left.clone();
                l.push(x);
                queue.push_back((l, right.clone()));
            }
            return;
        }
        if let Some(i) = right.iter().position(|x| matches!(x, Nnf::And(_))) {
            let Nnf::And(xs) = right.remove(i) else {
                unreachable!()
            };
            for x in xs {
                let mut r = right.clone();
                r.push(x);
                queue.push_back((left.clone(), r));
            }
            return;
        }
        left.sort();
        left.dedup();
        right.sort();
        right.dedup();
        if left.iter().any(|x| right.contains(x)) {
            return;
        }

        if let ([a], [q]) = (&left[..], &right[..]) {
            let a_name = match (a, q) {
                (_, Nnf::Some(..) | Nnf::All(..)) => Some(self.name_for(Side::Left, a, queue)),
                _ => a.positive_name(),
            };
            if let Some(a) = a_name {
                match q {
                    Nnf::Some(r, x) => {
                        let b = self.name_for(Side::Right, x, queue);
                        self.emit(Item::exists(a, *r, b), seed);
                        return;
                    }
                    Nnf::All(r, x) => {
                        let b = self.name_for(Side::Right, x, queue);
                        self.emit(
                            Item::Forall {
                                lhs: a,
                                role: *r,
                                filler: b,
                            },
                            seed,
                        );
                        return;
                    }
                    _ => {}
                }
            }
            if let Nnf::Some(r, x) = a {
                let b = self.name_for(Side::Right, q, queue);
                let a = self.name_for(Side::Left, x, queue);
                self.emit(
                    Item::ExLeft {
                        role: *r,
                        filler: a,
                        rhs: b,
                    },
                    seed,
                );
                return;
            }
        }

        let lhs: Vec<ConceptName> = left
            .iter()
            .map(|x| self.name_for(Side::Left, x, queue))
            .collect();
        let rhs: Vec<ConceptName> = right
            .iter()
            .map(|x| self.name_for(Side::Right, x, queue))
            .collect();
        let item = Item::clause(Conjunction::of_names(lhs), Disjunction::new(rhs));
        if !item.is_tautology() {
            self.emit(item, seed);
        }
    }

    /// A name standing for `x` on the given side. Fresh names get their
    /// defining sequent queued again on every use, so each user adds its seed.
    fn name_for(
        &mut self,
        side: Side,
        x: &Nnf,
        queue: &mut VecDeque<(Vec<Nnf>, Vec<Nnf>)>,
    ) -> ConceptName {
        if let Some(a) = x.positive_name() {
            return a;
        }
        let key = (side, x.clone());
        let name = match self.cache.get(&key) {
            Some(&f) => f,
            None => {
                let f = ConceptName::new(&format!("_F{}", self.cache.len() + 1));
                self.cache.insert(key, f);
                self.fresh.insert(f, x.to_concept());
                f
            }
        };
        let f = Nnf::Lit(Literal::pos(name));
        match side {
            Side::Left => queue.push_back((vec![x.clone()], vec![f])),
            Side::Right => queue.push_back((vec![f], vec![x.clone()])),
        }
        name
    }

    fn emit(&mut self, item: Item, seed: AxiomId) {
        self.items.entry(item).or_default().insert(seed);
    }
}
