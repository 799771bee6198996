//! The worklist engine shared by classical and pinpointing saturation.
//!
//! Items live in an arena and carry a label from a [`Label`] algebra: `()`
//! for plain saturation, [`Antichain`] for pinpointing. When an item is
//! taken off the worklist, every rule instance having it as a premise and
//! all other premises among the already processed items is evaluated; the
//! conclusion's label is joined with the conjunction of the premise labels.
//! An item whose label strictly weakens goes back on the worklist.

use std::collections::{HashMap, VecDeque};

use indexmap::IndexMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rules::{RuleId, RuleInstance};
use crate::item::{Conjunction, Disjunction, Item, Literal};
use crate::monotone::Antichain;
use crate::symbol::{ConceptName, RoleName};

pub trait Label: Clone {
    fn top() -> Self;
    fn conj(&self, other: &Self) -> Self;
    /// Replaces `self` by `self ∨ other`; true iff that is strictly weaker.
    fn absorb(&mut self, other: &Self) -> bool;
}

impl Label for () {
    fn top() -> Self {}
    fn conj(&self, _: &Self) -> Self {}
    fn absorb(&mut self, _: &Self) -> bool {
        false
    }
}

impl Label for Antichain {
    fn top() -> Self {
        Antichain::top()
    }
    fn conj(&self, other: &Self) -> Self {
        self.and(other)
    }
    fn absorb(&mut self, other: &Self) -> bool {
        Antichain::absorb(self, other)
    }
}

/// Order in which the worklist hands out items.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Order {
    #[default]
    Fifo,
    /// Uniformly random picks from a generator seeded with the value.
    Random(u64),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Config {
    pub order: Order,
    /// Stop as soon as the goal (or its lhs ⊑ ⊥) is derived.
    pub early_exit: bool,
    pub trace: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Applications that changed the state: new items plus weakened labels.
    pub applications: usize,
    pub additions: usize,
    pub label_weakenings: usize,
    /// Instances evaluated, productive or not.
    pub instances_tried: usize,
}

pub(crate) type Id = usize;
type Ctx = u32;

#[derive(Clone, Debug)]
pub(crate) struct Step<L> {
    pub rule: RuleId,
    pub premises: Vec<Id>,
    pub premise_label: L,
    pub item: Id,
    pub old: Option<L>,
    pub new: L,
}

struct Inst<L> {
    /// Precomputed premise label, for instances applied together.
    label: Option<L>,
    rule: RuleId,
    premises: Vec<Id>,
    conclusion: Item,
}

#[derive(Default)]
struct Index {
    clauses_by_ctx: HashMap<Ctx, Vec<Id>>,
    clauses_by_ctx_name: HashMap<(Ctx, ConceptName), Vec<Id>>,
    clauses_by_name: HashMap<ConceptName, Vec<Id>>,
    ctxs_by_name: HashMap<ConceptName, Vec<Ctx>>,
    bottom_by_ctx: HashMap<Ctx, Id>,
    ex_by_ctx_role: HashMap<(Ctx, RoleName), Vec<Id>>,
    ex_by_role_filler: HashMap<(RoleName, Ctx), Vec<Id>>,
    ex_by_filler: HashMap<Ctx, Vec<Id>>,
    side3_by_name: HashMap<ConceptName, Vec<Id>>,
    side3_nullary: Vec<Id>,
    side4_by_name: HashMap<ConceptName, Vec<Id>>,
    exleft_by_role_name: HashMap<(RoleName, ConceptName), Vec<Id>>,
    exleft_by_name: HashMap<ConceptName, Vec<Id>>,
    forall_by_name_role: HashMap<(ConceptName, RoleName), Vec<Id>>,
    forall_by_name: HashMap<ConceptName, Vec<Id>>,
    anchors: Vec<(Ctx, Id)>,
}

fn get<'a, K: std::hash::Hash + Eq>(map: &'a HashMap<K, Vec<Id>>, key: &K) -> &'a [Id] {
    map.get(key).map(Vec::as_slice).unwrap_or(&[])
}

pub(crate) struct Engine<L> {
    items: Vec<Item>,
    labels: Vec<L>,
    ids: HashMap<Item, Id>,
    processed: Vec<bool>,
    queued: Vec<bool>,
    fifo: VecDeque<Id>,
    pool: Vec<Id>,
    rng: Option<ChaCha8Rng>,
    ctx_ids: HashMap<Conjunction, Ctx>,
    ctxs: Vec<Conjunction>,
    index: Index,
    config: Config,
    goal: Option<(Item, Item)>,
    eager: Vec<ConceptName>,
    done: bool,
    pub stats: Stats,
    pub steps: Vec<Step<L>>,
}

impl<L: Label> Engine<L> {
    fn empty(config: Config) -> Self {
        Engine {
            items: Vec::new(),
            labels: Vec::new(),
            ids: HashMap::new(),
            processed: Vec::new(),
            queued: Vec::new(),
            fifo: VecDeque::new(),
            pool: Vec::new(),
            rng: match config.order {
                Order::Fifo => None,
                Order::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            },
            ctx_ids: HashMap::new(),
            ctxs: Vec::new(),
            index: Index::default(),
            config,
            goal: None,
            eager: Vec::new(),
            done: false,
            stats: Stats::default(),
            steps: Vec::new(),
        }
    }

    /// An engine ready to saturate: `axioms` are queued with their labels,
    /// then `X ⊑ X` is added for every name in `names` and `H ⊑ A` for every
    /// positive `A` in the goal's left-hand side.
    pub fn new(
        axioms: impl IntoIterator<Item = (Item, L)>,
        names: &[ConceptName],
        goal: Option<&Item>,
        config: Config,
    ) -> Self {
        let mut e = Self::empty(config);
        if let Some(g) = goal {
            if let Some(lhs) = g.context() {
                e.goal = Some((g.clone(), Item::clause(lhs.clone(), Disjunction::bottom())));
            }
        }
        for (item, label) in axioms {
            e.seed(item, label);
        }
        let mut eager: Vec<Item> = names.iter().map(|&x| Item::subsumption(x, x)).collect();
        if let Some(Item::Clause { lhs, .. } | Item::ExClause { lhs, .. }) = goal {
            eager.extend(
                lhs.positives()
                    .map(|a| Item::clause(lhs.clone(), Disjunction::single(a))),
            );
        }
        for item in eager {
            e.conclude(RuleId::R1, Vec::new(), item, None);
        }
        e
    }

    /// An engine whose items are all processed and indexed, for
    /// enumerating instances over a fixed state.
    pub fn from_items(
        items: impl IntoIterator<Item = (Item, L)>,
        eager: &[ConceptName],
        config: Config,
    ) -> Self {
        let mut e = Self::empty(config);
        for (item, label) in items {
            let id = e.intern(item, label);
            e.processed[id] = true;
            e.index(id);
        }
        e.eager = eager.to_vec();
        e
    }

    fn seed(&mut self, item: Item, label: L) {
        match self.ids.get(&item) {
            Some(&id) => {
                self.labels[id].absorb(&label);
            }
            None => {
                let id = self.intern(item, label);
                self.enqueue(id);
            }
        }
    }

    fn intern(&mut self, item: Item, label: L) -> Id {
        let id = self.items.len();
        self.ids.insert(item.clone(), id);
        self.items.push(item);
        self.labels.push(label);
        self.processed.push(false);
        self.queued.push(false);
        id
    }

    fn ctx(&mut self, c: &Conjunction) -> Ctx {
        if let Some(&id) = self.ctx_ids.get(c) {
            return id;
        }
        let id = self.ctxs.len() as Ctx;
        self.ctxs.push(c.clone());
        self.ctx_ids.insert(c.clone(), id);
        id
    }

    fn ctx_of(&self, c: &Conjunction) -> Option<Ctx> {
        self.ctx_ids.get(c).copied()
    }

    fn enqueue(&mut self, id: Id) {
        if self.queued[id] {
            return;
        }
        self.queued[id] = true;
        if self.rng.is_some() {
            self.pool.push(id);
        } else {
            self.fifo.push_back(id);
        }
    }

    fn pop(&mut self) -> Option<Id> {
        let id = match &mut self.rng {
            Some(rng) => {
                if self.pool.is_empty() {
                    return None;
                }
                let k = rng.gen_range(0..self.pool.len());
                self.pool.swap_remove(k)
            }
            None => self.fifo.pop_front()?,
        };
        self.queued[id] = false;
        Some(id)
    }

    pub fn run(&mut self) {
        while !self.done {
            let Some(x) = self.pop() else { break };
            if !self.processed[x] {
                self.processed[x] = true;
                self.index(x);
            }
            let mut insts = Vec::new();
            self.instances_of(x, &mut insts, true);
            for inst in insts {
                self.conclude(inst.rule, inst.premises, inst.conclusion, inst.label);
                if self.done {
                    break;
                }
            }
        }
    }

    fn conclude(
        &mut self,
        rule: RuleId,
        mut premises: Vec<Id>,
        conclusion: Item,
        label: Option<L>,
    ) {
        self.stats.instances_tried += 1;
        let fm = label.unwrap_or_else(|| {
            let mut seen = premises.clone();
            seen.sort_unstable();
            seen.dedup();
            seen.iter()
                .fold(L::top(), |fm, &p| fm.conj(&self.labels[p]))
        });
        let (id, old) = match self.ids.get(&conclusion) {
            None => {
                let id = self.intern(conclusion, fm.clone());
                self.enqueue(id);
                self.stats.additions += 1;
                (id, None)
            }
            Some(&id) => {
                let old = if self.config.trace {
                    Some(self.labels[id].clone())
                } else {
                    None
                };
                if !self.labels[id].absorb(&fm) {
                    return;
                }
                self.stats.label_weakenings += 1;
                if self.processed[id] {
                    self.enqueue(id);
                }
                (id, old)
            }
        };
        self.stats.applications += 1;
        if self.config.trace {
            premises.dedup();
            self.steps.push(Step {
                rule,
                premises,
                premise_label: fm,
                item: id,
                new: self.labels[id].clone(),
                old,
            });
        }
        if self.config.early_exit {
            if let Some((g, bot)) = &self.goal {
                if self.ids.contains_key(g) || self.ids.contains_key(bot) {
                    self.done = true;
                }
            }
        }
    }

    fn index(&mut self, id: Id) {
        let item = self.items[id].clone();
        match &item {
            Item::Clause { lhs, rhs } => {
                let h = self.ctx(lhs);
                let ix = &mut self.index;
                ix.clauses_by_ctx.entry(h).or_default().push(id);
                for &a in rhs.names() {
                    let entry = ix.clauses_by_ctx_name.entry((h, a)).or_default();
                    if entry.is_empty() {
                        ix.ctxs_by_name.entry(a).or_default().push(h);
                    }
                    entry.push(id);
                    ix.clauses_by_name.entry(a).or_default().push(id);
                }
                if rhs.is_empty() {
                    ix.bottom_by_ctx.insert(h, id);
                }
                if lhs.is_positive() && !item.is_tautology() {
                    if lhs.is_empty() {
                        ix.side3_nullary.push(id);
                    } else {
                        for a in lhs.positives() {
                            ix.side3_by_name.entry(a).or_default().push(id);
                        }
                    }
                }
                if is_anchor(lhs, rhs) {
                    ix.anchors.push((h, id));
                }
            }
            Item::ExClause {
                lhs,
                rhs,
                role,
                filler,
            } => {
                let h = self.ctx(lhs);
                let k = self.ctx(filler);
                let ix = &mut self.index;
                ix.ex_by_ctx_role.entry((h, *role)).or_default().push(id);
                ix.ex_by_role_filler.entry((*role, k)).or_default().push(id);
                ix.ex_by_filler.entry(k).or_default().push(id);
                if let Some(a) = side4_name(lhs, rhs, filler) {
                    ix.side4_by_name.entry(a).or_default().push(id);
                }
            }
            Item::Forall { lhs, role, .. } => {
                self.index
                    .forall_by_name_role
                    .entry((*lhs, *role))
                    .or_default()
                    .push(id);
                self.index.forall_by_name.entry(*lhs).or_default().push(id);
            }
            Item::ExLeft { role, filler, .. } => {
                self.index
                    .exleft_by_role_name
                    .entry((*role, *filler))
                    .or_default()
                    .push(id);
                self.index
                    .exleft_by_name
                    .entry(*filler)
                    .or_default()
                    .push(id);
            }
        }
    }

    fn instances_of(&self, x: Id, out: &mut Vec<Inst<L>>, merge: bool) {
        let ix = &self.index;
        let item = &self.items[x];
        match item {
            Item::Clause { lhs, rhs } => {
                let h = self.ctx_of(lhs).expect("indexed");
                // Rule 1, triggered by a new context.
                self.lazy_tautologies(x, lhs, out);
                // Rule 2.
                for l in lhs
                    .literals()
                    .iter()
                    .filter(|l| l.negated && rhs.contains(l.name))
                {
                    out.push(Inst {
                        label: None,
                        rule: RuleId::R2,
                        premises: vec![x],
                        conclusion: Item::clause(lhs.clone(), rhs.without(l.name)),
                    });
                }
                // Rule 3, x as one of the H ⊑ Nᵢ ⊔ Aᵢ.
                let mut sides: Vec<Id> = rhs
                    .names()
                    .iter()
                    .flat_map(|a| get(&ix.side3_by_name, a))
                    .copied()
                    .collect();
                sides.sort_unstable();
                sides.dedup();
                for s in sides {
                    self.rule3(h, s, Some(x), out, merge);
                }
                // Rule 3, x as the side premise.
                if lhs.is_positive() && !item.is_tautology() {
                    if let Some(first) = lhs.positives().next() {
                        for &ctx in ix
                            .ctxs_by_name
                            .get(&first)
                            .map(Vec::as_slice)
                            .unwrap_or(&[])
                        {
                            self.rule3(ctx, x, None, out, merge);
                        }
                    } else {
                        for &(ctx, anchor) in &ix.anchors {
                            let c = Item::clause(self.ctxs[ctx as usize].clone(), rhs.clone());
                            out.push(Inst {
                                label: None,
                                rule: RuleId::R3,
                                premises: vec![anchor, x],
                                conclusion: c,
                            });
                        }
                    }
                }
                // Rule 3 with a nullary side premise, x anchoring H.
                if is_anchor(lhs, rhs) {
                    for &s in &ix.side3_nullary {
                        let Item::Clause { rhs: n, .. } = &self.items[s] else {
                            unreachable!()
                        };
                        out.push(Inst {
                            label: None,
                            rule: RuleId::R3,
                            premises: vec![x, s],
                            conclusion: Item::clause(lhs.clone(), n.clone()),
                        });
                    }
                }
                for &a in rhs.names() {
                    let rest = rhs.without(a);
                    // Rule 4.
                    for &s in get(&ix.side4_by_name, &a) {
                        out.push(Inst {
                            label: None,
                            rule: RuleId::R4,
                            premises: vec![x, s],
                            conclusion: rule4(lhs, &rest, &self.items[s]),
                        });
                    }
                    // Rule 5, x as K ⊑ N ⊔ A.
                    for &el in get(&ix.exleft_by_name, &a) {
                        let Item::ExLeft { role, rhs: b, .. } = self.items[el] else {
                            unreachable!()
                        };
                        for &e in get(&ix.ex_by_role_filler, &(role, h)) {
                            out.push(Inst {
                                label: None,
                                rule: RuleId::R5,
                                premises: vec![e, x, el],
                                conclusion: rule5(&self.items[e], a, b),
                            });
                        }
                    }
                    // Rule 7, x as H ⊑ N ⊔ A.
                    for &fa in get(&ix.forall_by_name, &a) {
                        let Item::Forall {
                            role, filler: b, ..
                        } = self.items[fa]
                        else {
                            unreachable!()
                        };
                        for &e in get(&ix.ex_by_ctx_role, &(h, role)) {
                            out.push(Inst {
                                label: None,
                                rule: RuleId::R7,
                                premises: vec![e, x, fa],
                                conclusion: rule7(&self.items[e], &rest, b),
                            });
                        }
                    }
                }
                // Rule 6, x as K ⊑ ⊥.
                if rhs.is_empty() {
                    for &e in get(&ix.ex_by_filler, &h) {
                        let Item::ExClause {
                            lhs: eh, rhs: em, ..
                        } = &self.items[e]
                        else {
                            unreachable!()
                        };
                        out.push(Inst {
                            label: None,
                            rule: RuleId::R6,
                            premises: vec![e, x],
                            conclusion: Item::clause(eh.clone(), em.clone()),
                        });
                    }
                }
            }
            Item::ExClause {
                lhs,
                rhs,
                role,
                filler,
            } => {
                let h = self.ctx_of(lhs).expect("indexed");
                let k = self.ctx_of(filler).expect("indexed");
                self.lazy_tautologies(x, lhs, out);
                self.lazy_tautologies(x, filler, out);
                // Rule 4, x as A ⊑ ∃r.B.
                if let Some(a) = side4_name(lhs, rhs, filler) {
                    for &c in get(&ix.clauses_by_name, &a) {
                        let Item::Clause { lhs: ch, rhs: cm } = &self.items[c] else {
                            unreachable!()
                        };
                        out.push(Inst {
                            label: None,
                            rule: RuleId::R4,
                            premises: vec![c, x],
                            conclusion: rule4(ch, &cm.without(a), item),
                        });
                    }
                }
                // Rule 5.
                for &c in get(&ix.clauses_by_ctx, &k) {
                    let Item::Clause { rhs: cm, .. } = &self.items[c] else {
                        unreachable!()
                    };
                    for &a in cm.names() {
                        for &el in get(&ix.exleft_by_role_name, &(*role, a)) {
                            let Item::ExLeft { rhs: b, .. } = self.items[el] else {
                                unreachable!()
                            };
                            out.push(Inst {
                                label: None,
                                rule: RuleId::R5,
                                premises: vec![x, c, el],
                                conclusion: rule5(item, a, b),
                            });
                        }
                    }
                }
                // Rule 6.
                if let Some(&bot) = ix.bottom_by_ctx.get(&k) {
                    out.push(Inst {
                        label: None,
                        rule: RuleId::R6,
                        premises: vec![x, bot],
                        conclusion: Item::clause(lhs.clone(), rhs.clone()),
                    });
                }
                // Rule 7.
                for &c in get(&ix.clauses_by_ctx, &h) {
                    let Item::Clause { rhs: cm, .. } = &self.items[c] else {
                        unreachable!()
                    };
                    for &a in cm.names() {
                        for &fa in get(&ix.forall_by_name_role, &(a, *role)) {
                            let Item::Forall { filler: b, .. } = self.items[fa] else {
                                unreachable!()
                            };
                            out.push(Inst {
                                label: None,
                                rule: RuleId::R7,
                                premises: vec![x, c, fa],
                                conclusion: rule7(item, &cm.without(a), b),
                            });
                        }
                    }
                }
            }
            Item::Forall {
                lhs: a,
                role,
                filler: b,
            } => {
                for &c in get(&ix.clauses_by_name, a) {
                    let Item::Clause { lhs: ch, rhs: cm } = &self.items[c] else {
                        unreachable!()
                    };
                    let h = self.ctx_of(ch).expect("indexed");
                    for &e in get(&ix.ex_by_ctx_role, &(h, *role)) {
                        out.push(Inst {
                            label: None,
                            rule: RuleId::R7,
                            premises: vec![e, c, x],
                            conclusion: rule7(&self.items[e], &cm.without(*a), *b),
                        });
                    }
                }
            }
            Item::ExLeft {
                role,
                filler: a,
                rhs: b,
            } => {
                for &c in get(&ix.clauses_by_name, a) {
                    let Item::Clause { lhs: k, .. } = &self.items[c] else {
                        unreachable!()
                    };
                    let k = self.ctx_of(k).expect("indexed");
                    for &e in get(&ix.ex_by_role_filler, &(*role, k)) {
                        out.push(Inst {
                            label: None,
                            rule: RuleId::R5,
                            premises: vec![e, c, x],
                            conclusion: rule5(&self.items[e], *a, *b),
                        });
                    }
                }
            }
        }
    }

    fn lazy_tautologies(&self, x: Id, h: &Conjunction, out: &mut Vec<Inst<L>>) {
        for a in h.positives() {
            let t = Item::clause(h.clone(), Disjunction::single(a));
            if t != self.items[x] {
                out.push(Inst {
                    label: None,
                    rule: RuleId::R1,
                    premises: vec![x],
                    conclusion: t,
                });
            }
        }
    }

    /// Rule 3 instances for context `h` and side premise `s`. With `fixed`,
    /// only combinations using that item are produced, each once. With
    /// `merge`, combinations with the same conclusion are applied together:
    /// their premise labels are joined by disjunction, which leaves every
    /// final label unchanged while avoiding the full product.
    fn rule3(&self, h: Ctx, s: Id, fixed: Option<Id>, out: &mut Vec<Inst<L>>, merge: bool) {
        let Item::Clause { lhs: side, rhs: n } = &self.items[s] else {
            unreachable!()
        };
        let names: Vec<ConceptName> = side.positives().collect();
        let cands: Vec<&[Id]> = names
            .iter()
            .map(|&a| get(&self.index.clauses_by_ctx_name, &(h, a)))
            .collect();
        if cands.iter().any(|c| c.is_empty()) {
            return;
        }
        let positions: Vec<Option<usize>> = match fixed {
            None => vec![None],
            Some(x) => {
                let Item::Clause { rhs, .. } = &self.items[x] else {
                    unreachable!()
                };
                (0..names.len())
                    .filter(|&i| rhs.contains(names[i]))
                    .map(Some)
                    .collect()
            }
        };
        let ctx = &self.ctxs[h as usize];
        for pos in positions {
            let lists: Vec<Vec<Id>> = (0..names.len())
                .map(|i| match (pos, fixed) {
                    (Some(p), Some(x)) if i == p => vec![x],
                    (Some(p), Some(x)) if i < p => {
                        cands[i].iter().copied().filter(|&c| c != x).collect()
                    }
                    _ => cands[i].to_vec(),
                })
                .collect();
            if lists.iter().any(Vec::is_empty) {
                continue;
            }
            if merge {
                self.rule3_merged(ctx, s, n, &names, &lists, out);
            } else {
                self.rule3_each(ctx, s, n, &names, &lists, out);
            }
        }
    }

    fn residue(&self, c: Id, a: ConceptName) -> Disjunction {
        let Item::Clause { rhs, .. } = &self.items[c] else {
            unreachable!()
        };
        rhs.without(a)
    }

    fn rule3_each(
        &self,
        ctx: &Conjunction,
        s: Id,
        n: &Disjunction,
        names: &[ConceptName],
        lists: &[Vec<Id>],
        out: &mut Vec<Inst<L>>,
    ) {
        let mut choice = vec![0usize; names.len()];
        loop {
            let mut premises: Vec<Id> = (0..names.len()).map(|i| lists[i][choice[i]]).collect();
            let rhs = premises
                .iter()
                .zip(names)
                .fold(n.clone(), |acc, (&p, &a)| acc.union(&self.residue(p, a)));
            premises.push(s);
            out.push(Inst {
                label: None,
                rule: RuleId::R3,
                premises,
                conclusion: Item::clause(ctx.clone(), rhs),
            });
            // advance the odometer
            let mut i = 0;
            while i < names.len() {
                choice[i] += 1;
                if choice[i] < lists[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == names.len() {
                break;
            }
        }
    }

    fn rule3_merged(
        &self,
        ctx: &Conjunction,
        s: Id,
        n: &Disjunction,
        names: &[ConceptName],
        lists: &[Vec<Id>],
        out: &mut Vec<Inst<L>>,
    ) {
        // Partial unions of the residues, each with the disjunction of the
        // label conjunctions reaching it and the premises involved.
        let mut partial: IndexMap<Disjunction, (L, Vec<Id>)> = IndexMap::new();
        partial.insert(n.clone(), (self.labels[s].clone(), vec![s]));
        for (list, &a) in lists.iter().zip(names) {
            let mut next: IndexMap<Disjunction, (L, Vec<Id>)> = IndexMap::new();
            for (u, (label, premises)) in &partial {
                for &c in list {
                    let key = u.union(&self.residue(c, a));
                    let fm = label.conj(&self.labels[c]);
                    match next.get_mut(&key) {
                        Some((l, ps)) => {
                            l.absorb(&fm);
                            if self.config.trace {
                                ps.extend(
                                    premises
                                        .iter()
                                        .copied()
                                        .chain([c])
                                        .filter(|p| !ps.contains(p))
                                        .collect::<Vec<_>>(),
                                );
                            }
                        }
                        None => {
                            let mut ps = premises.clone();
                            if self.config.trace && !ps.contains(&c) {
                                ps.push(c);
                            }
                            next.insert(key, (fm, ps));
                        }
                    }
                }
            }
            partial = next;
        }
        for (rhs, (label, premises)) in partial {
            out.push(Inst {
                label: Some(label),
                rule: RuleId::R3,
                premises,
                conclusion: Item::clause(ctx.clone(), rhs),
            });
        }
    }

    /// Every instance with premises among the processed items, plus the
    /// premise-free tautologies for the eager names.
    pub fn all_instances(&self) -> Vec<RuleInstance> {
        let mut insts = Vec::new();
        for x in 0..self.items.len() {
            if self.processed[x] {
                self.instances_of(x, &mut insts, false);
            }
        }
        let mut out: Vec<RuleInstance> = self
            .eager
            .iter()
            .map(|&a| RuleInstance {
                rule: RuleId::R1,
                premises: Vec::new(),
                conclusions: vec![Item::subsumption(a, a)],
            })
            .collect();
        out.extend(insts.into_iter().map(|i| {
            let mut premises: Vec<Item> = Vec::new();
            for p in i.premises {
                if !premises.contains(&self.items[p]) {
                    premises.push(self.items[p].clone());
                }
            }
            RuleInstance {
                rule: i.rule,
                premises,
                conclusions: vec![i.conclusion],
            }
        }));
        out
    }

    pub fn into_parts(self) -> (Vec<Item>, Vec<L>, Stats, Vec<Step<L>>) {
        (self.items, self.labels, self.stats, self.steps)
    }
}

/// `H ⊑ A` with `A` the least positive literal of `H`: the one tautology
/// that stands for the context `H` itself.
fn is_anchor(lhs: &Conjunction, rhs: &Disjunction) -> bool {
    rhs.len() == 1 && lhs.positives().next() == Some(rhs.names()[0])
}

/// The `A` of an item shaped `A ⊑ ∃r.B`.
fn side4_name(lhs: &Conjunction, rhs: &Disjunction, filler: &Conjunction) -> Option<ConceptName> {
    match (lhs.literals(), filler.literals()) {
        ([a], [b]) if !a.negated && !b.negated && rhs.is_empty() => Some(a.name),
        _ => None,
    }
}

fn rule4(h: &Conjunction, n: &Disjunction, side: &Item) -> Item {
    let Item::ExClause { role, filler, .. } = side else {
        unreachable!()
    };
    Item::ex_clause(h.clone(), n.clone(), *role, filler.clone())
}

fn rule5(e: &Item, a: ConceptName, b: ConceptName) -> Item {
    let Item::ExClause {
        lhs,
        rhs,
        role,
        filler,
    } = e
    else {
        unreachable!()
    };
    let m = rhs.union(&Disjunction::single(b));
    if filler.contains(Literal::pos(a)) {
        Item::clause(lhs.clone(), m)
    } else {
        Item::ex_clause(lhs.clone(), m, *role, filler.with(Literal::neg(a)))
    }
}

fn rule7(e: &Item, n: &Disjunction, b: ConceptName) -> Item {
    let Item::ExClause {
        lhs,
        rhs,
        role,
        filler,
    } = e
    else {
        unreachable!()
    };
    let m = rhs.union(n);
    if filler.contains(Literal::neg(b)) {
        Item::clause(lhs.clone(), m)
    } else {
        Item::ex_clause(lhs.clone(), m, *role, filler.with(Literal::pos(b)))
    }
}
