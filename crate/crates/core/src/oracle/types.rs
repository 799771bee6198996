//! Subsumption by type elimination, independent of the rule engine.
//!
//! A type fixes the truth of every concept name and existential
//! restriction in the closure; the rest of the closure follows. Types
//! violating an axiom are dropped, then types with an unsatisfiable
//! existential are dropped until nothing changes. The survivors are the
//! element types realizable in some model.

use std::collections::{HashMap, HashSet};

use crate::concept::Concept;
use crate::error::{Error, Result};
use crate::ontology::Ontology;
use crate::symbol::{ConceptName, RoleName};

/// Most names plus existentials the elimination will enumerate over.
pub const MAX_ATOMS: usize = 16;
const MAX_CLOSURE: usize = 128;

enum Node {
    Bot,
    Atom(usize),
    Not(usize),
    And(usize, usize),
}

/// The realizable types of an ontology, extended by some extra names.
pub struct TypeElimination {
    index: HashMap<Concept, usize>,
    nodes: Vec<Node>,
    survivors: Vec<u128>,
}

impl TypeElimination {
    pub fn new(ontology: &Ontology, extra: impl IntoIterator<Item = ConceptName>) -> Result<Self> {
        let mut b = Builder::default();
        let axioms: Vec<(usize, usize)> = ontology
            .iter()
            .map(|a| (b.add(&a.lhs), b.add(&a.rhs)))
            .collect();
        for n in extra {
            b.add(&Concept::name(n));
        }
        if b.atoms.len() > MAX_ATOMS {
            return Err(Error::BoundExceeded {
                what: "type atoms",
                got: b.atoms.len(),
                bound: MAX_ATOMS,
            });
        }
        if b.nodes.len() > MAX_CLOSURE {
            return Err(Error::BoundExceeded {
                what: "closure size",
                got: b.nodes.len(),
                bound: MAX_CLOSURE,
            });
        }
        let Builder {
            index,
            nodes,
            atoms,
        } = b;

        let truth = |assignment: u32| -> u128 {
            let mut t = 0u128;
            for (i, n) in nodes.iter().enumerate() {
                let v = match *n {
                    Node::Bot => false,
                    Node::Atom(a) => assignment >> a & 1 == 1,
                    Node::Not(c) => t >> c & 1 == 0,
                    Node::And(c, d) => t >> c & 1 == 1 && t >> d & 1 == 1,
                };
                t |= (v as u128) << i;
            }
            t
        };
        let mut alive: Vec<u128> = (0..1u32 << atoms.len())
            .map(truth)
            .filter(|t| {
                axioms
                    .iter()
                    .all(|&(c, d)| t >> c & 1 == 0 || t >> d & 1 == 1)
            })
            .collect();

        // Per role: (node of ∃r.C, node of C).
        let mut by_role: HashMap<RoleName, Vec<(usize, usize)>> = HashMap::new();
        for a in &atoms {
            if let Atom::Exists(r, filler, node) = *a {
                by_role.entry(r).or_default().push((node, filler));
            }
        }
        loop {
            let before = alive.len();
            for ex in by_role.values() {
                // Which fillers each surviving type realizes.
                let profiles: HashSet<u64> =
                    alive.iter().map(|t| profile(ex, *t, |&(_, f)| f)).collect();
                alive.retain(|t| {
                    let allowed = profile(ex, *t, |&(e, _)| e);
                    (0..ex.len()).filter(|k| allowed >> k & 1 == 1).all(|k| {
                        profiles
                            .iter()
                            .any(|&m| m >> k & 1 == 1 && m & !allowed == 0)
                    })
                });
            }
            if alive.len() == before {
                break;
            }
        }
        Ok(TypeElimination {
            index,
            nodes,
            survivors: alive,
        })
    }

    /// No realizable type is in `c` but not in `d`.
    pub fn subsumes(&self, c: ConceptName, d: ConceptName) -> Result<bool> {
        let bit = |n: ConceptName| -> Result<Option<usize>> {
            if n.is_bottom() {
                return Ok(None);
            }
            self.index
                .get(&Concept::name(n))
                .copied()
                .map(Some)
                .ok_or_else(|| Error::UnknownName(n.to_string()))
        };
        let (Some(c), d) = (bit(c)?, bit(d)?) else {
            return Ok(true);
        };
        Ok(self
            .survivors
            .iter()
            .all(|t| t >> c & 1 == 0 || d.is_some_and(|d| t >> d & 1 == 1)))
    }

    /// The ontology has a model.
    pub fn satisfiable(&self) -> bool {
        !self.survivors.is_empty()
    }

    pub fn closure_size(&self) -> usize {
        self.nodes.len()
    }
}

fn profile(ex: &[(usize, usize)], t: u128, pick: impl Fn(&(usize, usize)) -> usize) -> u64 {
    ex.iter()
        .enumerate()
        .fold(0, |m, (k, p)| m | (((t >> pick(p)) & 1) as u64) << k)
}

#[derive(Clone, Copy)]
enum Atom {
    Name,
    Exists(RoleName, usize, usize),
}

#[derive(Default)]
struct Builder {
    index: HashMap<Concept, usize>,
    nodes: Vec<Node>,
    atoms: Vec<Atom>,
}

impl Builder {
    fn add(&mut self, c: &Concept) -> usize {
        if let Some(&i) = self.index.get(c) {
            return i;
        }
        let node = match c {
            Concept::Name(n) if n.is_bottom() => Node::Bot,
            Concept::Name(_) => {
                self.atoms.push(Atom::Name);
                Node::Atom(self.atoms.len() - 1)
            }
            Concept::Not(d) => Node::Not(self.add(d)),
            Concept::And(d, e) => {
                let d = self.add(d);
                Node::And(d, self.add(e))
            }
            Concept::Exists(r, d) => {
                let filler = self.add(d);
                let at = self.nodes.len();
                self.atoms.push(Atom::Exists(*r, filler, at));
                Node::Atom(self.atoms.len() - 1)
            }
        };
        self.nodes.push(node);
        self.index.insert(c.clone(), self.nodes.len() - 1);
        self.nodes.len() - 1
    }
}

/// `ontology ⊨ c ⊑ d`, decided by type elimination.
pub fn subsumes_by_types(ontology: &Ontology, c: ConceptName, d: ConceptName) -> Result<bool> {
    TypeElimination::new(ontology, [c, d])?.subsumes(c, d)
}
