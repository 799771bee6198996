//! Bounded model search by backtracking over a partial interpretation.
//!
//! Each extension is kept as a pair `(lo, hi)` of certainly-in and
//! possibly-in elements. Concepts are evaluated three-valued over these
//! bounds, and a branch is cut as soon as some axiom is certainly violated.
//! Countermodels are found with a propositional encoding instead, see
//! [`Countermodels`].

use std::collections::{BTreeSet, HashMap};

use super::interp::{Elements, Interpretation};
use super::sat::Encoding;
use crate::concept::Concept;
use crate::error::{Error, Result};
use crate::normalize::NormalizedOntology;
use crate::ontology::Ontology;
use crate::symbol::{ConceptName, RoleName};

pub const DEFAULT_MAX_DOMAIN: usize = 3;
/// Largest domain size the search accepts.
pub const MAX_DOMAIN_BOUND: usize = 6;

#[derive(Clone, Copy, Debug)]
struct Bounds {
    lo: u64,
    hi: u64,
}

#[derive(Clone, Copy, Debug)]
enum Var {
    Concept(usize, usize),
    Edge(usize, usize, usize),
}

#[derive(Clone)]
struct Partial {
    concepts: Vec<Bounds>,
    /// `edges[role][from]`
    edges: Vec<Vec<Bounds>>,
}

impl Partial {
    fn fix(&mut self, var: Var, value: bool) {
        let (b, bit) = match var {
            Var::Concept(i, d) => (&mut self.concepts[i], 1u64 << d),
            Var::Edge(r, d, e) => (&mut self.edges[r][d], 1u64 << e),
        };
        if value {
            b.lo |= bit;
        } else {
            b.hi &= !bit;
        }
    }
}

/// Models of a fixed set of GCIs over a fixed signature.
#[derive(Clone)]
pub struct ModelSearch {
    axioms: Vec<(Concept, Concept)>,
    names: Vec<ConceptName>,
    roles: Vec<RoleName>,
    definitions: HashMap<ConceptName, Concept>,
    max_domain: usize,
}

impl ModelSearch {
    /// Models of `ontology` over its own signature.
    pub fn new(ontology: &Ontology) -> Self {
        let (names, roles) = ontology.signature();
        ModelSearch {
            axioms: ontology
                .iter()
                .map(|a| (a.lhs.clone(), a.rhs.clone()))
                .collect(),
            names: names.into_iter().filter(|n| !n.is_bottom()).collect(),
            roles: roles.into_iter().collect(),
            definitions: HashMap::new(),
            max_domain: DEFAULT_MAX_DOMAIN,
        }
    }

    pub fn max_domain(mut self, max_domain: usize) -> Result<Self> {
        if max_domain > MAX_DOMAIN_BOUND {
            return Err(Error::BoundExceeded {
                what: "domain size",
                got: max_domain,
                bound: MAX_DOMAIN_BOUND,
            });
        }
        self.max_domain = max_domain;
        Ok(self)
    }

    /// Widens the signature; the extra symbols are interpreted freely.
    pub fn with_signature(
        mut self,
        names: impl IntoIterator<Item = ConceptName>,
        roles: impl IntoIterator<Item = RoleName>,
    ) -> Self {
        let names: BTreeSet<ConceptName> = self
            .names
            .iter()
            .copied()
            .chain(names)
            .filter(|n| !n.is_bottom())
            .collect();
        let roles: BTreeSet<RoleName> = self.roles.iter().copied().chain(roles).collect();
        self.names = names.into_iter().collect();
        self.roles = roles.into_iter().collect();
        self
    }

    /// Interprets the fresh names of `normalized` by their definitions, so
    /// normalized items can be checked against models of the input.
    pub fn with_fresh_names(mut self, normalized: &NormalizedOntology) -> Self {
        for f in normalized.fresh_names() {
            if let Some(def) = normalized.fresh_definition(f) {
                self.definitions.insert(f, def.clone());
            }
        }
        let roles = normalized.roles().iter().copied();
        let names: Vec<ConceptName> = normalized
            .names()
            .iter()
            .copied()
            .filter(|n| !normalized.is_fresh(*n))
            .collect();
        self.with_signature(names, roles)
    }

    /// Every model with domain `{0..k}` for `k` from 1 to the bound.
    pub fn models(&self) -> Models {
        Models {
            search: self.clone(),
            size: 0,
            stack: Vec::new(),
            vars: Vec::new(),
        }
    }

    /// A model in which element 0 is in `lhs` but not in `rhs`.
    pub fn countermodel(&self, lhs: &Concept, rhs: &Concept) -> Option<Interpretation> {
        self.countermodels().find(lhs, rhs)
    }

    /// A reusable countermodel finder, for checking many GCIs.
    pub fn countermodels(&self) -> Countermodels {
        Countermodels {
            search: self.clone(),
            encodings: Vec::new(),
        }
    }

    fn vars(&self, size: usize) -> Vec<Var> {
        let mut vars = Vec::new();
        for d in 0..size {
            vars.extend((0..self.names.len()).map(|i| Var::Concept(i, d)));
        }
        for d in 0..size {
            for r in 0..self.roles.len() {
                vars.extend((0..size).map(|e| Var::Edge(r, d, e)));
            }
        }
        vars
    }

    fn eval(&self, p: &Partial, size: usize, c: &Concept) -> Bounds {
        let all = Elements::first(size).bits();
        match c {
            Concept::Name(n) if n.is_bottom() => Bounds { lo: 0, hi: 0 },
            Concept::Name(n) => match self.names.binary_search(n) {
                Ok(i) => p.concepts[i],
                Err(_) => match self.definitions.get(n) {
                    Some(def) => self.eval(p, size, def),
                    None => Bounds { lo: 0, hi: all },
                },
            },
            Concept::Not(c) => {
                let b = self.eval(p, size, c);
                Bounds {
                    lo: all & !b.hi,
                    hi: all & !b.lo,
                }
            }
            Concept::And(c, d) => {
                let (x, y) = (self.eval(p, size, c), self.eval(p, size, d));
                Bounds {
                    lo: x.lo & y.lo,
                    hi: x.hi & y.hi,
                }
            }
            Concept::Exists(r, c) => {
                let b = self.eval(p, size, c);
                let Ok(r) = self.roles.binary_search(r) else {
                    return Bounds { lo: 0, hi: all };
                };
                let mut out = Bounds { lo: 0, hi: 0 };
                for (d, s) in p.edges[r].iter().enumerate() {
                    if s.lo & b.lo != 0 {
                        out.lo |= 1 << d;
                    }
                    if s.hi & b.hi != 0 {
                        out.hi |= 1 << d;
                    }
                }
                out
            }
        }
    }

    fn consistent(&self, p: &Partial, size: usize) -> bool {
        self.axioms
            .iter()
            .all(|(c, d)| self.eval(p, size, c).lo & !self.eval(p, size, d).hi == 0)
    }

    fn extract(&self, p: &Partial, size: usize) -> Interpretation {
        let mut out = Interpretation::new(size);
        for (i, &n) in self.names.iter().enumerate() {
            out.set_concept(n, Elements::from_bits(p.concepts[i].lo));
        }
        for (r, &role) in self.roles.iter().enumerate() {
            out.declare_role(role);
            for (d, s) in p.edges[r].iter().enumerate() {
                for e in Elements::from_bits(s.lo).iter() {
                    out.add_edge(role, d, e);
                }
            }
        }
        out
    }
}

/// Lazy depth-first enumeration; see [`ModelSearch::models`].
pub struct Models {
    search: ModelSearch,
    size: usize,
    stack: Vec<(Partial, usize)>,
    vars: Vec<Var>,
}

impl Models {
    fn start(&mut self) -> bool {
        if self.size >= self.search.max_domain {
            return false;
        }
        self.size += 1;
        self.vars = self.search.vars(self.size);
        let all = Elements::first(self.size).bits();
        let open = Bounds { lo: 0, hi: all };
        let p = Partial {
            concepts: vec![open; self.search.names.len()],
            edges: vec![vec![open; self.size]; self.search.roles.len()],
        };
        self.stack.push((p, 0));
        true
    }
}

impl Iterator for Models {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        loop {
            let Some((p, k)) = self.stack.pop() else {
                if self.start() {
                    continue;
                }
                return None;
            };
            let size = self.size;
            if !self.search.consistent(&p, size) {
                continue;
            }
            if k == self.vars.len() {
                return Some(self.search.extract(&p, size));
            }
            let mut no = p.clone();
            no.fix(self.vars[k], false);
            let mut yes = p;
            yes.fix(self.vars[k], true);
            self.stack.push((yes, k + 1));
            self.stack.push((no, k + 1));
        }
    }
}

/// Searches domains of size 1 up to the bound for a model of the axioms
/// violating a given GCI at element 0. Any model violating it somewhere
/// can be renamed into one violating it at 0.
pub struct Countermodels {
    search: ModelSearch,
    encodings: Vec<Encoding>,
}

impl Countermodels {
    pub fn find(&mut self, lhs: &Concept, rhs: &Concept) -> Option<Interpretation> {
        let target = Concept::and(lhs.clone(), Concept::not(rhs.clone()));
        for size in 1..=self.search.max_domain {
            if self.encodings.len() < size {
                let s = &self.search;
                self.encodings.push(Encoding::new(
                    size,
                    &s.axioms,
                    &s.names,
                    &s.roles,
                    &s.definitions,
                ));
            }
            if let Some(m) = self.encodings[size - 1].witness(&target) {
                return Some(m);
            }
        }
        None
    }
}

/// Every model of `ontology` over its signature with at most `max_domain`
/// elements, smallest domains first.
pub fn enumerate_models(ontology: &Ontology, max_domain: usize) -> Result<Models> {
    Ok(ModelSearch::new(ontology).max_domain(max_domain)?.models())
}
