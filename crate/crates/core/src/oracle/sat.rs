//! Countermodel search over a fixed finite domain, by propositional
//! encoding: one variable per (subconcept, element) and per edge.

use std::collections::{HashMap, HashSet};

use varisat::{ExtendFormula, Lit, Solver};

use super::interp::{Elements, Interpretation};
use crate::concept::Concept;
use crate::symbol::{ConceptName, RoleName};

/// The models of some GCIs with domain `{0..size}`, kept in an incremental
/// solver so that many queries share one encoding.
pub(super) struct Encoding {
    solver: Solver<'static>,
    size: usize,
    names: Vec<ConceptName>,
    roles: Vec<RoleName>,
    definitions: HashMap<ConceptName, Concept>,
    memo: HashMap<Concept, Vec<Lit>>,
    atoms: HashMap<ConceptName, Vec<Lit>>,
    edges: HashMap<RoleName, Vec<Vec<Lit>>>,
}

impl Encoding {
    pub(super) fn new(
        size: usize,
        axioms: &[(Concept, Concept)],
        names: &[ConceptName],
        roles: &[RoleName],
        definitions: &HashMap<ConceptName, Concept>,
    ) -> Self {
        let mut e = Encoding {
            solver: Solver::new(),
            size,
            names: names.to_vec(),
            roles: roles.to_vec(),
            definitions: definitions.clone(),
            memo: HashMap::new(),
            atoms: HashMap::new(),
            edges: HashMap::new(),
        };
        for n in names {
            e.atom(*n);
        }
        for r in roles {
            e.edge(*r);
        }
        for (c, d) in axioms {
            let (c, d) = (e.encode(c), e.encode(d));
            for (x, y) in c.into_iter().zip(d) {
                e.solver.add_clause(&[!x, y]);
            }
        }
        e
    }

    fn atom(&mut self, n: ConceptName) -> Vec<Lit> {
        if let Some(v) = self.atoms.get(&n) {
            return v.clone();
        }
        let v: Vec<Lit> = (0..self.size).map(|_| self.solver.new_lit()).collect();
        self.atoms.insert(n, v.clone());
        v
    }

    fn edge(&mut self, r: RoleName) -> Vec<Vec<Lit>> {
        if let Some(v) = self.edges.get(&r) {
            return v.clone();
        }
        let v: Vec<Vec<Lit>> = (0..self.size)
            .map(|_| (0..self.size).map(|_| self.solver.new_lit()).collect())
            .collect();
        self.edges.insert(r, v.clone());
        v
    }

    /// `x ↔ ⋀ parts`.
    fn define_and(&mut self, x: Lit, parts: &[Lit]) {
        for &p in parts {
            self.solver.add_clause(&[!x, p]);
        }
        let mut long: Vec<Lit> = parts.iter().map(|&p| !p).collect();
        long.push(x);
        self.solver.add_clause(&long);
    }

    fn encode(&mut self, c: &Concept) -> Vec<Lit> {
        if let Some(v) = self.memo.get(c) {
            return v.clone();
        }
        let v = match c {
            Concept::Name(n) if n.is_bottom() => {
                let f = self.solver.new_lit();
                self.solver.add_clause(&[!f]);
                vec![f; self.size]
            }
            Concept::Name(n) => match self.definitions.get(n).cloned() {
                Some(def) => self.encode(&def),
                None => self.atom(*n),
            },
            Concept::Not(d) => self.encode(d).into_iter().map(|x| !x).collect(),
            Concept::And(d, e) => {
                let (d, e) = (self.encode(d), self.encode(e));
                let mut out = Vec::with_capacity(self.size);
                for (a, b) in d.into_iter().zip(e) {
                    let x = self.solver.new_lit();
                    self.define_and(x, &[a, b]);
                    out.push(x);
                }
                out
            }
            Concept::Exists(r, d) => {
                let filler = self.encode(d);
                let edges = self.edge(*r);
                let mut out = Vec::with_capacity(self.size);
                for row in edges {
                    let x = self.solver.new_lit();
                    let mut witnesses = vec![!x];
                    for (e, f) in row.into_iter().zip(&filler) {
                        let y = self.solver.new_lit();
                        self.define_and(y, &[e, *f]);
                        self.solver.add_clause(&[!y, x]);
                        witnesses.push(y);
                    }
                    self.solver.add_clause(&witnesses);
                    out.push(x);
                }
                out
            }
        };
        self.memo.insert(c.clone(), v.clone());
        v
    }

    /// A model where element 0 belongs to `c`.
    pub(super) fn witness(&mut self, c: &Concept) -> Option<Interpretation> {
        let x = self.encode(c)[0];
        self.solver.assume(&[x]);
        if !self
            .solver
            .solve()
            .expect("no proof or interrupt is configured")
        {
            return None;
        }
        let model = self
            .solver
            .model()
            .expect("a model after a satisfiable solve");
        let truth: HashSet<Lit> = model.into_iter().filter(|l| l.is_positive()).collect();
        let mut out = Interpretation::new(self.size);
        for n in &self.names {
            let members = self.atoms[n]
                .iter()
                .enumerate()
                .filter(|(_, l)| truth.contains(l))
                .map(|(d, _)| d);
            out.set_concept(*n, Elements::from_iter(members));
        }
        for r in &self.roles {
            out.declare_role(*r);
            for (d, row) in self.edges[r].iter().enumerate() {
                for (e, l) in row.iter().enumerate() {
                    if truth.contains(l) {
                        out.add_edge(*r, d, e);
                    }
                }
            }
        }
        Some(out)
    }
}
