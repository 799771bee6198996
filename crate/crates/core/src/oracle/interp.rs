use std::collections::BTreeMap;
use std::fmt;

use crate::concept::Concept;
use crate::error::{Error, Result};
use crate::ontology::Ontology;
use crate::symbol::{ConceptName, RoleName};

/// Largest domain an [`Interpretation`] can hold.
pub const MAX_ELEMENTS: usize = 64;

/// A set of domain elements `0..64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Elements(u64);

impl Elements {
    pub const EMPTY: Elements = Elements(0);

    /// `{0, .., n-1}`
    pub fn first(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            Elements(u64::MAX)
        } else {
            Elements((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        Elements(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        e < MAX_ELEMENTS && self.0 >> e & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        self.0 |= 1 << e;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Elements) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_ELEMENTS).filter(move |&e| self.contains(e))
    }
}

impl FromIterator<usize> for Elements {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut out = Elements::EMPTY;
        for e in iter {
            out.insert(e);
        }
        out
    }
}

impl fmt::Display for Elements {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Elements {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite interpretation over the domain `{0, .., size-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Interpretation {
    size: usize,
    concepts: BTreeMap<ConceptName, Elements>,
    /// Successor sets, indexed by source element.
    roles: BTreeMap<RoleName, Vec<Elements>>,
}

impl Interpretation {
    /// An interpretation with `size` elements and no names interpreted yet.
    pub fn new(size: usize) -> Self {
        assert!(
            (1..=MAX_ELEMENTS).contains(&size),
            "domain size must be in 1..={MAX_ELEMENTS}"
        );
        Interpretation {
            size,
            concepts: BTreeMap::new(),
            roles: BTreeMap::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn domain(&self) -> Elements {
        Elements::first(self.size)
    }

    /// Sets `name`'s extension, clipped to the domain.
    pub fn set_concept(&mut self, name: ConceptName, ext: Elements) {
        self.concepts
            .insert(name, Elements(ext.0 & self.domain().0));
    }

    pub fn with_concept(
        mut self,
        name: impl Into<ConceptName>,
        ext: impl IntoIterator<Item = usize>,
    ) -> Self {
        self.set_concept(name.into(), ext.into_iter().collect());
        self
    }

    /// Interprets `role` as empty if it is not yet interpreted.
    pub fn declare_role(&mut self, role: RoleName) {
        let n = self.size;
        self.roles
            .entry(role)
            .or_insert_with(|| vec![Elements::EMPTY; n]);
    }

    pub fn add_edge(&mut self, role: RoleName, from: usize, to: usize) {
        assert!(from < self.size && to < self.size);
        self.declare_role(role);
        self.roles.get_mut(&role).unwrap()[from].insert(to);
    }

    pub fn with_edges(
        mut self,
        role: impl Into<RoleName>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let role = role.into();
        self.declare_role(role);
        for (d, e) in edges {
            self.add_edge(role, d, e);
        }
        self
    }

    pub fn concept(&self, name: ConceptName) -> Option<Elements> {
        if name.is_bottom() {
            return Some(Elements::EMPTY);
        }
        self.concepts.get(&name).copied()
    }

    pub fn successors(&self, role: RoleName, from: usize) -> Option<Elements> {
        self.roles.get(&role).map(|s| s[from])
    }

    pub fn edges(&self, role: RoleName) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.roles.get(&role).into_iter().flat_map(|s| {
            s.iter()
                .enumerate()
                .flat_map(|(d, es)| es.iter().map(move |e| (d, e)))
        })
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ={}", self.domain())?;
        for (name, ext) in &self.concepts {
            write!(f, "; {name}={ext}")?;
        }
        for &role in self.roles.keys() {
            let pairs: Vec<String> = self
                .edges(role)
                .map(|(d, e)| format!("({d},{e})"))
                .collect();
            write!(f, "; {role}={{{}}}", pairs.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `C^I`, by induction on the primitive constructors.
pub fn eval_concept(interp: &Interpretation, concept: &Concept) -> Result<Elements> {
    let domain = interp.domain();
    Ok(match concept {
        Concept::Name(n) => interp
            .concept(*n)
            .ok_or_else(|| Error::UnknownName(n.to_string()))?,
        Concept::Not(c) => Elements(domain.0 & !eval_concept(interp, c)?.0),
        Concept::And(c, d) => Elements(eval_concept(interp, c)?.0 & eval_concept(interp, d)?.0),
        Concept::Exists(r, c) => {
            let fillers = eval_concept(interp, c)?;
            let succ = interp
                .roles
                .get(r)
                .ok_or_else(|| Error::UnknownName(r.to_string()))?;
            succ.iter()
                .enumerate()
                .filter(|(_, s)| s.0 & fillers.0 != 0)
                .map(|(d, _)| d)
                .collect()
        }
    })
}

pub fn satisfies_gci(interp: &Interpretation, lhs: &Concept, rhs: &Concept) -> Result<bool> {
    Ok(eval_concept(interp, lhs)?.is_subset(eval_concept(interp, rhs)?))
}

pub fn is_model(interp: &Interpretation, ontology: &Ontology) -> Result<bool> {
    for ax in ontology.iter() {
        if !satisfies_gci(interp, &ax.lhs, &ax.rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}
