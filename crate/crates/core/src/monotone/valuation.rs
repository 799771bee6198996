use std::cmp::Ordering;
use std::fmt;

use crate::symbol::{by_spelling, AxiomId};

/// A propositional valuation, identified with the set of variables it makes
/// true. Stored as a bitset over [`AxiomId`] indices with no trailing zero
/// words, so derived equality and hashing are set equality and hashing.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Valuation {
    words: Vec<u64>,
}

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(id: AxiomId) -> Self {
        let mut v = Self::new();
        v.insert(id);
        v
    }

    pub fn insert(&mut self, id: AxiomId) -> bool {
        let (w, b) = (id.index() / 64, id.index() % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, id: AxiomId) -> bool {
        let (w, b) = (id.index() / 64, id.index() % 64);
        if w >= self.words.len() || self.words[w] & (1 << b) == 0 {
            return false;
        }
        self.words[w] &= !(1 << b);
        self.trim();
        true
    }

    pub fn contains(&self, id: AxiomId) -> bool {
        let (w, b) = (id.index() / 64, id.index() % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_subset(&self, other: &Valuation) -> bool {
        self.words.len() <= other.words.len()
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Valuation) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &Valuation) -> Valuation {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        Valuation { words }
    }

    pub fn difference(&self, other: &Valuation) -> Valuation {
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        let mut v = Valuation { words };
        v.trim();
        v
    }

    pub fn iter(&self) -> impl Iterator<Item = AxiomId> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            (0..64)
                .filter(move |b| word & (1u64 << b) != 0)
                .map(move |b| AxiomId::from_index(wi * 64 + b))
        })
    }

    /// Members sorted by spelling.
    pub fn sorted(&self) -> Vec<AxiomId> {
        let mut v: Vec<AxiomId> = self.iter().collect();
        v.sort_by(by_spelling);
        v
    }

    /// Every subset of `self`, smallest first.
    pub fn subsets(&self) -> Vec<Valuation> {
        let members: Vec<AxiomId> = self.iter().collect();
        let n = members.len();
        assert!(n < 31, "refusing to enumerate 2^{n} subsets");
        let mut out: Vec<Valuation> = (0u32..(1 << n))
            .map(|mask| {
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| members[i])
                    .collect()
            })
            .collect();
        out.sort_by_key(Valuation::len);
        out
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    /// Canonical order used inside antichains: by size, then by bits.
    pub(crate) fn canonical_cmp(&self, other: &Valuation) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.words.len().cmp(&other.words.len()))
            .then_with(|| {
                for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl FromIterator<AxiomId> for Valuation {
    fn from_iter<I: IntoIterator<Item = AxiomId>>(iter: I) -> Self {
        let mut v = Valuation::new();
        for id in iter {
            v.insert(id);
        }
        v
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, id) in self.sorted().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
