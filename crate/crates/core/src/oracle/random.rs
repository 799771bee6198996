use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::concept::Concept;
use crate::normalize::normalize;
use crate::ontology::{LabelledAxiom, Ontology};
use crate::symbol::{ConceptName, RoleName};

/// Shape limits for generated ontologies.
#[derive(Clone, Copy, Debug)]
pub struct GeneratorConfig {
    pub max_axioms: usize,
    /// Names are drawn from `A, B, ...`.
    pub names: usize,
    /// Roles are drawn from `r, s, ...`.
    pub roles: usize,
    pub max_depth: usize,
    /// Constructors per side, roughly.
    pub max_size: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            max_axioms: 6,
            names: 4,
            roles: 2,
            max_depth: 2,
            max_size: 4,
        }
    }
}

/// Seeded generator of small labelled ontologies, labels `a1, a2, ...`.
pub struct Generator {
    rng: ChaCha8Rng,
    config: GeneratorConfig,
    names: Vec<ConceptName>,
    roles: Vec<RoleName>,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Self::with_config(seed, GeneratorConfig::default())
    }

    pub fn with_config(seed: u64, config: GeneratorConfig) -> Self {
        assert!(config.names <= 26 && config.roles <= 9 && config.names > 0);
        let names = (0..config.names)
            .map(|i| ConceptName::new(&((b'A' + i as u8) as char).to_string()))
            .collect();
        let roles = (0..config.roles)
            .map(|i| RoleName::new(&((b'r' + i as u8) as char).to_string()))
            .collect();
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            config,
            names,
            roles,
        }
    }

    pub fn names(&self) -> &[ConceptName] {
        &self.names
    }

    pub fn ontology(&mut self) -> Ontology {
        let n = self.rng.gen_range(1..=self.config.max_axioms);
        let axioms = (1..=n).map(|k| {
            let lhs = self.concept(self.config.max_depth, self.config.max_size);
            let rhs = self.concept(self.config.max_depth, self.config.max_size);
            LabelledAxiom::new(format!("a{k}").as_str(), lhs, rhs)
        });
        let axioms: Vec<_> = axioms.collect();
        Ontology::from_axioms(axioms).expect("labels are distinct")
    }

    pub fn concept(&mut self, depth: usize, size: usize) -> Concept {
        if size <= 1 {
            return self.atom();
        }
        let roll = self.rng.gen_range(0..100);
        let quantifier = depth > 0 && !self.roles.is_empty();
        match roll {
            0..=39 => self.atom(),
            40..=49 => Concept::not(self.concept(depth, size - 1)),
            50..=64 => {
                let left = self.rng.gen_range(1..size);
                Concept::and(self.concept(depth, left), self.concept(depth, size - left))
            }
            65..=74 => {
                let left = self.rng.gen_range(1..size);
                Concept::or(self.concept(depth, left), self.concept(depth, size - left))
            }
            75..=89 if quantifier => {
                let r = self.role();
                Concept::exists(r, self.concept(depth - 1, size - 1))
            }
            90..=99 if quantifier => {
                let r = self.role();
                Concept::forall(r, self.concept(depth - 1, size - 1))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Concept {
        match self.rng.gen_range(0..100) {
            0..=2 => Concept::top(),
            3..=5 => Concept::bot(),
            _ => Concept::name(self.names[self.rng.gen_range(0..self.names.len())]),
        }
    }

    fn role(&mut self) -> RoleName {
        self.roles[self.rng.gen_range(0..self.roles.len())]
    }
}

/// The ontology generated from `seed` under the default limits.
pub fn random_ontology(seed: u64) -> Ontology {
    Generator::new(seed).ontology()
}

/// Most names a corpus ontology may have after normalization.
pub const MAX_CORPUS_NAMES: usize = 11;

/// The first `count` seeds, counting from 0, whose ontologies normalize to
/// at most [`MAX_CORPUS_NAMES`] names, paired with those ontologies.
pub fn corpus(count: usize) -> Vec<(u64, Ontology)> {
    (0..)
        .map(|seed| (seed, random_ontology(seed)))
        .filter(|(_, o)| normalize(o).names().len() <= MAX_CORPUS_NAMES)
        .take(count)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn within_limits_and_reproducible() {
        for seed in 0..100 {
            let o = random_ontology(seed);
            assert!((1..=6).contains(&o.len()));
            let (names, roles) = o.signature();
            assert!(names.iter().filter(|n| !n.is_bottom()).count() <= 4);
            assert!(roles.len() <= 2);
            assert!(o
                .iter()
                .all(|a| a.lhs.role_depth() <= 2 && a.rhs.role_depth() <= 2));
            assert!(o == random_ontology(seed));
        }
    }

    #[test]
    fn corpus_is_filtered_prefix() {
        let c = corpus(20);
        assert_eq!(c.len(), 20);
        assert!(c.windows(2).all(|w| w[0].0 < w[1].0));
        assert!(c.iter().all(|(seed, o)| *o == random_ontology(*seed)));
    }
}
