//! Interned identifiers for concept names, role names and axiom labels.
//!
//! Each kind has its own process-wide table, so identifiers of one kind are
//! dense small integers. Interning is injective: equal spellings map to the
//! same identifier and distinct spellings to distinct ones.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

#[derive(Default)]
struct Table {
    names: Vec<Arc<str>>,
    ids: HashMap<Arc<str>, u32>,
}

impl Table {
    fn intern(lock: &RwLock<Table>, spelling: &str) -> u32 {
        if let Some(&id) = lock.read().expect("interner poisoned").ids.get(spelling) {
            return id;
        }
        let mut table = lock.write().expect("interner poisoned");
        if let Some(&id) = table.ids.get(spelling) {
            return id;
        }
        let id = u32::try_from(table.names.len()).expect("interner overflow");
        let name: Arc<str> = Arc::from(spelling);
        table.names.push(name.clone());
        table.ids.insert(name, id);
        id
    }

    fn resolve(lock: &RwLock<Table>, id: u32) -> Arc<str> {
        lock.read().expect("interner poisoned").names[id as usize].clone()
    }
}

fn concept_table() -> &'static RwLock<Table> {
    static TABLE: OnceLock<RwLock<Table>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let table = RwLock::new(Table::default());
        // Slot 0 is the reserved name behind the bottom abbreviation.
        Table::intern(&table, BOTTOM_SPELLING);
        table
    })
}

fn role_table() -> &'static RwLock<Table> {
    static TABLE: OnceLock<RwLock<Table>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

fn axiom_table() -> &'static RwLock<Table> {
    static TABLE: OnceLock<RwLock<Table>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

const BOTTOM_SPELLING: &str = "⊥";

macro_rules! symbol {
    ($(#[$meta:meta])* $name:ident, $table:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(u32);

        impl $name {
            pub fn new(spelling: &str) -> Self {
                Self(Table::intern($table(), spelling))
            }

            /// Dense index of this identifier inside its table.
            pub fn index(self) -> usize {
                self.0 as usize
            }

            pub fn from_index(index: usize) -> Self {
                let table = $table().read().expect("interner poisoned");
                assert!(index < table.names.len(), "no symbol with index {index}");
                Self(index as u32)
            }

            pub fn as_str(self) -> Arc<str> {
                Table::resolve($table(), self.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.as_str())
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.as_str())
            }
        }

        impl From<&str> for $name {
            fn from(spelling: &str) -> Self {
                Self::new(spelling)
            }
        }
    };
}

symbol!(
    /// A concept name (an element of N_C).
    ConceptName,
    concept_table
);
symbol!(
    /// A role name (an element of N_R).
    RoleName,
    role_table
);
symbol!(
    /// Identifier of an ontology axiom; doubles as its propositional variable.
    AxiomId,
    axiom_table
);

impl ConceptName {
    /// The reserved name used to spell out bottom as `X ⊓ ¬X`. Never part of
    /// an ontology signature; on the right-hand side of a goal it means ⊥.
    pub const BOTTOM: ConceptName = ConceptName(0);

    pub fn is_bottom(self) -> bool {
        self == Self::BOTTOM
    }
}

/// Compares two spellings so that embedded numbers sort numerically
/// (`a2 < a10`). Used wherever output must be stable and readable.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let mut xs = a.chars().peekable();
    let mut ys = b.chars().peekable();
    loop {
        match (xs.peek().copied(), ys.peek().copied()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                let mut nx = String::new();
                while let Some(c) = xs.peek().copied().filter(char::is_ascii_digit) {
                    nx.push(c);
                    xs.next();
                }
                let mut ny = String::new();
                while let Some(c) = ys.peek().copied().filter(char::is_ascii_digit) {
                    ny.push(c);
                    ys.next();
                }
                let tx = nx.trim_start_matches('0');
                let ty = ny.trim_start_matches('0');
                let ord = tx
                    .len()
                    .cmp(&ty.len())
                    .then_with(|| tx.cmp(ty))
                    .then_with(|| nx.len().cmp(&ny.len()));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            (Some(x), Some(y)) => {
                if x != y {
                    return x.cmp(&y);
                }
                xs.next();
                ys.next();
            }
        }
    }
}

/// Orders any displayable identifiers by [`natural_cmp`] on their spelling.
pub fn by_spelling<T: fmt::Display>(a: &T, b: &T) -> Ordering {
    natural_cmp(&a.to_string(), &b.to_string())
}
