//! Small built-in groups used throughout the tests and the CLI catalog.

use alloc::vec::Vec;

use super::{PermGroup, Permutation};

/// A catalog entry: generators as cycle strings plus declared invariants.
#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub degree: usize,
    pub generators: &'static [&'static str],
    pub order: u64,
    /// Order of the automorphism group of the abstract group.
    pub aut_order: u64,
    /// Minimal number of generators.
    pub d: usize,
}

pub const BUILTIN: &[CatalogEntry] = &[
    CatalogEntry {
        name: "A5",
        degree: 5,
        generators: &["(1 2 3 4 5)", "(1 2 3)"],
        order: 60,
        aut_order: 120,
        d: 2,
    },
    CatalogEntry {
        name: "C2",
        degree: 2,
        generators: &["(1 2)"],
        order: 2,
        aut_order: 1,
        d: 1,
    },
    CatalogEntry {
        name: "C3",
        degree: 3,
        generators: &["(1 2 3)"],
        order: 3,
        aut_order: 2,
        d: 1,
    },
    CatalogEntry {
        name: "S3",
        degree: 3,
        generators: &["(1 2)", "(1 2 3)"],
        order: 6,
        aut_order: 6,
        d: 2,
    },
    CatalogEntry {
        name: "PSL(2,7)",
        degree: 7,
        generators: &["(1 2 3 4 5 6 7)", "(2 3)(4 7)"],
        order: 168,
        aut_order: 336,
        d: 2,
    },
];

impl CatalogEntry {
    pub fn generators(&self) -> Vec<Permutation> {
        self.generators
            .iter()
            .map(|s| super::parse_permutation(s, Some(self.degree)).expect("catalog entry parses"))
            .collect()
    }

    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.generators()).expect("catalog entry is well formed")
    }
}

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    BUILTIN.iter().find(|e| e.name == name)
}

pub fn a5() -> PermGroup {
    BUILTIN[0].group()
}

pub fn c2() -> PermGroup {
    BUILTIN[1].group()
}

pub fn c3() -> PermGroup {
    BUILTIN[2].group()
}

pub fn s3() -> PermGroup {
    BUILTIN[3].group()
}

pub fn psl27() -> PermGroup {
    BUILTIN[4].group()
}
