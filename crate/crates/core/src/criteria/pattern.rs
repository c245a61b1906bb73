//! Classification by forbidden patterns in stellar subsystems and by
//! embedded patterns.

use std::collections::HashSet;
use std::sync::Arc;

use super::tables::BadPatternTable;
use crate::embeddings::EmbeddingChecker;
use crate::error::Result;
use crate::models;
use crate::root_system::{CartanType, Family, RootSet, RootSystem};
use crate::subsystems::{gather, stellar_subsystems, PatternWitness, Subsystem};
use crate::weyl::{element_from_inversion_set, InversionSet, WeylElement};

struct Entry {
    sub: Subsystem,
    kind: CartanType,
    map: Vec<u8>,
    // index into the signature sets
    slot: usize,
}

/// Stellar subsystems of one root system with lookups into the bad tables.
pub struct PatternClassifier {
    rs: Arc<RootSystem>,
    table: Arc<BadPatternTable>,
    entries: Vec<Entry>,
    // [rational][minimal][slot]
    sets: [[Vec<HashSet<RootSet>>; 2]; 2],
}

impl PatternClassifier {
    pub fn new(rs: &Arc<RootSystem>) -> Result<Self> {
        Self::with_table(rs, BadPatternTable::shared()?)
    }

    pub fn with_table(rs: &Arc<RootSystem>, table: Arc<BadPatternTable>) -> Result<Self> {
        let types: Vec<CartanType> = table.types().map(|(t, _)| *t).collect();
        let entries = stellar_subsystems(rs)?
            .into_iter()
            .map(|sub| {
                let kind = sub.kind().irreducible().expect("stellar subsystems are irreducible");
                let map = sub.model_map().expect("irreducible").to_vec();
                let slot = types.iter().position(|t| *t == kind).expect("stellar type has a table");
                Entry { sub, kind, map, slot }
            })
            .collect();
        let sets = [false, true].map(|rational| {
            [false, true].map(|minimal| {
                types
                    .iter()
                    .map(|t| {
                        let tt = table.get(*t).unwrap();
                        let ids = if minimal { tt.minimal(rational) } else { tt.bad(rational) };
                        ids.iter().map(|&w| tt.model.group.inversion_set(w)).collect()
                    })
                    .collect()
            })
        });
        Ok(PatternClassifier { rs: rs.clone(), table, entries, sets })
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn table(&self) -> &Arc<BadPatternTable> {
        &self.table
    }

    pub fn subsystems(&self) -> impl Iterator<Item = &Subsystem> {
        self.entries.iter().map(|e| &e.sub)
    }

    /// Index of the first stellar subsystem on which `inv` flattens to a bad
    /// element, with that element's signature.
    pub fn find(&self, inv: InversionSet, rational: bool, minimal: bool) -> Option<(usize, RootSet)> {
        let sets = &self.sets[rational as usize][minimal as usize];
        self.entries.iter().enumerate().find_map(|(i, e)| {
            // no B2 or G2 element is rationally singular
            if rational && e.kind.rank == 2 {
                return None;
            }
            let sig = gather(&e.map, inv);
            sets[e.slot].contains(&sig).then_some((i, sig))
        })
    }

    pub fn witness(&self, inv: InversionSet, rational: bool, minimal: bool) -> Option<PatternWitness> {
        let (i, sig) = self.find(inv, rational, minimal)?;
        let e = &self.entries[i];
        let flat = element_from_inversion_set(&models::system(e.kind), sig).expect("bad signature is an inversion set");
        Some(PatternWitness::for_subsystem(&self.rs, &e.sub, &flat))
    }

    pub fn smooth(&self, w: &WeylElement) -> Option<PatternWitness> {
        self.witness(w.inversion_set(), false, true)
    }

    pub fn rationally_smooth(&self, w: &WeylElement) -> Option<PatternWitness> {
        self.witness(w.inversion_set(), true, true)
    }
}

/// Witness of a forbidden stellar pattern for smoothness, if any.
pub fn pattern_smooth(w: &WeylElement) -> Result<Option<PatternWitness>> {
    Ok(PatternClassifier::new(w.system())?.smooth(w))
}

/// Witness of a forbidden stellar pattern for rational smoothness, if any.
pub fn pattern_rationally_smooth(w: &WeylElement) -> Result<Option<PatternWitness>> {
    Ok(PatternClassifier::new(w.system())?.rationally_smooth(w))
}

pub fn embedded_smooth(w: &WeylElement) -> Option<PatternWitness> {
    EmbeddingChecker::new(w.system()).smooth(w)
}

pub fn embedded_rationally_smooth(w: &WeylElement) -> Option<PatternWitness> {
    EmbeddingChecker::new(w.system()).rationally_smooth(w)
}

/// Whether `t` has rationally singular elements at all.
pub fn has_rational_patterns(t: CartanType) -> bool {
    !(t.rank == 2 && matches!(t.family, Family::B | Family::G))
}
