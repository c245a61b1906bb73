//! Forbidden-pattern tables for the stellar types, bootstrapped from the
//! oracles and cross-checked against the published word lists.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use super::kumar::KumarTable;
use super::{is_rationally_smooth_oracle, is_smooth_oracle};
use crate::error::{Error, Result};
use crate::models::{self, Model};
use crate::root_system::{CartanType, Family, RootSet};
use crate::subsystems::{stellar_subsystems, stellar_types};

/// `(non-smooth, non-rationally-smooth)` counts per stellar type, as
/// produced by the oracles.
pub const EXPECTED_COUNTS: [(Family, usize, usize, usize); 6] = [
    (Family::B, 2, 1, 0),
    (Family::G, 2, 5, 0),
    (Family::A, 3, 2, 2),
    (Family::B, 3, 20, 14),
    (Family::C, 3, 20, 14),
    (Family::D, 4, 84, 84),
];

/// Irredundant forbidden patterns for smoothness, in bracket notation.
pub const SMOOTH_WORDS: [(Family, usize, &[&str]); 6] = [
    (Family::B, 2, &["s2s1s2"]),
    (Family::G, 2, &["[s2]s1s2s1[s2]", "s1s2s1s2s1"]),
    (Family::A, 3, &["s2s1s3s2", "s1s2s3s2s1"]),
    (Family::B, 3, &["s2s1s3s2", "s1s2s3s2s1[s3, s3s2, s2s3, s2s3s2]"]),
    (Family::C, 3, &["[s3]s2s1s3s2[s3]", "s3s2s1s2s3", "s1s2s3s2s1s3s2s3"]),
    (Family::D, 4, &["s2s1s3s4s2"]),
];

const RATIONAL_B3: &[&str] = &[
    "[s3]s2s1s3s2[s3]",
    "[s2]s3s2s1s2s3[s2]",
    "s1s2s3s2s1[s3, s2s3, s3s2, s2s3s2, s3s2s3]",
];

/// Irredundant forbidden patterns for rational smoothness.
pub const RATIONAL_WORDS: [(Family, usize, &[&str]); 4] = [
    (Family::A, 3, &["s2s1s3s2", "s1s2s3s2s1"]),
    (Family::B, 3, RATIONAL_B3),
    (Family::C, 3, RATIONAL_B3),
    (Family::D, 4, &["s2s1s3s4s2"]),
];

/// Expands bracket notation: `[a, b] d` stands for the words `d`, `a d`, `b d`.
/// Letters are written `s<digit>`; the result holds 1-based labels.
pub fn expand_brackets(pattern: &str) -> Result<Vec<Vec<usize>>> {
    fn letters(s: &str) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let mut chars = s.chars().filter(|c| !c.is_whitespace()).peekable();
        while let Some(c) = chars.next() {
            if c != 's' {
                return Err(Error::Parse(format!("unexpected {c:?} in {s:?}")));
            }
            let mut num = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                num.push(*d);
                chars.next();
            }
            out.push(num.parse().map_err(|_| Error::Parse(format!("bad letter in {s:?}")))?);
        }
        Ok(out)
    }
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut rest = pattern;
    while !rest.is_empty() {
        let (alternatives, tail) = if let Some(r) = rest.strip_prefix('[') {
            let end = r.find(']').ok_or_else(|| Error::Parse(format!("unclosed [ in {pattern:?}")))?;
            let mut alts = vec![vec![]];
            for a in r[..end].split(',') {
                alts.push(letters(a)?);
            }
            (alts, &r[end + 1..])
        } else {
            let end = rest.find('[').unwrap_or(rest.len());
            (vec![letters(&rest[..end])?], &rest[end..])
        };
        words = words
            .iter()
            .flat_map(|w| alternatives.iter().map(move |a| [w.as_slice(), a].concat()))
            .collect();
        rest = tail;
    }
    Ok(words)
}

/// Bad elements of one stellar type, as ids and inversion-set signatures of
/// its canonical model.
#[derive(Debug)]
pub struct TypeTable {
    pub model: Arc<Model>,
    pub smooth_bad: Vec<u32>,
    pub rational_bad: Vec<u32>,
    pub smooth_minimal: Vec<u32>,
    pub rational_minimal: Vec<u32>,
    smooth_sigs: HashSet<RootSet>,
    rational_sigs: HashSet<RootSet>,
    smooth_min_sigs: HashSet<RootSet>,
    rational_min_sigs: HashSet<RootSet>,
}

impl TypeTable {
    /// Whether a signature is forbidden; `minimal` restricts to the
    /// irredundant list.
    pub fn is_bad(&self, sig: RootSet, rational: bool, minimal: bool) -> bool {
        match (rational, minimal) {
            (false, false) => self.smooth_sigs.contains(&sig),
            (false, true) => self.smooth_min_sigs.contains(&sig),
            (true, false) => self.rational_sigs.contains(&sig),
            (true, true) => self.rational_min_sigs.contains(&sig),
        }
    }

    pub fn bad(&self, rational: bool) -> &[u32] {
        if rational {
            &self.rational_bad
        } else {
            &self.smooth_bad
        }
    }

    pub fn minimal(&self, rational: bool) -> &[u32] {
        if rational {
            &self.rational_minimal
        } else {
            &self.smooth_minimal
        }
    }
}

/// Bad-pattern tables for all stellar types.
#[derive(Debug)]
pub struct BadPatternTable {
    tables: BTreeMap<CartanType, TypeTable>,
}

impl BadPatternTable {
    /// Runs both oracles over every stellar group, derives the irredundant
    /// lists, and checks everything against the hard-coded counts and words.
    pub fn build() -> Result<BadPatternTable> {
        let mut tables = BTreeMap::new();
        for t in stellar_types() {
            let m = models::model(t);
            let g = &m.group;
            let kumar = KumarTable::new(g);
            let smooth_bad: Vec<u32> = g.ids().filter(|&w| !is_smooth_oracle(&kumar, w)).collect();
            let rational_bad: Vec<u32> = g.ids().filter(|&w| !is_rationally_smooth_oracle(g, w)).collect();
            let sigs = |ids: &[u32]| -> HashSet<RootSet> { ids.iter().map(|&w| g.inversion_set(w)).collect() };

            // a bad element is redundant if a smaller stellar subsystem already sees a bad pattern
            let subs: Vec<_> = stellar_subsystems(&m.rs)?
                .into_iter()
                .filter(|d| d.rank() < t.rank || d.positive().len() < m.rs.num_positive())
                .collect();
            let redundant = |w: u32, rational: bool| {
                subs.iter().any(|d| {
                    let inner: &TypeTable = tables_ref(&tables, d.kind().irreducible().unwrap());
                    let sig = d.signature(g.inversion_set(w)).expect("stellar subsystems are irreducible");
                    inner.is_bad(sig, rational, false)
                })
            };
            let smooth_minimal: Vec<u32> = smooth_bad.iter().copied().filter(|&w| !redundant(w, false)).collect();
            let rational_minimal: Vec<u32> =
                rational_bad.iter().copied().filter(|&w| !redundant(w, true)).collect();
            let table = TypeTable {
                smooth_sigs: sigs(&smooth_bad),
                rational_sigs: sigs(&rational_bad),
                smooth_min_sigs: sigs(&smooth_minimal),
                rational_min_sigs: sigs(&rational_minimal),
                model: m.clone(),
                smooth_bad,
                rational_bad,
                smooth_minimal,
                rational_minimal,
            };
            tables.insert(t, table);
        }
        let out = BadPatternTable { tables };
        out.self_check()?;
        Ok(out)
    }

    /// The process-wide table, built on first use.
    pub fn shared() -> Result<Arc<BadPatternTable>> {
        static CELL: OnceLock<Result<Arc<BadPatternTable>>> = OnceLock::new();
        CELL.get_or_init(|| BadPatternTable::build().map(Arc::new)).clone()
    }

    pub fn get(&self, t: CartanType) -> Option<&TypeTable> {
        self.tables.get(&t)
    }

    pub fn types(&self) -> impl Iterator<Item = (&CartanType, &TypeTable)> {
        self.tables.iter()
    }

    fn self_check(&self) -> Result<()> {
        for &(f, r, smooth, rational) in &EXPECTED_COUNTS {
            let t = CartanType::new(f, r)?;
            let tt = self.get(t).ok_or_else(|| Error::SelfCheck(format!("no table for {t}")))?;
            if tt.smooth_bad.len() != smooth || tt.rational_bad.len() != rational {
                return Err(Error::SelfCheck(format!(
                    "{t}: found {} non-smooth and {} non-rationally-smooth, expected {smooth} and {rational}",
                    tt.smooth_bad.len(),
                    tt.rational_bad.len()
                )));
            }
            if tt.rational_bad.iter().any(|w| !tt.smooth_sigs.contains(&tt.model.group.inversion_set(*w))) {
                return Err(Error::SelfCheck(format!("{t}: rationally singular element is smooth")));
            }
        }
        let lists = SMOOTH_WORDS
            .iter()
            .map(|&(f, r, w)| (f, r, w, false))
            .chain(RATIONAL_WORDS.iter().map(|&(f, r, w)| (f, r, w, true)));
        for (f, r, patterns, rational) in lists {
            let t = CartanType::new(f, r)?;
            let tt = &self.tables[&t];
            let g = &tt.model.group;
            let mut listed = Vec::new();
            for p in patterns {
                for word in expand_brackets(p)? {
                    listed.push(g.from_word(&word)?);
                }
            }
            listed.sort_unstable();
            let n = listed.len();
            listed.dedup();
            if listed.len() != n || listed != tt.minimal(rational) {
                return Err(Error::SelfCheck(format!(
                    "{t}: irredundant {} list differs from the published words",
                    if rational { "rational" } else { "smooth" }
                )));
            }
        }
        Ok(())
    }
}

fn tables_ref(tables: &BTreeMap<CartanType, TypeTable>, t: CartanType) -> &TypeTable {
    tables.get(&t).unwrap_or_else(|| panic!("{t} table is built before larger types"))
}

/// Signature lookups of every irreducible stellar type keyed by type, for
/// callers that only need membership.
pub fn signature_sets(table: &BadPatternTable, rational: bool, minimal: bool) -> HashMap<CartanType, HashSet<RootSet>> {
    table
        .types()
        .map(|(t, tt)| {
            let ids = if minimal { tt.minimal(rational) } else { tt.bad(rational) };
            (*t, ids.iter().map(|&w| tt.model.group.inversion_set(w)).collect())
        })
        .collect()
}
