//! Root subsystems `Delta = span(S) ∩ Phi` and flattening onto them.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::models::{model, Model};
use crate::root_system::{CartanType, Family, RootSet, RootSystem, SignedRoot};
use crate::weyl::{element_from_inversion_set, InversionSet, WeylElement};

/// Types that can carry a minimal bad pattern.
pub const STELLAR_TYPES: [(Family, usize); 6] = [
    (Family::B, 2),
    (Family::G, 2),
    (Family::A, 3),
    (Family::B, 3),
    (Family::C, 3),
    (Family::D, 4),
];

pub fn stellar_types() -> Vec<CartanType> {
    STELLAR_TYPES
        .iter()
        .map(|&(f, n)| CartanType::new(f, n).unwrap())
        .collect()
}

/// Isomorphism type of a possibly reducible system: sorted irreducible components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubsystemType(pub Vec<CartanType>);

impl SubsystemType {
    pub fn irreducible(&self) -> Option<CartanType> {
        match self.0.as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    pub fn is_stellar(&self) -> bool {
        self.irreducible()
            .is_some_and(|t| stellar_types().contains(&t))
    }
}

impl fmt::Display for SubsystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Cartan integers `2(b_i, b_j)/(b_j, b_j)` of the given positive roots.
pub fn cartan_of(rs: &RootSystem, roots: &[usize]) -> Vec<Vec<i64>> {
    roots
        .iter()
        .map(|&i| roots.iter().map(|&j| 2 * rs.inner(i, j) / rs.norm(j)).collect())
        .collect()
}

fn candidates(m: usize) -> Vec<CartanType> {
    let mut v = vec![];
    for f in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
        if let Ok(t) = CartanType::new(f, m) {
            // D3 is reported as A3
            if (f == Family::C && m == 2) || (f == Family::D && m == 3) {
                continue;
            }
            v.push(t);
        }
    }
    v
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = vec![];
    go(&mut vec![], &mut vec![false; m], &mut out);
    out
}

/// Identifies the type of a connected set of simple roots and returns them
/// in the standard node order of that type.
fn classify_component(rs: &RootSystem, simples: &[usize]) -> Result<(CartanType, Vec<usize>)> {
    let a = cartan_of(rs, simples);
    let m = simples.len();
    let perms = permutations(m);
    for t in candidates(m) {
        let c = crate::models::system(t).cartan_matrix().to_vec();
        for p in &perms {
            if (0..m).all(|i| (0..m).all(|j| a[p[i]][p[j]] == c[i][j])) {
                return Ok((t, p.iter().map(|&i| simples[i]).collect()));
            }
        }
    }
    Err(Error::Internal(format!("unclassifiable Cartan matrix {a:?}")))
}

/// Splits simple roots into Dynkin components and classifies each; returns
/// the type and the simples reordered component by component.
pub fn classify(rs: &RootSystem, simples: &[usize]) -> Result<(SubsystemType, Vec<Vec<usize>>)> {
    let n = simples.len();
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = vec![];
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![start];
        comp[start] = id;
        let mut members = vec![];
        while let Some(i) = stack.pop() {
            members.push(simples[i]);
            for j in 0..n {
                if comp[j] == usize::MAX && rs.inner(simples[i], simples[j]) != 0 {
                    comp[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort();
        comps.push(members);
    }
    let mut typed: Vec<(CartanType, Vec<usize>)> = comps
        .iter()
        .map(|c| classify_component(rs, c))
        .collect::<Result<_>>()?;
    typed.sort();
    let kind = SubsystemType(typed.iter().map(|(t, _)| *t).collect());
    Ok((kind, typed.into_iter().map(|(_, s)| s).collect()))
}

/// A root subsystem of an ambient root system.
#[derive(Clone)]
pub struct Subsystem {
    positive: RootSet,
    simples: Vec<usize>,
    components: Vec<Vec<usize>>,
    kind: SubsystemType,
    // ambient index of each positive root of the canonical model
    model_map: Option<Vec<u8>>,
}

impl fmt::Debug for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subsystem({} {:?})", self.kind, self.simples)
    }
}

impl PartialEq for Subsystem {
    fn eq(&self, other: &Self) -> bool {
        self.positive == other.positive
    }
}

impl Eq for Subsystem {}

/// Elements of `set` that are not a sum of two elements of `set`.
pub fn indecomposables(rs: &RootSystem, set: RootSet) -> Vec<usize> {
    let mut dec = RootSet::EMPTY;
    for &(i, j, k) in rs.sum_triples() {
        if set.contains(i as usize) && set.contains(j as usize) {
            dec.insert(k as usize);
        }
    }
    RootSet(set.0 & !dec.0).iter().collect()
}

impl Subsystem {
    /// The subsystem with the given positive roots, which must be of the
    /// form `span ∩ Phi+`.
    pub fn from_positive(rs: &RootSystem, positive: RootSet) -> Result<Subsystem> {
        let simples = indecomposables(rs, positive);
        let (kind, components) = classify(rs, &simples)?;
        let model_map = match kind.irreducible() {
            Some(t) => {
                let m = crate::models::system(t);
                let basis: Vec<Vec<i64>> =
                    components[0].iter().map(|&i| rs.root(i).to_vec()).collect();
                let mut map = vec![0u8; m.num_positive()];
                for i in positive.iter() {
                    let c = linalg::integer_coefficients(&basis, rs.root(i))
                        .ok_or_else(|| Error::Internal("root outside lattice of simples".into()))?;
                    let k = m
                        .index_of_coefficients(&c)
                        .ok_or_else(|| Error::Internal(format!("{c:?} is not a root of {t}")))?;
                    map[k] = i as u8;
                }
                Some(map)
            }
            None => None,
        };
        Ok(Subsystem {
            positive,
            simples: components.concat(),
            components,
            kind,
            model_map,
        })
    }

    /// `span(roots) ∩ Phi` as a subsystem.
    pub fn span_of(rs: &RootSystem, roots: &[usize]) -> Result<Subsystem> {
        Self::from_positive(rs, rs.span_closure(roots.iter().copied()))
    }

    pub fn positive(&self) -> RootSet {
        self.positive
    }

    /// All roots, as signed ambient indices in increasing order.
    pub fn roots(&self) -> Vec<SignedRoot> {
        let mut v: Vec<SignedRoot> = self
            .positive
            .iter()
            .flat_map(|i| [SignedRoot::positive(i), SignedRoot::negative(i)])
            .collect();
        v.sort();
        v
    }

    /// Simple roots as ambient indices, in standard node order per component.
    pub fn simples(&self) -> &[usize] {
        &self.simples
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn kind(&self) -> &SubsystemType {
        &self.kind
    }

    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    pub fn is_irreducible(&self) -> bool {
        self.kind.0.len() == 1
    }

    pub fn is_stellar(&self) -> bool {
        self.kind.is_stellar()
    }

    /// Canonical model realizing the local Weyl group, for irreducible subsystems.
    pub fn model(&self) -> Option<Arc<Model>> {
        self.kind.irreducible().map(model)
    }

    /// Ambient index of each positive root of the model, for irreducible subsystems.
    pub fn model_map(&self) -> Option<&[u8]> {
        self.model_map.as_deref()
    }

    pub fn simple_coords(&self, rs: &RootSystem) -> Vec<Vec<i64>> {
        self.simples.iter().map(|&i| rs.root(i).to_vec()).collect()
    }

    /// `I(w) ∩ Delta+` in ambient indices.
    pub fn restrict(&self, inv: InversionSet) -> RootSet {
        inv.intersect(self.positive)
    }

    /// `I(w) ∩ Delta+` transported to the model's positive roots.
    pub fn signature(&self, inv: InversionSet) -> Result<RootSet> {
        let map = self
            .model_map
            .as_ref()
            .ok_or_else(|| Error::Internal("flattening needs an irreducible subsystem".into()))?;
        Ok(gather(map, inv))
    }

    /// The unique element of the local Weyl group whose inversion set is
    /// `I(w) ∩ Delta+`, found by peeling simple roots.
    pub fn flatten(&self, w: &WeylElement) -> Result<WeylElement> {
        let m = self.model().ok_or_else(|| Error::Internal("reducible subsystem".into()))?;
        element_from_inversion_set(&m.rs, self.signature(w.inversion_set())?)
    }

    /// Same as [`flatten`](Self::flatten), by matching against every element
    /// of the enumerated local group.
    pub fn flatten_by_matching(&self, w: &WeylElement) -> Result<WeylElement> {
        let m = self.model().ok_or_else(|| Error::Internal("reducible subsystem".into()))?;
        let sig = self.signature(w.inversion_set())?;
        let id = m
            .group
            .ids()
            .find(|&x| m.group.inversion_set(x) == sig)
            .ok_or(Error::NotAnInversionSet)?;
        Ok(m.group.element(id).clone())
    }

    /// Whether `w` flattens to `sigma` on this subsystem.
    pub fn contains_pattern(&self, w: &WeylElement, sigma: &WeylElement) -> Result<bool> {
        Ok(self.signature(w.inversion_set())? == sigma.inversion_set())
    }
}

/// Bits of `inv` at `map[k]`, moved to position `k`.
#[inline]
pub fn gather(map: &[u8], inv: InversionSet) -> RootSet {
    let mut s = 0u128;
    for (k, &a) in map.iter().enumerate() {
        s |= ((inv.0 >> a) & 1) << k;
    }
    RootSet(s)
}

/// `span_closure` on positive roots.
pub fn span_closure(rs: &RootSystem, roots: &[usize]) -> RootSet {
    rs.span_closure(roots.iter().copied())
}

fn grow(
    rs: &RootSystem,
    max_rank: usize,
    budget: usize,
    irreducible_only: bool,
) -> Result<Vec<RootSet>> {
    let n = rs.num_positive();
    let nonorth: Vec<RootSet> = (0..n)
        .map(|i| (0..n).filter(|&j| rs.inner(i, j) != 0).collect())
        .collect();
    let mut all: Vec<RootSet> = (0..n).map(|i| RootSet::EMPTY.with(i)).collect();
    let mut level = all.clone();
    for _ in 1..max_rank {
        let mut found: BTreeSet<RootSet> = BTreeSet::new();
        let mut seen: HashSet<RootSet> = HashSet::new();
        for &delta in &level {
            let mut candidates = if irreducible_only {
                delta.iter().fold(RootSet::EMPTY, |acc, i| acc.union(nonorth[i]))
            } else {
                RootSet::full(n)
            };
            candidates = RootSet(candidates.0 & !delta.0);
            let mut covered = delta;
            let basis: Vec<usize> = delta.iter().collect();
            for b in candidates.iter() {
                if covered.contains(b) {
                    continue;
                }
                let mut roots = basis.clone();
                roots.push(b);
                let next = rs.span_closure(roots);
                covered = covered.union(next);
                if seen.insert(next) {
                    if irreducible_only && indecomposables_connected(rs, next).is_none() {
                        continue;
                    }
                    found.insert(next);
                    if all.len() + found.len() > budget {
                        return Err(Error::CapExceeded {
                            what: "subsystem enumeration".into(),
                            size: (all.len() + found.len()) as u64,
                            cap: budget as u64,
                        });
                    }
                }
            }
        }
        level = found.into_iter().collect();
        all.extend(level.iter().copied());
    }
    Ok(all)
}

fn indecomposables_connected(rs: &RootSystem, set: RootSet) -> Option<()> {
    let s = indecomposables(rs, set);
    let mut reached = vec![false; s.len()];
    reached[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..s.len() {
            if !reached[j] && rs.inner(s[i], s[j]) != 0 {
                reached[j] = true;
                stack.push(j);
            }
        }
    }
    reached.iter().all(|&r| r).then_some(())
}

/// Default cap on the number of enumerated subsystems.
pub const DEFAULT_SUBSYSTEM_BUDGET: usize = 2_000_000;

/// Every subsystem of rank at most `max_rank`, each exactly once, ordered
/// by rank and then by root set.
pub fn enumerate_subsystems(rs: &RootSystem, max_rank: usize) -> Result<Vec<Subsystem>> {
    enumerate_subsystems_with_budget(rs, max_rank, DEFAULT_SUBSYSTEM_BUDGET)
}

pub fn enumerate_subsystems_with_budget(
    rs: &RootSystem,
    max_rank: usize,
    budget: usize,
) -> Result<Vec<Subsystem>> {
    grow(rs, max_rank, budget, false)?
        .into_iter()
        .map(|p| Subsystem::from_positive(rs, p))
        .collect()
}

/// Irreducible subsystems of rank at most `max_rank`.
pub fn enumerate_irreducible_subsystems(rs: &RootSystem, max_rank: usize) -> Result<Vec<Subsystem>> {
    grow(rs, max_rank, DEFAULT_SUBSYSTEM_BUDGET, true)?
        .into_iter()
        .map(|p| Subsystem::from_positive(rs, p))
        .collect()
}

/// Irreducible subsystems of stellar type.
pub fn stellar_subsystems(rs: &RootSystem) -> Result<Vec<Subsystem>> {
    Ok(enumerate_irreducible_subsystems(rs, 4.min(rs.rank()))?
        .into_iter()
        .filter(|d| d.is_stellar())
        .collect())
}

/// Evidence that an element fails a smoothness criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternWitness {
    pub criterion: String,
    pub delta_type: String,
    pub delta_simples: Vec<Vec<i64>>,
    pub flattened_word: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding_kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proper: Option<bool>,
}

impl PatternWitness {
    pub fn for_subsystem(rs: &RootSystem, delta: &Subsystem, flattened: &WeylElement) -> Self {
        PatternWitness {
            criterion: "stellar-pattern".into(),
            delta_type: delta.kind().to_string(),
            delta_simples: delta.simple_coords(rs),
            flattened_word: flattened.reduced_word(),
            embedding_kind: None,
            images: None,
            dual: None,
            proper: None,
        }
    }
}
