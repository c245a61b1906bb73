//! Embeddings of small root systems (B2, A3, D4) and the embedded-pattern test.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::models;
use crate::root_system::{dual_with_map, CartanType, Family, RootSet, RootSystem};
use crate::subsystems::{gather, PatternWitness, Subsystem};
use crate::weyl::{InversionSet, WeylElement};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EmbeddingKind {
    B2,
    A3,
    D4,
}

const B2_COMBOS: &[&[i64]] = &[&[1, 0], &[0, 1], &[1, 1], &[1, 2]];

const A3_COMBOS: &[&[i64]] = &[
    &[1, 0, 0],
    &[0, 1, 0],
    &[0, 0, 1],
    &[1, 1, 0],
    &[0, 1, 1],
    &[1, 1, 1],
];

// node 2 is the center
const D4_COMBOS: &[&[i64]] = &[
    &[1, 0, 0, 0],
    &[0, 1, 0, 0],
    &[0, 0, 1, 0],
    &[0, 0, 0, 1],
    &[1, 1, 0, 0],
    &[0, 1, 1, 0],
    &[0, 1, 0, 1],
    &[1, 1, 1, 0],
    &[1, 1, 0, 1],
    &[0, 1, 1, 1],
    &[1, 1, 1, 1],
    &[1, 2, 1, 1],
];

impl EmbeddingKind {
    pub const ALL: [EmbeddingKind; 3] = [EmbeddingKind::B2, EmbeddingKind::A3, EmbeddingKind::D4];

    pub fn cartan_type(self) -> CartanType {
        match self {
            EmbeddingKind::B2 => CartanType { family: Family::B, rank: 2 },
            EmbeddingKind::A3 => CartanType { family: Family::A, rank: 3 },
            EmbeddingKind::D4 => CartanType { family: Family::D, rank: 4 },
        }
    }

    pub fn rank(self) -> usize {
        self.cartan_type().rank
    }

    /// Coefficients of the positive roots in the simple roots.
    pub fn combinations(self) -> &'static [&'static [i64]] {
        match self {
            EmbeddingKind::B2 => B2_COMBOS,
            EmbeddingKind::A3 => A3_COMBOS,
            EmbeddingKind::D4 => D4_COMBOS,
        }
    }

    /// Reduced words of the forbidden elements.
    pub fn designated_words(self) -> &'static [&'static [usize]] {
        match self {
            EmbeddingKind::B2 => &[&[2, 1, 2]],
            EmbeddingKind::A3 => &[&[1, 2, 3, 2, 1], &[2, 1, 3, 2]],
            EmbeddingKind::D4 => &[&[2, 1, 3, 4, 2]],
        }
    }

    /// Inversion sets of the forbidden elements in the canonical model.
    pub fn designated(self) -> Vec<RootSet> {
        let m = models::model(self.cartan_type());
        self.designated_words()
            .iter()
            .map(|w| m.group.inversion_set(m.group.from_word(w).expect("valid word")))
            .collect()
    }
}

impl fmt::Display for EmbeddingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cartan_type())
    }
}

impl std::str::FromStr for EmbeddingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B2" => Ok(EmbeddingKind::B2),
            "A3" => Ok(EmbeddingKind::A3),
            "D4" => Ok(EmbeddingKind::D4),
            _ => Err(Error::Parse(format!("unknown embedding kind {s:?}"))),
        }
    }
}

/// An injective linear map of a small root system into an ambient one,
/// given by the images of its simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub kind: EmbeddingKind,
    /// Ambient positive-root indices of the images of the simple roots.
    pub images: Vec<usize>,
    pub span_type: String,
    pub proper: bool,
    // ambient index of the image of each positive root of the model
    map: Vec<u8>,
}

impl Embedding {
    /// Ambient index of each model positive root's image.
    pub fn map(&self) -> &[u8] {
        &self.map
    }

    /// `e(Delta+)` as a set of ambient positive roots.
    pub fn image_set(&self) -> RootSet {
        self.map.iter().map(|&a| a as usize).collect()
    }

    /// Ambient index of the image of the root with the given coefficients.
    pub fn image_of(&self, coeffs: &[i64]) -> usize {
        let m = models::system(self.kind.cartan_type());
        let k = m.index_of_coefficients(coeffs).expect("coefficients of a positive root");
        self.map[k] as usize
    }

    /// `e^{-1}(I(w))` in the model.
    pub fn pull_back(&self, inv: InversionSet) -> RootSet {
        gather(&self.map, inv)
    }

    /// Half-plane pre-filter: whether `inv` pulls back to a forbidden element.
    pub fn shortcut(&self, inv: InversionSet) -> bool {
        let has = |c: &[i64]| inv.contains(self.image_of(c));
        match self.kind {
            EmbeddingKind::B2 => !has(&[1, 0]) && has(&[1, 1]),
            EmbeddingKind::A3 => {
                (!has(&[1, 0, 0]) && !has(&[0, 0, 1]) && has(&[1, 1, 1]))
                    || (!has(&[0, 1, 0]) && has(&[1, 1, 0]) && has(&[0, 1, 1]))
            }
            EmbeddingKind::D4 => {
                has(&[1, 2, 1, 1]) && !has(&[1, 1, 1, 0]) && !has(&[1, 1, 0, 1]) && !has(&[0, 1, 1, 1])
            }
        }
    }
}

fn combination(rs: &RootSystem, betas: &[usize], c: &[i64]) -> Vec<i64> {
    let mut v = vec![0i64; rs.dim()];
    for (&b, &k) in betas.iter().zip(c) {
        if k != 0 {
            for (x, y) in v.iter_mut().zip(rs.root(b)) {
                *x += k * y;
            }
        }
    }
    v
}

fn positive_index(rs: &RootSystem, v: &[i64]) -> Option<usize> {
    rs.lookup(v).filter(|r| !r.is_negative()).map(|r| r.index())
}

/// Every tuple of positive roots satisfying the kind's sum conditions, with
/// linearly independent entries.
pub fn enumerate_embeddings(rs: &RootSystem, kind: EmbeddingKind) -> Vec<Embedding> {
    let k = kind.rank();
    let combos = kind.combinations();
    // combos checkable once the first i+1 images are chosen
    let mut by_depth: Vec<Vec<&[i64]>> = vec![vec![]; k];
    for &c in combos {
        let last = c.iter().rposition(|&x| x != 0).unwrap();
        by_depth[last].push(c);
    }
    let mut out = Vec::new();
    let mut betas = Vec::with_capacity(k);
    fn go(
        rs: &RootSystem,
        kind: EmbeddingKind,
        by_depth: &[Vec<&[i64]>],
        betas: &mut Vec<usize>,
        out: &mut Vec<Embedding>,
    ) {
        let depth = betas.len();
        if depth == by_depth.len() {
            let vs: Vec<Vec<i64>> = betas.iter().map(|&b| rs.root(b).to_vec()).collect();
            if linalg::rank(&vs) == depth {
                out.push(finish(rs, kind, betas.clone()));
            }
            return;
        }
        for b in 0..rs.num_positive() {
            if betas.contains(&b) {
                continue;
            }
            betas.push(b);
            if by_depth[depth]
                .iter()
                .all(|c| positive_index(rs, &combination(rs, betas, c)).is_some())
            {
                go(rs, kind, by_depth, betas, out);
            }
            betas.pop();
        }
    }
    go(rs, kind, &by_depth, &mut betas, &mut out);
    out
}

fn finish(rs: &RootSystem, kind: EmbeddingKind, images: Vec<usize>) -> Embedding {
    let m = models::system(kind.cartan_type());
    let map: Vec<u8> = (0..m.num_positive())
        .map(|i| {
            positive_index(rs, &combination(rs, &images, m.coefficients(i))).expect("checked combination") as u8
        })
        .collect();
    let span = rs.span_closure(images.iter().copied());
    let span_type = Subsystem::from_positive(rs, span)
        .map(|d| d.kind().to_string())
        .unwrap_or_else(|_| "?".into());
    let mut e = Embedding { kind, images, span_type, proper: true, map };
    e.proper = is_proper(rs, &e);
    e
}

/// Properness: automatic unless the span has type B3 or C3; then some
/// B2-embedding inside the span must have its short sum root at an image of
/// a simple root and meet `e(Delta+)` in exactly its roots
/// `g1+g2`, `g1+2g2`, `g2`.
pub fn is_proper(rs: &RootSystem, e: &Embedding) -> bool {
    if e.span_type != "B3" && e.span_type != "C3" {
        return true;
    }
    let span = rs.span_closure(e.images.iter().copied());
    let image = e.image_set();
    let idx = |v: Vec<i64>| positive_index(rs, &v);
    for g1 in span.iter() {
        for g2 in span.iter() {
            if g1 == g2 {
                continue;
            }
            let (Some(s1), Some(s2)) = (
                idx(combination(rs, &[g1, g2], &[1, 1])),
                idx(combination(rs, &[g1, g2], &[1, 2])),
            ) else {
                continue;
            };
            if !e.images.contains(&s1) {
                continue;
            }
            let eps: RootSet = [g1, g2, s1, s2].into_iter().collect();
            let want: RootSet = [s1, s2, g2].into_iter().collect();
            if eps.intersect(image) == want {
                return true;
            }
        }
    }
    false
}

/// Number of distinct images `e(Delta+)`; tuples differing by a diagram
/// symmetry of the embedded system have the same image.
pub fn distinct_images(es: &[Embedding]) -> usize {
    es.iter().map(|e| (e.kind, e.image_set())).collect::<std::collections::HashSet<_>>().len()
}

/// The element of the embedded system whose inversion set is `e^{-1}(I(w))`.
pub fn flatten_embedding(w: &WeylElement, e: &Embedding) -> Result<WeylElement> {
    let m = models::model(e.kind.cartan_type());
    let sig = e.pull_back(w.inversion_set());
    let id = m
        .group
        .id_of_inversion_set(sig)
        .ok_or_else(|| Error::Internal("pulled-back set is not an inversion set".into()))?;
    Ok(m.group.element(id).clone())
}

/// Embeddings of one root system and of its dual, ready for pattern scans.
pub struct EmbeddingChecker {
    rs: Arc<RootSystem>,
    dual_rs: Arc<RootSystem>,
    dual_map: Vec<usize>,
    primal: Vec<Embedding>,
    dual: Vec<Embedding>,
    designated: Vec<(EmbeddingKind, Vec<RootSet>)>,
}

impl EmbeddingChecker {
    pub fn new(rs: &Arc<RootSystem>) -> Self {
        let (d, dual_map) = dual_with_map(rs);
        let dual_rs = Arc::new(d);
        let all = |r: &RootSystem| {
            EmbeddingKind::ALL
                .iter()
                .flat_map(|&k| enumerate_embeddings(r, k))
                .collect::<Vec<_>>()
        };
        EmbeddingChecker {
            primal: all(rs),
            dual: all(&dual_rs),
            rs: rs.clone(),
            dual_rs,
            dual_map,
            designated: EmbeddingKind::ALL.iter().map(|&k| (k, k.designated())).collect(),
        }
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn dual_system(&self) -> &Arc<RootSystem> {
        &self.dual_rs
    }

    pub fn embeddings(&self, dual: bool) -> &[Embedding] {
        if dual {
            &self.dual
        } else {
            &self.primal
        }
    }

    /// Inversion set of the corresponding element of the dual Weyl group.
    pub fn dual_inversion_set(&self, inv: InversionSet) -> InversionSet {
        inv.iter().map(|i| self.dual_map[i]).collect()
    }

    fn is_designated(&self, kind: EmbeddingKind, sig: RootSet) -> bool {
        self.designated
            .iter()
            .find(|(k, _)| *k == kind)
            .is_some_and(|(_, s)| s.contains(&sig))
    }

    /// First embedding of the given kinds whose pull-back of `inv` is a
    /// forbidden element. `inv` lives in the primal or dual system as chosen.
    pub fn scan(&self, inv: InversionSet, dual: bool, kinds: &[EmbeddingKind], proper_only: bool) -> Option<&Embedding> {
        self.embeddings(dual).iter().find(|e| {
            kinds.contains(&e.kind)
                && (e.proper || !proper_only)
                && e.shortcut(inv)
                && self.is_designated(e.kind, e.pull_back(inv))
        })
    }

    fn witness(&self, e: &Embedding, inv: InversionSet, dual: bool) -> PatternWitness {
        let rs = if dual { &self.dual_rs } else { &self.rs };
        let m = models::model(e.kind.cartan_type());
        let id = m.group.id_of_inversion_set(e.pull_back(inv)).expect("forbidden element");
        let span = Subsystem::span_of(rs, &e.images).expect("span of an embedding");
        PatternWitness {
            criterion: "embedded-pattern".into(),
            delta_type: span.kind().to_string(),
            delta_simples: span.simple_coords(rs),
            flattened_word: m.group.element(id).reduced_word(),
            embedding_kind: Some(e.kind.to_string()),
            images: Some(e.images.iter().map(|&i| rs.root(i).to_vec()).collect()),
            dual: Some(dual),
            proper: Some(e.proper),
        }
    }

    pub fn has_embedded_pattern(&self, w: &WeylElement, kinds: &[EmbeddingKind]) -> Option<PatternWitness> {
        let inv = w.inversion_set();
        self.scan(inv, false, kinds, true).map(|e| self.witness(e, inv, false))
    }

    pub fn has_dual_embedded_pattern(&self, w: &WeylElement, kinds: &[EmbeddingKind]) -> Option<PatternWitness> {
        let inv = self.dual_inversion_set(w.inversion_set());
        self.scan(inv, true, kinds, true).map(|e| self.witness(e, inv, true))
    }

    /// Smoothness: primal B2, A3, D4 and dual A3, D4 patterns.
    pub fn smooth(&self, w: &WeylElement) -> Option<PatternWitness> {
        use EmbeddingKind::*;
        self.has_embedded_pattern(w, &[B2, A3, D4])
            .or_else(|| self.has_dual_embedded_pattern(w, &[A3, D4]))
    }

    /// Rational smoothness: primal and dual A3, D4 patterns.
    pub fn rationally_smooth(&self, w: &WeylElement) -> Option<PatternWitness> {
        use EmbeddingKind::*;
        self.has_embedded_pattern(w, &[A3, D4])
            .or_else(|| self.has_dual_embedded_pattern(w, &[A3, D4]))
    }

    /// Verdict on an inversion set without building a witness.
    pub fn is_singular(&self, inv: InversionSet, rational: bool) -> bool {
        use EmbeddingKind::*;
        let primal: &[EmbeddingKind] = if rational { &[A3, D4] } else { &[B2, A3, D4] };
        self.scan(inv, false, primal, true).is_some()
            || self.scan(self.dual_inversion_set(inv), true, &[A3, D4], true).is_some()
    }
}

pub fn has_embedded_pattern(w: &WeylElement, kinds: &[EmbeddingKind]) -> Option<PatternWitness> {
    EmbeddingChecker::new(w.system()).has_embedded_pattern(w, kinds)
}

pub fn has_dual_embedded_pattern(w: &WeylElement, kinds: &[EmbeddingKind]) -> Option<PatternWitness> {
    EmbeddingChecker::new(w.system()).has_dual_embedded_pattern(w, kinds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{build, build_arc};
    use crate::weyl::Group;

    // up to diagram symmetry of the embedded system
    fn count(rs: &RootSystem, kind: EmbeddingKind) -> (usize, usize) {
        let es = enumerate_embeddings(rs, kind);
        (distinct_images(&es), distinct_images(&es.iter().filter(|e| e.proper).cloned().collect::<Vec<_>>()))
    }

    #[test]
    fn combinations_match_models() {
        for k in EmbeddingKind::ALL {
            let m = models::system(k.cartan_type());
            let mut ours: Vec<Vec<i64>> = k.combinations().iter().map(|c| c.to_vec()).collect();
            let mut theirs: Vec<Vec<i64>> = (0..m.num_positive()).map(|i| m.coefficients(i).to_vec()).collect();
            ours.sort();
            theirs.sort();
            assert_eq!(ours, theirs, "{k}");
        }
    }

    #[test]
    fn rank_three_counts() {
        let b3 = build(Family::B, 3).unwrap();
        let c3 = build(Family::C, 3).unwrap();
        assert_eq!(count(&b3, EmbeddingKind::B2).0, 3);
        assert_eq!(count(&c3, EmbeddingKind::B2).0, 3);
        assert_eq!(count(&b3, EmbeddingKind::A3), (5, 3));
        assert_eq!(count(&c3, EmbeddingKind::A3), (7, 3));
        let a3 = build(Family::A, 3).unwrap();
        // the identity and its diagram reversal
        assert_eq!(enumerate_embeddings(&a3, EmbeddingKind::A3).len(), 2);
        assert_eq!(count(&a3, EmbeddingKind::A3), (1, 1));
        assert_eq!(enumerate_embeddings(&b3, EmbeddingKind::A3).len(), 10);
        assert_eq!(count(&a3, EmbeddingKind::B2).0, 0);
        assert_eq!(count(&a3, EmbeddingKind::D4).0, 0);
    }

    #[test]
    fn shortcut_matches_flattening() {
        for (f, r) in [(Family::B, 2), (Family::G, 2), (Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let rs = build_arc(f, r).unwrap();
            let g = Group::new(&rs).unwrap();
            let checker = EmbeddingChecker::new(&rs);
            for e in checker.embeddings(false) {
                let designated = e.kind.designated();
                for w in g.ids() {
                    let inv = g.inversion_set(w);
                    let flat = flatten_embedding(g.element(w), e).unwrap();
                    assert_eq!(
                        e.shortcut(inv),
                        designated.contains(&flat.inversion_set()),
                        "{f:?}{r} {e:?} {}",
                        g.element(w)
                    );
                }
            }
        }
    }

    #[test]
    fn flatten_trivial_cases() {
        let rs = build_arc(Family::B, 2).unwrap();
        let g = Group::new(&rs).unwrap();
        let es = enumerate_embeddings(&rs, EmbeddingKind::B2);
        let id = es
            .iter()
            .find(|e| e.images == [rs.simple_index(0), rs.simple_index(1)])
            .unwrap();
        let w = g.element(g.from_word(&[2, 1, 2]).unwrap());
        assert_eq!(flatten_embedding(w, id).unwrap().reduced_word(), vec![2, 1, 2]);
        for e in &es {
            assert!(flatten_embedding(g.element(0), e).unwrap().is_identity());
            assert_eq!(flatten_embedding(g.element(g.longest()), e).unwrap().length(), 4);
        }
    }

    #[test]
    fn witnesses() {
        let g2 = build_arc(Family::G, 2).unwrap();
        let w = WeylElement::from_word(&g2, &[1, 2, 1]).unwrap();
        let wit = has_embedded_pattern(&w, &[EmbeddingKind::B2]).unwrap();
        assert_eq!(wit.embedding_kind.as_deref(), Some("B2"));
        assert_eq!(wit.flattened_word, vec![2, 1, 2]);
        let a3 = build_arc(Family::A, 3).unwrap();
        let w = WeylElement::from_word(&a3, &[2, 1, 3, 2]).unwrap();
        assert!(has_embedded_pattern(&w, &[EmbeddingKind::A3]).is_some());
        assert!(has_embedded_pattern(&WeylElement::identity(&a3), &EmbeddingKind::ALL).is_none());
        assert!(has_dual_embedded_pattern(&WeylElement::identity(&a3), &EmbeddingKind::ALL).is_none());
    }

    #[test]
    fn dual_transport_matches_words() {
        for (f, r) in [(Family::B, 3), (Family::C, 3), (Family::G, 2), (Family::F, 4)] {
            let rs = build_arc(f, r).unwrap();
            let checker = EmbeddingChecker::new(&rs);
            let g = Group::new(&rs).unwrap();
            for w in g.elements() {
                let word = w.reduced_word();
                let there = WeylElement::from_word(checker.dual_system(), &word).unwrap();
                assert_eq!(checker.dual_inversion_set(w.inversion_set()), there.inversion_set());
            }
        }
    }
}
