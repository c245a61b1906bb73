//! Poincaré polynomials of Bruhat intervals and their factorizations.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_system::SignedRoot;
use crate::weyl::{max_parabolic_below, parabolic_decompose, BruhatTester, Group, NodeSet, WeylElement};

/// A polynomial with nonnegative integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PoincarePolynomial {
    pub coeffs: Vec<u64>,
}

impl PoincarePolynomial {
    pub fn one() -> Self {
        PoincarePolynomial { coeffs: vec![1] }
    }

    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PoincarePolynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_palindromic(&self) -> bool {
        self.asymmetry_depth().is_none()
    }

    /// Least `k >= 1` with `c[k] != c[deg - k]`.
    pub fn asymmetry_depth(&self) -> Option<usize> {
        let d = self.degree();
        (1..=d / 2).find(|&k| self.coeffs[k] != self.coeffs[d - k])
    }

    pub fn eval(&self, t: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn mul(&self, other: &PoincarePolynomial) -> PoincarePolynomial {
        let mut c = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        PoincarePolynomial::new(c)
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for PoincarePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad coefficient {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        Ok(PoincarePolynomial::new(coeffs))
    }
}

fn by_length(g: &Group, ids: impl Iterator<Item = u32>) -> PoincarePolynomial {
    let mut c = vec![0u64; g.system().num_positive() + 1];
    for x in ids {
        c[g.length(x)] += 1;
    }
    PoincarePolynomial::new(c)
}

/// `P_w(t) = sum over v <= w of t^l(v)`.
pub fn poincare(g: &Group, w: u32) -> PoincarePolynomial {
    by_length(g, g.bruhat().ideal(w))
}

pub fn is_palindromic(p: &PoincarePolynomial) -> bool {
    p.is_palindromic()
}

pub fn asymmetry_depth(p: &PoincarePolynomial) -> Option<usize> {
    p.asymmetry_depth()
}

/// Some `x < w` with more than `l(w) - l(x)` Bruhat-graph edges
/// `x -> s_alpha x` inside `[e, w]`, if one exists.
pub fn bruhat_graph_violation(g: &Group, w: u32) -> Option<u32> {
    let m = g.bruhat();
    let rs = g.system();
    let lw = g.length(w);
    m.ideal(w).filter(|&x| x != w).find(|&x| {
        let inv = g.inversion_set(x);
        let up = (0..rs.num_positive())
            .filter(|&a| !inv.contains(a) && m.leq(g.reflect_left(a, x), w))
            .count();
        up > lw - g.length(x)
    })
}

/// `x` has no left descents in `j`.
pub fn is_min_coset_rep(g: &Group, x: u32, j: NodeSet) -> bool {
    j.iter().all(|s| !g.is_left_descent(x, s))
}

/// Poincaré polynomial of `[e, v]` restricted to minimal coset representatives.
pub fn quotient_poincare(g: &Group, v: u32, j: NodeSet) -> Result<PoincarePolynomial> {
    if !is_min_coset_rep(g, v, j) {
        return Err(Error::NotMinimalCosetRep);
    }
    let m = g.try_bruhat()?;
    Ok(by_length(g, m.ideal(v).filter(|&x| is_min_coset_rep(g, x, j))))
}

/// When `w = u v` with `u` the maximal parabolic element below `w`, returns
/// the factors `P_u` and the quotient polynomial of `v`; their product is
/// checked against `P_w`.
pub fn chains_factorize(
    g: &Group,
    w: u32,
    j: NodeSet,
) -> Result<Option<(PoincarePolynomial, PoincarePolynomial)>> {
    let (u, v) = parabolic_decompose(g.element(w), j);
    let (u, v) = (g.id_of(&u), g.id_of(&v));
    if max_parabolic_below(g, w, j)? != u {
        return Ok(None);
    }
    let pu = poincare(g, u);
    let pv = quotient_poincare(g, v, j)?;
    if pu.mul(&pv) != poincare(g, w) {
        return Err(Error::Internal(format!(
            "factorization of {} along {j:?} does not multiply back",
            g.element(w)
        )));
    }
    Ok(Some((pu, pv)))
}

/// One peeling step: the removed leaf, whether the inverse was factored,
/// and the palindromic quotient factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorStep {
    pub removed_node: usize,
    pub inverted: bool,
    pub quotient: PoincarePolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Factorization {
    pub steps: Vec<FactorStep>,
}

impl Factorization {
    pub fn factors(&self) -> Vec<PoincarePolynomial> {
        self.steps.iter().map(|s| s.quotient.clone()).collect()
    }

    pub fn product(&self) -> PoincarePolynomial {
        self.steps
            .iter()
            .fold(PoincarePolynomial::one(), |acc, s| acc.mul(&s.quotient))
    }
}

fn leaves(g: &Group, nodes: NodeSet) -> Vec<usize> {
    let rs = g.system();
    nodes
        .iter()
        .filter(|&s| rs.dynkin_neighbors(s).filter(|&t| nodes.contains(t)).count() <= 1)
        .collect()
}

/// Factors `P_w` into palindromic quotient polynomials by repeatedly peeling
/// a leaf of the Dynkin diagram, trying `w` before its inverse and leaves in
/// node order. Returns `None` when no such factorization exists.
pub fn recursive_factor(g: &Group, w: u32) -> Result<Option<Factorization>> {
    let mut failed = HashSet::new();
    let rank = g.system().rank();
    Ok(peel(g, w, NodeSet::all(rank), &mut failed)?.map(|steps| Factorization { steps }))
}

fn peel(
    g: &Group,
    x: u32,
    nodes: NodeSet,
    failed: &mut HashSet<(u32, NodeSet)>,
) -> Result<Option<Vec<FactorStep>>> {
    if x == g.identity() {
        return Ok(Some(vec![]));
    }
    if failed.contains(&(x, nodes)) {
        return Ok(None);
    }
    for leaf in leaves(g, nodes) {
        let j = nodes.without(leaf);
        for inverted in [false, true] {
            let y = if inverted { g.inverse(x) } else { x };
            let (u, v) = parabolic_decompose(g.element(y), j);
            let (u, v) = (g.id_of(&u), g.id_of(&v));
            if max_parabolic_below(g, y, j)? != u {
                continue;
            }
            let q = quotient_poincare(g, v, j)?;
            if !q.is_palindromic() {
                continue;
            }
            if let Some(mut rest) = peel(g, u, j, failed)? {
                if !q.is_one() {
                    rest.insert(0, FactorStep { removed_node: leaf, inverted, quotient: q });
                }
                return Ok(Some(rest));
            }
        }
    }
    failed.insert((x, nodes));
    Ok(None)
}

/// Counts of elements below `w` by length, for lengths `0..=k`, using only
/// Bruhat tests against `w`. Suitable for groups too large to enumerate.
pub fn lower_level_counts(w: &WeylElement, k: usize) -> Vec<usize> {
    let tester = BruhatTester::new(w);
    let rank = w.system().rank();
    let mut level: Vec<WeylElement> = vec![WeylElement::identity(w.system())];
    let mut counts = vec![1];
    for _ in 0..k.min(w.length()) {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for x in &level {
            for s in 0..rank {
                if x.is_right_descent(s) {
                    continue;
                }
                let y = x.right_mul_simple(s);
                if seen.insert(y.inversion_set()) && tester.leq(&y) {
                    next.push(y);
                }
            }
        }
        counts.push(next.len());
        level = next;
    }
    counts
}

/// Counts of elements below `w` of lengths `l(w), l(w)-1, ..., l(w)-k`,
/// walking down Bruhat covers `x -> x s_alpha`.
pub fn upper_level_counts(w: &WeylElement, k: usize) -> Vec<usize> {
    let rs = w.system();
    let n = rs.num_positive();
    let mut level: HashMap<_, WeylElement> = HashMap::new();
    level.insert(w.inversion_set(), w.clone());
    let mut counts = vec![1];
    for _ in 0..k.min(w.length()) {
        let mut next = HashMap::new();
        for x in level.values() {
            let target = x.length() - 1;
            for a in 0..n {
                if !x.apply(SignedRoot::positive(a)).is_negative() {
                    continue;
                }
                let table = rs.reflection_table(a);
                let len = table.iter().filter(|&&r| x.apply(r).is_negative()).count();
                if len != target {
                    continue;
                }
                let action = table.iter().map(|&r| x.apply(r)).collect();
                let y = WeylElement::from_action(rs.clone(), action);
                next.entry(y.inversion_set()).or_insert(y);
            }
        }
        counts.push(next.len());
        level = next;
    }
    counts
}

/// Asymmetry depth of `P_w` if it is at most `max`, computed level by level
/// from both ends without enumerating the group. `None` means the first
/// `max` coefficient pairs agree.
pub fn truncated_asymmetry_depth(w: &WeylElement, max: usize) -> Option<usize> {
    let half = w.length() / 2;
    let limit = max.min(half);
    if limit == 0 {
        return None;
    }
    // cheap first pass at depth 1 settles most cases
    let lo = lower_level_counts(w, 1);
    let hi = upper_level_counts(w, 1);
    if lo[1] != hi[1] {
        return Some(1);
    }
    if limit == 1 {
        return None;
    }
    let lo = lower_level_counts(w, limit);
    let hi = upper_level_counts(w, limit);
    (1..=limit).find(|&k| lo[k] != hi[k])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{build_arc, Family};

    #[test]
    fn small_polynomials() {
        let rs = build_arc(Family::A, 3).unwrap();
        let g = Group::new(&rs).unwrap();
        let w = g.from_word(&[2, 1, 3, 2]).unwrap();
        let p = poincare(&g, w);
        assert_eq!(p.to_string(), "1,3,5,4,1");
        assert_eq!(p.asymmetry_depth(), Some(1));
        assert!(bruhat_graph_violation(&g, w).is_some());
        let p0 = poincare(&g, g.longest());
        assert_eq!(p0.to_string(), "1,3,5,6,5,3,1");
        assert!(bruhat_graph_violation(&g, g.longest()).is_none());
        assert_eq!(poincare(&g, 0), PoincarePolynomial::one());
    }

    #[test]
    fn parse_and_display() {
        let p: PoincarePolynomial = "1,2,2,1".parse().unwrap();
        assert_eq!(p.coeffs, vec![1, 2, 2, 1]);
        assert_eq!(p.eval(1), 6);
        assert!("1,x".parse::<PoincarePolynomial>().is_err());
    }

    #[test]
    fn quotient_errors() {
        let rs = build_arc(Family::A, 2).unwrap();
        let g = Group::new(&rs).unwrap();
        let s1 = g.from_word(&[1]).unwrap();
        assert_eq!(
            quotient_poincare(&g, s1, NodeSet::from_labels(&[1])),
            Err(Error::NotMinimalCosetRep)
        );
    }

    #[test]
    fn identity_factors_trivially() {
        let rs = build_arc(Family::B, 2).unwrap();
        let g = Group::new(&rs).unwrap();
        assert_eq!(recursive_factor(&g, 0).unwrap(), Some(Factorization::default()));
        let w = g.from_word(&[2, 1, 2]).unwrap();
        let f = recursive_factor(&g, w).unwrap().unwrap();
        assert_eq!(f.product(), poincare(&g, w));
    }

    #[test]
    fn truncated_counts_match_full() {
        let rs = build_arc(Family::B, 3).unwrap();
        let g = Group::new(&rs).unwrap();
        for w in g.ids() {
            let p = poincare(&g, w);
            let e = g.element(w);
            let l = e.length();
            let lo = lower_level_counts(e, 3);
            let hi = upper_level_counts(e, 3);
            for k in 0..lo.len() {
                assert_eq!(lo[k] as u64, p.coeffs[k]);
                assert_eq!(hi[k] as u64, p.coeffs[l - k]);
            }
            assert_eq!(truncated_asymmetry_depth(e, 9), p.asymmetry_depth());
        }
    }
}
