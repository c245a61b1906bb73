use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::{Group, WeylElement};
use crate::error::{Error, Result};
use crate::root_system::{RootSet, RootSystem};

/// A set of Dynkin nodes, stored 0-based.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(pub u16);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn all(rank: usize) -> NodeSet {
        NodeSet(((1u32 << rank) - 1) as u16)
    }

    /// From 1-based labels.
    pub fn from_labels(labels: &[usize]) -> NodeSet {
        NodeSet(labels.iter().fold(0, |m, &l| m | 1 << (l - 1)))
    }

    pub fn contains(self, s: usize) -> bool {
        self.0 >> s & 1 == 1
    }

    pub fn insert(&mut self, s: usize) {
        self.0 |= 1 << s;
    }

    pub fn without(self, s: usize) -> NodeSet {
        NodeSet(self.0 & !(1 << s))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&s| self.contains(s))
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<usize> = self.iter().map(|s| s + 1).collect();
        write!(f, "{labels:?}")
    }
}

/// Positive roots supported on the nodes of `j`.
pub fn parabolic_roots(rs: &RootSystem, j: NodeSet) -> RootSet {
    (0..rs.num_positive())
        .filter(|&i| {
            rs.coefficients(i)
                .iter()
                .enumerate()
                .all(|(k, &c)| c == 0 || j.contains(k))
        })
        .collect()
}

/// `w = u v` with `u` in the parabolic subgroup of `j` and `v` having no left
/// descents in `j`.
pub fn parabolic_decompose(w: &WeylElement, j: NodeSet) -> (WeylElement, WeylElement) {
    let rs = w.system().clone();
    let mut u_word = Vec::new();
    let mut v = w.clone();
    loop {
        let Some(s) = j.iter().find(|&s| v.is_left_descent(s)) else {
            break;
        };
        v = v.left_mul_simple(s);
        u_word.push(s + 1);
    }
    let u = WeylElement::from_word(&rs, &u_word).expect("labels in range");
    (u, v)
}

/// Minimal coset representatives with no left descents in `j`, computed as
/// the orbit of a coweight whose stabilizer is the parabolic subgroup, so the
/// whole group is never enumerated.
pub fn min_coset_reps(rs: &Arc<RootSystem>, j: NodeSet) -> Vec<WeylElement> {
    let rank = rs.rank();
    let cartan = rs.cartan_matrix();
    let start: Vec<i64> = (0..rank).map(|k| if j.contains(k) { 0 } else { 1 }).collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(start.clone());
    let mut level = vec![(start, WeylElement::identity(rs))];
    let mut out = Vec::new();
    while !level.is_empty() {
        let mut next = Vec::new();
        for (mu, x) in &level {
            for i in 0..rank {
                if mu[i] <= 0 {
                    continue;
                }
                let m: Vec<i64> = (0..rank).map(|k| mu[k] - cartan[k][i] * mu[i]).collect();
                if seen.insert(m.clone()) {
                    next.push((m, x.left_mul_simple(i)));
                }
            }
        }
        out.extend(level.into_iter().map(|(_, x)| x.inverse()));
        level = next;
    }
    out
}

/// Ids of the parabolic subgroup generated by `j`.
pub fn parabolic_elements(g: &Group, j: NodeSet) -> Vec<u32> {
    g.parabolic(j).to_vec()
}

/// The unique maximal element of the parabolic subgroup of `j` below `w`.
pub fn max_parabolic_below(g: &Group, w: u32, j: NodeSet) -> Result<u32> {
    let m = g.try_bruhat()?;
    let below: Vec<u32> = g
        .parabolic(j)
        .iter()
        .copied()
        .filter(|&u| m.leq(u, w))
        .collect();
    let top = *below
        .iter()
        .max_by_key(|&&u| (g.length(u), std::cmp::Reverse(u)))
        .expect("identity is always below");
    if below.iter().any(|&u| !m.leq(u, top)) {
        return Err(Error::Internal(format!(
            "no maximal parabolic element below {}",
            g.element(w)
        )));
    }
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{build_arc, Family};

    #[test]
    fn coset_reps_match_filter() {
        let rs = build_arc(Family::B, 3).unwrap();
        let g = Group::new(&rs).unwrap();
        for mask in 0..8u16 {
            let j = NodeSet(mask);
            let reps = min_coset_reps(&rs, j);
            let filtered: Vec<u32> = g
                .ids()
                .filter(|&w| j.iter().all(|s| !g.is_left_descent(w, s)))
                .collect();
            let mut got: Vec<u32> = reps.iter().map(|v| g.id_of(v)).collect();
            got.sort();
            assert_eq!(got, filtered);
            let sub = parabolic_elements(&g, j).len();
            assert_eq!(reps.len() * sub, g.size());
        }
    }

    #[test]
    fn decompose() {
        let rs = build_arc(Family::A, 3).unwrap();
        let g = Group::new(&rs).unwrap();
        let j = NodeSet::from_labels(&[1, 2]);
        let roots = parabolic_roots(&rs, j);
        for w in g.elements() {
            let (u, v) = parabolic_decompose(w, j);
            assert_eq!(&u.mul(&v), w);
            assert_eq!(u.length() + v.length(), w.length());
            assert!(u.inversion_set().is_subset(roots));
            assert!(j.iter().all(|s| !v.is_left_descent(s)));
        }
    }

    #[test]
    fn e8_quotient() {
        let rs = build_arc(Family::E, 8).unwrap();
        let j = NodeSet::all(8).without(0);
        assert_eq!(min_coset_reps(&rs, j).len(), 2160);
    }
}
