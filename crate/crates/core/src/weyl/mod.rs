//! Weyl group elements acting on positive-root indices.
//!
//! An element is stored by the images of the positive roots. Words are read
//! as products `s_{a1} s_{a2} ... s_{ap}` acting on the left, with letters
//! given by 1-based node labels.

mod bruhat;
mod group;
mod parabolic;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::root_system::{RootSet, RootSystem, SignedRoot};

pub use bruhat::{bruhat_leq, BruhatMemo, BruhatTester};
pub use group::{BruhatMatrix, Group, DEFAULT_CAP, DEFAULT_MATRIX_CAP};
pub use parabolic::{
    max_parabolic_below, min_coset_reps, parabolic_decompose, parabolic_elements,
    parabolic_roots, NodeSet,
};

/// Inversion set `I(w) = Phi+ ∩ w(Phi-)`.
pub type InversionSet = RootSet;

#[derive(Clone)]
pub struct WeylElement {
    rs: Arc<RootSystem>,
    action: Box<[SignedRoot]>,
    length: u16,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.action.hash(state);
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order by length, then action table. Not the Bruhat order.
impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.length, &self.action).cmp(&(other.length, &other.action))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({} [{}])", self.rs.label(), self)
    }
}

/// Comma-separated shortest-lex reduced word.
impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.reduced_word().iter().map(|s| s.to_string()).collect();
        write!(f, "{}", w.join(","))
    }
}

fn same_system(a: &Arc<RootSystem>, b: &Arc<RootSystem>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl WeylElement {
    pub(crate) fn from_action(rs: Arc<RootSystem>, action: Box<[SignedRoot]>) -> Self {
        let length = action.iter().filter(|r| r.is_negative()).count() as u16;
        WeylElement { rs, action, length }
    }

    pub fn identity(rs: &Arc<RootSystem>) -> Self {
        let action = (0..rs.num_positive()).map(SignedRoot::positive).collect();
        WeylElement { rs: rs.clone(), action, length: 0 }
    }

    /// Simple reflection for 1-based node label `s`.
    pub fn simple(rs: &Arc<RootSystem>, s: usize) -> Result<Self> {
        if s == 0 || s > rs.rank() {
            return Err(Error::IndexOutOfRange { index: s, rank: rs.rank() });
        }
        Ok(Self::reflection(rs, rs.simple_index(s - 1)))
    }

    /// Reflection in positive root `i`.
    pub fn reflection(rs: &Arc<RootSystem>, i: usize) -> Self {
        Self::from_action(rs.clone(), rs.reflection_table(i).into())
    }

    /// Product `s_{a1} ... s_{ap}` of 1-based simple labels.
    pub fn from_word(rs: &Arc<RootSystem>, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(rs);
        for &s in word {
            if s == 0 || s > rs.rank() {
                return Err(Error::IndexOutOfRange { index: s, rank: rs.rank() });
            }
            w = w.right_mul_simple(s - 1);
        }
        Ok(w)
    }

    /// The element acting on root coordinates by the linear map `f`, if `f`
    /// permutes the roots and is realized by an element of the Weyl group.
    pub fn from_linear_map(rs: &Arc<RootSystem>, f: impl Fn(&[i64]) -> Vec<i64>) -> Result<Self> {
        let action: Box<[SignedRoot]> = rs
            .positive_roots()
            .iter()
            .map(|v| rs.lookup(&f(v)).ok_or(Error::NotAnInversionSet))
            .collect::<Result<_>>()?;
        let w = Self::from_action(rs.clone(), action);
        let check = element_from_inversion_set(rs, w.inversion_set())?;
        if check != w {
            return Err(Error::NotAnInversionSet);
        }
        Ok(w)
    }

    /// Signed permutation in one-line notation acting by `e_j -> sign(w_j) e_{|w_j|}`.
    /// Only meaningful for classical types in their standard coordinates.
    pub fn from_signed_permutation(rs: &Arc<RootSystem>, perm: &[i64]) -> Result<Self> {
        let n = perm.len();
        if n != rs.dim() {
            return Err(Error::Parse(format!(
                "signed permutation of length {n} does not match dimension {}",
                rs.dim()
            )));
        }
        let mut seen = vec![false; n];
        for &x in perm {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a - 1] {
                return Err(Error::Parse(format!("{perm:?} is not a signed permutation")));
            }
            seen[a - 1] = true;
        }
        Self::from_linear_map(rs, |v| apply_signed_permutation(perm, v))
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn action(&self) -> &[SignedRoot] {
        &self.action
    }

    #[inline]
    pub fn apply(&self, r: SignedRoot) -> SignedRoot {
        self.action[r.index()].with_sign_of(r)
    }

    /// `self * other`, as composition of maps.
    pub fn multiply(&self, other: &WeylElement) -> Result<WeylElement> {
        if !same_system(&self.rs, &other.rs) {
            return Err(Error::MixedSystems);
        }
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &WeylElement) -> WeylElement {
        let action = other.action.iter().map(|&r| self.apply(r)).collect();
        Self::from_action(self.rs.clone(), action)
    }

    pub fn inverse(&self) -> WeylElement {
        let mut action = vec![SignedRoot::positive(0); self.action.len()].into_boxed_slice();
        for (i, &r) in self.action.iter().enumerate() {
            action[r.index()] = SignedRoot::new(i, r.is_negative());
        }
        WeylElement { rs: self.rs.clone(), action, length: self.length }
    }

    /// `w s` for 0-based node `s`.
    pub fn right_mul_simple(&self, s: usize) -> WeylElement {
        let table = self.rs.reflection_table(self.rs.simple_index(s));
        let action = table.iter().map(|&r| self.apply(r)).collect();
        Self::from_action(self.rs.clone(), action)
    }

    /// `s w` for 0-based node `s`.
    pub fn left_mul_simple(&self, s: usize) -> WeylElement {
        let action = self.action.iter().map(|&r| self.rs.simple_reflect(s, r)).collect();
        Self::from_action(self.rs.clone(), action)
    }

    /// `s_alpha w` for positive root `a`.
    pub fn left_mul_reflection(&self, a: usize) -> WeylElement {
        let action = self.action.iter().map(|&r| self.rs.reflect(a, r)).collect();
        Self::from_action(self.rs.clone(), action)
    }

    pub fn inversion_set(&self) -> InversionSet {
        let mut s = RootSet::EMPTY;
        for r in self.action.iter() {
            if r.is_negative() {
                s.insert(r.index());
            }
        }
        s
    }

    /// `w s < w` for 0-based node `s`.
    #[inline]
    pub fn is_right_descent(&self, s: usize) -> bool {
        self.action[self.rs.simple_index(s)].is_negative()
    }

    /// `s w < w` for 0-based node `s`.
    pub fn is_left_descent(&self, s: usize) -> bool {
        let target = self.rs.simple_index(s);
        self.action.iter().any(|r| r.is_negative() && r.index() == target)
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (0..self.rs.rank()).filter(|&s| self.is_right_descent(s)).collect()
    }

    pub fn left_descents(&self) -> Vec<usize> {
        let inv = self.inversion_set();
        (0..self.rs.rank()).filter(|&s| inv.contains(self.rs.simple_index(s))).collect()
    }

    /// Lexicographically smallest reduced word, as 1-based labels.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while !w.is_identity() {
            let inv = w.inversion_set();
            let s = (0..self.rs.rank())
                .find(|&s| inv.contains(self.rs.simple_index(s)))
                .expect("non-identity element has a left descent");
            word.push(s + 1);
            w = w.left_mul_simple(s);
        }
        word
    }

    /// Simple nodes (0-based) occurring in any reduced word.
    pub fn support(&self) -> NodeSet {
        let mut s = NodeSet::EMPTY;
        for i in self.inversion_set().iter() {
            for (k, &c) in self.rs.coefficients(i).iter().enumerate() {
                if c != 0 {
                    s.insert(k);
                }
            }
        }
        s
    }

    /// Same element transported to another system with the same Coxeter
    /// graph, through a reduced word.
    pub fn transport(&self, target: &Arc<RootSystem>) -> Result<WeylElement> {
        Self::from_word(target, &self.reduced_word())
    }
}

/// `e_j -> sign(w_j) e_{|w_j|}` extended linearly.
pub fn apply_signed_permutation(perm: &[i64], v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; v.len()];
    for (j, &x) in perm.iter().enumerate() {
        let target = x.unsigned_abs() as usize - 1;
        out[target] += x.signum() * v[j];
    }
    out
}

/// Whether `set` is closed and co-closed under root addition.
pub fn is_biconvex(rs: &RootSystem, set: RootSet) -> bool {
    rs.sum_triples().iter().all(|&(i, j, k)| {
        let (i, j, k) = (i as usize, j as usize, k as usize);
        let (a, b, c) = (set.contains(i), set.contains(j), set.contains(k));
        // closed: a and b imply c; co-closed: neither a nor b implies not c
        !(a && b && !c) && !(!a && !b && c)
    })
}

/// Rebuilds the element with the given inversion set by peeling simple roots.
pub fn element_from_inversion_set(rs: &Arc<RootSystem>, set: InversionSet) -> Result<WeylElement> {
    let mut rest = set;
    let mut word = Vec::with_capacity(set.len());
    while !rest.is_empty() {
        let s = (0..rs.rank())
            .find(|&s| rest.contains(rs.simple_index(s)))
            .ok_or(Error::NotAnInversionSet)?;
        let a = rs.simple_index(s);
        rest.remove(a);
        let mut next = RootSet::EMPTY;
        for i in rest.iter() {
            let r = rs.reflect(a, SignedRoot::positive(i));
            if r.is_negative() {
                return Err(Error::NotAnInversionSet);
            }
            next.insert(r.index());
        }
        rest = next;
        word.push(s + 1);
    }
    let w = WeylElement::from_word(rs, &word)?;
    if w.inversion_set() != set || w.length() != word.len() {
        return Err(Error::NotAnInversionSet);
    }
    Ok(w)
}

/// Inversion set from a reduced word via prefix images of simple roots.
pub fn inversion_set_from_word(rs: &Arc<RootSystem>, word: &[usize]) -> Result<InversionSet> {
    let mut prefix = WeylElement::identity(rs);
    let mut set = RootSet::EMPTY;
    for &s in word {
        if s == 0 || s > rs.rank() {
            return Err(Error::IndexOutOfRange { index: s, rank: rs.rank() });
        }
        let r = prefix.apply(SignedRoot::positive(rs.simple_index(s - 1)));
        if r.is_negative() {
            return Err(Error::Parse(format!("word {word:?} is not reduced")));
        }
        set.insert(r.index());
        prefix = prefix.right_mul_simple(s - 1);
    }
    Ok(set)
}

/// Parses a comma- or space-separated word of 1-based labels, or `e`.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(vec![]);
    }
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.trim_start_matches('s')
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad letter {t:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{build_arc, Family};

    #[test]
    fn words_and_inverse() {
        let rs = build_arc(Family::A, 3).unwrap();
        let w = WeylElement::from_word(&rs, &[2, 1, 3, 2]).unwrap();
        assert_eq!(w.length(), 4);
        let wi = WeylElement::from_word(&rs, &[2, 3, 1, 2]).unwrap();
        assert_eq!(w.inverse(), wi);
        assert!(w.multiply(&wi).unwrap().is_identity());
        assert_eq!(w.reduced_word(), vec![2, 1, 3, 2]);
        assert!(WeylElement::from_word(&rs, &[4]).is_err());
    }

    #[test]
    fn mixed_systems() {
        let a = build_arc(Family::A, 2).unwrap();
        let b = build_arc(Family::B, 2).unwrap();
        let x = WeylElement::simple(&a, 1).unwrap();
        let y = WeylElement::simple(&b, 1).unwrap();
        assert_eq!(x.multiply(&y), Err(Error::MixedSystems));
    }

    #[test]
    fn inversion_round_trip() {
        let rs = build_arc(Family::B, 3).unwrap();
        let w = WeylElement::from_word(&rs, &[1, 2, 3, 2, 1]).unwrap();
        let back = element_from_inversion_set(&rs, w.inversion_set()).unwrap();
        assert_eq!(back, w);
        // not closed: two simple roots without their sum
        let bad: RootSet = [rs.simple_index(0), rs.simple_index(1)].into_iter().collect();
        assert!(element_from_inversion_set(&rs, bad).is_err());
        assert!(!is_biconvex(&rs, bad));
    }

    #[test]
    fn signed_permutations() {
        let rs = build_arc(Family::A, 3).unwrap();
        let w = WeylElement::from_signed_permutation(&rs, &[4, 2, 3, 1]).unwrap();
        assert_eq!(w.length(), 5);
        let x = WeylElement::from_signed_permutation(&rs, &[3, 4, 1, 2]).unwrap();
        assert_eq!(x.length(), 4);
        let b = build_arc(Family::B, 3).unwrap();
        let y = WeylElement::from_signed_permutation(&b, &[3, -2, 1]).unwrap();
        assert_eq!(y.length(), 4);
        let d = build_arc(Family::D, 4).unwrap();
        assert!(WeylElement::from_signed_permutation(&d, &[-1, 2, 3, 4]).is_err());
        assert!(WeylElement::from_signed_permutation(&d, &[-1, -2, 3, 4]).is_ok());
    }

    #[test]
    fn parse_words() {
        assert_eq!(parse_word("2,1,2").unwrap(), vec![2, 1, 2]);
        assert_eq!(parse_word("s2 s1").unwrap(), vec![2, 1]);
        assert_eq!(parse_word("e").unwrap(), Vec::<usize>::new());
        assert!(parse_word("x").is_err());
    }
}
