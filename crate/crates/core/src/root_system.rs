//! Crystallographic root systems with exact integer coordinates.
//!
//! Classical types use coordinates in which `e_k - e_j` is positive for `k > j`
//! and the short (type B) or long (type C) simple root is attached to `e_1`.
//! Types E and F carry half-integer roots and are stored scaled by two.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use arith::lcm;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, dot};

/// Maximum number of positive roots supported by the bitset representation.
pub const MAX_POSITIVE_ROOTS: usize = 128;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn from_char(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// An irreducible Cartan type. `C2` is normalized to `B2`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidType { family: family.as_char(), rank });
        }
        let family = if family == Family::C && rank == 2 { Family::B } else { family };
        let t = CartanType { family, rank };
        if t.num_positive_roots() > MAX_POSITIVE_ROOTS {
            return Err(Error::InvalidType { family: family.as_char(), rank });
        }
        Ok(t)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut chars = s.trim().chars();
        let family = chars
            .next()
            .and_then(Family::from_char)
            .ok_or_else(|| Error::Parse(format!("bad type {s:?}")))?;
        let rank = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        Self::new(family, rank)
    }

    pub fn num_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Order of the Weyl group.
    pub fn group_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    pub fn dual(&self) -> CartanType {
        let family = match (self.family, self.rank) {
            (Family::B, r) if r > 2 => Family::C,
            (Family::C, _) => Family::B,
            (f, _) => f,
        };
        CartanType { family, rank: self.rank }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.as_char(), self.rank)
    }
}

/// A root given by its positive-root index and a sign.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedRoot(u8);

impl SignedRoot {
    const NEG: u8 = 0x80;

    #[inline]
    pub fn positive(index: usize) -> Self {
        SignedRoot(index as u8)
    }

    #[inline]
    pub fn negative(index: usize) -> Self {
        SignedRoot(index as u8 | Self::NEG)
    }

    #[inline]
    pub fn new(index: usize, negative: bool) -> Self {
        if negative {
            Self::negative(index)
        } else {
            Self::positive(index)
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        (self.0 & !Self::NEG) as usize
    }

    #[inline]
    pub fn is_negative(self) -> bool {
        self.0 & Self::NEG != 0
    }

    #[inline]
    pub fn negate(self) -> Self {
        SignedRoot(self.0 ^ Self::NEG)
    }

    #[inline]
    pub fn with_sign_of(self, other: SignedRoot) -> Self {
        SignedRoot(self.0 ^ (other.0 & Self::NEG))
    }
}

impl fmt::Debug for SignedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            write!(f, "-{}", self.index())
        } else {
            write!(f, "+{}", self.index())
        }
    }
}

/// A set of positive roots, stored as a bitset over positive-root indices.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSet(pub u128);

impl RootSet {
    pub const EMPTY: RootSet = RootSet(0);

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    #[inline]
    pub fn with(self, i: usize) -> RootSet {
        RootSet(self.0 | 1 << i)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: RootSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn intersect(self, other: RootSet) -> RootSet {
        RootSet(self.0 & other.0)
    }

    #[inline]
    pub fn union(self, other: RootSet) -> RootSet {
        RootSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn full(n: usize) -> RootSet {
        if n == 128 {
            RootSet(u128::MAX)
        } else {
            RootSet((1u128 << n) - 1)
        }
    }
}

impl FromIterator<usize> for RootSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = RootSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A root system with its positive roots in a fixed order: by height, then
/// lexicographically on coordinates.
#[derive(Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    lengths_swapped: bool,
    dim: usize,
    simple: Vec<Vec<i64>>,
    positive: Vec<Vec<i64>>,
    coeffs: Vec<Vec<i64>>,
    heights: Vec<u32>,
    norms: Vec<i64>,
    simple_index: Vec<usize>,
    lookup: HashMap<Vec<i64>, SignedRoot>,
    reflection: Vec<Vec<SignedRoot>>,
    cartan: Vec<Vec<i64>>,
    sums: Vec<(u8, u8, u8)>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.simple == other.simple && self.cartan_type == other.cartan_type
    }
}

impl Eq for RootSystem {}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("type", &self.label())
            .field("simple", &self.simple)
            .finish()
    }
}

mod arith {
    pub fn gcd(a: i64, b: i64) -> i64 {
        let (mut a, mut b) = (a.abs(), b.abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }

    pub fn lcm(a: i64, b: i64) -> i64 {
        a / gcd(a, b) * b
    }
}

fn unit(dim: usize, entries: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; dim];
    for &(i, x) in entries {
        v[i] += x;
    }
    v
}

fn classical_simple_roots(family: Family, n: usize) -> Vec<Vec<i64>> {
    // e_k is coordinate k-1; chain roots e_{m+1} - e_m run from the top coordinate down
    let dim = if family == Family::A { n + 1 } else { n };
    let chain = if family == Family::A { n } else { n - 1 };
    let mut simple: Vec<Vec<i64>> = (1..=chain)
        .map(|i| {
            let hi = dim - i;
            unit(dim, &[(hi, 1), (hi - 1, -1)])
        })
        .collect();
    match family {
        Family::A => {}
        Family::B => simple.push(unit(dim, &[(0, 1)])),
        Family::C => simple.push(unit(dim, &[(0, 2)])),
        Family::D => simple.push(unit(dim, &[(0, 1), (1, 1)])),
        _ => unreachable!(),
    }
    simple
}

fn e8_simple_roots() -> Vec<Vec<i64>> {
    let mut s = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], unit(8, &[(0, 2), (1, 2)])];
    s.push(unit(8, &[(0, -2), (1, 2)]));
    for k in 2..7 {
        s.push(unit(8, &[(k - 1, -2), (k, 2)]));
    }
    s
}

/// Builds the root system of the given type with Bourbaki node labels.
pub fn build(family: Family, rank: usize) -> Result<RootSystem> {
    let t = CartanType::new(family, rank)?;
    let simple = match t.family {
        Family::A | Family::B | Family::C | Family::D => classical_simple_roots(t.family, rank),
        Family::E => e8_simple_roots().into_iter().take(rank).collect(),
        Family::F => vec![
            vec![0, 2, -2, 0],
            vec![0, 0, 2, -2],
            vec![0, 0, 0, 2],
            vec![1, -1, -1, -1],
        ],
        Family::G => vec![vec![1, -1, 0], vec![-2, 1, 1]],
    };
    RootSystem::from_simple_roots(t, false, simple)
}

/// Shared handle to a root system.
pub fn build_arc(family: Family, rank: usize) -> Result<Arc<RootSystem>> {
    build(family, rank).map(Arc::new)
}

/// The dual system, whose roots are the coroots rescaled to integers.
pub fn dual(rs: &RootSystem) -> RootSystem {
    dual_with_map(rs).0
}

/// The dual system together with the map from positive-root indices of `rs`
/// to the indices of the corresponding positive coroots.
pub fn dual_with_map(rs: &RootSystem) -> (RootSystem, Vec<usize>) {
    let l = rs.norms.iter().fold(1, |l, &n| lcm(l, n));
    let scale = |v: &[i64], n: i64| v.iter().map(|x| x * (l / n)).collect::<Vec<_>>();
    let mut simple: Vec<Vec<i64>> = rs
        .simple
        .iter()
        .map(|a| scale(a, dot(a, a)))
        .collect();
    let g = simple
        .iter()
        .flatten()
        .fold(0, |g, &x| arith::gcd(g, x));
    for v in simple.iter_mut().flatten() {
        *v /= g;
    }
    let swapped = if rs.cartan_type.is_simply_laced() {
        rs.lengths_swapped
    } else if matches!(rs.cartan_type.family, Family::B | Family::C) && rs.rank() > 2 {
        false
    } else {
        !rs.lengths_swapped
    };
    let d = RootSystem::from_simple_roots(rs.cartan_type.dual(), swapped, simple)
        .expect("dual of a valid root system is valid");
    let map = rs
        .positive
        .iter()
        .zip(&rs.norms)
        .map(|(a, &n)| {
            let v: Vec<i64> = scale(a, n).into_iter().map(|x| x / g).collect();
            let r = d.lookup(&v).expect("coroot is a root of the dual system");
            debug_assert!(!r.is_negative());
            r.index()
        })
        .collect();
    (d, map)
}

/// A regular dominant point `r` with `alpha_i(r) = 1` for every simple root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularPoint {
    pub coords: Vec<i64>,
    pub scale: i64,
}

impl RegularPoint {
    pub fn eval(&self, root: &[i64]) -> i64 {
        let v = dot(&self.coords, root);
        debug_assert_eq!(v % self.scale, 0);
        v / self.scale
    }
}

pub fn regular_point(rs: &RootSystem) -> RegularPoint {
    let k = rs.rank();
    // solve Gram * c = (1,..,1) and take r = sum c_j alpha_j
    let gram: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| dot(&rs.simple[i], &rs.simple[j])).collect())
        .collect();
    let ones = vec![1; k];
    let c = linalg::coefficients(&gram, &ones).expect("Gram matrix of simple roots is invertible");
    let den = c.iter().fold(1, |l, x| lcm(l, *x.denom()));
    let mut coords = vec![0; rs.dim];
    for (j, cj) in c.iter().enumerate() {
        let m = (cj * den).to_integer();
        for (x, a) in coords.iter_mut().zip(&rs.simple[j]) {
            *x += m * a;
        }
    }
    RegularPoint { coords, scale: den }
}

impl RootSystem {
    fn from_simple_roots(
        cartan_type: CartanType,
        lengths_swapped: bool,
        simple: Vec<Vec<i64>>,
    ) -> Result<RootSystem> {
        let rank = simple.len();
        let dim = simple[0].len();
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| 2 * dot(&simple[i], &simple[j]) / dot(&simple[j], &simple[j]))
                    .collect()
            })
            .collect();
        let simple_norms: Vec<i64> = simple.iter().map(|a| dot(a, a)).collect();

        // closure under simple reflections, tracking simple-root coefficients
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for (i, a) in simple.iter().enumerate() {
            let mut c = vec![0; rank];
            c[i] = 1;
            seen.insert(a.clone(), c.clone());
            queue.push((a.clone(), c));
        }
        while let Some((v, c)) = queue.pop() {
            for i in 0..rank {
                let p = 2 * dot(&v, &simple[i]) / simple_norms[i];
                if p == 0 {
                    continue;
                }
                let w: Vec<i64> = v.iter().zip(&simple[i]).map(|(x, a)| x - p * a).collect();
                if !seen.contains_key(&w) {
                    let mut cw = c.clone();
                    cw[i] -= p;
                    seen.insert(w.clone(), cw.clone());
                    queue.push((w, cw));
                }
            }
        }
        let mut pos: Vec<(u32, Vec<i64>, Vec<i64>)> = seen
            .into_iter()
            .filter(|(_, c)| c.iter().all(|&x| x >= 0))
            .map(|(v, c)| (c.iter().sum::<i64>() as u32, v, c))
            .collect();
        pos.sort();
        if pos.len() != cartan_type.num_positive_roots() {
            return Err(Error::Internal(format!(
                "{cartan_type}: generated {} positive roots",
                pos.len()
            )));
        }
        let heights: Vec<u32> = pos.iter().map(|p| p.0).collect();
        let positive: Vec<Vec<i64>> = pos.iter().map(|p| p.1.clone()).collect();
        let coeffs: Vec<Vec<i64>> = pos.into_iter().map(|p| p.2).collect();
        let norms: Vec<i64> = positive.iter().map(|a| dot(a, a)).collect();

        let mut lookup = HashMap::new();
        for (i, v) in positive.iter().enumerate() {
            lookup.insert(v.clone(), SignedRoot::positive(i));
            lookup.insert(v.iter().map(|x| -x).collect(), SignedRoot::negative(i));
        }
        let simple_index: Vec<usize> = simple
            .iter()
            .map(|a| lookup[a].index())
            .collect();
        let reflection: Vec<Vec<SignedRoot>> = positive
            .iter()
            .zip(&norms)
            .map(|(a, &na)| {
                positive
                    .iter()
                    .map(|b| {
                        let p = 2 * dot(a, b) / na;
                        let img: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - p * y).collect();
                        lookup[&img]
                    })
                    .collect()
            })
            .collect();
        let mut sums = Vec::new();
        for i in 0..positive.len() {
            for j in i + 1..positive.len() {
                let s: Vec<i64> = positive[i].iter().zip(&positive[j]).map(|(x, y)| x + y).collect();
                if let Some(r) = lookup.get(&s) {
                    sums.push((i as u8, j as u8, r.index() as u8));
                }
            }
        }
        Ok(RootSystem {
            cartan_type,
            lengths_swapped,
            dim,
            simple,
            positive,
            coeffs,
            heights,
            norms,
            simple_index,
            lookup,
            reflection,
            cartan,
            sums,
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    /// True when long and short simple roots are exchanged relative to the
    /// usual labeling, as happens for duals of B2, F4 and G2.
    pub fn lengths_swapped(&self) -> bool {
        self.lengths_swapped
    }

    pub fn label(&self) -> String {
        self.cartan_type.to_string()
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.positive[i]
    }

    pub fn signed_coords(&self, r: SignedRoot) -> Vec<i64> {
        let v = &self.positive[r.index()];
        if r.is_negative() {
            v.iter().map(|x| -x).collect()
        } else {
            v.clone()
        }
    }

    /// Coefficients of positive root `i` in the simple roots.
    pub fn coefficients(&self, i: usize) -> &[i64] {
        &self.coeffs[i]
    }

    pub fn height(&self, i: usize) -> u32 {
        self.heights[i]
    }

    pub fn norm(&self, i: usize) -> i64 {
        self.norms[i]
    }

    pub fn inner(&self, i: usize, j: usize) -> i64 {
        dot(&self.positive[i], &self.positive[j])
    }

    /// Index of the positive root equal to simple root `s` (0-based node).
    pub fn simple_index(&self, s: usize) -> usize {
        self.simple_index[s]
    }

    /// The simple node whose root has positive index `i`, if any.
    pub fn simple_node(&self, i: usize) -> Option<usize> {
        self.simple_index.iter().position(|&x| x == i)
    }

    pub fn lookup(&self, v: &[i64]) -> Option<SignedRoot> {
        self.lookup.get(v).copied()
    }

    /// Action of the reflection in positive root `i` on the positive roots.
    pub fn reflection_table(&self, i: usize) -> &[SignedRoot] {
        &self.reflection[i]
    }

    /// Applies the reflection in positive root `a` to a signed root.
    #[inline]
    pub fn reflect(&self, a: usize, r: SignedRoot) -> SignedRoot {
        self.reflection[a][r.index()].with_sign_of(r)
    }

    /// Applies simple reflection `s` (0-based node) to a signed root.
    #[inline]
    pub fn simple_reflect(&self, s: usize, r: SignedRoot) -> SignedRoot {
        self.reflect(self.simple_index[s], r)
    }

    /// Reflection `s_alpha(v) = v - 2(v, alpha)/(alpha, alpha) alpha` on coordinates.
    pub fn reflect_vector(&self, a: usize, v: &[i64]) -> Vec<i64> {
        let alpha = &self.positive[a];
        let num = 2 * dot(v, alpha);
        assert_eq!(num % self.norms[a], 0, "vector outside the root lattice");
        let p = num / self.norms[a];
        v.iter().zip(alpha).map(|(x, y)| x - p * y).collect()
    }

    /// Cartan integers `2(alpha_i, alpha_j)/(alpha_j, alpha_j)`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Triples `(i, j, k)` with `i < j` and `beta_i + beta_j = beta_k`.
    pub fn sum_triples(&self) -> &[(u8, u8, u8)] {
        &self.sums
    }

    /// Index of `beta_i + beta_j` if it is a positive root.
    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        let s: Vec<i64> = self.positive[i]
            .iter()
            .zip(&self.positive[j])
            .map(|(x, y)| x + y)
            .collect();
        self.lookup(&s).filter(|r| !r.is_negative()).map(|r| r.index())
    }

    /// Positive root with the given simple-root coefficients.
    pub fn index_of_coefficients(&self, c: &[i64]) -> Option<usize> {
        self.coeffs.iter().position(|x| x == c)
    }

    pub fn dynkin_neighbors(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&t| t != s && self.cartan[s][t] != 0)
    }

    pub fn is_long_simple(&self, s: usize) -> bool {
        let n = self.norms[self.simple_index[s]];
        self.norms.iter().all(|&m| m <= n)
    }

    /// Positive roots, one per line, as space-separated coordinates.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.positive {
            let line: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// The positive roots of the span of the given positive roots.
    pub fn span_closure(&self, roots: impl IntoIterator<Item = usize>) -> RootSet {
        let e = linalg::Echelon::from_vectors(roots.into_iter().map(|i| &self.positive[i]));
        (0..self.num_positive())
            .filter(|&i| e.contains(&self.positive[i]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types() -> Vec<(Family, usize)> {
        let mut v = vec![];
        for n in 1..=8 {
            v.push((Family::A, n));
        }
        for n in 2..=8 {
            v.push((Family::B, n));
            v.push((Family::C, n));
        }
        for n in 3..=8 {
            v.push((Family::D, n));
        }
        v.extend([(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)]);
        v
    }

    #[test]
    fn root_counts_and_closure() {
        for (f, n) in all_types() {
            let rs = build(f, n).unwrap();
            assert_eq!(rs.num_positive(), rs.cartan_type().num_positive_roots());
            for a in 0..rs.num_positive() {
                for b in 0..rs.num_positive() {
                    let img = rs.reflect_vector(a, rs.root(b));
                    assert!(rs.lookup(&img).is_some());
                }
            }
            for w in rs.heights.windows(2) {
                assert!(w[0] <= w[1]);
            }
        }
    }

    #[test]
    fn bourbaki_labels() {
        let b2 = build(Family::B, 2).unwrap();
        assert!(b2.is_long_simple(0) && !b2.is_long_simple(1));
        let g2 = build(Family::G, 2).unwrap();
        assert!(!g2.is_long_simple(0) && g2.is_long_simple(1));
        let b3 = build(Family::B, 3).unwrap();
        assert!(!b3.is_long_simple(2));
        let c3 = build(Family::C, 3).unwrap();
        assert!(c3.is_long_simple(2) && !c3.is_long_simple(1));
        let d4 = build(Family::D, 4).unwrap();
        assert_eq!(d4.dynkin_neighbors(1).collect::<Vec<_>>(), vec![0, 2, 3]);
        let a3 = build(Family::A, 3).unwrap();
        assert_eq!(a3.dynkin_neighbors(1).count(), 2);
        let e8 = build(Family::E, 8).unwrap();
        assert_eq!(e8.dynkin_neighbors(3).collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(e8.dynkin_neighbors(0).collect::<Vec<_>>(), vec![2]);
        let f4 = build(Family::F, 4).unwrap();
        assert!(f4.is_long_simple(1) && !f4.is_long_simple(2));
        assert_eq!(build(Family::C, 2).unwrap().label(), "B2");
    }

    #[test]
    fn duals() {
        let b3 = build(Family::B, 3).unwrap();
        let d = dual(&b3);
        assert_eq!(d.label(), "C3");
        assert_eq!(d, build(Family::C, 3).unwrap());
        let f4 = build(Family::F, 4).unwrap();
        let fd = dual(&f4);
        assert_eq!(fd.label(), "F4");
        assert!(fd.lengths_swapped());
        assert!(!fd.is_long_simple(0) && fd.is_long_simple(3));
        assert_eq!(dual(&fd), f4);
        let (_, map) = dual_with_map(&build(Family::G, 2).unwrap());
        let mut sorted = map.clone();
        sorted.sort();
        assert_eq!(sorted, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn regular_point_is_height() {
        for (f, n) in all_types() {
            let rs = build(f, n).unwrap();
            let r = regular_point(&rs);
            for i in 0..rs.num_positive() {
                assert_eq!(r.eval(rs.root(i)), rs.height(i) as i64);
            }
        }
    }

    #[test]
    fn invalid_types() {
        assert!(build(Family::E, 9).is_err());
        assert!(build(Family::F, 3).is_err());
        assert!(build(Family::D, 2).is_err());
        assert!(CartanType::parse("B4").is_ok());
        assert!(CartanType::parse("X4").is_err());
    }
}
