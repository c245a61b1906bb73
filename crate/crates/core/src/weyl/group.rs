use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use super::{InversionSet, WeylElement};
use crate::error::{Error, Result};
use crate::root_system::RootSystem;

/// Default cap on the number of enumerated elements.
pub const DEFAULT_CAP: u64 = 10_000_000;
/// Default cap on the group size for a dense Bruhat matrix.
pub const DEFAULT_MATRIX_CAP: u64 = 20_000;

/// The full Bruhat order of an enumerated group as a dense bit matrix;
/// row `w` holds the lower interval `[e, w]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BruhatMatrix {
    #[inline]
    pub fn leq(&self, x: u32, w: u32) -> bool {
        let row = w as usize * self.words;
        self.bits[row + (x as usize >> 6)] >> (x & 63) & 1 == 1
    }

    pub fn row(&self, w: u32) -> &[u64] {
        let row = w as usize * self.words;
        &self.bits[row..row + self.words]
    }

    /// Elements of `[e, w]` in increasing id order.
    pub fn ideal(&self, w: u32) -> impl Iterator<Item = u32> + '_ {
        self.row(w).iter().enumerate().flat_map(|(k, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let i = bits.trailing_zeros();
                    bits &= bits - 1;
                    Some((k as u32) * 64 + i)
                }
            })
        })
    }

    pub fn ideal_size(&self, w: u32) -> usize {
        self.row(w).iter().map(|x| x.count_ones() as usize).sum()
    }

    /// Little-endian dump used by on-disk caches.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.bits.len() * 8);
        out.extend_from_slice(&(self.n as u64).to_le_bytes());
        for b in &self.bits {
            out.extend_from_slice(&b.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Option<BruhatMatrix> {
        let n = u64::from_le_bytes(bytes.get(..8)?.try_into().ok()?) as usize;
        let words = n.div_ceil(64);
        let body = bytes.get(8..)?;
        if body.len() != n * words * 8 {
            return None;
        }
        let bits = body
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Some(BruhatMatrix { n, words, bits })
    }
}

/// A fully enumerated Weyl group with multiplication tables.
///
/// Elements are numbered in breadth-first order by length; within a length
/// they are sorted by action table.
pub struct Group {
    rs: Arc<RootSystem>,
    elements: Vec<WeylElement>,
    inv: Vec<InversionSet>,
    len: Vec<u16>,
    index: HashMap<InversionSet, u32>,
    right: Vec<Vec<u32>>,
    left: Vec<Vec<u32>>,
    reflections: Vec<u32>,
    matrix_cap: u64,
    bruhat: OnceLock<BruhatMatrix>,
    refl_left: OnceLock<Vec<Vec<u32>>>,
    inverse: OnceLock<Vec<u32>>,
    parabolic: Vec<OnceLock<Vec<u32>>>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Group({}, {} elements)", self.rs.label(), self.elements.len())
    }
}

impl Group {
    pub fn new(rs: &Arc<RootSystem>) -> Result<Group> {
        Self::with_cap(rs, DEFAULT_CAP)
    }

    pub fn with_cap(rs: &Arc<RootSystem>, cap: u64) -> Result<Group> {
        let order = rs.cartan_type().group_order();
        if order > cap {
            return Err(Error::CapExceeded {
                what: format!("W({})", rs.label()),
                size: order,
                cap,
            });
        }
        let rank = rs.rank();
        let mut elements = vec![WeylElement::identity(rs)];
        let mut index = HashMap::new();
        index.insert(InversionSet::EMPTY, 0u32);
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next: Vec<WeylElement> = Vec::new();
            let mut fresh: HashMap<InversionSet, ()> = HashMap::new();
            for &id in &level {
                let x = &elements[id];
                for s in 0..rank {
                    if x.is_right_descent(s) {
                        continue;
                    }
                    let y = x.right_mul_simple(s);
                    if fresh.insert(y.inversion_set(), ()).is_none() {
                        next.push(y);
                    }
                }
            }
            next.sort_by(|a, b| a.action().cmp(b.action()));
            level = Vec::with_capacity(next.len());
            for y in next {
                let id = elements.len();
                index.insert(y.inversion_set(), id as u32);
                level.push(id);
                elements.push(y);
            }
        }
        if elements.len() as u64 != order {
            return Err(Error::Internal(format!(
                "enumerated {} elements of W({}), expected {order}",
                elements.len(),
                rs.label()
            )));
        }
        let inv: Vec<InversionSet> = elements.iter().map(|w| w.inversion_set()).collect();
        let len: Vec<u16> = elements.iter().map(|w| w.length() as u16).collect();
        let right = (0..rank)
            .map(|s| {
                elements
                    .iter()
                    .map(|w| index[&w.right_mul_simple(s).inversion_set()])
                    .collect()
            })
            .collect();
        let left = (0..rank)
            .map(|s| {
                elements
                    .iter()
                    .map(|w| index[&w.left_mul_simple(s).inversion_set()])
                    .collect()
            })
            .collect();
        let reflections = (0..rs.num_positive())
            .map(|i| index[&WeylElement::reflection(rs, i).inversion_set()])
            .collect();
        Ok(Group {
            rs: rs.clone(),
            elements,
            inv,
            len,
            index,
            right,
            left,
            reflections,
            matrix_cap: DEFAULT_MATRIX_CAP,
            bruhat: OnceLock::new(),
            refl_left: OnceLock::new(),
            inverse: OnceLock::new(),
            parabolic: (0..1usize << rank).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn set_matrix_cap(&mut self, cap: u64) {
        self.matrix_cap = cap;
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn ids(&self) -> std::ops::Range<u32> {
        0..self.elements.len() as u32
    }

    pub fn element(&self, id: u32) -> &WeylElement {
        &self.elements[id as usize]
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn id_of(&self, w: &WeylElement) -> u32 {
        self.index[&w.inversion_set()]
    }

    pub fn id_of_inversion_set(&self, set: InversionSet) -> Option<u32> {
        self.index.get(&set).copied()
    }

    #[inline]
    pub fn inversion_set(&self, id: u32) -> InversionSet {
        self.inv[id as usize]
    }

    #[inline]
    pub fn length(&self, id: u32) -> usize {
        self.len[id as usize] as usize
    }

    /// `w s` for 0-based node `s`.
    #[inline]
    pub fn right_mul(&self, id: u32, s: usize) -> u32 {
        self.right[s][id as usize]
    }

    /// `s w` for 0-based node `s`.
    #[inline]
    pub fn left_mul(&self, id: u32, s: usize) -> u32 {
        self.left[s][id as usize]
    }

    #[inline]
    pub fn is_right_descent(&self, id: u32, s: usize) -> bool {
        self.right_mul(id, s) < id
    }

    #[inline]
    pub fn is_left_descent(&self, id: u32, s: usize) -> bool {
        self.inv[id as usize].contains(self.rs.simple_index(s))
    }

    pub fn first_right_descent(&self, id: u32) -> Option<usize> {
        (0..self.rs.rank()).find(|&s| self.is_right_descent(id, s))
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn longest(&self) -> u32 {
        self.elements.len() as u32 - 1
    }

    /// Id of the reflection in positive root `i`.
    pub fn reflection(&self, i: usize) -> u32 {
        self.reflections[i]
    }

    pub fn reflections(&self) -> &[u32] {
        &self.reflections
    }

    pub fn multiply(&self, x: u32, y: u32) -> u32 {
        self.id_of(&self.element(x).mul(self.element(y)))
    }

    pub fn inverse(&self, id: u32) -> u32 {
        self.inverse
            .get_or_init(|| {
                self.elements.iter().map(|w| self.id_of(&w.inverse())).collect()
            })[id as usize]
    }

    /// `s_alpha x` for positive root `a`.
    pub fn reflect_left(&self, a: usize, x: u32) -> u32 {
        self.refl_left.get_or_init(|| {
            (0..self.rs.num_positive())
                .map(|a| {
                    self.elements
                        .iter()
                        .map(|w| self.id_of(&w.left_mul_reflection(a)))
                        .collect()
                })
                .collect()
        })[a][x as usize]
    }

    /// Ids of the parabolic subgroup generated by the nodes in `j`.
    pub fn parabolic(&self, j: super::NodeSet) -> &[u32] {
        self.parabolic[j.0 as usize].get_or_init(|| {
            let roots = super::parabolic_roots(&self.rs, j);
            self.ids().filter(|&w| self.inv[w as usize].is_subset(roots)).collect()
        })
    }

    pub fn from_word(&self, word: &[usize]) -> Result<u32> {
        let mut id = 0;
        for &s in word {
            if s == 0 || s > self.rs.rank() {
                return Err(Error::IndexOutOfRange { index: s, rank: self.rs.rank() });
            }
            id = self.right_mul(id, s - 1);
        }
        Ok(id)
    }

    pub fn has_bruhat(&self) -> bool {
        self.bruhat.get().is_some()
    }

    /// Installs a precomputed matrix, e.g. loaded from a cache.
    pub fn install_bruhat(&self, m: BruhatMatrix) -> Result<()> {
        if m.n != self.size() {
            return Err(Error::Internal("Bruhat matrix size mismatch".into()));
        }
        let _ = self.bruhat.set(m);
        Ok(())
    }

    pub fn try_bruhat(&self) -> Result<&BruhatMatrix> {
        if let Some(m) = self.bruhat.get() {
            return Ok(m);
        }
        let n = self.size();
        if n as u64 > self.matrix_cap {
            return Err(Error::CapExceeded {
                what: format!("Bruhat matrix of W({})", self.rs.label()),
                size: n as u64,
                cap: self.matrix_cap,
            });
        }
        Ok(self.bruhat.get_or_init(|| self.compute_bruhat()))
    }

    /// Dense Bruhat matrix; panics if the group exceeds the matrix cap.
    pub fn bruhat(&self) -> &BruhatMatrix {
        self.try_bruhat().expect("group too large for a dense Bruhat matrix")
    }

    fn compute_bruhat(&self) -> BruhatMatrix {
        let n = self.size();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        bits[0] = 1;
        for w in 1..n as u32 {
            // [e, w] = [e, ws] ∪ [e, ws]·s for a right descent s
            let s = self.first_right_descent(w).unwrap();
            let ws = self.right_mul(w, s) as usize;
            let (lo, hi) = bits.split_at_mut(w as usize * words);
            let src = &lo[ws * words..(ws + 1) * words];
            let dst = &mut hi[..words];
            dst.copy_from_slice(src);
            for (k, &word) in src.iter().enumerate() {
                let mut b = word;
                while b != 0 {
                    let x = (k * 64) as u32 + b.trailing_zeros();
                    b &= b - 1;
                    let y = self.right_mul(x, s) as usize;
                    dst[y >> 6] |= 1 << (y & 63);
                }
            }
        }
        BruhatMatrix { n, words, bits }
    }

    #[inline]
    pub fn leq(&self, x: u32, w: u32) -> bool {
        self.bruhat().leq(x, w)
    }
}
