use std::sync::Arc;

use dashmap::DashMap;

use super::WeylElement;
use crate::root_system::SignedRoot;

/// Bruhat comparisons against a fixed upper element.
///
/// Walks a reduced word of `w` from the right: whenever the current letter is
/// a right descent of `x` it is stripped from `x` as well. Then `x <= w` iff
/// `x` ends at the identity.
#[derive(Clone, Debug)]
pub struct BruhatTester {
    word: Vec<usize>,
    length: usize,
}

impl BruhatTester {
    pub fn new(w: &WeylElement) -> Self {
        // reduced word built from right descents, stored in stripping order
        let mut word = Vec::with_capacity(w.length());
        let mut cur = w.clone();
        while !cur.is_identity() {
            let s = (0..cur.system().rank())
                .find(|&s| cur.is_right_descent(s))
                .expect("non-identity element has a right descent");
            word.push(s);
            cur = cur.right_mul_simple(s);
        }
        BruhatTester { word, length: w.length() }
    }

    pub fn leq(&self, x: &WeylElement) -> bool {
        if x.length() > self.length {
            return false;
        }
        let mut x = x.clone();
        let mut remaining = self.length;
        for &s in &self.word {
            if x.is_identity() {
                return true;
            }
            // x can only shrink by one per remaining letter
            if x.length() > remaining {
                return false;
            }
            if x.is_right_descent(s) {
                x = x.right_mul_simple(s);
            }
            remaining -= 1;
        }
        x.is_identity()
    }
}

/// `x <= w` in Bruhat order.
pub fn bruhat_leq(x: &WeylElement, w: &WeylElement) -> bool {
    BruhatTester::new(w).leq(x)
}

/// Thread-safe memo of Bruhat comparisons keyed by element pairs.
#[derive(Default)]
pub struct BruhatMemo {
    memo: DashMap<(Arc<[SignedRoot]>, Arc<[SignedRoot]>), bool>,
}

impl BruhatMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn leq(&self, x: &WeylElement, w: &WeylElement) -> bool {
        let key: (Arc<[SignedRoot]>, Arc<[SignedRoot]>) = (x.action().into(), w.action().into());
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        let v = bruhat_leq(x, w);
        self.memo.insert(key, v);
        v
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}
