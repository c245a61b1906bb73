//! Kostant–Kumar values `K_{w,v}(r)` at the regular point `r` where every
//! simple root takes the value 1, so a root evaluates to its height.

use dashmap::DashMap;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::root_system::SignedRoot;
use crate::weyl::Group;

/// Memoized Kostant–Kumar values over an enumerated group. Safe to share
/// between threads; concurrent inserts of the same key store equal values.
pub struct KumarTable<'g> {
    g: &'g Group,
    memo: DashMap<(u32, u32), BigUint>,
}

impl<'g> KumarTable<'g> {
    pub fn new(g: &'g Group) -> Self {
        // the recursion needs Bruhat comparisons throughout
        let _ = g.bruhat();
        KumarTable { g, memo: DashMap::new() }
    }

    pub fn group(&self) -> &Group {
        self.g
    }

    /// Height of the root `w s alpha_s = -w(alpha_s)` for a right descent `s`.
    fn descent_height(&self, w: u32, s: usize) -> BigUint {
        let rs = self.g.system();
        let r = self.g.element(w).apply(SignedRoot::positive(rs.simple_index(s)));
        debug_assert!(r.is_negative());
        BigUint::from(rs.height(r.index()))
    }

    /// `prod_{alpha in I(w)} alpha(r)`.
    pub fn diagonal(&self, w: u32) -> BigUint {
        let rs = self.g.system();
        self.g
            .inversion_set(w)
            .iter()
            .fold(BigUint::one(), |acc, i| acc * rs.height(i))
    }

    /// `K_{w,v}(r)`; requires `v <= w`.
    pub fn value(&self, w: u32, v: u32) -> Result<BigUint> {
        if !self.g.leq(v, w) {
            return Err(Error::NotBelow);
        }
        Ok(self.raw(w, v))
    }

    fn raw(&self, w: u32, v: u32) -> BigUint {
        if !self.g.leq(v, w) {
            return BigUint::zero();
        }
        if w == v {
            return self.diagonal(w);
        }
        if let Some(k) = self.memo.get(&(w, v)) {
            return k.clone();
        }
        let s = self.g.first_right_descent(w).expect("w above v is not the identity");
        let ws = self.g.right_mul(w, s);
        let mut k = self.raw(ws, v);
        if self.g.is_right_descent(v, s) {
            k += self.descent_height(w, s) * self.raw(ws, self.g.right_mul(v, s));
        }
        self.memo.insert((w, v), k.clone());
        k
    }

    /// `K_{w,v}(r)` using `choose(w)` as the right descent at every step and
    /// no memo; for checking independence of the descent choice.
    pub fn value_with(&self, w: u32, v: u32, choose: &dyn Fn(u32) -> usize) -> BigUint {
        if !self.g.leq(v, w) {
            return BigUint::zero();
        }
        if w == v {
            return self.diagonal(w);
        }
        let s = choose(w);
        assert!(self.g.is_right_descent(w, s), "chosen letter is not a right descent");
        let ws = self.g.right_mul(w, s);
        let mut k = self.value_with(ws, v, choose);
        if self.g.is_right_descent(v, s) {
            k += self.descent_height(w, s) * self.value_with(ws, self.g.right_mul(v, s), choose);
        }
        k
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

/// `K_{w,v}(r)` as a sum over reduced subwords: for a reduced word
/// `a_1..a_p` of `w`, add `prod_{j in J} beta_j(r)` over all index sets `J`
/// whose subword is a reduced word of `v`, where
/// `beta_j = s_{a_1}..s_{a_{j-1}} alpha_{a_j}`. Exponential; small cases only.
pub fn kumar_by_subwords(g: &Group, w: u32, v: u32) -> BigUint {
    let rs = g.system();
    let word = g.element(w).reduced_word();
    let mut betas = Vec::with_capacity(word.len());
    let mut prefix = 0u32;
    for &a in &word {
        let r = g.element(prefix).apply(SignedRoot::positive(rs.simple_index(a - 1)));
        betas.push(rs.height(r.index()));
        prefix = g.right_mul(prefix, a - 1);
    }
    let target_len = g.length(v);
    let mut total = BigUint::zero();
    // walk subwords, keeping only those that stay reduced
    fn go(
        g: &Group,
        word: &[usize],
        betas: &[u32],
        pos: usize,
        cur: u32,
        weight: BigUint,
        v: u32,
        target_len: usize,
        total: &mut BigUint,
    ) {
        if g.length(cur) > target_len {
            return;
        }
        if pos == word.len() {
            if cur == v {
                *total += weight;
            }
            return;
        }
        go(g, word, betas, pos + 1, cur, weight.clone(), v, target_len, total);
        let s = word[pos] - 1;
        if !g.is_right_descent(cur, s) {
            let next = g.right_mul(cur, s);
            go(g, word, betas, pos + 1, next, weight * betas[pos], v, target_len, total);
        }
    }
    go(g, &word, &betas, 0, 0, BigUint::one(), v, target_len, &mut total);
    total
}
