//! Smoothness and rational smoothness: ground-truth oracles and the
//! pattern-based classifiers built on them.

pub mod classical;
pub mod commutative;
pub mod kumar;
pub mod pattern;
pub mod sweep;
pub mod tables;

use num_bigint::BigUint;
use num_traits::One;

pub use classical::{
    classical_flatten, classical_pattern_test, count_classical, signed_permutation_of, ClassicalTables,
};
pub use commutative::{is_abelian, is_abelian_by_embeddings, is_fully_commutative, is_fully_commutative_oracle};
pub use kumar::{kumar_by_subwords, KumarTable};
pub use pattern::{
    embedded_rationally_smooth, embedded_smooth, pattern_rationally_smooth, pattern_smooth, PatternClassifier,
};
pub use sweep::{crossval, CrossvalReport, Method, QuotientSweep, Verdict};
pub use tables::{expand_brackets, BadPatternTable, TypeTable};

use crate::error::Result;
use crate::poincare::{bruhat_graph_violation, poincare};
use crate::root_system::RootSet;
use crate::weyl::Group;

/// `K_{w,v}(r)` at the height point.
pub fn kumar_value(k: &KumarTable, w: u32, v: u32) -> Result<BigUint> {
    k.value(w, v)
}

/// `Z(w, v) = {alpha > 0 : v is not below s_alpha w}`.
pub fn z_set(g: &Group, w: u32, v: u32) -> RootSet {
    (0..g.system().num_positive())
        .filter(|&a| !g.leq(v, g.reflect_left(a, w)))
        .collect()
}

fn height_product(g: &Group, set: RootSet) -> BigUint {
    set.iter().fold(BigUint::one(), |acc, i| acc * g.system().height(i))
}

/// Smoothness of `X_w` at the identity point via Kumar's criterion.
pub fn is_smooth_oracle(k: &KumarTable, w: u32) -> bool {
    let g = k.group();
    let below = g.reflections().iter().filter(|&&s| g.leq(s, w)).count();
    if below != g.length(w) {
        return false;
    }
    let top = g.longest();
    let v = g.multiply(w, top);
    let z = z_set(g, top, v);
    k.value(top, v).expect("w w_o lies below w_o") == height_product(g, z)
}

/// Rational smoothness via palindromy of the Poincaré polynomial.
pub fn is_rationally_smooth_oracle(g: &Group, w: u32) -> bool {
    poincare(g, w).is_palindromic()
}

/// Rational smoothness via regularity of the Bruhat graph.
pub fn is_rationally_smooth_by_graph(g: &Group, w: u32) -> bool {
    bruhat_graph_violation(g, w).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{build_arc, Family};

    #[test]
    fn kumar_small_values() {
        let rs = build_arc(Family::A, 2).unwrap();
        let g = Group::new(&rs).unwrap();
        let k = KumarTable::new(&g);
        let s1 = g.from_word(&[1]).unwrap();
        assert_eq!(k.value(s1, s1).unwrap(), BigUint::from(1u32));
        assert_eq!(k.value(g.longest(), g.longest()).unwrap(), BigUint::from(2u32));
        assert!(k.value(s1, g.longest()).is_err());
    }

    #[test]
    fn kumar_descent_independent() {
        for (f, r) in [(Family::B, 2), (Family::G, 2), (Family::A, 3), (Family::B, 3)] {
            let rs = build_arc(f, r).unwrap();
            let g = Group::new(&rs).unwrap();
            let k = KumarTable::new(&g);
            let last = |w: u32| (0..rs.rank()).rev().find(|&s| g.is_right_descent(w, s)).unwrap();
            for w in g.ids() {
                for v in g.ids().filter(|&v| g.leq(v, w)) {
                    let a = k.value(w, v).unwrap();
                    assert_eq!(a, k.value_with(w, v, &last));
                    if g.size() <= 48 {
                        assert_eq!(a, kumar_by_subwords(&g, w, v));
                    }
                    assert!(a > BigUint::from(0u32));
                }
            }
        }
    }

    #[test]
    fn z_set_examples() {
        let rs = build_arc(Family::B, 2).unwrap();
        let g = Group::new(&rs).unwrap();
        let top = g.longest();
        for w in g.ids() {
            assert!(z_set(&g, w, 0).is_empty());
        }
        for s in 0..2 {
            let w = g.from_word(&[s + 1]).unwrap();
            let v = g.multiply(w, top);
            // |Z| = l(v); the one root left out is the simple root of w
            let z = z_set(&g, top, v);
            assert_eq!(z.len(), g.length(v));
            assert_eq!(RootSet::full(4).len() - z.len(), g.length(w));
            assert!(!z.contains(rs.simple_index(s)));
        }
        let k = KumarTable::new(&g);
        let w = g.from_word(&[2, 1, 2]).unwrap();
        assert!(!is_smooth_oracle(&k, w));
        assert!(is_smooth_oracle(&k, 0));
        assert!(is_smooth_oracle(&k, top));
        assert!(g.ids().all(|w| is_rationally_smooth_oracle(&g, w)));
    }

    #[test]
    fn g2_singular_elements() {
        let rs = build_arc(Family::G, 2).unwrap();
        let g = Group::new(&rs).unwrap();
        let k = KumarTable::new(&g);
        let mut bad: Vec<u32> = g.ids().filter(|&w| !is_smooth_oracle(&k, w)).collect();
        bad.sort();
        let mut listed: Vec<u32> = [&[1, 2, 1][..], &[1, 2, 1, 2], &[2, 1, 2, 1], &[1, 2, 1, 2, 1], &[2, 1, 2, 1, 2]]
            .iter()
            .map(|w| g.from_word(w).unwrap())
            .collect();
        listed.sort();
        assert_eq!(bad, listed);
        assert!(g.ids().all(|w| is_rationally_smooth_oracle(&g, w)));
    }
}
