//! Fully commutative and abelian elements.

use crate::error::{Error, Result};
use crate::root_system::{RootSet, RootSystem};
use crate::subsystems::enumerate_irreducible_subsystems;
use crate::weyl::WeylElement;

/// Positive roots of every irreducible rank-two subsystem.
pub fn rank_two_subsystems(rs: &RootSystem) -> Result<Vec<RootSet>> {
    Ok(enumerate_irreducible_subsystems(rs, 2)?
        .into_iter()
        .filter(|d| d.rank() == 2)
        .map(|d| d.positive())
        .collect())
}

/// Pattern method: no irreducible rank-two subsystem flattens `w` to its
/// longest element, i.e. has all its positive roots inverted.
pub fn is_fully_commutative(w: &WeylElement) -> Result<bool> {
    let inv = w.inversion_set();
    Ok(rank_two_subsystems(w.system())?.iter().all(|&d| !d.is_subset(inv)))
}

/// Same verdict with the subsystem list computed once.
pub fn is_fully_commutative_with(subs: &[RootSet], inv: RootSet) -> bool {
    subs.iter().all(|&d| !d.is_subset(inv))
}

/// Cap on reduced words visited by the oracle.
pub const DEFAULT_WORD_CAP: usize = 1_000_000;

/// Reduced-word method: no reduced word of `w` has a factor
/// `s_i s_j s_i ...` of length `m(i, j) >= 3`.
pub fn is_fully_commutative_oracle(w: &WeylElement, cap: usize) -> Result<bool> {
    let rs = w.system();
    let cartan = rs.cartan_matrix();
    let rank = rs.rank();
    let order = |i: usize, j: usize| match cartan[i][j] * cartan[j][i] {
        0 => 2,
        1 => 3,
        2 => 4,
        _ => 6,
    };
    let mut visited = 0usize;
    // builds reduced words right to left; `suffix` is reversed
    fn found(
        x: &WeylElement,
        suffix: &mut Vec<usize>,
        order: &dyn Fn(usize, usize) -> usize,
        rank: usize,
        visited: &mut usize,
        cap: usize,
    ) -> Result<bool> {
        if x.is_identity() {
            *visited += 1;
            if *visited > cap {
                return Err(Error::CapExceeded {
                    what: "reduced words".into(),
                    size: *visited as u64,
                    cap: cap as u64,
                });
            }
            return Ok(false);
        }
        for s in 0..rank {
            if !x.is_right_descent(s) {
                continue;
            }
            suffix.push(s);
            if braid_at_end(suffix, order) || found(&x.right_mul_simple(s), suffix, order, rank, visited, cap)? {
                suffix.pop();
                return Ok(true);
            }
            suffix.pop();
        }
        Ok(false)
    }
    let mut suffix = Vec::new();
    Ok(!found(w, &mut suffix, &order, rank, &mut visited, cap)?)
}

// whether the newest letters form an alternating run of length m >= 3
fn braid_at_end(suffix: &[usize], order: &dyn Fn(usize, usize) -> usize) -> bool {
    let n = suffix.len();
    if n < 3 {
        return false;
    }
    let (a, b) = (suffix[n - 1], suffix[n - 2]);
    let m = order(a, b);
    if a == b || m < 3 || n < m {
        return false;
    }
    (0..m).all(|k| suffix[n - 1 - k] == if k % 2 == 0 { a } else { b })
}

/// No `alpha, beta` in `I(w)` with `alpha + beta` in `I(w)`.
pub fn is_abelian(w: &WeylElement) -> bool {
    let inv = w.inversion_set();
    !w.system().sum_triples().iter().any(|&(i, j, k)| {
        inv.contains(i as usize) && inv.contains(j as usize) && inv.contains(k as usize)
    })
}

/// No A2-embedding `(b1, b2)` has `b1`, `b2`, `b1 + b2` all inverted.
pub fn is_abelian_by_embeddings(w: &WeylElement) -> bool {
    let rs = w.system();
    let inv = w.inversion_set();
    let n = rs.num_positive();
    for b1 in 0..n {
        for b2 in 0..n {
            if b1 == b2 {
                continue;
            }
            let sum: Vec<i64> = rs.root(b1).iter().zip(rs.root(b2)).map(|(x, y)| x + y).collect();
            let Some(r) = rs.lookup(&sum).filter(|r| !r.is_negative()) else {
                continue;
            };
            if inv.contains(b1) && inv.contains(b2) && inv.contains(r.index()) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{build_arc, Family};
    use crate::weyl::Group;

    #[test]
    fn fc_counts_and_agreement() {
        for (f, r, want) in [(Family::A, 3, Some(14)), (Family::B, 3, None), (Family::D, 4, None), (Family::G, 2, None)] {
            let rs = build_arc(f, r).unwrap();
            let g = Group::new(&rs).unwrap();
            let subs = rank_two_subsystems(&rs).unwrap();
            let mut n = 0;
            for w in g.elements() {
                let a = is_fully_commutative_with(&subs, w.inversion_set());
                assert_eq!(a, is_fully_commutative_oracle(w, DEFAULT_WORD_CAP).unwrap(), "{f:?}{r} {w}");
                n += a as usize;
            }
            if let Some(want) = want {
                assert_eq!(n, want);
            }
            assert!(!is_fully_commutative(g.element(g.longest())).unwrap());
            assert!(is_fully_commutative(g.element(0)).unwrap());
        }
    }

    #[test]
    fn abelian() {
        for (f, r) in [(Family::A, 2), (Family::A, 3), (Family::B, 3), (Family::D, 4), (Family::G, 2)] {
            let rs = build_arc(f, r).unwrap();
            let g = Group::new(&rs).unwrap();
            let subs = rank_two_subsystems(&rs).unwrap();
            for w in g.elements() {
                assert_eq!(is_abelian(w), is_abelian_by_embeddings(w));
                if rs.cartan_type().is_simply_laced() {
                    assert_eq!(is_abelian(w), is_fully_commutative_with(&subs, w.inversion_set()));
                }
            }
            assert!(is_abelian(g.element(0)));
        }
        let a2 = build_arc(Family::A, 2).unwrap();
        assert!(!is_abelian(&WeylElement::from_word(&a2, &[1, 2, 1]).unwrap()));
    }
}
