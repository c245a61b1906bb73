//! Pattern avoidance for signed permutations in the classical types.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::kumar::KumarTable;
use super::{is_rationally_smooth_oracle, is_smooth_oracle};
use crate::error::{Error, Result};
use crate::root_system::{build, dual, Family, RootSet, RootSystem};
use crate::weyl::{apply_signed_permutation, element_from_inversion_set, Group, WeylElement};

/// The signed permutation with the same signs and the same relative order
/// of absolute values as `seq`.
pub fn classical_flatten(seq: &[f64]) -> Result<Vec<i64>> {
    if seq.iter().any(|&a| a == 0.0 || !a.is_finite()) {
        return Err(Error::Parse("entries must be finite and nonzero".into()));
    }
    let mut out = Vec::with_capacity(seq.len());
    for (j, &a) in seq.iter().enumerate() {
        let mut rank = 1;
        for (i, &b) in seq.iter().enumerate() {
            if i != j && b.abs() == a.abs() {
                return Err(Error::RepeatedAbsoluteValue);
            }
            if b.abs() < a.abs() {
                rank += 1;
            }
        }
        out.push(if a < 0.0 { -rank } else { rank });
    }
    Ok(out)
}

// integer version for the inner loop; entries are known distinct
#[inline]
fn flatten_key(vals: &[i64]) -> usize {
    let mut key = 0;
    for &a in vals.iter().rev() {
        let rank = 1 + vals.iter().filter(|b| b.abs() < a.abs()).count() as i64;
        let b = if a < 0 { -rank } else { rank };
        key = key * 9 + (b + 4) as usize;
    }
    key
}

/// Checks that `perm` is a signed permutation allowed in `family`.
pub fn validate(perm: &[i64], family: Family) -> Result<()> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &x in perm {
        let a = x.unsigned_abs() as usize;
        if a == 0 || a > n || seen[a - 1] {
            return Err(Error::Parse(format!("{perm:?} is not a signed permutation")));
        }
        seen[a - 1] = true;
    }
    let neg = perm.iter().filter(|&&x| x < 0).count();
    match family {
        Family::A if neg > 0 => Err(Error::Parse("type A permutations have no negative entries".into())),
        Family::D if neg % 2 == 1 => Err(Error::Parse("type D needs an even number of negative entries".into())),
        Family::A | Family::B | Family::C | Family::D => Ok(()),
        _ => Err(Error::InvalidType { family: family.as_char(), rank: n }),
    }
}

/// The classical root system on `n` coordinates in which signed permutations
/// act by `e_j -> sign(w_j) e_{|w_j|}`.
pub fn classical_system(family: Family, n: usize) -> Result<Arc<RootSystem>> {
    Ok(Arc::new(match family {
        Family::A => build(Family::A, n - 1)?,
        Family::B => build(Family::B, n)?,
        // covers n = 2 too, where the type label collapses to B2
        Family::C => dual(&build(Family::B, n)?),
        Family::D => build(Family::D, n)?,
        _ => return Err(Error::InvalidType { family: family.as_char(), rank: n }),
    }))
}

/// One-line notation of an element of a classical group in standard
/// coordinates, or `None` if it does not act by a signed permutation.
pub fn signed_permutation_of(w: &WeylElement) -> Option<Vec<i64>> {
    let rs = w.system();
    let n = rs.dim();
    let word = w.reduced_word();
    (0..n)
        .map(|j| {
            let mut v = vec![0i64; n];
            v[j] = 1;
            for &s in word.iter().rev() {
                v = rs.reflect_vector(rs.simple_index(s - 1), &v);
            }
            let nz: Vec<usize> = (0..n).filter(|&k| v[k] != 0).collect();
            match nz[..] {
                [k] if v[k].abs() == 1 => Some(v[k] * (k as i64 + 1)),
                _ => None,
            }
        })
        .collect()
}

fn signed_permutations(k: usize, signed: bool) -> Vec<Vec<i64>> {
    fn go(k: usize, signed: bool, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 1..=k as i64 {
            if cur.iter().any(|y| y.abs() == x) {
                continue;
            }
            for s in if signed { &[1, -1][..] } else { &[1][..] } {
                cur.push(s * x);
                go(k, signed, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(k, signed, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Verdicts for every flattened subsequence of a fixed length.
pub struct ClassicalTables {
    pub family: Family,
    pub k: usize,
    // bit 0: smooth, bit 1: rationally smooth; 0xff for keys that are not signed permutations
    verdicts: Vec<u8>,
}

impl ClassicalTables {
    /// Runs the oracles over the type on `k` coordinates and records the
    /// verdict for each signed permutation via its restricted inversion set.
    pub fn build(family: Family, k: usize) -> Result<ClassicalTables> {
        let mut verdicts = vec![0xffu8; 9usize.pow(k as u32)];
        let signed = family != Family::A;
        if k == 1 {
            for p in signed_permutations(k, signed) {
                verdicts[flatten_key(&p)] = 3;
            }
            return Ok(ClassicalTables { family, k, verdicts });
        }
        let rs = classical_system(family, k)?;
        let g = Group::new(&rs)?;
        let kumar = KumarTable::new(&g);
        for p in signed_permutations(k, signed) {
            let inv: RootSet = rs
                .positive_roots()
                .iter()
                .filter_map(|r| {
                    let img = rs.lookup(&apply_signed_permutation(&p, r)).expect("signed permutations preserve roots");
                    img.is_negative().then_some(img.index())
                })
                .collect();
            let x = element_from_inversion_set(&rs, inv)?;
            let id = g.id_of(&x);
            let v = is_smooth_oracle(&kumar, id) as u8 | (is_rationally_smooth_oracle(&g, id) as u8) << 1;
            verdicts[flatten_key(&p)] = v;
        }
        Ok(ClassicalTables { family, k, verdicts })
    }

    pub fn shared(family: Family, k: usize) -> Result<Arc<ClassicalTables>> {
        type Cache = Mutex<HashMap<(char, usize), Arc<ClassicalTables>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().unwrap().get(&(family.as_char(), k)) {
            return Ok(t.clone());
        }
        let t = Arc::new(ClassicalTables::build(family, k)?);
        cache.lock().unwrap().insert((family.as_char(), k), t.clone());
        Ok(t)
    }

    /// Verdict for a sequence of `k` distinct nonzero integers.
    #[inline]
    pub fn passes(&self, vals: &[i64], rational: bool) -> bool {
        let v = self.verdicts[flatten_key(vals)];
        debug_assert!(v != 0xff);
        v >> (rational as u8) & 1 == 1
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(n, k, 0, &mut cur, &mut out);
    out
}

fn passes_all(perm: &[i64], tables: &ClassicalTables, subs: &[Vec<usize>], rational: bool) -> bool {
    let mut buf = [0i64; 4];
    subs.iter().all(|s| {
        for (b, &i) in buf.iter_mut().zip(s) {
            *b = perm[i];
        }
        tables.passes(&buf[..s.len()], rational)
    })
}

/// (Rational) smoothness of a signed permutation by checking every
/// subsequence of length four (or the whole sequence if shorter).
pub fn classical_pattern_test(perm: &[i64], family: Family, rational: bool) -> Result<bool> {
    validate(perm, family)?;
    let n = perm.len();
    let k = n.min(4);
    if family == Family::D && n < 3 {
        return Err(Error::InvalidType { family: 'D', rank: n });
    }
    let tables = ClassicalTables::shared(family, k)?;
    Ok(passes_all(perm, &tables, &subsets(n, k), rational))
}

/// All elements of the classical group on `n` letters passing the test.
pub fn classical_smooth_elements(family: Family, n: usize, rational: bool) -> Result<Vec<Vec<i64>>> {
    let k = n.min(4);
    let tables = ClassicalTables::shared(family, k)?;
    let subs = subsets(n, k);
    let perms = signed_permutations(n, false);
    let signed = family != Family::A;
    let mut out: Vec<Vec<i64>> = perms
        .par_iter()
        .flat_map_iter(|p| {
            let masks = if signed { 0..1u32 << n } else { 0..1 };
            let tables = &tables;
            let subs = &subs;
            masks.filter_map(move |mask| {
                if family == Family::D && mask.count_ones() % 2 == 1 {
                    return None;
                }
                let q: Vec<i64> = p
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x })
                    .collect();
                passes_all(&q, tables, subs, rational).then_some(q)
            })
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Number of elements of the classical group on `n` letters passing the test.
pub fn count_classical(family: Family, n: usize, rational: bool) -> Result<usize> {
    Ok(classical_smooth_elements(family, n, rational)?.len())
}
