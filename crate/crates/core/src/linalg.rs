//! Exact integer linear algebra on small vectors.

use num_rational::Ratio;

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn normalize(row: &mut [i128]) {
    let g = row.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        row.iter_mut().for_each(|x| *x /= g);
    }
}

/// Row-echelon basis of a span, kept fraction-free with gcd-normalized rows.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vec<i128>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<'a>(vs: impl IntoIterator<Item = &'a Vec<i64>>) -> Self {
        let mut e = Self::new();
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[i64]) -> Vec<i128> {
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                let p = row[*pivot];
                for (x, r) in v.iter_mut().zip(row) {
                    *x = *x * p - c * r;
                }
                normalize(&mut v);
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let r = self.reduce(v);
        let Some(pivot) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        // keep earlier rows reduced against the new pivot so membership stays a single pass
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                let p = r[pivot];
                for (x, y) in row.iter_mut().zip(&r) {
                    *x = *x * p - c * y;
                }
                normalize(row);
            }
        }
        self.rows.push((pivot, r));
        true
    }
}

pub fn rank(vs: &[Vec<i64>]) -> usize {
    Echelon::from_vectors(vs).rank()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solves `basis^T x = v` exactly, returning coefficients of `v` in `basis`.
pub fn coefficients(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<Ratio<i64>>> {
    let k = basis.len();
    // normal equations with the Gram matrix; basis is assumed independent
    let mut m: Vec<Vec<Ratio<i64>>> = (0..k)
        .map(|i| {
            let mut row: Vec<Ratio<i64>> =
                (0..k).map(|j| Ratio::from_integer(dot(&basis[i], &basis[j]))).collect();
            row.push(Ratio::from_integer(dot(&basis[i], v)));
            row
        })
        .collect();
    for col in 0..k {
        let p = (col..k).find(|&r| m[r][col] != Ratio::from_integer(0))?;
        m.swap(col, p);
        let pv = m[col][col];
        for x in m[col].iter_mut() {
            *x /= pv;
        }
        for r in 0..k {
            if r != col && m[r][col] != Ratio::from_integer(0) {
                let f = m[r][col];
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    let x: Vec<Ratio<i64>> = m.iter().map(|row| row[k]).collect();
    // reject vectors outside the span
    let dim = v.len();
    for d in 0..dim {
        let s: Ratio<i64> = (0..k).map(|i| x[i] * basis[i][d]).sum();
        if s != Ratio::from_integer(v[d]) {
            return None;
        }
    }
    Some(x)
}

/// Integer coefficients of `v` in `basis`, if they exist.
pub fn integer_coefficients(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    coefficients(basis, v)?
        .into_iter()
        .map(|r| r.is_integer().then(|| r.to_integer()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_membership() {
        let vs = vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]];
        assert_eq!(rank(&vs), 2);
        let e = Echelon::from_vectors(&vs);
        assert!(e.contains(&[2, -3, 1]));
        assert!(!e.contains(&[1, 1, 1]));
    }

    #[test]
    fn solve() {
        let basis = vec![vec![2, 0, 0], vec![-1, 1, 0]];
        assert_eq!(integer_coefficients(&basis, &[1, 1, 0]), Some(vec![1, 1]));
        assert_eq!(integer_coefficients(&basis, &[1, 0, 0]), None);
        assert_eq!(coefficients(&basis, &[0, 0, 1]), None);
    }
}
