//! Small exact linear algebra over the doubled-coordinate lattice.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::weight::Weight;

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn normalize(v: &mut [i64]) {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

/// Row-echelon basis of a rational span, grown one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: Vec<(usize, Vec<i64>)>,
}

impl Span {
    pub fn new() -> Self {
        Span::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a vector; returns true if it was independent of the span.
    pub fn insert(&mut self, v: &[i64]) -> bool {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                let p = row[*pivot];
                for (x, r) in v.iter_mut().zip(row) {
                    *x = *x * p - r * c;
                }
                normalize(&mut v);
            }
        }
        match v.iter().position(|&x| x != 0) {
            Some(pivot) => {
                self.rows.push((pivot, v));
                true
            }
            None => false,
        }
    }

    pub fn insert_weight(&mut self, w: &Weight) -> bool {
        let v: Vec<i64> = w.doubled().collect();
        self.insert(&v)
    }
}

/// Dimension of the rational span of the given weights.
pub fn rank<'a>(weights: impl IntoIterator<Item = &'a Weight>) -> usize {
    let mut span = Span::new();
    for w in weights {
        span.insert_weight(w);
    }
    span.rank()
}

/// Coefficients `c` with `target = sum c_i basis_i`, if they exist.
/// Assumes the basis is linearly independent.
pub fn express(target: &Weight, basis: &[Weight]) -> Option<Vec<Ratio<i64>>> {
    let rows = target.dims().total();
    let cols = basis.len();
    // Augmented matrix with one column per basis vector plus the target.
    let mut m: Vec<Vec<Ratio<i64>>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Ratio<i64>> = basis.iter().map(|b| b.coord(r)).collect();
            row.push(target.coord(r));
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Ratio::one() / m[r][c];
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= *p * f;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut out = vec![Ratio::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        out[c] = m[i][cols];
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::Dims;

    fn w(s: &str) -> Weight {
        Weight::parse(s, Dims::new(3, 2)).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[w("e1-e2"), w("e2-e3"), w("e1-e3")]), 2);
        assert_eq!(rank(&[w("d1"), w("2d1")]), 1);
        assert_eq!(
            rank(&[w("e1"), w("2d1"), w("d1"), w("e1+d1"), w("d1-e1")]),
            2
        );
        assert_eq!(rank(std::iter::empty::<&Weight>()), 0);
    }

    #[test]
    fn expresses_in_basis() {
        let basis = [w("d1-d2"), w("d2-e1"), w("e1")];
        let c = express(&w("d1+e1"), &basis).unwrap();
        assert_eq!(c, vec![1.into(), 1.into(), 2.into()]);
        assert!(express(&w("e3"), &basis).is_none());
    }
}
