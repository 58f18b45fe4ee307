use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::{Dims, Weight};

/// A finite integer combination of lattice exponentials `e^w`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<Weight, i64>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn one(dims: Dims) -> Self {
        FormalSum::monomial(Weight::zero(dims), 1)
    }

    pub fn monomial(w: Weight, c: i64) -> Self {
        let mut s = FormalSum::zero();
        s.add_term(w, c);
        s
    }

    /// `e^a - e^b` style binomials: `c1 e^a + c2 e^b`.
    pub fn binomial(a: Weight, c1: i64, b: Weight, c2: i64) -> Self {
        let mut s = FormalSum::monomial(a, c1);
        s.add_term(b, c2);
        s
    }

    pub fn add_term(&mut self, w: Weight, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    /// Sum of all coefficients (the dimension, for a character).
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn scale(&self, k: i64) -> FormalSum {
        let mut out = FormalSum::zero();
        for (w, c) in self.terms() {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    /// Multiplication by `e^w`.
    pub fn shift(&self, w: &Weight) -> FormalSum {
        self.map_exponents(|x| x.add_unchecked(w))
    }

    /// The involution `e^w -> e^{-w}`.
    pub fn involution(&self) -> FormalSum {
        self.map_exponents(Weight::neg)
    }

    /// Applies a map to every exponent, merging collisions.
    pub fn map_exponents(&self, f: impl Fn(&Weight) -> Weight) -> FormalSum {
        let mut out = FormalSum::zero();
        for (w, c) in self.terms() {
            out.add_term(f(w), c);
        }
        out
    }

    fn check(&self, other: &FormalSum) -> Result<()> {
        if let (Some(a), Some(b)) = (self.terms.keys().next(), other.terms.keys().next()) {
            if a.dims() != b.dims() {
                return Err(Error::DimensionMismatch {
                    left: a.dims(),
                    right: b.dims(),
                });
            }
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &FormalSum) -> Result<FormalSum> {
        self.check(other)?;
        let mut out = FormalSum::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(a.add_unchecked(b), x * y);
            }
        }
        Ok(out)
    }

    /// The leading term under the degree-lexicographic order on doubled
    /// coordinates.
    pub fn leading(&self) -> Option<(&Weight, i64)> {
        self.terms().max_by(|a, b| deglex(a.0, b.0))
    }

    /// Exact quotient `self / divisor`. Fails with an invariant error if the
    /// division leaves a remainder.
    pub fn div_exact(&self, divisor: &FormalSum) -> Result<FormalSum> {
        self.check(divisor)?;
        let Some((dw, dc)) = divisor.leading() else {
            return Err(Error::Contract("division by the zero sum".into()));
        };
        let (dw, dc) = (dw.clone(), dc);
        if self.is_zero() {
            return Ok(FormalSum::zero());
        }
        // Newton polytopes add under multiplication, so quotient exponents
        // lie in this coordinate box.
        let (nlo, nhi) = self.bounds();
        let (dlo, dhi) = divisor.bounds();
        let lo: Vec<i64> = nlo.iter().zip(&dlo).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = nhi.iter().zip(&dhi).map(|(a, b)| a - b).collect();
        let inexact = || Error::Invariant("formal division is not exact".into());

        let mut rem = self.clone();
        let mut quot = FormalSum::zero();
        while let Some((rw, rc)) = rem.leading() {
            if rc % dc != 0 {
                return Err(inexact());
            }
            let qw = rw.sub_unchecked(&dw);
            if !qw
                .doubled()
                .zip(lo.iter().zip(&hi))
                .all(|(x, (l, h))| *l <= x && x <= *h)
            {
                return Err(inexact());
            }
            let q = FormalSum::monomial(qw, rc / dc);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        Ok(quot)
    }

    /// Coordinatewise minimum and maximum of the exponents (doubled).
    fn bounds(&self) -> (Vec<i64>, Vec<i64>) {
        let mut it = self.terms.keys();
        let first: Vec<i64> = it.next().map(|w| w.doubled().collect()).unwrap_or_default();
        let (mut lo, mut hi) = (first.clone(), first);
        for w in it {
            for (i, x) in w.doubled().enumerate() {
                lo[i] = lo[i].min(x);
                hi[i] = hi[i].max(x);
            }
        }
        (lo, hi)
    }
}

/// Degree-lexicographic comparison: total doubled degree, then the
/// coordinates in order.
fn deglex(a: &Weight, b: &Weight) -> Ordering {
    let da: i64 = a.doubled().sum();
    let db: i64 = b.doubled().sum();
    da.cmp(&db).then_with(|| a.doubled().cmp(b.doubled()))
}

impl Add for &FormalSum {
    type Output = FormalSum;

    fn add(self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &FormalSum {
    type Output = FormalSum;

    fn sub(self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &FormalSum {
    type Output = FormalSum;

    fn neg(self) -> FormalSum {
        self.scale(-1)
    }
}

/// Panics on mismatched ambient dimensions; use [`FormalSum::try_mul`] for
/// a checked product.
impl Mul for &FormalSum {
    type Output = FormalSum;

    fn mul(self, other: &FormalSum) -> FormalSum {
        self.try_mul(other)
            .expect("formal sums in the same ambient space")
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let sep = if i > 0 { " " } else { "" };
            let space = if i > 0 { " " } else { "" };
            let mag = c.abs();
            let coef = if mag == 1 {
                String::new()
            } else {
                mag.to_string()
            };
            write!(f, "{sep}{sign}{space}{coef}e^({w})")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Term {
    exponent: Weight,
    coefficient: i64,
}

/// JSON: a list of `{exponent, coefficient}` in descending exponent order.
impl Serialize for FormalSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self
            .terms
            .iter()
            .rev()
            .map(|(w, &c)| Term {
                exponent: w.clone(),
                coefficient: c,
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FormalSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(d)?;
        let mut out = FormalSum::zero();
        for t in terms {
            out.add_term(t.exponent, t.coefficient);
        }
        Ok(out)
    }
}
