//! Exact weights in the `(e_1..e_m, d_1..d_n)` basis.
//!
//! Coordinates are half-integers stored doubled, so `3/2` is kept as `3`.
//! The invariant form is `diag(+1,..,+1, -1,..,-1)`: the `e` directions are
//! positive, the `d` (delta) directions negative, which makes every
//! `e_i - d_j` isotropic.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Ambient dimension: number of `e` and `d` coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dims {
    pub e: usize,
    pub d: usize,
}

impl Dims {
    pub const fn new(e: usize, d: usize) -> Self {
        Dims { e, d }
    }

    pub fn total(self) -> usize {
        self.e + self.d
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(e:{}, d:{})", self.e, self.d)
    }
}

/// Even or odd, i.e. bosonic or fermionic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A weight with half-integer coordinates, stored doubled.
///
/// The derived ordering compares the doubled `e` block lexicographically and
/// then the `d` block. Root systems list their positive roots in descending
/// order of this comparison.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    e: Vec<i64>,
    d: Vec<i64>,
}

impl Weight {
    pub fn zero(dims: Dims) -> Self {
        Weight {
            e: vec![0; dims.e],
            d: vec![0; dims.d],
        }
    }

    /// Builds a weight from doubled coordinates (`3` means `3/2`).
    pub fn from_doubled(e: Vec<i64>, d: Vec<i64>) -> Self {
        Weight { e, d }
    }

    /// Builds a weight from integer coordinates.
    pub fn from_ints(e: &[i64], d: &[i64]) -> Self {
        Weight {
            e: e.iter().map(|x| 2 * x).collect(),
            d: d.iter().map(|x| 2 * x).collect(),
        }
    }

    /// The basis vector `e_i` (0-based index).
    pub fn e_basis(dims: Dims, i: usize) -> Self {
        let mut w = Weight::zero(dims);
        w.e[i] = 2;
        w
    }

    /// The basis vector `d_j` (0-based index).
    pub fn d_basis(dims: Dims, j: usize) -> Self {
        let mut w = Weight::zero(dims);
        w.d[j] = 2;
        w
    }

    pub fn dims(&self) -> Dims {
        Dims::new(self.e.len(), self.d.len())
    }

    pub fn doubled_e(&self) -> &[i64] {
        &self.e
    }

    pub fn doubled_d(&self) -> &[i64] {
        &self.d
    }

    /// All doubled coordinates, `e` block first.
    pub fn doubled(&self) -> impl Iterator<Item = i64> + '_ {
        self.e.iter().chain(self.d.iter()).copied()
    }

    pub fn is_zero(&self) -> bool {
        self.doubled().all(|x| x == 0)
    }

    /// Coordinate value `i` (e block first) as an exact rational.
    pub fn coord(&self, i: usize) -> Ratio<i64> {
        let v = if i < self.e.len() {
            self.e[i]
        } else {
            self.d[i - self.e.len()]
        };
        Ratio::new(v, 2)
    }

    fn check_dims(&self, other: &Weight) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Weight) -> Result<Weight> {
        self.check_dims(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Weight) -> Result<Weight> {
        self.check_dims(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.dims(), other.dims());
        Weight {
            e: self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect(),
            d: self.d.iter().zip(&other.d).map(|(a, b)| a + b).collect(),
        }
    }

    pub(crate) fn sub_unchecked(&self, other: &Weight) -> Weight {
        debug_assert_eq!(self.dims(), other.dims());
        Weight {
            e: self.e.iter().zip(&other.e).map(|(a, b)| a - b).collect(),
            d: self.d.iter().zip(&other.d).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Weight {
        Weight {
            e: self.e.iter().map(|a| -a).collect(),
            d: self.d.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Weight {
        Weight {
            e: self.e.iter().map(|a| k * a).collect(),
            d: self.d.iter().map(|a| k * a).collect(),
        }
    }

    /// Multiplies by a rational; `None` if the result leaves the
    /// half-integer lattice.
    pub fn scale(&self, k: Ratio<i64>) -> Option<Weight> {
        let f = |a: &i64| {
            let v = k * Ratio::from_integer(*a);
            v.is_integer().then(|| v.to_integer())
        };
        Some(Weight {
            e: self.e.iter().map(f).collect::<Option<_>>()?,
            d: self.d.iter().map(f).collect::<Option<_>>()?,
        })
    }

    /// Half of this weight, if it stays on the half-integer lattice.
    pub fn halve(&self) -> Option<Weight> {
        self.scale(Ratio::new(1, 2))
    }

    /// The invariant form: `sum a_e b_e - sum a_d b_d`.
    pub fn pairing(&self, other: &Weight) -> Result<Ratio<i64>> {
        self.check_dims(other)?;
        Ok(self.pairing_unchecked(other))
    }

    pub(crate) fn pairing_unchecked(&self, other: &Weight) -> Ratio<i64> {
        let pe: i64 = self.e.iter().zip(&other.e).map(|(a, b)| a * b).sum();
        let pd: i64 = self.d.iter().zip(&other.d).map(|(a, b)| a * b).sum();
        Ratio::new(pe - pd, 4)
    }

    /// Places this weight into a larger ambient space at the given offsets.
    pub fn embed(&self, dims: Dims, e_offset: usize, d_offset: usize) -> Weight {
        let mut w = Weight::zero(dims);
        w.e[e_offset..e_offset + self.e.len()].copy_from_slice(&self.e);
        w.d[d_offset..d_offset + self.d.len()].copy_from_slice(&self.d);
        w
    }

    pub(crate) fn e_mut(&mut self) -> &mut [i64] {
        &mut self.e
    }

    pub(crate) fn d_mut(&mut self) -> &mut [i64] {
        &mut self.d
    }

    /// Parses the text rendering (`e1-d2`, `2d1`, `1/2e1+3/2d2`, `0`) into
    /// the given ambient space. A bare `e` or `d` means index 1.
    pub fn parse(s: &str, dims: Dims) -> Result<Weight> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |msg: &str| Error::Parse(format!("weight {s:?}: {msg}"));
        if src.is_empty() {
            return Err(err("empty"));
        }
        let mut w = Weight::zero(dims);
        if src == "0" {
            return Ok(w);
        }
        let chars: Vec<char> = src.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut sign = 1i64;
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(err("expected '+' or '-' between terms"));
            }
            let (num, used) = read_uint(&chars[i..]);
            i += used;
            let mut den = 1i64;
            let num = if used == 0 { 1 } else { num };
            if i < chars.len() && chars[i] == '/' {
                i += 1;
                let (d, used) = read_uint(&chars[i..]);
                if used == 0 || d == 0 {
                    return Err(err("bad denominator"));
                }
                den = d;
                i += used;
            }
            if i >= chars.len() {
                return Err(err("missing basis symbol"));
            }
            let is_e = match chars[i] {
                'e' => true,
                'd' | 'δ' => false,
                c => return Err(err(&format!("unexpected character {c:?}"))),
            };
            i += 1;
            let (idx, used) = read_uint(&chars[i..]);
            i += used;
            let idx = if used == 0 { 1 } else { idx };
            if idx == 0 {
                return Err(err("basis indices start at 1"));
            }
            let doubled = Ratio::new(2 * num * sign, den);
            if !doubled.is_integer() {
                return Err(err("coefficient is not a half-integer"));
            }
            let (block, limit) = if is_e {
                (&mut w.e, dims.e)
            } else {
                (&mut w.d, dims.d)
            };
            let idx = idx as usize;
            if idx > limit {
                return Err(err(&format!("index {idx} outside ambient {dims}")));
            }
            block[idx - 1] += doubled.to_integer();
        }
        Ok(w)
    }
}

fn read_uint(chars: &[char]) -> (i64, usize) {
    let mut v = 0i64;
    let mut n = 0;
    while n < chars.len() && chars[n].is_ascii_digit() {
        v = v * 10 + chars[n].to_digit(10).unwrap() as i64;
        n += 1;
    }
    (v, n)
}

fn fmt_coeff(doubled: i64) -> String {
    let a = doubled.abs();
    if a % 2 == 0 {
        if a == 2 {
            String::new()
        } else {
            (a / 2).to_string()
        }
    } else {
        format!("{a}/2")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let terms = self
            .e
            .iter()
            .enumerate()
            .map(|(i, &v)| ('e', i, v))
            .chain(self.d.iter().enumerate().map(|(i, &v)| ('d', i, v)));
        for (sym, i, v) in terms {
            if v == 0 {
                continue;
            }
            if v < 0 {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            write!(f, "{}{}{}", fmt_coeff(v), sym, i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({self})")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coord {
    Int(i64),
    Str(String),
}

impl Coord {
    fn from_doubled(v: i64) -> Coord {
        if v % 2 == 0 {
            Coord::Int(v / 2)
        } else {
            Coord::Str(format!("{v}/2"))
        }
    }

    fn to_doubled(&self) -> std::result::Result<i64, String> {
        match self {
            Coord::Int(v) => Ok(2 * v),
            Coord::Str(s) => {
                let r: Ratio<i64> = s.parse().map_err(|_| format!("bad coordinate {s:?}"))?;
                let d = r * 2;
                if d.is_integer() {
                    Ok(d.to_integer())
                } else {
                    Err(format!("coordinate {s:?} is not a half-integer"))
                }
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WeightRepr {
    e: Vec<Coord>,
    d: Vec<Coord>,
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WeightRepr {
            e: self.e.iter().map(|&v| Coord::from_doubled(v)).collect(),
            d: self.d.iter().map(|&v| Coord::from_doubled(v)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = WeightRepr::deserialize(deserializer)?;
        let conv = |v: Vec<Coord>| {
            v.iter()
                .map(Coord::to_doubled)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(serde::de::Error::custom)
        };
        Ok(Weight {
            e: conv(repr.e)?,
            d: conv(repr.d)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const D22: Dims = Dims::new(2, 2);

    fn w(s: &str) -> Weight {
        Weight::parse(s, Dims::new(3, 2)).unwrap()
    }

    #[test]
    fn telescoping_sums() {
        assert_eq!(w("e1").add(&w("e2-e1")).unwrap(), w("e2"));
        assert_eq!(w("e1-d1").add(&w("d1-d2")).unwrap(), w("e1-d2"));
        let x = w("3/2e1-d2+e3");
        assert!(x.add(&x.neg()).unwrap().is_zero());
    }

    #[test]
    fn form_values() {
        assert_eq!(w("e1").pairing(&w("e1")).unwrap(), Ratio::from_integer(1));
        assert_eq!(w("d1").pairing(&w("d1")).unwrap(), Ratio::from_integer(-1));
        assert_eq!(
            w("e1-d1").pairing(&w("e1-d1")).unwrap(),
            Ratio::from_integer(0)
        );
        assert_eq!(w("e1").pairing(&w("d1")).unwrap(), Ratio::from_integer(0));
    }

    #[test]
    fn mixed_dimensions_are_rejected() {
        let a = Weight::e_basis(D22, 0);
        let b = Weight::e_basis(Dims::new(3, 2), 0);
        assert!(matches!(a.add(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.pairing(&b).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(w("e1-d2").to_string(), "e1-d2");
        assert_eq!(w("2d1").to_string(), "2d1");
        assert_eq!(w("-1/2e1+3/2d2").to_string(), "-1/2e1+3/2d2");
        assert_eq!(Weight::zero(D22).to_string(), "0");
        assert_eq!(w("d1-e1").to_string(), "-e1+d1");
    }

    #[test]
    fn parse_errors() {
        assert!(Weight::parse("e3", D22).is_err());
        assert!(Weight::parse("1/3e1", D22).is_err());
        assert!(Weight::parse("x1", D22).is_err());
        assert!(Weight::parse("", D22).is_err());
        assert!(Weight::parse("e1e2", D22).is_err());
    }

    #[test]
    fn halving() {
        assert_eq!(w("e1+d1").halve().unwrap(), w("1/2e1+1/2d1"));
        assert!(w("1/2e1").halve().is_none());
    }

    #[test]
    fn json_shape() {
        let x = w("3/2e1-2d2");
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"e":["3/2",0,0],"d":[0,-2]}"#);
        let back: Weight = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
