//! Root systems of the classical basic Lie superalgebras and of the classical
//! simple Lie algebras used as stems.

mod build;
mod spec;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use build::build;
pub use spec::RootSystemSpec;

use crate::error::{Error, Result};
use crate::linalg;
use crate::weight::{Dims, Parity, Weight};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub weight: Weight,
    pub parity: Parity,
}

impl Root {
    pub fn new(weight: Weight, parity: Parity) -> Self {
        Root { weight, parity }
    }

    pub fn even(weight: Weight) -> Self {
        Root::new(weight, Parity::Even)
    }

    pub fn odd(weight: Weight) -> Self {
        Root::new(weight, Parity::Odd)
    }

    pub fn neg(&self) -> Root {
        Root::new(self.weight.neg(), self.parity)
    }

    pub fn is_isotropic(&self) -> bool {
        self.weight.pairing_unchecked(&self.weight) == 0.into()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.weight.fmt(f)
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.weight, self.parity)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    E,
    D,
}

/// Shape of one factor of an even Weyl group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// Permutations only.
    A,
    /// Signed permutations.
    B,
    C,
    /// Signed permutations with an even number of sign changes.
    D,
}

/// A block of coordinates on which one simple factor of the even Weyl group
/// acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeylBlock {
    pub side: Side,
    pub offset: usize,
    pub len: usize,
    pub kind: BlockKind,
}

/// A finite root system: positive roots with parity, the distinguished simple
/// system and the layout of the even Weyl group.
#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: Option<RootSystemSpec>,
    label: String,
    dims: Dims,
    positive: Vec<Root>,
    simple: Vec<Root>,
    blocks: Vec<WeylBlock>,
}

impl RootSystem {
    pub(crate) fn from_parts(
        spec: RootSystemSpec,
        dims: Dims,
        mut positive: Vec<Root>,
        simple: Vec<Root>,
        blocks: Vec<WeylBlock>,
    ) -> Self {
        positive.sort_by(|a, b| b.cmp(a));
        RootSystem {
            label: spec.to_string(),
            spec: Some(spec),
            dims,
            positive,
            simple,
            blocks,
        }
    }

    /// A root system given only by an explicit list of positive roots.
    /// The simple system is derived (indecomposable positives) and no Weyl
    /// group layout is attached.
    pub fn from_positive_roots(
        label: impl Into<String>,
        dims: Dims,
        roots: Vec<Root>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for r in &roots {
            if r.weight.dims() != dims {
                return Err(Error::DimensionMismatch {
                    left: dims,
                    right: r.weight.dims(),
                });
            }
            if r.weight.is_zero() {
                return Err(Error::Contract("zero is not a root".into()));
            }
            if !seen.insert(r.weight.clone()) || seen.contains(&r.weight.neg()) {
                return Err(Error::Contract(format!(
                    "{r} repeated or paired with its negative"
                )));
            }
        }
        let simple = indecomposable(&roots);
        let mut rs = RootSystem {
            spec: None,
            label: label.into(),
            dims,
            positive: roots,
            simple,
            blocks: Vec::new(),
        };
        rs.positive.sort_by(|a, b| b.cmp(a));
        Ok(rs)
    }

    pub fn spec(&self) -> Option<&RootSystemSpec> {
        self.spec.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    /// Positive roots in canonical (descending) order.
    pub fn positive(&self) -> &[Root] {
        &self.positive
    }

    pub fn simple(&self) -> &[Root] {
        &self.simple
    }

    pub fn blocks(&self) -> &[WeylBlock] {
        &self.blocks
    }

    /// All roots: the positives followed by their negatives.
    pub fn roots(&self) -> Vec<Root> {
        self.positive
            .iter()
            .cloned()
            .chain(self.positive.iter().map(Root::neg))
            .collect()
    }

    pub fn even_positive(&self) -> Vec<Root> {
        self.positive
            .iter()
            .filter(|r| r.parity == Parity::Even)
            .cloned()
            .collect()
    }

    pub fn odd_positive(&self) -> Vec<Root> {
        self.positive
            .iter()
            .filter(|r| r.parity == Parity::Odd)
            .cloned()
            .collect()
    }

    pub fn is_super(&self) -> bool {
        self.positive.iter().any(|r| r.parity == Parity::Odd)
            || self.spec.as_ref().is_some_and(RootSystemSpec::is_super)
    }

    /// The sub-root-system of even roots in the same ambient space.
    pub fn even_part(&self) -> RootSystem {
        let positive = self.even_positive();
        let simple = indecomposable(&positive);
        let spec = self.spec.as_ref().map(even_spec);
        RootSystem {
            label: match &spec {
                Some(s) => s.to_string(),
                None => format!("even part of {}", self.label),
            },
            spec,
            dims: self.dims,
            positive,
            simple,
            blocks: self.blocks.clone(),
        }
    }

    /// All odd roots: positives followed by negatives.
    pub fn odd_part(&self) -> Vec<Root> {
        let pos = self.odd_positive();
        let neg: Vec<Root> = pos.iter().map(Root::neg).collect();
        pos.into_iter().chain(neg).collect()
    }

    /// `(even positive count, odd positive count)`.
    pub fn counts(&self) -> (usize, usize) {
        let even = self
            .positive
            .iter()
            .filter(|r| r.parity == Parity::Even)
            .count();
        (even, self.positive.len() - even)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.positive.iter().map(|r| &r.weight))
    }

    /// Finds a positive or negative root with the given weight.
    pub fn root_of(&self, w: &Weight) -> Option<Root> {
        self.positive.iter().find_map(|r| {
            if &r.weight == w {
                Some(r.clone())
            } else if r.weight == w.neg() {
                Some(r.neg())
            } else {
                None
            }
        })
    }

    /// Parses a root in this system's ambient space.
    pub fn parse_root(&self, s: &str) -> Result<Root> {
        let w = Weight::parse(s, self.dims)?;
        self.root_of(&w)
            .ok_or_else(|| Error::Contract(format!("{s} is not a root of {}", self.label)))
    }
}

/// Positive roots that are not the sum of two positive roots.
fn indecomposable(positive: &[Root]) -> Vec<Root> {
    let set: HashSet<&Weight> = positive.iter().map(|r| &r.weight).collect();
    positive
        .iter()
        .filter(|g| {
            !positive
                .iter()
                .any(|a| a.weight != g.weight && set.contains(&g.weight.sub_unchecked(&a.weight)))
        })
        .cloned()
        .collect()
}

/// Spec of the even part of a (super) root system.
pub fn even_spec(spec: &RootSystemSpec) -> RootSystemSpec {
    use RootSystemSpec::*;
    match *spec {
        ASuper { m, n } => DirectSum(vec![A(m), A(n)]),
        BSuper { m, n } => DirectSum(vec![B(m), C(n)]),
        B0n { n } | CSuper { n } => C(n),
        DSuper { m, n } => DirectSum(vec![D(m), C(n)]),
        DirectSum(ref parts) => RootSystemSpec::sum_of(
            parts
                .iter()
                .map(even_spec)
                .flat_map(|s| s.summands())
                .collect(),
        ),
        ref classical => classical.clone(),
    }
}
