//! Splints: partitions of a positive system into two stems, each the
//! image of a triple-preserving embedding of some root system.

mod search;
mod verify;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use search::{enumerate_splints, Enumeration};
pub use verify::{
    parse_fixtures, verify_all, verify_claim, Certificate, ClaimFixture, ClaimSide, Part, Verdict,
    VerdictKind, SHIPPED_FIXTURES,
};

use crate::addstruct::{recognize, Catalog, EmbedOptions, Embedding, ParityPolicy, StemType};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rootsys::{Root, RootSystem};
use crate::weight::Weight;

/// Default guard on the number of positive roots searched.
pub const DEFAULT_MAX_POSITIVE: usize = 40;

/// How the rank clause of the splint definition is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum RankPolicy {
    /// Each stem has rank strictly below the rank of the whole system.
    #[default]
    #[serde(rename = "paper")]
    PaperStrict,
    #[serde(rename = "none")]
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplintConfig {
    pub rank_policy: RankPolicy,
    pub parity: ParityPolicy,
    pub strict_embedding: bool,
    pub max_results: usize,
    pub max_positive: usize,
}

impl Default for SplintConfig {
    fn default() -> Self {
        SplintConfig {
            rank_policy: RankPolicy::PaperStrict,
            parity: ParityPolicy::Preserve,
            strict_embedding: false,
            max_results: usize::MAX,
            max_positive: DEFAULT_MAX_POSITIVE,
        }
    }
}

impl SplintConfig {
    pub fn embed_options(&self) -> EmbedOptions {
        EmbedOptions {
            parity: self.parity,
            strict: self.strict_embedding,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_results == 0 {
            return Err(Error::Contract("max_results must be at least 1".into()));
        }
        Ok(())
    }

    fn guard(&self, rs: &RootSystem) -> Result<()> {
        self.validate()?;
        let n = rs.positive().len();
        if n > self.max_positive {
            return Err(Error::Guard {
                what: "positive root count",
                actual: n,
                bound: self.max_positive,
            });
        }
        Ok(())
    }
}

/// One side of a splint.
#[derive(Clone, Debug, Serialize)]
pub struct Stem {
    pub roots: Vec<Root>,
    #[serde(rename = "type")]
    pub stem_type: StemType,
    pub rank: usize,
    pub embedding: Embedding,
}

impl Stem {
    /// Recognizes a root set as a stem, if possible.
    pub fn recognize(
        roots: Vec<Root>,
        catalog: &Catalog,
        opts: EmbedOptions,
    ) -> Result<Option<Stem>> {
        let Some(rec) = recognize(&roots, catalog, opts)? else {
            return Ok(None);
        };
        Ok(Some(Stem {
            rank: rank(&roots)?,
            roots,
            stem_type: rec.stem_type,
            embedding: rec.embedding,
        }))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Splint {
    pub stem1: Stem,
    pub stem2: Stem,
}

impl Splint {
    /// Re-checks the splint against `positive` from scratch.
    pub fn validate(&self, positive: &[Root], cfg: &SplintConfig) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(format!("splint {self}: {msg}")));
        let s1: HashSet<&Weight> = self.stem1.roots.iter().map(|r| &r.weight).collect();
        let s2: HashSet<&Weight> = self.stem2.roots.iter().map(|r| &r.weight).collect();
        let all: HashSet<&Weight> = positive.iter().map(|r| &r.weight).collect();
        if s1.is_empty() || s2.is_empty() {
            return fail("empty stem".into());
        }
        if !s1.is_disjoint(&s2) {
            return fail("stems overlap".into());
        }
        if s1.len() + s2.len() != all.len() || !s1.iter().chain(&s2).all(|w| all.contains(w)) {
            return fail("stems do not cover the positive roots exactly".into());
        }
        let full = rank(positive)?;
        for stem in [&self.stem1, &self.stem2] {
            stem.embedding.validate(cfg.embed_options())?;
            let image: HashSet<Weight> = stem
                .embedding
                .image()
                .into_iter()
                .map(|r| r.weight)
                .collect();
            let own: HashSet<Weight> = stem.roots.iter().map(|r| r.weight.clone()).collect();
            if image != own {
                return fail("embedding image differs from stem".into());
            }
            if stem.rank != rank(&stem.roots)? {
                return fail("recorded rank is wrong".into());
            }
            if cfg.rank_policy == RankPolicy::PaperStrict && stem.rank >= full {
                return fail(format!("stem rank {} not below {full}", stem.rank));
            }
        }
        Ok(())
    }

    /// `(type1 | type2)`.
    pub fn label(&self) -> String {
        format!("({} | {})", self.stem1.stem_type, self.stem2.stem_type)
    }
}

impl fmt::Display for Splint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &Stem| {
            s.roots
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "{} {{{}}} | {{{}}}",
            self.label(),
            list(&self.stem1),
            list(&self.stem2)
        )
    }
}

/// Dimension of the rational span of a nonempty stem.
pub fn rank(stem: &[Root]) -> Result<usize> {
    if stem.is_empty() {
        return Err(Error::Contract("rank of an empty stem".into()));
    }
    Ok(linalg::rank(stem.iter().map(|r| &r.weight)))
}

/// The partition into even and odd positive roots, when both are stems.
/// The even stem comes first.
pub fn bosonic_fermionic_splint(rs: &RootSystem, opts: EmbedOptions) -> Result<Option<Splint>> {
    let (even, odd) = (rs.even_positive(), rs.odd_positive());
    if even.is_empty() || odd.is_empty() {
        return Ok(None);
    }
    let catalog = Catalog::standard();
    let (Some(stem1), Some(stem2)) = (
        Stem::recognize(even, catalog, opts)?,
        Stem::recognize(odd, catalog, opts)?,
    ) else {
        return Ok(None);
    };
    Ok(Some(Splint { stem1, stem2 }))
}

#[cfg(test)]
mod tests;
