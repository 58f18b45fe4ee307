use std::sync::OnceLock;

use super::engine::{EmbedOptions, ParityPolicy, Shape};
use super::{shape_of, StemParity};
use crate::error::Result;
use crate::rootsys::{build, RootSystemSpec};
use crate::weight::Parity;

/// Largest positive system the catalog holds (the universe limit).
const MAX_ENTRY: usize = 64;

pub struct Entry {
    pub spec: RootSystemSpec,
    pub(crate) shape: Shape,
    even: usize,
}

impl Entry {
    pub fn size(&self) -> usize {
        self.shape.len()
    }
}

/// Irreducible candidate types for stem components.
pub struct Catalog {
    entries: Vec<Entry>,
}

impl Catalog {
    pub fn new(specs: impl IntoIterator<Item = RootSystemSpec>) -> Result<Self> {
        let mut entries = Vec::new();
        for spec in specs {
            let even = build(&spec)?.counts().0;
            let shape = shape_of(&spec)?;
            entries.push(Entry { spec, shape, even });
        }
        Ok(Catalog { entries })
    }

    /// All irreducible classical and super types with at most 64 positive
    /// roots. `C1` is kept next to `A1` for naming; `D2` and `D3` are
    /// omitted as they coincide with `2A1` and `A3`.
    pub fn standard() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::new(standard_specs()).expect("standard catalog builds"))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn specs(&self) -> impl Iterator<Item = &RootSystemSpec> {
        self.entries.iter().map(|e| &e.spec)
    }

    pub(crate) fn entry(&self, i: usize) -> &Entry {
        &self.entries[i]
    }

    /// Entries worth trying for a component, best first: richer addition
    /// tables first, then the naming preference.
    pub(crate) fn candidates(
        &self,
        size: usize,
        triples: usize,
        even: usize,
        parity: StemParity,
        doubled: bool,
        opts: EmbedOptions,
    ) -> Vec<usize> {
        let preserve = opts.parity == ParityPolicy::Preserve;
        let mut out: Vec<usize> = (0..self.entries.len())
            .filter(|&i| {
                let e = &self.entries[i];
                let t = e.shape.triples.len();
                e.size() == size
                    && if opts.strict {
                        t == triples
                    } else {
                        t <= triples
                    }
                    && (!preserve
                        || !e.shape.is_super
                        || (parity == StemParity::Mixed && e.even == even))
            })
            .collect();
        out.sort_by_key(|&i| {
            let e = &self.entries[i];
            let group = match (e.shape.is_super, preserve && parity == StemParity::Mixed) {
                (true, true) | (false, false) => 0,
                _ => 1,
            };
            let name = match e.spec {
                RootSystemSpec::C(_) if doubled => 0,
                RootSystemSpec::C(_) => 2,
                _ => 1,
            };
            (std::cmp::Reverse(e.shape.triples.len()), group, name, i)
        });
        out
    }
}

fn standard_specs() -> Vec<RootSystemSpec> {
    use RootSystemSpec::*;
    let mut specs = Vec::new();
    for r in 1..=12 {
        specs.extend([A(r), B(r), C(r), D(r)]);
    }
    specs.push(G2);
    for m in 0..=10 {
        for n in 0..=m {
            if (m, n) != (0, 0) {
                specs.push(ASuper { m, n });
            }
        }
        if m >= 1 {
            specs.extend([B0n { n: m }, CSuper { n: m }]);
            for n in 1..=10 {
                specs.extend([BSuper { m, n }, DSuper { m: m + 1, n }]);
            }
        }
    }
    specs.retain(|s| {
        let size = s.positive_count();
        size <= MAX_ENTRY && !matches!(s, B(1) | D(2) | D(3)) && s.validate().is_ok()
    });
    specs
}

/// Additive class names of one spec: `B_r`/`C_r` share a class, rank-one
/// types and the low-rank coincidences collapse, `A(m,n)` is symmetric.
pub fn additive_class(spec: &RootSystemSpec) -> Vec<String> {
    use RootSystemSpec::*;
    spec.summands()
        .into_iter()
        .flat_map(|s| match s {
            A(0) => vec![],
            B(1) | C(1) => vec![A(1)],
            C(r) => vec![B(r)],
            D(2) => vec![A(1), A(1)],
            D(3) => vec![A(3)],
            ASuper { m, n } if m < n => vec![ASuper { m: n, n: m }],
            other => vec![other],
        })
        .map(|s| s.to_string())
        .collect()
}

pub(crate) fn count_even(roots: &[crate::rootsys::Root]) -> usize {
    roots.iter().filter(|r| r.parity == Parity::Even).count()
}
