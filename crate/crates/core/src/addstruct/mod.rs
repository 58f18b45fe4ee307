//! Additive structure of root sets: addition tables, triple-preserving
//! embeddings between root systems and recognition of the abstract type of a
//! stem.
//!
//! An embedding is a bijection from the positive roots of a source system
//! onto a set of target roots such that whenever `a + b = c` in the source,
//! the images satisfy the same relation. Sums that exist among the images but
//! not in the source are allowed unless [`EmbedOptions::strict`] is set.
//! `a + a = c` relations count, which matters for `B(0,n)` where
//! `d + d = 2d`.

mod catalog;
mod engine;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use catalog::{additive_class, Catalog};
pub(crate) use engine::{bits, mask_below, Search, Shape, Universe};
pub use engine::{EmbedOptions, ParityPolicy};

use crate::error::{Error, Result};
use crate::rootsys::{build, Root, RootSystem, RootSystemSpec};
use crate::weight::{Parity, Weight};

/// All relations `elements[i] + elements[j] = elements[k]` with `i <= j`.
#[derive(Clone, Debug)]
pub struct AdditionTable {
    pub elements: Vec<Root>,
    pub triples: Vec<(usize, usize, usize)>,
}

impl AdditionTable {
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Re-checks every triple with exact weight arithmetic.
    pub fn verify(&self) -> bool {
        self.triples.iter().all(|&(i, j, k)| {
            self.elements[i]
                .weight
                .add(&self.elements[j].weight)
                .is_ok_and(|s| s == self.elements[k].weight)
        })
    }
}

pub fn addition_table(roots: &[Root]) -> AdditionTable {
    let index: HashMap<&Weight, usize> = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (&r.weight, i))
        .collect();
    let mut triples = Vec::new();
    for i in 0..roots.len() {
        for j in i..roots.len() {
            if let Ok(s) = roots[i].weight.add(&roots[j].weight) {
                if let Some(&k) = index.get(&s) {
                    triples.push((i, j, k));
                }
            }
        }
    }
    AdditionTable {
        elements: roots.to_vec(),
        triples,
    }
}

/// A triple-preserving injection from the positive roots of `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub source: RootSystemSpec,
    pub pairs: Vec<(Root, Root)>,
}

impl Embedding {
    pub fn image(&self) -> Vec<Root> {
        self.pairs.iter().map(|(_, t)| t.clone()).collect()
    }

    /// Re-validates from scratch: the source side is exactly the positive
    /// system of `source`, the map is injective, every source sum is
    /// preserved and parity rules hold.
    pub fn validate(&self, opts: EmbedOptions) -> Result<()> {
        let fail = |msg: String| {
            Err(Error::Invariant(format!(
                "embedding from {}: {msg}",
                self.source
            )))
        };
        let src = build(&self.source)?;
        let mut expected: Vec<&Root> = src.positive().iter().collect();
        let mut got: Vec<&Root> = self.pairs.iter().map(|(s, _)| s).collect();
        expected.sort();
        got.sort();
        if expected != got {
            return fail("source roots differ from the source positive system".into());
        }
        let image: HashMap<&Weight, &Root> =
            self.pairs.iter().map(|(s, t)| (&s.weight, t)).collect();
        let targets: HashSet<&Weight> = self.pairs.iter().map(|(_, t)| &t.weight).collect();
        if targets.len() != self.pairs.len() {
            return fail("not injective".into());
        }
        let bound = if opts.parity == ParityPolicy::Preserve {
            super_summand_roots(&self.source)?
        } else {
            HashSet::new()
        };
        for (s, t) in &self.pairs {
            if bound.contains(&s.weight) && s.parity != t.parity {
                return fail(format!("{s} -> {t} changes parity"));
            }
        }
        for (a, ta) in &self.pairs {
            for (b, tb) in &self.pairs {
                if let Some(tc) = image.get(&a.weight.add(&b.weight)?) {
                    if ta.weight.add(&tb.weight)? != tc.weight {
                        return fail(format!("{a} + {b} not preserved"));
                    }
                }
            }
        }
        if opts.strict {
            let pre: HashMap<&Weight, &Root> =
                self.pairs.iter().map(|(s, t)| (&t.weight, s)).collect();
            for (_, ta) in &self.pairs {
                for (_, tb) in &self.pairs {
                    if let Some(sc) = pre.get(&ta.weight.add(&tb.weight)?) {
                        let (sa, sb) = (pre[&ta.weight], pre[&tb.weight]);
                        if sa.weight.add(&sb.weight)? != sc.weight {
                            return fail(format!("{ta} + {tb} has no source relation"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Positive roots of `spec` lying in its super summands: the roots whose
/// parity an embedding must keep.
fn super_summand_roots(spec: &RootSystemSpec) -> Result<HashSet<Weight>> {
    let dims = build(spec)?.dims();
    let (mut eo, mut dof) = (0, 0);
    let mut out = HashSet::new();
    for part in spec.summands() {
        let rs = build(&part)?;
        if part.is_super() {
            out.extend(rs.positive().iter().map(|r| r.weight.embed(dims, eo, dof)));
        }
        eo += rs.dims().e;
        dof += rs.dims().d;
    }
    Ok(out)
}

/// The additive shape of a spec's positive system, with parity bound on
/// the roots of super summands.
pub(crate) fn shape_of(spec: &RootSystemSpec) -> Result<Shape> {
    let rs = build(spec)?;
    let bound = super_summand_roots(spec)?;
    let flags = rs
        .positive()
        .iter()
        .map(|r| bound.contains(&r.weight))
        .collect();
    Shape::new(rs.positive().to_vec(), flags)
}

impl Serialize for Embedding {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> = self
            .pairs
            .iter()
            .map(|(s, t)| [s.to_string(), t.to_string()])
            .collect();
        let mut st = serializer.serialize_struct("Embedding", 2)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("map", &pairs)?;
        st.end()
    }
}

/// Finds a bijection from the positive roots of `source` onto `target`
/// preserving all source sums. Deterministic: the first map found in the
/// canonical search order.
pub fn find_embedding(
    source: &RootSystem,
    target: &[Root],
    opts: EmbedOptions,
) -> Result<Option<Embedding>> {
    if source.positive().len() != target.len() {
        return Ok(None);
    }
    let spec = source
        .spec()
        .cloned()
        .ok_or_else(|| Error::Contract("embedding source needs a spec".into()))?;
    let shape = shape_of(&spec)?;
    let universe = Universe::new(target.to_vec())?;
    let map = Search::new(&shape, &universe, universe.full_mask(), opts, true).first();
    Ok(map.map(|m| Embedding {
        source: spec,
        pairs: m
            .iter()
            .enumerate()
            .map(|(i, &t)| (shape.universe.roots[i].clone(), universe.roots[t].clone()))
            .collect(),
    }))
}

/// Parity content of a stem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StemParity {
    Even,
    Odd,
    Mixed,
}

impl StemParity {
    pub fn of(roots: &[Root]) -> StemParity {
        let even = roots.iter().any(|r| r.parity == Parity::Even);
        let odd = roots.iter().any(|r| r.parity == Parity::Odd);
        match (even, odd) {
            (true, true) => StemParity::Mixed,
            (false, true) => StemParity::Odd,
            _ => StemParity::Even,
        }
    }
}

/// Abstract type of a stem: canonically ordered irreducible components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StemType {
    pub name: String,
    pub components: Vec<RootSystemSpec>,
    pub parity: StemParity,
}

impl StemType {
    /// Multiset of additive classes, used to compare types up to the
    /// `B_n`/`C_n` aliasing and rank-one coincidences.
    pub fn classes(&self) -> Vec<String> {
        let mut out: Vec<String> = self.components.iter().flat_map(additive_class).collect();
        out.sort();
        out
    }
}

impl fmt::Display for StemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if self.parity != StemParity::Even {
            write!(
                f,
                " ({})",
                match self.parity {
                    StemParity::Odd => "odd",
                    _ => "mixed",
                }
            )?;
        }
        Ok(())
    }
}

/// Recognized stem: its type plus an embedding witness onto it.
#[derive(Clone, Debug, Serialize)]
pub struct Recognized {
    pub stem_type: StemType,
    pub embedding: Embedding,
}

/// A component of a universe matched against a catalog entry:
/// `map[i]` is the universe index of the entry's `i`-th positive root.
#[derive(Clone, Debug)]
pub(crate) struct ComponentMatch {
    pub entry: usize,
    pub map: Vec<usize>,
}

/// Recognizes one additively connected component of `u` given by `mask`.
pub(crate) fn recognize_component(
    u: &Universe,
    mask: u64,
    catalog: &Catalog,
    opts: EmbedOptions,
) -> Option<ComponentMatch> {
    let members = u.roots_of(mask);
    let parity = StemParity::of(&members);
    let doubled = members.iter().any(|r| is_doubled(&r.weight));
    let triples = u.triples_in(mask).len();
    let even = catalog::count_even(&members);
    for entry in catalog.candidates(members.len(), triples, even, parity, doubled, opts) {
        let e = catalog.entry(entry);
        let mut search = Search::new(&e.shape, u, mask, opts, true);
        if let Some(map) = search.first() {
            return Some(ComponentMatch { entry, map });
        }
    }
    None
}

/// A long root of type C: a single nonzero coordinate equal to +-2.
fn is_doubled(w: &Weight) -> bool {
    let nz: Vec<i64> = w.doubled().filter(|&x| x != 0).collect();
    nz.len() == 1 && nz[0].abs() == 4
}

/// Builds the stem type and embedding witness from matched components.
pub(crate) fn assemble(
    u: &Universe,
    comps: &[(u64, ComponentMatch)],
    catalog: &Catalog,
) -> Result<Recognized> {
    let mut order: Vec<usize> = (0..comps.len()).collect();
    order.sort_by_key(|&k| {
        let e = catalog.entry(comps[k].1.entry);
        (
            std::cmp::Reverse(e.size()),
            e.spec.to_string(),
            comps[k].0.trailing_zeros(),
        )
    });
    let specs: Vec<RootSystemSpec> = order
        .iter()
        .map(|&k| catalog.entry(comps[k].1.entry).spec.clone())
        .collect();
    let source = RootSystemSpec::sum_of(specs.clone());
    let dims = build(&source)?.dims();
    let (mut eo, mut dof) = (0, 0);
    let mut pairs = Vec::new();
    for &k in &order {
        let e = catalog.entry(comps[k].1.entry);
        for (i, &t) in comps[k].1.map.iter().enumerate() {
            let s = &e.shape.universe.roots[i];
            pairs.push((
                Root::new(s.weight.embed(dims, eo, dof), s.parity),
                u.roots[t].clone(),
            ));
        }
        eo += e
            .shape
            .universe
            .roots
            .first()
            .map_or(0, |r| r.weight.dims().e);
        dof += e
            .shape
            .universe
            .roots
            .first()
            .map_or(0, |r| r.weight.dims().d);
    }
    let all: u64 = comps.iter().fold(0, |m, (c, _)| m | c);
    let stem_type = StemType {
        name: source.to_string(),
        components: specs,
        parity: StemParity::of(&u.roots_of(all)),
    };
    Ok(Recognized {
        stem_type,
        embedding: Embedding { source, pairs },
    })
}

/// Decomposes `stem` into additively connected components (roots `a`, `b`
/// are adjacent when `a+b` or `a-b` lies in the stem) and recognizes each
/// against the catalog. `None` if some component matches nothing.
pub fn recognize(
    stem: &[Root],
    catalog: &Catalog,
    opts: EmbedOptions,
) -> Result<Option<Recognized>> {
    if stem.is_empty() {
        return Err(Error::Contract("cannot recognize an empty stem".into()));
    }
    let u = Universe::new(stem.to_vec())?;
    let mut comps = Vec::new();
    for c in u.components(u.full_mask()) {
        match recognize_component(&u, c, catalog, opts) {
            Some(m) => comps.push((c, m)),
            None => return Ok(None),
        }
    }
    assemble(&u, &comps, catalog).map(Some)
}

#[cfg(test)]
mod tests;
