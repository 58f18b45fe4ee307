//! Pruned exhaustive splint enumeration.
//!
//! Roots are assigned to stem 1 or stem 2 in ascending order, stem 1 first,
//! with the smallest root pinned to stem 1. A component of a partial stem is
//! final once every root related to one of its members (by a sum or
//! difference in the whole system) has been assigned; final components must
//! be recognizable right away. The strict rank reading is enforced on the
//! growing spans.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{RankPolicy, Splint, SplintConfig, Stem};
use crate::addstruct::{
    assemble, bits, recognize_component, Catalog, ComponentMatch, EmbedOptions, Universe,
};
use crate::error::Result;
use crate::linalg::{self, Span};
use crate::rootsys::RootSystem;

/// Depth at which the search tree is split into parallel tasks.
const SPLIT_DEPTH: usize = 10;

#[derive(Debug, Serialize)]
pub struct Enumeration {
    pub splints: Vec<Splint>,
    /// False when `max_results` cut the search short.
    pub complete: bool,
    /// Search nodes visited.
    pub nodes: u64,
}

/// All splints of `rs` (stem 1 holds the smallest positive root), ordered
/// by the assignment vector. Independent of the number of worker threads.
pub fn enumerate_splints(rs: &RootSystem, cfg: &SplintConfig) -> Result<Enumeration> {
    cfg.guard(rs)?;
    let roots: Vec<_> = rs.positive().iter().rev().cloned().collect();
    let u = Universe::new(roots)?;
    let n = u.len();
    if n < 2 {
        return Ok(Enumeration {
            splints: Vec::new(),
            complete: true,
            nodes: 0,
        });
    }
    let full_rank = linalg::rank(u.roots.iter().map(|r| &r.weight));
    let freeze: Vec<usize> = (0..n)
        .map(|i| bits(u.related[i]).chain([i]).max().unwrap())
        .collect();
    let ctx = Ctx {
        u: &u,
        catalog: Catalog::standard(),
        opts: cfg.embed_options(),
        rank_bound: (cfg.rank_policy == RankPolicy::PaperStrict).then_some(full_rank),
        freeze,
        limit: cfg.max_results,
    };

    let mut prefixes = Vec::new();
    let mut cache = HashMap::new();
    let mut nodes = 0;
    let split = SPLIT_DEPTH.min(n - 1);
    ctx.dfs(
        State::new(),
        &mut cache,
        &mut nodes,
        &mut Sink::Prefixes(split, &mut prefixes),
    );

    let parts: Vec<(Vec<Splint>, bool, u64)> = prefixes
        .into_par_iter()
        .map_init(HashMap::new, |cache, state| {
            let mut found = Vec::new();
            let mut nodes = 0;
            let stopped = !ctx.dfs(state, cache, &mut nodes, &mut Sink::Splints(&mut found));
            (found, stopped, nodes)
        })
        .collect();

    let mut splints = Vec::new();
    let mut complete = true;
    for (found, stopped, k) in parts {
        nodes += k;
        complete &= !stopped;
        splints.extend(found);
    }
    if splints.len() > cfg.max_results {
        splints.truncate(cfg.max_results);
        complete = false;
    }
    Ok(Enumeration {
        splints,
        complete,
        nodes,
    })
}

#[derive(Clone)]
struct State {
    next: usize,
    masks: [u64; 2],
    spans: [Span; 2],
}

impl State {
    fn new() -> Self {
        State {
            next: 0,
            masks: [0, 0],
            spans: [Span::new(), Span::new()],
        }
    }
}

enum Sink<'s> {
    Prefixes(usize, &'s mut Vec<State>),
    Splints(&'s mut Vec<Splint>),
}

type Cache = HashMap<u64, Option<ComponentMatch>>;

struct Ctx<'a> {
    u: &'a Universe,
    catalog: &'a Catalog,
    opts: EmbedOptions,
    rank_bound: Option<usize>,
    /// Step after which no unassigned root relates to root `i`.
    freeze: Vec<usize>,
    limit: usize,
}

impl Ctx<'_> {
    /// Returns false once the result limit is reached.
    fn dfs(&self, state: State, cache: &mut Cache, nodes: &mut u64, sink: &mut Sink) -> bool {
        *nodes += 1;
        let i = state.next;
        let n = self.u.len();
        match sink {
            Sink::Prefixes(depth, out) if i == *depth && i < n => {
                out.push(state);
                return true;
            }
            _ => {}
        }
        if i == n {
            if state.masks[1] == 0 {
                return true;
            }
            let Sink::Splints(out) = sink else {
                unreachable!("prefixes stop above the leaves")
            };
            out.push(self.splint(&state, cache));
            return out.len() < self.limit;
        }
        for side in 0..2 {
            if i == 0 && side == 1 {
                continue;
            }
            let mut next = state.clone();
            next.next = i + 1;
            next.masks[side] |= 1 << i;
            if let Some(bound) = self.rank_bound {
                next.spans[side].insert_weight(&self.u.roots[i].weight);
                if next.spans[side].rank() >= bound {
                    continue;
                }
            }
            if !self.frozen_ok(&next, i, cache) {
                continue;
            }
            if !self.dfs(next, cache, nodes, sink) {
                return false;
            }
        }
        true
    }

    /// Checks the components of both stems that became final at step `i`.
    fn frozen_ok(&self, state: &State, i: usize, cache: &mut Cache) -> bool {
        for &mask in &state.masks {
            let mut seen = 0u64;
            for seed in bits(mask) {
                if seen >> seed & 1 == 1 || self.freeze[seed] != i {
                    continue;
                }
                let comp = component_of(self.u, seed, mask);
                seen |= comp;
                let last = bits(comp).map(|c| self.freeze[c]).max().unwrap();
                if last == i && self.lookup(comp, cache).is_none() {
                    return false;
                }
            }
        }
        true
    }

    fn lookup<'c>(&self, comp: u64, cache: &'c mut Cache) -> Option<&'c ComponentMatch> {
        cache
            .entry(comp)
            .or_insert_with(|| recognize_component(self.u, comp, self.catalog, self.opts))
            .as_ref()
    }

    fn splint(&self, state: &State, cache: &mut Cache) -> Splint {
        let [s1, s2] = state.masks.map(|mask| {
            let comps: Vec<(u64, ComponentMatch)> = self
                .u
                .components(mask)
                .into_iter()
                .map(|c| {
                    (
                        c,
                        self.lookup(c, cache)
                            .expect("final components were checked")
                            .clone(),
                    )
                })
                .collect();
            let rec = assemble(self.u, &comps, self.catalog).expect("catalog entries build");
            let roots = self.u.roots_of(mask);
            Stem {
                rank: linalg::rank(roots.iter().map(|r| &r.weight)),
                roots,
                stem_type: rec.stem_type,
                embedding: rec.embedding,
            }
        });
        Splint {
            stem1: s1,
            stem2: s2,
        }
    }
}

/// The component of `seed` in the adjacency graph restricted to `mask`.
fn component_of(u: &Universe, seed: usize, mask: u64) -> u64 {
    let mut comp = 1u64 << seed;
    let mut frontier = comp;
    while frontier != 0 {
        let i = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        for j in bits(mask & !comp) {
            if u.adjacent(i, j, mask) {
                comp |= 1 << j;
                frontier |= 1 << j;
            }
        }
    }
    comp
}
