//! Bitmask universes of roots and the backtracking embedding search.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rootsys::Root;
use crate::weight::{Parity, Weight};

pub(crate) const MAX_UNIVERSE: usize = 64;
const NONE: usize = usize::MAX;

/// Whether embeddings from super sources must preserve parity.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum ParityPolicy {
    #[default]
    Preserve,
    Ignore,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct EmbedOptions {
    pub parity: ParityPolicy,
    /// Also require every sum among image roots to come from a source sum.
    pub strict: bool,
}

/// A set of at most 64 roots with precomputed sum and difference lookups.
pub(crate) struct Universe {
    pub roots: Vec<Root>,
    pub sum: Vec<Vec<usize>>,
    pub diff: Vec<Vec<usize>>,
    pub related: Vec<u64>,
}

impl Universe {
    pub fn new(roots: Vec<Root>) -> Result<Self> {
        let n = roots.len();
        if n > MAX_UNIVERSE {
            return Err(Error::Guard {
                what: "root set size",
                actual: n,
                bound: MAX_UNIVERSE,
            });
        }
        if let Some(first) = roots.first() {
            let dims = first.weight.dims();
            if let Some(bad) = roots.iter().find(|r| r.weight.dims() != dims) {
                return Err(Error::DimensionMismatch {
                    left: dims,
                    right: bad.weight.dims(),
                });
            }
        }
        let index: HashMap<&Weight, usize> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (&r.weight, i))
            .collect();
        if index.len() != n {
            return Err(Error::Contract("repeated root in root set".into()));
        }
        let lookup = |w: Weight| index.get(&w).copied().unwrap_or(NONE);
        let mut sum = vec![vec![NONE; n]; n];
        let mut diff = vec![vec![NONE; n]; n];
        let mut related = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&roots[i].weight, &roots[j].weight);
                sum[i][j] = lookup(a.add_unchecked(b));
                diff[i][j] = lookup(a.sub_unchecked(b));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && (sum[i][j] != NONE || diff[i][j] != NONE || diff[j][i] != NONE) {
                    related[i] |= 1 << j;
                }
            }
        }
        Ok(Universe {
            roots,
            sum,
            diff,
            related,
        })
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn full_mask(&self) -> u64 {
        mask_below(self.len())
    }

    fn has(mask: u64, i: usize) -> bool {
        i != NONE && mask >> i & 1 == 1
    }

    /// Triples `(i, j, k)` with `i <= j`, all in `mask`, `r_i + r_j = r_k`.
    pub fn triples_in(&self, mask: u64) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for i in bits(mask) {
            for j in bits(mask >> i << i) {
                let k = self.sum[i][j];
                if Self::has(mask, k) {
                    out.push([i, j, k]);
                }
            }
        }
        out
    }

    /// `r_i ~ r_j` inside `mask`: their sum or a difference lies in `mask`.
    pub fn adjacent(&self, i: usize, j: usize, mask: u64) -> bool {
        Self::has(mask, self.sum[i][j])
            || Self::has(mask, self.diff[i][j])
            || Self::has(mask, self.diff[j][i])
    }

    /// Connected components of the adjacency graph restricted to `mask`,
    /// ordered by lowest member.
    pub fn components(&self, mask: u64) -> Vec<u64> {
        let mut left = mask;
        let mut out = Vec::new();
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let i = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                for j in bits(left & !comp) {
                    if self.adjacent(i, j, mask) {
                        comp |= 1 << j;
                        frontier |= 1 << j;
                    }
                }
            }
            left &= !comp;
            out.push(comp);
        }
        out
    }

    pub fn roots_of(&self, mask: u64) -> Vec<Root> {
        bits(mask).map(|i| self.roots[i].clone()).collect()
    }
}

pub(crate) fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Role degrees of each root inside `mask`: how often it is a sum and how
/// often a summand.
fn degrees(u: &Universe, triples: &[[usize; 3]]) -> (Vec<u32>, Vec<u32>) {
    let mut as_sum = vec![0; u.len()];
    let mut as_summand = vec![0; u.len()];
    for &[a, b, c] in triples {
        as_sum[c] += 1;
        as_summand[a] += 1;
        if b != a {
            as_summand[b] += 1;
        }
    }
    (as_sum, as_summand)
}

/// The additive shape of a source root system, with a static search order.
pub(crate) struct Shape {
    pub universe: Universe,
    pub is_super: bool,
    /// Roots whose parity must be kept under the preserve policy.
    bound: Vec<bool>,
    pub triples: Vec<[usize; 3]>,
    touching: Vec<Vec<usize>>,
    as_sum: Vec<u32>,
    as_summand: Vec<u32>,
    order: Vec<usize>,
}

impl Shape {
    pub fn new(roots: Vec<Root>, bound: Vec<bool>) -> Result<Self> {
        let universe = Universe::new(roots)?;
        let is_super = bound.iter().any(|&b| b);
        let n = universe.len();
        let triples = universe.triples_in(universe.full_mask());
        let mut touching = vec![Vec::new(); n];
        for (t, &[a, b, c]) in triples.iter().enumerate() {
            touching[a].push(t);
            if b != a {
                touching[b].push(t);
            }
            touching[c].push(t);
        }
        let (as_sum, as_summand) = degrees(&universe, &triples);
        let order = search_order(n, &triples, &touching);
        Ok(Shape {
            universe,
            is_super,
            bound,
            triples,
            touching,
            as_sum,
            as_summand,
            order,
        })
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.universe.roots[i].parity
    }
}

/// Most-constrained-first: start from the highest-degree root, then always
/// take the root sharing most triples with those already placed.
fn search_order(n: usize, triples: &[[usize; 3]], touching: &[Vec<usize>]) -> Vec<usize> {
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let score = |x: usize| {
            let linked = touching[x]
                .iter()
                .filter(|&&t| triples[t].iter().any(|&y| y != x && placed[y]))
                .count();
            (linked, touching[x].len(), std::cmp::Reverse(x))
        };
        let next = (0..n)
            .filter(|&x| !placed[x])
            .max_by_key(|&x| score(x))
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    order
}

/// One backtracking search for triple-preserving injections of a source
/// shape into `target ∩ mask`.
pub(crate) struct Search<'a> {
    src: &'a Shape,
    tgt: &'a Universe,
    mask: u64,
    opts: EmbedOptions,
    onto: bool,
    /// `(a, b)`: the image of source root `a` must precede that of `b`.
    before: Vec<(usize, usize)>,
    t_as_sum: Vec<u32>,
    t_as_summand: Vec<u32>,
    t_touching: Vec<Vec<[usize; 3]>>,
    map: Vec<usize>,
    inv: Vec<usize>,
    used: u64,
    pub nodes: u64,
}

impl<'a> Search<'a> {
    pub fn new(
        src: &'a Shape,
        tgt: &'a Universe,
        mask: u64,
        opts: EmbedOptions,
        onto: bool,
    ) -> Self {
        let triples = tgt.triples_in(mask);
        let (t_as_sum, t_as_summand) = degrees(tgt, &triples);
        let mut t_touching = vec![Vec::new(); tgt.len()];
        if opts.strict {
            for &tr in &triples {
                let [a, b, c] = tr;
                t_touching[a].push(tr);
                if b != a {
                    t_touching[b].push(tr);
                }
                t_touching[c].push(tr);
            }
        }
        Search {
            src,
            tgt,
            mask,
            opts,
            onto,
            before: Vec::new(),
            t_as_sum,
            t_as_summand,
            t_touching,
            map: vec![NONE; src.len()],
            inv: vec![NONE; tgt.len()],
            used: 0,
            nodes: 0,
        }
    }

    pub fn with_order_constraints(mut self, before: Vec<(usize, usize)>) -> Self {
        self.before = before;
        self
    }

    /// Calls `visit` with each complete map (source index -> target index)
    /// until it returns false.
    pub fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) {
        let k = self.mask.count_ones() as usize;
        if k < self.src.len() || (self.onto && k != self.src.len()) {
            return;
        }
        self.dfs(0, visit);
    }

    pub fn first(&mut self) -> Option<Vec<usize>> {
        let mut found = None;
        self.run(&mut |m| {
            found = Some(m.to_vec());
            false
        });
        found
    }

    fn dfs(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        self.nodes += 1;
        if depth == self.src.len() {
            return visit(&self.map);
        }
        let x = self.src.order[depth];
        let candidates = match self.forced(x) {
            Forced::Value(t) => {
                if Universe::has(self.mask & !self.used, t) {
                    1u64 << t
                } else {
                    return true;
                }
            }
            Forced::Impossible => return true,
            Forced::Free => self.mask & !self.used,
        };
        for t in bits(candidates) {
            if !self.admissible(x, t) {
                continue;
            }
            self.map[x] = t;
            self.inv[t] = x;
            self.used |= 1 << t;
            let ok = self.consistent(x, t);
            if ok && !self.dfs(depth + 1, visit) {
                self.undo(x, t);
                return false;
            }
            self.undo(x, t);
        }
        true
    }

    fn undo(&mut self, x: usize, t: usize) {
        self.map[x] = NONE;
        self.inv[t] = NONE;
        self.used &= !(1 << t);
    }

    fn admissible(&self, x: usize, t: usize) -> bool {
        let src = self.src;
        if self.opts.parity == ParityPolicy::Preserve
            && src.bound[x]
            && src.parity(x) != self.tgt.roots[t].parity
        {
            return false;
        }
        if self.opts.strict && self.onto {
            if src.as_sum[x] != self.t_as_sum[t] || src.as_summand[x] != self.t_as_summand[t] {
                return false;
            }
        } else if src.as_sum[x] > self.t_as_sum[t] || src.as_summand[x] > self.t_as_summand[t] {
            return false;
        }
        true
    }

    fn forced(&self, x: usize) -> Forced {
        let m = &self.map;
        for &ti in &self.src.touching[x] {
            let [a, b, c] = self.src.triples[ti];
            let t = if x == c && a != x && b != x {
                if m[a] == NONE || m[b] == NONE {
                    continue;
                }
                self.tgt.sum[m[a]][m[b]]
            } else if x == c {
                continue;
            } else if a == b {
                // x + x = c
                if m[c] == NONE {
                    continue;
                }
                match (0..self.tgt.len()).find(|&y| self.tgt.sum[y][y] == m[c]) {
                    Some(y) => y,
                    None => return Forced::Impossible,
                }
            } else {
                let other = if x == a { b } else { a };
                if m[other] == NONE || m[c] == NONE {
                    continue;
                }
                self.tgt.diff[m[c]][m[other]]
            };
            return if t == NONE {
                Forced::Impossible
            } else {
                Forced::Value(t)
            };
        }
        Forced::Free
    }

    fn consistent(&self, x: usize, t: usize) -> bool {
        let m = &self.map;
        for &ti in &self.src.touching[x] {
            let [a, b, c] = self.src.triples[ti];
            if m[a] != NONE && m[b] != NONE && m[c] != NONE && self.tgt.sum[m[a]][m[b]] != m[c] {
                return false;
            }
        }
        for &(a, b) in &self.before {
            if (a == x || b == x) && m[a] != NONE && m[b] != NONE && m[a] >= m[b] {
                return false;
            }
        }
        if self.opts.strict {
            for &[p, q, r] in &self.t_touching[t] {
                let (sp, sq, sr) = (self.inv[p], self.inv[q], self.inv[r]);
                if sp != NONE && sq != NONE && sr != NONE && self.src.universe.sum[sp][sq] != sr {
                    return false;
                }
            }
        }
        true
    }
}

enum Forced {
    Value(usize),
    Impossible,
    Free,
}
