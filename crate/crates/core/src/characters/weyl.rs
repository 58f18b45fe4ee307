use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{BlockKind, RootSystem, RootSystemSpec, Side, WeylBlock};
use crate::weight::{Parity, Weight};

/// Default bound on the order of a generated Weyl group.
pub const WEYL_GUARD: usize = 100_000;

/// A signed permutation of one block of coordinates: coordinate `i` moves
/// to `perm[i]` and is multiplied by `signs[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignedPerm {
    pub block: usize,
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

/// An element of the Weyl group of an even part, one signed permutation per
/// block. Coordinates outside every block are fixed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeylElement {
    pub parts: Vec<SignedPerm>,
    pub sign: i8,
}

impl WeylElement {
    pub fn act(&self, blocks: &[WeylBlock], w: &Weight) -> Weight {
        let mut out = w.clone();
        for p in &self.parts {
            let b = &blocks[p.block];
            let (src, dst) = match b.side {
                Side::E => (w.doubled_e(), out.e_mut()),
                Side::D => (w.doubled_d(), out.d_mut()),
            };
            for i in 0..b.len {
                dst[b.offset + p.perm[i]] = i64::from(p.signs[i]) * src[b.offset + i];
            }
        }
        out
    }
}

/// The Weyl group of the even part of a root system.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    blocks: Vec<WeylBlock>,
    elements: Vec<WeylElement>,
}

impl WeylGroup {
    /// Generates the group of `rs`, refusing orders above `bound`.
    pub fn of(rs: &RootSystem, bound: usize) -> Result<WeylGroup> {
        let blocks = rs.blocks().to_vec();
        let covered = |side: Side, i: usize| {
            blocks
                .iter()
                .any(|b| b.side == side && (b.offset..b.offset + b.len).contains(&i))
        };
        let uncovered = rs
            .positive()
            .iter()
            .filter(|r| r.parity == Parity::Even)
            .any(|r| {
                let e = r
                    .weight
                    .doubled_e()
                    .iter()
                    .enumerate()
                    .any(|(i, &x)| x != 0 && !covered(Side::E, i));
                let d = r
                    .weight
                    .doubled_d()
                    .iter()
                    .enumerate()
                    .any(|(i, &x)| x != 0 && !covered(Side::D, i));
                e || d
            });
        if uncovered {
            return Err(Error::Unsupported(format!(
                "no signed-permutation Weyl group is known for {}",
                rs.label()
            )));
        }
        let order = blocks
            .iter()
            .try_fold(1usize, |acc, b| acc.checked_mul(block_order(b)))
            .unwrap_or(usize::MAX);
        if order > bound {
            return Err(Error::Guard {
                what: "Weyl group order",
                actual: order,
                bound,
            });
        }
        let mut elements = vec![WeylElement {
            parts: Vec::new(),
            sign: 1,
        }];
        for (k, b) in blocks.iter().enumerate() {
            let local = block_elements(k, b);
            elements = elements
                .iter()
                .flat_map(|e| {
                    local.iter().map(move |(p, s)| {
                        let mut parts = e.parts.clone();
                        parts.push(p.clone());
                        WeylElement {
                            parts,
                            sign: e.sign * s,
                        }
                    })
                })
                .collect();
        }
        Ok(WeylGroup { blocks, elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn act(&self, w: &WeylElement, x: &Weight) -> Weight {
        w.act(&self.blocks, x)
    }
}

/// The Weyl group of the even part of `spec`, within the default guard.
pub fn weyl_group(spec: &RootSystemSpec) -> Result<Vec<WeylElement>> {
    let rs = crate::rootsys::build(spec)?;
    Ok(WeylGroup::of(&rs, WEYL_GUARD)?.elements)
}

fn block_order(b: &WeylBlock) -> usize {
    let fact = (1..=b.len)
        .try_fold(1usize, |a, k| a.checked_mul(k))
        .unwrap_or(usize::MAX);
    let signs = match b.kind {
        BlockKind::A => 1,
        BlockKind::B | BlockKind::C => 1usize.checked_shl(b.len as u32).unwrap_or(usize::MAX),
        BlockKind::D => 1usize
            .checked_shl(b.len.saturating_sub(1) as u32)
            .unwrap_or(usize::MAX),
    };
    fact.saturating_mul(signs)
}

/// All signed permutations of one block, with their signs.
fn block_elements(k: usize, b: &WeylBlock) -> Vec<(SignedPerm, i8)> {
    let n = b.len;
    let mut out = Vec::new();
    for perm in permutations(n) {
        let psign = permutation_sign(&perm);
        for mask in 0u64..1 << n {
            let flips = mask.count_ones();
            let allowed = match b.kind {
                BlockKind::A => mask == 0,
                BlockKind::B | BlockKind::C => true,
                BlockKind::D => flips % 2 == 0,
            };
            if !allowed {
                continue;
            }
            let signs: Vec<i8> = (0..n)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            let sign = if flips % 2 == 1 { -psign } else { psign };
            out.push((
                SignedPerm {
                    block: k,
                    perm: perm.clone(),
                    signs,
                },
                sign,
            ));
        }
    }
    out
}

/// Permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn permutation_sign(p: &[usize]) -> i8 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build;
    use std::collections::HashSet;

    fn group(s: &str) -> WeylGroup {
        WeylGroup::of(&build(&s.parse().unwrap()).unwrap(), WEYL_GUARD).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(group("A1").len(), 2);
        assert_eq!(group("B(1,1)").len(), 4);
        assert_eq!(group("C2").len(), 8);
        assert_eq!(group("D3").len(), 24);
        assert_eq!(group("B(0,2)").len(), 8);
        let c2 = weyl_group(&"C2".parse().unwrap()).unwrap();
        assert_eq!(c2.iter().map(|w| i64::from(w.sign)).sum::<i64>(), 0);
    }

    #[test]
    fn group_preserves_roots() {
        for s in ["A3", "B3", "C2", "D4", "B(1,2)", "A(1,1)", "D(2,1)", "C(3)"] {
            let rs = build(&s.parse().unwrap()).unwrap();
            let g = WeylGroup::of(&rs, WEYL_GUARD).unwrap();
            let roots: HashSet<Weight> = rs.roots().into_iter().map(|r| r.weight).collect();
            let images: HashSet<Weight> = g
                .elements()
                .iter()
                .map(|w| g.act(w, &rs.positive()[0].weight))
                .collect();
            for w in g.elements() {
                for r in rs.roots() {
                    assert!(roots.contains(&g.act(w, &r.weight)), "{s}");
                }
            }
            assert!(!images.is_empty());
        }
    }

    #[test]
    fn sign_is_a_homomorphism() {
        // sgn(w) equals (-1)^(number of positive roots sent to negatives).
        for s in ["A2", "B2", "C2", "D3", "B(1,1)"] {
            let rs = build(&s.parse().unwrap()).unwrap();
            let even = rs.even_positive();
            let pos: HashSet<Weight> = even.iter().map(|r| r.weight.clone()).collect();
            let g = WeylGroup::of(&rs, WEYL_GUARD).unwrap();
            for w in g.elements() {
                let flipped = even
                    .iter()
                    .filter(|r| !pos.contains(&g.act(w, &r.weight)))
                    .count();
                let expected = if flipped % 2 == 0 { 1 } else { -1 };
                assert_eq!(w.sign, expected, "{s}");
            }
        }
    }

    #[test]
    fn guard_and_unsupported() {
        let rs = build(&"B8".parse().unwrap()).unwrap();
        assert!(matches!(
            WeylGroup::of(&rs, WEYL_GUARD),
            Err(Error::Guard { .. })
        ));
        let g2 = build(&"G2".parse().unwrap()).unwrap();
        assert!(matches!(
            WeylGroup::of(&g2, WEYL_GUARD),
            Err(Error::Unsupported(_))
        ));
    }
}
