use super::{BlockKind, Root, RootSystem, RootSystemSpec, Side, WeylBlock};
use crate::error::Result;
use crate::weight::{Dims, Weight};

/// Small builder for roots as sparse integer combinations.
struct Ambient {
    dims: Dims,
}

impl Ambient {
    /// `terms` are `(is_e, index, coefficient)` with 0-based indices.
    fn w(&self, terms: &[(bool, usize, i64)]) -> Weight {
        let mut w = Weight::zero(self.dims);
        for &(is_e, i, c) in terms {
            if is_e {
                w.e_mut()[i] += 2 * c;
            } else {
                w.d_mut()[i] += 2 * c;
            }
        }
        w
    }
}

const E: bool = true;
const D: bool = false;

/// `x_i - x_j` and `x_i + x_j` for `i < j` on one side.
fn pm_pairs(a: &Ambient, side: bool, len: usize, with_plus: bool, out: &mut Vec<Root>) {
    for i in 0..len {
        for j in i + 1..len {
            out.push(Root::even(a.w(&[(side, i, 1), (side, j, -1)])));
            if with_plus {
                out.push(Root::even(a.w(&[(side, i, 1), (side, j, 1)])));
            }
        }
    }
}

/// Simple roots `x_1 - x_2, ..., x_{len-1} - x_len`.
fn chain(a: &Ambient, side: bool, len: usize) -> Vec<Root> {
    (0..len.saturating_sub(1))
        .map(|i| Root::even(a.w(&[(side, i, 1), (side, i + 1, -1)])))
        .collect()
}

fn block(side: Side, len: usize, kind: BlockKind) -> WeylBlock {
    WeylBlock {
        side,
        offset: 0,
        len,
        kind,
    }
}

/// Constructs the root system of a spec.
pub fn build(spec: &RootSystemSpec) -> Result<RootSystem> {
    spec.validate()?;
    let mut pos = Vec::new();
    let (dims, simple, blocks) = match *spec {
        RootSystemSpec::ASuper { m, n } => {
            let a = Ambient {
                dims: Dims::new(m + 1, n + 1),
            };
            pm_pairs(&a, E, m + 1, false, &mut pos);
            pm_pairs(&a, D, n + 1, false, &mut pos);
            for i in 0..=m {
                for j in 0..=n {
                    pos.push(Root::odd(a.w(&[(E, i, 1), (D, j, -1)])));
                }
            }
            let mut simple = chain(&a, E, m + 1);
            simple.push(Root::odd(a.w(&[(E, m, 1), (D, 0, -1)])));
            simple.extend(chain(&a, D, n + 1));
            (
                a.dims,
                simple,
                vec![
                    block(Side::E, m + 1, BlockKind::A),
                    block(Side::D, n + 1, BlockKind::A),
                ],
            )
        }
        RootSystemSpec::BSuper { m, n } => {
            let a = Ambient {
                dims: Dims::new(m, n),
            };
            pm_pairs(&a, E, m, true, &mut pos);
            pos.extend((0..m).map(|i| Root::even(a.w(&[(E, i, 1)]))));
            symplectic(&a, n, &mut pos);
            for k in 0..n {
                pos.push(Root::odd(a.w(&[(D, k, 1)])));
                for i in 0..m {
                    pos.push(Root::odd(a.w(&[(D, k, 1), (E, i, -1)])));
                    pos.push(Root::odd(a.w(&[(D, k, 1), (E, i, 1)])));
                }
            }
            let mut simple = chain(&a, D, n);
            simple.push(Root::odd(a.w(&[(D, n - 1, 1), (E, 0, -1)])));
            simple.extend(chain(&a, E, m));
            simple.push(Root::even(a.w(&[(E, m - 1, 1)])));
            (
                a.dims,
                simple,
                vec![
                    block(Side::E, m, BlockKind::B),
                    block(Side::D, n, BlockKind::C),
                ],
            )
        }
        RootSystemSpec::B0n { n } => {
            let a = Ambient {
                dims: Dims::new(0, n),
            };
            symplectic(&a, n, &mut pos);
            pos.extend((0..n).map(|k| Root::odd(a.w(&[(D, k, 1)]))));
            let mut simple = chain(&a, D, n);
            simple.push(Root::odd(a.w(&[(D, n - 1, 1)])));
            (a.dims, simple, vec![block(Side::D, n, BlockKind::C)])
        }
        RootSystemSpec::CSuper { n } => {
            let a = Ambient {
                dims: Dims::new(1, n),
            };
            symplectic(&a, n, &mut pos);
            for k in 0..n {
                pos.push(Root::odd(a.w(&[(E, 0, 1), (D, k, -1)])));
                pos.push(Root::odd(a.w(&[(E, 0, 1), (D, k, 1)])));
            }
            let mut simple = vec![Root::odd(a.w(&[(E, 0, 1), (D, 0, -1)]))];
            simple.extend(chain(&a, D, n));
            simple.push(Root::even(a.w(&[(D, n - 1, 2)])));
            (a.dims, simple, vec![block(Side::D, n, BlockKind::C)])
        }
        RootSystemSpec::DSuper { m, n } => {
            let a = Ambient {
                dims: Dims::new(m, n),
            };
            pm_pairs(&a, E, m, true, &mut pos);
            symplectic(&a, n, &mut pos);
            for k in 0..n {
                for i in 0..m {
                    pos.push(Root::odd(a.w(&[(D, k, 1), (E, i, -1)])));
                    pos.push(Root::odd(a.w(&[(D, k, 1), (E, i, 1)])));
                }
            }
            let mut simple = chain(&a, D, n);
            simple.push(Root::odd(a.w(&[(D, n - 1, 1), (E, 0, -1)])));
            simple.extend(chain(&a, E, m));
            simple.push(Root::even(a.w(&[(E, m - 2, 1), (E, m - 1, 1)])));
            (
                a.dims,
                simple,
                vec![
                    block(Side::E, m, BlockKind::D),
                    block(Side::D, n, BlockKind::C),
                ],
            )
        }
        RootSystemSpec::A(r) => {
            let a = Ambient {
                dims: Dims::new(r + 1, 0),
            };
            pm_pairs(&a, E, r + 1, false, &mut pos);
            (
                a.dims,
                chain(&a, E, r + 1),
                vec![block(Side::E, r + 1, BlockKind::A)],
            )
        }
        RootSystemSpec::B(r) => {
            let a = Ambient {
                dims: Dims::new(r, 0),
            };
            pm_pairs(&a, E, r, true, &mut pos);
            pos.extend((0..r).map(|i| Root::even(a.w(&[(E, i, 1)]))));
            let mut simple = chain(&a, E, r);
            simple.push(Root::even(a.w(&[(E, r - 1, 1)])));
            (a.dims, simple, vec![block(Side::E, r, BlockKind::B)])
        }
        RootSystemSpec::C(r) => {
            let a = Ambient {
                dims: Dims::new(r, 0),
            };
            pm_pairs(&a, E, r, true, &mut pos);
            pos.extend((0..r).map(|i| Root::even(a.w(&[(E, i, 2)]))));
            let mut simple = chain(&a, E, r);
            simple.push(Root::even(a.w(&[(E, r - 1, 2)])));
            (a.dims, simple, vec![block(Side::E, r, BlockKind::C)])
        }
        RootSystemSpec::D(r) => {
            let a = Ambient {
                dims: Dims::new(r, 0),
            };
            pm_pairs(&a, E, r, true, &mut pos);
            let mut simple = chain(&a, E, r);
            simple.push(Root::even(a.w(&[(E, r - 2, 1), (E, r - 1, 1)])));
            (a.dims, simple, vec![block(Side::E, r, BlockKind::D)])
        }
        RootSystemSpec::G2 => {
            let a = Ambient {
                dims: Dims::new(3, 0),
            };
            let short = |i, j| Root::even(a.w(&[(E, i, 1), (E, j, -1)]));
            let long = |c: [i64; 3]| Root::even(a.w(&[(E, 0, c[0]), (E, 1, c[1]), (E, 2, c[2])]));
            pos.extend([short(0, 1), short(2, 0), short(2, 1)]);
            pos.extend([long([-2, 1, 1]), long([1, -2, 1]), long([-1, -1, 2])]);
            let simple = vec![short(0, 1), long([-2, 1, 1])];
            (a.dims, simple, Vec::new())
        }
        RootSystemSpec::DirectSum(ref parts) => return direct_sum(spec.clone(), parts),
    };
    Ok(RootSystem::from_parts(
        spec.clone(),
        dims,
        pos,
        simple,
        blocks,
    ))
}

/// `d_k +- d_l` and `2 d_k`.
fn symplectic(a: &Ambient, n: usize, out: &mut Vec<Root>) {
    pm_pairs(a, D, n, true, out);
    out.extend((0..n).map(|k| Root::even(a.w(&[(D, k, 2)]))));
}

fn direct_sum(spec: RootSystemSpec, parts: &[RootSystemSpec]) -> Result<RootSystem> {
    let built: Vec<RootSystem> = parts.iter().map(build).collect::<Result<_>>()?;
    let dims = Dims::new(
        built.iter().map(|r| r.dims().e).sum(),
        built.iter().map(|r| r.dims().d).sum(),
    );
    let (mut eo, mut dof) = (0, 0);
    let (mut pos, mut simple, mut blocks) = (Vec::new(), Vec::new(), Vec::new());
    for rs in &built {
        let shift = |r: &Root| Root::new(r.weight.embed(dims, eo, dof), r.parity);
        pos.extend(rs.positive().iter().map(shift));
        simple.extend(rs.simple().iter().map(shift));
        blocks.extend(rs.blocks().iter().map(|b| WeylBlock {
            offset: b.offset + if b.side == Side::E { eo } else { dof },
            ..*b
        }));
        eo += rs.dims().e;
        dof += rs.dims().d;
    }
    Ok(RootSystem::from_parts(spec, dims, pos, simple, blocks))
}
