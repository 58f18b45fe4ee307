//! Formal characters: Laurent sums on the weight lattice, even Weyl groups,
//! denominators, typical characters and the defect-one denominator identity.

mod formal;
mod weyl;

use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use formal::FormalSum;
pub use weyl::{weyl_group, SignedPerm, WeylElement, WeylGroup, WEYL_GUARD};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rootsys::{build, Root, RootSystem, RootSystemSpec};
use crate::splints::Splint;
use crate::weight::{Dims, Parity, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylVectors {
    pub rho0: Weight,
    pub rho1: Weight,
    pub rho: Weight,
}

/// Half sums of the even and odd positive roots, and `rho = rho0 - rho1`.
pub fn weyl_vectors(rs: &RootSystem) -> WeylVectors {
    let half_sum = |parity| {
        let sum = rs
            .positive()
            .iter()
            .filter(|r| r.parity == parity)
            .fold(Weight::zero(rs.dims()), |acc, r| {
                acc.add_unchecked(&r.weight)
            });
        half(&sum)
    };
    let rho0 = half_sum(Parity::Even);
    let rho1 = half_sum(Parity::Odd);
    let rho = rho0.sub_unchecked(&rho1);
    WeylVectors { rho0, rho1, rho }
}

/// Root sums have integer coordinates, so halving stays on the lattice.
fn half(w: &Weight) -> Weight {
    w.halve().expect("sums of roots have integer coordinates")
}

fn product(dims: Dims, factors: impl Iterator<Item = FormalSum>) -> FormalSum {
    factors.fold(FormalSum::one(dims), |acc, f| &acc * &f)
}

/// `e^{a/2} + s e^{-a/2}`.
fn half_binomial(a: &Weight, s: i64) -> FormalSum {
    let h = half(a);
    let neg = h.neg();
    FormalSum::binomial(h, 1, neg, s)
}

/// `1 + s e^{-a}`.
fn one_plus(a: &Weight, s: i64) -> FormalSum {
    FormalSum::binomial(Weight::zero(a.dims()), 1, a.neg(), s)
}

/// `A_rho`: the product of `e^{a/2} - e^{-a/2}` over even positive roots.
pub fn denominator_even(rs: &RootSystem) -> FormalSum {
    product(
        rs.dims(),
        rs.even_positive()
            .iter()
            .map(|r| half_binomial(&r.weight, -1)),
    )
}

/// `sum_w sgn(w) e^{w mu}`.
pub fn alternating_sum(group: &WeylGroup, mu: &Weight) -> FormalSum {
    group
        .elements()
        .par_iter()
        .map(|w| FormalSum::monomial(group.act(w, mu), i64::from(w.sign)))
        .reduce(FormalSum::zero, |a, b| &a + &b)
}

/// Checks `prod_{stem1}(1-e^{-a}) prod_{stem2}(1-e^{-b}) = prod_{even+}(1-e^{-g})`
/// and `A_rho = A_1 A_2`, where stem products run over the embedding images
/// of the source positive roots. `even` is the even part the splint
/// partitions.
pub fn splint_factorization_check(even: &RootSystem, splint: &Splint) -> Result<bool> {
    let positive: HashSet<&Weight> = even.positive().iter().map(|r| &r.weight).collect();
    let mut seen = HashSet::new();
    for stem in [&splint.stem1, &splint.stem2] {
        if stem.roots.is_empty() {
            return Err(Error::Contract("splint has an empty stem".into()));
        }
        for r in &stem.roots {
            if !positive.contains(&r.weight) {
                return Err(Error::Contract(format!(
                    "{r} is not a positive root of {}",
                    even.label()
                )));
            }
            if !seen.insert(&r.weight) {
                return Err(Error::Contract(format!("stems overlap at {r}")));
            }
        }
    }
    if seen.len() != positive.len() {
        return Err(Error::Contract(
            "stems do not cover the positive roots".into(),
        ));
    }
    let dims = even.dims();
    let images = |s: &crate::splints::Stem| -> Vec<Weight> {
        s.embedding
            .pairs
            .iter()
            .map(|(_, t)| t.weight.clone())
            .collect()
    };
    let (i1, i2) = (images(&splint.stem1), images(&splint.stem2));
    let weyl = |ws: &[Weight]| product(dims, ws.iter().map(|w| one_plus(w, -1)));
    let whole: Vec<Weight> = even.positive().iter().map(|r| r.weight.clone()).collect();
    let first = &weyl(&i1) * &weyl(&i2) == weyl(&whole);
    let a = |ws: &[Weight]| product(dims, ws.iter().map(|w| half_binomial(w, -1)));
    let second = &a(&i1) * &a(&i2) == denominator_even(even);
    Ok(first && second)
}

/// Even simple roots: the indecomposable even positive roots.
fn even_simple(rs: &RootSystem) -> Vec<Root> {
    rs.even_part().simple().to_vec()
}

/// Checks that `lambda` is dominant integral for the even part and typical.
pub fn check_typical(rs: &RootSystem, lambda: &Weight) -> Result<()> {
    if lambda.dims() != rs.dims() {
        return Err(Error::DimensionMismatch {
            left: rs.dims(),
            right: lambda.dims(),
        });
    }
    for a in even_simple(rs) {
        let v = Ratio::from_integer(2) * lambda.pairing_unchecked(&a.weight)
            / a.weight.pairing_unchecked(&a.weight);
        if !v.is_integer() || v < Ratio::zero() {
            return Err(Error::NotDominant {
                weight: lambda.to_string(),
                root: a.to_string(),
                value: v.to_string(),
            });
        }
    }
    let shifted = lambda.add_unchecked(&weyl_vectors(rs).rho);
    for g in rs.odd_positive().iter().filter(|r| r.is_isotropic()) {
        if shifted.pairing_unchecked(&g.weight).is_zero() {
            return Err(Error::Atypical {
                root: g.to_string(),
            });
        }
    }
    Ok(())
}

/// `ch V(lambda) = prod_{odd+}(e^{b/2} + e^{-b/2}) sum_w sgn(w) e^{w(lambda+rho)} / A_rho`
/// for dominant typical `lambda`. The division must be exact.
pub fn typical_character(rs: &RootSystem, lambda: &Weight) -> Result<FormalSum> {
    check_typical(rs, lambda)?;
    let group = WeylGroup::of(rs, WEYL_GUARD)?;
    let shifted = lambda.add_unchecked(&weyl_vectors(rs).rho);
    let odd = product(
        rs.dims(),
        rs.odd_positive()
            .iter()
            .map(|r| half_binomial(&r.weight, 1)),
    );
    let numerator = &odd * &alternating_sum(&group, &shifted);
    numerator.div_exact(&denominator_even(rs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectData {
    pub defect: usize,
    pub cg: u64,
    pub isotropic_sets: Vec<Vec<Root>>,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Defect, the constant `C_g`, and the maximal pairwise orthogonal sets of
/// isotropic positive roots of size `d`.
pub fn defect_and_cg(spec: &RootSystemSpec) -> Result<DefectData> {
    use RootSystemSpec::*;
    let (defect, cg) = match *spec {
        ASuper { m, n } => {
            let d = (m + 1).min(n + 1);
            (d, factorial(d))
        }
        BSuper { m, n } => {
            let d = m.min(n);
            (d, (1u64 << d) * factorial(d))
        }
        DSuper { m, n } => {
            let d = m.min(n);
            let cg = if m > n {
                (1u64 << d) * factorial(d)
            } else {
                (1u64 << (d - 1)) * factorial(d)
            };
            (d, cg)
        }
        CSuper { .. } => (1, 1),
        B0n { .. } => (0, 1),
        _ => {
            return Err(Error::Unsupported(format!(
                "{spec} is not a basic classical superalgebra with a tabulated C_g"
            )))
        }
    };
    let rs = build(spec)?;
    let iso: Vec<Root> = rs
        .odd_positive()
        .into_iter()
        .filter(Root::is_isotropic)
        .collect();
    let mut isotropic_sets = Vec::new();
    orthogonal_sets(&iso, defect, 0, &mut Vec::new(), &mut isotropic_sets);
    Ok(DefectData {
        defect,
        cg,
        isotropic_sets,
    })
}

fn orthogonal_sets(
    pool: &[Root],
    size: usize,
    from: usize,
    cur: &mut Vec<Root>,
    out: &mut Vec<Vec<Root>>,
) {
    if size == 0 {
        return;
    }
    if cur.len() == size {
        out.push(cur.clone());
        return;
    }
    for i in from..pool.len() {
        if cur
            .iter()
            .all(|c| c.weight.pairing_unchecked(&pool[i].weight).is_zero())
        {
            cur.push(pool[i].clone());
            orthogonal_sets(pool, size, i + 1, cur, out);
            cur.pop();
        }
    }
}

/// Height of a root over the distinguished simple system.
pub fn height(rs: &RootSystem, root: &Weight) -> Result<i64> {
    let basis: Vec<Weight> = rs.simple().iter().map(|r| r.weight.clone()).collect();
    let coeffs = linalg::express(root, &basis)
        .ok_or_else(|| Error::Contract(format!("{root} is not in the span of the simple roots")))?;
    let h: Ratio<i64> = coeffs.into_iter().sum();
    if !h.is_integer() {
        return Err(Error::Invariant(format!(
            "non-integral height {h} for {root}"
        )));
    }
    Ok(h.to_integer())
}

/// `C = C_g / prod_{g in S} (ht(g) + 1) / 2`.
pub fn kw_constant(rs: &RootSystem, cg: u64, set: &[Root]) -> Result<Ratio<i64>> {
    let mut c = Ratio::from_integer(cg as i64);
    for g in set {
        c /= Ratio::new(height(rs, &g.weight)? + 1, 2);
    }
    Ok(c)
}

/// Sign attached to the isotropic root in the denominator identity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConvention {
    #[default]
    Plus,
    Minus,
}

impl SignConvention {
    fn sign(self) -> i64 {
        match self {
            SignConvention::Plus => 1,
            SignConvention::Minus => -1,
        }
    }
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignConvention::Plus => "plus",
            SignConvention::Minus => "minus",
        })
    }
}

/// Outcome of a defect-one denominator identity check. Both sides are
/// multiplied through by the same polynomial `M` so they are Laurent
/// polynomials: `M = prod_{odd+}(1+e^{-b})`, times `prod_{odd+}(1-e^{-b})`
/// under the minus convention.
#[derive(Clone, Debug, Serialize)]
pub struct KwReport {
    pub algebra: String,
    pub isotropic: String,
    pub convention: SignConvention,
    pub defect: usize,
    pub cg: u64,
    pub constant: String,
    pub equal: bool,
    pub lhs: FormalSum,
    pub rhs: FormalSum,
}

/// Checks `C e^rho R = sum_w sgn(w) w(e^rho / (1 + s e^{-g}))` exactly for a
/// defect-one system and isotropic `g`, with
/// `R = prod_{even+}(1-e^{-a}) / prod_{odd+}(1+e^{-b})`.
pub fn kw_denominator_check(
    rs: &RootSystem,
    isotropic: &Root,
    convention: SignConvention,
) -> Result<KwReport> {
    let spec = rs.spec().ok_or_else(|| {
        Error::Unsupported("denominator identity needs a named root system".into())
    })?;
    let data = defect_and_cg(spec)?;
    if data.defect != 1 {
        return Err(Error::Unsupported(format!(
            "{spec} has defect {}, only defect 1 is checked",
            data.defect
        )));
    }
    let gamma = rs
        .root_of(&isotropic.weight)
        .filter(|r| r.parity == Parity::Odd && r.is_isotropic())
        .ok_or_else(|| {
            Error::Contract(format!(
                "{isotropic} is not an isotropic odd root of {spec}"
            ))
        })?;
    let constant = kw_constant(rs, data.cg, std::slice::from_ref(&gamma))?;
    let group = WeylGroup::of(rs, WEYL_GUARD)?;
    let dims = rs.dims();
    let s = convention.sign();
    let odd = rs.odd_positive();
    let mut clear = product(dims, odd.iter().map(|b| one_plus(&b.weight, 1)));
    if convention == SignConvention::Minus {
        clear = &clear * &product(dims, odd.iter().map(|b| one_plus(&b.weight, -1)));
    }
    let rho = weyl_vectors(rs).rho;

    let mut lhs = product(
        dims,
        rs.even_positive().iter().map(|a| one_plus(&a.weight, -1)),
    );
    if convention == SignConvention::Minus {
        lhs = &lhs * &product(dims, odd.iter().map(|b| one_plus(&b.weight, -1)));
    }
    let lhs = lhs.shift(&rho).scale(*constant.numer());

    let terms: Vec<Result<FormalSum>> = group
        .elements()
        .par_iter()
        .map(|w| {
            let num = clear.shift(&group.act(w, &rho));
            let den = one_plus(&group.act(w, &gamma.weight), s);
            Ok(num.div_exact(&den)?.scale(i64::from(w.sign)))
        })
        .collect();
    let mut rhs = FormalSum::zero();
    for t in terms {
        rhs = &rhs + &t?;
    }
    let rhs = rhs.scale(*constant.denom());
    let equal = lhs == rhs;
    Ok(KwReport {
        algebra: spec.to_string(),
        isotropic: gamma.weight.to_string(),
        convention,
        defect: data.defect,
        cg: data.cg,
        constant: if constant.denom().is_one() {
            constant.numer().to_string()
        } else {
            constant.to_string()
        },
        equal,
        lhs,
        rhs,
    })
}
