//! Root system specifications and their string grammar.
//!
//! Grammar: `A(m,n)`, `B(m,n)`, `B(0,n)`, `C(k)` (the superalgebra `C(n+1)`
//! with `k = n+1 >= 2`), `D(m,n)`, classical `A_r`/`Ar`, `B_r`, `C_r`, `D_r`,
//! `G2`, and sums with multiplicities such as `2A2+4A1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootSystemSpec {
    /// gl(m+1|n+1).
    ASuper {
        m: usize,
        n: usize,
    },
    /// osp(2m+1|2n), m >= 1.
    BSuper {
        m: usize,
        n: usize,
    },
    /// osp(1|2n).
    B0n {
        n: usize,
    },
    /// C(n+1) = osp(2|2n); `n` counts the delta coordinates.
    CSuper {
        n: usize,
    },
    /// osp(2m|2n), m >= 2.
    DSuper {
        m: usize,
        n: usize,
    },
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
    DirectSum(Vec<RootSystemSpec>),
}

use RootSystemSpec::*;

impl RootSystemSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Spec(msg));
        match *self {
            BSuper { m, n } if m < 1 || n < 1 => {
                bad(format!("B(m,n) needs m >= 1, n >= 1 (got {m},{n})"))
            }
            B0n { n } if n < 1 => bad("B(0,n) needs n >= 1".into()),
            CSuper { n } if n < 1 => bad("C(n+1) needs n >= 1".into()),
            DSuper { m, n } if m < 2 || n < 1 => {
                bad(format!("D(m,n) needs m >= 2, n >= 1 (got {m},{n})"))
            }
            B(r) | C(r) if r < 1 => bad(format!("{self} needs rank >= 1")),
            D(r) if r < 2 => bad(format!("D_r needs r >= 2 (got {r})")),
            DirectSum(ref parts) => {
                if parts.is_empty() {
                    return bad("empty direct sum".into());
                }
                parts.iter().try_for_each(RootSystemSpec::validate)
            }
            _ => Ok(()),
        }
    }

    pub fn is_super(&self) -> bool {
        match self {
            ASuper { .. } | BSuper { .. } | B0n { .. } | CSuper { .. } | DSuper { .. } => true,
            DirectSum(parts) => parts.iter().any(RootSystemSpec::is_super),
            _ => false,
        }
    }

    /// The summands of a direct sum, or the spec itself.
    pub fn summands(&self) -> Vec<RootSystemSpec> {
        match self {
            DirectSum(parts) => parts.iter().flat_map(|p| p.summands()).collect(),
            other => vec![other.clone()],
        }
    }

    /// Number of positive roots, from the closed-form counts.
    pub fn positive_count(&self) -> usize {
        match *self {
            ASuper { m, n } => m * (m + 1) / 2 + n * (n + 1) / 2 + (m + 1) * (n + 1),
            BSuper { m, n } => m * m + n * n + n + 2 * m * n,
            B0n { n } => n * n + n,
            CSuper { n } => n * n + 2 * n,
            DSuper { m, n } => m * (m - 1) + n * n + 2 * m * n,
            A(r) => r * (r + 1) / 2,
            B(r) | C(r) => r * r,
            D(r) => r * (r - 1),
            G2 => 6,
            DirectSum(ref parts) => parts.iter().map(RootSystemSpec::positive_count).sum(),
        }
    }

    /// Builds a spec from summands; a single summand is returned unwrapped.
    pub fn sum_of(mut parts: Vec<RootSystemSpec>) -> RootSystemSpec {
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            DirectSum(parts)
        }
    }

    fn fmt_single(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ASuper { m, n } => write!(f, "A({m},{n})"),
            BSuper { m, n } => write!(f, "B({m},{n})"),
            B0n { n } => write!(f, "B(0,{n})"),
            CSuper { n } => write!(f, "C({})", n + 1),
            DSuper { m, n } => write!(f, "D({m},{n})"),
            A(r) => write!(f, "A{r}"),
            B(r) => write!(f, "B{r}"),
            C(r) => write!(f, "C{r}"),
            D(r) => write!(f, "D{r}"),
            G2 => write!(f, "G2"),
            DirectSum(_) => unreachable!(),
        }
    }
}

impl fmt::Display for RootSystemSpec {
    /// Adjacent equal summands are collapsed into a multiplicity prefix.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.summands();
        let mut i = 0;
        let mut first = true;
        while i < parts.len() {
            let mut j = i + 1;
            while j < parts.len() && parts[j] == parts[i] {
                j += 1;
            }
            if !first {
                f.write_str("+")?;
            }
            if j - i > 1 {
                write!(f, "{}", j - i)?;
            }
            parts[i].fmt_single(f)?;
            first = false;
            i = j;
        }
        Ok(())
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(Error::Parse("empty root system spec".into()));
        }
        let mut parts = Vec::new();
        for term in src.split('+') {
            let (mult, body) = split_multiplicity(term)
                .ok_or_else(|| Error::Parse(format!("bad term {term:?} in {s:?}")))?;
            let single = parse_single(body).map_err(|e| match e {
                Error::Parse(msg) => Error::Parse(format!("{msg} (in {s:?})")),
                other => other,
            })?;
            for _ in 0..mult {
                parts.push(single.clone());
            }
        }
        let spec = RootSystemSpec::sum_of(parts);
        spec.validate()?;
        Ok(spec)
    }
}

fn split_multiplicity(term: &str) -> Option<(usize, &str)> {
    let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
    let body = &term[digits..];
    if body.is_empty() {
        return None;
    }
    let mult = if digits == 0 {
        1
    } else {
        term[..digits].parse().ok().filter(|&k: &usize| k >= 1)?
    };
    Some((mult, body))
}

fn parse_single(body: &str) -> Result<RootSystemSpec> {
    let err = || Error::Parse(format!("unknown root system {body:?}"));
    if body == "G2" || body == "G_2" {
        return Ok(G2);
    }
    let mut chars = body.chars();
    let family = chars.next().ok_or_else(err)?;
    let rest = chars.as_str();
    if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let nums: Vec<usize> = inner
            .split(',')
            .map(|x| x.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| err())?;
        return match (family, nums.as_slice()) {
            ('A', &[m, n]) => Ok(ASuper { m, n }),
            ('B', &[0, n]) => Ok(B0n { n }),
            ('B', &[m, n]) => Ok(BSuper { m, n }),
            ('D', &[m, n]) => Ok(DSuper { m, n }),
            ('C', &[k]) if k >= 2 => Ok(CSuper { n: k - 1 }),
            ('C', &[k]) => Err(Error::Spec(format!("C(n+1) needs n+1 >= 2 (got C({k}))"))),
            _ => Err(err()),
        };
    }
    let rank: usize = rest
        .strip_prefix('_')
        .unwrap_or(rest)
        .parse()
        .map_err(|_| err())?;
    match family {
        'A' => Ok(A(rank)),
        'B' => Ok(B(rank)),
        'C' => Ok(C(rank)),
        'D' => Ok(D(rank)),
        _ => Err(err()),
    }
}

impl Serialize for RootSystemSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RootSystemSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RootSystemSpec {
        s.parse().unwrap()
    }

    #[test]
    fn grammar() {
        assert_eq!(p("A(2,1)"), ASuper { m: 2, n: 1 });
        assert_eq!(p("B(0,3)"), B0n { n: 3 });
        assert_eq!(p("B(1,1)"), BSuper { m: 1, n: 1 });
        assert_eq!(p("C(2)"), CSuper { n: 1 });
        assert_eq!(p("D(4,1)"), DSuper { m: 4, n: 1 });
        assert_eq!(p("A_3"), A(3));
        assert_eq!(p("G2"), G2);
        assert_eq!(
            p("2A2+4A1"),
            DirectSum(vec![A(2), A(2), A(1), A(1), A(1), A(1)])
        );
        assert_eq!(p("B2 + C1"), DirectSum(vec![B(2), C(1)]));
    }

    #[test]
    fn rejects_invalid() {
        for s in [
            "Z(1,1)", "", "C(1)", "B_0", "D(1,1)", "D_1", "A(1)", "0A1", "+A1", "A",
        ] {
            assert!(s.parse::<RootSystemSpec>().is_err(), "{s} should not parse");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "A(1,0)",
            "B(0,2)",
            "C(3)",
            "D(2,1)",
            "2A2+4A1",
            "B3+C2",
            "G2",
            "A(1,1)+A1",
        ] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn closed_form_counts() {
        assert_eq!(p("A(2,1)").positive_count(), 4 + 6);
        assert_eq!(p("B(1,1)").positive_count(), 5);
        assert_eq!(p("B(4,4)").positive_count(), 32 + 36);
        assert_eq!(p("G2").positive_count(), 6);
    }
}
