use std::collections::BTreeSet;

use super::*;
use crate::rootsys::build;

fn sys(s: &str) -> RootSystem {
    build(&s.parse().unwrap()).unwrap()
}

fn loose() -> SplintConfig {
    SplintConfig {
        rank_policy: RankPolicy::None,
        ..Default::default()
    }
}

fn stem_sets(e: &Enumeration) -> Vec<(BTreeSet<String>, String)> {
    e.splints
        .iter()
        .map(|s| {
            (
                s.stem1.roots.iter().map(|r| r.to_string()).collect(),
                s.label(),
            )
        })
        .collect()
}

/// Scans every partition with the smallest root in stem 1.
fn naive(rs: &RootSystem, cfg: &SplintConfig) -> Vec<(BTreeSet<String>, String)> {
    let roots: Vec<Root> = rs.positive().iter().rev().cloned().collect();
    let n = roots.len();
    let full = rank(&roots).unwrap();
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        if mask & 1 == 0 || mask == (1 << n) - 1 {
            continue;
        }
        let pick = |inside: bool| -> Vec<Root> {
            (0..n)
                .filter(|&i| (mask >> i & 1 == 1) == inside)
                .map(|i| roots[i].clone())
                .collect()
        };
        let (a, b) = (pick(true), pick(false));
        if cfg.rank_policy == RankPolicy::PaperStrict
            && (rank(&a).unwrap() >= full || rank(&b).unwrap() >= full)
        {
            continue;
        }
        let cat = Catalog::standard();
        let opts = cfg.embed_options();
        if let (Some(x), Some(y)) = (
            Stem::recognize(a.clone(), cat, opts).unwrap(),
            Stem::recognize(b, cat, opts).unwrap(),
        ) {
            // Order by assignment vector: root i in stem 1 sorts first.
            let key: Vec<u8> = (0..n)
                .map(|i| if mask >> i & 1 == 1 { 0 } else { 1 })
                .collect();
            out.push((
                key,
                (
                    a.iter().map(|r| r.to_string()).collect(),
                    Splint { stem1: x, stem2: y }.label(),
                ),
            ));
        }
    }
    out.sort_by(|p, q| p.0.cmp(&q.0));
    out.into_iter().map(|(_, v)| v).collect()
}

#[test]
fn rank_examples() {
    assert_eq!(rank(sys("A2").positive()).unwrap(), 2);
    assert_eq!(rank(sys("B(0,1)").positive()).unwrap(), 1);
    assert_eq!(rank(sys("B(1,1)").positive()).unwrap(), 2);
    assert!(rank(&[]).is_err());
}

#[test]
fn a2_splints() {
    let e = enumerate_splints(&sys("A2"), &loose()).unwrap();
    assert!(e.complete);
    assert_eq!(e.splints.len(), 3);
    assert!(e
        .splints
        .iter()
        .all(|s| s.label() == "(2A1 | A1)" || s.label() == "(A1 | 2A1)"));
    let strict = enumerate_splints(&sys("A2"), &SplintConfig::default()).unwrap();
    assert!(strict.splints.is_empty());
}

#[test]
fn b01_splint() {
    let e = enumerate_splints(&sys("B(0,1)"), &loose()).unwrap();
    assert_eq!(e.splints.len(), 1);
    let s = &e.splints[0];
    assert_eq!(s.stem1.roots[0].to_string(), "d1");
    assert_eq!(s.label(), "(A1 (odd) | C1)");
}

#[test]
fn a1_has_no_splints() {
    assert!(enumerate_splints(&sys("A1"), &loose())
        .unwrap()
        .splints
        .is_empty());
}

#[test]
fn pruned_matches_naive() {
    for spec in [
        "A2", "B2", "C2", "2A1", "A(1,0)", "B(0,1)", "B(0,2)", "B(1,1)", "A3", "G2",
    ] {
        for cfg in [loose(), SplintConfig::default()] {
            let rs = sys(spec);
            let e = enumerate_splints(&rs, &cfg).unwrap();
            assert_eq!(
                stem_sets(&e),
                naive(&rs, &cfg),
                "{spec} {:?}",
                cfg.rank_policy
            );
            for s in &e.splints {
                s.validate(rs.positive(), &cfg).unwrap();
            }
        }
    }
}

#[test]
fn result_limit_truncates_in_order() {
    let rs = sys("B(1,1)");
    let all = enumerate_splints(&rs, &loose()).unwrap();
    let cfg = SplintConfig {
        max_results: 2,
        ..loose()
    };
    let some = enumerate_splints(&rs, &cfg).unwrap();
    assert!(!some.complete);
    assert_eq!(stem_sets(&some), stem_sets(&all)[..2]);
}

#[test]
fn thread_count_does_not_change_output() {
    let rs = sys("B(2,1)");
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let e = enumerate_splints(&rs, &loose()).unwrap();
            serde_json::to_string(&e.splints).unwrap()
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn guard_refuses_large_systems() {
    let err = enumerate_splints(&sys("B(4,4)"), &SplintConfig::default()).unwrap_err();
    assert!(err.to_string().contains("40"));
    assert!(SplintConfig {
        max_results: 0,
        ..Default::default()
    }
    .validate()
    .is_err());
}

#[test]
fn bosonic_fermionic_examples() {
    let opts = Default::default();
    let s = bosonic_fermionic_splint(&sys("A(1,0)"), opts)
        .unwrap()
        .unwrap();
    assert_eq!(s.stem1.roots.len(), 1);
    assert_eq!(s.stem2.roots.len(), 2);
    let s = bosonic_fermionic_splint(&sys("B(0,1)"), opts)
        .unwrap()
        .unwrap();
    assert_eq!(s.stem1.roots[0].to_string(), "2d1");
    assert_eq!(s.stem2.roots[0].to_string(), "d1");
    assert!(bosonic_fermionic_splint(&sys("B2"), opts)
        .unwrap()
        .is_none());
}

fn fixture(algebra: &str, a: &str, b: &str) -> ClaimFixture {
    ClaimFixture {
        id: "t".into(),
        algebra: algebra.parse().unwrap(),
        part: Part::Full,
        positive_roots: None,
        ambient: None,
        claimed: [a.into(), b.into()],
        source_ref: String::new(),
    }
}

#[test]
fn verify_examples() {
    let v = verify_claim(&fixture("B(0,2)", "C2", "2A1"), &loose()).unwrap();
    assert_eq!(v.verdict, VerdictKind::Confirmed);
    let w = v.witness.unwrap();
    w.validate(sys("B(0,2)").positive(), &loose()).unwrap();

    let v = verify_claim(&fixture("B(0,2)", "C2", "2A1"), &SplintConfig::default()).unwrap();
    assert_eq!(v.verdict, VerdictKind::Partial);
    assert_eq!(v.holds_under.as_deref(), Some("rank-policy none"));

    let v = verify_claim(&fixture("A(1,0)", "@even", "@odd"), &loose()).unwrap();
    assert_eq!(v.verdict, VerdictKind::Confirmed);

    let v = verify_claim(&fixture("A(1,1)", "A(1,1)", "A(0,0)"), &loose()).unwrap();
    assert_eq!(v.verdict, VerdictKind::Refuted);
    let c = v.certificate.unwrap();
    assert_eq!(c.examined, 0);
    assert!(c.reason.contains("size mismatch"));
}

#[test]
fn shipped_fixtures_all_get_verdicts() {
    let fixtures = parse_fixtures(SHIPPED_FIXTURES).unwrap();
    assert!(fixtures.len() >= 20);
    for f in &fixtures {
        let v = verify_claim(f, &SplintConfig::default()).unwrap();
        let rs = f.system().unwrap();
        match v.verdict {
            VerdictKind::Confirmed => v
                .witness
                .unwrap()
                .validate(rs.positive(), &SplintConfig::default())
                .unwrap(),
            VerdictKind::Partial => assert!(v.witness.is_some() && v.holds_under.is_some()),
            VerdictKind::Refuted => assert!(v.certificate.is_some()),
        }
    }
}

#[test]
fn confirmed_claims_appear_in_enumeration() {
    // Containment of verified even-part claims in the enumerated splints.
    for f in parse_fixtures(SHIPPED_FIXTURES).unwrap() {
        let rs = f.system().unwrap();
        if f.part != Part::Even || rs.positive().len() > 12 {
            continue;
        }
        let cfg = loose();
        let v = verify_claim(&f, &cfg).unwrap();
        if v.verdict != VerdictKind::Confirmed {
            continue;
        }
        let w: BTreeSet<String> = v
            .witness
            .unwrap()
            .stem1
            .roots
            .iter()
            .map(|r| r.to_string())
            .collect();
        let all = enumerate_splints(&rs, &cfg).unwrap();
        assert!(stem_sets(&all).iter().any(|(s, _)| *s == w), "{}", f.id);
    }
}
