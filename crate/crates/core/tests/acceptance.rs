//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! default harness so the report is always printed.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::Ratio;

use super_splint::addstruct::{Catalog, ParityPolicy};
use super_splint::characters::{
    alternating_sum, denominator_even, kw_denominator_check, splint_factorization_check,
    typical_character, weyl_vectors, FormalSum, SignConvention, WeylGroup, WEYL_GUARD,
};
use super_splint::cli;
use super_splint::splints::{
    enumerate_splints, parse_fixtures, rank, verify_claim, RankPolicy, SplintConfig, Stem,
    VerdictKind, SHIPPED_FIXTURES,
};
use super_splint::{build, Root, RootSystem, Weight};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn sys(s: &str) -> RootSystem {
    build(&s.parse().unwrap()).unwrap()
}

fn config(rank_policy: RankPolicy) -> SplintConfig {
    SplintConfig {
        rank_policy,
        ..Default::default()
    }
}

fn within(limit: Duration, elapsed: Duration) -> Check {
    if elapsed <= limit {
        Ok(format!(
            "{:.2}s (limit {}s)",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ))
    } else {
        Err(format!(
            "took {:.2}s, limit {}s",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ))
    }
}

/// Every two-block partition with the smallest root in stem 1, in order of
/// the assignment vector over ascending roots.
fn naive_scan(rs: &RootSystem, cfg: &SplintConfig) -> Vec<(BTreeSet<Weight>, String, String)> {
    let roots: Vec<Root> = rs.positive().iter().rev().cloned().collect();
    let n = roots.len();
    let full = rank(&roots).unwrap();
    let opts = cfg.embed_options();
    let mut found = Vec::new();
    for mask in 0u64..1 << n {
        if mask & 1 == 0 || mask == (1 << n) - 1 {
            continue;
        }
        let side = |inside: bool| -> Vec<Root> {
            (0..n)
                .filter(|&i| (mask >> i & 1 == 1) == inside)
                .map(|i| roots[i].clone())
                .collect()
        };
        let (a, b) = (side(true), side(false));
        if cfg.rank_policy == RankPolicy::PaperStrict
            && (rank(&a).unwrap() >= full || rank(&b).unwrap() >= full)
        {
            continue;
        }
        let x = Stem::recognize(a.clone(), Catalog::standard(), opts).unwrap();
        let y = Stem::recognize(b, Catalog::standard(), opts).unwrap();
        if let (Some(x), Some(y)) = (x, y) {
            let key: Vec<u8> = (0..n).map(|i| u8::from(mask >> i & 1 == 0)).collect();
            let set = a.into_iter().map(|r| r.weight).collect();
            found.push((key, (set, x.stem_type.to_string(), y.stem_type.to_string())));
        }
    }
    found.sort_by(|p, q| p.0.cmp(&q.0));
    found.into_iter().map(|(_, v)| v).collect()
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut total = 0;
    for s in [
        "A1", "A2", "B2", "C2", "2A1", "A(1,0)", "B(0,1)", "B(0,2)", "B(1,1)",
    ] {
        let rs = sys(s);
        if rs.positive().len() > 9 {
            return Err(format!("{s} has more than 9 positive roots"));
        }
        for policy in [RankPolicy::PaperStrict, RankPolicy::None] {
            let cfg = config(policy);
            let got: Vec<_> = enumerate_splints(&rs, &cfg)
                .map_err(|e| e.to_string())?
                .splints
                .into_iter()
                .map(|sp| {
                    let set = sp.stem1.roots.iter().map(|r| r.weight.clone()).collect();
                    (
                        set,
                        sp.stem1.stem_type.to_string(),
                        sp.stem2.stem_type.to_string(),
                    )
                })
                .collect();
            let want = naive_scan(&rs, &cfg);
            if got != want {
                return Err(format!(
                    "{s} {policy:?}: {} splints vs {} from the scan",
                    got.len(),
                    want.len()
                ));
            }
            total += got.len();
        }
    }
    within(Duration::from_secs(5), start.elapsed())
        .map(|t| format!("9 systems, 2 policies, {total} splints, {t}"))
}

fn claim_fixtures() -> Check {
    let start = Instant::now();
    let fixtures = parse_fixtures(SHIPPED_FIXTURES).map_err(|e| e.to_string())?;
    for id in ["example-B(4,4)-as-printed", "example-B(3,2)-even"] {
        if !fixtures.iter().any(|f| f.id == id) {
            return Err(format!("fixture {id} missing"));
        }
    }
    let printed = fixtures
        .iter()
        .find(|f| f.id == "example-B(4,4)-as-printed")
        .unwrap();
    if printed.ambient != Some([3, 2]) {
        return Err("B(4,4) example is not in the printed 3 + 2 coordinates".into());
    }
    let cfg = SplintConfig::default();
    let mut counts = [0; 3];
    for f in &fixtures {
        let v = verify_claim(f, &cfg).map_err(|e| format!("{}: {e}", f.id))?;
        let rs = f.system().map_err(|e| e.to_string())?;
        match v.verdict {
            VerdictKind::Confirmed => {
                let w = v
                    .witness
                    .ok_or(format!("{}: CONFIRMED without witness", f.id))?;
                w.validate(rs.positive(), &cfg)
                    .map_err(|e| format!("{}: {e}", f.id))?;
                counts[0] += 1;
            }
            VerdictKind::Partial => {
                if v.witness.is_none() || v.holds_under.is_none() {
                    return Err(format!("{}: PARTIAL without witness", f.id));
                }
                counts[1] += 1;
            }
            VerdictKind::Refuted => {
                if v.certificate.is_none() {
                    return Err(format!("{}: REFUTED without certificate", f.id));
                }
                counts[2] += 1;
            }
        }
    }
    let t = within(Duration::from_secs(60), start.elapsed())?;
    Ok(format!(
        "{} fixtures: {} confirmed, {} partial, {} refuted, {t}",
        fixtures.len(),
        counts[0],
        counts[1],
        counts[2]
    ))
}

fn case3_ground_truth() -> Check {
    let cfg = config(RankPolicy::None);
    for n in 1..=3 {
        let rs = sys(&format!("B(0,{n})"));
        let even: BTreeSet<Weight> = rs.even_positive().into_iter().map(|r| r.weight).collect();
        let odd: BTreeSet<Weight> = rs.odd_positive().into_iter().map(|r| r.weight).collect();
        // Oracle sets: 2d_i and d_i +- d_j even, d_i odd.
        let dims = rs.dims();
        let d = |i: usize| Weight::d_basis(dims, i);
        let mut want_even = BTreeSet::new();
        for i in 0..n {
            want_even.insert(d(i).scale_int(2));
            for j in i + 1..n {
                want_even.insert(d(i).add(&d(j)).unwrap());
                want_even.insert(d(i).sub(&d(j)).unwrap());
            }
        }
        let want_odd: BTreeSet<Weight> = (0..n).map(d).collect();
        if even != want_even || odd != want_odd {
            return Err(format!("B(0,{n}) roots differ from the stated sets"));
        }
        let found = enumerate_splints(&rs, &cfg).map_err(|e| e.to_string())?;
        let odd_type = if n == 1 {
            "A1 (odd)".to_string()
        } else {
            format!("{n}A1 (odd)")
        };
        let hit = found.splints.iter().any(|s| {
            let stems = [&s.stem1, &s.stem2];
            let set = |k: usize| {
                stems[k]
                    .roots
                    .iter()
                    .map(|r| r.weight.clone())
                    .collect::<BTreeSet<_>>()
            };
            (0..2).any(|k| {
                set(k) == want_even
                    && set(1 - k) == want_odd
                    && stems[k].stem_type.to_string() == format!("C{n}")
                    && stems[1 - k].stem_type.to_string() == odd_type
            })
        });
        if !hit {
            return Err(format!(
                "B(0,{n}): no splint (C{n} | {odd_type}) on the stated sets"
            ));
        }
        let fixture = parse_fixtures(SHIPPED_FIXTURES)
            .unwrap()
            .into_iter()
            .find(|f| f.id == format!("case3-B(0,{n})"))
            .ok_or(format!("fixture case3-B(0,{n}) missing"))?;
        let v = verify_claim(&fixture, &cfg).map_err(|e| e.to_string())?;
        if v.verdict != VerdictKind::Confirmed {
            return Err(format!(
                "case3-B(0,{n}) is {} under rank-policy none",
                v.verdict
            ));
        }
    }
    Ok("B(0,1), B(0,2), B(0,3): (C_n | nA1 odd) found and CONFIRMED under rank-policy none".into())
}

fn factorization() -> Check {
    let specs = [
        "A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2", "2A1", "A2+A1", "A(1,0)",
        "A(1,1)", "A(2,1)", "A(2,2)", "A(3,1)", "B(1,1)", "B(1,2)", "B(2,1)", "B(2,2)", "B(3,1)",
        "B(1,3)", "B(0,1)", "B(0,2)", "B(0,3)", "C(2)", "C(3)", "C(4)", "D(2,1)", "D(2,2)",
        "D(3,1)", "D(3,2)",
    ];
    let mut checked = 0;
    let mut systems = 0;
    for s in specs {
        let even = sys(s).even_part();
        if even.positive().len() > 12 {
            continue;
        }
        systems += 1;
        for policy in [RankPolicy::PaperStrict, RankPolicy::None] {
            let cfg = SplintConfig {
                parity: ParityPolicy::Ignore,
                ..config(policy)
            };
            for sp in enumerate_splints(&even, &cfg)
                .map_err(|e| e.to_string())?
                .splints
            {
                if !splint_factorization_check(&even, &sp).map_err(|e| e.to_string())? {
                    return Err(format!("{s}: identity fails for {sp}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} splints on {systems} even parts, all exact"
    ))
}

fn weyl_denominator() -> Check {
    for s in ["A1", "A2", "B2", "C2", "A1+C1", "B2+C1"] {
        let rs = sys(s);
        let g = WeylGroup::of(&rs, WEYL_GUARD).map_err(|e| e.to_string())?;
        if g.len() > 16 {
            return Err(format!("{s}: |W| = {}", g.len()));
        }
        if alternating_sum(&g, &weyl_vectors(&rs).rho0) != denominator_even(&rs) {
            return Err(format!("{s}: identity fails"));
        }
    }
    Ok("A1, A2, B2, C2, A1+C1, B2+C1 exact".into())
}

fn kw_defect_one() -> Check {
    let start = Instant::now();
    for (s, gamma, cg) in [
        ("A(0,0)", "e1-d1", 1),
        ("C(2)", "e1-d1", 1),
        ("B(1,1)", "d1-e1", 2),
    ] {
        let rs = sys(s);
        let g = rs.parse_root(gamma).map_err(|e| e.to_string())?;
        let r = kw_denominator_check(&rs, &g, SignConvention::Plus).map_err(|e| e.to_string())?;
        if !r.equal || r.cg != cg || r.constant != cg.to_string() {
            return Err(format!(
                "{s}: equal = {}, C_g = {}, C = {}",
                r.equal, r.cg, r.constant
            ));
        }
    }
    within(Duration::from_secs(5), start.elapsed())
        .map(|t| format!("gl(1|1) C=1, C(2) C=1, B(1,1) C=2 exact, {t}"))
}

/// Weights of the osp(1|2) module with highest weight `k d1`: sl(2)
/// strings of spin `k/2` and `(k-1)/2`.
fn osp12_weights(k: i64) -> FormalSum {
    let mut s = FormalSum::zero();
    for top in [k, k - 1] {
        let mut m = top;
        while m >= -top && top >= 0 {
            s.add_term(Weight::from_ints(&[], &[m]), 1);
            m -= 2;
        }
    }
    s
}

/// Weyl dimension formula for the even part: prod (l+rho0, a) / (rho0, a).
fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> i64 {
    let rho0 = weyl_vectors(rs).rho0;
    let shifted = lambda.add(&rho0).unwrap();
    let d = rs
        .even_positive()
        .iter()
        .fold(Ratio::from_integer(1i64), |acc, a| {
            acc * shifted.pairing(&a.weight).unwrap() / rho0.pairing(&a.weight).unwrap()
        });
    assert!(d.is_integer());
    d.to_integer()
}

fn typical_characters() -> Check {
    let rs = sys("B(0,1)");
    for k in 1..=3 {
        let ch =
            typical_character(&rs, &Weight::from_ints(&[], &[k])).map_err(|e| e.to_string())?;
        if ch != osp12_weights(k) || ch.total() != 2 * k + 1 {
            return Err(format!("B(0,1), lambda = {k}d1: {ch}"));
        }
    }
    let rs = sys("A(1,0)");
    for (a, b, c) in [(2, 1, 0), (3, 0, 1)] {
        let lambda = Weight::from_ints(&[a, b], &[c]);
        let ch = typical_character(&rs, &lambda).map_err(|e| e.to_string())?;
        let want = (1i64 << rs.odd_positive().len()) * weyl_dimension(&rs, &lambda);
        if ch.total() != want {
            return Err(format!(
                "A(1,0), lambda = {lambda}: dim {} vs {want}",
                ch.total()
            ));
        }
    }
    Ok("B(0,1) at d1, 2d1, 3d1 (dims 3, 5, 7); A(1,0) at (2,1|0), (3,0|1) (dims 8, 16)".into())
}

fn determinism() -> Check {
    let run = |args: &[&str], threads: usize| {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("super-splint").chain(args.iter().copied());
        let code = cli::run(argv, Some(threads), &mut out, &mut err);
        (code, out, err)
    };
    let n = std::thread::available_parallelism().map_or(4, |n| n.get().max(4));
    for args in [
        &["verify-paper", "--json"][..],
        &["verify-paper"][..],
        &["splints", "B(2,1)", "--rank-policy", "none", "--json"][..],
        &[
            "splints",
            "C(3)",
            "--even-part",
            "--rank-policy",
            "none",
            "--list",
        ][..],
    ] {
        if run(args, 1) != run(args, n) {
            return Err(format!(
                "{} differs between 1 and {n} workers",
                args.join(" ")
            ));
        }
    }
    Ok(format!(
        "verify-paper and splints byte-identical with 1 and {n} workers"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("oracle equivalence", oracle_equivalence),
        ("claim fixtures", claim_fixtures),
        ("case 3 ground truth", case3_ground_truth),
        ("splint factorization", factorization),
        ("Weyl denominator", weyl_denominator),
        ("defect-one denominator identity", kw_defect_one),
        ("typical characters", typical_characters),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
