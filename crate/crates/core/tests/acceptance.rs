//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::Rng;
use tailseries::{
    expand, integer_tail_series, largest_index_with_h_le, lower_series, upper_series,
    verify_chung, verify_proposition, verify_theorem1, CoefficientFamily, DiscreteMeasure, Exact,
    Outcome, Scalar, SeriesConfig, SeriesKind,
};

use common::{harmonic, q, random_probability, rng, to_float};

const AC1_BUDGET: Duration = Duration::from_secs(60);
const FLOAT_TOL: f64 = 1e-9;
const SWEEP: usize = 1000;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn theorem_outcomes<S: Scalar>(
    m: &DiscreteMeasure<S>,
    family: &CoefficientFamily,
    config: &SeriesConfig,
) -> std::result::Result<Vec<Outcome>, String> {
    let report = verify_theorem1(m, family, config).map_err(|e| e.to_string())?;
    Ok(report.theorem.iter().map(|v| v.outcome).collect())
}

fn ac1() -> Check {
    let start = Instant::now();
    let exact_families = [CoefficientFamily::natural(), CoefficientFamily::primes()];
    let float_families = [
        CoefficientFamily::natural(),
        CoefficientFamily::power(0.5).unwrap(),
        CoefficientFamily::log_weighted(),
        CoefficientFamily::primes(),
    ];
    let exact_cfg = SeriesConfig::for_mode(tailseries::ModeKind::ExactRational);
    let float_cfg = SeriesConfig {
        tolerance: FLOAT_TOL,
        ..SeriesConfig::for_mode(tailseries::ModeKind::Float)
    };
    let mut g = rng(0xAC1);
    let mut runs = 0usize;
    for i in 0..SWEEP {
        let m = random_probability(&mut g, 30, 20);
        for family in &exact_families {
            let outcomes = theorem_outcomes(&m, family, &exact_cfg)?;
            ensure(outcomes.len() == 5 && outcomes.iter().all(|o| *o == Outcome::Pass), || {
                format!("exact measure {i} on {}: {outcomes:?}", family.label())
            })?;
            runs += 1;
        }
        let mf = to_float(&m);
        for family in &float_families {
            let outcomes = theorem_outcomes(&mf, family, &float_cfg)?;
            ensure(outcomes.len() == 5 && outcomes.iter().all(|o| *o == Outcome::Pass), || {
                format!("float measure {i} on {}: {outcomes:?}", family.label())
            })?;
            runs += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= AC1_BUDGET, || {
        format!("sweep took {:.1}s, budget {}s", elapsed.as_secs_f64(), AC1_BUDGET.as_secs())
    })?;
    Ok(format!("{runs} reports, all five checks pass, {:.1}s", elapsed.as_secs_f64()))
}

fn ac2() -> Check {
    let natural = CoefficientFamily::natural();
    let cap = tailseries::coeffseq::DEFAULT_CAP_EXACT;
    for n in 1..=50u64 {
        let h = harmonic(n);
        let m = DiscreteMeasure::dirac(h.clone()).unwrap();
        let lower = lower_series(&m, &natural, cap).map_err(|e| e.to_string())?;
        let idx = largest_index_with_h_le(&h, &natural, cap).map_err(|e| e.to_string())?;
        ensure(idx.index() == n && !idx.is_cap_hit(), || format!("N(H_{n}) = {idx:?}"))?;
        ensure(lower.as_finite() == Some(&h), || format!("lower(dirac(H_{n})) = {lower:?}"))?;
        ensure(m.expectation() == h, || format!("expectation of dirac(H_{n})"))?;
    }
    let m = DiscreteMeasure::dirac(q("3/2")).unwrap();
    let lower = lower_series(&m, &natural, cap).map_err(|e| e.to_string())?;
    ensure(lower.as_finite() == Some(&q("3/2")), || format!("dirac(3/2): {lower:?}"))?;
    Ok("lower = H_n = E[X] for n = 1..50".into())
}

fn ac3() -> Check {
    let natural = CoefficientFamily::natural();
    let m = DiscreteMeasure::dirac(q("2")).unwrap();
    let rep = tailseries::representation_sum(&m, &natural, 4).map_err(|e| e.to_string())?;
    let (lo, hi) = match &rep.value.kind {
        SeriesKind::Interval { lo, hi } => (lo.clone(), hi.clone()),
        other => return Err(format!("N = 4: not an interval: {other:?}")),
    };
    ensure(lo == q("11/6") && hi == Some(q("25/12")), || format!("N = 4: [{lo}, {hi:?}]"))?;
    ensure(lo <= q("2") && q("2") <= hi.clone().unwrap(), || "N = 4 misses 2".into())?;

    let mf = DiscreteMeasure::dirac(2.0f64).unwrap();
    let rep = tailseries::representation_sum(&mf, &natural, 10_000).map_err(|e| e.to_string())?;
    let (lo, hi) = match rep.value.kind {
        SeriesKind::Interval { lo, hi: Some(hi) } => (lo, hi),
        other => return Err(format!("N = 1e4: no certified interval: {other:?}")),
    };
    let width = hi - lo;
    ensure(width < 1e-3, || format!("N = 1e4 width {width:e}"))?;
    ensure(lo <= 2.0 && 2.0 <= hi, || format!("N = 1e4: [{lo}, {hi}] misses 2"))?;
    Ok(format!("[11/6, 25/12] at N = 4; width {width:.2e} at N = 1e4"))
}

fn ac4() -> Check {
    let natural = CoefficientFamily::natural();
    let m = DiscreteMeasure::new([(q("1"), q("1/2")), (q("3"), q("1/2"))]).unwrap();
    let tail = integer_tail_series(&m);
    ensure(tail.as_finite() == Some(&q("2")), || format!("integer tail {tail:?}"))?;
    ensure(m.expectation() == q("2"), || "expectation != 2".into())?;
    let chung = verify_chung(&m, 0.0);
    ensure(chung.iter().all(|v| v.outcome == Outcome::Pass), || format!("chung {chung:?}"))?;
    ensure(
        chung[1].rhs.as_finite() == Some(&q("3")) && chung[0].tight,
        || "chung sandwich is not 2 <= 2 <= 3".into(),
    )?;
    let prop = verify_proposition(&m, &natural, tailseries::coeffseq::DEFAULT_CAP_EXACT, 0.0)
        .map_err(|e| e.to_string())?;
    ensure(prop.iter().all(|v| v.outcome == Outcome::Pass), || format!("proposition {prop:?}"))?;
    let lower = prop
        .iter()
        .find(|v| v.id == "integer_tail_ge_lower")
        .and_then(|v| v.rhs.as_finite().cloned());
    ensure(lower == Some(q("9901/5040")), || format!("lower {lower:?}"))?;
    Ok("T = E[X] = 2, 2 <= 2 <= 3, 2 >= 9901/5040".into())
}

/// The first `n` primes by trial division.
fn primes_upto_count(n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    let mut c = 2u64;
    while out.len() < n {
        if (2..).take_while(|d| d * d <= c).all(|d| !c.is_multiple_of(d)) {
            out.push(c);
        }
        c += 1;
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn parse_ratio(x: &Exact) -> (BigUint, BigUint) {
    let s = x.to_string();
    match s.split_once('/') {
        Some((p, d)) => (p.parse().unwrap(), d.parse().unwrap()),
        None => (s.parse().unwrap(), BigUint::from(1u32)),
    }
}

/// Plain greedy simulation on integers scaled by a common denominator of all
/// reciprocals: bit n is set iff the running sum plus `1/a_n` stays `<= x`.
fn naive_bits(x: &Exact, recips: &[(u64, u64)]) -> Vec<u8> {
    let scale = recips
        .iter()
        .fold(BigUint::from(1u32), |l, &(_, d)| {
            let d = BigUint::from(d);
            let g = num_gcd(&l, &d);
            l * (&d / g)
        });
    let (p, qd) = parse_ratio(x);
    let target = &p * &scale;
    let mut sum = BigUint::from(0u32);
    recips
        .iter()
        .map(|&(num, den)| {
            let step = &scale / BigUint::from(den) * BigUint::from(num);
            let next = &sum + &step;
            if &qd * &next <= target {
                sum = next;
                1
            } else {
                0
            }
        })
        .collect()
}

fn num_gcd(a: &BigUint, b: &BigUint) -> BigUint {
    let (mut a, mut b) = (a.clone(), b.clone());
    while b != BigUint::from(0u32) {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn ac5() -> Check {
    const N: u64 = 1000;
    let mut g = rng(0xAC5);

    let natural: Vec<(u64, u64)> = (1..=N).map(|n| (1, n)).collect();
    let primes: Vec<(u64, u64)> = primes_upto_count(N as usize).into_iter().map(|p| (1, p)).collect();
    let mut lines = String::new();
    let mut user = Vec::new();
    for _ in 0..N {
        let (a, b) = (g.gen_range(1..=50u64), g.gen_range(1..=50u64));
        let d = gcd(a, b);
        lines.push_str(&format!("{a}/{b}\n"));
        user.push((b / d, a / d));
    }
    let families = [
        (CoefficientFamily::natural(), natural),
        (CoefficientFamily::primes(), primes),
        (
            CoefficientFamily::parse_sequence(&lines, "random").map_err(|e| e.to_string())?,
            user,
        ),
    ];

    let mut mismatches = 0usize;
    let mut first = None;
    for (family, recips) in &families {
        for i in 0..SWEEP {
            let x = common::random_value(&mut g, 10);
            let e = expand(&x, family, N).map_err(|e| e.to_string())?;
            if e.bits() != naive_bits(&x, recips) {
                mismatches += 1;
                first.get_or_insert_with(|| format!("{} x = {x} (#{i})", family.label()));
            }
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} mismatches, first {}", first.unwrap()))?;
    Ok(format!("{} expansions of {N} bits, zero mismatches", 3 * SWEEP))
}

fn ac6() -> Check {
    let mut g = rng(0xAC6);
    for i in 0..SWEEP {
        let m = common::random_finite(&mut g, 50, 20);
        ensure(m.layer_cake() == m.expectation(), || format!("measure {i}"))?;
    }
    Ok(format!("{SWEEP} measures, exact equality"))
}

fn ac7() -> Check {
    let natural = CoefficientFamily::natural();
    let mut g = rng(0xAC7);
    let mut divergent = 0;
    for i in 0..SWEEP {
        let m = random_probability(&mut g, 30, 20);
        let up = upper_series(&m, &natural, None).map_err(|e| e.to_string())?;
        let expect_div = m.atoms().iter().any(|a| !a.value.is_zero());
        ensure(up.is_divergent() == expect_div, || format!("measure {i}: {up:?}"))?;
        divergent += usize::from(expect_div);
    }
    let zero = DiscreteMeasure::new([(q("0"), q("1"))]).unwrap();
    let up = upper_series(&zero, &natural, None).map_err(|e| e.to_string())?;
    ensure(up.as_finite() == Some(&q("0")), || format!("dirac(0): {up:?}"))?;
    let tiny = DiscreteMeasure::new([(q("0"), q("1")), (q("1/1000000"), q("1/1000"))]).unwrap();
    let up = upper_series(&tiny, &natural, None).map_err(|e| e.to_string())?;
    ensure(up.is_divergent(), || "tiny atom off zero not divergent".into())?;
    Ok(format!("{divergent} divergent, dirac(0) finite 0"))
}

fn ac8() -> Check {
    let natural = CoefficientFamily::natural();
    let cfg = SeriesConfig::for_mode(tailseries::ModeKind::ExactRational);
    let scales = [q("1/3"), q("2"), q("7/2")];
    let mut g = rng(0xAC8);
    let mut measures = vec![DiscreteMeasure::new([(q("1"), q("1/2")), (q("3"), q("1/2"))]).unwrap()];
    measures.extend((0..100).map(|_| random_probability(&mut g, 30, 20)));
    for (i, m) in measures.iter().enumerate() {
        let base = verify_theorem1(m, &natural, &cfg).map_err(|e| e.to_string())?;
        let base_outcomes: Vec<_> = base.all_verdicts().map(|v| (v.id, v.outcome)).collect();
        for c in &scales {
            let scaled = m.scaled(c).map_err(|e| e.to_string())?;
            let r = verify_theorem1(&scaled, &natural, &cfg).map_err(|e| e.to_string())?;
            let outcomes: Vec<_> = r.all_verdicts().map(|v| (v.id, v.outcome)).collect();
            ensure(outcomes == base_outcomes, || format!("measure {i} scaled by {c}"))?;
            ensure(r.total_mass == c.mul(&base.total_mass), || format!("mass, measure {i}"))?;
            ensure(
                r.mass_plus_integer_tail() == c.mul(&base.mass_plus_integer_tail()),
                || format!("M + T, measure {i} scaled by {c}"),
            )?;
        }
    }
    Ok(format!("{} measures x 3 scales, verdicts unchanged", measures.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(msg) => println!("{name} PASS {msg}"),
            Err(msg) => {
                failed += 1;
                println!("{name} FAIL {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
