//! The acceptance criteria, one line each. Runs with `harness = false` so the
//! report is printed whether or not the run passes.
//!
//! Criterion 12 is a known failure: the length law does not hold on 48 triples
//! of the enumeration (see the README). It still prints FAIL. The binary exits
//! nonzero when any other criterion fails, when criterion 12 unexpectedly
//! passes, or on any failure at all with `CHERNLOCI_STRICT=1`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use chernloci::harness::{
    check_cubic_core, check_idempotent_pfaffian, check_intro_identities, check_jacobi_trudi, check_schur_pfaffian,
    collapse_family, delta_family, dominant_family_a, dominant_family_c, inflation_family, partitions_padded,
    pf_c_family, pf_d_family, q_family, CheckReport, Collapse, InflationVariant,
};
use chernloci::triples::{
    build, build_type_c, enumerate_inputs, signed_perm_length, signed_permutation_c, Family, TripleError, TripleInput,
};
use chernloci::Result;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into() }
    }

    /// Folds reports; the detail names the first failure or counts instances.
    fn from_reports(reports: &[CheckReport]) -> Self {
        match reports.iter().find(|r| !r.passed) {
            Some(r) => {
                let w = r.witness.as_ref().map(|w| format!(" lhs={} rhs={}", w.lhs, w.rhs)).unwrap_or_default();
                Outcome::new(false, format!("{} failed at {}{w}", r.name, r.parameters))
            }
            None => {
                let counts: Vec<String> = reports
                    .iter()
                    .map(|r| match r.parameters.get("instances") {
                        Some(n) => format!("{}: {n}", r.name),
                        None => r.name.clone(),
                    })
                    .collect();
                Outcome::new(true, counts.join(", "))
            }
        }
    }
}

fn worked_triple() -> Result<Outcome> {
    let t = build(&TripleInput::c(&[1, 3, 5, 6, 7, 9], &[9, 7, 6, 5, 2, 2], &[6, 3, -2, -5, -7, -9]))?;
    let ok =
        t.a == Some(3) && t.r == 3 && t.rho == [0, 1, 2, 3, 3, 1, 0, 0, 0] && t.lambda == [14, 10, 9, 5, 5, 4, 1, 1, 1];
    Ok(Outcome::new(ok, format!("a={:?} r={} rho={:?} lambda={:?}", t.a, t.r, t.rho, t.lambda)))
}

fn signed_word_and_rejection() -> Result<Outcome> {
    let t = build_type_c(&TripleInput::c(&[2, 3, 5, 6, 7], &[7, 4, 3, 3, 2], &[4, 4, -1, -7, -7]))?;
    let w = signed_permutation_c(&t)?;
    let rejected = build_type_c(&TripleInput::c(&[2, 3, 4, 5, 7], &[7, 4, 4, 3, 2], &[4, 4, -1, -1, -7]));
    let names_3 = matches!(rejected, Err(TripleError::Condition3 { .. }));
    let why = match &rejected {
        Err(e) => e.to_string(),
        Ok(_) => "accepted".into(),
    };
    Ok(Outcome::new(w.word == [8, 3, -2, -6, 1, 7, -5, -4] && names_3, format!("w={:?}; rejected: {why}", w.word)))
}

fn within(limit_secs: u64, elapsed: Duration, mut o: Outcome) -> Outcome {
    if elapsed > Duration::from_secs(limit_secs) {
        o.passed = false;
        o.detail = format!("over the {limit_secs} s limit; {}", o.detail);
    }
    o
}

fn jacobi_trudi_and_q() -> Result<Outcome> {
    let mut reports = Vec::new();
    // every partition of size <= 8, including those longer than m
    for len in 1..=8 {
        for lambda in partitions_padded(len, 8).into_iter().filter(|l| l[len - 1] > 0) {
            for m in 1..=3 {
                reports.push(check_jacobi_trudi(&lambda, m)?);
            }
        }
    }
    let jt = CheckReport::all("jacobi_trudi", serde_json::json!({ "max_size": 8, "max_vars": 3 }), reports);
    Ok(Outcome::from_reports(&[jt, q_family(6, 3)?]))
}

/// `ℓ(w(τ)) = |λ(τ)|` over every valid type C triple in the box.
fn length_law() -> Result<Outcome> {
    let mut valid = 0;
    let mut failures = Vec::new();
    for input in enumerate_inputs(Family::C, 3, 4, 5) {
        let Ok(t) = build_type_c(&input) else { continue };
        valid += 1;
        let len = signed_perm_length(&signed_permutation_c(&t)?);
        if len as i64 != t.size() {
            failures.push((input, len, t.size()));
        }
    }
    if failures.is_empty() {
        return Ok(Outcome::new(true, format!("{valid} valid triples")));
    }
    // the smallest counterexample in the enumeration order
    let (input, len, size) = &failures[0];
    Ok(Outcome::new(
        false,
        format!(
            "{} of {valid} valid triples disagree; e.g. (({}),({}),({})): length {len}, |lambda| {size}",
            failures.len(),
            join(&input.first),
            join(&input.p),
            join(&input.q),
        ),
    ))
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn timed(f: impl FnOnce() -> Result<Outcome>) -> (Outcome, Duration) {
    let start = Instant::now();
    let o = f().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
    (o, start.elapsed())
}

/// Criteria expected to fail, by number.
const KNOWN_FAILURES: &[usize] = &[12];

type Criterion = (&'static str, Option<u64>, Box<dyn FnOnce() -> Result<Outcome>>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("worked triple", None, Box::new(worked_triple)),
        ("signed word and condition (3) rejection", None, Box::new(signed_word_and_rejection)),
        (
            "raising operators vs determinant, l <= 4, |lambda| <= 10",
            Some(10),
            Box::new(|| Ok(Outcome::from_reports(&[delta_family(4, 10)?]))),
        ),
        (
            "Schur Pfaffian, 2 <= n <= 6",
            Some(30),
            Box::new(|| Ok(Outcome::from_reports(&(2..=6).map(check_schur_pfaffian).collect::<Vec<_>>()))),
        ),
        (
            "idempotent Pfaffian n <= 4 and cubic identity",
            Some(30),
            Box::new(|| {
                let mut r: Vec<_> = (2..=4).map(check_idempotent_pfaffian).collect();
                r.push(check_cubic_core());
                Ok(Outcome::from_reports(&r))
            }),
        ),
        (
            "raising operators vs Pfaffian, C and D",
            Some(60),
            Box::new(|| Ok(Outcome::from_reports(&[pf_c_family(5, 12)?, pf_d_family(3, 8)?]))),
        ),
        (
            "inflation, 100 seeded instances per variant",
            None,
            Box::new(|| {
                let theta = inflation_family(InflationVariant::Theta, 100, 7)?;
                let eta = inflation_family(InflationVariant::Eta, 100, 7)?;
                Ok(Outcome::from_reports(&[theta, eta]))
            }),
        ),
        (
            "collapse properties, l <= 4, |lambda| <= 10",
            None,
            Box::new(|| {
                let r = [Collapse::RhoZero, Collapse::FullRho, Collapse::ZZero, Collapse::EZero]
                    .into_iter()
                    .map(|c| collapse_family(c, 4, 10))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Outcome::from_reports(&r))
            }),
        ),
        ("Jacobi-Trudi and Q-function oracles", None, Box::new(jacobi_trudi_and_q)),
        (
            "Chern-root identities (a), (b), (c)",
            None,
            Box::new(|| Ok(Outcome::from_reports(&[check_intro_identities(4, 10)?]))),
        ),
        (
            "dominant products, type A and type C",
            None,
            Box::new(|| Ok(Outcome::from_reports(&[dominant_family_a(3)?, dominant_family_c(3, 4)?]))),
        ),
        ("length law", None, Box::new(length_law)),
    ];

    let total = Instant::now();
    let mut failed = Vec::new();
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let (o, elapsed) = timed(f);
        let o = match limit {
            Some(l) => within(l, elapsed, o),
            None => o,
        };
        if !o.passed {
            failed.push(i + 1);
        }
        let mark = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {mark} [{:.2}s] {name}: {}", i + 1, elapsed.as_secs_f64(), o.detail);
    }
    let elapsed = total.elapsed();
    println!(
        "acceptance: {} of 12 passed in {:.1}s; failed: {failed:?}; known failures: {KNOWN_FAILURES:?}",
        12 - failed.len(),
        elapsed.as_secs_f64()
    );
    let strict = std::env::var("CHERNLOCI_STRICT").is_ok_and(|v| v == "1");
    let expected = if strict { failed.is_empty() } else { failed == KNOWN_FAILURES };
    if expected && elapsed < Duration::from_secs(300) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
