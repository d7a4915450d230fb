//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria 6 and 7 fail on inputs where the stated identities do not hold;
//! the test pins down exactly which checks fail so that any other regression
//! still breaks the build.

use std::time::{Duration, Instant};

use affine_hecke::hecke::c_times_simple;
use affine_hecke::jalg::{
    gamma, phi_by_definition, phi_finite, verify_expansion_signs, verify_gamma, verify_images, verify_phi_inverse,
    JElt,
};
use affine_hecke::plane::{schwartz_check, verify_general_tw, verify_plane};
use affine_hecke::{Basis, Gen, HeckeElt, Laurent, Report, WeylElt};

type H = HeckeElt<i64>;

struct Outcome {
    passed: bool,
    detail: String,
    /// Names of the checks that failed, for criteria built on a report.
    failed: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into(), failed: Vec::new() }
    }

    fn from_report(report: &Report, summary: impl Into<String>) -> Self {
        let failed: Vec<String> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
        let detail = if failed.is_empty() {
            summary.into()
        } else {
            let first = report.checks.iter().find(|c| !c.passed).unwrap();
            let short: String = first.detail.chars().take(160).collect();
            format!("{} of {} checks fail: {}; first: {short}", failed.len(), report.checks.len(), failed.join(", "))
        };
        Outcome { passed: report.all_passed(), detail, failed }
    }
}

fn w(s: &str) -> WeylElt {
    s.parse().unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn criterion_1() -> Outcome {
    let (bad, elapsed) = timed(|| {
        let mut bad = Vec::new();
        for x in WeylElt::enumerate_by_length(0, 12) {
            for from in Basis::ALL {
                let h = H::basis_vector(from, x);
                for to in Basis::ALL {
                    if h.to_basis(to).to_basis(from) != h {
                        bad.push(format!("{from}->{to} at {x}"));
                    }
                }
            }
        }
        bad
    });
    let example = H::cprime(w("010")).to_basis(Basis::T);
    let v3 = Laurent::v_pow(-3);
    let verbatim = example.terms().count() == 6
        && ["010", "10", "01", "0", "1", ""].iter().all(|y| example.coeff(&w(y)) == v3);
    let fast = elapsed < Duration::from_secs(1);
    Outcome::new(
        bad.is_empty() && verbatim && fast,
        format!(
            "{} roundtrip failures over l <= 12; C'_s0s1s0 example {}; {:.3}s",
            bad.len(),
            if verbatim { "matches" } else { "differs" },
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for x in WeylElt::enumerate_by_length(1, 10) {
        for s in [Gen::S0, Gen::S1] {
            count += 1;
            let direct = H::c(x).mul(&H::c(s.elt()));
            if c_times_simple::<i64>(&x, s) != direct {
                bad.push(format!("C_{x} C_{}", s.elt()));
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("{count} identities, mismatches: [{}]", bad.join(" ")))
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    for s in [w("0"), w("1")] {
        for z in WeylElt::enumerate_by_length(0, 12) {
            let g = gamma(&s, &s, &z);
            let expect = i64::from(z == s);
            if g != expect {
                bad.push(format!("gamma_({s},{s},{z}) = {g}"));
            }
        }
    }
    let t0 = JElt::<i64>::t(w("0"));
    let idempotent = t0.mul(&t0) == t0;
    let report = verify_gamma(8);
    Outcome::new(
        bad.is_empty() && idempotent && report.all_passed(),
        format!(
            "gamma_(s,s,z) = [z = s] for l(z) <= 12: {}; t_s0^2 = t_s0: {idempotent}; gamma suite at L = 8: {}",
            if bad.is_empty() { "yes".to_string() } else { bad.join(" ") },
            if report.all_passed() { "pass" } else { "fail" }
        ),
    )
}

fn criterion_4() -> Outcome {
    let bad: Vec<String> = WeylElt::enumerate_by_length(0, 10)
        .into_iter()
        .filter(|x| phi_finite(&H::c(*x)) != phi_by_definition(&H::c(*x)))
        .map(|x| x.to_string())
        .collect();
    Outcome::new(bad.is_empty(), format!("l(w) <= 10, mismatches: [{}]", bad.join(" ")))
}

fn criterion_5() -> Outcome {
    let (report, elapsed) = timed(|| verify_phi_inverse::<i64>(8, 24, 32).unwrap());
    let details: Vec<&str> = report.checks.iter().map(|c| c.detail.as_str()).collect();
    let summary = format!("L = 24, N = 32, {}; {:.2}s", details.join("; "), elapsed.as_secs_f64());
    let mut out = Outcome::from_report(&report, summary);
    if elapsed >= Duration::from_secs(10) {
        out.passed = false;
        out.detail.push_str(&format!("; too slow: {:.2}s", elapsed.as_secs_f64()));
    }
    out
}

fn criterion_6() -> Outcome {
    Outcome::from_report(&verify_images::<i64>(20, 40).unwrap(), "L = 20, N = 40")
}

fn criterion_7() -> Outcome {
    // L = 24, N = 52 certifies every a_{y,x} with l(x) <= 14 for l(y) <= 6.
    Outcome::from_report(&verify_expansion_signs::<i64>(6, 14, 24, 52).unwrap(), "l(y) <= 6, l(x) <= 14")
}

fn criterion_8() -> Outcome {
    let report = verify_plane(20, 44).unwrap();
    let series = report.get("series action agrees").map(|c| c.detail.clone()).unwrap_or_default();
    Outcome::from_report(&report, format!("m in [-5, 5], {series}"))
}

fn criterion_9() -> Outcome {
    Outcome::from_report(&verify_general_tw(5, -3..=3), "formulas 1-8, n <= 5, m in [-3, 3]")
}

fn criterion_10() -> Outcome {
    let mut bad = Vec::new();
    let mut worst = 0f64;
    for q0 in [2u64, 3, 5] {
        for y in [w("0"), w("1"), w("01")] {
            let r = schwartz_check(&y, q0, 30).unwrap();
            worst = worst.max(r.rows.iter().map(|(_, v)| *v / r.constant).fold(0.0, f64::max));
            if !r.bounded || r.is_vacuous() {
                bad.push(format!("t_{y} at q = {q0}"));
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("n <= 30, largest q0^n |b| relative to the constant: {worst:.3}, unbounded: [{}]", bad.join(" ")),
    )
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    // Expected failures: the printed f~ (its image under phi o j is not in J)
    // and t_1, whose C' coefficients are (-1)^l(x) v^-l(x).
    let expected: [(u32, &[&str]); 2] = [
        (6, &["phi(j(f~)) = (v+v^-1) t_s0s1 - (q+1) t_s0", "f~ rewritten in C' equals the prepared form"]),
        (7, &["t_1"]),
    ];

    let mut unexpected = Vec::new();
    for (n, run) in criteria {
        let out = run();
        println!("{} criterion {n}: {}", if out.passed { "PASS" } else { "FAIL" }, out.detail);
        let as_expected = match expected.iter().find(|(m, _)| *m == n) {
            Some((_, names)) => out.failed == *names,
            None => out.passed,
        };
        if !as_expected {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: outcomes as expected (criteria 6 and 7 fail on the known inputs)");
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
