//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

use liekernel_cli::checks::{self, CheckResult};
use liekernel_cli::table;
use std::path::Path;
use std::time::{Duration, Instant};

struct Verdict {
    passed: bool,
    summary: String,
}

fn from_checks(prefixes: &[&str], limit: Option<Duration>) -> Verdict {
    let only: Vec<String> = prefixes.iter().map(|s| s.to_string()).collect();
    let start = Instant::now();
    let results: Vec<CheckResult> = checks::run(&only);
    let elapsed = start.elapsed();
    let failed: Vec<String> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| {
            format!(
                "{} (residual {:.3e} > {:.1e}: {})",
                r.name, r.residual, r.tolerance, r.detail
            )
        })
        .collect();
    let worst = results
        .iter()
        .map(|r| r.residual / r.tolerance)
        .fold(0.0, f64::max);
    let mut passed = !results.is_empty() && failed.is_empty();
    let mut summary = format!(
        "{} checks, worst residual/tolerance {:.2e}, {:.2} s",
        results.len(),
        worst,
        elapsed.as_secs_f64()
    );
    if let Some(l) = limit {
        if elapsed > l {
            passed = false;
            summary += &format!(", over the {} s budget", l.as_secs());
        }
    }
    if !failed.is_empty() {
        summary += &format!("; failed: {}", failed.join("; "));
    }
    Verdict { passed, summary }
}

const GOLDEN: [(&str, &str); 10] = [
    ("SU(2,1)", "SU21"),
    ("SL(3,R)", "SL3R"),
    ("SO(4,1)", "SO41"),
    ("SO(3,2)", "SO32"),
    ("SU(3,1)", "SU31"),
    ("SU(2,2)", "SU22"),
    ("SO(3,3)", "SO33"),
    ("SO(5,1)", "SO51"),
    ("USp(4,2)", "USp42"),
    ("Sp(6,R)", "Sp6R"),
];

fn golden_tables() -> Verdict {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut bad = Vec::new();
    for (group, file) in GOLDEN {
        let want = std::fs::read(dir.join(format!("{file}.txt"))).unwrap_or_default();
        match table::render(group) {
            Ok(got) if got.as_bytes() == want.as_slice() => {}
            Ok(_) => bad.push(format!("{group} differs from golden")),
            Err(e) => bad.push(format!("{group}: {e}")),
        }
    }
    let masks = from_checks(&["domains.masks."], None);
    if !masks.passed {
        bad.push(masks.summary);
    }
    Verdict {
        passed: bad.is_empty(),
        summary: if bad.is_empty() {
            "10 tables byte-identical, masks match".into()
        } else {
            bad.join("; ")
        },
    }
}

fn main() {
    let rho: Vec<String> = ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D3", "D4"]
        .iter()
        .map(|s| format!("rho2_over_lambda.{s}"))
        .collect();
    let rho: Vec<&str> = rho.iter().map(String::as_str).collect();
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict>)> = vec![
        (
            "dual-series equivalence on SU(2), SU(3)",
            Box::new(|| {
                from_checks(
                    &["su2.dual_series", "su3.dual_series"],
                    Some(Duration::from_secs(5)),
                )
            }),
        ),
        (
            "SU(2) printed formulas",
            Box::new(|| from_checks(&["su2.printed_"], None)),
        ),
        (
            "SU(1,1) closed forms",
            Box::new(|| from_checks(&["su11.d1_identity", "su11.d0_closed_form"], None)),
        ),
        (
            "SU(2) resolvent poles and residues",
            Box::new(|| from_checks(&["su2.resolvent_"], None)),
        ),
        (
            "SU(2) heat normalization and semigroup",
            Box::new(|| {
                from_checks(
                    &["su2.normalization", "su2.semigroup"],
                    Some(Duration::from_secs(10)),
                )
            }),
        ),
        ("ρ²/Λ = n/24", Box::new(move || from_checks(&rho, None))),
        (
            "Weyl orders, dimensions, intertwiner",
            Box::new(|| from_checks(&["weyl."], None)),
        ),
        ("domain golden tables", Box::new(golden_tables)),
        ("volumes", Box::new(|| from_checks(&["volumes."], None))),
        (
            "classifier round trip and SU(1,1) threshold",
            Box::new(|| from_checks(&["domains.round_trip.", "su11.trace_threshold"], None)),
        ),
        (
            "kernel Weyl invariance and periodicity",
            Box::new(|| from_checks(&["kernel.symmetries"], None)),
        ),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let v = run();
        if !v.passed {
            failures += 1;
        }
        println!(
            "criterion {}: {} {} ({})",
            k + 1,
            if v.passed { "PASS" } else { "FAIL" },
            name,
            v.summary
        );
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
