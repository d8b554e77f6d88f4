//! Acceptance criteria 1-12, one pass/fail line each. Runs as a plain binary
//! (`harness = false`) and exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use alexinv::checks::{self, CheckReport, SuiteConfig};
use alexinv::fox::{a_valuation, fox_vector, graded_dimension, is_multiple_of_theta, theta};
use alexinv::magnus::{graded_lie_dims, johnson_depth, johnson_tau};
use alexinv::mapclass::separating_twist;
use alexinv::symrep::{decomposition_check, weyl_dim};
use alexinv::{AlexVector, DominantWeight, FreeWord, LaurentPoly};
use num_bigint::BigInt;

type Outcome = Result<String, String>;

fn suite_ok(reports: &[CheckReport], ids: &[&str]) -> Outcome {
    let selected: Vec<_> = reports.iter().filter(|r| ids.contains(&r.id.as_str())).collect();
    if selected.is_empty() {
        return Err(format!("no suite entries for {ids:?}"));
    }
    match selected.iter().find(|r| !r.ok()) {
        Some(bad) => Err(format!("{} failed: expected {}, got {}", bad.id, bad.expected.value, bad.actual)),
        None => Ok(format!("{} suite entries pass", selected.len())),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1(reports: &[CheckReport]) -> Outcome {
    for g in 2..=4 {
        let one = LaurentPoly::one(g);
        let mut expected = Vec::new();
        for j in 1..=g {
            expected.push(&one - &LaurentPoly::var(g, g + j));
        }
        for j in 1..=g {
            expected.push(&LaurentPoly::var(g, j) - &one);
        }
        let expected = AlexVector::new(g, expected).map_err(|e| e.to_string())?;
        ensure(fox_vector(&FreeWord::relator(g)) == expected, || format!("row vector mismatch at g={g}"))?;
        ensure(theta(g) == expected, || format!("theta mismatch at g={g}"))?;
    }
    suite_ok(reports, &["fox-relator"])
}

fn c4(reports: &[CheckReport]) -> Outcome {
    let mut seen = Vec::new();
    for (g, n) in [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1)] {
        let d = graded_dimension(g, n, n + 2).map_err(|e| e.to_string())?.value;
        let lambda = DominantWeight::combo(g, n as u32, 2).map_err(|e| e.to_string())?;
        let w = weyl_dim(&lambda);
        ensure(d > 0 && BigInt::from(d) == w, || format!("g={g} n={n}: dim gr = {d}, weyl = {w}"))?;
        seen.push(format!("({g},{n})={d}"));
    }
    suite_ok(reports, &["graded-dim"])?;
    Ok(seen.join(" "))
}

fn c5(reports: &[CheckReport]) -> Outcome {
    for g in 2..=4 {
        for n in 1..=4 {
            let r = decomposition_check(g, n).map_err(|e| e.to_string())?;
            ensure(r.pass && r.total == r.ambient_dim, || format!("g={g} n={n}: {} != {}", r.total, r.ambient_dim))?;
        }
    }
    suite_ok(reports, &["decomp"])
}

fn c9(reports: &[CheckReport]) -> Outcome {
    let w = checks::lemma_vector(2).map_err(|e| e.to_string())?;
    ensure(is_multiple_of_theta(&w).is_none(), || "w vanishes in A".into())?;
    let r = a_valuation(&w, 3, 5).map_err(|e| e.to_string())?;
    ensure(r.value >= 2, || format!("a_valuation(w) = {} < 2", r.value))?;
    suite_ok(reports, &["ng-bound"])?;
    let candidate = if r.value < 3 { format!("N_2 = {}", r.value) } else { "N_2 >= 3".into() };
    Ok(format!("candidate {candidate} (truncation {}, stable at {})", r.truncation, r.truncation + 1))
}

fn c10(reports: &[CheckReport]) -> Outcome {
    let mut summary = Vec::new();
    for g in 2..=3usize {
        let lib = graded_lie_dims(g, 6, 6).map_err(|e| e.to_string())?;
        let oracle = checks::lie_dims_generating_function(g, 6);
        let got: Vec<BigInt> = lib.dims.iter().map(|&d| BigInt::from(d)).collect();
        ensure(got == oracle, || format!("g={g}: {got:?} vs {oracle:?}"))?;
        ensure(lib.dims[0] == 2 * g as u64, || format!("g={g}: degree 1 is {}", lib.dims[0]))?;
        ensure(lib.dims[1] == (2 * g * g - g - 1) as u64, || format!("g={g}: degree 2 is {}", lib.dims[1]))?;
        summary.push(format!("g={g} {:?}", lib.dims));
    }
    suite_ok(reports, &["lcs-dims"])?;
    Ok(summary.join("; "))
}

fn c11(reports: &[CheckReport]) -> Outcome {
    for g in 2..=4 {
        for h in 1..g {
            let t = separating_twist(g, h).map_err(|e| e.to_string())?;
            let d = johnson_depth(t.endo(), 5).map_err(|e| e.to_string())?;
            ensure(d == 2, || format!("g={g} h={h}: depth {d}"))?;
            let tau2 = johnson_tau(t.endo(), 2, 4).map_err(|e| e.to_string())?;
            ensure(!tau2.is_zero(), || format!("g={g} h={h}: tau_2 vanishes"))?;
        }
    }
    suite_ok(reports, &["johnson-depth", "tau"])
}

fn c12(cfg: &SuiteConfig, first: &str) -> Outcome {
    let second = checks::reports_to_json(&checks::verify_all(cfg));
    ensure(first == second, || "JSON differs between runs".into())?;
    Ok(format!("{} bytes identical", first.len()))
}

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let start = Instant::now();
    let reports = checks::verify_all(&cfg);
    let first = checks::reports_to_json(&reports);
    println!("verify-all: {} entries in {:.2?}", reports.len(), start.elapsed());

    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("Fox relator row vector", Box::new(|| c1(&reports))),
        ("fundamental Fox identity", Box::new(|| suite_ok(&reports, &["fox-identity"]))),
        ("Hall-Witt and Jacobi", Box::new(|| suite_ok(&reports, &["hall-witt-jacobi"]))),
        ("graded quotient dimensions", Box::new(|| c4(&reports))),
        ("decomposition dimension identity", Box::new(|| c5(&reports))),
        ("highest weight vectors", Box::new(|| suite_ok(&reports, &["verify-hwv"]))),
        ("vanishing in gr_n A", Box::new(|| suite_ok(&reports, &["vanishing"]))),
        ("Dehn twist lemma", Box::new(|| suite_ok(&reports, &["dehn-lemma"]))),
        ("w nonzero, valuation >= 2", Box::new(|| c9(&reports))),
        ("graded Lie dimensions", Box::new(|| c10(&reports))),
        ("Johnson depth of separating twists", Box::new(|| c11(&reports))),
        ("determinism", Box::new(|| c12(&cfg, &first))),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
