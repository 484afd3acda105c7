//! One line per acceptance criterion; exits non-zero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use spantrace::cli::format::InstanceFile;
use spantrace::cli::generate::GenParams;
use spantrace::cli::report::{Report, Status};
use spantrace::cli::suites::run_suite;

struct Outcome {
    ok: bool,
    detail: String,
}

fn suite(name: &str, seed: u64, count: u64, modulus: Option<u64>) -> Report {
    let p = GenParams {
        modulus,
        ..GenParams::default()
    };
    run_suite(name, seed, count, &p).expect("suite runs")
}

/// Checks named `name` whose left-hand class has a nonzero value.
fn nonzero(r: &Report, name: &str) -> usize {
    r.checks
        .iter()
        .filter(|c| c.name == name)
        .filter(|c| c.lhs.as_ref().is_some_and(|v| v.values().any(|&x| x != 0)))
        .count()
}

fn first_failure(r: &Report) -> String {
    r.checks
        .iter()
        .find(|c| c.status != Status::Pass)
        .map(|c| format!("; first failure: instance {} {} {:?}", c.instance, c.name, c.detail))
        .unwrap_or_default()
}

fn summary(reports: &[&Report], instances: u64, extra: String) -> Outcome {
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    let failed: usize = reports.iter().map(|r| r.failed).sum();
    let fail = reports.iter().map(|r| first_failure(r)).collect::<String>();
    Outcome {
        ok: failed == 0 && checks > 0,
        detail: format!("{instances} instances, {checks} checks, {failed} failed{extra}{fail}"),
    }
}

fn lefschetz_verdier() -> Outcome {
    let start = Instant::now();
    let z = suite("lv", 1_000, 250, Some(0));
    let z7 = suite("lv", 2_000, 250, Some(7));
    let elapsed = start.elapsed();
    let mut o = summary(
        &[&z, &z7],
        500,
        format!(
            " (250 over Z, 250 over Z/7), {} with nonzero classes, {:.1} s",
            nonzero(&z, "lv") + nonzero(&z7, "lv"),
            elapsed.as_secs_f64()
        ),
    );
    o.ok &= elapsed < Duration::from_secs(60);
    o
}

fn global_formula() -> Outcome {
    let r = suite("global", 3_000, 200, None);
    summary(&[&r], 200, format!(", {} with nonzero traces", nonzero(&r, "global")))
}

fn oracle() -> Outcome {
    let r = suite("oracle", 7, 500, None);
    summary(&[&r], 500, format!(", {} with nonzero pairings", nonzero(&r, "oracle")))
}

fn duality() -> Outcome {
    let r = suite("triangle", 4_000, 100, None);
    let objects = r.checks.iter().filter(|c| c.name == "triangle").count();
    let mut o = summary(&[&r], 100, format!(", {objects} objects certified"));
    o.ok &= objects >= 100;
    o
}

fn symmetry() -> Outcome {
    let r = suite("symmetry", 5_000, 200, None);
    summary(&[&r], 200, format!(", {} with nonzero pairings", nonzero(&r, "symmetry")))
}

fn characteristic_class() -> Outcome {
    let r = suite("cc", 6_000, 200, None);
    let pushes = r.checks.iter().filter(|c| c.name == "cc-push").count();
    summary(&[&r], 200, format!(", {pushes} pushforwards"))
}

fn base_change() -> Outcome {
    let r = suite("basechange", 7_000, 200, None);
    summary(&[&r], 200, String::new())
}

fn homotopy() -> Outcome {
    let r = suite("homotopy", 8_000, 200, None);
    summary(&[&r], 200, format!(", {} with nonzero traces", nonzero(&r, "homotopy")))
}

fn uniqueness() -> Outcome {
    let r = suite("uniqueness", 9_000, 200, None);
    summary(&[&r], 200, ", apexes ≤3, ranks ≤2 over Z/2".into())
}

fn cli_json(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_spantrace"))
        .args(args)
        .output()
        .expect("binary runs");
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn untimed(json: &str) -> String {
    Report::from_json(json).map_or_else(|_| String::new(), |r| r.without_timing().to_json())
}

fn determinism_and_round_trip() -> Outcome {
    let mut problems = Vec::new();

    let p = GenParams::default();
    let a = run_suite("all", 10, 12, &p).unwrap().without_timing().to_json();
    let b = run_suite("all", 10, 12, &p).unwrap().without_timing().to_json();
    if a != b {
        problems.push("library reports differ".to_string());
    }

    let args = ["fuzz", "--suite", "all", "--seed", "10", "--count", "6", "--format", "json"];
    let (x, y) = (cli_json(&args), cli_json(&args));
    if x.is_empty() || untimed(&x) != untimed(&y) || untimed(&x).is_empty() {
        problems.push("binary reports differ".to_string());
    }

    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut fixtures = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        fixtures += 1;
        let text = std::fs::read_to_string(&path).unwrap();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        match InstanceFile::from_json(&text) {
            Ok(file) => {
                let emitted = file.to_json();
                if emitted != text {
                    problems.push(format!("{name} is not byte-identical after emit"));
                }
                if InstanceFile::from_json(&emitted).ok().as_ref() != Some(&file) {
                    problems.push(format!("{name} does not re-parse to the same instance"));
                }
            }
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }

    Outcome {
        ok: problems.is_empty() && fixtures > 0,
        detail: if problems.is_empty() {
            format!("two seeded runs identical modulo elapsed_ms, {fixtures} fixtures round-trip")
        } else {
            problems.join("; ")
        },
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("relative Lefschetz-Verdier", lefschetz_verdier),
        ("global fixed-point formula", global_formula),
        ("local-term oracle", oracle),
        ("duality certificates", duality),
        ("pairing symmetry", symmetry),
        ("characteristic class", characteristic_class),
        ("base change", base_change),
        ("homotopy invariance", homotopy),
        ("uniqueness of the pushed lift", uniqueness),
        ("CLI determinism and round-trip", determinism_and_round_trip),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        if !o.ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({}; {:.1} s)",
            k + 1,
            name,
            if o.ok { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
