//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest harness.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use delpezzo::census::{preset, search_counterexamples, Census, CensusOptions, Mode};
use delpezzo::effectivity::{brute_force_effective, is_effective};
use delpezzo::surface::{catalog_load, degree2_subsystem_survey, degree_low_surface};
use delpezzo::weyl::group_order;
use delpezzo::DivisorClass;
use delpezzo_cli::suites::{degree2_orbit_distinct, iib_census, run_suite};

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_suites(names: &[&str]) -> Outcome {
    let mut passed = true;
    let mut detail = Vec::new();
    for n in names {
        match run_suite(n, None) {
            Ok(r) => {
                passed &= r.passed;
                if !r.passed {
                    detail.push(r.render());
                } else {
                    detail.push(format!("{n}: {} checks", r.lines.len()));
                }
            }
            Err(e) => {
                passed = false;
                detail.push(format!("{n}: error {}", e.message));
            }
        }
    }
    Outcome {
        passed,
        detail: detail.join("; "),
    }
}

fn fail(msg: impl Into<String>) -> Outcome {
    Outcome {
        passed: false,
        detail: msg.into(),
    }
}

fn class_inventories() -> Outcome {
    let t = Instant::now();
    let mut o = from_suites(&["table1"]);
    let secs = t.elapsed().as_secs_f64();
    o.passed &= secs < 60.0;
    o.detail = format!("{} in {secs:.1}s", o.detail);
    o
}

fn weyl_order_and_freeness() -> Outcome {
    let t = Instant::now();
    let order = match group_order(2) {
        Ok(x) => x,
        Err(e) => return fail(e.to_string()),
    };
    let (count, distinct) = match degree2_orbit_distinct() {
        Ok(x) => x,
        Err(e) => return fail(e.message),
    };
    Outcome {
        passed: order == 2_903_040 && count == 2_903_040 && distinct == 2_903_040,
        detail: format!(
            "group {order}, orbit {count}, distinct {distinct} in {:.1}s",
            t.elapsed().as_secs_f64()
        ),
    }
}

fn census_table(suite: &str) -> Outcome {
    let t = Instant::now();
    let mut o = from_suites(&[suite]);
    o.detail = format!("{} in {:.1}s", o.detail, t.elapsed().as_secs_f64());
    o
}

fn effectivity_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut checked = 0usize;
    let mut effective = 0usize;
    let mut surfaces = 0usize;
    for deg in 3..=7 {
        let cat = match catalog_load(deg) {
            Ok(c) => c,
            Err(e) => return fail(e.to_string()),
        };
        for s in &cat.entries {
            surfaces += 1;
            let lat = s.lattice();
            for _ in 0..1000 {
                let v: Vec<i32> = (0..lat.rank()).map(|_| rng.gen_range(-4..=4)).collect();
                let d = DivisorClass::new(&v);
                let bound = (-lat.dot_k(&d)).max(0) + 8;
                let Some(want) = brute_force_effective(s, &d, bound) else {
                    return fail(format!(
                        "search budget exhausted on {} {}",
                        s.name(),
                        lat.render(&d)
                    ));
                };
                if is_effective(s, &d) != want {
                    return fail(format!(
                        "degree {deg} {}: {} disagrees",
                        s.name(),
                        lat.render(&d)
                    ));
                }
                checked += 1;
                effective += want as usize;
            }
        }
    }
    let report = match iib_census(None) {
        Ok(r) => r,
        Err(e) => return fail(e.message),
    };
    let st = &report.stats;
    Outcome {
        passed: st.anticlass_mismatches == 0 && st.anticlass_checks > 0,
        detail: format!(
            "{checked} random divisors on {surfaces} surfaces ({effective} effective); \
             census anti-class checks {} with {} mismatches",
            st.anticlass_checks, st.anticlass_mismatches
        ),
    }
}

fn checker_equivalence() -> Outcome {
    let t = Instant::now();
    let mut passed = true;
    let mut parts = Vec::new();
    match iib_census(None) {
        Ok(r) => {
            let st = &r.stats;
            passed &= st.checker_samples >= 500 && st.checker_disagreements == 0;
            parts.push(format!(
                "IIb-deg2 {}/{}",
                st.checker_samples, st.checker_disagreements
            ));
        }
        Err(e) => return fail(e.message),
    }
    let types: Vec<String> = degree2_subsystem_survey().into_keys().collect();
    let labels: Vec<&str> = types.iter().map(String::as_str).collect();
    for k in 1..=7 {
        let name = format!("deg2-{k}");
        match search_counterexamples(&name, &labels, CensusOptions::default()) {
            Ok(r) => {
                let st = &r.stats;
                let found: u64 = r
                    .records
                    .iter()
                    .filter(|x| x.mode == Mode::Strong)
                    .map(|x| x.total_count)
                    .sum();
                passed &= st.checker_samples >= 500 && st.checker_disagreements == 0 && found == 0;
                parts.push(format!(
                    "{name} {}/{} found {found}",
                    st.checker_samples, st.checker_disagreements
                ));
            }
            Err(e) => {
                passed = false;
                parts.push(format!("{name} error {e}"));
            }
        }
    }
    Outcome {
        passed,
        detail: format!(
            "samples/disagreements on {} surface types: {} in {:.1}s",
            labels.len(),
            parts.join(", "),
            t.elapsed().as_secs_f64()
        ),
    }
}

/// Truncated degree-1 run, once straight through and once interrupted and resumed.
fn long_run_resume() -> Outcome {
    let run = || -> Result<String, String> {
        let p = preset("deg1-1").map_err(|e| e.to_string())?;
        let surface = degree_low_surface(1, "8A1").map_err(|e| e.to_string())?;
        let options = CensusOptions {
            shard_depth: 12,
            ..CensusOptions::default()
        };
        let census = Census::new(
            vec![surface],
            p.initial_system().map_err(|e| e.to_string())?,
            options,
        )
        .map_err(|e| e.to_string())?;
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let (straight, split) = (dir.path().join("a.json"), dir.path().join("b.json"));
        let limit = 51_500;

        let whole = census
            .scan_checkpointed(&straight, Some(limit))
            .map_err(|e| e.to_string())?;
        let first = census
            .scan_checkpointed(&split, Some(51_300))
            .map_err(|e| e.to_string())?;
        if !split.exists() || first.finished || first.next_shard != 51_300 {
            return Err("no checkpoint after the first leg".into());
        }
        let second = census
            .scan_checkpointed(&split, Some(limit - 51_300))
            .map_err(|e| e.to_string())?;
        let same = second.next_shard == whole.next_shard
            && serde_json::to_value(&second.partial).ok()
                == serde_json::to_value(&whole.partial).ok();
        if !same {
            return Err("resumed run differs from the uninterrupted one".into());
        }
        if whole.finished || whole.partial.stats.visited <= limit as u64 {
            return Err(format!(
                "truncation did not reach full subtrees ({} visited)",
                whole.partial.stats.visited
            ));
        }
        let other = Census::new(
            vec![degree_low_surface(1, "8A1").map_err(|e| e.to_string())?],
            p.initial_system().map_err(|e| e.to_string())?,
            CensusOptions {
                shard_depth: 11,
                ..CensusOptions::default()
            },
        )
        .map_err(|e| e.to_string())?;
        if other.scan_checkpointed(&split, Some(1)).is_ok() {
            return Err("a checkpoint from a different run was accepted".into());
        }
        Ok(format!(
            "{} of {} shards, {} systems visited, resumed result identical",
            whole.next_shard, whole.total_shards, whole.partial.stats.visited
        ))
    };
    let t = Instant::now();
    match run() {
        Ok(d) => Outcome {
            passed: true,
            detail: format!("{d} in {:.1}s", t.elapsed().as_secs_f64()),
        },
        Err(e) => fail(e),
    }
}

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("class inventories", Box::new(class_inventories)),
        (
            "Weyl order and orbit freeness in degree 2",
            Box::new(weyl_order_and_freeness),
        ),
        ("strong census counts", Box::new(|| census_table("table7"))),
        (
            "exceptional census counts",
            Box::new(|| census_table("table8")),
        ),
        (
            "degree-2 counterexample suite",
            Box::new(|| from_suites(&["section13"])),
        ),
        (
            "cyclic strong admissible sequences",
            Box::new(|| from_suites(&["table3"])),
        ),
        (
            "I(X,A) sizes for first-kind sequences",
            Box::new(|| from_suites(&["table5-IXA"])),
        ),
        (
            "good-class propositions",
            Box::new(|| from_suites(&["good-classes"])),
        ),
        (
            "effectivity oracle equivalence",
            Box::new(effectivity_oracle),
        ),
        (
            "checker equivalence on orbit samples",
            Box::new(checker_equivalence),
        ),
        (
            "cyclic strong classification",
            Box::new(|| from_suites(&["table9", "degree5-negative"])),
        ),
        (
            "degree-1 long run checkpoint and resume",
            Box::new(long_run_resume),
        ),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.passed {
            failures += 1;
        }
        println!(
            "{} {:>2} {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
