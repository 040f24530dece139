//! The verbs: surfaces, check, effcheck, census, reproduce.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::json;

use delpezzo::census::{self, preset, Census, CensusOptions, CensusReport, Mode, Partial};
use delpezzo::effectivity::decide;
use delpezzo::surface::{catalog_load, degree_low_surface, DEGREE2_TYPES};
use delpezzo::toric::{
    augmentation_after_permutations, check_axioms, check_optimized, check_reference,
    classify_sequence, is_elementary_augmentation, IntSequence, Property, Verdict,
};
use delpezzo::{DivisorClass, PicardLattice, SurfaceModel, ToricSystem};

use crate::suites::{run_suite, SUITES};
use crate::{exit, write_json, write_with_header, CliResult, Failure, RunConfig};

/// Text for standard output plus the exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            code: exit::OK,
        }
    }
}

/// Looks a surface up by name or diagram type, suggesting the nearest name on a miss.
pub fn find_surface(degree: i32, name: &str) -> CliResult<SurfaceModel> {
    let cat = catalog_load(degree)?;
    if let Some(s) = cat.get(name) {
        return Ok(s.clone());
    }
    if degree <= 2 {
        if let Ok(s) = degree_low_surface(degree, name) {
            return Ok(s);
        }
    }
    let hint = cat
        .suggest(name)
        .map(|n| format!("; did you mean {n:?}?"))
        .unwrap_or_default();
    Err(Failure::input(format!(
        "no degree-{degree} surface named {name:?}{hint}"
    )))
}

fn render_list(lat: &PicardLattice, ds: &[DivisorClass]) -> String {
    if ds.is_empty() {
        return "-".to_string();
    }
    ds.iter()
        .map(|d| lat.render(d))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn surfaces(degree: i32, name: Option<&str>, as_json: bool) -> CliResult<Outcome> {
    let cat = catalog_load(degree)?;
    let rows: Vec<SurfaceModel> = match name {
        Some(n) => vec![find_surface(degree, n)?],
        None => cat.entries.clone(),
    };
    if as_json {
        let v: Vec<_> = rows.iter().map(|s| s.export()).collect();
        return Ok(Outcome::ok(serde_json::to_string_pretty(&v)? + "\n"));
    }
    let mut out = format!("degree {degree}: {} surfaces\n", rows.len());
    out.push_str("type\t(-2)-curves\t#I_irr\tI_irr\n");
    for s in &rows {
        let lat = s.lattice();
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            s.name(),
            render_list(lat, s.simple_roots()),
            s.irreducible_minus_one_curves().len(),
            render_list(lat, s.irreducible_minus_one_curves()),
        ));
    }
    Ok(Outcome::ok(out))
}

/// A term given either as coefficients or as text like "L-E1".
#[derive(Deserialize)]
#[serde(untagged)]
enum TermInput {
    Coeffs(DivisorClass),
    Text(String),
}

impl TermInput {
    fn resolve(&self, lat: &PicardLattice) -> CliResult<DivisorClass> {
        let d = match self {
            TermInput::Coeffs(d) => *d,
            TermInput::Text(t) => delpezzo::surface::parse_class(lat, t)?,
        };
        if d.rank() != lat.rank() {
            return Err(Failure::input(format!(
                "class {d} has rank {}, expected {}",
                d.rank(),
                lat.rank()
            )));
        }
        Ok(d)
    }
}

#[derive(Deserialize)]
struct SystemInput {
    degree: i32,
    terms: Vec<TermInput>,
    surface: Option<String>,
}

fn read_input(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn verdict_json(lat: &PicardLattice, v: &Verdict, a: &ToricSystem) -> serde_json::Value {
    match &v.witness {
        None => serde_json::Value::Null,
        Some((w, why)) => json!({
            "window": w.to_string(),
            "class": lat.render(&a.window(*w)),
            "reason": format!("{why:?}"),
        }),
    }
}

pub fn check(path: &Path, surface: Option<&str>) -> CliResult<Outcome> {
    let input: SystemInput = serde_json::from_str(&read_input(path)?)?;
    let name = surface
        .map(str::to_string)
        .or(input.surface.clone())
        .unwrap_or_else(|| "empty".to_string());
    let s = find_surface(input.degree, &name)?;
    let lat = s.lattice().clone();
    let terms = input
        .terms
        .iter()
        .map(|t| t.resolve(&lat))
        .collect::<CliResult<Vec<_>>>()?;
    let violations = check_axioms(&lat, &terms);
    if !violations.is_empty() {
        let v = json!({
            "valid": false,
            "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        });
        return Ok(Outcome {
            stdout: serde_json::to_string_pretty(&v)? + "\n",
            code: exit::MISMATCH,
        });
    }
    let a = ToricSystem::validate(&lat, terms)?;
    let seq = IntSequence(a.squares(&lat));
    let class = classify_sequence(&seq).ok();
    let exc = check_reference(&s, &a, Property::Exceptional)?;
    let strong = check_reference(&s, &a, Property::Strong)?;
    let cyc = check_reference(&s, &a, Property::CyclicStrong)?;
    for (prop, v) in [
        (Property::Exceptional, &exc),
        (Property::Strong, &strong),
        (Property::CyclicStrong, &cyc),
    ] {
        if check_optimized(&s, &a, prop)?.holds != v.holds {
            return Err(Failure::internal(format!("checkers disagree on {prop:?}")));
        }
    }
    let certificate = match is_elementary_augmentation(&s, &a) {
        Some(i) => json!({ "permutations": [], "term": i + 1, "curve": lat.render(&a.terms()[i]) }),
        None => match augmentation_after_permutations(&s, &a, 100_000) {
            Some((word, i)) => {
                json!({ "permutations": word.iter().map(|k| k + 1).collect::<Vec<_>>(), "term": i + 1 })
            }
            None => serde_json::Value::Null,
        },
    };
    let witness = if !cyc.holds {
        verdict_json(&lat, &cyc, &a)
    } else {
        serde_json::Value::Null
    };
    let v = json!({
        "valid": true,
        "surface": s.name(),
        "sequence": seq.0,
        "kind": class.as_ref().map(|c| format!("{:?}", c.kind)),
        "type": class.as_ref().map(|c| c.type_tag.clone()),
        "exceptional": exc.holds,
        "strong": strong.holds,
        "cyclic_strong": cyc.holds,
        "witness": witness,
        "augmentation_certificate": certificate,
    });
    Ok(Outcome::ok(serde_json::to_string_pretty(&v)? + "\n"))
}

#[derive(Deserialize)]
struct DivisorInput {
    degree: i32,
    surface: String,
    divisor: TermInput,
}

pub fn effcheck(path: &Path) -> CliResult<Outcome> {
    let input: DivisorInput = serde_json::from_str(&read_input(path)?)?;
    let s = find_surface(input.degree, &input.surface)?;
    let d = input.divisor.resolve(s.lattice())?;
    let trace = decide(&s, &d)?;
    if !trace.verify(&s) {
        return Err(Failure::internal("effectivity trace failed to replay"));
    }
    let v = json!({ "surface": s.name(), "divisor": s.lattice().render(&d), "verdict": trace.verdict, "trace": trace });
    Ok(Outcome::ok(serde_json::to_string_pretty(&v)? + "\n"))
}

pub struct CensusArgs {
    pub degree: Option<i32>,
    pub surfaces: Vec<String>,
    pub sequence: String,
    pub mode: String,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    pub long_run: bool,
    pub checkpoint: Option<PathBuf>,
    pub max_shards: Option<usize>,
    pub shard_depth: Option<usize>,
}

fn modes(text: &str) -> CliResult<Vec<Mode>> {
    if text == "both" {
        return Ok(Mode::BOTH.to_vec());
    }
    Ok(vec![text.parse::<Mode>()?])
}

/// A preset name, an inline JSON system or a path to one.
fn initial_system(text: &str) -> CliResult<(i32, ToricSystem)> {
    if let Ok(p) = preset(text) {
        return Ok((p.degree, p.initial_system()?));
    }
    let body = if text.trim_start().starts_with('{') {
        text.to_string()
    } else {
        read_input(Path::new(text))?
    };
    let input: SystemInput = serde_json::from_str(&body)?;
    let lat = PicardLattice::standard(input.degree)?;
    let terms = input
        .terms
        .iter()
        .map(|t| t.resolve(&lat))
        .collect::<CliResult<Vec<_>>>()?;
    Ok((input.degree, ToricSystem::validate(&lat, terms)?))
}

fn census_csv(report: &CensusReport, modes: &[Mode]) -> String {
    let mut s = String::from("surface,mode,total,stabilizer,essential\n");
    for r in report.records.iter().filter(|r| modes.contains(&r.mode)) {
        let stab = r
            .stabilizer_order
            .map(|o| o.to_string())
            .unwrap_or_default();
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            r.surface, r.mode, r.total_count, stab, r.essentially_different_count
        ));
    }
    s
}

fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("representatives.json")
}

pub fn census(args: &CensusArgs, cfg: &RunConfig) -> CliResult<Outcome> {
    let modes = modes(&args.mode)?;
    let (degree, initial) = initial_system(&args.sequence)?;
    if let Some(d) = args.degree {
        if d != degree {
            return Err(Failure::input(format!(
                "sequence lives in degree {degree}, not {d}"
            )));
        }
    }
    if degree == 1 && !args.long_run {
        return Err(Failure::input(
            "degree-1 censuses run only with --long-run and --checkpoint",
        ));
    }
    let labels: Vec<String> = if !args.surfaces.is_empty() {
        args.surfaces.clone()
    } else if degree == 2 {
        DEGREE2_TYPES.iter().map(|s| s.to_string()).collect()
    } else {
        return Err(Failure::input("name the surfaces with --surface"));
    };
    let surfaces = labels
        .iter()
        .map(|l| find_surface(degree, l))
        .collect::<CliResult<Vec<_>>>()?;
    let mut options = CensusOptions {
        workers: args.workers,
        ..CensusOptions::default()
    };
    if let Some(d) = args.shard_depth {
        options.shard_depth = d;
    }
    let engine = Census::new(surfaces, initial, options)?;

    if args.long_run {
        let path = args
            .checkpoint
            .as_deref()
            .ok_or_else(|| Failure::input("--long-run needs --checkpoint FILE"))?;
        let progress = engine.scan_checkpointed(path, args.max_shards)?;
        if !progress.finished {
            let text = long_run_status(
                &labels,
                &progress.partial,
                progress.next_shard,
                progress.total_shards,
            );
            if let Some(out) = &args.out {
                write_with_header(&out.to_string_lossy(), cfg, &text)?;
            }
            return Ok(Outcome::ok(text));
        }
        let report = engine.finish(progress.partial)?;
        return census_output(&report, &modes, args, cfg);
    }
    let report = engine.run()?;
    census_output(&report, &modes, args, cfg)
}

fn long_run_status(labels: &[String], part: &Partial, next: usize, total: usize) -> String {
    let mut s = format!(
        "checkpointed: {next} of {total} shards, {} systems visited\n",
        part.stats.visited
    );
    s.push_str("surface,mode,found_so_far\n");
    for (i, l) in labels.iter().enumerate() {
        for (slot, mode) in Mode::BOTH.iter().enumerate() {
            s.push_str(&format!("{l},{mode},{}\n", part.found[2 * i + slot].len()));
        }
    }
    s
}

fn census_output(
    report: &CensusReport,
    modes: &[Mode],
    args: &CensusArgs,
    cfg: &RunConfig,
) -> CliResult<Outcome> {
    let mut text = String::from("surface\tmode\ttotal\tstabilizer\tessential\n");
    for r in report.records.iter().filter(|r| modes.contains(&r.mode)) {
        let stab = r
            .stabilizer_order
            .map(|o| o.to_string())
            .unwrap_or_else(|| "-".into());
        text.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.surface, r.mode, r.total_count, stab, r.essentially_different_count
        ));
    }
    let st = &report.stats;
    text.push_str(&format!(
        "visited {}; anti-class checks {} ({} mismatches); checker samples {} ({} disagreements)\n",
        st.visited,
        st.anticlass_checks,
        st.anticlass_mismatches,
        st.checker_samples,
        st.checker_disagreements
    ));
    if let Some(out) = &args.out {
        write_with_header(&out.to_string_lossy(), cfg, &census_csv(report, modes))?;
        let records: Vec<_> = report
            .records
            .iter()
            .filter(|r| modes.contains(&r.mode))
            .collect();
        let side = sidecar_path(out);
        write_json(
            &side.to_string_lossy(),
            cfg,
            json!({ "records": records, "stats": st }),
        )?;
    }
    let bad = st.anticlass_mismatches > 0
        || st.checker_disagreements > 0
        || report
            .records
            .iter()
            .any(|r| !r.holes_hold || !r.representatives_verified);
    Ok(Outcome {
        stdout: text,
        code: if bad { exit::MISMATCH } else { exit::OK },
    })
}

pub fn reproduce(
    suite: &str,
    workers: Option<usize>,
    out: Option<&Path>,
    cfg: &RunConfig,
) -> CliResult<Outcome> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else {
        vec![suite]
    };
    let mut text = String::new();
    let mut reports = Vec::new();
    for n in names {
        let r = run_suite(n, workers)?;
        text.push_str(&r.render());
        reports.push(r);
    }
    if let Some(p) = out {
        write_json(&p.to_string_lossy(), cfg, serde_json::to_value(&reports)?)?;
    }
    let code = if reports.iter().all(|r| r.passed) {
        exit::OK
    } else {
        exit::MISMATCH
    };
    Ok(Outcome { stdout: text, code })
}

/// Preset names, for help text.
pub fn preset_names() -> Vec<&'static str> {
    census::PRESETS.iter().map(|p| p.name).collect()
}
