//! Invocation handling: validation, single runs, sweeps, metadata and exit
//! statuses.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use decoherence::tolerances;
use decoherence::zeno::write_zeno_scan_csv;
use serde_json::{json, Value as Json};

use crate::args::{self, Invocation};
use crate::commands::{self, Command, Outcome, COMMANDS};
use crate::error::{CliError, CliResult};
use crate::output::{artifact_path, ensure_parent, resolve_prefix, Run, OUTPUT_DIR_VAR};
use crate::params::{describe, resolve, Values};

/// One run of a (possibly swept) scenario.
#[derive(Debug, Clone)]
struct RunPlan {
    /// Swept keys with their index and value; empty for a single run.
    point: Vec<(String, usize, String)>,
    values: Values,
}

impl RunPlan {
    fn label(&self) -> String {
        self.point.iter().map(|(k, _, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
    }

    /// `<prefix>_<key>-<index>…` with indices zero-padded per axis.
    fn prefix(&self, base: &Path, widths: &[usize]) -> PathBuf {
        if self.point.is_empty() {
            return base.to_path_buf();
        }
        let tag =
            self.point.iter().zip(widths).map(|((k, i, _), w)| format!("{k}-{i:0w$}")).collect::<Vec<_>>().join("_");
        artifact_path(base, &tag)
    }
}

struct RunResult {
    outcome: CliResult<Outcome>,
    artifacts: Vec<String>,
}

pub fn usage() -> String {
    let mut s = String::from(
        "usage: decoh <command> [--key value ...] [--config FILE] [--output PREFIX] [--seed N]\n\
         \x20            [--sweep key=start:stop:count ...] [--workers N] [--json] [--check]\n\n\
         Outputs go to PREFIX_<name>.csv plus PREFIX_meta.json; the default prefix is\n\
         $DECOH_OUTPUT_DIR/<command>, or <command> in the working directory.\n\
         Exit status: 0 success, 2 configuration error, 3 numerical-domain error.\n\ncommands:\n",
    );
    for c in COMMANDS {
        s.push_str(&format!("  {:<9} {}\n", c.name, c.about));
    }
    s.push_str("\nrun `decoh <command> --help` for its keys.\n");
    s
}

fn command_help(c: &Command) -> String {
    let mut s = format!("decoh {}: {}\n", c.name, c.about);
    if c.params.is_empty() {
        s.push_str("  (no keys)\n");
    }
    for line in describe(c.params) {
        s.push_str(&line);
        s.push('\n');
    }
    s
}

/// Swept key, index along its axis and value.
type Point = Vec<(String, usize, String)>;
type RawParams = Vec<(String, String)>;

/// Cartesian product of the sweep axes, first axis slowest.
fn expand(inv: &Invocation) -> Vec<(Point, RawParams)> {
    let mut runs = vec![(Vec::new(), inv.params.clone())];
    for sweep in &inv.sweeps {
        runs = runs
            .into_iter()
            .flat_map(|(point, raw)| {
                sweep.values.iter().enumerate().map(move |(i, v)| {
                    let mut point = point.clone();
                    point.push((sweep.key.clone(), i, v.clone()));
                    let mut raw = raw.clone();
                    raw.push((sweep.key.clone(), v.clone()));
                    (point, raw)
                })
            })
            .collect();
    }
    runs
}

/// Resolves and checks every run; diagnostics carry the run label in sweeps.
fn plan(command: &Command, inv: &Invocation) -> (Vec<RunPlan>, Vec<String>) {
    let mut plans = Vec::new();
    let mut diagnostics: Vec<String> = Vec::new();
    let mut push = |d: String| {
        if !diagnostics.contains(&d) {
            diagnostics.push(d);
        }
    };
    for (point, raw) in expand(inv) {
        let label = point.iter().map(|(k, _, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",");
        let tag = |d: String| if label.is_empty() { d } else { format!("[{label}] {d}") };
        match resolve(command.name, command.params, &raw) {
            Ok(values) => {
                for d in (command.check)(&values) {
                    push(tag(d));
                }
                plans.push(RunPlan { point, values });
            }
            Err(ds) => {
                for d in ds {
                    // Unknown keys are the same in every run of a sweep.
                    if d.starts_with("unknown key") {
                        push(d);
                    } else {
                        push(tag(d));
                    }
                }
            }
        }
    }
    (plans, diagnostics)
}

/// Validation without running: every problem with the invocation.
pub fn validate(inv: &Invocation) -> Vec<String> {
    match inv.command.as_deref().map(commands::find) {
        None => vec!["no command given".into()],
        Some(Err(e)) => vec![e],
        Some(Ok(c)) => plan(c, inv).1,
    }
}

fn execute_runs(
    command: &Command,
    plans: &[RunPlan],
    base: &Path,
    widths: &[usize],
    seed: u64,
    workers: usize,
) -> Vec<RunResult> {
    let one = |p: &RunPlan| {
        let mut run = Run::new(p.prefix(base, widths), seed);
        let outcome = (command.run)(&p.values, &mut run);
        RunResult { outcome, artifacts: run.artifacts }
    };
    if plans.len() == 1 || workers <= 1 {
        return plans.iter().map(one).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<RunResult>>> = Mutex::new((0..plans.len()).map(|_| None).collect());
    thread::scope(|s| {
        for _ in 0..workers.min(plans.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(p) = plans.get(i) else { break };
                let r = one(p);
                slots.lock().expect("no worker panics while holding the lock")[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .expect("workers finished")
        .into_iter()
        .map(|r| r.expect("every run index is claimed once"))
        .collect()
}

fn status_json(r: &RunResult) -> (Json, Json) {
    match &r.outcome {
        Ok(o) => (json!("ok"), o.summary.to_json()),
        Err(e) => (json!({ "error": e.to_string(), "exit": e.exit_code() }), Json::Null),
    }
}

fn write_metadata(
    command: &Command,
    inv: &Invocation,
    base: &Path,
    workers: usize,
    plans: &[RunPlan],
    results: &[RunResult],
    extra: &[String],
) -> CliResult<PathBuf> {
    let runs: Vec<Json> = plans
        .iter()
        .zip(results)
        .map(|(p, r)| {
            let (status, summary) = status_json(r);
            json!({
                "point": p.point.iter().map(|(k, _, v)| (k.clone(), json!(v))).collect::<serde_json::Map<_, _>>(),
                "parameters": p.values,
                "status": status,
                "summary": summary,
                "artifacts": r.artifacts,
            })
        })
        .collect();
    let meta = json!({
        "command": command.name,
        "versions": {
            "decoherence": decoherence::VERSION,
            "decoherence-cli": env!("CARGO_PKG_VERSION"),
        },
        "seed": inv.seed,
        "workers": workers,
        "configFile": inv.config_file,
        "outputPrefix": base.display().to_string(),
        "sweeps": inv.sweeps.iter().map(|s| json!({ "key": s.key, "values": s.values })).collect::<Vec<_>>(),
        "tolerances": tolerances::ALL.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "runs": runs,
        "artifacts": extra,
    });
    let path = artifact_path(base, "meta.json");
    let text = serde_json::to_string_pretty(&meta).expect("metadata is plain JSON");
    fs::write(&path, text + "\n").map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

/// Sweep-level table: one row per run with the swept values and the
/// scalar summary fields of the first successful run.
fn write_sweep_table(base: &Path, plans: &[RunPlan], results: &[RunResult]) -> CliResult<String> {
    let fields: Vec<&str> = results
        .iter()
        .find_map(|r| r.outcome.as_ref().ok())
        .map(|o| {
            o.summary
                .0
                .iter()
                .filter(|(k, v)| (v.is_number() || v.is_string()) && !plans[0].point.iter().any(|(p, _, _)| p == k))
                .map(|(k, _)| *k)
                .collect()
        })
        .unwrap_or_default();
    let mut run = Run::new(base.to_path_buf(), 0);
    run.csv("sweep", |w| {
        let mut out = csv::Writer::from_writer(w);
        let mut header: Vec<String> = vec!["run".into()];
        header.extend(plans[0].point.iter().map(|(k, _, _)| k.clone()));
        header.push("status".into());
        header.extend(fields.iter().map(|f| f.to_string()));
        out.write_record(&header)?;
        for (i, (p, r)) in plans.iter().zip(results).enumerate() {
            let mut rec = vec![i.to_string()];
            rec.extend(p.point.iter().map(|(_, _, v)| v.clone()));
            match &r.outcome {
                Ok(o) => {
                    rec.push("ok".into());
                    let json = o.summary.to_json();
                    for f in &fields {
                        rec.push(match &json[*f] {
                            Json::Number(n) if n.is_u64() => n.to_string(),
                            Json::Number(n) => n.as_f64().map(|x| format!("{x:.16e}")).unwrap_or_default(),
                            Json::String(s) => s.clone(),
                            _ => String::new(),
                        });
                    }
                }
                Err(e) => {
                    rec.push(format!("exit {}", e.exit_code()));
                    rec.extend(fields.iter().map(|_| String::new()));
                }
            }
            out.write_record(&rec)?;
        }
        out.flush()?;
        Ok(())
    })?;
    Ok(run.artifacts.remove(0))
}

/// Runs an invocation, writing results to `out` and the one-line failure
/// diagnostic to `err`; returns the exit status.
pub fn execute(argv: &[String], env_dir: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let fail = |err: &mut dyn Write, e: &CliError| {
        let _ = writeln!(err, "decoh: {e}");
        e.exit_code()
    };
    let inv = match args::parse(argv) {
        Ok(inv) => inv,
        Err(ds) => return fail(err, &CliError::Config(ds.join("; "))),
    };
    let Some(name) = inv.command.clone() else {
        if inv.help {
            let _ = write!(out, "{}", usage());
            return 0;
        }
        let _ = write!(err, "{}", usage());
        return 2;
    };
    if name == "help" {
        let _ = write!(out, "{}", usage());
        return 0;
    }
    let command = match commands::find(&name) {
        Ok(c) => c,
        Err(e) => return fail(err, &CliError::Config(e)),
    };
    if inv.help {
        let _ = write!(out, "{}", command_help(command));
        return 0;
    }
    if inv.check {
        let diagnostics = validate(&inv);
        if inv.json {
            let _ = writeln!(out, "{}", json!({ "command": command.name, "diagnostics": diagnostics }));
        } else {
            for d in &diagnostics {
                let _ = writeln!(out, "{d}");
            }
        }
        if diagnostics.is_empty() {
            return 0;
        }
        let n = diagnostics.len();
        return fail(err, &CliError::Config(format!("{n} problem{} found", if n == 1 { "" } else { "s" })));
    }
    let (plans, diagnostics) = plan(command, &inv);
    if !diagnostics.is_empty() {
        return fail(err, &CliError::Config(diagnostics.join("; ")));
    }

    let base = resolve_prefix(inv.output.as_deref(), env_dir, command.name);
    if let Err(e) = ensure_parent(&base) {
        return fail(err, &e);
    }
    let available = thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let workers = inv.workers.unwrap_or(available).min(plans.len()).max(1);
    let widths: Vec<usize> = inv.sweeps.iter().map(|s| (s.values.len() - 1).to_string().len()).collect();
    let results = execute_runs(command, &plans, &base, &widths, inv.seed, workers);

    let mut extra = Vec::new();
    if !inv.sweeps.is_empty() {
        match write_sweep_table(&base, &plans, &results) {
            Ok(p) => extra.push(p),
            Err(e) => return fail(err, &e),
        }
        let rows: Vec<_> = results.iter().filter_map(|r| r.outcome.as_ref().ok()?.scan).collect();
        if !rows.is_empty() {
            let mut run = Run::new(base.clone(), inv.seed);
            if let Err(e) = run.csv("scan", |w| write_zeno_scan_csv(&rows, w)) {
                return fail(err, &e);
            }
            extra.extend(run.artifacts);
        }
    }
    let meta = match write_metadata(command, &inv, &base, workers, &plans, &results, &extra) {
        Ok(p) => p,
        Err(e) => return fail(err, &e),
    };

    if inv.json {
        let runs: Vec<Json> = plans
            .iter()
            .zip(&results)
            .map(|(p, r)| {
                let (status, summary) = status_json(r);
                json!({ "point": p.label(), "status": status, "summary": summary, "artifacts": r.artifacts })
            })
            .collect();
        let doc = json!({ "command": command.name, "metadata": meta.display().to_string(), "runs": runs });
        let _ = writeln!(out, "{doc}");
    } else {
        for (p, r) in plans.iter().zip(&results) {
            let indent = if p.point.is_empty() { "" } else { "  " };
            if !p.point.is_empty() {
                let _ = writeln!(out, "[{}]", p.label());
            }
            match &r.outcome {
                Ok(o) => {
                    for line in o.summary.lines() {
                        let _ = writeln!(out, "{indent}{line}");
                    }
                }
                Err(e) => {
                    let _ = writeln!(out, "{indent}failed: {e}");
                }
            }
            for a in &r.artifacts {
                let _ = writeln!(out, "{indent}wrote {a}");
            }
        }
        for a in &extra {
            let _ = writeln!(out, "wrote {a}");
        }
        let _ = writeln!(out, "wrote {}", meta.display());
    }

    let failures: Vec<(&RunPlan, &CliError)> =
        plans.iter().zip(&results).filter_map(|(p, r)| r.outcome.as_ref().err().map(|e| (p, e))).collect();
    match failures.as_slice() {
        [] => 0,
        [(p, e)] if plans.len() == 1 || p.point.is_empty() => fail(err, e),
        [(p, e), ..] => {
            let code = failures.iter().map(|(_, e)| e.exit_code()).max().unwrap_or(2);
            let _ =
                writeln!(err, "decoh: {} of {} runs failed; first [{}]: {e}", failures.len(), plans.len(), p.label());
            code
        }
    }
}

/// Entry point used by `main`.
pub fn main_with_env(argv: &[String]) -> i32 {
    let env_dir = std::env::var(OUTPUT_DIR_VAR).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    execute(argv, env_dir.as_deref(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn validate_lists_unknown_keys_and_stability() {
        let inv = args::parse(&argv("evolve --lamda 1 --dt 1")).unwrap();
        let ds = validate(&inv);
        assert_eq!(ds.len(), 1, "{ds:?}");
        assert!(ds[0].contains("\"lambda\""));
        let inv = args::parse(&argv("evolve --dt 1")).unwrap();
        let ds = validate(&inv);
        assert!(ds.iter().any(|d| d.contains("dt")), "{ds:?}");
        assert!(validate(&args::parse(&argv("evolve")).unwrap()).is_empty());
    }

    #[test]
    fn sweeps_expand_as_a_product() {
        let inv = args::parse(&argv("zeno --sweep N=1:3:3 --sweep t=0:1:2")).unwrap();
        let runs = expand(&inv);
        assert_eq!(runs.len(), 6);
        assert_eq!(runs[1].0, vec![("N".to_string(), 0, "1".to_string()), ("t".to_string(), 1, "1".to_string())]);
    }

    #[test]
    fn sweep_prefixes_are_padded() {
        let inv = args::parse(&argv("zeno --sweep N=1:12:12")).unwrap();
        let (plans, ds) = plan(commands::find("zeno").unwrap(), &inv);
        assert!(ds.is_empty());
        assert_eq!(plans[3].prefix(Path::new("out/zeno"), &[2]), PathBuf::from("out/zeno_N-03"));
    }

    #[test]
    fn unknown_command_suggests_the_nearest() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = execute(&argv("gravty"), None, &mut out, &mut err);
        assert_eq!(code, 2);
        let msg = String::from_utf8(err).unwrap();
        assert_eq!(msg.lines().count(), 1);
        assert!(msg.contains("\"gravity\""));
    }
}
