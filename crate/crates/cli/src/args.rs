//! Command-line and config-file parsing into a scenario description.

use std::fs;
use std::path::Path;

/// One `--sweep key=a:b:n` axis: n evenly spaced values from a to b.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub key: String,
    pub values: Vec<String>,
}

impl Sweep {
    pub fn parse(spec: &str) -> Result<Self, String> {
        let bad = || format!("sweep \"{spec}\" is not of the form key=start:stop:count");
        let (key, range) = spec.split_once('=').ok_or_else(bad)?;
        let parts: Vec<&str> = range.split(':').collect();
        let [a, b, n] = parts.as_slice() else { return Err(bad()) };
        let a: f64 = a.trim().parse().map_err(|_| bad())?;
        let b: f64 = b.trim().parse().map_err(|_| bad())?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        if key.trim().is_empty() || n == 0 || !a.is_finite() || !b.is_finite() {
            return Err(bad());
        }
        let values = (0..n)
            .map(|i| {
                let v = if n == 1 { a } else { a + (b - a) * i as f64 / (n - 1) as f64 };
                format_number(v)
            })
            .collect();
        Ok(Self { key: key.trim().to_string(), values })
    }
}

/// Integral values print without a fraction so they resolve as counts.
fn format_number(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// Everything one invocation asks for, before validation against a command.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Invocation {
    pub command: Option<String>,
    /// Command parameters in precedence order: config file first, flags last.
    pub params: Vec<(String, String)>,
    pub output: Option<String>,
    pub seed: u64,
    pub json: bool,
    pub check: bool,
    pub help: bool,
    pub workers: Option<usize>,
    pub sweeps: Vec<Sweep>,
    pub config_file: Option<String>,
}

const FLAGS: [&str; 3] = ["json", "check", "help"];

/// Reads `key = value` lines; `#` starts a comment.
pub fn read_config(path: &Path) -> Result<Vec<(String, String)>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) =
            line.split_once('=').ok_or_else(|| format!("line {}: expected key = value, got \"{line}\"", n + 1))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Parses `args` (without the program name). Scenario keys `command`,
/// `output`, `seed`, `workers` and `sweep` may also come from the config
/// file; flags win over the file.
pub fn parse(args: &[String]) -> Result<Invocation, Vec<String>> {
    let mut errors = Vec::new();
    let mut inv = Invocation::default();
    let mut flag_pairs: Vec<(String, String)> = Vec::new();
    let mut i = 0;
    while i < args.len() {
        let arg = &args[i];
        i += 1;
        let Some(body) = arg.strip_prefix("--") else {
            if inv.command.is_none() {
                inv.command = Some(arg.clone());
            } else {
                errors.push(format!("unexpected argument \"{arg}\""));
            }
            continue;
        };
        if let Some((k, v)) = body.split_once('=') {
            flag_pairs.push((k.to_string(), v.to_string()));
        } else if FLAGS.contains(&body) {
            flag_pairs.push((body.to_string(), "true".into()));
        } else if i < args.len() {
            flag_pairs.push((body.to_string(), args[i].clone()));
            i += 1;
        } else {
            errors.push(format!("flag --{body} needs a value"));
        }
    }

    let mut pairs = Vec::new();
    if let Some((_, path)) = flag_pairs.iter().rev().find(|(k, _)| k == "config") {
        inv.config_file = Some(path.clone());
        match read_config(Path::new(path)) {
            Ok(p) => pairs.extend(p),
            Err(e) => errors.push(e),
        }
    }
    pairs.extend(flag_pairs.into_iter().filter(|(k, _)| k != "config"));

    let mut file_command = None;
    for (k, v) in pairs {
        match k.as_str() {
            "command" => file_command = Some(v),
            "output" => inv.output = Some(v),
            "seed" => match v.parse() {
                Ok(s) => inv.seed = s,
                Err(_) => errors.push(format!("seed expects a non-negative integer, got \"{v}\"")),
            },
            "workers" => match v.parse() {
                Ok(w) if w > 0 => inv.workers = Some(w),
                _ => errors.push(format!("workers expects a positive integer, got \"{v}\"")),
            },
            "sweep" => match Sweep::parse(&v) {
                Ok(s) => inv.sweeps.push(s),
                Err(e) => errors.push(e),
            },
            "json" | "check" | "help" => {
                let on = match v.as_str() {
                    "true" | "1" | "yes" => true,
                    "false" | "0" | "no" => false,
                    _ => {
                        errors.push(format!("{k} expects true or false, got \"{v}\""));
                        continue;
                    }
                };
                match k.as_str() {
                    "json" => inv.json = on,
                    "check" => inv.check = on,
                    _ => inv.help = on,
                }
            }
            _ => inv.params.push((k, v)),
        }
    }
    match (&inv.command, file_command) {
        (Some(c), Some(f)) if *c != f => {
            errors.push(format!("command \"{c}\" conflicts with command = {f} in the config file"))
        }
        (None, f) => inv.command = f,
        _ => {}
    }
    let mut seen = Vec::new();
    for s in &inv.sweeps {
        if seen.contains(&&s.key) {
            errors.push(format!("key \"{}\" is swept twice", s.key));
        }
        seen.push(&s.key);
    }
    if errors.is_empty() {
        Ok(inv)
    } else {
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn flags_and_values() {
        let inv = parse(&args("ratio --mass-g 1 --temp-K=300 --json --seed 7")).unwrap();
        assert_eq!(inv.command.as_deref(), Some("ratio"));
        assert_eq!(inv.params, vec![("mass-g".into(), "1".into()), ("temp-K".into(), "300".into())]);
        assert!(inv.json);
        assert_eq!(inv.seed, 7);
    }

    #[test]
    fn sweep_values_are_evenly_spaced() {
        let s = Sweep::parse("gamma=0:56:8").unwrap();
        assert_eq!(s.key, "gamma");
        assert_eq!(s.values, ["0", "8", "16", "24", "32", "40", "48", "56"]);
        let s = Sweep::parse("dt=0.001:0.002:3").unwrap();
        assert_eq!(s.values, ["0.001", "0.0015", "0.002"]);
        assert!(Sweep::parse("gamma=0:1").is_err());
        assert!(Sweep::parse("gamma=0:1:0").is_err());
    }

    #[test]
    fn config_lines_and_comments() {
        let pairs = parse_config("# scenario\ncommand = ratio\nmass-g = 1 # grams\n\n").unwrap();
        assert_eq!(pairs, vec![("command".into(), "ratio".into()), ("mass-g".into(), "1".into())]);
        assert!(parse_config("mass-g 1").is_err());
    }

    #[test]
    fn flags_override_the_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        fs::write(&path, "command = ratio\nmass-g = 2\nseed = 3\n").unwrap();
        let inv = parse(&["--config".into(), path.display().to_string(), "--mass-g".into(), "5".into()]).unwrap();
        assert_eq!(inv.command.as_deref(), Some("ratio"));
        assert_eq!(inv.params.last().unwrap(), &("mass-g".to_string(), "5".to_string()));
        assert_eq!(inv.seed, 3);
    }

    #[test]
    fn missing_value_and_bad_seed_are_reported_together() {
        let err = parse(&args("ratio --seed x --dx-cm")).unwrap_err();
        assert_eq!(err.len(), 2);
    }
}
