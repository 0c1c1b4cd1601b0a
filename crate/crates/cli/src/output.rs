//! Artifact files, run summaries and their human/JSON rendering.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value as Json};

use crate::error::{CliError, CliResult};

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_VAR: &str = "DECOH_OUTPUT_DIR";

/// Output prefix: explicit, else `$DECOH_OUTPUT_DIR/<command>`, else
/// `<command>` in the working directory. A prefix naming an existing
/// directory or ending in `/` gets the command name appended.
pub fn resolve_prefix(explicit: Option<&str>, env_dir: Option<&str>, command: &str) -> PathBuf {
    match explicit {
        Some(p) if p.ends_with('/') || Path::new(p).is_dir() => Path::new(p).join(command),
        Some(p) => PathBuf::from(p),
        None => match env_dir {
            Some(dir) if !dir.is_empty() => Path::new(dir).join(command),
            _ => PathBuf::from(command),
        },
    }
}

/// `<prefix>_<name>`.
pub fn artifact_path(prefix: &Path, name: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push("_");
    s.push(name);
    PathBuf::from(s)
}

pub fn ensure_parent(prefix: &Path) -> CliResult<()> {
    if let Some(dir) = prefix.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::Config(format!("cannot create output directory {}: {e}", dir.display())))?;
    }
    Ok(())
}

/// Per-run context handed to commands.
#[derive(Debug)]
pub struct Run {
    pub prefix: PathBuf,
    pub seed: u64,
    pub artifacts: Vec<String>,
}

impl Run {
    pub fn new(prefix: PathBuf, seed: u64) -> Self {
        Self { prefix, seed, artifacts: Vec::new() }
    }

    /// Creates `<prefix>_<name>.csv` and hands a buffered writer to `write`.
    pub fn csv<F>(&mut self, name: &str, write: F) -> CliResult<()>
    where
        F: FnOnce(BufWriter<File>) -> decoherence::Result<()>,
    {
        let path = artifact_path(&self.prefix, &format!("{name}.csv"));
        let file =
            File::create(&path).map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))?;
        write(BufWriter::new(file)).map_err(|e| CliError::Config(format!("writing {}: {e}", path.display())))?;
        self.artifacts.push(path.display().to_string());
        Ok(())
    }
}

/// Ordered key/value results of a run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Summary(pub Vec<(&'static str, Json)>);

impl Summary {
    pub fn real(&mut self, key: &'static str, v: f64) -> &mut Self {
        let value = if v.is_finite() { json!(v) } else { json!(v.to_string()) };
        self.0.push((key, value));
        self
    }

    pub fn count(&mut self, key: &'static str, v: usize) -> &mut Self {
        self.0.push((key, json!(v)));
        self
    }

    pub fn text(&mut self, key: &'static str, v: impl Into<String>) -> &mut Self {
        self.0.push((key, Json::String(v.into())));
        self
    }

    pub fn flag(&mut self, key: &'static str, v: bool) -> &mut Self {
        self.0.push((key, Json::Bool(v)));
        self
    }

    pub fn list(&mut self, key: &'static str, items: Vec<String>) -> &mut Self {
        self.0.push((key, json!(items)));
        self
    }

    pub fn to_json(&self) -> Json {
        Json::Object(self.0.iter().map(|(k, v)| (k.to_string(), v.clone())).collect::<Map<_, _>>())
    }

    pub fn lines(&self) -> Vec<String> {
        self.0.iter().map(|(k, v)| format!("{k} = {}", render(v))).collect()
    }
}

/// Plain decimals for moderate magnitudes, scientific notation otherwise.
pub fn format_real(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e6).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn render(v: &Json) -> String {
    match v {
        Json::Number(n) if n.is_f64() => format_real(n.as_f64().unwrap_or(f64::NAN)),
        Json::String(s) => s.clone(),
        Json::Array(items) if items.is_empty() => "none".into(),
        Json::Array(items) => items.iter().map(render).collect::<Vec<_>>().join("; "),
        other => other.to_string(),
    }
}
