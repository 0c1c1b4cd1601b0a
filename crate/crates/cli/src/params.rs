//! Per-command parameter tables and resolution of raw key=value pairs.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind {
    Real,
    Positive,
    /// Positive, or `inf` to switch a term off.
    PositiveOrInf,
    NonNegative,
    Count {
        min: u64,
    },
    Choice(&'static [&'static str]),
}

impl Kind {
    fn describe(self) -> String {
        match self {
            Kind::Real => "a finite number".into(),
            Kind::Positive => "a positive number".into(),
            Kind::PositiveOrInf => "a positive number or inf".into(),
            Kind::NonNegative => "a non-negative number".into(),
            Kind::Count { min } => format!("an integer ≥ {min}"),
            Kind::Choice(options) => format!("one of {}", options.join(", ")),
        }
    }

    fn parse(self, raw: &str) -> Option<Value> {
        let real = || raw.parse::<f64>().ok().filter(|v| !v.is_nan());
        match self {
            Kind::Real => real().filter(|v| v.is_finite()).map(Value::Real),
            Kind::Positive => real().filter(|&v| v > 0.0 && v.is_finite()).map(Value::Real),
            Kind::PositiveOrInf => real().filter(|&v| v > 0.0).map(Value::Real),
            Kind::NonNegative => real().filter(|&v| v >= 0.0 && v.is_finite()).map(Value::Real),
            Kind::Count { min } => raw.parse::<u64>().ok().filter(|&n| n >= min).map(Value::Count),
            Kind::Choice(options) => options.contains(&raw).then(|| Value::Text(raw.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub key: &'static str,
    pub kind: Kind,
    /// `None` marks an optional key with no default.
    pub default: Option<&'static str>,
    pub help: &'static str,
}

pub const fn param(key: &'static str, kind: Kind, default: Option<&'static str>, help: &'static str) -> ParamSpec {
    ParamSpec { key, kind, default, help }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Count(u64),
    Text(String),
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Real(v) if v.is_finite() => s.serialize_f64(*v),
            Value::Real(v) => s.serialize_str(&v.to_string()),
            Value::Count(n) => s.serialize_u64(*n),
            Value::Text(t) => s.serialize_str(t),
        }
    }
}

/// Resolved parameters of one run: every key of the table, set or unset.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Values(BTreeMap<&'static str, Option<Value>>);

impl Values {
    fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key).unwrap_or_else(|| panic!("parameter {key:?} is not in the command table")).as_ref()
    }

    pub fn is_set(&self, key: &str) -> bool {
        self.get(key).is_some()
    }

    pub fn opt_real(&self, key: &str) -> Option<f64> {
        match self.get(key)? {
            Value::Real(v) => Some(*v),
            Value::Count(n) => Some(*n as f64),
            Value::Text(_) => panic!("parameter {key:?} is not numeric"),
        }
    }

    pub fn real(&self, key: &str) -> f64 {
        self.opt_real(key).unwrap_or_else(|| panic!("parameter {key:?} has no value"))
    }

    pub fn opt_count(&self, key: &str) -> Option<u64> {
        match self.get(key)? {
            Value::Count(n) => Some(*n),
            _ => panic!("parameter {key:?} is not an integer"),
        }
    }

    pub fn count(&self, key: &str) -> u64 {
        self.opt_count(key).unwrap_or_else(|| panic!("parameter {key:?} has no value"))
    }

    pub fn usize(&self, key: &str) -> usize {
        self.count(key) as usize
    }

    pub fn text(&self, key: &str) -> &str {
        match self.get(key) {
            Some(Value::Text(t)) => t,
            _ => panic!("parameter {key:?} is not text"),
        }
    }

    pub fn opt_text(&self, key: &str) -> Option<&str> {
        match self.get(key)? {
            Value::Text(t) => Some(t),
            _ => panic!("parameter {key:?} is not text"),
        }
    }
}

/// The candidate closest to `key` by edit distance.
pub fn nearest<'a>(key: &str, candidates: impl IntoIterator<Item = &'a str>) -> Option<&'a str> {
    candidates.into_iter().min_by_key(|c| strsim::levenshtein(&key.to_lowercase(), &c.to_lowercase()))
}

/// Resolves raw pairs (later pairs override earlier ones) against `specs`,
/// returning every problem found rather than stopping at the first.
pub fn resolve(command: &str, specs: &[ParamSpec], raw: &[(String, String)]) -> Result<Values, Vec<String>> {
    let mut diagnostics = Vec::new();
    let mut given: BTreeMap<&str, &str> = BTreeMap::new();
    for (key, value) in raw {
        match specs.iter().find(|s| s.key == key) {
            Some(spec) => {
                given.insert(spec.key, value);
            }
            None => {
                let hint = nearest(key, specs.iter().map(|s| s.key))
                    .map(|n| format!("; nearest valid key is \"{n}\""))
                    .unwrap_or_else(|| format!("; {command} takes no parameters"));
                diagnostics.push(format!("unknown key \"{key}\" for {command}{hint}"));
            }
        }
    }
    let mut values = Values::default();
    for spec in specs {
        let raw = given.get(spec.key).copied().or(spec.default);
        let parsed = match raw {
            None => None,
            Some(r) => match spec.kind.parse(r.trim()) {
                Some(v) => Some(v),
                None => {
                    diagnostics.push(format!("key \"{}\" expects {}, got \"{r}\"", spec.key, spec.kind.describe()));
                    None
                }
            },
        };
        values.0.insert(spec.key, parsed);
    }
    if diagnostics.is_empty() {
        Ok(values)
    } else {
        Err(diagnostics)
    }
}

/// One help line per parameter.
pub fn describe(specs: &[ParamSpec]) -> Vec<String> {
    specs
        .iter()
        .map(|s| {
            let default = s.default.map(|d| format!(" [default {d}]")).unwrap_or_default();
            format!("  --{:<16} {} ({}){default}", s.key, s.help, s.kind.describe())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPECS: &[ParamSpec] = &[
        param("lambda", Kind::NonNegative, Some("0.1"), "localization rate"),
        param("mass", Kind::PositiveOrInf, Some("1"), "mass"),
        param("steps", Kind::Count { min: 1 }, Some("10"), "steps"),
        param("scheme", Kind::Choice(&["rk4", "split"]), Some("rk4"), "scheme"),
        param("cutoff", Kind::Count { min: 5 }, None, "cutoff"),
    ];

    fn raw(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn defaults_fill_unset_keys() {
        let v = resolve("t", SPECS, &[]).unwrap();
        assert_eq!(v.real("lambda"), 0.1);
        assert_eq!(v.count("steps"), 10);
        assert_eq!(v.text("scheme"), "rk4");
        assert!(!v.is_set("cutoff"));
    }

    #[test]
    fn later_pairs_override_earlier_ones() {
        let v = resolve("t", SPECS, &raw(&[("steps", "5"), ("steps", "7")])).unwrap();
        assert_eq!(v.count("steps"), 7);
    }

    #[test]
    fn unknown_key_names_the_nearest_valid_key() {
        let err = resolve("evolve", SPECS, &raw(&[("lamda", "1")])).unwrap_err();
        assert_eq!(err.len(), 1);
        assert!(err[0].contains("\"lamda\"") && err[0].contains("\"lambda\""), "{}", err[0]);
    }

    #[test]
    fn every_problem_is_reported() {
        let err = resolve("t", SPECS, &raw(&[("steps", "0"), ("scheme", "euler"), ("mas", "2")])).unwrap_err();
        assert_eq!(err.len(), 3);
    }

    #[test]
    fn infinity_only_where_allowed() {
        assert_eq!(resolve("t", SPECS, &raw(&[("mass", "inf")])).unwrap().real("mass"), f64::INFINITY);
        assert!(resolve("t", SPECS, &raw(&[("lambda", "inf")])).is_err());
        assert!(resolve("t", SPECS, &raw(&[("lambda", "NaN")])).is_err());
    }

    #[test]
    fn infinite_values_serialize_as_text() {
        let v = resolve("t", SPECS, &raw(&[("mass", "inf")])).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["mass"], "inf");
        assert!(json["cutoff"].is_null());
    }
}
