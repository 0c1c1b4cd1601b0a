//! The command table: parameters, pre-run checks and the run itself.

mod cats;
mod engine;
mod gravity;
mod quantum;
mod scattering;
mod zeno;

use decoherence::zeno::ZenoScanRow;

use crate::error::CliResult;
use crate::output::{Run, Summary};
use crate::params::{nearest, ParamSpec, Values};

/// Result of one successful run.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub summary: Summary,
    /// Row for the combined Zeno scan table written after a sweep.
    pub scan: Option<ZenoScanRow>,
}

impl From<Summary> for Outcome {
    fn from(summary: Summary) -> Self {
        Self { summary, scan: None }
    }
}

pub struct Command {
    pub name: &'static str,
    pub about: &'static str,
    pub params: &'static [ParamSpec],
    /// Problems visible before running; empty when the run may start.
    pub check: fn(&Values) -> Vec<String>,
    pub run: fn(&Values, &mut Run) -> CliResult<Outcome>,
}

pub const COMMANDS: &[Command] = &[
    quantum::SCHMIDT,
    scattering::LOCALIZE,
    scattering::TABLE1,
    engine::EVOLVE,
    engine::CL,
    engine::RATIO,
    zeno::ZENO,
    zeno::ZENOTOY,
    zeno::CHIRAL,
    cats::CAT,
    gravity::GRAVITY,
];

pub fn find(name: &str) -> Result<&'static Command, String> {
    COMMANDS.iter().find(|c| c.name == name).ok_or_else(|| {
        let hint = nearest(name, COMMANDS.iter().map(|c| c.name)).unwrap_or("help");
        format!("unknown command \"{name}\"; nearest is \"{hint}\"")
    })
}

fn no_checks(_: &Values) -> Vec<String> {
    Vec::new()
}

/// Seventeen significant digits.
fn cell(v: f64) -> String {
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::resolve;

    #[test]
    fn names_are_unique_and_suggested() {
        for (i, a) in COMMANDS.iter().enumerate() {
            assert!(COMMANDS[i + 1..].iter().all(|b| b.name != a.name));
        }
        assert!(find("zenotoy").is_ok());
        assert!(find("zenotoi").err().unwrap().contains("\"zenotoy\""));
    }

    #[test]
    fn defaults_of_every_command_pass_their_checks() {
        for c in COMMANDS {
            let values = resolve(c.name, c.params, &[]).unwrap_or_else(|e| panic!("{}: {e:?}", c.name));
            let problems = (c.check)(&values);
            assert!(problems.is_empty(), "{}: {problems:?}", c.name);
        }
    }

    #[test]
    fn keys_are_unique_per_command() {
        for c in COMMANDS {
            for (i, a) in c.params.iter().enumerate() {
                assert!(c.params[i + 1..].iter().all(|b| b.key != a.key), "{} repeats {}", c.name, a.key);
            }
        }
    }
}
