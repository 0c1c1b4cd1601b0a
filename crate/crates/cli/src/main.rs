//! `decoh`: scenario runner for the decoherence models.
//!
//! Each invocation names a command, takes its parameters from flags and an
//! optional key=value config file, and writes CSV results plus a JSON
//! metadata file under an output prefix.

mod app;
mod args;
mod commands;
mod error;
mod output;
mod params;

fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    std::process::exit(app::main_with_env(&argv));
}
