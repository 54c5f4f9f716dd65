//! `--config` files: TOML `key = value` pairs turned into flags placed
//! before the explicit ones.

use std::ffi::OsString;
use std::path::Path;

use clap::error::ErrorKind;
use clap::CommandFactory;

use super::{Cli, Command, FractalMode};

fn subcommand_path(cmd: &Command) -> Vec<&'static str> {
    match cmd {
        Command::Synth(_) => vec!["synth"],
        Command::Descriptor(_) => vec!["descriptor"],
        Command::Segment(_) => vec!["segment"],
        Command::Fractal { mode: FractalMode::Curves(_) } => vec!["fractal", "curves"],
        Command::Fractal { mode: FractalMode::Growth(_) } => vec!["fractal", "growth"],
        Command::Eval(_) => vec!["eval"],
    }
}

fn usage(msg: String) -> clap::Error {
    Cli::command().error(ErrorKind::ValueValidation, msg)
}

fn render(key: &str, v: &toml::Value) -> Result<String, clap::Error> {
    Ok(match v {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Float(f) => f.to_string(),
        toml::Value::Boolean(b) => b.to_string(),
        toml::Value::Array(items) => items
            .iter()
            .map(|i| render(key, i))
            .collect::<Result<Vec<_>, _>>()?
            .join(","),
        _ => return Err(usage(format!("config key {key:?}: unsupported value type"))),
    })
}

/// Returns `args` with `--config` removed and the file's settings inserted
/// right after the subcommand name, skipping keys that are also given
/// explicitly. Unknown keys are rejected.
pub(super) fn inject(args: &[OsString], path: &Path, command: &Command) -> Result<Vec<OsString>, clap::Error> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Cli::command().error(ErrorKind::Io, format!("cannot read config {}: {e}", path.display()))
    })?;
    let table: toml::Table = text
        .parse()
        .map_err(|e| usage(format!("malformed config {}: {e}", path.display())))?;

    let sub_path = subcommand_path(command);
    let mut cmd = Cli::command();
    let mut sub = &mut cmd;
    for name in &sub_path {
        sub = sub.find_subcommand_mut(name).expect("parsed subcommand exists");
    }
    let known: Vec<String> = sub
        .get_arguments()
        .filter_map(|a| a.get_long())
        .filter(|l| !matches!(*l, "help" | "config" | "threads" | "version"))
        .map(str::to_owned)
        .collect();

    let mut rest: Vec<OsString> = Vec::with_capacity(args.len());
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            it.next();
        } else if !a.to_string_lossy().starts_with("--config=") {
            rest.push(a.clone());
        }
    }

    // position just past the subcommand name(s)
    let mut insert_at = None;
    let mut want = 0;
    let mut i = 1;
    while i < rest.len() && want < sub_path.len() {
        if rest[i] == "--threads" {
            i += 2;
            continue;
        }
        if rest[i] == sub_path[want] {
            want += 1;
            insert_at = Some(i + 1);
        }
        i += 1;
    }
    let insert_at = insert_at.expect("subcommand present in arguments");
    let explicit: Vec<String> = rest[insert_at..]
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();

    let mut injected = Vec::new();
    for (key, value) in &table {
        let flag = key.replace('_', "-");
        if !known.contains(&flag) {
            return Err(usage(format!(
                "unknown config key {key:?} for `{}`",
                sub_path.join(" ")
            )));
        }
        let long = format!("--{flag}");
        if explicit.iter().any(|a| *a == long || a.starts_with(&format!("{long}="))) {
            continue;
        }
        injected.push(OsString::from(format!("{long}={}", render(key, value)?)));
    }
    rest.splice(insert_at..insert_at, injected);
    Ok(rest)
}
