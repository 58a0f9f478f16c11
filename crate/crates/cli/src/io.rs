use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use ultracenter::{RawSpace, UltrametricSpace};

use crate::{Failure, Format, Global};

/// Exactly one of `--input` and the positional file must be present.
pub fn source(global: &Global, positional: Option<&PathBuf>) -> Result<PathBuf, Failure> {
    match (&global.input, positional) {
        (Some(_), Some(_)) => Err(Failure::usage(
            "give the input either as --input or as a positional file, not both",
        )),
        (None, None) => Err(Failure::usage("no input given; pass a file or --input")),
        (Some(p), None) | (None, Some(p)) => Ok(p.clone()),
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::usage(format!("cannot read standard input: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn looks_like_csv(path: &Path, text: &str) -> bool {
    let by_extension = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    by_extension || !text.trim_start().starts_with('{')
}

/// Parses without checking the axioms.
pub fn read_raw_space(path: &Path) -> Result<RawSpace, Failure> {
    let text = read(path)?;
    let raw = if looks_like_csv(path, &text) {
        RawSpace::from_csv(&text)?
    } else {
        RawSpace::from_json(&text)?
    };
    raw.check_structure()?;
    Ok(raw)
}

pub fn read_space(path: &Path) -> Result<UltrametricSpace, Failure> {
    Ok(UltrametricSpace::try_from(read_raw_space(path)?)?)
}

pub fn write(global: &Global, text: &str) -> Result<(), Failure> {
    match &global.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::usage(format!("cannot write output: {e}")))
        }
    }
}

/// The chosen format, or `default`; fails if the command cannot produce it.
pub fn format(global: &Global, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let chosen = global.format.unwrap_or(default);
    if allowed.contains(&chosen) {
        Ok(chosen)
    } else {
        let names: Vec<String> = allowed
            .iter()
            .map(|f| format!("{f:?}").to_lowercase())
            .collect();
        Err(Failure::usage(format!(
            "format {} is not available here; choose one of {}",
            format!("{chosen:?}").to_lowercase(),
            names.join(", ")
        )))
    }
}

pub fn json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("values serialize");
    text.push('\n');
    text
}
