use std::fmt::Display;
use std::io::Write;
use std::path::Path;

use anyhow::Context;
use serde_json::Value;
use welded_core::Error;

use crate::Output;

/// Result of a command: human text, the JSON form, and whether it passed.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub pass: bool,
}

impl Report {
    pub fn new(text: impl Into<String>, json: Value, pass: bool) -> Self {
        Report {
            text: text.into(),
            json,
            pass,
        }
    }

    pub fn emit(&self, output: Output, out: Option<&Path>) -> anyhow::Result<()> {
        let pretty = serde_json::to_string_pretty(&self.json)?;
        if let Some(path) = out {
            std::fs::write(path, format!("{pretty}\n")).with_context(|| format!("writing {}", path.display()))?;
        }
        let body = match output {
            Output::Text => self.text.clone(),
            Output::Json => pretty,
        };
        let mut stdout = std::io::stdout().lock();
        match writeln!(stdout, "{}", body.trim_end()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        }
    }
}

/// 1 for answers the tool could compute but that fail or stay undecided,
/// 2 for malformed input and usage errors.
pub fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(
            Error::NotAnExtension(_)
            | Error::OutOfClassifiedRange { .. }
            | Error::Indeterminate(_)
            | Error::NoWitnessFound
            | Error::ImageNotIdentity
            | Error::MissingAlphaImages
            | Error::NotInvolution(_)
            | Error::SubspaceNotRational
            | Error::NoSolution
            | Error::Singular
            | Error::NonUnitDeterminant
            | Error::LetterCapExceeded(_),
        ) => 1,
        _ => 2,
    }
}

pub fn matrix_text<R: Display>(rows: usize, cols: usize, get: impl Fn(usize, usize) -> R) -> String {
    let cells: Vec<Vec<String>> = (0..rows)
        .map(|r| (0..cols).map(|c| get(r, c).to_string()).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|row| {
            let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            format!("  [ {} ]", padded.join("  "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}
