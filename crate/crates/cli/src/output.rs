//! Report rendering. CSV reports start with two comment lines carrying the
//! tool version, the schema tag, and the resolved configuration as one-line
//! JSON; JSON reports wrap the same data in an envelope. Field order is
//! fixed by the structs, so identical configuration gives identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;

pub const TOOL_NAME: &str = "orbilab";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("must be \"csv\" or \"json\", got {other:?}")),
        }
    }
}

#[derive(Serialize)]
struct Tool {
    name: &'static str,
    version: &'static str,
}

#[derive(Serialize)]
struct Envelope<'a, P: Serialize, R: Serialize> {
    tool: Tool,
    command: &'a str,
    schema: &'a str,
    config: &'a P,
    rows: &'a [R],
}

fn render_csv<P: Serialize, R: Serialize>(
    command: &str,
    schema: &str,
    params: &P,
    rows: &[R],
) -> Result<String> {
    let mut text = String::new();
    writeln!(text, "# {TOOL_NAME} {TOOL_VERSION} command={command} schema={schema}")?;
    writeln!(text, "# config {}", serde_json::to_string(params)?)?;
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    let body = writer.into_inner().context("flush csv buffer")?;
    text.push_str(std::str::from_utf8(&body)?);
    Ok(text)
}

fn render_json<P: Serialize, R: Serialize>(
    command: &str,
    schema: &str,
    params: &P,
    rows: &[R],
) -> Result<String> {
    let envelope = Envelope {
        tool: Tool { name: TOOL_NAME, version: TOOL_VERSION },
        command,
        schema,
        config: params,
        rows,
    };
    Ok(serde_json::to_string_pretty(&envelope)? + "\n")
}

/// Renders and either writes to `out` (announcing the path on stdout) or
/// prints the report itself.
pub fn emit<P: Serialize, R: Serialize>(
    out: Option<&Path>,
    format: Format,
    command: &str,
    schema: &str,
    params: &P,
    rows: &[R],
) -> Result<()> {
    let text = match format {
        Format::Csv => render_csv(command, schema, params, rows)?,
        Format::Json => render_json(command, schema, params, rows)?,
    };
    match out {
        Some(path) => {
            std::fs::write(path, &text)
                .with_context(|| format!("out: cannot write {}", path.display()))?;
            println!("{command}: wrote {} rows to {}", rows.len(), path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}
