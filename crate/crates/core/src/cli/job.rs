use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::GroundRing;
use crate::model::{Polynomial, Presentation};

/// What a job asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Hh,
    Hc,
    Layers,
    Oracle,
    Compare,
    Witness { p: u64 },
    Selftest,
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut parts = s.split_whitespace();
        let head = parts.next().ok_or("empty command")?;
        let cmd = match head {
            "hh" => Command::Hh,
            "hc" => Command::Hc,
            "layers" => Command::Layers,
            "oracle" => Command::Oracle,
            "compare" => Command::Compare,
            "selftest" => Command::Selftest,
            "witness24" => {
                let arg = parts.next().ok_or("witness24 needs p=<int>")?;
                let p = arg
                    .strip_prefix("p=")
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| format!("expected p=<int>, found `{arg}`"))?;
                Command::Witness { p }
            }
            other => return Err(format!("unknown command `{other}`")),
        };
        if let Some(extra) = parts.next() {
            return Err(format!("unexpected argument `{extra}`"));
        }
        Ok(cmd)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Hh => f.write_str("hh"),
            Command::Hc => f.write_str("hc"),
            Command::Layers => f.write_str("layers"),
            Command::Oracle => f.write_str("oracle"),
            Command::Compare => f.write_str("compare"),
            Command::Witness { p } => write!(f, "witness24 p={p}"),
            Command::Selftest => f.write_str("selftest"),
        }
    }
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub presentation: Presentation,
    pub n_max: usize,
    /// Explicit filtration-weight cut; `None` lets the pipeline choose.
    pub bound: Option<u32>,
    pub command: Option<Command>,
    pub warnings: Vec<String>,
}

impl JobSpec {
    pub fn ring(&self) -> &GroundRing {
        &self.presentation.ring
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses the line-oriented job grammar:
///
/// ```text
/// # comment
/// ring Z/4
/// vars x y
/// rel x^2 - 2
/// rel y^3
/// nmax 4
/// bound 6        # optional
/// cmd compare    # optional
/// ```
pub fn parse(text: &str) -> Result<JobSpec> {
    let mut ring: Option<GroundRing> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut rels: Vec<(usize, usize, String)> = Vec::new();
    let mut n_max = 3usize;
    let mut bound = None;
    let mut command = None;
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = line.len() - trimmed.len();
        let (key, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        let value_col = indent + key.len() + 1 + (rest.len() - rest.trim_start().len()) + 1;
        let value = rest.trim();
        match key {
            "ring" => {
                let r = value
                    .parse()
                    .map_err(|e: Error| err(line_no, value_col, e.to_string()))?;
                ring = Some(r);
            }
            "vars" => {
                let names: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                for (i, n) in names.iter().enumerate() {
                    let ok = n.chars().next().is_some_and(char::is_alphabetic)
                        && n.chars().all(|c| c.is_alphanumeric() || c == '_');
                    if !ok {
                        return Err(err(line_no, value_col, format!("invalid variable name `{n}`")));
                    }
                    if names[..i].contains(n) {
                        return Err(err(line_no, value_col, format!("duplicate variable `{n}`")));
                    }
                }
                vars = Some(names);
            }
            "rel" => {
                if value.is_empty() {
                    return Err(err(line_no, value_col, "empty relation"));
                }
                rels.push((line_no, value_col, value.to_string()));
            }
            "nmax" => {
                n_max = value.parse().map_err(|_| {
                    err(
                        line_no,
                        value_col,
                        format!("expected a non-negative integer, found `{value}`"),
                    )
                })?;
            }
            "bound" => {
                bound = Some(value.parse().map_err(|_| {
                    err(
                        line_no,
                        value_col,
                        format!("expected a non-negative integer, found `{value}`"),
                    )
                })?);
            }
            "cmd" => {
                command = Some(value.parse().map_err(|m: String| err(line_no, value_col, m))?);
            }
            other => return Err(err(line_no, indent + 1, format!("unknown directive `{other}`"))),
        }
    }
    let ring = ring.ok_or_else(|| err(1, 1, "missing `ring` line"))?;
    let vars = vars.unwrap_or_default();
    let relations = rels
        .iter()
        .map(|(line, col, text)| Polynomial::parse(text, &vars, &ring).map_err(|(c, m)| err(*line, col + c - 1, m)))
        .collect::<Result<Vec<_>>>()?;
    let presentation = Presentation::new(ring, vars, relations)?;
    let mut warnings = Vec::new();
    if presentation.nvars() > 0 && presentation.quasi_monic.is_none() {
        warnings.push("NonQuasiMonicWarning: relations lack unit leading powers of distinct variables".to_string());
    }
    Ok(JobSpec {
        presentation,
        n_max,
        bound,
        command,
        warnings,
    })
}
