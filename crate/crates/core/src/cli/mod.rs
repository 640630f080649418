//! Documents, commands and reports behind the `separatrix` binary.

pub mod parse;
mod report;

use std::fmt;
use std::str::FromStr;

pub use report::{emit_dot, number_json, GraphKind, Report};

use crate::algebra::BiPoly;
use crate::error::{Error, Result};
use crate::foliation::{OneForm, DEFAULT_MAX_DEPTH};
use crate::puiseux::DEFAULT_ORDER;
use crate::ramification::DEFAULT_D_MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Foliation,
    Curve,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Foliation => "foliation",
            Kind::Curve => "curve",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputPayload {
    Form(OneForm),
    Curve(BiPoly),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub order: u32,
    pub d_max: u32,
    pub max_depth: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { order: DEFAULT_ORDER, d_max: DEFAULT_D_MAX, max_depth: DEFAULT_MAX_DEPTH }
    }
}

#[derive(Clone, Debug)]
pub struct InputDocument {
    pub name: Option<String>,
    /// The expression as written.
    pub text: String,
    pub payload: InputPayload,
    pub warnings: Vec<String>,
    pub options: Options,
}

impl InputDocument {
    pub fn kind(&self) -> Kind {
        match self.payload {
            InputPayload::Form(_) => Kind::Foliation,
            InputPayload::Curve(_) => Kind::Curve,
        }
    }

    pub fn form(&self) -> Option<&OneForm> {
        match &self.payload {
            InputPayload::Form(w) => Some(w),
            InputPayload::Curve(_) => None,
        }
    }

    pub fn curve(&self) -> Option<&BiPoly> {
        match &self.payload {
            InputPayload::Curve(f) => Some(f),
            InputPayload::Form(_) => None,
        }
    }

    /// Payload line in the input grammar; parsing it gives the same payload.
    pub fn payload_line(&self) -> String {
        match &self.payload {
            InputPayload::Form(w) => format!("omega = {w}"),
            InputPayload::Curve(f) => format!("curve = {f}"),
        }
    }

    /// The whole document in the input grammar.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        if let Some(n) = &self.name {
            s.push_str(&format!("name = {n}\n"));
        }
        s.push_str(&self.payload_line());
        s.push('\n');
        s
    }

    pub fn with_options(mut self, options: Options) -> Self {
        self.options = options;
        self
    }
}

fn parse_count(value: &str, line: usize, col: usize) -> Result<u64> {
    value.trim().parse::<u64>().map_err(|_| Error::Parse {
        line,
        column: col,
        message: format!("expected a non-negative integer, found `{}`", value.trim()),
    })
}

/// Parses a document: one `omega = …` or `curve = …` line, optional
/// `name = …`, `order = …`, `dmax = …`, `max_depth = …`; `#` starts a comment.
pub fn parse_input(text: &str) -> Result<InputDocument> {
    let mut name = None;
    let mut payload: Option<(InputPayload, String, bool)> = None;
    let mut options = Options::default();
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap();
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let col = content.len() - content.trim_start().len() + 1;
            return Err(Error::Parse { line, column: col, message: "expected `key = value`".into() });
        };
        let key = content[..eq].trim();
        let value = &content[eq + 1..];
        let col0 = eq + 1;
        match key {
            "name" => name = Some(value.trim().to_string()),
            "order" => options.order = parse_count(value, line, col0 + 1)? as u32,
            "dmax" | "d_max" => options.d_max = parse_count(value, line, col0 + 1)? as u32,
            "max_depth" | "max-depth" => options.max_depth = parse_count(value, line, col0 + 1)? as usize,
            "omega" | "curve" => {
                if payload.is_some() {
                    return Err(Error::Parse { line, column: 1, message: "more than one omega/curve line".into() });
                }
                let p = parse::parse_expression(value, line, col0)?;
                let parsed = if key == "omega" {
                    let (a, b) = parse::form_coefficients(&p, line, col0)?;
                    if !a.constant_term().is_zero() || !b.constant_term().is_zero() {
                        return Err(Error::NonZeroConstantTerm);
                    }
                    let (w, divided) = OneForm::saturate(a, b)?;
                    (InputPayload::Form(w), value.trim().to_string(), divided)
                } else {
                    let f = parse::curve_polynomial(&p, line, col0)?;
                    if f.is_zero() {
                        return Err(Error::InvalidInput("the zero polynomial defines no curve".into()));
                    }
                    if !f.constant_term().is_zero() {
                        return Err(Error::NonZeroConstantTerm);
                    }
                    (InputPayload::Curve(f), value.trim().to_string(), false)
                };
                payload = Some(parsed);
            }
            other => {
                let col = content.len() - content.trim_start().len() + 1;
                return Err(Error::Parse { line, column: col, message: format!("unknown key `{other}`") });
            }
        }
    }
    let Some((payload, text, divided)) = payload else {
        return Err(Error::Parse { line: last_line, column: 1, message: "missing `omega = …` or `curve = …` line".into() });
    };
    let mut warnings = Vec::new();
    if divided {
        if let InputPayload::Form(w) = &payload {
            warnings.push(format!("form was not saturated; divided by the common factor, now {w}"));
        }
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(InputDocument { name, text, payload, warnings, options })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Resolve,
    Indices,
    Separatrix,
    Ramify,
    CurveCheck,
}

impl Command {
    pub const ALL: [Command; 5] = [Command::Resolve, Command::Indices, Command::Separatrix, Command::Ramify, Command::CurveCheck];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Resolve => "resolve",
            Command::Indices => "indices",
            Command::Separatrix => "separatrix",
            Command::Ramify => "ramify",
            Command::CurveCheck => "curve-check",
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::InvalidInput(format!("unknown command `{s}`")))
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Emit {
    #[default]
    Text,
    Json,
    Dot,
}

impl FromStr for Emit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Emit::Text),
            "json" => Ok(Emit::Json),
            "dot" => Ok(Emit::Dot),
            _ => Err(Error::InvalidInput(format!("unknown output format `{s}`"))),
        }
    }
}

pub fn run_command(doc: &InputDocument, cmd: Command) -> Result<Report> {
    report::run(doc, cmd)
}

/// Renders a report; `dot` falls back to the text report for commands
/// without a tree.
pub fn render(r: &Report, emit: Emit, graph: GraphKind) -> String {
    match emit {
        Emit::Text => r.text.clone(),
        Emit::Json => {
            let mut s = serde_json::to_string_pretty(&r.json).expect("serializable");
            s.push('\n');
            s
        }
        Emit::Dot => match &r.tree {
            Some(t) => emit_dot(t, graph),
            None => r.text.clone(),
        },
    }
}

/// 1 for parse errors, 2 for domain errors.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_parse_error() {
        1
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents() {
        let d = parse_input("omega = 3*x^2 dx - 2*y dy").unwrap();
        let w = d.form().unwrap();
        assert_eq!(w, &OneForm::from_int_terms(&[(3, 2, 0)], &[(-2, 0, 1)]).unwrap());
        assert!(d.warnings.is_empty());

        let d = parse_input("# a comment\nname = lazy\nomega = x dy\n").unwrap();
        assert_eq!(d.form().unwrap(), &OneForm::from_int_terms(&[], &[(1, 0, 0)]).unwrap());
        assert_eq!(d.warnings.len(), 1);
        assert_eq!(d.name.as_deref(), Some("lazy"));

        let d = parse_input("curve = y^2 - x^3").unwrap();
        assert_eq!(d.kind(), Kind::Curve);
    }

    #[test]
    fn document_errors() {
        assert_eq!(parse_input("omega = dx + y dy").unwrap_err(), Error::NonZeroConstantTerm);
        assert_eq!(parse_input("curve = 1 + x").unwrap_err(), Error::NonZeroConstantTerm);
        match parse_input("name = a\n\ncurve = x +* y") {
            Err(Error::Parse { line: 3, column: 12, .. }) => {}
            e => panic!("{e:?}"),
        }
        assert!(parse_input("name = a").unwrap_err().is_parse_error());
        assert!(parse_input("foo = x").unwrap_err().is_parse_error());
    }

    #[test]
    fn round_trip() {
        for src in ["omega = (y + x^2) dx - x dy", "curve = (y^2 - x^3)*(y - x)", "omega = (1/2+i)*y dx + x^2 dy"] {
            let d = parse_input(src).unwrap();
            let again = parse_input(&d.serialize()).unwrap();
            assert_eq!(d.payload, again.payload, "{src}");
        }
    }

    #[test]
    fn options() {
        let d = parse_input("order = 8\ndmax = 4\nmax_depth = 10\ncurve = y - x^2").unwrap();
        assert_eq!(d.options, Options { order: 8, d_max: 4, max_depth: 10 });
    }
}
