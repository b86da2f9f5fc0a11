//! The `.dwtl` netlist format and `n:hex` truth-table strings.
//!
//! ```text
//! # comments run to end of line
//! input a
//! gate g1 min a b c              # weights -1,-1,-1
//! gate g2 w=-1:a w=-2:g1         # explicit weights
//! output y = !g2                 # `!` inverts the output
//! ```
//!
//! Statements must appear in definition order: a gate may only reference
//! inputs and gates declared above it.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::gate::SpinMinorityGate;
use crate::netlist::{is_valid_name, Netlist, StructuralError};
use crate::truth_table::{TruthTable, TruthTableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("invalid name {0:?}")]
    InvalidName(String),
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("unknown reference {0}")]
    UnknownReference(String),
    #[error("forward reference to {0}")]
    ForwardReference(String),
    #[error("zero weight")]
    ZeroWeight,
    #[error("weight {0} out of range")]
    WeightRange(String),
    #[error("{0}")]
    Structural(StructuralError),
}

/// A rejected statement. `line` and `column` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let line = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    tokens
}

struct Parser<'a> {
    /// name → line of its declaration, for forward-reference diagnostics
    declared_at: HashMap<&'a str, usize>,
    defined: HashMap<&'a str, ()>,
    net: Netlist,
    /// name → line, for attaching structural errors
    lines: HashMap<String, usize>,
}

impl<'a> Parser<'a> {
    fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { line, column, kind }
    }

    fn declare(&mut self, line: usize, tok: Token<'a>) -> Result<(), ParseError> {
        if !is_valid_name(tok.text) {
            return Err(Self::err(
                line,
                tok.column,
                ParseErrorKind::InvalidName(tok.text.to_string()),
            ));
        }
        if self.defined.insert(tok.text, ()).is_some() {
            return Err(Self::err(
                line,
                tok.column,
                ParseErrorKind::DuplicateName(tok.text.to_string()),
            ));
        }
        self.lines.insert(tok.text.to_string(), line);
        Ok(())
    }

    fn reference(&self, line: usize, text: &'a str, column: usize) -> Result<&'a str, ParseError> {
        if !is_valid_name(text) {
            return Err(Self::err(
                line,
                column,
                ParseErrorKind::InvalidName(text.to_string()),
            ));
        }
        if self.defined.contains_key(text) {
            return Ok(text);
        }
        let kind = match self.declared_at.get(text) {
            Some(&l) if l > line => ParseErrorKind::ForwardReference(text.to_string()),
            _ => ParseErrorKind::UnknownReference(text.to_string()),
        };
        Err(Self::err(line, column, kind))
    }

    fn statement(&mut self, line: usize, tokens: &[Token<'a>]) -> Result<(), ParseError> {
        let syntax =
            |col: usize, msg: &str| Self::err(line, col, ParseErrorKind::Syntax(msg.into()));
        let head = tokens[0];
        match head.text {
            "input" => {
                let [_, name] = tokens else {
                    return Err(syntax(head.column, "expected `input <name>`"));
                };
                self.declare(line, *name)?;
                self.net.inputs.push(name.text.to_string());
            }
            "gate" => {
                if tokens.len() < 3 {
                    return Err(syntax(head.column, "expected `gate <name> ...`"));
                }
                let name = tokens[1];
                let (weights, sources) = if tokens[2].text == "min" {
                    if tokens.len() != 6 {
                        return Err(syntax(
                            tokens[2].column,
                            "`min` takes exactly three references",
                        ));
                    }
                    let refs = tokens[3..]
                        .iter()
                        .map(|t| self.reference(line, t.text, t.column))
                        .collect::<Result<Vec<_>, _>>()?;
                    (vec![-1, -1, -1], refs)
                } else {
                    let mut weights = Vec::new();
                    let mut refs = Vec::new();
                    for t in &tokens[2..] {
                        let (w, r) = self.weighted_input(line, *t)?;
                        weights.push(w);
                        refs.push(r);
                    }
                    (weights, refs)
                };
                self.declare(line, name)?;
                let gate =
                    SpinMinorityGate::new(weights).expect("weights are nonzero and nonempty");
                self.net.add_gate(name.text, gate, sources);
            }
            "output" => {
                let [_, name, eq, src] = tokens else {
                    return Err(syntax(head.column, "expected `output <name> = [!]<ref>`"));
                };
                if eq.text != "=" {
                    return Err(syntax(eq.column, "expected `=`"));
                }
                let (inverted, text, col) = match src.text.strip_prefix('!') {
                    Some(rest) => (true, rest, src.column + 1),
                    None => (false, src.text, src.column),
                };
                let source = self.reference(line, text, col)?;
                self.declare(line, *name)?;
                self.net.add_output(name.text, source, inverted);
            }
            other => return Err(syntax(head.column, &format!("unknown statement `{other}`"))),
        }
        Ok(())
    }

    fn weighted_input(&self, line: usize, tok: Token<'a>) -> Result<(i32, &'a str), ParseError> {
        let syntax = || {
            Self::err(
                line,
                tok.column,
                ParseErrorKind::Syntax("expected `w=<int>:<ref>`".into()),
            )
        };
        let body = tok.text.strip_prefix("w=").ok_or_else(syntax)?;
        let (num, r) = body.split_once(':').ok_or_else(syntax)?;
        let digits = num.strip_prefix('-').unwrap_or(num);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax());
        }
        let w: i32 = num.parse().map_err(|_| {
            Self::err(
                line,
                tok.column + 2,
                ParseErrorKind::WeightRange(num.to_string()),
            )
        })?;
        if w == 0 {
            return Err(Self::err(line, tok.column + 2, ParseErrorKind::ZeroWeight));
        }
        let r_col = tok.column + 2 + num.chars().count() + 1;
        Ok((w, self.reference(line, r, r_col)?))
    }
}

/// Parses `.dwtl` text. `\n` and `\r\n` line endings are both accepted.
pub fn parse_netlist(text: &str) -> Result<Netlist, ParseError> {
    let lines: Vec<Vec<Token>> = text
        .split('\n')
        .map(|l| tokenize(l.strip_suffix('\r').unwrap_or(l)))
        .collect();

    let mut declared_at = HashMap::new();
    for (i, toks) in lines.iter().enumerate() {
        if toks.len() >= 2 && matches!(toks[0].text, "input" | "gate" | "output") {
            declared_at.entry(toks[1].text).or_insert(i + 1);
        }
    }
    let mut parser = Parser {
        declared_at,
        defined: HashMap::new(),
        net: Netlist::new(),
        lines: HashMap::new(),
    };
    let mut last_line = 1;
    for (i, toks) in lines.iter().enumerate() {
        if !toks.is_empty() {
            parser.statement(i + 1, toks)?;
            last_line = i + 1;
        }
    }

    // remaining checks (ties, empty output list) come from the netlist itself
    if let Some(e) = parser.net.validate().into_iter().next() {
        let line = e
            .subject()
            .and_then(|s| parser.lines.get(s))
            .copied()
            .unwrap_or(last_line);
        return Err(ParseError {
            line,
            column: 1,
            kind: ParseErrorKind::Structural(e),
        });
    }
    Ok(parser.net)
}

/// Canonical text: inputs, gates, outputs; `min` sugar exactly for fan-in-3
/// all-`-1` gates; single spaces; `\n` line ends; no comments.
pub fn print_netlist(net: &Netlist) -> String {
    use fmt::Write;
    let mut s = String::new();
    for i in &net.inputs {
        let _ = writeln!(s, "input {i}");
    }
    for g in &net.gates {
        let _ = write!(s, "gate {}", g.name);
        if g.gate.weights() == [-1, -1, -1] {
            s.push_str(" min");
            for r in &g.sources {
                let _ = write!(s, " {r}");
            }
        } else {
            for (w, r) in g.gate.weights().iter().zip(&g.sources) {
                let _ = write!(s, " w={w}:{r}");
            }
        }
        s.push('\n');
    }
    for o in &net.outputs {
        let bang = if o.inverted { "!" } else { "" };
        let _ = writeln!(s, "output {} = {bang}{}", o.name, o.source);
    }
    s
}

/// Parses `<n>:<hex>`, e.g. `3:0x96`. Bit `i` of the value is row `i`.
pub fn parse_truth_table(text: &str) -> Result<TruthTable, TruthTableError> {
    text.parse()
}
