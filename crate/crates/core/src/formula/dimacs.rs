//! DIMACS CNF reading and writing.
use std::io::{self, Write};

use thiserror::Error;

use super::lit::Lit;
use super::Formula;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input")]
    EmptyInput,
    #[error("line {line}: malformed header: {msg}")]
    MalformedHeader { line: usize, msg: String },
    #[error("line {line}: clause data before the `p cnf` header")]
    MissingHeader { line: usize },
    #[error("line {line}: duplicate `p` header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: invalid literal `{token}`")]
    InvalidLiteral { line: usize, token: String },
    #[error("unterminated clause at end of input (missing trailing 0)")]
    UnterminatedClause,
}

/// Parse a DIMACS CNF byte stream.
///
/// Duplicate literals are removed and tautological clauses dropped. Literals whose variable
/// exceeds the declared count grow the variable table (with a warning).
pub fn parse_dimacs(input: &[u8]) -> Result<Formula, ParseError> {
    let text = String::from_utf8_lossy(input);
    if text.trim().is_empty() {
        return Err(ParseError::EmptyInput);
    }

    let mut formula: Option<Formula> = None;
    let mut declared_clauses = 0usize;
    let mut parsed_clauses = 0usize;
    let mut current: Vec<Lit> = Vec::new();
    let mut open = false;
    let mut grew = false;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            // SATLIB files end with a `%` line followed by a stray `0`.
            break;
        }
        if line.starts_with('p') {
            if formula.is_some() {
                return Err(ParseError::DuplicateHeader { line: line_no });
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(ParseError::MalformedHeader {
                    line: line_no,
                    msg: format!("expected `p cnf <vars> <clauses>`, got `{line}`"),
                });
            }
            let vars: usize = fields[2].parse().map_err(|_| ParseError::MalformedHeader {
                line: line_no,
                msg: format!("bad variable count `{}`", fields[2]),
            })?;
            declared_clauses = fields[3].parse().map_err(|_| ParseError::MalformedHeader {
                line: line_no,
                msg: format!("bad clause count `{}`", fields[3]),
            })?;
            formula = Some(Formula::new(vars));
            continue;
        }

        let Some(f) = formula.as_mut() else {
            return Err(ParseError::MissingHeader { line: line_no });
        };
        for token in line.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| ParseError::InvalidLiteral {
                line: line_no,
                token: token.to_string(),
            })?;
            if value == 0 {
                f.add_clause(&current);
                current.clear();
                parsed_clauses += 1;
                open = false;
                continue;
            }
            if value.unsigned_abs() > i32::MAX as u64 {
                return Err(ParseError::InvalidLiteral {
                    line: line_no,
                    token: token.to_string(),
                });
            }
            let lit = Lit::from_dimacs(value as i32);
            if lit.var().index() >= f.num_vars() {
                grew = true;
            }
            current.push(lit);
            open = true;
        }
    }

    let formula = formula.ok_or(ParseError::MissingHeader { line: 0 })?;
    if open {
        return Err(ParseError::UnterminatedClause);
    }
    if grew {
        log::warn!(
            "literal indices exceed the declared {} variables; grew to {}",
            formula.declared_vars(),
            formula.num_vars()
        );
    }
    if parsed_clauses != declared_clauses {
        log::warn!("header declares {declared_clauses} clauses, found {parsed_clauses}");
    }
    Ok(formula)
}

/// Write a formula in DIMACS CNF.
pub fn write_dimacs<W: Write>(formula: &Formula, mut out: W) -> io::Result<()> {
    let count = formula.clauses().len() + formula.has_empty_clause() as usize;
    writeln!(out, "p cnf {} {}", formula.num_vars(), count)?;
    if formula.has_empty_clause() {
        writeln!(out, "0")?;
    }
    for clause in formula.clauses() {
        for lit in clause {
            write!(out, "{} ", lit.to_dimacs())?;
        }
        writeln!(out, "0")?;
    }
    Ok(())
}

/// DIMACS text of a formula.
pub fn emit_dimacs(formula: &Formula) -> Vec<u8> {
    let mut buf = Vec::new();
    write_dimacs(formula, &mut buf).expect("writing to a Vec cannot fail");
    buf
}
