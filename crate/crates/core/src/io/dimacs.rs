use std::fmt::Write as _;

use super::{content_lines, last_line, parse_num, ParseError, ParseErrorKind};
use crate::backdoor::{normalize_clause, CnfError, CnfFormula, Lit};

/// Parses DIMACS CNF. Clauses may span lines; duplicate literals are
/// collapsed and tautological clauses rejected. A `%` line ends the input.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut clause_line = 0;

    for (line, l) in content_lines(text, |l| l.starts_with('c')) {
        if l.starts_with('%') {
            break;
        }
        if l.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::new(line, ParseErrorKind::DuplicateHeader));
            }
            let toks: Vec<&str> = l.split_whitespace().collect();
            let malformed = || ParseError::new(line, ParseErrorKind::MalformedHeader(l.to_string()));
            if toks.len() != 4 || toks[0] != "p" || toks[1] != "cnf" {
                return Err(malformed());
            }
            let n = toks[2].parse().map_err(|_| malformed())?;
            let m = toks[3].parse().map_err(|_| malformed())?;
            header = Some((n, m));
            continue;
        }
        let Some((n, _)) = header else {
            return Err(ParseError::new(line, ParseErrorKind::MissingHeader));
        };
        for tok in l.split_whitespace() {
            let lit: i64 = parse_num(tok, line)?;
            if current.is_empty() {
                clause_line = line;
            }
            if lit == 0 {
                let clause = normalize_clause(n, std::mem::take(&mut current))
                    .map_err(|e| ParseError::new(clause_line, e.into()))?;
                clauses.push(clause);
                continue;
            }
            let var = lit.unsigned_abs() as usize;
            if var > n {
                return Err(ParseError::new(
                    line,
                    CnfError::LiteralOutOfRange { lit, n }.into(),
                ));
            }
            current.push(if lit > 0 {
                Lit::pos(var - 1)
            } else {
                Lit::neg(var - 1)
            });
        }
    }
    let Some((n, m)) = header else {
        return Err(ParseError::new(last_line(text), ParseErrorKind::MissingHeader));
    };
    if !current.is_empty() {
        return Err(ParseError::new(clause_line, ParseErrorKind::UnterminatedClause));
    }
    if clauses.len() != m {
        return Err(ParseError::new(
            last_line(text),
            ParseErrorKind::ClauseCountMismatch {
                expected: m,
                found: clauses.len(),
            },
        ));
    }
    Ok(CnfFormula::new(n, clauses).expect("clauses were validated while parsing"))
}

pub fn write_dimacs_cnf(phi: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", phi.var_count(), phi.clauses().len());
    for c in phi.clauses() {
        for l in c {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}
