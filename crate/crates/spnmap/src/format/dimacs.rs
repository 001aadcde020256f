use std::fmt::Write as _;

use spnmap_core::reductions::{CnfFormula, Literal};

use super::{no_trailing, number, ParseError};

/// Reads a DIMACS CNF file whose clauses all have three distinct variables.
///
/// Lines starting with `c` are comments. Clauses may span lines and end at
/// `0`. A line starting with `%` (as in the SATLIB benchmark files) ends the
/// clause section; only `0` may follow it.
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[Literal; 3]> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut clause_line = 0;
    let mut last_line = 1;
    let mut finished = false;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        last_line = line;
        if content.is_empty() || content.starts_with('c') {
            continue;
        }
        if finished {
            if content.split_whitespace().all(|t| t == "0") {
                continue;
            }
            return Err(ParseError::new(line, "unexpected content after `%`"));
        }
        let mut tokens = content.split_whitespace();
        if content.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::new(line, "repeated `p cnf` header"));
            }
            if tokens.next() != Some("p") || tokens.next() != Some("cnf") {
                return Err(ParseError::new(line, "malformed header; expected `p cnf <vars> <clauses>`"));
            }
            let n = number(tokens.next(), "variable count", line)?;
            let m = number(tokens.next(), "clause count", line)?;
            no_trailing(tokens, line)?;
            header = Some((n, m));
            continue;
        }
        let Some((n, m)) = header else {
            return Err(ParseError::new(line, "clause before the `p cnf` header"));
        };
        if content.starts_with('%') {
            finished = true;
            continue;
        }
        for token in tokens {
            let lit: i64 = number(Some(token), "literal", line)?;
            if current.is_empty() {
                clause_line = line;
            }
            if lit != 0 {
                let literal = Literal::from_dimacs(lit).expect("nonzero literal");
                if literal.var >= n {
                    return Err(ParseError::new(line, format!("literal {lit} exceeds {n} variables")));
                }
                current.push(literal);
                continue;
            }
            if current.len() != 3 {
                return Err(ParseError::new(
                    clause_line,
                    format!("clause has {} literals; exactly 3 are required", current.len()),
                ));
            }
            if let Some(dup) = repeated_variable(&current) {
                return Err(ParseError::new(clause_line, format!("variable {} repeated in clause", dup + 1)));
            }
            if clauses.len() == m {
                return Err(ParseError::new(clause_line, format!("more than the declared {m} clauses")));
            }
            clauses.push([current[0], current[1], current[2]]);
            current.clear();
        }
    }

    let Some((n, m)) = header else {
        return Err(ParseError::new(last_line, "missing `p cnf` header"));
    };
    if !current.is_empty() {
        return Err(ParseError::new(clause_line, "clause is not terminated by 0"));
    }
    if clauses.len() != m {
        return Err(ParseError::new(
            last_line,
            format!("header declares {m} clauses but {} were given", clauses.len()),
        ));
    }
    CnfFormula::new(n, clauses).map_err(|e| ParseError::new(last_line, e.to_string()))
}

fn repeated_variable(lits: &[Literal]) -> Option<usize> {
    lits.iter()
        .enumerate()
        .find(|(i, l)| lits[..*i].iter().any(|o| o.var == l.var))
        .map(|(_, l)| l.var)
}

pub fn write_dimacs_cnf(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars(), f.num_clauses());
    for clause in f.clauses() {
        for lit in clause.literals() {
            let _ = write!(out, "{} ", lit.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}
