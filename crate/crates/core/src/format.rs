//! QDIMACS and the DNF sibling format (`p dnf n m`, one term per line).
//!
//! Variables that occur in a QDIMACS matrix without being quantified are
//! bound in an outermost existential block, following the QDIMACS convention
//! for free variables.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::ParseError;
use crate::formula::{
    Clause, CnfMatrix, DnfFormula, Lit, QbfInstance, Quantifier, QuantifierBlock, Term, Var,
};

struct Header {
    num_vars: u32,
    count: usize,
}

fn parse_header(line_no: usize, line: &str, kind: &'static str) -> Result<Header, ParseError> {
    let malformed = |reason: &str| ParseError::MalformedHeader {
        line: line_no,
        reason: reason.to_string(),
    };
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.as_slice() {
        ["p", k, n, m] if *k == kind => {
            let num_vars = n
                .parse()
                .map_err(|_| malformed("variable count is not a number"))?;
            let count = m
                .parse()
                .map_err(|_| malformed("entry count is not a number"))?;
            Ok(Header { num_vars, count })
        }
        ["p", k, ..] if *k != kind => Err(malformed(&format!("expected 'p {kind}'"))),
        _ => Err(malformed("expected 'p <kind> <vars> <count>'")),
    }
}

/// Parses a zero-terminated list of signed integers.
fn parse_lits(line_no: usize, tokens: &[&str], num_vars: u32) -> Result<Vec<Lit>, ParseError> {
    let (last, body) = tokens
        .split_last()
        .ok_or(ParseError::Unterminated { line: line_no })?;
    if *last != "0" {
        return Err(ParseError::Unterminated { line: line_no });
    }
    body.iter()
        .map(|tok| {
            let value: i64 = tok.parse().map_err(|_| ParseError::InvalidToken {
                line: line_no,
                token: tok.to_string(),
            })?;
            if value == 0 {
                return Err(ParseError::InvalidToken {
                    line: line_no,
                    token: tok.to_string(),
                });
            }
            if value.unsigned_abs() > u64::from(num_vars) {
                return Err(ParseError::VarOutOfRange {
                    line: line_no,
                    var: value.unsigned_abs(),
                    num_vars,
                });
            }
            Ok(Lit::from_dimacs(value))
        })
        .collect()
}

/// Content lines (numbered from 1), skipping blanks and `c` comments.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'))
}

pub fn parse_qdimacs(text: &str) -> Result<QbfInstance, ParseError> {
    let mut lines = content_lines(text);
    let (hline, htext) = lines.next().ok_or(ParseError::MissingHeader("cnf"))?;
    if !htext.starts_with('p') {
        return Err(ParseError::MissingHeader("cnf"));
    }
    let header = parse_header(hline, htext, "cnf")?;

    let mut prefix: Vec<QuantifierBlock> = Vec::new();
    let mut bound = BTreeSet::new();
    let mut clauses = Vec::new();
    for (line_no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let quantifier = match tokens[0] {
            "a" => Some(Quantifier::Forall),
            "e" => Some(Quantifier::Exists),
            _ => None,
        };
        if let Some(q) = quantifier {
            if !clauses.is_empty() {
                return Err(ParseError::PrefixAfterClauses { line: line_no });
            }
            let lits = parse_lits(line_no, &tokens[1..], header.num_vars)?;
            let mut vars = Vec::with_capacity(lits.len());
            for l in lits {
                if l.is_negated() {
                    return Err(ParseError::InvalidToken {
                        line: line_no,
                        token: l.to_dimacs().to_string(),
                    });
                }
                if !bound.insert(l.var()) {
                    return Err(ParseError::DuplicatePrefixVar {
                        line: line_no,
                        var: l.var().index(),
                    });
                }
                vars.push(l.var());
            }
            prefix.push(QuantifierBlock::new(q, vars));
        } else {
            clauses.push(Clause::new(parse_lits(line_no, &tokens, header.num_vars)?));
        }
    }
    if clauses.len() != header.count {
        return Err(ParseError::CountMismatch {
            kind: "clauses",
            expected: header.count,
            found: clauses.len(),
        });
    }

    let free: Vec<Var> = clauses
        .iter()
        .flat_map(|c| c.vars())
        .filter(|v| !bound.contains(v))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if !free.is_empty() {
        prefix.insert(0, QuantifierBlock::exists(free));
    }
    let matrix =
        CnfMatrix::new(header.num_vars, clauses).expect("literals range-checked while parsing");
    Ok(QbfInstance::new(prefix, matrix).expect("prefix checked while parsing"))
}

pub fn emit_qdimacs(instance: &QbfInstance) -> String {
    let matrix = instance.matrix();
    let mut out = format!("p cnf {} {}\n", matrix.num_vars(), matrix.len());
    for block in instance.prefix() {
        out.push(match block.quantifier {
            Quantifier::Forall => 'a',
            Quantifier::Exists => 'e',
        });
        for v in &block.vars {
            let _ = write!(out, " {}", v.index());
        }
        out.push_str(" 0\n");
    }
    for c in matrix.clauses() {
        write_lits(&mut out, c.lits());
    }
    out
}

fn write_lits(out: &mut String, lits: &[Lit]) {
    for l in lits {
        let _ = write!(out, "{} ", l.to_dimacs());
    }
    out.push_str("0\n");
}

/// A parsed DNF together with the number of contradictory terms that were
/// dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedDnf {
    pub formula: DnfFormula,
    pub dropped_contradictory: usize,
}

pub fn parse_dnf(text: &str) -> Result<ParsedDnf, ParseError> {
    let mut lines = content_lines(text);
    let (hline, htext) = lines.next().ok_or(ParseError::MissingHeader("dnf"))?;
    if !htext.starts_with('p') {
        return Err(ParseError::MissingHeader("dnf"));
    }
    let header = parse_header(hline, htext, "dnf")?;
    let mut terms = Vec::new();
    let mut seen = 0;
    let mut dropped = 0;
    for (line_no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let term = Term::new(parse_lits(line_no, &tokens, header.num_vars)?);
        seen += 1;
        if term.is_contradictory() {
            dropped += 1;
        } else {
            terms.push(term);
        }
    }
    if seen != header.count {
        return Err(ParseError::CountMismatch {
            kind: "terms",
            expected: header.count,
            found: seen,
        });
    }
    Ok(ParsedDnf {
        formula: DnfFormula::new(header.num_vars, terms)
            .expect("literals range-checked while parsing"),
        dropped_contradictory: dropped,
    })
}

pub fn emit_dnf(formula: &DnfFormula) -> String {
    let mut out = format!("p dnf {} {}\n", formula.num_vars(), formula.len());
    for t in formula.terms() {
        write_lits(&mut out, t.lits());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_instance() {
        let inst = parse_qdimacs("p cnf 2 1\na 1 0\ne 2 0\n1 2 0\n").unwrap();
        assert_eq!(
            inst.prefix(),
            &[
                QuantifierBlock::forall(vec![Var::new(1)]),
                QuantifierBlock::exists(vec![Var::new(2)])
            ]
        );
        assert_eq!(inst.matrix().clauses(), &[Clause::from_dimacs(&[1, 2])]);
    }

    #[test]
    fn emit_then_parse_is_identity() {
        let text = "c comment\np cnf 4 3\na 1 2 0\ne 3 4 0\n1 -3 0\n-2 4 3 0\n0\n";
        let inst = parse_qdimacs(text).unwrap();
        let emitted = emit_qdimacs(&inst);
        assert_eq!(
            emitted,
            "p cnf 4 3\na 1 2 0\ne 3 4 0\n1 -3 0\n-2 3 4 0\n0\n"
        );
        assert_eq!(parse_qdimacs(&emitted).unwrap(), inst);
    }

    #[test]
    fn out_of_range_reports_line() {
        assert_eq!(
            parse_qdimacs("p cnf 1 1\n2 0\n"),
            Err(ParseError::VarOutOfRange {
                line: 2,
                var: 2,
                num_vars: 1
            })
        );
    }

    #[test]
    fn malformed_and_unterminated() {
        assert!(matches!(
            parse_qdimacs("p cnf x 1\n1 0\n"),
            Err(ParseError::MalformedHeader { line: 1, .. })
        ));
        assert_eq!(
            parse_qdimacs("p cnf 2 1\ne 1 2 0\n1 2\n"),
            Err(ParseError::Unterminated { line: 3 })
        );
        assert_eq!(
            parse_qdimacs("1 2 0\n"),
            Err(ParseError::MissingHeader("cnf"))
        );
        assert_eq!(
            parse_qdimacs("p cnf 2 1\ne 1 0\n1 0\na 2 0\n"),
            Err(ParseError::PrefixAfterClauses { line: 4 })
        );
        assert!(matches!(
            parse_qdimacs("p cnf 2 2\ne 1 2 0\n1 0\n"),
            Err(ParseError::CountMismatch {
                expected: 2,
                found: 1,
                ..
            })
        ));
    }

    #[test]
    fn same_quantifier_lines_merge_and_free_vars_bind_outermost() {
        let inst = parse_qdimacs("p cnf 3 1\na 1 0\na 2 0\n1 2 3 0\n").unwrap();
        assert_eq!(
            inst.prefix(),
            &[
                QuantifierBlock::exists(vec![Var::new(3)]),
                QuantifierBlock::forall(vec![Var::new(1), Var::new(2)])
            ]
        );
    }

    #[test]
    fn dnf_parsing() {
        let p = parse_dnf("p dnf 2 2\n1 2 0\n-1 0\n").unwrap();
        assert_eq!(
            p.formula.terms(),
            &[Term::from_dimacs(&[1, 2]), Term::from_dimacs(&[-1])]
        );
        assert_eq!(p.dropped_contradictory, 0);

        let valid = parse_dnf("p dnf 1 1\n0\n").unwrap();
        assert_eq!(valid.formula.terms(), &[Term::empty()]);

        let dropped = parse_dnf("p dnf 1 1\n1 -1 0\n").unwrap();
        assert!(dropped.formula.is_empty());
        assert_eq!(dropped.dropped_contradictory, 1);

        assert_eq!(emit_dnf(&p.formula), "p dnf 2 2\n1 2 0\n-1 0\n");
    }
}
