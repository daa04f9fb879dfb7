use std::fmt::Write as _;

use super::{content_lines, last_line, parse_num, ParseError, ParseErrorKind};
use crate::csp::{parse_tuple, BooleanRelation, ConstraintLanguage, CspError, GammaFormula, MAX_ARITY};

/// Parses a constraint formula:
///
/// ```text
/// nvars 3
/// relation OR 2 { 01 10 11 }
/// constraint OR 0 1
/// ```
///
/// Relations must be declared before use; `#` starts a comment line.
pub fn parse_gamma_formula(text: &str) -> Result<GammaFormula, ParseError> {
    let parsed = parse_lines(text)?;
    let Some(n) = parsed.nvars else {
        return Err(ParseError::new(
            last_line(text),
            ParseErrorKind::MalformedHeader("missing nvars".into()),
        ));
    };
    let mut phi = GammaFormula::new(parsed.language, n);
    for (line, name, vars) in parsed.constraints {
        phi.add_constraint(&name, vars)
            .map_err(|e| ParseError::new(line, e.into()))?;
    }
    Ok(phi)
}

/// Reads only the relation declarations of a formula file; `nvars` is
/// optional and constraint lines are checked for syntax only.
pub fn parse_constraint_language(text: &str) -> Result<ConstraintLanguage, ParseError> {
    Ok(parse_lines(text)?.language)
}

struct Parsed {
    language: ConstraintLanguage,
    nvars: Option<usize>,
    constraints: Vec<(usize, String, Vec<usize>)>,
}

fn parse_lines(text: &str) -> Result<Parsed, ParseError> {
    let mut language = ConstraintLanguage::new();
    let mut nvars: Option<usize> = None;
    let mut constraints: Vec<(usize, String, Vec<usize>)> = Vec::new();

    for (line, l) in content_lines(text, |l| l.starts_with('#')) {
        let spaced = l.replace('{', " { ").replace('}', " } ");
        let toks: Vec<&str> = spaced.split_whitespace().collect();
        let unexpected = || ParseError::new(line, ParseErrorKind::UnexpectedLine(l.to_string()));
        match toks[0] {
            "nvars" => {
                if nvars.is_some() {
                    return Err(ParseError::new(line, ParseErrorKind::DuplicateHeader));
                }
                if toks.len() != 2 {
                    return Err(ParseError::new(line, ParseErrorKind::MalformedHeader(l.to_string())));
                }
                nvars = Some(parse_num(toks[1], line)?);
            }
            "relation" => {
                if toks.len() < 5 || toks[3] != "{" || toks[toks.len() - 1] != "}" {
                    return Err(unexpected());
                }
                let name = toks[1];
                let arity: usize = parse_num(toks[2], line)?;
                if arity == 0 || arity > MAX_ARITY {
                    return Err(ParseError::new(line, CspError::ArityTooLarge(arity).into()));
                }
                let tuples = toks[4..toks.len() - 1]
                    .iter()
                    .map(|t| parse_tuple(t, arity))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| ParseError::new(line, e.into()))?;
                let rel = BooleanRelation::new(arity, tuples)
                    .map_err(|e| ParseError::new(line, e.into()))?;
                language
                    .add(name, rel)
                    .map_err(|e| ParseError::new(line, e.into()))?;
            }
            "constraint" => {
                if toks.len() < 2 {
                    return Err(unexpected());
                }
                let vars = toks[2..]
                    .iter()
                    .map(|t| parse_num(t, line))
                    .collect::<Result<Vec<usize>, _>>()?;
                if language.index_of(toks[1]).is_none() {
                    return Err(ParseError::new(
                        line,
                        CspError::UnknownRelation(toks[1].to_string()).into(),
                    ));
                }
                constraints.push((line, toks[1].to_string(), vars));
            }
            _ => return Err(unexpected()),
        }
    }
    Ok(Parsed {
        language,
        nvars,
        constraints,
    })
}

pub fn write_gamma_formula(phi: &GammaFormula) -> String {
    let lang = phi.language();
    let mut out = format!("nvars {}\n", phi.var_count());
    for (name, rel) in lang.iter() {
        write!(out, "relation {name} {} {{", rel.arity()).unwrap();
        for &t in rel.tuples() {
            write!(out, " {}", rel.tuple_string(t)).unwrap();
        }
        out.push_str(" }\n");
    }
    for c in phi.constraints() {
        write!(out, "constraint {}", lang.name(c.relation())).unwrap();
        for v in c.vars() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const OR_FILE: &str = "nvars 3\nrelation OR 2 { 10 01 11 }\nconstraint OR 0 1\nconstraint OR 1 2\n";

    #[test]
    fn or_example() {
        let phi = parse_gamma_formula(OR_FILE).unwrap();
        assert_eq!(phi.var_count(), 3);
        assert_eq!(phi.constraints().len(), 2);
        assert_eq!(write_gamma_formula(&phi), OR_FILE);
    }

    #[test]
    fn braces_without_spaces_and_comments() {
        let phi = parse_gamma_formula("# c\nrelation T 1 {1}\nnvars 1\nconstraint T 0\n").unwrap();
        assert_eq!(phi.constraints().len(), 1);
    }

    #[test]
    fn errors() {
        let e = parse_gamma_formula("nvars 2\nrelation OR 2 { 011 }\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::Csp(CspError::TupleWidth { .. })));
        let e = parse_gamma_formula("nvars 2\nconstraint AND 0 1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Csp(CspError::UnknownRelation("AND".into())));
        let e = parse_gamma_formula("nvars 2\nrelation OR 2 { 01 }\nconstraint OR 0 2\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(matches!(e.kind, ParseErrorKind::Csp(CspError::VarOutOfRange { var: 2, n: 2 })));
        let e = parse_gamma_formula("nvars 2\nrelation OR 2 { 01 }\nconstraint OR 0\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Csp(CspError::ArityMismatch { .. })));
        let e = parse_gamma_formula("relation OR 2 { 01 }\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::MalformedHeader(_)));
        assert_eq!(parse_constraint_language("relation OR 2 { 01 }\n").unwrap().len(), 1);
        let e = parse_gamma_formula("nvars 1\nrelation R 1 { 1 }\nrelation R 1 { 0 }\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Csp(CspError::DuplicateRelation("R".into())));
    }
}
