use std::fmt::Write as _;

use super::{content_lines, last_line, parse_num, ParseError, ParseErrorKind};
use crate::vertex_cover::{Graph, GraphError};

/// Parses `p graph <n> <m>` followed by `m` lines `e <u> <v>` (0-based).
/// Lines starting with `c` are comments.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut graph: Option<(Graph, usize)> = None;
    for (line, l) in content_lines(text, |l| l.starts_with('c')) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "p" => {
                if graph.is_some() {
                    return Err(ParseError::new(line, ParseErrorKind::DuplicateHeader));
                }
                let malformed =
                    || ParseError::new(line, ParseErrorKind::MalformedHeader(l.to_string()));
                if toks.len() != 4 || toks[1] != "graph" {
                    return Err(malformed());
                }
                let n = toks[2].parse().map_err(|_| malformed())?;
                let m = toks[3].parse().map_err(|_| malformed())?;
                graph = Some((Graph::empty(n), m));
            }
            "e" => {
                if toks.len() != 3 {
                    return Err(ParseError::new(line, ParseErrorKind::UnexpectedLine(l.to_string())));
                }
                let u: usize = parse_num(toks[1], line)?;
                let v: usize = parse_num(toks[2], line)?;
                if u == v {
                    return Err(ParseError::new(line, GraphError::SelfLoop(u).into()));
                }
                let Some((g, _)) = graph.as_mut() else {
                    return Err(ParseError::new(line, ParseErrorKind::MissingHeader));
                };
                g.add_edge(u, v).map_err(|e| ParseError::new(line, e.into()))?;
            }
            _ => return Err(ParseError::new(line, ParseErrorKind::UnexpectedLine(l.to_string()))),
        }
    }
    let Some((g, m)) = graph else {
        return Err(ParseError::new(last_line(text), ParseErrorKind::MissingHeader));
    };
    if g.edge_count() != m {
        return Err(ParseError::new(
            last_line(text),
            ParseErrorKind::EdgeCountMismatch {
                expected: m,
                found: g.edge_count(),
            },
        ));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p graph {} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}
